//! Chroma resampling, Gaussian low-pass filtering and high-frequency energy.

use crate::colour::BitDepth;
use crate::error::{domain, structural, Result};
use crate::image::{PlanarImage, Plane, Subsampling};

/// Averages 2×1 (4:2:2) or 2×2 (4:2:0) chroma blocks of a 4:4:4 image.
/// Means are rounded half away from zero; the luma plane is copied untouched.
pub fn downsample_chroma(img: &PlanarImage, target: Subsampling) -> Result<PlanarImage> {
    if img.subsampling() != Subsampling::S444 {
        return Err(structural(format!(
            "downsampling needs a 4:4:4 source, got {}",
            img.subsampling()
        )));
    }
    if target == Subsampling::S444 {
        return Ok(img.clone());
    }
    let (fx, fy) = target.factors();
    let (w, h) = (img.width(), img.height());
    if w % fx != 0 || h % fy != 0 {
        return Err(structural(format!(
            "{w}x{h} cannot be subsampled to {target} without padding"
        )));
    }
    let block = (fx * fy) as u32;
    let reduce = |p: &Plane| {
        Plane::from_fn(w / fx, h / fy, |cx, cy| {
            let mut sum = 0u32;
            for dy in 0..fy {
                for dx in 0..fx {
                    sum += u32::from(p.get(cx * fx + dx, cy * fy + dy));
                }
            }
            // integer half-away-from-zero rounding of sum / block
            ((sum + block / 2) / block) as u16
        })
    };
    PlanarImage::new(
        img.depth(),
        target,
        img.y().clone(),
        reduce(img.cb())?,
        reduce(img.cr())?,
    )
}

/// Nearest-neighbour chroma upsampling back to 4:4:4.
pub fn upsample_chroma(img: &PlanarImage) -> Result<PlanarImage> {
    let (fx, fy) = img.subsampling().factors();
    let (w, h) = (img.width(), img.height());
    let expand = |p: &Plane| Plane::from_fn(w, h, |x, y| p.get(x / fx, y / fy));
    PlanarImage::new(
        img.depth(),
        Subsampling::S444,
        img.y().clone(),
        expand(img.cb())?,
        expand(img.cr())?,
    )
}

/// A normalized, truncated Gaussian kernel of support `[-radius, radius]`
/// with `radius = ceil(3σ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSpec {
    sigma: f64,
    radius: usize,
    taps: Vec<f64>,
}

impl GaussianSpec {
    pub fn new(sigma: f64) -> Result<Self> {
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(domain(format!("sigma must be positive, got {sigma}")));
        }
        let radius = (3.0 * sigma).ceil() as usize;
        let r = radius as isize;
        let mut taps: Vec<f64> = (-r..=r)
            .map(|i| (-((i * i) as f64) / (2.0 * sigma * sigma)).exp())
            .collect();
        let sum: f64 = taps.iter().sum();
        taps.iter_mut().for_each(|t| *t /= sum);
        Ok(GaussianSpec {
            sigma,
            radius,
            taps,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Kernel taps from `-radius` to `radius`.
    pub fn kernel(&self) -> &[f64] {
        &self.taps
    }
}

/// Mirror index with the edge sample repeated (`… b a | a b c … | c b …`),
/// valid for any offset, including ones that wrap more than once.
#[inline]
pub fn mirror_index(i: isize, n: usize) -> usize {
    let period = 2 * n as isize;
    let m = i.rem_euclid(period) as usize;
    if m < n {
        m
    } else {
        2 * n - 1 - m
    }
}

fn blur_rows(src: &Plane<f64>, spec: &GaussianSpec) -> Plane<f64> {
    let (w, h) = (src.width(), src.height());
    let r = spec.radius as isize;
    let taps = spec.kernel();
    let mut out = Vec::with_capacity(w * h);
    for row in src.rows() {
        for x in 0..w as isize {
            let mut acc = 0.0;
            for (k, t) in taps.iter().enumerate() {
                acc += t * row[mirror_index(x + k as isize - r, w)];
            }
            out.push(acc);
        }
    }
    Plane::new(w, h, out).expect("same shape as source")
}

fn blur_cols(src: &Plane<f64>, spec: &GaussianSpec) -> Plane<f64> {
    let (w, h) = (src.width(), src.height());
    let r = spec.radius as isize;
    let taps = spec.kernel();
    let data = src.data();
    let mut out = vec![0.0; w * h];
    for y in 0..h as isize {
        let dst = &mut out[y as usize * w..(y as usize + 1) * w];
        for (k, t) in taps.iter().enumerate() {
            let sy = mirror_index(y + k as isize - r, h);
            let src_row = &data[sy * w..(sy + 1) * w];
            for (d, s) in dst.iter_mut().zip(src_row) {
                *d += t * s;
            }
        }
    }
    Plane::new(w, h, out).expect("same shape as source")
}

/// Separable Gaussian blur in floating point: horizontal pass, then vertical.
pub fn gaussian_blur_f64(plane: &Plane<f64>, spec: &GaussianSpec) -> Plane<f64> {
    blur_cols(&blur_rows(plane, spec), spec)
}

/// Gaussian blur of an integer plane, accumulated in floating point and
/// rounded once at the output.
pub fn gaussian_blur(plane: &Plane, spec: &GaussianSpec) -> Plane {
    gaussian_blur_f64(&plane.map(f64::from), spec).map(|v| v.round() as u16)
}

/// Sum of squared blur residuals `(x − blur(x))²`, with samples normalized to `[0, 1]`.
pub fn high_freq_energy(plane: &Plane, spec: &GaussianSpec, depth: BitDepth) -> f64 {
    let blurred = gaussian_blur(plane, spec);
    let max = f64::from(depth.max_code());
    plane
        .data()
        .iter()
        .zip(blurred.data())
        .map(|(&a, &b)| {
            let d = (f64::from(a) - f64::from(b)) / max;
            d * d
        })
        .sum()
}
