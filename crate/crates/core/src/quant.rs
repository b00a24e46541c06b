//! Uniform scalar quantisation driven by HEVC-style QP values, and the
//! distortion metrics used to measure it.

use crate::colour::BitDepth;
use crate::error::{domain, structural, Result};
use crate::image::{PlanarImage, Plane, PlaneKind, Subsampling};

pub const LUMA_QP_MAX: u8 = 51;
/// Chroma QP ceiling for 4:2:0 material. Other layouts share the luma ceiling.
pub const CHROMA_QP_MAX_420: u8 = 39;

/// Luma QP plus an additive chroma offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantSpec {
    luma_qp: u8,
    chroma_qp_offset: i32,
}

impl QuantSpec {
    pub fn new(luma_qp: u8, chroma_qp_offset: i32) -> Result<Self> {
        if luma_qp > LUMA_QP_MAX {
            return Err(domain(format!(
                "luma QP must be at most {LUMA_QP_MAX}, got {luma_qp}"
            )));
        }
        Ok(QuantSpec {
            luma_qp,
            chroma_qp_offset,
        })
    }

    pub fn luma_qp(&self) -> u8 {
        self.luma_qp
    }

    pub fn chroma_qp_offset(&self) -> i32 {
        self.chroma_qp_offset
    }

    /// QP applied to the chroma planes of an image with the given layout.
    pub fn chroma_qp(&self, subsampling: Subsampling) -> u8 {
        let cap = match subsampling {
            Subsampling::S420 => CHROMA_QP_MAX_420,
            Subsampling::S422 | Subsampling::S444 => LUMA_QP_MAX,
        };
        (i64::from(self.luma_qp) + i64::from(self.chroma_qp_offset)).clamp(0, i64::from(cap)) as u8
    }

    pub fn qp_for(&self, kind: PlaneKind, subsampling: Subsampling) -> u8 {
        if kind.is_chroma() {
            self.chroma_qp(subsampling)
        } else {
            self.luma_qp
        }
    }
}

/// Chroma QP of a 4:2:0 image: `clamp(luma_qp + offset, 0, 39)`.
pub fn effective_chroma_qp(spec: &QuantSpec) -> u8 {
    spec.chroma_qp(Subsampling::S420)
}

/// Quantiser step in code values: `2^((qp − 4)/6) · 2^(bits − 8)`.
///
/// The fractional part of the exponent comes from a six-entry table, so
/// `qp_to_step(qp + 6) == 2 · qp_to_step(qp)` holds exactly.
pub fn qp_to_step(qp: u8, depth: BitDepth) -> Result<f64> {
    if qp > LUMA_QP_MAX {
        return Err(domain(format!("QP must be in 0..={LUMA_QP_MAX}, got {qp}")));
    }
    let q = i32::from(qp) - 4;
    let octave = q.div_euclid(6) + i32::from(depth.bits()) - 8;
    let frac = q.rem_euclid(6);
    let base = 2f64.powf(f64::from(frac) / 6.0);
    Ok(base * 2f64.powi(octave))
}

/// `clamp(round(round(x/Δ)·Δ), 0, max)` per sample, ties away from zero.
pub fn quantize_plane(plane: &Plane, qp: u8, depth: BitDepth) -> Result<Plane> {
    let step = qp_to_step(qp, depth)?;
    let max = f64::from(depth.max_code());
    Ok(plane.map(|x| {
        let level = (f64::from(x) / step).round();
        (level * step).round().clamp(0.0, max) as u16
    }))
}

/// Quantises Y at the luma QP and Cb/Cr at the chroma QP for the image's layout.
pub fn quantize_image(img: &PlanarImage, spec: &QuantSpec) -> Result<PlanarImage> {
    let depth = img.depth();
    let sub = img.subsampling();
    let q = |kind: PlaneKind| quantize_plane(img.plane(kind), spec.qp_for(kind, sub), depth);
    PlanarImage::new(
        depth,
        sub,
        q(PlaneKind::Y)?,
        q(PlaneKind::Cb)?,
        q(PlaneKind::Cr)?,
    )
}

fn check_same(a: &Plane, b: &Plane) -> Result<()> {
    if !a.same_size(b) {
        return Err(structural(format!(
            "plane sizes differ: {}x{} vs {}x{}",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )));
    }
    Ok(())
}

fn squared_error(a: &Plane, b: &Plane) -> u64 {
    a.data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| {
            let d = i64::from(x) - i64::from(y);
            (d * d) as u64
        })
        .sum()
}

/// Mean squared code-value difference.
pub fn mse(a: &Plane, b: &Plane) -> Result<f64> {
    check_same(a, b)?;
    Ok(squared_error(a, b) as f64 / a.len() as f64)
}

/// `10·log10(max² / mse)`; `f64::INFINITY` when the planes are identical.
pub fn psnr_from_mse(mse: f64, depth: BitDepth) -> f64 {
    if mse == 0.0 {
        return f64::INFINITY;
    }
    let max = f64::from(depth.max_code());
    10.0 * (max * max / mse).log10()
}

pub fn psnr(a: &Plane, b: &Plane, depth: BitDepth) -> Result<f64> {
    Ok(psnr_from_mse(mse(a, b)?, depth))
}

/// Mean squared error pooled over several plane pairs.
pub fn pooled_mse(pairs: &[(&Plane, &Plane)]) -> Result<f64> {
    let mut sum = 0u64;
    let mut n = 0usize;
    for (a, b) in pairs {
        check_same(a, b)?;
        sum += squared_error(a, b);
        n += a.len();
    }
    if n == 0 {
        return Err(structural("no planes to compare"));
    }
    Ok(sum as f64 / n as f64)
}
