//! BT.2020 R'G'B' ↔ Y'Cb'Cr' conversion and integer code encoding.
//!
//! All inputs are already gamma corrected. Integer codes are full range
//! (`0..=2^bits - 1`); chroma uses offset binary so that the mid code stands
//! for zero colour difference.

use crate::error::{domain, Result};
use crate::image::{PlanarImage, Plane, RgbImage, Subsampling};
use crate::plane::upsample_chroma;

/// BT.2020 non-constant-luminance coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bt2020Weights {
    pub wr: f64,
    pub wg: f64,
    pub wb: f64,
    pub cb_divisor: f64,
    pub cr_divisor: f64,
}

pub const BT2020: Bt2020Weights = Bt2020Weights {
    wr: 0.2627,
    wg: 0.6780,
    wb: 0.0593,
    cb_divisor: 1.8814,
    cr_divisor: 1.4746,
};

/// Bits per sample, 8 through 16.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitDepth(u8);

impl BitDepth {
    pub const MIN: u8 = 8;
    pub const MAX: u8 = 16;

    pub fn new(bits: u8) -> Result<Self> {
        if !(Self::MIN..=Self::MAX).contains(&bits) {
            return Err(domain(format!(
                "bit depth must be between {} and {}, got {bits}",
                Self::MIN,
                Self::MAX
            )));
        }
        Ok(BitDepth(bits))
    }

    #[inline]
    pub fn bits(self) -> u8 {
        self.0
    }

    /// Largest code value, `2^bits - 1`.
    #[inline]
    pub fn max_code(self) -> u32 {
        (1u32 << self.0) - 1
    }

    /// Number of distinct code values, `2^bits`.
    #[inline]
    pub fn levels(self) -> u32 {
        1u32 << self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RgbTriplet {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl RgbTriplet {
    pub fn new(r: f64, g: f64, b: f64) -> Result<Self> {
        let p = RgbTriplet { r, g, b };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [("r", self.r), ("g", self.g), ("b", self.b)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(domain(format!("{name} = {v} is outside [0, 1]")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YCbCrTriplet {
    pub y: f64,
    pub cb: f64,
    pub cr: f64,
}

pub fn rgb_to_ycbcr(p: RgbTriplet) -> Result<YCbCrTriplet> {
    p.validate()?;
    Ok(rgb_to_ycbcr_unchecked(p.r, p.g, p.b))
}

// Clamping only absorbs last-ulp excursions; exact arithmetic keeps every
// valid input inside these ranges.
#[inline]
fn rgb_to_ycbcr_unchecked(r: f64, g: f64, b: f64) -> YCbCrTriplet {
    let w = BT2020;
    let y = w.wr * r + w.wg * g + w.wb * b;
    YCbCrTriplet {
        y: y.clamp(0.0, 1.0),
        cb: ((b - y) / w.cb_divisor).clamp(-0.5, 0.5),
        cr: ((r - y) / w.cr_divisor).clamp(-0.5, 0.5),
    }
}

/// Inverse transform. Components are clamped to `[0, 1]` after reconstruction.
pub fn ycbcr_to_rgb(p: YCbCrTriplet) -> RgbTriplet {
    let w = BT2020;
    let r = p.y + w.cr_divisor * p.cr;
    let b = p.y + w.cb_divisor * p.cb;
    let g = (p.y - w.wr * r - w.wb * b) / w.wg;
    RgbTriplet {
        r: r.clamp(0.0, 1.0),
        g: g.clamp(0.0, 1.0),
        b: b.clamp(0.0, 1.0),
    }
}

/// `round(x · (2^bits − 1))` with ties away from zero.
pub fn encode_int(x: f64, depth: BitDepth) -> Result<u16> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!("{x} is outside [0, 1]")));
    }
    Ok((x * f64::from(depth.max_code())).round() as u16)
}

/// Encodes a colour difference in `[-0.5, 0.5]` as offset binary.
pub fn encode_chroma(c: f64, depth: BitDepth) -> Result<u16> {
    if !(-0.5..=0.5).contains(&c) {
        return Err(domain(format!("chroma {c} is outside [-0.5, 0.5]")));
    }
    encode_int(c + 0.5, depth)
}

pub fn decode_int(code: u32, depth: BitDepth) -> Result<f64> {
    if code > depth.max_code() {
        return Err(domain(format!(
            "code {code} exceeds {} at {} bits",
            depth.max_code(),
            depth.bits()
        )));
    }
    Ok(f64::from(code) / f64::from(depth.max_code()))
}

pub fn decode_chroma(code: u32, depth: BitDepth) -> Result<f64> {
    Ok(decode_int(code, depth)? - 0.5)
}

/// Converts an R'G'B' image to Y'CbCr 4:4:4 at `depth`.
pub fn convert_image(img: &RgbImage, depth: BitDepth) -> Result<PlanarImage> {
    let (w, h) = (img.width(), img.height());
    let src_max = f64::from(img.depth().max_code());
    let mut y = Vec::with_capacity(w * h);
    let mut cb = Vec::with_capacity(w * h);
    let mut cr = Vec::with_capacity(w * h);
    for ((&r, &g), &b) in img
        .r()
        .data()
        .iter()
        .zip(img.g().data())
        .zip(img.b().data())
    {
        let p = rgb_to_ycbcr_unchecked(
            f64::from(r) / src_max,
            f64::from(g) / src_max,
            f64::from(b) / src_max,
        );
        y.push(encode_int(p.y, depth)?);
        cb.push(encode_chroma(p.cb, depth)?);
        cr.push(encode_chroma(p.cr, depth)?);
    }
    PlanarImage::new(
        depth,
        Subsampling::S444,
        Plane::new(w, h, y)?,
        Plane::new(w, h, cb)?,
        Plane::new(w, h, cr)?,
    )
}

/// Converts a Y'CbCr image back to R'G'B' at `depth`, upsampling chroma first
/// when the image is subsampled.
pub fn reconstruct_rgb(img: &PlanarImage, depth: BitDepth) -> Result<RgbImage> {
    let full;
    let img = if img.subsampling() == Subsampling::S444 {
        img
    } else {
        full = upsample_chroma(img)?;
        &full
    };
    let src = img.depth();
    let (w, h) = (img.width(), img.height());
    let mut r = Vec::with_capacity(w * h);
    let mut g = Vec::with_capacity(w * h);
    let mut b = Vec::with_capacity(w * h);
    for ((&yc, &cbc), &crc) in img
        .y()
        .data()
        .iter()
        .zip(img.cb().data())
        .zip(img.cr().data())
    {
        let p = ycbcr_to_rgb(YCbCrTriplet {
            y: decode_int(yc.into(), src)?,
            cb: decode_chroma(cbc.into(), src)?,
            cr: decode_chroma(crc.into(), src)?,
        });
        r.push(encode_int(p.r, depth)?);
        g.push(encode_int(p.g, depth)?);
        b.push(encode_int(p.b, depth)?);
    }
    RgbImage::new(
        depth,
        Plane::new(w, h, r)?,
        Plane::new(w, h, g)?,
        Plane::new(w, h, b)?,
    )
}
