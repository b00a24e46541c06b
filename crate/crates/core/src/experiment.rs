//! Luma-versus-chroma sensitivity experiment.
//!
//! For each QP setting the Y plane is quantised at the luma QP and the chroma
//! planes at the layout's chroma QP. Distortion is measured against the
//! unquantised planes, and in R'G'B' against the reconstruction of the
//! unquantised image, so the numbers isolate quantisation error from any
//! subsampling loss already present in the input.

use crate::colour::reconstruct_rgb;
use crate::error::{domain, Result};
use crate::image::{PlanarImage, PlaneKind, RgbImage};
use crate::plane::{gaussian_blur, high_freq_energy, GaussianSpec};
use crate::quant::{mse, pooled_mse, psnr_from_mse, quantize_image, QuantSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneMetrics {
    pub mse: f64,
    /// `f64::INFINITY` when `mse == 0`.
    pub psnr: f64,
    /// High-frequency energy of the quantised plane.
    pub hf_energy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    pub luma_qp: u8,
    pub chroma_qp: u8,
    pub y: PlaneMetrics,
    pub cb: PlaneMetrics,
    pub cr: PlaneMetrics,
    pub rgb_mse: f64,
    pub rgb_psnr: f64,
}

impl MetricsReport {
    pub fn plane(&self, kind: PlaneKind) -> &PlaneMetrics {
        match kind {
            PlaneKind::Y => &self.y,
            PlaneKind::Cb => &self.cb,
            PlaneKind::Cr => &self.cr,
        }
    }
}

/// R'G'B' PSNR after blurring only the luma plane versus only the chroma planes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlurContrast {
    pub sigma: f64,
    pub luma_blurred_rgb_psnr: f64,
    pub chroma_blurred_rgb_psnr: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityReport {
    pub rows: Vec<MetricsReport>,
    pub blur_contrast: BlurContrast,
}

pub const CSV_HEADER: &str = "luma_qp,chroma_qp,y_psnr,cb_psnr,cr_psnr,rgb_psnr,y_hf,cb_hf,cr_hf";

fn rgb_psnr(reference: &RgbImage, test: &RgbImage) -> Result<(f64, f64)> {
    let [r0, g0, b0] = reference.channels();
    let [r1, g1, b1] = test.channels();
    let m = pooled_mse(&[(r0, r1), (g0, g1), (b0, b1)])?;
    Ok((m, psnr_from_mse(m, reference.depth())))
}

fn blur_planes(img: &PlanarImage, kinds: &[PlaneKind], spec: &GaussianSpec) -> Result<PlanarImage> {
    let mut out = img.clone();
    for &kind in kinds {
        out = out.with_plane(kind, gaussian_blur(img.plane(kind), spec))?;
    }
    Ok(out)
}

/// Blurs luma alone and chroma alone at `sigma` and reports the R'G'B' PSNR of each.
pub fn blur_contrast(img: &PlanarImage, sigma: f64) -> Result<BlurContrast> {
    let spec = GaussianSpec::new(sigma)?;
    let depth = img.depth();
    let reference = reconstruct_rgb(img, depth)?;
    let luma = reconstruct_rgb(&blur_planes(img, &[PlaneKind::Y], &spec)?, depth)?;
    let chroma = reconstruct_rgb(
        &blur_planes(img, &[PlaneKind::Cb, PlaneKind::Cr], &spec)?,
        depth,
    )?;
    Ok(BlurContrast {
        sigma,
        luma_blurred_rgb_psnr: rgb_psnr(&reference, &luma)?.1,
        chroma_blurred_rgb_psnr: rgb_psnr(&reference, &chroma)?.1,
    })
}

/// Quantises `img` at every entry of `sweep` and measures the damage.
/// Rows come back in sweep order.
pub fn sensitivity_experiment(
    img: &PlanarImage,
    sweep: &[QuantSpec],
    sigma: f64,
) -> Result<SensitivityReport> {
    if sweep.is_empty() {
        return Err(domain("QP sweep is empty"));
    }
    let spec = GaussianSpec::new(sigma)?;
    let depth = img.depth();
    let reference = reconstruct_rgb(img, depth)?;
    let mut rows = Vec::with_capacity(sweep.len());
    for q in sweep {
        let quantised = quantize_image(img, q)?;
        let plane_metrics = |kind: PlaneKind| -> Result<PlaneMetrics> {
            let m = mse(img.plane(kind), quantised.plane(kind))?;
            Ok(PlaneMetrics {
                mse: m,
                psnr: psnr_from_mse(m, depth),
                hf_energy: high_freq_energy(quantised.plane(kind), &spec, depth),
            })
        };
        let (rgb_mse, rgb_psnr) = rgb_psnr(&reference, &reconstruct_rgb(&quantised, depth)?)?;
        rows.push(MetricsReport {
            luma_qp: q.luma_qp(),
            chroma_qp: q.chroma_qp(img.subsampling()),
            y: plane_metrics(PlaneKind::Y)?,
            cb: plane_metrics(PlaneKind::Cb)?,
            cr: plane_metrics(PlaneKind::Cr)?,
            rgb_mse,
            rgb_psnr,
        });
    }
    Ok(SensitivityReport {
        rows,
        blur_contrast: blur_contrast(img, sigma)?,
    })
}

/// Formats a value with six significant digits, without locale or
/// platform-dependent behaviour. Infinity is written as `inf`.
pub fn format_sig6(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0.00000".into();
    }
    // Let the exponent formatter do the rounding, then decide the layout.
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{mantissa}e{exp}")
    }
}

/// Renders sweep rows as CSV with a fixed column order.
pub fn report_csv(rows: &[MetricsReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [
            r.luma_qp.to_string(),
            r.chroma_qp.to_string(),
            format_sig6(r.y.psnr),
            format_sig6(r.cb.psnr),
            format_sig6(r.cr.psnr),
            format_sig6(r.rgb_psnr),
            format_sig6(r.y.hf_energy),
            format_sig6(r.cb.hf_energy),
            format_sig6(r.cr.hf_energy),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colour::{convert_image, BitDepth};
    use crate::image::Subsampling;
    use crate::plane::downsample_chroma;

    fn test_image() -> PlanarImage {
        let d = BitDepth::new(8).unwrap();
        let pixels: Vec<[u16; 3]> = (0..16 * 16)
            .map(|i| {
                let (x, y) = (i % 16, i / 16);
                [(x * 16) as u16, (y * 16) as u16, ((x ^ y) * 16) as u16]
            })
            .collect();
        let rgb = RgbImage::from_pixels(16, 16, d, &pixels).unwrap();
        convert_image(&rgb, d).unwrap()
    }

    #[test]
    fn sig6_formatting() {
        assert_eq!(format_sig6(48.130803608679), "48.1308");
        assert_eq!(format_sig6(f64::INFINITY), "inf");
        assert_eq!(format_sig6(0.0), "0.00000");
        assert_eq!(format_sig6(1.0), "1.00000");
        assert_eq!(format_sig6(9.999996), "10.0000");
        assert_eq!(format_sig6(123456.7), "123457");
        assert_eq!(format_sig6(1234567.0), "1.23457e6");
        assert_eq!(format_sig6(0.000123456), "0.000123456");
        assert_eq!(format_sig6(1.5e-7), "1.50000e-7");
        assert_eq!(format_sig6(-2.5), "-2.50000");
    }

    #[test]
    fn identity_quantiser_gives_infinite_psnr() {
        let img = downsample_chroma(&test_image(), Subsampling::S420).unwrap();
        let rep = sensitivity_experiment(&img, &[QuantSpec::new(4, 0).unwrap()], 1.0).unwrap();
        let r = &rep.rows[0];
        for k in PlaneKind::ALL {
            assert_eq!(r.plane(k).mse, 0.0);
            assert!(r.plane(k).psnr.is_infinite());
        }
        assert!(r.rgb_psnr.is_infinite());
    }

    #[test]
    fn rows_follow_sweep_order_and_cap() {
        let img = downsample_chroma(&test_image(), Subsampling::S420).unwrap();
        let sweep: Vec<QuantSpec> = [46, 10, 51]
            .iter()
            .map(|&q| QuantSpec::new(q, 0).unwrap())
            .collect();
        let rep = sensitivity_experiment(&img, &sweep, 1.0).unwrap();
        let qps: Vec<(u8, u8)> = rep.rows.iter().map(|r| (r.luma_qp, r.chroma_qp)).collect();
        assert_eq!(qps, vec![(46, 39), (10, 10), (51, 39)]);
        assert_eq!(rep, sensitivity_experiment(&img, &sweep, 1.0).unwrap());
        let csv = report_csv(&rep.rows);
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with(CSV_HEADER));
    }

    #[test]
    fn empty_sweep_rejected() {
        assert!(sensitivity_experiment(&test_image(), &[], 1.0).is_err());
        let q = [QuantSpec::new(10, 0).unwrap()];
        assert!(sensitivity_experiment(&test_image(), &q, 0.0).is_err());
    }
}
