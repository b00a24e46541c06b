use std::f64::consts::PI;
use std::sync::OnceLock;

use super::vlambda::PHOTOPIC_5NM;
use super::{Wavelength, LUMINOUS_EFFICACY};
use crate::error::{domain, Error, Result};

/// What a [`SpectralTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralKind {
    /// Dimensionless luminous efficiency, every value in `[0, 1]`.
    LuminosityV,
    /// Spectral radiant flux in W/nm.
    SpectralRadiantFluxWperNm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSample {
    pub wavelength_nm: f64,
    pub value: f64,
}

/// A sampled function of wavelength with strictly increasing, positive
/// wavelengths and non-negative values.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralTable {
    kind: SpectralKind,
    samples: Vec<SpectralSample>,
}

impl SpectralTable {
    pub fn new(kind: SpectralKind, samples: Vec<SpectralSample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Config("spectral table has no samples".into()));
        }
        let mut prev = 0.0;
        for (i, s) in samples.iter().enumerate() {
            if !s.wavelength_nm.is_finite() || s.wavelength_nm <= 0.0 {
                return Err(Error::Config(format!(
                    "row {i}: wavelength {} nm is not positive",
                    s.wavelength_nm
                )));
            }
            if i > 0 && s.wavelength_nm <= prev {
                return Err(Error::Config(format!(
                    "row {i}: wavelengths must be strictly increasing ({} after {prev})",
                    s.wavelength_nm
                )));
            }
            if !s.value.is_finite() || s.value < 0.0 {
                return Err(Error::Config(format!(
                    "row {i}: value {} must be finite and non-negative",
                    s.value
                )));
            }
            if kind == SpectralKind::LuminosityV && s.value > 1.0 {
                return Err(Error::Config(format!(
                    "row {i}: luminosity value {} exceeds 1",
                    s.value
                )));
            }
            prev = s.wavelength_nm;
        }
        Ok(SpectralTable { kind, samples })
    }

    pub fn from_pairs(kind: SpectralKind, pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            kind,
            pairs
                .iter()
                .map(|&(wavelength_nm, value)| SpectralSample {
                    wavelength_nm,
                    value,
                })
                .collect(),
        )
    }

    /// Parses the `wavelength_nm,value` CSV layout: one header line, then one
    /// sample per row.
    pub fn from_csv(kind: SpectralKind, text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header.trim() == "wavelength_nm,value" => {}
            Some((_, header)) => {
                return Err(Error::Config(format!(
                    "expected header `wavelength_nm,value`, found `{header}`"
                )))
            }
            None => return Err(Error::Config("empty spectral CSV".into())),
        }
        let mut samples = Vec::new();
        for (lineno, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (wl, value) = line.split_once(',').ok_or_else(|| {
                Error::Config(format!("line {}: expected two columns", lineno + 1))
            })?;
            let parse = |field: &str| {
                field.trim().parse::<f64>().map_err(|e| {
                    Error::Config(format!("line {}: `{}`: {e}", lineno + 1, field.trim()))
                })
            };
            samples.push(SpectralSample {
                wavelength_nm: parse(wl)?,
                value: parse(value)?,
            });
        }
        Self::new(kind, samples)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("wavelength_nm,value\n");
        for s in &self.samples {
            out.push_str(&format!("{},{}\n", s.wavelength_nm, s.value));
        }
        out
    }

    /// The standard photopic luminosity function, 380–780 nm in 5 nm steps.
    pub fn photopic() -> &'static SpectralTable {
        static TABLE: OnceLock<SpectralTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            SpectralTable::from_pairs(SpectralKind::LuminosityV, &PHOTOPIC_5NM)
                .expect("embedded photopic table is valid")
        })
    }

    pub fn kind(&self) -> SpectralKind {
        self.kind
    }

    pub fn samples(&self) -> &[SpectralSample] {
        &self.samples
    }

    /// Linear interpolation between bracketing samples; zero outside the table.
    pub fn value_at(&self, nm: f64) -> f64 {
        let s = &self.samples;
        let first = s[0].wavelength_nm;
        let last = s[s.len() - 1].wavelength_nm;
        if nm < first || nm > last {
            return 0.0;
        }
        let hi = s.partition_point(|p| p.wavelength_nm < nm);
        if s[hi].wavelength_nm == nm {
            return s[hi].value;
        }
        let (a, b) = (s[hi - 1], s[hi]);
        let t = (nm - a.wavelength_nm) / (b.wavelength_nm - a.wavelength_nm);
        a.value + t * (b.value - a.value)
    }
}

fn require_kind(table: &SpectralTable, kind: SpectralKind) -> Result<()> {
    if table.kind != kind {
        return Err(Error::Config(format!(
            "expected a {kind:?} table, got {:?}",
            table.kind
        )));
    }
    Ok(())
}

/// V(λ) from a luminosity table.
pub fn luminosity_lookup(table: &SpectralTable, wavelength: Wavelength) -> Result<f64> {
    require_kind(table, SpectralKind::LuminosityV)?;
    Ok(table.value_at(wavelength.nm()).clamp(0.0, 1.0))
}

/// Luminous intensity in candela for a monochromatic source of radiant
/// intensity `radiant_w_per_sr`.
pub fn luminous_intensity(
    wavelength: Wavelength,
    radiant_w_per_sr: f64,
    table: &SpectralTable,
) -> Result<f64> {
    if !radiant_w_per_sr.is_finite() || radiant_w_per_sr < 0.0 {
        return Err(domain(format!(
            "radiant intensity must be finite and non-negative, got {radiant_w_per_sr} W/sr"
        )));
    }
    Ok(LUMINOUS_EFFICACY * luminosity_lookup(table, wavelength)? * radiant_w_per_sr)
}

/// Luminous flux in lumens of a single-wavelength source radiating `watts`.
pub fn monochromatic_luminous_flux(
    wavelength: Wavelength,
    watts: f64,
    table: &SpectralTable,
) -> Result<f64> {
    if !watts.is_finite() || watts < 0.0 {
        return Err(domain(format!(
            "radiant flux must be finite and non-negative, got {watts} W"
        )));
    }
    Ok(LUMINOUS_EFFICACY * luminosity_lookup(table, wavelength)? * watts)
}

/// Luminous flux in lumens of a sampled spectral power distribution.
///
/// The V-weighted spectrum is integrated with the trapezoid rule over the
/// distribution's sample grid, subdivided at every luminosity-table node that
/// falls inside it; the distribution is linearly interpolated at those extra
/// nodes. A distribution with a single sample is a monochromatic source whose
/// value is its total power in watts.
pub fn luminous_flux(spd: &SpectralTable, table: &SpectralTable) -> Result<f64> {
    require_kind(spd, SpectralKind::SpectralRadiantFluxWperNm)?;
    require_kind(table, SpectralKind::LuminosityV)?;
    let samples = spd.samples();
    if let [only] = samples {
        let wl = Wavelength::from_nm(only.wavelength_nm)?;
        return monochromatic_luminous_flux(wl, only.value, table);
    }
    let lo = samples[0].wavelength_nm;
    let hi = samples[samples.len() - 1].wavelength_nm;
    let mut grid: Vec<f64> = samples
        .iter()
        .map(|s| s.wavelength_nm)
        .chain(
            table
                .samples()
                .iter()
                .map(|s| s.wavelength_nm)
                .filter(|&nm| nm > lo && nm < hi),
        )
        .collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let weighted = |nm: f64| table.value_at(nm) * spd.value_at(nm);
    let integral: f64 = grid
        .windows(2)
        .map(|w| 0.5 * (w[1] - w[0]) * (weighted(w[0]) + weighted(w[1])))
        .sum();
    Ok(LUMINOUS_EFFICACY * integral)
}

/// Luminance of a ray, `n²·dΦ/G`, in cd/m².
pub fn luminance_of_ray(refractive_index: f64, flux_lm: f64, etendue: f64) -> Result<f64> {
    if !refractive_index.is_finite() || refractive_index < 1.0 {
        return Err(domain(format!(
            "refractive index must be at least 1, got {refractive_index}"
        )));
    }
    if !etendue.is_finite() || etendue <= 0.0 {
        return Err(domain(format!("étendue must be positive, got {etendue}")));
    }
    if !flux_lm.is_finite() {
        return Err(domain("luminous flux must be finite"));
    }
    Ok(refractive_index * refractive_index * flux_lm / etendue)
}

/// Pointance of an isotropic source: its strength spread over the full 4π sr sphere.
pub fn pointance(strength_lm: f64) -> Result<f64> {
    if !strength_lm.is_finite() || strength_lm < 0.0 {
        return Err(domain(format!(
            "source strength must be finite and non-negative, got {strength_lm}"
        )));
    }
    Ok(strength_lm / (4.0 * PI))
}

/// Illuminance in lux at `distance_m` from an isotropic source of `strength_lm`.
pub fn illuminance(strength_lm: f64, distance_m: f64) -> Result<f64> {
    if !distance_m.is_finite() || distance_m <= 0.0 {
        return Err(domain(format!(
            "distance must be positive, got {distance_m} m"
        )));
    }
    Ok(pointance(strength_lm)? / (distance_m * distance_m))
}
