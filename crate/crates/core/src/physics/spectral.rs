use std::fmt;

use super::{EV_PER_JOULE, PLANCK_H, SPEED_OF_LIGHT};
use crate::error::{domain, Result};

/// A photon wavelength in nanometres. Always finite and strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Wavelength(f64);

impl Wavelength {
    pub fn from_nm(nm: f64) -> Result<Self> {
        if !nm.is_finite() || nm <= 0.0 {
            return Err(domain(format!(
                "wavelength must be finite and positive, got {nm} nm"
            )));
        }
        Ok(Wavelength(nm))
    }

    #[inline]
    pub fn nm(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn metres(self) -> f64 {
        self.0 * 1e-9
    }
}

/// Energy of a single photon. Stored in joules; the electron-volt value is a view.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PhotonEnergy {
    joules: f64,
}

impl PhotonEnergy {
    pub fn from_joules(joules: f64) -> Result<Self> {
        if !joules.is_finite() || joules <= 0.0 {
            return Err(domain(format!(
                "photon energy must be finite and positive, got {joules} J"
            )));
        }
        Ok(PhotonEnergy { joules })
    }

    pub fn from_electron_volts(ev: f64) -> Result<Self> {
        Self::from_joules(ev / EV_PER_JOULE)
    }

    #[inline]
    pub fn joules(self) -> f64 {
        self.joules
    }

    #[inline]
    pub fn electron_volts(self) -> f64 {
        self.joules * EV_PER_JOULE
    }
}

/// `E = h·c/λ`.
pub fn photon_energy(wavelength: Wavelength) -> PhotonEnergy {
    PhotonEnergy {
        joules: PLANCK_H * SPEED_OF_LIGHT / wavelength.metres(),
    }
}

/// Frequency `c/λ` in terahertz.
pub fn frequency_thz(wavelength: Wavelength) -> f64 {
    SPEED_OF_LIGHT / wavelength.metres() / 1e12
}

/// Photons emitted per second by a source radiating `power_joules` over one second.
pub fn photon_emission_rate(power_joules: f64, energy: PhotonEnergy) -> Result<f64> {
    if !power_joules.is_finite() || power_joules < 0.0 {
        return Err(domain(format!(
            "source power must be finite and non-negative, got {power_joules} J"
        )));
    }
    Ok(power_joules / energy.joules)
}

/// Photon flux in photons per square metre per second.
pub fn photon_flux(photons: f64, area_m2: f64, duration_s: f64) -> Result<f64> {
    if !photons.is_finite() || photons < 0.0 {
        return Err(domain(format!(
            "photon count must be finite and non-negative, got {photons}"
        )));
    }
    if !area_m2.is_finite() || area_m2 <= 0.0 {
        return Err(domain(format!("area must be positive, got {area_m2} m²")));
    }
    if !duration_s.is_finite() || duration_s <= 0.0 {
        return Err(domain(format!(
            "duration must be positive, got {duration_s} s"
        )));
    }
    Ok(photons / (area_m2 * duration_s))
}

/// Perceptual colour band of a wavelength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectralBand {
    Violet,
    Blue,
    Green,
    Yellow,
    Orange,
    Red,
    OutsideVisible,
}

impl SpectralBand {
    pub const VISIBLE: [SpectralBand; 6] = [
        SpectralBand::Violet,
        SpectralBand::Blue,
        SpectralBand::Green,
        SpectralBand::Yellow,
        SpectralBand::Orange,
        SpectralBand::Red,
    ];

    /// Band edges in nm. Intervals are `[lo, hi)` except Red, which is `[620, 750]`.
    pub fn range_nm(self) -> Option<(f64, f64)> {
        match self {
            SpectralBand::Violet => Some((380.0, 450.0)),
            SpectralBand::Blue => Some((450.0, 495.0)),
            SpectralBand::Green => Some((495.0, 570.0)),
            SpectralBand::Yellow => Some((570.0, 590.0)),
            SpectralBand::Orange => Some((590.0, 620.0)),
            SpectralBand::Red => Some((620.0, 750.0)),
            SpectralBand::OutsideVisible => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpectralBand::Violet => "Violet",
            SpectralBand::Blue => "Blue",
            SpectralBand::Green => "Green",
            SpectralBand::Yellow => "Yellow",
            SpectralBand::Orange => "Orange",
            SpectralBand::Red => "Red",
            SpectralBand::OutsideVisible => "OutsideVisible",
        }
    }
}

impl fmt::Display for SpectralBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify_band(wavelength: Wavelength) -> SpectralBand {
    let nm = wavelength.nm();
    match nm {
        x if (380.0..450.0).contains(&x) => SpectralBand::Violet,
        x if (450.0..495.0).contains(&x) => SpectralBand::Blue,
        x if (495.0..570.0).contains(&x) => SpectralBand::Green,
        x if (570.0..590.0).contains(&x) => SpectralBand::Yellow,
        x if (590.0..620.0).contains(&x) => SpectralBand::Orange,
        x if (620.0..=750.0).contains(&x) => SpectralBand::Red,
        _ => SpectralBand::OutsideVisible,
    }
}

/// Retinal cone classes with their peak sensitivity and share of the cone population.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConeClass {
    L,
    M,
    S,
}

impl ConeClass {
    pub const ALL: [ConeClass; 3] = [ConeClass::L, ConeClass::M, ConeClass::S];

    pub fn peak_nm(self) -> f64 {
        match self {
            ConeClass::L => 650.0,
            ConeClass::M => 510.0,
            ConeClass::S => 475.0,
        }
    }

    pub fn population_fraction(self) -> f64 {
        match self {
            ConeClass::L => 0.64,
            ConeClass::M => 0.32,
            ConeClass::S => 0.04,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConeClass::L => "L",
            ConeClass::M => "M",
            ConeClass::S => "S",
        }
    }
}

/// Cone class whose peak is nearest to `wavelength`. Equidistant peaks resolve
/// to the longer-wavelength class.
pub fn dominant_cone(wavelength: Wavelength) -> Result<ConeClass> {
    if classify_band(wavelength) == SpectralBand::OutsideVisible {
        return Err(domain(format!(
            "{} nm lies outside the visible range",
            wavelength.nm()
        )));
    }
    let nm = wavelength.nm();
    // ALL is ordered from longest to shortest peak, so a strict `<` keeps the
    // longer class on ties.
    let mut best = ConeClass::ALL[0];
    let mut best_dist = (nm - best.peak_nm()).abs();
    for cone in &ConeClass::ALL[1..] {
        let dist = (nm - cone.peak_nm()).abs();
        if dist < best_dist {
            best = *cone;
            best_dist = dist;
        }
    }
    Ok(best)
}

/// Photoreceptor population counts of the human retina.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RetinaConstants {
    pub rods: u64,
    pub cones: u64,
}

impl RetinaConstants {
    pub const HUMAN: RetinaConstants = RetinaConstants {
        rods: 120_000_000,
        cones: 6_400_000,
    };
}
