//! Visible-light physics: photon energetics, spectral bands, retinal cones and
//! photometric quantities.
//!
//! Wavelengths are carried in nanometres and converted to metres only where a
//! formula needs SI units.

mod photometry;
mod spectral;
mod vlambda;

pub use photometry::{
    illuminance, luminance_of_ray, luminosity_lookup, luminous_flux, luminous_intensity,
    monochromatic_luminous_flux, pointance, SpectralKind, SpectralSample, SpectralTable,
};
pub use spectral::{
    classify_band, dominant_cone, frequency_thz, photon_emission_rate, photon_energy, photon_flux,
    ConeClass, PhotonEnergy, RetinaConstants, SpectralBand, Wavelength,
};

/// Planck constant in J·s (exact SI value).
pub const PLANCK_H: f64 = 6.626_070_15e-34;
/// Speed of light in vacuum in m/s (exact SI value).
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
/// Maximum luminous efficacy of radiation in lm/W.
pub const LUMINOUS_EFFICACY: f64 = 683.0;
/// Electron volts per joule, at the four-figure precision used for the eV view.
pub const EV_PER_JOULE: f64 = 6.242e18;

/// The constants used by the photon and photometry formulas, grouped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub planck_h: f64,
    pub speed_of_light_c: f64,
    pub luminous_efficacy_c: f64,
}

impl PhysicalConstants {
    pub const SI: PhysicalConstants = PhysicalConstants {
        planck_h: PLANCK_H,
        speed_of_light_c: SPEED_OF_LIGHT,
        luminous_efficacy_c: LUMINOUS_EFFICACY,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::SI
    }
}
