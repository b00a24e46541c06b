//! Visible-light photometry and a luma/chroma imaging lab.
//!
//! The crate has two layers:
//!
//! * [`physics`]: photon energy, spectral bands, retinal cones, luminous
//!   intensity and flux, inverse-square illuminance.
//! * the imaging layer: BT.2020 R'G'B' ↔ Y'CbCr conversion ([`colour`]),
//!   chroma subsampling and Gaussian filtering ([`plane`]), QP-driven
//!   quantisation and PSNR ([`quant`]), the sensitivity experiment
//!   ([`experiment`]) and the PPM / YCF file formats ([`io`]).

pub mod colour;
mod error;
pub mod experiment;
pub mod image;
pub mod io;
pub mod physics;
pub mod plane;
pub mod quant;

pub use colour::{BitDepth, RgbTriplet, YCbCrTriplet, BT2020};
pub use error::{Error, Result};
pub use image::{PlanarImage, Plane, PlaneKind, RgbImage, Subsampling};
pub use quant::QuantSpec;
