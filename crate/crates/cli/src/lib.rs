//! Command dispatch for the `vlhvs` binary.
//!
//! Single-value queries print JSON to stdout; sweeps write CSV files.
//! Exit codes: 0 success, 1 library or I/O failure, 2 usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vlhvs::colour::{convert_image, reconstruct_rgb};
use vlhvs::experiment::{format_sig6, report_csv, sensitivity_experiment};
use vlhvs::io::{read_ppm, read_ycf, write_ppm, write_ycf};
use vlhvs::physics::{
    classify_band, dominant_cone, frequency_thz, illuminance, luminous_flux, photon_energy,
    photon_flux, pointance, SpectralKind, SpectralTable, Wavelength,
};
use vlhvs::plane::{downsample_chroma, gaussian_blur, high_freq_energy, GaussianSpec};
use vlhvs::quant::{mse, psnr_from_mse, quantize_image};
use vlhvs::{BitDepth, PlanarImage, PlaneKind, QuantSpec, Subsampling};

/// Environment variable naming a replacement luminosity-function CSV.
pub const VLAMBDA_ENV: &str = "VLHVS_VLAMBDA";

type Failure = Box<dyn std::error::Error>;

#[derive(Debug, Parser)]
#[command(
    name = "vlhvs",
    version,
    about = "Visible-light physics and luma/chroma imaging tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Photon energy, photon flux and photometry.
    #[command(subcommand)]
    Physics(Physics),
    /// R'G'B' <-> Y'CbCr conversion.
    #[command(subcommand)]
    Color(Color),
    /// Chroma subsampling, blur and high-frequency energy.
    #[command(subcommand)]
    Plane(PlaneCmd),
    /// Luma/chroma quantisation.
    #[command(subcommand)]
    Quant(Quant),
    /// Distortion metrics.
    #[command(subcommand)]
    Metrics(Metrics),
    /// Reproducible experiments.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Debug, Subcommand)]
enum Physics {
    /// Energy, frequency, band and dominant cone of a photon.
    Energy {
        #[arg(long, allow_negative_numbers = true)]
        nm: f64,
    },
    /// Photons per square metre per second.
    Flux {
        #[arg(long, allow_negative_numbers = true)]
        photons: f64,
        #[arg(long, allow_negative_numbers = true)]
        area: f64,
        #[arg(long, allow_negative_numbers = true)]
        seconds: f64,
    },
    /// Illuminance of an isotropic point source at a distance.
    Illuminance {
        #[arg(long, allow_negative_numbers = true)]
        lumens: f64,
        #[arg(long, allow_negative_numbers = true)]
        metres: f64,
    },
    /// Luminous flux of a spectral power distribution (CSV: wavelength_nm,value in W/nm).
    LuminousFlux {
        #[arg(long)]
        spd: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum Color {
    /// Convert a PPM to a 4:4:4 YCF file.
    Convert {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Output bit depth; defaults to the PPM's depth.
        #[arg(long, value_parser = clap::value_parser!(u8).range(8..=16))]
        depth: Option<u8>,
    },
    /// Convert a YCF file back to PPM.
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// PPM depth (8 or 16); defaults to 8 for 8-bit input, else 16.
        #[arg(long, value_parser = ["8", "16"])]
        depth: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    #[value(name = "444")]
    S444,
    #[value(name = "422")]
    S422,
    #[value(name = "420")]
    S420,
}

impl From<Mode> for Subsampling {
    fn from(m: Mode) -> Self {
        match m {
            Mode::S444 => Subsampling::S444,
            Mode::S422 => Subsampling::S422,
            Mode::S420 => Subsampling::S420,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PlaneArg {
    Y,
    Cb,
    Cr,
}

impl From<PlaneArg> for PlaneKind {
    fn from(p: PlaneArg) -> Self {
        match p {
            PlaneArg::Y => PlaneKind::Y,
            PlaneArg::Cb => PlaneKind::Cb,
            PlaneArg::Cr => PlaneKind::Cr,
        }
    }
}

#[derive(Debug, Subcommand)]
enum PlaneCmd {
    /// Downsample the chroma planes of a 4:4:4 file.
    Subsample {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
    },
    /// Gaussian-blur one plane.
    Blur {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        plane: PlaneArg,
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// High-frequency energy of every plane.
    Hf {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
    },
}

#[derive(Debug, Subcommand)]
enum Quant {
    /// Quantise and reconstruct every plane.
    Run {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        luma_qp: u8,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        chroma_offset: i32,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum Metrics {
    /// Per-plane MSE and PSNR between two YCF files.
    Psnr {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum Experiment {
    /// Sweep luma QPs over an image and report per-plane damage as CSV.
    Sensitivity(SensitivityArgs),
}

#[derive(Debug, Args)]
struct SensitivityArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Comma-separated luma QPs.
    #[arg(long, value_delimiter = ',', required = true)]
    qps: Vec<u8>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    sigma: f64,
    #[arg(long)]
    report: PathBuf,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    chroma_offset: i32,
    /// Chroma layout the image is converted to before quantisation.
    #[arg(long, default_value = "420")]
    mode: Mode,
    /// Y'CbCr bit depth; defaults to the PPM's depth.
    #[arg(long, value_parser = clap::value_parser!(u8).range(8..=16))]
    depth: Option<u8>,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn dispatch<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let mut text = e.render().to_string();
            if !text.contains("Usage:") {
                // Value errors omit the usage line; usage errors always carry one.
                text = format!("{text}\n{}\n", Cli::command().render_usage());
            }
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    2
                }
            };
        }
    };
    match run(cli.command) {
        Ok(Some(value)) => {
            let _ = writeln!(
                stdout,
                "{}",
                serde_json::to_string_pretty(&value).expect("json")
            );
            0
        }
        Ok(None) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn run(command: Command) -> Result<Option<Value>, Failure> {
    match command {
        Command::Physics(p) => physics(p).map(Some),
        Command::Color(c) => color(c),
        Command::Plane(p) => plane(p),
        Command::Quant(q) => quant(q).map(Some),
        Command::Metrics(m) => metrics(m).map(Some),
        Command::Experiment(Experiment::Sensitivity(a)) => sensitivity(a).map(Some),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn load_ycf(path: &Path) -> Result<PlanarImage, Failure> {
    Ok(read_ycf(&read(path)?)?)
}

/// JSON has no infinity; encode it as the string "inf".
fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!(format_sig6(v))
    }
}

fn vlambda_table() -> Result<Option<SpectralTable>, Failure> {
    match std::env::var_os(VLAMBDA_ENV) {
        Some(path) if !path.is_empty() => {
            let path = PathBuf::from(path);
            let text = String::from_utf8(read(&path)?)
                .map_err(|_| format!("{}: not UTF-8", path.display()))?;
            Ok(Some(SpectralTable::from_csv(
                SpectralKind::LuminosityV,
                &text,
            )?))
        }
        _ => Ok(None),
    }
}

fn physics(cmd: Physics) -> Result<Value, Failure> {
    Ok(match cmd {
        Physics::Energy { nm } => {
            let wl = Wavelength::from_nm(nm)?;
            let e = photon_energy(wl);
            json!({
                "nm": nm,
                "joules": e.joules(),
                "ev": e.electron_volts(),
                "frequency_thz": frequency_thz(wl),
                "band": classify_band(wl).name(),
                "cone": dominant_cone(wl).ok().map(|c| c.name()),
            })
        }
        Physics::Flux {
            photons,
            area,
            seconds,
        } => json!({
            "photons_per_m2_s": photon_flux(photons, area, seconds)?,
        }),
        Physics::Illuminance { lumens, metres } => json!({
            "lux": illuminance(lumens, metres)?,
            "pointance_lm_per_sr": pointance(lumens)?,
        }),
        Physics::LuminousFlux { spd } => {
            let text = String::from_utf8(read(&spd)?)
                .map_err(|_| format!("{}: not UTF-8", spd.display()))?;
            let spd = SpectralTable::from_csv(SpectralKind::SpectralRadiantFluxWperNm, &text)?;
            let custom = vlambda_table()?;
            let table = custom.as_ref().unwrap_or_else(|| SpectralTable::photopic());
            json!({ "lumens": luminous_flux(&spd, table)? })
        }
    })
}

fn color(cmd: Color) -> Result<Option<Value>, Failure> {
    match cmd {
        Color::Convert { input, out, depth } => {
            let rgb = read_ppm(&read(&input)?)?;
            let depth = match depth {
                Some(d) => BitDepth::new(d)?,
                None => rgb.depth(),
            };
            write(&out, &write_ycf(&convert_image(&rgb, depth)?))?;
        }
        Color::Reconstruct { input, out, depth } => {
            let img = load_ycf(&input)?;
            let bits = match depth.as_deref() {
                Some("8") => 8,
                Some(_) => 16,
                None if img.depth().bits() == 8 => 8,
                None => 16,
            };
            let rgb = reconstruct_rgb(&img, BitDepth::new(bits)?)?;
            write(&out, &write_ppm(&rgb)?)?;
        }
    }
    Ok(None)
}

fn plane(cmd: PlaneCmd) -> Result<Option<Value>, Failure> {
    match cmd {
        PlaneCmd::Subsample { input, mode, out } => {
            let img = load_ycf(&input)?;
            write(&out, &write_ycf(&downsample_chroma(&img, mode.into())?))?;
            Ok(None)
        }
        PlaneCmd::Blur {
            input,
            plane,
            sigma,
            out,
        } => {
            let img = load_ycf(&input)?;
            let spec = GaussianSpec::new(sigma)?;
            let kind = PlaneKind::from(plane);
            let blurred = img.with_plane(kind, gaussian_blur(img.plane(kind), &spec))?;
            write(&out, &write_ycf(&blurred))?;
            Ok(None)
        }
        PlaneCmd::Hf { input, sigma } => {
            let img = load_ycf(&input)?;
            let spec = GaussianSpec::new(sigma)?;
            let mut obj = serde_json::Map::new();
            obj.insert("sigma".into(), json!(sigma));
            for kind in PlaneKind::ALL {
                obj.insert(
                    kind.name().into(),
                    json!(high_freq_energy(img.plane(kind), &spec, img.depth())),
                );
            }
            Ok(Some(Value::Object(obj)))
        }
    }
}

fn quant(cmd: Quant) -> Result<Value, Failure> {
    let Quant::Run {
        input,
        luma_qp,
        chroma_offset,
        out,
    } = cmd;
    let img = load_ycf(&input)?;
    let spec = QuantSpec::new(luma_qp, chroma_offset)?;
    let rec = quantize_image(&img, &spec)?;
    write(&out, &write_ycf(&rec))?;
    Ok(json!({
        "luma_qp": spec.luma_qp(),
        "chroma_qp": spec.chroma_qp(img.subsampling()),
    }))
}

fn metrics(cmd: Metrics) -> Result<Value, Failure> {
    let Metrics::Psnr { a, b } = cmd;
    let (a, b) = (load_ycf(&a)?, load_ycf(&b)?);
    if a.depth() != b.depth() || a.subsampling() != b.subsampling() {
        return Err(format!(
            "images differ in layout: {}-bit {} vs {}-bit {}",
            a.depth().bits(),
            a.subsampling(),
            b.depth().bits(),
            b.subsampling()
        )
        .into());
    }
    let mut obj = serde_json::Map::new();
    for kind in PlaneKind::ALL {
        let m = mse(a.plane(kind), b.plane(kind))?;
        obj.insert(
            kind.name().into(),
            json!({ "mse": m, "psnr": num(psnr_from_mse(m, a.depth())) }),
        );
    }
    Ok(Value::Object(obj))
}

fn sensitivity(args: SensitivityArgs) -> Result<Value, Failure> {
    let rgb = read_ppm(&read(&args.input)?)?;
    let depth = match args.depth {
        Some(d) => BitDepth::new(d)?,
        None => rgb.depth(),
    };
    let full = convert_image(&rgb, depth)?;
    let img = match Subsampling::from(args.mode) {
        Subsampling::S444 => full,
        target => downsample_chroma(&full, target)?,
    };
    let sweep = args
        .qps
        .iter()
        .map(|&q| QuantSpec::new(q, args.chroma_offset))
        .collect::<vlhvs::Result<Vec<_>>>()?;
    let rep = sensitivity_experiment(&img, &sweep, args.sigma)?;
    write(&args.report, report_csv(&rep.rows).as_bytes())?;
    let bc = rep.blur_contrast;
    Ok(json!({
        "rows": rep.rows.len(),
        "subsampling": img.subsampling().token(),
        "blur_contrast": {
            "sigma": bc.sigma,
            "luma_blurred_rgb_psnr": num(bc.luma_blurred_rgb_psnr),
            "chroma_blurred_rgb_psnr": num(bc.chroma_blurred_rgb_psnr),
        },
    }))
}
