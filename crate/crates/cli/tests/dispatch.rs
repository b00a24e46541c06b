use std::path::{Path, PathBuf};

use serde_json::Value;
use vlhvs_cli::dispatch;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("vlhvs").chain(args.iter().copied());
    let code = dispatch(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json(args: &[&str]) -> Value {
    let r = run(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn energy_at_700nm() {
    let v = json(&["physics", "energy", "--nm", "700"]);
    let j = v["joules"].as_f64().unwrap();
    let ev = v["ev"].as_f64().unwrap();
    assert!((j - 2.84e-19).abs() / 2.84e-19 < 5e-3, "{j}");
    assert!((ev - 1.77).abs() < 5e-3, "{ev}");
    assert_eq!(v["band"], "Red");
    assert_eq!(v["cone"], "L");
}

#[test]
fn energy_outside_visible_has_no_cone() {
    let v = json(&["physics", "energy", "--nm", "1000"]);
    assert_eq!(v["band"], "OutsideVisible");
    assert!(v["cone"].is_null());
}

#[test]
fn negative_wavelength_is_a_domain_error() {
    let r = run(&["physics", "energy", "--nm", "-5"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("domain"), "{}", r.stderr);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["physics", "energy", "--bogus", "1"][..],
        &["physics", "energy"],
        &["physics", "energy", "--nm", "abc"],
        &["teleport"],
        &[],
        &[
            "plane",
            "subsample",
            "--in",
            "x",
            "--mode",
            "411",
            "--out",
            "y",
        ],
        &[
            "color", "convert", "--in", "x", "--out", "y", "--depth", "7",
        ],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stdout.is_empty());
        assert!(r.stderr.contains("Usage"), "{args:?}: {}", r.stderr);
    }
}

#[test]
fn help_goes_to_stdout() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("physics"));
    assert!(r.stderr.is_empty());
}

#[test]
fn flux_and_illuminance() {
    let v = json(&[
        "physics",
        "flux",
        "--photons",
        "1e6",
        "--area",
        "2",
        "--seconds",
        "0.5",
    ]);
    assert_eq!(v["photons_per_m2_s"].as_f64().unwrap(), 1e6);
    let v = json(&[
        "physics",
        "illuminance",
        "--lumens",
        "1000",
        "--metres",
        "2",
    ]);
    let lux = v["lux"].as_f64().unwrap();
    assert!((lux - 1000.0 / (16.0 * std::f64::consts::PI)).abs() < 1e-12);
    assert_eq!(
        run(&["physics", "illuminance", "--lumens", "1", "--metres", "0"]).code,
        1
    );
    assert_eq!(
        run(&[
            "physics",
            "flux",
            "--photons",
            "1",
            "--area",
            "-1",
            "--seconds",
            "1"
        ])
        .code,
        1
    );
}

#[test]
fn luminous_flux_of_files() {
    let dir = tempfile::tempdir().unwrap();
    let mono = dir.path().join("mono.csv");
    std::fs::write(&mono, "wavelength_nm,value\n555,1\n").unwrap();
    let v = json(&["physics", "luminous-flux", "--spd", s(&mono)]);
    assert!((v["lumens"].as_f64().unwrap() - 683.0).abs() < 1e-9);

    let broken = dir.path().join("broken.csv");
    std::fs::write(&broken, "nonsense\n").unwrap();
    assert_eq!(
        run(&["physics", "luminous-flux", "--spd", s(&broken)]).code,
        1
    );
    let missing = dir.path().join("missing.csv");
    assert_eq!(
        run(&["physics", "luminous-flux", "--spd", s(&missing)]).code,
        1
    );
}

#[test]
fn ppm_ycf_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let src = corpus("synthetic/shapes.ppm");
    let ycf = dir.path().join("a.ycf");
    let back = dir.path().join("a.ppm");
    assert_eq!(
        run(&["color", "convert", "--in", s(&src), "--out", s(&ycf)]).code,
        0
    );
    assert_eq!(
        run(&["color", "reconstruct", "--in", s(&ycf), "--out", s(&back)]).code,
        0
    );
    let a = vlhvs::io::read_ppm(&std::fs::read(&src).unwrap()).unwrap();
    let b = vlhvs::io::read_ppm(&std::fs::read(&back).unwrap()).unwrap();
    for (pa, pb) in a.channels().iter().zip(b.channels()) {
        for (&x, &y) in pa.data().iter().zip(pb.data()) {
            assert!(x.abs_diff(y) <= 1);
        }
    }

    let wide = dir.path().join("w.ycf");
    let wide_back = dir.path().join("w.ppm");
    assert_eq!(
        run(&[
            "color",
            "convert",
            "--in",
            s(&src),
            "--out",
            s(&wide),
            "--depth",
            "10"
        ])
        .code,
        0
    );
    assert_eq!(
        run(&[
            "color",
            "reconstruct",
            "--in",
            s(&wide),
            "--out",
            s(&wide_back)
        ])
        .code,
        0
    );
    let w = vlhvs::io::read_ppm(&std::fs::read(&wide_back).unwrap()).unwrap();
    assert_eq!(w.depth().bits(), 16);
}

#[test]
fn plane_and_quant_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n);
    let src = corpus("natural/chelsea.ppm");
    assert_eq!(
        run(&["color", "convert", "--in", s(&src), "--out", s(&p("a.ycf"))]).code,
        0
    );
    assert_eq!(
        run(&[
            "plane",
            "subsample",
            "--in",
            s(&p("a.ycf")),
            "--mode",
            "420",
            "--out",
            s(&p("b.ycf"))
        ])
        .code,
        0
    );
    let header = std::fs::read(p("b.ycf")).unwrap();
    assert!(header.starts_with(b"YCF1 300 200 8 420\n"));
    // Subsampling twice is a structural error.
    assert_eq!(
        run(&[
            "plane",
            "subsample",
            "--in",
            s(&p("b.ycf")),
            "--mode",
            "420",
            "--out",
            s(&p("x.ycf"))
        ])
        .code,
        1
    );

    assert_eq!(
        run(&[
            "plane",
            "blur",
            "--in",
            s(&p("b.ycf")),
            "--plane",
            "cb",
            "--sigma",
            "2",
            "--out",
            s(&p("c.ycf"))
        ])
        .code,
        0
    );
    let v = json(&[
        "metrics",
        "psnr",
        "--a",
        s(&p("b.ycf")),
        "--b",
        s(&p("c.ycf")),
    ]);
    assert_eq!(v["y"]["psnr"], "inf");
    assert_eq!(v["cr"]["psnr"], "inf");
    assert!(v["cb"]["psnr"].as_f64().unwrap() > 20.0);
    assert_eq!(
        run(&[
            "plane",
            "blur",
            "--in",
            s(&p("b.ycf")),
            "--plane",
            "y",
            "--sigma",
            "0",
            "--out",
            s(&p("x.ycf"))
        ])
        .code,
        1
    );

    let hf = json(&["plane", "hf", "--in", s(&p("b.ycf")), "--sigma", "1"]);
    assert!(hf["y"].as_f64().unwrap() > hf["cb"].as_f64().unwrap());

    let q = json(&[
        "quant",
        "run",
        "--in",
        s(&p("b.ycf")),
        "--luma-qp",
        "51",
        "--chroma-offset",
        "0",
        "--out",
        s(&p("q.ycf")),
    ]);
    assert_eq!(q["chroma_qp"], 39);
    let v = json(&[
        "metrics",
        "psnr",
        "--a",
        s(&p("b.ycf")),
        "--b",
        s(&p("q.ycf")),
    ]);
    assert!(v["y"]["mse"].as_f64().unwrap() > v["cb"]["mse"].as_f64().unwrap());
    assert_eq!(
        run(&[
            "quant",
            "run",
            "--in",
            s(&p("b.ycf")),
            "--luma-qp",
            "52",
            "--out",
            s(&p("x.ycf"))
        ])
        .code,
        1
    );
    // Layout mismatch.
    assert_eq!(
        run(&[
            "metrics",
            "psnr",
            "--a",
            s(&p("a.ycf")),
            "--b",
            s(&p("b.ycf"))
        ])
        .code,
        1
    );
}

#[test]
fn sensitivity_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let src = corpus("natural/coffee.ppm");
    let reports: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let out = dir.path().join(format!("r{i}.csv"));
            let r = run(&[
                "experiment",
                "sensitivity",
                "--in",
                s(&src),
                "--qps",
                "10,22,34,46,51",
                "--sigma",
                "1.0",
                "--report",
                s(&out),
            ]);
            assert_eq!(r.code, 0, "{}", r.stderr);
            std::fs::read(out).unwrap()
        })
        .collect();
    assert_eq!(reports[0], reports[1]);
    let text = String::from_utf8(reports[0].clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "luma_qp,chroma_qp,y_psnr,cb_psnr,cr_psnr,rgb_psnr,y_hf,cb_hf,cr_hf"
    );
    assert_eq!(lines.len(), 6);
    assert!(lines[5].starts_with("51,39,"));
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 9);
    }
}

#[test]
fn sensitivity_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let src = corpus("natural/coffee.ppm");
    let base = [
        "experiment",
        "sensitivity",
        "--in",
        s(&src),
        "--report",
        s(&out),
    ];
    let with = |extra: &[&str]| run(&[&base[..], extra].concat()).code;
    assert_eq!(with(&["--qps", "10,60"]), 1);
    assert_eq!(with(&["--qps", "10,x"]), 2);
    assert_eq!(with(&["--qps", "10", "--sigma", "-1"]), 1);
    assert_eq!(with(&[]), 2);
}
