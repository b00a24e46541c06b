// Own test binary: the environment is process-global.

#[test]
fn replacement_luminosity_table_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let v = dir.path().join("v.csv");
    std::fs::write(&v, "wavelength_nm,value\n500,0.5\n600,0.5\n").unwrap();
    let spd = dir.path().join("spd.csv");
    std::fs::write(&spd, "wavelength_nm,value\n555,2\n").unwrap();
    std::env::set_var(vlhvs_cli::VLAMBDA_ENV, &v);

    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = [
        "vlhvs",
        "physics",
        "luminous-flux",
        "--spd",
        spd.to_str().unwrap(),
    ];
    assert_eq!(vlhvs_cli::dispatch(args, &mut out, &mut err), 0);
    let json: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(json["lumens"].as_f64().unwrap(), 683.0);

    std::fs::write(&v, "garbage").unwrap();
    assert_eq!(
        vlhvs_cli::dispatch(args, &mut Vec::new(), &mut Vec::new()),
        1
    );
}
