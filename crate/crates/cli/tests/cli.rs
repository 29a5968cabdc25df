use std::io::Write as _;

use optlink_cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn optlink(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("optlink").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn config_file(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn csv_value(stdout: &str, column: &str) -> String {
    let mut lines = stdout.lines();
    let header: Vec<_> = lines.next().unwrap().split(',').collect();
    let values: Vec<_> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == column).unwrap();
    values[i].to_string()
}

fn assert_domain_error(o: &Outcome, needle: &str) {
    assert_eq!(o.code, EXIT_DOMAIN, "stderr: {}", o.stderr);
    assert!(o.stdout.is_empty(), "stdout must stay empty: {}", o.stdout);
    assert!(
        o.stderr.contains(needle),
        "{needle:?} not in {:?}",
        o.stderr
    );
}

#[test]
fn help_exits_zero() {
    let o = optlink(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("Usage"));
    assert!(optlink(&["sweep", "--help"]).stdout.contains("--figure"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &[][..],
        &["bogus"],
        &["fso", "budget"],
        &["fso", "budget", "--length", "abc"],
        &["sweep", "--figure", "fig4"],
        &["--format", "xml", "fiber", "limits"],
    ] {
        let o = optlink(args);
        assert_eq!(o.code, EXIT_USAGE, "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn budget_far_outside_fit_domains_succeeds() {
    let o = optlink(&["fso", "budget", "--length", "20"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(csv_value(&o.stdout, "length_km"), "20");
    assert_eq!(csv_value(&o.stdout, "closes"), "false");
}

#[test]
fn capacity_outside_distance_fit_fails() {
    assert_domain_error(
        &optlink(&["fso", "capacity", "--length", "2"]),
        "[0, 1.4] km",
    );
    assert_domain_error(&optlink(&["fso", "capacity", "--freq", "3"]), "[0, 2] GHz");
}

#[test]
fn capacity_at_defaults() {
    let o = optlink(&["fso", "capacity"]);
    assert_eq!(o.code, EXIT_OK);
    let gbps: f64 = csv_value(&o.stdout, "capacity_gbps").parse().unwrap();
    assert!(gbps > 0.0 && gbps.is_finite());
}

#[test]
fn non_physical_lengths_fail() {
    for len in ["-1", "0", "nan", "inf"] {
        let o = optlink(&["fso", "budget", "--length", len]);
        assert_domain_error(&o, "length_km");
        assert!(!o.stderr.contains("panicked"));
    }
    assert_domain_error(
        &optlink(&["fiber", "rise-time", "--length", "-3"]),
        "length_km",
    );
}

#[test]
fn fiber_limits_report_the_reference_design() {
    let o = optlink(&["--format", "json", "fiber", "limits"]);
    assert_eq!(o.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert!((v["attenuation_limited_km"].as_f64().unwrap() - 16.26947130610795).abs() < 1e-9);
    assert_eq!(v["pmd_limited_km"].as_f64().unwrap(), 40000.0);
    assert_eq!(v["limiting_factor"], "rise_time");
}

#[test]
fn transceiver_limited_rise_time_is_a_domain_error() {
    let cfg = config_file(r#"{"fiber": {"bit_rate_gbps": 10, "tx_bandwidth_mhz": 500}}"#);
    let path = cfg.path().to_str().unwrap();
    assert_domain_error(
        &optlink(&["--config", path, "fiber", "limits"]),
        "transceiver-limited",
    );
}

#[test]
fn config_errors_name_the_key() {
    let cases = [
        (r#"{"fso": {"tx_power_mw": -1}}"#, "fso.tx_power_mw"),
        (r#"{"fso": {"tx_power": 1}}"#, "fso.tx_power"),
        (
            r#"{"weather": {"rain_rate_mm_per_hr": -2}}"#,
            "weather.rain_rate_mm_per_hr",
        ),
        (
            r#"{"fiber": {"transceiver": "LASER"}}"#,
            "fiber.transceiver",
        ),
        (r#"{"fiber": {"modal_q": 2}}"#, "fiber.modal_q"),
        ("{not json", "config"),
    ];
    for (json, key) in cases {
        let cfg = config_file(json);
        let o = optlink(&[
            "--config",
            cfg.path().to_str().unwrap(),
            "fso",
            "max-distance",
        ]);
        assert_domain_error(&o, key);
    }
    assert_domain_error(
        &optlink(&[
            "--config",
            "/nonexistent/optlink.json",
            "defaults",
            "--show",
        ]),
        "/nonexistent/optlink.json",
    );
}

#[test]
fn config_overrides_apply() {
    let cfg =
        config_file(r#"{"fso": {"divergence_deg": 0.115}, "weather": {"visibility_km": 10}}"#);
    let path = cfg.path().to_str().unwrap();
    let o = optlink(&["--config", path, "fso", "max-distance"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let narrow: f64 = csv_value(&o.stdout, "max_distance_km").parse().unwrap();
    let wide: f64 = csv_value(&optlink(&["fso", "max-distance"]).stdout, "max_distance_km")
        .parse()
        .unwrap();
    assert!(narrow > 100.0 * wide, "{narrow} vs {wide}");
    assert_eq!(csv_value(&o.stdout, "visibility_km"), "10");
}

#[test]
fn defaults_round_trip_through_config() {
    let o = optlink(&["--format", "json", "defaults", "--show"]);
    assert_eq!(o.code, EXIT_OK);
    let cfg = config_file(&o.stdout);
    let again = optlink(&[
        "--config",
        cfg.path().to_str().unwrap(),
        "--format",
        "json",
        "defaults",
    ]);
    assert_eq!(again.stdout, o.stdout);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["fiber"]["transceiver"], "LD_APD");
    assert_eq!(v["fiber"]["coupling_loss_db"], 8.0);
    assert_eq!(v["fso"]["tx_power_mw"], 100.0);
    let csv = optlink(&["defaults", "--show"]).stdout;
    assert!(csv.starts_with("key,value\n"));
    assert!(
        csv.contains("\nweather.visibility_km,50\n")
            || csv.contains("\nweather.visibility_km,50.0\n")
    );
}

#[test]
fn sweep_matches_committed_goldens() {
    for (fig, golden) in [
        ("fig5", include_str!("golden/fig5.csv")),
        ("fig14", include_str!("golden/fig14.csv")),
    ] {
        let o = optlink(&["sweep", "--figure", fig]);
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(o.stdout, golden, "{fig}");
        assert!(o.stderr.ends_with("trend overall: PASS\n"), "{}", o.stderr);
    }
}

#[test]
fn fig14_columns() {
    let o = optlink(&["sweep", "--figure", "fig14"]);
    let header = o.stdout.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "B0_gbps,L_NRZ_km,L_RZ_km");
    assert!(o.stdout.lines().take(3).all(|l| l.starts_with("# ")));
}

#[test]
fn sweep_to_file_keeps_stdout_empty() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig7.csv");
    let o = optlink(&["sweep", "--figure", "fig7", "--out", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.is_empty());
    assert!(o.stderr.contains("trend overall: PASS"));
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, optlink(&["sweep", "--figure", "fig7"]).stdout);
}

#[test]
fn sweep_json_keeps_markers() {
    let o = optlink(&["--format", "json", "sweep", "--figure", "fig8"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["metadata"]["preset"], "fig8");
    assert_eq!(v["rows"].as_array().unwrap().len(), 101);
    assert_eq!(v["headers"][0], "freq_ghz");
}

#[test]
fn sweep_honours_config() {
    let cfg = config_file(r#"{"weather": {"reference_wavelength_um": 0.6}}"#);
    let o = optlink(&[
        "--config",
        cfg.path().to_str().unwrap(),
        "sweep",
        "--figure",
        "fig5",
    ]);
    assert_eq!(o.code, EXIT_OK);
    assert_ne!(o.stdout, include_str!("golden/fig5.csv"));
}
