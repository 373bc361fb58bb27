use std::io::Write;
use std::process::Command;

const PARAMS: [&str; 12] = [
    "--kappa", "1", "--theta", "0.04", "--xi", "0.2", "--v0", "0.04", "--eta", "0.01", "--d", "0.2",
];

fn run<S: AsRef<str>>(args: &[S]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fheston").chain(args.iter().map(AsRef::as_ref));
    let code = fheston::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn with_params<'a>(verb: &[&'a str], extra: &[&'a str]) -> Vec<&'a str> {
    [verb, &PARAMS[..], extra].concat()
}

fn header(s: &str) -> &str {
    s.lines().next().unwrap_or("")
}

#[test]
fn golden_headers() {
    let cases: [(&[&str], &[&str], &str); 6] = [
        (&["cgf"], &["--u", "0.5", "--t", "1"], "u,w,t,value,status"),
        (
            &["price", "--kind", "put"],
            &["--x", "-0.1", "--t", "1"],
            "x,t,price,implied_vol",
        ),
        (
            &["smile", "--regime", "small"],
            &["--t", "0.05", "--x-steps", "3"],
            "x,t,implied_vol,source",
        ),
        (
            &["asymptote"],
            &["--x", "0.1", "--t", "0.01"],
            "x,put,call,covered_call",
        ),
        (
            &["simulate", "--quantity", "call"],
            &["--x", "0", "--t", "1", "--paths", "200"],
            "quantity,x,t,mean,std_error,n_paths,seed,reference",
        ),
        (
            &["ratefn", "--regime", "large"],
            &["--x-steps", "3"],
            "x,regime,rate,branch",
        ),
    ];
    for (verb, extra, expected) in cases {
        let (code, out, err) = run(&with_params(verb, extra));
        assert_eq!(code, 0, "{verb:?}: {err}");
        assert_eq!(header(&out), expected);
        assert!(out.lines().count() >= 2, "{verb:?} printed no rows");
    }
    let (code, out, _) = run(&["verify", "--suite", "oracle"]);
    assert_eq!(code, 0);
    assert_eq!(header(&out), "name,expected,observed,gap,tolerance,pass");
}

#[test]
fn martingale_cgf_is_zero() {
    let (code, out, _) = run(&with_params(&["cgf"], &["--u", "1", "--t", "5"]));
    assert_eq!(code, 0);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    let value: f64 = row[3].parse().unwrap();
    assert!(value.abs() <= 1e-8);
    assert_eq!(row[4], "converged");
}

#[test]
fn out_of_range_d_exits_with_2() {
    let model = [
        "--kappa", "1", "--theta", "0.04", "--xi", "0.2", "--v0", "0.04", "--eta", "0.01", "--d",
        "0.7",
    ];
    for verb in [
        &["price", "--kind", "call", "--x", "0"][..],
        &["cgf", "--u", "1"],
    ] {
        let args = [verb, &model[..], &["--t", "1"]].concat();
        let (code, out, err) = run(&args);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        let e: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert!(
            e["error"].as_str().unwrap().contains("OutOfRange: d"),
            "{err}"
        );
        assert_eq!(e["exit_code"], 2);
    }
}

#[test]
fn missing_parameter_and_bad_flag() {
    let (code, _, err) = run(&["cgf", "--u", "1", "--t", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("kappa"));
    let (code, _, _) = run(&["cgf", "--nonsense", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn failed_verification_exits_with_1() {
    let (code, out, err) = run(&["verify", "--suite", "largetime", "--d", "0.2"]);
    assert_eq!(code, 1);
    assert!(out.contains("false"));
    assert!(err.contains("failed"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"kappa": 1, "theta": 0.04, "xi": 0.2, "v0": 0.04, "eta": 0.01, "d": 0.2, "x": 0.1, "t": 1}}"#
    )
    .unwrap();
    let path = f.path().to_str().unwrap();
    let (code, from_file, err) = run(&["price", "--kind", "call", "--config", path]);
    assert_eq!(code, 0, "{err}");
    let (_, from_flags, _) = run(&with_params(
        &["price", "--kind", "call"],
        &["--x", "0.1", "--t", "1"],
    ));
    assert_eq!(from_file, from_flags);
    let (_, overridden, _) = run(&["price", "--kind", "call", "--config", path, "--x", "0"]);
    assert_ne!(overridden, from_file);
    assert!(overridden
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("0.0000000000000000e0,"));
}

#[test]
fn unknown_config_key_is_rejected() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"kapa": 1}}"#).unwrap();
    let (code, _, _) = run(&["cgf", "--config", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn json_output_has_named_fields() {
    let (code, out, _) = run(&with_params(
        &["price", "--kind", "call"],
        &["--x", "0", "--t", "1", "--format", "json"],
    ));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let row = &v.as_array().unwrap()[0];
    let keys: Vec<&str> = row
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(keys, ["x", "t", "price", "implied_vol"]);
    let price = row["price"].as_f64().unwrap();
    assert!(price > 0.0 && price < 1.0);
}

#[test]
fn simulation_is_reproducible_by_seed() {
    let extra = ["--x", "0", "--t", "1", "--paths", "500", "--seed", "7"];
    let a = run(&with_params(&["simulate", "--quantity", "call"], &extra));
    let b = run(&with_params(&["simulate", "--quantity", "call"], &extra));
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let other = ["--x", "0", "--t", "1", "--paths", "500", "--seed", "8"];
    let c = run(&with_params(&["simulate", "--quantity", "call"], &other));
    assert_ne!(a.1, c.1);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fheston");
    let ok = Command::new(bin)
        .args(["verify", "--suite", "oracle"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin)
        .args(["cgf", "--u", "1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
