use std::path::PathBuf;
use std::process::Command;

use kstar::star::StarKind;
use kstar_cli::{cmd_star, cmd_verify, Report, StarRequest, Suite, VerifyRequest};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn star(product: StarKind, d: usize, f: &str, g: &str, order: Option<u32>, commutator: bool) -> Report {
    cmd_star(&StarRequest { product, d: Some(d), f: f.into(), g: g.into(), order, commutator }).unwrap()
}

fn cases() -> Vec<(&'static str, Report)> {
    let seeded = |suite, d, samples| {
        let mut r = VerifyRequest::new(suite).dim(d);
        r.samples = Some(samples);
        r.seed = Some(11);
        cmd_verify(&r).unwrap()
    };
    vec![
        ("star_kappa_commutator", star(StarKind::Kappa, 3, "x0", "x2", None, true)),
        ("star_wv_commutator", star(StarKind::WickVoros, 1, "z1", "zb1", None, true)),
        ("star_kappa_unit", star(StarKind::Kappa, 1, "1", "x1", None, false)),
        ("star_rs_capped", star(StarKind::FromTwist(kstar::twist::TwistKind::JordanianRs), 2, "x0^2", "x0*x1 - 1/2*x2", Some(2), false)),
        ("star_su2_commutator", star(StarKind::Su2, 3, "x1", "x2", None, true)),
        ("verify_reduction_d2", cmd_verify(&VerifyRequest::new(Suite::Reduction).dim(2)).unwrap()),
        ("verify_measure_d2", cmd_verify(&VerifyRequest::new(Suite::Measure).dim(2)).unwrap()),
        ("verify_obstruction_d3", cmd_verify(&VerifyRequest::new(Suite::Obstruction).dim(3)).unwrap()),
        ("verify_fock_d1", cmd_verify(&VerifyRequest::new(Suite::Fock).dim(1)).unwrap()),
        ("verify_associativity_d2_seeded", seeded(Suite::Associativity, 2, 10)),
        ("verify_realizations_d2_seeded", seeded(Suite::Realizations, 2, 10)),
    ]
}

/// Set `KSTAR_BLESS=1` to rewrite the golden files.
#[test]
fn reports_match_golden_files() {
    let bless = std::env::var_os("KSTAR_BLESS").is_some();
    for (name, report) in cases() {
        let path = golden_dir().join(format!("{name}.json"));
        let json = report.to_json();
        if bless {
            std::fs::write(&path, &json).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(json, want, "{name} drifted from its golden file");
    }
}

#[test]
fn reports_are_byte_stable() {
    let a: Vec<String> = cases().into_iter().map(|(_, r)| r.to_json()).collect();
    let b: Vec<String> = cases().into_iter().map(|(_, r)| r.to_json()).collect();
    assert_eq!(a, b);
}

fn kstar(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kstar")).args(args).env_remove("KSTAR_DIM").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn binary_json_matches_golden() {
    let (code, out, _) = kstar(&["--json", "star", "--product", "kappa", "-d", "3", "x0", "x2", "--commutator"]);
    assert_eq!(code, 0);
    assert_eq!(out, std::fs::read_to_string(golden_dir().join("star_kappa_commutator.json")).unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(kstar(&["verify", "reduction", "-d", "1", "--degree", "2"]).0, 0);
    assert_eq!(kstar(&["verify", "obstruction", "-d", "1"]).0, 1);
    let (code, _, err) = kstar(&["star", "--product", "kappa", "-d", "1", "x0 +* x1", "x1"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column 5"), "{err}");
    assert_eq!(kstar(&["star", "--product", "kappa", "-d", "1", "x0", "x7"]).0, 2);
    assert_eq!(kstar(&["star", "--product", "nope", "x0", "x1"]).0, 2);
    assert_eq!(kstar(&["verify", "nope"]).0, 2);
    assert_eq!(kstar(&["star", "--product", "su2", "-d", "2", "x1", "x2"]).0, 2);
}

#[test]
fn dimension_flag_beats_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_kstar"));
        c.args(args);
        match env {
            Some(v) => c.env("KSTAR_DIM", v),
            None => c.env_remove("KSTAR_DIM"),
        };
        c.output().unwrap().status.code().unwrap()
    };
    assert_eq!(run(Some("2"), &["star", "-p", "kappa", "x0", "x2"]), 0);
    assert_eq!(run(Some("2"), &["star", "-p", "kappa", "-d", "1", "x0", "x2"]), 2);
    assert_eq!(run(None, &["star", "-p", "kappa", "x0", "x2"]), 2);
}
