use std::path::PathBuf;
use std::process::Command;

use lformal_cli::commands::{builtin, bundled, BUILTIN_NAMES, BUNDLED};
use lformal_cli::{
    cmd_corpus, cmd_formality, cmd_massey, cmd_transfer, cmd_validate, AlgebraDocument, Finding, Report, Status,
};
use lformal_core::corpus;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus_path(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(file)
}

fn lformal(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_lformal")).args(args).output().expect("binary runs")
}

fn table(r: &Report, name: &str) -> Vec<(String, String)> {
    r.findings
        .iter()
        .find_map(|f| match f {
            Finding::Table { name: n, rows } if n == name => {
                Some(rows.iter().map(|row| (row.args.join(","), row.value.clone())).collect())
            }
            _ => None,
        })
        .unwrap_or_else(|| panic!("no table {name}"))
}

#[test]
fn bundled_documents_round_trip() {
    for (file, text) in BUNDLED {
        let once = AlgebraDocument::parse(text).unwrap().normalized().unwrap();
        let twice = AlgebraDocument::parse(&once.to_toml()).unwrap().normalized().unwrap();
        assert_eq!(once, twice, "{file}");
        assert_eq!(once.to_toml(), twice.to_toml(), "{file}");
    }
}

#[test]
fn bundled_documents_match_the_library_instances() {
    for name in BUILTIN_NAMES {
        let from_file = bundled(&format!("{name}.toml")).unwrap();
        let expected = AlgebraDocument::from_instance(&builtin(name).unwrap());
        let mut got = AlgebraDocument::from_instance(&from_file.instance);
        got.name = expected.name.clone();
        assert_eq!(got, expected, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn random_documents_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = corpus::random_dgla(&mut rng);
        let doc = AlgebraDocument::from_instance(&inst);
        let back = AlgebraDocument::parse(&doc.to_toml()).unwrap().normalized().unwrap();
        prop_assert_eq!(back, doc);
    }
}

#[test]
fn corpus_runs_are_identical() {
    let a = cmd_corpus().unwrap();
    let b = cmd_corpus().unwrap();
    assert_eq!(a.status, Status::Pass, "{}", a.to_text());
    assert_eq!(a.findings_json(), b.findings_json());
}

fn check_golden(name: &str, report: &Report) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    let got = report.findings_json() + "\n";
    if std::env::var_os("LF_BLESS").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want =
        std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}; rerun with LF_BLESS=1", path.display()));
    assert_eq!(got, want, "{name} drifted from its golden file");
}

#[test]
fn golden_reports() {
    let nc = bundled("nocontraction.toml").unwrap();
    let dim3 = bundled("noformal-dim3.toml").unwrap();
    let plane = bundled("sl2-on-plane.toml").unwrap();
    check_golden("validate-nocontraction", &cmd_validate(&nc).unwrap());
    check_golden("transfer-nocontraction", &cmd_transfer(&nc, Some(4)).unwrap());
    check_golden("formality-nocontraction", &cmd_formality(&nc, Some(4)).unwrap());
    check_golden("massey-noformal-dim3", &cmd_massey(&dim3, None).unwrap());
    check_golden("formality-sl2-on-plane", &cmd_formality(&plane, None).unwrap());
}

#[test]
fn transfer_tables_on_nocontraction() {
    let nc = bundled("nocontraction.toml").unwrap();
    let r = cmd_transfer(&nc, Some(3)).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert!(table(&r, "iota_2").contains(&("x,x".into(), "-p".into())));
    assert!(table(&r, "bracket_3").contains(&("x,x,x".into(), "-3*z".into())));
}

#[test]
fn massey_triples_by_label() {
    let dim3 = bundled("noformal-dim3.toml").unwrap();
    let aaa: Vec<String> = ["a", "a", "a"].map(String::from).to_vec();
    let r = cmd_massey(&dim3, Some(&aaa)).unwrap();
    assert_eq!((r.status, r.summary.as_str()), (Status::Pass, "<a, a, a> = 3*x is nonzero"));
    let aab: Vec<String> = ["a", "a", "b"].map(String::from).to_vec();
    let r = cmd_massey(&dim3, Some(&aab)).unwrap();
    assert_eq!(r.status, Status::Rejected);
    assert!(r.summary.contains("not a cocycle"), "{}", r.summary);
}

#[test]
fn exit_codes_follow_the_contract() {
    let nc = corpus_path("nocontraction.toml");
    let nc = nc.to_str().unwrap();
    assert_eq!(lformal(&["validate", nc]).status.code(), Some(0));
    assert_eq!(lformal(&["formality", nc]).status.code(), Some(3));
    assert_eq!(lformal(&["massey", nc]).status.code(), Some(0));
    let printed = corpus_path("nocontraction-as-printed.toml");
    let printed = printed.to_str().unwrap();
    assert_eq!(lformal(&["validate", printed]).status.code(), Some(1));
    assert_eq!(lformal(&["formality", printed]).status.code(), Some(0));
    let plane = corpus_path("sl2-on-plane.toml");
    let out = lformal(&["--format", "structured", "formality", plane.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["status"], "FORMAL-UP-TO-6");
    assert!(json["timing_ms"].is_number());
}

#[test]
fn bad_input_reports_its_position() {
    let dir = std::env::temp_dir().join(format!("lformal-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("broken.toml");
    std::fs::write(&file, "name = \"broken\"\nfield = \"Q\"\nbasis = [\n").unwrap();
    let out = lformal(&["validate", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") || err.contains("line 4"), "{err}");

    std::fs::write(
        &file,
        "name = \"broken\"\nfield = \"Q\"\n[[basis]]\ndegree = 0\nlabels = [\"a\"]\n[differential]\nq = \"a\"\n",
    )
    .unwrap();
    let out = lformal(&["validate", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("differential.\"q\""));
    std::fs::remove_dir_all(&dir).unwrap();
}
