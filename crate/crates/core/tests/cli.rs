use tautrel::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["tautrel"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn fz_json_is_homogeneous_and_stable() {
    let args = ["fz", "--genus", "5", "--codim", "2", "--sigma", "", "--format", "json"];
    let (code, a, _) = call(&args);
    assert_eq!(code, 0);
    let rel = tautrel::Relation::from_json(a.trim()).unwrap();
    assert!(rel.is_homogeneous() && !rel.poly.is_zero());
    assert_eq!(call(&args).1, a);
}

#[test]
fn gate_empty_exits_zero() {
    let (code, out, _) = call(&["fz", "--genus", "5", "--codim", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("gate empty"));
    let (code, out, _) = call(&["fz", "--genus", "5", "--codim", "1", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"gate_empty\":true"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["fz", "--genus", "5", "--codim", "2", "--sigma", "1,,3"]).0, 2);
    assert_eq!(call(&["fz", "--genus", "5", "--codim", "2", "--sigma", "2"]).0, 2);
    assert_eq!(call(&["nonsense"]).0, 2);
    assert_eq!(call(&["sq", "--genus", "5", "--codim", "2"]).0, 2);
    assert_eq!(call(&["gorenstein", "--genus", "24"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn identities_pass() {
    let (code, out, _) = call(&["identities", "--suite", "all", "--order", "30"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn cache_dir_flag_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, out, _) = call(&["pairing", "--genus", "3", "--sigma", "1", "--cache-dir", d]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "eps(kappa(1)) = 1/120960");
    let (code, _, _) = call(&["pairing", "--genus", "9", "--codim", "3", "--cache-dir", d]);
    assert_eq!(code, 0);
    assert!(dir.path().join("epsilon_g9.json").exists());
    let text = std::fs::read_to_string(dir.path().join("epsilon_g9.json")).unwrap();
    let t = tautrel::pairing::EpsilonTable::from_json(&text).unwrap();
    assert_eq!(t, tautrel::pairing::EpsilonTable::compute(9).unwrap());
    assert_eq!(tautrel::cli::cache_dir(Some(dir.path().to_path_buf())), dir.path());
}

#[test]
fn verify_and_gorenstein() {
    let (code, out, _) = call(&["verify", "--genus", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 violations"));
    let (code, out, _) = call(&["gorenstein", "--genus", "6", "--format", "json"]);
    assert_eq!(code, 0);
    let rep = tautrel::pairing::RankReport::from_json(out.trim()).unwrap();
    assert!(rep.rows.iter().all(|r| r.deficit == Some(0)));
}

#[test]
fn other_subcommands_run() {
    for args in [
        &["sq", "--genus", "5", "--codim", "2", "--degree", "2"][..],
        &["sq", "--genus", "7", "--codim", "4", "--form", "best", "--sigma", "1,1"],
        &["sq", "--genus", "7", "--codim", "4", "--degree", "3", "--form", "midb", "--sigma", "1,1"],
        &["classical", "--genus", "3", "--codim", "1", "--degree", "5", "--z", "1:0:1"],
        &["ionel", "--order", "5", "--n", "2", "--format", "json"],
        &["equivalence", "--sigma", "1,1,1"],
        &["equivalence", "--genus", "6"],
        &["fz", "--genus", "7", "--codim", "3", "--sigma", "1", "--form", "reduced"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(!out.is_empty());
    }
}
