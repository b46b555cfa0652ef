use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn kla(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kla")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn betti_json_for_surface_algebra() {
    let o = kla(&["betti", &corpus("g4.lie"), "--max-degree", "6", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["betti"]["nonzero"], json!([[1, 1, 4], [2, 2, 1]]));
    assert_eq!(v["version"], json!(1));
    assert_eq!(v["command"], json!("betti"));
}

#[test]
fn human_betti_grid_leaves_zeros_blank() {
    let o = kla(&["betti", &corpus("g4.lie"), "--max-degree", "3"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert!(rows.iter().any(|l| l.trim_start().starts_with("i\\j")), "{text}");
    assert!(rows.iter().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["1", "4"]), "{text}");
    assert!(!text.contains(" 0 0"), "{text}");
}

#[test]
fn droms_square_is_refuted_with_witness() {
    let o = kla(&["droms", &corpus("c4.graph")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not Droms: induced square {a,b,c,d}"));
    let v = json_of(&kla(&["droms", &corpus("c4.graph"), "--json"]));
    assert_eq!(v["witness"]["kind"], json!("square"));
    assert_eq!(v["status"], json!("fail"));
}

#[test]
fn quadratize_heisenberg_emits_certificate() {
    let o = kla(&["quadratize", &corpus("h1.lie"), "--max-degree", "5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("generators"));
    assert!(text.contains("embedding through degree 5: PASS"));
}

#[test]
fn failed_verdicts_exit_one_with_witness() {
    let o = kla(&["quadratic-check", &corpus("h1.lie"), "--max-degree", "4", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json_of(&o);
    let w = &v["quadratic"]["witness"];
    assert_eq!((w["i"].clone(), w["j"].clone(), w["value"].clone()), (json!(2), json!(3), json!(2)), "{v}");

    let o = kla(&["koszul-check", &corpus("h2.lie"), "--max-degree", "5", "--json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json_of(&o)["froberg"]["witness"], json!({ "degree": 4, "coefficient": 5 }));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["betti", "g4.lie", "--json"],
        vec!["bk-check", "g4.lie", "--max-degree", "4", "--strategy", "random:6", "--seed", "7", "--json"],
        vec!["eigenvalues", "--poly", "1,15,21,35,35,21,7,1", "--json"],
    ] {
        let args: Vec<String> = args.iter().map(|a| if a.ends_with(".lie") { corpus(a) } else { a.to_string() }).collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = kla(&args);
        let b = kla(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn input_errors_exit_two_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lie");
    std::fs::write(&bad, "algebra a\ngenerators x:1, y:1\nrelations [x,y] + x\n").unwrap();
    let o = kla(&["dims", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3, column 19"), "{err}");

    assert_eq!(code(&kla(&["dims", "/no/such/file.lie"])), 2);
    assert_eq!(code(&kla(&["dims", &corpus("g4.lie"), "--bogus"])), 2);
    assert_eq!(code(&kla(&["dims", &corpus("g4.lie"), "--field", "4"])), 2);
    assert_eq!(code(&kla(&["dims", &corpus("g4.lie"), "--strategy", "sideways"])), 0);
    assert_eq!(code(&kla(&["bk-check", &corpus("g4.lie"), "--strategy", "sideways"])), 2);
}

#[test]
fn explicit_witness_subspace_for_square_raag() {
    let dir = tempfile::tempdir().unwrap();
    let lie = dir.path().join("c4.lie");
    let list = dir.path().join("spans.txt");
    let raag = kla(&["raag", &corpus("c4.graph")]);
    let text: String = stdout(&raag).lines().take_while(|l| !l.contains("i\\j")).map(|l| format!("{l}\n")).collect();
    std::fs::write(&lie, text).unwrap();
    std::fs::write(&list, "a; b; c + d\n").unwrap();
    let strategy = format!("list:{}", list.display());
    let o = kla(&["bk-check", lie.to_str().unwrap(), "--max-degree", "4", "--strategy", &strategy, "--json"]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_of(&o);
    assert_eq!(v["status"], json!("fail"));
    assert!(v.to_string().contains("\"j\":3"), "{v}");
}

#[test]
fn assertion_flags() {
    let g4 = corpus("g4.lie");
    assert_eq!(code(&kla(&["betti", &g4, "--assert-koszul"])), 0);
    assert_eq!(code(&kla(&["betti", &g4, "--assert-cd", "2"])), 0);
    assert_eq!(code(&kla(&["betti", &g4, "--assert-cd", "3"])), 1);
    assert_eq!(code(&kla(&["betti", &corpus("h2.lie"), "--max-degree", "5", "--assert-koszul"])), 1);
    assert_eq!(code(&kla(&["bk-check", &g4, "--max-degree", "4", "--assert-bk"])), 0);
}

#[test]
fn polynomial_commands() {
    let v = json_of(&kla(&["euler", &corpus("c4.graph"), "--json"]));
    assert_eq!(v["euler_characteristic"], json!(1));
    let v = json_of(&kla(&["eigenvalues", "--poly", "1,15,21,35,35,21,7,1", "--json"]));
    let near = v["eigenvalues"].as_array().unwrap().iter().any(|e| {
        let inv = &e["inverse"];
        (inv["re"].as_f64().unwrap() + 0.02463).abs() < 1e-3 && (inv["im"].as_f64().unwrap().abs() - 0.80986).abs() < 1e-3
    });
    assert!(near, "{v}");
    assert_eq!(code(&kla(&["newton", "--poly", "1,4,6,4,1"])), 0);
    assert_eq!(code(&kla(&["trc", &corpus("h2.lie"), "--max-degree", "5"])), 0);
    assert_eq!(code(&kla(&["omega", &corpus("p4.graph")])), 0);
}

#[test]
fn every_command_has_help() {
    for c in [
        "dims", "hilbert", "betti", "quadratic-check", "koszul-check", "bk-check", "dual", "froberg", "cover",
        "hnn-compose", "hnn-decompose", "standardize", "quadratize", "subalgebra", "center", "series", "raag",
        "clique-poly", "droms", "chordal", "decompose", "euler", "eigenvalues", "omega", "newton", "bogvad", "trc",
        "classify-1rel", "check-2rel", "darboux", "free-rank", "filtration",
    ] {
        assert_eq!(code(&kla(&[c, "--help"])), 0, "{c}");
    }
}
