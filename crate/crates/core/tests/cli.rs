use std::fs;
use std::path::Path;
use std::process::Command;

use copychains::order::FinPoset;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_copychains"))
        .args(args)
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap() + &String::from_utf8(out.stderr).unwrap();
    (out.status.code().unwrap(), text)
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn gen_d_writes_decided_order() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run(&["gen", "D", "--points", "12", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let p = FinPoset::from_json(&read(dir.path(), "structure.json")).unwrap();
    assert_eq!(p.len(), 12);
    // decided pairs increase in Q
    for (i, j) in p.pairs() {
        let a = copychains::rational::parse_rational(p.label(i)).unwrap();
        let b = copychains::rational::parse_rational(p.label(j)).unwrap();
        assert!(a < b);
    }
    assert!(read(dir.path(), "sample.dot").starts_with("digraph"));
    let snap = copychains::generic::Snapshot::from_json(&read(dir.path(), "replay.json")).unwrap();
    let g = copychains::generic::GenericOrder::replay(&snap).unwrap();
    assert!(g.condition().len() >= 12);
    let back = g.to_poset().restrict(&g.condition().points()[..12]).unwrap();
    assert_eq!(back.map_labels(|q| q.to_string()), p);
}

#[test]
fn gen_c3_has_classes_of_three() {
    let (code, text) = run(&["gen", "C_3", "--sample", "6"]);
    assert_eq!(code, 0);
    let p = FinPoset::from_json(text.trim()).unwrap();
    assert_eq!(p.len(), 6);
    for i in 0..6 {
        let incomparable = (0..6).filter(|&j| j != i && !p.comparable(i, j)).count();
        assert_eq!(incomparable, 2, "{}", p.label(i));
    }
    let (code, text) = run(&["gen", "A_omega", "--sample", "5"]);
    assert_eq!(code, 0);
    let p = FinPoset::from_json(text.trim()).unwrap();
    assert_eq!((p.len(), p.pairs().len()), (5, 0));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "D", "--level", "2", "--suites", "randomness"]).0, 0);
    assert_eq!(run(&["verify", "--suites", "none"]).0, 0);
    let (code, text) = run(&["verify", "C_2", "--p3", "--suites", "family"]);
    assert_eq!(code, 1);
    assert!(text.contains("P3 fails"), "{text}");
    // a budget too small to saturate is not a failure
    let (code, text) = run(&["verify", "D", "--budget", "20", "--suites", "randomness"]);
    assert_eq!(code, 3, "{text}");
    assert!(text.contains("INCONCLUSIVE"));
    assert_eq!(run(&["verify", "X_3"]).0, 2);
    assert_eq!(run(&["verify", "--modulus", "3", "--j-class", "3"]).0, 2);
}

#[test]
fn config_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# copy checks only\nstructure = {\"id\":\"C_n\",\"n\":2}\nsuites = copy\n").unwrap();
    let (code, text) = run(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("PASS verify C_2"));
    // flags override the file
    let (_, text) = run(&["verify", "--config", cfg.to_str().unwrap(), "--structure", "Q"]);
    assert!(text.contains("verify Q"));
    fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(run(&["verify", "--config", cfg.to_str().unwrap()]).0, 2);
}

#[test]
fn chain_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, text) = run(&["chain", "D", "--M", "0:3,inf:2", "--sample", "12", "--out", d]);
    assert_eq!(code, 0, "{text}");
    let csv = read(dir.path(), "cuts.csv");
    for row in ["maxA.1", "maxA.2", "maxA.4", "minB", "lump"] {
        assert!(csv.contains(&format!(",{row},")), "{row}");
    }
    assert_eq!(read(dir.path(), "lumps.txt").lines().count(), 5);
    assert_eq!(read(dir.path(), "embedding.csv").lines().count(), 13);
    assert_eq!(read(dir.path(), "probes.jsonl").lines().count(), 200);
    assert!(!read(dir.path(), "probes.jsonl").contains("potential_insertion"));

    let (code, _) = run(&["chain", "Q", "--M", "", "--out", d]);
    assert_eq!(code, 0);
    for line in read(dir.path(), "cuts.csv").lines().skip(1) {
        let verdict = line.split(',').nth(2).unwrap();
        assert!(verdict == "equal" || verdict == "singleton-gap-non-copy", "{line}");
    }
    assert_eq!(run(&["chain", "D", "--M", "0:3,1:2,inf:2", "--modulus", "3"]).0, 2);
}

#[test]
fn chain_c_omega_rows() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run(&["chain", "C_omega", "--M", "inf:2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let csv = read(dir.path(), "cuts.csv");
    // row 2 gaps are {x0} × ω⁺: one point of support, infinitely many pairs
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f[1] == "maxA.2" {
            assert_eq!((f[2], f[3]), ("singleton-gap-non-copy", "inf"), "{line}");
        }
    }
    assert!(csv.contains(",maxA.2,") && csv.contains(",lump,"));
}
