use std::path::Path;
use std::process::{Command, Output};

fn ufalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ufalab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn measure_widths_and_lp() {
    let dir = tempfile::tempdir().unwrap();
    let or2 = write(dir.path(), "or2.tt", "tt 2 0111\n");
    let o = ufalab(&["measure", &or2, "--c1", "--uc1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "C1 = 1\nUC1 = 2\n");
    let o = ufalab(&["measure", &or2, "--degplus", "1"]);
    assert_eq!(stdout(&o), "eps*(d=1) = 1/4\n");
    let o = ufalab(&["measure", &or2, "--eps", "1/3"]);
    assert!(stdout(&o).starts_with("deg+_1/3(f) = 1"));
}

#[test]
fn measure_reads_dnf_and_junta() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(dir.path(), "f.dnf", "dnf 2\n+1\n-1 +2\n");
    assert_eq!(stdout(&ufalab(&["measure", &d, "--c1"])), "C1 = 1\n");
    let j = write(dir.path(), "h.junta", "junta 2\n1/2 +1\n");
    let o = ufalab(&["measure", &j, "--degplus", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "eps*(d=0) = 1/4\n");
    // widths need a boolean function
    assert_eq!(ufalab(&["measure", &j, "--c1"]).status.code(), Some(2));
}

#[test]
fn measure_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "and2.tt", "tt 2 0001\n");
    let out = dir.path().join("r.json");
    let o = ufalab(&["measure", &f, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["quantities"]["C0"], "1");
    assert_eq!(v["quantities"]["UC1"], "2");
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.tt", "# comment\ntt 2 011\n");
    let o = ufalab(&["measure", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(ufalab(&["measure", "/nonexistent/file.tt"]).status.code(), Some(2));
    assert_eq!(ufalab(&["repro", "nosuch"]).status.code(), Some(2));
    assert_eq!(ufalab(&["bogus"]).status.code(), Some(2));
}

#[test]
fn disj_reports_and_files() {
    let o = ufalab(&["disj", "4", "1", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ell = 12\n"));
    let dir = tempfile::tempdir().unwrap();
    let o = ufalab(&["disj", "4", "2", "--seed", "7", "--verify", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("lower_bound = 6\n") && s.contains("verify: PASS\n"), "{s}");
    for f in ["a1.nfa", "a2.nfa", "family.txt", "disj.json", "disj.csv", "disj.md"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let fam = std::fs::read_to_string(dir.path().join("family.txt")).unwrap();
    assert!(fam.starts_with("zfamily 4 2 58 "));
    let a1 = ufalab::automata::text::parse_nfa(&std::fs::read_to_string(dir.path().join("a1.nfa")).unwrap()).unwrap();
    assert!(a1.accepts(&[1, 1, 0, 0, 0, 0, 1, 1]).unwrap());
}

#[test]
fn disj_resource_bound_exit_3() {
    assert_eq!(ufalab(&["disj", "20", "10", "--verify"]).status.code(), Some(3));
    assert_eq!(ufalab(&["disj", "3", "4"]).status.code(), Some(2));
}

#[test]
fn repro_outputs_are_stable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = ufalab(&["repro", "union-identity", "--out", d.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("PASS union-identity criterion 2: 200/200 checks"));
    }
    for ext in ["csv", "json", "md"] {
        let name = format!("union-identity.{ext}");
        assert_eq!(
            std::fs::read(a.path().join(&name)).unwrap(),
            std::fs::read(b.path().join(&name)).unwrap(),
            "{name}"
        );
    }
    let csv = std::fs::read_to_string(a.path().join("union-identity.csv")).unwrap();
    assert!(csv.starts_with("suite,criterion,instance,lhs,lhs_value,relation,rhs,rhs_value,anchor,verdict\n"));
}

#[test]
fn timings_only_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let o = ufalab(&["--timings", "repro", "lifting", "--out", dir.path().to_str().unwrap()]);
    assert!(stdout(&o).contains("time = "));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("lifting.json")).unwrap()).unwrap();
    assert!(v["timings_ms"]["total"].is_number());
}
