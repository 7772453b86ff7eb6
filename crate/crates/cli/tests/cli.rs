use std::process::{Command, Output};

fn markoff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_markoff"))
        .args(args)
        .env_remove("MARKOFF_MAX_P")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn count() {
    let o = markoff(&["count", "--p", "7", "--k", "-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "formula=29 enumerated=29 ok\n");
    let o = markoff(&["count", "--p", "7", "--k", "0"]);
    assert_eq!(stdout(&o), "formula=22 enumerated=22 ok\n");
}

#[test]
fn bad_prime_exits_2() {
    let o = markoff(&["count", "--p", "4", "--k", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("p must be prime > 5"), "{}", stderr(&o));
    let o = markoff(&["verify", "--p", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn golden_levels() {
    let o = markoff(&["orbits", "--p", "11", "--k", "phi"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("A5_40"), "{}", stdout(&o));
    // √5 ∉ F_7
    let o = markoff(&["orbits", "--p", "7", "--k", "phibar"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn orbits_formats() {
    let o = markoff(&["orbits", "--p", "7", "--k", "-2", "--format", "text"]);
    let text = stdout(&o);
    assert!(text.contains("Origin(1)") && text.contains("Cage(28)"));
    assert!(text.ends_with("verdict: OK\n"));
    let o = markoff(&["orbits", "--p", "7", "--k", "2"]);
    assert!(stdout(&o).ends_with("verdict: N/A\n"));
    let a = markoff(&["orbits", "--p", "13", "--k", "3", "--format", "json"]);
    let b = markoff(&["orbits", "--p", "13", "--k", "3", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    // 13² + (3 − 1)·13 + 1, since 5 is a non-residue and 1 a residue mod 13
    assert_eq!(v["total"], 196);
}

#[test]
fn verify() {
    for p in ["7", "11"] {
        let o = markoff(&["verify", "--p", p, "--all-levels"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
}

#[test]
fn tower() {
    let o = markoff(&["tower", "--p", "7", "--triple", "2,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("A=[[0,1],[-1,2]]"));
    assert!(text.contains("B=[[2,-1],[1,0]]"));
    assert!(text.contains("class=Affine"));
    let o = markoff(&["tower", "--p", "7", "--triple", "1,1,0"]);
    assert!(stdout(&o).contains("class=Tetrahedral"));
    let o = markoff(&["tower", "--p", "7", "--triple", "0,0,9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let o = markoff(&[
        "sweep",
        "--pmin",
        "7",
        "--pmax",
        "13",
        "--jobs",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1 + 7 + 11 + 13);
    let o = markoff(&["sweep", "--pmin", "2", "--pmax", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_markoff"))
        .args(["count", "--p", "11", "--k", "0"])
        .env("MARKOFF_MAX_P", "7")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("11"));
}
