use std::process::{Command, Output};

fn abelzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelzeta")).args(args).output().unwrap()
}

fn plan(name: &str) -> String {
    format!("{}/examples/plans/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_worked_instances() {
    let o = abelzeta(&["analyze", "as:q=2,f=x^3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bounds"]["g"], 1);
    assert_eq!(v["bounds"]["h"], "3");
    assert_eq!(v["ramification"]["different_degree"], 4);

    let o = abelzeta(&["--csv", "analyze", "kummer:q=3,m=2,f=x^3+2*x"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("spec,family,q,m,f,n,g,h,deg_diff,ratio,lemma2"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[row.len() - 16..row.len() - 12], ["2", "1", "4", "4"]);
}

#[test]
fn exit_codes() {
    assert_eq!(abelzeta(&["analyze", "kummer:q=2,m=2,f=x"]).status.code(), Some(3));
    assert_eq!(abelzeta(&["analyze", "nonsense"]).status.code(), Some(2));
    assert_eq!(abelzeta(&["analyze", "as:q=6,f=x^3"]).status.code(), Some(3));
    assert_eq!(abelzeta(&["--budget", "10", "analyze", "as:q=2,f=x^9"]).status.code(), Some(4));
    assert_eq!(abelzeta(&["oracle", "--count", "2", "--inject-n2-fault"]).status.code(), Some(5));
}

#[test]
fn sweeps() {
    let o = abelzeta(&["sweep", "--plan", &plan("empty.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);

    let o = abelzeta(&["--json", "sweep", "--plan", &plan("kummer_q5_m2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let genera: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["g"].as_u64().unwrap()).collect();
    assert_eq!(genera, [2, 3, 4]);

    let dir = std::env::temp_dir().join(format!("abelzeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("k.svg");
    let args = ["sweep", "--plan", &plan("kummer_q5_m2.json"), "--svg", svg.to_str().unwrap(), "--no-timestamp"];
    let a = abelzeta(&args);
    let first = std::fs::read_to_string(&svg).unwrap();
    let b = abelzeta(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(first, std::fs::read_to_string(&svg).unwrap());
    assert!(first.contains("<svg"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_and_irr_count() {
    let o = abelzeta(&["oracle", "--count", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let o = abelzeta(&["--json", "oracle", "--seed", "3", "--count", "4", "--max-genus", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);

    let o = abelzeta(&["irr-count", "--q", "2", "--m", "4"]);
    assert_eq!(stdout(&o), "d,formula,enumerated\n1,2,2\n2,1,1\n3,2,2\n4,3,3\n");
    let o = abelzeta(&["--json", "irr-count", "--q", "3", "--m", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[2]["formula"], "8");
}
