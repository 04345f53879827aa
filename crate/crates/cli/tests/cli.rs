use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverhh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn glue_prints_the_new_relation_in_traversal_order() {
    let o = run(&["glue", "a4_path", "--alpha", "alpha", "--beta", "beta"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rels: Vec<&str> = text.lines().filter(|l| l.starts_with("rel ")).collect();
    assert_eq!(rels, ["rel eta gamma* eta"]);
    assert!(text.contains("arrow gamma* e1+e3 e2+e4"));
}

#[test]
fn glue_writes_to_a_file_and_reads_it_back() {
    let dir = std::env::temp_dir().join(format!("quiverhh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("b.alg");
    let o = run(&["glue", "two_lines", "--alpha", "alpha", "--beta", "beta", "--name", "g", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let info = run(&["info", out.to_str().unwrap(), "--json"]);
    assert!(info.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&info).trim()).unwrap();
    assert_eq!(v["vertices"], 4);
    assert_eq!(v["dim"], 9);
    assert!(std::fs::read_to_string(&out).unwrap().contains("arrow g "));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_reports_the_double_arrow_dimensions() {
    let o = run(&["verify", "double_arrows_rad2", "--alpha", "alpha", "--beta", "beta", "--checks", "all"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("ker_delta1_structure")).unwrap();
    assert!(line.contains("pass"));
    assert!(line.contains("dim Ker δ¹_A = 7") && line.contains("dim Ker δ¹_B = 10") && line.contains("kspp = 4"));
}

#[test]
fn json_lines_follow_the_schema() {
    let o = run(&["verify", "loop_square", "--alpha", "alpha", "--beta", "beta", "--field", "F2", "--json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut saw_witness = false;
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["check", "status", "lhs", "rhs", "witness"] {
            assert!(v.get(key).is_some(), "missing {key} in {line}");
        }
        assert!(v.get("elapsed").is_none());
        if v["check"] == "hh1_dim_general" {
            assert_eq!(v["status"], "assumption-violated");
            assert_eq!(v["witness"], "(xi, 2)");
            saw_witness = true;
        }
    }
    assert!(saw_witness);
    assert_eq!(text.lines().count(), 18);
}

#[test]
fn exit_codes() {
    let fail = run(&["verify", "crossing_rad_cube", "--alpha", "alpha", "--beta", "beta", "--json"]);
    assert_eq!(fail.status.code(), Some(1));
    let fails: Vec<serde_json::Value> = stdout(&fail)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .filter(|v: &serde_json::Value| v["status"] == "fail")
        .collect();
    assert_eq!(fails.len(), 3);
    assert!(fails.iter().all(|v| v["reproduction"].as_str().unwrap().contains("# glue --alpha alpha --beta beta")));

    assert_eq!(run(&["info", "no-such-input"]).status.code(), Some(2));
    assert_eq!(run(&["glue", "a4_path", "--alpha", "alpha", "--beta", "eta"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "a4_path", "--alpha", "alpha", "--beta", "beta", "--checks", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["hh", "a4_path", "--degrees", "0..1", "--field", "F4"]).status.code(), Some(2));
}

#[test]
fn higher_degrees_and_rank() {
    let o = run(&["hh", "kronecker_m2", "--degrees", "2..3"]);
    assert_eq!(stdout(&o), "HH^2 = 0\nHH^3 = 0\n");
    let dir = std::env::temp_dir().join(format!("quiverhh-hh-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("b.alg");
    let path = out.to_str().unwrap();
    assert!(run(&["glue", "kronecker_m2", "--alpha", "alpha", "--beta", "beta", "--out", path]).status.success());
    assert_eq!(stdout(&run(&["hh", path, "--degrees", "3..4"])), "HH^3 = 6\nHH^4 = 0\n");
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(run(&["hh", "a4_path", "--degrees", "2..2"]).status.code(), Some(2));
    assert_eq!(stdout(&run(&["pi1-rank", "kronecker_m3"])), "pi1_rank: 2\n");
}

#[test]
fn center_lists_a_basis() {
    let o = run(&["center", "a4_path"]);
    assert_eq!(stdout(&o), "dim Z = 1\n  e1||e1 + e2||e2 + e3||e3 + e4||e4\n");
}

#[test]
fn examples_list_every_entry() {
    let o = run(&["examples"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 17);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["examples", "--run", "--json"][..],
        &["fuzz", "--seed", "11", "--count", "60", "--json"],
        &["verify", "bent_tree", "--alpha", "alpha", "--beta", "beta"],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
