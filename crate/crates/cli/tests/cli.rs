use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extrinsic")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(&format!("{key}: ")))
}

#[test]
fn rigidity_a3() {
    let o = run(&["rigidity", "--family", "A", "--rank", "3", "--tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let exceptional: Vec<&str> = text
        .lines()
        .filter(|l| l.contains("\texceptional\t"))
        .map(|l| l.split('\t').nth(2).unwrap())
        .collect();
    assert_eq!(exceptional, ["1", "2", "3", "1,3"]);
}

#[test]
fn rigidity_d5_and_c3() {
    let text = stdout(&run(&["rigidity", "--family", "D,C", "--rank", "3..5", "--max-sigma", "1", "--tsv"]));
    assert!(text.contains("D\t5\t1\texceptional"));
    assert!(text.contains("C\t3\t2\trigid"));
    assert!(!text.contains("D\t3\t"));
}

#[test]
fn rank_above_eight_is_usage_error() {
    let o = run(&["rigidity", "--rank", "2..9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("outside"));
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(run(&["prolong", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn cohomology_cases() {
    let c2 = run(&["cohomology", "--family", "C", "--rank", "2", "--sigma", "1", "--ambient", "gl", "--tsv"]);
    assert_eq!(c2.status.code(), Some(0));
    let text = stdout(&c2);
    assert!(text.lines().any(|l| l.starts_with("1\t1\t6\t6\t")), "{text}");
    assert!(text.contains("H1+ dim\t6"));

    let g2 = stdout(&run(&["cohomology", "--family", "G2", "--rank", "2", "--sigma", "2", "--ambient", "o"]));
    assert_eq!(field(&g2, "H1+ dim"), Some("0"));

    let a2 = stdout(&run(&["cohomology", "--family", "A", "--rank", "2", "--sigma", "1,2"]));
    assert_eq!(field(&a2, "H1+ dim"), Some("2"));
}

#[test]
fn cap_and_kostant_only() {
    let big = ["cohomology", "--family", "A", "--rank", "3", "--sigma", "2", "--weight", "2,0,2"];
    let o = run(&big);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--kostant-only"));
    let mut small = big.to_vec();
    let last = small.len() - 1;
    small[last] = "1,0,0";
    small.push("--kostant-only");
    let o = run(&small);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("kostant"));
}

#[test]
fn prolongation_totals() {
    for (amb, total) in [("gl", "9"), ("o", "8")] {
        let text = stdout(&run(&["prolong", "--family", "A", "--rank", "2", "--sigma", "1,2", "--ambient", amb, "--tsv"]));
        assert!(text.contains(&format!("total\t{total}")), "{amb}: {text}");
    }
    let c2 = stdout(&run(&["prolong", "--family", "C", "--rank", "2", "--sigma", "1", "--tsv"]));
    assert!(c2.contains("total\t11"));
}

#[test]
fn decompose_gl_a2() {
    let text = stdout(&run(&["decompose", "--family", "A", "--rank", "2", "--sigma", "1,2", "--tsv"]));
    let gl: Vec<&str> = text.lines().filter(|l| l.starts_with("gl(V)\t")).collect();
    assert_eq!(
        gl,
        [
            "gl(V)\t(0,0)\t1\t1",
            "gl(V)\t(0,3)\t1\t10",
            "gl(V)\t(1,1)\t2\t8",
            "gl(V)\t(2,2)\t1\t27",
            "gl(V)\t(3,0)\t1\t10"
        ]
    );
}

#[test]
fn pde_ea_deformed_and_flat() {
    let o = run(&["pde", "ea", "--param", "a=1", "-N", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "dim"), Some("10"));
    assert_eq!(field(&text, "stable"), Some("yes"));
    assert!(field(&text, "chi1").unwrap().starts_with("nonzero"));
    assert_eq!(field(&text, "shipped basis"), Some("verified"));

    let flat = stdout(&run(&["pde", "ea", "--param", "a=0", "-N", "8"]));
    assert_eq!(field(&flat, "dim"), Some("10"));
    assert_eq!(field(&flat, "chi1"), Some("0"));
}

#[test]
fn pde_veronese() {
    let text = stdout(&run(&["pde", "veronese_n2", "-N", "6"]));
    assert_eq!(field(&text, "dim"), Some("6"));
}

#[test]
fn pde_missing_parameter_and_instability() {
    assert_eq!(run(&["pde", "ea"]).status.code(), Some(1));
    let o = run(&["pde", "ea", "--param", "a=1", "-N", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(field(&stdout(&o), "stable"), Some("no (inconclusive)"));
}

#[test]
fn pde_from_file() {
    let dir = std::env::temp_dir().join(format!("extrinsic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let sys = dir.join("flat.wpde");
    std::fs::write(&sys, "coord x 1\ncoord y 1\nfield X = D(x)\nfield Y = D(y)\neq X^2\neq Y^2\n").unwrap();
    let run_expect = |lines: &str| {
        let path = dir.join("expect.txt");
        std::fs::write(&path, lines).unwrap();
        run(&["pde", sys.to_str().unwrap(), "-N", "6", "--expect", path.to_str().unwrap()])
    };

    let o = run_expect("1\nx\n# comment\ny + x\nx*y\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "expected basis"), Some("verified"));

    let o = run_expect("1\nx\n");
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(field(&stdout(&o), "expected basis"), Some("size mismatch"));

    let o = run_expect("x^2\n");
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(field(&stdout(&o), "expected basis"), Some("failed"));

    let broken = dir.join("broken.wpde");
    std::fs::write(&broken, "coord x 1\nfield X = D(x)\neq X^2 + Q\n").unwrap();
    let o = run(&["pde", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, column"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn out_file_and_determinism() {
    let dir = std::env::temp_dir().join(format!("extrinsic-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.tsv");
    let args = ["prolong", "--family", "C", "--rank", "2", "--sigma", "1", "--tsv", "--out", path.to_str().unwrap()];
    assert_eq!(run(&args).status.code(), Some(0));
    let first = std::fs::read_to_string(&path).unwrap();
    assert_eq!(run(&args).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
    assert!(first.starts_with("config\tprolong family=C rank=2 sigma=1"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn lists_fixtures() {
    let text = stdout(&run(&["pde", "--list"]));
    assert!(text.lines().any(|l| l == "ea"));
    assert!(text.contains("ode_K"));
}
