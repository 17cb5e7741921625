use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bmzs(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bmzs"));
    cmd.args(args).env_remove("BMZS_THREADS");
    cmd
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = cmd.output().unwrap();
    (
        status.code().unwrap(),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_then_solve() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eds9.txt");
    let (code, stdout, _) = run(&mut bmzs(&[
        "gen",
        "--weight",
        "9",
        "--family",
        "eds",
        "--out",
        path(&out),
    ]));
    assert_eq!(code, 0);
    assert!(stdout.contains("over 128 columns"));
    assert!(dir.path().join("eds9.txt.pairs").exists());
    assert!(dir.path().join("eds9.txt.columns").exists());

    let basis = dir.path().join("basis.txt");
    let pivots = dir.path().join("pivots.txt");
    let (code, stdout, _) = run(&mut bmzs(&[
        "solve",
        "--in",
        path(&out),
        "--oracle",
        "--dump-basis",
        path(&basis),
        "--dump-pivots",
        path(&pivots),
    ]));
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("rank 123  corank 5"), "{stdout}");
    assert!(stdout.contains("depth dims r=3:1 r=4:4"), "{stdout}");
    assert!(stdout.contains("oracle agrees"));
    let basis = fs::read_to_string(basis).unwrap();
    assert_eq!(basis.lines().count(), 123);
    assert!(basis.lines().all(|l| l.matches(" | ").count() == 2));
    assert!(fs::read_to_string(pivots).unwrap().starts_with('#'));
}

#[test]
fn compact_output_solves_the_same() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("knt10.bin");
    let gen = [
        "gen",
        "--weight",
        "10",
        "--family",
        "knt",
        "--compact",
        "--blocks",
        "3",
        "--out",
        path(&out),
    ];
    assert_eq!(run(&mut bmzs(&gen)).0, 0);
    assert!(fs::read(&out).unwrap().starts_with(b"MZF2"));
    let (code, stdout, _) = run(&mut bmzs(&["solve", "--in", path(&out), "--oracle"]));
    assert_eq!(code, 0);
    assert!(stdout.contains("corank 12"), "{stdout}");
}

#[test]
fn report_tables() {
    let (code, stdout, _) = run(&mut bmzs(&["report", "--weights", "2..10"]));
    assert_eq!(code, 0);
    assert!(stdout
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>()
            == ["10", "0", "0", "0", "0", "6", "1", "7"]));

    let dir = tempfile::tempdir().unwrap();
    let tsv = dir.path().join("fam.tsv");
    let (code, stdout, _) = run(&mut bmzs(&[
        "report",
        "--weights",
        "7..10",
        "--family",
        "knt,mjpo,eds",
        "--tsv",
        path(&tsv),
    ]));
    assert_eq!(code, 0, "{stdout}");
    let tsv = fs::read_to_string(tsv).unwrap();
    assert_eq!(tsv.lines().next(), Some("k\tknt\tmjpo\teds\td_k"));
    assert!(tsv.contains("9\t8\t6\t5\t5"), "{tsv}");

    let (code, stdout, _) = run(&mut bmzs(&[
        "report",
        "--weights",
        "12",
        "--expected",
        "bk",
        "--markdown",
    ]));
    assert_eq!(code, 0);
    assert!(
        stdout.contains("| 12 | 0 | 1 | 3 | 6 | 2 | 0 | 0 | 12 |"),
        "{stdout}"
    );
}

#[test]
fn verify_small_weights() {
    let (code, stdout, _) = run(&mut bmzs(&["verify", "--weights", "2..9"]));
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 8);
    assert!(stdout
        .lines()
        .all(|l| l.contains("hoffman pass") && l.ends_with("oracle agrees")));
}

#[test]
fn reduce_prints_hoffman_forms() {
    let (code, stdout, _) = run(&mut bmzs(&["reduce", "--index", "3,1"]));
    assert_eq!(code, 0);
    assert!(stdout.contains("reduced (3,1) = 2,2"));
    let (_, stdout, _) = run(&mut bmzs(&["reduce", "--index", "4,1"]));
    assert!(stdout.contains("graded  (4,1) = 3,2 + 2,3"), "{stdout}");
    let (code, _, stderr) = run(&mut bmzs(&["reduce", "--index", "1,3"]));
    assert_eq!(code, 2);
    assert!(stderr.contains("not admissible"));
}

#[test]
fn thread_count_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    assert_eq!(
        run(&mut bmzs(&["gen", "--weight", "10", "--out", path(&a)])).0,
        0
    );
    let mut cmd = bmzs(&["gen", "--weight", "10", "--blocks", "5", "--out", path(&b)]);
    assert_eq!(run(cmd.env("BMZS_THREADS", "3")).0, 0);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let mut cmd = bmzs(&["gen", "--weight", "5", "--out", path(&b)]);
    let (code, _, stderr) = run(cmd.env("BMZS_THREADS", "0"));
    assert_eq!(code, 2);
    assert!(stderr.contains("positive"));
}

#[test]
fn config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bmzs.conf");
    fs::write(&cfg, "# settings\nthreads = 2\nmemo_max_degree = 3\n").unwrap();
    let (code, stdout, _) = run(&mut bmzs(&[
        "--config",
        path(&cfg),
        "report",
        "--weights",
        "8..9",
    ]));
    assert_eq!(code, 0, "{stdout}");

    fs::write(&cfg, "colour = blue\n").unwrap();
    let (code, _, stderr) = run(&mut bmzs(&[
        "--config",
        path(&cfg),
        "report",
        "--weights",
        "8",
    ]));
    assert_eq!(code, 2);
    assert!(stderr.contains("line 1"), "{stderr}");
}

#[test]
fn large_weights_need_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("big.txt");
    let (code, _, stderr) = run(&mut bmzs(&["gen", "--weight", "19", "--out", path(&out)]));
    assert_eq!(code, 2);
    assert!(
        stderr.contains("memory estimate") && stderr.contains("--allow-large"),
        "{stderr}"
    );
    assert!(!out.exists());
}
