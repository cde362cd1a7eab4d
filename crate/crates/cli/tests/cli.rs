use std::path::PathBuf;
use std::process::{Command, Output};

fn diskfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diskfold")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("diskfold-cli-{}-{}", name, std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn s(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(diskfold(&["run", "--algorithm", "nope", "--sigma", "2", "--generate", "3"]).status.code(), Some(2));
    assert_eq!(diskfold(&["plane", "sigma", "--h", "1"]).status.code(), Some(2));
    assert_eq!(diskfold(&["run", "--algorithm", "fold", "--sigma", "0.5", "--generate", "3"]).status.code(), Some(2));
    assert_eq!(diskfold(&["curves", "--which", "z"]).status.code(), Some(2));
}

#[test]
fn out_of_range_diameter_exits_1() {
    let dir = scratch("range");
    let input = dir.join("d.jsonl");
    std::fs::write(
        &input,
        "{\"center\":[\"0\",\"0\"],\"diameter\":\"1\"}\n{\"center\":[\"3\",\"0\"],\"diameter\":\"2.5\"}\n",
    )
    .unwrap();
    let out = diskfold(&["run", "--algorithm", "fold-shade", "--sigma", "2", "--input", s(&input)]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn validate_rejects_too_large_sigma_and_tampering() {
    let dir = scratch("validate");
    let file = dir.join("c.txt");
    let ok = diskfold(&["plane", "build", "--h", "2", "--p", "1", "--q", "4", "--table", "--out", s(&file)]);
    assert!(ok.status.success());
    assert!(diskfold(&["plane", "validate", "--file", s(&file), "--sigma", "1.08"]).status.success());
    let bad = diskfold(&["plane", "validate", "--file", s(&file), "--sigma", "1.1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("condition=2"));

    let text = std::fs::read_to_string(&file).unwrap().replace("\n0 0 1\n", "\n0 0 2\n");
    std::fs::write(&file, text).unwrap();
    assert_eq!(diskfold(&["plane", "validate", "--file", s(&file), "--sigma", "1"]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn lstar_without_guard_label_fails_validation() {
    let dir = scratch("guard");
    let file = dir.join("l.txt");
    assert!(diskfold(&["plane", "build", "--h", "1", "--sigma", "1", "--kind", "lstar3", "--out", s(&file)])
        .status
        .success());
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.contains("1 4 0 49 1 lstar3 1"), "{}", text);
    assert!(diskfold(&["plane", "validate", "--file", s(&file), "--sigma", "1"]).status.success());
    std::fs::write(&file, text.replace(" 49 ", " 48 ")).unwrap();
    let out = diskfold(&["plane", "validate", "--file", s(&file), "--sigma", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("condition=4"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sigma_command_reports_bound_and_exact_value() {
    let out = diskfold(&["plane", "sigma", "--h", "2", "--p", "1", "--q", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("bound=0.98431"), "{}", text);
    assert!(text.contains("exact=1.082531755"), "{}", text);
}

#[test]
fn run_csv_has_metadata_and_flat_colors() {
    let dir = scratch("run");
    let csv = dir.join("r.csv");
    let out = diskfold(&[
        "run", "--algorithm", "branch-ff", "--sigma", "8", "--generate", "200", "--seed", "2", "--out", s(&csv),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    let meta = lines.next().unwrap();
    assert!(meta.starts_with("# ") && meta.contains("max_branches=3"), "{}", meta);
    assert_eq!(lines.next().unwrap(), "id,branch,color,layer,tile_i,tile_j,flat_color");
    let mut branches = std::collections::BTreeSet::new();
    for l in lines {
        let f: Vec<u64> = l.split(',').filter(|x| !x.is_empty()).map(|x| x.parse().unwrap()).collect();
        branches.insert(f[1]);
        assert_eq!(f[f.len() - 1], f[2] * 3 + f[1]);
    }
    assert_eq!(branches.into_iter().collect::<Vec<_>>(), vec![0, 1, 2]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_appends_report_rows() {
    let dir = scratch("report");
    let report = dir.join("rep.csv");
    for seed in ["1", "2"] {
        let out = diskfold(&[
            "run", "--algorithm", "fold-shade", "--sigma", "1", "--h", "2", "--generate", "500", "--seed", seed,
            "--out", s(&dir.join("r.csv")), "--verify", "--report", s(&report),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let text = std::fs::read_to_string(&report).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("instance,algorithm,"));
    assert!(lines[1].ends_with(",true") && lines[2].ends_with(",true"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn l21_run_verifies() {
    let dir = scratch("l21");
    let base = dir.join("base.txt");
    assert!(diskfold(&["plane", "build", "--h", "1", "--sigma", "1", "--kind", "lstar6", "--out", s(&base)])
        .status
        .success());
    let out = diskfold(&[
        "run", "--algorithm", "fold-shade", "--sigma", "1", "--mode", "l21", "--base", s(&base), "--generate",
        "50", "--seed", "4", "--verify", "--out", s(&dir.join("r.csv")),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains(",l21,"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_file_supplies_flags() {
    let dir = scratch("config");
    let cfg = dir.join("bench.cfg");
    let out_csv = dir.join("b.csv");
    std::fs::write(
        &cfg,
        format!("# bench defaults\nsigma = 2\ninstances = 3\nn = 30\nh = 1,3\nout = {}\n", s(&out_csv)),
    )
    .unwrap();
    let out = diskfold(&["--config", s(&cfg), "bench", "--seed", "5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&out_csv).unwrap();
    // four algorithms, folding ones at two h values: 1 + 1 + 2 + 2 configs per instance
    assert_eq!(text.lines().count(), 1 + 3 * 6);
    let ids: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bench_covers_g12_bases() {
    let out = diskfold(&["bench", "--sigma", "2", "--instances", "2", "--n", "20", "--algorithms", "branch-fold"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for (b, k) in [(1, 12), (9, 100), (64, 703)] {
        let needle = format!(",{},{},proper,", b, k);
        assert!(text.contains(&needle), "missing b={} k={}", b, k);
    }
}
