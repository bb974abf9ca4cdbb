use std::path::Path;
use std::process::{Command, Output};

fn patrec(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_patrec"))
        .arg("--data-dir")
        .arg(dir)
        .args(args)
        .output()
        .expect("patrec binary runs")
}

fn ok(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_seq_is_reproducible_and_feeds_cluster_seq() {
    let dir = tempfile::tempdir().unwrap();
    let gen = |name: &str| {
        let path = dir.path().join(name);
        ok(&patrec(
            dir.path(),
            &["gen-seq", "--preset", "hard", "--seed", "3", "--per-class", "12", "--out", path.to_str().unwrap()],
        ));
        std::fs::read(path).unwrap()
    };
    let first = gen("a.txt");
    assert_eq!(first, gen("b.txt"));
    assert_eq!(String::from_utf8(first).unwrap().lines().filter(|l| !l.starts_with('#')).count(), 24);

    let csv = ok(&patrec(
        dir.path(),
        &[
            "cluster-seq",
            "--data",
            dir.path().join("a.txt").to_str().unwrap(),
            "--cache-from",
            "4",
            "--cache-to",
            "2",
            "--repeats",
            "2",
        ],
    ));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "experiment,variant,param,k,seed,repeats,metric,metric_min,metric_max,seconds");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("cluster-seq,easy,4,2,0,2,"));
    assert!(lines[1].ends_with(','), "seconds column stays empty without --timing");
}

#[test]
fn classify_graphs_writes_one_row_per_instance_and_k() {
    let dir = tempfile::tempdir().unwrap();
    ok(&patrec(dir.path(), &["gen-graphs", "--instances", "2,14", "--per-set", "6"]));
    for index in ["02", "14"] {
        for set in ["train", "validation", "test"] {
            assert!(dir.path().join(format!("graphs-{index}-{set}.txt")).is_file());
        }
    }
    let results = dir.path().join("results.csv");
    ok(&patrec(
        dir.path(),
        &["classify-graphs", "--instances", "2,14", "--k", "1,3,5", "--matcher", "pd6w", "--out", results.to_str().unwrap()],
    ));
    let text = std::fs::read_to_string(&results).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 3);
    assert!(text.lines().nth(1).unwrap().starts_with("classify-graphs,pd6w,2,1,"));

    let report = ok(&patrec(dir.path(), &["eval", results.to_str().unwrap()]));
    assert_eq!(report.matches("classify-graphs pd6w k=").count(), 3);
    assert!(report.contains("spearman"));
}

#[test]
fn bad_input_exits_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| patrec(dir.path(), args).status.code();

    assert_eq!(code(&["classify-graphs", "--matcher", "nope"]), Some(2));
    assert_eq!(code(&["cluster-seq", "--data", "missing.txt"]), Some(2));
    assert_eq!(code(&["classify-graphs", "--instances", "1"]), Some(2));

    let junk = dir.path().join("junk.csv");
    std::fs::write(&junk, "not,a,results,file\n1,2,3,4\n").unwrap();
    assert_eq!(code(&["eval", junk.to_str().unwrap()]), Some(2));

    let malformed = dir.path().join("bad.txt");
    std::fs::write(&malformed, "0 2 1.0 2.0 3.0\n").unwrap();
    let out = patrec(dir.path(), &["cluster-seq", "--data", malformed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let unwritable = dir.path().join("no/such/dir/out.txt");
    assert_eq!(code(&["gen-seq", "--out", unwritable.to_str().unwrap()]), Some(2));
}

#[test]
fn algorithm_errors_exit_with_code_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.txt");
    ok(&patrec(dir.path(), &["gen-seq", "--per-class", "2", "--out", path.to_str().unwrap()]));
    // A cache of zero is rejected by the representative.
    let out = patrec(
        dir.path(),
        &["cluster-seq", "--data", path.to_str().unwrap(), "--cache-from", "0", "--cache-to", "0", "--repeats", "1"],
    );
    assert_eq!(out.status.code(), Some(1), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}
