use std::process::{Command, Output};

use rm_rpa::harness::reload;

fn rm_rpa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rm-rpa")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_fht_prints_only_the_bound() {
    let out = rm_rpa(&["count-fht", "--code", "7,3", "--decoder", "srpa", "--rp", "1/2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "24576\n");
    let out = rm_rpa(&["count-fht", "--code", "8,3", "--rp", "1/16", "--rq", "0.85"]);
    assert_eq!(stdout(&out), "512\n");
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("# config: "));
}

#[test]
fn decode_one_all_positive_gives_zero_word() {
    let out = rm_rpa(&["decode-one", "--code", "2,1", "--llr", "1,1,1,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("0000"));
}

#[test]
fn decode_one_corrects_a_flip() {
    // v1 of RM(3,1) is 01010101; the third coordinate is flipped and weak.
    let out = rm_rpa(&[
        "decode-one", "--code", "3,2", "--decoder", "rpa", "--llr",
        "3,-3,-0.5,-3,3,-3,3,-3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).lines().next(), Some("01010101"));
}

#[test]
fn usage_errors_exit_with_2() {
    for args in [
        &["count-fht", "--code", "3,4"][..],
        &["count-fht", "--code", "7,1"],
        &["simulate", "--code", "5,2", "--ebn0", "x"],
        &["simulate", "--code", "5,2", "--ebn0", "1", "--rp", "0"],
        &["simulate", "--code", "5,2", "--ebn0", "1", "--rq", "3/2"],
        &["decode-one", "--code", "2,1", "--llr", "1,1,1"],
        &["subset-study", "--crossover", "0.7"],
        &["sweep-rq", "--code", "5,2", "--rp", "1/4", "--rq-grid", "0:0.5:2"],
        &["frobnicate"],
    ] {
        let out = rm_rpa(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn resource_errors_exit_with_1() {
    let out = rm_rpa(&["subset-study", "--code", "5,2", "--p", "3"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn simulate_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_rm-rpa"))
        .args(["simulate", "--code", "5,2", "--decoder", "srpa", "--rp", "1/4"])
        .args(["--ebn0", "1:0.5:2", "--min-words", "2000", "--min-errors", "10", "--seed", "3", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with(
        "code,decoder,r_p,r_q,ebn0_db,words,word_errors,wer,wer_ci_lo,wer_ci_hi,ber,mean_fht,mean_iters,seed,"
    ));
    let rows = reload(&path).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1].ebn0_db, Some(1.5));
    assert!(rows.iter().all(|r| r.words >= 2000 && r.seed == 3 && r.decoder == "srpa"));
    assert!(rows[0].wer >= rows[2].wer);
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path.with_extension("json")).unwrap()).unwrap();
    assert_eq!(sidecar["job"]["m"], 5);
    assert!(sidecar["job"].get("workers").is_none());
}

#[test]
fn sweep_reports_the_best_point() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_rm-rpa"))
        .args(["sweep-rq", "--code", "5,2", "--rp", "1/4", "--rq-grid", "0:0.5:1", "--ebn0", "2"])
        .args(["--min-words", "1000", "--min-errors", "0", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("best r_q = "));
    let rows = reload(&path).unwrap();
    let rq: Vec<String> = rows.iter().map(|r| r.r_q.to_string()).collect();
    assert_eq!(rq, ["0", "1/2", "1"]);
}

#[test]
fn subset_study_small_code() {
    let out = rm_rpa(&["subset-study", "--code", "3,2", "--p", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("subsets\t21\ninputs_per_subset\t256\n"), "{text}");
}
