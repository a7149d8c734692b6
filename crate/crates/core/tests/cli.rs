use std::process::{Command, Output};

use ballean::records::parse_record;

fn ballean(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ballean")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<ballean::records::Record> {
    stdout(o).lines().map(|l| parse_record(l).expect("well-formed record")).collect()
}

#[test]
fn close_evens_odds_on_the_line() {
    let o = ballean(&["close", "--ballean", "metric", "--a", "evens", "--b", "odds", "--format", "records"]);
    assert!(o.status.success());
    let r = &records(&o)[0];
    let keys: Vec<&str> = r.fields().iter().map(|(k, _)| k.as_str()).collect();
    assert_eq!(keys, ["op", "ballean", "args", "verdict", "witness_r", "witness_points", "scale"]);
    assert_eq!(r.get("verdict"), Some("yes"));
    assert_eq!(r.get("witness_r"), Some("1"));
}

#[test]
fn two_n_is_large_in_the_paired_ballean() {
    let o = ballean(&["large", "--ballean", "example5", "--y", "twoN", "--format", "records"]);
    assert!(o.status.success());
    let r = &records(&o)[0];
    assert_eq!(r.get("verdict"), Some("yes"));
    // the pairs lie in every entourage, so the least scale is 0
    assert_eq!(r.get("witness_r"), Some("0"));
}

#[test]
fn reindexed_line_agrees_on_default_pairs() {
    let o = ballean(&["compare", "--a", "metric", "--b", "metric2x", "--pairs", "default", "--format", "records"]);
    assert!(o.status.success());
    let rs = records(&o);
    assert_eq!(rs.len(), 11);
    assert!(rs[..10].iter().all(|r| r.get("agree") == Some("true")));
    assert_eq!(rs[10].get("lambda_disagreement"), Some("false"));
}

#[test]
fn unknown_verdict_is_not_an_error() {
    let o = ballean(&["close", "--a", "pow4", "--b", "twice_pow4", "--format", "records"]);
    assert!(o.status.success());
    assert_eq!(records(&o)[0].get("verdict"), Some("unknown"));
}

#[test]
fn theorem1_on_discrete_has_passes_and_no_fails() {
    let o = ballean(&["suite", "theorem1", "--ballean", "discrete", "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    let rs = records(&o);
    let summary = rs.last().unwrap();
    assert_eq!(summary.get("summary"), Some("total"));
    assert!(summary.get("pass").unwrap().parse::<usize>().unwrap() > 0);
    assert_eq!(summary.get("fail"), Some("0"));
}

#[test]
fn example5_suite_is_anchored() {
    let o = ballean(&["suite", "example5", "--format", "records"]);
    assert!(o.status.success());
    assert!(records(&o).iter().any(|r| r.get("anchor") == Some("Example 5")));
}

#[test]
fn failing_suite_exits_one() {
    // the separator needs a chain distance, which the permutation ballean lacks
    let o = ballean(&["suite", "normality", "--ballean", "finitary", "--format", "records"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(records(&o).iter().any(|r| r.get("outcome") == Some("fail") && r.get("witness") != Some("-")));
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        &["close", "--ballean", "nope", "--a", "evens", "--b", "odds"][..],
        &["close", "--a", "evens", "--b", "unheard_of"],
        &["mu", "--f", "cube"],
        &["compare", "--a", "metric", "--b", "metric", "--pairs", "missing"],
        &["suite", "mu_so", "--ballean", "metric"],
        &["suite", "theorem99"],
        &["close", "--a", "evens", "--b", "odds", "--config", "/nonexistent/ballean.toml"],
        &["close", "--a", "evens", "--b", "odds", "--window", "8", "--cutoff", "9"],
    ] {
        let o = ballean(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn user_config_is_honoured() {
    let dir = std::env::temp_dir().join(format!("ballean-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.toml");
    std::fs::write(
        &path,
        "[scale]\nrmax = 4\nwindow = 256\n\n[presentations.line]\nkind = \"metric\"\n\n\
         [presentations.coarse]\nkind = \"reindexed\"\nbase = \"line\"\nfactor = 3\n\n\
         [subsets]\nthirds = \"arith(0,3)\"\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = ballean(&["close", "--config", p, "--ballean", "coarse", "--a", "thirds", "--b", "all", "--format", "records"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = &records(&o)[0];
    assert_eq!(r.get("witness_r"), Some("1"));
    assert_eq!(r.get("scale"), Some("rmax:4,window:256,cutoff:64"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn text_and_records_carry_the_same_fields() {
    for args in [
        &["separate", "--a", "pow4", "--b", "twice_pow4", "--rmax", "2", "--cutoff", "2048"][..],
        &["so", "--f", "sqrt", "--eps", "0.1", "--window", "512"],
        &["net", "--r", "3", "--window", "128"],
    ] {
        let text = stdout(&ballean(args));
        let mut with_records = args.to_vec();
        with_records.extend(["--format", "records"]);
        let r = &records(&ballean(&with_records))[0];
        for (k, v) in &r.fields()[3..] {
            assert!(text.contains(&format!("{k}: {v}")), "{k} missing from text output of {args:?}");
        }
    }
}

#[test]
fn suite_text_and_records_agree_on_outcomes() {
    let text = stdout(&ballean(&["suite", "filter"]));
    for r in records(&ballean(&["suite", "filter", "--format", "records"])) {
        if let (Some(id), Some(outcome)) = (r.get("id"), r.get("outcome")) {
            let line = text.lines().find(|l| l.contains(&format!(" {id} "))).expect(id);
            assert!(line.trim_start().starts_with(&outcome.to_uppercase()), "{id}");
        }
    }
}

#[test]
fn timings_only_on_request() {
    let plain = stdout(&ballean(&["suite", "normality", "--format", "records"]));
    assert!(!plain.contains("runtime_ms"));
    let timed = stdout(&ballean(&["suite", "normality", "--format", "records", "--timings"]));
    assert!(timed.lines().filter(|l| !l.contains("summary=")).all(|l| l.contains("runtime_ms=")));
}
