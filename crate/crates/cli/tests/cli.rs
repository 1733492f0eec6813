use std::process::Command;

use splitov_cli::report::{Outcome, RunReport};

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_splitov")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, RunReport) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, stdout, stderr) = run(&all);
    let report = RunReport::from_json(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}{stderr}"));
    (code, report)
}

fn search_value(r: &RunReport) -> (usize, String) {
    match &r.outcome {
        Outcome::Search { max_length, witnesses, .. } => (*max_length, witnesses[0].clone()),
        other => panic!("not a search outcome: {other:?}"),
    }
}

#[test]
fn analyze_examples() {
    let (code, out, _) = run(&["analyze", "0001110", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("no disjoint length-2 pair"), "{out}");
    let (code, out, _) = run(&["analyze", "0011", "--t", "1", "--split"]);
    assert_eq!(code, 0);
    assert!(out.contains("no split 1-overlap"), "{out}");
    let (code, _, err) = run(&["analyze", ""]);
    assert_eq!(code, 2);
    assert!(err.contains("empty word"));
    assert_eq!(run(&["analyze", "01x"]).0, 2);
    assert_eq!(run(&["analyze", "012", "--k", "2"]).0, 2);
}

#[test]
fn analyze_reports_spans() {
    let (_, r) = run_json(&["analyze", "01010", "--t", "1"]);
    let Outcome::Analysis { period, borders, findings, .. } = r.outcome else { panic!() };
    assert_eq!(period, Some(2));
    assert_eq!(borders, vec![3, 1]);
    assert_eq!(findings.len(), 3);
    assert!(findings.iter().all(|f| f.tuple.is_some()));
    let (_, r) = run_json(&["analyze", "alfalfa", "--text"]);
    let Outcome::Analysis { word, k, .. } = r.outcome else { panic!() };
    assert_eq!((word.as_str(), k), ("0120120", 3));
}

#[test]
fn search_examples() {
    for (args, value, witness) in [
        (["C", "--k", "2", "--n", "3"], 16, "0000010101111100"),
        (["S", "--k", "3", "--t", "1"], 9, "012021012"),
        (["R", "--k", "4", "--t", "1"], 30, "012031231032021030231321023013"),
    ] {
        let mut a = vec!["search"];
        a.extend(args);
        let (code, r) = run_json(&a);
        assert_eq!(code, 0);
        assert_eq!(search_value(&r), (value, witness.to_string()));
    }
}

#[test]
fn search_exit_codes() {
    let (code, r) = run_json(&["search", "C", "--k", "2", "--n", "5", "--budget", "1000"]);
    assert_eq!(code, 3);
    assert_eq!(r.status.name(), "lower-bound");
    assert_eq!(run(&["search", "C", "--k", "2", "--t", "1"]).0, 2);
    assert_eq!(run(&["search", "S", "--k", "0", "--t", "1"]).0, 2);
    assert_eq!(run(&["search", "S", "--k", "2", "--t", "1", "--convention", "bogus"]).0, 2);
    let (code, r) = run_json(&["search", "R", "--k", "2", "--t", "4", "--frontier", "20000"]);
    assert_eq!(code, 3);
    assert!(search_value(&r).0 >= 40);
}

#[test]
fn checkpoint_resume_matches_full_run() {
    let dir = std::env::temp_dir().join(format!("splitov-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cp = dir.join("c24.txt");
    let cp_s = cp.to_str().unwrap();
    let (code, _) = run_json(&["search", "C", "--k", "2", "--n", "4", "--budget", "500", "--checkpoint", cp_s]);
    assert_eq!(code, 3);
    assert!(cp.exists());
    let (code, resumed) = run_json(&["search", "C", "--k", "2", "--n", "4", "--resume", cp_s]);
    assert_eq!(code, 0);
    let (_, full) = run_json(&["search", "C", "--k", "2", "--n", "4"]);
    assert_eq!(search_value(&resumed), search_value(&full));
    assert_eq!(resumed.nodes, full.nodes);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bounds_examples() {
    let (code, r) = run_json(&["bounds", "--family", "C", "--k", "2", "--n", "2"]);
    assert_eq!(code, 0);
    let Outcome::Bounds { bounds, .. } = r.outcome else { panic!() };
    let get = |key: &str| bounds.iter().find(|b| b.source == key).unwrap().floor.clone();
    assert_eq!(get("theorem_sum"), "7");
    assert_eq!(get("pigeonhole"), "9");
    assert_eq!(get("corollary"), "14");
    for (args, exact) in [(["S", "--k", "2", "--t", "0"], "2"), (["S", "--k", "1", "--t", "4"], "11")] {
        let mut a = vec!["bounds", "--family"];
        a.extend(args);
        let (_, r) = run_json(&a);
        let Outcome::Bounds { exact: e, .. } = r.outcome else { panic!() };
        assert_eq!(e.as_deref(), Some(exact));
    }
    let (_, r) = run_json(&["bounds", "--family", "R", "--k", "2", "--t", "1"]);
    let Outcome::Bounds { family, best_upper, .. } = r.outcome else { panic!() };
    assert_eq!((family.as_str(), best_upper.as_str()), ("R", "9"));
}

#[test]
fn construct_examples() {
    let (code, out, _) = run(&["construct", "c3", "--k", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("length: 41"));
    assert!(out.contains("no disjoint length-3 pair: PASS"));
    let (code, r) = run_json(&["construct", "debruijn", "--k", "2", "--n", "3"]);
    assert_eq!(code, 0);
    let Outcome::Construction { length, checks, .. } = r.outcome else { panic!() };
    assert_eq!(length, 10);
    assert!(checks.iter().any(|c| c.name == "window census" && c.pass));
    let (_, r) = run_json(&["construct", "witness", "--x", "010"]);
    let Outcome::Construction { word, .. } = r.outcome else { panic!() };
    assert_eq!(word, "01010");
    assert_eq!(run(&["construct", "c2"]).0, 2);
}

#[test]
fn table_two_matches() {
    let (code, r) = run_json(&["table", "2"]);
    assert_eq!(code, 0, "{}", r.to_text());
    let Outcome::Table { cells, .. } = r.outcome else { panic!() };
    assert!(cells.iter().any(|c| (c.k, c.param) == (2, 3) && c.verdict == splitov_cli::report::Verdict::Skipped));
    assert!(cells.iter().filter(|c| c.k == 1).all(|c| c.verdict == splitov_cli::report::Verdict::Match));
}

#[test]
fn json_round_trips_and_text_carries_the_same_fields() {
    for args in [
        vec!["analyze", "0120120", "--t", "1", "--n", "2"],
        vec!["search", "S", "--k", "2", "--t", "2"],
        vec!["bounds", "--family", "C", "--k", "3", "--n", "2"],
        vec!["construct", "c2", "--k", "4"],
        vec!["table", "3"],
    ] {
        let (_, r) = run_json(&args);
        let back = RunReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let (_, text, _) = run(&args);
        assert!(text.contains(&format!("status: {}", r.status.name())));
        assert!(text.contains(&format!("command: {}", r.command.join(" ").replace(" --json", ""))));
    }
}

#[test]
fn thread_count_does_not_change_reports() {
    let base = ["search", "C", "--k", "2", "--n", "4", "--split-depth", "5", "--warmup-nodes", "0", "--budget", "40"];
    let mut one = base.to_vec();
    one.extend(["--threads", "1"]);
    let mut four = base.to_vec();
    four.extend(["--threads", "4"]);
    let (c1, r1) = run_json(&one);
    let (c4, r4) = run_json(&four);
    assert_eq!(c1, c4);
    assert_eq!(r1.without_timing().to_json(), r4.without_timing().to_json());
}

#[test]
fn wrong_entries_are_flagged() {
    use splitov::search::SearchOptions;
    use splitov_cli::commands::table_cell;
    use splitov_cli::report::Verdict;
    use splitov_cli::tables::{lookup, Relation};

    let good = lookup(1, 2, 3).unwrap();
    let opts = SearchOptions::default();
    assert_eq!(table_cell(&good, true, None, &opts).unwrap().verdict, Verdict::Match);
    let mut wrong_value = good.clone();
    wrong_value.value = 17;
    wrong_value.witness = None;
    assert_eq!(table_cell(&wrong_value, true, None, &opts).unwrap().verdict, Verdict::Mismatch);
    let mut wrong_word = good.clone();
    wrong_word.witness = Some("0000010101111110".into());
    assert_eq!(table_cell(&wrong_word, false, None, &opts).unwrap().verdict, Verdict::Mismatch);
    let mut too_high = good;
    too_high.relation = Relation::AtLeast;
    too_high.value = 20;
    too_high.witness = None;
    assert_eq!(table_cell(&too_high, true, None, &opts).unwrap().verdict, Verdict::Mismatch);
}
