use std::io::Write;
use std::process::{Command, Output, Stdio};

use apportion::{Method, Rational};
use apportion_cli::Report;
use apportion_oracle::SuiteReport;

fn apportion(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_apportion"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const THREE_PARTIES: &str = "party,votes\nA,600\nB,300\nC,100\n";

#[test]
fn hare_table_row() {
    let o = apportion(&["--seats", "10"], THREE_PARTIES);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hare: A 6, B 3, C 1"));
}

#[test]
fn reads_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("votes.csv");
    std::fs::write(&path, THREE_PARTIES).unwrap();
    let o = apportion(
        &[
            path.to_str().unwrap(),
            "--method",
            "sainte-lague",
            "--seats",
            "10",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sainte-lague: A 6, B 3, C 1"));
    let o = apportion(
        &[
            dir.path().join("missing.csv").to_str().unwrap(),
            "--seats",
            "1",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn compare_flags_differences() {
    let o = apportion(
        &["-", "--compare", "--seats", "10", "--format", "json"],
        "party,votes\nA,53\nB,24\nC,23\n",
    );
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    let seats: Vec<_> = r
        .allocations
        .iter()
        .map(|a| (a.method, a.seats.clone()))
        .collect();
    assert_eq!(seats[0], (Method::Hare, vec![5, 3, 2]));
    assert_eq!(seats[1], (Method::Dhondt, vec![6, 2, 2]));
    assert_eq!(seats[2].0, Method::SainteLague);
    let flagged: Vec<_> = r
        .differences
        .unwrap()
        .into_iter()
        .map(|d| d.party)
        .collect();
    assert!(flagged.contains(&"A".to_string()));

    let o = apportion(
        &["--compare", "--seats", "10"],
        "party,votes\nA,53\nB,24\nC,23\n",
    );
    assert!(stdout(&o).contains("differences: "));
}

#[test]
fn empty_house_is_fine() {
    let o = apportion(&["--method", "dhondt", "--seats", "0"], THREE_PARTIES);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dhondt: A 0, B 0, C 0"));
}

#[test]
fn input_errors_exit_one() {
    for (input, needle) in [
        ("party,votes\nA,0\n", "no party has positive votes"),
        ("", "empty input"),
        ("party,votes\nA,1\nA,2\n", "line 3: duplicate party"),
        ("party,votes\nA,1\nB,-2\n", "line 3: negative votes"),
        ("party,votes\nA,1\nB,2.5\n", "line 3:"),
    ] {
        let o = apportion(&["--seats", "3"], input);
        assert_eq!(o.status.code(), Some(1), "{input:?}");
        assert!(
            String::from_utf8_lossy(&o.stderr).contains(needle),
            "{input:?}"
        );
    }
    assert_eq!(apportion(&["--no-such-flag"], THREE_PARTIES).status.code(), Some(1));
    assert_eq!(apportion(&[], THREE_PARTIES).status.code(), Some(1));
    let o = apportion(
        &["--method", "dhondt", "--form", "sequential", "--seats", "3"],
        THREE_PARTIES,
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn execution_errors_exit_two() {
    let o = apportion(&["--seats", "100000000"], THREE_PARTIES);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_round_trips_and_is_stable() {
    let args = [
        "--method",
        "dhondt",
        "--form",
        "multiplicative",
        "--seats",
        "10",
        "--trace",
        "--format",
        "json",
        "--tie",
        "random",
        "--seed",
        "5",
    ];
    let input = "party,votes\nA,53\nB,24\nC,23\n";
    let first = stdout(&apportion(&args, input));
    let second = stdout(&apportion(&args, input));
    assert_eq!(first, second);
    let r: Report = serde_json::from_str(&first).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", first);
    assert_eq!(r.allocations[0].seats, vec![6, 2, 2]);
    assert!(r.trace.is_some());
    // exact rationals, never decimals
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(
        v["quota_report"]["ideal_quota"],
        serde_json::json!({"num": 10, "den": 1})
    );
    assert!(!first.contains('.'));
    for key in [
        "config",
        "tally",
        "allocations",
        "quota_report",
        "trace",
        "tie_events",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn divisor_trace_table() {
    let o = apportion(
        &["--method", "dhondt", "--seats", "3", "--trace"],
        "party,votes\nA,53\nB,24\nC,23\n",
    );
    let out = stdout(&o);
    assert!(out.contains("present quota"));
    assert!(out.contains("next quota"));
    assert!(out.contains("53/2"));
}

#[test]
fn seeded_runs() {
    let input = "party,votes,districts\nA,50,3\nB,30,2\nC,20,0\n";
    let o = apportion(&["--format", "json"], input);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    let run = r.seeded_run.unwrap();
    assert_eq!(run.totals, vec![3, 2, 1]);
    assert_eq!(run.iterations, 1);

    let input = "party,votes,d\nA,20,3\nB,80,1\n";
    let o = apportion(
        &["--districts-col", "d", "--cap", "3", "--format", "json"],
        input,
    );
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.allocations[0].seats, vec![3, 4]);

    let o = apportion(
        &[
            "--districts-col",
            "d",
            "--method",
            "dhondt",
            "--format",
            "json",
        ],
        input,
    );
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    let run = r.seeded_run.unwrap();
    assert_eq!(run.totals, vec![3, 8]);
    assert_eq!(run.multiplier, Some(Rational::new(85, 8)));

    let o = apportion(
        &[
            "--districts-col",
            "d",
            "--method",
            "dhondt",
            "--stop",
            "fixed",
            "--fixed-extra",
            "2",
            "--format",
            "json",
        ],
        input,
    );
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.seeded_run.unwrap().extra_seats.iter().sum::<u64>(), 2);

    let o = apportion(
        &["--seats", "5"],
        input.replace(",d\n", ",districts\n").as_str(),
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn suites() {
    let args = [
        "--suite",
        "equivalence",
        "--trials",
        "200",
        "--master-seed",
        "3",
        "--format",
        "json",
    ];
    let first = stdout(&apportion(&args, ""));
    assert_eq!(first, stdout(&apportion(&args, "")));
    let r: SuiteReport = serde_json::from_str(&first).unwrap();
    assert_eq!(r.trials_run, 200);
    assert!(r.disagreements.is_empty());

    let o = apportion(&["--suite", "paradox", "--trials", "3000"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("paradox suite: 3000 trials"));
    let o = apportion(&["--suite", "bias", "--trials", "100"], "");
    assert!(stdout(&o).contains("dhondt-minus-hare/rank-01"));
}
