use orddec_cli::{run_with, Status, VerificationRun, CHECK_IDS};

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Outcome {
    let argv = std::iter::once("orddec").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn runs(stdout: &str) -> Vec<VerificationRun> {
    stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn count_with_enumeration_reports_a_match() {
    let o = run(&["count", "--n", "5", "--r", "3", "--enumerate"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(
        o.stdout,
        r#"{"n":5,"r":3,"family":"ord","closed_form":54,"enumerated":54,"match":true}"#.to_string()
            + "\n"
    );
    assert_eq!(o.stdout, golden("count_5_3.json"));
}

#[test]
fn count_formats() {
    let csv = run(&["count", "--n", "6", "--r", "4", "--format", "csv"]);
    assert_eq!(
        csv.stdout,
        "n,r,family,closed_form,enumerated,match\n6,4,ord,196,,\n"
    );
    let lines = run(&[
        "count",
        "--n",
        "6",
        "--family",
        "j",
        "--r",
        "3",
        "--enumerate",
        "--format",
        "lines",
    ]);
    assert_eq!(
        lines.stdout,
        "j n=6 r=3 closed_form=21 enumerated=21 match=true\n"
    );
    let pretty = run(&["count", "--n", "6", "--format", "pretty"]);
    let v: serde_json::Value = serde_json::from_str(&pretty.stdout).unwrap();
    assert_eq!(v["closed_form"], serde_json::json!(213));
}

#[test]
fn count_every_family_agrees_with_enumeration() {
    let cases: &[&[&str]] = &[
        &["--family", "ord"],
        &["--family", "ord", "--r", "4"],
        &["--family", "opd", "--r", "3"],
        &["--family", "opd"],
        &["--family", "rdstar"],
        &["--family", "rdstar", "--r", "3"],
        &["--family", "rdstar-ord", "--m", "4"],
        &["--family", "j", "--r", "4"],
        &["--family", "g-slice", "--r", "3", "--m", "5"],
        &["--family", "chain"],
        &["--family", "chain", "--r", "2"],
        &["--family", "all-decreasing"],
        &["--family", "nilpotent-ord", "--r", "3"],
        &["--family", "nilpotent-rdstar"],
        &["--family", "nilpotent-j", "--r", "3"],
        &["--family", "nilpotent-j", "--r", "4"],
    ];
    for extra in cases {
        let mut args = vec!["count", "--n", "7", "--enumerate"];
        args.extend_from_slice(extra);
        let o = run(&args);
        assert_eq!(o.code, 0, "{extra:?}: {}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(
            v["match"],
            serde_json::json!(true),
            "{extra:?}: {}",
            o.stdout
        );
    }
}

#[test]
fn count_closed_forms_beyond_the_enumeration_budget() {
    let o = run(&["count", "--n", "40", "--r", "20"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(v["closed_form"].is_number());
    assert!(v["enumerated"].is_null());
    assert_eq!(
        run(&["count", "--n", "11", "--r", "3", "--enumerate"]).code,
        3
    );
    assert_eq!(
        run(&[
            "count",
            "--n",
            "13",
            "--r",
            "3",
            "--enumerate",
            "--budget",
            "13"
        ])
        .code,
        3
    );
}

#[test]
fn count_usage_errors() {
    assert_eq!(run(&["count", "--n", "5", "--family", "j"]).code, 2);
    assert_eq!(
        run(&["count", "--n", "5", "--family", "g-slice", "--r", "3"]).code,
        2
    );
    assert_eq!(run(&["count", "--n", "5", "--m", "3"]).code, 2);
    assert_eq!(
        run(&[
            "count",
            "--n",
            "5",
            "--family",
            "all-decreasing",
            "--r",
            "2"
        ])
        .code,
        2
    );
    assert_eq!(run(&["count", "--n", "5", "--r", "9"]).code, 2);
    assert_eq!(run(&["count", "--n", "3", "--family", "rdstar"]).code, 2);
    assert_eq!(run(&["count", "--n", "0"]).code, 2);
    assert_eq!(run(&["count", "--n", "five"]).code, 2);
}

#[test]
fn table_rows_and_header() {
    let o = run(&["table", "--max-n", "7"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, golden("table_7.csv"));
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "n,r,card,nilpotent,rank,maximal");
    assert!(lines.contains(&"4,3,19,,6,6"));
    assert!(lines.contains(&"5,3,54,19,13,13"));
}

#[test]
fn table_with_enumeration() {
    let o = run(&["table", "--max-n", "6", "--enumerate", "--format", "json"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, golden("table_6_enumerate.jsonl"));
    let csv = run(&["table", "--max-n", "11", "--enumerate"]);
    assert_eq!(csv.code, 0, "{}", csv.stderr);
    let rows: Vec<&str> = csv.stdout.lines().collect();
    assert_eq!(
        rows[0],
        "n,r,card,nilpotent,rank,maximal,card_enum,nilpotent_enum"
    );
    assert!(
        rows.contains(&"10,3,1882,1087,128,128,1882,1087"),
        "{}",
        csv.stdout
    );
    assert!(rows
        .iter()
        .any(|r| r.starts_with("11,3,") && r.ends_with(",,")));
}

#[test]
fn table_bounds() {
    assert_eq!(run(&["table", "--max-n", "13"]).code, 3);
    assert_eq!(run(&["table", "--max-n", "3"]).code, 2);
    let twelve = run(&["table", "--max-n", "12"]);
    assert_eq!(twelve.code, 0);
    assert_eq!(
        twelve.stdout.lines().count(),
        1 + (4..=12).map(|n| n - 3).sum::<usize>()
    );
}

#[test]
fn enumerate_lists_members() {
    let o = run(&["enumerate", "--n", "5", "--family", "j", "--r", "3"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, golden("enumerate_j_5_3.txt"));
    let ord = run(&["enumerate", "--n", "4", "--r", "3"]);
    assert_eq!(ord.stdout.lines().count(), 19);
    let json = run(&["enumerate", "--n", "4", "--r", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["count"], serde_json::json!(19));
    assert_eq!(v["elements"].as_array().unwrap().len(), 19);
    let csv = run(&[
        "enumerate",
        "--n",
        "4",
        "--family",
        "rdstar",
        "--format",
        "csv",
    ]);
    assert_eq!(csv.stdout, "images,rank\n1 1 3 2,3\n");
    assert_eq!(run(&["enumerate", "--n", "11"]).code, 3);
}

#[test]
fn generators_header_then_lines() {
    let o = run(&["generators", "--n", "6", "--r", "4"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, golden("generators_6_4.txt"));
    let mut lines = o.stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        r#"{"n":6,"r":4,"rhat":4,"size":20,"rank_formula":20}"#
    );
    let rest: Vec<orddec::Transformation> = lines.map(|l| l.parse().unwrap()).collect();
    assert_eq!(rest.len(), 20);
    let csv = run(&["generators", "--n", "5", "--r", "3", "--format", "csv"]);
    assert_eq!(
        csv.stdout.lines().filter(|l| l.starts_with("G,")).count(),
        2
    );
    assert_eq!(run(&["generators", "--n", "5", "--r", "5"]).code, 2);
}

#[test]
fn factor_emits_a_verified_word() {
    let o = run(&["factor", "--n", "7", "--r", "4", "--alpha", "1 1 1 4 3 2 2"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, golden("factor_7_4.json"));
    let lines = run(&[
        "factor",
        "--n",
        "6",
        "--r",
        "3",
        "--alpha",
        "1 1 3 2 1 1",
        "--format",
        "lines",
    ]);
    assert_eq!(lines.code, 0);
    assert!(lines.stdout.lines().any(|l| l.starts_with("lambda ")));
}

#[test]
fn factor_rejects_bad_input() {
    assert_eq!(
        run(&["factor", "--n", "5", "--r", "3", "--alpha", "1 0 2 1 1"]).code,
        2
    );
    assert_eq!(
        run(&["factor", "--n", "5", "--r", "3", "--alpha", "1 1 3"]).code,
        2
    );
    let o = run(&["factor", "--n", "5", "--r", "3", "--alpha", "1 2 3 4 5"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("error"));
}

#[test]
fn maximal_descriptors_and_verification() {
    let o = run(&["maximal", "--n", "6", "--r", "3"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, golden("maximal_6_3.jsonl"));
    for line in o.stdout.lines() {
        orddec::MaximalDescriptor::from_json(line).unwrap();
    }
    let v = run(&["maximal", "--n", "5", "--r", "3", "--verify"]);
    assert_eq!(v.code, 0);
    assert_eq!(v.stdout.lines().count(), 13);
    for line in v.stdout.lines() {
        let doc: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(doc["maximal"], serde_json::json!(true));
        assert!(doc["elapsed_ms"].is_u64());
    }
    assert!(v
        .stdout
        .contains(r#"{"kind":"remove_l","m":3,"n":5,"r":3,"maximal":true"#));
}

#[test]
fn maximal_full_semigroup() {
    let o = run(&["maximal", "--n", "5", "--full-semigroup", "--verify"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout.lines().count(), 10);
    assert!(o.stdout.lines().next().unwrap().contains("drop_identity"));
    assert_eq!(run(&["maximal", "--n", "5"]).code, 2);
    assert_eq!(
        run(&["maximal", "--n", "5", "--r", "3", "--full-semigroup"]).code,
        2
    );
}

#[test]
fn maximal_budget() {
    assert_eq!(
        run(&["maximal", "--n", "7", "--r", "3", "--verify"]).code,
        3
    );
    assert_eq!(run(&["maximal", "--n", "7", "--r", "3"]).code, 0);
}

#[test]
fn verify_examples() {
    let o = run(&["verify", "--check", "thm7", "--n", "5", "--r", "3"]);
    assert_eq!(o.code, 0);
    let rs = runs(&o.stdout);
    assert_eq!(rs.len(), 1);
    assert_eq!(rs[0].status, Status::Pass);
    assert!(rs[0].details.is_empty());
    assert_eq!(
        run(&["verify", "--check", "cardinality", "--n", "3"]).code,
        2
    );
}

#[test]
fn every_check_passes_at_n_5() {
    for id in CHECK_IDS {
        let o = run(&["verify", "--check", id, "--n", "5"]);
        assert_eq!(o.code, 0, "{id}: {}{}", o.stdout, o.stderr);
        let rs = runs(&o.stdout);
        assert!(!rs.is_empty(), "{id}");
        for r in rs {
            assert_eq!(r.check_id, id);
            assert_eq!(r.status, Status::Pass, "{id}: {:?}", r.details);
        }
    }
}

#[test]
fn verify_all_aggregates() {
    let o = run(&["verify", "--check", "all", "--max-n", "5"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rs = runs(&o.stdout);
    let ids: std::collections::BTreeSet<&str> = rs.iter().map(|r| r.check_id.as_str()).collect();
    assert_eq!(ids.len(), CHECK_IDS.len());
    assert!(o.stderr.contains("failed"));
    let csv = run(&["verify", "--check", "all", "--n", "4", "--format", "csv"]);
    assert!(csv
        .stdout
        .starts_with("check_id,n,r,status,mismatches,elapsed_ms\n"));
    assert!(!csv.stdout.contains(",fail,"));
}

#[test]
fn verify_is_deterministic_up_to_timing() {
    let strip = |s: &str| -> Vec<VerificationRun> {
        runs(s)
            .into_iter()
            .map(|mut r| {
                r.elapsed_ms = 0;
                r
            })
            .collect()
    };
    let a = run(&["verify", "--check", "thm7", "--n", "6", "--seed", "7"]);
    let b = run(&[
        "verify",
        "--check",
        "thm7",
        "--n",
        "6",
        "--seed",
        "7",
        "--threads",
        "2",
    ]);
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
    let order: Vec<Option<usize>> = runs(&a.stdout).iter().map(|r| r.r).collect();
    assert_eq!(order, vec![Some(3), Some(4), Some(5)]);
}

#[test]
fn verify_usage_and_budget_errors() {
    assert_eq!(run(&["verify", "--check", "nope", "--n", "5"]).code, 2);
    assert_eq!(
        run(&["verify", "--check", "psi-bijection", "--n", "4"]).code,
        2
    );
    assert_eq!(
        run(&["verify", "--check", "lemma2", "--n", "5", "--r", "3"]).code,
        2
    );
    assert_eq!(
        run(&["verify", "--check", "prop1", "--n", "6", "--r", "5"]).code,
        2
    );
    assert_eq!(run(&["verify", "--check", "thm8", "--n", "7"]).code, 3);
    assert_eq!(run(&["verify", "--check", "thm7", "--n", "9"]).code, 3);
    assert_eq!(
        run(&["verify", "--check", "cardinality", "--n", "11"]).code,
        3
    );
    assert_eq!(run(&["verify", "--check", "thm7"]).code, 2);
    let raised = run(&[
        "verify", "--check", "thm8", "--n", "7", "--r", "6", "--budget", "7",
    ]);
    assert_eq!(raised.code, 0, "{}", raised.stderr);
    assert!(raised.stderr.contains("warning"));
}

#[test]
fn rothe_hagen_runs_far_past_enumeration() {
    let o = run(&["verify", "--check", "rothe-hagen", "--n", "60"]);
    assert_eq!(o.code, 0);
    assert_eq!(
        runs(&o.stdout).len(),
        orddec::counting::max_reversing_rank(60) - 2
    );
}

#[test]
fn help_and_unknown_flags() {
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("verify"));
    let bad = run(&["count", "--n", "5", "--frobnicate"]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("Usage"));
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["--threads", "0", "count", "--n", "5"]).code, 2);
}
