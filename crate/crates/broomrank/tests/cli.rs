//! End-to-end tests of the installed binary: exact output strings, exit
//! codes, canonicalization echo, format round-trips, and the cost-bound
//! environment override.

use std::process::{Command, Output};
use std::time::Instant;

fn broomrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_broomrank"))
        .args(args)
        .env_remove("BROOMRANK_MAX_I")
        .output()
        .expect("binary runs")
}

fn broomrank_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_broomrank"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn rank_prints_reference_sequences() {
    let reference = broomrank(&["rank", "--m", "3", "--p", "2", "--n", "2", "--q", "3"]);
    assert_eq!(code(&reference), 0);
    assert_eq!(stdout(&reference).trim(), "1 2 3 6 10 11 10 11 10 5 1");

    let smallest = broomrank(&["rank", "--m", "1", "--n", "1"]);
    assert_eq!(code(&smallest), 0);
    assert_eq!(stdout(&smallest).trim(), "1 2 1");

    let oracle = broomrank(&[
        "rank", "--m", "2", "--p", "1", "--n", "1", "--q", "1", "--method", "oracle",
    ]);
    assert_eq!(code(&oracle), 0);
    assert_eq!(stdout(&oracle).trim(), "1 2 4 4 3 1");
}

#[test]
fn rank_methods_print_identical_output() {
    for method in ["closed", "conv", "oracle"] {
        let output = broomrank(&[
            "rank", "--m", "4", "--p", "3", "--n", "2", "--q", "5", "--method", method,
        ]);
        assert_eq!(code(&output), 0, "method {method}");
        assert_eq!(
            stdout(&output).trim(),
            "1 2 3 4 8 14 19 20 19 18 20 21 15 6 1",
            "method {method}"
        );
    }
}

#[test]
fn classify_verdict_strings_and_exit_codes() {
    let non_unimodal = broomrank(&["classify", "--m", "3", "--p", "2", "--n", "2", "--q", "3"]);
    assert_eq!(code(&non_unimodal), 1);
    assert_eq!(stdout(&non_unimodal).trim(), "not-unimodal witness=(6,7,8)");

    let two_brooms_of_two = broomrank(&["classify", "--m", "2", "--p", "5", "--n", "2", "--q", "9"]);
    assert_eq!(code(&two_brooms_of_two), 0);
    assert_eq!(stdout(&two_brooms_of_two).trim(), "unimodal condition=iii");

    let wide_first_broom = broomrank(&["classify", "--m", "4", "--p", "1", "--n", "3", "--q", "2"]);
    assert_eq!(code(&wide_first_broom), 0);
    assert_eq!(stdout(&wide_first_broom).trim(), "unimodal condition=i");
}

#[test]
fn pair_is_canonicalized_and_echoed() {
    // Swapped presentation of the reference pair: the echo shows the
    // canonical order and the verdict matches the unswapped run.
    let output = broomrank(&["classify", "--m", "2", "--p", "3", "--n", "3", "--q", "2"]);
    assert_eq!(code(&output), 1);
    assert_eq!(stdout(&output).trim(), "not-unimodal witness=(6,7,8)");
    assert!(
        stderr(&output).contains("pair: m=3 p=2 n=2 q=3"),
        "stderr: {}",
        stderr(&output)
    );
}

#[test]
fn invalid_arguments_exit_with_code_two() {
    let zero_m = broomrank(&["rank", "--m", "0", "--n", "1"]);
    assert_eq!(code(&zero_m), 2);

    let missing_n = broomrank(&["rank", "--m", "3"]);
    assert_eq!(code(&missing_n), 2);

    let unknown_flag = broomrank(&["rank", "--m", "3", "--n", "1", "--frmt", "json"]);
    assert_eq!(code(&unknown_flag), 2);

    let bfile_rank = broomrank(&["classify", "--m", "3", "--n", "1", "--format", "bfile"]);
    assert_eq!(code(&bfile_rank), 2);
}

#[test]
fn count_csv_reproduces_the_reference_columns() {
    let output = broomrank(&["count", "--max-i", "22", "--format", "csv"]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    assert!(!text.contains('\r'), "csv must use LF line endings");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "i,a,b_closed,b_brute,t_brute,b_agree,t_reference,t_agree"
    );
    assert_eq!(lines.len(), 23);

    let b_row = [0, 1, 2, 5, 7, 12, 16, 24, 30, 41, 50, 65, 77];
    let t_row = [60, 85, 110, 146, 182, 231, 280, 344, 408];
    for line in &lines[1..] {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 8, "line {line}");
        let i: usize = cells[0].parse().expect("index");
        assert_eq!(cells[5], "true", "closed and enumerated b disagree at {i}");
        if i >= 10 {
            assert_eq!(cells[2], b_row[i - 10].to_string(), "b_closed at {i}");
            assert_eq!(cells[3], b_row[i - 10].to_string(), "b_brute at {i}");
        } else {
            assert_eq!(cells[2], "0", "b_closed at {i}");
        }
        if (10..=18).contains(&i) {
            assert_eq!(cells[4], t_row[i - 10].to_string(), "t_brute at {i}");
            assert_eq!(cells[7], "true", "t_agree at {i}");
        }
        if i >= 19 {
            assert!(!cells[6].is_empty(), "bundled t reference at {i}");
            assert_eq!(cells[7], "false", "the bundled tail must be flagged at {i}");
        }
    }
}

#[test]
fn count_below_ten_vertices_has_no_non_unimodal_trees() {
    let output = broomrank(&["count", "--max-i", "9", "--format", "csv"]);
    assert_eq!(code(&output), 0);
    for line in stdout(&output).lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[2], "0", "line {line}");
        assert_eq!(cells[3], "0", "line {line}");
    }
}

#[test]
fn count_bound_is_enforced_and_env_adjustable() {
    let over = broomrank(&["count", "--max-i", "41"]);
    assert_eq!(code(&over), 2);
    assert!(stderr(&over).contains("41"), "stderr: {}", stderr(&over));

    let raised = broomrank_with_env(&["count", "--max-i", "41"], "BROOMRANK_MAX_I", "45");
    assert_eq!(code(&raised), 0, "stderr: {}", stderr(&raised));

    let lowered = broomrank_with_env(&["count", "--max-i", "22"], "BROOMRANK_MAX_I", "20");
    assert_eq!(code(&lowered), 2);

    let garbage = broomrank_with_env(&["count", "--max-i", "12"], "BROOMRANK_MAX_I", "many");
    assert_eq!(code(&garbage), 2);
    assert!(
        stderr(&garbage).contains("BROOMRANK_MAX_I"),
        "stderr: {}",
        stderr(&garbage)
    );
}

#[test]
fn bfile_exports_are_strictly_increasing_in_index() {
    let b = broomrank(&["bfile", "--sequence", "b", "--max-i", "22"]);
    assert_eq!(code(&b), 0);
    let text = stdout(&b);
    let mut previous: Option<u64> = None;
    for line in text.lines() {
        let (index, value) = line.split_once(' ').expect("index value");
        let index: u64 = index.parse().expect("numeric index");
        value.parse::<u64>().expect("numeric value");
        assert!(previous.is_none_or(|p| index > p), "line {line}");
        previous = Some(index);
    }
    assert!(text.lines().any(|line| line == "11 1"));
    assert!(text.lines().any(|line| line == "22 77"));

    let t = broomrank(&["bfile", "--sequence", "t", "--from", "10", "--max-i", "12"]);
    assert_eq!(code(&t), 0);
    assert_eq!(stdout(&t), "10 60\n11 85\n12 110\n");

    let empty_range = broomrank(&["bfile", "--sequence", "b", "--from", "9", "--max-i", "4"]);
    assert_eq!(code(&empty_range), 2);
}

#[test]
fn enumerate_lists_the_single_smallest_non_unimodal_tree() {
    let output = broomrank(&["enumerate", "--i", "11", "--non-unimodal-only"]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output).trim(), "m=3 p=2 n=2 q=3");

    let all_on_four = broomrank(&["enumerate", "--i", "4", "--format", "csv"]);
    assert_eq!(code(&all_on_four), 0);
    let text = stdout(&all_on_four);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,p,n,q");
    assert_eq!(lines[1..], ["1,0,1,1", "2,0,1,0"]);
}

#[test]
fn json_output_round_trips() {
    let rank = broomrank(&["rank", "--m", "3", "--p", "2", "--n", "2", "--q", "3", "--format", "json"]);
    assert_eq!(code(&rank), 0);
    let rank_doc: serde_json::Value = serde_json::from_str(&stdout(&rank)).expect("valid json");
    assert_eq!(rank_doc["offset"], 1);
    let values: Vec<String> = rank_doc["values"]
        .as_array()
        .expect("values array")
        .iter()
        .map(|v| v.as_str().expect("decimal string").to_string())
        .collect();
    assert_eq!(values.join(" "), "1 2 3 6 10 11 10 11 10 5 1");

    let classify = broomrank(&["classify", "--m", "3", "--p", "2", "--n", "2", "--q", "3", "--format", "json"]);
    assert_eq!(code(&classify), 1);
    let classify_doc: serde_json::Value =
        serde_json::from_str(&stdout(&classify)).expect("valid json");
    assert_eq!(classify_doc["unimodal"], false);
    assert_eq!(classify_doc["witness"][0], 6);
    assert_eq!(classify_doc["witness"][2], 8);
    assert_eq!(classify_doc["pair"]["m"], 3);

    let count = broomrank(&["count", "--max-i", "12", "--format", "json"]);
    assert_eq!(code(&count), 0);
    let count_doc: serde_json::Value = serde_json::from_str(&stdout(&count)).expect("valid json");
    assert_eq!(count_doc.as_array().expect("row array").len(), 12);
    assert_eq!(count_doc[10]["b_closed"], 1);

    let enumerate = broomrank(&["enumerate", "--i", "11", "--non-unimodal-only", "--format", "json"]);
    assert_eq!(code(&enumerate), 0);
    let enumerate_doc: serde_json::Value =
        serde_json::from_str(&stdout(&enumerate)).expect("valid json");
    assert_eq!(enumerate_doc["vertices"], 11);
    assert_eq!(enumerate_doc["pairs"][0]["q"], 3);
}

#[test]
fn verify_quick_passes_within_budget() {
    let start = Instant::now();
    let output = broomrank(&["verify", "--level", "quick"]);
    let elapsed = start.elapsed();
    assert_eq!(code(&output), 0, "stdout: {}", stdout(&output));
    let text = stdout(&output);
    assert!(text.lines().filter(|l| l.starts_with("PASS ")).count() >= 9);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("9 checks passed"), "stdout: {text}");
    assert!(elapsed.as_secs() < 5, "quick verify took {elapsed:?}");
}

#[test]
fn verify_full_passes_and_reports_sweep_sizes() {
    let output = broomrank(&["verify", "--level", "full", "--jobs", "2"]);
    assert_eq!(code(&output), 0, "stdout: {}", stdout(&output));
    let text = stdout(&output);
    assert!(text.contains("1029 cases"), "stdout: {text}");
    assert!(text.contains("8100 cases"), "stdout: {text}");
    assert!(text.contains("9 checks passed"), "stdout: {text}");
    assert!(
        text.contains("note:"),
        "the bundled total-count tail should be surfaced: {text}"
    );
}
