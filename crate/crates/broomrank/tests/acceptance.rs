//! Acceptance gate: one test per criterion, each printing a single
//! `criterion N PASS ...` or `criterion N FAIL ...` line (visible with
//! `--nocapture`) and failing the build on any miss, including a blown
//! runtime budget. Budgets time the computation only, not process startup.
//!
//! Criterion 7's middle clause asserts a bundled claim that is
//! mathematically false (the merged difference row for m=4, n=2, q=3 is
//! 4 2 3 1, which dips and rises again), so that test is expected to stay
//! red and prints the counterexample. The production `verify` suites check
//! the corrected invariant (a single sign change) instead and pass.

use std::time::Instant;

use broomrank::enumeration::{b_closed, count_table, t_bruteforce, CostBounds};
use broomrank::seqcore::{binomial, binomial_diff_row, is_unimodal, merged_diff_row};
use broomrank::verify::{
    check_classifier_agreement, check_count_agreement, check_matrix_bijection,
    check_rank_methods, check_rank_structure, check_reference_pair, CheckOutcome,
};
use broomrank::BigInt;

/// Prints the criterion's single verdict line and panics on failure.
fn conclude(criterion: u32, title: &str, budget_ms: u128, elapsed_ms: u128, result: Result<String, String>) {
    let line = match &result {
        Ok(detail) if elapsed_ms <= budget_ms => format!(
            "criterion {criterion} PASS {title}: {detail} ({elapsed_ms} ms, budget {budget_ms} ms)"
        ),
        Ok(detail) => format!(
            "criterion {criterion} FAIL {title}: over budget at {elapsed_ms} ms (budget {budget_ms} ms; {detail})"
        ),
        Err(detail) => format!(
            "criterion {criterion} FAIL {title}: {detail} ({elapsed_ms} ms, budget {budget_ms} ms)"
        ),
    };
    println!("{line}");
    if result.is_err() || elapsed_ms > budget_ms {
        panic!("{line}");
    }
}

fn outcome_detail(outcome: &CheckOutcome) -> Result<String, String> {
    match &outcome.failure {
        None => Ok(format!("{} cases", outcome.cases)),
        Some(failure) => Err(failure.clone()),
    }
}

#[test]
fn criterion_1_reference_pair_three_routes() {
    let outcome = check_reference_pair();
    conclude(
        1,
        "reference pair, three routes and witness window",
        10,
        outcome.elapsed_ms,
        outcome_detail(&outcome),
    );
}

#[test]
fn criterion_2_triple_oracle_equivalence() {
    let outcome = check_rank_methods(6, 6, 1);
    conclude(
        2,
        "rank methods agree on the small grid",
        5_000,
        outcome.elapsed_ms,
        outcome_detail(&outcome),
    );
}

#[test]
fn criterion_3_classifier_matches_direct_scan() {
    let outcome = check_classifier_agreement(8, 14, 1);
    conclude(
        3,
        "closed classifier equals direct scan on the wide grid",
        30_000,
        outcome.elapsed_ms,
        outcome_detail(&outcome),
    );
}

#[test]
fn criterion_4_non_unimodal_count_row_and_three_routes() {
    const B_ROW: [u64; 13] = [0, 1, 2, 5, 7, 12, 16, 24, 30, 41, 50, 65, 77];
    let start = Instant::now();
    let mut result = Ok(String::new());
    for (k, &want) in B_ROW.iter().enumerate() {
        let i = 10 + k as u32;
        let got = b_closed(i);
        if got != want {
            result = Err(format!("b_closed({i}) = {got}, expected {want}"));
            break;
        }
    }
    let row_ms = start.elapsed().as_millis();
    let mut elapsed_ms = row_ms;
    if result.is_ok() {
        let outcome = check_count_agreement(10, 40);
        elapsed_ms = row_ms + outcome.elapsed_ms;
        result = outcome_detail(&outcome)
            .map(|detail| format!("13 reference values and closed=recursive=enumerated over {detail}"));
    }
    conclude(4, "non-unimodal counts", 60_000, elapsed_ms, result);
}

#[test]
fn criterion_5_total_count_row_with_flagged_tail() {
    const T_ROW: [u64; 9] = [60, 85, 110, 146, 182, 231, 280, 344, 408];
    let bounds = CostBounds::default();
    let start = Instant::now();
    let result: Result<String, String> = 'check: {
        for (k, &want) in T_ROW.iter().enumerate() {
            let i = 10 + k as u32;
            let got = t_bruteforce(i, &bounds).expect("within bounds");
            if got != want {
                break 'check Err(format!("t_bruteforce({i}) = {got}, expected {want}"));
            }
        }
        // Past 18 vertices the bundled row is only reported against the
        // computed values; the table must flag the mismatch, not hide it.
        let table = match count_table(22, &bounds) {
            Ok(table) => table,
            Err(err) => break 'check Err(format!("count table refused: {err}")),
        };
        let mut tail = Vec::new();
        for row in table.rows.iter().filter(|r| r.vertices >= 19) {
            match (row.t_reference, row.t_agree) {
                (Some(reference), Some(false)) => tail.push(format!(
                    "i={} computed {} (bundled {reference})",
                    row.vertices, row.t_brute
                )),
                (reference, agree) => {
                    break 'check Err(format!(
                        "row {} should flag the bundled tail, got reference {reference:?} agree {agree:?}",
                        row.vertices
                    ));
                }
            }
        }
        Ok(format!(
            "9 reference values; flagged tail {}",
            tail.join(", ")
        ))
    };
    conclude(5, "total counts", 60_000, start.elapsed().as_millis(), result);
}

#[test]
fn criterion_6_matrix_bijection_and_floor_formula() {
    let outcome = check_matrix_bijection(8, 24);
    conclude(
        6,
        "matrix count equals floor formula equals pair count, round-trip exact",
        10_000,
        outcome.elapsed_ms,
        outcome_detail(&outcome),
    );
}

#[test]
fn criterion_7_difference_row_property_suites() {
    let start = Instant::now();
    let mut cases = 0u64;
    let result: Result<String, String> = 'check: {
        for m in 0..=40 {
            cases += 1;
            let row = binomial_diff_row(m);
            if !is_unimodal(&row).unimodal {
                break 'check Err(format!("pendant difference row m={m} is not unimodal: {row}"));
            }
        }
        for m in 0..=20 {
            for n in 0..=20 {
                for q in 0..=10 {
                    cases += 1;
                    let row = merged_diff_row(m, n, q);
                    if !is_unimodal(&row).unimodal {
                        break 'check Err(format!(
                            "merged difference row m={m} n={n} q={q} is not unimodal: {row}"
                        ));
                    }
                }
            }
        }
        let zero = BigInt::from(0);
        for n in 1..=20u32 {
            for m in n..=20 {
                for j in 1..=((m + n) / 2) as i64 {
                    cases += 1;
                    let base = binomial(m + n, j) - binomial(m + n, j - 1) - binomial(m, j);
                    if base <= zero && (j as u32) < n {
                        break 'check Err(format!(
                            "m={m} n={n} j={j}: base difference {base} <= 0 before j reaches n"
                        ));
                    }
                    if j > 1 && base > zero && &base - binomial(n, j) < zero {
                        break 'check Err(format!(
                            "m={m} n={n} j={j}: positive base difference {base} undercuts C(n, j)"
                        ));
                    }
                }
            }
        }
        Ok(format!("{cases} cases"))
    };
    conclude(
        7,
        "difference row properties as bundled",
        10_000,
        start.elapsed().as_millis(),
        result,
    );
}

#[test]
fn criterion_8_structural_invariants_share_the_small_grid_budget() {
    // The invariants sweep shares criterion 2's budget, so both sweeps must
    // fit in it together.
    let methods = check_rank_methods(6, 6, 1);
    let structure = check_rank_structure(6, 6, 1);
    let elapsed_ms = methods.elapsed_ms + structure.elapsed_ms;
    let result = outcome_detail(&methods).and_then(|_| outcome_detail(&structure));
    conclude(
        8,
        "sum rule, unit boundaries, strictly falling tail",
        5_000,
        elapsed_ms,
        result,
    );
}
