//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ufalab_cli::report::ExperimentReport;
use ufalab_cli::suites::{run_suite, SUITES};

const SEED: u64 = 0;

struct Criterion {
    id: u8,
    title: &'static str,
    tolerance: &'static str,
    /// Suite whose runtime is bounded, with the bound.
    limit: Option<(&'static str, Duration)>,
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: 1,
        title: "disjointness chain at (6,2): ell = 87, exhaustive A1/A2 over 2^12 words, rank 15",
        tolerance: "exact",
        limit: Some(("disj", Duration::from_secs(10))),
    },
    Criterion {
        id: 2,
        title: "union via complement on 100 random NFA pairs (<= 6 states, m <= 8)",
        tolerance: "exact",
        limit: Some(("union-identity", Duration::from_secs(30))),
    },
    Criterion {
        id: 3,
        title: "automaton rectangles cover F^-1(1), disjoint for UFAs, at most one per live state",
        tolerance: "exact",
        limit: None,
    },
    Criterion {
        id: 4,
        title: "LP primal = dual on 50 tables x d in 0..=4; OR2 at d=1: 1/4 with negated literals, 1/3 over x1,x2 alone, deg+_1/3 = 1",
        tolerance: "exact",
        limit: None,
    },
    Criterion {
        id: 5,
        title: "tensor certificates (norm, sign, value > eps^2) on 20 LP duals; powering k = 11 on 20 instances",
        tolerance: "exact",
        limit: None,
    },
    Criterion {
        id: 6,
        title: "or-shift juntas within 1/4 on 20 functions; I4 or-matrix within 1/4 using <= 9 factors",
        tolerance: "exact",
        limit: None,
    },
    Criterion {
        id: 7,
        title: "lifted DNFs for AND2/OR2/XOR2 with b = 1 gadgets: unambiguous, width <= 2bk, table-equal, UFA",
        tolerance: "exact",
        limit: None,
    },
    Criterion {
        id: 8,
        title: "Cov1/Cov0/Par1 equal brute force on all matrices up to 4x4 and 30 random 5x5; Par1(J-I3) = 3, Cov0(I2) = 2",
        tolerance: "exact",
        limit: Some(("measures", Duration::from_secs(60))),
    },
    Criterion {
        id: 9,
        title: "C0 <= UC1^2 over every unambiguous DNF on n <= 3",
        tolerance: "exact",
        limit: None,
    },
];

fn main() -> ExitCode {
    let mut reports: Vec<(ExperimentReport, Duration)> = Vec::new();
    let mut errors = Vec::new();
    for name in SUITES {
        let start = Instant::now();
        match run_suite(name, SEED).expect("known suite") {
            Ok(r) => reports.push((r, start.elapsed())),
            Err(e) => errors.push(format!("{name}: {e}")),
        }
    }
    let mut all_pass = errors.is_empty();
    for e in &errors {
        println!("ERROR suite {e}");
    }
    for c in &CRITERIA {
        let checks: Vec<_> = reports
            .iter()
            .flat_map(|(r, _)| r.checks.iter().filter(|k| k.criterion == c.id))
            .collect();
        let failed = checks.iter().filter(|k| !k.pass).count();
        let mut pass = !checks.is_empty() && failed == 0;
        let mut time = String::new();
        if let Some((suite, bound)) = c.limit {
            match reports.iter().find(|(r, _)| r.experiment == suite) {
                Some((_, t)) => {
                    pass &= *t < bound;
                    time = format!(", {:.2} s (limit {} s)", t.as_secs_f64(), bound.as_secs());
                }
                None => pass = false,
            }
        }
        all_pass &= pass;
        println!(
            "{} criterion {}: {} [{}/{} checks, tolerance: {}{}]",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            checks.len() - failed,
            checks.len(),
            c.tolerance,
            time
        );
        for k in checks.iter().filter(|k| !k.pass).take(5) {
            println!(
                "    {}: {} = {} {} {} = {}",
                k.instance,
                k.lhs,
                k.lhs_value,
                k.relation.symbol(),
                k.rhs,
                k.rhs_value
            );
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
