use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use ufalab::automata::{all_words, text::format_nfa};
use ufalab::boolfn::text::{parse_dnf, parse_truth_table};
use ufalab::boolfn::{c0_width, c1_width, uc1_width, RealTable, TruthTable};
use ufalab::disj::{
    build_complement_nfa, build_disj_nfa, sample_separating_sets, separation_ell, ufa_size_lower_bound,
};
use ufalab::junta::text::parse_junta;
use ufalab::junta::{approx_nonneg_degree, approx_nonneg_degree_lp};
use ufalab::rational::{self, binomial};
use ufalab::Error;

use crate::report::{ExperimentReport, Relation};
use crate::suites::{run_suite, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Largest `2^(2n) * states` product for the exhaustive check in `disj --verify`.
pub const MAX_VERIFY_WORK: u64 = 1 << 32;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) | Error::ProbabilisticFailure { .. } => EXIT_RESOURCE,
        Error::Internal(_) => EXIT_VERDICT,
        _ => EXIT_USAGE,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

/// Text printed to stdout plus the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::usage(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

#[derive(Debug, Default)]
pub struct MeasureArgs {
    pub input: PathBuf,
    pub c1: bool,
    pub c0: bool,
    pub uc1: bool,
    pub degplus: Option<usize>,
    pub eps: Option<String>,
    pub out: Option<PathBuf>,
}

enum Input {
    Boolean(TruthTable),
    Real(RealTable),
}

fn read_input(path: &Path) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let keyword = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    let located = |e: Error| CliError::usage(format!("{}: {e}", path.display()));
    Ok(match keyword {
        "dnf" => Input::Boolean(parse_dnf(&text).map_err(located)?.to_truth_table()?),
        "junta" => {
            let t = parse_junta(&text).map_err(located)?.to_table();
            match t.as_boolean() {
                Some(b) => Input::Boolean(b),
                None => Input::Real(t),
            }
        }
        _ => Input::Boolean(parse_truth_table(&text).map_err(located)?),
    })
}

pub fn cmd_measure(args: &MeasureArgs, timings: bool) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let input = read_input(&args.input)?;
    let eps = match &args.eps {
        Some(s) => Some(rational::parse(s).ok_or_else(|| CliError::usage(format!("bad rational {s:?}")))?),
        None => None,
    };
    let widths_default = !args.c1 && !args.c0 && !args.uc1 && args.degplus.is_none() && eps.is_none();
    let mut r = ExperimentReport::new("measure");
    r.param("input", args.input.display());
    let mut out = String::new();
    let boolean = match &input {
        Input::Boolean(f) => Some(f),
        Input::Real(_) => None,
    };
    let need_boolean = |what: &str| CliError::usage(format!("{what} needs a boolean function"));
    if args.c1 || widths_default {
        let f = boolean.ok_or_else(|| need_boolean("C1"))?;
        let v = c1_width(f)?;
        writeln!(out, "C1 = {v}").unwrap();
        r.quantity("C1", v);
    }
    if args.c0 || widths_default {
        let f = boolean.ok_or_else(|| need_boolean("C0"))?;
        let v = c0_width(f)?;
        writeln!(out, "C0 = {v}").unwrap();
        r.quantity("C0", v);
    }
    if args.uc1 || widths_default {
        let f = boolean.ok_or_else(|| need_boolean("UC1"))?;
        let u = uc1_width(f);
        if u.exact {
            writeln!(out, "UC1 = {}", u.width).unwrap();
            r.quantity("UC1", u.width);
        } else {
            writeln!(out, "UC1 <= {} (upper bound)", u.width).unwrap();
            r.quantity("UC1_upper", u.width);
        }
    }
    let table = match &input {
        Input::Boolean(f) => f.to_real(),
        Input::Real(t) => t.clone(),
    };
    if let Some(d) = args.degplus {
        let lp = approx_nonneg_degree_lp(&table, d)?;
        writeln!(out, "eps*(d={d}) = {}", rational::format(&lp.optimum)).unwrap();
        r.quantity(&format!("eps_star_d{d}"), rational::format(&lp.optimum));
        r.quantity(&format!("lp_d{d}"), lp.to_json());
    }
    if let Some(e) = &eps {
        let (d, lp) = approx_nonneg_degree(&table, e)?;
        writeln!(out, "deg+_{}(f) = {d} (eps* = {})", rational::format(e), rational::format(&lp.optimum)).unwrap();
        r.quantity("degplus", d);
        r.param("eps", rational::format(e));
    }
    finish_timing(&mut r, &mut out, timings, start);
    if let Some(path) = &args.out {
        write_text(path, &r.to_json())?;
    }
    Ok(Outcome { stdout: out, code: EXIT_OK })
}

fn finish_timing(r: &mut ExperimentReport, out: &mut String, timings: bool, start: Instant) {
    if timings {
        let ms = start.elapsed().as_millis();
        r.timings_ms.get_or_insert_with(Default::default).insert("total".into(), ms);
        writeln!(out, "time = {ms} ms").unwrap();
    }
}

#[derive(Debug, Default)]
pub struct DisjArgs {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub verify: bool,
    pub out: Option<PathBuf>,
}

pub fn cmd_disj(args: &DisjArgs, timings: bool) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (n, k) = (args.n, args.k);
    let mut r = ExperimentReport::new("disj");
    r.param("n", n);
    r.param("k", k);
    r.param("seed", args.seed);
    let formula_ell = separation_ell(n, k)?;
    let fam = sample_separating_sets(n, k, args.seed)?;
    let a1 = build_disj_nfa(n, k, &fam)?;
    let a2 = build_complement_nfa(n, k)?;
    let lower = ufa_size_lower_bound(n, k)?;
    let binom = binomial(n as u64, k as u64);
    let mut out = String::new();
    for (key, value) in [
        ("ell", fam.ell().to_string()),
        ("attempts", fam.attempts().to_string()),
        ("family_seed", fam.seed().to_string()),
        ("a1_states", a1.num_states().to_string()),
        ("a2_states", a2.num_states().to_string()),
        ("binomial", binom.to_string()),
        ("lower_bound", lower.to_string()),
    ] {
        writeln!(out, "{key} = {value}").unwrap();
        r.quantity(key, value);
    }
    r.compare(1, "family", "ell", &fam.ell(), Relation::Eq, "formula", &formula_ell, "separating family size");
    r.holds(1, "family", "separates every disjoint pair", fam.is_verified(), "separating family");

    if args.verify {
        let words = 1u64.checked_shl(2 * n as u32).unwrap_or(u64::MAX);
        let work = words.saturating_mul((a1.num_states() + a2.num_states()) as u64);
        if work > MAX_VERIFY_WORK {
            return Err(Error::Resource(format!("exhaustive check over 2^{} words", 2 * n)).into());
        }
        let (mut bad1, mut bad2) = (0usize, 0usize);
        for w in all_words(2, 2 * n)? {
            let ones = |h: &[u8]| h.iter().filter(|&&b| b == 1).count();
            let member = ones(&w[..n]) == k && ones(&w[n..]) == k && (0..n).all(|i| w[i] & w[n + i] == 0);
            bad1 += usize::from(a1.accepts(&w)? != member);
            bad2 += usize::from(a2.accepts(&w)? == member);
        }
        let inst = format!("n={n} k={k}");
        r.compare(1, &inst, "words where L(A1) differs from Disj", &bad1, Relation::Eq, "zero", &0, "disjointness automata");
        r.compare(1, &inst, "words where L(A2) differs from the complement", &bad2, Relation::Eq, "zero", &0, "disjointness automata");
        if 2 * k <= n {
            r.compare(1, &inst, "rank", &(lower as u64), Relation::Eq, "C(n,k)", &binom, "full rank of disjointness");
        }
        r.compare(1, &inst, "rank", &lower, Relation::Le, "A1 states", &a1.num_states(), "rank below partition number");
        writeln!(out, "verify: {}", if r.passed() { "PASS" } else { "FAIL" }).unwrap();
    }
    finish_timing(&mut r, &mut out, timings, start);
    if let Some(dir) = &args.out {
        write_text(&dir.join("a1.nfa"), &format_nfa(&a1))?;
        write_text(&dir.join("a2.nfa"), &format_nfa(&a2))?;
        write_text(&dir.join("family.txt"), &fam.to_text())?;
        r.write_all(dir, "disj").map_err(|e| CliError::usage(format!("{}: {e}", dir.display())))?;
    }
    for c in r.failures() {
        writeln!(out, "FAIL {}: {} = {} {} {} = {}", c.instance, c.lhs, c.lhs_value, c.relation.symbol(), c.rhs, c.rhs_value).unwrap();
    }
    let code = if r.passed() { EXIT_OK } else { EXIT_VERDICT };
    Ok(Outcome { stdout: out, code })
}

#[derive(Debug, Default)]
pub struct ReproArgs {
    pub suite: String,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

pub fn cmd_repro(args: &ReproArgs, timings: bool) -> Result<Outcome, CliError> {
    let names: Vec<&str> = if args.suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&args.suite.as_str()) {
        vec![args.suite.as_str()]
    } else {
        return Err(CliError::usage(format!("unknown suite {:?}; expected one of {} or all", args.suite, SUITES.join(", "))));
    };
    let mut out = String::new();
    let mut ok = true;
    for name in names {
        let start = Instant::now();
        let mut r = run_suite(name, args.seed).expect("known suite")?;
        for (crit, n, f) in r.by_criterion() {
            writeln!(out, "{} {name} criterion {crit}: {}/{n} checks", if f == 0 { "PASS" } else { "FAIL" }, n - f).unwrap();
        }
        for c in r.failures() {
            writeln!(
                out,
                "  failed [{}] {}: {} = {} {} {} = {} ({})",
                c.criterion,
                c.instance,
                c.lhs,
                c.lhs_value,
                c.relation.symbol(),
                c.rhs,
                c.rhs_value,
                c.anchor
            )
            .unwrap();
        }
        finish_timing(&mut r, &mut out, timings, start);
        ok &= r.passed();
        if let Some(dir) = &args.out {
            r.write_all(dir, name).map_err(|e| CliError::usage(format!("{}: {e}", dir.display())))?;
        }
    }
    Ok(Outcome {
        stdout: out,
        code: if ok { EXIT_OK } else { EXIT_VERDICT },
    })
}

