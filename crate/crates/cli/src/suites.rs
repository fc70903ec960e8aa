//! Reproduction suites. Each returns a report whose checks carry the
//! acceptance criterion they instantiate.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ufalab::automata::{
    all_words, determinize, disjoint_union, dnf_to_ufa, fixed_length_complement, is_unambiguous_nfa,
    nfa_to_cover, product_intersect, random_nfa, ufa_to_partition, FiniteLanguageView, Nfa,
};
use ufalab::boolfn::{all_conjunctions, c0_width, uc1_width, Conjunction, DnfFormula, Literal, RealTable, TruthTable};
use ufalab::commx::{
    approx_or_matrix, cover_number, is_partition, matrix_of_language, or_matrix, partition_number, rational_rank,
    CommMatrix, NonnegFactorization, Rectangle,
};
use ufalab::disj::{
    build_complement_nfa, build_disj_nfa, disj_matrix, k_subsets, sample_separating_sets, separation_ell,
};
use ufalab::junta::{
    approx_nonneg_degree, approx_nonneg_degree_lp, check_tensor_identities, junta_from_unambiguous_dnf,
    or_shift_junta, power_junta, powering_error, powering_exponent, tensor_certificate,
    ConicalJunta, DualCertificate,
};
use ufalab::lifting::{compose_dnf, compose_function, Gadget};
use ufalab::lp::{linf_fit, DEFAULT_MAX_ENTRIES};
use ufalab::rational::{int, ratio};
use ufalab::{Rational, Result};

use crate::oracle::{certificate_width, min_cover, min_partition, SmallMatrix};
use crate::report::{ExperimentReport, Relation};

pub const SUITES: [&str; 6] = ["union-identity", "certificates", "lifting", "disj", "or-approx", "measures"];

pub fn run_suite(name: &str, seed: u64) -> Option<Result<ExperimentReport>> {
    let run = match name {
        "union-identity" => union_identity,
        "certificates" => certificates,
        "lifting" => lifting,
        "disj" => disj,
        "or-approx" => or_approx,
        "measures" => measures,
        _ => return None,
    };
    Some(run(seed))
}

fn rng_for(seed: u64, suite: &str) -> ChaCha8Rng {
    let tag = suite.bytes().fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(u64::from(b)));
    ChaCha8Rng::seed_from_u64(seed ^ tag)
}

fn random_table<R: Rng>(rng: &mut R, n: usize) -> TruthTable {
    TruthTable::new(n, (0..1usize << n).map(|_| rng.gen()).collect()).expect("arity is small")
}

fn matrix_cells(m: &CommMatrix) -> Vec<(usize, usize)> {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| m.is_one(i, j))
        .collect()
}

/// Rectangles read off an automaton: all inside the 1-entries, covering them, at most one per live state.
fn rectangle_checks(r: &mut ExperimentReport, instance: &str, a: &Nfa, m1: usize, m2: usize, unambiguous: bool) -> Result<()> {
    let view = FiniteLanguageView::new(a.clone(), m1 + m2);
    let m = matrix_of_language(&view, m1, m2)?;
    let rects: Vec<Rectangle> = if unambiguous {
        ufa_to_partition(a, m1, m2)?
    } else {
        nfa_to_cover(a, m1, m2)?
    };
    let outside = rects
        .iter()
        .flat_map(|rc| rc.cells())
        .filter(|&(i, j)| !m.is_one(i, j))
        .count();
    let uncovered = matrix_cells(&m)
        .into_iter()
        .filter(|&(i, j)| !rects.iter().any(|rc| rc.contains(i, j)))
        .count();
    r.compare(3, instance, "cells outside F^-1(1)", &outside, Relation::Eq, "zero", &0, "rectangles from automaton states");
    r.compare(3, instance, "uncovered 1-cells", &uncovered, Relation::Eq, "zero", &0, "rectangles from automaton states");
    r.compare(
        3,
        instance,
        "rectangles",
        &rects.len(),
        Relation::Le,
        "live states",
        &a.num_live_states(),
        "rectangles from automaton states",
    );
    if unambiguous {
        r.holds(3, instance, "rectangles pairwise disjoint", is_partition(&m, &rects), "disjoint rectangles from unambiguous automaton");
    }
    Ok(())
}

fn union_identity(seed: u64) -> Result<ExperimentReport> {
    let mut r = ExperimentReport::new("union-identity");
    r.param("seed", seed);
    r.param("instances", 100);
    r.param("max_states", 6);
    r.param("max_length", 8);
    let mut rng = rng_for(seed, "union-identity");
    for t in 0..100 {
        let qa = rng.gen_range(1..=6);
        let qb = rng.gen_range(1..=6);
        let m = rng.gen_range(0..=8);
        let a = random_nfa(&mut rng, qa, 0.3)?;
        let b = random_nfa(&mut rng, qb, 0.3)?;
        let c = fixed_length_complement(&a, m)?;
        let rest = product_intersect(&b, &c)?;
        let u = disjoint_union(&a, &rest)?;
        let (mut mismatch, mut overlap) = (0usize, 0usize);
        for w in all_words(2, m)? {
            let in_a = a.accepts(&w)?;
            if u.accepts(&w)? != (in_a || b.accepts(&w)?) {
                mismatch += 1;
            }
            if in_a && rest.accepts(&w)? {
                overlap += 1;
            }
        }
        let inst = format!("pair {t} (|A|={qa}, |B|={qb}, m={m})");
        r.compare(2, &inst, "words where L(A)uL(B) differs from L(A)+(L(B)nL(A)^c)", &mismatch, Relation::Eq, "zero", &0, "union via complement");
        r.compare(2, &inst, "words in L(A) and L(B)nL(A)^c", &overlap, Relation::Eq, "zero", &0, "union via complement");
        let (m1, m2) = (m / 2, m - m / 2);
        rectangle_checks(&mut r, &format!("{inst} union"), &u, m1, m2, false)?;
        rectangle_checks(&mut r, &format!("{inst} complement"), &c, m1, m2, true)?;
    }
    Ok(r)
}

fn random_real_table<R: Rng>(rng: &mut R, n: usize) -> RealTable {
    let v = (0..1usize << n)
        .map(|_| ratio(rng.gen_range(-4..=4), rng.gen_range(1..=4)))
        .collect();
    RealTable::new(n, v).expect("arity is small")
}

fn certificates(seed: u64) -> Result<ExperimentReport> {
    let mut r = ExperimentReport::new("certificates");
    r.param("seed", seed);
    let mut rng = rng_for(seed, "certificates");

    // primal and dual optima agree
    for t in 0..50 {
        let n = rng.gen_range(0..=4);
        let f = random_real_table(&mut rng, n);
        for d in 0..=4 {
            let lp = approx_nonneg_degree_lp(&f, d)?;
            let primal = lp.primal.max_error(&f)?;
            let dual = lp.dual.inner(&f);
            let inst = format!("table {t} (n={n}) d={d}");
            r.compare(4, &inst, "primal error", &primal, Relation::Eq, "dual value", &dual, "LP strong duality");
            let feasible = lp.dual.norm() <= Rational::one() && lp.dual.violated_conjunction()?.is_none();
            r.holds(4, &inst, "dual witness feasible", feasible, "LP strong duality");
        }
    }

    // OR2 at width 1, against hand-built witnesses
    let or2 = TruthTable::or(2)?;
    let or2r = or2.to_real();
    let lp = approx_nonneg_degree_lp(&or2r, 1)?;
    let hand = ConicalJunta::new(
        2,
        vec![
            (ratio(5, 8), Conjunction::new([Literal::pos(0)])?),
            (ratio(5, 8), Conjunction::new([Literal::pos(1)])?),
            (ratio(1, 8), Conjunction::new([Literal::neg(0)])?),
            (ratio(1, 8), Conjunction::new([Literal::neg(1)])?),
        ],
    )?;
    let hand_dual = DualCertificate::new(2, 1, vec![ratio(-1, 4), ratio(1, 4), ratio(1, 4), ratio(-1, 4)])?;
    let hand_primal = hand.max_error(&or2r)?;
    r.compare(4, "OR2 d=1", "LP optimum", &lp.optimum, Relation::Eq, "error of (5/8)(x1+x2)+(1/8)(~x1+~x2)", &hand_primal, "LP strong duality");
    r.compare(4, "OR2 d=1", "LP optimum", &lp.optimum, Relation::Eq, "<Phi,f> for Phi=(-1,1,1,-1)/4", &hand_dual.inner(&or2r), "LP strong duality");
    r.holds(4, "OR2 d=1", "hand dual feasible", hand_dual.is_feasible()?, "LP strong duality");
    // over the two positive literals alone the optimum is 1/3
    let basis: Vec<Vec<Rational>> = (0..4usize)
        .map(|x| vec![int((x >> 1) as i64), int((x & 1) as i64)])
        .collect();
    let mono = linf_fit(&basis, or2r.values(), DEFAULT_MAX_ENTRIES)?;
    r.compare(4, "OR2 over x1, x2 only", "optimum", &mono.error, Relation::Eq, "one third", &ratio(1, 3), "LP strong duality");
    let (deg, _) = approx_nonneg_degree(&or2r, &ratio(1, 3))?;
    r.compare(4, "OR2 eps=1/3", "least degree", &deg, Relation::Eq, "one", &1, "LP strong duality");
    r.quantity("or2_d1_optimum", &lp.optimum);
    r.quantity("or2_d1_positive_optimum", &mono.error);

    // tensor certificates from LP duals of 2-f
    let mut found = 0;
    let mut tries = 0;
    while found < 20 && tries < 2000 {
        tries += 1;
        let n = rng.gen_range(1..=3);
        let d = rng.gen_range(0..n);
        let f = random_table(&mut rng, n);
        let target = RealTable::affine(&f, &int(2), &int(-1));
        let lp = approx_nonneg_degree_lp(&target, d)?;
        if lp.optimum.is_zero() {
            continue;
        }
        let eps = &lp.optimum / int(2);
        let phi = lp.dual;
        let inst = format!("f={} d={d} eps={eps}", bits(&f));
        r.compare(5, &inst, "<Phi,2-f>", &phi.inner(&target), Relation::Gt, "eps", &eps, "tensor certificate");
        let phi_or = tensor_certificate(&phi)?;
        let checks = check_tensor_identities(&phi, &phi_or, &f, &eps)?;
        r.holds(5, &inst, "norm of tensor at most 1", checks.norm, "tensor certificate");
        r.holds(5, &inst, "tensor nonpositive on conjunctions", checks.sign, "tensor certificate");
        r.compare(5, &inst, "<Phi_or,f_or>", &checks.or_value, Relation::Gt, "eps^2", &(&eps * &eps), "tensor certificate");
        r.holds(5, &inst, "<Phi_or,f_or> = <Phi,-f><Phi,2-f>", checks.value, "tensor certificate");
        found += 1;
    }
    r.compare(5, "tensor instances", "found", &found, Relation::Eq, "required", &20, "tensor certificate");

    // powering at delta = 1/20
    let delta = ratio(1, 20);
    let k = powering_exponent(&delta)?;
    let mut k_ref = 0u32;
    while 0.75f64.powi(k_ref as i32) > 0.05 {
        k_ref += 1;
    }
    r.compare(5, "delta=1/20", "k", &k, Relation::Eq, "least k with (3/4)^k <= delta", &k_ref, "powering trick");
    let bound = powering_error(&delta)?;
    r.quantity("powering_k", k);
    r.quantity("powering_eps_interval", bound.display());
    let eps = bound.lo.clone();
    for t in 0..20 {
        let n = rng.gen_range(1..=3);
        let f = random_table(&mut rng, n);
        let h = junta_from_unambiguous_dnf(&uc1_width(&f).witness)?;
        let d = h.degree();
        // 1 + f up to eps on one random conjunction of width <= d
        let conjs = all_conjunctions(n, d);
        let c = conjs[rng.gen_range(0..conjs.len())].clone();
        let g = h
            .plus(&ConicalJunta::constant(n, Rational::one())?)
            .plus(&ConicalJunta::new(n, vec![(eps.clone(), c)])?);
        let p = power_junta(&g, &eps, &delta, Some(&f))?;
        let inst = format!("instance {t} f={}", bits(&f));
        r.compare(5, &inst, "max |p - f|", &p.max_error(&f.to_real())?, Relation::Le, "delta", &delta, "powering trick");
        r.compare(5, &inst, "deg p", &p.degree(), Relation::Le, "k * deg g", &(k as usize * d), "powering trick");
    }
    Ok(r)
}

fn bits(f: &TruthTable) -> String {
    f.values().iter().map(|&v| if v { '1' } else { '0' }).collect()
}

fn or_approx(seed: u64) -> Result<ExperimentReport> {
    let mut r = ExperimentReport::new("or-approx");
    r.param("seed", seed);
    let mut rng = rng_for(seed, "or-approx");
    for t in 0..20 {
        let n = rng.gen_range(1..=3);
        let f = random_table(&mut rng, n);
        let h = junta_from_unambiguous_dnf(&uc1_width(&f).witness)?;
        let o = or_shift_junta(&h, &f)?;
        let target = f.or_compose()?.to_real();
        let inst = format!("instance {t} f={}", bits(&f));
        r.compare(6, &inst, "max |h_or - f_or|", &o.max_error(&target)?, Relation::Le, "one quarter", &ratio(1, 4), "or shift approximation");
        r.compare(6, &inst, "deg h_or", &o.degree(), Relation::Le, "deg h", &h.degree(), "or shift approximation");
    }
    let i4 = CommMatrix::identity(4)?;
    let (g, w) = approx_or_matrix(&i4, &NonnegFactorization::by_rows(&i4))?;
    let f_or = or_matrix(&i4)?;
    r.compare(6, "I4", "max |G - F_or|", &g.max_abs_diff(&f_or)?, Relation::Le, "one quarter", &ratio(1, 4), "or matrix approximation");
    r.compare(6, "I4", "factors", &w.rank(), Relation::Le, "2r+1", &9, "or matrix approximation");
    r.holds(6, "I4", "factors reconstruct G exactly", w.reconstructs(&g), "or matrix approximation");
    r.quantity("i4_factors", w.rank());
    Ok(r)
}

fn lifting(seed: u64) -> Result<ExperimentReport> {
    let mut r = ExperimentReport::new("lifting");
    r.param("seed", seed);
    r.param("b", 1);
    let fs = [("AND2", TruthTable::and(2)?), ("OR2", TruthTable::or(2)?), ("XOR2", TruthTable::xor(2)?)];
    let gs = [("XOR", Gadget::xor()), ("AND", Gadget::and())];
    for (fname, f) in &fs {
        for (gname, g) in &gs {
            let inst = format!("{fname} o {gname}");
            let d = uc1_width(f).witness;
            let cd = compose_dnf(&d, g)?;
            let cf = compose_function(f, g, 2)?;
            r.holds(7, &inst, "composed DNF unambiguous", cd.is_unambiguous(), "composed unambiguous DNF");
            r.compare(7, &inst, "width", &cd.width(), Relation::Le, "2bk", &(2 * g.bits() * d.width()), "composed unambiguous DNF");
            let mut mismatch = 0;
            for w in all_words(2, 4)? {
                if cd.eval(&w)? != cf.eval_joint(&w)? {
                    mismatch += 1;
                }
            }
            r.compare(7, &inst, "inputs where DNF and f o g^n differ", &mismatch, Relation::Eq, "zero", &0, "composed unambiguous DNF");
            let u = dnf_to_ufa(&cd, 4)?;
            r.holds(7, &inst, "automaton unambiguous", is_unambiguous_nfa(&u), "composed unambiguous DNF");
            rectangle_checks(&mut r, &inst, &u, 2, 2, true)?;
        }
    }
    Ok(r)
}

fn disj(seed: u64) -> Result<ExperimentReport> {
    let (n, k) = (6usize, 2usize);
    let mut r = ExperimentReport::new("disj");
    r.param("n", n);
    r.param("k", k);
    r.param("seed", seed);
    let inst = format!("n={n} k={k}");
    let ell = separation_ell(n, k)?;
    let ell_ref = (16.0 * 225f64.ln()).ceil() as usize;
    r.compare(1, &inst, "ell", &ell, Relation::Eq, "ceil(16 ln 225)", &ell_ref, "separating family size");
    let fam = sample_separating_sets(n, k, seed)?;
    r.quantity("ell", fam.ell());
    r.quantity("attempts", fam.attempts());
    r.quantity("family_seed", fam.seed());
    let subsets = k_subsets(n, k)?;
    let unseparated = subsets
        .iter()
        .flat_map(|&s| subsets.iter().map(move |&t| (s, t)))
        .filter(|&(s, t)| s & t == 0 && !fam.sets().iter().any(|&z| s & !z == 0 && z & t == 0))
        .count();
    r.compare(1, &inst, "disjoint pairs without a separating set", &unseparated, Relation::Eq, "zero", &0, "separating family");

    let a1 = build_disj_nfa(n, k, &fam)?;
    let a2 = build_complement_nfa(n, k)?;
    r.quantity("a1_states", a1.num_states());
    r.quantity("a2_states", a2.num_states());
    let (mut bad1, mut bad2, mut both, mut neither) = (0usize, 0usize, 0usize, 0usize);
    for w in all_words(2, 2 * n)? {
        let ones = |h: &[u8]| h.iter().filter(|&&b| b == 1).count();
        let member = ones(&w[..n]) == k && ones(&w[n..]) == k && (0..n).all(|i| w[i] & w[n + i] == 0);
        let (x1, x2) = (a1.accepts(&w)?, a2.accepts(&w)?);
        bad1 += usize::from(x1 != member);
        bad2 += usize::from(x2 == member);
        both += usize::from(x1 && x2);
        neither += usize::from(!x1 && !x2);
    }
    r.compare(1, &inst, "words where L(A1) differs from Disj", &bad1, Relation::Eq, "zero", &0, "disjointness automata");
    r.compare(1, &inst, "words where L(A2) differs from the complement", &bad2, Relation::Eq, "zero", &0, "disjointness automata");
    r.compare(1, &inst, "|L(A1) n L(A2)|", &both, Relation::Eq, "zero", &0, "disjointness automata");
    r.compare(1, &inst, "words in neither", &neither, Relation::Eq, "zero", &0, "disjointness automata");
    r.holds(1, &inst, "A2 ambiguous", !is_unambiguous_nfa(&a2), "disjointness automata");

    let rank = rational_rank(&disj_matrix(n, k)?);
    let binom = (n * (n - 1) / 2) as u64;
    r.compare(1, &inst, "rank of disjointness matrix", &(rank as u64), Relation::Eq, "C(6,2)", &binom, "full rank of disjointness");
    r.quantity("rank", rank);

    rectangle_checks(&mut r, "A1", &a1, n, n, false)?;
    rectangle_checks(&mut r, "A2", &a2, n, n, false)?;
    // DFA for the same language
    let dfa = determinize(&a1, 1 << 16)?.trim();
    rectangle_checks(&mut r, "DFA(A1)", &dfa, n, n, true)?;
    let parts = ufa_to_partition(&dfa, n, n)?.len();
    r.compare(1, "DFA(A1)", "partition size", &parts, Relation::Ge, "rank", &rank, "rank below partition number");
    r.quantity("dfa_states", dfa.num_states());
    Ok(r)
}

/// A search result, or -1 when the search stopped without proving optimality.
fn exact(v: Option<usize>) -> i64 {
    v.map_or(-1, |v| v as i64)
}

/// Library optimum vs brute force, accumulated per matrix.
fn measure_mismatches(m: &SmallMatrix, cache: &mut HashMap<(usize, usize, u32), [usize; 3]>) -> Result<[bool; 3]> {
    let cm = CommMatrix::from_bool_fn(m.rows, m.cols, |i, j| m.get(i, j))?;
    let lib = [
        cover_number(&cm, true)?.value(),
        cover_number(&cm, false)?.value(),
        partition_number(&cm)?.value(),
    ];
    let key = canonical(m);
    let oracle = *cache
        .entry(key)
        .or_insert_with(|| [min_cover(m, true), min_cover(m, false), min_partition(m)]);
    Ok([0, 1, 2].map(|i| lib[i] != Some(oracle[i])))
}

/// Orbit representative under row and column permutations.
fn canonical(m: &SmallMatrix) -> (usize, usize, u32) {
    let perms = permutations(m.cols);
    let mut best = u32::MAX;
    for p in &perms {
        let mut rows: Vec<u32> = (0..m.rows)
            .map(|i| (0..m.cols).fold(0u32, |acc, j| acc | (u32::from(m.get(i, p[j])) << j)))
            .collect();
        rows.sort_unstable();
        let code = rows.iter().fold(0u32, |acc, &r| acc << m.cols | r);
        best = best.min(code);
    }
    (m.rows, m.cols, best)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn measures(seed: u64) -> Result<ExperimentReport> {
    let mut r = ExperimentReport::new("measures");
    r.param("seed", seed);
    let mut rng = rng_for(seed, "measures");
    let mut cache = HashMap::new();
    let names = ["Cov1", "Cov0", "Par1"];
    for rows in 1..=4 {
        for cols in 1..=4 {
            let mut bad = [0usize; 3];
            let total = 1u32 << (rows * cols);
            for ones in 0..total {
                let miss = measure_mismatches(&SmallMatrix::new(rows, cols, ones), &mut cache)?;
                for i in 0..3 {
                    bad[i] += usize::from(miss[i]);
                }
            }
            for i in 0..3 {
                r.compare(
                    8,
                    format!("all {rows}x{cols} ({total})"),
                    &format!("matrices where {} differs from brute force", names[i]),
                    &bad[i],
                    Relation::Eq,
                    "zero",
                    &0,
                    "brute-force optimum",
                );
            }
        }
    }
    for t in 0..30 {
        let ones: u32 = rng.gen_range(0..1u32 << 25);
        let m = SmallMatrix::new(5, 5, ones);
        let cm = CommMatrix::from_bool_fn(5, 5, |i, j| m.get(i, j))?;
        let inst = format!("random 5x5 #{t} ({ones:07x})");
        let lib = [cover_number(&cm, true)?.value(), cover_number(&cm, false)?.value(), partition_number(&cm)?.value()];
        let oracle = [min_cover(&m, true), min_cover(&m, false), min_partition(&m)];
        for i in 0..3 {
            r.compare(8, &inst, names[i], &exact(lib[i]), Relation::Eq, "brute force", &(oracle[i] as i64), "brute-force optimum");
        }
    }
    let j3 = CommMatrix::co_identity(3)?;
    r.compare(8, "J-I3", "Par1", &exact(partition_number(&j3)?.value()), Relation::Eq, "three", &3, "brute-force optimum");
    let i2 = CommMatrix::identity(2)?;
    r.compare(8, "I2", "Cov0", &exact(cover_number(&i2, false)?.value()), Relation::Eq, "two", &2, "brute-force optimum");

    // every unambiguous DNF on at most 3 variables
    for n in 0..=3 {
        let conjs = all_conjunctions(n, n);
        let mut min_width: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut count = 0usize;
        let mut chosen: Vec<usize> = Vec::new();
        enumerate_disjoint(&conjs, 0, &mut chosen, &mut |terms| {
            count += 1;
            let d = DnfFormula::new(n, terms.iter().map(|&i| conjs[i].clone()).collect()).expect("valid terms");
            let f = d.to_truth_table().expect("small arity");
            let w = min_width.entry(f.values().to_vec()).or_insert(usize::MAX);
            *w = (*w).min(d.width());
        });
        r.quantity(&format!("unambiguous_dnfs_n{n}"), count);
        let (mut bad_uc1, mut bad_c0, mut bad_ineq) = (0usize, 0usize, 0usize);
        for (vals, w) in &min_width {
            let f = TruthTable::new(n, vals.clone())?;
            let u = uc1_width(&f).width;
            let c0 = c0_width(&f)?;
            bad_uc1 += usize::from(u != *w);
            bad_c0 += usize::from(c0 != certificate_width(n, vals, false));
            bad_ineq += usize::from(c0 > u * u);
        }
        let inst = format!("n={n} ({count} DNFs, {} functions)", min_width.len());
        r.compare(9, &inst, "functions with UC1 != least enumerated width", &bad_uc1, Relation::Eq, "zero", &0, "width inequality");
        r.compare(9, &inst, "functions with C0 != brute force", &bad_c0, Relation::Eq, "zero", &0, "width inequality");
        r.compare(9, &inst, "functions with C0 > UC1^2", &bad_ineq, Relation::Eq, "zero", &0, "width inequality");
    }
    Ok(r)
}

/// Calls `visit` on every set of pairwise inconsistent conjunctions (indices increasing).
fn enumerate_disjoint(conjs: &[Conjunction], from: usize, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    visit(chosen);
    for i in from..conjs.len() {
        if chosen.iter().all(|&j| !conjs[j].consistent_with(&conjs[i])) {
            chosen.push(i);
            enumerate_disjoint(conjs, i + 1, chosen, visit);
            chosen.pop();
        }
    }
}
