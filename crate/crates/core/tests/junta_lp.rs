use num_traits::Zero;
use proptest::prelude::*;
use ufalab::boolfn::{RealTable, TruthTable};
use ufalab::junta::{
    approx_nonneg_degree, approx_nonneg_degree_lp, check_tensor_identities, or_shift_junta, junta_from_unambiguous_dnf, power_junta, powering_error, tensor_certificate,
    verify_dual_certificate, LpResult,
};
use ufalab::junta::text::{format_certificate, parse_certificate};
use ufalab::rational::{int, ratio};
use ufalab::{boolfn, Rational};

fn real_table() -> impl Strategy<Value = RealTable> {
    (0usize..=3).prop_flat_map(|n| {
        prop::collection::vec((-4i64..=4, 1i64..=3), 1 << n)
            .prop_map(move |v| RealTable::new(n, v.into_iter().map(|(p, q)| ratio(p, q)).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strong_duality(f in real_table(), d in 0usize..=3) {
        let r = approx_nonneg_degree_lp(&f, d).unwrap();
        prop_assert_eq!(r.primal.max_error(&f).unwrap(), r.optimum.clone());
        prop_assert_eq!(r.dual.inner(&f), r.optimum.clone());
        prop_assert!(r.dual.is_feasible().unwrap());
        if r.optimum > Rational::zero() {
            let below = &r.optimum / int(2);
            prop_assert!(verify_dual_certificate(&r.dual, &f, &below).unwrap().is_accept());
            prop_assert!(!verify_dual_certificate(&r.dual, &f, &r.optimum).unwrap().is_accept());
        }
        let back = LpResult::from_json(&r.to_json()).unwrap();
        prop_assert_eq!(back.optimum, r.optimum.clone());
        let cert = parse_certificate(&format_certificate(&r.dual)).unwrap();
        prop_assert_eq!(cert, r.dual.clone());
    }

    #[test]
    fn optimum_decreases_in_degree(f in real_table()) {
        let n = f.arity();
        let opts: Vec<Rational> = (0..=n).map(|d| approx_nonneg_degree_lp(&f, d).unwrap().optimum).collect();
        prop_assert!(opts.windows(2).all(|w| w[1] <= w[0]));
    }
}

#[test]
fn tensor_square_of_lp_certificates() {
    let third = ratio(1, 3);
    for bits in 1u32..16 {
        let f = TruthTable::from_index_fn(2, |i| bits >> i & 1 == 1).unwrap();
        let target = RealTable::affine(&f, &int(2), &int(-1));
        let r = approx_nonneg_degree_lp(&target, 1).unwrap();
        let phi = r.dual;
        let two_minus = phi.inner(&target);
        if two_minus <= third {
            continue;
        }
        let phi_or = tensor_certificate(&phi).unwrap();
        let checks = check_tensor_identities(&phi, &phi_or, &f, &third).unwrap();
        assert!(checks.norm && checks.sign, "{bits}");
        let fo = f.or_compose().unwrap().to_real();
        assert_eq!(phi_or.inner(&fo), checks.or_value);
    }
}

#[test]
fn powering_pipeline_on_exact_juntas() {
    let delta = ratio(1, 20);
    let eps = powering_error(&delta).unwrap().lo;
    for f in [TruthTable::and(2).unwrap(), TruthTable::or(2).unwrap(), TruthTable::xor(2).unwrap()] {
        let u = boolfn::uc1_width(&f);
        let h = junta_from_unambiguous_dnf(&u.witness).unwrap();
        // exact junta for 1+f
        let g = h.plus(&ufalab::junta::ConicalJunta::constant(2, int(1)).unwrap());
        let p = power_junta(&g, &eps, &delta, Some(&f)).unwrap();
        assert!(p.max_error(&f.to_real()).unwrap() <= delta);
        assert!(p.degree() <= 11 * u.width);
        let o = or_shift_junta(&h, &f).unwrap();
        let fo = f.or_compose().unwrap().to_real();
        assert!(o.max_error(&fo).unwrap() <= ratio(1, 4));
    }
}

#[test]
fn least_degree_for_or2() {
    let or2 = TruthTable::or(2).unwrap().to_real();
    assert_eq!(approx_nonneg_degree(&or2, &ratio(1, 3)).unwrap().0, 1);
    assert_eq!(approx_nonneg_degree(&or2, &ratio(1, 5)).unwrap().0, 2);
}
