use proptest::prelude::*;
use ufalab::boolfn::text::{format_dnf, format_truth_table, parse_dnf, parse_truth_table};
use ufalab::boolfn::{c0_width, c1_width, uc1_width, TruthTable};

fn table(n: usize) -> impl Strategy<Value = TruthTable> {
    prop::collection::vec(any::<bool>(), 1 << n).prop_map(move |v| TruthTable::new(n, v).unwrap())
}

fn any_table() -> impl Strategy<Value = TruthTable> {
    (0usize..=4).prop_flat_map(table)
}

proptest! {
    #[test]
    fn width_chain(f in any_table()) {
        let u = uc1_width(&f);
        prop_assert!(u.exact);
        prop_assert!(u.witness.is_unambiguous());
        prop_assert_eq!(u.witness.to_truth_table().unwrap(), f.clone());
        prop_assert_eq!(u.witness.width(), u.width);
        let c1 = c1_width(&f).unwrap();
        let c0 = c0_width(&f).unwrap();
        prop_assert!(c1 <= u.width);
        prop_assert!(c0 <= u.width * u.width);
        // C1 and C0 swap under negation
        prop_assert_eq!(c1_width(&f.complement()).unwrap(), c0);
    }

    #[test]
    fn text_round_trips(f in any_table()) {
        prop_assert_eq!(parse_truth_table(&format_truth_table(&f)).unwrap(), f.clone());
        let d = uc1_width(&f).witness;
        prop_assert_eq!(parse_dnf(&format_dnf(&d)).unwrap(), d);
    }

    #[test]
    fn or_compose_is_pointwise_or(f in (1usize..=3).prop_flat_map(table)) {
        let n = f.arity();
        let g = f.or_compose().unwrap();
        for x in 0..1usize << n {
            for y in 0..1usize << n {
                prop_assert_eq!(g.at(x << n | y), f.at(x) || f.at(y));
            }
        }
    }
}

#[test]
fn parity_has_full_width() {
    for n in 1..=4 {
        let f = TruthTable::xor(n).unwrap();
        assert_eq!(c1_width(&f).unwrap(), n);
        assert_eq!(uc1_width(&f).width, n);
    }
}
