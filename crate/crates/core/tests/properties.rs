use proptest::prelude::*;

use finsigma::dsl::{parse_expr, Expr};
use finsigma::{
    distributivity_report, is_sub, join, meet, product, product_form, transpose, GroundSet,
    Partition, PartitionRanker, SigmaAlgebra,
};

fn sigma(labels: &[usize]) -> SigmaAlgebra {
    let space = GroundSet::new(labels.len()).unwrap();
    SigmaAlgebra::from_atoms(Partition::from_labels(&space, labels).unwrap())
}

/// Three σ-algebras on one space of 1..=7 points.
fn triple() -> impl Strategy<Value = (SigmaAlgebra, SigmaAlgebra, SigmaAlgebra)> {
    (1usize..=7).prop_flat_map(|n| {
        let labels = || prop::collection::vec(0usize..n, n);
        (labels(), labels(), labels()).prop_map(|(a, b, c)| (sigma(&a), sigma(&b), sigma(&c)))
    })
}

fn on(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = SigmaAlgebra> {
    n.prop_flat_map(|n| prop::collection::vec(0usize..n, n).prop_map(|l| sigma(&l)))
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["A", "F", "G", "H1"]).prop_map(Expr::var),
        Just(Expr::Discrete("X".into())),
        Just(Expr::Trivial("U".into())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        (inner.clone(), inner, 0..3u8).prop_map(|(a, b, op)| match op {
            0 => a.product(b),
            1 => a.meet(b),
            _ => a.join(b),
        })
    })
}

proptest! {
    #[test]
    fn lattice_laws((f, g, h) in triple()) {
        let m = |a: &SigmaAlgebra, b: &SigmaAlgebra| meet(a, b).unwrap();
        let j = |a: &SigmaAlgebra, b: &SigmaAlgebra| join(a, b).unwrap();
        prop_assert_eq!(m(&f, &g), m(&g, &f));
        prop_assert_eq!(j(&f, &g), j(&g, &f));
        prop_assert_eq!(m(&m(&f, &g), &h), m(&f, &m(&g, &h)));
        prop_assert_eq!(j(&j(&f, &g), &h), j(&f, &j(&g, &h)));
        prop_assert_eq!(m(&f, &f), f.clone());
        prop_assert_eq!(m(&f, &j(&f, &g)), f.clone());
        prop_assert_eq!(j(&f, &m(&f, &g)), f.clone());
        prop_assert!(is_sub(&m(&f, &g), &f).unwrap());
        prop_assert!(is_sub(&g, &j(&f, &g)).unwrap());
        prop_assert_eq!(is_sub(&f, &g).unwrap(), m(&f, &g) == f);
    }

    #[test]
    fn products_distribute_over_meets(a in on(1..=4), (f, g, _) in triple()) {
        prop_assume!(f.space().size() <= 6);
        let r = distributivity_report(&a, &f, &g).unwrap();
        prop_assert!(r.equal);
        prop_assert!(r.inclusion_ok);
        prop_assert!(r.atoms_rectangles);
        prop_assert!(r.equivalence_ok);
    }

    #[test]
    fn product_form_inverts_product(a in on(1..=5), f in on(1..=5)) {
        let h = product(&a, &f).unwrap();
        prop_assert_eq!(h.num_atoms(), a.num_atoms() * f.num_atoms());
        prop_assert_eq!(product_form(&h).unwrap(), Some((a.clone(), f.clone())));
        prop_assert_eq!(transpose(&h).unwrap(), product(&f, &a).unwrap());
    }

    #[test]
    fn ranker_round_trips(n in 1usize..=30, seed in any::<u128>()) {
        let r = PartitionRanker::new(n).unwrap().unwrap();
        let rank = seed % r.count();
        let p = r.unrank(rank).unwrap();
        prop_assert_eq!(r.rank(&p).unwrap(), rank);
    }

    #[test]
    fn printed_expressions_reparse(e in expr()) {
        let printed = e.to_string();
        prop_assert_eq!(parse_expr(&printed).unwrap(), e);
    }
}
