use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use stirling_core::combinatorics::{bell, stirling_row};
use stirling_core::graph_stirling::{
    pascal_identity_check, stirling_poly, stirling_vector, vector_moments, GraphFamily,
};
use stirling_core::numeric::rational_to_f64;
use stirling_core::oracle::{
    build_empty, build_random_forest, build_star_forest, enumerate_partition_counts, ExplicitGraph,
};
use stirling_core::polynomial::IntPolynomial;
use stirling_core::realroots::{
    bernoulli_decomposition, count_real_roots, isolate_negative_roots, squarefree_part,
};

#[test]
fn operator_walks_stirling_rows() {
    let mut sigma = IntPolynomial::x();
    for n in 1..=60 {
        assert_eq!(sigma, IntPolynomial::from_unsigned(&stirling_row(n)), "n={n}");
        assert_eq!(sigma, stirling_poly(GraphFamily::empty(n).unwrap()));
        sigma = sigma.apply_x_plus_xd();
    }
}

#[test]
fn pascal_identity_up_to_thirty() {
    for n in 2..=30 {
        for c in 1..n {
            assert!(pascal_identity_check(n, c).unwrap(), "n={n} c={c}");
        }
    }
}

#[test]
fn empty_graph_enumeration_gives_bell_numbers() {
    for n in 1..=12 {
        let counts = enumerate_partition_counts(&build_empty(n).unwrap()).unwrap();
        assert_eq!(counts.iter().sum::<BigUint>(), bell(n), "n={n}");
    }
}

#[test]
fn random_forest_shape() {
    let g = build_random_forest(8, 3, 1).unwrap();
    assert_eq!(g.vertex_count(), 8);
    assert_eq!(g.edge_count(), 5);
    assert_eq!(g.component_count(), 3);
    assert!(g.is_forest());
}

#[test]
fn bernoulli_mean_matches_exact_mean() {
    let mut graphs = Vec::new();
    for n in 1..=30 {
        graphs.push(GraphFamily::empty(n).unwrap());
        graphs.push(GraphFamily::path(n).unwrap());
        graphs.push(GraphFamily::forest(n, n.div_ceil(2)).unwrap());
        if n >= 3 {
            graphs.push(GraphFamily::cycle(n).unwrap());
        }
    }
    for g in graphs {
        let d = bernoulli_decomposition(&stirling_poly(g), 1e-12).unwrap();
        let (mean, _) = vector_moments(&stirling_vector(g).counts).unwrap();
        assert_eq!(d.lambdas.len(), g.vertex_count());
        assert_eq!(d.zero_count, g.chi());
        assert!((d.mean() - rational_to_f64(&mean)).abs() < 1e-6, "{g}");
    }
}

fn small_poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-20i64..=20, 1..=9)
        .prop_map(|c| IntPolynomial::from_i64(&c))
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Products of linear factors `(x - r)`, so real roots and repeats are common.
fn rooted_poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-6i64..=3, 1..=7).prop_map(|roots| {
        roots
            .iter()
            .fold(IntPolynomial::one(), |acc, &r| &acc * &IntPolynomial::from_i64(&[-r, 1]))
    })
}

fn check_isolation(p: &IntPolynomial) -> Result<(), TestCaseError> {
    let iso = isolate_negative_roots(p).unwrap();
    let total = count_real_roots(p).unwrap();
    prop_assert_eq!(iso.real_root_count, total);
    let nonzero = p.divide_by_x_power(iso.zero_multiplicity).unwrap();
    if squarefree_part(&nonzero).unwrap().degree() == nonzero.degree() {
        prop_assert_eq!(iso.intervals.len() + iso.zero_multiplicity + iso.positive_root_count, total);
    }
    for pair in iso.intervals.windows(2) {
        prop_assert!(pair[1].upper <= pair[0].lower);
    }
    for iv in &iso.intervals {
        prop_assert!(iv.upper.as_ratio() <= &num_rational::BigRational::from_integer(BigInt::from(0)));
    }
    Ok(())
}

proptest! {
    #[test]
    fn forest_shape_independence(n in 1usize..=9, c_seed in any::<usize>(), seed in any::<u64>()) {
        let c = 1 + c_seed % n;
        let expected = stirling_vector(GraphFamily::forest(n, c).unwrap()).counts;
        prop_assert_eq!(&enumerate_partition_counts(&build_random_forest(n, c, seed).unwrap()).unwrap(), &expected);
        prop_assert_eq!(&enumerate_partition_counts(&build_star_forest(n, c).unwrap()).unwrap(), &expected);
    }

    #[test]
    fn random_forest_is_a_forest(n in 1usize..=13, c_seed in any::<usize>(), seed in any::<u64>()) {
        let c = 1 + c_seed % n;
        let g = build_random_forest(n, c, seed).unwrap();
        prop_assert!(g.is_forest());
        prop_assert_eq!(g.component_count(), c);
        prop_assert_eq!(g.edge_count(), n - c);
    }

    #[test]
    fn isolation_counts_random(p in small_poly()) {
        check_isolation(&p)?;
    }

    #[test]
    fn isolation_counts_split(p in rooted_poly()) {
        prop_assert_eq!(count_real_roots(&p).unwrap(), p.degree().unwrap());
        check_isolation(&p)?;
    }

    #[test]
    fn enumeration_counts_sum_to_total(n in 2usize..=8, edges in prop::collection::vec((0usize..8, 0usize..8), 0..10)) {
        let edges: std::collections::BTreeSet<_> = edges
            .into_iter()
            .filter(|&(u, v)| u < n && v < n && u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        let g = ExplicitGraph::new(n, edges).unwrap();
        let counts = enumerate_partition_counts(&g).unwrap();
        // every vertex alone is always a valid partition
        prop_assert_eq!(&counts[n], &BigUint::from(1u8));
        prop_assert!(counts.iter().sum::<BigUint>() <= bell(n));
    }
}
