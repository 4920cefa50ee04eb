use std::collections::BTreeMap;

use itertools::Itertools;
use monres::cancellation::{
    minimalize, minimalize_with, resolution_betti_with, MinimalizeOptions, PivotOrder,
};
use monres::dominance::{class_a_count, enumerate_dominant_class};
use monres::parallel::Execution;
use monres::taylor::{
    betti_table_oracle, betti_table_oracle_with, presentation_betti_at, taylor_complex,
    OracleOptions,
};
use monres::{BettiTable, ChainComplex, Ideal, Monomial};
use proptest::prelude::*;

fn monomial(n: usize, max_e: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_e, n).prop_map(Monomial::new)
}

fn monomial_pair() -> impl Strategy<Value = (Monomial, Monomial, Monomial)> {
    (1usize..=4).prop_flat_map(|n| (monomial(n, 5), monomial(n, 5), monomial(n, 5)))
}

/// A proper nonzero ideal in `n` variables with at most `q` generators.
fn ideal_in(n: usize, q: usize, max_e: u32) -> impl Strategy<Value = Ideal> {
    prop::collection::vec(monomial(n, max_e), 1..=q)
        .prop_filter("proper", |gens| gens.iter().all(|g| !g.is_one()))
        .prop_map(move |gens| Ideal::new(n, gens).unwrap())
}

fn small_ideal() -> impl Strategy<Value = Ideal> {
    (2usize..=4).prop_flat_map(|n| ideal_in(n, 6, 4))
}

fn counts_by_mdeg(c: &ChainComplex) -> BTreeMap<Monomial, usize> {
    let mut out = BTreeMap::new();
    for i in 0..=c.top_degree() {
        for (_, m) in c.basis(i) {
            *out.entry(m.clone()).or_insert(0) += 1;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lcm_laws((a, b, c) in monomial_pair()) {
        let ab = a.lcm(&b).unwrap();
        prop_assert_eq!(&ab, &b.lcm(&a).unwrap());
        prop_assert_eq!(ab.lcm(&c).unwrap(), a.lcm(&b.lcm(&c).unwrap()).unwrap());
        prop_assert_eq!(a.lcm(&a).unwrap(), a.clone());
        prop_assert!(a.divides(&ab).unwrap() && b.divides(&ab).unwrap());
        prop_assert!(ab.total_degree() >= a.total_degree().max(b.total_degree()));
        prop_assert!(ab.total_degree() <= a.total_degree() + b.total_degree());
        // least common multiple: anything both divide is divisible by it
        if a.divides(&c).unwrap() && b.divides(&c).unwrap() {
            prop_assert!(ab.divides(&c).unwrap());
        }
    }

    #[test]
    fn divisibility_is_a_partial_order((a, b, c) in monomial_pair()) {
        prop_assert!(a.divides(&a).unwrap());
        if a.divides(&b).unwrap() && b.divides(&a).unwrap() {
            prop_assert_eq!(&a, &b);
        }
        if a.divides(&b).unwrap() && b.divides(&c).unwrap() {
            prop_assert!(a.divides(&c).unwrap());
        }
        if a.strongly_divides(&b).unwrap() {
            prop_assert!(a.divides(&b).unwrap());
            let by_definition = a.exponents().iter().zip(b.exponents()).all(|(&x, &y)| x == 0 || x < y);
            prop_assert!(by_definition);
        }
    }

    #[test]
    fn minimalization(i in small_ideal()) {
        let g = i.minimal_generators();
        prop_assert_eq!(g.minimal_generators(), g.clone());
        for m in i.generators() {
            prop_assert!(g.generators().iter().any(|h| h.divides(m).unwrap()));
        }
        for h in g.generators() {
            prop_assert!(i.generators().contains(h));
            prop_assert_eq!(g.generators().iter().filter(|k| k.divides(h).unwrap()).count(), 1);
        }
        prop_assert_eq!(g.restrict_to_divisors(&g.lcm()).unwrap(), g.clone());
    }

    #[test]
    fn twin_keeps_exactly_the_maximal_exponents(i in small_ideal()) {
        let m = i.lcm();
        let twin = i.twin().unwrap();
        prop_assert_eq!(twin.len(), i.len());
        prop_assert_eq!(twin.lcm(), m.clone());
        for (orig, t) in i.generators().iter().zip(twin.generators()) {
            for v in 0..i.ambient() {
                let expected = if orig.exponent(v) == m.exponent(v) { m.exponent(v) } else { 0 };
                prop_assert_eq!(t.exponent(v), expected);
            }
        }
    }

    #[test]
    fn twin_has_the_same_betti_numbers_at_the_top_multidegree(i in small_ideal()) {
        let g = i.minimal_generators();
        let m = g.lcm();
        let seq = OracleOptions { execution: Execution::Sequential, ..OracleOptions::default() };
        let twin = presentation_betti_at(&g.twin().unwrap(), &m, &seq).unwrap();
        prop_assert_eq!(twin, betti_table_oracle(&g).unwrap().at_multidegree(&m));
    }

    #[test]
    fn codim_is_n_exactly_for_artinian(i in (2usize..=4).prop_flat_map(|n| ideal_in(n, 6, 3))) {
        let g = i.minimal_generators();
        // brute force: smallest set of variables meeting every generator's support
        let n = g.ambient();
        let cover = (1..=n)
            .find(|&k| {
                (0..n).combinations(k).any(|vars| {
                    g.generators().iter().all(|m| vars.iter().any(|&v| m.exponent(v) > 0))
                })
            })
            .unwrap();
        prop_assert_eq!(g.codim().unwrap(), cover);
        prop_assert_eq!(cover == n, g.is_artinian());
    }

    #[test]
    fn text_and_json_round_trip(i in small_ideal()) {
        let n = i.ambient();
        prop_assert_eq!(Ideal::parse_text(&i.to_text(), Some(n)).unwrap(), i.clone());
        prop_assert_eq!(Ideal::parse_json(&i.to_json()).unwrap(), i.clone());
        prop_assert_eq!(Ideal::parse(&i.to_json(), None).unwrap(), i.clone());
        if let Some(letters) = i.to_letters() {
            prop_assert_eq!(Ideal::parse_text(&letters, Some(n)).unwrap(), i.clone());
        }
    }

    #[test]
    fn taylor_complex_is_homogeneous_with_square_zero(i in small_ideal()) {
        let c = taylor_complex(&i).unwrap();
        prop_assert!(c.check_homogeneous().is_ok());
        prop_assert!(c.check_d_squared().is_ok());
        let ranks = c.ranks();
        let q = i.len();
        let binomials: Vec<usize> = (0..=q).map(|k| (0..q).combinations(k).count()).collect();
        prop_assert_eq!(ranks, binomials);
    }

    #[test]
    fn each_cancellation_removes_a_pair_of_equal_multidegree(i in small_ideal()) {
        let c = taylor_complex(&i).unwrap();
        let before = counts_by_mdeg(&c);
        let (m, steps) = minimalize(c).unwrap();
        let after = counts_by_mdeg(&m);
        let mut removed: BTreeMap<Monomial, usize> = BTreeMap::new();
        for s in &steps {
            *removed.entry(s.mdeg.clone()).or_insert(0) += 2;
        }
        for (l, &count) in &before {
            let gone = removed.get(l).copied().unwrap_or(0);
            prop_assert_eq!(after.get(l).copied().unwrap_or(0), count - gone);
        }
        prop_assert!(!m.has_invertible_entries());
    }

    #[test]
    fn multidegrees_without_invertible_entries_keep_their_symbols(i in small_ideal()) {
        let c = taylor_complex(&i).unwrap();
        let mut touched = std::collections::BTreeSet::new();
        for k in 1..=c.top_degree() {
            if let Some(d) = c.differential(k) {
                for (_, source, e) in d.iter() {
                    if e.is_invertible() {
                        touched.insert(c.mdeg(k, source).unwrap().clone());
                    }
                }
            }
        }
        let before = counts_by_mdeg(&c);
        let (m, _) = minimalize(c).unwrap();
        let after = counts_by_mdeg(&m);
        for (l, &count) in &before {
            if !touched.contains(l) {
                prop_assert_eq!(after.get(l).copied(), Some(count));
            }
        }
    }

    #[test]
    fn pivot_order_does_not_change_betti_numbers(i in small_ideal(), seed in any::<u64>()) {
        let tables: Vec<BettiTable> = [
            PivotOrder::HighestFirst,
            PivotOrder::LowestFirst,
            PivotOrder::ReverseLabels,
            PivotOrder::Seeded(seed),
        ]
        .into_iter()
        .map(|order| resolution_betti_with(&i, &MinimalizeOptions { order, verify_each_step: false }).unwrap())
        .collect();
        for t in &tables[1..] {
            prop_assert_eq!(t, &tables[0]);
        }
        prop_assert_eq!(&tables[0], &betti_table_oracle(&i).unwrap());
    }

    #[test]
    fn cancellation_of_raw_presentations_matches_the_oracle(i in small_ideal()) {
        // the raw list may be non-minimal; its Taylor complex still resolves S/M
        let (m, _) = minimalize_with(taylor_complex(&i).unwrap(), &MinimalizeOptions::default()).unwrap();
        prop_assert_eq!(m.basis_counts(), betti_table_oracle(&i).unwrap());
    }

    #[test]
    fn execution_modes_agree(i in small_ideal()) {
        let s = betti_table_oracle_with(&i, &OracleOptions { execution: Execution::Sequential, ..OracleOptions::default() }).unwrap();
        let p = betti_table_oracle_with(&i, &OracleOptions { execution: Execution::Parallel, ..OracleOptions::default() }).unwrap();
        prop_assert_eq!(s, p);
    }

    #[test]
    fn class_count_matches_exhaustive_enumeration(i in (2usize..=3).prop_flat_map(|n| ideal_in(n, 6, 4))) {
        let g = i.minimal_generators();
        let n = g.ambient();
        let gens = g.generators();
        for d in enumerate_dominant_class(&g).unwrap().iter().take(3) {
            for size in 1..=n {
                for idx in (0..n).combinations(size) {
                    let brute = (1..=gens.len())
                        .flat_map(|k| gens.iter().combinations(k))
                        .filter(|a| {
                            let l = a.iter().fold(Monomial::one(n), |acc, m| acc.lcm(m).unwrap());
                            (0..n).all(|v| {
                                if idx.contains(&v) {
                                    l.exponent(v) == d.lcm.exponent(v)
                                } else {
                                    l.exponent(v) < d.lcm.exponent(v)
                                }
                            })
                        })
                        .count() as u64;
                    prop_assert_eq!(class_a_count(&g, d, &idx).unwrap(), brute);
                }
            }
        }
    }
}
