//! Dominant sets and the closed forms for homological degree `n`.
//!
//! A member `m` of a finite set `L` is dominant in `x` when its `x`-exponent
//! is strictly larger than that of every other member of `L`. The class
//! `D_M` collects the dominant `n`-subsets `D` of the minimal generators such
//! that no minimal generator strongly divides `lcm(D)`. From it:
//!
//! * `pd(S/M) = n` iff `D_M` is nonempty,
//! * `beta_{n,l} = 1` iff `l = lcm(D)` for some `D` in `D_M`, else 0,
//! * three variables: `beta = (1, q, #L + q - 1, #L)` with `L` the set of
//!   those lcms.
//!
//! Everything here works on the minimal generating set; presentations are
//! minimalized first. Generator indices in a [`DominantWitness`] refer to
//! [`Ideal::minimal_generators`].

use std::collections::BTreeSet;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::taylor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantWitness {
    /// Indices into the reference list, increasing.
    pub subset: Vec<usize>,
    pub monomials: Vec<Monomial>,
    /// `(index, variable)`: the least variable in which that member dominates.
    pub assignment: Vec<(usize, usize)>,
    pub lcm: Monomial,
}

impl DominantWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "subset": self.subset,
            "monomials": self.monomials.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "dominant_variables": self
                .assignment
                .iter()
                .map(|&(i, v)| json!({"index": i, "variable": format!("x{}", v + 1)}))
                .collect::<Vec<_>>(),
            "lcm": self.lcm.to_string(),
            "degree": self.lcm.total_degree(),
        })
    }
}

/// Least variable in which `context[idx]` dominates the rest of `context`.
fn dominant_variable(context: &[&Monomial], idx: usize) -> Option<usize> {
    let m = context[idx];
    (0..m.ambient()).find(|&v| {
        let e = m.exponent(v);
        context
            .iter()
            .enumerate()
            .all(|(j, other)| j == idx || other.exponent(v) < e)
    })
}

/// Whether `m` is dominant in variable `var` within `context`. `m` must occur
/// in `context`; if it occurs twice its duplicate ties it, so it is never
/// dominant.
pub fn is_dominant_in(m: &Monomial, context: &[Monomial], var: usize) -> Result<bool> {
    if let Some(bad) = context.iter().find(|c| c.ambient() != m.ambient()) {
        return Err(Error::Dimension {
            expected: m.ambient(),
            found: bad.ambient(),
        });
    }
    if var >= m.ambient() {
        return Err(Error::domain(format!(
            "no variable x{} in {} variables",
            var + 1,
            m.ambient()
        )));
    }
    let idx = context
        .iter()
        .position(|c| c == m)
        .ok_or_else(|| Error::domain(format!("{m} is not in the context set")))?;
    let e = m.exponent(var);
    Ok(context
        .iter()
        .enumerate()
        .all(|(j, other)| j == idx || other.exponent(var) < e))
}

/// A witness if every member of `set` is dominant in `set`.
pub fn is_dominant_set(set: &[Monomial]) -> Option<DominantWitness> {
    let refs: Vec<&Monomial> = set.iter().collect();
    let indices: Vec<usize> = (0..set.len()).collect();
    dominant_witness(&refs, &indices)
}

/// `refs` are the chosen members, `indices` their positions in the reference list.
fn dominant_witness(refs: &[&Monomial], indices: &[usize]) -> Option<DominantWitness> {
    let mut assignment = Vec::with_capacity(refs.len());
    for (k, &idx) in indices.iter().enumerate() {
        assignment.push((idx, dominant_variable(refs, k)?));
    }
    let n = refs.first().map_or(0, |m| m.ambient());
    let mut lcm = Monomial::one(n);
    for m in refs {
        lcm.lcm_assign(m);
    }
    Some(DominantWitness {
        subset: indices.to_vec(),
        monomials: refs.iter().map(|&m| m.clone()).collect(),
        assignment,
        lcm,
    })
}

/// The members of `D_M`, in lexicographic order of index subsets.
pub fn enumerate_dominant_class(ideal: &Ideal) -> Result<Vec<DominantWitness>> {
    ideal.require_proper_nonzero("dominant class")?;
    let g = ideal.minimal_generators();
    let gens = g.generators();
    let n = ideal.ambient();
    let mut out = Vec::new();
    'subsets: for subset in (0..gens.len()).combinations(n) {
        let refs: Vec<&Monomial> = subset.iter().map(|&i| &gens[i]).collect();
        let mut assignment = Vec::with_capacity(n);
        for (k, &idx) in subset.iter().enumerate() {
            match dominant_variable(&refs, k) {
                Some(v) => assignment.push((idx, v)),
                None => continue 'subsets,
            }
        }
        let mut lcm = Monomial::one(n);
        for m in &refs {
            lcm.lcm_assign(m);
        }
        if gens.iter().any(|h| h.strongly_divides_unchecked(&lcm)) {
            continue;
        }
        out.push(DominantWitness {
            subset,
            monomials: refs.into_iter().cloned().collect(),
            assignment,
            lcm,
        });
    }
    Ok(out)
}

/// `pd(S/M) = n`, decided by whether `D_M` is nonempty.
pub fn pd_is_n(ideal: &Ideal) -> Result<bool> {
    Ok(!enumerate_dominant_class(ideal)?.is_empty())
}

/// Multidegrees `l` with `beta_{n,l} = 1`: the distinct lcms of `D_M`.
pub fn top_betti_multidegrees(ideal: &Ideal) -> Result<BTreeSet<Monomial>> {
    Ok(enumerate_dominant_class(ideal)?
        .into_iter()
        .map(|w| w.lcm)
        .collect())
}

/// `beta_n(S/M)`.
pub fn top_betti_total(ideal: &Ideal) -> Result<u64> {
    Ok(top_betti_multidegrees(ideal)?.len() as u64)
}

/// `beta_{n,j}(S/M)`.
pub fn top_betti_graded(ideal: &Ideal, degree: u64) -> Result<u64> {
    Ok(top_betti_multidegrees(ideal)?
        .iter()
        .filter(|l| l.total_degree() == degree)
        .count() as u64)
}

/// `(beta_0, beta_1, beta_2, beta_3)` of a trivariate `S/M`.
pub fn trivariate_betti(ideal: &Ideal) -> Result<[u64; 4]> {
    if ideal.ambient() != 3 {
        return Err(Error::domain(format!(
            "trivariate formula needs 3 variables, got {}",
            ideal.ambient()
        )));
    }
    let q = ideal.minimal_generators().len() as u64;
    let top = top_betti_total(ideal)?;
    Ok([1, q, top + q - 1, top])
}

/// For a squarefree ideal, `pd = n` holds exactly for the maximal ideal.
/// Returns the `pd = n` predicate; an `Invariant` error if it disagrees with
/// the shape of the generators.
pub fn squarefree_pd_check(ideal: &Ideal) -> Result<bool> {
    if !ideal.is_squarefree() {
        return Err(Error::domain("ideal is not squarefree"));
    }
    let full = pd_is_n(ideal)?;
    let is_maximal =
        ideal.minimal_generators() == Ideal::maximal(ideal.ambient()).minimal_generators();
    if full != is_maximal {
        return Err(Error::Invariant(format!(
            "squarefree ideal {ideal}: pd = n is {full} but maximal is {is_maximal}"
        )));
    }
    Ok(full)
}

/// Number of subsets `A` of the minimal generators with `lcm(A)` equal to
/// `lcm(D)` in the variables `indices` (0-based, strictly increasing) and
/// strictly below it in every other variable. `D` must belong to `D_M`.
pub fn class_a_count(ideal: &Ideal, witness: &DominantWitness, indices: &[usize]) -> Result<u64> {
    let n = ideal.ambient();
    if indices.is_empty() {
        return Err(Error::domain("index set must be nonempty"));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i >= n) {
        return Err(Error::domain(format!(
            "indices must be strictly increasing variables below {n}"
        )));
    }
    let class = enumerate_dominant_class(ideal)?;
    if !class
        .iter()
        .any(|d| d.subset == witness.subset && d.lcm == witness.lcm)
    {
        return Err(Error::domain(
            "witness is not a member of the dominant class",
        ));
    }
    let top = &witness.lcm;
    let g = ideal.minimal_generators();
    // Any qualifying A has lcm(A) | lcm(D), so only divisors can take part.
    let pool: Vec<&Monomial> = g
        .generators()
        .iter()
        .filter(|m| m.divides_unchecked(top))
        .collect();
    if pool.len() > taylor::MAX_CAP {
        return Err(Error::Capacity {
            generators: pool.len(),
            cap: taylor::MAX_CAP,
        });
    }
    let mut chosen = vec![false; n];
    for &i in indices {
        chosen[i] = true;
    }
    let mut lcms = vec![Monomial::one(n); 1 << pool.len()];
    let mut count = 0u64;
    for mask in 1usize..1 << pool.len() {
        let low = mask.trailing_zeros() as usize;
        let mut m = lcms[mask & (mask - 1)].clone();
        m.lcm_assign(pool[low]);
        let qualifies = (0..n).all(|v| {
            if chosen[v] {
                m.exponent(v) == top.exponent(v)
            } else {
                m.exponent(v) < top.exponent(v)
            }
        });
        if qualifies {
            count += 1;
        }
        lcms[mask] = m;
    }
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiSumBound {
    pub sum: u64,
    pub bound: u64,
    pub holds: bool,
}

/// When `pd(S/M) = n`, compares the oracle's total Betti sum with `2^n`.
pub fn betti_sum_bound(ideal: &Ideal) -> Result<BettiSumBound> {
    if !pd_is_n(ideal)? {
        return Err(Error::domain("betti sum bound requires pd(S/M) = n"));
    }
    let sum = taylor::betti_table_oracle(ideal)?.sum();
    let bound = 1u64 << ideal.ambient();
    Ok(BettiSumBound {
        sum,
        bound,
        holds: sum >= bound,
    })
}

pub fn betti_sum_bound_holds(ideal: &Ideal) -> Result<bool> {
    Ok(betti_sum_bound(ideal)?.holds)
}

/// For an Artinian ideal: if `beta_n = 1` the ideal must be `(x1^a1, ..., xn^an)`
/// and the exponents are returned; `None` when `beta_n > 1`.
pub fn classify_artinian_top_betti_one(ideal: &Ideal) -> Result<Option<Vec<u32>>> {
    if !ideal.is_artinian() {
        return Err(Error::domain("ideal is not Artinian"));
    }
    match top_betti_total(ideal)? {
        0 => Err(Error::Invariant(format!(
            "Artinian ideal {ideal} has beta_n = 0"
        ))),
        1 => ideal.pure_power_exponents().map(Some).ok_or_else(|| {
            Error::Invariant(format!(
                "Artinian ideal {ideal} has beta_n = 1 but is not generated by pure powers"
            ))
        }),
        _ => Ok(None),
    }
}

/// What happens when `beta_k(S/M) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitBettiReport {
    pub k: usize,
    pub pd: usize,
    pub codim: usize,
    pub codim_equals_k: bool,
    pub totals: Vec<u64>,
    /// `beta_i = beta_{k-i}` for all `0 <= i <= k`.
    pub symmetric: bool,
    /// Pure-power exponents, when `k = n` and the ideal is Artinian.
    pub pure_powers: Option<Vec<u32>>,
}

impl UnitBettiReport {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "pd": self.pd,
            "codim": self.codim,
            "codim_equals_k": self.codim_equals_k,
            "totals": self.totals,
            "symmetric": self.symmetric,
            "pure_powers": self.pure_powers,
        })
    }
}

/// Requires `beta_k = 1` (oracle). Checks `pd = k`, and symmetry of the
/// Betti numbers whenever `codim = k`; either failing is an `Invariant` error.
pub fn unit_betti_report(ideal: &Ideal, k: usize) -> Result<UnitBettiReport> {
    ideal.require_proper_nonzero("unit Betti report")?;
    let n = ideal.ambient();
    if k == 0 || k > n {
        return Err(Error::domain(format!("k must lie in 1..={n}")));
    }
    let table = taylor::betti_table_oracle(ideal)?;
    if table.betti(k) != 1 {
        return Err(Error::domain(format!(
            "beta_{k} = {}, expected 1",
            table.betti(k)
        )));
    }
    let pd = table.pd().unwrap_or(0);
    if pd != k {
        return Err(Error::Invariant(format!("beta_{k} = 1 but pd = {pd}")));
    }
    let totals = table.totals();
    let symmetric = (0..=k).all(|i| totals[i] == totals[k - i]);
    let codim = ideal.codim()?;
    if codim == k && !symmetric {
        return Err(Error::Invariant(format!(
            "codim = k = {k} but Betti numbers {totals:?} are not symmetric"
        )));
    }
    let pure_powers = if k == n && ideal.is_artinian() {
        classify_artinian_top_betti_one(ideal)?
    } else {
        None
    };
    Ok(UnitBettiReport {
        k,
        pd,
        codim,
        codim_equals_k: codim == k,
        totals,
        symmetric,
        pure_powers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(text: &str, n: usize) -> Ideal {
        Ideal::parse_text(text, Some(n)).unwrap()
    }

    fn monos(text: &str, n: usize) -> Vec<Monomial> {
        ideal(text, n).generators().to_vec()
    }

    fn mono(text: &str, n: usize) -> Monomial {
        Monomial::parse(text, Some(n)).unwrap()
    }

    fn two_dominant_sets() -> Ideal {
        ideal("x1^6*x2, x1^5*x2^3, x2^4, x1*x3^4", 3)
    }

    #[test]
    fn dominance_is_context_sensitive() {
        let g = monos("a^2*b, a*b^3*c, b*c^2, a^2*c^2", 3);
        let g_prime = monos("a^2*b, a*b^3*c, b*c^2", 3);
        let dominant_in_g: Vec<&Monomial> = g
            .iter()
            .filter(|m| (0..3).any(|v| is_dominant_in(m, &g, v).unwrap()))
            .collect();
        assert_eq!(dominant_in_g, vec![&mono("a*b^3*c", 3)]);
        assert!(is_dominant_in(&mono("a*b^3*c", 3), &g, 1).unwrap());
        assert!(!is_dominant_in(&mono("a^2*b", 3), &g, 0).unwrap());

        let w = is_dominant_set(&g_prime).expect("dominant set");
        assert_eq!(w.assignment, vec![(0, 0), (1, 1), (2, 2)]);
        assert!(is_dominant_set(&g).is_none());
        // a^2 b and b c^2 are dominant in G' but not in G
        assert!(is_dominant_in(&g[0], &g_prime, 0).unwrap());
        assert!(!(0..3).any(|v| is_dominant_in(&g[0], &g, v).unwrap()));
        assert!(!(0..3).any(|v| is_dominant_in(&g[2], &g, v).unwrap()));
    }

    #[test]
    fn dominance_edge_cases() {
        let single = monos("x1^2*x3", 3);
        assert!(is_dominant_in(&single[0], &single, 0).unwrap());
        assert!(is_dominant_in(&single[0], &single, 2).unwrap());
        // with no other members the condition is vacuous, even at exponent 0
        assert!(is_dominant_in(&single[0], &single, 1).unwrap());
        assert!(is_dominant_in(&mono("x1", 3), &single, 0).is_err());
        let dup = monos("x1, x1", 1);
        assert!(!is_dominant_in(&dup[0], &dup, 0).unwrap());
        assert!(is_dominant_set(&monos("x1^6*x2, x1^5*x2^3, x2^4", 3)).is_none());
    }

    #[test]
    fn two_dominant_sets_class() {
        let class = enumerate_dominant_class(&two_dominant_sets()).unwrap();
        assert_eq!(class.len(), 2);
        let sets: BTreeSet<BTreeSet<Monomial>> = class
            .iter()
            .map(|w| w.monomials.iter().cloned().collect())
            .collect();
        let want: BTreeSet<BTreeSet<Monomial>> = [
            monos("x1^6*x2, x1^5*x2^3, x1*x3^4", 3),
            monos("x1^5*x2^3, x2^4, x1*x3^4", 3),
        ]
        .into_iter()
        .map(|v| v.into_iter().collect())
        .collect();
        assert_eq!(sets, want);

        let lcms = top_betti_multidegrees(&two_dominant_sets()).unwrap();
        let want: BTreeSet<Monomial> =
            [mono("x1^6*x2^3*x3^4", 3), mono("x1^5*x2^4*x3^4", 3)].into();
        assert_eq!(lcms, want);
        assert_eq!(top_betti_total(&two_dominant_sets()).unwrap(), 2);
        assert_eq!(top_betti_graded(&two_dominant_sets(), 13).unwrap(), 2);
        assert_eq!(top_betti_graded(&two_dominant_sets(), 12).unwrap(), 0);
        assert!(pd_is_n(&two_dominant_sets()).unwrap());
        assert_eq!(
            trivariate_betti(&two_dominant_sets()).unwrap(),
            [1, 4, 5, 2]
        );
    }

    #[test]
    fn small_classes() {
        let ci = Ideal::pure_powers(&[3, 2, 5]).unwrap();
        let class = enumerate_dominant_class(&ci).unwrap();
        assert_eq!(class.len(), 1);
        assert_eq!(class[0].subset, vec![0, 1, 2]);
        assert_eq!(top_betti_total(&ci).unwrap(), 1);

        let single = ideal("x1*x2", 2);
        assert!(enumerate_dominant_class(&single).unwrap().is_empty());
        assert!(top_betti_multidegrees(&single).unwrap().is_empty());
        assert!(!pd_is_n(&single).unwrap());

        let xy = ideal("x1^4, x2^7", 2);
        assert_eq!(
            top_betti_multidegrees(&xy)
                .unwrap()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![mono("x1^4*x2^7", 2)]
        );
        assert!(pd_is_n(&Ideal::maximal(4)).unwrap());
        assert!(!pd_is_n(&ideal("x1*x2, x2*x3", 3)).unwrap());

        assert!(matches!(
            enumerate_dominant_class(&Ideal::zero(2)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(pd_is_n(&ideal("1", 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn trivariate_formula() {
        assert_eq!(trivariate_betti(&Ideal::maximal(3)).unwrap(), [1, 3, 3, 1]);
        assert!(matches!(
            trivariate_betti(&Ideal::maximal(2)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn squarefree_theorem() {
        assert!(squarefree_pd_check(&Ideal::maximal(4)).unwrap());
        assert!(!squarefree_pd_check(&ideal("x1*x2, x2*x3, x1*x3", 3)).unwrap());
        assert!(!squarefree_pd_check(&ideal("x1, x2, x3*x4", 4)).unwrap());
        assert!(matches!(
            squarefree_pd_check(&ideal("x1^2", 1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn class_a_counts() {
        let xy = ideal("x1^2, x2^3", 2);
        let d = enumerate_dominant_class(&xy).unwrap().remove(0);
        // the minimal generators sort as x1^2, x2^3
        assert_eq!(class_a_count(&xy, &d, &[0]).unwrap(), 1);
        assert_eq!(class_a_count(&xy, &d, &[1]).unwrap(), 1);
        assert_eq!(class_a_count(&xy, &d, &[0, 1]).unwrap(), 1);

        let g = two_dominant_sets();
        for d in enumerate_dominant_class(&g).unwrap() {
            for size in 1..=3 {
                for idx in (0..3).combinations(size) {
                    assert_eq!(class_a_count(&g, &d, &idx).unwrap() % 2, 1);
                }
            }
        }

        assert!(class_a_count(&xy, &d, &[]).is_err());
        assert!(class_a_count(&xy, &d, &[1, 0]).is_err());
        assert!(class_a_count(&xy, &d, &[2]).is_err());
        let mut fake = d.clone();
        fake.subset = vec![0];
        assert!(matches!(
            class_a_count(&xy, &fake, &[0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sum_bound() {
        let b = betti_sum_bound(&two_dominant_sets()).unwrap();
        assert_eq!((b.sum, b.bound, b.holds), (12, 8, true));
        let b = betti_sum_bound(&Ideal::maximal(4)).unwrap();
        assert_eq!((b.sum, b.bound), (16, 16));
        assert!(matches!(
            betti_sum_bound(&ideal("x1*x2", 2)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn artinian_classification() {
        assert_eq!(
            classify_artinian_top_betti_one(&ideal("x^2, y^3, z", 3)).unwrap(),
            Some(vec![2, 3, 1])
        );
        assert_eq!(
            classify_artinian_top_betti_one(&ideal("x^2, y^2, x*y", 2)).unwrap(),
            None
        );
        assert_eq!(
            classify_artinian_top_betti_one(&ideal("x1^3, x2^2, x3^4, x1*x3, x2*x3^2", 3)).unwrap(),
            None
        );
        assert!(matches!(
            classify_artinian_top_betti_one(&ideal("x1^2, x1*x2", 2)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn unit_betti_reports() {
        let r = unit_betti_report(&ideal("x^2, y^3, z^4", 3), 3).unwrap();
        assert_eq!(
            (r.pd, r.codim, r.codim_equals_k, r.symmetric),
            (3, 3, true, true)
        );
        assert_eq!(r.totals, vec![1, 3, 3, 1]);
        assert_eq!(r.pure_powers, Some(vec![2, 3, 4]));

        let r = unit_betti_report(&ideal("x1*x2", 2), 1).unwrap();
        assert_eq!((r.pd, r.codim, r.symmetric), (1, 1, true));
        assert_eq!(r.totals, vec![1, 1]);

        let r = unit_betti_report(&ideal("x^2, x*y", 2), 2).unwrap();
        assert_eq!((r.pd, r.codim, r.codim_equals_k), (2, 1, false));
        assert_eq!(r.totals, vec![1, 2, 1]);
        assert_eq!(r.pure_powers, None);

        assert!(matches!(
            unit_betti_report(&ideal("x^2, x*y", 2), 1),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            unit_betti_report(&ideal("x^2, x*y", 2), 3),
            Err(Error::Domain(_))
        ));
    }
}
