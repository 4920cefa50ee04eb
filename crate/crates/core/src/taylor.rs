//! Taylor complexes, multidegree strands and the strand-homology Betti oracle.
//!
//! For a generator list `l_1, ..., l_q` the Taylor complex has one basis
//! symbol per subset of `{1..q}` (encoded as a bitmask), with multidegree the
//! lcm of the members. Deleting the `j`-th listed member (1-based) contributes
//! `(-1)^(j+1) * mdeg(sigma) / mdeg(sigma minus l_j)`.
//!
//! Tensoring with the residue field and taking the multidegree-`l` part leaves
//! the symbols of multidegree exactly `l` and the differential entries whose
//! monomial part is 1. The homology of that strand in degree `i` is
//! `beta_{i,l}`. This route never touches the cancellation engine, which is
//! what makes it usable as an oracle for it.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use crate::betti::BettiTable;
use crate::complex::{ChainComplex, Label, SparseMatrix};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::{Field, IntMatrix};
use crate::monomial::Monomial;
use crate::parallel::{self, Execution};

pub const DEFAULT_CAP: usize = 20;
/// Labels are `u32` bitmasks.
pub const MAX_CAP: usize = 31;

/// A subset of the generator list, with its cached lcm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorSymbol {
    pub mask: Label,
    pub mdeg: Monomial,
}

impl TaylorSymbol {
    pub fn hdeg(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Member generator indices, increasing.
    pub fn members(&self) -> impl Iterator<Item = usize> {
        members(self.mask)
    }
}

fn members(mask: Label) -> impl Iterator<Item = usize> {
    (0..32).filter(move |j| mask & (1 << j) != 0)
}

fn check_cap(q: usize, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_CAP);
    if q > cap {
        return Err(Error::Capacity { generators: q, cap });
    }
    Ok(())
}

/// `mdeg` of every subset, indexed by mask.
pub(crate) fn mdeg_table(n: usize, generators: &[Monomial]) -> Vec<Monomial> {
    let size = 1usize << generators.len();
    let mut table = Vec::with_capacity(size);
    table.push(Monomial::one(n));
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let mut m = table[mask & (mask - 1)].clone();
        m.lcm_assign(&generators[low]);
        table.push(m);
    }
    table
}

/// All Taylor symbols of a generator list, in mask order.
pub fn taylor_symbols(ideal: &Ideal) -> Result<Vec<TaylorSymbol>> {
    check_cap(ideal.len(), DEFAULT_CAP)?;
    Ok(mdeg_table(ideal.ambient(), ideal.generators())
        .into_iter()
        .enumerate()
        .map(|(mask, mdeg)| TaylorSymbol {
            mask: mask as Label,
            mdeg,
        })
        .collect())
}

pub fn taylor_complex(ideal: &Ideal) -> Result<ChainComplex> {
    taylor_complex_with_cap(ideal, DEFAULT_CAP)
}

/// The full Taylor complex on the generator list exactly as given.
pub fn taylor_complex_with_cap(ideal: &Ideal, cap: usize) -> Result<ChainComplex> {
    let q = ideal.len();
    if q == 0 {
        return Err(Error::domain("Taylor complex of an empty generator list"));
    }
    check_cap(q, cap)?;
    let n = ideal.ambient();
    let table = mdeg_table(n, ideal.generators());
    let mut basis = vec![BTreeMap::new(); q + 1];
    let mut differentials = vec![SparseMatrix::default(); q + 1];
    for (mask, mdeg) in table.iter().enumerate() {
        let mask = mask as Label;
        let hdeg = mask.count_ones() as usize;
        basis[hdeg].insert(mask, mdeg.clone());
        for (t, j) in members(mask).enumerate() {
            let face = mask & !(1 << j);
            let monomial = mdeg
                .quotient_unchecked(&table[face as usize])
                .expect("face lcm divides the symbol lcm");
            let sign = if t % 2 == 0 { 1 } else { -1 };
            differentials[hdeg].set(face, mask, ChainComplex::int_entry(sign, monomial));
        }
    }
    Ok(ChainComplex::from_raw(n, basis, differentials))
}

/// The multidegree-`l` strand of a complex, as a complex of vector spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub mdeg: Monomial,
    /// Basis labels per homological degree, increasing.
    pub basis: Vec<Vec<Label>>,
    /// `matrices[i]`: `d_i` with rows `basis[i-1]` and columns `basis[i]`.
    /// `matrices[0]` is empty.
    pub matrices: Vec<Vec<Vec<BigRational>>>,
}

/// Keeps the symbols of multidegree exactly `l`; an entry survives iff its
/// source and target both lie in the strand (equivalently, its monomial is 1).
pub fn strand(complex: &ChainComplex, l: &Monomial) -> Strand {
    let top = complex.top_degree();
    let basis: Vec<Vec<Label>> = (0..=top)
        .map(|i| {
            complex
                .basis(i)
                .filter(|(_, m)| *m == l)
                .map(|(lab, _)| lab)
                .collect()
        })
        .collect();
    let mut matrices = vec![Vec::new()];
    for i in 1..=top {
        let mut rows = vec![vec![BigRational::zero(); basis[i].len()]; basis[i - 1].len()];
        if let Some(d) = complex.differential(i) {
            for (c, &source) in basis[i].iter().enumerate() {
                for (target, e) in d.column(source) {
                    if let Ok(r) = basis[i - 1].binary_search(&target) {
                        rows[r][c] = e.coefficient.clone();
                    }
                }
            }
        }
        matrices.push(rows);
    }
    Strand {
        mdeg: l.clone(),
        basis,
        matrices,
    }
}

impl Strand {
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// Homology dimensions `dim ker d_i - rank d_{i+1}` per degree. Over
    /// `GF(p)` every coefficient denominator must be prime to `p`.
    pub fn homology(&self, field: Field) -> Result<Vec<u64>> {
        let mut ranks = vec![0usize; self.basis.len() + 1];
        for (i, rows) in self.matrices.iter().enumerate().skip(1) {
            let (m, scales) = IntMatrix::from_rational_rows(rows);
            if let Field::Prime(p) = field {
                let has_p_denominator = rows.iter().flatten().any(|v| (v.denom() % p).is_zero());
                if has_p_denominator {
                    return Err(Error::domain(format!(
                        "strand coefficient has a denominator divisible by {p}"
                    )));
                }
                debug_assert!(scales.iter().all(|s| !(s % p).is_zero()));
            }
            ranks[i] = m.rank(field);
        }
        Ok((0..self.basis.len())
            .map(|i| (self.basis[i].len() - ranks[i] - ranks[i + 1]) as u64)
            .collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub field: Field,
    pub execution: Execution,
    pub cap: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            field: Field::Rationals,
            execution: Execution::default(),
            cap: DEFAULT_CAP,
        }
    }
}

impl OracleOptions {
    pub fn over(field: Field) -> Self {
        OracleOptions {
            field,
            ..OracleOptions::default()
        }
    }
}

/// Multigraded Betti numbers of `S/M` computed from the minimal generators.
/// The zero ideal gives `{(0, 1) -> 1}`; the unit ideal is rejected.
pub fn betti_table_oracle(ideal: &Ideal) -> Result<BettiTable> {
    betti_table_oracle_with(ideal, &OracleOptions::default())
}

pub fn betti_table_oracle_with(ideal: &Ideal, options: &OracleOptions) -> Result<BettiTable> {
    if ideal.is_zero() {
        return Ok(BettiTable::of_zero_ideal(ideal.ambient()));
    }
    if ideal.contains_unit() {
        return Err(Error::domain("Betti table of the unit ideal"));
    }
    presentation_betti(&ideal.minimal_generators(), options)
}

/// Betti numbers from the Taylor complex of the list exactly as given
/// (duplicates, redundant generators and `1` allowed). The result is
/// independent of the presentation; a list containing `1` gives the empty
/// table of `S/S`.
pub fn presentation_betti(presentation: &Ideal, options: &OracleOptions) -> Result<BettiTable> {
    let n = presentation.ambient();
    if presentation.is_zero() {
        return Ok(BettiTable::of_zero_ideal(n));
    }
    check_cap(presentation.len(), options.cap)?;
    let table = mdeg_table(n, presentation.generators());
    let strands = group_by_mdeg(&table);
    let field = options.field;
    let results = parallel::map(&strands, options.execution, |(l, masks)| {
        (l.clone(), taylor_strand_homology(masks, &table, field))
    });
    let mut out = BettiTable::new(n);
    for (l, betti) in results {
        for (i, b) in betti.into_iter().enumerate() {
            out.add(i, l.clone(), b);
        }
    }
    Ok(out)
}

/// `beta_{i,l}` for a single multidegree, by degree.
pub fn presentation_betti_at(
    presentation: &Ideal,
    l: &Monomial,
    options: &OracleOptions,
) -> Result<BTreeMap<usize, u64>> {
    let n = presentation.ambient();
    if l.ambient() != n {
        return Err(Error::Dimension {
            expected: n,
            found: l.ambient(),
        });
    }
    check_cap(presentation.len(), options.cap)?;
    let table = mdeg_table(n, presentation.generators());
    let masks: Vec<Label> = table
        .iter()
        .enumerate()
        .filter(|(_, m)| *m == l)
        .map(|(mask, _)| mask as Label)
        .collect();
    Ok(taylor_strand_homology(&masks, &table, options.field)
        .into_iter()
        .enumerate()
        .filter(|&(_, b)| b > 0)
        .collect())
}

/// Distinct lcms of subsets of the list (including `1` for the empty subset),
/// in monomial order.
pub fn lcm_lattice(presentation: &Ideal) -> Result<Vec<Monomial>> {
    check_cap(presentation.len(), DEFAULT_CAP)?;
    let table = mdeg_table(presentation.ambient(), presentation.generators());
    Ok(group_by_mdeg(&table).into_iter().map(|(l, _)| l).collect())
}

/// Masks grouped by multidegree; groups in monomial order, masks increasing.
fn group_by_mdeg(table: &[Monomial]) -> Vec<(Monomial, Vec<Label>)> {
    let mut groups: HashMap<&Monomial, Vec<Label>> = HashMap::new();
    for (mask, m) in table.iter().enumerate() {
        groups.entry(m).or_default().push(mask as Label);
    }
    let mut out: Vec<(Monomial, Vec<Label>)> =
        groups.into_iter().map(|(m, v)| (m.clone(), v)).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Homology of the Taylor strand spanned by `masks` (all of one multidegree).
fn taylor_strand_homology(masks: &[Label], table: &[Monomial], field: Field) -> Vec<u64> {
    if masks.is_empty() {
        return Vec::new();
    }
    let top = masks
        .iter()
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0);
    let mut by_degree: Vec<Vec<Label>> = vec![Vec::new(); top + 1];
    for &m in masks {
        by_degree[m.count_ones() as usize].push(m);
    }
    let l = &table[masks[0] as usize];
    let mut ranks = vec![0usize; top + 2];
    for i in 1..=top {
        let (sources, targets) = (&by_degree[i], &by_degree[i - 1]);
        if sources.is_empty() || targets.is_empty() {
            continue;
        }
        let mut matrix = IntMatrix::zeros(targets.len(), sources.len());
        for (c, &sigma) in sources.iter().enumerate() {
            for (t, j) in members(sigma).enumerate() {
                let face = sigma & !(1 << j);
                if table[face as usize] != *l {
                    continue;
                }
                let r = targets
                    .binary_search(&face)
                    .expect("face of equal mdeg is in the strand");
                matrix.set(r, c, if t % 2 == 0 { 1 } else { -1 });
            }
        }
        ranks[i] = matrix.rank(field);
    }
    (0..=top)
        .map(|i| (by_degree[i].len() - ranks[i] - ranks[i + 1]) as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(text: &str, n: usize) -> Ideal {
        Ideal::parse_text(text, Some(n)).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn two_generator_differentials() {
        // gens x^2 (bit 0), xy (bit 1): d[x^2, xy] = x*[xy] - y*[x^2]
        let c = taylor_complex(&ideal("x^2, x*y", 2)).unwrap();
        let d2 = c.differential(2).unwrap();
        let to_xy = d2.get(0b10, 0b11).unwrap();
        assert_eq!(to_xy.coefficient, BigRational::from_integer(1.into()));
        assert_eq!(to_xy.monomial, mono(&[1, 0]));
        let to_x2 = d2.get(0b01, 0b11).unwrap();
        assert_eq!(to_x2.coefficient, BigRational::from_integer((-1).into()));
        assert_eq!(to_x2.monomial, mono(&[0, 1]));
        c.validate().unwrap();

        let c = taylor_complex(&ideal("x, x*y", 2)).unwrap();
        let d2 = c.differential(2).unwrap();
        assert!(d2.get(0b10, 0b11).unwrap().is_invertible());
        assert_eq!(d2.get(0b01, 0b11).unwrap().monomial, mono(&[0, 1]));
    }

    #[test]
    fn symbols_and_caps() {
        let syms = taylor_symbols(&ideal("x1^2, x1*x2, x2^3", 2)).unwrap();
        assert_eq!(syms.len(), 8);
        assert_eq!(syms[0].mdeg, Monomial::one(2));
        assert_eq!(syms[0].hdeg(), 0);
        assert_eq!(syms[0b101].mdeg, mono(&[2, 3]));
        assert_eq!(syms[0b101].members().collect::<Vec<_>>(), vec![0, 2]);

        let many = Ideal::new(1, (1..=21).map(|e| mono(&[e])).collect()).unwrap();
        assert_eq!(
            taylor_complex(&many).unwrap_err(),
            Error::Capacity {
                generators: 21,
                cap: 20
            }
        );
        assert!(matches!(
            taylor_complex_with_cap(&ideal("x1, x2, x3", 3), 2),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            presentation_betti(&many, &OracleOptions::default()),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn strands() {
        let c = taylor_complex(&ideal("x^2, x*y", 2)).unwrap();
        let s = strand(&c, &mono(&[2, 1]));
        assert_eq!(s.dims(), vec![0, 0, 1]);
        assert_eq!(s.homology(Field::Rationals).unwrap(), vec![0, 0, 1]);

        let s = strand(&c, &mono(&[5, 5]));
        assert!(s.dims().iter().all(|&d| d == 0));

        let c = taylor_complex(&ideal("x, x*y", 2)).unwrap();
        let s = strand(&c, &mono(&[1, 1]));
        assert_eq!(s.dims(), vec![0, 1, 1]);
        assert_eq!(s.homology(Field::Rationals).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn two_dominant_sets_totals() {
        let t = betti_table_oracle(&ideal("x1^6*x2, x1^5*x2^3, x2^4, x1*x3^4", 3)).unwrap();
        assert_eq!(t.totals(), vec![1, 4, 5, 2]);
        assert_eq!(t.pd(), Some(3));
    }

    #[test]
    fn complete_intersection_is_koszul() {
        let t = betti_table_oracle(&Ideal::pure_powers(&[2, 1, 3, 2]).unwrap()).unwrap();
        assert_eq!(t.totals(), vec![1, 4, 6, 4, 1]);
        assert_eq!(t.get(4, &mono(&[2, 1, 3, 2])), 1);
        assert_eq!(t.get(2, &mono(&[2, 0, 3, 0])), 1);
    }

    #[test]
    fn twin_agrees_at_the_top_multidegree() {
        let m = ideal("a^3*b^2, a^3*c, a*c^2, b*c^2", 3);
        let twin = m.twin().unwrap();
        let top = m.lcm();
        let opts = OracleOptions::default();
        assert_eq!(
            presentation_betti_at(&m, &top, &opts).unwrap(),
            presentation_betti_at(&twin, &top, &opts).unwrap()
        );
    }

    #[test]
    fn degenerate_presentations() {
        assert_eq!(
            betti_table_oracle(&Ideal::zero(3)).unwrap().totals(),
            vec![1]
        );
        assert!(matches!(
            betti_table_oracle(&ideal("1, x1", 2)),
            Err(Error::Domain(_))
        ));
        // S/S = 0 from a raw list containing 1
        let t = presentation_betti(&ideal("x1, 1, x1*x2", 2), &OracleOptions::default()).unwrap();
        assert_eq!(t.pd(), None);
        // non-minimal, duplicated presentation of (x1, x2)
        let t =
            presentation_betti(&ideal("x1, x2, x1*x2, x1", 2), &OracleOptions::default()).unwrap();
        assert_eq!(t.totals(), vec![1, 2, 1]);
    }

    #[test]
    fn oracle_strands_match_complex_strands() {
        let i = ideal("x1^2*x2, x1*x2^2, x2*x3, x1^3", 3);
        let c = taylor_complex(&i).unwrap();
        let table = betti_table_oracle(&i).unwrap();
        for l in lcm_lattice(&i).unwrap() {
            let h = strand(&c, &l).homology(Field::Rationals).unwrap();
            for (deg, &b) in h.iter().enumerate() {
                assert_eq!(table.get(deg, &l), b, "at {l} degree {deg}");
            }
        }
    }

    #[test]
    fn execution_modes_agree() {
        let i = ideal("x1^3*x2, x1*x2^3, x2^2*x3^2, x1^2*x3, x3^3", 3);
        let seq = betti_table_oracle_with(
            &i,
            &OracleOptions {
                execution: Execution::Sequential,
                ..OracleOptions::default()
            },
        )
        .unwrap();
        let par = betti_table_oracle_with(
            &i,
            &OracleOptions {
                execution: Execution::Parallel,
                ..OracleOptions::default()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }
}
