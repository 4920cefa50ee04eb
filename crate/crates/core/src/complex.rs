//! Free multigraded chain complexes with single-term differential entries.
//!
//! Basis elements are labelled by `u32` keys (for Taylor complexes, the
//! bitmask of member generators). Every differential entry is a single term
//! `coefficient * monomial`, and for a homogeneous complex the monomial is
//! `mdeg(source) / mdeg(target)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::monomial::Monomial;

pub type Label = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub coefficient: BigRational,
    pub monomial: Monomial,
}

impl Entry {
    pub fn new(coefficient: BigRational, monomial: Monomial) -> Self {
        Entry {
            coefficient,
            monomial,
        }
    }

    /// Nonzero scalar with monomial part 1.
    pub fn is_invertible(&self) -> bool {
        !self.coefficient.is_zero() && self.monomial.is_one()
    }
}

/// Sparse matrix keyed by `(target, source)` with row and column access.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: BTreeMap<Label, BTreeMap<Label, Entry>>,
    cols: BTreeMap<Label, BTreeSet<Label>>,
}

impl SparseMatrix {
    pub fn get(&self, target: Label, source: Label) -> Option<&Entry> {
        self.rows.get(&target)?.get(&source)
    }

    /// Inserts or replaces; a zero coefficient removes the entry.
    pub fn set(&mut self, target: Label, source: Label, entry: Entry) {
        if entry.coefficient.is_zero() {
            self.remove(target, source);
            return;
        }
        self.rows.entry(target).or_default().insert(source, entry);
        self.cols.entry(source).or_default().insert(target);
    }

    pub fn remove(&mut self, target: Label, source: Label) -> Option<Entry> {
        let row = self.rows.get_mut(&target)?;
        let out = row.remove(&source);
        if row.is_empty() {
            self.rows.remove(&target);
        }
        if let Some(col) = self.cols.get_mut(&source) {
            col.remove(&target);
            if col.is_empty() {
                self.cols.remove(&source);
            }
        }
        out
    }

    /// Entries `(source, entry)` whose target is `target`.
    pub fn row(&self, target: Label) -> impl Iterator<Item = (Label, &Entry)> {
        self.rows
            .get(&target)
            .into_iter()
            .flat_map(|r| r.iter().map(|(&s, e)| (s, e)))
    }

    /// Entries `(target, entry)` whose source is `source`.
    pub fn column(&self, source: Label) -> impl Iterator<Item = (Label, &Entry)> + '_ {
        self.cols
            .get(&source)
            .into_iter()
            .flat_map(move |c| c.iter().map(move |&t| (t, &self.rows[&t][&source])))
    }

    pub fn remove_row(&mut self, target: Label) {
        if let Some(row) = self.rows.remove(&target) {
            for source in row.keys() {
                if let Some(col) = self.cols.get_mut(source) {
                    col.remove(&target);
                    if col.is_empty() {
                        self.cols.remove(source);
                    }
                }
            }
        }
    }

    pub fn remove_column(&mut self, source: Label) {
        if let Some(col) = self.cols.remove(&source) {
            for target in col {
                if let Some(row) = self.rows.get_mut(&target) {
                    row.remove(&source);
                    if row.is_empty() {
                        self.rows.remove(&target);
                    }
                }
            }
        }
    }

    /// All entries as `(target, source, entry)` in row-major label order.
    pub fn iter(&self) -> impl Iterator<Item = (Label, Label, &Entry)> {
        self.rows
            .iter()
            .flat_map(|(&t, r)| r.iter().map(move |(&s, e)| (t, s, e)))
    }

    pub fn len(&self) -> usize {
        self.rows.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ambient: usize,
    /// `basis[i]`: label -> multidegree of the basis of `F_i`.
    basis: Vec<BTreeMap<Label, Monomial>>,
    /// `differentials[i]` is `d_i: F_i -> F_{i-1}`; index 0 is always empty.
    differentials: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Assembles a complex from explicit parts. Entries are
    /// `(hdeg of source, target, source, entry)`. Labels must exist in the
    /// right degrees; the complex itself is not validated here (see
    /// [`ChainComplex::validate`]).
    pub fn from_parts(
        ambient: usize,
        basis: Vec<Vec<(Label, Monomial)>>,
        entries: Vec<(usize, Label, Label, Entry)>,
    ) -> Result<Self> {
        let basis: Vec<BTreeMap<Label, Monomial>> =
            basis.into_iter().map(|b| b.into_iter().collect()).collect();
        for (i, b) in basis.iter().enumerate() {
            if let Some(m) = b.values().find(|m| m.ambient() != ambient) {
                return Err(Error::Integrity(format!(
                    "basis element in degree {i} has {} variables, expected {ambient}",
                    m.ambient()
                )));
            }
        }
        let mut differentials = vec![SparseMatrix::default(); basis.len().max(1)];
        for (i, target, source, entry) in entries {
            if i == 0 || i >= basis.len() {
                return Err(Error::Integrity(format!("no differential d_{i}")));
            }
            if !basis[i].contains_key(&source) || !basis[i - 1].contains_key(&target) {
                return Err(Error::Integrity(format!(
                    "entry ({target}, {source}) of d_{i} refers to a missing basis element"
                )));
            }
            if entry.monomial.ambient() != ambient {
                return Err(Error::Integrity("entry monomial has wrong ambient".into()));
            }
            differentials[i].set(target, source, entry);
        }
        Ok(ChainComplex {
            ambient,
            basis,
            differentials,
        })
    }

    pub(crate) fn from_raw(
        ambient: usize,
        basis: Vec<BTreeMap<Label, Monomial>>,
        differentials: Vec<SparseMatrix>,
    ) -> Self {
        ChainComplex {
            ambient,
            basis,
            differentials,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Highest homological degree that has a (possibly empty) basis slot.
    pub fn top_degree(&self) -> usize {
        self.basis.len().saturating_sub(1)
    }

    pub fn basis(&self, hdeg: usize) -> impl Iterator<Item = (Label, &Monomial)> {
        self.basis
            .get(hdeg)
            .into_iter()
            .flat_map(|b| b.iter().map(|(&l, m)| (l, m)))
    }

    pub fn contains(&self, hdeg: usize, label: Label) -> bool {
        self.basis.get(hdeg).is_some_and(|b| b.contains_key(&label))
    }

    pub fn mdeg(&self, hdeg: usize, label: Label) -> Option<&Monomial> {
        self.basis.get(hdeg)?.get(&label)
    }

    pub fn rank(&self, hdeg: usize) -> usize {
        self.basis.get(hdeg).map_or(0, BTreeMap::len)
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..self.basis.len()).map(|i| self.rank(i)).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.basis.iter().map(BTreeMap::len).sum()
    }

    pub fn differential(&self, hdeg: usize) -> Option<&SparseMatrix> {
        self.differentials.get(hdeg)
    }

    pub(crate) fn differential_mut(&mut self, hdeg: usize) -> &mut SparseMatrix {
        &mut self.differentials[hdeg]
    }

    pub(crate) fn remove_basis(&mut self, hdeg: usize, label: Label) {
        self.basis[hdeg].remove(&label);
        // d_hdeg has this as a source; d_{hdeg+1} has it as a target.
        self.differentials[hdeg].remove_column(label);
        if hdeg + 1 < self.differentials.len() {
            self.differentials[hdeg + 1].remove_row(label);
        }
    }

    /// Every entry satisfies `mdeg(target) * monomial = mdeg(source)`.
    pub fn check_homogeneous(&self) -> Result<()> {
        for (i, d) in self.differentials.iter().enumerate().skip(1) {
            for (t, s, e) in d.iter() {
                let (Some(mt), Some(ms)) = (self.mdeg(i - 1, t), self.mdeg(i, s)) else {
                    return Err(Error::Integrity(format!(
                        "entry ({t}, {s}) of d_{i} refers to a missing basis element"
                    )));
                };
                if mt.mul_unchecked(&e.monomial) != *ms {
                    return Err(Error::Integrity(format!(
                        "inhomogeneous entry in d_{i}: {mt} * {} != {ms}",
                        e.monomial
                    )));
                }
            }
        }
        Ok(())
    }

    /// `d_{i-1} o d_i = 0` as matrices of terms, for every `i`.
    pub fn check_d_squared(&self) -> Result<()> {
        for i in 2..self.differentials.len() {
            let upper = &self.differentials[i];
            let lower = &self.differentials[i - 1];
            for &source in self.basis[i].keys() {
                let mut acc: HashMap<(Label, Monomial), BigRational> = HashMap::new();
                for (mid, e1) in upper.column(source) {
                    for (target, e2) in lower.column(mid) {
                        let key = (target, e1.monomial.mul_unchecked(&e2.monomial));
                        *acc.entry(key).or_insert_with(BigRational::zero) +=
                            &e1.coefficient * &e2.coefficient;
                    }
                }
                if let Some(((target, m), c)) = acc.iter().find(|(_, c)| !c.is_zero()) {
                    return Err(Error::Integrity(format!(
                        "d_{} o d_{i} nonzero at ({target}, {source}): {c} * {m}",
                        i - 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.check_homogeneous()?;
        self.check_d_squared()
    }

    /// First invertible entry as `(hdeg, target, source)`, scanning degrees
    /// high to low, then sources, then targets, by label.
    pub fn first_invertible(&self) -> Option<(usize, Label, Label)> {
        (1..self.differentials.len()).rev().find_map(|i| {
            self.basis[i].keys().find_map(|&s| {
                self.differentials[i]
                    .column(s)
                    .find(|(_, e)| e.is_invertible())
                    .map(|(t, _)| (i, t, s))
            })
        })
    }

    pub fn has_invertible_entries(&self) -> bool {
        self.differentials
            .iter()
            .any(|d| d.iter().any(|(_, _, e)| e.is_invertible()))
    }

    /// Basis counts by `(hdeg, mdeg)`, with no minimality check.
    pub fn basis_counts(&self) -> BettiTable {
        let mut t = BettiTable::new(self.ambient);
        for (i, b) in self.basis.iter().enumerate() {
            for m in b.values() {
                t.add(i, m.clone(), 1);
            }
        }
        t
    }

    /// Convenience constructor for an entry with an integer coefficient.
    pub fn int_entry(c: i64, monomial: Monomial) -> Entry {
        Entry::new(BigRational::from_integer(c.into()), monomial)
    }
}
