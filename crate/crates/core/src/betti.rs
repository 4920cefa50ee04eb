use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::monomial::Monomial;

/// Multigraded Betti numbers `(i, l) -> count`, zero entries omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    ambient: usize,
    entries: BTreeMap<(usize, Monomial), u64>,
}

impl BettiTable {
    pub fn new(ambient: usize) -> Self {
        BettiTable {
            ambient,
            entries: BTreeMap::new(),
        }
    }

    /// Table of `S/0`: a single copy of `S` in degree 0.
    pub fn of_zero_ideal(ambient: usize) -> Self {
        let mut t = BettiTable::new(ambient);
        t.add(0, Monomial::one(ambient), 1);
        t
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn add(&mut self, hdeg: usize, mdeg: Monomial, count: u64) {
        if count > 0 {
            *self.entries.entry((hdeg, mdeg)).or_insert(0) += count;
        }
    }

    pub fn get(&self, hdeg: usize, mdeg: &Monomial) -> u64 {
        // BTreeMap lookups need an owned key; entries are few.
        self.entries
            .get(&(hdeg, mdeg.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Monomial, u64)> {
        self.entries.iter().map(|((i, l), &c)| (*i, l, c))
    }

    /// Largest homological degree with a nonzero entry; `None` for the
    /// all-zero table of `S/S`.
    pub fn pd(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    pub fn betti(&self, hdeg: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((i, _), _)| *i == hdeg)
            .map(|(_, &c)| c)
            .sum()
    }

    /// `[beta_0, ..., beta_pd]`.
    pub fn totals(&self) -> Vec<u64> {
        match self.pd() {
            None => Vec::new(),
            Some(pd) => (0..=pd).map(|i| self.betti(i)).collect(),
        }
    }

    pub fn sum(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .map(|((i, _), &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// `(i, j) -> beta_{i,j}`.
    pub fn graded(&self) -> BTreeMap<(usize, u64), u64> {
        let mut out = BTreeMap::new();
        for ((i, l), &c) in &self.entries {
            *out.entry((*i, l.total_degree())).or_insert(0) += c;
        }
        out
    }

    pub fn graded_at(&self, hdeg: usize, degree: u64) -> u64 {
        self.entries
            .iter()
            .filter(|((i, l), _)| *i == hdeg && l.total_degree() == degree)
            .map(|(_, &c)| c)
            .sum()
    }

    /// Nonzero multidegrees in homological degree `hdeg`, in monomial order.
    pub fn slice(&self, hdeg: usize) -> Vec<(Monomial, u64)> {
        self.entries
            .iter()
            .filter(|((i, _), _)| *i == hdeg)
            .map(|((_, l), &c)| (l.clone(), c))
            .collect()
    }

    /// Entries at a single multidegree, by homological degree.
    pub fn at_multidegree(&self, l: &Monomial) -> BTreeMap<usize, u64> {
        self.entries
            .iter()
            .filter(|((_, m), _)| m == l)
            .map(|((i, _), &c)| (*i, c))
            .collect()
    }

    /// `{"total": [...], "graded": {"i,j": c}, "multigraded": {"i": {"mono": c}}, "pd": p}`.
    pub fn to_json(&self) -> Value {
        let mut graded = Map::new();
        for ((i, j), c) in self.graded() {
            graded.insert(format!("{i},{j}"), json!(c));
        }
        let mut multigraded = Map::new();
        for ((i, l), &c) in &self.entries {
            let slot = multigraded
                .entry(i.to_string())
                .or_insert_with(|| Value::Object(Map::new()));
            if let Value::Object(m) = slot {
                m.insert(l.to_string(), json!(c));
            }
        }
        json!({
            "total": self.totals(),
            "graded": graded,
            "multigraded": multigraded,
            "pd": self.pd(),
        })
    }
}
