//! Consecutive cancellation: reduce a free resolution to a minimal one.
//!
//! Each step picks an invertible entry `c` of `d_i` joining `theta` in `F_i`
//! to `pi` in `F_{i-1}`, drops both basis elements and rewrites the rest of
//! `d_i` as
//!
//! ```text
//! c'(target, source) = c(target, source) - c(target, theta) * c(pi, source) / c
//! ```
//!
//! Other differentials only lose the row or column of the removed elements.
//! The loop stops when no invertible entry is left; the remaining basis counts
//! by homological degree and multidegree are the Betti numbers.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::betti::BettiTable;
use crate::complex::{ChainComplex, Entry, Label};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::taylor;

/// How the next invertible entry is chosen. Betti numbers do not depend on it;
/// step logs do.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotOrder {
    /// Degrees high to low, then sources, then targets, by increasing label.
    #[default]
    HighestFirst,
    /// Degrees low to high, labels increasing.
    LowestFirst,
    /// Degrees high to low, labels decreasing.
    ReverseLabels,
    /// Uniformly random among all invertible entries.
    Seeded(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimalizeOptions {
    pub order: PivotOrder,
    /// Re-check homogeneity and `d o d = 0` after every step.
    pub verify_each_step: bool,
}

impl Default for MinimalizeOptions {
    fn default() -> Self {
        MinimalizeOptions {
            order: PivotOrder::default(),
            verify_each_step: cfg!(debug_assertions),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationStep {
    /// Homological degree of `theta`.
    pub hdeg: usize,
    pub theta: Label,
    pub pi: Label,
    pub pivot: BigRational,
    /// Shared multidegree of `theta` and `pi`.
    pub mdeg: Monomial,
}

impl CancellationStep {
    pub fn to_json(&self) -> Value {
        json!({
            "hdeg": self.hdeg,
            "theta_mask": self.theta,
            "pi_mask": self.pi,
            "pivot_coefficient": self.pivot.to_string(),
        })
    }
}

pub fn steps_to_json(steps: &[CancellationStep]) -> Value {
    Value::Array(steps.iter().map(CancellationStep::to_json).collect())
}

pub fn minimalize(complex: ChainComplex) -> Result<(ChainComplex, Vec<CancellationStep>)> {
    minimalize_with(complex, &MinimalizeOptions::default())
}

pub fn minimalize_with(
    mut complex: ChainComplex,
    options: &MinimalizeOptions,
) -> Result<(ChainComplex, Vec<CancellationStep>)> {
    complex.validate()?;
    let mut rng = match options.order {
        PivotOrder::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut steps = Vec::new();
    while let Some((hdeg, pi, theta)) = find_pivot(&complex, options.order, rng.as_mut()) {
        steps.push(cancel(&mut complex, hdeg, pi, theta)?);
        if options.verify_each_step {
            complex.validate()?;
        }
    }
    complex.validate()?;
    Ok((complex, steps))
}

/// Returns `(hdeg, target, source)`.
fn find_pivot(
    complex: &ChainComplex,
    order: PivotOrder,
    rng: Option<&mut ChaCha8Rng>,
) -> Option<(usize, Label, Label)> {
    let top = complex.top_degree();
    let scan = |i: usize, reverse: bool| -> Option<(usize, Label, Label)> {
        let d = complex.differential(i)?;
        let mut sources: Vec<Label> = complex.basis(i).map(|(l, _)| l).collect();
        if reverse {
            sources.reverse();
        }
        sources.into_iter().find_map(|s| {
            let mut col: Vec<(Label, &Entry)> = d.column(s).collect();
            if reverse {
                col.reverse();
            }
            col.into_iter()
                .find(|(_, e)| e.is_invertible())
                .map(|(t, _)| (i, t, s))
        })
    };
    match order {
        PivotOrder::HighestFirst => complex.first_invertible(),
        PivotOrder::LowestFirst => (1..=top).find_map(|i| scan(i, false)),
        PivotOrder::ReverseLabels => (1..=top).rev().find_map(|i| scan(i, true)),
        PivotOrder::Seeded(_) => {
            let all: Vec<(usize, Label, Label)> = (1..=top)
                .flat_map(|i| {
                    complex
                        .differential(i)
                        .into_iter()
                        .flat_map(move |d| d.iter().filter(|(_, _, e)| e.is_invertible()))
                        .map(move |(t, s, _)| (i, t, s))
                })
                .collect();
            all.choose(rng.expect("seeded order carries an rng"))
                .copied()
        }
    }
}

fn cancel(
    complex: &mut ChainComplex,
    hdeg: usize,
    pi: Label,
    theta: Label,
) -> Result<CancellationStep> {
    let d = complex.differential(hdeg).expect("pivot degree exists");
    let pivot = d.get(pi, theta).expect("pivot entry exists").clone();
    if !pivot.is_invertible() {
        return Err(Error::Invariant("pivot entry is not invertible".into()));
    }
    let mdeg = complex.mdeg(hdeg, theta).cloned().expect("theta in basis");
    if complex.mdeg(hdeg - 1, pi) != Some(&mdeg) {
        return Err(Error::Invariant(format!(
            "invertible entry joins different multidegrees at ({pi}, {theta})"
        )));
    }
    let column: Vec<(Label, Entry)> = d
        .column(theta)
        .filter(|&(t, _)| t != pi)
        .map(|(t, e)| (t, e.clone()))
        .collect();
    let row: Vec<(Label, Entry)> = d
        .row(pi)
        .filter(|&(s, _)| s != theta)
        .map(|(s, e)| (s, e.clone()))
        .collect();

    let d = complex.differential_mut(hdeg);
    for (target, a) in &column {
        for (source, b) in &row {
            let coefficient = &a.coefficient * &b.coefficient / &pivot.coefficient;
            let monomial = a.monomial.mul_unchecked(&b.monomial);
            let updated = match d.get(*target, *source) {
                Some(existing) => {
                    if existing.monomial != monomial {
                        return Err(Error::Invariant(format!(
                            "update would create a two-term entry at ({target}, {source})"
                        )));
                    }
                    Entry::new(&existing.coefficient - coefficient, monomial)
                }
                None => Entry::new(-coefficient, monomial),
            };
            d.set(*target, *source, updated);
        }
    }
    complex.remove_basis(hdeg, theta);
    complex.remove_basis(hdeg - 1, pi);
    Ok(CancellationStep {
        hdeg,
        theta,
        pi,
        pivot: pivot.coefficient,
        mdeg,
    })
}

/// Basis counts of a complex without invertible entries.
pub fn betti_from_minimal(complex: &ChainComplex) -> Result<BettiTable> {
    if complex.has_invertible_entries() {
        return Err(Error::domain("complex still has invertible entries"));
    }
    Ok(complex.basis_counts())
}

/// Minimal generators -> Taylor complex -> cancellation -> basis counts.
pub fn resolution_betti(ideal: &Ideal) -> Result<BettiTable> {
    resolution_betti_with(ideal, &MinimalizeOptions::default())
}

pub fn resolution_betti_with(ideal: &Ideal, options: &MinimalizeOptions) -> Result<BettiTable> {
    if ideal.is_zero() {
        return Ok(BettiTable::of_zero_ideal(ideal.ambient()));
    }
    if ideal.contains_unit() {
        return Err(Error::domain("resolution of the unit ideal"));
    }
    let complex = taylor::taylor_complex(&ideal.minimal_generators())?;
    let (minimal, _) = minimalize_with(complex, options)?;
    betti_from_minimal(&minimal)
}
