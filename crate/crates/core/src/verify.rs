//! Cross-checks between the closed forms, the strand oracle and the
//! cancellation engine.
//!
//! Disagreements are collected as [`Discrepancy`] values and never repaired.
//! Capacity and domain errors still propagate as errors.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::betti::BettiTable;
use crate::cancellation;
use crate::dominance;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::Field;
use crate::parallel::{self, Execution};
use crate::taylor::{self, OracleOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Also compare against the oracle over `GF(p)`.
    pub prime: Option<u64>,
    /// At most this many members of the dominant class enter the parity check.
    pub parity_cap: usize,
    pub execution: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            prime: None,
            parity_cap: 10,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub check: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealReport {
    /// Minimal generators of the checked ideal.
    pub ideal: Ideal,
    pub table: BettiTable,
    pub checks_run: Vec<&'static str>,
    pub discrepancies: Vec<Discrepancy>,
}

impl IdealReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ideal": self.ideal.to_text(),
            "totals": self.table.totals(),
            "pd": self.table.pd(),
            "checks": self.checks_run,
            "discrepancies": self
                .discrepancies
                .iter()
                .map(|d| json!({"check": d.check, "detail": d.detail}))
                .collect::<Vec<_>>(),
        })
    }
}

struct Checker {
    run: Vec<&'static str>,
    found: Vec<Discrepancy>,
}

impl Checker {
    fn check(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        if !self.run.contains(&name) {
            self.run.push(name);
        }
        if !ok {
            self.found.push(Discrepancy {
                check: name,
                detail: detail(),
            });
        }
    }

    /// Mathematical contract errors become discrepancies; anything else propagates.
    fn contract<T>(&mut self, name: &'static str, result: Result<T>) -> Result<Option<T>> {
        match result {
            Ok(v) => {
                self.check(name, true, String::new);
                Ok(Some(v))
            }
            Err(Error::Invariant(msg)) => {
                self.check(name, false, || msg);
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

/// Runs every applicable check on a proper nonzero ideal.
pub fn verify_ideal(ideal: &Ideal, options: &VerifyOptions) -> Result<IdealReport> {
    ideal.require_proper_nonzero("verify")?;
    let g = ideal.minimal_generators();
    let n = g.ambient();
    let oracle_opts = OracleOptions {
        execution: options.execution,
        ..OracleOptions::default()
    };
    let table = taylor::betti_table_oracle_with(&g, &oracle_opts)?;
    let totals = table.totals();
    let oracle_pd = table.pd().unwrap_or(0);
    let mut c = Checker {
        run: Vec::new(),
        found: Vec::new(),
    };

    // closed-form top Betti numbers against the oracle's degree-n slice
    let closed: Vec<_> = dominance::top_betti_multidegrees(&g)?.into_iter().collect();
    let slice: Vec<_> = table.slice(n).into_iter().map(|(l, _)| l).collect();
    c.check("top-betti", closed == slice, || {
        format!("closed form {closed:?}, oracle {slice:?}")
    });
    let top_total = table.betti(n);
    c.check("top-betti", top_total == closed.len() as u64, || {
        format!("closed form beta_n = {}, oracle {top_total}", closed.len())
    });

    let predicate = dominance::pd_is_n(&g)?;
    c.check("pd-characterization", predicate == (oracle_pd == n), || {
        format!("dominant-class predicate {predicate}, oracle pd {oracle_pd}")
    });

    let resolved = cancellation::resolution_betti(&g);
    if let Some(resolved) = c.contract("cancellation", resolved)? {
        c.check("cancellation", resolved == table, || {
            format!("cancellation {:?}, oracle {:?}", resolved.totals(), totals)
        });
    }

    let euler = table.euler_characteristic();
    c.check("euler", euler == 0, || format!("alternating sum {euler}"));

    for (l, count) in table.slice(n) {
        let lower: Vec<usize> = (0..n).filter(|&i| table.get(i, &l) > 0).collect();
        c.check("top-pattern", count == 1 && lower.is_empty(), || {
            format!("beta_{{n,{l}}} = {count}, lower degrees hit: {lower:?}")
        });
    }

    if n == 3 {
        let formula = dominance::trivariate_betti(&g)?;
        let mut padded = totals.clone();
        padded.resize(4, 0);
        c.check("trivariate", formula[..] == padded[..], || {
            format!("formula {formula:?}, oracle {padded:?}")
        });
    }

    if oracle_pd == n {
        let sum = table.sum();
        c.check("sum-bound", sum >= 1 << n, || format!("sum {sum} < 2^{n}"));
        if g.pure_power_exponents().is_some() {
            c.check("sum-bound", sum == 1 << n, || {
                format!("complete intersection with sum {sum} != 2^{n}")
            });
        }
        let class = dominance::enumerate_dominant_class(&g)?;
        for d in class.iter().take(options.parity_cap) {
            for size in 1..=n {
                for idx in (0..n).combinations(size) {
                    let count = dominance::class_a_count(&g, d, &idx)?;
                    c.check("parity", count % 2 == 1, || {
                        format!(
                            "class count {count} for D = {:?}, indices {idx:?}",
                            d.subset
                        )
                    });
                }
            }
        }
    }

    if g.is_artinian() {
        let classified = dominance::classify_artinian_top_betti_one(&g);
        c.contract("artinian", classified)?;
        let pure = g.pure_power_exponents().is_some();
        c.check("artinian", pure || top_total >= 2, || {
            format!("non-pure-power Artinian ideal with beta_n = {top_total}")
        });
        c.check("artinian", !pure || top_total == 1, || {
            format!("complete intersection with beta_n = {top_total}")
        });
    }

    if g.is_squarefree() {
        let is_maximal = g == Ideal::maximal(n).minimal_generators();
        c.check("squarefree", (oracle_pd == n) == is_maximal, || {
            format!("squarefree ideal with oracle pd {oracle_pd}, maximal: {is_maximal}")
        });
    }

    let top = g.lcm();
    let twin = g.twin()?;
    let sequential = OracleOptions {
        execution: Execution::Sequential,
        ..OracleOptions::default()
    };
    let twin_at_top = taylor::presentation_betti_at(&twin, &top, &sequential)?;
    let original_at_top = table.at_multidegree(&top);
    c.check("twin", twin_at_top == original_at_top, || {
        format!("at {top}: original {original_at_top:?}, twin {twin_at_top:?}")
    });

    let mut restriction_ok = true;
    let mut restriction_detail = String::new();
    for l in taylor::lcm_lattice(&g)? {
        let restricted = g.restrict_to_divisors(&l)?;
        let local = taylor::presentation_betti_at(&restricted, &l, &sequential)?;
        let global = table.at_multidegree(&l);
        if local != global {
            restriction_ok = false;
            restriction_detail = format!("at {l}: global {global:?}, restricted {local:?}");
            break;
        }
    }
    c.check("restriction", restriction_ok, || restriction_detail);

    if let Some(p) = options.prime {
        let field = Field::prime(p)?;
        let modular = taylor::betti_table_oracle_with(
            &g,
            &OracleOptions {
                field,
                ..oracle_opts
            },
        )?;
        c.check("field", modular == table, || {
            format!("GF({p}) {:?}, QQ {:?}", modular.totals(), totals)
        });
    }

    Ok(IdealReport {
        ideal: g,
        table,
        checks_run: c.run,
        discrepancies: c.found,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignReport {
    pub ideals: usize,
    /// How many ideals ran each check.
    pub checks: BTreeMap<&'static str, usize>,
    /// `(position in the campaign, minimal generators, discrepancy)`.
    pub discrepancies: Vec<(usize, Ideal, Discrepancy)>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ideals": self.ideals,
            "checks": self.checks,
            "discrepancies": self
                .discrepancies
                .iter()
                .map(|(i, ideal, d)| json!({
                    "index": i,
                    "ideal": ideal.to_text(),
                    "check": d.check,
                    "detail": d.detail,
                }))
                .collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

/// Verifies each ideal independently; with [`Execution::Parallel`] the ideals
/// are spread over the thread pool and each one runs sequentially inside.
pub fn verify_campaign(ideals: &[Ideal], options: &VerifyOptions) -> Result<CampaignReport> {
    let inner = VerifyOptions {
        execution: Execution::Sequential,
        ..*options
    };
    let reports = parallel::map(ideals, options.execution, |i| verify_ideal(i, &inner));
    let mut out = CampaignReport {
        ideals: ideals.len(),
        checks: BTreeMap::new(),
        discrepancies: Vec::new(),
    };
    for (pos, report) in reports.into_iter().enumerate() {
        let report = report?;
        for name in &report.checks_run {
            *out.checks.entry(name).or_insert(0) += 1;
        }
        for d in report.discrepancies {
            out.discrepancies.push((pos, report.ideal.clone(), d));
        }
    }
    Ok(out)
}
