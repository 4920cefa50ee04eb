//! Multigraded Betti numbers of monomial ideals.
//!
//! Three independent routes to the same numbers:
//!
//! * [`taylor`]: strand homology of the Taylor complex, one multidegree at a time;
//! * [`cancellation`]: consecutive cancellation of the Taylor complex down to a
//!   minimal free resolution;
//! * [`dominance`]: closed forms for the top homological degree built from
//!   dominant subsets of the minimal generators.
//!
//! [`verify`] runs them against each other.

pub mod betti;
pub mod cancellation;
pub mod complex;
pub mod dominance;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod parallel;
pub mod random;
pub mod taylor;
pub mod verify;

pub use betti::BettiTable;
pub use cancellation::{
    minimalize, resolution_betti, CancellationStep, MinimalizeOptions, PivotOrder,
};
pub use complex::{ChainComplex, Entry, Label, SparseMatrix};
pub use dominance::{enumerate_dominant_class, DominantWitness};
pub use error::{Error, Result};
pub use ideal::Ideal;
pub use linalg::Field;
pub use monomial::Monomial;
pub use parallel::Execution;
pub use random::{random_ideals, RandomIdealConfig};
pub use taylor::{betti_table_oracle, taylor_complex, OracleOptions};
pub use verify::{verify_campaign, verify_ideal, VerifyOptions};
