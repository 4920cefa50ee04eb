//! Seeded random monomial ideals for property campaigns.
//!
//! Streams are driven by ChaCha8 so a `(seed, config)` pair reproduces the
//! same ideals on every platform and run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomIdealConfig {
    pub n: usize,
    /// Each ideal draws between 1 and this many random generators.
    pub max_generators: usize,
    /// Exponents are uniform in `0..=max_exponent`.
    pub max_exponent: u32,
    /// Start every ideal with one pure power `x_i^a`, `a` in `1..=max_exponent`,
    /// per variable.
    pub artinian: bool,
}

impl RandomIdealConfig {
    pub fn new(n: usize, max_generators: usize, max_exponent: u32) -> Self {
        RandomIdealConfig {
            n,
            max_generators,
            max_exponent,
            artinian: false,
        }
    }

    pub fn artinian(mut self) -> Self {
        self.artinian = true;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.max_generators == 0 || self.max_exponent == 0 {
            return Err(Error::domain(
                "random ideals need n, max_generators and max_exponent all positive",
            ));
        }
        Ok(())
    }
}

pub struct RandomIdeals {
    rng: ChaCha8Rng,
    config: RandomIdealConfig,
}

pub fn random_ideals(seed: u64, config: RandomIdealConfig) -> Result<RandomIdeals> {
    config.validate()?;
    Ok(RandomIdeals {
        rng: ChaCha8Rng::seed_from_u64(seed),
        config,
    })
}

impl RandomIdeals {
    fn monomial(&mut self) -> Monomial {
        let RandomIdealConfig {
            n, max_exponent, ..
        } = self.config;
        loop {
            let m = Monomial::new(
                (0..n)
                    .map(|_| self.rng.gen_range(0..=max_exponent))
                    .collect(),
            );
            if !m.is_one() {
                return m;
            }
        }
    }

    /// Next ideal, already minimalized.
    pub fn next_ideal(&mut self) -> Ideal {
        let n = self.config.n;
        let mut gens = Vec::new();
        if self.config.artinian {
            for v in 0..n {
                let a = self.rng.gen_range(1..=self.config.max_exponent);
                gens.push(Monomial::pure_power(n, v, a));
            }
        }
        let count = self.rng.gen_range(1..=self.config.max_generators);
        for _ in 0..count {
            let m = self.monomial();
            gens.push(m);
        }
        Ideal::new(n, gens)
            .expect("generators have the configured length")
            .minimal_generators()
    }
}

impl Iterator for RandomIdeals {
    type Item = Ideal;

    fn next(&mut self) -> Option<Ideal> {
        Some(self.next_ideal())
    }
}
