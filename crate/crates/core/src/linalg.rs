//! Exact ranks of small integer matrices, over the rationals or a prime field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Base field for homology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// `GF(p)`; build with [`Field::prime`] so `p` is checked.
    Prime(u64),
}

impl Field {
    pub const DEFAULT_PRIME: u64 = 32749;

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::domain(format!(
                "prime {p} too large, must be below 2^32"
            )));
        }
        Ok(Field::Prime(p))
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Rationals => f.write_str("QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().map(BigInt::from).collect(),
        }
    }

    /// Clears denominators row by row; row scaling preserves rank over the
    /// rationals. Also returns the row scale factors.
    pub fn from_rational_rows(rows: &[Vec<BigRational>]) -> (Self, Vec<BigInt>) {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let mut scales = Vec::with_capacity(rows.len());
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            let scale = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            data.extend(row.iter().map(|v| v.numer() * (&scale / v.denom())));
            scales.push(scale);
        }
        (
            IntMatrix {
                rows: rows.len(),
                cols,
                data,
            },
            scales,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: impl Into<BigInt>) {
        self.data[r * self.cols + c] = v.into();
    }

    pub fn rank(&self, field: Field) -> usize {
        match field {
            Field::Rationals => self.rank_rational(),
            Field::Prime(p) => self.rank_mod(p),
        }
    }

    /// Fraction-free (Bareiss) elimination. Every intermediate entry is a
    /// minor of the input, so all divisions are exact.
    pub fn rank_rational(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let (head, tail) = a.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            for row in tail.iter_mut() {
                let factor = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    let num = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    row[j] = q;
                }
            }
            prev = a[rank][c].clone();
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    pub fn rank_mod(&self, p: u64) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let modulus = BigInt::from(p);
        let reduce = |v: &BigInt| -> u64 {
            v.mod_floor(&modulus)
                .try_into()
                .expect("residue below the modulus")
        };
        let mut a: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| reduce(self.get(r, c))).collect())
            .collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| a[r][c] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = pow_mod(a[rank][c], p - 2, p);
            let (head, tail) = a.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            for row in tail.iter_mut() {
                if row[c] == 0 {
                    continue;
                }
                let factor = row[c] * inv % p;
                for j in c..self.cols {
                    let sub = factor * pivot_row[j] % p;
                    row[j] = (row[j] + p - sub) % p;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
