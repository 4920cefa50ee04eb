//! Exponent-vector monomials.
//!
//! A [`Monomial`] stores one exponent per variable. The number of variables is
//! owned by the surrounding context (an ideal or a complex); binary operations
//! check that both sides agree and report [`Error::Dimension`] otherwise.
//!
//! The canonical text form is `x1^6*x2^3*x3^4`: variables `x1..xn`, `^` for
//! exponents, `*` for products, exponent 1 omitted and the literal `1` for the
//! identity. The parser also accepts the single-letter aliases `a, b, c, ...`
//! and `x, y, z`, mapped positionally onto `x1, x2, x3, ...`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    /// The identity monomial in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial {
            exponents: vec![0; n],
        }
    }

    /// `x_{var+1}^exp` in `n` variables.
    pub fn pure_power(n: usize, var: usize, exp: u32) -> Self {
        let mut exponents = vec![0; n];
        exponents[var] = exp;
        Monomial { exponents }
    }

    pub fn ambient(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exponents[var]
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Variables with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// If this is `x_i^a` with `a >= 1`, returns `(i, a)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut support = self.support();
        let var = support.next()?;
        if support.next().is_some() {
            return None;
        }
        Some((var, self.exponents[var]))
    }

    pub fn total_degree(&self) -> u64 {
        self.exponents.iter().map(|&e| u64::from(e)).sum()
    }

    fn check(&self, other: &Monomial) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::Dimension {
                expected: self.ambient(),
                found: other.ambient(),
            });
        }
        Ok(())
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check(other)?;
        Ok(self.lcm_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub(crate) fn lcm_assign(&mut self, other: &Monomial) {
        for (a, &b) in self.exponents.iter_mut().zip(&other.exponents) {
            *a = (*a).max(b);
        }
    }

    /// lcm of an iterator of monomials; the identity for an empty iterator.
    pub fn lcm_all<'a>(
        n: usize,
        items: impl IntoIterator<Item = &'a Monomial>,
    ) -> Result<Monomial> {
        let mut acc = Monomial::one(n);
        for m in items {
            acc.check(m)?;
            acc.lcm_assign(m);
        }
        Ok(acc)
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(&a, &b)| a <= b)
    }

    /// Every nonzero exponent of `self` is strictly smaller than the matching
    /// exponent of `other`. Zero exponents impose nothing, so `1` strongly
    /// divides everything.
    pub fn strongly_divides(&self, other: &Monomial) -> Result<bool> {
        self.check(other)?;
        Ok(self.strongly_divides_unchecked(other))
    }

    pub(crate) fn strongly_divides_unchecked(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(&a, &b)| a == 0 || a < b)
    }

    /// `self / divisor`, or `None` when `divisor` does not divide `self`.
    pub fn checked_quotient(&self, divisor: &Monomial) -> Result<Option<Monomial>> {
        self.check(divisor)?;
        Ok(self.quotient_unchecked(divisor))
    }

    pub(crate) fn quotient_unchecked(&self, divisor: &Monomial) -> Option<Monomial> {
        self.exponents
            .iter()
            .zip(&divisor.exponents)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial::new)
    }

    pub(crate) fn mul_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    /// Parses the canonical grammar. With `ambient = None` the number of
    /// variables is the largest index mentioned (at least 1).
    pub fn parse(text: &str, ambient: Option<usize>) -> Result<Monomial> {
        let factors = parse_factors(text, 0)?;
        let needed = factors.iter().map(|&(v, _)| v + 1).max().unwrap_or(1);
        let n = match ambient {
            Some(n) if n < needed => {
                return Err(Error::parse(
                    0,
                    format!("variable x{needed} exceeds ambient n = {n}"),
                ))
            }
            Some(n) => n,
            None => needed,
        };
        Ok(from_factors(n, &factors))
    }
}

/// Degree first, then lexicographic on exponent vectors.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    /// Text form with variables written `a, b, c, ...`; `None` past 23 variables.
    pub fn to_letters(&self) -> Option<String> {
        if self.ambient() > LETTERS {
            return None;
        }
        let mut out = String::new();
        self.write_with(&mut out, |f, i| {
            fmt::Write::write_char(f, char::from(b'a' + i as u8))
        })
        .expect("writing to a String");
        Some(out)
    }

    fn write_with<W: fmt::Write>(
        &self,
        f: &mut W,
        var: impl Fn(&mut W, usize) -> fmt::Result,
    ) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            var(f, i)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Letters `a..=w` are positional aliases; `x, y, z` are reserved.
const LETTERS: usize = 23;

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, |f, i| write!(f, "x{}", i + 1))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn from_factors(n: usize, factors: &[(usize, u32)]) -> Monomial {
    let mut m = Monomial::one(n);
    for &(v, e) in factors {
        m.exponents[v] += e;
    }
    m
}

/// Parses one monomial into `(variable, exponent)` factors. `offset` is added
/// to every reported error position so callers parsing a list can report
/// positions relative to their own input.
pub(crate) fn parse_factors(text: &str, offset: usize) -> Result<Vec<(usize, u32)>> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(Error::parse(offset + pos, "empty monomial"));
    }
    if bytes[pos] == b'1' {
        let start = pos;
        pos += 1;
        skip_ws(&mut pos);
        if pos != bytes.len() {
            return Err(Error::parse(offset + start, "`1` must stand alone"));
        }
        return Ok(Vec::new());
    }

    let mut factors = Vec::new();
    loop {
        skip_ws(&mut pos);
        let var_start = pos;
        let var = match bytes.get(pos) {
            Some(b'x') if bytes.get(pos + 1).is_some_and(u8::is_ascii_digit) => {
                pos += 1;
                let (value, next) = read_number(bytes, pos, offset)?;
                pos = next;
                if value == 0 {
                    return Err(Error::parse(
                        offset + var_start,
                        "variables are numbered from x1",
                    ));
                }
                usize::try_from(value - 1)
                    .map_err(|_| Error::parse(offset + var_start, "variable index too large"))?
            }
            Some(&c @ b'x'..=b'z') => {
                pos += 1;
                usize::from(c - b'x')
            }
            Some(&c @ b'a'..=b'w') => {
                pos += 1;
                usize::from(c - b'a')
            }
            Some(&c) => {
                return Err(Error::parse(
                    offset + pos,
                    format!("expected a variable, found `{}`", c as char),
                ))
            }
            None => return Err(Error::parse(offset + pos, "expected a variable")),
        };
        skip_ws(&mut pos);
        let mut exp = 1u32;
        if bytes.get(pos) == Some(&b'^') {
            pos += 1;
            skip_ws(&mut pos);
            let exp_start = pos;
            let (value, next) = read_number(bytes, pos, offset)?;
            pos = next;
            exp = u32::try_from(value).map_err(|_| {
                Error::parse(offset + exp_start, "exponent does not fit in 32 bits")
            })?;
        }
        factors.push((var, exp));
        skip_ws(&mut pos);
        match bytes.get(pos) {
            None => break,
            Some(b'*') => pos += 1,
            Some(&c) => {
                return Err(Error::parse(
                    offset + pos,
                    format!("expected `*` or end of monomial, found `{}`", c as char),
                ))
            }
        }
    }
    Ok(factors)
}

fn read_number(bytes: &[u8], start: usize, offset: usize) -> Result<(u64, usize)> {
    let mut pos = start;
    let mut value: u64 = 0;
    while let Some(&c) = bytes.get(pos) {
        if !c.is_ascii_digit() {
            break;
        }
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add(u64::from(c - b'0')))
            .ok_or_else(|| Error::parse(offset + start, "number too large"))?;
        pos += 1;
    }
    if pos == start {
        return Err(Error::parse(offset + start, "expected a number"));
    }
    Ok((value, pos))
}
