//! Monomial ideal presentations.
//!
//! An [`Ideal`] is an ordered generator list over a fixed number of variables.
//! Duplicates and redundant generators are allowed: twin ideals and other
//! non-minimal presentations are first-class values here, and the Taylor
//! complex is built on whatever list is given.

use itertools::Itertools;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::monomial::{self, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    n: usize,
    generators: Vec<Monomial>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealJson {
    n: usize,
    generators: Vec<Vec<u32>>,
}

impl Ideal {
    pub fn new(n: usize, generators: Vec<Monomial>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("ambient variable count must be positive"));
        }
        if let Some(g) = generators.iter().find(|g| g.ambient() != n) {
            return Err(Error::Dimension {
                expected: n,
                found: g.ambient(),
            });
        }
        Ok(Ideal { n, generators })
    }

    pub fn from_exponents(n: usize, generators: Vec<Vec<u32>>) -> Result<Self> {
        Ideal::new(n, generators.into_iter().map(Monomial::new).collect())
    }

    pub fn zero(n: usize) -> Self {
        Ideal {
            n,
            generators: Vec::new(),
        }
    }

    /// `(x1^a1, ..., xn^an)`.
    pub fn pure_powers(exponents: &[u32]) -> Result<Self> {
        let n = exponents.len();
        Ideal::new(
            n,
            exponents
                .iter()
                .enumerate()
                .map(|(i, &a)| Monomial::pure_power(n, i, a))
                .collect(),
        )
    }

    /// The maximal ideal `(x1, ..., xn)`.
    pub fn maximal(n: usize) -> Self {
        Ideal::pure_powers(&vec![1; n]).expect("n variables")
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// No generators at all: the zero ideal.
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    /// Proper and nonzero.
    pub(crate) fn require_proper_nonzero(&self, what: &str) -> Result<()> {
        if self.is_zero() {
            return Err(Error::domain(format!(
                "{what}: the zero ideal is not allowed"
            )));
        }
        if self.contains_unit() {
            return Err(Error::domain(format!(
                "{what}: the unit ideal is not allowed"
            )));
        }
        Ok(())
    }

    /// lcm of all generators; `1` for the zero ideal.
    pub fn lcm(&self) -> Monomial {
        let mut acc = Monomial::one(self.n);
        for g in &self.generators {
            acc.lcm_assign(g);
        }
        acc
    }

    /// The unique minimal generating set, sorted by degree then exponent vector.
    pub fn minimal_generators(&self) -> Ideal {
        let sorted: Vec<&Monomial> = self.generators.iter().sorted().dedup().collect();
        let mut kept: Vec<Monomial> = Vec::with_capacity(sorted.len());
        // In degree order a proper divisor always precedes its multiples.
        for g in sorted {
            if !kept.iter().any(|k| k.divides_unchecked(g)) {
                kept.push(g.clone());
            }
        }
        Ideal {
            n: self.n,
            generators: kept,
        }
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal_generators() == *self
    }

    /// Every variable has a pure power among the minimal generators.
    pub fn is_artinian(&self) -> bool {
        let min = self.minimal_generators();
        let mut seen = vec![false; self.n];
        for g in min.generators() {
            if let Some((v, _)) = g.as_pure_power() {
                seen[v] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Minimally generated by exactly one pure power of each variable. Returns
    /// their exponents in variable order.
    pub fn pure_power_exponents(&self) -> Option<Vec<u32>> {
        let min = self.minimal_generators();
        if min.len() != self.n {
            return None;
        }
        let mut exps = vec![0; self.n];
        for g in min.generators() {
            let (v, a) = g.as_pure_power()?;
            if exps[v] != 0 {
                return None;
            }
            exps[v] = a;
        }
        Some(exps)
    }

    /// Smallest set of variables meeting the support of every minimal
    /// generator, searched exhaustively by size.
    pub fn codim(&self) -> Result<usize> {
        self.require_proper_nonzero("codim")?;
        let supports: Vec<u64> = self
            .minimal_generators()
            .generators()
            .iter()
            .map(|g| g.support().fold(0u64, |acc, v| acc | (1 << v)))
            .collect();
        if self.n > 63 {
            return Err(Error::domain("codim supports at most 63 variables"));
        }
        for size in 1..=self.n {
            for vars in (0..self.n).combinations(size) {
                let mask = vars.iter().fold(0u64, |acc, &v| acc | (1 << v));
                if supports.iter().all(|&s| s & mask != 0) {
                    return Ok(size);
                }
            }
        }
        unreachable!("the full variable set covers every nonconstant generator")
    }

    /// Minimal generators dividing `l`, in minimal-generator order.
    pub fn restrict_to_divisors(&self, l: &Monomial) -> Result<Ideal> {
        if l.ambient() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: l.ambient(),
            });
        }
        let generators = self
            .minimal_generators()
            .generators
            .into_iter()
            .filter(|g| g.divides_unchecked(l))
            .collect();
        Ok(Ideal {
            n: self.n,
            generators,
        })
    }

    /// The twin presentation: generator `i` keeps exactly the exponents where
    /// it attains the lcm of the whole list and zeroes the rest. The output is
    /// raw: same length and order as the input, duplicates and redundancies
    /// left in place.
    pub fn twin(&self) -> Result<Ideal> {
        if self.generators.is_empty() {
            return Err(Error::domain("twin ideal of an empty generator list"));
        }
        let top = self.lcm();
        let generators = self
            .generators
            .iter()
            .map(|g| {
                Monomial::new(
                    g.exponents()
                        .iter()
                        .zip(top.exponents())
                        .map(|(&e, &t)| if e == t { t } else { 0 })
                        .collect(),
                )
            })
            .collect();
        Ok(Ideal {
            n: self.n,
            generators,
        })
    }

    pub fn is_squarefree(&self) -> bool {
        self.minimal_generators()
            .generators()
            .iter()
            .all(|g| g.exponents().iter().all(|&e| e <= 1))
    }

    /// Comma-separated monomials; `0` (or empty input) is the zero ideal.
    /// With `ambient = None`, n is the largest variable index mentioned.
    pub fn parse_text(text: &str, ambient: Option<usize>) -> Result<Ideal> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "0" {
            return match ambient {
                Some(n) => Ideal::new(n, Vec::new()),
                None => Err(Error::parse(
                    0,
                    "the zero ideal needs an explicit variable count",
                )),
            };
        }
        let mut parsed = Vec::new();
        let mut offset = 0;
        for piece in text.split(',') {
            parsed.push(monomial::parse_factors(piece, offset)?);
            offset += piece.len() + 1;
        }
        let needed = parsed
            .iter()
            .flatten()
            .map(|&(v, _)| v + 1)
            .max()
            .unwrap_or(1);
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
        Ideal::new(
            n,
            parsed
                .iter()
                .map(|f| monomial::from_factors(n, f))
                .collect(),
        )
    }

    pub fn to_text(&self) -> String {
        if self.generators.is_empty() {
            return "0".to_string();
        }
        self.generators.iter().join(", ")
    }

    /// Like [`Ideal::to_text`] but with letter variables; `None` past 23 variables.
    pub fn to_letters(&self) -> Option<String> {
        if self.generators.is_empty() {
            return Some("0".to_string());
        }
        let parts: Option<Vec<String>> = self.generators.iter().map(Monomial::to_letters).collect();
        Some(parts?.join(", "))
    }

    pub fn parse_json(text: &str) -> Result<Ideal> {
        let raw: IdealJson = serde_json::from_str(text).map_err(|e| {
            // serde_json reports 1-based line/column; convert to a byte offset.
            let position = text
                .split_inclusive('\n')
                .take(e.line().saturating_sub(1))
                .map(str::len)
                .sum::<usize>()
                + e.column().saturating_sub(1);
            Error::parse(position, e.to_string())
        })?;
        Ideal::from_exponents(raw.n, raw.generators)
    }

    /// Canonical JSON, e.g. `{"n": 3, "generators": [[6,1,0],[0,4,0]]}`.
    pub fn to_json(&self) -> String {
        let gens = self
            .generators
            .iter()
            .map(|g| format!("[{}]", g.exponents().iter().join(",")))
            .join(",");
        format!("{{\"n\": {}, \"generators\": [{}]}}", self.n, gens)
    }

    /// JSON when the input starts with `{`, the monomial grammar otherwise.
    pub fn parse(text: &str, ambient: Option<usize>) -> Result<Ideal> {
        if text.trim_start().starts_with('{') {
            let ideal = Ideal::parse_json(text)?;
            if let Some(n) = ambient {
                if n != ideal.n {
                    return Err(Error::Dimension {
                        expected: n,
                        found: ideal.n,
                    });
                }
            }
            Ok(ideal)
        } else {
            Ideal::parse_text(text, ambient)
        }
    }
}

impl std::fmt::Display for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(text: &str, n: usize) -> Ideal {
        Ideal::parse_text(text, Some(n)).unwrap()
    }

    fn two_dominant_sets() -> Ideal {
        ideal("x1^6*x2, x1^5*x2^3, x2^4, x1*x3^4", 3)
    }

    #[test]
    fn minimalization() {
        let i = ideal("a^3*b^2, a^3, c^2, c^2", 3);
        assert_eq!(i.minimal_generators(), ideal("c^2, a^3", 3));
        assert_eq!(ideal("x, x*y", 2).minimal_generators(), ideal("x1", 2));
        let g = two_dominant_sets().minimal_generators();
        assert_eq!(g.minimal_generators(), g);
        assert!(g.is_minimal());
        assert_eq!(ideal("x1, 1, x2", 2).minimal_generators(), ideal("1", 2));
    }

    #[test]
    fn artinian() {
        assert!(ideal("x1^2, x2^3", 2).is_artinian());
        assert!(!ideal("x1^2, x1*x2", 2).is_artinian());
        assert!(ideal("x1^2, x2^3, x3, x1*x3, x2*x3^5", 3).is_artinian());
        assert!(!Ideal::zero(2).is_artinian());
    }

    #[test]
    fn codimension() {
        assert_eq!(
            Ideal::pure_powers(&[2, 5, 1, 3]).unwrap().codim().unwrap(),
            4
        );
        assert_eq!(ideal("x1*x2", 2).codim().unwrap(), 1);
        assert_eq!(ideal("x1*x2, x2*x3, x1*x3", 3).codim().unwrap(), 2);
        assert!(matches!(Ideal::zero(2).codim(), Err(Error::Domain(_))));
        assert!(matches!(ideal("1", 2).codim(), Err(Error::Domain(_))));
    }

    #[test]
    fn restriction() {
        let i = two_dominant_sets();
        let l = Monomial::new(vec![6, 3, 4]);
        let r = i.restrict_to_divisors(&l).unwrap();
        let mut got = r.generators().to_vec();
        got.sort();
        let mut want = ideal("x1^6*x2, x1^5*x2^3, x1*x3^4", 3)
            .generators()
            .to_vec();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(
            i.restrict_to_divisors(&i.lcm()).unwrap(),
            i.minimal_generators()
        );
        assert!(i.restrict_to_divisors(&Monomial::one(3)).unwrap().is_zero());
        assert!(i.restrict_to_divisors(&Monomial::one(2)).is_err());
    }

    #[test]
    fn twin_examples() {
        let m = ideal("a^3*b^2, a^3*c, a*c^2, b*c^2", 3);
        assert_eq!(m.twin().unwrap(), ideal("a^3*b^2, a^3, c^2, c^2", 3));
        assert_eq!(
            m.twin().unwrap().to_letters().as_deref(),
            Some("a^3*b^2, a^3, c^2, c^2")
        );
        let ci = Ideal::pure_powers(&[3, 1, 4]).unwrap();
        assert_eq!(ci.twin().unwrap(), ci);
        // x1*x2 strongly divides the lcm x1^2*x2^2, so its twin is 1.
        let t = ideal("x1^2, x2^2, x1*x2", 2).twin().unwrap();
        assert!(t.generators()[2].is_one());
        assert!(matches!(Ideal::zero(3).twin(), Err(Error::Domain(_))));
    }

    #[test]
    fn squarefree() {
        assert!(ideal("x1*x2, x2*x3", 3).is_squarefree());
        assert!(!ideal("x1^2", 1).is_squarefree());
        assert!(Ideal::maximal(5).is_squarefree());
        // redundant non-squarefree generators do not count
        assert!(ideal("x1, x1^2*x2", 2).is_squarefree());
    }

    #[test]
    fn text_and_json_forms() {
        let json = r#"{"n": 3, "generators": [[6,1,0],[5,3,0],[0,4,0],[1,0,4]]}"#;
        let i = Ideal::parse_json(json).unwrap();
        assert_eq!(i, two_dominant_sets());
        assert_eq!(i.to_json(), json);
        assert_eq!(i.to_text(), "x1^6*x2, x1^5*x2^3, x2^4, x1*x3^4");
        assert_eq!(Ideal::parse(json, None).unwrap(), i);
        assert_eq!(Ideal::parse(&i.to_text(), Some(3)).unwrap(), i);
        assert_eq!(Ideal::zero(2).to_text(), "0");
        assert_eq!(Ideal::parse_text("0", Some(2)).unwrap(), Ideal::zero(2));
        assert_eq!(Ideal::zero(2).to_json(), r#"{"n": 2, "generators": []}"#);
    }

    #[test]
    fn parse_errors() {
        let e = Ideal::parse_text("x1^2, x2^", None).unwrap_err();
        assert_eq!(e, Error::parse(9, "expected a number"));
        assert!(matches!(
            Ideal::parse_json(r#"{"n": 2, "generators": [[1]]}"#),
            Err(Error::Dimension { .. })
        ));
        assert!(matches!(
            Ideal::parse_json(r#"{"n": 2, "gens": []}"#),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Ideal::parse_text("0", None),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(Ideal::new(0, vec![]), Err(Error::Domain(_))));
    }
}
