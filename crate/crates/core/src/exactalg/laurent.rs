use std::collections::BTreeMap;
use std::fmt;

use super::{AlgError, Field};

/// A Laurent polynomial in `z` over a base field.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<F: Field> {
    coeffs: BTreeMap<i64, F>,
}

impl<F: Field> LaurentPoly<F> {
    pub fn monomial(c: F, d: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(d, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from `(degree, coefficient)` pairs, summing repeated degrees.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, F)>) -> Self {
        let mut out = Self::zero_poly();
        for (d, c) in pairs {
            out.add_term(d, &c);
        }
        out
    }

    fn zero_poly() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, d: i64, c: &F) {
        if c.is_zero() {
            return;
        }
        let next = match self.coeffs.get(&d) {
            Some(prev) => prev.plus(c),
            None => c.clone(),
        };
        if next.is_zero() {
            self.coeffs.remove(&d);
        } else {
            self.coeffs.insert(d, next);
        }
    }

    /// Coefficient of `z^d`.
    pub fn coeff(&self, d: i64) -> F {
        self.coeffs.get(&d).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `Some((c, d))` when the polynomial is the single term `c z^d`.
    pub fn as_monomial(&self) -> Option<(F, i64)> {
        if self.coeffs.len() == 1 {
            let (d, c) = self.coeffs.iter().next().expect("one term");
            Some((c.clone(), *d))
        } else {
            None
        }
    }

    /// Applies `f` to every coefficient, dropping zero results.
    pub fn map_coeffs<G: Field>(
        &self,
        f: impl Fn(i64, &F) -> Result<G, AlgError>,
    ) -> Result<LaurentPoly<G>, AlgError> {
        let mut out = LaurentPoly::<G>::zero();
        for (d, c) in &self.coeffs {
            out.add_term(*d, &f(*d, c)?);
        }
        Ok(out)
    }

    /// Multiplies by `z^s`.
    pub fn shift(&self, s: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, c)| (d + s, c.clone()))
                .collect(),
        }
    }
}

impl<F: Field> Field for LaurentPoly<F> {
    fn zero() -> Self {
        Self::zero_poly()
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn from_int(v: i64) -> Self {
        Self::constant(F::from_int(v))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, c);
        }
        out
    }
    fn times(&self, rhs: &Self) -> Self {
        let mut out = Self::zero_poly();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &rhs.coeffs {
                out.add_term(da + db, &ca.times(cb));
            }
        }
        out
    }
    fn negate(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, c.negate())).collect(),
        }
    }
    /// Only monomials are units of the Laurent ring; other inputs error.
    fn inverse(&self) -> Result<Self, AlgError> {
        match self.as_monomial() {
            Some((c, d)) => Ok(Self::monomial(c.inverse()?, -d)),
            None => Err(AlgError::DivisionByZero),
        }
    }
}

/// Whether `s` contains `c` outside all parentheses.
fn has_top_level(s: &str, c: char) -> bool {
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            x if x == c && depth == 0 => return true,
            _ => {}
        }
    }
    false
}

/// Splits `a/b` at its top-level slash.
fn split_fraction(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Renders `body·z^d` in fraction style, e.g. `x4/(x3 z)`.
fn with_power(body: &str, d: i64) -> String {
    let zpow = if d.abs() == 1 {
        "z".to_string()
    } else {
        format!("z^{}", d.abs())
    };
    let sum = has_top_level(body, ' ');
    match d {
        0 => body.to_string(),
        d if d > 0 && (sum || split_fraction(body).is_some()) => format!("({body})*{zpow}"),
        d if d > 0 => format!("{body}*{zpow}"),
        _ if sum => format!("({body})/{zpow}"),
        _ => match split_fraction(body) {
            Some((num, den)) => format!("{num}/({den} {zpow})"),
            None => format!("{body}/{zpow}"),
        },
    }
}

impl<F: Field> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, (d, c)) in self.coeffs.iter().rev().enumerate() {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !has_top_level(rest, ' ') => (true, rest),
                _ => (false, s.as_str()),
            };
            let body = if idx > 0 && !neg && has_top_level(body, ' ') {
                format!("({body})")
            } else {
                body.to_string()
            };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{}", with_power(&body, *d))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
