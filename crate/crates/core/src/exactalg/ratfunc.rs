use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{AlgError, Field, MultiPoly, Rational};

/// A reduced quotient of two polynomials over the rationals.
///
/// Canonical form: `gcd(num, den) = 1`; both have integer coefficients whose
/// combined gcd is 1; the leading coefficient of `den` is positive.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Builds `num/den` in canonical form.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgError> {
        if den.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_constant() {
            return Ok(Self::scaled(num, den));
        }
        let g = num.gcd(&den);
        if g.is_one() {
            return Ok(Self::scaled(num, den));
        }
        let n = num.div_exact(&g).expect("gcd divides numerator");
        let d = den.div_exact(&g).expect("gcd divides denominator");
        Ok(Self::scaled(n, d))
    }

    /// Normalizes scalar content only; assumes `gcd(num, den)` is a constant.
    fn scaled(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (ln, gn) = num.integer_content();
        let (ld, gd) = den.integer_content();
        // Common scale s = lcm(ln, ld) / gcd(gn * ., gd * .) computed on the scaled contents.
        use num_integer::Integer;
        let l = ln.lcm(&ld);
        let gn_s = &gn * (&l / &ln);
        let gd_s = &gd * (&l / &ld);
        let g = gn_s.gcd(&gd_s);
        let mut s = Rational::from_big(l, g).expect("nonzero content");
        if den.leading_coefficient().is_some_and(|c| c.is_negative()) {
            s = s.negate();
        }
        RatFunc {
            num: num.scale(&s),
            den: den.scale(&s),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self::scaled(p, MultiPoly::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(MultiPoly::var(name))
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n.times(&d.inverse().ok()?))
    }

    /// Variables that occur in numerator or denominator, naturally sorted.
    pub fn occurring_vars(&self) -> Vec<String> {
        let mut v = self.num.occurring_vars();
        for x in self.den.occurring_vars() {
            if !v.contains(&x) {
                v.push(x);
            }
        }
        v.sort_by(|a, b| super::natural_cmp(a, b));
        v
    }

    /// Evaluates at an arbitrary rational point.
    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, AlgError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(AlgError::PoleAtPoint);
        }
        Ok(self.num.eval(point)?.times(&d.inverse()?))
    }

    /// Evaluates at a point whose coordinates must all be positive.
    pub fn eval_positive(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, AlgError> {
        for v in self.occurring_vars() {
            match point.get(&v) {
                None => return Err(AlgError::UnboundVariable(v)),
                Some(x) if !x.is_positive() => return Err(AlgError::NonPositiveCoordinate(v)),
                Some(_) => {}
            }
        }
        self.eval(point)
    }

    /// Substitutes a rational value for one variable.
    pub fn substitute(&self, name: &str, value: &Rational) -> Result<RatFunc, AlgError> {
        RatFunc::new(
            self.num.substitute(name, value),
            self.den.substitute(name, value),
        )
    }

    /// Parses expressions such as `(x1*x4 - x2*x3)/(x4)` or `t5/t1`.
    pub fn parse(s: &str) -> Result<RatFunc, AlgError> {
        super::parse::parse_ratfunc(s)
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc, AlgError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.times(&base);
        }
        Ok(acc)
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }
    fn one() -> Self {
        RatFunc {
            num: MultiPoly::one(),
            den: MultiPoly::one(),
        }
    }
    fn from_int(v: i64) -> Self {
        Self::constant(Rational::integer(v))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::scaled(self.num.add(&rhs.num), MultiPoly::one());
        }
        if self.den == rhs.den {
            return RatFunc::new(self.num.add(&rhs.num), self.den.clone())
                .expect("nonzero denominator");
        }
        let g = self.den.gcd(&rhs.den);
        let a = rhs.den.div_exact(&g).expect("gcd divides");
        let b = self.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&a).add(&rhs.num.mul(&b));
        let den = self.den.mul(&a);
        if g.is_constant() {
            // Denominators coprime: the sum is already reduced.
            return Self::scaled(num, den);
        }
        RatFunc::new(num, den).expect("nonzero denominator")
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::scaled(self.num.mul(&rhs.num), MultiPoly::one());
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Self::scaled(n1.mul(&n2), d1.mul(&d2))
    }
    fn negate(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inverse(&self) -> Result<Self, AlgError> {
        if self.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(Self::scaled(self.den.clone(), self.num.clone()))
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = self.num.to_string();
        let den = self.den.to_string();
        let num = if self.num.num_terms() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den = if self.den.num_terms() > 1 || den.contains('*') {
            format!("({den})")
        } else {
            den
        };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RatFunc {
    type Err = AlgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RatFunc::parse(s)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    #[test]
    fn canonical_text() {
        assert_eq!(r("(x1*x4 - x2*x3)/x4").to_string(), "(x1*x4 - x2*x3)/x4");
        assert_eq!(r("x/2").to_string(), "x/2");
        assert_eq!(r("-x/(-2*y)").to_string(), "x/(2*y)");
        assert_eq!(r("-x2/x4").to_string(), "-x2/x4");
    }

    #[test]
    fn inverse_pair_is_one() {
        assert!(r("t1/t2").times(&r("t2/t1")).is_one());
    }

    #[test]
    fn reduction() {
        assert_eq!(r("(x^2 - y^2)/(x + y)"), r("x - y"));
        assert_eq!(r("(2*x + 2)/(4*x*y + 4*y)"), r("1/(2*y)"));
        assert_eq!(r("a/b + c/d"), r("(a*d + b*c)/(b*d)"));
    }

    #[test]
    fn inverse_of_zero_errors() {
        assert_eq!(RatFunc::zero().inverse(), Err(AlgError::DivisionByZero));
    }
}
