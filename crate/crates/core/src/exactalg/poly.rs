use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{AlgError, Field, Rational};

type Exp = Vec<u32>;

/// Natural ordering of symbol names: alphabetic prefix, then numeric suffix,
/// so that `t1 < t3 < t10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>) {
        let idx = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (p, d) = s.split_at(idx);
        (p, d.parse().ok())
    }
    let (pa, na) = split(a);
    let (pb, nb) = split(b);
    pa.cmp(pb).then(na.cmp(&nb)).then(a.cmp(b))
}

fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// A sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept strictly decreasing in graded lexicographic order with
/// respect to the (naturally sorted) variable list. The variable list may
/// contain variables that do not occur; equality is semantic.
#[derive(Clone)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: Vec<(Exp, Rational)>,
}

fn empty_vars() -> Arc<[String]> {
    Arc::from(Vec::<String>::new())
}

fn same_vars(a: &Arc<[String]>, b: &Arc<[String]>) -> bool {
    Arc::ptr_eq(a, b) || a[..] == b[..]
}

fn union_vars(a: &Arc<[String]>, b: &Arc<[String]>) -> Arc<[String]> {
    if same_vars(a, b) {
        return a.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    if a.is_empty() {
        return b.clone();
    }
    let mut out: Vec<String> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => natural_cmp(x, y),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    if out.len() == a.len() {
        a.clone()
    } else if out.len() == b.len() {
        b.clone()
    } else {
        Arc::from(out)
    }
}

/// Merges two grlex-descending term lists, adding `sign * b` to `a`.
fn merge(a: &[(Exp, Rational)], b: &[(Exp, Rational)], negate_b: bool) -> Vec<(Exp, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let conv = |c: &Rational| if negate_b { c.negate() } else { c.clone() };
    while i < a.len() && j < b.len() {
        match grlex_cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), conv(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    a[i].1.minus(&b[j].1)
                } else {
                    a[i].1.plus(&b[j].1)
                };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(e, c)| (e.clone(), conv(c))));
    out
}

fn normalize_terms(mut terms: Vec<(Exp, Rational)>) -> Vec<(Exp, Rational)> {
    terms.sort_by(|x, y| grlex_cmp(&y.0, &x.0));
    let mut out: Vec<(Exp, Rational)> = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == e => last.1 = last.1.plus(&c),
            _ => out.push((e, c)),
        }
    }
    out.retain(|t| !t.1.is_zero());
    out
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: empty_vars(),
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Vec::new(), c)]
        };
        MultiPoly {
            vars: empty_vars(),
            terms,
        }
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(name: &str) -> Self {
        MultiPoly {
            vars: Arc::from(vec![name.to_string()]),
            terms: vec![(vec![1], Rational::one())],
        }
    }

    /// Builds a polynomial from `(exponent vector, coefficient)` pairs over `vars`.
    /// Variables may be given in any order; duplicates are rejected.
    pub fn from_terms(vars: &[&str], terms: Vec<(Vec<u32>, Rational)>) -> Result<Self, AlgError> {
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by(|&i, &j| natural_cmp(vars[i], vars[j]));
        for w in order.windows(2) {
            if vars[w[0]] == vars[w[1]] {
                return Err(AlgError::Parse(format!(
                    "duplicate variable `{}`",
                    vars[w[0]]
                )));
            }
        }
        let sorted: Vec<String> = order.iter().map(|&i| vars[i].to_string()).collect();
        let mut out = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(AlgError::Parse("exponent vector length mismatch".into()));
            }
            out.push((order.iter().map(|&i| e[i]).collect(), c));
        }
        Ok(MultiPoly {
            vars: Arc::from(sorted),
            terms: normalize_terms(out),
        })
    }

    /// The declared variable list (may include variables that do not occur).
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Terms in decreasing graded lexicographic order.
    pub fn terms(&self) -> &[(Vec<u32>, Rational)] {
        &self.terms
    }

    /// Names of the variables that occur with positive exponent.
    pub fn occurring_vars(&self) -> Vec<String> {
        let mask = self.var_mask();
        self.vars
            .iter()
            .zip(mask)
            .filter(|(_, m)| *m)
            .map(|(v, _)| v.clone())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms.first().is_some_and(|t| t.1.is_one())
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.iter().sum()).unwrap_or(0)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn with_vars(&self, target: &Arc<[String]>) -> MultiPoly {
        if same_vars(&self.vars, target) {
            return MultiPoly {
                vars: target.clone(),
                terms: self.terms.clone(),
            };
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .iter()
                    .position(|t| t == v)
                    .expect("target must contain all variables")
            })
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; target.len()];
                for (i, &p) in pos.iter().enumerate() {
                    ne[p] = e[i];
                }
                (ne, c.clone())
            })
            .collect();
        MultiPoly {
            vars: target.clone(),
            terms,
        }
    }

    fn aligned(&self, other: &MultiPoly) -> (MultiPoly, MultiPoly) {
        let vars = union_vars(&self.vars, &other.vars);
        (self.with_vars(&vars), other.with_vars(&vars))
    }

    fn var_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.vars.len()];
        for (e, _) in &self.terms {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    m[i] = true;
                }
            }
        }
        m
    }

    fn one_like(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: vec![(vec![0; self.vars.len()], Rational::one())],
        }
    }

    fn monomial_like(&self, e: Exp, c: Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: vec![],
            };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: vec![(e, c)],
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (a, b) = self.aligned(other);
        MultiPoly {
            terms: merge(&a.terms, &b.terms, false),
            vars: a.vars,
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = self.aligned(other);
        MultiPoly {
            terms: merge(&a.terms, &b.terms, true),
            vars: a.vars,
        }
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.negate()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: vec![],
            };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.times(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        let (a, b) = self.aligned(other);
        if a.terms.len() == 1 || b.terms.len() == 1 {
            let (single, many) = if a.terms.len() == 1 {
                (&a, &b)
            } else {
                (&b, &a)
            };
            let (se, sc) = &single.terms[0];
            // Multiplying by a monomial preserves the term order.
            let terms = many
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(se).map(|(x, y)| x + y).collect(), c.times(sc)))
                .collect();
            return MultiPoly {
                vars: a.vars.clone(),
                terms,
            };
        }
        let mut acc: HashMap<Exp, Rational> = HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exp = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let p = ca.times(cb);
                acc.entry(e).and_modify(|v| *v = v.plus(&p)).or_insert(p);
            }
        }
        MultiPoly {
            vars: a.vars.clone(),
            terms: normalize_terms(acc.into_iter().collect()),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluates at a point given by a lookup function.
    pub fn eval_with<F>(&self, lookup: F) -> Result<Rational, AlgError>
    where
        F: Fn(&str) -> Option<Rational>,
    {
        let mask = self.var_mask();
        let mut vals: Vec<Rational> = Vec::with_capacity(self.vars.len());
        for (v, used) in self.vars.iter().zip(&mask) {
            if *used {
                vals.push(lookup(v).ok_or_else(|| AlgError::UnboundVariable(v.clone()))?);
            } else {
                vals.push(Rational::zero());
            }
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    t = t.times(&vals[i].pow(x));
                }
            }
            total = total.plus(&t);
        }
        Ok(total)
    }

    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, AlgError> {
        self.eval_with(|v| point.get(v).cloned())
    }

    /// Substitutes a rational value for one variable.
    pub fn substitute(&self, name: &str, value: &Rational) -> MultiPoly {
        let Some(idx) = self.vars.iter().position(|v| v == name) else {
            return self.clone();
        };
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = e.clone();
                let p = ne[idx];
                ne[idx] = 0;
                (ne, c.times(&value.pow(p)))
            })
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms: normalize_terms(terms),
        }
    }

    fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    /// Coefficients with respect to variable index `v`, lowest degree first.
    fn coeffs_in(&self, v: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Exp, Rational)>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[v] as usize;
            ne[v] = 0;
            buckets[k].push((ne, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| MultiPoly {
                vars: self.vars.clone(),
                terms: normalize_terms(t),
            })
            .collect()
    }

    fn lc_in(&self, v: usize) -> MultiPoly {
        let d = self.degree_in(v);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[v] == d)
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[v] = 0;
                (ne, c.clone())
            })
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms: normalize_terms(terms),
        }
    }

    fn shift_in(&self, v: usize, by: u32) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[v] += by;
                (ne, c.clone())
            })
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        let (a, d) = self.aligned(d);
        if d.is_constant() {
            let inv = d.terms[0].1.inverse().ok()?;
            return Some(a.scale(&inv));
        }
        let (ld_e, ld_c) = d.terms[0].clone();
        let ld_inv = ld_c.inverse().ok()?;
        let mut r = a.terms.clone();
        let mut q: Vec<(Exp, Rational)> = Vec::new();
        while let Some((re, rc)) = r.first() {
            if re.iter().zip(&ld_e).any(|(x, y)| x < y) {
                return None;
            }
            let e: Exp = re.iter().zip(&ld_e).map(|(x, y)| x - y).collect();
            let c = rc.times(&ld_inv);
            let sub: Vec<(Exp, Rational)> = d
                .terms
                .iter()
                .map(|(de, dc)| {
                    (
                        de.iter().zip(&e).map(|(x, y)| x + y).collect(),
                        dc.times(&c),
                    )
                })
                .collect();
            r = merge(&r, &sub, true);
            q.push((e, c));
        }
        Some(MultiPoly {
            vars: a.vars.clone(),
            terms: q,
        })
    }

    /// Divides by the monomial with exponent vector `e` (which must divide every term).
    fn div_monomial(&self, e: &[u32]) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(x, c)| (x.iter().zip(e).map(|(a, b)| a - b).collect(), c.clone()))
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    fn min_exponents(&self) -> Exp {
        let mut m: Option<Exp> = None;
        for (e, _) in &self.terms {
            m = Some(match m {
                None => e.clone(),
                Some(mm) => mm.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.vars.len()])
    }

    /// Returns `(L, G)` where `L` is the lcm of coefficient denominators and
    /// `G` is the gcd of the numerators after scaling by `L`.
    pub(crate) fn integer_content(&self) -> (BigInt, BigInt) {
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            let v = c.numer() * (&l / c.denom());
            g = g.gcd(&v);
        }
        (l, g)
    }

    /// Primitive integer form: integer coefficients with gcd 1 and positive
    /// leading coefficient.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let (l, g) = self.integer_content();
        let mut f = Rational::from_big(l, g).expect("nonzero content");
        if self.terms[0].1.is_negative() {
            f = f.negate();
        }
        self.scale(&f)
    }

    fn content_in(&self, v: usize) -> MultiPoly {
        let mut g: Option<MultiPoly> = None;
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            let next = match g {
                None => c.primitive(),
                Some(prev) => gcd_same(&prev, &c),
            };
            if next.is_constant() {
                return next.one_like_or_self();
            }
            g = Some(next);
        }
        g.unwrap_or_else(|| self.one_like())
    }

    fn one_like_or_self(&self) -> MultiPoly {
        if self.is_constant() {
            self.one_like()
        } else {
            self.clone()
        }
    }

    /// Pseudo-remainder of `self` by `b` with respect to variable index `v`.
    fn prem(&self, b: &MultiPoly, v: usize) -> MultiPoly {
        let db = b.degree_in(v);
        let lb = b.lc_in(v);
        let mut r = self.clone();
        while !r.is_zero() {
            let dr = r.degree_in(v);
            if dr < db {
                break;
            }
            let lr = r.lc_in(v);
            r = lb.mul(&r).sub(&lr.mul(&b.shift_in(v, dr - db)));
        }
        r
    }

    /// Greatest common divisor in primitive integer form.
    pub fn gcd(&self, other: &MultiPoly) -> MultiPoly {
        let (a, b) = self.aligned(other);
        gcd_same(&a, &b)
    }
}

fn gcd_same(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return a.one_like();
    }
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let mg: Exp = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
    let a1 = a.div_monomial(&ma);
    let b1 = b.div_monomial(&mb);
    let core = gcd_core(&a1, &b1);
    core.mul(&a.monomial_like(mg, Rational::one())).primitive()
}

fn gcd_core(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() || b.is_constant() {
        return a.one_like();
    }
    let (small, large) = if a.terms.len() <= b.terms.len() {
        (a, b)
    } else {
        (b, a)
    };
    if large.div_exact(small).is_some() {
        return small.primitive();
    }
    let mask_a = a.var_mask();
    let mask_b = b.var_mask();
    if let Some(v) = (0..mask_a.len()).find(|&v| mask_a[v] && !mask_b[v]) {
        return gcd_same(&a.content_in(v), b);
    }
    if let Some(v) = (0..mask_b.len()).find(|&v| mask_b[v] && !mask_a[v]) {
        return gcd_same(a, &b.content_in(v));
    }
    let v = (0..mask_a.len())
        .rev()
        .find(|&v| mask_a[v])
        .expect("non-constant");
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let c = gcd_same(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = p.prem(&q, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            q = a.one_like();
            break;
        }
        p = q;
        let cr = r.content_in(v);
        q = r.div_exact(&cr).expect("content divides").primitive();
    }
    let qc = q.content_in(v);
    let q = q.div_exact(&qc).expect("content divides");
    c.mul(&q).primitive()
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        if same_vars(&self.vars, &other.vars) {
            return self.terms == other.terms;
        }
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], x)
                    }
                })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> MultiPoly {
        MultiPoly::var(n)
    }

    #[test]
    fn natural_order() {
        assert_eq!(natural_cmp("t1", "t10"), Ordering::Less);
        assert_eq!(natural_cmp("t3", "t10"), Ordering::Less);
        assert_eq!(natural_cmp("t", "t1"), Ordering::Less);
        assert_eq!(natural_cmp("t9", "x1"), Ordering::Less);
    }

    #[test]
    fn display_grlex() {
        let p = v("x1").mul(&v("x4")).sub(&v("x2").mul(&v("x3")));
        assert_eq!(p.to_string(), "x1*x4 - x2*x3");
        let q = v("x1")
            .pow(2)
            .scale(&Rational::new(-1, 2).unwrap())
            .add(&MultiPoly::constant(Rational::integer(3)));
        assert_eq!(q.to_string(), "-1/2*x1^2 + 3");
    }

    #[test]
    fn exact_division() {
        let a = v("x").add(&v("y"));
        let b = v("x").sub(&v("y"));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&v("x")).is_none());
    }

    #[test]
    fn gcd_basic() {
        let a = v("x").add(&v("y"));
        let b = v("x").sub(&v("y"));
        let c = v("z").mul(&v("x")).add(&MultiPoly::one());
        let g = a.mul(&c).gcd(&b.mul(&c));
        assert_eq!(g, c);
        let g2 = a.mul(&v("x")).gcd(&b.mul(&v("x").pow(2)));
        assert_eq!(g2, v("x"));
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn gcd_disjoint_variables() {
        let a = v("t1").add(&v("t2")).mul(&v("t3").add(&MultiPoly::one()));
        let b = v("t1").add(&v("t2")).mul(&v("t5"));
        assert_eq!(a.gcd(&b), v("t1").add(&v("t2")));
    }
}
