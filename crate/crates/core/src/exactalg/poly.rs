use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};

use super::var::{y_canon, VarId};
use crate::Error;

/// Coefficient ring for [`Poly`]: exact integers or exact rationals.
pub trait Coeff: Clone + PartialEq + Eq + Signed + fmt::Display + fmt::Debug {
    /// `self / d` when the quotient exists in the ring.
    fn exact_quotient(&self, d: &Self) -> Option<Self>;
}

impl Coeff for BigInt {
    fn exact_quotient(&self, d: &Self) -> Option<Self> {
        if d.is_zero() || !(self % d).is_zero() {
            None
        } else {
            Some(self / d)
        }
    }
}

impl Coeff for BigRational {
    fn exact_quotient(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            None
        } else {
            Some(self / d)
        }
    }
}

/// A product of variables, stored as a sorted list with repetition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<VarId>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_vars(mut vars: Vec<VarId>) -> Self {
        vars.sort();
        Monomial(vars)
    }

    pub fn vars(&self) -> &[VarId] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn count(&self, v: VarId) -> usize {
        self.0.iter().filter(|w| **w == v).count()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() && b < other.0.len() {
            if self.0[a] <= other.0[b] {
                out.push(self.0[a]);
                a += 1;
            } else {
                out.push(other.0[b]);
                b += 1;
            }
        }
        out.extend_from_slice(&self.0[a..]);
        out.extend_from_slice(&other.0[b..]);
        Monomial(out)
    }

    /// `self / d` if `d` divides `self`.
    pub fn div(&self, d: &Monomial) -> Option<Monomial> {
        let mut out = Vec::new();
        let mut b = 0;
        for v in &self.0 {
            if b < d.0.len() && d.0[b] == *v {
                b += 1;
            } else {
                if b < d.0.len() && d.0[b] < *v {
                    return None;
                }
                out.push(*v);
            }
        }
        (b == d.0.len()).then_some(Monomial(out))
    }

    /// Exponent vector as `(variable, exponent)` pairs in increasing order.
    pub fn exponents(&self) -> Vec<(VarId, u32)> {
        let mut out: Vec<(VarId, u32)> = Vec::new();
        for v in &self.0 {
            match out.last_mut() {
                Some((w, e)) if w == v => *e += 1,
                _ => out.push((*v, 1)),
            }
        }
        out
    }

    /// Lexicographic monomial order with the smallest variable most significant.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (self.exponents(), other.exponents());
        for (x, y) in a.iter().zip(&b) {
            if x.0 != y.0 {
                return if x.0 < y.0 { Ordering::Greater } else { Ordering::Less };
            }
            if x.1 != y.1 {
                return x.1.cmp(&y.1);
            }
        }
        a.len().cmp(&b.len())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

pub type Polynomial = Poly<BigInt>;
pub type RationalPolynomial = Poly<BigRational>;

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: VarId) -> Self {
        Self::term(Monomial(vec![v]), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// Signed canonical `y[i,j,k]`, zero when an index repeats.
    pub fn y(i: u32, j: u32, k: u32) -> Self {
        match y_canon(i, j, k) {
            None => Self::zero(),
            Some((v, s)) => Self::term(Monomial(vec![v]), C::from_i8(s)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old = old.clone() + c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.keys().flat_map(|m| m.0.iter().copied()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Evaluate at a point given by `value`.
    pub fn eval(&self, mut value: impl FnMut(VarId) -> C) -> C {
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in &m.0 {
                t = t * value(*v);
            }
            total = total + t;
        }
        total
    }

    /// Replace every variable by a polynomial.
    pub fn substitute(&self, mut sub: impl FnMut(VarId) -> Poly<C>) -> Self {
        let mut cache: BTreeMap<VarId, Poly<C>> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for v in &m.0 {
                let s = cache.entry(*v).or_insert_with(|| sub(*v));
                t = &t * s;
            }
            out = out + t;
        }
        out
    }

    pub fn partial_derivative(&self, v: VarId) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let k = m.count(v);
            if k == 0 {
                continue;
            }
            let rest = m.div(&Monomial(vec![v])).expect("variable present");
            out.add_term(rest, c.clone() * C::from_usize(k));
        }
        out
    }

    /// Set every `Y` variable containing index `p` to zero.
    pub fn kill_index(&self, p: u32) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.0.iter().any(|v| matches!(v, VarId::Y(..)) && v.contains(p)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Multilinear change of basis on `Y` variables: each index `a` is
    /// replaced by the formal combination `sub[a]` (identity when absent), and
    /// `y[a,b,c]` is expanded as an alternating product.
    pub fn merge_basis(&self, sub: &BTreeMap<u32, Vec<(u32, C)>>) -> Self {
        let image = |a: u32| -> Vec<(u32, C)> { sub.get(&a).cloned().unwrap_or_else(|| vec![(a, C::one())]) };
        self.substitute(|v| match v {
            VarId::X(..) => Self::var(v),
            VarId::Y(a, b, c) => {
                let mut out = Self::zero();
                for (i, ci) in image(a) {
                    for (j, cj) in image(b) {
                        for (k, ck) in image(c) {
                            let w = ci.clone() * cj.clone() * ck.clone();
                            out = out + Self::y(i, j, k).scale(&w);
                        }
                    }
                }
                out
            }
        })
    }

    /// Apply a relabelling of indices to every variable.
    pub fn relabel(&self, map: impl Fn(u32) -> u32) -> Self {
        self.substitute(|v| match v {
            VarId::X(i, j) => Self::var(VarId::x(map(i), map(j)).expect("relabelling keeps pairs distinct")),
            VarId::Y(i, j, k) => Self::y(map(i), map(j), map(k)),
        })
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    /// Exact division, `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(&dm)?;
            let c = rc.exact_quotient(&dc)?;
            let t = Self::term(m, c);
            rem = rem - &t * d;
            q = q + t;
        }
        Some(q)
    }
}

trait FromSmall {
    fn from_i8(s: i8) -> Self;
    fn from_usize(k: usize) -> Self;
}

impl<C: Coeff> FromSmall for C {
    fn from_i8(s: i8) -> Self {
        match s {
            1 => C::one(),
            -1 => -C::one(),
            _ => unreachable!("sign must be +-1"),
        }
    }
    fn from_usize(k: usize) -> Self {
        (0..k).fold(C::zero(), |a, _| a + C::one())
    }
}

impl<C: Coeff> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(mut self, rhs: Poly<C>) -> Poly<C> {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        self.clone() + rhs.clone()
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -self.clone()
    }
}

impl<C: Coeff> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        self + (-rhs)
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self.clone() - rhs.clone()
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, "{sign}{}", c.abs())?;
            for v in &m.0 {
                write!(f, "*{v}")?;
            }
        }
        Ok(())
    }
}

fn parse_var(s: &str) -> Result<VarId, Error> {
    let bad = || Error::invalid(format!("bad variable `{s}`"));
    let (kind, rest) = s.split_at(1);
    let inner = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
    let idx: Vec<u32> = inner.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    match (kind, idx.as_slice()) {
        ("x", [i, j]) if i < j => VarId::x(*i, *j),
        ("y", [i, j, k]) if i < j && j < k && *i > 0 => Ok(VarId::Y(*i, *j, *k)),
        _ => Err(bad()),
    }
}

impl<C: Coeff + Num> FromStr for Poly<C> {
    type Err = Error;

    /// Parses the canonical text form, e.g. `+1*y[1,2,3]*y[1,4,5] -2*x[1,2]`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let mut out = Self::zero();
        if s == "0" {
            return Ok(out);
        }
        for tok in s.split_whitespace() {
            let (neg, body) = match tok.as_bytes().first() {
                Some(b'+') => (false, &tok[1..]),
                Some(b'-') => (true, &tok[1..]),
                _ => return Err(Error::invalid(format!("term `{tok}` lacks an explicit sign"))),
            };
            let mut parts = body.split('*');
            let cs = parts.next().unwrap_or("");
            let c = C::from_str_radix(cs, 10).map_err(|_| Error::invalid(format!("bad coefficient `{cs}`")))?;
            let vars = parts.map(parse_var).collect::<Result<Vec<_>, _>>()?;
            out.add_term(Monomial::from_vars(vars), if neg { -c } else { c });
        }
        Ok(out)
    }
}
