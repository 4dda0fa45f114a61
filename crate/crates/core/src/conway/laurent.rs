use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero as _};

use crate::exactalg;

/// Integer Laurent polynomial in one variable `x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent {
    terms: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut l = Laurent::default();
        l.add_term(e, c.into());
        l
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut l = Laurent::default();
        for (e, c) in terms {
            l.add_term(e, c.into());
        }
        l
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `x^e`.
    pub fn shift(&self, e: i64) -> Self {
        Laurent { terms: self.terms.iter().map(|(&k, c)| (k + e, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Laurent::default();
        for (&e, v) in &self.terms {
            out.add_term(e, v * c);
        }
        out
    }

    /// Exact quotient, if `d` divides `self` in the Laurent ring.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        let dmin = d.min_exp()?;
        let dmax = d.max_exp()?;
        let lead = d.coeff(dmax);
        let mut rem = self.clone();
        let mut q = Laurent::default();
        while let Some(top) = rem.max_exp() {
            let rmin = rem.min_exp().expect("nonzero");
            if top - rmin < dmax - dmin {
                return None;
            }
            let (c, r) = rem.coeff(top).div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let step = Laurent::monomial(c, top - dmax);
            rem = rem.sub(&step.mul(d));
            q = q.add(&step);
        }
        Some(q)
    }
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(BigInt::one(), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &o.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &o.terms {
            out.add_term(e, -c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Laurent::default();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &o.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl exactalg::Ring for Laurent {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn one() -> Self {
        Laurent::one()
    }
    fn is_zero(&self) -> bool {
        Laurent::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Laurent::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Laurent::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Laurent::mul(self, o)
    }
    fn neg(&self) -> Self {
        Laurent::neg(self)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.div_exact(d)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            match e {
                0 => write!(f, "{sign}{}", c.abs())?,
                _ => write!(f, "{sign}{}*x^{e}", c.abs())?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division() {
        let a = Laurent::from_terms([(0, 1), (4, -1)]);
        let b = Laurent::from_terms([(0, 1), (2, 1)]);
        assert_eq!(a.div_exact(&b), Some(Laurent::from_terms([(0, 1), (2, -1)])));
        assert_eq!(Laurent::from_terms([(0, 1), (1, 1)]).div_exact(&b), None);
        assert_eq!(Laurent::from_terms([(-3, 2)]).div_exact(&Laurent::from_terms([(1, 2)])), Some(Laurent::monomial(1, -4)));
    }

    #[test]
    fn display() {
        assert_eq!(Laurent::from_terms([(-1, -1), (1, 1)]).to_string(), "+1*x^1 -1*x^-1");
        assert_eq!(Laurent::default().to_string(), "0");
    }
}
