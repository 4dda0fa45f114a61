use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Truncated power series `sum c_k z^k`, `k = 0..=order`, with exact
/// rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Degree and value of the lowest nonzero coefficient.
    pub fn lowest(&self) -> Option<(usize, BigRational)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self, Error> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::invalid("series with zero constant term has no inverse"));
        }
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = c0.recip();
        for k in 1..=n {
            let s: BigRational = (1..=k).map(|i| &self.coeffs[i] * &out[k - i]).sum();
            out[k] = -s / c0;
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// `f(inner)` for a polynomial `f` given by coefficients, where `inner`
    /// has zero constant term.
    pub fn compose_poly(f: &[BigRational], inner: &Self) -> Self {
        let n = inner.order();
        let mut acc = PowerSeries::new(vec![], n);
        for c in f.iter().rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] += c;
        }
        acc
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let sign = if c.is_negative() { '-' } else { '+' };
                match k {
                    0 => format!("{sign}{}", c.abs()),
                    1 => format!("{sign}{}*z", c.abs()),
                    _ => format!("{sign}{}*z^{k}", c.abs()),
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", terms.join(" "))?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// Parse a polynomial in `z` written as space-separated terms `c`, `z`,
/// `zK`, `cz` or `czK` with rational `c`; `"1 z2"` is `1 + z^2` and
/// `"-1/2z3 2z"` is `2z - z^3/2`. Returns coefficients by degree.
pub fn parse_z_poly(text: &str) -> Result<Vec<BigRational>, Error> {
    let mut coeffs: Vec<BigRational> = Vec::new();
    for tok in text.split_whitespace() {
        let bad = || Error::invalid(format!("bad term `{tok}` (expected c, zK or czK)"));
        let (c, k) = match tok.split_once('z') {
            None => (tok.parse::<BigRational>().map_err(|_| bad())?, 0),
            Some((c, k)) => {
                let c = match c {
                    "" | "+" => BigRational::one(),
                    "-" => -BigRational::one(),
                    _ => c.parse().map_err(|_| bad())?,
                };
                let k: usize = if k.is_empty() { 1 } else { k.parse().map_err(|_| bad())? };
                (c, k)
            }
        };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigRational::zero());
        }
        coeffs[k] += c;
    }
    if coeffs.is_empty() {
        return Err(Error::invalid("empty polynomial"));
    }
    Ok(coeffs)
}

/// `e^{z/2} - e^{-z/2}` truncated at `order`.
pub fn two_sinh_half(order: usize) -> PowerSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let mut fact = BigInt::one();
    for (k, c) in coeffs.iter_mut().enumerate() {
        if k > 0 {
            fact *= k;
        }
        if k % 2 == 1 {
            let denom = &fact * (BigInt::one() << (k - 1));
            *c = BigRational::new(BigInt::one(), denom);
        }
    }
    PowerSeries { coeffs }
}

/// `z / (e^{z/2} - e^{-z/2}) * nabla(e^{z/2} - e^{-z/2})` to order `order`.
pub fn series_renormalize(nabla: &[BigRational], order: usize) -> PowerSeries {
    let s = two_sinh_half(order + 1);
    let s_over_z = PowerSeries::new(s.coeffs[1..].to_vec(), order);
    let prefactor = s_over_z.inverse().expect("s/z has constant term 1");
    let s = PowerSeries::new(s.coeffs[..=order].to_vec(), order);
    prefactor.mul(&PowerSeries::compose_poly(nabla, &s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_poly_syntax() {
        assert_eq!(parse_z_poly("1 z2").unwrap(), vec![q(1, 1), q(0, 1), q(1, 1)]);
        assert_eq!(parse_z_poly("-1/2z3 2z").unwrap(), vec![q(0, 1), q(2, 1), q(0, 1), q(-1, 2)]);
        assert_eq!(parse_z_poly("-z 3").unwrap(), vec![q(3, 1), q(-1, 1)]);
        assert!(parse_z_poly("").is_err());
        assert!(parse_z_poly("1 y2").is_err());
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn renormalized_one() {
        let r = series_renormalize(&[q(1, 1)], 6);
        assert_eq!(r.coeffs(), &[q(1, 1), q(0, 1), q(-1, 24), q(0, 1), q(7, 5760), q(0, 1), q(-31, 967680)]);
    }

    #[test]
    fn renormalized_z_is_z() {
        let r = series_renormalize(&[q(0, 1), q(1, 1)], 8);
        assert_eq!(r, PowerSeries::from_ints(&[0, 1], 8));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = PowerSeries::from_ints(&[2, 1, 0, 5], 5);
        let one = a.mul(&a.inverse().unwrap());
        assert_eq!(one, PowerSeries::from_ints(&[1], 5));
    }
}
