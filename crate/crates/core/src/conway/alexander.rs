use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::braid::BraidWord;
use super::laurent::Laurent;
use crate::exactalg::{series_renormalize, ExactMatrix, VarId};
use crate::kirchhoff::kirchhoff_poly;
use crate::Error;

/// Reduced Burau matrix of `sigma_g^{+-1}` on `k` strands, with `t = x^2`.
pub fn burau_generator(k: usize, g: i32) -> ExactMatrix<Laurent> {
    let n = k - 1;
    let mut m = ExactMatrix::identity(n);
    let c = g.unsigned_abs() as i64 - 1;
    let block: [[Laurent; 3]; 3] = if g > 0 {
        [
            [Laurent::monomial(1, 0), Laurent::monomial(1, 2), Laurent::zero()],
            [Laurent::zero(), Laurent::monomial(-1, 2), Laurent::zero()],
            [Laurent::zero(), Laurent::monomial(1, 0), Laurent::monomial(1, 0)],
        ]
    } else {
        [
            [Laurent::monomial(1, 0), Laurent::monomial(1, 0), Laurent::zero()],
            [Laurent::zero(), Laurent::monomial(-1, -2), Laurent::zero()],
            [Laurent::zero(), Laurent::monomial(1, -2), Laurent::monomial(1, 0)],
        ]
    };
    for (a, row) in block.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            let (i, j) = (c + a as i64 - 1, c + b as i64 - 1);
            if (0..n as i64).contains(&i) && (0..n as i64).contains(&j) {
                m.set(i as usize, j as usize, v.clone());
            }
        }
    }
    m
}

pub fn burau_matrix(w: &BraidWord) -> ExactMatrix<Laurent> {
    let k = w.strands();
    w.letters().iter().fold(ExactMatrix::identity(k - 1), |acc, &g| acc.mul(&burau_generator(k, g)))
}

/// Conway polynomial `sum c_i z^i` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConwayPoly {
    coeffs: Vec<BigInt>,
}

impl ConwayPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ConwayPoly { coeffs }
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index and value of the lowest nonzero coefficient.
    pub fn lowest(&self) -> Option<(usize, BigInt)> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| (i, self.coeffs[i].clone()))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        ConwayPoly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn times_z(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero()];
        c.extend(self.coeffs.iter().cloned());
        ConwayPoly { coeffs: c }
    }

    /// Rewrite a Laurent polynomial in `x` as a polynomial in
    /// `z = x - 1/x`, or `None` when that is impossible.
    pub fn from_laurent(f: &Laurent) -> Option<Self> {
        let mut rem = f.clone();
        let mut coeffs = Vec::new();
        while let Some(top) = rem.max_exp() {
            if top < 0 {
                return None;
            }
            let c = rem.coeff(top);
            let zpow = (0..top).fold(Laurent::monomial(1, 0), |acc, _| acc.mul(&Laurent::from_terms([(1, 1), (-1, -1)])));
            rem = rem.sub(&zpow.scale(&c));
            let i = top as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, BigInt::zero());
            }
            coeffs[i] += c;
        }
        Some(ConwayPoly::from_coeffs(coeffs))
    }
}

impl fmt::Display for ConwayPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let sign = if c.is_negative() { '-' } else { '+' };
            match i {
                0 => write!(f, "{sign}{}", c.abs())?,
                1 => write!(f, "{sign}{}*z", c.abs())?,
                _ => write!(f, "{sign}{}*z^{i}", c.abs())?,
            }
        }
        Ok(())
    }
}

/// Conway polynomial of the closure of `w`.
///
/// With `t = x^2`, `det(I - B)` for the reduced Burau matrix `B` equals
/// `(1 + t + ... + t^(k-1))` times the Alexander polynomial; multiplying by
/// the unit `(-1)^e x^-e` with `e = writhe - k + 1` gives `nabla(x - 1/x)`.
/// The unit was fixed on the unknot, the Hopf link and the trefoil and is
/// checked by the skein relation on random words.
///
/// ```
/// use conway_trees::conway::{conway, BraidWord};
/// let borromean: BraidWord = "k=3; 1 -2 1 -2 1 -2".parse().unwrap();
/// assert_eq!(conway(&borromean).unwrap().to_string(), "+1*z^4");
/// ```
pub fn conway(w: &BraidWord) -> Result<ConwayPoly, Error> {
    let k = w.strands();
    let b = burau_matrix(w);
    let det = ExactMatrix::<Laurent>::identity(k - 1).sub(&b).det_exact();
    let cyc = Laurent::from_terms((0..k as i64).map(|i| (2 * i, 1)));
    let alex = det.div_exact(&cyc).ok_or_else(|| Error::invalid("Burau determinant is not divisible by the cyclotomic factor"))?;
    let e = w.writhe() - k as i64 + 1;
    let unit = Laurent::monomial(if e.rem_euclid(2) == 0 { 1 } else { -1 }, -e);
    ConwayPoly::from_laurent(&alex.mul(&unit)).ok_or_else(|| Error::invalid(format!("normalized Burau determinant of {w} is not a polynomial in z")))
}

/// `nabla(L+) - nabla(L-) = z nabla(L0)` at letter `pos`.
pub fn skein_check(w: &BraidWord, pos: usize) -> Result<bool, Error> {
    let g = *w.letters().get(pos).ok_or_else(|| Error::invalid(format!("position {pos} is past the end of the word")))?;
    let plus = conway(&w.with_letter(pos, Some(g.abs()))?)?;
    let minus = conway(&w.with_letter(pos, Some(-g.abs()))?)?;
    let zero = conway(&w.with_letter(pos, None)?)?;
    Ok(plus.sub(&minus) == zero.times_z())
}

/// Outcome of [`hoste_check`].
#[derive(Clone, Debug)]
pub struct HosteReport {
    pub components: usize,
    pub nabla: ConwayPoly,
    pub kirchhoff_value: BigInt,
    pub ok: bool,
}

/// `c_i = 0` for `i <= m - 2`, and `c_(m-1)` equals the Kirchhoff
/// polynomial at the linking numbers.
pub fn hoste_check(w: &BraidWord) -> Result<HosteReport, Error> {
    let m = w.closure_components().len();
    let nabla = conway(w)?;
    let l = w.linking_matrix();
    // A single vertex has exactly one (empty) spanning tree.
    let value = if m == 1 {
        BigInt::from(1)
    } else {
        kirchhoff_poly(m as u32)?.eval(|v| match v {
            VarId::X(i, j) => l.get(i as usize, j as usize).clone(),
            VarId::Y(..) => BigInt::zero(),
        })
    };
    let low_vanish = (0..m.saturating_sub(1)).all(|i| nabla.coeff(i).is_zero());
    let ok = low_vanish && nabla.coeff(m - 1) == value;
    Ok(HosteReport { components: m, nabla, kirchhoff_value: value, ok })
}

/// `c_i = 0` whenever `i` has the parity of the number of components, and
/// the renormalized series keeps the lowest nonzero coefficient.
pub fn parity_and_renorm_check(w: &BraidWord, order: usize) -> Result<bool, Error> {
    let m = w.closure_components().len();
    let nabla = conway(w)?;
    let parity = nabla.coeffs().iter().enumerate().all(|(i, c)| i % 2 != m % 2 || c.is_zero());
    let q: Vec<BigRational> = nabla.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let order = order.max(q.len());
    let s = series_renormalize(&q, order);
    let want = nabla.lowest().map(|(i, c)| (i, BigRational::from_integer(c)));
    Ok(parity && s.lowest() == want)
}

/// Outcome of [`skein_suite`].
#[derive(Clone, Debug, Default)]
pub struct SkeinReport {
    pub words: usize,
    pub failures: Vec<String>,
}

impl SkeinReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check the skein relation at a random letter of `count` random words with
/// 2 to `max_strands` strands and 1 to `max_len` letters.
pub fn skein_suite(count: usize, seed: u64, max_strands: usize, max_len: usize) -> Result<SkeinReport, Error> {
    if max_strands < 2 || max_len < 1 {
        return Err(Error::invalid("need at least 2 strands and 1 letter"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SkeinReport { words: count, ..Default::default() };
    for _ in 0..count {
        let k = rng.gen_range(2..=max_strands);
        let len = rng.gen_range(1..=max_len);
        let w = BraidWord::random(&mut rng, k, len);
        let pos = rng.gen_range(0..len);
        if !skein_check(&w, pos)? {
            rep.failures.push(format!("{w} at letter {pos}"));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> String {
        conway(&s.parse().unwrap()).unwrap().to_string()
    }

    #[test]
    fn fixtures() {
        assert_eq!(c("k=1;"), "+1");
        assert_eq!(c("k=2;"), "0");
        assert_eq!(c("k=2; 1 1"), "+1*z");
        assert_eq!(c("k=2; 1 1 1"), "+1 +1*z^2");
        assert_eq!(c("k=3; 1 -2 1 -2 1 -2"), "+1*z^4");
        assert_eq!(c("k=2; 1 -1"), "0");
        assert_eq!(c("k=3; 1 -2 1 -2"), "+1 -1*z^2");
    }

    #[test]
    fn burau_is_multiplicative_and_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let k = rng.gen_range(2..=4);
            let (la, lb) = (rng.gen_range(0..6), rng.gen_range(0..6));
            let a = BraidWord::random(&mut rng, k, la);
            let b = BraidWord::random(&mut rng, k, lb);
            assert_eq!(burau_matrix(&a.concat(&b).unwrap()), burau_matrix(&a).mul(&burau_matrix(&b)));
            assert_eq!(burau_matrix(&a.concat(&a.inverse()).unwrap()), ExactMatrix::identity(k - 1));
        }
    }

    #[test]
    fn skein_and_markov_on_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..40 {
            let k = rng.gen_range(2..=4);
            let len = rng.gen_range(1..=8);
            let w = BraidWord::random(&mut rng, k, len);
            let pos = rng.gen_range(0..w.letters().len());
            assert!(skein_check(&w, pos).unwrap(), "{w} at {pos}");
            let g = BraidWord::random(&mut rng, k, 2);
            let conj = g.concat(&w).unwrap().concat(&g.inverse()).unwrap();
            assert_eq!(conway(&conj).unwrap(), conway(&w).unwrap());
            assert_eq!(conway(&w.stabilize(rng.gen_bool(0.5))).unwrap(), conway(&w).unwrap());
            assert!(hoste_check(&w).unwrap().ok, "{w}");
            assert!(parity_and_renorm_check(&w, 8).unwrap(), "{w}");
        }
    }

    #[test]
    fn skein_batch() {
        let rep = skein_suite(30, 1, 4, 10).unwrap();
        assert!(rep.ok() && rep.words == 30, "{:?}", rep.failures);
        assert!(skein_suite(1, 1, 1, 3).is_err());
    }
}
