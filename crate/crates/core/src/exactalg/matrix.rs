use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Coeff, Poly};
use crate::Error;

/// Commutative ring with exact division where it exists.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, d: &Self) -> Option<Self>;
}

macro_rules! scalar_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn zero() -> Self {
                <$t as Zero>::zero()
            }
            fn one() -> Self {
                <$t as One>::one()
            }
            fn is_zero(&self) -> bool {
                Zero::is_zero(self)
            }
            fn add(&self, o: &Self) -> Self {
                self + o
            }
            fn sub(&self, o: &Self) -> Self {
                self - o
            }
            fn mul(&self, o: &Self) -> Self {
                self * o
            }
            fn neg(&self) -> Self {
                -self
            }
            fn exact_div(&self, d: &Self) -> Option<Self> {
                self.exact_quotient(d)
            }
        }
    };
}

scalar_ring!(BigInt);
scalar_ring!(BigRational);

impl<C: Coeff> Ring for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        Poly::exact_div(self, d)
    }
}

/// Dimension up to which determinants use cofactor expansion.
pub const COFACTOR_MAX_DIM: usize = 6;

/// Square matrix over an exact ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<R> {
    n: usize,
    data: Vec<R>,
}

impl<R: Ring> ExactMatrix<R> {
    pub fn zeros(n: usize) -> Self {
        ExactMatrix { n, data: vec![R::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        ExactMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, Error> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix rows must form a square"));
        }
        Ok(ExactMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_fn(self.n, |i, j| {
            (0..self.n).fold(R::zero(), |acc, k| acc.add(&self.get(i, k).mul(o.get(k, j))))
        })
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j).sub(o.get(i, j)))
    }

    /// Delete row and column `p` (0-based).
    pub fn minor(&self, p: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != p).collect();
        Self::from_fn(keep.len(), |i, j| self.get(keep[i], keep[j]).clone())
    }

    pub fn is_skew(&self) -> bool {
        (0..self.n).all(|i| {
            self.get(i, i).is_zero() && (0..i).all(|j| *self.get(i, j) == self.get(j, i).neg())
        })
    }

    /// Determinant: cofactor expansion (memoised over column subsets) for
    /// small dimensions, fraction-free Bareiss elimination above that.
    pub fn det_exact(&self) -> R {
        if self.n <= COFACTOR_MAX_DIM {
            self.det_cofactor()
        } else {
            self.det_bareiss().expect("Bareiss division is exact over an integral domain")
        }
    }

    pub fn det_cofactor(&self) -> R {
        let n = self.n;
        if n == 0 {
            return R::one();
        }
        let mut dp: Vec<Option<R>> = vec![None; 1 << n];
        dp[0] = Some(R::one());
        for mask in 0usize..(1 << n) {
            let Some(cur) = dp[mask].take() else { continue };
            let row = mask.count_ones() as usize;
            if row == n {
                dp[mask] = Some(cur);
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) != 0 || self.get(row, j).is_zero() {
                    continue;
                }
                let above = (mask >> (j + 1)).count_ones();
                let mut t = cur.mul(self.get(row, j));
                if above % 2 == 1 {
                    t = t.neg();
                }
                let next = mask | (1 << j);
                dp[next] = Some(match dp[next].take() {
                    Some(v) => v.add(&t),
                    None => t,
                });
            }
        }
        dp[(1 << n) - 1].take().unwrap_or_else(R::zero)
    }

    pub fn det_bareiss(&self) -> Option<R> {
        let n = self.n;
        if n == 0 {
            return Some(R::one());
        }
        let mut a = self.data.clone();
        let mut sign = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return Some(R::zero());
                };
                for c in 0..n {
                    a.swap(k * n + c, r * n + c);
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i * n + j].mul(&a[k * n + k]).sub(&a[i * n + k].mul(&a[k * n + j]));
                    a[i * n + j] = num.exact_div(&prev)?;
                }
            }
            prev = a[k * n + k].clone();
        }
        let d = a[n * n - 1].clone();
        Some(if sign { d.neg() } else { d })
    }

    /// Pfaffian by expansion along the first row.
    pub fn pfaffian(&self) -> Result<R, Error> {
        if self.n % 2 == 1 {
            return Err(Error::OddDimension(self.n));
        }
        if !self.is_skew() {
            return Err(Error::NotSkew);
        }
        let idx: Vec<usize> = (0..self.n).collect();
        Ok(self.pf_rec(&idx))
    }

    fn pf_rec(&self, idx: &[usize]) -> R {
        if idx.is_empty() {
            return R::one();
        }
        let mut total = R::zero();
        for k in 1..idx.len() {
            let a = self.get(idx[0], idx[k]);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != idx[k]).collect();
            let t = a.mul(&self.pf_rec(&rest));
            total = if k % 2 == 1 { total.add(&t) } else { total.sub(&t) };
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Polynomial;

    fn int_matrix(rows: &[&[i64]]) -> ExactMatrix<BigInt> {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(int_matrix(&[&[2, 1], &[1, 3]]).det_exact(), BigInt::from(5));
        let m = int_matrix(&[&[0, 2, 1], &[1, 0, 4], &[3, 1, 0]]);
        assert_eq!(m.det_cofactor(), BigInt::from(25));
        assert_eq!(m.det_bareiss(), Some(BigInt::from(25)));
    }

    #[test]
    fn pfaffian_squares_to_det() {
        let m = int_matrix(&[&[0, 1, 2, 3], &[-1, 0, 4, 5], &[-2, -4, 0, 6], &[-3, -5, -6, 0]]);
        let pf = m.pfaffian().unwrap();
        assert_eq!(pf, BigInt::from(1 * 6 - 2 * 5 + 3 * 4));
        assert_eq!(&pf * &pf, m.det_exact());
    }

    #[test]
    fn pfaffian_rejects_bad_input() {
        assert!(matches!(int_matrix(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]).pfaffian(), Err(Error::OddDimension(3))));
        assert!(matches!(int_matrix(&[&[0, 1], &[1, 0]]).pfaffian(), Err(Error::NotSkew)));
    }

    #[test]
    fn symbolic_bareiss_matches_cofactor() {
        let v = |i, j, k| Polynomial::y(i, j, k);
        let m = ExactMatrix::from_fn(4, |i, j| {
            let (i, j) = (i as u32 + 1, j as u32 + 1);
            if i == j {
                v(1, 2, 3) + Polynomial::constant(BigInt::from(i))
            } else {
                v(i, j, 5) + v(i.min(j), 6, 7)
            }
        });
        assert_eq!(m.det_bareiss().unwrap(), m.det_cofactor());
    }
}
