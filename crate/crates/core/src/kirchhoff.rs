//! Spanning trees of complete graphs, the Kirchhoff polynomial `D_m`, and
//! the Matrix-Tree theorem for the Laplacian of a linking matrix.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::exactalg::{self, ExactMatrix, Monomial, Polynomial, VarId};
use crate::Error;

/// A set of edges `(i, j)` with `1 <= i < j <= m` on the vertex set `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSet {
    m: u32,
    edges: BTreeSet<(u32, u32)>,
}

impl EdgeSet {
    pub fn new(m: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, Error> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b || a == 0 || b == 0 || a > m || b > m {
                return Err(Error::invalid(format!("edge ({a},{b}) is not an edge of K_{m}")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(EdgeSet { m, edges: set })
    }

    pub fn vertices(&self) -> u32 {
        self.m
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_spanning_tree(&self) -> bool {
        if self.edges.len() + 1 != self.m as usize {
            return false;
        }
        let mut uf = UnionFind::new(self.m as usize + 1);
        self.edges.iter().all(|&(a, b)| uf.union(a as usize, b as usize))
    }

    /// The monomial `prod x[i,j]` over the edges.
    pub fn monomial(&self) -> Monomial {
        Monomial::from_vars(self.edges.iter().map(|&(a, b)| VarId::X(a, b)).collect())
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Merge the classes of `a` and `b`; false if they were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

fn check_m(m: u32) -> Result<(), Error> {
    if m < 2 {
        return Err(Error::invalid(format!("need m >= 2, got {m}")));
    }
    Ok(())
}

/// All spanning trees of `K_m`, decoded from Prüfer sequences.
pub fn spanning_trees_complete(m: u32) -> Result<Vec<EdgeSet>, Error> {
    check_m(m)?;
    let len = m as usize - 2;
    let total = (m as usize).pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut seq = vec![1u32; len];
    for _ in 0..total {
        out.push(prufer_decode(m, &seq)?);
        for s in seq.iter_mut().rev() {
            if *s < m {
                *s += 1;
                break;
            }
            *s = 1;
        }
    }
    Ok(out)
}

/// Decode a Prüfer sequence with entries in `1..=m`.
pub fn prufer_decode(m: u32, seq: &[u32]) -> Result<EdgeSet, Error> {
    if seq.len() + 2 != m as usize {
        return Err(Error::invalid("Prüfer sequence must have length m - 2"));
    }
    let mut degree = vec![1u32; m as usize + 1];
    for &s in seq {
        degree[s as usize] += 1;
    }
    let mut edges = Vec::with_capacity(m as usize - 1);
    for &s in seq {
        let leaf = (1..=m).find(|&v| degree[v as usize] == 1).expect("a leaf always exists");
        edges.push((leaf, s));
        degree[leaf as usize] -= 1;
        degree[s as usize] -= 1;
    }
    let rest: Vec<u32> = (1..=m).filter(|&v| degree[v as usize] == 1).collect();
    edges.push((rest[0], rest[1]));
    EdgeSet::new(m, edges)
}

/// Spanning trees of `K_m` by filtering all `(m-1)`-subsets of edges.
pub fn spanning_trees_brute(m: u32) -> Result<Vec<EdgeSet>, Error> {
    check_m(m)?;
    let all: Vec<(u32, u32)> = (1..=m).flat_map(|a| (a + 1..=m).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let k = m as usize - 1;
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        let es = EdgeSet::new(m, pick.iter().map(|&i| all[i]))?;
        if es.is_spanning_tree() {
            out.push(es);
        }
        let Some(pos) = (0..k).rev().find(|&i| pick[i] < all.len() - k + i) else { break };
        pick[pos] += 1;
        for i in pos + 1..k {
            pick[i] = pick[i - 1] + 1;
        }
    }
    Ok(out)
}

/// `D_m = sum over spanning trees T of K_m of prod_{(i,j) in T} x[i,j]`.
pub fn kirchhoff_poly(m: u32) -> Result<Polynomial, Error> {
    let mut p = Polynomial::zero();
    for t in spanning_trees_complete(m)? {
        p.add_term(t.monomial(), BigInt::from(1));
    }
    Ok(p)
}

/// Symmetric matrix of linking numbers with zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkingMatrix<R> {
    entries: ExactMatrix<R>,
}

impl<R: exactalg::Ring> LinkingMatrix<R> {
    pub fn from_matrix(entries: ExactMatrix<R>) -> Result<Self, Error> {
        let n = entries.dim();
        for i in 0..n {
            if !entries.get(i, i).is_zero() {
                return Err(Error::invalid("linking matrix must have zero diagonal"));
            }
            for j in 0..i {
                if entries.get(i, j) != entries.get(j, i) {
                    return Err(Error::invalid("linking matrix must be symmetric"));
                }
            }
        }
        Ok(LinkingMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.dim()
    }

    /// Entry for components `i`, `j` (1-based).
    pub fn get(&self, i: usize, j: usize) -> &R {
        self.entries.get(i - 1, j - 1)
    }
}

impl LinkingMatrix<Polynomial> {
    /// The generic linking matrix with `l_ij = x[i,j]`.
    pub fn symbolic(m: u32) -> Self {
        let entries = ExactMatrix::from_fn(m as usize, |i, j| {
            if i == j {
                Polynomial::zero()
            } else {
                Polynomial::var(VarId::x(i as u32 + 1, j as u32 + 1).expect("distinct"))
            }
        });
        LinkingMatrix { entries }
    }
}

impl LinkingMatrix<BigInt> {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, Error> {
        let rows = rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        Self::from_matrix(ExactMatrix::from_rows(rows)?)
    }
}

/// Laplacian: `-l_ij` off the diagonal, `sum_{k != i} l_ik` on it.
pub fn laplacian_linking<R: exactalg::Ring>(l: &LinkingMatrix<R>) -> ExactMatrix<R> {
    let n = l.size();
    ExactMatrix::from_fn(n, |i, j| {
        if i == j {
            (0..n).filter(|&k| k != i).fold(R::zero(), |acc, k| acc.add(l.entries.get(i, k)))
        } else {
            l.entries.get(i, j).neg()
        }
    })
}

/// Determinant after deleting row and column `p` (1-based).
pub fn reduced_det<R: exactalg::Ring>(lap: &ExactMatrix<R>, p: usize) -> Result<R, Error> {
    if p == 0 || p > lap.dim() {
        return Err(Error::invalid(format!("index {p} out of range 1..={}", lap.dim())));
    }
    Ok(lap.minor(p - 1).det_exact())
}

/// Check `D_m = reduced_det(Laplacian, p)` symbolically for every `p`.
pub fn mtt_check(m: u32) -> Result<bool, Error> {
    let d = kirchhoff_poly(m)?;
    let lap = laplacian_linking(&LinkingMatrix::symbolic(m));
    for p in 1..=m as usize {
        if reduced_det(&lap, p)? != d {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_counts() {
        for (m, n) in [(2, 1), (3, 3), (4, 16), (5, 125), (6, 1296)] {
            assert_eq!(spanning_trees_complete(m).unwrap().len(), n);
        }
    }

    #[test]
    fn prufer_agrees_with_brute_force() {
        for m in 2..=5 {
            let mut a = spanning_trees_complete(m).unwrap();
            let mut b = spanning_trees_brute(m).unwrap();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn small_kirchhoff_polys() {
        assert_eq!(kirchhoff_poly(2).unwrap().to_string(), "+1*x[1,2]");
        assert_eq!(kirchhoff_poly(3).unwrap().to_string(), "+1*x[1,2]*x[1,3] +1*x[1,2]*x[2,3] +1*x[1,3]*x[2,3]");
        assert!(kirchhoff_poly(1).is_err());
    }

    #[test]
    fn matrix_tree_small() {
        for m in 2..=4 {
            assert!(mtt_check(m).unwrap());
        }
    }

    #[test]
    fn numeric_two_components() {
        let l = LinkingMatrix::from_rows(vec![vec![0, 3], vec![3, 0]]).unwrap();
        assert_eq!(reduced_det(&laplacian_linking(&l), 2).unwrap(), BigInt::from(3));
    }
}
