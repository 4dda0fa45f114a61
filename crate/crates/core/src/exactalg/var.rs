use std::fmt;

use crate::Error;

/// A polynomial variable.
///
/// `X(i, j)` with `i < j` is a symmetric pair variable, `Y(i, j, k)` with
/// `i < j < k` is the canonical representative of an antisymmetric triple.
/// The derived order (X before Y, then index tuple) is the canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    X(u32, u32),
    Y(u32, u32, u32),
}

impl VarId {
    /// Canonical pair variable; the order of `i` and `j` is irrelevant.
    pub fn x(i: u32, j: u32) -> Result<VarId, Error> {
        if i == 0 || j == 0 || i == j {
            return Err(Error::invalid(format!("x[{i},{j}] needs distinct positive indices")));
        }
        Ok(VarId::X(i.min(j), i.max(j)))
    }

    /// Canonical triple variable, panicking on repeated or zero indices.
    /// Use [`y_canon`] to handle those cases.
    pub fn y(i: u32, j: u32, k: u32) -> VarId {
        match y_canon(i, j, k) {
            Some((v, 1)) => v,
            _ => panic!("y[{i},{j},{k}] is not an increasing triple"),
        }
    }

    /// Indices carried by the variable.
    pub fn indices(&self) -> Vec<u32> {
        match *self {
            VarId::X(i, j) => vec![i, j],
            VarId::Y(i, j, k) => vec![i, j, k],
        }
    }

    pub fn contains(&self, p: u32) -> bool {
        self.indices().contains(&p)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::X(i, j) => write!(f, "x[{i},{j}]"),
            VarId::Y(i, j, k) => write!(f, "y[{i},{j},{k}]"),
        }
    }
}

/// Sign of the permutation sorting `idx` (which must have distinct entries).
pub fn sort_sign(idx: &mut [u32]) -> i8 {
    let mut sign = 1i8;
    for a in 1..idx.len() {
        let mut b = a;
        while b > 0 && idx[b - 1] > idx[b] {
            idx.swap(b - 1, b);
            sign = -sign;
            b -= 1;
        }
    }
    sign
}

/// Canonicalize `y[i,j,k]`: returns the sorted variable and the sign of the
/// sorting permutation, or `None` when an index repeats (the variable is zero).
pub fn y_canon(i: u32, j: u32, k: u32) -> Option<(VarId, i8)> {
    if i == j || j == k || i == k || i == 0 || j == 0 || k == 0 {
        return None;
    }
    let mut idx = [i, j, k];
    let sign = sort_sign(&mut idx);
    Some((VarId::Y(idx[0], idx[1], idx[2]), sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_canon_signs() {
        assert_eq!(y_canon(2, 1, 3), Some((VarId::Y(1, 2, 3), -1)));
        assert_eq!(y_canon(3, 1, 2), Some((VarId::Y(1, 2, 3), 1)));
        assert_eq!(y_canon(1, 1, 2), None);
    }

    #[test]
    fn order_puts_x_first() {
        assert!(VarId::X(5, 6) < VarId::Y(1, 2, 3));
        assert!(VarId::Y(1, 2, 4) < VarId::Y(1, 3, 4));
    }
}
