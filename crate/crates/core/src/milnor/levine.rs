use num_bigint::BigInt;

use super::xi::MilnorTable;
use crate::exactalg::{self, ExactMatrix};
use crate::Error;

fn for_each_sequence(m: u32, len: usize, mut f: impl FnMut(&[u32])) {
    let mut cur = vec![1u32; len];
    loop {
        f(&cur);
        let mut pos = 0;
        loop {
            if pos == len {
                return;
            }
            cur[pos] += 1;
            if cur[pos] <= m {
                break;
            }
            cur[pos] = 1;
            pos += 1;
        }
    }
}

/// `lambda_ij = sum over r_1..r_{n-1} of mu(r_1, ..., r_{n-1}, j, i)`, for
/// all `i, j` including the diagonal, exactly as written.
pub fn levine_lambda<R: exactalg::Ring>(n: usize, m: u32, mu: impl Fn(&[u32]) -> R) -> ExactMatrix<R> {
    assert!(n >= 1);
    ExactMatrix::from_fn(m as usize, |i, j| {
        let (i, j) = (i as u32 + 1, j as u32 + 1);
        let mut acc = R::zero();
        let mut idx = vec![0u32; n + 1];
        idx[n - 1] = j;
        idx[n] = i;
        for_each_sequence(m, n - 1, |r| {
            idx[..n - 1].copy_from_slice(r);
            acc = acc.add(&mu(&idx));
        });
        acc
    })
}

/// Determinant of the matrix of [`levine_lambda`] with row and column `p`
/// (1-based) removed. Missing table entries read as zero.
pub fn levine_traldi_det(n: usize, m: u32, table: &MilnorTable, p: usize) -> Result<BigInt, Error> {
    if table.index_len() != n + 1 {
        return Err(Error::invalid(format!("degree {n} needs index sequences of length {}", n + 1)));
    }
    if p == 0 || p > m as usize {
        return Err(Error::invalid(format!("p = {p} is out of range 1..={m}")));
    }
    Ok(levine_lambda(n, m, |idx| table.get(idx)).minor(p - 1).det_exact())
}
