use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{y_canon, Polynomial, VarId};
use crate::pfaffian_tree::pfaffian_tree_poly;
use crate::Error;

/// One identity: the pair of `mu` variables differentiated, and the right
/// hand side as signed lists of merged index groups. Indices not mentioned
/// follow in increasing order.
struct Template {
    first: [u32; 3],
    second: [u32; 3],
    terms: &'static [(i64, &'static [&'static [u32]])],
    used: u32,
}

const TEMPLATES: [Template; 3] = [
    Template { first: [1, 2, 3], second: [1, 2, 3], terms: &[(2, &[&[2, 3]])], used: 3 },
    Template {
        first: [1, 2, 3],
        second: [1, 2, 4],
        terms: &[(1, &[&[2, 3], &[4]]), (1, &[&[2, 4], &[3]]), (-1, &[&[3, 4], &[2]])],
        used: 4,
    },
    Template {
        first: [1, 2, 3],
        second: [1, 4, 5],
        terms: &[
            (1, &[&[3, 4], &[2], &[5]]),
            (1, &[&[2, 5], &[3], &[4]]),
            (-1, &[&[2, 4], &[3], &[5]]),
            (-1, &[&[3, 5], &[2], &[4]]),
        ],
        used: 5,
    },
];

/// Both sides of identity `which` (1, 2 or 3) for `F_m = P_m^2`, after
/// renaming every index `i` to `perm[i - 1]`. The left side is the second
/// derivative at `v_1 = 0`; the right side combines `F_{m-2}` at merged
/// arguments.
pub fn recursion_identity(which: usize, perm: &[u32], m: u32) -> Result<(Polynomial, Polynomial), Error> {
    let tpl = TEMPLATES.get(which.wrapping_sub(1)).ok_or_else(|| Error::invalid("identities are numbered 1 to 3"))?;
    if m < 5 || m % 2 == 0 {
        return Err(Error::invalid("the identities are stated for odd m >= 5"));
    }
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=m).collect::<Vec<_>>() {
        return Err(Error::invalid("perm must be a permutation of 1..=m"));
    }
    let pi = |i: u32| perm[i as usize - 1];
    let var = |t: [u32; 3]| y_canon(pi(t[0]), pi(t[1]), pi(t[2])).expect("distinct indices");
    let ((a, sa), (b, sb)) = (var(tpl.first), var(tpl.second));
    let killed = pi(1);

    let p = pfaffian_tree_poly(m)?;
    let pa = p.partial_derivative(a);
    let pb = p.partial_derivative(b);
    let pab = pa.partial_derivative(b);
    let k = |q: &Polynomial| q.kill_index(killed);
    let lhs = (&k(&pa) * &k(&pb) + &k(&p) * &k(&pab)).scale(&BigInt::from(2 * sa as i64 * sb as i64));

    let q = pfaffian_tree_poly(m - 2)?;
    let f_small = &q * &q;
    let mut rhs = Polynomial::zero();
    for (c, groups) in tpl.terms {
        let mut args: Vec<Vec<u32>> = groups.iter().map(|g| g.to_vec()).collect();
        args.extend((tpl.used + 1..=m).map(|i| vec![i]));
        let sub: BTreeMap<u32, Vec<(u32, BigInt)>> = args
            .iter()
            .enumerate()
            .map(|(slot, g)| (slot as u32 + 1, g.iter().map(|&i| (pi(i), BigInt::from(1))).collect()))
            .collect();
        rhs = rhs + f_small.merge_basis(&sub).scale(&BigInt::from(*c));
    }
    Ok((lhs, rhs))
}

/// Outcome of [`recursion_check`].
#[derive(Clone, Debug, Default)]
pub struct RecursionReport {
    pub m: u32,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl RecursionReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check the three identities for the identity permutation and for
/// `samples` random relabellings.
pub fn recursion_check(m: u32, samples: usize, seed: u64) -> Result<RecursionReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perms = vec![(1..=m).collect::<Vec<u32>>()];
    for _ in 0..samples {
        let mut p = perms[0].clone();
        p.shuffle(&mut rng);
        perms.push(p);
    }
    let mut rep = RecursionReport { m, ..Default::default() };
    for perm in &perms {
        for which in 1..=3 {
            let (l, r) = recursion_identity(which, perm, m)?;
            rep.checked += 1;
            if l != r {
                rep.failures.push(format!("identity {which} fails after relabelling {perm:?}"));
            }
        }
    }
    Ok(rep)
}

/// True when every monomial has some index occurring exactly twice.
pub fn has_index_twice(p: &Polynomial) -> bool {
    p.terms().all(|(mono, _)| {
        let mut count: BTreeMap<u32, usize> = BTreeMap::new();
        for v in mono.vars() {
            if let VarId::Y(..) = v {
                for i in v.indices() {
                    *count.entry(i).or_default() += 1;
                }
            }
        }
        count.values().any(|&c| c == 2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_for_m5() {
        let rep = recursion_check(5, 10, 1).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
        assert_eq!(rep.checked, 33);
    }

    #[test]
    fn worked_example() {
        let (lhs, rhs) = recursion_identity(3, &[1, 2, 3, 4, 5], 5).unwrap();
        assert_eq!(lhs, rhs);
        let want: Polynomial = "+2*y[2,3,4]*y[2,4,5] +2*y[2,3,4]*y[3,4,5] +2*y[2,3,5]*y[2,4,5] +2*y[2,3,5]*y[3,4,5]".parse().unwrap();
        assert_eq!(rhs, want);
    }

    #[test]
    fn every_monomial_has_an_index_twice() {
        let p = pfaffian_tree_poly(5).unwrap();
        assert!(has_index_twice(&(&p * &p)));
    }
}
