use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tree::LabeledTree;
use super::xi::XiElement;
use crate::diagrams::{shuffle_circles, weight, ComponentKind, Diagram, Engine, Half};
use crate::exactalg::{Monomial, Polynomial, VarId};
use crate::Error;

/// Attach every tree to `m` circles (label `i` on circle `i`) and shuffle
/// the legs on each circle with the given seed.
pub fn lift_to_circles(trees: &[LabeledTree], m: usize, seed: u64) -> Result<Diagram, Error> {
    let mut d = Diagram::new(m);
    for t in trees {
        t.attach(&mut d)?;
    }
    shuffle_circles(&mut ChaCha8Rng::seed_from_u64(seed), &mut d);
    Ok(d)
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Call `f` on every non-decreasing sequence of length `k` from `0..n`.
pub(crate) fn for_each_multiset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, f);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::with_capacity(k), &mut f);
}

/// Product of `k!` over the multiplicities of a sorted multiset.
fn multiplicity_factor(ms: &[usize]) -> BigInt {
    let mut out = BigInt::one();
    let mut run = 1;
    for w in ms.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            out *= factorial(run);
            run = 1;
        }
    }
    if !ms.is_empty() {
        out *= factorial(run);
    }
    out
}

fn check_m(m: usize) -> Result<(), Error> {
    if m < 2 {
        return Err(Error::invalid("need at least two circles"));
    }
    Ok(())
}

/// The multilinear form on `m - 1` elements of one degree: the weight of
/// the lifted disjoint union, extended linearly in each argument.
pub fn f_tilde(xis: &[XiElement], m: usize, engine: Engine) -> Result<BigRational, Error> {
    check_m(m)?;
    if xis.len() != m - 1 {
        return Err(Error::invalid(format!("expected {} arguments, got {}", m - 1, xis.len())));
    }
    if xis.iter().any(|x| x.degree() != xis[0].degree()) {
        return Err(Error::invalid("arguments have different degrees"));
    }
    let lists: Vec<Vec<(&LabeledTree, &BigRational)>> = xis.iter().map(|x| x.terms().collect()).collect();
    let mut total = BigRational::zero();
    let mut idx = vec![0usize; lists.len()];
    if lists.iter().any(Vec::is_empty) {
        return Ok(total);
    }
    loop {
        let trees: Vec<LabeledTree> = idx.iter().zip(&lists).map(|(&i, l)| l[i].0.clone()).collect();
        let c: BigRational = idx.iter().zip(&lists).map(|(&i, l)| l[i].1.clone()).product();
        total += c * weight(&lift_to_circles(&trees, m, 0)?, engine);
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(total);
            }
            idx[pos] += 1;
            if idx[pos] < lists[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `F(xi) = F~(xi, ..., xi) / (m-1)!`, summed over multisets of terms.
pub fn f_eval(xi: &XiElement, m: usize, engine: Engine) -> Result<BigRational, Error> {
    check_m(m)?;
    sym_eval(xi, m - 1, None, m, engine)
}

/// `sum over multisets S of size k of prod c^mult / prod mult! * W(lift)`,
/// with an optional extra tree appended to each lift.
fn sym_eval(
    xi: &XiElement,
    k: usize,
    extra: Option<(&LabeledTree, &BigRational)>,
    m: usize,
    engine: Engine,
) -> Result<BigRational, Error> {
    let terms: Vec<(&LabeledTree, &BigRational)> = xi.terms().collect();
    let mut total = BigRational::zero();
    let mut err = None;
    for_each_multiset(terms.len(), k, |ms| {
        if err.is_some() {
            return;
        }
        let mut trees: Vec<LabeledTree> = ms.iter().map(|&i| terms[i].0.clone()).collect();
        let mut c: BigRational = ms.iter().map(|&i| terms[i].1.clone()).product();
        c /= BigRational::from_integer(multiplicity_factor(ms));
        if let Some((t, ct)) = extra {
            trees.push(t.clone());
            c *= ct;
        }
        match lift_to_circles(&trees, m, 0) {
            Ok(d) => total += c * weight(&d, engine),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// Basis trees and their coordinate variables: struts `i:j` with `x[i,j]`
/// for degree 1, Y's `i:[j,k]` with `y[i,j,k]` for degree 2.
pub fn coordinate_basis(n: usize, m: u32) -> Result<Vec<(LabeledTree, VarId)>, Error> {
    let mut out = Vec::new();
    match n {
        1 => {
            for i in 1..=m {
                for j in i + 1..=m {
                    out.push((LabeledTree::strut(i, j), VarId::x(i, j)?));
                }
            }
        }
        2 => {
            for i in 1..=m {
                for j in i + 1..=m {
                    for k in j + 1..=m {
                        out.push((LabeledTree::y(i, j, k), VarId::y(i, j, k)));
                    }
                }
            }
        }
        _ => return Err(Error::invalid("coordinates are available for degrees 1 and 2 only")),
    }
    Ok(out)
}

/// `F_m^(n)` as a polynomial in the coordinates of [`coordinate_basis`],
/// assembled from weights of lifted basis multisets.
pub fn f_as_polynomial(n: usize, m: u32, engine: Engine) -> Result<Polynomial, Error> {
    check_m(m as usize)?;
    let basis = coordinate_basis(n, m)?;
    let mut p = Polynomial::zero();
    let mut err = None;
    for_each_multiset(basis.len(), m as usize - 1, |ms| {
        if err.is_some() {
            return;
        }
        let trees: Vec<LabeledTree> = ms.iter().map(|&i| basis[i].0.clone()).collect();
        let w = match lift_to_circles(&trees, m as usize, 0) {
            Ok(d) => weight(&d, engine),
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        if w.is_zero() {
            return;
        }
        let c = w / BigRational::from_integer(multiplicity_factor(ms));
        if !c.is_integer() {
            err = Some(Error::invalid(format!("non-integral coefficient {c}")));
            return;
        }
        let mono = Monomial::from_vars(ms.iter().map(|&i| basis[i].1).collect());
        p.add_term(mono, c.to_integer());
    });
    match err {
        Some(e) => Err(e),
        None => Ok(p),
    }
}

/// `G(xi, tau) = G~(xi, ..., xi, tau) / (m-2)!` where `xi` has degree `n`
/// and `tau` degree `n + 1`: lift `m - 2` trees of `xi` and one of `tau`.
pub fn g_eval(xi: &XiElement, tau: &XiElement, m: usize, engine: Engine) -> Result<BigRational, Error> {
    check_m(m)?;
    if tau.degree() != xi.degree() + 1 {
        return Err(Error::invalid(format!("tau has degree {}, expected {}", tau.degree(), xi.degree() + 1)));
    }
    let mut total = BigRational::zero();
    for (t, c) in tau.terms() {
        total += sym_eval(xi, m - 2, Some((t, c)), m, engine)?;
    }
    Ok(total)
}

/// Cut the internal edge of the first H-shaped component and attach both
/// ends as legs on a new circle, appended last. This turns the H into two
/// Y's and leaves the weight unchanged.
pub fn h_replace(d: &Diagram) -> Result<Diagram, Error> {
    let comp = d
        .components()
        .into_iter()
        .find(|c| c.kind == ComponentKind::Tree(3))
        .ok_or_else(|| Error::invalid("diagram has no H-shaped component"))?;
    let (p, q) = comp
        .tri
        .iter()
        .flat_map(|&v| (0..3).map(move |s| Half::tri(v, s)))
        .map(|h| (h, d.partner(h)))
        .find(|(_, q)| d.is_trivalent(q.node))
        .expect("an H has an internal edge");
    let mut e = d.clone();
    e.unlink(p);
    let c = e.add_circle();
    let (a, b) = (e.add_leg(c), e.add_leg(c));
    e.connect(p, Half::leg(a));
    e.connect(q, Half::leg(b));
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kirchhoff::kirchhoff_poly;
    use crate::pfaffian_tree::pfaffian_tree_poly;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn xi(t: &LabeledTree, m: u32) -> XiElement {
        XiElement::single(t, m).unwrap()
    }

    #[test]
    fn f_tilde_examples() {
        let s = LabeledTree::strut;
        assert_eq!(f_tilde(&[xi(&s(1, 2), 3), xi(&s(2, 3), 3)], 3, Engine::Oracle).unwrap(), q(1));
        assert_eq!(f_tilde(&[xi(&s(1, 2), 3), xi(&s(1, 2), 3)], 3, Engine::Oracle).unwrap(), q(0));
        let y = xi(&LabeledTree::y(1, 2, 3), 3);
        assert_eq!(f_tilde(&[y.clone(), y], 3, Engine::Oracle).unwrap(), q(2));
    }

    #[test]
    fn lift_independence() {
        let trees = [LabeledTree::y(1, 2, 3), LabeledTree::y(1, 4, 5), LabeledTree::y(2, 3, 5), LabeledTree::y(3, 4, 5)];
        let w0 = weight(&lift_to_circles(&trees, 5, 0).unwrap(), Engine::Oracle);
        assert_eq!(w0, q(2));
        for seed in 1..10 {
            assert_eq!(weight(&lift_to_circles(&trees, 5, seed).unwrap(), Engine::Oracle), w0);
        }
    }

    #[test]
    fn degree_one_is_kirchhoff() {
        for m in 2..=4 {
            assert_eq!(f_as_polynomial(1, m, Engine::Oracle).unwrap(), kirchhoff_poly(m).unwrap());
        }
    }

    #[test]
    fn degree_two_is_pfaffian_square() {
        assert_eq!(f_as_polynomial(2, 3, Engine::Oracle).unwrap().to_string(), "+1*y[1,2,3]*y[1,2,3]");
        assert!(f_as_polynomial(2, 4, Engine::Reduced).unwrap().is_zero());
        let p = pfaffian_tree_poly(5).unwrap();
        assert_eq!(f_as_polynomial(2, 5, Engine::Reduced).unwrap(), &p * &p);
    }

    #[test]
    fn f_eval_matches_polynomial() {
        let mut x = XiElement::new(2, 3);
        x.add(&LabeledTree::y(1, 2, 3), q(3)).unwrap();
        assert_eq!(f_eval(&x, 3, Engine::Oracle).unwrap(), q(9));
    }

    #[test]
    fn g_on_the_h_diagram() {
        let h = xi(&LabeledTree::h(1, 2, 1, 2), 2);
        let empty = XiElement::new(2, 2);
        assert_eq!(g_eval(&empty, &h, 2, Engine::Oracle).unwrap(), q(-2));
    }

    #[test]
    fn h_replace_keeps_the_weight() {
        let d = lift_to_circles(&[LabeledTree::h(1, 2, 1, 2)], 2, 0).unwrap();
        let e = h_replace(&d).unwrap();
        assert_eq!(e.num_circles(), 3);
        assert_eq!(e.components().len(), 2);
        assert_eq!(weight(&e, Engine::Oracle), q(-2));
    }
}
