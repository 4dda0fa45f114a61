use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::tree::{Body, LabeledTree};
use super::xi::XiElement;
use crate::diagrams::reduce::{first_internal_edge, rele};
use crate::diagrams::{ihx_at, Diagram, Half};
use crate::exactalg::{y_canon, RationalPolynomial, VarId};
use crate::kirchhoff::kirchhoff_poly;
use crate::pfaffian_tree::pfaffian_tree_poly;
use crate::Error;

/// Which internal edge the reduction expands next.
pub enum Strategy<'a> {
    /// The first internal edge met from the legs in circle order.
    Leftmost,
    /// A uniformly random internal edge, seen from a random end.
    Random(&'a mut dyn rand::RngCore),
}

pub(crate) fn internal_edges(d: &Diagram) -> Vec<Half> {
    d.trivalent()
        .flat_map(|v| (0..3).map(move |s| Half::tri(v, s)))
        .filter(|&h| d.is_trivalent(d.partner(h).node))
        .collect()
}

/// Reduce one tree to degree 1 (odd degree) or 2 (even degree) by repeated
/// use of the H relation on internal edges.
pub fn phi_tree(t: &LabeledTree, m: u32, strategy: &mut Strategy<'_>) -> Result<XiElement, Error> {
    let target = if t.degree() % 2 == 1 { 1 } else { 2 };
    let mut out = XiElement::new(target, m);
    let mut work = vec![(BigRational::one(), t.clone())];
    while let Some((c, t)) = work.pop() {
        if t.degree() <= 2 {
            out.add(&t, c)?;
            continue;
        }
        let mut d = Diagram::new(m as usize);
        t.attach(&mut d)?;
        let p = match strategy {
            Strategy::Leftmost => first_internal_edge(&d).expect("a tree of degree 3 or more has an internal edge"),
            Strategy::Random(rng) => *internal_edges(&d).choose(rng).expect("nonempty"),
        };
        for (k, e) in rele(&d, p) {
            let leg = e.legs().next().expect("a reduced tree keeps two legs");
            work.push((&c * k, LabeledTree::from_diagram(&e, leg)?));
        }
    }
    Ok(out)
}

/// The reduction map, extended linearly, with the leftmost strategy.
pub fn phi(xi: &XiElement) -> Result<XiElement, Error> {
    phi_with(xi, &mut Strategy::Leftmost)
}

pub fn phi_with(xi: &XiElement, strategy: &mut Strategy<'_>) -> Result<XiElement, Error> {
    let target = if xi.degree() % 2 == 1 { 1 } else { 2 };
    let mut out = XiElement::new(target, xi.size());
    for (t, c) in xi.terms() {
        out.add_scaled(&phi_tree(t, xi.size(), strategy)?, c)?;
    }
    Ok(out)
}

/// The span of `(Y_ijk - Y_ijl) - (Y_jkl - Y_ikl)` over ordered 4-tuples of
/// distinct labels, as a row-reduced basis in the coordinates `y[i,j,k]`.
#[derive(Clone, Debug)]
pub struct W0Subspace {
    m: u32,
    index: BTreeMap<VarId, usize>,
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl W0Subspace {
    pub fn new(m: u32) -> Self {
        let mut index = BTreeMap::new();
        for i in 1..=m {
            for j in i + 1..=m {
                for k in j + 1..=m {
                    let n = index.len();
                    index.insert(VarId::y(i, j, k), n);
                }
            }
        }
        let mut w = W0Subspace { m, index, rows: Vec::new() };
        for quad in quadruples(m) {
            for [i, j, k, l] in permutations4(quad) {
                let mut v = vec![BigRational::zero(); w.index.len()];
                for (s, (a, b, c)) in [(1, (i, j, k)), (-1, (i, j, l)), (-1, (j, k, l)), (1, (i, k, l))] {
                    let (var, t) = y_canon(a, b, c).expect("distinct");
                    v[w.index[&var]] += BigRational::from_integer((s * t as i64).into());
                }
                w.insert(v);
            }
        }
        w
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<BigRational>) {
        let v = self.reduce(v);
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[p].recip();
            self.rows.push((p, v.into_iter().map(|x| x * &inv).collect()));
        }
    }

    /// Coordinates of a degree-2 element.
    pub fn coordinates(&self, x: &XiElement) -> Result<Vec<BigRational>, Error> {
        if x.degree() != 2 || x.size() > self.m {
            return Err(Error::invalid("expected a degree-2 element with labels in range"));
        }
        let mut v = vec![BigRational::zero(); self.index.len()];
        for (var, &i) in &self.index {
            let VarId::Y(a, b, c) = *var else { unreachable!() };
            v[i] = x.y_coord(a, b, c);
        }
        Ok(v)
    }

    pub fn contains(&self, x: &XiElement) -> Result<bool, Error> {
        Ok(self.reduce(self.coordinates(x)?).iter().all(Zero::is_zero))
    }

    /// Equality in the quotient by this subspace.
    pub fn equivalent(&self, a: &XiElement, b: &XiElement) -> Result<bool, Error> {
        self.contains(&a.sub(b)?)
    }
}

fn quadruples(m: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            for k in j + 1..=m {
                for l in k + 1..=m {
                    out.push([i, j, k, l]);
                }
            }
        }
    }
    out
}

fn permutations4(q: [u32; 4]) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out.push([q[a], q[b], q[c], q[d]]);
                    }
                }
            }
        }
    }
    out
}

/// `D_m` at the strut coordinates of `phi(xi)` for odd degree, the square
/// of `P_m` at the Y coordinates for even degree.
pub fn f_general(xi: &XiElement, m: u32) -> Result<BigRational, Error> {
    let r = phi(xi)?;
    let to_q = |p: crate::exactalg::Polynomial| -> RationalPolynomial { p.map_coeffs(|c| BigRational::from_integer(c.clone())) };
    if xi.degree() % 2 == 1 {
        let d = to_q(kirchhoff_poly(m)?);
        Ok(d.eval(|v| match v {
            VarId::X(i, j) => r.strut_coord(i, j),
            VarId::Y(..) => BigRational::zero(),
        }))
    } else {
        let p = to_q(pfaffian_tree_poly(m)?);
        let v = p.eval(|v| match v {
            VarId::Y(i, j, k) => r.y_coord(i, j, k),
            VarId::X(..) => BigRational::zero(),
        });
        Ok(&v * &v)
    }
}

/// A random tree of the given degree with labels in `1..=m` and random
/// cyclic orders.
pub fn random_labeled_tree(rng: &mut impl Rng, degree: usize, m: u32) -> LabeledTree {
    fn split(b: Body, target: &mut isize, pair: (u32, u32)) -> Body {
        match b {
            Body::Leaf(l) => {
                *target -= 1;
                if *target == -1 {
                    Body::node(Body::Leaf(pair.0), Body::Leaf(pair.1))
                } else {
                    Body::Leaf(l)
                }
            }
            Body::Node(a, c) => {
                let a = split(*a, target, pair);
                let c = split(*c, target, pair);
                Body::node(a, c)
            }
        }
    }
    let root = rng.gen_range(1..=m);
    let mut body = Body::Leaf(rng.gen_range(1..=m));
    for leaves in 1..degree {
        let mut target = rng.gen_range(0..leaves) as isize;
        let pair = (rng.gen_range(1..=m), rng.gen_range(1..=m));
        body = split(body, &mut target, pair);
    }
    LabeledTree::new(root, body).expect("labels are positive")
}

/// Outcome of [`phi_confluence_check`].
#[derive(Clone, Debug, Default)]
pub struct ConfluenceReport {
    pub samples: usize,
    pub order_failures: Vec<String>,
    pub ihx_checked: usize,
    pub ihx_failures: Vec<String>,
}

impl ConfluenceReport {
    pub fn ok(&self) -> bool {
        self.order_failures.is_empty() && self.ihx_failures.is_empty()
    }
}

fn same_value(a: &XiElement, b: &XiElement, w0: &W0Subspace) -> Result<bool, Error> {
    if a.degree() == 2 {
        w0.equivalent(a, b)
    } else {
        Ok(a == b)
    }
}

/// Reduce random trees of degree `n` along random edge orders and compare
/// with the leftmost order (exactly for odd `n`, modulo `W_0` for even
/// `n`); also check that one IHX move at a random edge commutes with the
/// reduction.
pub fn phi_confluence_check(n: usize, m: u32, samples: usize, seed: u64) -> Result<ConfluenceReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w0 = W0Subspace::new(m);
    let mut rep = ConfluenceReport { samples, ..Default::default() };
    for _ in 0..samples {
        let t = random_labeled_tree(&mut rng, n, m);
        let base = phi_tree(&t, m, &mut Strategy::Leftmost)?;
        for _ in 0..2 {
            let mut sub = ChaCha8Rng::seed_from_u64(rng.gen());
            let other = phi_tree(&t, m, &mut Strategy::Random(&mut sub))?;
            if !same_value(&base, &other, &w0)? {
                rep.order_failures.push(format!("{t}: leftmost and random orders differ"));
            }
        }
        let mut d = Diagram::new(m as usize);
        t.attach(&mut d)?;
        let edges = internal_edges(&d);
        let Some(&p) = edges.choose(&mut rng) else { continue };
        let (a, b) = ihx_at(&d, p).expect("trees have no loops");
        let ta = LabeledTree::from_diagram(&a, a.legs().next().expect("legs"))?;
        let tb = LabeledTree::from_diagram(&b, b.legs().next().expect("legs"))?;
        let rhs = phi_tree(&ta, m, &mut Strategy::Leftmost)?.sub(&phi_tree(&tb, m, &mut Strategy::Leftmost)?)?;
        rep.ihx_checked += 1;
        if !same_value(&base, &rhs, &w0)? {
            rep.ihx_failures.push(format!("{t}: IHX at an edge changes the reduction"));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{weight_oracle, Engine};
    use crate::milnor::f_eval;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn t(s: &str) -> LabeledTree {
        s.parse().unwrap()
    }

    #[test]
    fn low_degrees_are_fixed() {
        for s in ["1:2", "1:[2,3]"] {
            let x = XiElement::single(&t(s), 3).unwrap();
            assert_eq!(phi(&x).unwrap(), x);
        }
    }

    #[test]
    fn h_reduces_to_four_struts() {
        // Horizontal struts of the letter H count +1, diagonals -1.
        let r = phi_tree(&LabeledTree::h(1, 2, 3, 4), 4, &mut Strategy::Leftmost).unwrap();
        let mut want = XiElement::new(1, 4);
        for (a, b, c) in [(1, 3, 1), (2, 4, 1), (1, 4, -1), (2, 3, -1)] {
            want.add(&LabeledTree::strut(a, b), q(c)).unwrap();
        }
        assert_eq!(r, want);
    }

    #[test]
    fn degree_three_on_two_circles_matches_weights() {
        for code in 0..16u32 {
            let l: Vec<u32> = (0..4).map(|b| 1 + ((code >> b) & 1)).collect();
            let x = XiElement::single(&LabeledTree::h(l[0], l[1], l[2], l[3]), 2).unwrap();
            assert_eq!(f_general(&x, 2).unwrap(), f_eval(&x, 2, Engine::Oracle).unwrap(), "{:?}", l);
        }
    }

    #[test]
    fn ihx_sign_convention() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let tr = random_labeled_tree(&mut rng, 4, 3);
            let mut d = Diagram::new(3);
            tr.attach(&mut d).unwrap();
            d.add_y(0, 1, 2);
            for p in internal_edges(&d) {
                let (a, b) = ihx_at(&d, p).unwrap();
                assert_eq!(weight_oracle(&d), weight_oracle(&a) - weight_oracle(&b));
            }
        }
    }

    #[test]
    fn w0_is_invisible_to_the_pfaffian() {
        let w0 = W0Subspace::new(5);
        assert!(w0.dim() > 0);
        let p = pfaffian_tree_poly(5).unwrap().map_coeffs(|c| BigRational::from_integer(c.clone()));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let vars: Vec<VarId> = w0.index.keys().copied().collect();
        for _ in 0..20 {
            let base: Vec<BigRational> = vars.iter().map(|_| q(rng.gen_range(-3..=3))).collect();
            let (_, row) = w0.rows.choose(&mut rng).unwrap();
            let f = q(rng.gen_range(-2..=2));
            let at = |shift: bool| {
                p.eval(|v| {
                    let i = w0.index[&v];
                    if shift {
                        &base[i] + &f * &row[i]
                    } else {
                        base[i].clone()
                    }
                })
            };
            assert_eq!(at(true), at(false));
        }
    }

    #[test]
    fn tree4_routes_differ_only_by_w0() {
        let tr = t("1:[2,[3,[4,5]]]");
        let mut d = Diagram::new(5);
        tr.attach(&mut d).unwrap();
        let w0 = W0Subspace::new(5);
        let mut results = Vec::new();
        for p in internal_edges(&d) {
            let mut out = XiElement::new(2, 5);
            for (k, e) in rele(&d, p) {
                let leg = e.legs().next().unwrap();
                out.add(&LabeledTree::from_diagram(&e, leg).unwrap(), k).unwrap();
            }
            results.push(out);
        }
        assert!(results.windows(2).any(|w| w[0] != w[1]));
        for w in results.windows(2) {
            assert!(w0.equivalent(&w[0], &w[1]).unwrap());
        }
    }

    #[test]
    fn confluence_small() {
        for n in 3..=5 {
            let rep = phi_confluence_check(n, 4, 15, n as u64).unwrap();
            assert!(rep.ok(), "{:?}", rep);
        }
    }

    #[test]
    fn general_formula_matches_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (n, m) in [(3, 2), (3, 3), (4, 3), (4, 4), (3, 4)] {
            for _ in 0..3 {
                let mut x = XiElement::new(n, m);
                for _ in 0..2 {
                    x.add(&random_labeled_tree(&mut rng, n, m), q(rng.gen_range(1..=2))).unwrap();
                }
                assert_eq!(f_general(&x, m).unwrap(), f_eval(&x, m as usize, Engine::Reduced).unwrap(), "n={n} m={m}");
            }
        }
    }
}
