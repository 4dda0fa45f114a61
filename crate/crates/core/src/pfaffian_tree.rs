//! Spanning trees of the complete 3-graph, their signs, the Pfaffian-tree
//! polynomial `P_m`, and the Pfaffian Matrix-Tree theorem.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{self, sort_sign, y_canon, ExactMatrix, Monomial, Polynomial, VarId};
use crate::kirchhoff::UnionFind;
use crate::Error;

/// An oriented triple `(i, j, k)`; the orientation matters for signs.
pub type Triple = [u32; 3];

/// A multiset of triples on the vertex set `1..=m`, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeGraph {
    m: u32,
    edges: Vec<Triple>,
}

impl ThreeGraph {
    pub fn new(m: u32, edges: Vec<Triple>) -> Result<Self, Error> {
        for e in &edges {
            if e.iter().any(|&v| v == 0 || v > m) || e[0] == e[1] || e[1] == e[2] || e[0] == e[2] {
                return Err(Error::invalid(format!("triple {e:?} is not an edge of the 3-graph on {m} vertices")));
            }
        }
        Ok(ThreeGraph { m, edges })
    }

    /// The 3-graph of a monomial in `y` variables, on `deg + 1` vertices.
    pub fn from_monomial(mono: &Monomial) -> Result<Self, Error> {
        let mut edges = Vec::new();
        for v in mono.vars() {
            match *v {
                VarId::Y(i, j, k) => edges.push([i, j, k]),
                VarId::X(..) => return Err(Error::invalid("monomial contains a pair variable")),
            }
        }
        Self::new(edges.len() as u32 + 1, edges)
    }

    pub fn vertices(&self) -> u32 {
        self.m
    }

    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    fn subgraph(&self, idx: &[usize]) -> ThreeGraph {
        ThreeGraph { m: self.m, edges: idx.iter().map(|&i| self.edges[i]).collect() }
    }
}

/// Parse one triple `i j k` per line; a repeated line is a repeated edge.
/// The vertex count is `m` when given, otherwise the largest index.
///
/// ```
/// use conway_trees::pfaffian_tree::parse_three_graph;
/// let g = parse_three_graph("1 2 3\n1 2 3\n", None).unwrap();
/// assert_eq!((g.vertices(), g.edges().len()), (3, 2));
/// ```
pub fn parse_three_graph(text: &str, m: Option<u32>) -> Result<ThreeGraph, Error> {
    let mut edges = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(n + 1, format!("bad vertex `{t}`"))))
            .collect::<Result<_, _>>()?;
        let [i, j, k] = v[..] else {
            return Err(Error::parse(n + 1, "expected three vertices `i j k`"));
        };
        edges.push([i, j, k]);
    }
    let m = m.unwrap_or_else(|| edges.iter().flatten().copied().max().unwrap_or(0));
    ThreeGraph::new(m, edges)
}

/// Tree test on the 1-complex where each triple is a Y joining its three
/// vertices through a new centre: connected, acyclic, spanning.
pub fn is_tree3(g: &ThreeGraph) -> bool {
    let m = g.m as usize;
    let mut uf = UnionFind::new(m + 1 + g.edges.len());
    for (c, e) in g.edges.iter().enumerate() {
        let centre = m + 1 + c;
        if !e.iter().all(|&v| uf.union(centre, v as usize)) {
            return false;
        }
    }
    let root = uf.find(1);
    (1..=m).all(|v| uf.find(v) == root)
}

/// Product of the 3-cycles `(i j k)` in the listed order, as a map on `1..=m`.
fn cycle_product(g: &ThreeGraph) -> Vec<u32> {
    let mut perm: Vec<u32> = (0..=g.m).collect();
    for e in &g.edges {
        let mut cyc: Vec<u32> = (0..=g.m).collect();
        cyc[e[0] as usize] = e[1];
        cyc[e[1] as usize] = e[2];
        cyc[e[2] as usize] = e[0];
        perm = (0..=g.m as usize).map(|x| perm[cyc[x] as usize]).collect();
    }
    perm
}

/// Tree test by the criterion that the product of the 3-cycles is an `m`-cycle.
pub fn is_tree3_by_cycle(g: &ThreeGraph) -> bool {
    2 * g.edges.len() + 1 == g.m as usize && cycle_sequence(g).is_some()
}

fn cycle_sequence(g: &ThreeGraph) -> Option<Vec<u32>> {
    let perm = cycle_product(g);
    let mut seq = vec![1u32];
    let mut x = perm[1];
    while x != 1 {
        seq.push(x);
        x = perm[x as usize];
    }
    (seq.len() == g.m as usize).then_some(seq)
}

/// Sign of a 3-graph: if the product of its 3-cycles is the `m`-cycle
/// `(s(1) ... s(m))`, the sign of the permutation `s`; otherwise 0.
pub fn epsilon(g: &ThreeGraph) -> i8 {
    if 2 * g.edges.len() + 1 != g.m as usize {
        return 0;
    }
    match cycle_sequence(g) {
        Some(mut s) => sort_sign(&mut s),
        None => 0,
    }
}

fn canonical_triples(m: u32) -> Vec<Triple> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            for k in j + 1..=m {
                out.push([i, j, k]);
            }
        }
    }
    out
}

fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        f(&pick);
        let Some(pos) = (0..k).rev().find(|&i| pick[i] < n - k + i) else { return };
        pick[pos] += 1;
        for i in pos + 1..k {
            pick[i] = pick[i - 1] + 1;
        }
    }
}

/// `P_m = sum over spanning trees T of the complete 3-graph of eps(T) y_T`;
/// zero for even `m`.
pub fn pfaffian_tree_poly(m: u32) -> Result<Polynomial, Error> {
    if m == 0 {
        return Err(Error::invalid("need m >= 1"));
    }
    let mut p = Polynomial::zero();
    if m % 2 == 0 {
        return Ok(p);
    }
    let all = canonical_triples(m);
    for_each_subset(all.len(), (m as usize - 1) / 2, |idx| {
        let g = ThreeGraph { m, edges: idx.iter().map(|&i| all[i]).collect() };
        let e = epsilon(&g);
        if e != 0 {
            let mono = Monomial::from_vars(g.edges.iter().map(|t| VarId::Y(t[0], t[1], t[2])).collect());
            p.add_term(mono, BigInt::from(e));
        }
    });
    Ok(p)
}

/// Integer values `mu_ijk`, stored on increasing triples and extended by
/// antisymmetry; missing entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MuTable {
    m: u32,
    values: BTreeMap<Triple, BigInt>,
}

impl MuTable {
    pub fn new(m: u32) -> Self {
        MuTable { m, values: BTreeMap::new() }
    }

    pub fn size(&self) -> u32 {
        self.m
    }

    pub fn set(&mut self, i: u32, j: u32, k: u32, v: BigInt) -> Result<(), Error> {
        if [i, j, k].iter().any(|&x| x > self.m) {
            return Err(Error::invalid(format!("index out of range in mu {i} {j} {k}")));
        }
        let (var, s) = y_canon(i, j, k).ok_or_else(|| Error::invalid(format!("mu {i} {j} {k} repeats an index")))?;
        let VarId::Y(a, b, c) = var else { unreachable!() };
        let v = if s < 0 { -v } else { v };
        if v.is_zero() {
            self.values.remove(&[a, b, c]);
        } else {
            self.values.insert([a, b, c], v);
        }
        Ok(())
    }

    pub fn get(&self, i: u32, j: u32, k: u32) -> BigInt {
        match y_canon(i, j, k) {
            None => BigInt::zero(),
            Some((VarId::Y(a, b, c), s)) => {
                let v = self.values.get(&[a, b, c]).cloned().unwrap_or_default();
                if s < 0 {
                    -v
                } else {
                    v
                }
            }
            Some(_) => unreachable!(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Triple, &BigInt)> {
        self.values.iter()
    }

    /// Value of a polynomial in `y` variables at this table.
    pub fn eval(&self, p: &Polynomial) -> BigInt {
        p.eval(|v| match v {
            VarId::Y(i, j, k) => self.get(i, j, k),
            VarId::X(..) => BigInt::zero(),
        })
    }
}

/// `lambda_ij = sum_k mu(i, j, k)` for an antisymmetric `mu`.
pub fn lambda_skew<R: exactalg::Ring>(m: u32, mu: impl Fn(u32, u32, u32) -> R) -> ExactMatrix<R> {
    ExactMatrix::from_fn(m as usize, |i, j| {
        let (i, j) = (i as u32 + 1, j as u32 + 1);
        (1..=m).fold(R::zero(), |acc, k| acc.add(&mu(i, j, k)))
    })
}

pub fn lambda_skew_symbolic(m: u32) -> ExactMatrix<Polynomial> {
    lambda_skew(m, Polynomial::y)
}

pub fn lambda_skew_numeric(mu: &MuTable) -> ExactMatrix<BigInt> {
    lambda_skew(mu.m, |i, j, k| mu.get(i, j, k))
}

/// Outcome of a Pfaffian Matrix-Tree check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmttReport {
    pub ok: bool,
    /// `s_p` with `P_m = s_p Pf(Lambda^(p))`, one per deleted index `p`;
    /// 0 where the Pfaffian is undefined or the relation fails.
    pub signs: Vec<i8>,
}

fn pmtt_generic<R: exactalg::Ring>(m: u32, pm: &R, lam: &ExactMatrix<R>) -> PmttReport {
    let sq = pm.mul(pm);
    let mut ok = true;
    let mut signs = Vec::new();
    for p in 0..m as usize {
        let minor = lam.minor(p);
        ok &= minor.det_exact() == sq;
        let s = match minor.pfaffian() {
            Ok(pf) if pf == *pm => 1,
            Ok(pf) if pf.neg() == *pm => -1,
            Ok(_) => {
                ok = false;
                0
            }
            Err(_) => 0,
        };
        signs.push(s);
    }
    PmttReport { ok, signs }
}

/// Symbolic check of `P_m^2 = det Lambda^(p)` and `P_m = s_p Pf(Lambda^(p))`.
pub fn pmtt_check(m: u32) -> Result<PmttReport, Error> {
    if m < 2 {
        return Err(Error::invalid("need m >= 2"));
    }
    let pm = pfaffian_tree_poly(m)?;
    Ok(pmtt_generic(m, &pm, &lambda_skew_symbolic(m)))
}

/// Symbolic check of `P_m = s_p Pf(Lambda^(p))` alone, which is cheaper
/// than the determinant for larger odd `m`.
pub fn pmtt_pfaffian_check(m: u32) -> Result<PmttReport, Error> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::invalid("need odd m >= 3"));
    }
    let pm = pfaffian_tree_poly(m)?;
    let lam = lambda_skew_symbolic(m);
    let mut signs = Vec::new();
    for p in 0..m as usize {
        let pf = lam.minor(p).pfaffian()?;
        signs.push(if pf == pm {
            1
        } else if -pf == pm {
            -1
        } else {
            0
        });
    }
    Ok(PmttReport { ok: signs.iter().all(|&s| s != 0), signs })
}

/// Numeric check at an integer table, using a precomputed `P_m`.
pub fn pmtt_check_numeric(pm: &Polynomial, mu: &MuTable) -> PmttReport {
    pmtt_generic(mu.m, &mu.eval(pm), &lambda_skew_numeric(mu))
}

/// A split of the edges of a 3-graph into two spanning trees, by edge index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub sign: i8,
}

/// All ordered decompositions into two spanning trees, signed by
/// `eps(T) eps(T')` with the orientations as listed in `g`.
pub fn ordered_tree_decompositions(g: &ThreeGraph) -> Vec<Decomposition> {
    let n = g.edges.len();
    let mut out = Vec::new();
    if g.m % 2 == 0 || n + 1 != g.m as usize {
        return out;
    }
    for_each_subset(n, n / 2, |idx| {
        let first = idx.to_vec();
        let second: Vec<usize> = (0..n).filter(|i| !idx.contains(i)).collect();
        let (a, b) = (g.subgraph(&first), g.subgraph(&second));
        if is_tree3(&a) && is_tree3(&b) {
            out.push(Decomposition { first, second, sign: epsilon(&a) * epsilon(&b) });
        }
    });
    out
}

/// Product of the factorials of the multiplicities of the edges; equals
/// `2^d` for a graph with `d` doubled triples and no higher repeats.
pub fn aut_factor(g: &ThreeGraph) -> BigInt {
    let mut mult: BTreeMap<Triple, u32> = BTreeMap::new();
    for e in &g.edges {
        let mut s = *e;
        s.sort();
        *mult.entry(s).or_default() += 1;
    }
    mult.values().fold(BigInt::one(), |acc, &k| acc * (1..=k).product::<u32>())
}

/// Coefficient of a monomial of degree `m - 1` in `P_m^2`, counted as
/// signed ordered tree decompositions divided by the automorphism factor.
pub fn coeff_via_decompositions(mono: &Monomial) -> Result<BigRational, Error> {
    Ok(decomposition_coefficient(&ThreeGraph::from_monomial(mono)?))
}

/// Signed decomposition count over the automorphism factor, with the edge
/// orientations as listed.
pub fn decomposition_coefficient(g: &ThreeGraph) -> BigRational {
    let count: i64 = ordered_tree_decompositions(g).iter().map(|d| d.sign as i64).sum();
    BigRational::new(BigInt::from(count), aut_factor(g))
}

/// A table with every increasing triple drawn from `-bound..=bound`.
pub fn random_mu_table(rng: &mut impl Rng, m: u32, bound: i64) -> MuTable {
    let mut mu = MuTable::new(m);
    for i in 1..=m {
        for j in i + 1..=m {
            for k in j + 1..=m {
                mu.set(i, j, k, rng.gen_range(-bound..=bound).into()).expect("increasing distinct triple");
            }
        }
    }
    mu
}

/// Numeric checks at `count` random tables with entries in `-3..=3`;
/// returns the number of failing tables.
pub fn pmtt_random_check(m: u32, count: usize, seed: u64) -> Result<usize, Error> {
    let pm = pfaffian_tree_poly(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).filter(|_| !pmtt_check_numeric(&pm, &random_mu_table(&mut rng, m, 3)).ok).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: u32, e: &[Triple]) -> ThreeGraph {
        ThreeGraph::new(m, e.to_vec()).unwrap()
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&g(3, &[[1, 2, 3]])), 1);
        assert_eq!(epsilon(&g(5, &[[1, 2, 3], [1, 4, 5]])), 1);
        assert_eq!(epsilon(&g(5, &[[1, 2, 4], [1, 3, 5]])), -1);
        assert_eq!(epsilon(&g(5, &[[1, 2, 3], [1, 2, 4]])), 0);
    }

    #[test]
    fn epsilon_ignores_edge_order() {
        let a = g(7, &[[1, 2, 3], [3, 4, 5], [5, 6, 7]]);
        let b = g(7, &[[5, 6, 7], [1, 2, 3], [3, 4, 5]]);
        assert_ne!(epsilon(&a), 0);
        assert_eq!(epsilon(&a), epsilon(&b));
    }

    #[test]
    fn small_pm() {
        assert_eq!(pfaffian_tree_poly(3).unwrap().to_string(), "+1*y[1,2,3]");
        assert!(pfaffian_tree_poly(4).unwrap().is_zero());
        let p5 = pfaffian_tree_poly(5).unwrap();
        assert_eq!(p5.len(), 15);
        let mono = |a: [u32; 3], b: [u32; 3]| Monomial::from_vars(vec![VarId::Y(a[0], a[1], a[2]), VarId::Y(b[0], b[1], b[2])]);
        assert_eq!(p5.coeff(&mono([1, 2, 3], [1, 4, 5])), BigInt::from(1));
        assert_eq!(p5.coeff(&mono([1, 2, 4], [1, 3, 5])), BigInt::from(-1));
        assert_eq!(p5.coeff(&mono([1, 2, 5], [1, 3, 4])), BigInt::from(1));
    }

    #[test]
    fn lambda_example() {
        let mut mu = MuTable::new(3);
        mu.set(1, 2, 3, BigInt::one()).unwrap();
        let l = lambda_skew_numeric(&mu);
        assert_eq!(*l.get(0, 1), BigInt::from(1));
        assert_eq!(*l.get(0, 2), BigInt::from(-1));
        assert_eq!(*l.get(1, 2), BigInt::from(1));
    }

    #[test]
    fn pmtt_small() {
        for m in [3, 4, 5] {
            assert!(pmtt_check(m).unwrap().ok, "m = {m}");
        }
    }

    #[test]
    fn decomposition_fixtures() {
        let y = |i, j, k| VarId::Y(i, j, k);
        let m1 = Monomial::from_vars(vec![y(1, 2, 3), y(1, 2, 3)]);
        assert_eq!(ordered_tree_decompositions(&ThreeGraph::from_monomial(&m1).unwrap()).len(), 2);
        assert_eq!(coeff_via_decompositions(&m1).unwrap(), BigRational::one());
        let m2 = Monomial::from_vars(vec![y(1, 2, 3), y(1, 2, 3), y(2, 4, 5), y(3, 4, 5)]);
        let g2 = ThreeGraph::from_monomial(&m2).unwrap();
        assert_eq!(ordered_tree_decompositions(&g2).len(), 4);
        assert_eq!(coeff_via_decompositions(&m2).unwrap(), BigRational::from_integer(2.into()));
    }
}
