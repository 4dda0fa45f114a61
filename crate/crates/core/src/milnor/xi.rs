use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::tree::LabeledTree;
use crate::pfaffian_tree::MuTable;
use crate::Error;

/// A rational combination of labelled trees of one degree, with labels in
/// `1..=m`, stored on canonical representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiElement {
    degree: usize,
    m: u32,
    terms: BTreeMap<LabeledTree, BigRational>,
}

impl XiElement {
    pub fn new(degree: usize, m: u32) -> Self {
        XiElement { degree, m, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> u32 {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LabeledTree, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `c * t`, canonicalizing `t`.
    pub fn add(&mut self, t: &LabeledTree, c: BigRational) -> Result<(), Error> {
        if t.degree() != self.degree {
            return Err(Error::invalid(format!("tree {t} has degree {}, expected {}", t.degree(), self.degree)));
        }
        if t.max_label() > self.m {
            return Err(Error::invalid(format!("tree {t} has a label above {}", self.m)));
        }
        let Some((canon, s)) = t.canonical() else { return Ok(()) };
        let c = if s < 0 { -c } else { c };
        let entry = self.terms.entry(canon.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&canon);
        }
        Ok(())
    }

    pub fn single(t: &LabeledTree, m: u32) -> Result<Self, Error> {
        let mut x = XiElement::new(t.degree(), m);
        x.add(t, BigRational::one())?;
        Ok(x)
    }

    /// Coefficient of a tree, taking its canonical sign into account.
    pub fn coeff(&self, t: &LabeledTree) -> BigRational {
        match t.canonical() {
            None => BigRational::zero(),
            Some((canon, s)) => {
                let c = self.terms.get(&canon).cloned().unwrap_or_default();
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Coordinate `l_ij` of a degree-1 element: the coefficient of `i:j`.
    pub fn strut_coord(&self, i: u32, j: u32) -> BigRational {
        self.coeff(&LabeledTree::strut(i, j))
    }

    /// Coordinate `mu_ijk` of a degree-2 element: the coefficient of `Y_ijk`.
    pub fn y_coord(&self, i: u32, j: u32, k: u32) -> BigRational {
        self.coeff(&LabeledTree::y(i, j, k))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = XiElement::new(self.degree, self.m);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(t, v)| (t.clone(), v * c)).collect();
        }
        out
    }

    pub fn add_scaled(&mut self, other: &XiElement, c: &BigRational) -> Result<(), Error> {
        if other.degree != self.degree {
            return Err(Error::invalid("degree mismatch"));
        }
        self.m = self.m.max(other.m);
        for (t, v) in &other.terms {
            self.add(t, v * c)?;
        }
        Ok(())
    }

    pub fn sub(&self, other: &XiElement) -> Result<Self, Error> {
        let mut out = self.clone();
        out.add_scaled(other, &-BigRational::one())?;
        Ok(out)
    }

    /// The degree-1 element `sum_{i<j} l_ij (i:j)`.
    pub fn from_linking(l: impl Fn(u32, u32) -> BigInt, m: u32) -> Self {
        let mut x = XiElement::new(1, m);
        for i in 1..=m {
            for j in i + 1..=m {
                x.add(&LabeledTree::strut(i, j), BigRational::from_integer(l(i, j))).expect("labels in range");
            }
        }
        x
    }

    /// The degree-2 element `sum_{i<j<k} mu_ijk Y_ijk`.
    pub fn from_mu(mu: &MuTable) -> Self {
        let mut x = XiElement::new(2, mu.size());
        for (&[i, j, k], v) in mu.entries() {
            x.add(&LabeledTree::y(i, j, k), BigRational::from_integer(v.clone())).expect("labels in range");
        }
        x
    }
}

/// Parse lines `tree <degree> <encoded tree> * <rational>`. Blank lines and
/// text after `#` are ignored. A line `degree <n>` fixes the degree, which
/// allows an empty element. The label bound is `m` when given, otherwise
/// the largest label present.
///
/// ```
/// use conway_trees::milnor::parse_xi;
/// let xi = parse_xi("tree 2 1:[2,3] * 1\ntree 2 1:[3,2] * 1/2\n", None).unwrap();
/// assert_eq!(xi.y_coord(1, 2, 3), num_rational::BigRational::new(1.into(), 2.into()));
/// ```
pub fn parse_xi(text: &str, m: Option<u32>) -> Result<XiElement, Error> {
    let mut rows = Vec::new();
    let mut header: Option<usize> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::parse(n + 1, msg);
        if let Some(d) = line.strip_prefix("degree") {
            let d: usize = d.trim().parse().map_err(|_| err("bad degree"))?;
            if header.replace(d).is_some_and(|old| old != d) {
                return Err(err("conflicting degree lines"));
            }
            continue;
        }
        let rest = line.strip_prefix("tree").ok_or_else(|| err("expected `tree <degree> <tree> * <rational>`"))?;
        let (lhs, coeff) = rest.split_once('*').ok_or_else(|| err("missing `* <rational>`"))?;
        let mut parts = lhs.split_whitespace();
        let degree: usize = parts.next().and_then(|d| d.parse().ok()).ok_or_else(|| err("bad degree"))?;
        let enc: String = parts.collect();
        let tree: LabeledTree = enc.parse().map_err(|e: Error| err(&e.to_string()))?;
        if tree.degree() != degree {
            return Err(err(&format!("tree {tree} has degree {}, not {degree}", tree.degree())));
        }
        let c: BigRational = coeff.trim().parse().map_err(|_| err("bad rational coefficient"))?;
        rows.push((n + 1, degree, tree, c));
    }
    let Some(degree) = header.or_else(|| rows.first().map(|r| r.1)) else {
        return Err(Error::invalid("no tree lines and no degree line"));
    };
    if let Some(r) = rows.iter().find(|r| r.1 != degree) {
        return Err(Error::parse(r.0, format!("degree {} differs from {degree}", r.1)));
    }
    let bound = m.unwrap_or_else(|| rows.iter().map(|r| r.2.max_label()).max().unwrap_or(1));
    let mut x = XiElement::new(degree, bound);
    for (line, _, t, c) in rows {
        x.add(&t, c).map_err(|e| Error::parse(line, e.to_string()))?;
    }
    Ok(x)
}

pub fn write_xi(x: &XiElement) -> String {
    let mut out = format!("degree {}\n", x.degree());
    for (t, c) in x.terms() {
        writeln!(out, "tree {} {t} * {c}", x.degree()).expect("write to string");
    }
    out
}

/// Integer Milnor numbers indexed by sequences of equal length, read from
/// lines `mu i1 ... ik = v`; missing entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MilnorTable {
    len: usize,
    values: BTreeMap<Vec<u32>, BigInt>,
}

impl MilnorTable {
    pub fn new(len: usize) -> Self {
        MilnorTable { len, values: BTreeMap::new() }
    }

    /// Length of the index sequences (degree plus one).
    pub fn index_len(&self) -> usize {
        self.len
    }

    pub fn max_index(&self) -> u32 {
        self.values.keys().flatten().copied().max().unwrap_or(0)
    }

    pub fn set(&mut self, idx: Vec<u32>, v: BigInt) -> Result<(), Error> {
        if idx.len() != self.len {
            return Err(Error::invalid(format!("expected {} indices, got {}", self.len, idx.len())));
        }
        if idx.contains(&0) {
            return Err(Error::invalid("indices start at 1"));
        }
        if v.is_zero() {
            self.values.remove(&idx);
        } else {
            self.values.insert(idx, v);
        }
        Ok(())
    }

    pub fn get(&self, idx: &[u32]) -> BigInt {
        self.values.get(idx).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.values.iter()
    }

    /// All entries of an antisymmetric triple table, written out for every
    /// ordering of the indices.
    pub fn from_triples(mu: &MuTable) -> Self {
        let mut t = MilnorTable::new(3);
        for (&[i, j, k], v) in mu.entries() {
            for (p, s) in [([i, j, k], 1), ([j, k, i], 1), ([k, i, j], 1), ([j, i, k], -1), ([i, k, j], -1), ([k, j, i], -1)] {
                t.values.insert(p.to_vec(), v * BigInt::from(s));
            }
        }
        t
    }

    /// Read a length-3 table as an antisymmetric triple table, checking that
    /// the given entries are consistent with antisymmetry.
    pub fn to_triples(&self, m: u32) -> Result<MuTable, Error> {
        if self.len != 3 {
            return Err(Error::invalid("not a table of triple linking numbers"));
        }
        let mut mu = MuTable::new(m);
        let mut seen: BTreeMap<[u32; 3], BigInt> = BTreeMap::new();
        for (idx, v) in &self.values {
            let mut key = [idx[0], idx[1], idx[2]];
            let s = crate::exactalg::y_canon(key[0], key[1], key[2]).map(|(_, s)| s);
            let Some(s) = s else {
                return Err(Error::invalid(format!("mu {idx:?} repeats an index but is nonzero")));
            };
            key.sort_unstable();
            let val = if s < 0 { -v.clone() } else { v.clone() };
            if let Some(old) = seen.get(&key) {
                if *old != val {
                    return Err(Error::invalid(format!("entries for {key:?} contradict antisymmetry")));
                }
            }
            seen.insert(key, val.clone());
            mu.set(key[0], key[1], key[2], val)?;
        }
        Ok(mu)
    }
}

/// Parse lines `mu i1 ... ik = v`; blank lines and `#` comments are ignored.
///
/// ```
/// use conway_trees::milnor::parse_mu_table;
/// let t = parse_mu_table("mu 1 2 3 = 1\n# Borromean rings\n").unwrap();
/// assert_eq!(t.get(&[1, 2, 3]), 1.into());
/// ```
pub fn parse_mu_table(text: &str) -> Result<MilnorTable, Error> {
    let mut table: Option<MilnorTable> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::parse(n + 1, msg);
        let rest = line.strip_prefix("mu").ok_or_else(|| err("expected `mu i j k = v`"))?;
        let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err("missing `= v`"))?;
        let idx: Vec<u32> = lhs.split_whitespace().map(|s| s.parse().map_err(|_| err("bad index"))).collect::<Result<_, _>>()?;
        let v: BigInt = rhs.trim().parse().map_err(|_| err("bad integer value"))?;
        let t = table.get_or_insert_with(|| MilnorTable::new(idx.len()));
        t.set(idx, v).map_err(|e| err(&e.to_string()))?;
    }
    table.ok_or_else(|| Error::invalid("no mu lines"))
}
