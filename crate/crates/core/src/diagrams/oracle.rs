use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::diagram::{Diagram, Half, NodeId};
use crate::Error;

/// Formal rational combination of diagrams, keyed by canonical form.
#[derive(Clone, Debug, Default)]
pub struct DiagramSum {
    terms: BTreeMap<String, (Diagram, BigRational)>,
}

impl DiagramSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, d: Diagram, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let key = d.canonical_key();
        let remove = match self.terms.get_mut(&key) {
            Some((_, old)) => {
                *old += c;
                old.is_zero()
            }
            None => {
                self.terms.insert(key.clone(), (d, c));
                false
            }
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Diagram, &BigRational)> {
        self.terms.values().map(|(d, c)| (d, c))
    }
}

/// Weight of a diagram without trivalent vertices: smooth every chord and
/// return 1 if a single circle remains, otherwise 0.
pub fn chord_weight(d: &Diagram) -> Result<i64, Error> {
    if d.num_trivalent() > 0 {
        return Err(Error::invalid("chord_weight needs a diagram without trivalent vertices"));
    }
    let mut next: HashMap<NodeId, NodeId> = HashMap::new();
    let mut empty = 0usize;
    for circ in d.circles() {
        if circ.is_empty() {
            empty += 1;
        }
        for (i, &l) in circ.iter().enumerate() {
            next.insert(l, circ[(i + 1) % circ.len()]);
        }
    }
    // Smoothing a chord pq composes the successor map with the transposition (p q).
    let mut smoothed = next.clone();
    for l in d.legs() {
        let q = d.partner(Half::leg(l)).node;
        smoothed.insert(l, next[&q]);
    }
    let mut seen = std::collections::HashSet::new();
    let mut cycles = empty;
    for l in d.legs() {
        if seen.contains(&l) {
            continue;
        }
        cycles += 1;
        let mut x = l;
        while seen.insert(x) {
            x = smoothed[&x];
        }
    }
    Ok(i64::from(cycles == 1))
}

/// Apply STU at the trivalent vertex attached to `leg`. Returns the T and U
/// terms; the relation reads `S = T - U`.
pub fn stu_at_leg(d: &Diagram, leg: NodeId) -> Option<(Diagram, Diagram)> {
    let s = d.partner(Half::leg(leg));
    if !d.is_trivalent(s.node) {
        return None;
    }
    let (b, c) = (s.rotate(1), s.rotate(2));
    let (pb, pc) = (d.partner(b), d.partner(c));
    let (circ, pos) = d.leg_position(leg)?;
    let build = |b_first: bool| {
        let mut e = d.clone();
        e.remove_trivalent(s.node);
        e.remove_leg(leg);
        let first = e.insert_leg_at(circ, pos);
        let second = e.insert_leg_at(circ, pos + 1);
        let (lb, lc) = if b_first { (first, second) } else { (second, first) };
        if pb == c {
            e.connect(Half::leg(lb), Half::leg(lc));
        } else {
            e.connect(Half::leg(lb), pb);
            e.connect(Half::leg(lc), pc);
        }
        e
    };
    Some((build(true), build(false)))
}

/// First leg, in circle order, attached to a trivalent vertex.
pub(crate) fn first_stu_leg(d: &Diagram) -> Option<NodeId> {
    d.legs().find(|&l| d.is_trivalent(d.partner(Half::leg(l)).node))
}

/// One STU step at the first applicable leg.
pub fn stu_step(d: &Diagram) -> Option<(Diagram, Diagram)> {
    stu_at_leg(d, first_stu_leg(d)?)
}

/// Expand into chord diagrams by repeated STU.
pub fn stu_expand(d: &Diagram) -> DiagramSum {
    let mut out = DiagramSum::new();
    let mut work = vec![(d.clone(), BigRational::from_integer(1.into()))];
    while let Some((e, c)) = work.pop() {
        match stu_step(&e) {
            None => out.add(e, c),
            Some((t, u)) => {
                work.push((u, -c.clone()));
                work.push((t, c));
            }
        }
    }
    out
}

fn oracle_rec(d: &Diagram) -> i64 {
    match stu_step(d) {
        None => chord_weight(d).expect("no trivalent vertices left"),
        Some((t, u)) => oracle_rec(&t) - oracle_rec(&u),
    }
}

/// Reference weight: STU expansion followed by chord smoothing.
pub fn weight_oracle(d: &Diagram) -> BigRational {
    BigRational::from_integer(BigInt::from(oracle_rec(d)))
}

/// IHX at the edge joining trivalent `p` (through slot `p.slot`) to another
/// trivalent vertex `q`. Viewing `p` as the bracket `[[A,B],C]` with `q`
/// carrying `A`, `B`, returns `([A,[B,C]], [B,[A,C]])`; the relation reads
/// `D = first - second`.
pub fn ihx_at(d: &Diagram, p: Half) -> Option<(Diagram, Diagram)> {
    let q = d.partner(p);
    if !d.is_trivalent(p.node) || !d.is_trivalent(q.node) || p.node == q.node {
        return None;
    }
    let (qa, qb, pc) = (q.rotate(1), q.rotate(2), p.rotate(1));
    let (ha, hb, hc) = (d.partner(qa), d.partner(qb), d.partner(pc));
    if [ha, hb, hc].iter().any(|h| h.node == p.node || h.node == q.node) {
        return None;
    }
    let build = |first: Half, inner: Half| {
        let mut e = d.clone();
        for h in [p, qa, qb, pc] {
            e.unlink(h);
        }
        e.connect(p, first);
        e.connect(pc, Half::tri(q.node, q.slot));
        e.connect(qa, inner);
        e.connect(qb, hc);
        e
    };
    Some((build(ha, hb), build(hb, ha)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::parse_diagram;

    #[test]
    fn smoothing_examples() {
        let mut d = Diagram::new(3);
        d.add_chord(0, 1);
        d.add_chord(1, 2);
        assert_eq!(chord_weight(&d).unwrap(), 1);
        let mut e = Diagram::new(2);
        e.add_chord(0, 0);
        assert_eq!(chord_weight(&e).unwrap(), 0);
        assert_eq!(chord_weight(&Diagram::new(1)).unwrap(), 1);
        assert_eq!(chord_weight(&Diagram::new(2)).unwrap(), 0);
    }

    #[test]
    fn h_diagram_weight() {
        let h = "circles 2\ncircle 1: a b\ncircle 2: c d\ntriv u: e l r\ntriv v: e l r\n\
                 edge u.e v.e\nedge a u.l\nedge c u.r\nedge b v.r\nedge d v.l\n";
        let d = parse_diagram(h).unwrap();
        assert_eq!(weight_oracle(&d), BigRational::from_integer((-2).into()));
    }

    #[test]
    fn two_ys_on_three_circles() {
        let mut d = Diagram::new(3);
        d.add_y(0, 1, 2);
        d.add_y(0, 1, 2);
        assert_eq!(weight_oracle(&d), BigRational::from_integer(2.into()));
    }

    #[test]
    fn expansion_sums_to_oracle() {
        let mut d = Diagram::new(3);
        d.add_y(0, 1, 2);
        d.add_y(0, 2, 1);
        d.add_chord(1, 2);
        let total: BigRational = stu_expand(&d).iter().map(|(e, c)| c * BigRational::from_integer(chord_weight(e).unwrap().into())).sum();
        assert_eq!(total, weight_oracle(&d));
    }
}
