use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::kirchhoff::UnionFind;
use crate::Error;

pub type NodeId = u32;

/// A half-edge: slot 0 of a leg, or slot 0..3 of a trivalent vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Half {
    pub node: NodeId,
    pub slot: u8,
}

impl Half {
    pub fn leg(node: NodeId) -> Half {
        Half { node, slot: 0 }
    }

    pub fn tri(node: NodeId, slot: u8) -> Half {
        Half { node, slot }
    }

    /// The next slot in the cyclic order at a trivalent vertex.
    pub fn rotate(self, by: u8) -> Half {
        Half { node: self.node, slot: (self.slot + by) % 3 }
    }
}

/// A uni-trivalent dashed graph attached to `m` oriented solid circles.
///
/// Legs (univalent vertices) sit on the circles in the listed cyclic order,
/// which follows the orientation of the circle. Each trivalent vertex has
/// three slots whose numbering gives its cyclic orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    circles: Vec<Vec<NodeId>>,
    tri: BTreeSet<NodeId>,
    link: BTreeMap<Half, Half>,
    next: NodeId,
}

/// Shape of a connected dashed component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentKind {
    /// A tree; degree 1 is a chord, degree 2 a Y.
    Tree(usize),
    /// A cycle of trivalent vertices with one leg each.
    Wheel(usize),
    Other,
}

/// A connected component of the dashed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub legs: Vec<NodeId>,
    pub tri: Vec<NodeId>,
    pub kind: ComponentKind,
}

impl Component {
    pub fn degree(&self) -> usize {
        (self.legs.len() + self.tri.len()) / 2
    }
}

impl Diagram {
    pub fn new(m: usize) -> Self {
        Diagram { circles: vec![Vec::new(); m], tri: BTreeSet::new(), link: BTreeMap::new(), next: 0 }
    }

    pub fn num_circles(&self) -> usize {
        self.circles.len()
    }

    pub fn circles(&self) -> &[Vec<NodeId>] {
        &self.circles
    }

    pub fn trivalent(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.tri.iter().copied()
    }

    pub fn num_legs(&self) -> usize {
        self.circles.iter().map(Vec::len).sum()
    }

    pub fn num_trivalent(&self) -> usize {
        self.tri.len()
    }

    /// Half the number of vertices.
    pub fn degree(&self) -> usize {
        (self.num_legs() + self.tri.len()) / 2
    }

    pub fn is_trivalent(&self, node: NodeId) -> bool {
        self.tri.contains(&node)
    }

    pub fn partner(&self, h: Half) -> Half {
        self.link[&h]
    }

    pub fn add_circle(&mut self) -> usize {
        self.circles.push(Vec::new());
        self.circles.len() - 1
    }

    /// Append a new leg at the end of circle `c` (0-based).
    pub fn add_leg(&mut self, c: usize) -> NodeId {
        let id = self.fresh();
        self.circles[c].push(id);
        id
    }

    pub fn add_trivalent(&mut self) -> NodeId {
        let id = self.fresh();
        self.tri.insert(id);
        id
    }

    fn fresh(&mut self) -> NodeId {
        self.next += 1;
        self.next - 1
    }

    pub fn connect(&mut self, a: Half, b: Half) {
        self.link.insert(a, b);
        self.link.insert(b, a);
    }

    /// A chord between new legs at the ends of circles `a` and `b`.
    pub fn add_chord(&mut self, a: usize, b: usize) {
        let (x, y) = (self.add_leg(a), self.add_leg(b));
        self.connect(Half::leg(x), Half::leg(y));
    }

    /// A Y whose legs, appended to circles `a`, `b`, `c`, occur in that
    /// cyclic order around the vertex.
    pub fn add_y(&mut self, a: usize, b: usize, c: usize) -> NodeId {
        let v = self.add_trivalent();
        for (slot, circ) in [a, b, c].into_iter().enumerate() {
            let l = self.add_leg(circ);
            self.connect(Half::leg(l), Half::tri(v, slot as u8));
        }
        v
    }

    /// Position `(circle, index)` of a leg.
    pub fn leg_position(&self, leg: NodeId) -> Option<(usize, usize)> {
        self.circles.iter().enumerate().find_map(|(c, circ)| circ.iter().position(|&l| l == leg).map(|i| (c, i)))
    }

    pub fn legs(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.circles.iter().flatten().copied()
    }

    pub fn validate(&self) -> Result<(), Error> {
        let legs: BTreeSet<NodeId> = self.legs().collect();
        if legs.len() != self.num_legs() {
            return Err(Error::invalid("a leg appears twice on the circles"));
        }
        for &l in &legs {
            if self.tri.contains(&l) {
                return Err(Error::invalid("a node is both a leg and a trivalent vertex"));
            }
            match self.link.get(&Half::leg(l)) {
                Some(p) if self.link.get(p) == Some(&Half::leg(l)) && *p != Half::leg(l) => {}
                _ => return Err(Error::invalid("every leg needs exactly one dashed edge")),
            }
        }
        for &v in &self.tri {
            for s in 0..3 {
                let h = Half::tri(v, s);
                match self.link.get(&h) {
                    Some(p) if self.link.get(p) == Some(&h) && *p != h => {}
                    _ => return Err(Error::invalid("every trivalent vertex needs three dashed edges")),
                }
            }
        }
        for (a, b) in &self.link {
            let known = |h: &Half| (legs.contains(&h.node) && h.slot == 0) || (self.tri.contains(&h.node) && h.slot < 3);
            if !known(a) || !known(b) {
                return Err(Error::invalid("dashed edge refers to an unknown half-edge"));
            }
        }
        if self.components().iter().any(|c| c.legs.is_empty()) {
            return Err(Error::invalid("every dashed component needs a univalent vertex"));
        }
        Ok(())
    }

    /// Dashed components, ordered by their first leg along the circles.
    pub fn components(&self) -> Vec<Component> {
        let nodes: Vec<NodeId> = self.legs().chain(self.tri.iter().copied()).collect();
        let index: HashMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut uf = UnionFind::new(nodes.len());
        for (a, b) in &self.link {
            uf.union(index[&a.node], index[&b.node]);
        }
        let mut by_root: BTreeMap<usize, (usize, Vec<NodeId>, Vec<NodeId>)> = BTreeMap::new();
        for (i, &n) in nodes.iter().enumerate() {
            let r = uf.find(i);
            let e = by_root.entry(r).or_insert((i, Vec::new(), Vec::new()));
            e.0 = e.0.min(i);
            if self.tri.contains(&n) {
                e.2.push(n);
            } else {
                e.1.push(n);
            }
        }
        let mut comps: Vec<(usize, Component)> = by_root
            .into_values()
            .map(|(first, legs, tri)| {
                let kind = self.classify(&legs, &tri);
                (first, Component { legs, tri, kind })
            })
            .collect();
        comps.sort_by_key(|c| c.0);
        comps.into_iter().map(|c| c.1).collect()
    }

    fn classify(&self, legs: &[NodeId], tri: &[NodeId]) -> ComponentKind {
        let edges = (legs.len() + 3 * tri.len()) / 2;
        let vertices = legs.len() + tri.len();
        if edges + 1 == vertices {
            return ComponentKind::Tree((legs.len() + tri.len()) / 2);
        }
        let k = tri.len();
        if edges == vertices && legs.len() == k {
            let wheel = tri.iter().all(|&v| {
                let ps: Vec<Half> = (0..3).map(|s| self.partner(Half::tri(v, s))).collect();
                ps.iter().filter(|p| !self.tri.contains(&p.node)).count() == 1
                    && ps.iter().all(|p| p.node != v)
            });
            if wheel {
                return ComponentKind::Wheel(k);
            }
        }
        ComponentKind::Other
    }

    pub(crate) fn unlink(&mut self, h: Half) -> Half {
        let p = self.link.remove(&h).expect("half-edge is linked");
        self.link.remove(&p);
        p
    }

    /// Remove a leg from its circle and drop its dashed edge.
    pub(crate) fn remove_leg(&mut self, leg: NodeId) {
        let (c, i) = self.leg_position(leg).expect("leg on a circle");
        self.circles[c].remove(i);
        if self.link.contains_key(&Half::leg(leg)) {
            self.unlink(Half::leg(leg));
        }
    }

    /// Remove a trivalent vertex and its dashed edges.
    pub(crate) fn remove_trivalent(&mut self, v: NodeId) {
        for s in 0..3 {
            if self.link.contains_key(&Half::tri(v, s)) {
                self.unlink(Half::tri(v, s));
            }
        }
        self.tri.remove(&v);
    }

    pub(crate) fn replace_circle(&mut self, c: usize, legs: Vec<NodeId>) {
        self.circles[c] = legs;
    }

    pub(crate) fn remove_circle(&mut self, c: usize) -> Vec<NodeId> {
        self.circles.remove(c)
    }

    pub(crate) fn push_circle(&mut self, legs: Vec<NodeId>) {
        self.circles.push(legs);
    }

    pub(crate) fn insert_leg_at(&mut self, c: usize, pos: usize) -> NodeId {
        let id = self.fresh();
        self.circles[c].insert(pos, id);
        id
    }

    /// Reverse the cyclic order at a trivalent vertex.
    pub fn flip_vertex(&mut self, v: NodeId) {
        let p1 = self.unlink(Half::tri(v, 1));
        let p2 = if self.link.contains_key(&Half::tri(v, 2)) {
            Some(self.unlink(Half::tri(v, 2)))
        } else {
            None
        };
        // A loop between slots 1 and 2 maps to itself.
        match p2 {
            Some(p2) => {
                self.connect(Half::tri(v, 2), p1);
                self.connect(Half::tri(v, 1), p2);
            }
            None => self.connect(Half::tri(v, 1), Half::tri(v, 2)),
        }
    }

    fn encode(&self, rot: &[usize]) -> String {
        let mut leg_label: HashMap<NodeId, usize> = HashMap::new();
        let mut order: Vec<NodeId> = Vec::new();
        for (c, circ) in self.circles.iter().enumerate() {
            for i in 0..circ.len() {
                let l = circ[(i + rot[c]) % circ.len()];
                leg_label.insert(l, order.len());
                order.push(l);
            }
        }
        let mut vlabel: HashMap<NodeId, (usize, u8)> = HashMap::new();
        let mut vorder: Vec<NodeId> = Vec::new();
        let mut stack: Vec<Half> = Vec::new();
        for &l in &order {
            stack.push(self.partner(Half::leg(l)));
            while let Some(h) = stack.pop() {
                if !self.tri.contains(&h.node) || vlabel.contains_key(&h.node) {
                    continue;
                }
                vlabel.insert(h.node, (vorder.len(), h.slot));
                vorder.push(h.node);
                stack.push(self.partner(h.rotate(2)));
                stack.push(self.partner(h.rotate(1)));
            }
        }
        let code = |h: Half| -> String {
            if let Some((lab, off)) = vlabel.get(&h.node) {
                format!("V{}.{}", lab, (h.slot + 3 - off) % 3)
            } else {
                format!("L{}", leg_label[&h.node])
            }
        };
        let mut s = String::new();
        for circ in &self.circles {
            let _ = write!(s, "{},", circ.len());
        }
        s.push('|');
        for &l in &order {
            s.push_str(&code(self.partner(Half::leg(l))));
            s.push(' ');
        }
        s.push('|');
        for &v in &vorder {
            let off = vlabel[&v].1;
            for k in 0..3 {
                s.push_str(&code(self.partner(Half::tri(v, (off + k) % 3))));
                s.push(',');
            }
            s.push(' ');
        }
        s
    }

    /// Encoding invariant under rotating each circle's leg list and under
    /// renaming nodes, so equal keys mean equal diagrams.
    pub fn canonical_key(&self) -> String {
        let lens: Vec<usize> = self.circles.iter().map(|c| c.len().max(1)).collect();
        let mut rot = vec![0usize; lens.len()];
        let mut best = self.encode(&rot);
        loop {
            let Some(c) = (0..rot.len()).find(|&c| rot[c] + 1 < lens[c]) else { break };
            rot[c] += 1;
            for r in rot.iter_mut().take(c) {
                *r = 0;
            }
            let e = self.encode(&rot);
            if e < best {
                best = e;
            }
        }
        best
    }
}
