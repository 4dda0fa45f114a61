use std::fmt;
use std::str::FromStr;

use crate::diagrams::{Diagram, Half, NodeId};
use crate::Error;

/// A rooted planar binary tree whose leaves carry labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Body {
    Leaf(u32),
    Node(Box<Body>, Box<Body>),
}

impl Body {
    pub fn node(a: Body, b: Body) -> Body {
        Body::Node(Box::new(a), Box::new(b))
    }

    fn leaves(&self) -> usize {
        match self {
            Body::Leaf(_) => 1,
            Body::Node(a, b) => a.leaves() + b.leaves(),
        }
    }

    fn labels_into(&self, out: &mut Vec<u32>) {
        match self {
            Body::Leaf(l) => out.push(*l),
            Body::Node(a, b) => {
                a.labels_into(out);
                b.labels_into(out);
            }
        }
    }

    fn map_labels(&self, f: &impl Fn(u32) -> u32) -> Body {
        match self {
            Body::Leaf(l) => Body::Leaf(f(*l)),
            Body::Node(a, b) => Body::node(a.map_labels(f), b.map_labels(f)),
        }
    }
}

impl fmt::Display for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Body::Leaf(l) => write!(f, "{l}"),
            Body::Node(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// A uni-trivalent tree with labelled legs, written from a root leg as
/// `root:body` where a body is a label or a bracket `[body,body]`.
///
/// Every trivalent vertex has the cyclic order (towards the root, left
/// child, right child). The strut between legs `i` and `j` is `i:j` and the
/// Y with cyclic order `(i, j, k)` is `i:[j,k]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledTree {
    root: u32,
    body: Body,
}

#[derive(Clone, Copy, Debug)]
enum GNode {
    Leaf { label: u32, nbr: usize },
    Tri([usize; 3]),
}

fn graph_of(t: &LabeledTree) -> Vec<GNode> {
    fn add(b: &Body, parent: usize, g: &mut Vec<GNode>) -> usize {
        match b {
            Body::Leaf(l) => {
                g.push(GNode::Leaf { label: *l, nbr: parent });
                g.len() - 1
            }
            Body::Node(x, y) => {
                let me = g.len();
                g.push(GNode::Tri([parent, 0, 0]));
                let ix = add(x, me, g);
                let iy = add(y, me, g);
                g[me] = GNode::Tri([parent, ix, iy]);
                me
            }
        }
    }
    let mut g = vec![GNode::Leaf { label: t.root, nbr: 0 }];
    let first = add(&t.body, 0, &mut g);
    g[0] = GNode::Leaf { label: t.root, nbr: first };
    g
}

/// Body seen from `parent`, with children sorted; `None` when two sibling
/// subtrees coincide, which forces the tree to vanish by antisymmetry.
fn sorted_from(g: &[GNode], node: usize, parent: usize) -> Option<(Body, i8)> {
    match g[node] {
        GNode::Leaf { label, .. } => Some((Body::Leaf(label), 1)),
        GNode::Tri(nb) => {
            let s = nb.iter().position(|&x| x == parent).expect("parent is adjacent");
            let (a, sa) = sorted_from(g, nb[(s + 1) % 3], node)?;
            let (b, sb) = sorted_from(g, nb[(s + 2) % 3], node)?;
            match a.cmp(&b) {
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Less => Some((Body::node(a, b), sa * sb)),
                std::cmp::Ordering::Greater => Some((Body::node(b, a), -sa * sb)),
            }
        }
    }
}

impl LabeledTree {
    pub fn new(root: u32, body: Body) -> Result<Self, Error> {
        let t = LabeledTree { root, body };
        if t.labels().contains(&0) {
            return Err(Error::invalid("tree labels start at 1"));
        }
        Ok(t)
    }

    pub fn strut(i: u32, j: u32) -> Self {
        LabeledTree { root: i, body: Body::Leaf(j) }
    }

    /// The Y with cyclic order `(i, j, k)`.
    pub fn y(i: u32, j: u32, k: u32) -> Self {
        LabeledTree { root: i, body: Body::node(Body::Leaf(j), Body::Leaf(k)) }
    }

    /// The H-shaped tree with legs `l`, `i` on one vertex and `k`, `j` on
    /// the other, drawn as the letter H with `l` top left, `i` bottom left,
    /// `k` top right and `j` bottom right.
    pub fn h(l: u32, i: u32, k: u32, j: u32) -> Self {
        let right = Body::node(Body::Leaf(j), Body::Leaf(k));
        LabeledTree { root: l, body: Body::node(Body::Leaf(i), right) }
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    /// Half the number of vertices; equals the number of non-root legs.
    pub fn degree(&self) -> usize {
        self.body.leaves()
    }

    /// Leg labels, root first.
    pub fn labels(&self) -> Vec<u32> {
        let mut out = vec![self.root];
        self.body.labels_into(&mut out);
        out
    }

    pub fn max_label(&self) -> u32 {
        self.labels().into_iter().max().unwrap_or(0)
    }

    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Self {
        LabeledTree { root: f(self.root), body: self.body.map_labels(&f) }
    }

    /// Canonical representative and the sign relating it to `self`, or
    /// `None` when the tree is zero modulo antisymmetry. The representative
    /// is the least encoding over all choices of root leg, with the children
    /// of every vertex sorted.
    pub fn canonical(&self) -> Option<(LabeledTree, i8)> {
        let g = graph_of(self);
        let mut best: Option<(LabeledTree, i8)> = None;
        for (i, n) in g.iter().enumerate() {
            let GNode::Leaf { label, nbr } = *n else { continue };
            let (body, s) = sorted_from(&g, nbr, i)?;
            let cand = LabeledTree { root: label, body };
            match &best {
                Some((b, bs)) if cand == *b => {
                    if s != *bs {
                        return None;
                    }
                }
                Some((b, _)) if cand > *b => {}
                _ => best = Some((cand, s)),
            }
        }
        best
    }

    /// Attach the tree to `d`, putting each leg labelled `i` at the end of
    /// circle `i - 1`.
    pub fn attach(&self, d: &mut Diagram) -> Result<(), Error> {
        if self.max_label() as usize > d.num_circles() {
            return Err(Error::invalid(format!("tree {self} has a label above {}", d.num_circles())));
        }
        let g = graph_of(self);
        let ids: Vec<NodeId> = g
            .iter()
            .map(|n| match *n {
                GNode::Leaf { label, .. } => d.add_leg(label as usize - 1),
                GNode::Tri(_) => d.add_trivalent(),
            })
            .collect();
        let half_towards = |from: usize, to: usize| -> Half {
            match g[to] {
                GNode::Leaf { .. } => Half::leg(ids[to]),
                GNode::Tri(nb) => Half::tri(ids[to], nb.iter().position(|&x| x == from).expect("adjacent") as u8),
            }
        };
        for (i, n) in g.iter().enumerate() {
            let nbrs: Vec<usize> = match *n {
                GNode::Leaf { nbr, .. } => vec![nbr],
                GNode::Tri(nb) => nb.to_vec(),
            };
            for j in nbrs {
                if i < j {
                    d.connect(half_towards(j, i), half_towards(i, j));
                }
            }
        }
        Ok(())
    }

    /// Read the tree component containing `leg`, labelling legs by their
    /// circle (circle `c` gives label `c + 1`).
    pub fn from_diagram(d: &Diagram, leg: NodeId) -> Result<Self, Error> {
        fn walk(d: &Diagram, h: Half, depth: usize) -> Result<Body, Error> {
            if depth > d.num_trivalent() + 1 {
                return Err(Error::invalid("component is not a tree"));
            }
            if d.is_trivalent(h.node) {
                let a = walk(d, d.partner(h.rotate(1)), depth + 1)?;
                let b = walk(d, d.partner(h.rotate(2)), depth + 1)?;
                Ok(Body::node(a, b))
            } else {
                Ok(Body::Leaf(label(d, h.node)?))
            }
        }
        fn label(d: &Diagram, leg: NodeId) -> Result<u32, Error> {
            let (c, _) = d.leg_position(leg).ok_or_else(|| Error::invalid(format!("node {leg} is not a leg")))?;
            Ok(c as u32 + 1)
        }
        Ok(LabeledTree { root: label(d, leg)?, body: walk(d, d.partner(Half::leg(leg)), 0)? })
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.root, self.body)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::invalid(format!("tree encoding at byte {}: {msg}", self.pos))
    }

    fn label(&mut self) -> Result<u32, Error> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("expected a label"))
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn body(&mut self) -> Result<Body, Error> {
        if self.s.get(self.pos) == Some(&b'[') {
            self.pos += 1;
            let a = self.body()?;
            self.expect(b',')?;
            let b = self.body()?;
            self.expect(b']')?;
            Ok(Body::node(a, b))
        } else {
            Ok(Body::Leaf(self.label()?))
        }
    }
}

impl FromStr for LabeledTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { s: compact.as_bytes(), pos: 0 };
        let root = p.label()?;
        p.expect(b':')?;
        let body = p.body()?;
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        LabeledTree::new(root, body)
    }
}
