use rand::seq::SliceRandom;
use rand::Rng;

use super::diagram::{Diagram, Half, NodeId};

/// Which dashed components a random diagram may contain.
#[derive(Clone, Debug)]
pub struct ComponentMix {
    /// Smallest tree degree allowed (1 admits chords, 2 admits Y's).
    pub min_tree_degree: usize,
    pub trees: bool,
    pub wheels: bool,
    /// Connected components with at least one cycle that are not wheels.
    pub others: bool,
}

impl Default for ComponentMix {
    fn default() -> Self {
        ComponentMix { min_tree_degree: 1, trees: true, wheels: true, others: true }
    }
}

fn random_circle(rng: &mut impl Rng, d: &Diagram) -> usize {
    rng.gen_range(0..d.num_circles())
}

fn maybe_flip(rng: &mut impl Rng, d: &mut Diagram, v: NodeId) {
    if rng.gen_bool(0.5) {
        d.flip_vertex(v);
    }
}

/// Add a random tree with `degree + 1` legs on random circles.
pub fn add_random_tree(rng: &mut impl Rng, d: &mut Diagram, degree: usize) {
    assert!(degree >= 1);
    let (c0, c1) = (random_circle(rng, d), random_circle(rng, d));
    let first = d.add_leg(c0);
    let second = d.add_leg(c1);
    d.connect(Half::leg(first), Half::leg(second));
    let mut halves = vec![Half::leg(first)];
    for _ in 1..degree {
        let h = *halves.choose(rng).expect("nonempty");
        let other = d.partner(h);
        d.unlink(h);
        let v = d.add_trivalent();
        let c = random_circle(rng, d);
        let leg = d.add_leg(c);
        d.connect(h, Half::tri(v, 0));
        d.connect(other, Half::tri(v, 1));
        d.connect(Half::leg(leg), Half::tri(v, 2));
        maybe_flip(rng, d, v);
        halves.extend([other, Half::leg(leg)]);
    }
}

/// Add a wheel with `k` legs on random circles.
pub fn add_random_wheel(rng: &mut impl Rng, d: &mut Diagram, k: usize) {
    assert!(k >= 1);
    let vs: Vec<NodeId> = (0..k).map(|_| d.add_trivalent()).collect();
    for i in 0..k {
        let c = random_circle(rng, d);
        let leg = d.add_leg(c);
        d.connect(Half::leg(leg), Half::tri(vs[i], 0));
        d.connect(Half::tri(vs[i], 1), Half::tri(vs[(i + 1) % k], 2));
    }
    for v in vs {
        maybe_flip(rng, d, v);
    }
}

/// Add a connected component with `legs` legs and `tri` trivalent vertices
/// by a random matching of half-edges, retrying until it is connected.
pub fn add_random_connected(rng: &mut impl Rng, d: &mut Diagram, legs: usize, tri: usize) {
    assert!(legs >= 1 && (legs + 3 * tri) % 2 == 0 && tri >= 1);
    loop {
        let mut trial = d.clone();
        let ls: Vec<NodeId> = (0..legs).map(|_| {
            let c = random_circle(rng, &trial);
            trial.add_leg(c)
        }).collect();
        let vs: Vec<NodeId> = (0..tri).map(|_| trial.add_trivalent()).collect();
        let mut halves: Vec<Half> = ls.iter().map(|&l| Half::leg(l)).collect();
        halves.extend(vs.iter().flat_map(|&v| (0..3).map(move |s| Half::tri(v, s))));
        halves.shuffle(rng);
        let leg_pair = halves.chunks(2).any(|p| !trial.is_trivalent(p[0].node) && !trial.is_trivalent(p[1].node));
        if leg_pair {
            continue;
        }
        for p in halves.chunks(2) {
            trial.connect(p[0], p[1]);
        }
        let before = d.components().len();
        if trial.components().len() == before + 1 {
            *d = trial;
            return;
        }
    }
}

/// Random permutation of the legs along every circle.
pub fn shuffle_circles(rng: &mut impl Rng, d: &mut Diagram) {
    for c in 0..d.num_circles() {
        let mut legs = d.circles()[c].clone();
        legs.shuffle(rng);
        d.replace_circle(c, legs);
    }
}

/// A random diagram on `m` circles of degree at most `max_degree` (and at
/// least 1), built from components allowed by `mix`.
pub fn random_diagram(rng: &mut impl Rng, m: usize, max_degree: usize, mix: &ComponentMix) -> Diagram {
    let mut d = Diagram::new(m);
    let mut left = max_degree;
    loop {
        let mut kinds = Vec::new();
        if mix.trees && left >= mix.min_tree_degree.max(1) {
            kinds.push(0);
        }
        if mix.wheels && left >= 1 {
            kinds.push(1);
        }
        if mix.others && left >= 1 {
            kinds.push(2);
        }
        if kinds.is_empty() {
            break;
        }
        let deg;
        match *kinds.choose(rng).expect("nonempty") {
            0 => {
                deg = rng.gen_range(mix.min_tree_degree.max(1)..=left);
                add_random_tree(rng, &mut d, deg);
            }
            1 => {
                deg = rng.gen_range(1..=left.min(4));
                add_random_wheel(rng, &mut d, deg);
            }
            _ => {
                deg = rng.gen_range(1..=left.min(4));
                let legs = rng.gen_range(1..=deg);
                add_random_connected(rng, &mut d, legs, 2 * deg - legs);
            }
        }
        left -= deg;
        if left == 0 || rng.gen_bool(0.35) {
            break;
        }
    }
    shuffle_circles(rng, &mut d);
    d
}
