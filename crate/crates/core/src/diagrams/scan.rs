use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::diagram::{ComponentKind, Diagram};
use super::random::{add_random_tree, random_diagram, shuffle_circles, ComponentMix};
use super::reduce::weight_reduced;

/// Result of a randomized vanishing scan.
#[derive(Clone, Debug, Default)]
pub struct VanishReport {
    pub n: usize,
    pub m: usize,
    pub samples: usize,
    /// Samples of the exceptional shape: exactly `m - 1` trees, all of
    /// degree at least `n`.
    pub exceptional: usize,
    pub exceptional_nonzero: usize,
    pub violations: Vec<String>,
    /// Samples whose degree has the parity of `m`.
    pub parity_checked: usize,
    pub parity_violations: Vec<String>,
}

impl VanishReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.parity_violations.is_empty()
    }
}

fn is_exceptional(d: &Diagram, n: usize, m: usize) -> bool {
    let comps = d.components();
    comps.len() + 1 == m && comps.iter().all(|c| matches!(c.kind, ComponentKind::Tree(k) if k >= n))
}

/// Sample diagrams on `m` circles with no tree components of degree below
/// `n` and total degree at most `n(m-1)+1`, and check that the weight
/// vanishes unless the diagram has the exceptional shape, and that it
/// vanishes whenever the degree is congruent to `m` mod 2.
pub fn vanishing_scan(n: usize, m: usize, samples: usize, seed: u64) -> VanishReport {
    assert!(n >= 1 && m >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_degree = n * (m - 1) + 1;
    let mix = ComponentMix { min_tree_degree: n, trees: true, wheels: true, others: true };
    let mut rep = VanishReport { n, m, samples, ..Default::default() };
    for i in 0..samples {
        let d = if rng.gen_bool(0.25) {
            let mut d = Diagram::new(m);
            let bump = rng.gen_range(0..m - 1);
            for k in 0..m - 1 {
                let deg = if k == bump && rng.gen_bool(0.5) { n + 1 } else { n };
                add_random_tree(&mut rng, &mut d, deg);
            }
            shuffle_circles(&mut rng, &mut d);
            d
        } else {
            random_diagram(&mut rng, m, max_degree, &mix)
        };
        let w = weight_reduced(&d);
        let exceptional = is_exceptional(&d, n, m);
        if exceptional {
            rep.exceptional += 1;
            if !w.is_zero() {
                rep.exceptional_nonzero += 1;
            }
        } else if !w.is_zero() {
            rep.violations.push(format!("sample {i}: weight {w} on a non-exceptional diagram"));
        }
        if d.degree() % 2 == m % 2 {
            rep.parity_checked += 1;
            if !w.is_zero() {
                rep.parity_violations.push(format!("sample {i}: degree {} has the parity of m", d.degree()));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scan_is_clean() {
        let rep = vanishing_scan(2, 3, 60, 3);
        assert!(rep.ok(), "{:?}", rep.violations);
        assert!(rep.exceptional > 0);
    }
}
