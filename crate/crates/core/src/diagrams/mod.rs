//! Uni-trivalent diagrams on oriented circles and the weight system of the
//! Alexander-Conway polynomial.
//!
//! Two independent evaluators are provided: [`weight_oracle`] expands every
//! trivalent vertex by STU and smooths the resulting chords, while
//! [`weight_reduced`] applies local relations (two-legged wheels, bubbles,
//! the H relation, circles with few legs) and only falls back to STU on
//! diagrams made of Y's.

mod diagram;
mod format;
mod oracle;
mod random;
pub(crate) mod reduce;
mod scan;

pub use diagram::{Component, ComponentKind, Diagram, Half, NodeId};
pub use format::{parse_diagram, write_diagram};
pub use oracle::{chord_weight, ihx_at, stu_at_leg, stu_expand, stu_step, weight_oracle, DiagramSum};
pub use random::{add_random_connected, add_random_tree, add_random_wheel, random_diagram, shuffle_circles, ComponentMix};
pub use reduce::{weight_reduced, weight_reduced_with_stats, ReductionStats};
pub use scan::{vanishing_scan, VanishReport};

/// Evaluation engine for weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Oracle,
    Reduced,
}

impl std::str::FromStr for Engine {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(Engine::Oracle),
            "reduced" => Ok(Engine::Reduced),
            _ => Err(crate::Error::invalid(format!("unknown engine `{s}` (expected oracle or reduced)"))),
        }
    }
}

pub fn weight(d: &Diagram, engine: Engine) -> num_rational::BigRational {
    match engine {
        Engine::Oracle => weight_oracle(d),
        Engine::Reduced => weight_reduced(d),
    }
}
