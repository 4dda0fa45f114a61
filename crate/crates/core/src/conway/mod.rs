//! Links given as closed braids: components, linking numbers, and the
//! Conway polynomial computed from the reduced Burau representation.

mod alexander;
mod braid;
mod laurent;

pub use alexander::{burau_generator, burau_matrix, conway, hoste_check, parity_and_renorm_check, skein_check, skein_suite, SkeinReport, ConwayPoly, HosteReport};
pub use braid::BraidWord;
pub use laurent::Laurent;
