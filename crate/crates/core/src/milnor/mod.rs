//! Labelled trees standing for universal Milnor invariants, the polynomials
//! obtained by evaluating the Alexander-Conway weight system on lifts of
//! trees, the reduction of trees to struts and Y's, and the determinant of
//! Levine and Traldi.

mod fpoly;
mod levine;
pub(crate) mod phi;
mod recursion;
mod tree;
mod xi;

pub use fpoly::{coordinate_basis, f_as_polynomial, f_eval, f_tilde, g_eval, h_replace, lift_to_circles};
pub use levine::{levine_lambda, levine_traldi_det};
pub use phi::{f_general, phi, phi_confluence_check, phi_tree, phi_with, random_labeled_tree, ConfluenceReport, Strategy, W0Subspace};
pub use recursion::{has_index_twice, recursion_check, recursion_identity, RecursionReport};
pub use tree::{Body, LabeledTree};
pub use xi::{parse_mu_table, parse_xi, write_xi, MilnorTable, XiElement};
