mod error;
pub mod exactalg;
pub mod kirchhoff;
pub mod conway;
pub mod diagrams;
pub mod milnor;
pub mod pfaffian_tree;
pub mod suite;

pub use error::Error;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub mod intro {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    pub mod algebra {}
    #[doc = include_str!("../../../book/src/trees.md")]
    pub mod trees {}
    #[doc = include_str!("../../../book/src/diagrams.md")]
    pub mod diagrams {}
    #[doc = include_str!("../../../book/src/milnor.md")]
    pub mod milnor {}
    #[doc = include_str!("../../../book/src/conway.md")]
    pub mod conway {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
