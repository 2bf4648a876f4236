//! Complexes of groups over simplicial scwols: developments, local
//! developments, and compatible classifying-space assemblies, with exact
//! integer homology.

pub mod action;
pub mod assembly;
pub mod cog;
pub mod commands;
pub mod delta;
pub mod development;
pub mod error;
pub mod fibre;
pub mod fixtures;
pub mod group;
pub mod homology;
pub mod iso;
pub mod matrix;
pub mod perm;
pub mod project;
pub mod report;
pub mod scwol;
pub mod simplicial;

pub use error::{Error, Result};

/// The guide chapters double as doc-tests: every fenced Rust block in
/// `book/src` compiles and runs under `cargo test --doc`, keeping the book
/// and the library in lockstep.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/scwols.md")]
    mod scwols {}
    #[doc = include_str!("../../../book/src/complexes-of-groups.md")]
    mod complexes_of_groups {}
    #[doc = include_str!("../../../book/src/actions.md")]
    mod actions {}
    #[doc = include_str!("../../../book/src/developments.md")]
    mod developments {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/assembly.md")]
    mod assembly {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
