//! Exact computations with generalized Nakajima categories of Dynkin quivers.

pub mod category;
pub mod desing;
pub mod error;
pub mod field;
pub mod grassmann;
pub mod kan;
pub mod linalg;
pub mod mesh;
pub mod orbitcat;
pub mod present;
pub mod quiver;
pub mod repmod;
pub mod resolve;
pub mod schema;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quivers.md")]
    mod quivers {}
    #[doc = include_str!("../../../book/src/mesh.md")]
    mod mesh {}
    #[doc = include_str!("../../../book/src/categories.md")]
    mod categories {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/recollement.md")]
    mod recollement {}
    #[doc = include_str!("../../../book/src/grassmannians.md")]
    mod grassmannians {}
    #[doc = include_str!("../../../book/src/desingularization.md")]
    mod desingularization {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/conventions.md")]
    mod conventions {}
}
