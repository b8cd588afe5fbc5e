pub mod bileveled;
pub mod cli;
pub mod element;
pub mod error;
pub mod hopf;
pub mod hopf_modules;
pub mod linalg;
pub mod linear;
pub mod orders;
pub mod perm;
pub mod poset;
pub mod projections;
pub mod series;
pub mod trees;
pub mod verify;

pub use bileveled::BiLeveledTree;
pub use element::Element;
pub use error::{Error, Result};
pub use linear::{Family, Flavor, LinComb};
pub use perm::Permutation;
pub use trees::PlanarTree;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/encodings.md")]
    mod encodings {}
    #[doc = include_str!("../../../book/src/orders.md")]
    mod orders {}
    #[doc = include_str!("../../../book/src/projections.md")]
    mod projections {}
    #[doc = include_str!("../../../book/src/hopf.md")]
    mod hopf {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
