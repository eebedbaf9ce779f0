//! Cactus group actions on sl₂ tensor products, computed three ways.
//!
//! The cactus group `J_n` acts on highest elements of tensor product
//! crystals ([`crystal`]), on label states of bracketings through flips and
//! the associator ([`hives`]), and on eigenvectors of the Gaudin algebra by
//! transport along the real moduli space ([`gaudin`], [`transport`]).
//! [`verify`] runs all three and compares them.
//!
//! ```
//! use cactus_core::crystal::WeightList;
//! use cactus_core::verify::{run_verification, ExperimentConfig};
//!
//! let cfg = ExperimentConfig::new(WeightList::new(vec![1, 1, 1]));
//! assert_eq!(run_verification(&cfg).unwrap().exit_code, 0);
//! ```
//!
//! The guide in `book/` explains the constructions; its code blocks run as
//! doc-tests of this crate.

pub mod crystal;
pub mod error;
pub mod gaudin;
pub mod hives;
pub mod linalg;
pub mod transport;
pub mod verify;
pub mod word;

// Book chapters, compiled so their snippets stay in sync with the code.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cactus.md")]
    mod cactus {}
    #[doc = include_str!("../../../book/src/crystals.md")]
    mod crystals {}
    #[doc = include_str!("../../../book/src/hives.md")]
    mod hives {}
    #[doc = include_str!("../../../book/src/gaudin.md")]
    mod gaudin {}
    #[doc = include_str!("../../../book/src/transport.md")]
    mod transport {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
