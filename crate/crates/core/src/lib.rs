//! Z2^n-graded twisted group algebras: the octonion series `O_{p,q}`, the
//! Clifford algebras `Cl_{p,q}`, their generating cubic forms, and the
//! classification of `O_{p,q}` up to graded isomorphism.
//!
//! - [`z2lin`]: the grading group, signatures and matrices over GF(2).
//! - [`forms`]: twisting functions, their defects and cubic forms.
//! - [`algebra`]: exact multiplication, generator systems, the graded center.
//! - [`classify`]: the statistics invariant, isomorphism witnesses, the lemma
//!   catalogue and the classification table.
//! - [`suites`]: the batches of checks behind `opq verify`.
//!
//! ```
//! use opq::classify::{find_graded_iso, statistics};
//! use opq::z2lin::Signature;
//!
//! let (a, b) = (Signature::new(3, 0), Signature::new(0, 3));
//! assert_ne!(statistics(a)?, statistics(b)?);
//! assert!(find_graded_iso(a, b)?.is_none());
//! assert!(find_graded_iso(a, Signature::new(1, 2))?.is_some());
//! # Ok::<(), opq::Error>(())
//! ```

pub mod algebra;
pub mod classify;
pub mod error;
pub mod forms;
pub mod suites;
pub mod z2lin;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/grading.md")]
    mod grading {}
    #[doc = include_str!("../../../book/src/twisting.md")]
    mod twisting {}
    #[doc = include_str!("../../../book/src/cubic-forms.md")]
    mod cubic_forms {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/isomorphisms.md")]
    mod isomorphisms {}
    #[doc = include_str!("../../../book/src/lemmas.md")]
    mod lemmas {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
