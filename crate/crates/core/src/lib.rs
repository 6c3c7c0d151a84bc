//! Exact point-level algebra for integral prismatization.
//!
//! The crate works over concrete commutative rings (the integers, the
//! rationals, residue rings `Z/N`, and polynomial, Laurent and monic
//! quotient rings over these) and provides:
//!
//! * [`witt`]: E-typical Witt vectors with cached universal polynomials,
//!   ghost maps, Frobenius, Verschiebung, Teichmüller lifts and the Dwork
//!   integrality test;
//! * [`structure`]: Frobenius kernels, units, the p-local product
//!   decomposition, the `V(1)` chart, Hodge–Tate and distinguished
//!   predicates, and the non-freeness obstruction;
//! * [`cone`]: quasi-ideals and the cone ring levels `R × I^{n-1}`;
//! * [`rees`]: filtered vector spaces, the Rees dictionary, Day
//!   convolution and I-adic associated graded pieces;
//! * [`derham`]: Hodge-filtered de Rham cohomology of `Q[x^±, y]`;
//! * [`prismatic`]: cone rings of distinguished elements, Witt points and
//!   prismatic point groupoids of affine presentations.
//!
//! Everything is `no_std` with `alloc`; file formats, caching on disk and
//! the command line live in the companion `wittforge` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cone;
pub mod derham;
mod error;
pub mod linalg;
pub mod poly;
pub mod prismatic;
pub mod rees;
pub mod ring;
pub mod structure;
pub mod witt;

pub use error::{Error, Result};
pub use ring::{CommRing, Elem, Ring, RingDescriptor};
pub use witt::{IndexSet, WittRing, WittVector};
