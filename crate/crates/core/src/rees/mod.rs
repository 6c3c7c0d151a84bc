//! Filtered `Q`-vector spaces and their Rees modules.
//!
//! A filtration is decreasing and indexed by `Z`; it is stored on the
//! window `[lo, hi]` with `Fil^i = M` below `lo` and either `0` or
//! `Fil^hi` above `hi`. The Rees module places `Fil^i` in degree `-i`
//! and lets `t` act by the inclusion `Fil^i ⊆ Fil^{i-1}`, so `t` raises
//! degree by one.

mod filtered;
mod graded;
mod iadic;

pub use filtered::{FilteredModule, Top};
pub use graded::ReesModule;
pub use iadic::{diagonal_ideal, iadic_gr, quotient_tower_ranks, tensor_power, GradedPiece};

#[cfg(test)]
mod tests;
