//! Exact computations with small matroids.
//!
//! The crate keeps every matroid as a dense rank table over a bitmask ground
//! set (at most [`set::Subset::CAPACITY`] elements), so all derived structure
//! (closure, circuits, flats, minors, connectivity) is exact. On top of
//! that sit the strand machinery of exact 3-separations, modular cuts, and
//! the guts-extension constructions, together with brute-force oracles that
//! independently enumerate extensions for cross-checking.
//!
//! The crate is `no_std` (alloc required); all IO and file formats live in
//! the companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod catalog;
pub mod connectivity;
pub mod extension;
pub mod matroid;
pub mod set;
pub mod strands;

pub use connectivity::{enumerate_exact_3_separations, ConnectivityError, Separation};
pub use extension::{
    check_guts_extendability, enumerate_extensions_oracle, enumerate_guts_extensions_oracle,
    extend_by_modular_cut, force_guts_point_extension, free_guts_extension, generated_modular_cut,
    guts_modular_cut, guts_point_extension, is_fixed_oracle, tree_multi_extension, BlockedWitness,
    ExtensionError, ExtensionRequest, ExtensionResult, GutsFrame, ModularCut, TreeExtensionPlan,
    Verdict,
};
pub use matroid::{AxiomWitness, Matroid, MatroidError, MatroidSpec, RankAxiom};
pub use set::{GroundSet, Subset};
pub use strands::{strand_graph, strands, Bunch, Side, Strand, StrandError, StrandGraph};
