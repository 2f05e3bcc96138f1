//! Exact computation of c-nilpotent multipliers (Baer invariants) of finite
//! p-groups in the classified families, with a free-nilpotent collection
//! engine serving as an independent brute-force cross-check.
//!
//! - [`witt`]: Möbius function and the Witt formula `χ_n(d)` counting basic
//!   commutators, plus primality/factoring helpers.
//! - [`hall`]: basic commutators and Hall bases — generation by weight, the
//!   basis order, mixed-content tests, rendering.
//! - [`collect`]: free nilpotent groups `F/γ_{W+1}F` with collected normal
//!   forms, integer lattices (Hermite/Smith), and the relator-lattice
//!   verifier behind the `E_1` multiplier column.
//! - [`abelian`]: finite abelian groups, tensor products, their multipliers,
//!   the `S`-function and its maximization over partitions.
//! - [`gamma`]: the `Γ_{c+1}(A, B)` correction term and the direct-product
//!   multiplier formula.
//! - [`pgroups`]: descriptors for the recognized p-group classes, the
//!   multiplier tables, order bounds, and capability verdicts.
//!
//! Everything is exact (big-integer) arithmetic; floating point never
//! appears. With the default `parallel` feature the batch verifier fans out
//! over rayon; disabling it forces the sequential fallback with identical
//! results.

pub mod abelian;
pub mod collect;
pub mod gamma;
pub mod hall;
pub mod pgroups;
pub mod witt;

pub use abelian::{multiplier_abelian, s_function, FinAbelian};
pub use collect::{verify_theorem_11, IntLattice, NilGroupCtx, NilWord};
pub use gamma::{gamma, multiplier_direct_product};
pub use hall::{BasicCommutator, HallBasis};
pub use pgroups::{capability, multiplier, GroupDescriptor, MultiplierResult};
pub use witt::{mobius, witt};
