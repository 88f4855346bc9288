//! Condorcet domains of tiling type: reduced words, heap posets, majority
//! relations, folding symmetries and the higher Bruhat order `B(n, 2)`.
//!
//! Everything is exact: permutations are one-line words over `1..=n` with
//! `n <= 16`, inversion and element sets are `u128` bitsets, and tallies are
//! `u128` counts.

// candidates are 1-based values, so index loops over `1..=n` read naturally
#![allow(clippy::needless_range_loop)]

pub mod bruhat;
pub mod config;
pub mod decompose;
pub mod families;
pub mod folding;
pub mod heap;
pub mod majority;
pub mod parallel;
pub mod perm;

pub use heap::{build_heap, HeapPoset, OrderIdeal};
pub use majority::{PrelinearOrder, VoteTally};
pub use parallel::Execution;
pub use perm::{Permutation, ReducedWord};
