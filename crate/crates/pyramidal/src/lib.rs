//! Toolkit for pyramidal finite groups.
//!
//! A finite group is *m-pyramidal* if it has exactly `m` involutions and they
//! are all conjugate to each other. This crate builds the families of
//! pyramidal groups realised as explicit permutation groups, classifies
//! arbitrary small permutation groups, decides membership in the order sets
//! of m-pyramidal groups for prime m, brute-force checks the underlying
//! number theory (Mersenne prime powers, Zsigmondy primitive divisors), and
//! verifies pyramidal group actions on Steiner and Kirkman triple systems.
//!
//! Everything works with full element tables, capped at [`element_cap`]
//! elements per group. All returned element lists are in a canonical order
//! (lexicographic by image sequence), so outputs are byte-deterministic.

pub mod arith;
pub mod classify;
pub mod constructions;
pub mod designs;
pub mod group;
pub mod io;
pub mod linear;
pub mod perm;
pub mod sweep;

pub mod acceptance;

pub use classify::{classify_pyramidal, PyramidalReport, Verdict};
pub use group::{GroupError, PermGroup, Subgroup, Sylow2Shape};
pub use perm::Permutation;

use std::sync::OnceLock;

/// Default cap on the number of elements a group table may hold.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// Element cap used by group closures. Overridable through the
/// `PYR_ELEMENT_CAP` environment variable (read once per process).
pub fn element_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("PYR_ELEMENT_CAP")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_ELEMENT_CAP)
    })
}
