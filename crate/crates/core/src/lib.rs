//! Horizontal class transposition groups as finite permutation groups.
//!
//! The group `CT_(n) = <CT_2, ..., CT_n>` acts on `Z` with period
//! `N = lcm(2..=n)`, so it is determined by its action on `[0, N)`. This
//! crate builds those actions, computes orders, membership and words with a
//! stabilizer chain, and provides the bridge combinatorics that connect the
//! blocks of size `N` and `p^k` on `[0, N p)` when `n + 1 = p^k`.

pub mod bridges;
pub mod bsgs;
pub mod cli;
pub mod error;
pub mod gens;
pub mod oracle;
pub mod perm;
pub mod residue;

pub use error::{Error, Result};
pub use perm::{Permutation, Word};
