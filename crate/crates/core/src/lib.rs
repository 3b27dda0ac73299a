//! Exact evaluation of the diagonal p-permutation functor `kR_k` on finite
//! permutation groups.
//!
//! The crate is layered bottom-up:
//!
//! * [`group`]: permutation groups with full element enumeration, classes,
//!   centralizers, Sylow subgroups, quotients and isomorphism tests.
//! * [`exactalg`]: finite fields, cyclotomic numbers, the reduction map to the
//!   finite field, polynomial factorization, linear algebra, Smith normal form.
//! * [`modrep`]: meataxe chopping of the regular module, Brauer and projective
//!   character tables, Cartan matrices, induction and inflation of class
//!   functions.
//! * [`catalog`]: the truncated poset of small p-groups and its lattice of
//!   closed (subgroup-closed) subsets.
//! * [`functor`]: defect classification, the `gamma` and `U_x` elements, bases
//!   of the subfunctors generated by trivial modules of p-groups, and the
//!   dimensions of the simple subquotients `S_P(G)`.
//! * [`report`]: JSON reports and the verification suites used by the CLI.

pub mod catalog;
pub mod error;
pub mod exactalg;
pub mod functor;
pub mod group;
pub mod modrep;
pub mod report;

pub use error::{Error, Result};

/// Seed used when the caller does not provide one.
pub const DEFAULT_SEED: u64 = 0x6b52_6b5f_2024;
