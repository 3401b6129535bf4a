//! Exact machinery for comparing the embeddings of two real line arrangements
//! that share the same combinatorics.
//!
//! The crate is organized bottom-up:
//!
//! - [`field`] and [`combinatorics`]: small finite fields, point sets in finite
//!   projective planes, abstract line combinatorics and their automorphisms.
//! - [`quad`], [`poly`], [`arrangement`] and [`moduli`]: exact arithmetic in
//!   `Q(√5)` and `Q(α)`, realized arrangements, intersection lattices and the
//!   one-parameter moduli derivation.
//! - [`braid`] and [`monodromy`]: braid words with an exact equality oracle,
//!   Hurwitz moves, and braid monodromy of real affine arrangements.
//! - [`gfmat`], [`burau`] and [`group`]: 4×4 matrices over GF(5), the Burau
//!   representation at `t = 2`, stabilizer chains, orbits, centralizers and
//!   the subgroup conjugacy search.
//! - [`certificate`]: the end-to-end non-equivalence certificate.

pub mod arrangement;
pub mod braid;
pub mod burau;
pub mod certificate;
pub mod combinatorics;
pub mod error;
pub mod field;
pub mod gfmat;
pub mod group;
pub mod moduli;
pub mod monodromy;
pub mod perm;
pub mod poly;
pub mod quad;

pub use error::{Error, Result};
