//! Exact computations behind the mod p topological cyclic homology of
//! rings of integers in p-adic local fields.
//!
//! The crate is `no_std` with `alloc`. Everything is exact: residue
//! fields, truncated Witt rings, divided-power envelopes, cobar
//! complexes, refined Tate spectral sequences and the descent to
//! `TC_*(O_K; F_p)`.
//!
//! Module map:
//!
//! * [`arith`]: `F_{p^f}`, `W(F_{p^f})/p^N`, Frobenius, norm, the
//!   semilinear solver `b·φ(x) − x = c`.
//! * [`linalg`]: dense row reduction over `F_p`, Smith forms over
//!   `Z/p^N` and `k[z]`.
//! * [`localfield`]: validated Eisenstein data and derived invariants.
//! * [`pdmodel`]: truncated divided-power envelope with Frobenius and δ.
//! * [`cobar`]: Hopf algebroids, cobar cohomology, Hochschild check.
//! * [`specseq`]: spectral sequence engine.
//! * [`descent`]: closed-form `E²` terms and `TC` homotopy groups.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod cobar;
pub mod descent;
pub mod linalg;
pub mod localfield;
pub mod num;
pub mod pdmodel;
pub mod specseq;

pub use num::{Rat, Val};
