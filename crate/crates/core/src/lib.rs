//! Block encodings for one-pair semiseparable matrices.
//!
//! A one-pair matrix is the symmetric matrix `S[i][j] = u_i * v_j` for
//! `i <= j` built from two generator vectors. It factors as
//! `S = D_u · L · Δ_z · Lᵀ · D_u` with `L` the unit lower-triangular
//! all-ones matrix and `Δ_z` the diagonal of consecutive differences of
//! `z_i = v_i / u_i`. Each factor admits a cheap quantum block encoding,
//! and the product of those encodings embeds `S / α` in the top-left
//! block of one unitary circuit.
//!
//! The crate provides:
//!
//! - [`onepair`]: the generator representation, the factorization, dense
//!   reference matrices and norm utilities.
//! - [`circuit`]: a small gate IR with a statevector simulator,
//!   block extraction and encoding composition.
//! - [`encoders`]: builders for every circuit in the scheme — the
//!   rotation cascade, diagonal and diagonal-inverse oracles, the
//!   triangular factor, the difference diagonal and the full product.
//! - [`fable`]: an unstructured baseline encoder with Walsh–Hadamard /
//!   Gray-code angle compression, for comparison experiments.
//! - [`verify`]: the experiment harness measuring encoding errors
//!   against analytic bounds, norm scaling and inverse structure.

pub mod circuit;
pub mod encoders;
pub mod error;
pub mod fable;
pub mod onepair;
pub mod verify;

pub use error::{Error, Result};
