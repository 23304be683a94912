//! Trace codes over the chain ring `F_2 + u F_2`.
//!
//! The code `C_m` has coordinates indexed by the units of
//! `R_m = GF(2^m) + u GF(2^m)` and codewords
//! `Ev(a, b) = (Tr(a x + b x^3))_x`. Its Gray image is a binary
//! `[2^{m+1}(2^m - 1), 4m]` code. This crate builds the code, enumerates the
//! exact weight distribution of the image, checks the closed-form weight
//! predictions, searches the dual for low Lee weight words, evaluates power
//! moment identities, and sets up the associated secret sharing scheme.

pub mod bits;
pub mod cache;
pub mod code;
pub mod distribution;
pub mod dual;
pub mod error;
pub mod gf2;
pub mod gf2m;
pub mod moments;
pub mod report;
pub mod ring;
mod serde_util;
pub mod sss;

pub use code::{CodeParams, CodeSpec, Codeword};
pub use distribution::WeightDistribution;
pub use error::{Error, Result};
pub use gf2m::{Field, FieldElem, FieldParams};
pub use ring::{BaseRingElem, Ring, RingElem};
