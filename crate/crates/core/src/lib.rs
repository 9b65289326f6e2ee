//! Quantum Tanner codes on 4-fold left-right Cayley complexes.
//!
//! The crate builds the chain complex X(G_2, C_A, C_B) from a finite group
//! with two inverse-closed generator sets and a pair of local codes, checks
//! its structural invariants exactly over GF(2), measures robustness of
//! tensor code pairs with brute-force oracles, and decodes with small-set
//! flip and reconstruction decoders.

pub mod chain;
pub mod codes;
pub mod complex;
pub mod decoder;
pub mod error;
pub mod gf2;
pub mod group;
pub mod ioformat;
pub mod spectral;
pub mod tensor;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
