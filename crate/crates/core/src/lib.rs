//! Exact construction and verification of few-weight trace codes over the
//! chain ring F_p + uF_p + ... + u^{k-1}F_p (u^k = 0).
//!
//! The crate builds codes by evaluating the coefficientwise trace against a
//! defining set inside the extension ring, computes their exact homogeneous
//! and Gray-image weight distributions by exhaustive enumeration, and checks
//! the closed-form predictions (weight tables, Gauss-sum identities, Griesmer
//! optimality, dual homogeneous distance, codeword minimality) against those
//! enumerations.

pub mod analysis;
pub mod characters;
pub mod codes;
pub mod defining_sets;
pub mod error;
pub mod field;
pub mod ring;
pub mod theory;

pub use error::{Error, Result};
