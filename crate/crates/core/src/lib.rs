//! Exact constructions for the imprimitive reflection groups `G(r,p,n)`,
//! their cyclotomic Hecke algebras and rational Cherednik algebras.

pub mod cherednik;
pub mod clifford;
pub mod cycfield;
pub mod error;
pub mod heckespan;
pub mod refgroup;
pub mod seminormal;
pub mod tableaux;

pub use error::{Error, Result};
