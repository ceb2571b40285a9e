//! Structure and exact Hamming distance of polycyclic codes over Galois rings.

pub mod ambient;
pub mod code;
pub mod distance;
pub mod error;
pub mod factor;
pub mod howell;
pub mod oracle;
pub mod p2;
pub mod poly;
pub mod report;
pub mod ring;
pub mod spec_file;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{h_adic_decompose, HAdicForm, HAdicTerm, Poly};
pub use ring::{GaloisRing, GrElem, PAdicExpansion, RingParams};
