//! Exact decision procedures for dominant integer polynomials.
//!
//! A polynomial is dominant when it has a simple root whose modulus is
//! strictly larger than the modulus of every other root. The tests here
//! never approximate a root: they bracket the real root of largest modulus
//! with Sturm chains and count roots outside a circle with the Bistritz
//! recursion, all in exact rational arithmetic.

pub mod batch;
pub mod bistritz;
pub mod bounds;
pub mod census;
pub mod dominance;
pub mod error;
pub mod exact;
pub mod factor;
pub mod oracle;
pub mod poly;
pub mod sample;
pub mod sturm;

pub use error::{Error, ParseError};
pub use poly::{parse_poly, IntPolynomial, RatPolynomial};
