//! Certified reduction of null-homotopic words in Stallings' group
//!
//! ```text
//! S = <a, b, c, d, s | [a,c], [a,d], [b,c], [b,d], s^a = s^b = s^c = s^d>
//! ```
//!
//! to the empty word with a quadratic number of relator applications.
//! Every reduction is emitted as a trace of elementary moves that can be
//! replayed and checked independently of the algorithms that produced it.

pub mod altform;
pub mod audit;
pub mod bench;
pub mod dyadic;
pub mod engine;
pub mod fxf;
pub mod gen;
pub mod rewriting;
pub mod subroutines;
pub mod words;

#[cfg(test)]
mod testutil;

pub use rewriting::{verify_trace, Move, Trace};
pub use words::{Letter, Word};
