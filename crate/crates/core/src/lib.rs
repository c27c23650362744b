//! Sublinear-memory edit distance and LCS approximation in the asymmetric
//! streaming model: one string is read once, in order; the other allows
//! random access.

pub mod closest;
pub mod ed_stream;
pub mod error;
pub mod exact;
pub mod harness;
pub mod lcs_stream;
pub mod numeric;
pub mod text;

pub use error::{Error, Result};
pub use exact::{ClosestMatch, Reach};
pub use numeric::Rational;
pub use text::{MemoryMeter, OfflineText, OnlineStream, Symbol};
