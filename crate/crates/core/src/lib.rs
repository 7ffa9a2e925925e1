//! Counting roots of continuant polynomials and λ-quiddities over small
//! finite commutative rings.
//!
//! Three independent routes produce every count: exhaustive enumeration,
//! a transfer-matrix DP over `SL₂(A)`, and closed forms for local rings.

pub mod continuant;
pub mod enumerate;
pub mod error;
pub mod formulas;
pub mod harness;
pub mod rings;

use num_bigint::BigUint;

pub use continuant::{continuant, m_matrix, Mat2, Tuple};
pub use enumerate::{Budgets, Count, CountVec, DpCounter, Method, Sl2Table};
pub use error::{Error, Result};
pub use formulas::{CountRecord, Kind, LocalParams};
pub use rings::{build_ring, ring_from_str, Elem, Ring, RingSpec};

/// DP state with unbounded counts.
pub type CountVector = CountVec<BigUint>;
/// DP state with 128-bit counts, for `|A|^n < 2^128`.
pub type WideCountVector = CountVec<u128>;
/// Transfer-matrix counter with 128-bit counts.
pub type WideDpCounter = DpCounter<u128>;
