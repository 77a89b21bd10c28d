//! Exact linear algebra over ℚ and ℤ.
//!
//! Everything here works with arbitrary-precision entries, so equality tests
//! are exact and no result depends on a tolerance.

mod cohomology;
mod elim;
mod matrix;
mod snf;

use core::fmt;

pub use cohomology::{cohomology_with_representatives, complex_cohomology, CohomologyData};
pub use elim::{left_inverse, pivot_columns, rank, rank_kernel, rref, solve, Rref};
pub use matrix::{q, qi, IntMatrix, Matrix, RatMatrix};
pub use snf::{smith_normal_form, solve_integer, SmithForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinError {
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// `d_out ∘ d_in ≠ 0`.
    NotAComplex,
    NotACocycle,
    BadRepresentatives,
}

impl fmt::Display for LinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinError::ShapeMismatch { left, right } => write!(
                f,
                "cannot compose {}x{} with {}x{}",
                left.0, left.1, right.0, right.1
            ),
            LinError::NotAComplex => write!(f, "differentials do not compose to zero"),
            LinError::NotACocycle => write!(f, "vector is not a cocycle"),
            LinError::BadRepresentatives => {
                write!(f, "representatives do not form a basis of cohomology")
            }
        }
    }
}
