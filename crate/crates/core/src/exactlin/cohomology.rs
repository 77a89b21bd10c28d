use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use super::{elim, LinError, RatMatrix};

/// Cohomology of `C⁻ --d_in--> C --d_out--> C⁺` at the middle term.
///
/// Representatives are cocycles whose classes form a basis; `projector`
/// maps a cocycle to its coordinates in that basis.
#[derive(Clone, Debug)]
pub struct CohomologyData {
    pub dim: usize,
    pub representatives: Vec<Vec<BigRational>>,
    pub projector: RatMatrix,
    boundary_rank: usize,
    d_out: RatMatrix,
}

pub fn complex_cohomology(d_in: &RatMatrix, d_out: &RatMatrix) -> Result<CohomologyData, LinError> {
    check_composable(d_in, d_out)?;
    let n = d_out.cols();
    let (_, cocycles) = elim::rank_kernel(d_out);
    let boundary_cols = elim::pivot_columns(d_in);
    let boundaries: Vec<Vec<BigRational>> = boundary_cols.iter().map(|&j| d_in.column(j)).collect();

    // Boundaries first, then cocycles: pivots that land in the cocycle block
    // pick the representatives.
    let mut stacked = boundaries.clone();
    stacked.extend(cocycles.iter().cloned());
    let pivots = elim::pivot_columns(&RatMatrix::from_columns(n, &stacked));
    let representatives: Vec<Vec<BigRational>> = pivots
        .iter()
        .filter(|&&p| p >= boundaries.len())
        .map(|&p| stacked[p].clone())
        .collect();
    build(boundaries, representatives, d_out.clone())
}

/// Same as [`complex_cohomology`], but with caller-chosen representatives.
/// They must be cocycles whose classes form a basis of the cohomology.
pub fn cohomology_with_representatives(
    d_in: &RatMatrix,
    d_out: &RatMatrix,
    representatives: Vec<Vec<BigRational>>,
) -> Result<CohomologyData, LinError> {
    check_composable(d_in, d_out)?;
    let base = complex_cohomology(d_in, d_out)?;
    if representatives.len() != base.dim {
        return Err(LinError::BadRepresentatives);
    }
    for r in &representatives {
        if !base.is_cocycle(r) {
            return Err(LinError::BadRepresentatives);
        }
    }
    let boundaries: Vec<Vec<BigRational>> = elim::pivot_columns(d_in)
        .iter()
        .map(|&j| d_in.column(j))
        .collect();
    build(boundaries, representatives, d_out.clone())
}

fn check_composable(d_in: &RatMatrix, d_out: &RatMatrix) -> Result<(), LinError> {
    if d_in.rows() != d_out.cols() {
        return Err(LinError::ShapeMismatch {
            left: d_out.shape(),
            right: d_in.shape(),
        });
    }
    if d_in.cols() > 0 && d_out.rows() > 0 && !(d_out * d_in).is_zero() {
        return Err(LinError::NotAComplex);
    }
    Ok(())
}

fn build(
    boundaries: Vec<Vec<BigRational>>,
    representatives: Vec<Vec<BigRational>>,
    d_out: RatMatrix,
) -> Result<CohomologyData, LinError> {
    let n = d_out.cols();
    let b = boundaries.len();
    let h = representatives.len();
    let mut cols = boundaries;
    cols.extend(representatives.iter().cloned());
    let left = elim::left_inverse(&RatMatrix::from_columns(n, &cols))
        .ok_or(LinError::BadRepresentatives)?;
    let projector = RatMatrix::from_fn(h, n, |i, j| left[(b + i, j)].clone());
    Ok(CohomologyData {
        dim: h,
        representatives,
        projector,
        boundary_rank: b,
        d_out,
    })
}

impl CohomologyData {
    pub fn boundary_rank(&self) -> usize {
        self.boundary_rank
    }

    pub fn is_cocycle(&self, v: &[BigRational]) -> bool {
        self.d_out.rows() == 0 || self.d_out.mul_vec(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of the class of the cocycle `v` in the representative
    /// basis.
    pub fn project(&self, v: &[BigRational]) -> Result<Vec<BigRational>, LinError> {
        if v.len() != self.d_out.cols() {
            return Err(LinError::ShapeMismatch {
                left: self.projector.shape(),
                right: (v.len(), 1),
            });
        }
        if !self.is_cocycle(v) {
            return Err(LinError::NotACocycle);
        }
        Ok(self.projector.mul_vec(v))
    }
}
