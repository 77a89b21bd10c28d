use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{GradedRing, PieceCache, SingError};
use crate::exactlin::{rank, RatMatrix};
use crate::grading::{ExponentSeq, LDegree, LGroup};

/// Finite-dimensional graded module: a homogeneous basis and the action of
/// each variable (`action[t]` sends basis vector `b` to `x_t · b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    pub degrees: Vec<LDegree>,
    pub action: Vec<RatMatrix>,
}

impl GradedModule {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    fn indices_at(&self, d: &LDegree) -> Vec<usize> {
        (0..self.dim()).filter(|&i| &self.degrees[i] == d).collect()
    }

    /// Action entries that do not raise the degree by exactly `x_t`.
    fn action_is_homogeneous(&self, g: &LGroup) -> bool {
        self.action.iter().enumerate().all(|(t, a)| {
            (0..self.dim()).all(|r| {
                (0..self.dim()).all(|c| {
                    a[(r, c)].is_zero() || self.degrees[r] == g.add(&self.degrees[c], &g.x(t))
                })
            })
        })
    }
}

/// `k[x_i]/(x_i^j)` generated in degree `shift`, with every other variable
/// acting by zero.
pub fn truncated_axis_module(g: &LGroup, axis: usize, j: u32, shift: &LDegree) -> GradedModule {
    let n = g.rank_n();
    let dim = j as usize;
    let degrees = (0..j as i64)
        .map(|e| g.add(shift, &g.scale(e, &g.x(axis))))
        .collect();
    let action = (0..n)
        .map(|t| {
            RatMatrix::from_fn(dim, dim, |r, c| {
                if t == axis && r == c + 1 {
                    num_rational::BigRational::one()
                } else {
                    num_rational::BigRational::zero()
                }
            })
        })
        .collect();
    GradedModule { degrees, action }
}

/// `0 → kernel → middle → quotient → 0` with the two maps as matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSequence {
    pub kernel: GradedModule,
    pub middle: GradedModule,
    pub quotient: GradedModule,
    pub inclusion: RatMatrix,
    pub projection: RatMatrix,
}

/// `0 → k(−(j−1)x_i) → k[x_i]/(x_i^j) → k[x_i]/(x_i^{j−1}) → 0` for the
/// one-based `axis` `i`.
pub fn lemma_k_sequence(
    p: &ExponentSeq,
    axis: usize,
    j: u32,
) -> Result<ShortExactSequence, SingError> {
    let n = p.len();
    if axis == 0 || axis > n {
        return Err(SingError::BadAxis { axis, n });
    }
    let i = axis - 1;
    let max = p.get(i);
    if j < 2 || j > max {
        return Err(SingError::BadPower { j, max });
    }
    let g = LGroup::new(p.clone());
    let kernel = truncated_axis_module(&g, i, 1, &g.scale(j as i64 - 1, &g.x(i)));
    let middle = truncated_axis_module(&g, i, j, &g.zero());
    let quotient = truncated_axis_module(&g, i, j - 1, &g.zero());
    let jj = j as usize;
    let inclusion = RatMatrix::from_fn(jj, 1, |r, _| {
        if r == jj - 1 {
            num_rational::BigRational::one()
        } else {
            num_rational::BigRational::zero()
        }
    });
    let projection = RatMatrix::from_fn(jj - 1, jj, |r, c| {
        if r == c {
            num_rational::BigRational::one()
        } else {
            num_rational::BigRational::zero()
        }
    });
    Ok(ShortExactSequence {
        kernel,
        middle,
        quotient,
        inclusion,
        projection,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    /// Both maps commute with every variable.
    pub linear: bool,
    /// Module actions and maps respect degrees.
    pub homogeneous: bool,
    /// Degrees (ordered by `ℤ`-degree) where exactness fails.
    pub failures: Vec<LDegree>,
    pub degrees_checked: usize,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.linear && self.homogeneous && self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&LDegree> {
        self.failures.first()
    }
}

fn submatrix(m: &RatMatrix, rows: &[usize], cols: &[usize]) -> RatMatrix {
    RatMatrix::from_fn(rows.len(), cols.len(), |r, c| m[(rows[r], cols[c])].clone())
}

fn map_is_homogeneous(m: &RatMatrix, src: &GradedModule, tgt: &GradedModule) -> bool {
    (0..tgt.dim())
        .all(|r| (0..src.dim()).all(|c| m[(r, c)].is_zero() || tgt.degrees[r] == src.degrees[c]))
}

/// Per-degree exactness of a short sequence in `ℤ`-degrees `≤ window`.
pub fn check_exact(g: &LGroup, seq: &ShortExactSequence, window: i64) -> ExactnessReport {
    let (k, m, q) = (&seq.kernel, &seq.middle, &seq.quotient);
    let (f, h) = (&seq.inclusion, &seq.projection);
    let linear = (0..g.rank_n()).all(|t| {
        (f * &k.action[t]) == (&m.action[t] * f) && (h * &m.action[t]) == (&q.action[t] * h)
    });
    let homogeneous = k.action_is_homogeneous(g)
        && m.action_is_homogeneous(g)
        && q.action_is_homogeneous(g)
        && map_is_homogeneous(f, k, m)
        && map_is_homogeneous(h, m, q);
    let mut degrees: Vec<(i64, LDegree)> = k
        .degrees
        .iter()
        .chain(&m.degrees)
        .chain(&q.degrees)
        .map(|d| (g.z_degree(d), d.clone()))
        .filter(|(z, _)| *z <= window)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    degrees.sort();
    let mut failures = Vec::new();
    for (_, d) in &degrees {
        let (ki, mi, qi) = (k.indices_at(d), m.indices_at(d), q.indices_at(d));
        let fd = submatrix(f, &mi, &ki);
        let hd = submatrix(h, &qi, &mi);
        let rf = rank(&fd);
        let rh = rank(&hd);
        let composite_zero = fd.cols() == 0 || hd.rows() == 0 || (&hd * &fd).is_zero();
        let ok = rf == ki.len() && rh == qi.len() && mi.len() - rh == rf && composite_zero;
        if !ok {
            failures.push(d.clone());
        }
    }
    ExactnessReport {
        linear,
        homogeneous,
        failures,
        degrees_checked: degrees.len(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaKReport {
    pub axis: usize,
    pub j: u32,
    pub exactness: ExactnessReport,
    /// For `j = p_i`: the middle term has the graded dimensions of
    /// `A/(x_t : t ≠ i)`, onto which `A` surjects, so the two agree.
    pub quotient_iso: Option<bool>,
}

impl LemmaKReport {
    pub fn passed(&self) -> bool {
        self.exactness.passed() && self.quotient_iso != Some(false)
    }
}

/// Graded dimensions of `A/(x_t : t ≠ i)` in degree `d`.
fn quotient_dim(ring: &GradedRing, cache: &mut PieceCache, i: usize, d: &LDegree) -> usize {
    let g = ring.group();
    let target = cache.get(ring, d);
    if target.is_empty() {
        return 0;
    }
    let mut blocks: Vec<RatMatrix> = Vec::new();
    for t in (0..ring.n()).filter(|&t| t != i) {
        let src = cache.get(ring, &g.sub(d, &g.x(t)));
        if !src.is_empty() {
            blocks.push(ring.mult_matrix(&ring.var_power(t, 1), &src, &target).0);
        }
    }
    let cols: usize = blocks.iter().map(RatMatrix::cols).sum();
    let mut m = RatMatrix::zeros(target.len(), cols);
    let mut c0 = 0;
    for b in &blocks {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                m[(r, c0 + c)] = b[(r, c)].clone();
            }
        }
        c0 += b.cols();
    }
    target.len() - rank(&m)
}

pub fn lemma_k_check(
    p: &ExponentSeq,
    axis: usize,
    j: u32,
    window: i64,
) -> Result<LemmaKReport, SingError> {
    let seq = lemma_k_sequence(p, axis, j)?;
    let ring = GradedRing::new(p.clone());
    let g = ring.group().clone();
    let exactness = check_exact(&g, &seq, window);
    let quotient_iso = if j == p.get(axis - 1) {
        let mut cache = PieceCache::default();
        let ok = g.degrees_in_window(0, window).iter().all(|d| {
            quotient_dim(&ring, &mut cache, axis - 1, d) == seq.middle.indices_at(d).len()
        });
        Some(ok)
    } else {
        None
    };
    Ok(LemmaKReport {
        axis,
        j,
        exactness,
        quotient_iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> ExponentSeq {
        ExponentSeq::new(v).unwrap()
    }

    #[test]
    fn displayed_sequences() {
        let q = p(&[2, 3]);
        let r = lemma_k_check(&q, 2, 2, 12).unwrap();
        assert!(r.passed());
        assert_eq!(r.quotient_iso, None);
        let r = lemma_k_check(&q, 1, 2, 12).unwrap();
        assert!(r.passed());
        assert_eq!(r.quotient_iso, Some(true));
        let r = lemma_k_check(&q, 2, 3, 12).unwrap();
        assert_eq!(r.quotient_iso, Some(true));
        assert!(r.passed());
    }

    #[test]
    fn bad_arguments() {
        let q = p(&[2, 3]);
        assert_eq!(
            lemma_k_check(&q, 3, 2, 6).unwrap_err(),
            SingError::BadAxis { axis: 3, n: 2 }
        );
        assert_eq!(
            lemma_k_check(&q, 1, 3, 6).unwrap_err(),
            SingError::BadPower { j: 3, max: 2 }
        );
    }

    #[test]
    fn wrong_kernel_twist_is_located() {
        let q = p(&[2, 3]);
        let g = LGroup::new(q.clone());
        let mut seq = lemma_k_sequence(&q, 2, 3).unwrap();
        seq.kernel.degrees[0] = g.scale(3, &g.x(1));
        let r = check_exact(&g, &seq, 12);
        assert!(!r.passed());
        assert!(!r.homogeneous);
        assert_eq!(r.first_failure(), Some(&g.scale(2, &g.x(1))));
    }
}
