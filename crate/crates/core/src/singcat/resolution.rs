use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{GradedRing, PieceCache, Poly, SingError};
use crate::exactlin::{rank, RatMatrix};
use crate::grading::{ExponentSeq, LDegree, LGroup};

/// Free generator `dx_I` in the `j`-th twisted summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub degree: LDegree,
    /// Zero-based variable indices, increasing.
    pub form: Vec<usize>,
    pub twist: usize,
}

/// Bounded complex of free graded modules `T₀ ← T₁ ← … ← T_len`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    pub ring: GradedRing,
    /// `terms[i]` is the term in homological position `i` (cohomological `−i`).
    pub terms: Vec<Vec<Generator>>,
    /// `differentials[i] : terms[i+1] → terms[i]`, indexed `[target][source]`.
    pub differentials: Vec<Vec<Vec<Poly>>>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Generators of `C^{−i} = ⊕_j Ω^{i−2j}`, ordered by `j` then by form, of
/// degree `Σ_{k∈I} x_k + j c`.
pub fn resolution_generators(group: &LGroup, i: usize) -> Vec<Generator> {
    let n = group.rank_n();
    let mut out = Vec::new();
    for j in 0..=i / 2 {
        let k = i - 2 * j;
        if k > n {
            continue;
        }
        for form in subsets(n, k) {
            let mut raw = alloc::vec![0i64; n + 1];
            for &v in &form {
                raw[v] += 1;
            }
            raw[n] = j as i64;
            out.push(Generator {
                degree: group.normalize(&raw).expect("n + 1 entries"),
                form,
                twist: j,
            });
        }
    }
    out
}

/// Free resolution of `k` with `δ = ι_η + γ∧` for `η = Σ x_i ∂_i` and
/// `γ = Σ x_i^{p_i−1} dx_i`, through homological position `length`.
pub fn bp_resolution(p: &ExponentSeq, length: usize) -> Result<FreeComplex, SingError> {
    if length == 0 {
        return Err(SingError::ZeroLength);
    }
    let ring = GradedRing::new(p.clone());
    let n = ring.n();
    let terms: Vec<Vec<Generator>> = (0..=length)
        .map(|i| resolution_generators(ring.group(), i))
        .collect();
    let mut differentials = Vec::with_capacity(length);
    for i in 0..length {
        let (tgt, src) = (&terms[i], &terms[i + 1]);
        let mut d = alloc::vec![alloc::vec![Poly::new(); src.len()]; tgt.len()];
        let find = |form: &[usize], twist: usize| {
            tgt.iter()
                .position(|g| g.form == form && g.twist == twist)
                .expect("target generator exists")
        };
        for (s, g) in src.iter().enumerate() {
            // ι_η: dx_{i₁} ∧ … ↦ Σ (−1)^{m} x_{i_m} dx_{…}
            for (m, &v) in g.form.iter().enumerate() {
                let mut rest = g.form.clone();
                rest.remove(m);
                let t = find(&rest, g.twist);
                let sign = if m % 2 == 0 {
                    BigRational::one()
                } else {
                    -BigRational::one()
                };
                let term = ring.var_power(v, 1);
                d[t][s] = ring.add(&d[t][s], &scale(&term, &sign));
            }
            // γ∧: lands in the previous twist
            if g.twist > 0 {
                for k in 0..n {
                    if g.form.contains(&k) {
                        continue;
                    }
                    let before = g.form.iter().filter(|&&v| v < k).count();
                    let mut form = g.form.clone();
                    form.insert(before, k);
                    if form.len() > n {
                        continue;
                    }
                    let t = find(&form, g.twist - 1);
                    let sign = if before % 2 == 0 {
                        BigRational::one()
                    } else {
                        -BigRational::one()
                    };
                    let term = ring.var_power(k, p.get(k) - 1);
                    d[t][s] = ring.add(&d[t][s], &scale(&term, &sign));
                }
            }
        }
        differentials.push(d);
    }
    Ok(FreeComplex {
        ring,
        terms,
        differentials,
    })
}

fn scale(p: &Poly, c: &BigRational) -> Poly {
    p.iter()
        .filter(|_| !c.is_zero())
        .map(|(e, v)| (e.clone(), v * c))
        .collect()
}

/// Koszul complex of `(x₂, …, xₙ)` over `A`: position `r` has the subsets
/// of size `r` of `{2, …, n}`.
pub fn koszul_complex(p: &ExponentSeq) -> Result<FreeComplex, SingError> {
    let ring = GradedRing::new(p.clone());
    let n = ring.n();
    if n < 2 {
        return Err(SingError::OneVariable);
    }
    let terms: Vec<Vec<Generator>> = (0..n)
        .map(|r| {
            subsets(n - 1, r)
                .into_iter()
                .map(|s| {
                    let form: Vec<usize> = s.iter().map(|v| v + 1).collect();
                    let raw: Vec<i64> = (0..n).map(|v| form.contains(&v) as i64).collect();
                    Generator {
                        degree: ring.group().from_x(&raw).expect("n entries"),
                        form,
                        twist: 0,
                    }
                })
                .collect()
        })
        .collect();
    let mut differentials = Vec::new();
    for r in 0..n - 1 {
        let (tgt, src) = (&terms[r], &terms[r + 1]);
        let mut d = alloc::vec![alloc::vec![Poly::new(); src.len()]; tgt.len()];
        for (s, g) in src.iter().enumerate() {
            for (m, &v) in g.form.iter().enumerate() {
                let mut rest = g.form.clone();
                rest.remove(m);
                let t = tgt
                    .iter()
                    .position(|h| h.form == rest)
                    .expect("face exists");
                let sign = if m % 2 == 0 {
                    BigRational::one()
                } else {
                    -BigRational::one()
                };
                d[t][s] = scale(&ring.var_power(v, 1), &sign);
            }
        }
        differentials.push(d);
    }
    Ok(FreeComplex {
        ring,
        terms,
        differentials,
    })
}

impl FreeComplex {
    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }

    /// `δ_i ∘ δ_{i+1} = 0` as matrices over `A`.
    #[allow(clippy::needless_range_loop)]
    pub fn d_squared_is_zero(&self) -> bool {
        let r = &self.ring;
        for i in 0..self.length().saturating_sub(1) {
            let (d0, d1) = (&self.differentials[i], &self.differentials[i + 1]);
            for row in d0 {
                for s in 0..self.terms[i + 2].len() {
                    let mut acc = Poly::new();
                    for (k, entry) in row.iter().enumerate() {
                        if !entry.is_empty() && !d1[k][s].is_empty() {
                            acc = r.add(&acc, &r.mul(entry, &d1[k][s]));
                        }
                    }
                    if !acc.is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Entries `(position, target, source)` of `δ` that are not homogeneous of
    /// degree `deg(source) − deg(target)`.
    pub fn homogeneity_violations(&self) -> Vec<(usize, usize, usize)> {
        let g = self.ring.group();
        let mut out = Vec::new();
        for (i, d) in self.differentials.iter().enumerate() {
            for (t, row) in d.iter().enumerate() {
                for (s, entry) in row.iter().enumerate() {
                    let want = g.sub(&self.terms[i + 1][s].degree, &self.terms[i][t].degree);
                    if entry.keys().any(|e| self.ring.degree_of(e) != want) {
                        out.push((i, t, s));
                    }
                }
            }
        }
        out
    }

    /// `δ_i` restricted to internal degree `d`: `(T_{i+1})_d → (T_i)_d`.
    fn degree_matrix(&self, i: usize, d: &LDegree, cache: &mut PieceCache) -> RatMatrix {
        let g = self.ring.group();
        let src: Vec<Vec<super::Mono>> = self.terms[i + 1]
            .iter()
            .map(|gen| cache.get(&self.ring, &g.sub(d, &gen.degree)))
            .collect();
        let tgt: Vec<Vec<super::Mono>> = self.terms[i]
            .iter()
            .map(|gen| cache.get(&self.ring, &g.sub(d, &gen.degree)))
            .collect();
        block_matrix(&self.ring, &self.differentials[i], &src, &tgt)
    }

    fn piece_dim(&self, i: usize, d: &LDegree, cache: &mut PieceCache) -> usize {
        let g = self.ring.group();
        self.terms[i]
            .iter()
            .map(|gen| cache.get(&self.ring, &g.sub(d, &gen.degree)).len())
            .sum()
    }
}

/// Block matrix whose `(t, s)` block is multiplication by `entries[t][s]`.
pub(crate) fn block_matrix(
    ring: &GradedRing,
    entries: &[Vec<Poly>],
    src: &[Vec<super::Mono>],
    tgt: &[Vec<super::Mono>],
) -> RatMatrix {
    let rows: usize = tgt.iter().map(Vec::len).sum();
    let cols: usize = src.iter().map(Vec::len).sum();
    let mut m = RatMatrix::zeros(rows, cols);
    let mut r0 = 0;
    for (t, tb) in tgt.iter().enumerate() {
        let mut c0 = 0;
        for (s, sb) in src.iter().enumerate() {
            let entry = &entries[t][s];
            if !entry.is_empty() && !tb.is_empty() && !sb.is_empty() {
                let (block, _) = ring.mult_matrix(entry, sb, tb);
                for i in 0..tb.len() {
                    for j in 0..sb.len() {
                        if !block[(i, j)].is_zero() {
                            m[(r0 + i, c0 + j)] = block[(i, j)].clone();
                        }
                    }
                }
            }
            c0 += sb.len();
        }
        r0 += tb.len();
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionReport {
    pub d_squared_zero: bool,
    pub homogeneity_violations: Vec<(usize, usize, usize)>,
    /// `(internal degree, cohomological degree)` where the complex is not exact.
    pub exactness_failures: Vec<(LDegree, i64)>,
    /// `H⁰` is one-dimensional in degree 0 and zero elsewhere in the window.
    pub h0_is_k: bool,
    pub degrees_checked: usize,
}

impl ResolutionReport {
    pub fn passed(&self) -> bool {
        self.d_squared_zero
            && self.homogeneity_violations.is_empty()
            && self.exactness_failures.is_empty()
            && self.h0_is_k
    }
}

/// Exactness at cohomological degrees `−1 … −length+1` and `H⁰ ≅ k`, in
/// every internal degree of `ℤ`-degree `0 ≤ z ≤ window`.
pub fn validate_resolution(c: &FreeComplex, window: i64) -> ResolutionReport {
    let d_squared_zero = c.d_squared_is_zero();
    let homogeneity_violations = c.homogeneity_violations();
    let mut exactness_failures = Vec::new();
    let mut h0_is_k = true;
    let mut cache = PieceCache::default();
    let degrees = c.ring.group().degrees_in_window(0, window);
    for d in &degrees {
        let ranks: Vec<usize> = (0..c.length())
            .map(|i| rank(&c.degree_matrix(i, d, &mut cache)))
            .collect();
        let h0 = c.piece_dim(0, d, &mut cache) - ranks[0];
        if h0 != usize::from(d.is_zero()) {
            h0_is_k = false;
        }
        for i in 1..c.length() {
            let kernel = c.piece_dim(i, d, &mut cache) - ranks[i - 1];
            if kernel != ranks[i] {
                exactness_failures.push((d.clone(), -(i as i64)));
            }
        }
    }
    ResolutionReport {
        d_squared_zero,
        homogeneity_violations,
        exactness_failures,
        h0_is_k,
        degrees_checked: degrees.len(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulReport {
    pub d_squared_zero: bool,
    /// Internal degrees where a positive homological position has homology.
    pub failures: Vec<(LDegree, usize)>,
    /// `dim H₀` per internal degree with nonzero value.
    pub h0_dims: Vec<(LDegree, usize)>,
    pub degrees_checked: usize,
}

impl KoszulReport {
    pub fn passed(&self) -> bool {
        self.d_squared_zero && self.failures.is_empty()
    }
}

/// Exactness of the Koszul complex on `(x₂, …, xₙ)` in positive positions,
/// which makes `A/(x₂, …, xₙ)` a perfect module.
pub fn koszul_perfect_check(p: &ExponentSeq, window: i64) -> Result<KoszulReport, SingError> {
    let c = koszul_complex(p)?;
    let mut cache = PieceCache::default();
    let degrees = c.ring.group().degrees_in_window(0, window);
    let mut failures = Vec::new();
    let mut h0_dims = Vec::new();
    for d in &degrees {
        let ranks: Vec<usize> = (0..c.length())
            .map(|i| rank(&c.degree_matrix(i, d, &mut cache)))
            .collect();
        let h0 = c.piece_dim(0, d, &mut cache) - ranks[0];
        if h0 > 0 {
            h0_dims.push((d.clone(), h0));
        }
        for i in 1..c.terms.len() {
            let kernel = c.piece_dim(i, d, &mut cache) - ranks[i - 1];
            let image = ranks.get(i).copied().unwrap_or(0);
            if kernel != image {
                failures.push((d.clone(), i));
            }
        }
    }
    Ok(KoszulReport {
        d_squared_zero: c.d_squared_is_zero(),
        failures,
        h0_dims,
        degrees_checked: degrees.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> ExponentSeq {
        ExponentSeq::new(v).unwrap()
    }

    #[test]
    fn ranks_and_degrees() {
        let c = bp_resolution(&p(&[2, 3]), 4).unwrap();
        assert_eq!(c.ranks(), [1, 2, 2, 2, 2]);
        let g = c.ring.group();
        let z: Vec<Vec<i64>> = c
            .terms
            .iter()
            .map(|t| t.iter().map(|gen| g.z_degree(&gen.degree)).collect())
            .collect();
        assert_eq!(
            z,
            [vec![0], vec![3, 2], vec![5, 6], vec![9, 8], vec![11, 12]]
        );
    }

    #[test]
    fn resolutions_are_exact() {
        for (v, len, window) in [(&[2, 3][..], 8, 12), (&[3, 3], 6, 10)] {
            let c = bp_resolution(&p(v), len).unwrap();
            let r = validate_resolution(&c, window);
            assert!(r.passed(), "{v:?}: {r:?}");
        }
    }

    #[test]
    fn dropping_twist_breaks_homogeneity() {
        let mut c = bp_resolution(&p(&[2, 3]), 4).unwrap();
        let n = c.ring.n();
        for term in &mut c.terms {
            for g in term.iter_mut() {
                let raw: Vec<i64> = (0..n).map(|v| g.form.contains(&v) as i64).collect();
                g.degree = c.ring.group().from_x(&raw).unwrap();
            }
        }
        assert!(!c.homogeneity_violations().is_empty());
        assert!(!validate_resolution(&c, 6).passed());
    }

    #[test]
    fn koszul() {
        assert!(koszul_perfect_check(&p(&[2, 3]), 10).unwrap().passed());
        assert!(koszul_perfect_check(&p(&[2, 2, 2]), 8).unwrap().passed());
        assert_eq!(
            koszul_perfect_check(&p(&[2]), 4).unwrap_err(),
            SingError::OneVariable
        );
        // H₀ = k[x₁]/(x₁^{p₁})
        let r = koszul_perfect_check(&p(&[3, 3]), 6).unwrap();
        assert_eq!(r.h0_dims.len(), 3);
    }

    use alloc::vec;
}
