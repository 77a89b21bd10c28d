use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::resolution::{block_matrix, resolution_generators};
use super::{bp_resolution, GradedRing, PieceCache, SingError};
use crate::dgcat::index_tuples;
use crate::exactlin::rank;
use crate::grading::{ExponentSeq, LDegree, LGroup};

/// `Ext^i(k(m), k(n))` for every `i` where it can be nonzero.
///
/// Every entry of the resolution differential lies in the maximal ideal, so
/// `Hom(C, k(n))` has zero differential and `Ext^i` counts the generators of
/// `C^{−i}` of degree `m − n`. Generators in twist `j` have `ℤ`-degree at
/// least `jℓ`, which bounds the search.
pub fn ext_k_k(p: &ExponentSeq, m: &LDegree, n: &LDegree) -> BTreeMap<usize, usize> {
    let g = LGroup::new(p.clone());
    let target = g.sub(m, n);
    let z = g.z_degree(&target);
    let mut out = BTreeMap::new();
    if z < 0 {
        return out;
    }
    let max_i = p.len() + 2 * (z / g.ell()) as usize;
    for i in 0..=max_i {
        let count = resolution_generators(&g, i)
            .iter()
            .filter(|gen| gen.degree == target)
            .count();
        if count > 0 {
            out.insert(i, count);
        }
    }
    out
}

/// Index set `I = {Σ aᵢxᵢ : −pᵢ + 2 ≤ aᵢ ≤ 0}`, ordered like the tuples
/// `(1 − a₁, …, 1 − aₙ)`.
pub fn index_set(p: &ExponentSeq) -> Vec<LDegree> {
    let g = LGroup::new(p.clone());
    index_tuples(p)
        .iter()
        .map(|t| {
            let a: Vec<i64> = t.iter().map(|&i| 1 - i as i64).collect();
            g.from_x(&a).expect("n entries")
        })
        .collect()
}

/// Coefficients `(a₁, …, aₙ)` of an index-set element.
pub fn index_coords(p: &ExponentSeq, d: &LDegree) -> Option<Vec<i64>> {
    let set = index_set(p);
    let pos = set.iter().position(|x| x == d)?;
    Some(index_tuples(p)[pos].iter().map(|&i| 1 - i as i64).collect())
}

/// Graded dimension of `⊗ᵢ hom_{𝔄_{pᵢ−1}}(C_{1−aᵢ}, C_{1−bᵢ})`.
pub fn ext_formula(
    p: &ExponentSeq,
    m: &LDegree,
    n: &LDegree,
) -> Result<BTreeMap<usize, usize>, SingError> {
    let a = index_coords(p, m).ok_or(SingError::NotInIndexSet)?;
    let b = index_coords(p, n).ok_or(SingError::NotInIndexSet)?;
    let mut dims: BTreeMap<usize, usize> = BTreeMap::from([(0, 1)]);
    for (ai, bi) in a.iter().zip(&b) {
        // hom(C_s, C_t) in 𝔄: ℚ in degree 0 if s = t, ℚ in degree 1 if t = s + 1
        let (s, t) = (1 - ai, 1 - bi);
        let shift = match t - s {
            0 => 0,
            1 => 1,
            _ => return Ok(BTreeMap::new()),
        };
        dims = dims.into_iter().map(|(d, k)| (d + shift, k)).collect();
    }
    Ok(dims)
}

/// `ext_k_k` vanishes whenever `m − n ∉ ℕx₁ + … + ℕxₙ`.
pub fn first_vanishing_holds(p: &ExponentSeq, m: &LDegree, n: &LDegree) -> bool {
    let g = LGroup::new(p.clone());
    g.in_positive_monoid(&g.sub(m, n)) || ext_k_k(p, m, n).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingScan {
    pub pairs_checked: usize,
    /// Pairs with `m − n` outside the monoid, where vanishing is asserted.
    pub pairs_outside_monoid: usize,
    pub failures: Vec<(LDegree, LDegree)>,
}

/// Checks the first vanishing statement on `count` twist pairs spread over
/// `ℤ`-degrees `−ℓ … 2ℓ`.
pub fn vanishing_scan(p: &ExponentSeq, count: usize) -> VanishingScan {
    let g = LGroup::new(p.clone());
    let degs = g.degrees_in_window(-g.ell(), 2 * g.ell());
    let total = degs.len() * degs.len();
    let step = (total / count.max(1)).max(1);
    let mut scan = VanishingScan {
        pairs_checked: 0,
        pairs_outside_monoid: 0,
        failures: Vec::new(),
    };
    for k in (0..total).step_by(step).take(count) {
        let (m, n) = (&degs[k / degs.len()], &degs[k % degs.len()]);
        scan.pairs_checked += 1;
        if !g.in_positive_monoid(&g.sub(m, n)) {
            scan.pairs_outside_monoid += 1;
        }
        if !first_vanishing_holds(p, m, n) {
            scan.failures.push((m.clone(), n.clone()));
        }
    }
    scan
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtRingReport {
    /// Cohomological degree ↦ dimension, nonzero entries in the window.
    pub dims: BTreeMap<usize, usize>,
    /// `m ≠ −c + x₁ + … + xₙ + n`.
    pub hypothesis_holds: bool,
    pub lo: usize,
    pub hi: usize,
}

/// Cohomology of `Hom(C(m), A(n))` in degrees `lo..=hi`, taken in internal
/// degree 0. The term at `g ∈ C^{−i}` is `A_{n + deg g − m}` and the
/// differential is multiplication by the transposed entries of `δ`.
pub fn ext_k_ring(
    p: &ExponentSeq,
    m: &LDegree,
    n: &LDegree,
    lo: usize,
    hi: usize,
) -> ExtRingReport {
    let c = bp_resolution(p, hi + 1).expect("length ≥ 1");
    let ring: &GradedRing = &c.ring;
    let g = ring.group();
    let mut special = g.sub(n, &g.c());
    for i in 0..g.rank_n() {
        special = g.add(&special, &g.x(i));
    }
    let mut cache = PieceCache::default();
    let pieces: Vec<Vec<Vec<super::Mono>>> = c
        .terms
        .iter()
        .map(|term| {
            term.iter()
                .map(|gen| cache.get(ring, &g.sub(&g.add(n, &gen.degree), m)))
                .collect()
        })
        .collect();
    let dim = |i: usize| -> usize { pieces[i].iter().map(Vec::len).sum() };
    // d^i : Hom^i → Hom^{i+1}
    let coboundary_rank = |i: usize| -> usize {
        let d = &c.differentials[i];
        let transposed: Vec<Vec<super::Poly>> = (0..c.terms[i + 1].len())
            .map(|s| (0..c.terms[i].len()).map(|t| d[t][s].clone()).collect())
            .collect();
        rank(&block_matrix(ring, &transposed, &pieces[i], &pieces[i + 1]))
    };
    let mut dims = BTreeMap::new();
    for i in lo..=hi {
        let before = if i == 0 { 0 } else { coboundary_rank(i - 1) };
        let h = dim(i) - coboundary_rank(i) - before;
        if h > 0 {
            dims.insert(i, h);
        }
    }
    ExtRingReport {
        dims,
        hypothesis_holds: *m != special,
        lo,
        hi,
    }
}
