//! The `L(p)`-graded ring `A = ℚ[x₁, …, xₙ]/(x₁^{p₁} + … + xₙ^{pₙ})`, free
//! resolutions over it and graded Ext computations.
//!
//! Monomials are kept in the normal form `e₁ < p₁`, using the rewrite
//! `x₁^{p₁} → −(x₂^{p₂} + … + xₙ^{pₙ})`. Graded modules follow the
//! convention `M(n)_d = M_{n+d}`, so `k(n)` sits in degree `−n`.

mod ext;
mod lemma;
mod resolution;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactlin::RatMatrix;
use crate::grading::{ExponentSeq, LDegree, LGroup};

pub use ext::{
    ext_formula, ext_k_k, ext_k_ring, first_vanishing_holds, index_coords, index_set,
    vanishing_scan, ExtRingReport, VanishingScan,
};
pub use lemma::{
    check_exact, lemma_k_check, lemma_k_sequence, truncated_axis_module, ExactnessReport,
    GradedModule, LemmaKReport, ShortExactSequence,
};
pub use resolution::{
    bp_resolution, koszul_complex, koszul_perfect_check, resolution_generators,
    validate_resolution, FreeComplex, Generator, KoszulReport, ResolutionReport,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingError {
    /// A twist is not in the index set `I`.
    NotInIndexSet,
    BadAxis {
        axis: usize,
        n: usize,
    },
    BadPower {
        j: u32,
        max: u32,
    },
    OneVariable,
    ZeroLength,
}

impl fmt::Display for SingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingError::NotInIndexSet => write!(f, "twist is not in the index set"),
            SingError::BadAxis { axis, n } => write!(f, "axis must be in 1..={n}, got {axis}"),
            SingError::BadPower { j, max } => write!(f, "j must be in 2..={max}, got {j}"),
            SingError::OneVariable => write!(f, "needs at least two variables"),
            SingError::ZeroLength => write!(f, "resolution length must be ≥ 1"),
        }
    }
}

/// Exponent vector.
pub type Mono = Vec<u32>;

/// Polynomial as a map from exponent vectors to coefficients.
pub type Poly = BTreeMap<Mono, BigRational>;

fn add_term(p: &mut Poly, m: Mono, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(m.clone()).or_insert_with(BigRational::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&m);
    }
}

/// `c · x^e`.
pub fn monomial(e: Mono, c: BigRational) -> Poly {
    let mut p = Poly::new();
    add_term(&mut p, e, c);
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    group: LGroup,
}

impl GradedRing {
    pub fn new(p: ExponentSeq) -> Self {
        GradedRing {
            group: LGroup::new(p),
        }
    }

    pub fn group(&self) -> &LGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.group.rank_n()
    }

    fn p(&self, i: usize) -> u32 {
        self.group.exponents().get(i)
    }

    /// `x_i^e`.
    pub fn var_power(&self, i: usize, e: u32) -> Poly {
        let mut m = alloc::vec![0; self.n()];
        m[i] = e;
        monomial(m, BigRational::one())
    }

    pub fn degree_of(&self, m: &[u32]) -> LDegree {
        let raw: Vec<i64> = m.iter().map(|&e| e as i64).collect();
        self.group.from_x(&raw).expect("n exponents")
    }

    pub fn z_of(&self, m: &[u32]) -> i64 {
        m.iter()
            .zip(self.group.weights())
            .map(|(&e, w)| e as i64 * w)
            .sum()
    }

    /// Normal form of `c · x^e`.
    fn reduce_into(&self, out: &mut Poly, mut e: Mono, c: BigRational) {
        let p1 = self.p(0);
        if e[0] < p1 {
            add_term(out, e, c);
            return;
        }
        e[0] -= p1;
        for i in 1..self.n() {
            let mut f = e.clone();
            f[i] += self.p(i);
            self.reduce_into(out, f, -c.clone());
        }
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        let mut out = Poly::new();
        for (e, c) in p {
            self.reduce_into(&mut out, e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Mono = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.reduce_into(&mut out, e, ca * cb);
            }
        }
        out
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = a.clone();
        for (e, c) in b {
            add_term(&mut out, e.clone(), c.clone());
        }
        out
    }

    /// Normal-form monomials of `ℤ`-degree `z`, grouped by `L`-degree.
    pub fn pieces_with_z(&self, z: i64) -> BTreeMap<LDegree, Vec<Mono>> {
        let mut out: BTreeMap<LDegree, Vec<Mono>> = BTreeMap::new();
        if z < 0 {
            return out;
        }
        let n = self.n();
        let w = self.group.weights().to_vec();
        let mut e = alloc::vec![0u32; n];
        fn rec(
            ring: &GradedRing,
            w: &[i64],
            i: usize,
            rest: i64,
            e: &mut Mono,
            out: &mut BTreeMap<LDegree, Vec<Mono>>,
        ) {
            if i == w.len() {
                if rest == 0 {
                    out.entry(ring.degree_of(e)).or_default().push(e.clone());
                }
                return;
            }
            let mut k = 0u32;
            while k as i64 * w[i] <= rest && (i != 0 || k < ring.p(0)) {
                e[i] = k;
                rec(ring, w, i + 1, rest - k as i64 * w[i], e, out);
                k += 1;
            }
            e[i] = 0;
        }
        rec(self, &w, 0, z, &mut e, &mut out);
        out
    }

    /// Monomial basis of `A_d`, sorted.
    pub fn piece(&self, d: &LDegree) -> Vec<Mono> {
        self.pieces_with_z(self.group.z_degree(d))
            .remove(d)
            .unwrap_or_default()
    }

    /// Matrix of multiplication by `r` from `A_src` to `A_tgt` in the given
    /// monomial bases. Monomials of a product outside the target basis are
    /// reported through the boolean.
    pub fn mult_matrix(&self, r: &Poly, src: &[Mono], tgt: &[Mono]) -> (RatMatrix, bool) {
        let index: BTreeMap<&Mono, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = RatMatrix::zeros(tgt.len(), src.len());
        let mut homogeneous = true;
        for (j, m) in src.iter().enumerate() {
            let prod = self.mul(r, &monomial(m.clone(), BigRational::one()));
            for (e, c) in prod {
                match index.get(&e) {
                    Some(&i) => out[(i, j)] = c,
                    None => homogeneous = false,
                }
            }
        }
        (out, homogeneous)
    }
}

/// Memo of graded pieces keyed by `L`-degree.
#[derive(Default)]
pub(crate) struct PieceCache {
    pieces: BTreeMap<LDegree, Vec<Mono>>,
    zs: BTreeMap<i64, ()>,
}

impl PieceCache {
    pub(crate) fn get(&mut self, ring: &GradedRing, d: &LDegree) -> Vec<Mono> {
        let z = ring.group().z_degree(d);
        if !self.zs.contains_key(&z) {
            self.pieces.extend(ring.pieces_with_z(z));
            self.zs.insert(z, ());
        }
        self.pieces.get(d).cloned().unwrap_or_default()
    }
}

/// Monomial basis of `A_d` (convenience wrapper).
pub fn ring_piece(p: &ExponentSeq, d: &LDegree) -> Vec<Mono> {
    GradedRing::new(p.clone()).piece(d)
}
