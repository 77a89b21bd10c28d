//! The rank-one grading group `L(p)` and the arithmetic around it.
//!
//! `L(p)` is generated by `x₁, …, xₙ, c` subject to `pᵢ xᵢ = c`. Every element
//! has a unique normal form `Σ aᵢ xᵢ + b c` with `0 ≤ aᵢ < pᵢ`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactlin::{smith_normal_form, solve_integer, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingError {
    Empty,
    ExponentTooSmall { index: usize, value: i64 },
    WrongLength { expected: usize, got: usize },
    InfiniteCokernel,
}

impl fmt::Display for GradingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradingError::Empty => write!(f, "exponent sequence must be nonempty"),
            GradingError::ExponentTooSmall { index, value } => {
                write!(f, "exponents must be ≥ 2 (p[{index}] = {value})")
            }
            GradingError::WrongLength { expected, got } => {
                write!(f, "expected {expected} coefficients, got {got}")
            }
            GradingError::InfiniteCokernel => write!(f, "cokernel is unexpectedly infinite"),
        }
    }
}

/// Exponent sequence `p = (p₁, …, pₙ)` with every `pᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentSeq(Vec<u32>);

impl ExponentSeq {
    pub fn new(p: &[i64]) -> Result<Self, GradingError> {
        if p.is_empty() {
            return Err(GradingError::Empty);
        }
        let mut out = Vec::with_capacity(p.len());
        for (index, &value) in p.iter().enumerate() {
            if value < 2 || value > u32::MAX as i64 {
                return Err(GradingError::ExponentTooSmall { index, value });
            }
            out.push(value as u32);
        }
        Ok(ExponentSeq(out))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `ℓ = lcm(p₁, …, pₙ)`.
    pub fn lcm(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, &p| acc.lcm(&(p as u64)))
    }

    /// `Π (pᵢ − 1)`, the size of the index set.
    pub fn milnor_number(&self) -> usize {
        self.0.iter().map(|&p| (p - 1) as usize).product()
    }
}

impl fmt::Display for ExponentSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Element of `L(p)` in normal form: `Σ aᵢ xᵢ + b c`, `0 ≤ aᵢ < pᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LDegree {
    pub a: Vec<i64>,
    pub b: i64,
}

impl LDegree {
    pub fn zero(n: usize) -> Self {
        LDegree {
            a: alloc::vec![0; n],
            b: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.b == 0 && self.a.iter().all(|&x| x == 0)
    }

    /// Raw coefficient vector `(a₁, …, aₙ, b)`.
    pub fn raw(&self) -> Vec<i64> {
        let mut v = self.a.clone();
        v.push(self.b);
        v
    }
}

impl fmt::Display for LDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &a) in self.a.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if wrote {
                write!(f, "+")?;
            }
            if a == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "{a}x{}", i + 1)?;
            }
            wrote = true;
        }
        if !wrote && self.b == 0 {
            return write!(f, "0");
        }
        if self.b != 0 {
            if wrote && self.b > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}c", self.b)?;
        }
        Ok(())
    }
}

/// Finite abelian group `⊕ ℤ/dᵢ` with `d₁ | d₂ | …`, every `dᵢ > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    pub invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    fn from_factors(factors: &[BigInt]) -> Self {
        FiniteAbelianGroup {
            invariant_factors: factors
                .iter()
                .map(|f| f.to_u64().expect("invariant factor fits in u64"))
                .filter(|&f| f > 1)
                .collect(),
        }
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        for (i, d) in self.invariant_factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            write!(f, "ℤ/{d}")?;
        }
        Ok(())
    }
}

/// The grading group `L(p)` together with `ℓ` and the weights `ℓ/pᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LGroup {
    p: ExponentSeq,
    ell: i64,
    weights: Vec<i64>,
}

impl LGroup {
    pub fn new(p: ExponentSeq) -> Self {
        let ell = p.lcm() as i64;
        let weights = p.as_slice().iter().map(|&pi| ell / pi as i64).collect();
        LGroup { p, ell, weights }
    }

    pub fn exponents(&self) -> &ExponentSeq {
        &self.p
    }

    pub fn rank_n(&self) -> usize {
        self.p.len()
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Normal form of `Σ raw[i] xᵢ + raw[n] c`.
    pub fn normalize(&self, raw: &[i64]) -> Result<LDegree, GradingError> {
        let n = self.rank_n();
        if raw.len() != n + 1 {
            return Err(GradingError::WrongLength {
                expected: n + 1,
                got: raw.len(),
            });
        }
        let mut b = raw[n];
        let a = (0..n)
            .map(|i| {
                let pi = self.p.get(i) as i64;
                let (q, r) = raw[i].div_mod_floor(&pi);
                b += q;
                r
            })
            .collect();
        Ok(LDegree { a, b })
    }

    /// Normal form of `Σ coeffs[i] xᵢ` (no `c` part).
    pub fn from_x(&self, coeffs: &[i64]) -> Result<LDegree, GradingError> {
        let mut raw = coeffs.to_vec();
        raw.push(0);
        self.normalize(&raw)
    }

    pub fn x(&self, i: usize) -> LDegree {
        let mut a = alloc::vec![0; self.rank_n()];
        a[i] = 1;
        self.normalize_unchecked(a, 0)
    }

    pub fn c(&self) -> LDegree {
        LDegree {
            a: alloc::vec![0; self.rank_n()],
            b: 1,
        }
    }

    pub fn zero(&self) -> LDegree {
        LDegree::zero(self.rank_n())
    }

    fn normalize_unchecked(&self, mut raw: Vec<i64>, b: i64) -> LDegree {
        raw.push(b);
        self.normalize(&raw).expect("length is n + 1")
    }

    pub fn add(&self, u: &LDegree, v: &LDegree) -> LDegree {
        let raw: Vec<i64> = u.a.iter().zip(&v.a).map(|(x, y)| x + y).collect();
        self.normalize_unchecked(raw, u.b + v.b)
    }

    pub fn neg(&self, u: &LDegree) -> LDegree {
        self.normalize_unchecked(u.a.iter().map(|x| -x).collect(), -u.b)
    }

    pub fn sub(&self, u: &LDegree, v: &LDegree) -> LDegree {
        self.add(u, &self.neg(v))
    }

    pub fn scale(&self, k: i64, u: &LDegree) -> LDegree {
        self.normalize_unchecked(u.a.iter().map(|x| k * x).collect(), k * u.b)
    }

    /// `ℤ`-degree: `Σ aᵢ ℓ/pᵢ + b ℓ`.
    pub fn z_degree(&self, d: &LDegree) -> i64 {
        d.a.iter()
            .zip(&self.weights)
            .map(|(a, w)| a * w)
            .sum::<i64>()
            + d.b * self.ell
    }

    /// All normal forms of a given `ℤ`-degree (finitely many).
    pub fn degrees_with_z(&self, z: i64) -> Vec<LDegree> {
        let mut out = Vec::new();
        let n = self.rank_n();
        let mut a = alloc::vec![0i64; n];
        loop {
            let partial: i64 = a.iter().zip(&self.weights).map(|(x, w)| x * w).sum();
            let rest = z - partial;
            if rest.rem_euclid(self.ell) == 0 {
                out.push(LDegree {
                    a: a.clone(),
                    b: rest.div_euclid(self.ell),
                });
            }
            // odometer over the box 0 ≤ aᵢ < pᵢ
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                a[i] += 1;
                if a[i] < self.p.get(i) as i64 {
                    break;
                }
                a[i] = 0;
                i += 1;
            }
        }
    }

    /// All normal forms with `ℤ`-degree in `lo..=hi`, ordered by `ℤ`-degree.
    pub fn degrees_in_window(&self, lo: i64, hi: i64) -> Vec<LDegree> {
        (lo..=hi).flat_map(|z| self.degrees_with_z(z)).collect()
    }

    /// Whether `d` lies in `ℕx₁ + … + ℕxₙ`.
    ///
    /// `Σ mᵢ xᵢ` with `mᵢ ≥ 0` normalizes to `b = Σ ⌊mᵢ/pᵢ⌋ ≥ 0`, and any
    /// normal form with `b ≥ 0` is reached by putting all of `b` on `x₁`.
    pub fn in_positive_monoid(&self, d: &LDegree) -> bool {
        d.b >= 0
    }

    /// Membership in `L₊ = {−(n−1)c + Σ aᵢxᵢ : aᵢ ≥ 1}`.
    pub fn is_in_l_plus(&self, d: &LDegree) -> bool {
        let n = self.rank_n() as i64;
        let mut shifted = self.add(d, &self.scale(n - 1, &self.c()));
        for i in 0..self.rank_n() {
            shifted = self.sub(&shifted, &self.x(i));
        }
        self.in_positive_monoid(&shifted)
    }

    /// Relation matrix with rows `pᵢ eᵢ − e_c` on the generators `(x₁, …, xₙ, c)`.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.rank_n();
        IntMatrix::from_fn(n, n + 1, |i, j| {
            if j == i {
                BigInt::from(self.p.get(i))
            } else if j == n {
                -BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Torsion subgroup of `L(p)`, i.e. the kernel of the `ℤ`-degree.
    pub fn torsion_subgroup(&self) -> FiniteAbelianGroup {
        let snf = smith_normal_form(&self.relation_matrix());
        FiniteAbelianGroup::from_factors(&snf.invariant_factors())
    }
}

/// Outcome of the Calabi–Yau condition `Σ 1/pᵢ = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyCheck {
    pub holds: bool,
    pub sum: BigRational,
    pub ell: i64,
    pub weights: Vec<i64>,
}

pub fn cy_check(p: &ExponentSeq) -> CyCheck {
    let sum = p
        .as_slice()
        .iter()
        .map(|&pi| BigRational::new(BigInt::one(), BigInt::from(pi)))
        .fold(BigRational::zero(), |acc, x| acc + x);
    let l = LGroup::new(p.clone());
    CyCheck {
        holds: sum.is_one(),
        sum,
        ell: l.ell(),
        weights: l.weights().to_vec(),
    }
}

/// The group `G_p = coker(ℂ^× → K)`, computed through its character group:
/// the kernel of `eᵢ ↦ aᵢ` on `ℤⁿ / ⟨pᵢeᵢ − pᵢ₊₁eᵢ₊₁⟩`.
pub fn orlov_group(p: &ExponentSeq) -> Result<FiniteAbelianGroup, GradingError> {
    let n = p.len();
    if n == 1 {
        return Ok(FiniteAbelianGroup::trivial());
    }
    let l = LGroup::new(p.clone());
    // Lattice M = ker(a·) ⊂ ℤⁿ, basis from the SNF column transform.
    let a = IntMatrix::from_fn(1, n, |_, j| BigInt::from(l.weights()[j]));
    let snf = smith_normal_form(&a);
    let basis: Vec<Vec<BigInt>> = (1..n).map(|j| snf.v.column(j)).collect();
    let basis_m = IntMatrix::from_columns(n, &basis);
    // Express each relation row in the basis of M.
    let mut coords = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let mut rel = alloc::vec![BigInt::zero(); n];
        rel[i] = BigInt::from(p.get(i));
        rel[i + 1] = -BigInt::from(p.get(i + 1));
        let x = solve_integer(&basis_m, &rel).ok_or(GradingError::InfiniteCokernel)?;
        coords.push(x);
    }
    let rel_in_m = IntMatrix::from_fn(n - 1, n - 1, |i, j| coords[i][j].clone());
    let snf = smith_normal_form(&rel_in_m);
    let factors = snf.invariant_factors();
    if factors.len() < n - 1 {
        return Err(GradingError::InfiniteCokernel);
    }
    Ok(FiniteAbelianGroup::from_factors(&factors))
}

/// Labels `x1, …, xn, c` used when printing raw coefficient vectors.
pub fn generator_names(n: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=n).map(|i| alloc::format!("x{i}")).collect();
    v.push(String::from("c"));
    v
}

#[cfg(test)]
mod tests {
    use alloc::vec;

    use super::*;

    fn lg(p: &[i64]) -> LGroup {
        LGroup::new(ExponentSeq::new(p).unwrap())
    }

    #[test]
    fn rejects_degenerate_exponents() {
        assert!(matches!(
            ExponentSeq::new(&[1, 3]),
            Err(GradingError::ExponentTooSmall { index: 0, value: 1 })
        ));
        assert_eq!(ExponentSeq::new(&[]), Err(GradingError::Empty));
    }

    #[test]
    fn normalize_examples() {
        let l = lg(&[2, 2]);
        assert_eq!(
            l.normalize(&[1, -1, 0]).unwrap(),
            LDegree {
                a: vec![1, 1],
                b: -1
            }
        );
        assert!(l.normalize(&[0, 0, 0]).unwrap().is_zero());
        let l = lg(&[2, 3]);
        assert_eq!(
            l.normalize(&[2, 0, 0]).unwrap(),
            LDegree {
                a: vec![0, 0],
                b: 1
            }
        );
        assert!(l.normalize(&[1, 2]).is_err());
    }

    #[test]
    fn z_degree_examples() {
        let l = lg(&[2, 3]);
        assert_eq!(l.z_degree(&l.x(0)), 3);
        assert_eq!(l.z_degree(&l.x(1)), 2);
        assert_eq!(l.z_degree(&l.c()), 6);
        let l = lg(&[2, 2]);
        let d = l.normalize(&[1, -1, 0]).unwrap();
        assert_eq!(l.z_degree(&d), 0);
        assert_eq!(l.z_degree(&l.zero()), 0);
    }

    #[test]
    fn torsion_examples() {
        assert!(lg(&[5]).torsion_subgroup().is_trivial());
        assert_eq!(lg(&[2, 2]).torsion_subgroup().invariant_factors, vec![2]);
        assert!(lg(&[2, 3]).torsion_subgroup().is_trivial());
    }

    #[test]
    fn cy_examples() {
        let c = cy_check(&ExponentSeq::new(&[3, 3, 3]).unwrap());
        assert!(c.holds);
        assert_eq!((c.ell, c.weights), (3, vec![1, 1, 1]));
        let c = cy_check(&ExponentSeq::new(&[2, 3, 5]).unwrap());
        assert!(!c.holds);
        assert_eq!(c.sum, BigRational::new(31.into(), 30.into()));
        assert_eq!((c.ell, c.weights), (30, vec![15, 10, 6]));
        let c = cy_check(&ExponentSeq::new(&[2, 3, 6]).unwrap());
        assert!(c.holds);
        assert_eq!((c.ell, c.weights), (6, vec![3, 2, 1]));
    }

    #[test]
    fn orlov_examples() {
        let g = |p: &[i64]| orlov_group(&ExponentSeq::new(p).unwrap()).unwrap();
        // Diagonal symmetries (ℤ/3)³ of the Fermat cubic modulo the diagonal ℤ/3.
        assert_eq!(g(&[3, 3, 3]).invariant_factors, vec![3, 3]);
        assert_eq!(g(&[2, 2]).invariant_factors, vec![2]);
        assert!(g(&[7]).is_trivial());
        assert_eq!(g(&[2, 3, 6]).order(), 6);
    }

    #[test]
    fn l_plus_examples() {
        let l = lg(&[2, 3]);
        let d = l.normalize(&[1, 1, -1]).unwrap();
        assert!(l.is_in_l_plus(&d));
        assert!(!l.is_in_l_plus(&l.zero()));
        let d = l.normalize(&[2, 1, -1]).unwrap();
        assert!(l.is_in_l_plus(&d));
    }

    #[test]
    fn degrees_with_z_cover_window() {
        let l = lg(&[2, 3]);
        for z in -6..12 {
            let ds = l.degrees_with_z(z);
            assert_eq!(ds.len(), 1, "L(2,3) ≅ ℤ via z");
            assert_eq!(l.z_degree(&ds[0]), z);
        }
        // L(3,3) has ℤ/3 torsion: three classes per admissible z.
        let l = lg(&[3, 3]);
        assert_eq!(l.degrees_with_z(0).len(), 3);
    }
}
