//! Isomorphism of directed graded categories up to rescaling basis vectors.
//!
//! With every hom space of dimension ≤ 1, a degree-preserving functor that is
//! the identity on objects is a choice of scalar `λ_f ≠ 0` per basis
//! morphism, and it exists iff
//!
//! ```text
//! λ_g λ_f c_D(g, f) = c_C(g, f) λ_{g∘f}
//! ```
//!
//! for every composable pair. Writing each ratio `c_C / c_D` as
//! `± Π pᵏ` splits the multiplicative system into a GF(2) system for the
//! signs and one integer system per prime for the magnitudes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use super::{DirectedGradedCategory, MorphismId};
use crate::exactlin::{solve_integer, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeError {
    HomTooLarge {
        side: &'static str,
        src: usize,
        tgt: usize,
        dim: usize,
    },
    BijectionSize {
        expected: usize,
        got: usize,
    },
    NotOrderPreserving,
}

impl fmt::Display for GaugeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaugeError::HomTooLarge {
                side,
                src,
                tgt,
                dim,
            } => write!(
                f,
                "hom({src}, {tgt}) in the {side} category has dimension {dim} > 1"
            ),
            GaugeError::BijectionSize { expected, got } => {
                write!(f, "object bijection has {got} entries, expected {expected}")
            }
            GaugeError::NotOrderPreserving => {
                write!(f, "object bijection sends a nonzero hom against the order")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeOutcome {
    pub isomorphic: bool,
    /// `λ_f` for every basis morphism of the first category (identities 1).
    pub witness: Option<Vec<BigRational>>,
    /// Why the categories are not isomorphic.
    pub reason: Option<String>,
}

impl GaugeOutcome {
    fn fail(reason: String) -> Self {
        GaugeOutcome {
            isomorphic: false,
            witness: None,
            reason: Some(reason),
        }
    }
}

fn check_dims(c: &DirectedGradedCategory, side: &'static str) -> Result<(), GaugeError> {
    let n = c.object_count();
    for x in 0..n {
        for y in x..n {
            let dim = c.hom(x, y).len();
            if dim > 1 {
                return Err(GaugeError::HomTooLarge {
                    side,
                    src: x,
                    tgt: y,
                    dim,
                });
            }
        }
    }
    Ok(())
}

/// Coefficient of `g ∘ f` on the unique basis vector of its hom space.
fn structure_constant(c: &DirectedGradedCategory, g: MorphismId, f: MorphismId) -> BigRational {
    c.compose(g, f)
        .into_values()
        .next()
        .unwrap_or_else(BigRational::zero)
}

fn factor_into(mut n: BigUint, exps: &mut BTreeMap<BigUint, i64>, sign: i64) {
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        while (&n % &d).is_zero() {
            *exps.entry(d.clone()).or_insert(0) += sign;
            n /= &d;
        }
        d += 1u32;
    }
    if !n.is_one() {
        *exps.entry(n).or_insert(0) += sign;
    }
}

/// `r = ± Π p^{k_p}`; returns (negative?, prime exponents).
fn split(r: &BigRational) -> (bool, BTreeMap<BigUint, i64>) {
    let mut exps = BTreeMap::new();
    factor_into(r.numer().magnitude().clone(), &mut exps, 1);
    factor_into(r.denom().magnitude().clone(), &mut exps, -1);
    exps.retain(|_, v| *v != 0);
    (r.is_negative(), exps)
}

/// Solves `A s = b` over GF(2). Rows are equations.
fn solve_gf2(rows: &[Vec<bool>], rhs: &[bool], vars: usize) -> Option<Vec<bool>> {
    let mut m: Vec<(Vec<bool>, bool)> = rows.iter().cloned().zip(rhs.iter().copied()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..vars {
        let Some(p) = (r..m.len()).find(|&i| m[i].0[c]) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i].0[c] {
                let (pr, pb) = m[r].clone();
                for (a, b) in m[i].0.iter_mut().zip(&pr) {
                    *a ^= *b;
                }
                m[i].1 ^= pb;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|(_, b)| *b) {
        return None;
    }
    let mut s = alloc::vec![false; vars];
    for (row, &c) in pivots.iter().enumerate() {
        s[c] = m[row].1;
    }
    Some(s)
}

/// Decides whether `d` is obtained from `c` by rescaling basis morphisms,
/// with objects matched by `bij` (object `x` of `c` ↦ `bij[x]` of `d`).
/// The bijection may reorder objects whose homs vanish in both directions.
pub fn gauge_isomorphic(
    c: &DirectedGradedCategory,
    d: &DirectedGradedCategory,
    bij: &[usize],
) -> Result<GaugeOutcome, GaugeError> {
    let n = c.object_count();
    if bij.len() != n || d.object_count() != n {
        return Err(GaugeError::BijectionSize {
            expected: n.max(d.object_count()),
            got: bij.len(),
        });
    }
    if bij.iter().collect::<BTreeSet<_>>().len() != n || bij.iter().any(|&y| y >= n) {
        return Err(GaugeError::BijectionSize {
            expected: n,
            got: bij.len(),
        });
    }
    // a nonzero hom must not be sent against the order
    for x in 0..n {
        for y in x + 1..n {
            if bij[x] > bij[y] && !(c.hom(x, y).is_empty() && d.hom(bij[y], bij[x]).is_empty()) {
                return Err(GaugeError::NotOrderPreserving);
            }
        }
    }
    check_dims(c, "first")?;
    check_dims(d, "second")?;

    // Match basis morphisms and degrees.
    let mut to_d: Vec<MorphismId> = alloc::vec![0; c.morphisms().len()];
    for x in 0..n {
        for y in x..n {
            if bij[x] > bij[y] {
                continue;
            }
            match (c.hom(x, y), d.hom(bij[x], bij[y])) {
                ([], []) => {}
                ([f], [g]) => {
                    if c.morphism(*f).degree != d.morphism(*g).degree {
                        return Ok(GaugeOutcome::fail(format!(
                            "hom({}, {}) has degree {} vs {}",
                            c.objects()[x],
                            c.objects()[y],
                            c.morphism(*f).degree,
                            d.morphism(*g).degree
                        )));
                    }
                    to_d[*f] = *g;
                }
                (a, b) => {
                    return Ok(GaugeOutcome::fail(format!(
                        "hom({}, {}) has dimension {} vs {}",
                        c.objects()[x],
                        c.objects()[y],
                        a.len(),
                        b.len()
                    )))
                }
            }
        }
    }

    // Unknowns: non-identity basis morphisms of c.
    let unknowns: Vec<MorphismId> = (0..c.morphisms().len())
        .filter(|&f| !c.is_identity(f))
        .collect();
    let var: BTreeMap<MorphismId, usize> =
        unknowns.iter().enumerate().map(|(i, &f)| (f, i)).collect();

    struct Equation {
        g: usize,
        f: usize,
        h: usize,
        negative: bool,
        exps: BTreeMap<BigUint, i64>,
    }
    let mut equations = Vec::new();
    for (g, f) in c.composable_pairs() {
        let cc = structure_constant(c, g, f);
        let cd = structure_constant(d, to_d[g], to_d[f]);
        match (cc.is_zero(), cd.is_zero()) {
            (true, true) => continue,
            (false, false) => {}
            _ => {
                return Ok(GaugeOutcome::fail(format!(
                    "{} ∘ {} vanishes in exactly one category",
                    c.morphism(g).name,
                    c.morphism(f).name
                )))
            }
        }
        let h = c.hom(c.morphism(f).src, c.morphism(g).tgt)[0];
        let (negative, exps) = split(&(&cc / &cd));
        equations.push(Equation {
            g: var[&g],
            f: var[&f],
            h: var[&h],
            negative,
            exps,
        });
    }

    let vars = unknowns.len();
    // signs
    let rows: Vec<Vec<bool>> = equations
        .iter()
        .map(|e| {
            let mut row = alloc::vec![false; vars];
            for v in [e.g, e.f, e.h] {
                row[v] ^= true;
            }
            row
        })
        .collect();
    let rhs: Vec<bool> = equations.iter().map(|e| e.negative).collect();
    let Some(signs) = solve_gf2(&rows, &rhs, vars) else {
        return Ok(GaugeOutcome::fail(String::from(
            "sign system has no solution (non-cobounding sign pattern)",
        )));
    };

    // magnitudes, one prime at a time
    let primes: BTreeSet<BigUint> = equations
        .iter()
        .flat_map(|e| e.exps.keys().cloned())
        .collect();
    let mut magnitudes = alloc::vec![BigRational::one(); vars];
    if !primes.is_empty() {
        let a = IntMatrix::from_fn(equations.len(), vars, |i, j| {
            let e = &equations[i];
            let mut v = 0i64;
            if j == e.g {
                v += 1;
            }
            if j == e.f {
                v += 1;
            }
            if j == e.h {
                v -= 1;
            }
            BigInt::from(v)
        });
        for prime in &primes {
            let b: Vec<BigInt> = equations
                .iter()
                .map(|e| BigInt::from(e.exps.get(prime).copied().unwrap_or(0)))
                .collect();
            let Some(x) = solve_integer(&a, &b) else {
                return Ok(GaugeOutcome::fail(format!(
                    "magnitude system for prime {prime} has no integer solution"
                )));
            };
            let base = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, prime.clone()));
            for (m, k) in magnitudes.iter_mut().zip(&x) {
                let k = k.to_i32().expect("small exponent");
                if k != 0 {
                    *m *= Pow::pow(&base, k);
                }
            }
        }
    }

    let mut witness = alloc::vec![BigRational::one(); c.morphisms().len()];
    for (i, &f) in unknowns.iter().enumerate() {
        witness[f] = if signs[i] {
            -magnitudes[i].clone()
        } else {
            magnitudes[i].clone()
        };
    }
    // re-verify
    for (g, f) in c.composable_pairs() {
        let cc = structure_constant(c, g, f);
        if cc.is_zero() {
            continue;
        }
        let cd = structure_constant(d, to_d[g], to_d[f]);
        let h = c.hom(c.morphism(f).src, c.morphism(g).tgt)[0];
        debug_assert_eq!(&witness[g] * &witness[f] * cd, cc * &witness[h]);
    }
    Ok(GaugeOutcome {
        isomorphic: true,
        witness: Some(witness),
        reason: None,
    })
}

/// Relative sign of two length-two paths `X → Y₁ → Z`, `X → Y₂ → Z` in the
/// chosen basis. Not a gauge invariant on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareSign {
    pub source: usize,
    pub target: usize,
    pub via: (usize, usize),
    pub sign: i8,
}

/// Basis-level sign audit of every pair of length-two paths with nonzero
/// composites landing in the same one-dimensional hom space.
pub fn square_signs(c: &DirectedGradedCategory) -> Vec<SquareSign> {
    let n = c.object_count();
    let mut out = Vec::new();
    for x in 0..n {
        for z in x + 1..n {
            if c.hom(x, z).len() != 1 {
                continue;
            }
            let mut paths: Vec<(usize, bool)> = Vec::new();
            for y in x + 1..z {
                for &f in c.hom(x, y) {
                    for &g in c.hom(y, z) {
                        let k = structure_constant(c, g, f);
                        if !k.is_zero() {
                            paths.push((y, k.is_negative()));
                        }
                    }
                }
            }
            for i in 0..paths.len() {
                for j in i + 1..paths.len() {
                    out.push(SquareSign {
                        source: x,
                        target: z,
                        via: (paths[i].0, paths[j].0),
                        sign: if paths[i].1 == paths[j].1 { 1 } else { -1 },
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::{octahedron, rescale_composite, tensor_bp, CategoryBuilder};
    use crate::exactlin::qi;
    use crate::grading::ExponentSeq;

    fn identity_bij(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn self_isomorphic() {
        let t = tensor_bp(&ExponentSeq::new(&[3, 3]).unwrap());
        let out = gauge_isomorphic(&t, &t, &identity_bij(4)).unwrap();
        assert!(out.isomorphic);
        assert!(out.witness.unwrap().iter().all(|l| l.is_one()));
    }

    #[test]
    fn single_sign_flip_is_a_coboundary() {
        let t = tensor_bp(&ExponentSeq::new(&[3, 3]).unwrap());
        let (&(g, f), _) = t.comp_table().iter().next().unwrap();
        let flipped = rescale_composite(&t, g, f, &qi(-1));
        let out = gauge_isomorphic(&t, &flipped, &identity_bij(4)).unwrap();
        assert!(out.isomorphic);
        assert!(out.witness.unwrap().iter().any(|l| l == &qi(-1)));
    }

    #[test]
    fn commuting_square_is_gauge_equivalent_to_anticommuting() {
        // An isolated square has contractible nerve, so its relative sign is
        // a coboundary.
        let t = tensor_bp(&ExponentSeq::new(&[3, 3]).unwrap());
        let (&(g, f), _) = t
            .comp_table()
            .iter()
            .find(|(_, v)| v.values().any(|x| x.is_negative()))
            .unwrap();
        let commuting = rescale_composite(&t, g, f, &qi(-1));
        assert!(square_signs(&commuting).iter().all(|s| s.sign == 1));
        assert!(square_signs(&t).iter().all(|s| s.sign == -1));
        assert!(
            gauge_isomorphic(&t, &commuting, &identity_bij(4))
                .unwrap()
                .isomorphic
        );
    }

    #[test]
    fn octahedral_sign_is_invariant() {
        let plain = octahedron(false);
        let flipped = octahedron(true);
        let out = gauge_isomorphic(&plain, &flipped, &identity_bij(6)).unwrap();
        assert!(!out.isomorphic);
        assert!(out.reason.unwrap().contains("sign"));
    }

    #[test]
    fn magnitudes_are_absorbed() {
        let t = tensor_bp(&ExponentSeq::new(&[3, 3]).unwrap());
        let (&(g, f), _) = t.comp_table().iter().next().unwrap();
        let scaled = rescale_composite(&t, g, f, &qi(6));
        let out = gauge_isomorphic(&t, &scaled, &identity_bij(4)).unwrap();
        assert!(out.isomorphic);
        let plain = octahedron(false);
        let (&(g, f), _) = plain.comp_table().iter().next().unwrap();
        // the octahedral class is multiplicative, so magnitudes count too
        let oct = rescale_composite(&plain, g, f, &qi(4));
        let out = gauge_isomorphic(&plain, &oct, &identity_bij(6)).unwrap();
        assert!(!out.isomorphic);
        assert!(out.reason.unwrap().contains("prime 2"));
    }

    #[test]
    fn rejects_large_homs_and_bad_bijections() {
        let mut b = CategoryBuilder::new();
        b.add_object("X");
        b.add_object("Y");
        b.add_morphism(0, 1, 0, "u");
        b.add_morphism(0, 1, 1, "v");
        let c = b.build();
        assert!(matches!(
            gauge_isomorphic(&c, &c, &[0, 1]),
            Err(GaugeError::HomTooLarge { .. })
        ));
        let t = tensor_bp(&ExponentSeq::new(&[3, 3]).unwrap());
        assert_eq!(
            gauge_isomorphic(&t, &t, &[1, 0, 2, 3]),
            Err(GaugeError::NotOrderPreserving)
        );
    }
}
