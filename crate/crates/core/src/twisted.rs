//! One-sided twisted complexes over a directed graded category with zero
//! differential.
//!
//! A morphism between twisted objects is a matrix of base morphisms. A term
//! `(a, b, u)` sends component `a` (shift `s_a`) to component `b` (shift
//! `s_b`) through the base basis morphism `u`, and has degree
//! `|u| + s_a − s_b`. Composition carries the Koszul sign
//! `(−1)^{|v|(s_a − s_b)}` for `v` after `u`, and the hom differential is
//! `d(φ) = δ_Y∘φ − (−1)^{|φ|} φ∘δ_X`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dgcat::{DirectedGradedCategory, LinComb, MorphismId};
use crate::exactlin::{
    cohomology_with_representatives, complex_cohomology, CohomologyData, LinError, RatMatrix,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistedError {
    /// Component refers to an object the base category does not have.
    ForeignObject {
        object: usize,
    },
    NotDegreeZero {
        degree: i64,
    },
    ZeroMorphism,
    NotHomogeneous,
    /// Twisted differential is not strictly lower triangular, not in degree 1,
    /// or not square-zero.
    BadDifferential,
    /// A class or representative has the wrong degree or length.
    Degree {
        expected: i64,
        got: i64,
    },
    Linear(LinError),
}

impl fmt::Display for TwistedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistedError::ForeignObject { object } => {
                write!(f, "object #{object} is not in the base category")
            }
            TwistedError::NotDegreeZero { degree } => {
                write!(f, "cone needs a degree-0 morphism, got degree {degree}")
            }
            TwistedError::ZeroMorphism => write!(f, "cone of the zero morphism"),
            TwistedError::NotHomogeneous => write!(f, "morphism is not homogeneous"),
            TwistedError::BadDifferential => write!(f, "invalid twisted differential"),
            TwistedError::Degree { expected, got } => {
                write!(f, "degree bookkeeping: expected {expected}, got {got}")
            }
            TwistedError::Linear(e) => write!(f, "{e}"),
        }
    }
}

impl From<LinError> for TwistedError {
    fn from(e: LinError) -> Self {
        TwistedError::Linear(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Component {
    pub object: usize,
    pub shift: i64,
}

/// `(from component, to component, base basis morphism)`.
pub type Term = (usize, usize, MorphismId);

/// Matrix of base morphisms between two twisted objects.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwMorphism {
    pub terms: BTreeMap<Term, BigRational>,
}

impl TwMorphism {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, t: Term, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(t).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&t);
        }
    }

    fn scaled(&self, k: &BigRational) -> TwMorphism {
        TwMorphism {
            terms: self
                .terms
                .iter()
                .filter(|_| !k.is_zero())
                .map(|(t, c)| (*t, c * k))
                .collect(),
        }
    }

    fn sub(&self, other: &TwMorphism) -> TwMorphism {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(*t, -c.clone());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedObject {
    pub components: Vec<Component>,
    pub delta: TwMorphism,
}

fn term_degree(
    base: &DirectedGradedCategory,
    from: &[Component],
    to: &[Component],
    t: &Term,
) -> i64 {
    base.morphism(t.2).degree + from[t.0].shift - to[t.1].shift
}

/// Composite `ψ ∘ φ` for `φ: X → Y`, `ψ: Y → Z`.
pub fn compose(
    base: &DirectedGradedCategory,
    x: &TwistedObject,
    y: &TwistedObject,
    psi: &TwMorphism,
    phi: &TwMorphism,
) -> TwMorphism {
    let mut out = TwMorphism::default();
    for (&(b, c, v), cv) in &psi.terms {
        for (&(a, b2, u), cu) in &phi.terms {
            if b != b2 {
                continue;
            }
            let shift = x.components[a].shift - y.components[b].shift;
            let odd = (base.morphism(v).degree * shift).rem_euclid(2) == 1;
            let coeff = if odd { -(cv * cu) } else { cv * cu };
            for (w, cw) in base.compose(v, u) {
                out.add_term((a, c, w), &coeff * cw);
            }
        }
    }
    out
}

impl TwistedObject {
    /// Twisted object with validated differential.
    pub fn new(
        base: &DirectedGradedCategory,
        components: Vec<Component>,
        delta: TwMorphism,
    ) -> Result<Self, TwistedError> {
        for c in &components {
            if c.object >= base.object_count() {
                return Err(TwistedError::ForeignObject { object: c.object });
            }
        }
        let obj = TwistedObject { components, delta };
        for &(a, b, u) in obj.delta.terms.keys() {
            let m = base.morphism(u);
            if a >= b
                || b >= obj.components.len()
                || m.src != obj.components[a].object
                || m.tgt != obj.components[b].object
                || term_degree(base, &obj.components, &obj.components, &(a, b, u)) != 1
            {
                return Err(TwistedError::BadDifferential);
            }
        }
        if !compose(base, &obj, &obj, &obj.delta, &obj.delta).is_zero() {
            return Err(TwistedError::BadDifferential);
        }
        Ok(obj)
    }

    /// A single object in shift 0.
    pub fn single(base: &DirectedGradedCategory, object: usize) -> Result<Self, TwistedError> {
        Self::new(
            base,
            alloc::vec![Component { object, shift: 0 }],
            TwMorphism::default(),
        )
    }

    /// `id = Σ_a id_{X_a}` on the diagonal.
    pub fn identity(&self, base: &DirectedGradedCategory) -> TwMorphism {
        let mut out = TwMorphism::default();
        for (a, c) in self.components.iter().enumerate() {
            out.add_term((a, a, base.identity(c.object)), BigRational::one());
        }
        out
    }
}

/// `Cone(f: X → Y)` for a nonzero degree-0 morphism: components `(X[1], Y)`
/// with differential `f`.
pub fn cone(base: &DirectedGradedCategory, f: &LinComb) -> Result<TwistedObject, TwistedError> {
    let mut terms = f.iter().filter(|(_, c)| !c.is_zero());
    let Some((&first, _)) = terms.next() else {
        return Err(TwistedError::ZeroMorphism);
    };
    let m0 = base.morphism(first);
    for &id in f.keys() {
        let m = base.morphism(id);
        if (m.src, m.tgt, m.degree) != (m0.src, m0.tgt, m0.degree) {
            return Err(TwistedError::NotHomogeneous);
        }
    }
    if m0.degree != 0 {
        return Err(TwistedError::NotDegreeZero { degree: m0.degree });
    }
    let mut delta = TwMorphism::default();
    for (&id, c) in f {
        delta.add_term((0, 1, id), c.clone());
    }
    TwistedObject::new(
        base,
        alloc::vec![
            Component {
                object: m0.src,
                shift: 1
            },
            Component {
                object: m0.tgt,
                shift: 0
            },
        ],
        delta,
    )
}

/// Total complex `hom(X, Y)` with one basis vector per term.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pieces: BTreeMap<i64, Vec<Term>>,
    index: BTreeMap<Term, (i64, usize)>,
    /// `d^n : C^n → C^{n+1}`; absent entries are zero maps.
    differentials: BTreeMap<i64, RatMatrix>,
}

pub fn hom_complex(
    base: &DirectedGradedCategory,
    x: &TwistedObject,
    y: &TwistedObject,
) -> Result<HomComplex, TwistedError> {
    for c in x.components.iter().chain(&y.components) {
        if c.object >= base.object_count() {
            return Err(TwistedError::ForeignObject { object: c.object });
        }
    }
    let mut pieces: BTreeMap<i64, Vec<Term>> = BTreeMap::new();
    for (a, ca) in x.components.iter().enumerate() {
        for (b, cb) in y.components.iter().enumerate() {
            for &u in base.hom(ca.object, cb.object) {
                let t = (a, b, u);
                pieces
                    .entry(term_degree(base, &x.components, &y.components, &t))
                    .or_default()
                    .push(t);
            }
        }
    }
    let mut index = BTreeMap::new();
    for (&n, terms) in &pieces {
        for (i, t) in terms.iter().enumerate() {
            index.insert(*t, (n, i));
        }
    }
    let mut h = HomComplex {
        pieces,
        index,
        differentials: BTreeMap::new(),
    };
    let degrees: Vec<i64> = h.pieces.keys().copied().collect();
    for n in degrees {
        let rows = h.dim(n + 1);
        let cols = h.dim(n);
        let mut d = RatMatrix::zeros(rows, cols);
        for (j, &t) in h.pieces[&n].iter().enumerate() {
            let mut phi = TwMorphism::default();
            phi.add_term(t, BigRational::one());
            let image = differential(base, x, y, &phi, n);
            for (s, c) in &image.terms {
                let (deg, i) = h.index[s];
                debug_assert_eq!(deg, n + 1);
                d[(i, j)] = c.clone();
            }
        }
        if rows > 0 {
            h.differentials.insert(n, d);
        }
    }
    Ok(h)
}

fn differential(
    base: &DirectedGradedCategory,
    x: &TwistedObject,
    y: &TwistedObject,
    phi: &TwMorphism,
    degree: i64,
) -> TwMorphism {
    let left = compose(base, x, y, &y.delta, phi);
    let right = compose(base, x, x, phi, &x.delta);
    let sign = if degree.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    left.sub(&right.scaled(&sign))
}

impl HomComplex {
    pub fn dim(&self, n: i64) -> usize {
        self.pieces.get(&n).map_or(0, Vec::len)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.pieces.keys().copied()
    }

    pub fn basis(&self, n: i64) -> &[Term] {
        self.pieces.get(&n).map_or(&[], Vec::as_slice)
    }

    /// `d^n : C^n → C^{n+1}` as a `dim(n+1) × dim(n)` matrix.
    pub fn differential(&self, n: i64) -> RatMatrix {
        self.differentials
            .get(&n)
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.dim(n + 1), self.dim(n)))
    }

    pub fn d_squared_is_zero(&self) -> bool {
        self.degrees().all(|n| {
            let d0 = self.differential(n);
            let d1 = self.differential(n + 1);
            d1.cols() == 0 || d0.cols() == 0 || d1.rows() == 0 || (&d1 * &d0).is_zero()
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.pieces
            .iter()
            .map(|(n, t)| {
                if n.rem_euclid(2) == 0 {
                    t.len() as i64
                } else {
                    -(t.len() as i64)
                }
            })
            .sum()
    }

    /// Coordinates of a homogeneous morphism of degree `n`.
    pub fn vector_of(&self, phi: &TwMorphism, n: i64) -> Result<Vec<BigRational>, TwistedError> {
        let mut v = alloc::vec![BigRational::zero(); self.dim(n)];
        for (t, c) in &phi.terms {
            match self.index.get(t) {
                Some(&(deg, i)) if deg == n => v[i] = c.clone(),
                Some(&(deg, _)) => {
                    return Err(TwistedError::Degree {
                        expected: n,
                        got: deg,
                    })
                }
                None => return Err(TwistedError::NotHomogeneous),
            }
        }
        Ok(v)
    }

    pub fn morphism_of(&self, n: i64, v: &[BigRational]) -> TwMorphism {
        let mut out = TwMorphism::default();
        for (t, c) in self.basis(n).iter().zip(v) {
            out.add_term(*t, c.clone());
        }
        out
    }
}

/// Cohomology of a hom complex in every degree where it can be nonzero.
#[derive(Clone, Debug)]
pub struct GradedCohomology {
    pub by_degree: BTreeMap<i64, CohomologyData>,
}

impl GradedCohomology {
    /// Nonzero graded dimensions.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.by_degree
            .iter()
            .filter(|(_, h)| h.dim > 0)
            .map(|(n, h)| (*n, h.dim))
            .collect()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.by_degree.get(&n).map_or(0, |h| h.dim)
    }

    pub fn total_dim(&self) -> usize {
        self.by_degree.values().map(|h| h.dim).sum()
    }
}

pub fn cohomology(h: &HomComplex) -> Result<GradedCohomology, TwistedError> {
    let mut by_degree = BTreeMap::new();
    for n in h.degrees() {
        let data = complex_cohomology(&h.differential(n - 1), &h.differential(n))?;
        by_degree.insert(n, data);
    }
    Ok(GradedCohomology { by_degree })
}

/// Replaces the representatives in degree `n` by the given cocycles.
pub fn set_representatives(
    h: &HomComplex,
    coh: &mut GradedCohomology,
    n: i64,
    reps: Vec<TwMorphism>,
) -> Result<(), TwistedError> {
    let vecs = reps
        .iter()
        .map(|r| h.vector_of(r, n))
        .collect::<Result<Vec<_>, _>>()?;
    let data = cohomology_with_representatives(&h.differential(n - 1), &h.differential(n), vecs)?;
    coh.by_degree.insert(n, data);
    Ok(())
}

/// A cohomology class: degree and coordinates in the representative basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class {
    pub degree: i64,
    pub coords: Vec<BigRational>,
}

impl Class {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// A hom complex together with its cohomology and chosen representatives.
#[derive(Clone, Debug)]
pub struct HomData {
    pub complex: HomComplex,
    pub cohomology: GradedCohomology,
}

impl HomData {
    pub fn new(
        base: &DirectedGradedCategory,
        x: &TwistedObject,
        y: &TwistedObject,
    ) -> Result<Self, TwistedError> {
        let complex = hom_complex(base, x, y)?;
        let cohomology = cohomology(&complex)?;
        Ok(HomData {
            complex,
            cohomology,
        })
    }

    fn representative(&self, class: &Class) -> Result<TwMorphism, TwistedError> {
        let dim = self.cohomology.dim(class.degree);
        if class.coords.len() != dim {
            return Err(TwistedError::Degree {
                expected: dim as i64,
                got: class.coords.len() as i64,
            });
        }
        let mut v = alloc::vec![BigRational::zero(); self.complex.dim(class.degree)];
        if dim > 0 {
            let data = &self.cohomology.by_degree[&class.degree];
            for (r, c) in data.representatives.iter().zip(&class.coords) {
                for (vi, ri) in v.iter_mut().zip(r) {
                    *vi += c * ri;
                }
            }
        }
        Ok(self.complex.morphism_of(class.degree, &v))
    }

    /// Class of a cocycle of degree `n`.
    pub fn project(&self, phi: &TwMorphism, n: i64) -> Result<Class, TwistedError> {
        let v = self.complex.vector_of(phi, n)?;
        let coords = match self.cohomology.by_degree.get(&n) {
            Some(data) => data.project(&v)?,
            None => {
                if !phi.is_zero() {
                    return Err(TwistedError::Degree {
                        expected: n,
                        got: n,
                    });
                }
                Vec::new()
            }
        };
        Ok(Class { degree: n, coords })
    }

    /// `k`-th basis class in degree `n`.
    pub fn basis_class(&self, n: i64, k: usize) -> Class {
        let dim = self.cohomology.dim(n);
        let mut coords = alloc::vec![BigRational::zero(); dim];
        coords[k] = BigRational::one();
        Class { degree: n, coords }
    }
}

/// `α ∘ β` for `β ∈ H(hom(X, Y))`, `α ∈ H(hom(Y, Z))`: compose
/// representatives, then project onto `H(hom(X, Z))`.
#[allow(clippy::too_many_arguments)]
pub fn compose_classes(
    base: &DirectedGradedCategory,
    x: &TwistedObject,
    y: &TwistedObject,
    hom_yz: &HomData,
    hom_xy: &HomData,
    hom_xz: &HomData,
    alpha: &Class,
    beta: &Class,
) -> Result<Class, TwistedError> {
    let ra = hom_yz.representative(alpha)?;
    let rb = hom_xy.representative(beta)?;
    let product = compose(base, x, y, &ra, &rb);
    hom_xz.project(&product, alpha.degree + beta.degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::{a_category, single};
    use crate::exactlin::qi;

    #[test]
    fn cone_of_identity_is_contractible() {
        let base = a_category(2).unwrap();
        let c = cone(&base, &single(base.identity(0), qi(1))).unwrap();
        for z in 0..2 {
            let zt = TwistedObject::single(&base, z).unwrap();
            let h = HomData::new(&base, &c, &zt).unwrap();
            assert!(h.cohomology.dims().is_empty());
            let h = HomData::new(&base, &zt, &c).unwrap();
            assert!(h.cohomology.dims().is_empty());
        }
        let h = HomData::new(&base, &c, &c).unwrap();
        assert_eq!(h.complex.dim(-1), 1);
        assert_eq!(h.complex.dim(0), 2);
        assert_eq!(h.complex.dim(1), 1);
        assert!(h.complex.d_squared_is_zero());
        // the identity is a coboundary: d(t₀₁) = id
        assert!(h.cohomology.dims().is_empty());
    }

    #[test]
    fn cone_preconditions() {
        let base = a_category(2).unwrap();
        assert_eq!(
            cone(&base, &LinComb::new()),
            Err(TwistedError::ZeroMorphism)
        );
        let e = base.hom(0, 1)[0];
        assert_eq!(
            cone(&base, &single(e, qi(1))),
            Err(TwistedError::NotDegreeZero { degree: 1 })
        );
    }

    #[test]
    fn identity_class_is_unit() {
        let base = a_category(2).unwrap();
        let x = TwistedObject::single(&base, 0).unwrap();
        let y = TwistedObject::single(&base, 1).unwrap();
        let hxx = HomData::new(&base, &x, &x).unwrap();
        let hxy = HomData::new(&base, &x, &y).unwrap();
        let hyy = HomData::new(&base, &y, &y).unwrap();
        let id_y = hyy.project(&y.identity(&base), 0).unwrap();
        let gen = hxy.basis_class(1, 0);
        let out = compose_classes(&base, &x, &y, &hyy, &hxy, &hxy, &id_y, &gen).unwrap();
        assert_eq!(out, gen);
        let id_x = hxx.project(&x.identity(&base), 0).unwrap();
        let out = compose_classes(&base, &x, &x, &hxy, &hxx, &hxy, &gen, &id_x).unwrap();
        assert_eq!(out, gen);
    }

    #[test]
    fn rejects_bad_differential() {
        let base = a_category(2).unwrap();
        let e = base.hom(0, 1)[0];
        let mut delta = TwMorphism::default();
        delta.terms.insert((0, 1, e), qi(1));
        // unshifted: e has degree 1 already, so it would be a valid differential
        let ok = TwistedObject::new(
            &base,
            alloc::vec![
                Component {
                    object: 0,
                    shift: 0
                },
                Component {
                    object: 1,
                    shift: 0
                }
            ],
            delta.clone(),
        );
        assert!(ok.is_ok());
        let bad = TwistedObject::new(
            &base,
            alloc::vec![
                Component {
                    object: 0,
                    shift: 1
                },
                Component {
                    object: 1,
                    shift: 0
                }
            ],
            delta,
        );
        assert_eq!(bad, Err(TwistedError::BadDifferential));
    }
}
