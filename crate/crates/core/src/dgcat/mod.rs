//! Finite directed graded categories with a chosen basis of every hom space.
//!
//! A category stores its objects in their directed order, a list of basis
//! morphisms (each with a cohomological degree) and the structure constants
//! of composition. Identities are strict units and are never stored in the
//! composition table.

mod formality;
mod gauge;
mod validate;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactlin::IntMatrix;
use crate::grading::{ExponentSeq, GradingError};

pub use formality::formality_check;
pub use gauge::{gauge_isomorphic, square_signs, GaugeError, GaugeOutcome, SquareSign};
pub use validate::{validate, ValidationReport, Violation};

pub type MorphismId = usize;

/// Linear combination of basis morphisms.
pub type LinComb = BTreeMap<MorphismId, BigRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMorphism {
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryError {
    NoObjects,
    Exponents(GradingError),
}

impl fmt::Display for CategoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryError::NoObjects => write!(f, "a category needs at least one object"),
            CategoryError::Exponents(e) => write!(f, "{e}"),
        }
    }
}

impl From<GradingError> for CategoryError {
    fn from(e: GradingError) -> Self {
        CategoryError::Exponents(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGradedCategory {
    objects: Vec<String>,
    morphisms: Vec<BasisMorphism>,
    hom: BTreeMap<(usize, usize), Vec<MorphismId>>,
    identities: Vec<MorphismId>,
    comp: BTreeMap<(MorphismId, MorphismId), LinComb>,
}

/// Incremental constructor. Nothing is checked here; run [`validate`] on the
/// result.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<BasisMorphism>,
    identities: Vec<MorphismId>,
    comp: BTreeMap<(MorphismId, MorphismId), LinComb>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an object after all existing ones, together with its identity.
    pub fn add_object(&mut self, label: impl Into<String>) -> usize {
        let label = label.into();
        let idx = self.objects.len();
        let id = self.morphisms.len();
        self.morphisms.push(BasisMorphism {
            src: idx,
            tgt: idx,
            degree: 0,
            name: format!("id_{label}"),
        });
        self.objects.push(label);
        self.identities.push(id);
        idx
    }

    pub fn add_morphism(
        &mut self,
        src: usize,
        tgt: usize,
        degree: i64,
        name: impl Into<String>,
    ) -> MorphismId {
        self.morphisms.push(BasisMorphism {
            src,
            tgt,
            degree,
            name: name.into(),
        });
        self.morphisms.len() - 1
    }

    /// Sets `g ∘ f`. Zero combinations are dropped.
    pub fn set_comp(&mut self, g: MorphismId, f: MorphismId, value: LinComb) {
        let value: LinComb = value.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if value.is_empty() {
            self.comp.remove(&(g, f));
        } else {
            self.comp.insert((g, f), value);
        }
    }

    pub fn build(self) -> DirectedGradedCategory {
        let mut hom: BTreeMap<(usize, usize), Vec<MorphismId>> = BTreeMap::new();
        for (id, m) in self.morphisms.iter().enumerate() {
            hom.entry((m.src, m.tgt)).or_default().push(id);
        }
        DirectedGradedCategory {
            objects: self.objects,
            morphisms: self.morphisms,
            hom,
            identities: self.identities,
            comp: self.comp,
        }
    }
}

/// One-term linear combination.
pub fn single(id: MorphismId, coeff: BigRational) -> LinComb {
    let mut m = LinComb::new();
    if !coeff.is_zero() {
        m.insert(id, coeff);
    }
    m
}

fn add_into(acc: &mut LinComb, id: MorphismId, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(id).or_insert_with(BigRational::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&id);
    }
}

impl DirectedGradedCategory {
    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphisms(&self) -> &[BasisMorphism] {
        &self.morphisms
    }

    pub fn morphism(&self, id: MorphismId) -> &BasisMorphism {
        &self.morphisms[id]
    }

    pub fn identity(&self, object: usize) -> MorphismId {
        self.identities[object]
    }

    pub fn is_identity(&self, id: MorphismId) -> bool {
        let m = &self.morphisms[id];
        m.src == m.tgt && self.identities.get(m.src) == Some(&id)
    }

    /// Basis of `hom(x, y)`.
    pub fn hom(&self, x: usize, y: usize) -> &[MorphismId] {
        self.hom.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Graded dimension of `hom(x, y)`: degree ↦ dimension.
    pub fn hom_dims(&self, x: usize, y: usize) -> BTreeMap<i64, usize> {
        let mut dims = BTreeMap::new();
        for &id in self.hom(x, y) {
            *dims.entry(self.morphisms[id].degree).or_insert(0) += 1;
        }
        dims
    }

    /// Stored structure constants, identities excluded.
    pub fn comp_table(&self) -> &BTreeMap<(MorphismId, MorphismId), LinComb> {
        &self.comp
    }

    /// `g ∘ f` for basis morphisms. Non-composable pairs give zero.
    pub fn compose(&self, g: MorphismId, f: MorphismId) -> LinComb {
        if self.morphisms[f].tgt != self.morphisms[g].src {
            return LinComb::new();
        }
        if self.is_identity(g) {
            return single(f, BigRational::one());
        }
        if self.is_identity(f) {
            return single(g, BigRational::one());
        }
        self.comp.get(&(g, f)).cloned().unwrap_or_default()
    }

    /// Bilinear extension of [`compose`](Self::compose).
    pub fn compose_lin(&self, g: &LinComb, f: &LinComb) -> LinComb {
        let mut out = LinComb::new();
        for (&gi, gc) in g {
            for (&fi, fc) in f {
                for (h, hc) in self.compose(gi, fi) {
                    add_into(&mut out, h, gc * fc * hc);
                }
            }
        }
        out
    }

    /// Same category with new object labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.objects.len());
        for (i, id) in self.identities.iter().enumerate() {
            self.morphisms[*id].name = format!("id_{}", labels[i]);
        }
        self.objects = labels;
        self
    }

    /// Composable pairs `(g, f)` of non-identity basis morphisms.
    pub fn composable_pairs(&self) -> Vec<(MorphismId, MorphismId)> {
        let mut out = Vec::new();
        for (f, mf) in self.morphisms.iter().enumerate() {
            if self.is_identity(f) {
                continue;
            }
            for z in mf.tgt..self.object_count() {
                for &g in self.hom(mf.tgt, z) {
                    if !self.is_identity(g) {
                        out.push((g, f));
                    }
                }
            }
        }
        out
    }

    /// Largest total dimension of any hom space.
    pub fn max_hom_dim(&self) -> usize {
        self.hom.values().map(Vec::len).max().unwrap_or(0)
    }
}

/// `𝔄`-type category with `m` objects `C₁ < … < C_m`: one degree-1 generator
/// `C_i → C_{i+1}` and all other non-identity homs zero.
pub fn a_category(m: usize) -> Result<DirectedGradedCategory, CategoryError> {
    if m == 0 {
        return Err(CategoryError::NoObjects);
    }
    let mut b = CategoryBuilder::new();
    for i in 1..=m {
        b.add_object(format!("C{i}"));
    }
    for i in 0..m - 1 {
        b.add_morphism(i, i + 1, 1, format!("e{}{}", i + 1, i + 2));
    }
    Ok(b.build())
}

fn join_labels(a: &str, b: &str) -> String {
    let inner = |s: &str| -> Option<String> {
        s.strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .map(String::from)
    };
    match (inner(a), inner(b)) {
        (Some(x), Some(y)) => format!("({x},{y})"),
        _ => format!("{a}⊗{b}"),
    }
}

/// Tensor product with lexicographically ordered object pairs and the Koszul
/// sign `(f₁⊗g₁)∘(f₂⊗g₂) = (−1)^{|g₁||f₂|} (f₁f₂)⊗(g₁g₂)`.
pub fn tensor(a: &DirectedGradedCategory, b: &DirectedGradedCategory) -> DirectedGradedCategory {
    let nb = b.object_count();
    let mut builder = CategoryBuilder::new();
    for la in a.objects() {
        for lb in b.objects() {
            builder.add_object(join_labels(la, lb));
        }
    }
    // basis of the product: pairs (f, g)
    let mut pair_id: BTreeMap<(MorphismId, MorphismId), MorphismId> = BTreeMap::new();
    for x in 0..a.object_count() {
        for y in 0..nb {
            pair_id.insert(
                (a.identity(x), b.identity(y)),
                builder.identities[x * nb + y],
            );
        }
    }
    for (fi, f) in a.morphisms().iter().enumerate() {
        for (gi, g) in b.morphisms().iter().enumerate() {
            if a.is_identity(fi) && b.is_identity(gi) {
                continue;
            }
            let id = builder.add_morphism(
                f.src * nb + g.src,
                f.tgt * nb + g.tgt,
                f.degree + g.degree,
                format!("{}⊗{}", f.name, g.name),
            );
            pair_id.insert((fi, gi), id);
        }
    }
    let mut lookup: BTreeMap<MorphismId, (MorphismId, MorphismId)> = BTreeMap::new();
    for (k, v) in &pair_id {
        lookup.insert(*v, *k);
    }
    let proto = builder.clone().build();
    for (g_t, f_t) in proto.composable_pairs() {
        let (f1, g1) = lookup[&g_t];
        let (f2, g2) = lookup[&f_t];
        let sign = if (b.morphism(g1).degree * a.morphism(f2).degree) % 2 != 0 {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        let left = a.compose(f1, f2);
        let right = b.compose(g1, g2);
        let mut value = LinComb::new();
        for (fa, ca) in &left {
            for (gb, cb) in &right {
                add_into(&mut value, pair_id[&(*fa, *gb)], &sign * ca * cb);
            }
        }
        builder.set_comp(g_t, f_t, value);
    }
    builder.build()
}

/// Index set `I_p`: tuples `(i₁, …, iₙ)` with `1 ≤ i_k ≤ p_k − 1`, in
/// lexicographic order.
pub fn index_tuples(p: &ExponentSeq) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = alloc::vec![Vec::new()];
    for &pk in p.as_slice() {
        let mut next = Vec::with_capacity(out.len() * (pk as usize - 1));
        for t in &out {
            for i in 1..pk {
                let mut t2 = t.clone();
                t2.push(i);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

pub fn tuple_label(t: &[u32]) -> String {
    let mut s = String::from("(");
    for (i, x) in t.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&format!("{x}"));
    }
    s.push(')');
    s
}

/// `𝔄_{p₁−1} ⊗ … ⊗ 𝔄_{pₙ−1}` with objects labelled by `I_p`.
pub fn tensor_bp(p: &ExponentSeq) -> DirectedGradedCategory {
    let mut cat = a_category(p.get(0) as usize - 1).expect("p ≥ 2");
    for &pk in &p.as_slice()[1..] {
        cat = tensor(&cat, &a_category(pk as usize - 1).expect("p ≥ 2"));
    }
    let labels = index_tuples(p).iter().map(|t| tuple_label(t)).collect();
    cat.with_labels(labels)
}

/// `E(X, Y) = Σ_d (−1)^d dim hom^d(X, Y)`.
pub fn euler_matrix(c: &DirectedGradedCategory) -> IntMatrix {
    let n = c.object_count();
    IntMatrix::from_fn(n, n, |x, y| {
        c.hom(x, y)
            .iter()
            .map(|&id| {
                if c.morphism(id).degree.rem_euclid(2) == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                }
            })
            .fold(BigInt::zero(), |acc, v| acc + v)
    })
}

/// Copy of `c` with the stored composite `g ∘ f` multiplied by `k`.
pub fn rescale_composite(
    c: &DirectedGradedCategory,
    g: MorphismId,
    f: MorphismId,
    k: &BigRational,
) -> DirectedGradedCategory {
    let mut b = CategoryBuilder::new();
    for l in c.objects() {
        b.add_object(l.clone());
    }
    let mut remap = BTreeMap::new();
    for (id, m) in c.morphisms().iter().enumerate() {
        if c.is_identity(id) {
            remap.insert(id, b.identities[m.src]);
        } else {
            remap.insert(id, b.add_morphism(m.src, m.tgt, m.degree, m.name.clone()));
        }
    }
    for (&(gg, ff), v) in c.comp_table() {
        let v: LinComb = v
            .iter()
            .map(|(t, x)| (remap[t], if (gg, ff) == (g, f) { x * k } else { x.clone() }))
            .collect();
        b.set_comp(remap[&gg], remap[&ff], v);
    }
    b.build()
}

/// Octahedral fixture: `a0, a1 < b0, b1 < c0, c1` with every cross-level hom
/// one-dimensional in degree 0 and all eight triangles composing to `+1`,
/// except `b0c0 ∘ a0b0 = −1` when `flip` is set. The product of the eight
/// triangle constants is a gauge invariant.
pub fn octahedron(flip: bool) -> DirectedGradedCategory {
    let mut b = CategoryBuilder::new();
    for l in ["a0", "a1", "b0", "b1", "c0", "c1"] {
        b.add_object(l);
    }
    let mut ab = [[0; 2]; 2];
    let mut bc = [[0; 2]; 2];
    let mut ac = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            ab[i][j] = b.add_morphism(i, 2 + j, 0, format!("a{i}b{j}"));
            bc[i][j] = b.add_morphism(2 + i, 4 + j, 0, format!("b{i}c{j}"));
            ac[i][j] = b.add_morphism(i, 4 + j, 0, format!("a{i}c{j}"));
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let coeff = if flip && (i, j, k) == (0, 0, 0) {
                    -BigRational::one()
                } else {
                    BigRational::one()
                };
                b.set_comp(bc[j][k], ab[i][j], single(ac[i][k], coeff));
            }
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use alloc::vec;

    use super::*;
    use crate::exactlin::qi;

    fn p(v: &[i64]) -> ExponentSeq {
        ExponentSeq::new(v).unwrap()
    }

    #[test]
    fn a_category_shapes() {
        assert_eq!(a_category(0), Err(CategoryError::NoObjects));
        let a1 = a_category(1).unwrap();
        assert_eq!(a1.object_count(), 1);
        assert_eq!(a1.morphisms().len(), 1);
        let a2 = a_category(2).unwrap();
        assert_eq!(a2.hom_dims(0, 1), BTreeMap::from([(1, 1)]));
        assert!(a2.comp_table().is_empty());
        let a3 = a_category(3).unwrap();
        let gens: Vec<_> = a3.morphisms().iter().filter(|m| m.degree == 1).collect();
        assert_eq!(gens.len(), 2);
        assert!(a3.hom(0, 2).is_empty());
        assert!(a3.compose(a3.hom(1, 2)[0], a3.hom(0, 1)[0]).is_empty());
    }

    #[test]
    fn tensor_with_unit_is_identity() {
        let t = tensor(&a_category(1).unwrap(), &a_category(2).unwrap());
        assert_eq!(t.object_count(), 2);
        assert_eq!(t.hom_dims(0, 1), BTreeMap::from([(1, 1)]));
        assert_eq!(euler_matrix(&t), euler_matrix(&a_category(2).unwrap()));
    }

    #[test]
    fn koszul_square_anticommutes() {
        let t = tensor(&a_category(2).unwrap(), &a_category(2).unwrap());
        assert_eq!(t.hom_dims(0, 3), BTreeMap::from([(2, 1)]));
        // objects (1,1)=0 (1,2)=1 (2,1)=2 (2,2)=3
        let e_id = t.hom(0, 2)[0]; // e⊗id : (1,1) → (2,1)
        let id_e = t.hom(2, 3)[0]; // id⊗e : (2,1) → (2,2)
        let id_e0 = t.hom(0, 1)[0]; // id⊗e : (1,1) → (1,2)
        let e_id1 = t.hom(1, 3)[0]; // e⊗id : (1,2) → (2,2)
        let top = t.hom(0, 3)[0];
        assert_eq!(t.compose(id_e, e_id), single(top, qi(-1)));
        assert_eq!(t.compose(e_id1, id_e0), single(top, qi(1)));
    }

    #[test]
    fn tensor_bp_small_cases() {
        let t = tensor_bp(&p(&[3]));
        assert_eq!(euler_matrix(&t), euler_matrix(&a_category(2).unwrap()));
        let t = tensor_bp(&p(&[2, 3]));
        assert_eq!(t.objects(), &["(1,1)", "(1,2)"]);
        assert_eq!(t.hom_dims(0, 1), BTreeMap::from([(1, 1)]));
        let t = tensor_bp(&p(&[3, 3]));
        assert_eq!(t.object_count(), 4);
        assert_eq!(t.hom_dims(0, 3), BTreeMap::from([(2, 1)]));
    }

    #[test]
    fn euler_examples() {
        let e2 = IntMatrix::from_i64(2, 2, &[1, -1, 0, 1]);
        assert_eq!(euler_matrix(&a_category(2).unwrap()), e2);
        assert_eq!(
            euler_matrix(&a_category(3).unwrap()),
            IntMatrix::from_i64(3, 3, &[1, -1, 0, 0, 1, -1, 0, 0, 1])
        );
        assert_eq!(euler_matrix(&tensor_bp(&p(&[3, 3]))), e2.kronecker(&e2));
    }

    #[test]
    fn index_tuples_lex() {
        assert_eq!(index_tuples(&p(&[2, 3])), vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(index_tuples(&p(&[3, 3])).len(), 4);
    }
}
