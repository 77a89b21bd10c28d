//! Stabilization of a directed category by `u^k`: extend `A` to `A_k`, take
//! the cones `S_{i,j}` of the maps `e_{i,j}`, and read off the cohomology
//! category of the cones. Iterating from `𝔄_{p₁−1}` gives the model of the
//! Fukaya category of `x₁^{p₁} + … + xₙ^{pₙ}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dgcat::{
    a_category, formality_check, gauge_isomorphic, tensor, tensor_bp, tuple_label, validate,
    CategoryBuilder, DirectedGradedCategory, GaugeOutcome, LinComb, MorphismId,
};
use crate::grading::ExponentSeq;
use crate::twisted::{
    compose_classes, cone, set_representatives, HomData, TwistedError, TwistedObject,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuspensionError {
    KTooSmall {
        k: usize,
    },
    /// Input fails validation; carries the number of violations.
    InvalidInput {
        violations: usize,
    },
    /// Input has a possibly nonzero higher product.
    NotFormal,
    /// `End(S)` is not spanned by the identity.
    EndNotScalar {
        object: String,
    },
    Twisted(TwistedError),
    /// A verified pipeline step disagrees with its tensor model.
    Verification {
        k: usize,
        reason: String,
    },
}

impl fmt::Display for SuspensionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuspensionError::KTooSmall { k } => write!(f, "k must be ≥ 2, got {k}"),
            SuspensionError::InvalidInput { violations } => {
                write!(f, "input category has {violations} validation violation(s)")
            }
            SuspensionError::NotFormal => write!(f, "input category is not formal by degrees"),
            SuspensionError::EndNotScalar { object } => {
                write!(f, "End({object}) is not spanned by the identity")
            }
            SuspensionError::Twisted(e) => write!(f, "{e}"),
            SuspensionError::Verification { k, reason } => {
                write!(f, "suspension step k = {k} failed: {reason}")
            }
        }
    }
}

impl From<TwistedError> for SuspensionError {
    fn from(e: TwistedError) -> Self {
        SuspensionError::Twisted(e)
    }
}

/// `A_k` together with the data needed to form the cones.
#[derive(Clone, Debug)]
pub struct Extension {
    pub category: DirectedGradedCategory,
    pub k: usize,
    base_objects: usize,
    /// `e_{i,j}` for `j = 1 … k−1`, indexed `[i][j−1]`.
    e: Vec<Vec<MorphismId>>,
}

impl Extension {
    /// Object index of `Δ_{i,j}` (`i` zero-based, `j` one-based).
    pub fn delta(&self, i: usize, j: usize) -> usize {
        (self.k - j) * self.base_objects + i
    }

    pub fn e(&self, i: usize, j: usize) -> MorphismId {
        self.e[i][j - 1]
    }
}

/// Objects `Δ_{i,j}` ordered by `j` descending, then `i` ascending. A hom
/// between distinct objects in increasing order is a copy of `hom_A`; all
/// other non-identity homs are zero.
pub fn directed_extension(
    a: &DirectedGradedCategory,
    k: usize,
) -> Result<Extension, SuspensionError> {
    if k < 2 {
        return Err(SuspensionError::KTooSmall { k });
    }
    let n = a.object_count();
    let mut b = CategoryBuilder::new();
    for j in (1..=k).rev() {
        for label in a.objects() {
            b.add_object(format!("Δ[{label};{j}]"));
        }
    }
    let index = |i: usize, j: usize| (k - j) * n + i;
    // copy[(x, y, u)] = copy of u ∈ hom_A(C_i, C_i') from Δ x to Δ y
    let mut copy: BTreeMap<(usize, usize, MorphismId), MorphismId> = BTreeMap::new();
    for x in 0..n * k {
        for y in x + 1..n * k {
            let (i, j) = (x % n, k - x / n);
            let (i2, j2) = (y % n, k - y / n);
            for &u in a.hom(i, i2) {
                let m = a.morphism(u);
                let id = b.add_morphism(x, y, m.degree, format!("{}[{j}→{j2}]", m.name));
                copy.insert((x, y, u), id);
            }
        }
    }
    let mut comp: Vec<(MorphismId, MorphismId, LinComb)> = Vec::new();
    for (&(x, y, u), &fu) in &copy {
        for (&(y2, z, v), &gv) in copy.range((y, 0, 0)..) {
            if y2 != y {
                break;
            }
            let value: LinComb = a
                .compose(v, u)
                .into_iter()
                .map(|(w, c)| (copy[&(x, z, w)], c))
                .collect();
            comp.push((gv, fu, value));
        }
    }
    for (g, f, v) in comp {
        b.set_comp(g, f, v);
    }
    let e = (0..n)
        .map(|i| {
            (1..k)
                .map(|j| copy[&(index(i, j + 1), index(i, j), a.identity(i))])
                .collect()
        })
        .collect();
    Ok(Extension {
        category: b.build(),
        k,
        base_objects: n,
        e,
    })
}

fn output_label(label: &str, j: usize) -> String {
    match label.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        Some(inner) => format!("({inner},{j})"),
        None => format!("({label},{j})"),
    }
}

/// Cohomology category of the cones `S_{i,j} = Cone(e_{i,j})`, `j = 1 … k−1`,
/// ordered by `i`, then `j`.
pub fn suspend(
    a: &DirectedGradedCategory,
    k: usize,
) -> Result<DirectedGradedCategory, SuspensionError> {
    if k < 2 {
        return Err(SuspensionError::KTooSmall { k });
    }
    let report = validate(a);
    if !report.is_clean() {
        return Err(SuspensionError::InvalidInput {
            violations: report.violations.len(),
        });
    }
    if !formality_check(a) {
        return Err(SuspensionError::NotFormal);
    }
    let ext = directed_extension(a, k)?;
    let base = &ext.category;
    let n = a.object_count();

    let mut cones: Vec<TwistedObject> = Vec::with_capacity(n * (k - 1));
    let mut builder = CategoryBuilder::new();
    for i in 0..n {
        for j in 1..k {
            cones.push(cone(
                base,
                &crate::dgcat::single(ext.e(i, j), BigRational::one()),
            )?);
            builder.add_object(output_label(&a.objects()[i], j));
        }
    }
    let m = cones.len();

    // hom data and output basis per ordered pair
    let mut homs: BTreeMap<(usize, usize), HomData> = BTreeMap::new();
    // output morphism ↦ (pair, degree, index within the degree)
    let mut class_of: BTreeMap<MorphismId, (usize, usize, i64, usize)> = BTreeMap::new();
    let mut morphism_of: BTreeMap<(usize, usize, i64, usize), MorphismId> = BTreeMap::new();
    let labels: Vec<String> = (0..m)
        .map(|x| output_label(&a.objects()[x / (k - 1)], x % (k - 1) + 1))
        .collect();
    for x in 0..m {
        for y in x..m {
            let mut data = HomData::new(base, &cones[x], &cones[y])?;
            if x == y {
                let dims = data.cohomology.dims();
                if dims.len() != 1 || dims.get(&0) != Some(&1) {
                    return Err(SuspensionError::EndNotScalar {
                        object: labels[x].clone(),
                    });
                }
                let id = cones[x].identity(base);
                set_representatives(&data.complex, &mut data.cohomology, 0, alloc::vec![id])?;
            } else {
                for (deg, dim) in data.cohomology.dims() {
                    for idx in 0..dim {
                        let name = if dim == 1 {
                            format!("{}→{}", labels[x], labels[y])
                        } else {
                            format!("{}→{}#{idx}", labels[x], labels[y])
                        };
                        let id = builder.add_morphism(x, y, deg, name);
                        class_of.insert(id, (x, y, deg, idx));
                        morphism_of.insert((x, y, deg, idx), id);
                    }
                }
            }
            homs.insert((x, y), data);
        }
    }

    let proto = builder.clone().build();
    for (g, f) in proto.composable_pairs() {
        let (x, y, df, fi) = class_of[&f];
        let (_, z, dg, gi) = class_of[&g];
        let hom_xy = &homs[&(x, y)];
        let hom_yz = &homs[&(y, z)];
        let hom_xz = &homs[&(x, z)];
        let alpha = hom_yz.basis_class(dg, gi);
        let beta = hom_xy.basis_class(df, fi);
        let out = compose_classes(
            base, &cones[x], &cones[y], hom_yz, hom_xy, hom_xz, &alpha, &beta,
        )?;
        let value: LinComb = out
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (morphism_of[&(x, z, out.degree, idx)], c.clone()))
            .collect();
        builder.set_comp(g, f, value);
    }
    Ok(builder.build())
}

/// Graded dimension of every hom space `hom(x, y)`, `x ≤ y`.
pub type DimTable = BTreeMap<(usize, usize), BTreeMap<i64, usize>>;

pub fn dim_table(c: &DirectedGradedCategory) -> DimTable {
    let n = c.object_count();
    let mut t = BTreeMap::new();
    for x in 0..n {
        for y in x..n {
            let d = c.hom_dims(x, y);
            if !d.is_empty() {
                t.insert((x, y), d);
            }
        }
    }
    t
}

#[derive(Clone, Debug)]
pub struct SuspensionReport {
    pub k: usize,
    pub object_count: usize,
    pub expected_object_count: usize,
    /// Hom pairs whose graded dimensions differ from the reference, as labels.
    pub dim_mismatches: Vec<(String, String)>,
    pub dims: DimTable,
    pub valid: bool,
    pub formal: bool,
    pub gauge: Option<GaugeOutcome>,
    /// Set when the pipeline or the gauge solver could not run.
    pub error: Option<String>,
    pub category: Option<DirectedGradedCategory>,
}

impl SuspensionReport {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.object_count == self.expected_object_count
            && self.dim_mismatches.is_empty()
            && self.valid
            && self.formal
            && self.gauge.as_ref().is_some_and(|g| g.isomorphic)
    }

    /// Human-readable reason for a failure.
    pub fn failure(&self) -> Option<String> {
        if self.passed() {
            return None;
        }
        if let Some(e) = &self.error {
            return Some(e.clone());
        }
        if self.object_count != self.expected_object_count {
            return Some(format!(
                "{} objects, expected {}",
                self.object_count, self.expected_object_count
            ));
        }
        if let Some((x, y)) = self.dim_mismatches.first() {
            return Some(format!("hom({x}, {y}) has the wrong graded dimension"));
        }
        if !self.valid {
            return Some("output fails validation".to_string());
        }
        if !self.formal {
            return Some("output is not formal by degrees".to_string());
        }
        self.gauge.as_ref().and_then(|g| g.reason.clone())
    }
}

/// Suspends `a` by `k` and compares with `reference` under the identity
/// bijection on objects.
pub fn verify_suspension_against(
    a: &DirectedGradedCategory,
    k: usize,
    reference: &DirectedGradedCategory,
) -> SuspensionReport {
    let expected = a.object_count() * k.saturating_sub(1);
    let mut report = SuspensionReport {
        k,
        object_count: 0,
        expected_object_count: expected,
        dim_mismatches: Vec::new(),
        dims: BTreeMap::new(),
        valid: false,
        formal: false,
        gauge: None,
        error: None,
        category: None,
    };
    let out = match suspend(a, k) {
        Ok(c) => c,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    report.object_count = out.object_count();
    report.dims = dim_table(&out);
    report.valid = validate(&out).is_clean();
    report.formal = formality_check(&out);
    if out.object_count() != reference.object_count() {
        report.category = Some(out);
        return report;
    }
    let ref_dims = dim_table(reference);
    let n = out.object_count();
    for x in 0..n {
        for y in x..n {
            if report.dims.get(&(x, y)) != ref_dims.get(&(x, y)) {
                report
                    .dim_mismatches
                    .push((out.objects()[x].clone(), out.objects()[y].clone()));
            }
        }
    }
    let bij: Vec<usize> = (0..n).collect();
    match gauge_isomorphic(&out, reference, &bij) {
        Ok(g) => report.gauge = Some(g),
        Err(e) => report.error = Some(e.to_string()),
    }
    report.category = Some(out);
    report
}

/// Compares `suspend(a, k)` with `a ⊗ 𝔄_{k−1}`, matching `S_{i,j}` with
/// `C_i ⊗ C_j`.
pub fn verify_suspension(a: &DirectedGradedCategory, k: usize) -> SuspensionReport {
    if k < 2 {
        let mut r = verify_suspension_against(a, k, a);
        r.error = Some(SuspensionError::KTooSmall { k }.to_string());
        return r;
    }
    let reference = tensor(a, &a_category(k - 1).expect("k ≥ 2"));
    verify_suspension_against(a, k, &reference)
}

#[derive(Clone, Debug)]
pub struct FukayaResult {
    pub category: DirectedGradedCategory,
    /// One report per suspension step (empty unless verified).
    pub steps: Vec<SuspensionReport>,
    /// Final comparison with the tensor model (only when verified).
    pub final_gauge: Option<GaugeOutcome>,
}

impl FukayaResult {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(SuspensionReport::passed)
            && self.final_gauge.as_ref().is_none_or(|g| g.isomorphic)
    }
}

/// Iterated suspension starting from `𝔄_{p₁−1}` with objects `(i)`.
pub fn fukaya_bp(p: &ExponentSeq, verify: bool) -> Result<FukayaResult, SuspensionError> {
    let first = p.get(0) as usize - 1;
    let labels = (1..=first as u32).map(|i| tuple_label(&[i])).collect();
    let mut cat = a_category(first).expect("p ≥ 2").with_labels(labels);
    let mut steps = Vec::new();
    for &pk in &p.as_slice()[1..] {
        let k = pk as usize;
        if verify {
            let report = verify_suspension(&cat, k);
            if let Some(reason) = report.failure() {
                return Err(SuspensionError::Verification { k, reason });
            }
            cat = report.category.clone().expect("passed report has output");
            steps.push(report);
        } else {
            cat = suspend(&cat, k)?;
        }
    }
    let final_gauge = if verify {
        let model = tensor_bp(p);
        let bij: Vec<usize> = (0..model.object_count()).collect();
        let g =
            gauge_isomorphic(&cat, &model, &bij).map_err(|e| SuspensionError::Verification {
                k: p.get(p.len() - 1) as usize,
                reason: e.to_string(),
            })?;
        if !g.isomorphic {
            return Err(SuspensionError::Verification {
                k: p.get(p.len() - 1) as usize,
                reason: g.reason.unwrap_or_default(),
            });
        }
        Some(g)
    } else {
        None
    };
    Ok(FukayaResult {
        category: cat,
        steps,
        final_gauge,
    })
}

/// Which of the four shapes `hom(S_{i,j}, S_{i′,j′})` takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConeCase {
    /// `j < j′ − 1`: no component homs survive.
    Trivial,
    /// `j = j′ − 1`: `hom_A(C_i, C_i′)[−1]`.
    Shifted,
    /// `j = j′`: `hom_A(C_i, C_i′)`.
    Unshifted,
    /// `j > j′`: a nonzero but acyclic complex.
    Acyclic,
}

impl ConeCase {
    pub fn of(j: usize, j2: usize) -> Self {
        if j + 1 < j2 {
            ConeCase::Trivial
        } else if j + 1 == j2 {
            ConeCase::Shifted
        } else if j == j2 {
            ConeCase::Unshifted
        } else {
            ConeCase::Acyclic
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseEntry {
    /// `(i, j)` with `i` zero-based and `j` one-based.
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub case: ConeCase,
    pub expected: BTreeMap<i64, usize>,
    pub computed: BTreeMap<i64, usize>,
    /// Total dimension of the hom complex before taking cohomology.
    pub chain_dim: usize,
}

impl CaseEntry {
    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }
}

/// Cohomology of `hom(S_{i,j}, S_{i′,j′})` for every ordered pair of cones in
/// `A_k`, next to the value predicted from `hom_A`.
pub fn case_table(a: &DirectedGradedCategory, k: usize) -> Result<Vec<CaseEntry>, SuspensionError> {
    let ext = directed_extension(a, k)?;
    let base = &ext.category;
    let n = a.object_count();
    let mut cones = BTreeMap::new();
    for i in 0..n {
        for j in 1..k {
            cones.insert(
                (i, j),
                cone(base, &crate::dgcat::single(ext.e(i, j), BigRational::one()))?,
            );
        }
    }
    let mut out = Vec::new();
    for (&(i, j), x) in &cones {
        for (&(i2, j2), y) in &cones {
            let case = ConeCase::of(j, j2);
            let hom_a = if i <= i2 {
                a.hom_dims(i, i2)
            } else {
                BTreeMap::new()
            };
            let expected = match case {
                ConeCase::Trivial | ConeCase::Acyclic => BTreeMap::new(),
                ConeCase::Shifted => hom_a.into_iter().map(|(d, m)| (d + 1, m)).collect(),
                ConeCase::Unshifted => hom_a,
            };
            let data = HomData::new(base, x, y)?;
            let chain_dim = data.complex.degrees().map(|d| data.complex.dim(d)).sum();
            out.push(CaseEntry {
                source: (i, j),
                target: (i2, j2),
                case,
                expected,
                computed: data.cohomology.dims(),
                chain_dim,
            });
        }
    }
    Ok(out)
}
