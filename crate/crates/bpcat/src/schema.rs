//! JSON shapes for every artifact the CLI emits.
//!
//! Rationals are written as decimal strings (`"3"`, `"-1/2"`), grading-group
//! elements as raw coefficient vectors `[a₁, …, aₙ, b]` in normal form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use bpcat_core::dgcat::{CategoryBuilder, DirectedGradedCategory, GaugeOutcome, LinComb};
use bpcat_core::grading::ExponentSeq;
use bpcat_core::lattice::{BilinearLattice, LatticeComparison, Parity};
use bpcat_core::singcat::{FreeComplex, ResolutionReport};
use bpcat_core::suspension::SuspensionReport;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    /// Non-identity basis morphisms; identities are implicit.
    pub homs: Vec<HomJson>,
    pub comp: Vec<CompJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub id: usize,
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
    pub name: String,
}

/// `g ∘ f = Σ coeff · hom`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompJson {
    pub g: usize,
    pub f: usize,
    pub result: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub hom: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemaError {
    UnknownObject(usize),
    UnknownHom(usize),
    DuplicateHom(usize),
    BadCoefficient(String),
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaError::UnknownObject(i) => write!(f, "object index {i} out of range"),
            SchemaError::UnknownHom(i) => write!(f, "hom id {i} is not declared"),
            SchemaError::DuplicateHom(i) => write!(f, "hom id {i} declared twice"),
            SchemaError::BadCoefficient(s) => write!(f, "cannot parse coefficient {s:?}"),
        }
    }
}

impl std::error::Error for SchemaError {}

impl CategoryJson {
    pub fn from_category(c: &DirectedGradedCategory) -> Self {
        let mut json_id = BTreeMap::new();
        let mut homs = Vec::new();
        for (id, m) in c.morphisms().iter().enumerate() {
            if c.is_identity(id) {
                continue;
            }
            json_id.insert(id, homs.len());
            homs.push(HomJson {
                id: homs.len(),
                src: m.src,
                tgt: m.tgt,
                degree: m.degree,
                name: m.name.clone(),
            });
        }
        let mut comp: Vec<CompJson> = c
            .comp_table()
            .iter()
            .map(|(&(g, f), value)| CompJson {
                g: json_id[&g],
                f: json_id[&f],
                result: value
                    .iter()
                    .map(|(h, k)| TermJson {
                        hom: json_id[h],
                        coeff: k.to_string(),
                    })
                    .collect(),
            })
            .collect();
        comp.sort_by_key(|e| (e.g, e.f));
        CategoryJson {
            objects: c.objects().to_vec(),
            homs,
            comp,
        }
    }

    pub fn to_category(&self) -> Result<DirectedGradedCategory, SchemaError> {
        let mut b = CategoryBuilder::new();
        for label in &self.objects {
            b.add_object(label.clone());
        }
        let mut ids = BTreeMap::new();
        for h in &self.homs {
            for o in [h.src, h.tgt] {
                if o >= self.objects.len() {
                    return Err(SchemaError::UnknownObject(o));
                }
            }
            let id = b.add_morphism(h.src, h.tgt, h.degree, h.name.clone());
            if ids.insert(h.id, id).is_some() {
                return Err(SchemaError::DuplicateHom(h.id));
            }
        }
        let lookup = |i: usize| ids.get(&i).copied().ok_or(SchemaError::UnknownHom(i));
        for e in &self.comp {
            let mut value = LinComb::new();
            for t in &e.result {
                let k = BigRational::from_str(&t.coeff)
                    .map_err(|_| SchemaError::BadCoefficient(t.coeff.clone()))?;
                value.insert(lookup(t.hom)?, k);
            }
            b.set_comp(lookup(e.g)?, lookup(e.f)?, value);
        }
        Ok(b.build())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryReport {
    pub p: Vec<u32>,
    pub category: CategoryJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeJson {
    pub isomorphic: bool,
    /// Rescaling `λ_f` for each non-identity hom of the computed category.
    pub witness: Option<Vec<String>>,
    pub reason: Option<String>,
}

impl GaugeJson {
    pub fn new(g: &GaugeOutcome, c: &DirectedGradedCategory) -> Self {
        GaugeJson {
            isomorphic: g.isomorphic,
            witness: g.witness.as_ref().map(|w| {
                w.iter()
                    .enumerate()
                    .filter(|(id, _)| !c.is_identity(*id))
                    .map(|(_, k)| k.to_string())
                    .collect()
            }),
            reason: g.reason.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuspensionCheckJson {
    pub k: usize,
    pub object_count: usize,
    pub expected_object_count: usize,
    pub dim_mismatches: Vec<(String, String)>,
    pub valid: bool,
    pub formal: bool,
    pub gauge: Option<GaugeJson>,
    pub failure: Option<String>,
    pub passed: bool,
}

impl SuspensionCheckJson {
    pub fn new(r: &SuspensionReport) -> Self {
        SuspensionCheckJson {
            k: r.k,
            object_count: r.object_count,
            expected_object_count: r.expected_object_count,
            dim_mismatches: r.dim_mismatches.clone(),
            valid: r.valid,
            formal: r.formal,
            gauge: match (&r.gauge, &r.category) {
                (Some(g), Some(c)) => Some(GaugeJson::new(g, c)),
                _ => None,
            },
            failure: r.failure(),
            passed: r.passed(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuspendReport {
    pub p: Vec<u32>,
    pub k: usize,
    pub category: Option<CategoryJson>,
    pub verification: Option<SuspensionCheckJson>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FukayaReport {
    pub p: Vec<u32>,
    pub verified: bool,
    pub category: Option<CategoryJson>,
    pub steps: Vec<SuspensionCheckJson>,
    pub final_gauge: Option<GaugeJson>,
    pub error: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramJson {
    pub parity: String,
    pub gram: Vec<Vec<i64>>,
}

pub fn int(x: &BigInt) -> i64 {
    x.to_i64().expect("entry fits in i64")
}

impl GramJson {
    pub fn new(l: &BilinearLattice) -> Self {
        GramJson {
            parity: match l.parity {
                Parity::Symmetric => "symmetric".into(),
                Parity::Antisymmetric => "antisymmetric".into(),
            },
            gram: (0..l.gram.rows())
                .map(|r| l.gram.row(r).iter().map(int).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDiffJson {
    pub row: String,
    pub col: String,
    pub st: i64,
    pub euler: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub p: Vec<u32>,
    pub labels: Vec<String>,
    pub st: GramJson,
    pub euler: GramJson,
    pub agreeing: usize,
    pub disagreeing: Vec<EntryDiffJson>,
}

impl LatticeReport {
    pub fn new(c: &LatticeComparison) -> Self {
        LatticeReport {
            p: c.p.as_slice().to_vec(),
            labels: c.st.labels.clone(),
            st: GramJson::new(&c.st),
            euler: GramJson::new(&c.euler),
            agreeing: c.agreeing,
            disagreeing: c
                .disagreeing
                .iter()
                .map(|d| EntryDiffJson {
                    row: d.row.clone(),
                    col: d.col.clone(),
                    st: int(&d.st),
                    euler: int(&d.euler),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtReport {
    pub p: Vec<u32>,
    pub source: Vec<i64>,
    pub target: Vec<i64>,
    /// Cohomological degree ↦ dimension, zeros omitted.
    pub dims: BTreeMap<usize, usize>,
    /// The tensor-product prediction, when both twists lie in the index set.
    pub formula: Option<BTreeMap<usize, usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub degree: Vec<i64>,
    pub z: i64,
    pub form: Vec<usize>,
    pub twist: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessFailureJson {
    pub degree: Vec<i64>,
    pub cohomological: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDump {
    pub p: Vec<u32>,
    pub length: usize,
    pub window: i64,
    pub ranks: Vec<usize>,
    /// `terms[i]` lists the generators of `C^{−i}`.
    pub terms: Vec<Vec<GeneratorJson>>,
    pub d_squared_zero: bool,
    pub homogeneity_violations: usize,
    pub exactness_failures: Vec<ExactnessFailureJson>,
    pub h0_is_k: bool,
    pub degrees_checked: usize,
    pub passed: bool,
}

impl ResolutionDump {
    pub fn new(p: &ExponentSeq, c: &FreeComplex, window: i64, r: &ResolutionReport) -> Self {
        let g = c.ring.group();
        ResolutionDump {
            p: p.as_slice().to_vec(),
            length: c.length(),
            window,
            ranks: c.ranks(),
            terms: c
                .terms
                .iter()
                .map(|t| {
                    t.iter()
                        .map(|gen| GeneratorJson {
                            degree: gen.degree.raw(),
                            z: g.z_degree(&gen.degree),
                            form: gen.form.clone(),
                            twist: gen.twist,
                        })
                        .collect()
                })
                .collect(),
            d_squared_zero: r.d_squared_zero,
            homogeneity_violations: r.homogeneity_violations.len(),
            exactness_failures: r
                .exactness_failures
                .iter()
                .map(|(d, i)| ExactnessFailureJson {
                    degree: d.raw(),
                    cohomological: *i,
                })
                .collect(),
            h0_is_k: r.h0_is_k,
            degrees_checked: r.degrees_checked,
            passed: r.passed(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaKJson {
    pub p: Vec<u32>,
    pub axis: usize,
    pub j: u32,
    pub window: i64,
    pub linear: bool,
    pub homogeneous: bool,
    pub failures: Vec<Vec<i64>>,
    pub degrees_checked: usize,
    pub quotient_iso: Option<bool>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrlovReport {
    pub p: Vec<u32>,
    pub cy: bool,
    pub sum: String,
    pub ell: i64,
    pub weights: Vec<i64>,
    /// Invariant factors of `G_p`, each dividing the next.
    pub group: Vec<u64>,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub p: Vec<u32>,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}
