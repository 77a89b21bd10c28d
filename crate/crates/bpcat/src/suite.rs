//! Verification suites behind `bpcat verify`.

use std::collections::BTreeMap;
use std::time::Instant;

use bpcat_core::dgcat::{a_category, euler_matrix, formality_check, tensor_bp, validate};
use bpcat_core::exactlin::IntMatrix;
use bpcat_core::grading::{cy_check, orlov_group, ExponentSeq, LGroup};
use bpcat_core::lattice::{cartan_a, compare, determinant};
use bpcat_core::singcat::{
    bp_resolution, ext_formula, ext_k_k, index_set, koszul_perfect_check, lemma_k_check,
    validate_resolution, vanishing_scan, SingError,
};
use bpcat_core::suspension::{case_table, fukaya_bp};
use clap::ValueEnum;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::schema::{CheckJson, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Fukaya,
    Singcat,
    Lattice,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Fukaya => "fukaya",
            Suite::Singcat => "singcat",
            Suite::Lattice => "lattice",
            Suite::All => "all",
        }
    }
}

type CheckFn = fn(&ExponentSeq) -> Result<String, String>;

fn ensure(ok: bool, detail: String) -> Result<String, String> {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fukaya_pipeline(p: &ExponentSeq) -> Result<String, String> {
    let r = fukaya_bp(p, true).map_err(|e| e.to_string())?;
    let c = &r.category;
    ensure(
        r.passed() && validate(c).is_clean() && formality_check(c),
        format!(
            "{} objects after {} suspension steps, gauge-isomorphic to the tensor model",
            c.object_count(),
            r.steps.len()
        ),
    )
}

fn fukaya_tensor_model(p: &ExponentSeq) -> Result<String, String> {
    let t = tensor_bp(p);
    let valid = validate(&t).is_clean();
    let formal = formality_check(&t);
    let count = t.object_count() == p.milnor_number();
    ensure(
        valid && formal && count,
        format!(
            "valid {valid}, formal {formal}, {} objects",
            t.object_count()
        ),
    )
}

fn fukaya_case_table(p: &ExponentSeq) -> Result<String, String> {
    if p.len() < 2 {
        return Ok("skipped: one variable".into());
    }
    let a = a_category(p.get(0) as usize - 1).map_err(|e| e.to_string())?;
    let table = case_table(&a, p.get(1) as usize).map_err(|e| e.to_string())?;
    match table.iter().find(|e| !e.matches()) {
        None => Ok(format!("{} cone pairs match the four cases", table.len())),
        Some(e) => Err(format!(
            "hom(S{:?}, S{:?}) in case {:?}: expected {:?}, got {:?}",
            e.source, e.target, e.case, e.expected, e.computed
        )),
    }
}

fn singcat_ext(p: &ExponentSeq) -> Result<String, String> {
    let idx = index_set(p);
    let top = p.len();
    for m in &idx {
        for n in &idx {
            let lhs: BTreeMap<usize, usize> = ext_k_k(p, m, n)
                .into_iter()
                .filter(|(i, _)| *i <= top)
                .collect();
            let rhs = ext_formula(p, m, n).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!(
                    "Ext(k({m}), k({n})): resolution {lhs:?}, formula {rhs:?}"
                ));
            }
        }
    }
    Ok(format!(
        "{} twist pairs agree in degrees 0..={top}",
        idx.len() * idx.len()
    ))
}

fn singcat_vanishing(p: &ExponentSeq) -> Result<String, String> {
    let scan = vanishing_scan(p, 50);
    ensure(
        scan.failures.is_empty(),
        format!(
            "{} pairs scanned, {} outside the positive monoid, {} failures",
            scan.pairs_checked,
            scan.pairs_outside_monoid,
            scan.failures.len()
        ),
    )
}

fn singcat_resolution(p: &ExponentSeq) -> Result<String, String> {
    let length = 2 * p.len() + 2;
    let window = 2 * LGroup::new(p.clone()).ell();
    let c = bp_resolution(p, length).map_err(|e| e.to_string())?;
    let r = validate_resolution(&c, window);
    ensure(
        r.passed(),
        format!(
            "length {length}, z ≤ {window}: d² = 0 {}, {} exactness failures, H⁰ = k {}",
            r.d_squared_zero,
            r.exactness_failures.len(),
            r.h0_is_k
        ),
    )
}

fn singcat_lemma_k(p: &ExponentSeq) -> Result<String, String> {
    let window = 2 * LGroup::new(p.clone()).ell();
    let mut count = 0;
    for axis in 1..=p.len() {
        for j in 2..=p.get(axis - 1) {
            let r = lemma_k_check(p, axis, j, window).map_err(|e| e.to_string())?;
            if !r.passed() {
                return Err(format!("axis {axis}, j = {j} fails"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} sequences exact in z ≤ {window}"))
}

fn singcat_koszul(p: &ExponentSeq) -> Result<String, String> {
    let window = 2 * LGroup::new(p.clone()).ell();
    match koszul_perfect_check(p, window) {
        Err(SingError::OneVariable) => Ok("skipped: one variable".into()),
        Err(e) => Err(e.to_string()),
        Ok(r) => ensure(
            r.passed(),
            format!(
                "{} degrees checked, {} failures",
                r.degrees_checked,
                r.failures.len()
            ),
        ),
    }
}

fn lattice_parity(p: &ExponentSeq) -> Result<String, String> {
    let c = compare(p);
    ensure(
        c.st.is_consistent() && c.euler.is_consistent(),
        format!("rank {}", c.st.rank()),
    )
}

fn lattice_compare(p: &ExponentSeq) -> Result<String, String> {
    let c = compare(p);
    let detail = format!(
        "{} entries agree, {} disagree",
        c.agreeing,
        c.disagreeing.len()
    );
    if p.len() > 1 {
        return Ok(detail);
    }
    let cartan = cartan_a(p.get(0) as usize - 1);
    ensure(
        c.agrees() && c.st.gram == cartan && determinant(&c.st) == BigInt::from(p.get(0)),
        detail,
    )
}

fn lattice_euler(p: &ExponentSeq) -> Result<String, String> {
    let whole = euler_matrix(&tensor_bp(p));
    let mut kron: Option<IntMatrix> = None;
    for &pi in p.as_slice() {
        let e = euler_matrix(&a_category(pi as usize - 1).map_err(|e| e.to_string())?);
        kron = Some(match kron {
            None => e,
            Some(k) => k.kronecker(&e),
        });
    }
    ensure(
        kron.as_ref() == Some(&whole),
        format!("{0}×{0} Euler matrix", whole.rows()),
    )
}

fn grading_orlov(p: &ExponentSeq) -> Result<String, String> {
    let cy = cy_check(p);
    let g = orlov_group(p).map_err(|e| e.to_string())?;
    let product: u64 = p.as_slice().iter().map(|&x| x as u64).product();
    let expected = if p.len() == 1 {
        1
    } else {
        product / cy.ell as u64
    };
    ensure(
        g.order() == expected,
        format!("G_p = {g}, Σ 1/pᵢ = {}, CY {}", cy.sum, cy.holds),
    )
}

fn checks(suite: Suite) -> Vec<(&'static str, CheckFn)> {
    let fukaya: [(&str, CheckFn); 3] = [
        ("fukaya.pipeline", fukaya_pipeline),
        ("fukaya.tensor-model", fukaya_tensor_model),
        ("fukaya.case-table", fukaya_case_table),
    ];
    let singcat: [(&str, CheckFn); 5] = [
        ("singcat.ext", singcat_ext),
        ("singcat.vanishing", singcat_vanishing),
        ("singcat.resolution", singcat_resolution),
        ("singcat.lemma-k", singcat_lemma_k),
        ("singcat.koszul", singcat_koszul),
    ];
    let lattice: [(&str, CheckFn); 3] = [
        ("lattice.parity", lattice_parity),
        ("lattice.compare", lattice_compare),
        ("lattice.euler", lattice_euler),
    ];
    match suite {
        Suite::Fukaya => fukaya.to_vec(),
        Suite::Singcat => singcat.to_vec(),
        Suite::Lattice => lattice.to_vec(),
        Suite::All => {
            let mut v = fukaya.to_vec();
            v.extend(singcat);
            v.extend(lattice);
            v.push(("grading.orlov", grading_orlov));
            v
        }
    }
}

/// Runs the checks of `suite` in parallel on the current rayon pool; the
/// report keeps the fixed check order.
pub fn run_suite(p: &ExponentSeq, suite: Suite, timings: bool) -> VerificationReport {
    let results: Vec<CheckJson> = checks(suite)
        .par_iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let outcome = f(p);
            let elapsed = start.elapsed().as_millis() as u64;
            let (passed, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckJson {
                name: name.to_string(),
                passed,
                detail,
                elapsed_ms: timings.then_some(elapsed),
            }
        })
        .collect();
    VerificationReport {
        suite: suite.name().into(),
        p: p.as_slice().to_vec(),
        passed: results.iter().all(|c| c.passed),
        checks: results,
    }
}
