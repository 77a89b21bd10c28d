//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints one status line; exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use bpcat_core::dgcat::{
    a_category, euler_matrix, formality_check, tensor, tensor_bp, validate, DirectedGradedCategory,
};
use bpcat_core::exactlin::qi;
use bpcat_core::grading::{cy_check, orlov_group, ExponentSeq, LGroup};
use bpcat_core::lattice::{cartan_a, compare, determinant, euler_gram, st_gram, Orientation};
use bpcat_core::singcat::{
    bp_resolution, ext_formula, ext_k_k, index_set, koszul_perfect_check, lemma_k_check,
    validate_resolution, vanishing_scan,
};
use bpcat_core::suspension::{
    case_table, dim_table, directed_extension, fukaya_bp, suspend, ConeCase,
};
use bpcat_core::twisted::{cone, hom_complex, TwistedObject};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn p(v: &[i64]) -> ExponentSeq {
    ExponentSeq::new(v).unwrap()
}

/// Exit code and stdout of one in-process CLI invocation.
fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = bpcat::run(
        std::iter::once("bpcat").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, out)
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fixtures() -> Vec<(&'static str, DirectedGradedCategory)> {
    let a1 = a_category(1).unwrap();
    let a2 = a_category(2).unwrap();
    let a3 = a_category(3).unwrap();
    vec![
        ("A1", a1.clone()),
        ("A2", a2.clone()),
        ("A3", a3),
        ("A1⊗A2", tensor(&a1, &a2)),
    ]
}

fn exponent_sequences(max_n: usize, max_p: i64) -> Vec<ExponentSeq> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    let mut all = Vec::new();
    for _ in 0..max_n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (2..=max_p).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        all.extend(out.iter().map(|v| p(v)));
    }
    all
}

fn suspension_matches_tensor_model() -> Outcome {
    let cases = [
        &[2, 2][..],
        &[2, 3],
        &[3, 3],
        &[2, 2, 2],
        &[2, 3, 4],
        &[3, 3, 3],
    ];
    for v in cases {
        let seq = p(v);
        let r = fukaya_bp(&seq, true).map_err(|e| format!("{v:?}: {e}"))?;
        check(r.passed(), format!("{v:?}: verification failed"))?;
        check(
            r.final_gauge
                .as_ref()
                .is_some_and(|g| g.isomorphic && g.witness.is_some()),
            format!("{v:?}: no gauge witness"),
        )?;
        check(
            r.steps
                .iter()
                .all(|s| s.dim_mismatches.is_empty() && s.valid),
            format!("{v:?}: a suspension step has wrong dimensions"),
        )?;
        check(
            dim_table(&r.category) == dim_table(&tensor_bp(&seq)),
            format!("{v:?}: hom dimension table differs from the tensor model"),
        )?;
    }
    Ok(format!(
        "{} exponent sequences gauge-isomorphic to the tensor model",
        cases.len()
    ))
}

fn case_table_criterion() -> Outcome {
    let a1 = a_category(1).unwrap();
    let a2 = a_category(2).unwrap();
    let mut seen = BTreeSet::new();
    let mut entries = 0;
    let mut nonzero_acyclic = 0;
    for (name, a) in [("A2", a2.clone()), ("A1⊗A2", tensor(&a1, &a2))] {
        for k in 2..=4 {
            let table = case_table(&a, k).map_err(|e| format!("{name}, k = {k}: {e}"))?;
            check(
                table.len() == (a.object_count() * (k - 1)).pow(2),
                format!("{name}, k = {k}: wrong number of cone pairs"),
            )?;
            for e in &table {
                check(
                    e.matches(),
                    format!(
                        "{name}, k = {k}: hom(S{:?}, S{:?}) in case {:?} is {:?}, expected {:?}",
                        e.source, e.target, e.case, e.computed, e.expected
                    ),
                )?;
                seen.insert(e.case);
                if e.case == ConeCase::Acyclic && e.chain_dim > 0 {
                    nonzero_acyclic += 1;
                }
            }
            entries += table.len();
        }
    }
    check(seen.len() == 4, format!("only cases {seen:?} occurred"))?;
    check(nonzero_acyclic > 0, "no acyclic case had a nonzero complex")?;
    Ok(format!(
        "{entries} cone pairs, all four cases, {nonzero_acyclic} nonzero acyclic complexes"
    ))
}

fn formality_criterion() -> Outcome {
    let seqs = exponent_sequences(3, 5);
    for seq in &seqs {
        check(
            formality_check(&tensor_bp(seq)),
            format!("tensor model for {seq:?} not formal"),
        )?;
    }
    let mut outputs = 0;
    for v in [
        &[2, 2][..],
        &[2, 3],
        &[3, 3],
        &[2, 2, 2],
        &[2, 3, 4],
        &[3, 3, 3],
    ] {
        let r = fukaya_bp(&p(v), true).map_err(|e| e.to_string())?;
        check(
            r.steps.iter().all(|s| s.formal),
            format!("{v:?}: a suspension output is not formal"),
        )?;
        check(
            formality_check(&r.category),
            format!("{v:?}: final output not formal"),
        )?;
        outputs += r.steps.len();
    }
    Ok(format!(
        "{} tensor models and {outputs} suspension outputs",
        seqs.len()
    ))
}

fn euler_and_rank_one() -> Outcome {
    let fx = fixtures();
    for (na, a) in &fx {
        for (nb, b) in &fx {
            check(
                euler_matrix(&tensor(a, b)) == euler_matrix(a).kronecker(&euler_matrix(b)),
                format!("Euler matrix of {na}⊗{nb} is not the Kronecker product"),
            )?;
        }
    }
    for pi in 2..=12 {
        let seq = p(&[pi]);
        let cartan = cartan_a(pi as usize - 1);
        let st = st_gram(&seq);
        let eu = euler_gram(&seq, Orientation::Standard);
        check(
            st.gram == cartan && eu.gram == cartan,
            format!("p = {pi}: Gram is not the Cartan matrix"),
        )?;
        check(
            determinant(&st) == BigInt::from(pi),
            format!("p = {pi}: determinant {}", determinant(&st)),
        )?;
    }
    Ok(format!("{} fixture pairs, p = 2..12", fx.len() * fx.len()))
}

fn lattice_criterion() -> Outcome {
    let c = compare(&p(&[2, 3]));
    check(
        c.disagreeing.len() == 1,
        format!("(2,3): {} disagreements", c.disagreeing.len()),
    )?;
    let d = &c.disagreeing[0];
    check(
        d.st == BigInt::from(-2) && d.euler == BigInt::from(-1),
        format!(
            "(2,3): entry ({}, {}) is {} vs {}",
            d.row, d.col, d.st, d.euler
        ),
    )?;
    let c22 = compare(&p(&[2, 2]));
    check(c22.agrees(), "(2,2) disagrees")?;
    Ok(format!(
        "(2,3): ({}, {}) symmetric −2 vs Euler −1; (2,2) agrees",
        d.row, d.col
    ))
}

fn ext_criterion() -> Outcome {
    let mut pairs = 0;
    for v in [&[2, 3][..], &[3, 3], &[2, 2, 2]] {
        let seq = p(v);
        let idx = index_set(&seq);
        for m in &idx {
            for n in &idx {
                let lhs: BTreeMap<usize, usize> = ext_k_k(&seq, m, n)
                    .into_iter()
                    .filter(|(i, _)| *i <= seq.len())
                    .collect();
                let rhs = ext_formula(&seq, m, n).map_err(|e| e.to_string())?;
                check(
                    lhs == rhs,
                    format!("{v:?}: Ext(k({m}), k({n})) = {lhs:?}, formula {rhs:?}"),
                )?;
                pairs += 1;
            }
        }
        let scan = vanishing_scan(&seq, 50);
        check(
            scan.pairs_checked == 50,
            format!("{v:?}: only {} pairs scanned", scan.pairs_checked),
        )?;
        check(
            scan.failures.is_empty(),
            format!("{v:?}: vanishing fails at {:?}", scan.failures.first()),
        )?;
    }
    Ok(format!("{pairs} index pairs agree; 3 × 50 vanishing pairs"))
}

fn resolution_criterion() -> Outcome {
    let mut detail = Vec::new();
    for (v, len) in [(&[2, 3][..], 8), (&[3, 3], 6)] {
        let seq = p(v);
        let window = 2 * LGroup::new(seq.clone()).ell();
        let c = bp_resolution(&seq, len).map_err(|e| e.to_string())?;
        let r = validate_resolution(&c, window);
        check(r.d_squared_zero, format!("{v:?}: δ² ≠ 0"))?;
        check(
            r.homogeneity_violations.is_empty(),
            format!("{v:?}: inhomogeneous differential"),
        )?;
        check(r.h0_is_k, format!("{v:?}: H⁰ ≠ k"))?;
        check(
            r.exactness_failures.is_empty(),
            format!("{v:?}: not exact at {:?}", r.exactness_failures.first()),
        )?;
        detail.push(format!("{v:?} length {len}: {} degrees", r.degrees_checked));
    }
    Ok(detail.join("; "))
}

fn lemma_criterion() -> Outcome {
    let mut count = 0;
    for v in [&[2, 3][..], &[2, 2, 2]] {
        let seq = p(v);
        let window = 2 * LGroup::new(seq.clone()).ell();
        for axis in 1..=seq.len() {
            for j in 2..=seq.get(axis - 1) {
                let r = lemma_k_check(&seq, axis, j, window).map_err(|e| e.to_string())?;
                check(
                    r.passed(),
                    format!(
                        "{v:?}, axis {axis}, j = {j}: {:?}",
                        r.exactness.first_failure()
                    ),
                )?;
                count += 1;
            }
        }
        let k = koszul_perfect_check(&seq, window).map_err(|e| e.to_string())?;
        check(
            k.passed(),
            format!("{v:?}: Koszul complex not a resolution"),
        )?;
    }
    Ok(format!("{count} sequences exact; both Koszul checks pass"))
}

/// Order of `G_p` by enumerating `Π μ_{pᵢ}` modulo the diagonal `μ_ℓ`.
fn coset_order(p: &[u32]) -> usize {
    let mut elems: Vec<Vec<u32>> = vec![vec![]];
    for &pi in p {
        elems = elems
            .into_iter()
            .flat_map(|e| {
                (0..pi).map(move |k| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    let ell = p.iter().fold(1u32, |a, &b| {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            (x, y) = (y, x % y);
        }
        a / x * b
    });
    let canon = |e: &[u32]| -> Vec<u32> {
        (0..ell)
            .map(|k| {
                e.iter()
                    .zip(p)
                    .map(|(&a, &pi)| (a + k) % pi)
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap()
    };
    elems
        .iter()
        .map(|e| canon(e))
        .collect::<BTreeSet<_>>()
        .len()
}

fn orlov_criterion() -> Outcome {
    let mut failures = Vec::new();
    let expect = [
        (&[3, 3, 3][..], true, Some(vec![3u64]), None),
        (&[2, 2], true, Some(vec![2]), None),
        (&[2, 3, 6], true, None, Some(6u64)),
    ];
    for (v, cy, group, order) in expect {
        let seq = p(v);
        let c = cy_check(&seq);
        let g = orlov_group(&seq).map_err(|e| e.to_string())?;
        let oracle = coset_order(seq.as_slice()) as u64;
        if c.holds != cy {
            failures.push(format!("{v:?}: CY {}", c.holds));
        }
        if g.order() != oracle {
            failures.push(format!(
                "{v:?}: SNF order {} but coset order {oracle}",
                g.order()
            ));
        }
        if let Some(want) = group {
            if g.invariant_factors != want {
                failures.push(format!(
                    "{v:?}: G_p = {g} (coset enumeration: order {oracle}), expected {}",
                    want.iter()
                        .map(|d| format!("ℤ/{d}"))
                        .collect::<Vec<_>>()
                        .join(" ⊕ ")
                ));
            }
        }
        if let Some(want) = order {
            if g.order() != want {
                failures.push(format!("{v:?}: order {} expected {want}", g.order()));
            }
        }
    }
    let c = cy_check(&p(&[2, 3, 5]));
    if c.holds || c.sum != BigRational::new(31.into(), 30.into()) {
        failures.push(format!("(2,3,5): CY {} with sum {}", c.holds, c.sum));
    }
    if failures.is_empty() {
        Ok("(3,3,3), (2,2), (2,3,6), (2,3,5) as stated".into())
    } else {
        Err(failures.join("; "))
    }
}

fn property_criterion() -> Outcome {
    // validate on every constructed category
    let mut cats: Vec<DirectedGradedCategory> =
        exponent_sequences(3, 4).iter().map(tensor_bp).collect();
    for (_, a) in fixtures() {
        for k in 2..=4 {
            cats.push(
                directed_extension(&a, k)
                    .map_err(|e| e.to_string())?
                    .category,
            );
            cats.push(suspend(&a, k).map_err(|e| e.to_string())?);
        }
        cats.push(a);
    }
    for v in [&[2, 3][..], &[3, 3], &[2, 2, 2], &[2, 3, 4]] {
        cats.push(fukaya_bp(&p(v), false).map_err(|e| e.to_string())?.category);
    }
    for c in &cats {
        check(
            validate(c).is_clean(),
            format!("category with objects {:?} fails validation", c.objects()),
        )?;
    }

    // d² = 0 on hom complexes between all objects and cones of the extensions
    let mut complexes = 0;
    for (name, a) in fixtures() {
        for k in 2..=4 {
            let ext = directed_extension(&a, k).map_err(|e| e.to_string())?;
            let base = &ext.category;
            let mut objs: Vec<TwistedObject> = (0..base.object_count())
                .map(|o| TwistedObject::single(base, o).unwrap())
                .collect();
            for i in 0..a.object_count() {
                for j in 1..k {
                    let f = bpcat_core::dgcat::single(ext.e(i, j), qi(1));
                    objs.push(cone(base, &f).map_err(|e| e.to_string())?);
                }
            }
            for x in &objs {
                for y in &objs {
                    let h = hom_complex(base, x, y).map_err(|e| e.to_string())?;
                    check(h.d_squared_is_zero(), format!("{name}, k = {k}: d² ≠ 0"))?;
                    complexes += 1;
                }
            }
        }
    }

    // normalization in L(p) on 200 random vectors
    let g = LGroup::new(p(&[2, 3, 4]));
    let config = Config {
        failure_persistence: None,
        ..Config::with_cases(200)
    };
    let mut runner = TestRunner::new_with_rng(
        config.clone(),
        TestRng::deterministic_rng(config.rng_algorithm),
    );
    let vec4 = || prop::collection::vec(-60i64..60, 4);
    runner
        .run(&(vec4(), vec4()), |(u, v)| {
            let nu = g.normalize(&u).unwrap();
            prop_assert_eq!(g.normalize(&nu.raw()).unwrap(), nu.clone());
            let sum: Vec<i64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
            let nv = g.normalize(&v).unwrap();
            prop_assert_eq!(g.normalize(&sum).unwrap(), g.add(&nu, &nv));
            Ok(())
        })
        .map_err(|e| format!("normalize: {e}"))?;

    // CLI determinism
    for args in [
        &["verify", "--p", "2,3", "--suite", "all", "--json"][..],
        &["fukaya", "--p", "2,2,2", "--verify"],
        &["lattice", "--p", "2,3", "--json"],
    ] {
        let a = cli(args);
        let b = cli(args);
        check(
            a.0 == bpcat::EXIT_OK,
            format!("{args:?} exited with {}", a.0),
        )?;
        check(a == b, format!("{args:?} is not deterministic"))?;
    }
    Ok(format!(
        "{} categories valid, {complexes} hom complexes with d² = 0, 200 normalize cases, CLI deterministic",
        cats.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            1,
            "iterated suspension reproduces the tensor model",
            suspension_matches_tensor_model,
        ),
        (2, "cone hom case table", case_table_criterion),
        (3, "formality", formality_criterion),
        (
            4,
            "Euler multiplicativity and one-variable lattices",
            euler_and_rank_one,
        ),
        (5, "lattice comparison report", lattice_criterion),
        (6, "Ext between twists of k", ext_criterion),
        (7, "free resolution of k", resolution_criterion),
        (
            8,
            "short exact sequences and the Koszul complex",
            lemma_criterion,
        ),
        (9, "Calabi-Yau condition and G_p", orlov_criterion),
        (10, "property suites", property_criterion),
    ];
    let mut failed = 0;
    for (n, name, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("criterion {n:>2}: PASS  {name} ({d}) [{secs:.2}s]"),
            Err(e) => {
                failed += 1;
                println!("criterion {n:>2}: FAIL  {name}: {e} [{secs:.2}s]");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
