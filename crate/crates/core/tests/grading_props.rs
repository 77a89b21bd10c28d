use std::collections::BTreeSet;

use proptest::prelude::*;

use bpcat_core::grading::{cy_check, orlov_group, ExponentSeq, LGroup};

fn group() -> LGroup {
    LGroup::new(ExponentSeq::new(&[2, 3, 4]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalize_is_idempotent(raw in prop::collection::vec(-40i64..40, 4)) {
        let g = group();
        let d = g.normalize(&raw).unwrap();
        prop_assert_eq!(g.normalize(&d.raw()).unwrap(), d.clone());
        for (i, &a) in d.a.iter().enumerate() {
            prop_assert!(0 <= a && a < g.exponents().get(i) as i64);
        }
    }

    #[test]
    fn normalize_is_additive(u in prop::collection::vec(-40i64..40, 4), v in prop::collection::vec(-40i64..40, 4)) {
        let g = group();
        let sum: Vec<i64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        let lhs = g.normalize(&sum).unwrap();
        let rhs = g.add(&g.normalize(&u).unwrap(), &g.normalize(&v).unwrap());
        prop_assert_eq!(lhs.clone(), rhs);
        prop_assert_eq!(g.z_degree(&lhs), g.z_degree(&g.normalize(&u).unwrap()) + g.z_degree(&g.normalize(&v).unwrap()));
    }
}

/// `G_p` as `(μ_{p₁} × … × μ_{pₙ}) / ⟨(ζ_{p₁}, …, ζ_{pₙ})⟩`, with roots of
/// unity stored as exponents. Returns, for each `d`, the number of
/// elements killed by `d`.
fn coset_oracle(p: &[u32]) -> (usize, Vec<usize>) {
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
    let shift =
        |e: &[u32], k: u32| -> Vec<u32> { e.iter().zip(p).map(|(&a, &pi)| (a + k) % pi).collect() };
    let ell = p.iter().fold(1u32, |a, &b| a / gcd(a, b) * b);
    let canon = |e: &[u32]| -> Vec<u32> { (0..ell).map(|k| shift(e, k)).min().unwrap() };
    let cosets: BTreeSet<Vec<u32>> = elems.iter().map(|e| canon(e)).collect();
    let order = cosets.len();
    let killed = (1..=order)
        .map(|d| {
            cosets
                .iter()
                .filter(|c| {
                    let m: Vec<u32> = c
                        .iter()
                        .zip(p)
                        .map(|(&a, &pi)| (a * d as u32) % pi)
                        .collect();
                    canon(&m) == canon(&vec![0; p.len()])
                })
                .count()
        })
        .collect();
    (order, killed)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn orlov_group_matches_coset_enumeration() {
    for p in [
        &[2, 2][..],
        &[3, 3, 3],
        &[2, 3, 6],
        &[2, 4, 4],
        &[2, 3, 5],
        &[4, 6],
        &[2, 2, 2, 2],
    ] {
        let seq = ExponentSeq::new(&p.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap();
        let g = orlov_group(&seq).unwrap();
        let (order, killed) = coset_oracle(p);
        assert_eq!(g.order() as usize, order, "{p:?}");
        for (i, &count) in killed.iter().enumerate() {
            let d = i as u64 + 1;
            let predicted: u64 = g
                .invariant_factors
                .iter()
                .map(|&f| gcd(d as u32, f as u32) as u64)
                .product();
            assert_eq!(predicted as usize, count, "{p:?}, d = {d}");
        }
    }
}

#[test]
fn torsion_of_l_by_enumeration() {
    // torsion of L(p) is the kernel of the ℤ-degree map
    for p in [
        &[2, 3][..],
        &[3, 3],
        &[2, 4],
        &[2, 2, 2],
        &[3, 3, 3],
        &[4, 6],
    ] {
        let g = LGroup::new(ExponentSeq::new(p).unwrap());
        let kernel = g.degrees_with_z(0);
        assert_eq!(g.torsion_subgroup().order() as usize, kernel.len(), "{p:?}");
    }
}

#[test]
fn calabi_yau_sums() {
    for (p, holds) in [
        (&[3, 3, 3][..], true),
        (&[2, 2][..], true),
        (&[2, 3, 6][..], true),
        (&[2, 3, 5][..], false),
        (&[2, 4, 4][..], true),
    ] {
        assert_eq!(
            cy_check(&ExponentSeq::new(p).unwrap()).holds,
            holds,
            "{p:?}"
        );
    }
}
