use std::collections::BTreeMap;

use bpcat_core::grading::{ExponentSeq, LGroup};
use bpcat_core::singcat::{
    ext_formula, ext_k_k, index_set, resolution_generators, vanishing_scan, GradedRing,
};

fn p(v: &[i64]) -> ExponentSeq {
    ExponentSeq::new(v).unwrap()
}

/// Coefficients of `(1 − t^ℓ) / Π (1 − t^{wᵢ})` up to `t^top`.
fn hilbert_oracle(ell: i64, weights: &[i64], top: usize) -> Vec<i64> {
    let mut series = vec![0i64; top + 1];
    series[0] = 1;
    for &w in weights {
        for k in w as usize..=top {
            series[k] += series[k - w as usize];
        }
    }
    let mut out = series.clone();
    for k in ell as usize..=top {
        out[k] -= series[k - ell as usize];
    }
    out
}

#[test]
fn hilbert_function_matches_series() {
    for v in [&[2, 3][..], &[3, 3], &[2, 2, 2], &[2, 3, 4], &[3, 4]] {
        let ring = GradedRing::new(p(v));
        let g = ring.group();
        let top = 3 * g.ell() as usize;
        let want = hilbert_oracle(g.ell(), g.weights(), top);
        for (z, &w) in want.iter().enumerate() {
            let got: usize = ring.pieces_with_z(z as i64).values().map(Vec::len).sum();
            assert_eq!(got as i64, w, "{v:?} at z = {z}");
        }
    }
}

#[test]
fn generator_degrees_are_two_periodic() {
    let seq = p(&[2, 3]);
    let g = LGroup::new(seq.clone());
    for i in seq.len()..=8 {
        let mut a: Vec<_> = resolution_generators(&g, i)
            .into_iter()
            .map(|gen| g.add(&gen.degree, &g.c()))
            .collect();
        let mut b: Vec<_> = resolution_generators(&g, i + 2)
            .into_iter()
            .map(|gen| gen.degree)
            .collect();
        a.sort();
        b.sort();
        assert_eq!(a, b, "i = {i}");
    }
}

#[test]
fn ext_matches_tensor_formula() {
    for (v, max_deg) in [
        (&[2, 3][..], 2),
        (&[3, 3], 2),
        (&[2, 2, 2], 3),
        (&[2, 3, 5], 3),
    ] {
        let seq = p(v);
        let idx = index_set(&seq);
        assert_eq!(idx.len(), seq.milnor_number());
        for m in &idx {
            for n in &idx {
                let lhs: BTreeMap<usize, usize> = ext_k_k(&seq, m, n)
                    .into_iter()
                    .filter(|(i, _)| *i <= max_deg)
                    .collect();
                assert_eq!(lhs, ext_formula(&seq, m, n).unwrap(), "{v:?}: {m} vs {n}");
            }
        }
    }
}

#[test]
fn first_vanishing_statement() {
    for v in [&[2, 3][..], &[3, 3], &[2, 2, 2]] {
        let scan = vanishing_scan(&p(v), 50);
        assert_eq!(scan.pairs_checked, 50);
        assert!(scan.pairs_outside_monoid > 0);
        assert!(scan.failures.is_empty(), "{v:?}");
    }
}
