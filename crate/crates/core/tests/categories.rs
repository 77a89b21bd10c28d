use bpcat_core::dgcat::{
    a_category, euler_matrix, formality_check, gauge_isomorphic, index_tuples, tensor, tensor_bp,
    validate, DirectedGradedCategory,
};
use bpcat_core::grading::ExponentSeq;
use bpcat_core::suspension::{dim_table, directed_extension, fukaya_bp, suspend};
use bpcat_core::twisted::{cone, hom_complex, TwistedObject};

fn p(v: &[i64]) -> ExponentSeq {
    ExponentSeq::new(v).unwrap()
}

fn sequences(max_n: usize, max_p: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..max_n {
        layer = layer
            .into_iter()
            .flat_map(|s| (2..=max_p).map(move |k| [s.clone(), vec![k]].concat()))
            .collect();
        out.extend(layer.clone());
    }
    out
}

fn a_fixtures() -> Vec<DirectedGradedCategory> {
    let mut v: Vec<_> = (1..=4).map(|m| a_category(m).unwrap()).collect();
    v.push(tensor(&a_category(1).unwrap(), &a_category(2).unwrap()));
    v.push(tensor_bp(&p(&[3, 3])));
    v
}

#[test]
fn euler_matrix_is_multiplicative() {
    let fixtures = a_fixtures();
    for a in &fixtures {
        for b in &fixtures {
            let t = tensor(a, b);
            assert_eq!(
                euler_matrix(&t),
                euler_matrix(a).kronecker(&euler_matrix(b))
            );
        }
    }
}

#[test]
fn tensor_models_are_valid_and_formal() {
    for s in sequences(3, 5) {
        let t = tensor_bp(&p(&s));
        assert!(formality_check(&t), "{s:?}");
        assert!(validate(&t).is_clean(), "{s:?}");
    }
}

#[test]
fn hom_complexes_square_to_zero() {
    // all pairs of single objects and cones of degree-0 maps over extensions
    for a in [
        a_category(2).unwrap(),
        tensor_bp(&p(&[2, 3])),
        tensor_bp(&p(&[3, 3])),
    ] {
        for k in 2..=4 {
            let ext = directed_extension(&a, k).unwrap();
            let base = &ext.category;
            let mut objects: Vec<TwistedObject> = (0..base.object_count())
                .map(|x| TwistedObject::single(base, x).unwrap())
                .collect();
            for (id, m) in base.morphisms().iter().enumerate() {
                if m.degree == 0 {
                    objects.push(
                        cone(
                            base,
                            &bpcat_core::dgcat::single(id, bpcat_core::exactlin::qi(1)),
                        )
                        .unwrap(),
                    );
                }
            }
            for x in &objects {
                for y in &objects {
                    let h = hom_complex(base, x, y).unwrap();
                    assert!(h.d_squared_is_zero());
                    // K-theoretic bilinearity of the Euler characteristic
                    let e = euler_matrix(base);
                    let mut chi = 0i64;
                    for cx in &x.components {
                        for cy in &y.components {
                            let sign = if (cx.shift - cy.shift).rem_euclid(2) == 0 {
                                1
                            } else {
                                -1
                            };
                            chi += sign * i64::try_from(e[(cx.object, cy.object)].clone()).unwrap();
                        }
                    }
                    assert_eq!(h.euler_characteristic(), chi);
                }
            }
        }
    }
}

#[test]
fn suspension_matches_tensor_dims() {
    for a in [
        a_category(1).unwrap(),
        a_category(3).unwrap(),
        tensor_bp(&p(&[3, 4])),
        tensor_bp(&p(&[2, 2, 3])),
    ] {
        for k in 2..=5 {
            let s = suspend(&a, k).unwrap();
            assert_eq!(s.object_count(), a.object_count() * (k - 1));
            let t = tensor(&a, &a_category(k - 1).unwrap());
            assert_eq!(dim_table(&s), dim_table(&t), "k = {k}");
            assert!(formality_check(&s));
            // validate covers associativity of class composition
            assert!(validate(&s).is_clean());
        }
        let s = suspend(&a, 2).unwrap();
        let bij: Vec<usize> = (0..a.object_count()).collect();
        assert!(gauge_isomorphic(&s, &a, &bij).unwrap().isomorphic);
    }
}

#[test]
fn suspension_order_does_not_matter() {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for base in [[2i64, 3, 4], [3, 3, 4], [2, 4, 3]] {
        let seq = p(&base);
        let reference = fukaya_bp(&seq, false).unwrap().category;
        let tuples = index_tuples(&seq);
        for perm in perms {
            let permuted: Vec<i64> = perm.iter().map(|&i| base[i]).collect();
            let pseq = p(&permuted);
            let other = fukaya_bp(&pseq, false).unwrap().category;
            let ptuples = index_tuples(&pseq);
            let bij: Vec<usize> = tuples
                .iter()
                .map(|t| {
                    let moved: Vec<u32> = perm.iter().map(|&i| t[i]).collect();
                    ptuples.iter().position(|u| *u == moved).unwrap()
                })
                .collect();
            let out = gauge_isomorphic(&reference, &other, &bij).unwrap();
            assert!(out.isomorphic, "{base:?} vs {permuted:?}: {:?}", out.reason);
        }
    }
}
