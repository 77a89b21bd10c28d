use alloc::vec::Vec;
use core::fmt;

use super::{DirectedGradedCategory, MorphismId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A basis morphism goes against the object order.
    NotDirected {
        morphism: MorphismId,
    },
    /// `hom(X, X)` is not spanned by the identity alone.
    EndomorphismNotIdentity {
        object: usize,
    },
    IdentityDegree {
        object: usize,
    },
    /// A stored composite for a pair that is not composable.
    NotComposable {
        g: MorphismId,
        f: MorphismId,
    },
    /// An identity appears in the stored composition table.
    StoredIdentity {
        g: MorphismId,
        f: MorphismId,
    },
    /// A term of `g ∘ f` lies outside `hom(src f, tgt g)` or has the wrong degree.
    DegreeMismatch {
        g: MorphismId,
        f: MorphismId,
        term: MorphismId,
    },
    NotAssociative {
        h: MorphismId,
        g: MorphismId,
        f: MorphismId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotDirected { morphism } => {
                write!(f, "morphism #{morphism} goes against the object order")
            }
            Violation::EndomorphismNotIdentity { object } => {
                write!(f, "End(object #{object}) is not spanned by the identity")
            }
            Violation::IdentityDegree { object } => {
                write!(f, "identity of object #{object} has nonzero degree")
            }
            Violation::NotComposable { g, f: ff } => {
                write!(f, "composite #{g}∘#{ff} stored for a non-composable pair")
            }
            Violation::StoredIdentity { g, f: ff } => {
                write!(f, "composite #{g}∘#{ff} involves an identity")
            }
            Violation::DegreeMismatch { g, f: ff, term } => {
                write!(
                    f,
                    "term #{term} of #{g}∘#{ff} has the wrong endpoints or degree"
                )
            }
            Violation::NotAssociative { h, g, f: ff } => {
                write!(f, "(#{h}∘#{g})∘#{ff} ≠ #{h}∘(#{g}∘#{ff})")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks directedness, strict units, degree additivity and associativity
/// over all composable triples.
pub fn validate(c: &DirectedGradedCategory) -> ValidationReport {
    let mut violations = Vec::new();
    let n = c.object_count();

    for (id, m) in c.morphisms().iter().enumerate() {
        if m.src > m.tgt || m.src >= n || m.tgt >= n {
            violations.push(Violation::NotDirected { morphism: id });
        }
    }
    for x in 0..n {
        let id = c.identity(x);
        if c.hom(x, x) != [id] {
            violations.push(Violation::EndomorphismNotIdentity { object: x });
        }
        if c.morphism(id).degree != 0 {
            violations.push(Violation::IdentityDegree { object: x });
        }
    }
    for (&(g, f), value) in c.comp_table() {
        let (mg, mf) = (c.morphism(g), c.morphism(f));
        if mf.tgt != mg.src {
            violations.push(Violation::NotComposable { g, f });
            continue;
        }
        if c.is_identity(g) || c.is_identity(f) {
            violations.push(Violation::StoredIdentity { g, f });
        }
        for &term in value.keys() {
            let mt = c.morphism(term);
            if mt.src != mf.src || mt.tgt != mg.tgt || mt.degree != mf.degree + mg.degree {
                violations.push(Violation::DegreeMismatch { g, f, term });
            }
        }
    }

    let pairs = c.composable_pairs();
    for &(g, f) in &pairs {
        let gf = c.compose(g, f);
        let y = c.morphism(g).tgt;
        for z in y..n {
            for &h in c.hom(y, z) {
                if c.is_identity(h) {
                    continue;
                }
                let hg = c.compose(h, g);
                let left = c.compose_lin(&hg, &super::single(f, num_traits::One::one()));
                let right = c.compose_lin(&super::single(h, num_traits::One::one()), &gf);
                if left != right {
                    violations.push(Violation::NotAssociative { h, g, f });
                }
            }
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::{a_category, single, tensor_bp, CategoryBuilder};
    use crate::exactlin::qi;
    use crate::grading::ExponentSeq;

    #[test]
    fn constructed_categories_are_clean() {
        assert!(validate(&a_category(3).unwrap()).is_clean());
        let p = ExponentSeq::new(&[2, 3, 3]).unwrap();
        assert!(validate(&tensor_bp(&p)).is_clean());
    }

    #[test]
    fn broken_associativity_is_located() {
        // X0 → X1 → X2 → X3 with all composites nonzero, then one coefficient
        // of a triple composite perturbed.
        let mut b = CategoryBuilder::new();
        for i in 0..4 {
            b.add_object(alloc::format!("X{i}"));
        }
        let f = b.add_morphism(0, 1, 0, "f");
        let g = b.add_morphism(1, 2, 0, "g");
        let h = b.add_morphism(2, 3, 0, "h");
        let gf = b.add_morphism(0, 2, 0, "gf");
        let hg = b.add_morphism(1, 3, 0, "hg");
        let hgf = b.add_morphism(0, 3, 0, "hgf");
        b.set_comp(g, f, single(gf, qi(1)));
        b.set_comp(h, g, single(hg, qi(1)));
        b.set_comp(h, gf, single(hgf, qi(1)));
        b.set_comp(hg, f, single(hgf, qi(2)));
        let report = validate(&b.build());
        assert_eq!(report.violations, [Violation::NotAssociative { h, g, f }]);
    }
}
