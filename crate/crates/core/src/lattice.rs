//! Integer lattices on the basis `I_p`: the Sebastiani–Thom product of type-A
//! lattices and the (anti)symmetrized Euler form of `tensor_bp(p)`.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dgcat::{euler_matrix, index_tuples, tensor_bp, tuple_label};
use crate::exactlin::IntMatrix;
use crate::grading::ExponentSeq;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Symmetric,
    Antisymmetric,
}

impl Parity {
    fn of(n: usize) -> Self {
        if n % 2 == 1 {
            Parity::Symmetric
        } else {
            Parity::Antisymmetric
        }
    }
}

/// Sign convention for the antisymmetrized Euler form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    /// `E − Eᵀ`
    #[default]
    Standard,
    /// `Eᵀ − E`
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearLattice {
    pub labels: Vec<String>,
    pub gram: IntMatrix,
    pub parity: Parity,
}

impl BilinearLattice {
    /// Gram matrix agrees with the parity flag.
    pub fn is_consistent(&self) -> bool {
        let g = &self.gram;
        let t = g.transpose();
        match self.parity {
            Parity::Symmetric => *g == t,
            Parity::Antisymmetric => *g == -&t && (0..g.rows()).all(|i| g[(i, i)].is_zero()),
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }
}

fn labels(p: &ExponentSeq) -> Vec<String> {
    index_tuples(p).iter().map(|t| tuple_label(t)).collect()
}

/// Type-A form on one coordinate: 2 on the diagonal, −1 for neighbours.
fn a_form(i: u32, j: u32) -> i64 {
    match i.abs_diff(j) {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

/// Product formula: for `𝐢 < 𝐣` the entry is `Π (C_{i_k}, C_{j_k})` when
/// `i_k ≤ j_k` for every `k`, else 0. The lower triangle follows from parity
/// and the diagonal is 2 (n odd) or 0 (n even).
pub fn st_gram(p: &ExponentSeq) -> BilinearLattice {
    let tuples = index_tuples(p);
    let parity = Parity::of(p.len());
    let m = tuples.len();
    let mut gram = IntMatrix::zeros(m, m);
    for a in 0..m {
        gram[(a, a)] = BigInt::from(if parity == Parity::Symmetric { 2 } else { 0 });
        for b in a + 1..m {
            let (s, t) = (&tuples[a], &tuples[b]);
            let v: i64 = if s.iter().zip(t).all(|(x, y)| x <= y) {
                s.iter().zip(t).map(|(&x, &y)| a_form(x, y)).product()
            } else {
                0
            };
            gram[(a, b)] = BigInt::from(v);
            gram[(b, a)] = match parity {
                Parity::Symmetric => BigInt::from(v),
                Parity::Antisymmetric => BigInt::from(-v),
            };
        }
    }
    BilinearLattice {
        labels: labels(p),
        gram,
        parity,
    }
}

/// `E + Eᵀ` for odd `n`, `±(E − Eᵀ)` for even `n`, where `E` is the Euler
/// matrix of `tensor_bp(p)`.
pub fn euler_gram(p: &ExponentSeq, orientation: Orientation) -> BilinearLattice {
    let e = euler_matrix(&tensor_bp(p));
    let et = e.transpose();
    let parity = Parity::of(p.len());
    let gram = match (parity, orientation) {
        (Parity::Symmetric, _) => &e + &et,
        (Parity::Antisymmetric, Orientation::Standard) => &e - &et,
        (Parity::Antisymmetric, Orientation::Reversed) => &et - &e,
    };
    BilinearLattice {
        labels: labels(p),
        gram,
        parity,
    }
}

/// Cartan matrix of `A_m`.
pub fn cartan_a(m: usize) -> IntMatrix {
    IntMatrix::from_fn(m, m, |i, j| BigInt::from(a_form(i as u32, j as u32)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryDiff {
    pub row: String,
    pub col: String,
    pub st: BigInt,
    pub euler: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeComparison {
    pub p: ExponentSeq,
    pub st: BilinearLattice,
    pub euler: BilinearLattice,
    /// Number of agreeing entries `(a, b)` with `a ≤ b`.
    pub agreeing: usize,
    /// Disagreeing entries `(a, b)` with `a ≤ b`; the rest follow by parity.
    pub disagreeing: Vec<EntryDiff>,
}

impl LatticeComparison {
    pub fn agrees(&self) -> bool {
        self.disagreeing.is_empty()
    }
}

pub fn compare(p: &ExponentSeq) -> LatticeComparison {
    let st = st_gram(p);
    let euler = euler_gram(p, Orientation::Standard);
    let m = st.rank();
    let mut agreeing = 0;
    let mut disagreeing = Vec::new();
    for a in 0..m {
        for b in a..m {
            let (x, y) = (&st.gram[(a, b)], &euler.gram[(a, b)]);
            if x == y {
                agreeing += 1;
            } else {
                disagreeing.push(EntryDiff {
                    row: st.labels[a].clone(),
                    col: st.labels[b].clone(),
                    st: x.clone(),
                    euler: y.clone(),
                });
            }
        }
    }
    LatticeComparison {
        p: p.clone(),
        st,
        euler,
        agreeing,
        disagreeing,
    }
}

/// `det` of a Gram matrix, `1` for rank 0.
pub fn determinant(l: &BilinearLattice) -> BigInt {
    if l.rank() == 0 {
        BigInt::one()
    } else {
        l.gram.determinant()
    }
}
