use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::groups::GradingMap;
use crate::linalg::{content, primitive, solve_integer, IntMatrix, ZVec};

/// `P: Z^r → N` dual to `Q: Z^r → K`: the rows of `P` form a basis of
/// `ker Q` (torsion congruences included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaleTransform {
    pub p: IntMatrix,
    pub n_rank: usize,
    /// Each column `v_i` written as `multiplicity · primitive`.
    pub primitive_columns: Vec<(ZVec, BigInt)>,
    /// The kernel is zero; `P` has no rows.
    pub degenerate: bool,
}

pub fn gale_transform(q: &GradingMap) -> GaleTransform {
    let r = q.source_rank();
    let basis = q.kernel_basis();
    let n = basis.len();
    let p = IntMatrix::from_rows(basis, r);
    let primitive_columns = p
        .columns()
        .into_iter()
        .map(|c| {
            let m = content(&c);
            (primitive(&c), m)
        })
        .collect();
    GaleTransform {
        p,
        n_rank: n,
        primitive_columns,
        degenerate: n == 0,
    }
}

/// A unimodular `U` with `U·p = p2`, if one exists.
pub fn unimodular_certificate(p: &IntMatrix, p2: &IntMatrix) -> Option<IntMatrix> {
    if p.nrows() != p2.nrows() || p.ncols() != p2.ncols() {
        return None;
    }
    let rows = p.rows();
    let mut u = Vec::with_capacity(p2.nrows());
    for target in p2.rows() {
        u.push(solve_integer(rows, target)?);
    }
    let u = IntMatrix::from_rows(u, p.nrows());
    (u.mul(p) == *p2 && u.determinant().abs().is_one()).then_some(u)
}
