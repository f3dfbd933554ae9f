//! Finitely generated abelian groups `Z^k ⊕ Z/d_1 ⊕ … ⊕ Z/d_t`, grading maps
//! `Z^r → K`, and subgroups with a canonical basis.
//!
//! A subgroup of `K` is stored as the lattice `L ⊆ Z^(k+t)` of all lifts of
//! its elements; `L` always contains the relation lattice `0 ⊕ d_1 Z ⊕ … ⊕ d_t Z`.
//! The canonical basis is the row Hermite normal form of `L`, so two equal
//! subgroups have literally equal bases.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, is_zero_vec, row_lattice_basis, solve_integer, IntMatrix, ZVec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// `Z^rank ⊕ Z/d_1 ⊕ …`; the orders must already be in invariant-factor form.
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (i, d) in torsion.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(Error::Invalid(format!("torsion order {d} is smaller than 2")));
            }
            if i + 1 < torsion.len() && !(&torsion[i + 1] % d).is_zero() {
                return Err(Error::Invalid(format!(
                    "torsion orders {d} and {} are not in divisibility order",
                    torsion[i + 1]
                )));
            }
        }
        Ok(Self { rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of coordinates of a lift: `k + t`.
    pub fn lift_dim(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.rank],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }

    pub fn element(&self, free: ZVec, torsion: ZVec) -> Result<GroupElement> {
        if free.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: free.len(),
            });
        }
        if torsion.len() != self.torsion.len() {
            return Err(Error::DimensionMismatch {
                expected: self.torsion.len(),
                found: torsion.len(),
            });
        }
        let torsion = torsion.iter().zip(&self.torsion).map(|(x, d)| x.mod_floor(d)).collect();
        Ok(GroupElement { free, torsion })
    }

    pub fn element_i64(&self, free: &[i64], torsion: &[i64]) -> Result<GroupElement> {
        self.element(crate::linalg::zvec(free), crate::linalg::zvec(torsion))
    }

    /// Element with the given lift coordinates (first `k` free, then residues).
    pub fn from_lift(&self, lift: &[BigInt]) -> GroupElement {
        let free = lift[..self.rank].to_vec();
        let torsion = lift[self.rank..]
            .iter()
            .zip(&self.torsion)
            .map(|(x, d)| x.mod_floor(d))
            .collect();
        GroupElement { free, torsion }
    }

    /// Generators `d_i e_(k+i)` of the relation lattice.
    fn relation_rows(&self) -> Vec<ZVec> {
        let n = self.lift_dim();
        self.torsion
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut v = vec![BigInt::zero(); n];
                v[self.rank + i] = d.clone();
                v
            })
            .collect()
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.from_lift(&crate::linalg::add(&a.lift(), &b.lift()))
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.from_lift(&crate::linalg::sub(&a.lift(), &b.lift()))
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.from_lift(&crate::linalg::neg(&a.lift()))
    }

    pub fn scale(&self, c: &BigInt, a: &GroupElement) -> GroupElement {
        self.from_lift(&crate::linalg::scale(c, &a.lift()))
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }

    /// The group with the given (arbitrary, possibly 0 or 1) cyclic orders,
    /// brought into invariant-factor form. A zero order is a free summand.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, d) in orders.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        let snf = smith_normal_form(&m);
        let diag = snf.diagonal();
        let rank = diag.iter().filter(|d| d.is_zero()).count();
        let torsion = diag.into_iter().filter(|d| d > &BigInt::one()).collect();
        Self { rank, torsion }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.rank)
            });
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    free: ZVec,
    torsion: ZVec,
}

impl GroupElement {
    pub fn free(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn lift(&self) -> ZVec {
        let mut v = self.free.clone();
        v.extend(self.torsion.iter().cloned());
        v
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.free) && is_zero_vec(&self.torsion)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        if self.torsion.is_empty() {
            write!(f, "({})", free.join(","))
        } else {
            let tors: Vec<String> = self.torsion.iter().map(|t| format!("{t}̄")).collect();
            write!(f, "({}|{})", free.join(","), tors.join(","))
        }
    }
}

/// `Q: Z^r → K`, given by the images of the canonical basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingMap {
    target: AbelianGroup,
    columns: Vec<GroupElement>,
}

impl GradingMap {
    pub fn new(target: AbelianGroup, columns: Vec<GroupElement>) -> Result<Self> {
        for c in &columns {
            if c.free.len() != target.rank || c.torsion.len() != target.torsion.len() {
                return Err(Error::Invalid("grading column does not fit the target group".into()));
            }
        }
        let columns = columns.iter().map(|c| target.from_lift(&c.lift())).collect();
        Ok(Self { target, columns })
    }

    /// From free rows (`k × r`) and torsion rows (`t × r`).
    pub fn from_rows(target: AbelianGroup, free_rows: &[ZVec], torsion_rows: &[ZVec]) -> Result<Self> {
        if free_rows.len() != target.rank {
            return Err(Error::DimensionMismatch {
                expected: target.rank,
                found: free_rows.len(),
            });
        }
        if torsion_rows.len() != target.torsion.len() {
            return Err(Error::DimensionMismatch {
                expected: target.torsion.len(),
                found: torsion_rows.len(),
            });
        }
        let r = free_rows.first().or(torsion_rows.first()).map_or(0, Vec::len);
        if free_rows.iter().chain(torsion_rows).any(|row| row.len() != r) {
            return Err(Error::Invalid("grading rows have different lengths".into()));
        }
        let columns = (0..r)
            .map(|j| {
                let free = free_rows.iter().map(|row| row[j].clone()).collect();
                let tors = torsion_rows.iter().map(|row| row[j].clone()).collect();
                target.element(free, tors)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { target, columns })
    }

    /// Torsion-free grading from an integer matrix whose columns are the weights.
    pub fn free_from_matrix(q: &IntMatrix) -> Self {
        let target = AbelianGroup::free(q.nrows());
        let columns = q
            .columns()
            .into_iter()
            .map(|c| GroupElement {
                free: c,
                torsion: Vec::new(),
            })
            .collect();
        Self { target, columns }
    }

    pub fn source_rank(&self) -> usize {
        self.columns.len()
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn columns(&self) -> &[GroupElement] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &GroupElement {
        &self.columns[i]
    }

    /// Free coordinates of the columns as a `k × r` matrix; torsion dropped.
    pub fn free_part(&self) -> IntMatrix {
        IntMatrix::from_columns(
            &self.columns.iter().map(|c| c.free.clone()).collect::<Vec<_>>(),
            self.target.rank,
        )
    }

    pub fn torsion_rows(&self) -> Vec<ZVec> {
        (0..self.target.torsion.len())
            .map(|i| self.columns.iter().map(|c| c.torsion[i].clone()).collect())
            .collect()
    }

    /// Free weight vectors `w_i^0`.
    pub fn free_weights(&self) -> Vec<ZVec> {
        self.columns.iter().map(|c| c.free.clone()).collect()
    }

    pub fn apply(&self, x: &[BigInt]) -> GroupElement {
        assert_eq!(x.len(), self.columns.len());
        let mut acc = vec![BigInt::zero(); self.target.lift_dim()];
        for (c, xi) in self.columns.iter().zip(x) {
            if xi.is_zero() {
                continue;
            }
            for (a, l) in acc.iter_mut().zip(c.lift()) {
                *a += xi * l;
            }
        }
        self.target.from_lift(&acc)
    }

    /// The augmented integer matrix `[[Q_free, 0], [Q_tors, diag(d)]]`; its
    /// integer kernel projected to the first `r` coordinates is `ker Q`.
    pub fn augmented_matrix(&self) -> IntMatrix {
        let r = self.columns.len();
        let k = self.target.rank;
        let t = self.target.torsion.len();
        let mut m = IntMatrix::zeros(k + t, r + t);
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c.lift().into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        for (i, d) in self.target.torsion.iter().enumerate() {
            m.set(k + i, r + i, d.clone());
        }
        m
    }

    /// A basis of `ker(Q) ⊆ Z^r`, rows in Hermite normal form.
    pub fn kernel_basis(&self) -> Vec<ZVec> {
        let r = self.columns.len();
        let aug = self.augmented_matrix();
        let k: Vec<ZVec> = integer_kernel(&aug).into_iter().map(|v| v[..r].to_vec()).collect();
        row_lattice_basis(&k, r)
    }

    pub fn restrict_columns(&self, idx: &[usize]) -> Self {
        Self {
            target: self.target.clone(),
            columns: idx.iter().map(|&i| self.columns[i].clone()).collect(),
        }
    }

    /// `Q` followed by a permutation of the source basis: column `i` of the
    /// result is column `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        self.restrict_columns(perm)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Index {
    pub fn is_one(&self) -> bool {
        matches!(self, Index::Finite(d) if d.is_one())
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(d) => write!(f, "{d}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ambient: AbelianGroup,
    basis: Vec<ZVec>,
}

impl Subgroup {
    pub fn generated_by(ambient: &AbelianGroup, generators: &[GroupElement]) -> Self {
        let mut rows: Vec<ZVec> = generators.iter().map(GroupElement::lift).collect();
        rows.extend(ambient.relation_rows());
        let basis = row_lattice_basis(&rows, ambient.lift_dim());
        Self {
            ambient: ambient.clone(),
            basis,
        }
    }

    pub fn full(ambient: &AbelianGroup) -> Self {
        let n = ambient.lift_dim();
        let rows = IntMatrix::identity(n).into_rows();
        Self {
            ambient: ambient.clone(),
            basis: row_lattice_basis(&rows, n),
        }
    }

    pub fn ambient(&self) -> &AbelianGroup {
        &self.ambient
    }

    /// Canonical basis of the lifted lattice (row Hermite normal form).
    pub fn lattice_basis(&self) -> &[ZVec] {
        &self.basis
    }

    /// Canonical generators as group elements, zero elements omitted.
    pub fn generators(&self) -> Vec<GroupElement> {
        self.basis
            .iter()
            .map(|b| self.ambient.from_lift(b))
            .filter(|g| !g.is_zero())
            .collect()
    }

    pub fn contains(&self, w: &GroupElement) -> bool {
        solve_integer(&self.basis, &w.lift()).is_some()
    }

    /// Number of cosets of the subgroup in the ambient group.
    pub fn index(&self) -> Index {
        let n = self.ambient.lift_dim();
        if self.basis.len() < n {
            return Index::Infinite;
        }
        let m = IntMatrix::from_rows(self.basis.clone(), n);
        Index::Finite(m.determinant().abs())
    }

    pub fn is_full(&self) -> bool {
        self.index().is_one()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| solve_integer(&other.basis, b).is_some())
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let n = self.ambient.lift_dim();
        let n1 = self.basis.len();
        // x B1 - y B2 = 0
        let mut cols: Vec<ZVec> = self.basis.clone();
        cols.extend(other.basis.iter().map(|b| crate::linalg::neg(b)));
        let m = IntMatrix::from_columns(&cols, n);
        let kernel = integer_kernel(&m);
        let mut rows = Vec::with_capacity(kernel.len());
        for k in &kernel {
            let mut v = vec![BigInt::zero(); n];
            for (c, b) in k[..n1].iter().zip(&self.basis) {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += c * bi;
                }
            }
            rows.push(v);
        }
        rows.extend(self.ambient.relation_rows());
        Ok(Subgroup {
            ambient: self.ambient.clone(),
            basis: row_lattice_basis(&rows, n),
        })
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(ToString::to_string).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal with
/// nonnegative entries `d_1 | d_2 | …`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let m = a.nrows();
    let n = a.ncols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let steps = m.min(n);
    let mut t = 0;
    while t < steps {
        // smallest nonzero entry of the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut clean = true;
        for i in t + 1..m {
            let q = d.get(i, t).div_floor(d.get(t, t));
            if !q.is_zero() {
                let mq = -q;
                d.add_row_multiple(i, t, &mq);
                u.add_row_multiple(i, t, &mq);
            }
            if !d.get(i, t).is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            let q = d.get(t, j).div_floor(d.get(t, t));
            if !q.is_zero() {
                let mq = -q;
                d.add_col_multiple(j, t, &mq);
                v.add_col_multiple(j, t, &mq);
            }
            if !d.get(t, j).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        let piv = d.get(t, t).clone();
        let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(d.get(i, j) % &piv).is_zero()));
        if let Some(i) = bad {
            let one = BigInt::one();
            d.add_row_multiple(t, i, &one);
            u.add_row_multiple(t, i, &one);
            continue;
        }
        if piv.is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithForm { u, d, v }
}

/// The subgroup `Q(lin(γ_0) ∩ E)` generated by the selected columns, and its index.
pub fn sublattice_image(q: &GradingMap, indices: &[usize]) -> (Subgroup, Index) {
    let gens: Vec<GroupElement> = indices.iter().map(|&i| q.columns[i].clone()).collect();
    let s = Subgroup::generated_by(&q.target, &gens);
    let idx = s.index();
    (s, idx)
}

pub fn subgroup_intersect(subgroups: &[Subgroup]) -> Result<Subgroup> {
    let (first, rest) = subgroups.split_first().ok_or(Error::NothingToIntersect)?;
    rest.iter().try_fold(first.clone(), |acc, s| acc.intersect(s))
}

pub fn free_part(q: &GradingMap) -> IntMatrix {
    q.free_part()
}

/// The cokernel `Z^r / (row space of P)` together with the quotient map,
/// i.e. the grading `Q` with `ker Q = rows(P)` when the row lattice is
/// saturated. Free rows are put in Hermite normal form and residues reduced.
pub fn cokernel_grading(p: &IntMatrix) -> GradingMap {
    let r = p.ncols();
    // U · P^T · V = D; coordinates of U·x are the cokernel coordinates
    let snf = smith_normal_form(&p.transpose());
    let diag = snf.diagonal();
    let mut free_rows = Vec::new();
    let mut torsion = Vec::new();
    let mut torsion_rows = Vec::new();
    for i in 0..r {
        let di = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if di.is_zero() {
            free_rows.push(snf.u.row(i).to_vec());
        } else if di > BigInt::one() {
            torsion.push(di.clone());
            torsion_rows.push(snf.u.row(i).iter().map(|x| x.mod_floor(&di)).collect::<ZVec>());
        }
    }
    let free_rows = if free_rows.is_empty() {
        free_rows
    } else {
        row_lattice_basis(&free_rows, r)
    };
    let target = AbelianGroup {
        rank: free_rows.len(),
        torsion,
    };
    GradingMap::from_rows(target, &free_rows, &torsion_rows).expect("cokernel shape")
}
