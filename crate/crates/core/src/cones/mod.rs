//! Rational polyhedral cones in `Q^n`, kept in both representations.
//!
//! A cone is `lin(L) + cone(R)`, and at the same time
//! `{x : a·x ≥ 0 for a in facets, e·x = 0 for e in equations}`. Both sides are
//! stored in a canonical form, so `==` is equality of point sets.

mod dd;
mod fan;
mod gale;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{clear_denominators, dot, fmt_vec, is_zero_vec, primitive, project_away, subspace_basis, ZVec};

pub use fan::{stellar_subdivide, Fan};
pub use gale::{gale_transform, unimodular_certificate, GaleTransform};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    dim_ambient: usize,
    rays: Vec<ZVec>,
    lineality: Vec<ZVec>,
    facets: Vec<ZVec>,
    equations: Vec<ZVec>,
}

impl Cone {
    /// `cone(rays) + lin(lineality)`.
    pub fn new(n: usize, rays: &[ZVec], lineality: &[ZVec]) -> Result<Self> {
        check_dims(n, rays.iter().chain(lineality))?;
        let h = dd::double_description(rays, lineality, n);
        let v = dd::double_description(&h.rays, &h.lineality, n);
        Ok(Self::assemble(n, v.rays, v.lineality, h.rays, h.lineality))
    }

    pub fn generated_by(n: usize, rays: &[ZVec]) -> Result<Self> {
        Self::new(n, rays, &[])
    }

    /// `{x : a·x ≥ 0 for a in ineqs, e·x = 0 for e in eqs}`.
    pub fn from_inequalities(n: usize, ineqs: &[ZVec], eqs: &[ZVec]) -> Result<Self> {
        check_dims(n, ineqs.iter().chain(eqs))?;
        let v = dd::double_description(ineqs, eqs, n);
        let h = dd::double_description(&v.rays, &v.lineality, n);
        Ok(Self::assemble(n, v.rays, v.lineality, h.rays, h.lineality))
    }

    fn assemble(n: usize, rays: Vec<ZVec>, lin: Vec<ZVec>, facets: Vec<ZVec>, eqs: Vec<ZVec>) -> Self {
        let lineality = subspace_basis(&lin, n);
        let equations = subspace_basis(&eqs, n);
        Self {
            dim_ambient: n,
            rays: canonical_rays(&rays, &lineality),
            facets: canonical_rays(&facets, &equations),
            lineality,
            equations,
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, &[], &[]).expect("dimension")
    }

    pub fn full(n: usize) -> Self {
        let e: Vec<ZVec> = crate::linalg::IntMatrix::identity(n).into_rows();
        Self::new(n, &[], &e).expect("dimension")
    }

    /// The positive orthant spanned by the selected unit vectors.
    pub fn orthant_face(n: usize, indices: &[usize]) -> Self {
        let id = crate::linalg::IntMatrix::identity(n);
        let rays: Vec<ZVec> = indices.iter().map(|&i| id.row(i).to_vec()).collect();
        Self::generated_by(n, &rays).expect("dimension")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_ambient
    }

    /// Extreme rays modulo the lineality space (primitive, sorted).
    pub fn rays(&self) -> &[ZVec] {
        &self.rays
    }

    pub fn lineality_basis(&self) -> &[ZVec] {
        &self.lineality
    }

    /// Inner facet normals `a` with `a·x ≥ 0` on the cone.
    pub fn facet_normals(&self) -> &[ZVec] {
        &self.facets
    }

    /// Basis of the orthogonal complement of the linear span.
    pub fn equations(&self) -> &[ZVec] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.dim_ambient - self.equations.len()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.dim()
    }

    /// Generators of the cone as a set: rays plus both signs of the lineality basis.
    pub fn all_generators(&self) -> Vec<ZVec> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(crate::linalg::neg(l));
        }
        g
    }

    pub fn dual(&self) -> Cone {
        Cone {
            dim_ambient: self.dim_ambient,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        self.same_dim(other)?;
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.dim_ambient, &ineqs, &eqs)
    }

    pub fn intersect_all<'a>(n: usize, cones: impl IntoIterator<Item = &'a Cone>) -> Result<Cone> {
        let mut ineqs = Vec::new();
        let mut eqs = Vec::new();
        for c in cones {
            if c.dim_ambient != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.dim_ambient,
                });
            }
            ineqs.extend(c.facets.iter().cloned());
            eqs.extend(c.equations.iter().cloned());
        }
        Cone::from_inequalities(n, &ineqs, &eqs)
    }

    /// Smallest cone containing both.
    pub fn join(&self, other: &Cone) -> Result<Cone> {
        self.same_dim(other)?;
        let mut rays = self.rays.clone();
        rays.extend(other.rays.iter().cloned());
        let mut lin = self.lineality.clone();
        lin.extend(other.lineality.iter().cloned());
        Cone::new(self.dim_ambient, &rays, &lin)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(e, v).is_zero()) && self.facets.iter().all(|a| !dot(a, v).is_negative())
    }

    pub fn contains_rational(&self, v: &[BigRational]) -> bool {
        self.contains(&clear_denominators(v))
    }

    pub fn rel_interior_contains(&self, v: &[BigInt]) -> Result<bool> {
        if v.len() != self.dim_ambient {
            return Err(Error::DimensionMismatch {
                expected: self.dim_ambient,
                found: v.len(),
            });
        }
        Ok(self.equations.iter().all(|e| dot(e, v).is_zero()) && self.facets.iter().all(|a| dot(a, v).is_positive()))
    }

    pub fn rel_interior_contains_rational(&self, v: &[BigRational]) -> Result<bool> {
        self.rel_interior_contains(&clear_denominators(v))
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.dim_ambient == self.dim_ambient && other.all_generators().iter().all(|g| self.contains(g))
    }

    /// A point of the relative interior: the sum of the extreme rays.
    pub fn interior_point(&self) -> ZVec {
        let mut p = vec![BigInt::zero(); self.dim_ambient];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    /// Whether `self° ⊆ other°`.
    pub fn relint_subset(&self, other: &Cone) -> bool {
        other.contains_cone(self) && other.rel_interior_contains(&self.interior_point()).unwrap_or(false)
    }

    /// Whether `self° ∩ other° ≠ ∅`.
    pub fn interiors_meet(&self, other: &Cone) -> bool {
        let Ok(meet) = self.intersect(other) else { return false };
        let p = meet.interior_point();
        self.rel_interior_contains(&p).unwrap_or(false) && other.rel_interior_contains(&p).unwrap_or(false)
    }

    /// The face cut out by the facets containing the point `v`.
    pub fn minimal_face_containing(&self, v: &[BigInt]) -> Cone {
        let tight: Vec<ZVec> = self.facets.iter().filter(|a| dot(a, v).is_zero()).cloned().collect();
        self.face_from_tight(&tight)
    }

    fn face_from_tight(&self, tight: &[ZVec]) -> Cone {
        let mut eqs = self.equations.clone();
        eqs.extend(tight.iter().cloned());
        Cone::from_inequalities(self.dim_ambient, &self.facets, &eqs).expect("dimension")
    }

    pub fn is_face_of(&self, c: &Cone) -> Result<bool> {
        self.same_dim(c)?;
        if !c.contains_cone(self) {
            return Ok(false);
        }
        let gens = self.all_generators();
        let tight: Vec<ZVec> = c
            .facets
            .iter()
            .filter(|a| gens.iter().all(|g| dot(a, g).is_zero()))
            .cloned()
            .collect();
        Ok(c.face_from_tight(&tight) == *self)
    }

    /// All faces, the cone itself included, in canonical order.
    pub fn all_faces(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Cone> = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            if seen.contains(&c) {
                continue;
            }
            for a in &c.facets {
                stack.push(c.face_from_tight(std::slice::from_ref(a)));
            }
            seen.insert(c);
        }
        seen.into_iter().collect()
    }

    pub fn faces(&self, d: usize) -> Vec<Cone> {
        self.all_faces().into_iter().filter(|f| f.dim() == d).collect()
    }

    /// Facets as cones.
    pub fn facets(&self) -> Vec<Cone> {
        self.facets
            .iter()
            .map(|a| self.face_from_tight(std::slice::from_ref(a)))
            .collect()
    }

    /// Image under the linear map with the given matrix rows (`m × n`).
    pub fn image(&self, rows: &[ZVec]) -> Cone {
        let m = rows.len();
        let apply = |v: &ZVec| -> ZVec { rows.iter().map(|r| dot(r, v)).collect() };
        let rays: Vec<ZVec> = self.rays.iter().map(apply).collect();
        let lin: Vec<ZVec> = self.lineality.iter().map(apply).collect();
        Cone::new(m, &rays, &lin).expect("dimension")
    }

    fn same_dim(&self, other: &Cone) -> Result<()> {
        if self.dim_ambient != other.dim_ambient {
            return Err(Error::DimensionMismatch {
                expected: self.dim_ambient,
                found: other.dim_ambient,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(|r| fmt_vec(r)).collect();
        write!(f, "cone({})", rays.join(","))?;
        if !self.lineality.is_empty() {
            let lin: Vec<String> = self.lineality.iter().map(|r| fmt_vec(r)).collect();
            write!(f, " + lin({})", lin.join(","))?;
        }
        Ok(())
    }
}

fn check_dims<'a>(n: usize, vs: impl Iterator<Item = &'a ZVec>) -> Result<()> {
    for v in vs {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    Ok(())
}

fn canonical_rays(rays: &[ZVec], lineality: &[ZVec]) -> Vec<ZVec> {
    let set: BTreeSet<ZVec> = rays
        .iter()
        .map(|r| {
            if lineality.is_empty() {
                primitive(r)
            } else {
                project_away(r, lineality)
            }
        })
        .filter(|r| !is_zero_vec(r))
        .collect();
    set.into_iter().collect()
}

/// Set of coordinate indices of a face `γ_0 = cone(e_i : i ∈ I)` of the
/// positive orthant. Indices are zero-based; display is one-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FaceOfOrthant {
    indices: Vec<usize>,
}

impl FaceOfOrthant {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        Self {
            indices: set.into_iter().collect(),
        }
    }

    pub fn full(r: usize) -> Self {
        Self {
            indices: (0..r).collect(),
        }
    }

    pub fn from_mask(mask: u64, r: usize) -> Self {
        Self {
            indices: (0..r).filter(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &FaceOfOrthant) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }

    pub fn without(&self, i: usize) -> Self {
        Self {
            indices: self.indices.iter().copied().filter(|&j| j != i).collect(),
        }
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for FaceOfOrthant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// `γ_0 ↦ γ_0^*`, realized on index sets as the complement in `{0..r}`.
pub fn face_correspondence(gamma0: &FaceOfOrthant, r: usize) -> FaceOfOrthant {
    FaceOfOrthant::new((0..r).filter(|&i| !gamma0.contains(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::zvec;

    fn c(rays: &[&[i64]]) -> Cone {
        let n = rays[0].len();
        Cone::generated_by(n, &rays.iter().map(|r| zvec(r)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn orthant_is_self_dual() {
        let o = c(&[&[1, 0], &[0, 1]]);
        assert_eq!(o.dual(), o);
        assert_eq!(o.facet_normals(), &[zvec(&[0, 1]), zvec(&[1, 0])][..]);
    }

    #[test]
    fn dual_of_ray_is_halfplane() {
        let d = c(&[&[1, 0]]).dual();
        let half = Cone::new(2, &[zvec(&[1, 0])], &[zvec(&[0, 1])]).unwrap();
        assert_eq!(d, half);
        let alt = c(&[&[1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(alt, half);
        assert_eq!(d.lineality_dim(), 1);
    }

    #[test]
    fn dual_of_skew_cone() {
        let d = c(&[&[2, 1], &[1, 2]]).dual();
        assert_eq!(d, c(&[&[2, -1], &[-1, 2]]));
    }

    #[test]
    fn intersections() {
        let a = c(&[&[-1, 1], &[1, 1]]);
        let b = c(&[&[-1, 0], &[1, 2]]);
        assert_eq!(a.intersect(&b).unwrap(), c(&[&[-1, 1], &[1, 2]]));
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert!(c(&[&[1, 0]]).intersect(&c(&[&[-1, 0]])).unwrap().is_zero());
        assert!(a.intersect(&Cone::zero(3)).is_err());
    }

    #[test]
    fn interior_membership() {
        let mov = c(&[&[-1, 1], &[1, 2]]);
        assert!(mov.rel_interior_contains(&zvec(&[0, 1])).unwrap());
        assert!(!mov.rel_interior_contains(&zvec(&[-1, 1])).unwrap());
        assert!(Cone::zero(2).rel_interior_contains(&zvec(&[0, 0])).unwrap());
        assert!(mov.rel_interior_contains(&zvec(&[0])).is_err());
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let k = c(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[2, 1, 0]]);
        assert_eq!(k.rays(), &[zvec(&[0, 1, 0]), zvec(&[1, 0, 0])][..]);
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn faces_of_square_cone() {
        let k = c(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        assert_eq!(k.faces(0).len(), 1);
        assert_eq!(k.faces(1).len(), 4);
        assert_eq!(k.faces(2).len(), 4);
        assert_eq!(k.faces(3).len(), 1);
        let edge = c(&[&[1, 0, 1], &[0, 1, 1]]);
        assert!(edge.is_face_of(&k).unwrap());
        let diag = c(&[&[1, 0, 1], &[-1, 0, 1]]);
        assert!(!diag.is_face_of(&k).unwrap());
    }

    #[test]
    fn face_correspondence_is_complement() {
        assert_eq!(
            face_correspondence(&FaceOfOrthant::default(), 3),
            FaceOfOrthant::full(3)
        );
        let g = FaceOfOrthant::new([0, 3]);
        assert_eq!(face_correspondence(&g, 5), FaceOfOrthant::new([1, 2, 4]));
        assert_eq!(face_correspondence(&face_correspondence(&g, 5), 5), g);
    }

    #[test]
    fn relint_relations() {
        let big = c(&[&[1, 0], &[0, 1]]);
        let small = c(&[&[1, 1], &[1, 2]]);
        let edge = c(&[&[1, 0]]);
        assert!(small.relint_subset(&big));
        assert!(!edge.relint_subset(&big));
        assert!(small.interiors_meet(&big));
        assert!(!edge.interiors_meet(&big));
    }
}
