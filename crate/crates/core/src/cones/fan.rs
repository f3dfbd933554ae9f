use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Cone;
use crate::error::{Error, Result};
use crate::linalg::{content, dot, fmt_vec, is_zero_vec, primitive, IntMatrix, ZVec};

/// A fan given by its maximal cones, each an index set into the ray list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim_ambient: usize,
    rays: Vec<ZVec>,
    cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Rays must be nonzero; they are made primitive. Cones contained in
    /// other listed cones are dropped, as are unused rays.
    pub fn new(n: usize, rays: &[ZVec], cones: &[Vec<usize>]) -> Result<Self> {
        for r in rays {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            if is_zero_vec(r) {
                return Err(Error::Invalid("zero vector as fan ray".into()));
            }
        }
        let mut sets: Vec<BTreeSet<ZVec>> = Vec::new();
        for c in cones {
            let mut s = BTreeSet::new();
            for &i in c {
                let r = rays
                    .get(i)
                    .ok_or_else(|| Error::Invalid(format!("ray index {i} out of range")))?;
                s.insert(primitive(r));
            }
            sets.push(s);
        }
        Self::from_ray_sets(n, sets)
    }

    pub fn from_cones(n: usize, cones: &[Cone]) -> Result<Self> {
        let mut sets = Vec::new();
        for c in cones {
            if c.ambient_dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.ambient_dim(),
                });
            }
            if !c.is_pointed() {
                return Err(Error::Invalid(format!("fan cone {c} is not pointed")));
            }
            sets.push(c.rays().iter().cloned().collect());
        }
        Self::from_ray_sets(n, sets)
    }

    fn from_ray_sets(n: usize, sets: Vec<BTreeSet<ZVec>>) -> Result<Self> {
        let cones: Vec<Cone> = sets
            .iter()
            .map(|s| Cone::generated_by(n, &s.iter().cloned().collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
        for c in &cones {
            if !c.is_pointed() {
                return Err(Error::Invalid(format!("fan cone {c} is not pointed")));
            }
        }
        let mut keep: Vec<BTreeSet<ZVec>> = Vec::new();
        for (i, c) in cones.iter().enumerate() {
            let dominated = cones
                .iter()
                .enumerate()
                .any(|(j, d)| j != i && d.contains_cone(c) && (d != c || j < i));
            if !dominated {
                keep.push(c.rays().iter().cloned().collect());
            }
        }
        let rays: Vec<ZVec> = keep
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let pos: BTreeMap<&ZVec, usize> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut idx: Vec<Vec<usize>> = keep
            .iter()
            .map(|s| s.iter().map(|r| pos[r]).collect::<Vec<_>>())
            .collect();
        for c in idx.iter_mut() {
            c.sort_unstable();
        }
        idx.sort();
        Ok(Self {
            dim_ambient: n,
            rays: rays.clone(),
            cones: idx,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_ambient
    }

    /// Primitive ray generators in canonical order.
    pub fn rays(&self) -> &[ZVec] {
        &self.rays
    }

    /// Maximal cones as sorted index sets into [`Fan::rays`].
    pub fn cone_indices(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> Cone {
        let rays: Vec<ZVec> = self.cones[i].iter().map(|&j| self.rays[j].clone()).collect();
        Cone::generated_by(self.dim_ambient, &rays).expect("dimension")
    }

    pub fn maximal_cones(&self) -> Vec<Cone> {
        (0..self.cones.len()).map(|i| self.cone(i)).collect()
    }

    pub fn ray_index(&self, v: &[BigInt]) -> Option<usize> {
        let p = primitive(v);
        self.rays.iter().position(|r| *r == p)
    }

    /// Each maximal cone as the set of its primitive ray vectors.
    pub fn ray_sets(&self) -> BTreeSet<BTreeSet<ZVec>> {
        self.cones
            .iter()
            .map(|c| c.iter().map(|&i| self.rays[i].clone()).collect())
            .collect()
    }

    /// Equality of fans as sets of cones.
    pub fn same_as(&self, other: &Fan) -> bool {
        self.dim_ambient == other.dim_ambient && self.ray_sets() == other.ray_sets()
    }

    /// Image under the linear map with matrix `u` (`n × n`, applied to columns).
    pub fn transform(&self, u: &IntMatrix) -> Result<Fan> {
        let rays: Vec<ZVec> = self.rays.iter().map(|r| u.mul_vec(r)).collect();
        Fan::new(u.nrows(), &rays, &self.cones)
    }

    pub fn is_simplicial(&self) -> bool {
        self.maximal_cones().iter().all(Cone::is_simplicial)
    }

    pub fn support_contains(&self, v: &[BigInt]) -> bool {
        self.maximal_cones().iter().any(|c| c.contains(v))
    }

    /// Checks that each listed ray is extreme in its cones and that any two
    /// maximal cones meet in a common face.
    pub fn check(&self) -> Result<()> {
        let cones = self.maximal_cones();
        for (i, c) in cones.iter().enumerate() {
            if c.rays().len() != self.cones[i].len() {
                return Err(Error::Invalid(format!("cone {c} has a non-extreme listed ray")));
            }
        }
        for i in 0..cones.len() {
            for j in i + 1..cones.len() {
                let m = cones[i].intersect(&cones[j])?;
                if !m.is_face_of(&cones[i])? || !m.is_face_of(&cones[j])? {
                    return Err(Error::Invalid(format!(
                        "cones {} and {} do not meet in a common face",
                        cones[i], cones[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cones: Vec<String> = self
            .cones
            .iter()
            .map(|c| {
                let rs: Vec<String> = c.iter().map(|&i| fmt_vec(&self.rays[i])).collect();
                format!("[{}]", rs.join(","))
            })
            .collect();
        write!(f, "{}", cones.join(" "))
    }
}

/// Stellar subdivision of `fan` at the primitive vector `v`: the star of
/// the minimal cone `σ_0` containing `v` is replaced by the cones
/// `τ + cone(v)` over the faces `τ` of the star members not containing `σ_0`.
pub fn stellar_subdivide(fan: &Fan, v: &[BigInt]) -> Result<Fan> {
    let n = fan.ambient_dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    if is_zero_vec(v) || !content(v).is_one() {
        return Err(Error::NotPrimitive(fmt_vec(v)));
    }
    let cones = fan.maximal_cones();
    let star: Vec<usize> = (0..cones.len()).filter(|&i| cones[i].contains(v)).collect();
    if star.is_empty() {
        return Err(Error::OutsideSupport(fmt_vec(v)));
    }
    let sigma0 = cones[star[0]].minimal_face_containing(v);
    if sigma0.dim() == 1 {
        return Err(Error::OnRay(fmt_vec(v)));
    }

    let mut sets: Vec<BTreeSet<ZVec>> = Vec::new();
    for (i, c) in cones.iter().enumerate() {
        let rays: BTreeSet<ZVec> = c.rays().iter().cloned().collect();
        if !star.contains(&i) {
            sets.push(rays);
            continue;
        }
        for a in c.facet_normals() {
            if !dot(a, v).is_positive() {
                continue;
            }
            let mut s: BTreeSet<ZVec> = rays.iter().filter(|r| dot(a, r).is_zero()).cloned().collect();
            s.insert(v.to_vec());
            sets.push(s);
        }
    }
    let mut rays: Vec<ZVec> = Vec::new();
    let mut idx: Vec<Vec<usize>> = Vec::new();
    for s in &sets {
        let mut c = Vec::new();
        for r in s {
            let k = rays.iter().position(|x| x == r).unwrap_or_else(|| {
                rays.push(r.clone());
                rays.len() - 1
            });
            c.push(k);
        }
        idx.push(c);
    }
    Fan::new(n, &rays, &idx)
}
