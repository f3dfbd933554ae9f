//! Bunched rings, orbit cones, GIT chambers and the ambient toric fan.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::cones::{gale_transform, Cone, FaceOfOrthant, Fan};
use crate::error::{Error, Result};
use crate::groups::{sublattice_image, GroupElement};
use crate::linalg::{fmt_vec, line_key, IntMatrix, ZVec};
use crate::poly::CoxPresentation;

/// Default bound on the number of variables for face enumeration.
pub const DEFAULT_MAX_VARS: usize = 20;

/// Outcome of the facet test for the generator degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// Facets `γ_0` whose degrees do not generate `K`.
    pub failing_facets: Vec<FaceOfOrthant>,
}

/// Whether, for every facet `γ_0` of the orthant, `Q(γ_0 ∩ E)` generates `K`.
pub fn validate_admissible(pres: &CoxPresentation) -> AdmissibilityReport {
    let r = pres.nvars();
    let full = FaceOfOrthant::full(r);
    let failing_facets: Vec<FaceOfOrthant> = (0..r)
        .map(|i| full.without(i))
        .filter(|f| !sublattice_image(pres.grading(), f.indices()).1.is_one())
        .collect();
    AdmissibilityReport {
        admissible: failing_facets.is_empty(),
        failing_facets,
    }
}

/// Free-part weight cone `Q^0(γ_0)`.
pub fn projected_face(pres: &CoxPresentation, gamma0: &FaceOfOrthant) -> Cone {
    let k = pres.grading().target().rank();
    let w: Vec<ZVec> = gamma0
        .indices()
        .iter()
        .map(|&i| pres.grading().column(i).free().to_vec())
        .collect();
    Cone::generated_by(k, &w).expect("weights fit the target")
}

/// The weight cone `Q^0(γ)`.
pub fn weight_cone(pres: &CoxPresentation) -> Cone {
    projected_face(pres, &FaceOfOrthant::full(pres.nvars()))
}

/// The orbit cones `Q^0(γ_0)` over all F-faces `γ_0`.
#[derive(Clone, Debug)]
pub struct OrbitConeSet {
    pub k0_rank: usize,
    /// Each F-face with its projected cone, in increasing face order.
    pub faces: Vec<(FaceOfOrthant, Cone)>,
    /// Distinct cones, sorted.
    pub cones: Vec<Cone>,
    pub toric: bool,
    eff: Cone,
}

impl OrbitConeSet {
    pub fn compute(pres: &CoxPresentation, max_vars: usize) -> Result<Self> {
        let r = pres.nvars();
        if r > max_vars || r >= 64 {
            return Err(Error::SizeLimit {
                nvars: r,
                limit: max_vars.min(63),
            });
        }
        if pres.relations().len() > 1 {
            return Err(Error::Unsupported("orbit cones need at most one relation".into()));
        }
        let k = pres.grading().target().rank();
        let mut faces: Vec<(FaceOfOrthant, Cone)> = (0u64..1 << r)
            .into_par_iter()
            .filter_map(|mask| {
                let face = FaceOfOrthant::from_mask(mask, r);
                match pres.is_f_face(&face) {
                    Ok(true) => Some((face.clone(), projected_face(pres, &face))),
                    _ => None,
                }
            })
            .collect();
        faces.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        let cones: BTreeSet<Cone> = faces.iter().map(|(_, c)| c.clone()).collect();
        Ok(Self {
            k0_rank: k,
            faces,
            cones: cones.into_iter().collect(),
            toric: pres.is_toric(),
            eff: weight_cone(pres),
        })
    }

    /// Orbit cones of the ambient polynomial ring: every face counts.
    pub fn compute_toric(pres: &CoxPresentation, max_vars: usize) -> Result<Self> {
        Self::compute(&pres.ambient(), max_vars)
    }

    pub fn weight_cone(&self) -> Cone {
        self.eff.clone()
    }

    pub fn is_projected_f_face(&self, c: &Cone) -> bool {
        self.cones.binary_search(c).is_ok()
    }

    /// `λ(w) = ⋂ { ω : w ∈ ω }`.
    pub fn git_cone_at(&self, w: &[num_bigint::BigInt]) -> Result<Cone> {
        let containing: Vec<&Cone> = self.cones.iter().filter(|c| c.contains(w)).collect();
        if containing.is_empty() {
            return Err(Error::OutsideWeightCone(fmt_vec(w)));
        }
        Cone::intersect_all(self.k0_rank, containing)
    }
}

pub fn orbit_cones(pres: &CoxPresentation) -> Result<OrbitConeSet> {
    OrbitConeSet::compute(pres, DEFAULT_MAX_VARS)
}

/// GIT cone of the class `w`.
pub fn git_cone(w: &GroupElement, s: &OrbitConeSet) -> Result<Cone> {
    let eff = s.weight_cone();
    if !eff.contains(w.free()) {
        return Err(Error::OutsideWeightCone(w.to_string()));
    }
    s.git_cone_at(w.free())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChamberSource {
    Toric,
    Hypersurface,
}

#[derive(Clone, Debug)]
pub struct ChamberFan {
    pub ambient_dim: usize,
    /// Full-dimensional GIT chambers, sorted by their ray lists.
    pub chambers: Vec<Cone>,
    pub source: ChamberSource,
}

impl ChamberFan {
    /// The unique chamber whose relative interior contains `w`.
    pub fn chamber_containing(&self, w: &[num_bigint::BigInt]) -> Option<&Cone> {
        self.chambers
            .iter()
            .find(|c| c.rel_interior_contains(w).unwrap_or(false))
    }
}

/// All full-dimensional GIT chambers. The weight cone is cut by the walls
/// of the orbit cones; each cell yields a chamber through an interior point.
pub fn enumerate_chamber_fan(s: &OrbitConeSet) -> Result<ChamberFan> {
    let k = s.k0_rank;
    let eff = s.weight_cone();
    if !eff.is_pointed() {
        return Err(Error::NonPointedWeightCone);
    }
    let source = if s.toric {
        ChamberSource::Toric
    } else {
        ChamberSource::Hypersurface
    };
    if !eff.is_full_dimensional() {
        return Ok(ChamberFan {
            ambient_dim: k,
            chambers: Vec::new(),
            source,
        });
    }

    let mut walls: BTreeSet<ZVec> = BTreeSet::new();
    for c in &s.cones {
        if c.is_full_dimensional() {
            walls.extend(c.facet_normals().iter().map(|a| line_key(a)));
        } else if c.dim() + 1 == k {
            walls.extend(c.equations().iter().map(|a| line_key(a)));
        }
    }

    let mut cells = vec![eff];
    for h in &walls {
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells {
            let vals: Vec<num_bigint::BigInt> = cell.rays().iter().map(|r| crate::linalg::dot(h, r)).collect();
            let pos = vals.iter().any(|v| v > &num_bigint::BigInt::from(0));
            let neg = vals.iter().any(|v| v < &num_bigint::BigInt::from(0));
            if pos && neg {
                let minus = crate::linalg::neg(h);
                let mut up = cell.facet_normals().to_vec();
                up.push(h.clone());
                let mut down = cell.facet_normals().to_vec();
                down.push(minus);
                next.push(Cone::from_inequalities(k, &up, &[])?);
                next.push(Cone::from_inequalities(k, &down, &[])?);
            } else {
                next.push(cell);
            }
        }
        cells = next;
    }

    let found: Vec<Cone> = cells.par_iter().filter_map(|cell| generic_chamber(s, cell)).collect();
    let chambers: BTreeSet<Cone> = found.into_iter().collect();
    Ok(ChamberFan {
        ambient_dim: k,
        chambers: chambers.into_iter().collect(),
        source,
    })
}

/// The GIT cone of a generic point of the open cell.
fn generic_chamber(s: &OrbitConeSet, cell: &Cone) -> Option<Cone> {
    let rays = cell.rays();
    for t in 0u64..64 {
        let mut p = vec![num_bigint::BigInt::from(0); s.k0_rank];
        for (i, r) in rays.iter().enumerate() {
            let c = if t == 0 {
                1
            } else {
                1 + (i as u64 + 1) * (t * 7919) % 97
            };
            for (x, y) in p.iter_mut().zip(r) {
                *x += y * c;
            }
        }
        if let Ok(l) = s.git_cone_at(&p) {
            if l.is_full_dimensional() {
                return Some(l);
            }
        }
    }
    None
}

/// A bunched ring `(R, F, Φ)`.
#[derive(Clone, Debug)]
pub struct BunchedRing {
    pres: CoxPresentation,
    phi: Vec<Cone>,
    orbit: OrbitConeSet,
    rlv: Vec<FaceOfOrthant>,
    cov: Vec<FaceOfOrthant>,
}

/// Outcome of checking the bunch conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BunchReport {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

impl BunchedRing {
    /// Validates `Φ` and computes the relevant faces. Fails if `Φ` is not a bunch.
    pub fn new(pres: CoxPresentation, phi: Vec<Cone>) -> Result<Self> {
        Self::with_limit(pres, phi, DEFAULT_MAX_VARS)
    }

    pub fn with_limit(pres: CoxPresentation, phi: Vec<Cone>, max_vars: usize) -> Result<Self> {
        let b = Self::unchecked(pres, phi, max_vars)?;
        let report = validate_bunch(&b)?;
        if !report.valid {
            return Err(Error::Invalid(format!(
                "not a bunch: {}",
                report.diagnostics.join("; ")
            )));
        }
        Ok(b)
    }

    /// Computes the derived data without checking the bunch conditions.
    pub fn unchecked(pres: CoxPresentation, phi: Vec<Cone>, max_vars: usize) -> Result<Self> {
        let orbit = OrbitConeSet::compute(&pres, max_vars)?;
        let phi: Vec<Cone> = phi.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let rlv: Vec<FaceOfOrthant> = orbit
            .faces
            .iter()
            .filter(|(_, w)| phi.iter().any(|t| t.relint_subset(w)))
            .map(|(f, _)| f.clone())
            .collect();
        let cov: Vec<FaceOfOrthant> = rlv
            .iter()
            .filter(|f| !rlv.iter().any(|g| g != *f && g.is_subset(f)))
            .cloned()
            .collect();
        Ok(Self {
            pres,
            phi,
            orbit,
            rlv,
            cov,
        })
    }

    /// The bunch whose semiample cone is the chamber containing `w` in its interior.
    pub fn from_chamber_point(pres: CoxPresentation, w: &[num_bigint::BigInt], max_vars: usize) -> Result<Self> {
        let orbit = OrbitConeSet::compute(&pres, max_vars)?;
        let lambda = orbit.git_cone_at(w)?;
        if !lambda.rel_interior_contains(w)? || !lambda.is_full_dimensional() {
            return Err(Error::NotAChamber(format!(
                "{} is not in the interior of a full-dimensional chamber",
                fmt_vec(w)
            )));
        }
        bunch_from_chamber_with(pres, &lambda, &orbit, max_vars)
    }

    pub fn presentation(&self) -> &CoxPresentation {
        &self.pres
    }

    pub fn phi(&self) -> &[Cone] {
        &self.phi
    }

    pub fn orbit_cones(&self) -> &OrbitConeSet {
        &self.orbit
    }

    pub fn rlv(&self) -> &[FaceOfOrthant] {
        &self.rlv
    }

    pub fn cov(&self) -> &[FaceOfOrthant] {
        &self.cov
    }

    pub fn k0_rank(&self) -> usize {
        self.orbit.k0_rank
    }

    pub fn is_relevant(&self, gamma0: &FaceOfOrthant) -> bool {
        self.rlv.contains(gamma0)
    }
}

/// Checks conditions (a) and (b) of an F-bunch.
pub fn validate_bunch(b: &BunchedRing) -> Result<BunchReport> {
    let mut diagnostics = Vec::new();
    if b.phi.is_empty() {
        diagnostics.push("the bunch is empty".into());
    }
    for t in &b.phi {
        if !b.orbit.is_projected_f_face(t) {
            return Err(Error::NotProjectedFFace(t.to_string()));
        }
    }
    for (i, t) in b.phi.iter().enumerate() {
        for s in &b.phi[i + 1..] {
            if !t.interiors_meet(s) {
                diagnostics.push(format!("{t} and {s} have disjoint relative interiors"));
            } else if s.relint_subset(t) || t.relint_subset(s) {
                diagnostics.push(format!("one of {t} and {s} has its interior inside the other"));
            }
        }
    }
    // maximality: no further projected F-face fits
    if diagnostics.is_empty() {
        for c in &b.orbit.cones {
            if b.phi.contains(c) {
                continue;
            }
            let fits = b.phi.iter().all(|s| c.interiors_meet(s) && !s.relint_subset(c));
            if fits {
                diagnostics.push(format!("projected F-face {c} could be added"));
            }
        }
    }
    let r = b.pres.nvars();
    let full = FaceOfOrthant::full(r);
    for i in 0..r {
        let facet = full.without(i);
        let w = projected_face(&b.pres, &facet);
        if !b.phi.iter().any(|t| t.relint_subset(&w)) {
            diagnostics.push(format!("facet {facet} is not covered"));
        }
    }
    Ok(BunchReport {
        valid: diagnostics.is_empty(),
        diagnostics,
    })
}

pub fn relevant_faces(b: &BunchedRing) -> (Vec<FaceOfOrthant>, Vec<FaceOfOrthant>) {
    (b.rlv.clone(), b.cov.clone())
}

/// `Mov = ⋂ Q^0(γ_0)` over the facets `γ_0` of the orthant.
pub fn moving_cone(pres: &CoxPresentation) -> Cone {
    let r = pres.nvars();
    let k = pres.grading().target().rank();
    let full = FaceOfOrthant::full(r);
    let facets: Vec<Cone> = (0..r).map(|i| projected_face(pres, &full.without(i))).collect();
    Cone::intersect_all(k, &facets).expect("same dimension")
}

pub fn bunch_from_chamber(pres: CoxPresentation, lambda: &Cone) -> Result<BunchedRing> {
    let orbit = orbit_cones(&pres)?;
    bunch_from_chamber_with(pres, lambda, &orbit, DEFAULT_MAX_VARS)
}

fn bunch_from_chamber_with(
    pres: CoxPresentation,
    lambda: &Cone,
    orbit: &OrbitConeSet,
    max_vars: usize,
) -> Result<BunchedRing> {
    if !lambda.is_full_dimensional() {
        return Err(Error::NotAChamber(lambda.to_string()));
    }
    let r = pres.nvars();
    let full = FaceOfOrthant::full(r);
    for i in 0..r {
        if !lambda.relint_subset(&projected_face(&pres, &full.without(i))) {
            return Err(Error::ChamberOutsideMoving);
        }
    }
    let psi: Vec<&Cone> = orbit.cones.iter().filter(|w| lambda.relint_subset(w)).collect();
    let phi: Vec<Cone> = psi
        .iter()
        .filter(|w| !psi.iter().any(|v| v != *w && w.contains_cone(v)))
        .map(|w| (*w).clone())
        .collect();
    BunchedRing::with_limit(pres, phi, max_vars)
}

/// The toric ambient fan in `N` attached to a full-dimensional chamber `η`
/// of the toric GIT fan: its maximal cones are `cone(v_j : j ∉ γ_0)` for
/// the minimal faces `γ_0` with `η° ⊆ Q^0(γ_0)°`.
pub fn ambient_fan(pres: &CoxPresentation, eta: &Cone) -> Result<Fan> {
    ambient_fan_with(pres, eta, DEFAULT_MAX_VARS)
}

pub fn ambient_fan_with(pres: &CoxPresentation, eta: &Cone, max_vars: usize) -> Result<Fan> {
    let g = gale_transform(pres.grading());
    if g.degenerate {
        return Err(Error::Invalid(
            "the grading has no kernel; the ambient fan lives in a zero lattice".into(),
        ));
    }
    ambient_fan_in(pres, eta, &g.p, max_vars)
}

/// As [`ambient_fan`], with rays the columns of a given Gale dual `p`.
pub fn ambient_fan_in(pres: &CoxPresentation, eta: &Cone, p: &IntMatrix, max_vars: usize) -> Result<Fan> {
    if !eta.is_full_dimensional() {
        return Err(Error::NotAChamber(eta.to_string()));
    }
    let r = pres.nvars();
    if p.ncols() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: p.ncols(),
        });
    }
    let toric = OrbitConeSet::compute_toric(pres, max_vars)?;
    let cols = p.columns();
    let hits: Vec<&FaceOfOrthant> = toric
        .faces
        .iter()
        .filter(|(_, w)| eta.relint_subset(w))
        .map(|(f, _)| f)
        .collect();
    let minimal: Vec<&FaceOfOrthant> = hits
        .iter()
        .filter(|f| !hits.iter().any(|g| g != *f && g.is_subset(f)))
        .copied()
        .collect();
    let mut cones: Vec<Cone> = Vec::new();
    for f in minimal {
        let rays: Vec<ZVec> = (0..r)
            .filter(|&j| !f.contains(j))
            .map(|j| cols[j].clone())
            .filter(|v| !crate::linalg::is_zero_vec(v))
            .collect();
        cones.push(Cone::generated_by(p.nrows(), &rays)?);
    }
    Fan::from_cones(p.nrows(), &cones)
}

/// Whether `η° ⊆ τ°` for every `τ ∈ Φ`.
pub fn chamber_in_ample(b: &BunchedRing, eta: &Cone) -> bool {
    b.phi.iter().all(|t| eta.relint_subset(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{AbelianGroup, GradingMap};
    use crate::linalg::zvec;
    use crate::poly::{Attestations, GradedPoly};

    fn cone(rays: &[&[i64]]) -> Cone {
        Cone::generated_by(rays[0].len(), &rays.iter().map(|r| zvec(r)).collect::<Vec<_>>()).unwrap()
    }

    fn delpezzo() -> CoxPresentation {
        let q = GradingMap::free_from_matrix(&IntMatrix::from_i64(&[&[1, -1, 0, -1, 1], &[1, 1, 1, 0, 2]]));
        let f = GradedPoly::parse("T1*T2 + T3^2 + T4*T5", 5).unwrap();
        CoxPresentation::new(q, vec![f], Attestations::default()).unwrap()
    }

    fn toric(rows: &[&[i64]]) -> CoxPresentation {
        CoxPresentation::toric(GradingMap::free_from_matrix(&IntMatrix::from_i64(rows)))
    }

    fn torsion() -> CoxPresentation {
        let k = AbelianGroup::new(1, zvec(&[3])).unwrap();
        let q = GradingMap::from_rows(k, &[zvec(&[1; 6])], &[zvec(&[1, 2, 1, 2, 1, 2])]).unwrap();
        let f = GradedPoly::parse("T1*T2 + T3*T4 + T5*T6", 6).unwrap();
        CoxPresentation::new(q, vec![f], Attestations::default()).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(validate_admissible(&delpezzo()).admissible);
        assert!(validate_admissible(&torsion()).admissible);
        let single = toric(&[&[2]]);
        let rep = validate_admissible(&single);
        assert!(!rep.admissible);
        assert_eq!(rep.failing_facets, vec![FaceOfOrthant::default()]);
    }

    #[test]
    fn delpezzo_bunch_and_cov() {
        let b = BunchedRing::new(delpezzo(), vec![cone(&[&[-1, 1], &[1, 2]])]).unwrap();
        let cov: Vec<Vec<usize>> = b.cov().iter().map(FaceOfOrthant::one_based).collect();
        let mut expected = vec![vec![1, 4], vec![2, 5], vec![1, 2, 3], vec![3, 4, 5]];
        expected.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        assert_eq!(cov, expected);
    }

    #[test]
    fn invalid_bunch_is_rejected() {
        let pres = delpezzo();
        let phi = vec![cone(&[&[-1, 0], &[-1, 1]]), cone(&[&[1, 2], &[1, 1]])];
        let b = BunchedRing::unchecked(pres, phi, 20).unwrap();
        assert!(!validate_bunch(&b).unwrap().valid);
        let bad = BunchedRing::unchecked(delpezzo(), vec![cone(&[&[0, 1], &[1, 3]])], 20).unwrap();
        assert!(matches!(validate_bunch(&bad), Err(Error::NotProjectedFFace(_))));
    }

    #[test]
    fn torsion_bunch() {
        let b = BunchedRing::new(torsion(), vec![cone(&[&[1]])]).unwrap();
        let cov: Vec<Vec<usize>> = b.cov().iter().map(FaceOfOrthant::one_based).collect();
        assert_eq!(cov, (1..=6).map(|i| vec![i]).collect::<Vec<_>>());
    }

    #[test]
    fn projective_plane_cov() {
        let b = BunchedRing::new(toric(&[&[1, 1, 1]]), vec![cone(&[&[1]])]).unwrap();
        assert_eq!(b.cov().len(), 3);
        assert!(b.rlv().contains(&FaceOfOrthant::full(3)));
    }

    #[test]
    fn orbit_cones_of_delpezzo() {
        let s = orbit_cones(&delpezzo()).unwrap();
        assert!(s.cones.contains(&cone(&[&[1, 1], &[-1, 1], &[0, 1]])));
        assert!(!s.faces.iter().any(|(f, _)| *f == FaceOfOrthant::new([2])));
        assert!(s.faces.iter().any(|(f, c)| f.is_empty() && c.is_zero()));
        let t = orbit_cones(&toric(&[&[1, 1, 1]])).unwrap();
        assert_eq!(t.cones.len(), 2);
    }

    #[test]
    fn git_cones() {
        let s = orbit_cones(&delpezzo()).unwrap();
        let k = AbelianGroup::free(2);
        let w3 = k.element_i64(&[0, 1], &[]).unwrap();
        assert_eq!(git_cone(&w3, &s).unwrap(), cone(&[&[-1, 1], &[1, 2]]));
        // the ray through w4 is itself an orbit cone
        let w4 = k.element_i64(&[-1, 0], &[]).unwrap();
        assert_eq!(git_cone(&w4, &s).unwrap(), cone(&[&[-1, 0]]));
        let inner = k.element_i64(&[-2, 1], &[]).unwrap();
        assert_eq!(git_cone(&inner, &s).unwrap(), cone(&[&[-1, 0], &[-1, 1]]));
        let out = k.element_i64(&[0, -1], &[]).unwrap();
        assert!(matches!(git_cone(&out, &s), Err(Error::OutsideWeightCone(_))));
    }

    #[test]
    fn chamber_fans_of_delpezzo() {
        let pres = delpezzo();
        let ring = enumerate_chamber_fan(&orbit_cones(&pres).unwrap()).unwrap();
        assert_eq!(ring.chambers.len(), 3);
        let toric_fan = enumerate_chamber_fan(&OrbitConeSet::compute_toric(&pres, 20).unwrap()).unwrap();
        assert_eq!(toric_fan.chambers.len(), 4);
        assert!(toric_fan.chambers.contains(&cone(&[&[-1, 1], &[0, 1]])));
    }

    #[test]
    fn single_ray_weight_cone() {
        let f = enumerate_chamber_fan(&orbit_cones(&toric(&[&[1, 1, 1]])).unwrap()).unwrap();
        assert_eq!(f.chambers, vec![cone(&[&[1]])]);
    }

    #[test]
    fn chamber_to_bunch() {
        let b = bunch_from_chamber(delpezzo(), &cone(&[&[-1, 1], &[1, 2]])).unwrap();
        assert_eq!(b.phi(), &[cone(&[&[-1, 1], &[1, 2]])][..]);
        assert_eq!(
            bunch_from_chamber(delpezzo(), &cone(&[&[-1, 0], &[-1, 1]])).unwrap_err(),
            Error::ChamberOutsideMoving
        );
        let t = toric(&[&[1, 1, 1, 1, 1], &[0, 1, 2, 3, 4]]);
        assert!(bunch_from_chamber(t.clone(), &cone(&[&[1, 1], &[1, 2]])).is_ok());
        assert_eq!(
            bunch_from_chamber(t, &cone(&[&[1, 0], &[1, 1]])).unwrap_err(),
            Error::ChamberOutsideMoving
        );
    }

    #[test]
    fn ambient_fan_of_projective_plane() {
        let f = ambient_fan(&toric(&[&[1, 1, 1]]), &cone(&[&[1]])).unwrap();
        assert_eq!(f.cone_indices().len(), 3);
        assert_eq!(f.rays().len(), 3);
        f.check().unwrap();
    }
}
