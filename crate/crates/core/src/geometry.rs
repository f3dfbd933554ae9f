//! Invariants of the variety `X(R, F, Φ)`: divisor cones, strata, Picard
//! group, singularities and the canonical class.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bunch::{projected_face, validate_admissible, weight_cone, BunchedRing};
use crate::cones::{Cone, FaceOfOrthant};
use crate::error::{Error, Result};
use crate::groups::{subgroup_intersect, sublattice_image, AbelianGroup, GroupElement, Index, Subgroup};
use crate::linalg::{integer_kernel, subspace_basis, IntMatrix, ZVec};
use crate::poly::GradedPoly;

/// A yes/no answer that may be undecided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Truth {
    Yes,
    No,
    Unknown(String),
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::Yes
        } else {
            Truth::No
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Truth::Yes)
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truth::Yes => write!(f, "yes"),
            Truth::No => write!(f, "no"),
            Truth::Unknown(why) => write!(f, "unknown ({why})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorCones {
    pub eff: Cone,
    pub mov: Cone,
    pub samp: Cone,
    /// Closure of the ample cone; the ample cone is its relative interior
    /// intersected with every `τ°`.
    pub ample_closure: Cone,
    pub ample_nonempty: bool,
}

pub fn divisor_cones(b: &BunchedRing) -> Result<DivisorCones> {
    let pres = b.presentation();
    let k = b.k0_rank();
    let eff = weight_cone(pres);
    let mov = crate::bunch::moving_cone(pres);
    let samp = Cone::intersect_all(k, b.phi())?;
    let p = samp.interior_point();
    let ample_nonempty = b.phi().iter().all(|t| t.rel_interior_contains(&p).unwrap_or(false));
    Ok(DivisorCones {
        eff,
        mov,
        ample_closure: samp.clone(),
        samp,
        ample_nonempty,
    })
}

/// Whether `w` lies in the ample cone `⋂ τ°`.
pub fn is_ample(b: &BunchedRing, w: &[BigInt]) -> bool {
    b.phi().iter().all(|t| t.rel_interior_contains(w).unwrap_or(false))
}

/// Local data of a piece `X(γ_0)`, `γ_0` relevant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumInfo {
    pub face: FaceOfOrthant,
    pub dim: usize,
    pub local_class_lattice: Subgroup,
    pub local_index: Index,
    pub is_factorial: bool,
    pub is_q_factorial: bool,
    pub is_smooth: Truth,
    /// The piece in terms of the invariant divisors.
    pub description: String,
}

fn require_relevant(b: &BunchedRing, gamma0: &FaceOfOrthant) -> Result<()> {
    if b.is_relevant(gamma0) {
        Ok(())
    } else {
        Err(Error::NotRelevant(gamma0.to_string()))
    }
}

/// `(Cartier, Q-Cartier)` for the class `w` along `X(γ_0)`.
pub fn stratum_properties(b: &BunchedRing, gamma0: &FaceOfOrthant, w: &GroupElement) -> Result<(bool, bool)> {
    require_relevant(b, gamma0)?;
    let (lattice, _) = sublattice_image(b.presentation().grading(), gamma0.indices());
    let cartier = lattice.contains(w);
    let q_cartier = in_span(&projected_face(b.presentation(), gamma0), w.free());
    Ok((cartier, q_cartier))
}

fn in_span(c: &Cone, v: &[BigInt]) -> bool {
    c.equations().iter().all(|e| crate::linalg::dot(e, v).is_zero())
}

pub fn picard_group(b: &BunchedRing) -> Result<(Subgroup, Index)> {
    let q = b.presentation().grading();
    let groups: Vec<Subgroup> = b.cov().iter().map(|g| sublattice_image(q, g.indices()).0).collect();
    let pic = if groups.is_empty() {
        Subgroup::full(q.target())
    } else {
        subgroup_intersect(&groups)?
    };
    let idx = pic.index();
    Ok((pic, idx))
}

/// Dimension of `X(γ_0)`.
pub fn stratum_dimension(b: &BunchedRing, gamma0: &FaceOfOrthant) -> usize {
    let pres = b.presentation();
    let cut = pres.relation().is_some_and(|f| !f.restrict_to_face(gamma0).is_zero());
    let total = gamma0.len() - usize::from(cut);
    total - projected_face(pres, gamma0).dim()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factoriality {
    pub strata: Vec<StratumInfo>,
    pub q_factorial: bool,
}

pub fn factoriality(b: &BunchedRing) -> Factoriality {
    let strata = b.rlv().iter().map(|g| stratum_info(b, g)).collect();
    let q_factorial = b.phi().iter().all(Cone::is_full_dimensional);
    Factoriality { strata, q_factorial }
}

fn stratum_info(b: &BunchedRing, gamma0: &FaceOfOrthant) -> StratumInfo {
    let pres = b.presentation();
    let (lattice, index) = sublattice_image(pres.grading(), gamma0.indices());
    let is_factorial = index.is_one();
    let is_q_factorial = projected_face(pres, gamma0).is_full_dimensional();
    let is_smooth = if !is_factorial {
        Truth::No
    } else {
        match stratum_has_singular_point(pres.relation(), gamma0) {
            Some(false) => Truth::Yes,
            Some(true) => Truth::No,
            None => Truth::Unknown("gradient analysis inconclusive on this stratum".into()),
        }
    };
    let off: Vec<usize> = face_complement(gamma0, pres.nvars()).iter().map(|i| i + 1).collect();
    let description = format!(
        "points lying on exactly the divisors D^i with i in {{{}}}",
        off.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    );
    StratumInfo {
        face: gamma0.clone(),
        dim: stratum_dimension(b, gamma0),
        local_class_lattice: lattice,
        local_index: index,
        is_factorial,
        is_q_factorial,
        is_smooth,
        description,
    }
}

fn face_complement(g: &FaceOfOrthant, r: usize) -> Vec<usize> {
    crate::cones::face_correspondence(g, r).indices().to_vec()
}

/// Per relevant stratum: smooth, singular or undecided.
pub fn smoothness(b: &BunchedRing) -> Vec<(FaceOfOrthant, Truth)> {
    factoriality(b)
        .strata
        .into_iter()
        .map(|s| (s.face, s.is_smooth))
        .collect()
}

/// Whether the torus stratum of `γ_0` contains a singular point of `V(f)`.
/// `None` when the restricted system is outside the decidable cases.
pub fn stratum_has_singular_point(f: Option<&GradedPoly>, gamma0: &FaceOfOrthant) -> Option<bool> {
    let Some(f) = f else { return Some(false) };
    if f.is_zero() {
        return Some(false);
    }
    let mut system: Vec<GradedPoly> = vec![f.restrict_to_face(gamma0)];
    for i in 0..f.nvars() {
        system.push(f.derivative(i).restrict_to_face(gamma0));
    }
    system.retain(|p| !p.is_zero());
    if system.is_empty() {
        return Some(true);
    }
    if system.iter().any(GradedPoly::is_monomial) {
        return Some(false);
    }
    if system.iter().all(|p| p.num_terms() == 2) {
        return Some(binomials_have_torus_zero(&system));
    }
    let first = &system[0];
    if system.iter().all(|p| proportional(p, first)) {
        return Some(true);
    }
    None
}

fn proportional(p: &GradedPoly, q: &GradedPoly) -> bool {
    if p.num_terms() != q.num_terms() {
        return false;
    }
    let (cp, ep) = p.terms()[0];
    let (cq, eq) = q.terms()[0];
    if ep != eq {
        return false;
    }
    p.scale(cq) == q.scale(cp)
}

/// `c_1 x^{e_1} + c_2 x^{e_2} = 0` for all binomials has a solution with all
/// coordinates nonzero iff every integer relation among the differences
/// `e_1 − e_2` is respected by the constants `−c_2/c_1`.
fn binomials_have_torus_zero(system: &[GradedPoly]) -> bool {
    let n = system[0].nvars();
    let mut diffs: Vec<ZVec> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    for p in system {
        let t = p.terms();
        let (c1, e1) = t[0];
        let (c2, e2) = t[1];
        diffs.push(
            e1.iter()
                .zip(e2.iter())
                .map(|(a, b)| BigInt::from(*a) - BigInt::from(*b))
                .collect(),
        );
        rhs.push(-(c2 / c1));
    }
    let m = IntMatrix::from_columns(&diffs, n);
    for rel in integer_kernel(&m) {
        let mut prod = BigRational::one();
        for (k, b) in rel.iter().zip(&rhs) {
            let e: i32 = i32::try_from(k.clone()).expect("small relation exponent");
            let pow = num_traits::pow(b.clone(), e.unsigned_abs() as usize);
            prod *= if e < 0 { pow.recip() } else { pow };
        }
        if !prod.is_one() {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalClass {
    pub canonical: GroupElement,
    pub anticanonical: GroupElement,
    pub q_gorenstein: bool,
    pub gorenstein: bool,
    pub q_fano: bool,
    pub fano: bool,
}

pub fn canonical_class(b: &BunchedRing) -> Result<CanonicalClass> {
    let pres = b.presentation();
    let q = pres.grading();
    let k: &AbelianGroup = q.target();
    let r = pres.nvars();
    let d = pres.relations().iter().filter(|f| !f.is_zero()).count();
    let dim = pres.ring_dim() as i64 - b.k0_rank() as i64;
    let expected = r as i64 - k.rank() as i64 - dim;
    if expected != d as i64 {
        return Err(Error::CompleteIntersectionMismatch { relations: d, expected });
    }
    let mut canonical = k.zero();
    for f in pres.relations().iter().filter(|f| !f.is_zero()) {
        canonical = k.add(&canonical, &f.k_degree(q)?);
    }
    for w in q.columns() {
        canonical = k.sub(&canonical, w);
    }
    let anticanonical = k.neg(&canonical);
    let lin_cap = b.phi().iter().all(|t| in_span(t, anticanonical.free()));
    let (pic, _) = picard_group(b)?;
    let gorenstein = pic.contains(&anticanonical);
    let q_fano = is_ample(b, anticanonical.free());
    Ok(CanonicalClass {
        canonical,
        anticanonical,
        q_gorenstein: lin_cap,
        gorenstein,
        q_fano,
        fano: q_fano && gorenstein,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyReport {
    pub dimension: usize,
    pub class_group: AbelianGroup,
    pub cones: DivisorCones,
    pub picard: Subgroup,
    pub picard_index: Index,
    pub canonical: CanonicalClass,
    pub q_factorial: bool,
    pub combinatorially_minimal: bool,
    /// Weight cone pointed and no generator of degree zero: `R_0` is the ground field.
    pub projective: bool,
    pub rlv: Vec<FaceOfOrthant>,
    pub cov: Vec<FaceOfOrthant>,
    pub strata: Vec<StratumInfo>,
    /// Hypotheses taken on trust, and the evidence for checked ones.
    pub notes: Vec<String>,
}

pub fn variety_report(b: &BunchedRing) -> Result<VarietyReport> {
    let pres = b.presentation();
    let cones = divisor_cones(b)?;
    let (picard, picard_index) = picard_group(b)?;
    let canonical = canonical_class(b)?;
    let fact = factoriality(b);
    let projective = cones.eff.is_pointed()
        && pres
            .grading()
            .columns()
            .iter()
            .all(|w| w.free().iter().any(|x| !x.is_zero()));
    let mut notes = Vec::new();
    let adm = validate_admissible(pres);
    if !adm.admissible {
        let f: Vec<String> = adm.failing_facets.iter().map(ToString::to_string).collect();
        notes.push(format!("generator system is not admissible at facets {}", f.join(" ")));
    }
    if pres.attestations.factorially_graded {
        notes.push("factorial grading attested, not verified".into());
    } else if !pres.is_toric() {
        notes.push("factorial grading assumed, not verified".into());
    }
    if let Some(f) = pres.relation() {
        match pres.relation_prime_evidence() {
            Some(ev) => notes.push(format!("relation {f} prime: {ev}")),
            None => notes.push(format!("relation {f} prime: assumed")),
        }
        for i in 0..pres.nvars() {
            if pres.generator_prime_evidence(i).is_none() {
                notes.push(format!("T{} prime: assumed", i + 1));
            }
        }
    }
    Ok(VarietyReport {
        dimension: pres.ring_dim() - b.k0_rank(),
        class_group: pres.grading().target().clone(),
        combinatorially_minimal: cones.eff == cones.mov,
        cones,
        picard,
        picard_index,
        canonical,
        q_factorial: fact.q_factorial,
        projective,
        rlv: b.rlv().to_vec(),
        cov: b.cov().to_vec(),
        strata: fact.strata,
        notes,
    })
}

/// Rank of the span of the given weights; used for stratum bookkeeping.
pub fn weight_span_dim(weights: &[ZVec], k: usize) -> usize {
    subspace_basis(weights, k).len()
}
