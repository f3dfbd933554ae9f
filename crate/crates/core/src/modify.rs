//! Stellar modifications of the ambient toric variety and what they do to
//! the Cox ring: blow-ups, contractions, small transforms and reduction to a
//! combinatorially minimal model.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bunch::{
    ambient_fan_in, bunch_from_chamber, chamber_in_ample, enumerate_chamber_fan, moving_cone, projected_face,
    weight_cone, BunchedRing, OrbitConeSet, DEFAULT_MAX_VARS,
};
use crate::cones::{gale_transform, stellar_subdivide, Cone, FaceOfOrthant, Fan};
use crate::error::{Error, Result};
use crate::groups::{cokernel_grading, GradingMap, GroupElement};
use crate::linalg::{fmt_vec, is_zero_vec, primitive, row_lattice_basis, solve_rational, to_rational, IntMatrix, ZVec};
use crate::poly::{Attestations, CoxPresentation, GradedPoly};

/// `m_∞ v_∞ = Σ a_i v_i` over the rays of the cone `σ_0` containing `v_∞` in
/// its relative interior. Indices refer to columns of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StellarData {
    pub sigma0: Vec<usize>,
    pub v_inf: ZVec,
    /// One entry per column of `P`; zero off `σ_0`.
    pub a: Vec<u64>,
    pub m_inf: BigInt,
}

impl fmt::Display for StellarData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .sigma0
            .iter()
            .map(|&i| format!("{}*v{}", self.a[i], i + 1))
            .collect();
        write!(f, "{}*{} = {}", self.m_inf, fmt_vec(&self.v_inf), terms.join(" + "))
    }
}

/// Stellar data of `v` with respect to the fan with rays the columns of `p`.
pub fn stellar_data(p: &IntMatrix, fan: &Fan, v: &[BigInt]) -> Result<StellarData> {
    let n = fan.ambient_dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    if is_zero_vec(v) || primitive(v) != v {
        return Err(Error::NotPrimitive(fmt_vec(v)));
    }
    let home = fan
        .maximal_cones()
        .into_iter()
        .find(|c| c.contains(v))
        .ok_or_else(|| Error::OutsideSupport(fmt_vec(v)))?;
    let sigma0 = home.minimal_face_containing(v);
    if sigma0.dim() <= 1 {
        return Err(Error::OnRay(fmt_vec(v)));
    }
    if !sigma0.is_simplicial() {
        return Err(Error::NotSimplicial(sigma0.to_string()));
    }
    let cols = p.columns();
    let mut idx = Vec::new();
    for ray in sigma0.rays() {
        let j = cols
            .iter()
            .position(|c| !is_zero_vec(c) && primitive(c) == *ray)
            .ok_or_else(|| Error::Invalid(format!("fan ray {} is not a column of P", fmt_vec(ray))))?;
        idx.push(j);
    }
    idx.sort_unstable();
    // v = Σ x_j v_j, solved row by row
    let a_rows: Vec<Vec<BigRational>> = (0..n)
        .map(|row| {
            idx.iter()
                .map(|&j| BigRational::from_integer(cols[j][row].clone()))
                .collect()
        })
        .collect();
    let x = solve_rational(&a_rows, &to_rational(v), idx.len())
        .ok_or_else(|| Error::Invalid("vector not in the span of its cone".into()))?;
    let m = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut a = vec![0u64; p.ncols()];
    for (&j, q) in idx.iter().zip(&x) {
        let c = (q * BigRational::from_integer(m.clone())).to_integer();
        if !c.is_positive() {
            return Err(Error::Invalid(format!("{} is not interior to {sigma0}", fmt_vec(v))));
        }
        a[j] = c
            .to_u64()
            .ok_or_else(|| Error::Unsupported("stellar coefficient too large".into()))?;
    }
    Ok(StellarData {
        sigma0: idx,
        v_inf: v.to_vec(),
        a,
        m_inf: m,
    })
}

/// How the admissibility of a stellar modification for `f_0` was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityEvidence {
    pub k0: u64,
    /// Lowest part of `f_0` for the auxiliary grading `deg T_i = a_i`.
    pub g_k0: Option<GradedPoly>,
    pub primality: String,
    /// False when primality of `g_{k_0}` is assumed rather than shown.
    pub certified: bool,
}

pub fn check_admissible(pres: &CoxPresentation, s: &StellarData) -> Result<AdmissibilityEvidence> {
    let r = pres.nvars();
    if s.a.len() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: s.a.len(),
        });
    }
    let Some(f) = pres.relation().filter(|f| !f.is_zero()) else {
        return Ok(AdmissibilityEvidence {
            k0: 0,
            g_k0: None,
            primality: "polynomial ring".into(),
            certified: true,
        });
    };
    let outside = FaceOfOrthant::new((0..r).filter(|j| !s.sigma0.contains(j)));
    if f.restrict_to_face(&outside).num_terms() == 1 {
        return Err(Error::Inadmissible(format!(
            "the relation restricted to {outside} is a monomial; the torus orbit of the center misses the total coordinate space"
        )));
    }
    let parts = f.aux_grading_decompose(&s.a);
    let (k0, g) = parts.into_iter().next().expect("nonzero relation");
    if g.is_monomial() {
        return Err(Error::Inadmissible(format!("lowest part {g} is a monomial")));
    }
    if g.support().len() < 2 {
        return Err(Error::Inadmissible(format!(
            "lowest part {g} depends on a single variable"
        )));
    }
    let (primality, certified) = if let Some(ev) = g.irreducibility_evidence() {
        (format!("{g} irreducible: {ev}"), true)
    } else if g == *f {
        match pres.relation_prime_evidence() {
            Some(ev) => (format!("{g} is the whole relation, prime: {ev}"), true),
            None => (format!("{g} is the whole relation; primality assumed"), false),
        }
    } else {
        (format!("primality of {g} assumed"), false)
    };
    Ok(AdmissibilityEvidence {
        k0,
        g_k0: Some(g),
        primality,
        certified,
    })
}

/// `f_0(T_∞^{a_1} T_1, …) / T_∞^{k_0}` in `r + 1` variables, `T_∞` last.
pub fn pullback_relation(f0: &GradedPoly, s: &StellarData) -> (GradedPoly, u64) {
    let r = f0.nvars();
    let weight = |e: &[u32]| -> u64 { e.iter().zip(&s.a).map(|(&x, &a)| u64::from(x) * a).sum() };
    let k0 = f0.terms().iter().map(|(_, e)| weight(e)).min().unwrap_or(0);
    let g = f0.map_exponents(r + 1, |e| {
        let mut out = e.to_vec();
        out.push(u32::try_from(weight(e) - k0).expect("exponent fits"));
        out
    });
    (g, k0)
}

/// The relation of the blown-up Cox ring and the shift `k_0`.
pub fn blowup_cox_relation(f0: &GradedPoly, s: &StellarData) -> Result<(GradedPoly, u64)> {
    let (pulled, k0) = pullback_relation(f0, s);
    let m = s
        .m_inf
        .to_u32()
        .ok_or_else(|| Error::Unsupported("index too large".into()))?;
    let r = f0.nvars();
    let f1 = pulled.try_map_exponents(r + 1, |e| {
        if e[r] % m != 0 {
            return Err(Error::AdmissibilityViolated(format!(
                "exponent {} of the new variable is not a multiple of the index {m}",
                e[r]
            )));
        }
        let mut out = e.to_vec();
        out[r] /= m;
        Ok(out)
    })?;
    Ok((f1, k0))
}

/// The grading with kernel spanned by the rows of `[P | v_∞]`.
pub fn regrade(p: &IntMatrix, v_inf: &[BigInt]) -> GradingMap {
    let mut p1 = p.clone();
    p1.push_column(v_inf);
    cokernel_grading(&p1)
}

/// Inverse of [`blowup_cox_relation`]: the relation after removing variable
/// `inf` from `f1`, where `s` describes `v_inf` on the remaining variables.
/// Also returns the degree `c` of the lift.
pub fn contract_cox_relation(f1: &GradedPoly, inf: usize, s: &StellarData) -> Result<(GradedPoly, BigInt)> {
    let r1 = f1.nvars();
    if inf >= r1 || s.a.len() + 1 != r1 {
        return Err(Error::DimensionMismatch {
            expected: r1 - 1,
            found: s.a.len(),
        });
    }
    let rest: Vec<usize> = (0..r1).filter(|&j| j != inf).collect();
    let mut c: Option<BigInt> = None;
    for (_, e) in f1.terms() {
        let lift = BigInt::from(e[inf]) * &s.m_inf;
        let down: BigInt = rest
            .iter()
            .zip(&s.a)
            .map(|(&j, &a)| BigInt::from(u64::from(e[j]) * a))
            .sum();
        let d = lift - down;
        match &c {
            None => c = Some(d),
            Some(prev) if *prev != d => {
                return Err(Error::AdmissibilityViolated(format!(
                    "lifted relation is not homogeneous for the contracting action ({prev} vs {d})"
                )))
            }
            _ => {}
        }
    }
    let c = c.unwrap_or_else(BigInt::zero);
    if c.is_positive() {
        return Err(Error::PositiveLiftDegree(c.to_string()));
    }
    // after multiplying by T_∞^{-c} each monomial is Π (T_∞^{a_j} T_j)^{e_j}
    let f0 = f1.map_exponents(r1 - 1, |e| rest.iter().map(|&j| e[j]).collect());
    if f0.num_terms() != f1.num_terms() {
        return Err(Error::AdmissibilityViolated(
            "monomials collapse under the contraction".into(),
        ));
    }
    Ok((f0, c))
}

/// Indices `i` with `w_i^0` spanning an extremal ray of the weight cone that
/// carries no other weight.
pub fn exceptional_weights(b: &BunchedRing) -> Vec<usize> {
    let pres = b.presentation();
    let eff = weight_cone(pres);
    if !eff.is_pointed() {
        return Vec::new();
    }
    let w: Vec<ZVec> = pres.grading().free_weights();
    let dirs: Vec<Option<ZVec>> = w.iter().map(|x| (!is_zero_vec(x)).then(|| primitive(x))).collect();
    (0..w.len())
        .filter(|&i| {
            let Some(d) = &dirs[i] else { return false };
            eff.rays().contains(d) && dirs.iter().enumerate().all(|(j, e)| j == i || e.as_ref() != Some(d))
        })
        .collect()
}

/// A bunched ring together with an explicit Gale dual `P` (whose columns
/// are the rays of the ambient fan) and the toric chamber `η` defining the
/// ambient toric variety.
#[derive(Clone, Debug)]
pub struct Model {
    pub bunch: BunchedRing,
    pub p: IntMatrix,
    pub eta: Cone,
}

impl Model {
    /// `p` defaults to the Gale transform, `eta` to the first toric chamber
    /// inside the ample cone.
    pub fn new(bunch: BunchedRing, p: Option<IntMatrix>, eta: Option<Cone>) -> Result<Self> {
        let q = bunch.presentation().grading();
        let p = match p {
            Some(p) => {
                let r = q.source_rank();
                if p.ncols() != r {
                    return Err(Error::DimensionMismatch {
                        expected: r,
                        found: p.ncols(),
                    });
                }
                if row_lattice_basis(p.rows(), r) != row_lattice_basis(&q.kernel_basis(), r) {
                    return Err(Error::Invalid("rows of P do not span the kernel of the grading".into()));
                }
                p
            }
            None => gale_transform(q).p,
        };
        let eta = match eta {
            Some(eta) => {
                if !chamber_in_ample(&bunch, &eta) {
                    return Err(Error::Invalid(format!(
                        "ambient chamber {eta} is not inside the ample cone"
                    )));
                }
                eta
            }
            None => default_ambient_chamber(&bunch)?,
        };
        Ok(Self { bunch, p, eta })
    }

    pub fn presentation(&self) -> &CoxPresentation {
        self.bunch.presentation()
    }

    pub fn fan(&self) -> Result<Fan> {
        ambient_fan_in(self.presentation(), &self.eta, &self.p, DEFAULT_MAX_VARS)
    }
}

fn toric_chambers(pres: &CoxPresentation) -> Result<Vec<Cone>> {
    let s = OrbitConeSet::compute_toric(pres, DEFAULT_MAX_VARS)?;
    Ok(enumerate_chamber_fan(&s)?.chambers)
}

fn ring_chambers(b: &BunchedRing) -> Result<Vec<Cone>> {
    Ok(enumerate_chamber_fan(b.orbit_cones())?.chambers)
}

fn default_ambient_chamber(b: &BunchedRing) -> Result<Cone> {
    toric_chambers(b.presentation())?
        .into_iter()
        .find(|eta| eta.is_full_dimensional() && chamber_in_ample(b, eta))
        .ok_or_else(|| Error::NotAChamber("no full-dimensional toric chamber inside the ample cone".into()))
}

/// The chamber `⋂ Q^0(γ_0(σ))` of a fan whose rays are columns of `p`, where
/// `γ_0(σ)` collects the variables whose ray is not a ray of `σ`.
pub fn chamber_of_fan(pres: &CoxPresentation, p: &IntMatrix, fan: &Fan) -> Result<Cone> {
    let cols = p.columns();
    let k = pres.grading().target().rank();
    let mut faces = Vec::new();
    for sigma in fan.maximal_cones() {
        let off = FaceOfOrthant::new(
            (0..cols.len()).filter(|&j| is_zero_vec(&cols[j]) || !sigma.rays().contains(&primitive(&cols[j]))),
        );
        faces.push(projected_face(pres, &off));
    }
    let eta = Cone::intersect_all(k, &faces)?;
    if !eta.is_full_dimensional() {
        return Err(Error::NotAChamber(eta.to_string()));
    }
    Ok(eta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModificationKind {
    BlowUp,
    Contraction,
    SmallTransform,
}

impl fmt::Display for ModificationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModificationKind::BlowUp => "blow_up",
            ModificationKind::Contraction => "contraction",
            ModificationKind::SmallTransform => "small_transform",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ModificationRecord {
    pub kind: ModificationKind,
    pub stellar: Option<StellarData>,
    /// Source and target chambers of the semiample cones, for contractions
    /// and small transforms.
    pub chambers: Option<(Cone, Cone)>,
    pub before: Model,
    pub after: Model,
    /// The variable added (blow-up) or removed (contraction), 0-based.
    pub variable: Option<usize>,
    pub exceptional_weight: Option<GroupElement>,
    pub k0: Option<u64>,
    pub lift_degree: Option<BigInt>,
    /// Blow-up only: the relation before taking the root of the new variable.
    pub pullback: Option<GradedPoly>,
    pub notes: Vec<String>,
}

impl ModificationRecord {
    fn new(kind: ModificationKind, before: &Model, after: Model) -> Self {
        Self {
            kind,
            stellar: None,
            chambers: None,
            before: before.clone(),
            after,
            variable: None,
            exceptional_weight: None,
            k0: None,
            lift_degree: None,
            pullback: None,
            notes: Vec::new(),
        }
    }
}

fn derived_attestations(
    old: &Attestations,
    keep: impl Iterator<Item = Option<usize>>,
    has_relation: bool,
) -> Attestations {
    Attestations {
        generators_prime: keep
            .map(|j| j.is_some_and(|j| old.generators_prime.get(j).copied().unwrap_or(false)))
            .collect(),
        relation_prime: false,
        relation_derived_prime: has_relation,
        factorially_graded: old.factorially_graded,
    }
}

fn homogeneity_violation(e: Error) -> Error {
    match e {
        Error::NotHomogeneous { .. } => Error::AdmissibilityViolated(e.to_string()),
        e => e,
    }
}

/// Blow-up of the model along the stellar subdivision of its ambient fan at `v`.
pub fn blow_up(model: &Model, v: &[BigInt]) -> Result<ModificationRecord> {
    let pres = model.presentation();
    let r = pres.nvars();
    let fan = model.fan()?;
    let s = stellar_data(&model.p, &fan, v)?;
    let evidence = check_admissible(pres, &s)?;
    let mut notes = vec![
        format!("stellar data {s}"),
        format!("admissibility: {}", evidence.primality),
    ];
    if !evidence.certified {
        notes.push("normality of the new total coordinate space assumed".into());
    }
    let (relations, pullback) = match pres.relation().filter(|f| !f.is_zero()) {
        Some(f0) => {
            let (pulled, _) = pullback_relation(f0, &s);
            let (f1, _) = blowup_cox_relation(f0, &s)?;
            (vec![f1], Some(pulled))
        }
        None => (Vec::new(), None),
    };
    let q1 = regrade(&model.p, v);
    let att = derived_attestations(
        &pres.attestations,
        (0..=r).map(|j| (j < r).then_some(j)),
        !relations.is_empty(),
    );
    let pres1 = CoxPresentation::new(q1, relations, att).map_err(homogeneity_violation)?;
    let mut p1 = model.p.clone();
    p1.push_column(v);
    let fan1 = stellar_subdivide(&fan, v)?;
    let eta1 = chamber_of_fan(&pres1, &p1, &fan1)?;
    let bunch1 = BunchedRing::from_chamber_point(pres1, &eta1.interior_point(), DEFAULT_MAX_VARS)?;
    let w_inf = bunch1.presentation().grading().column(r).clone();
    if !exceptional_weights(&bunch1).contains(&r) {
        notes.push(format!("new weight {w_inf} is not exceptional"));
    }
    let after = Model {
        bunch: bunch1,
        p: p1,
        eta: eta1,
    };
    let mut rec = ModificationRecord::new(ModificationKind::BlowUp, model, after);
    rec.k0 = Some(evidence.k0);
    rec.stellar = Some(s);
    rec.variable = Some(r);
    rec.exceptional_weight = Some(w_inf);
    rec.pullback = pullback;
    rec.notes = notes;
    Ok(rec)
}

/// A contraction of the divisor of variable `index`: chambers `λ_0, λ_1` of
/// the ring's GIT fan and `η_0, η_1` of the toric one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub index: usize,
    pub lambda0: Cone,
    pub lambda1: Cone,
    pub eta0: Cone,
    pub eta1: Cone,
}

fn share_facet(a: &Cone, b: &Cone) -> bool {
    a.intersect(b)
        .is_ok_and(|m| m.dim() + 1 == a.dim() && m.is_face_of(a).unwrap_or(false) && m.is_face_of(b).unwrap_or(false))
}

fn without_column(p: &IntMatrix, i: usize) -> IntMatrix {
    let mut p0 = p.clone();
    p0.remove_column(i);
    p0
}

/// Contractions available from the model, ordered by variable index.
pub fn find_contractions(model: &Model) -> Result<Vec<Contraction>> {
    let b = &model.bunch;
    let k = b.k0_rank();
    let pres = b.presentation();
    let lambda1 = Cone::intersect_all(k, b.phi())?;
    if !lambda1.is_full_dimensional() || !weight_cone(pres).is_pointed() {
        return Ok(Vec::new());
    }
    let ring = ring_chambers(b)?;
    let toric = toric_chambers(pres)?;
    let weights = pres.grading().free_weights();
    let mut found = Vec::new();
    for i in exceptional_weights(b) {
        let w = &weights[i];
        'lambda: for lambda0 in ring
            .iter()
            .filter(|l| l.is_full_dimensional() && l.contains(w) && share_facet(l, &lambda1))
        {
            let etas0 = toric
                .iter()
                .filter(|e| e.is_full_dimensional() && e.contains(w) && e.relint_subset(lambda0));
            for eta0 in etas0 {
                let mut etas1: Vec<&Cone> = toric
                    .iter()
                    .filter(|e| e.is_full_dimensional() && e.relint_subset(&lambda1) && share_facet(e, eta0))
                    .collect();
                etas1.sort_by_key(|e| **e != model.eta);
                for eta1 in etas1 {
                    if stellar_pair(model, i, eta0, eta1).is_ok() {
                        found.push(Contraction {
                            index: i,
                            lambda0: lambda0.clone(),
                            lambda1: lambda1.clone(),
                            eta0: eta0.clone(),
                            eta1: eta1.clone(),
                        });
                        break 'lambda;
                    }
                }
            }
        }
    }
    Ok(found)
}

/// Checks that subdividing the fan of `η_0` at `v_i` gives the fan of `η_1`
/// and returns the fan of `η_0` with its stellar data.
fn stellar_pair(model: &Model, i: usize, eta0: &Cone, eta1: &Cone) -> Result<(Fan, StellarData)> {
    let pres = model.presentation();
    let fan1 = ambient_fan_in(pres, eta1, &model.p, DEFAULT_MAX_VARS)?;
    let fan0 = ambient_fan_in(pres, eta0, &model.p, DEFAULT_MAX_VARS)?;
    let r = pres.nvars();
    if fan0.rays().len() + 1 != r || fan1.rays().len() != r {
        return Err(Error::NoContraction(
            "the chambers do not differ by exactly one ray".into(),
        ));
    }
    let v = model.p.column(i);
    if primitive(&v) != v {
        return Err(Error::NoContraction(format!("v{} is not primitive", i + 1)));
    }
    if !stellar_subdivide(&fan0, &v)?.same_as(&fan1) {
        return Err(Error::NoContraction(
            "the fans are not related by a stellar subdivision".into(),
        ));
    }
    let p0 = without_column(&model.p, i);
    let s = stellar_data(&p0, &fan0, &v)?;
    Ok((fan0, s))
}

/// Performs the contraction `c` found by [`find_contractions`].
pub fn contract(model: &Model, c: &Contraction) -> Result<ModificationRecord> {
    let pres = model.presentation();
    let i = c.index;
    let (fan0, s) = stellar_pair(model, i, &c.eta0, &c.eta1)?;
    let p0 = without_column(&model.p, i);
    let q0 = cokernel_grading(&p0);
    let mut notes = vec![format!("stellar data {s}")];
    let (relations, lift_degree) = match pres.relation().filter(|f| !f.is_zero()) {
        Some(f1) => {
            let (f0, deg) = contract_cox_relation(f1, i, &s)?;
            (vec![f0], Some(deg))
        }
        None => (Vec::new(), None),
    };
    let keep = (0..pres.nvars()).filter(|&j| j != i).map(Some);
    let att = derived_attestations(&pres.attestations, keep, !relations.is_empty());
    let pres0 = CoxPresentation::new(q0, relations, att).map_err(homogeneity_violation)?;
    let evidence = check_admissible(&pres0, &s)?;
    notes.push(format!("admissibility of the inverse blow-up: {}", evidence.primality));
    if !evidence.certified {
        notes.push("normality of the contracted total coordinate space assumed".into());
    }
    let eta0 = chamber_of_fan(&pres0, &p0, &fan0)?;
    let bunch0 = BunchedRing::from_chamber_point(pres0, &eta0.interior_point(), DEFAULT_MAX_VARS)?;
    let after = Model {
        bunch: bunch0,
        p: p0,
        eta: eta0,
    };
    let mut rec = ModificationRecord::new(ModificationKind::Contraction, model, after);
    rec.exceptional_weight = Some(pres.grading().column(i).clone());
    rec.variable = Some(i);
    rec.stellar = Some(s);
    rec.chambers = Some((c.lambda1.clone(), c.lambda0.clone()));
    rec.k0 = Some(evidence.k0);
    rec.lift_degree = lift_degree;
    rec.notes = notes;
    Ok(rec)
}

/// Contracts the divisor of variable `index`, if a contraction is available.
pub fn contract_variable(model: &Model, index: usize) -> Result<ModificationRecord> {
    let cs = find_contractions(model)?;
    let c = cs
        .iter()
        .find(|c| c.index == index)
        .ok_or_else(|| Error::NoContraction(format!("no contraction of T{} from the current chamber", index + 1)))?;
    contract(model, c)
}

/// The bunch with semiample cone `λ_new`, a full-dimensional chamber inside
/// the moving cone; it differs from `b` in codimension two at most.
pub fn small_transform(b: &BunchedRing, lambda_new: &Cone) -> Result<BunchedRing> {
    if !lambda_new.is_full_dimensional() {
        return Err(Error::NotAChamber(lambda_new.to_string()));
    }
    let here = b.orbit_cones().git_cone_at(&lambda_new.interior_point())?;
    if here != *lambda_new {
        return Err(Error::NotAChamber(lambda_new.to_string()));
    }
    bunch_from_chamber(b.presentation().clone(), lambda_new)
}

/// The model over the chamber `λ_new`, with a fresh ambient chamber.
pub fn retarget(model: &Model, lambda_new: &Cone) -> Result<ModificationRecord> {
    let b = small_transform(&model.bunch, lambda_new)?;
    let before = Cone::intersect_all(model.bunch.k0_rank(), model.bunch.phi())?;
    let after = Model::new(b, Some(model.p.clone()), None)?;
    let mut rec = ModificationRecord::new(ModificationKind::SmallTransform, model, after);
    rec.chambers = Some((before, lambda_new.clone()));
    rec.notes.push("isomorphic in codimension one".into());
    Ok(rec)
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub steps: Vec<ModificationRecord>,
    pub minimal: bool,
    pub diagnostic: Option<String>,
}

impl Reduction {
    pub fn final_model<'a>(&'a self, start: &'a Model) -> &'a Model {
        self.steps.last().map_or(start, |s| &s.after)
    }
}

/// Contracts exceptional divisors, smallest index first, passing to another
/// chamber of the moving cone when the current one admits no contraction,
/// until the weight cone equals the moving cone.
pub fn reduce_to_minimal(model: &Model) -> Result<Reduction> {
    let mut steps: Vec<ModificationRecord> = Vec::new();
    let mut current = model.clone();
    loop {
        let pres = current.presentation();
        if weight_cone(pres) == moving_cone(pres) {
            return Ok(Reduction {
                steps,
                minimal: true,
                diagnostic: None,
            });
        }
        let here = find_contractions(&current)?;
        let mut next = here.first().map(|c| (None, c.clone()));
        if next.is_none() {
            let mov = moving_cone(pres);
            let sample = Cone::intersect_all(current.bunch.k0_rank(), current.bunch.phi())?;
            for lambda in ring_chambers(&current.bunch)? {
                if !lambda.is_full_dimensional() || lambda == sample || !mov.contains_cone(&lambda) {
                    continue;
                }
                let moved = retarget(&current, &lambda)?;
                if let Some(c) = find_contractions(&moved.after)?.into_iter().next() {
                    next = Some((Some(moved), c));
                    break;
                }
            }
        }
        let Some((moved, c)) = next else {
            return Ok(Reduction {
                steps,
                minimal: false,
                diagnostic: Some("no admissible chamber geometry for any exceptional weight".into()),
            });
        };
        if let Some(m) = moved {
            current = m.after.clone();
            steps.push(m);
        }
        match contract(&current, &c) {
            Ok(rec) => {
                current = rec.after.clone();
                steps.push(rec);
            }
            Err(e) => {
                return Ok(Reduction {
                    steps,
                    minimal: false,
                    diagnostic: Some(format!("contraction of T{} failed: {e}", c.index + 1)),
                })
            }
        }
    }
}
