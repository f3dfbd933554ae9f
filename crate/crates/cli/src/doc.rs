//! The JSON input document and its conversion to core types.

use std::fmt;

use bunch_core::bunch::{BunchedRing, OrbitConeSet};
use bunch_core::cones::Cone;
use bunch_core::groups::{AbelianGroup, GradingMap};
use bunch_core::linalg::{IntMatrix, ZVec};
use bunch_core::modify::Model;
use bunch_core::poly::{Attestations, CoxPresentation, GradedPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

const SAFE: i64 = (1 << 53) - 1;

/// An integer; a JSON number inside the 53-bit safe range, a string outside it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if v.abs() <= SAFE => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        v.trim()
            .parse()
            .map(Int)
            .map_err(|_| E::custom(format!("not an integer: {v:?}")))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

/// A rational number written `"p/q"` or `"p"`; integers may be plain numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct RatVisitor;

impl Visitor<'_> for RatVisitor {
    type Value = Rat;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational number as \"p/q\" or an integer")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
        Ok(Rat(BigRational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
        Ok(Rat(BigRational::from_integer(v.into())))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
        bunch_core::poly::parse_coefficient(v)
            .map(Rat)
            .map_err(|e| E::custom(e.to_string()))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(RatVisitor)
    }
}

pub fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

pub fn big(v: &[Int]) -> ZVec {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn matrix_doc(m: &IntMatrix) -> Vec<Vec<Int>> {
    m.rows().iter().map(|r| ints(r)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingDoc {
    /// Rank of the free part of `K`.
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion_orders: Vec<Int>,
    pub free_rows: Vec<Vec<Int>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion_rows: Vec<Vec<Int>>,
    /// Needed only when there are no rows to read it from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nvars: Option<usize>,
}

impl GradingDoc {
    pub fn from_map(q: &GradingMap) -> Self {
        let free = q.free_part();
        Self {
            rank: q.target().rank(),
            torsion_orders: ints(q.target().torsion_orders()),
            free_rows: matrix_doc(&free),
            torsion_rows: q.torsion_rows().iter().map(|r| ints(r)).collect(),
            nvars: (free.nrows() == 0 && q.torsion_rows().is_empty()).then_some(q.source_rank()),
        }
    }

    pub fn nvars(&self) -> Result<usize, CliError> {
        self.free_rows
            .first()
            .or(self.torsion_rows.first())
            .map(Vec::len)
            .or(self.nvars)
            .ok_or_else(|| CliError::validation("grading has no rows; give nvars"))
    }

    pub fn to_map(&self) -> Result<GradingMap, CliError> {
        let r = self.nvars()?;
        if self.free_rows.len() != self.rank {
            return Err(CliError::validation(format!(
                "rank {} but {} free rows",
                self.rank,
                self.free_rows.len()
            )));
        }
        if self.torsion_rows.len() != self.torsion_orders.len() {
            return Err(CliError::validation("one torsion row per torsion order is required"));
        }
        for row in self.free_rows.iter().chain(&self.torsion_rows) {
            if row.len() != r {
                return Err(CliError::validation(format!(
                    "row of length {} in a grading of {r} variables",
                    row.len()
                )));
            }
        }
        for (row, d) in self.torsion_rows.iter().zip(&self.torsion_orders) {
            if row.iter().any(|x| x.0.is_negative() || x.0 >= d.0) {
                return Err(CliError::validation(format!("torsion row not reduced modulo {}", d.0)));
            }
        }
        let k = AbelianGroup::new(self.rank, big(&self.torsion_orders))?;
        let free: Vec<ZVec> = self.free_rows.iter().map(|r| big(r)).collect();
        let tors: Vec<ZVec> = self.torsion_rows.iter().map(|r| big(r)).collect();
        if free.is_empty() && tors.is_empty() {
            let cols = vec![k.zero(); r];
            return Ok(GradingMap::new(k, cols)?);
        }
        Ok(GradingMap::from_rows(k, &free, &tors)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: Rat,
    pub exponents: Vec<u32>,
}

pub fn terms_doc(f: &GradedPoly) -> Vec<TermDoc> {
    f.terms()
        .into_iter()
        .map(|(c, e)| TermDoc {
            coeff: Rat(c.clone()),
            exponents: e.clone(),
        })
        .collect()
}

/// Exactly one of the two fields is set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BunchSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chamber_point: Option<Vec<Int>>,
    /// Each cone as the 1-based indices of the weights generating it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cones: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AttestationsDoc {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub generators_prime: Vec<bool>,
    pub relation_prime: bool,
    pub relation_derived_prime: bool,
    pub factorially_graded: bool,
}

impl AttestationsDoc {
    pub fn from_core(a: &Attestations) -> Self {
        Self {
            generators_prime: a.generators_prime.clone(),
            relation_prime: a.relation_prime,
            relation_derived_prime: a.relation_derived_prime,
            factorially_graded: a.factorially_graded,
        }
    }
}

/// The toric ambient: Gale dual `p` (rows spanning the kernel of the
/// grading) and a point inside the defining chamber.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AmbientDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<Vec<Int>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chamber_point: Option<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ScriptStep {
    SubdivideAt(Vec<Int>),
    /// 1-based variable index.
    Contract(usize),
    RetargetChamber(Vec<Int>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default = "default_version")]
    pub format_version: u32,
    pub grading: GradingDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relation: Vec<TermDoc>,
    pub bunch: BunchSpec,
    #[serde(default)]
    pub attestations: AttestationsDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<AmbientDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub script: Vec<ScriptStep>,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: InputDocument = serde_json::from_str(text).map_err(CliError::from_json)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(CliError::validation(format!(
                "unknown format_version {}",
                doc.format_version
            )));
        }
        match (&doc.bunch.chamber_point, &doc.bunch.cones) {
            (Some(_), None) | (None, Some(_)) => Ok(doc),
            _ => Err(CliError::validation(
                "bunch needs exactly one of chamber_point and cones",
            )),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn presentation(&self) -> Result<CoxPresentation, CliError> {
        let q = self.grading.to_map()?;
        let r = q.source_rank();
        let a = &self.attestations;
        if !a.generators_prime.is_empty() && a.generators_prime.len() != r {
            return Err(CliError::validation(format!(
                "{} generator attestations for {r} variables",
                a.generators_prime.len()
            )));
        }
        let att = Attestations {
            generators_prime: a.generators_prime.clone(),
            relation_prime: a.relation_prime,
            relation_derived_prime: a.relation_derived_prime,
            factorially_graded: a.factorially_graded,
        };
        if self.relation.is_empty() {
            let mut pres = CoxPresentation::toric(q);
            if a.factorially_graded {
                pres.attestations.factorially_graded = true;
            }
            return Ok(pres);
        }
        let mut terms = Vec::new();
        for t in &self.relation {
            if t.exponents.len() != r {
                return Err(CliError::validation(format!(
                    "term with {} exponents in {r} variables",
                    t.exponents.len()
                )));
            }
            terms.push((t.coeff.0.clone(), t.exponents.clone()));
        }
        let f = GradedPoly::new(r, terms)?;
        Ok(CoxPresentation::new(q, vec![f], att)?)
    }

    pub fn bunch(&self, max_vars: usize) -> Result<BunchedRing, CliError> {
        let pres = self.presentation()?;
        if pres.nvars() > max_vars {
            return Err(bunch_core::Error::SizeLimit {
                nvars: pres.nvars(),
                limit: max_vars,
            }
            .into());
        }
        let k = pres.grading().target().rank();
        if let Some(w) = &self.bunch.chamber_point {
            if w.len() != k {
                return Err(CliError::validation(format!(
                    "chamber point of length {} for rank {k}",
                    w.len()
                )));
            }
            return Ok(BunchedRing::from_chamber_point(pres, &big(w), max_vars)?);
        }
        let weights = pres.grading().free_weights();
        let mut phi = Vec::new();
        for idx in self.bunch.cones.as_deref().unwrap_or_default() {
            let mut gens = Vec::new();
            for &i in idx {
                if i == 0 || i > weights.len() {
                    return Err(CliError::validation(format!(
                        "weight index {i} out of range 1..={}",
                        weights.len()
                    )));
                }
                gens.push(weights[i - 1].clone());
            }
            phi.push(Cone::generated_by(k, &gens)?);
        }
        Ok(BunchedRing::with_limit(pres, phi, max_vars)?)
    }

    pub fn model(&self, max_vars: usize) -> Result<Model, CliError> {
        let b = self.bunch(max_vars)?;
        let amb = self.ambient.clone().unwrap_or_default();
        let r = b.presentation().nvars();
        let p = match &amb.p {
            Some(rows) => {
                if rows.iter().any(|row| row.len() != r) {
                    return Err(CliError::validation(format!("rows of P must have {r} entries")));
                }
                Some(IntMatrix::from_rows(rows.iter().map(|x| big(x)).collect(), r))
            }
            None => None,
        };
        let eta = match &amb.chamber_point {
            Some(w) => {
                let toric = OrbitConeSet::compute_toric(b.presentation(), max_vars)?;
                let eta = toric.git_cone_at(&big(w))?;
                if !eta.is_full_dimensional() || !eta.rel_interior_contains(&big(w))? {
                    return Err(CliError::validation(
                        "ambient chamber point is not inside a full-dimensional chamber",
                    ));
                }
                Some(eta)
            }
            None => None,
        };
        Ok(Model::new(b, p, eta)?)
    }
}
