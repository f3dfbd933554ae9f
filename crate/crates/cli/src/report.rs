//! Report documents: serializable summaries of computed invariants.

use std::fmt::Write as _;

use bunch_core::bunch::ChamberFan;
use bunch_core::cones::Cone;
use bunch_core::geometry::{Truth, VarietyReport};
use bunch_core::groups::{AbelianGroup, GroupElement, Subgroup};
use bunch_core::modify::{exceptional_weights, Model, ModificationRecord, StellarData};
use serde::{Deserialize, Serialize};

use crate::doc::terms_doc;
use crate::doc::{
    ints, matrix_doc, AmbientDoc, AttestationsDoc, BunchSpec, GradingDoc, InputDocument, Int, TermDoc, FORMAT_VERSION,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeDoc {
    pub rays: Vec<Vec<Int>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<Vec<Int>>,
}

impl ConeDoc {
    pub fn from_cone(c: &Cone) -> Self {
        Self {
            rays: c.rays().iter().map(|r| ints(r)).collect(),
            lineality: c.lineality_basis().iter().map(|r| ints(r)).collect(),
        }
    }
}

fn cone_text(c: &ConeDoc) -> String {
    let v: Vec<String> = c.rays.iter().map(|r| vec_text(r)).collect();
    let mut s = format!("cone({})", v.join(", "));
    if !c.lineality.is_empty() {
        let l: Vec<String> = c.lineality.iter().map(|r| vec_text(r)).collect();
        s += &format!(" + lin({})", l.join(", "));
    }
    s
}

fn vec_text(v: &[Int]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.0.to_string()).collect();
    format!("({})", s.join(","))
}

fn face_text(f: &[usize]) -> String {
    let s: Vec<String> = f.iter().map(ToString::to_string).collect();
    format!("{{{}}}", s.join(","))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub free: Vec<Int>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<Int>,
}

impl ElementDoc {
    pub fn from_element(w: &GroupElement) -> Self {
        Self {
            free: ints(w.free()),
            torsion: ints(w.torsion()),
        }
    }
}

fn element_text(w: &ElementDoc) -> String {
    let f: Vec<String> = w.free.iter().map(|x| x.0.to_string()).collect();
    if w.torsion.is_empty() {
        format!("({})", f.join(","))
    } else {
        let t: Vec<String> = w.torsion.iter().map(|x| format!("{}bar", x.0)).collect();
        format!("({}|{})", f.join(","), t.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion_orders: Vec<Int>,
}

impl GroupDoc {
    pub fn from_group(k: &AbelianGroup) -> Self {
        Self {
            rank: k.rank(),
            torsion_orders: ints(k.torsion_orders()),
        }
    }
}

fn group_text(k: &GroupDoc) -> String {
    let mut parts = Vec::new();
    match k.rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        n => parts.push(format!("Z^{n}")),
    }
    parts.extend(k.torsion_orders.iter().map(|d| format!("Z/{}", d.0)));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubgroupDoc {
    pub generators: Vec<ElementDoc>,
    /// A decimal number or `"infinite"`.
    pub index: String,
}

impl SubgroupDoc {
    pub fn from_subgroup(s: &Subgroup) -> Self {
        Self {
            generators: s.generators().iter().map(ElementDoc::from_element).collect(),
            index: s.index().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmpleDoc {
    pub closure: ConeDoc,
    pub nonempty: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalDoc {
    pub canonical: ElementDoc,
    pub anticanonical: ElementDoc,
    pub cartier: bool,
    pub q_gorenstein: bool,
    pub gorenstein: bool,
    pub q_fano: bool,
    pub fano: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratumDoc {
    /// 1-based indices of the face of the orthant.
    pub face: Vec<usize>,
    pub dim: usize,
    pub local_class_lattice: SubgroupDoc,
    pub factorial: bool,
    pub q_factorial: bool,
    /// `yes`, `no` or `unknown: <reason>`.
    pub smooth: String,
    pub description: String,
}

fn truth_text(t: &Truth) -> String {
    match t {
        Truth::Yes => "yes".into(),
        Truth::No => "no".into(),
        Truth::Unknown(why) => format!("unknown: {why}"),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VarietyDoc {
    pub dimension: usize,
    pub class_group: GroupDoc,
    pub weights: Vec<ElementDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
    pub bunch: Vec<ConeDoc>,
    pub effective_cone: ConeDoc,
    pub moving_cone: ConeDoc,
    pub semiample_cone: ConeDoc,
    pub ample: AmpleDoc,
    pub picard: SubgroupDoc,
    pub canonical: CanonicalDoc,
    pub q_factorial: bool,
    pub combinatorially_minimal: bool,
    pub projective: bool,
    pub relevant_faces: Vec<Vec<usize>>,
    pub covering_faces: Vec<Vec<usize>>,
    pub strata: Vec<StratumDoc>,
    /// 1-based.
    pub exceptional_weights: Vec<usize>,
    pub notes: Vec<String>,
}

impl VarietyDoc {
    pub fn build(model: &Model, r: &VarietyReport) -> Self {
        let b = &model.bunch;
        let pres = b.presentation();
        let canonical_cartier = r.picard.contains(&r.canonical.canonical);
        Self {
            dimension: r.dimension,
            class_group: GroupDoc::from_group(&r.class_group),
            weights: pres.grading().columns().iter().map(ElementDoc::from_element).collect(),
            relation: pres.relation().map(ToString::to_string),
            bunch: b.phi().iter().map(ConeDoc::from_cone).collect(),
            effective_cone: ConeDoc::from_cone(&r.cones.eff),
            moving_cone: ConeDoc::from_cone(&r.cones.mov),
            semiample_cone: ConeDoc::from_cone(&r.cones.samp),
            ample: AmpleDoc {
                closure: ConeDoc::from_cone(&r.cones.ample_closure),
                nonempty: r.cones.ample_nonempty,
            },
            picard: SubgroupDoc::from_subgroup(&r.picard),
            canonical: CanonicalDoc {
                canonical: ElementDoc::from_element(&r.canonical.canonical),
                anticanonical: ElementDoc::from_element(&r.canonical.anticanonical),
                cartier: canonical_cartier,
                q_gorenstein: r.canonical.q_gorenstein,
                gorenstein: r.canonical.gorenstein,
                q_fano: r.canonical.q_fano,
                fano: r.canonical.fano,
            },
            q_factorial: r.q_factorial,
            combinatorially_minimal: r.combinatorially_minimal,
            projective: r.projective,
            relevant_faces: r.rlv.iter().map(|f| f.one_based()).collect(),
            covering_faces: r.cov.iter().map(|f| f.one_based()).collect(),
            strata: r
                .strata
                .iter()
                .map(|s| StratumDoc {
                    face: s.face.one_based(),
                    dim: s.dim,
                    local_class_lattice: SubgroupDoc::from_subgroup(&s.local_class_lattice),
                    factorial: s.is_factorial,
                    q_factorial: s.is_q_factorial,
                    smooth: truth_text(&s.is_smooth),
                    description: s.description.clone(),
                })
                .collect(),
            exceptional_weights: exceptional_weights(b).iter().map(|i| i + 1).collect(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GitFanDoc {
    /// `ring` or `toric`.
    pub source: String,
    pub chambers: Vec<ConeDoc>,
}

impl GitFanDoc {
    pub fn build(f: &ChamberFan, toric: bool) -> Self {
        Self {
            source: if toric { "toric" } else { "ring" }.into(),
            chambers: f.chambers.iter().map(ConeDoc::from_cone).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StellarDoc {
    /// 1-based.
    pub sigma0: Vec<usize>,
    pub v_inf: Vec<Int>,
    pub a: Vec<u64>,
    pub m_inf: Int,
}

impl StellarDoc {
    pub fn from_data(s: &StellarData) -> Self {
        Self {
            sigma0: s.sigma0.iter().map(|i| i + 1).collect(),
            v_inf: ints(&s.v_inf),
            a: s.a.clone(),
            m_inf: Int(s.m_inf.clone()),
        }
    }
}

/// A model in a form that can be fed back as input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelDoc {
    pub grading: GradingDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relation: Vec<TermDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation_text: Option<String>,
    pub attestations: AttestationsDoc,
    pub p: Vec<Vec<Int>>,
    pub bunch: Vec<ConeDoc>,
    pub ambient_chamber: ConeDoc,
    pub chamber_point: Vec<Int>,
    pub ambient_point: Vec<Int>,
}

impl ModelDoc {
    pub fn build(m: &Model) -> Self {
        let pres = m.presentation();
        let k = m.bunch.k0_rank();
        let sample = Cone::intersect_all(k, m.bunch.phi()).expect("bunch cones share the ambient space");
        Self {
            grading: GradingDoc::from_map(pres.grading()),
            relation: pres.relation().map(terms_doc).unwrap_or_default(),
            relation_text: pres.relation().map(ToString::to_string),
            attestations: AttestationsDoc::from_core(&pres.attestations),
            p: matrix_doc(&m.p),
            bunch: m.bunch.phi().iter().map(ConeDoc::from_cone).collect(),
            ambient_chamber: ConeDoc::from_cone(&m.eta),
            chamber_point: ints(&sample.interior_point()),
            ambient_point: ints(&m.eta.interior_point()),
        }
    }

    /// An input document describing the same model.
    pub fn to_input(&self) -> InputDocument {
        InputDocument {
            format_version: FORMAT_VERSION,
            grading: self.grading.clone(),
            relation: self.relation.clone(),
            bunch: BunchSpec {
                chamber_point: Some(self.chamber_point.clone()),
                cones: None,
            },
            attestations: self.attestations.clone(),
            ambient: Some(AmbientDoc {
                p: Some(self.p.clone()),
                chamber_point: Some(self.ambient_point.clone()),
            }),
            script: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModificationDoc {
    pub kind: String,
    /// 1-based index of the added or removed variable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variable: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stellar: Option<StellarDoc>,
    /// Semiample cones before and after.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chambers: Option<(ConeDoc, ConeDoc)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional_weight: Option<ElementDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift_degree: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pullback: Option<String>,
    pub after: ModelDoc,
    pub notes: Vec<String>,
}

impl ModificationDoc {
    pub fn build(rec: &ModificationRecord) -> Self {
        Self {
            kind: rec.kind.to_string(),
            variable: rec.variable.map(|i| i + 1),
            stellar: rec.stellar.as_ref().map(StellarDoc::from_data),
            chambers: rec
                .chambers
                .as_ref()
                .map(|(a, b)| (ConeDoc::from_cone(a), ConeDoc::from_cone(b))),
            exceptional_weight: rec.exceptional_weight.as_ref().map(ElementDoc::from_element),
            k0: rec.k0,
            lift_degree: rec.lift_degree.clone().map(Int),
            pullback: rec.pullback.as_ref().map(ToString::to_string),
            after: ModelDoc::build(&rec.after),
            notes: rec.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonDoc {
    pub same_variables: bool,
    /// The gradings have the same kernel, so they agree up to an isomorphism of `K`.
    pub kernels_equal: bool,
    /// Unimodular `U` with `U·P_first = P_second`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<Vec<Int>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fans_equivalent: Option<bool>,
    pub relations_proportional: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub format_version: u32,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variety: Option<VarietyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub git_fan: Option<GitFanDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modifications: Vec<ModificationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_model: Option<ModelDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            command: command.into(),
            variety: None,
            git_fan: None,
            modifications: Vec::new(),
            final_model: None,
            minimal: None,
            comparison: None,
            diagnostics: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn parse(text: &str) -> Result<Self, crate::CliError> {
        serde_json::from_str(text).map_err(crate::CliError::from_json)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        if let Some(v) = &self.variety {
            write_variety(w, v);
        }
        if let Some(g) = &self.git_fan {
            let _ = writeln!(w, "GIT fan ({}), chambers: {}", g.source, g.chambers.len());
            for c in &g.chambers {
                let _ = writeln!(w, "  {}", cone_text(c));
            }
        }
        for (i, m) in self.modifications.iter().enumerate() {
            let _ = write!(w, "step {}: {}", i + 1, m.kind);
            if let Some(v) = m.variable {
                let _ = write!(w, " of T{v}");
            }
            let _ = writeln!(w);
            if let Some(s) = &m.stellar {
                let _ = writeln!(
                    w,
                    "  index {} at {}, coefficients {:?} on {}",
                    s.m_inf.0,
                    vec_text(&s.v_inf),
                    s.a,
                    face_text(&s.sigma0)
                );
            }
            if let Some(p) = &m.pullback {
                let _ = writeln!(w, "  pullback {p}");
            }
            if let Some((a, b)) = &m.chambers {
                let _ = writeln!(w, "  chambers {} -> {}", cone_text(a), cone_text(b));
            }
            if let Some(c) = &m.lift_degree {
                let _ = writeln!(w, "  lift degree {}", c.0);
            }
            let _ = writeln!(w, "  relation {}", m.after.relation_text.as_deref().unwrap_or("none"));
            for n in &m.notes {
                let _ = writeln!(w, "  note: {n}");
            }
        }
        if let Some(m) = &self.final_model {
            let _ = writeln!(w, "final model:");
            let _ = writeln!(w, "  grading rows {}", rows_text(&m.grading.free_rows));
            if !m.grading.torsion_rows.is_empty() {
                let _ = writeln!(w, "  torsion rows {}", rows_text(&m.grading.torsion_rows));
            }
            let _ = writeln!(w, "  relation {}", m.relation_text.as_deref().unwrap_or("none"));
            let _ = writeln!(w, "  P {}", rows_text(&m.p));
            let b: Vec<String> = m.bunch.iter().map(cone_text).collect();
            let _ = writeln!(w, "  bunch {}", b.join(" "));
        }
        if let Some(min) = self.minimal {
            let _ = writeln!(w, "combinatorially minimal: {}", yes(min));
        }
        if let Some(c) = &self.comparison {
            let _ = writeln!(w, "same number of variables: {}", yes(c.same_variables));
            let _ = writeln!(w, "kernels equal: {}", yes(c.kernels_equal));
            if let Some(u) = &c.certificate {
                let _ = writeln!(w, "certificate U {}", rows_text(u));
            }
            if let Some(f) = c.fans_equivalent {
                let _ = writeln!(w, "ambient fans equivalent: {}", yes(f));
            }
            let _ = writeln!(w, "relations proportional: {}", yes(c.relations_proportional));
        }
        for d in &self.diagnostics {
            let _ = writeln!(w, "diagnostic: {d}");
        }
        out
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn rows_text(rows: &[Vec<Int>]) -> String {
    let r: Vec<String> = rows.iter().map(|x| vec_text(x)).collect();
    format!("[{}]", r.join(" "))
}

fn write_variety(w: &mut String, v: &VarietyDoc) {
    let _ = writeln!(w, "dimension {}", v.dimension);
    let _ = writeln!(w, "class group {}", group_text(&v.class_group));
    let ws: Vec<String> = v.weights.iter().map(element_text).collect();
    let _ = writeln!(w, "weights {}", ws.join(" "));
    let _ = writeln!(w, "relation {}", v.relation.as_deref().unwrap_or("none"));
    let b: Vec<String> = v.bunch.iter().map(cone_text).collect();
    let _ = writeln!(w, "bunch {}", b.join(" "));
    let _ = writeln!(w, "effective cone {}", cone_text(&v.effective_cone));
    let _ = writeln!(w, "moving cone {}", cone_text(&v.moving_cone));
    let _ = writeln!(w, "semiample cone {}", cone_text(&v.semiample_cone));
    let _ = writeln!(
        w,
        "ample cone interior of {} (nonempty: {})",
        cone_text(&v.ample.closure),
        yes(v.ample.nonempty)
    );
    let pic: Vec<String> = v.picard.generators.iter().map(element_text).collect();
    let _ = writeln!(w, "Picard group <{}>, index {}", pic.join(", "), v.picard.index);
    let c = &v.canonical;
    let _ = writeln!(
        w,
        "canonical class {} (Cartier: {})",
        element_text(&c.canonical),
        yes(c.cartier)
    );
    let _ = writeln!(
        w,
        "Q-Gorenstein {}, Gorenstein {}, Q-Fano {}, Fano {}",
        yes(c.q_gorenstein),
        yes(c.gorenstein),
        yes(c.q_fano),
        yes(c.fano)
    );
    let _ = writeln!(
        w,
        "Q-factorial {}, projective {}, combinatorially minimal {}",
        yes(v.q_factorial),
        yes(v.projective),
        yes(v.combinatorially_minimal)
    );
    let cov: Vec<String> = v.covering_faces.iter().map(|f| face_text(f)).collect();
    let _ = writeln!(w, "covering faces {}", cov.join(" "));
    let _ = writeln!(w, "strata:");
    for s in &v.strata {
        let _ = writeln!(
            w,
            "  {} dim {} index {} factorial {} Q-factorial {} smooth {}",
            face_text(&s.face),
            s.dim,
            s.local_class_lattice.index,
            yes(s.factorial),
            yes(s.q_factorial),
            s.smooth
        );
    }
    let ex: Vec<String> = v.exceptional_weights.iter().map(|i| format!("w{i}")).collect();
    let _ = writeln!(
        w,
        "exceptional weights {}",
        if ex.is_empty() { "none".into() } else { ex.join(" ") }
    );
    for n in &v.notes {
        let _ = writeln!(w, "note: {n}");
    }
}
