use std::fs;
use std::path::Path;

use bunch_core::bunch::DEFAULT_MAX_VARS;
use bunch_core::bunch::{enumerate_chamber_fan, OrbitConeSet};
use bunch_core::cones::unimodular_certificate;
use bunch_core::geometry::variety_report;
use bunch_core::linalg::row_lattice_basis;
use bunch_core::modify::{blow_up, contract_variable, reduce_to_minimal, retarget, Model, ModificationRecord};
use num_rational::BigRational;
use num_traits::Zero;

use crate::doc::{big, matrix_doc, InputDocument, ScriptStep};
use crate::error::CliError;
use crate::report::{ComparisonDoc, GitFanDoc, ModelDoc, ModificationDoc, ReportDocument, VarietyDoc};

#[derive(Clone, Debug)]
pub struct Options {
    pub max_vars: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            max_vars: DEFAULT_MAX_VARS,
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path) -> Result<InputDocument, CliError> {
    InputDocument::parse(&read_text(path)?)
}

/// A script file: a JSON list of steps, or a document carrying a `script`.
pub fn load_script(path: &Path) -> Result<Vec<ScriptStep>, CliError> {
    let text = read_text(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(CliError::from_json)?;
    let steps = if value.is_array() {
        value
    } else {
        value.get("script").cloned().unwrap_or_default()
    };
    serde_json::from_value(steps).map_err(|e| CliError {
        kind: crate::ErrorKind::Parse,
        message: format!("script: {e}"),
        line: None,
        column: None,
    })
}

fn analysis(model: &Model) -> Result<VarietyDoc, CliError> {
    let r = variety_report(&model.bunch)?;
    Ok(VarietyDoc::build(model, &r))
}

pub fn cmd_analyze(doc: &InputDocument, opts: &Options) -> Result<ReportDocument, CliError> {
    let model = doc.model(opts.max_vars)?;
    let mut rep = ReportDocument::new("analyze");
    rep.variety = Some(analysis(&model)?);
    Ok(rep)
}

pub fn cmd_gitfan(doc: &InputDocument, toric: bool, opts: &Options) -> Result<ReportDocument, CliError> {
    let pres = doc.presentation()?;
    let set = if toric {
        OrbitConeSet::compute_toric(&pres, opts.max_vars)?
    } else {
        OrbitConeSet::compute(&pres, opts.max_vars)?
    };
    let fan = enumerate_chamber_fan(&set)?;
    let mut rep = ReportDocument::new("gitfan");
    rep.git_fan = Some(GitFanDoc::build(&fan, toric));
    Ok(rep)
}

fn run_step(model: &Model, step: &ScriptStep) -> Result<ModificationRecord, CliError> {
    match step {
        ScriptStep::SubdivideAt(v) => Ok(blow_up(model, &big(v))?),
        ScriptStep::Contract(i) => {
            if *i == 0 || *i > model.presentation().nvars() {
                return Err(CliError::validation(format!("variable index {i} out of range")));
            }
            Ok(contract_variable(model, i - 1)?)
        }
        ScriptStep::RetargetChamber(w) => {
            let lambda = model.bunch.orbit_cones().git_cone_at(&big(w))?;
            Ok(retarget(model, &lambda)?)
        }
    }
}

/// Runs `script`, or the document's own script when `script` is `None`.
pub fn cmd_modify(
    doc: &InputDocument,
    script: Option<&[ScriptStep]>,
    opts: &Options,
) -> Result<ReportDocument, CliError> {
    let mut model = doc.model(opts.max_vars)?;
    let mut rep = ReportDocument::new("modify");
    for (n, step) in script.unwrap_or(&doc.script).iter().enumerate() {
        let rec = run_step(&model, step).map_err(|e| CliError {
            message: format!("step {}: {}", n + 1, e.message),
            ..e
        })?;
        rep.modifications.push(ModificationDoc::build(&rec));
        model = rec.after;
    }
    rep.minimal = Some(analysis(&model)?.combinatorially_minimal);
    rep.final_model = Some(ModelDoc::build(&model));
    Ok(rep)
}

pub fn cmd_reduce(doc: &InputDocument, opts: &Options) -> Result<ReportDocument, CliError> {
    let model = doc.model(opts.max_vars)?;
    let red = reduce_to_minimal(&model)?;
    let mut rep = ReportDocument::new("reduce");
    rep.modifications = red.steps.iter().map(ModificationDoc::build).collect();
    rep.final_model = Some(ModelDoc::build(red.final_model(&model)));
    rep.minimal = Some(red.minimal);
    rep.diagnostics.extend(red.diagnostic);
    Ok(rep)
}

pub fn cmd_compare(a: &InputDocument, b: &InputDocument, opts: &Options) -> Result<ReportDocument, CliError> {
    let ma = a.model(opts.max_vars)?;
    let mb = b.model(opts.max_vars)?;
    let (pa, pb) = (ma.presentation(), mb.presentation());
    let r = pa.nvars();
    let same_variables = r == pb.nvars();
    let mut cmp = ComparisonDoc {
        same_variables,
        kernels_equal: false,
        certificate: None,
        fans_equivalent: None,
        relations_proportional: false,
    };
    if same_variables {
        let ka = row_lattice_basis(&pa.grading().kernel_basis(), r);
        cmp.kernels_equal = ka == row_lattice_basis(&pb.grading().kernel_basis(), r);
        if let Some(u) = unimodular_certificate(&ma.p, &mb.p) {
            cmp.fans_equivalent = Some(ma.fan()?.transform(&u)?.same_as(&mb.fan()?));
            cmp.certificate = Some(matrix_doc(&u));
        }
        cmp.relations_proportional = match (pa.relation(), pb.relation()) {
            (None, None) => true,
            (Some(f), Some(g)) => proportional(f, g),
            _ => false,
        };
    }
    let mut rep = ReportDocument::new("compare");
    rep.comparison = Some(cmp);
    Ok(rep)
}

fn proportional(f: &bunch_core::poly::GradedPoly, g: &bunch_core::poly::GradedPoly) -> bool {
    let (Some((cf, _)), Some((cg, _))) = (f.terms().first().copied(), g.terms().first().copied()) else {
        return f.is_zero() && g.is_zero();
    };
    if cf.is_zero() {
        return false;
    }
    let ratio: BigRational = cg / cf;
    f.scale(&ratio) == *g
}
