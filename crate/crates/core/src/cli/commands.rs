use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{manifest, Command, Document, Format, Session, REPORT_STAGES};
use crate::error::{Error, Result};
use crate::geometry::curvature::{connection_sectional_table, sectional_table, CurvatureTable};
use crate::geometry::geodesic::{max_abs_diff, rows, GeodesicCurve, GeodesicSample};
use crate::geometry::{matrix_exp_numeric, ConnectionRegistry};
use crate::grading::{holonomy_span, verify_grading, GradingSummary, GradingVerdict};
use crate::lie::rational::{pairs, to_text, Pair};
use crate::lie::{Rational, SquareMatrix, SymmetricForm};
use crate::metric::{
    evaluate_family, is_adapted, is_invariant, is_positive_definite, lorentzian_search, sign_sweep, FormFamily,
    ParamKind, Parameter,
};

fn only_json(format: Format, stage: &str) -> Result<()> {
    match format {
        Format::Csv => Err(Error::Config(format!("{stage} has no csv output; use json or text"))),
        _ => Ok(()),
    }
}

fn basis_name(session: &Session, k: usize) -> Result<String> {
    let (i, j) = session.grading()?.algebra().basis_pair(k);
    Ok(format!("E{}_{}", i + 1, j + 1))
}

/// Checks a `--params` vector against the family it parameterizes.
fn family_values(family: &FormFamily, values: &[Rational]) -> Result<()> {
    if values.len() != family.dim() {
        let names: Vec<&str> = family.parameters().iter().map(|p| p.name.as_str()).collect();
        return Err(Error::Config(format!(
            "--params has {} values but the family has {} parameters ({})",
            values.len(),
            family.dim(),
            names.join(", ")
        )));
    }
    Ok(())
}

pub struct Grade;

#[derive(Serialize)]
struct GradeJson {
    #[serde(flatten)]
    summary: GradingSummary,
    holonomy_dim: usize,
    fixed_dim: usize,
    holonomy_spans_fixed: bool,
}

#[derive(Serialize)]
struct VerifyJson {
    n: usize,
    partition: Option<[usize; 4]>,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

#[derive(Serialize)]
struct Witness {
    x: usize,
    y: usize,
    offending: usize,
}

impl Command for Grade {
    fn name(&self) -> &'static str {
        "grade"
    }

    fn run(&self, session: &Session, format: Format) -> Result<Vec<Document>> {
        only_json(format, "grade")?;
        let grading = session.grading()?;
        let summary = GradingSummary::new(grading);
        let span = holonomy_span(grading);
        if format == Format::Text {
            let mut out = format!("so({}) partition {:?}\n", summary.n, session.config.partition);
            for c in &summary.components {
                writeln!(out, "  g_{}: dim {}", c.label, c.dim).unwrap();
            }
            writeln!(out, "verified: {}", summary.verified).unwrap();
            writeln!(out, "holonomy: {} of {}", span.dim(), span.fixed_dim).unwrap();
            return Ok(vec![session.text("grade", out)]);
        }
        let doc = GradeJson {
            summary,
            holonomy_dim: span.dim(),
            fixed_dim: span.fixed_dim,
            holonomy_spans_fixed: span.spans_fixed(),
        };
        Ok(vec![session.json("grade", &doc)])
    }
}

fn verify_document(session: &Session, format: Format) -> Result<Document> {
    let grading = session.grading()?;
    let witness = match verify_grading(grading) {
        GradingVerdict::Pass => None,
        GradingVerdict::Fail { x, y, offending } => Some(Witness { x, y, offending }),
    };
    let doc = VerifyJson {
        n: session.config.n,
        partition: grading.partition(),
        verified: witness.is_none(),
        witness,
    };
    if format == Format::Text {
        let out = match &doc.witness {
            None => "grading verified: every bracket respects the labels\n".to_string(),
            Some(w) => format!(
                "grading fails at basis pair ({}, {}) with offending term {}\n",
                w.x, w.y, w.offending
            ),
        };
        return Ok(session.text("verify", out));
    }
    Ok(session.json("verify", &doc))
}

#[derive(Serialize)]
struct FamilyJson<'a> {
    partition: [usize; 4],
    family_dim: usize,
    parameters: &'a [Parameter],
    #[serde(skip_serializing_if = "Option::is_none")]
    nat_reductive_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nat_reductive_basis: Option<Vec<BTreeMap<&'a str, Pair>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    evaluation: Option<EvaluationJson>,
}

#[derive(Serialize)]
struct EvaluationJson {
    values: Vec<Pair>,
    inertia: (usize, usize, usize),
    positive_definite: bool,
    adapted: bool,
    invariant: bool,
}

fn evaluation(session: &Session, family: &FormFamily) -> Result<Option<EvaluationJson>> {
    let Some(values) = &session.config.parameter_values else {
        return Ok(None);
    };
    family_values(family, values)?;
    let form = evaluate_family(family, values)?;
    let grading = session.grading()?;
    Ok(Some(EvaluationJson {
        values: pairs(values),
        inertia: family.inertia_at(values)?.as_tuple(),
        positive_definite: is_positive_definite(&form),
        adapted: is_adapted(&form, grading),
        invariant: is_invariant(&form, grading),
    }))
}

fn family_text(family: &FormFamily, refined: Option<&FormFamily>, eval: Option<&EvaluationJson>) -> String {
    let mut out = format!("family_dim: {}\n", family.dim());
    for p in family.parameters() {
        writeln!(out, "  {:<8} {}", p.name, p.support).unwrap();
    }
    if let Some(r) = refined {
        writeln!(out, "nat_reductive_dim: {}", r.dim()).unwrap();
        for coords in r.parent_coordinates().unwrap_or_default() {
            let terms: Vec<String> = family
                .parameters()
                .iter()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero())
                .map(|(p, c)| format!("{} = {}", p.name, to_text(c)))
                .collect();
            writeln!(out, "  {}", terms.join(", ")).unwrap();
        }
    }
    if let Some(e) = eval {
        writeln!(
            out,
            "inertia: {:?}\npositive_definite: {}\nadapted: {}\ninvariant: {}",
            e.inertia, e.positive_definite, e.adapted, e.invariant
        )
        .unwrap();
    }
    out
}

fn family_document(session: &Session, format: Format, stage: &str, reductive: bool) -> Result<Document> {
    only_json(format, stage)?;
    let family = session.family()?;
    let refined = if reductive { Some(session.refined()?) } else { None };
    let eval = evaluation(session, family)?;
    if format == Format::Text {
        return Ok(session.text(stage, family_text(family, refined, eval.as_ref())));
    }
    let basis = refined.map(|r| {
        r.parent_coordinates()
            .unwrap_or_default()
            .iter()
            .map(|coords| {
                family
                    .parameters()
                    .iter()
                    .zip(coords)
                    .map(|(p, c)| (p.name.as_str(), Pair(c.clone())))
                    .collect()
            })
            .collect()
    });
    let doc = FamilyJson {
        partition: session.config.partition,
        family_dim: family.dim(),
        parameters: family.parameters(),
        nat_reductive_dim: refined.map(FormFamily::dim),
        nat_reductive_basis: basis,
        evaluation: eval,
    };
    Ok(session.json(stage, &doc))
}

pub struct Metrics;

impl Command for Metrics {
    fn name(&self) -> &'static str {
        "metrics"
    }

    fn run(&self, session: &Session, format: Format) -> Result<Vec<Document>> {
        Ok(vec![family_document(session, format, "metrics", false)?])
    }
}

pub struct Reductive;

impl Command for Reductive {
    fn name(&self) -> &'static str {
        "reductive"
    }

    fn run(&self, session: &Session, format: Format) -> Result<Vec<Document>> {
        Ok(vec![family_document(session, format, "reductive", true)?])
    }
}

/// The metric for curvature: the family at `--params`, or the first
/// naturally reductive direction.
fn curvature_metric(session: &Session) -> Result<SymmetricForm> {
    if let Some(values) = &session.config.parameter_values {
        let family = session.family()?;
        family_values(family, values)?;
        return evaluate_family(family, values);
    }
    let refined = session.refined()?;
    let form = refined.basis_forms().first().cloned().ok_or_else(|| {
        Error::Config("the family has no naturally reductive direction; pass --params to pick a metric".into())
    })?;
    // normalize the sign so the metric is positive where possible
    let negative = (0..form.dim()).any(|i| form.get(i, i).is_negative());
    if negative {
        let mut flipped = SymmetricForm::zeros(form.dim());
        flipped.add_scaled(&form, &-Rational::one());
        return Ok(flipped);
    }
    Ok(form)
}

fn curvature_table(session: &Session) -> Result<CurvatureTable> {
    let grading = session.grading()?;
    let metric = curvature_metric(session)?;
    match &session.config.connection {
        Some(name) => {
            let registry = ConnectionRegistry::with_builtins();
            connection_sectional_table(grading, &metric, registry.get(name)?)
        }
        None => {
            let b_e = SymmetricForm::identity(grading.fixed_indices().len());
            sectional_table(grading, &metric, &b_e).map_err(|e| match e {
                Error::NotOrthonormal(i, j) => Error::Config(format!(
                    "the m basis is not orthonormal for this metric at ({}, {}); pass --connection torsion-free or canonical",
                    i + 1,
                    j + 1
                )),
                other => other,
            })
        }
    }
}

pub struct Curvature;

impl Command for Curvature {
    fn name(&self) -> &'static str {
        "curvature"
    }

    fn run(&self, session: &Session, format: Format) -> Result<Vec<Document>> {
        let table = curvature_table(session)?;
        let doc = match format {
            Format::Json => session.json("curvature", &table.to_json()),
            Format::Text => session.text("curvature", table.to_text()),
            Format::Csv => Document {
                stage: "curvature".into(),
                extension: "csv",
                content: table.to_csv(),
            },
        };
        Ok(vec![doc])
    }
}

pub struct Lorentz;

#[derive(Serialize)]
struct LorentzJson<'a> {
    partition: [usize; 4],
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    sign_vector: Option<Vec<i8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inertia: Option<(usize, usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    parameters: Option<Vec<NamedValue<'a>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<&'static str>,
    evaluated: usize,
    negative_counts: Vec<usize>,
}

#[derive(Serialize)]
struct NamedValue<'a> {
    name: &'a str,
    value: Pair,
}

impl Command for Lorentz {
    fn name(&self) -> &'static str {
        "lorentz"
    }

    fn run(&self, session: &Session, format: Format) -> Result<Vec<Document>> {
        only_json(format, "lorentz")?;
        let family = session.family()?;
        let diag: Vec<usize> = family
            .parameters()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.kind == ParamKind::Diagonal)
            .map(|(k, _)| k)
            .collect();
        let hit = lorentzian_search(family);
        let mut counts: Vec<usize> = sign_sweep(family).map(|r| r.inertia.negatives).collect();
        let evaluated = counts.len();
        counts.sort_unstable();
        counts.dedup();
        let doc = LorentzJson {
            partition: session.config.partition,
            found: hit.is_some(),
            sign_vector: hit.as_ref().map(|r| {
                diag.iter()
                    .map(|&k| if r.parameter_values[k].is_negative() { -1 } else { 1 })
                    .collect()
            }),
            inertia: hit.as_ref().map(|r| r.inertia.as_tuple()),
            parameters: hit.as_ref().map(|r| {
                family
                    .parameters()
                    .iter()
                    .zip(&r.parameter_values)
                    .map(|(p, v)| NamedValue {
                        name: &p.name,
                        value: Pair(v.clone()),
                    })
                    .collect()
            }),
            result: hit.is_none().then_some("none found"),
            evaluated,
            negative_counts: counts,
        };
        if format == Format::Text {
            let out = match (&doc.sign_vector, doc.inertia) {
                (Some(s), Some(i)) => format!("lorentzian at sign vector {s:?}, inertia {i:?}\n"),
                _ => format!(
                    "none found ({} sign vectors, negative counts {:?})\n",
                    evaluated, doc.negative_counts
                ),
            };
            return Ok(vec![session.text("lorentz", out)]);
        }
        Ok(vec![session.json("lorentz", &doc)])
    }
}

pub struct Geodesic;

#[derive(Serialize)]
struct GeodesicJson {
    n: usize,
    partition: [usize; 4],
    generator: String,
    method: &'static str,
    samples: Vec<GeodesicSample>,
    oracle_max_error: f64,
    orthogonality_max_error: f64,
}

fn generator_matrix(session: &Session) -> Result<(SquareMatrix, String)> {
    let grading = session.grading()?;
    let algebra = grading.algebra();
    let m = grading.m_indices();
    if let Some(values) = &session.config.parameter_values {
        if values.len() != m.len() {
            return Err(Error::Config(format!(
                "geodesic --params takes {} coordinates on the m basis, got {}",
                m.len(),
                values.len()
            )));
        }
        let mut full = vec![Rational::zero(); algebra.dim()];
        for (&k, v) in m.iter().zip(values) {
            full[k] = v.clone();
        }
        let label = values.iter().map(to_text).collect::<Vec<_>>().join(",");
        return Ok((algebra.to_matrix(&full)?, format!("[{label}]")));
    }
    let g = session.config.generator;
    if g == 0 || g > m.len() {
        return Err(Error::Config(format!(
            "--generator must be in 1..={}, got {g}",
            m.len()
        )));
    }
    Ok((algebra.basis_matrix(m[g - 1]), basis_name(session, m[g - 1])?))
}

impl Command for Geodesic {
    fn name(&self) -> &'static str {
        "geodesic"
    }

    fn run(&self, session: &Session, format: Format) -> Result<Vec<Document>> {
        if format != Format::Json {
            return Err(Error::Config("geodesic output is json only".into()));
        }
        let (generator, label) = generator_matrix(session)?;
        let curve = GeodesicCurve::new(&generator).ok();
        let mut oracle = 0.0f64;
        let mut orthogonality = 0.0f64;
        let samples = session
            .config
            .t_samples
            .iter()
            .map(|&t| {
                let numeric = matrix_exp_numeric(&generator, t);
                let value = match &curve {
                    Some(c) => {
                        let v = c.at(t);
                        oracle = oracle.max(max_abs_diff(&v, &numeric));
                        v
                    }
                    None => numeric,
                };
                let n = value.nrows();
                orthogonality = orthogonality.max(max_abs_diff(
                    &(value.transpose() * &value),
                    &nalgebra::DMatrix::identity(n, n),
                ));
                GeodesicSample {
                    t,
                    matrix: rows(&value),
                }
            })
            .collect();
        let doc = GeodesicJson {
            n: session.config.n,
            partition: session.config.partition,
            generator: label,
            method: if curve.is_some() { "closed-form" } else { "numeric" },
            samples,
            oracle_max_error: oracle,
            orthogonality_max_error: orthogonality,
        };
        Ok(vec![session.json("geodesic", &doc)])
    }
}

pub struct Report;

impl Command for Report {
    fn name(&self) -> &'static str {
        "report"
    }

    fn run(&self, session: &Session, format: Format) -> Result<Vec<Document>> {
        let mut documents = Vec::new();
        for stage in REPORT_STAGES {
            // csv applies to the curvature table only
            let stage_format = if format == Format::Csv && stage != "curvature" {
                Format::Json
            } else {
                format
            };
            let doc = match stage {
                "grade" => Grade.run(session, stage_format)?,
                "verify" => vec![verify_document(session, stage_format)?],
                "metrics" => Metrics.run(session, stage_format)?,
                "reductive" => Reductive.run(session, stage_format)?,
                "curvature" => Curvature.run(session, stage_format)?,
                "lorentz" => Lorentz.run(session, stage_format)?,
                _ => unreachable!("stage list is fixed"),
            };
            documents.extend(doc);
        }
        let entries = manifest(&documents);
        documents.push(session.json("manifest", &entries));
        Ok(documents)
    }
}
