//! The `.space` file format: TOML describing one continuum together with
//! named classes, functions and an optional metric. Rationals are always
//! strings `"p/q"`.
//!
//! ```toml
//! [carrier]
//! values = ["0", "1", "2", "3", "4"]     # or ids = [...], or grid = { granularity = 4, bound = 2 }
//!
//! [relations]
//! levels = ["full", "absdiff<=2", { edges = [["0", "1"]] }]
//! # or: family = "real-continuum" | "paper-literal-real" | "metric", finest = 3
//!
//! partition = [["0", "1"]]
//!
//! [classes]
//! X0 = ["0"]
//!
//! [functions.double]
//! rule = "2*x"          # or table = { "0" = "1", ... }, or step = true
//! target = "wide.space" # optional, relative to this file; default is the space itself
//!
//! [metric]
//! absdiff = true        # or rows = [["0", "1"], ["1", "0"]]
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use continua::metric::{self, MetricTable};
use continua::morphism::{AffineRule, Morphism};
use continua::rational::{self, Rational};
use continua::real::{self, RealGrid};
use continua::{Carrier, Class, Condition, Continuum, GeneratingSequence, Relation, ValidationReport};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub carrier: CarrierSpec,
    pub relations: RelationsSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub classes: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functions: BTreeMap<String, FunctionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricSpec>,
}

/// Exactly one of the three fields.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ids: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub granularity: usize,
    pub bound: u64,
}

/// Either explicit `levels`, or a `family` with its `finest` level.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finest: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<LevelSpec>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LevelSpec {
    /// `full`, `identity`, `absdiff<t` or `absdiff<=t`.
    Rule(String),
    /// Undirected edges; reflexive and symmetric by construction.
    Edges { edges: Vec<(String, String)> },
    /// Exactly these ordered pairs.
    Pairs { pairs: Vec<(String, String)> },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub absdiff: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<String>>>,
}

pub fn parse(text: &str, origin: &str) -> Result<SpaceSpec, CliError> {
    toml::from_str(text).map_err(|e| CliError::Parse {
        path: origin.to_string(),
        message: e.to_string(),
    })
}

pub fn print(spec: &SpaceSpec) -> String {
    toml::to_string(spec).expect("space specs always serialise")
}

pub fn read(path: &Path) -> Result<SpaceSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse(&text, &path.display().to_string())
}

#[derive(Debug, Clone)]
pub enum FunctionKind {
    Table(Vec<usize>),
    Rule(AffineRule),
    Step,
}

#[derive(Debug, Clone)]
pub struct Function {
    pub kind: FunctionKind,
    /// `None` maps the space into itself.
    pub target: Option<Box<Model>>,
}

/// A loaded space: the continuum, its validation report and the resolved
/// named entities.
#[derive(Debug, Clone)]
pub struct Model {
    pub spec: SpaceSpec,
    pub continuum: Continuum,
    pub report: ValidationReport,
    pub metric_report: Option<ValidationReport>,
    pub classes: BTreeMap<String, Class>,
    pub functions: BTreeMap<String, Function>,
}

fn rat(text: &str) -> Result<Rational, CliError> {
    Ok(rational::parse(text)?)
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Spec(msg.into())
}

pub fn load(path: &Path) -> Result<Model, CliError> {
    let spec = read(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    build(spec, &base, true)
}

/// Builds the model; `base` resolves relative function targets.
pub fn build(spec: SpaceSpec, base: &Path, with_functions: bool) -> Result<Model, CliError> {
    let (carrier, grid) = build_carrier(&spec.carrier)?;
    let metric_table = match &spec.metric {
        None => None,
        Some(m) => Some(build_metric(m, &carrier)?),
    };
    let mut continuum = build_relations(&spec.relations, &carrier, grid, metric_table.as_ref())?;
    if let Some(blocks) = &spec.partition {
        let blocks = blocks
            .iter()
            .map(|b| b.iter().map(|id| carrier.index_of(id)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let metric = continuum.metric().cloned();
        continuum = Continuum::with_partition(carrier.clone(), continuum.generating_sequence().clone(), blocks)?;
        if let Some(m) = metric {
            continuum = continuum.with_metric(m)?;
        }
    }
    let metric_report = match metric_table {
        Some(m) => {
            let report = metric::validate_metric(&m);
            if continuum.metric().is_none() {
                continuum = continuum.with_metric(m)?;
            }
            Some(report)
        }
        None => None,
    };

    let report = continuum.validate();
    // Levels that are not even tolerance relations are malformed input; the
    // remaining conditions are properties a loaded space may fail.
    for v in &report.violations {
        if matches!(v.condition, Condition::Reflexive | Condition::Symmetric) {
            return Err(malformed(format!(
                "level relations must be reflexive and symmetric: {}",
                v.describe(Some(continuum.carrier()))
            )));
        }
    }

    let mut classes = BTreeMap::new();
    for (name, ids) in &spec.classes {
        classes.insert(name.clone(), carrier.class_of(ids)?);
    }

    let mut functions = BTreeMap::new();
    if with_functions {
        for (name, f) in &spec.functions {
            let target = match &f.target {
                None => None,
                Some(rel) => {
                    let path: PathBuf = base.join(rel);
                    let target_spec = read(&path)?;
                    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
                    Some(Box::new(build(target_spec, &dir, false)?))
                }
            };
            let target_carrier = target.as_ref().map(|t| t.continuum.carrier()).unwrap_or(&carrier);
            let chosen = [f.table.is_some(), f.rule.is_some(), f.step == Some(true)];
            if chosen.iter().filter(|&&c| c).count() != 1 {
                return Err(malformed(format!(
                    "function `{name}` needs exactly one of table, rule or step = true"
                )));
            }
            let kind = if let Some(table) = &f.table {
                let mut map = vec![None; carrier.len()];
                for (from, to) in table {
                    map[carrier.index_of(from)?] = Some(target_carrier.index_of(to)?);
                }
                let map = map
                    .into_iter()
                    .enumerate()
                    .map(|(x, y)| y.ok_or_else(|| malformed(format!("function `{name}` has no value at `{}`", carrier.id(x)))))
                    .collect::<Result<Vec<_>, _>>()?;
                FunctionKind::Table(map)
            } else if let Some(rule) = &f.rule {
                FunctionKind::Rule(AffineRule::parse(rule)?)
            } else {
                FunctionKind::Step
            };
            functions.insert(name.clone(), Function { kind, target });
        }
    }

    Ok(Model {
        spec,
        continuum,
        report,
        metric_report,
        classes,
        functions,
    })
}

fn build_carrier(spec: &CarrierSpec) -> Result<(Carrier, Option<GridSpec>), CliError> {
    match (&spec.ids, &spec.values, &spec.grid) {
        (Some(ids), None, None) => Ok((Carrier::from_ids(ids.iter().cloned())?, None)),
        (None, Some(values), None) => {
            let values = values.iter().map(|v| rat(v)).collect::<Result<Vec<_>, _>>()?;
            Ok((Carrier::from_values(values)?, None))
        }
        (None, None, Some(g)) => Ok((RealGrid::new(g.granularity, g.bound, 0)?.carrier(), Some(*g))),
        _ => Err(malformed("carrier needs exactly one of ids, values or grid")),
    }
}

fn build_metric(spec: &MetricSpec, carrier: &Carrier) -> Result<MetricTable, CliError> {
    match (spec.absdiff, &spec.rows) {
        (Some(true), None) => Ok(MetricTable::absdiff(carrier)?),
        (None, Some(rows)) => {
            if rows.len() != carrier.len() || rows.iter().any(|r| r.len() != carrier.len()) {
                return Err(malformed(format!(
                    "metric rows must form a {0}×{0} table",
                    carrier.len()
                )));
            }
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|d| rat(d)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            Ok(MetricTable::from_rows(rows)?)
        }
        _ => Err(malformed("metric needs exactly one of absdiff = true or rows")),
    }
}

fn build_relations(
    spec: &RelationsSpec,
    carrier: &Carrier,
    grid: Option<GridSpec>,
    metric_table: Option<&MetricTable>,
) -> Result<Continuum, CliError> {
    match (&spec.family, spec.finest, &spec.levels) {
        (Some(family), Some(finest), None) => match family.as_str() {
            "real-continuum" => match grid {
                Some(g) => Ok(real::real_continuum(g.granularity, g.bound, finest)?),
                None => Ok(real::real_on_values(numeric_values(carrier)?, finest)?),
            },
            "paper-literal-real" => Ok(real::paper_literal_real(numeric_values(carrier)?, finest)?),
            "metric" => {
                let m = metric_table.ok_or_else(|| malformed("family `metric` needs a [metric] section"))?;
                Ok(metric::continuum_from_metric(carrier.clone(), m.clone(), finest)?)
            }
            other => Err(malformed(format!(
                "unknown family `{other}`; expected real-continuum, paper-literal-real or metric"
            ))),
        },
        (None, None, Some(levels)) => {
            if levels.is_empty() {
                return Err(malformed("relations.levels is empty"));
            }
            let rels = levels
                .iter()
                .map(|l| build_level(l, carrier))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Continuum::new(carrier.clone(), GeneratingSequence::new(rels)?)?)
        }
        _ => Err(malformed("relations need either levels, or family together with finest")),
    }
}

fn numeric_values(carrier: &Carrier) -> Result<Vec<Rational>, CliError> {
    (0..carrier.len())
        .map(|x| Ok(carrier.numeric_value(x)?.clone()))
        .collect()
}

fn build_level(spec: &LevelSpec, carrier: &Carrier) -> Result<Relation, CliError> {
    let size = carrier.len();
    let index_pairs = |pairs: &[(String, String)]| -> Result<Vec<(usize, usize)>, CliError> {
        pairs
            .iter()
            .map(|(a, b)| Ok((carrier.index_of(a)?, carrier.index_of(b)?)))
            .collect()
    };
    match spec {
        LevelSpec::Edges { edges } => Ok(Relation::from_edges(size, index_pairs(edges)?)?),
        LevelSpec::Pairs { pairs } => Ok(Relation::from_pairs(size, index_pairs(pairs)?)?),
        LevelSpec::Rule(rule) => {
            let rule = rule.trim();
            match rule {
                "full" => return Ok(Relation::full(size)),
                "identity" => return Ok(Relation::identity(size)),
                _ => {}
            }
            let body = rule
                .strip_prefix("absdiff")
                .ok_or_else(|| malformed(format!("unknown level rule `{rule}`")))?;
            let (strict, t) = match body.strip_prefix("<=") {
                Some(t) => (false, t),
                None => (
                    true,
                    body.strip_prefix('<')
                        .ok_or_else(|| malformed(format!("unknown level rule `{rule}`")))?,
                ),
            };
            let t = rat(t.trim())?;
            let values = numeric_values(carrier)?;
            Ok(Relation::from_fn(size, |x, y| {
                let d = rational::abs_diff(&values[x], &values[y]);
                if strict {
                    d < t
                } else {
                    d <= t
                }
            }))
        }
    }
}

impl Model {
    pub fn class(&self, text: &str) -> Result<Class, CliError> {
        if let Some(c) = self.classes.get(text) {
            return Ok(c.clone());
        }
        let trimmed = text.trim().trim_start_matches('{').trim_end_matches('}');
        let ids: Vec<&str> = trimmed.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Ok(self.continuum.carrier().class_of(&ids)?)
    }

    pub fn point(&self, id: &str) -> Result<usize, CliError> {
        Ok(self.continuum.carrier().index_of(id.trim())?)
    }

    pub fn morphism(&self, name: &str) -> Result<Morphism<'_>, CliError> {
        let f = self
            .functions
            .get(name)
            .ok_or_else(|| malformed(format!("unknown function `{name}`")))?;
        let target = f.target.as_ref().map(|t| &t.continuum).unwrap_or(&self.continuum);
        Ok(match &f.kind {
            FunctionKind::Table(map) => Morphism::from_table(&self.continuum, target, map.clone())?,
            FunctionKind::Rule(rule) => Morphism::affine(&self.continuum, target, rule)?,
            FunctionKind::Step => Morphism::step(&self.continuum, target)?,
        })
    }

    pub fn ids(&self, class: &Class) -> Vec<String> {
        self.continuum.carrier().ids_of(class)
    }
}
