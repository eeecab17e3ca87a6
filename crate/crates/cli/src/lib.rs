//! Command line front end: loads `.space` files, dispatches one command,
//! and renders a [`Report`] as text or JSON.
//!
//! Exit codes: `0` success, `1` a property or check failed (the report
//! carries witnesses), `2` malformed input.

pub mod dot;
pub mod report;
pub mod spec;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use continua::connectivity::{self, Motion};
use continua::morphism::{Morphism, Pushed};
use continua::rational::{self, Rational};
use continua::real::{self, IntervalKind, RealPoint};
use continua::suite::{self, Module};
use continua::{figures, metric, Class};
use serde_json::{json, Value};
use thiserror::Error;

pub use report::Report;
pub use spec::{Model, SpaceSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("malformed space: {0}")]
    Spec(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] continua::Error),
}

#[derive(Debug, Parser)]
#[command(name = "continua", version, about = "Finite-scale topology of indiscernibility continua")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SpecArg {
    #[arg(long)]
    pub spec: PathBuf,
}

#[derive(Debug, Args)]
pub struct ClassAt {
    #[arg(long)]
    pub spec: PathBuf,
    /// A class name from the space, or a comma-separated id list.
    #[arg(long)]
    pub class: String,
    #[arg(long)]
    pub level: usize,
}

#[derive(Debug, Args)]
pub struct MaybeClassAt {
    #[arg(long)]
    pub spec: PathBuf,
    /// Defaults to the whole carrier.
    #[arg(long)]
    pub class: Option<String>,
    #[arg(long)]
    pub level: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the generating sequence, limit partition and metric.
    Validate(SpecArg),
    /// Level-n closure of a class.
    Closure(ClassAt),
    /// Level-n interior of a class.
    Interior(ClassAt),
    /// Union of the monads meeting a class.
    Figure {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        class: String,
    },
    /// The monad of a point, or its level image with --level.
    Monad {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Least level separating the monads of two classes.
    Sep {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long)]
        other: String,
    },
    /// Whether a class is open at level n.
    Open(ClassAt),
    /// Whether a class is closed at level n.
    Closed(ClassAt),
    /// Whether a class is clopen at level n.
    Clopen(ClassAt),
    /// Level-n components of a class.
    Components(MaybeClassAt),
    /// Whether a class is connected at level n.
    Connected(ClassAt),
    /// A motion through --class, or between --from and --to.
    Motion {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, conflicts_with_all = ["from", "to"])]
        class: Option<String>,
        #[arg(long, requires = "to")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
        #[arg(long)]
        level: usize,
    },
    /// Greedy maximal level-n net.
    Net(MaybeClassAt),
    /// A position hit by a level image of many sequence terms.
    Cluster {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        seq: Vec<String>,
        #[arg(long)]
        level: usize,
    },
    /// Certified convergence depth of a sequence prefix toward a point.
    Converge {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        seq: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Fail unless the depth reaches this level.
        #[arg(long)]
        level: Option<usize>,
    },
    /// Accumulation points of a class.
    Accpoints {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// All level-n open classes.
    Topology {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        level: usize,
    },
    /// Bisection upper bound of a finite member set on [a, b].
    RealLub {
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        members: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        iters: usize,
    },
    /// An interval by every defining expression; fails if they disagree.
    RealInterval {
        #[arg(long, conflicts_with_all = ["granularity", "bound", "levels"])]
        spec: Option<PathBuf>,
        #[arg(long)]
        granularity: Option<usize>,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// open, closed, open-closed or closed-open.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        level: usize,
    },
    /// add, mul, neg, recip, le, or eq (with --level).
    RealArith {
        #[arg(long)]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Modulus table of a function.
    MorphismModulus {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        function: String,
    },
    /// Continuity of a function between two levels, in every formulation.
    MorphismCheck {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        function: String,
        #[arg(long)]
        source_level: usize,
        #[arg(long)]
        target_level: usize,
        /// Epsilons for the metric check; needs metrics on both sides.
        #[arg(long, value_delimiter = ',')]
        epsilon: Vec<String>,
    },
    /// Image of a motion under a function.
    MorphismPush {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        function: String,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        motion: Vec<String>,
        #[arg(long)]
        source_level: usize,
        #[arg(long)]
        target_level: usize,
    },
    /// The metric ball of --radius around --center.
    Ball {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        center: String,
        #[arg(long)]
        radius: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// One DOT graph per level, or only --level.
    ExportDot {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Run the property suite of a module.
    Suite {
        /// core, figures, graded, connectivity, real, metric, morphism or all.
        module: String,
        #[arg(long, default_value_t = suite::DEFAULT_SEED)]
        seed: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Closure(_) => "closure",
            Command::Interior(_) => "interior",
            Command::Figure { .. } => "figure",
            Command::Monad { .. } => "monad",
            Command::Sep { .. } => "sep",
            Command::Open(_) => "open",
            Command::Closed(_) => "closed",
            Command::Clopen(_) => "clopen",
            Command::Components(_) => "components",
            Command::Connected(_) => "connected",
            Command::Motion { .. } => "motion",
            Command::Net(_) => "net",
            Command::Cluster { .. } => "cluster",
            Command::Converge { .. } => "converge",
            Command::Accpoints { .. } => "accpoints",
            Command::Topology { .. } => "topology",
            Command::RealLub { .. } => "real-lub",
            Command::RealInterval { .. } => "real-interval",
            Command::RealArith { .. } => "real-arith",
            Command::MorphismModulus { .. } => "morphism-modulus",
            Command::MorphismCheck { .. } => "morphism-check",
            Command::MorphismPush { .. } => "morphism-push",
            Command::Ball { .. } => "ball",
            Command::ExportDot { .. } => "export-dot",
            Command::Suite { .. } => "suite",
        }
    }
}

/// What the binary prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let name = cli.command.name();
    match execute(&cli.command) {
        Ok(report) => Outcome {
            stdout: if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&report.to_json()).expect("json"))
            } else {
                report.to_text()
            },
            stderr: String::new(),
            code: report.exit_code(),
        },
        Err(e) => {
            let message = e.to_string();
            Outcome {
                stdout: if cli.json {
                    format!("{}\n", serde_json::to_string_pretty(&report::error_json(name, &message)).expect("json"))
                } else {
                    String::new()
                },
                stderr: format!("error: {message}\n"),
                code: 2,
            }
        }
    }
}

fn q(text: &str) -> Result<Rational, CliError> {
    Ok(rational::parse(text.trim())?)
}

fn load_valid(path: &std::path::Path, report: &mut Report) -> Result<Option<Model>, CliError> {
    let model = spec::load(path)?;
    if model.report.ok() {
        return Ok(Some(model));
    }
    for v in &model.report.violations {
        report.fail(format!("invalid space: {}", v.describe(Some(model.continuum.carrier()))));
    }
    Ok(None)
}

fn ids(model: &Model, class: &Class) -> Value {
    json!(model.ids(class))
}

fn points(model: &Model, seq: &[String]) -> Result<Vec<usize>, CliError> {
    seq.iter().map(|s| model.point(s)).collect()
}

fn names(model: &Model, seq: &[usize]) -> Vec<String> {
    seq.iter().map(|&x| model.continuum.carrier().id(x).to_string()).collect()
}

/// Runs a parsed command.
pub fn execute(command: &Command) -> Result<Report, CliError> {
    let mut r = Report::new(command.name());
    macro_rules! model {
        ($path:expr) => {
            match load_valid($path, &mut r)? {
                Some(m) => m,
                None => return Ok(r),
            }
        };
    }
    match command {
        Command::Validate(SpecArg { spec }) => {
            let m = spec::load(spec)?;
            let c = &m.continuum;
            r.set("positions", c.size()).set("finest", c.finest()).set("monads", c.blocks().len());
            r.set("valid", m.report.ok());
            for v in &m.report.violations {
                r.fail(v.describe(Some(c.carrier())));
            }
            if let Some(mr) = &m.metric_report {
                r.set("metric", if mr.ok() { "ok" } else { "invalid" });
                for v in &mr.violations {
                    r.fail(v.describe(Some(c.carrier())));
                }
            }
        }
        Command::Closure(a) | Command::Interior(a) => {
            let m = model!(&a.spec);
            let x = m.class(&a.class)?;
            let out = if matches!(command, Command::Closure(_)) {
                figures::closure(&m.continuum, &x, a.level)?
            } else {
                figures::interior(&m.continuum, &x, a.level)?
            };
            r.set("class", ids(&m, &x)).set("level", a.level).set(command.name(), ids(&m, &out));
        }
        Command::Figure { spec, class } => {
            let m = model!(spec);
            let x = m.class(class)?;
            r.set("class", ids(&m, &x))
                .set("figure", ids(&m, &figures::figure_of(&m.continuum, &x)?));
        }
        Command::Monad { spec, point, level } => {
            let m = model!(spec);
            let x = m.point(point)?;
            r.set("point", point.as_str());
            match level {
                Some(n) => r.set("level", *n).set("image", ids(&m, m.continuum.image(x, *n)?)),
                None => r.set("monad", ids(&m, m.continuum.monad(x)?)),
            };
        }
        Command::Sep { spec, class, other } => {
            let m = model!(spec);
            let (x, y) = (m.class(class)?, m.class(other)?);
            let ans = figures::separable(&m.continuum, &x, &y)?;
            r.set("separable", ans.separable).set("level", ans.level);
            if !ans.separable {
                let l = m.continuum.finest();
                let common = m.continuum.level_figure(&x, l)?.intersection(&m.continuum.level_figure(&y, l)?);
                r.fail(format!("level-{l} images still share {:?}", m.ids(&common)));
            }
        }
        Command::Open(a) | Command::Closed(a) | Command::Clopen(a) => {
            let m = model!(&a.spec);
            let c = &m.continuum;
            let x = m.class(&a.class)?;
            r.set("class", ids(&m, &x)).set("level", a.level);
            if !matches!(command, Command::Closed(_)) {
                let open = figures::is_open(c, &x, a.level)?;
                r.set("open", open);
                if let Some(p) = x.iter().find(|&p| !c.image(p, a.level).is_ok_and(|i| i.is_subset(&x))) {
                    let out = c.image(p, a.level)?.difference(&x);
                    r.fail(format!("{} ∈ X is related to {:?} outside X", c.carrier().id(p), m.ids(&out)));
                }
            }
            if !matches!(command, Command::Open(_)) {
                let closed = figures::is_closed(c, &x, a.level)?;
                r.set("closed", closed);
                let cl = figures::closure(c, &x, a.level)?;
                if let Some(p) = cl.difference(&x).first() {
                    r.fail(format!("{} ∉ X is related to a member of X", c.carrier().id(p)));
                }
            }
        }
        Command::Components(a) => {
            let m = model!(&a.spec);
            let x = match &a.class {
                Some(t) => m.class(t)?,
                None => m.continuum.full(),
            };
            let comps = connectivity::components(&m.continuum, &x, a.level)?;
            r.set("count", comps.len())
                .set("components", Value::Array(comps.iter().map(|k| ids(&m, k)).collect()));
        }
        Command::Connected(a) => {
            let m = model!(&a.spec);
            let x = m.class(&a.class)?;
            let comps = connectivity::components(&m.continuum, &x, a.level)?;
            r.set("class", ids(&m, &x)).set("connected", comps.len() <= 1);
            if comps.len() > 1 {
                r.fail(format!("{:?} has no level-{} edge to the rest of the class", m.ids(&comps[0]), a.level));
            }
        }
        Command::Motion { spec, class, from, to, level } => {
            let m = model!(spec);
            let found: Option<Motion> = match (class, from, to) {
                (Some(t), None, None) => {
                    let u = m.class(t)?;
                    match connectivity::motion_through(&m.continuum, &u, *level) {
                        Ok(mo) => Some(mo),
                        Err(continua::Error::NotConnected { part, .. }) => {
                            r.fail(format!("{:?} has no level-{level} edge to the rest of the class", names(&m, &part)));
                            None
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
                (None, Some(a), Some(b)) => {
                    let mo = connectivity::motion_between(&m.continuum, m.point(a)?, m.point(b)?, *level)?;
                    if mo.is_none() {
                        r.fail(format!("{a} and {b} lie in different level-{level} components"));
                    }
                    mo
                }
                _ => return Err(CliError::Usage("motion needs --class, or --from with --to".into())),
            };
            r.set("level", *level);
            if let Some(mo) = found {
                r.set("motion", json!(names(&m, mo.steps())));
            }
        }
        Command::Net(a) => {
            let m = model!(&a.spec);
            let x = match &a.class {
                Some(t) => m.class(t)?,
                None => m.continuum.full(),
            };
            let net = connectivity::maximal_net(&m.continuum, &x, a.level)?;
            r.set("net", ids(&m, &net.members)).set("size", net.members.len()).set("maximal", net.maximal);
            if !net.maximal {
                r.fail("greedy net failed its maximality re-check");
            }
        }
        Command::Cluster { spec, seq, level } => {
            let m = model!(spec);
            let s = points(&m, seq)?;
            let cl = connectivity::cluster_position(&m.continuum, &s, *level)?;
            let net = connectivity::maximal_net(&m.continuum, &m.continuum.full(), *level)?;
            r.set("position", m.continuum.carrier().id(cl.position))
                .set("count", cl.count)
                .set("pigeonhole_bound", s.len().div_ceil(net.members.len()));
        }
        Command::Converge { spec, seq, point, level } => {
            let m = model!(spec);
            let s = points(&m, seq)?;
            let depth = connectivity::converges_to(&m.continuum, &s, m.point(point)?)?;
            r.set("depth", depth);
            if let Some(k) = level {
                if depth < *k {
                    r.fail(format!("no tail of the prefix stays inside the level-{} image of {point}", depth + 1));
                }
            }
        }
        Command::Accpoints { spec, class, budget } => {
            let m = model!(spec);
            let a = m.class(class)?;
            let b = budget.unwrap_or(m.continuum.finest());
            r.set("budget", b)
                .set("accumulation", ids(&m, &connectivity::accumulation_points(&m.continuum, &a, b)?))
                .set("isolated", ids(&m, &connectivity::isolation_points(&m.continuum, &a, b)?));
        }
        Command::Topology { spec, level } => {
            let m = model!(spec);
            let opens = figures::open_classes(&m.continuum, *level)?;
            r.set("count", opens.len())
                .set("open", Value::Array(opens.iter().map(|k| ids(&m, k)).collect()));
        }
        Command::RealLub { members, a, b, iters } => {
            let ms = members.iter().map(|x| q(x)).collect::<Result<Vec<_>, _>>()?;
            let (a, b) = (q(a)?, q(b)?);
            let c = real::lub(&ms, &a, &b, *iters)?;
            let max = ms.iter().max().expect("nonempty").clone();
            let bound = (&b - &a) * rational::pow2_neg(*iters);
            r.set("lub", rational::format(&c))
                .set("max", rational::format(&max))
                .set("gap", rational::format(&(&c - &max)))
                .set("gap_bound", rational::format(&bound));
        }
        Command::RealInterval { spec, granularity, bound, levels, a, b, kind, level } => {
            let kind = IntervalKind::parse(kind)
                .ok_or_else(|| CliError::Usage(format!("unknown interval kind `{kind}`")))?;
            let c = match (spec, granularity, bound, levels) {
                (Some(p), None, None, None) => model!(p).continuum,
                (None, Some(g), Some(mb), Some(l)) => real::real_continuum(*g, *mb, *l)?,
                _ => {
                    return Err(CliError::Usage(
                        "real-interval needs --spec, or --granularity, --bound and --levels".into(),
                    ))
                }
            };
            let all = real::interval_constructions(&c, &q(a)?, &q(b)?, kind, *level)?;
            let shown: Vec<Value> = all.iter().map(|k| json!(c.carrier().ids_of(k))).collect();
            r.set("kind", kind.name()).set("level", *level).set("interval", shown[0].clone());
            if all.len() > 1 {
                r.set("constructions", Value::Array(shown));
                if all[0] != all[1] {
                    let diff = all[0].union(&all[1]).difference(&all[0].intersection(&all[1]));
                    r.fail(format!("the two constructions differ on {:?}", c.carrier().ids_of(&diff)));
                }
            }
        }
        Command::RealArith { op, x, y, level } => {
            let x = RealPoint::new(q(x)?);
            let need_y = || -> Result<RealPoint, CliError> {
                Ok(RealPoint::new(q(y.as_deref().ok_or_else(|| CliError::Usage(format!("{op} needs --y")))?)?))
            };
            match op.as_str() {
                "add" => r.set("result", x.add(&need_y()?).to_string()),
                "mul" => r.set("result", x.mul(&need_y()?).to_string()),
                "neg" => r.set("result", x.neg().to_string()),
                "recip" => match x.recip() {
                    Some(v) => r.set("result", v.to_string()),
                    None => return Err(CliError::Usage("mon(0) has no reciprocal".into())),
                },
                "le" => r.set("result", x.le(&need_y()?)),
                "eq" => {
                    let n = level.ok_or_else(|| CliError::Usage("eq needs --level".into()))?;
                    r.set("level", n).set("result", real::real_eq(&x, &need_y()?, n))
                }
                other => return Err(CliError::Usage(format!("unknown op `{other}`"))),
            };
        }
        Command::MorphismModulus { spec, function } => {
            let m = model!(spec);
            let f = m.morphism(function)?;
            let modulus = f.modulus();
            let table: Vec<Value> = modulus.0.iter().enumerate().map(|(k, j)| json!({"target": k, "source": j})).collect();
            r.set("modulus", Value::Array(table)).set("uniformly_continuous", modulus.is_total());
        }
        Command::MorphismCheck { spec, function, source_level, target_level, epsilon } => {
            let m = model!(spec);
            let f = m.morphism(function)?;
            morphism_check(&mut r, &f, *source_level, *target_level, epsilon)?;
        }
        Command::MorphismPush { spec, function, motion, source_level, target_level } => {
            let m = model!(spec);
            let f = m.morphism(function)?;
            let steps = points(&m, motion)?;
            let mo = Motion::new(&m.continuum, steps, *source_level)?;
            match f.push_motion(&mo, *target_level)? {
                Pushed::Motion(p) => {
                    let ids: Vec<&str> = p.steps().iter().map(|&y| f.target().carrier().id(y)).collect();
                    r.set("pushed", json!(ids));
                }
                Pushed::Broken { step, from, to } => {
                    let t = f.target().carrier();
                    r.set("broken_at", step);
                    r.fail(format!(
                        "step {step}: images {} and {} are not level-{target_level} related",
                        t.id(from),
                        t.id(to)
                    ));
                }
            }
        }
        Command::Ball { spec, center, radius, depth } => {
            let m = model!(spec);
            let d = m.continuum.metric().ok_or(continua::Error::NoMetric)?;
            let a = m.point(center)?;
            let e = q(radius)?;
            let exact = metric::exact_depth(d, a, &e);
            let depth = depth.unwrap_or(exact);
            let ball = metric::ball(d, a, &e, depth)?;
            r.set("ball", ids(&m, &ball))
                .set("depth", depth)
                .set("exact_depth", exact)
                .set("direct", ids(&m, &metric::open_ball(d, a, &e)));
        }
        Command::ExportDot { spec, level } => {
            let m = spec::load(spec)?;
            let name = spec.file_stem().map(|s| s.to_string_lossy().replace(['-', '.'], "_")).unwrap_or_default();
            let levels: Vec<usize> = match level {
                Some(n) => vec![*n],
                None => m.continuum.levels().collect(),
            };
            let graphs = levels
                .iter()
                .map(|&n| dot::export_dot(&m.continuum, n, &name))
                .collect::<Result<Vec<_>, _>>()?;
            r.set("graphs", json!(graphs));
        }
        Command::Suite { module, seed } => {
            let module = Module::parse(module).ok_or_else(|| {
                CliError::Usage(format!("unknown module `{module}`; expected one of {}", Module::NAMES.join(", ")))
            })?;
            let results = suite::run_module(module, *seed);
            r.set("seed", *seed);
            let rows: Vec<Value> = results
                .iter()
                .map(|c| {
                    json!({
                        "id": c.id,
                        "title": c.title,
                        "passed": c.passed,
                        "checks": c.checks,
                        "failed": c.failed,
                        "notes": c.notes,
                    })
                })
                .collect();
            r.set("criteria", Value::Array(rows));
            for c in results.iter().filter(|c| !c.passed) {
                for f in &c.failures {
                    r.fail(format!("[{}] {f}", c.id));
                }
                if c.failures.is_empty() {
                    r.fail(format!("[{}] no checks ran", c.id));
                }
            }
        }
    }
    Ok(r)
}

fn morphism_check(
    r: &mut Report,
    f: &Morphism<'_>,
    n1: usize,
    n2: usize,
    epsilon: &[String],
) -> Result<(), CliError> {
    let (s, t) = (f.source().carrier(), f.target().carrier());
    r.set("source_level", n1).set("target_level", n2);
    let edge = f.preserves_connected(n1, n2)?;
    r.set("preserves_connected", edge.is_none());
    if let Some((x, y)) = edge {
        r.fail(format!(
            "edge ({}, {}) maps to ({}, {}), not level-{n2} related",
            s.id(x),
            s.id(y),
            t.id(f.apply(x)),
            t.id(f.apply(y))
        ));
    }
    if f.source().size() <= figures::EXHAUSTIVE_LIMIT {
        let open = f.preimage_open_check(n1, n2)?;
        let closed = f.preimage_closed_check(n1, n2)?;
        r.set("preimage_open", open.is_none()).set("preimage_closed", closed.is_none());
        if let Some(w) = open {
            r.fail(format!("open class {:?} has a non-open preimage", t.ids_of(&w)));
        }
        if let Some(w) = closed {
            r.fail(format!("closed class {:?} has a non-closed preimage", t.ids_of(&w)));
        }
    } else {
        r.set("preimage_open", Value::Null).set("preimage_closed", Value::Null);
    }
    if !epsilon.is_empty() {
        let es = epsilon.iter().map(|e| q(e)).collect::<Result<Vec<_>, _>>()?;
        let results = f.epsilon_delta(&es)?;
        let rows: Vec<Value> = results
            .iter()
            .map(|d| json!({"epsilon": rational::format(&d.epsilon), "delta": d.delta.as_ref().map(rational::format)}))
            .collect();
        r.set("epsilon_delta", Value::Array(rows));
        for d in results.iter().filter(|d| d.delta.is_none()) {
            r.fail(format!("no δ = 2^-i, i ≤ {}, works for ε = {}", f.source().finest(), rational::format(&d.epsilon)));
        }
    }
    Ok(())
}
