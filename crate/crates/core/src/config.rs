//! TOML configuration: named presentations, subsets, functions, pair
//! families and suite inputs.
//!
//! Every presentation, subset, function and pair reference is resolved
//! and every constructor is run when the document is loaded. Suite
//! references are resolved when a suite is requested, so a document
//! without suite inputs still serves queries.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::constructions::{
    make_discrete_from_bornology, make_example5, make_filter_modified, make_finitary, make_metric, make_product,
    make_reindexed, make_subballean, BoundedChain, ConstructionError, Generator, PhiChain,
};
use crate::functions::{shipped_candidates, RealFunctionSpec};
use crate::presentation::SharedBallean;
use crate::subset::{Point, SpecError, SubsetSpec};
use crate::suite::{pair_family, MuSoInputs, SuiteInputs, SuitePlan};
use crate::verdict::{BornologyModel, Scale, ScaleError, ScaleWindow};

/// The document used when no `--config` is given.
pub const DEFAULT_CONFIG: &str = include_str!("default.toml");

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config does not parse: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("unknown presentation `{0}`")]
    UnknownPresentation(String),
    #[error("unknown subset `{name}` ({source})")]
    UnknownSubset { name: String, source: SpecError },
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unknown pair family `{0}`")]
    UnknownPairs(String),
    #[error("presentation `{0}` depends on itself")]
    Cycle(String),
    #[error("presentation `{name}`: {source}")]
    Construction { name: String, source: ConstructionError },
    #[error("bad scale: {0}")]
    Scale(#[from] ScaleError),
    #[error("bad scale model `{0}`, expected `presentation` or `cutoff`")]
    Model(String),
    #[error("suite `{suite}`: {reason}")]
    Suite { suite: String, reason: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default)]
    scale: ScaleOverride,
    #[serde(default)]
    presentations: BTreeMap<String, RawPresentation>,
    #[serde(default)]
    subsets: BTreeMap<String, String>,
    #[serde(default)]
    functions: BTreeMap<String, RawFunction>,
    #[serde(default)]
    pairs: BTreeMap<String, Vec<[String; 2]>>,
    #[serde(default)]
    suites: RawSuites,
}

/// Optional scale fields layered over a base window.
#[derive(Debug, Clone, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ScaleOverride {
    pub rmax: Option<Scale>,
    pub window: Option<usize>,
    pub cutoff: Option<usize>,
    pub model: Option<String>,
}

impl ScaleOverride {
    /// A new window without a new cutoff falls back to a quarter window.
    pub fn apply(&self, base: ScaleWindow) -> Result<ScaleWindow, ConfigError> {
        let window = self.window.unwrap_or(base.window);
        let cutoff = match (self.cutoff, self.window) {
            (Some(c), _) => c,
            (None, Some(w)) => (w / 4).max(1),
            (None, None) => base.cutoff,
        };
        let mut sw = ScaleWindow::with_cutoff(self.rmax.unwrap_or(base.rmax), window, cutoff)?;
        sw.model = match self.model.as_deref() {
            None => base.model,
            Some("presentation") => BornologyModel::Presentation,
            Some("cutoff") => BornologyModel::CutoffProxy,
            Some(other) => return Err(ConfigError::Model(other.to_string())),
        };
        Ok(sw)
    }

    fn merge(&self, over: &ScaleOverride) -> ScaleOverride {
        ScaleOverride {
            rmax: over.rmax.or(self.rmax),
            window: over.window.or(self.window),
            cutoff: over.cutoff.or(self.cutoff),
            model: over.model.clone().or_else(|| self.model.clone()),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawPresentation {
    Metric {},
    Finitary { generators: Vec<RawGenerator> },
    Example5 {},
    FilterModified { base: String, phi: RawPhi },
    Discrete { chain: RawChain },
    Subballean { base: String, subset: String },
    Product { left: String, right: String },
    Reindexed { base: String, factor: usize },
}

impl RawPresentation {
    fn references(&self) -> Vec<&str> {
        match self {
            RawPresentation::FilterModified { base, .. }
            | RawPresentation::Subballean { base, .. }
            | RawPresentation::Reindexed { base, .. } => vec![base],
            RawPresentation::Product { left, right } => vec![left, right],
            _ => vec![],
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RawGenerator {
    Cycles(Vec<Vec<Point>>),
    Table(Vec<Point>),
    Blockwise { block: usize, pattern: Vec<usize> },
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RawPhi {
    Tail { step: usize, offset: usize },
    Sets(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RawChain {
    Prefix { step: usize, offset: usize },
    Sets(Vec<Vec<Point>>),
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RawFunction {
    Table(Vec<f64>),
    DistanceRatio([String; 2]),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSuites {
    theorem1: Option<RawSuite>,
    filter: Option<RawSuite>,
    example5: Option<RawSuite>,
    mu_so: Option<RawSuite>,
    normality: Option<RawSuite>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSuite {
    ballean: Option<String>,
    balleans: Option<Vec<String>>,
    metric: Option<String>,
    reindexed: Option<String>,
    discrete: Option<String>,
    pairs: Option<Vec<[String; 2]>>,
    #[serde(flatten)]
    scale: ScaleOverride,
}

/// A constructed presentation, plus the ingredients of filter-modified
/// ones so the filter suite can rebuild them.
#[derive(Debug, Clone)]
pub struct Built {
    pub ballean: SharedBallean,
    pub filter_parts: Option<(SharedBallean, PhiChain)>,
}

/// Names of the built-in functions.
pub const BUILTIN_FUNCTIONS: [&str; 6] = ["identity", "sqrt", "log1p", "square", "mod2", "sin_sqrt"];

#[derive(Debug, Clone)]
pub struct Config {
    pub scale: ScaleWindow,
    presentations: BTreeMap<String, Built>,
    subsets: BTreeMap<String, SubsetSpec>,
    functions: BTreeMap<String, RawFunctionResolved>,
    pairs: BTreeMap<String, Vec<(SubsetSpec, SubsetSpec)>>,
    suite_names: SuiteNames,
    suite_scales: SuiteScales,
}

#[derive(Debug, Clone)]
enum RawFunctionResolved {
    Table(Vec<f64>),
    DistanceRatio(SubsetSpec, SubsetSpec),
}

#[derive(Debug, Clone)]
struct SuiteNames {
    theorem1: Vec<String>,
    filter: String,
    mu_so: [String; 3],
    normality: String,
    normality_pairs: Vec<(SubsetSpec, SubsetSpec)>,
}

#[derive(Debug, Clone, Default)]
struct SuiteScales {
    theorem1: ScaleOverride,
    filter: ScaleOverride,
    example5: ScaleOverride,
    mu_so: ScaleOverride,
    normality: ScaleOverride,
}

impl Config {
    pub fn default_document() -> Config {
        Config::parse(DEFAULT_CONFIG).expect("embedded config is valid")
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Config::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let raw: RawDocument = toml::from_str(text)?;
        let scale = raw.scale.apply(ScaleWindow::new(16, 4096)?)?;

        let mut subsets = BTreeMap::new();
        for (name, text) in &raw.subsets {
            let spec = text
                .parse::<SubsetSpec>()
                .map_err(|source| ConfigError::UnknownSubset { name: name.clone(), source })?;
            subsets.insert(name.clone(), spec);
        }
        let resolve = |name: &str| resolve_subset(&subsets, name);

        let mut presentations = BTreeMap::new();
        let mut visiting = HashSet::new();
        for name in raw.presentations.keys() {
            build(name, &raw.presentations, &resolve, scale.window, &mut presentations, &mut visiting)?;
        }

        let mut functions = BTreeMap::new();
        for (name, f) in &raw.functions {
            let resolved = match f {
                RawFunction::Table(values) => RawFunctionResolved::Table(values.clone()),
                RawFunction::DistanceRatio([a, b]) => RawFunctionResolved::DistanceRatio(resolve(a)?, resolve(b)?),
            };
            functions.insert(name.clone(), resolved);
        }

        let resolve_pairs = |pairs: &[[String; 2]]| -> Result<Vec<(SubsetSpec, SubsetSpec)>, ConfigError> {
            pairs.iter().map(|[a, b]| Ok((resolve(a)?, resolve(b)?))).collect()
        };
        let mut pairs = BTreeMap::new();
        pairs.insert("default".to_string(), pair_family());
        for (name, list) in &raw.pairs {
            pairs.insert(name.clone(), resolve_pairs(list)?);
        }

        let s = &raw.suites;
        let field = |suite: &Option<RawSuite>, pick: fn(&RawSuite) -> Option<&String>, default: &str| {
            suite.as_ref().and_then(pick).cloned().unwrap_or_else(|| default.to_string())
        };
        let suite_names = SuiteNames {
            theorem1: s
                .theorem1
                .as_ref()
                .and_then(|t| t.balleans.clone())
                .unwrap_or_else(|| vec!["discrete".into(), "metric".into(), "example5".into()]),
            filter: field(&s.filter, |r| r.ballean.as_ref(), "filtered"),
            mu_so: [
                field(&s.mu_so, |r| r.metric.as_ref(), "metric"),
                field(&s.mu_so, |r| r.reindexed.as_ref(), "metric2x"),
                field(&s.mu_so, |r| r.discrete.as_ref(), "discrete"),
            ],
            normality: field(&s.normality, |r| r.ballean.as_ref(), "metric"),
            normality_pairs: match s.normality.as_ref().and_then(|r| r.pairs.as_ref()) {
                Some(p) => resolve_pairs(p)?,
                None => crate::suite::normality_pairs(),
            },
        };
        let scale_of = |suite: &Option<RawSuite>| suite.as_ref().map(|r| r.scale.clone()).unwrap_or_default();
        let suite_scales = SuiteScales {
            theorem1: scale_of(&s.theorem1),
            filter: scale_of(&s.filter),
            example5: scale_of(&s.example5),
            mu_so: scale_of(&s.mu_so),
            normality: scale_of(&s.normality),
        };

        Ok(Config { scale, presentations, subsets, functions, pairs, suite_names, suite_scales })
    }

    pub fn presentation_names(&self) -> impl Iterator<Item = &str> {
        self.presentations.keys().map(String::as_str)
    }

    pub fn built(&self, name: &str) -> Result<&Built, ConfigError> {
        self.presentations.get(name).ok_or_else(|| ConfigError::UnknownPresentation(name.to_string()))
    }

    pub fn ballean(&self, name: &str) -> Result<SharedBallean, ConfigError> {
        Ok(self.built(name)?.ballean.clone())
    }

    /// A named subset, or an inline spec such as `arith(0,2)`.
    pub fn subset(&self, name_or_spec: &str) -> Result<SubsetSpec, ConfigError> {
        resolve_subset(&self.subsets, name_or_spec)
    }

    /// A named function; tables and built-ins are laid out for `window`.
    pub fn function(&self, name: &str, window: usize) -> Result<RealFunctionSpec, ConfigError> {
        if let Some(f) = self.functions.get(name) {
            return Ok(match f {
                RawFunctionResolved::Table(values) => {
                    RealFunctionSpec::PiecewiseTable { label: name.to_string(), values: values.clone() }
                }
                RawFunctionResolved::DistanceRatio(a, b) => RealFunctionSpec::DistanceRatio(a.clone(), b.clone()),
            });
        }
        shipped_candidates(window)
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| ConfigError::UnknownFunction(name.to_string()))
    }

    pub fn pairs(&self, name: &str) -> Result<&[(SubsetSpec, SubsetSpec)], ConfigError> {
        self.pairs.get(name).map(Vec::as_slice).ok_or_else(|| ConfigError::UnknownPairs(name.to_string()))
    }

    /// Suite inputs with `over` layered on every suite budget.
    pub fn suite_inputs(&self, over: &ScaleOverride) -> Result<SuiteInputs, ConfigError> {
        let n = &self.suite_names;
        let named = |name: &String| -> Result<(String, SharedBallean), ConfigError> {
            Ok((name.clone(), self.ballean(name)?))
        };
        let filter_built = self.built(&n.filter)?;
        let (base, phi) = filter_built.filter_parts.clone().ok_or_else(|| ConfigError::Suite {
            suite: "filter".into(),
            reason: format!("presentation `{}` is not filter_modified", n.filter),
        })?;
        let base_window = self.scale;
        let sc = &self.suite_scales;
        let plan = SuitePlan {
            theorem1: sc.theorem1.merge(over).apply(base_window)?,
            filter: sc.filter.merge(over).apply(base_window)?,
            example5: sc.example5.merge(over).apply(base_window)?,
            mu_so: sc.mu_so.merge(over).apply(base_window)?,
            normality: sc.normality.merge(over).apply(base_window)?,
        };
        Ok(SuiteInputs {
            theorem1: n.theorem1.iter().map(named).collect::<Result<_, _>>()?,
            filter: (n.filter.clone(), base, phi),
            mu_so: MuSoInputs { metric: named(&n.mu_so[0])?, reindexed: named(&n.mu_so[1])?, discrete: named(&n.mu_so[2])? },
            normality: {
                let (name, b) = named(&n.normality)?;
                (name, b, n.normality_pairs.clone())
            },
            plan,
        })
    }

    /// Restricts the suite inputs to one presentation where the suite
    /// takes one.
    pub fn suite_inputs_for(
        &self,
        suite: &str,
        ballean: Option<&str>,
        over: &ScaleOverride,
    ) -> Result<SuiteInputs, ConfigError> {
        let mut inputs = self.suite_inputs(over)?;
        let Some(name) = ballean else { return Ok(inputs) };
        match suite {
            "theorem1" => inputs.theorem1 = vec![(name.to_string(), self.ballean(name)?)],
            "filter" => {
                let (base, phi) = self.built(name)?.filter_parts.clone().ok_or_else(|| ConfigError::Suite {
                    suite: "filter".into(),
                    reason: format!("presentation `{name}` is not filter_modified"),
                })?;
                inputs.filter = (name.to_string(), base, phi);
            }
            "normality" => {
                inputs.normality.0 = name.to_string();
                inputs.normality.1 = self.ballean(name)?;
            }
            other => {
                return Err(ConfigError::Suite { suite: other.into(), reason: "takes no --ballean".into() });
            }
        }
        Ok(inputs)
    }
}

fn resolve_subset(subsets: &BTreeMap<String, SubsetSpec>, name: &str) -> Result<SubsetSpec, ConfigError> {
    if let Some(s) = subsets.get(name) {
        return Ok(s.clone());
    }
    name.parse::<SubsetSpec>().map_err(|source| ConfigError::UnknownSubset { name: name.to_string(), source })
}

fn build(
    name: &str,
    raw: &BTreeMap<String, RawPresentation>,
    resolve: &dyn Fn(&str) -> Result<SubsetSpec, ConfigError>,
    window: usize,
    done: &mut BTreeMap<String, Built>,
    visiting: &mut HashSet<String>,
) -> Result<SharedBallean, ConfigError> {
    if let Some(b) = done.get(name) {
        return Ok(b.ballean.clone());
    }
    let spec = raw.get(name).ok_or_else(|| ConfigError::UnknownPresentation(name.to_string()))?;
    if !visiting.insert(name.to_string()) {
        return Err(ConfigError::Cycle(name.to_string()));
    }
    let mut deps = Vec::new();
    for dep in spec.references() {
        deps.push(build(dep, raw, resolve, window, done, visiting)?);
    }
    visiting.remove(name);
    let wrap = |source| ConfigError::Construction { name: name.to_string(), source };
    let mut filter_parts = None;
    let ballean = match spec {
        RawPresentation::Metric {} => make_metric(),
        RawPresentation::Example5 {} => make_example5(),
        RawPresentation::Finitary { generators } => {
            let gens = generators
                .iter()
                .map(|g| match g {
                    RawGenerator::Cycles(c) => Generator::Cycles(c.clone()),
                    RawGenerator::Table(t) => Generator::Table(t.clone()),
                    RawGenerator::Blockwise { block, pattern } => {
                        Generator::Blockwise { block: *block, pattern: pattern.clone() }
                    }
                })
                .collect();
            make_finitary(gens).map_err(wrap)?
        }
        RawPresentation::FilterModified { phi, .. } => {
            let phi = match phi {
                RawPhi::Tail { step, offset } => PhiChain::Tail { step: *step, offset: *offset },
                RawPhi::Sets(sets) => PhiChain::Explicit(sets.iter().map(|s| resolve(s)).collect::<Result<_, _>>()?),
            };
            filter_parts = Some((deps[0].clone(), phi.clone()));
            make_filter_modified(deps[0].clone(), phi).map_err(wrap)?
        }
        RawPresentation::Discrete { chain } => {
            let chain = match chain {
                RawChain::Prefix { step, offset } => BoundedChain::Prefix { step: *step, offset: *offset },
                RawChain::Sets(sets) => BoundedChain::Explicit(sets.clone()),
            };
            make_discrete_from_bornology(chain).map_err(wrap)?
        }
        RawPresentation::Subballean { subset, .. } => make_subballean(deps[0].clone(), resolve(subset)?, window).map_err(wrap)?,
        RawPresentation::Product { .. } => make_product(deps[0].clone(), deps[1].clone()),
        RawPresentation::Reindexed { factor, .. } => make_reindexed(deps[0].clone(), *factor).map_err(wrap)?,
    };
    done.insert(name.to_string(), Built { ballean: ballean.clone(), filter_parts });
    Ok(ballean)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_document_builds_every_kind() {
        let c = Config::default_document();
        let names: Vec<&str> = c.presentation_names().collect();
        for n in ["metric", "metric2x", "finitary", "example5", "filtered", "discrete", "product", "evens_sub"] {
            assert!(names.contains(&n), "{n}");
        }
        assert_eq!(c.scale, ScaleWindow::new(16, 4096).unwrap());
        assert_eq!(c.subset("twoN").unwrap(), SubsetSpec::arithmetic(2, 2).unwrap());
        assert_eq!(c.subset("arith(0,5)").unwrap(), SubsetSpec::arithmetic(0, 5).unwrap());
        assert_eq!(c.pairs("default").unwrap().len(), 10);
        assert_eq!(c.function("ramp", 8).unwrap().materialize(make_metric().as_ref(), 8)[7], 2.0);
        assert!(c.function("sin_sqrt", 8).is_ok());
    }

    #[test]
    fn minimal_document_serves_queries_only() {
        let c = Config::parse("[presentations.line]\nkind = \"metric\"\n").unwrap();
        assert!(c.ballean("line").is_ok());
        assert!(matches!(c.suite_inputs(&ScaleOverride::default()), Err(ConfigError::UnknownPresentation(_))));
    }

    #[test]
    fn default_plan_matches_builtin() {
        let c = Config::default_document();
        assert_eq!(c.suite_inputs(&ScaleOverride::default()).unwrap().plan, SuitePlan::default());
    }

    #[test]
    fn unknown_references_are_rejected() {
        let bad = "[presentations.p]\nkind = \"product\"\nleft = \"metric\"\nright = \"nope\"\n";
        assert!(matches!(Config::parse(bad), Err(ConfigError::UnknownPresentation(n)) if n == "metric"));
        let cyc = "[presentations.a]\nkind = \"reindexed\"\nbase = \"b\"\nfactor = 2\n[presentations.b]\nkind = \"reindexed\"\nbase = \"a\"\nfactor = 2\n";
        assert!(matches!(Config::parse(cyc), Err(ConfigError::Cycle(_))));
        let c = Config::default_document();
        assert!(matches!(c.subset("nonsense"), Err(ConfigError::UnknownSubset { .. })));
        assert!(matches!(c.function("cube", 8), Err(ConfigError::UnknownFunction(_))));
    }

    #[test]
    fn constructor_errors_surface() {
        let bad = "[presentations.d]\nkind = \"discrete\"\nchain = { prefix = { step = 0, offset = 0 } }\n";
        assert!(matches!(Config::parse(bad), Err(ConfigError::Construction { .. })));
        let unknown_field = "[presentations.m]\nkind = \"metric\"\nradius = 3\n";
        assert!(matches!(Config::parse(unknown_field), Err(ConfigError::Parse(_))));
    }

    #[test]
    fn scale_override_layers() {
        let base = ScaleWindow::new(16, 4096).unwrap();
        let o = ScaleOverride { window: Some(64), ..Default::default() };
        assert_eq!(o.apply(base).unwrap(), ScaleWindow::with_cutoff(16, 64, 16).unwrap());
        let o = ScaleOverride { model: Some("cutoff".into()), ..Default::default() };
        assert!(o.apply(base).unwrap().is_finite_model());
        let o = ScaleOverride { cutoff: Some(5000), ..Default::default() };
        assert!(o.apply(base).is_err());
    }
}
