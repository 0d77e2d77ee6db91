//! Run configuration: a TOML file with the same keys as the command-line
//! flags; flags win.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use conelab_core::givental::{check_window, required_window};
use conelab_core::{CohVector, Rational, TPolynomial, TargetSpace, Truncation};
use serde::Deserialize;

use crate::error::{CliError, CliResult};
use crate::query::parse_rational;
use crate::random::random_t;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Darboux,
    EngineOracles,
    Polynomiality,
    Inverse,
    Universal,
    Lagrangian,
    Tangent,
    Localisation,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Darboux,
        Suite::EngineOracles,
        Suite::Polynomiality,
        Suite::Inverse,
        Suite::Universal,
        Suite::Lagrangian,
        Suite::Tangent,
        Suite::Localisation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Darboux => "darboux",
            Suite::EngineOracles => "engine-oracles",
            Suite::Polynomiality => "polynomiality",
            Suite::Inverse => "inverse",
            Suite::Universal => "universal",
            Suite::Lagrangian => "lagrangian",
            Suite::Tangent => "tangent",
            Suite::Localisation => "localisation",
        }
    }

    pub fn parse(name: &str) -> CliResult<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .iter()
            .find(|s| s.name() == name)
            .map(|s| vec![*s])
            .ok_or_else(|| CliError::Usage(format!("unknown suite `{name}` (expected all or one of {})", suite_names())))
    }
}

fn suite_names() -> String {
    Suite::ALL.iter().map(|s| s.name()).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s {
            "human" => Ok(Format::Human),
            "json" => Ok(Format::Json),
            other => Err(CliError::Usage(format!("unknown format `{other}` (expected human or json)"))),
        }
    }
}

/// How `t(z)` is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TChoice {
    /// Seeded random rationals.
    Random,
    Zero,
    /// Coefficients ordered by `z`-power, then basis index.
    Explicit(Vec<Rational>),
}

impl TChoice {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s.trim() {
            "zero" | "0" => Ok(TChoice::Zero),
            "random" => Ok(TChoice::Random),
            list => list
                .split(',')
                .map(|x| parse_rational(x.trim()))
                .collect::<CliResult<Vec<_>>>()
                .map(TChoice::Explicit),
        }
    }
}

/// Keys accepted in a config file. Either spelling of the window keys works.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub target: Option<String>,
    #[serde(rename = "D")]
    pub d: Option<u32>,
    #[serde(rename = "E")]
    pub e: Option<u32>,
    #[serde(rename = "T")]
    pub t_degree: Option<u32>,
    #[serde(alias = "z-min")]
    pub z_min: Option<i32>,
    #[serde(alias = "z-max")]
    pub z_max: Option<i32>,
    pub seed: Option<u64>,
    pub t: Option<TValue>,
    pub suites: Option<SuitesValue>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum TValue {
    Text(String),
    List(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum SuitesValue {
    Text(String),
    List(Vec<String>),
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }

    /// Overlay `other` (the flags) on top of `self`.
    pub fn overlay(self, other: FileConfig) -> FileConfig {
        FileConfig {
            target: other.target.or(self.target),
            d: other.d.or(self.d),
            e: other.e.or(self.e),
            t_degree: other.t_degree.or(self.t_degree),
            z_min: other.z_min.or(self.z_min),
            z_max: other.z_max.or(self.z_max),
            seed: other.seed.or(self.seed),
            t: other.t.or(self.t),
            suites: other.suites.or(self.suites),
            out: other.out.or(self.out),
            format: other.format.or(self.format),
        }
    }
}

/// A fully resolved run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub target: Arc<TargetSpace>,
    pub novikov_order: u32,
    pub epsilon_order: u32,
    pub t_degree: usize,
    pub truncation: Truncation,
    /// True when neither window bound was given.
    pub auto_window: bool,
    pub seed: u64,
    pub t_choice: TChoice,
    pub t: TPolynomial,
    pub suites: Vec<Suite>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn resolve(raw: FileConfig) -> CliResult<Self> {
        let name = raw.target.ok_or_else(|| CliError::Usage("no target given (use --target point|P1|P2)".into()))?;
        let target = Arc::new(TargetSpace::make(&name).map_err(|e| CliError::Usage(e.to_string()))?);
        let rank = target.rank();
        let novikov_order = if target.class_rank == 0 { 0 } else { raw.d.unwrap_or(1) };
        let epsilon_order = raw.e.unwrap_or(2);
        let seed = raw.seed.unwrap_or(0);

        let t_choice = match raw.t {
            None => TChoice::Random,
            Some(TValue::Text(s)) => TChoice::parse(&s)?,
            Some(TValue::List(items)) => TChoice::Explicit(
                items.iter().map(|x| parse_rational(x.trim())).collect::<CliResult<Vec<_>>>()?,
            ),
        };
        let t_degree = match (&t_choice, raw.t_degree) {
            (TChoice::Explicit(c), given) => {
                if c.is_empty() || c.len() % rank != 0 {
                    return Err(CliError::Usage(format!(
                        "--t has {} coefficients; expected a multiple of the rank {rank}",
                        c.len()
                    )));
                }
                let inferred = c.len() / rank - 1;
                if let Some(g) = given {
                    if g as usize != inferred {
                        return Err(CliError::Usage(format!("--t has degree {inferred} but --T is {g}")));
                    }
                }
                inferred
            }
            (_, given) => given.unwrap_or(1) as usize,
        };
        let t = match &t_choice {
            TChoice::Random => random_t(rank, t_degree, seed),
            TChoice::Zero => TPolynomial::zero(rank),
            TChoice::Explicit(c) => {
                let coeffs = c.chunks(rank).map(|chunk| CohVector(chunk.to_vec())).collect();
                TPolynomial::new(coeffs)?
            }
        };

        let (lo, hi) = required_window(&target, novikov_order, epsilon_order, t_degree);
        let auto_window = raw.z_min.is_none() && raw.z_max.is_none();
        let z_min = raw.z_min.unwrap_or(lo);
        let z_max = raw.z_max.unwrap_or(hi);
        let truncation = Truncation::new(novikov_order, epsilon_order, z_min, z_max)
            .map_err(|e| CliError::Config(format!("{e}; this run needs z_min <= {lo} and z_max >= {hi}")))?;
        check_window(&target, &truncation, t_degree).map_err(|e| CliError::Config(e.to_string()))?;

        let suites = match raw.suites {
            None => Suite::ALL.to_vec(),
            Some(SuitesValue::Text(s)) => parse_suites(s.split(','))?,
            Some(SuitesValue::List(items)) => parse_suites(items.iter().map(String::as_str))?,
        };
        let format = raw.format.as_deref().map(Format::parse).transpose()?.unwrap_or_default();

        Ok(RunConfig {
            target,
            novikov_order,
            epsilon_order,
            t_degree,
            truncation,
            auto_window,
            seed,
            t_choice,
            t,
            suites,
            out: raw.out,
            format,
        })
    }
}

fn parse_suites<'a>(names: impl Iterator<Item = &'a str>) -> CliResult<Vec<Suite>> {
    let mut out = Vec::new();
    for name in names {
        out.extend(Suite::parse(name.trim())?);
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(CliError::Usage("no suites selected".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(target: &str) -> FileConfig {
        FileConfig { target: Some(target.into()), ..Default::default() }
    }

    #[test]
    fn flags_override_file() {
        let file: FileConfig = toml::from_str("target = \"P1\"\nD = 2\nE = 3\nseed = 5\nsuites = [\"inverse\"]").unwrap();
        let flags = FileConfig { e: Some(1), suites: Some(SuitesValue::Text("darboux,inverse".into())), ..Default::default() };
        let cfg = RunConfig::resolve(file.overlay(flags)).unwrap();
        assert_eq!(cfg.target.name, "P1");
        assert_eq!((cfg.novikov_order, cfg.epsilon_order, cfg.seed), (2, 1, 5));
        assert_eq!(cfg.suites, vec![Suite::Darboux, Suite::Inverse]);
    }

    #[test]
    fn explicit_t_sets_degree() {
        let mut raw = base("P1");
        raw.t = Some(TValue::Text("1/2, -3, 0, 4/7".into()));
        let cfg = RunConfig::resolve(raw).unwrap();
        assert_eq!(cfg.t_degree, 1);
        assert_eq!(cfg.t.coeffs()[1].0[1], conelab_core::frac(4, 7));
    }

    #[test]
    fn narrow_window_names_required_bounds() {
        let mut raw = base("P1");
        raw.z_max = Some(1);
        let err = RunConfig::resolve(raw).unwrap_err();
        assert!(matches!(err, CliError::Config(_)));
        assert!(err.to_string().contains("z_min"), "{err}");
    }

    #[test]
    fn unknown_keys_and_suites_are_usage_errors() {
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
        let mut raw = base("P2");
        raw.suites = Some(SuitesValue::Text("nope".into()));
        assert!(matches!(RunConfig::resolve(raw), Err(CliError::Usage(_))));
        assert!(matches!(RunConfig::resolve(FileConfig::default()), Err(CliError::Usage(_))));
    }
}
