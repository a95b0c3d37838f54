//   Copyright 2026 cis-synth developers
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.

//! Run configuration files.
//!
//! ```toml
//! [system]
//! f0 = ["x1 + 0.01*x2", "x2 + 0.01*sin(x1)"]
//! g = [["0"], ["0.01*cos(x1)"]]
//! u_lo = [-0.1]
//! u_hi = [0.1]
//!
//! [omega]
//! boxes = [{ lo = [-0.05, -0.01], hi = [0.05, 0.01] }]
//!
//! [run]
//! epsilon = 1e-3
//! algorithm = "fixpoint"
//! ```
//!
//! Optional keys: `system.lipschitz`, `run.n_u` (required for the
//! baseline), `run.input_grid`, `run.margin_r`, `run.seed`, `run.threads`,
//! `run.output`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algorithms::InputGrid;
use crate::dynamics::SystemModel;
use crate::expr::parse_with_dim;
use crate::interval::{BoxUnion, IntervalBox};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {msg}")]
    Field { path: String, msg: String },
    #[error("{0}")]
    Syntax(String),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

fn field(path: &str, msg: impl Into<String>) -> ConfigError {
    ConfigError::Field {
        path: path.to_string(),
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Fixpoint,
    Accelerated,
    Baseline,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Fixpoint => "fixpoint",
            Algorithm::Accelerated => "accelerated",
            Algorithm::Baseline => "baseline",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fixpoint" => Ok(Algorithm::Fixpoint),
            "accelerated" => Ok(Algorithm::Accelerated),
            "baseline" => Ok(Algorithm::Baseline),
            other => Err(format!(
                "unknown algorithm `{other}` (expected fixpoint, accelerated or baseline)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    pub f0: Vec<String>,
    /// Row-major `n × m`.
    pub g: Vec<Vec<String>>,
    pub u_lo: Vec<f64>,
    pub u_hi: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lipschitz: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaSection {
    pub boxes: Vec<IntervalBox>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub epsilon: f64,
    pub algorithm: Algorithm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_u: Option<usize>,
    #[serde(default)]
    pub input_grid: InputGrid,
    #[serde(default)]
    pub margin_r: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "one")]
    pub threads: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

fn one() -> usize {
    1
}

/// A validated run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemSection,
    pub omega: OmegaSection,
    pub run: RunSection,
}

/// Mirror of [`RunConfig`] with every key optional, so that missing keys
/// can be reported by path.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    system: Option<RawSystem>,
    omega: Option<RawOmega>,
    run: Option<RawRun>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    f0: Option<Vec<String>>,
    g: Option<Vec<Vec<String>>>,
    u_lo: Option<Vec<f64>>,
    u_hi: Option<Vec<f64>>,
    lipschitz: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOmega {
    boxes: Option<Vec<toml::Value>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRun {
    epsilon: Option<f64>,
    algorithm: Option<String>,
    n_u: Option<i64>,
    input_grid: Option<InputGrid>,
    margin_r: Option<f64>,
    seed: Option<u64>,
    threads: Option<i64>,
    output: Option<String>,
}

fn required<T>(v: Option<T>, path: &str) -> Result<T, ConfigError> {
    v.ok_or_else(|| field(path, "required"))
}

impl RunConfig {
    pub fn from_toml_str(s: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(s).map_err(|e| ConfigError::Syntax(e.to_string()))?;
        let sys = required(raw.system, "system")?;
        let om = required(raw.omega, "omega")?;
        let run = required(raw.run, "run")?;
        let boxes = required(om.boxes, "omega.boxes")?
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.try_into::<IntervalBox>()
                    .map_err(|e| field(&format!("omega.boxes[{i}]"), e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let algorithm = required(run.algorithm, "algorithm")?
            .parse()
            .map_err(|e: String| field("algorithm", e))?;
        let n_u = match run.n_u {
            Some(k) if k < 1 => return Err(field("n_u", "must be at least 1")),
            k => k.map(|k| k as usize),
        };
        let threads = match run.threads {
            Some(k) if k < 1 => return Err(field("threads", "must be at least 1")),
            k => k.unwrap_or(1) as usize,
        };
        let cfg = RunConfig {
            system: SystemSection {
                f0: required(sys.f0, "system.f0")?,
                g: required(sys.g, "system.g")?,
                u_lo: required(sys.u_lo, "system.u_lo")?,
                u_hi: required(sys.u_hi, "system.u_hi")?,
                lipschitz: sys.lipschitz,
            },
            omega: OmegaSection { boxes },
            run: RunSection {
                epsilon: required(run.epsilon, "epsilon")?,
                algorithm,
                n_u,
                input_grid: run.input_grid.unwrap_or_default(),
                margin_r: run.margin_r.unwrap_or(0.0),
                seed: run.seed.unwrap_or(0),
                threads,
                output: run.output,
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("configuration serializes to TOML")
    }

    /// Checks every invariant, including that all expressions parse.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let r = &self.run;
        if !(r.epsilon > 0.0 && r.epsilon.is_finite()) {
            return Err(field("epsilon", "must be positive"));
        }
        if !(r.margin_r >= 0.0 && r.margin_r.is_finite()) {
            return Err(field("margin_r", "must be >= 0"));
        }
        if r.threads == 0 {
            return Err(field("threads", "must be at least 1"));
        }
        match (r.algorithm, r.n_u) {
            (Algorithm::Baseline, None) => return Err(field("n_u", "required for the baseline algorithm")),
            (Algorithm::Baseline, Some(0)) => return Err(field("n_u", "must be at least 1")),
            (Algorithm::Fixpoint | Algorithm::Accelerated, Some(_)) => {
                return Err(field("n_u", "only used by the baseline algorithm"))
            }
            _ => {}
        }
        let s = &self.system;
        let n = s.f0.len();
        if n == 0 {
            return Err(field("system.f0", "at least one state required"));
        }
        if s.g.len() != n {
            return Err(field("system.g", format!("expected {n} rows, got {}", s.g.len())));
        }
        let m = s.u_lo.len();
        if m == 0 || s.u_hi.len() != m {
            return Err(field(
                "system.u_hi",
                "u_lo and u_hi must be non-empty and of equal length",
            ));
        }
        IntervalBox::new(&s.u_lo, &s.u_hi).map_err(|e| field("system.u_hi", e.to_string()))?;
        for (i, row) in s.g.iter().enumerate() {
            if row.len() != m {
                return Err(field(
                    &format!("system.g[{i}]"),
                    format!("expected {m} entries, got {}", row.len()),
                ));
            }
        }
        for (i, e) in s.f0.iter().enumerate() {
            parse_with_dim(e, n).map_err(|err| field(&format!("system.f0[{i}]"), err.to_string()))?;
        }
        for (i, row) in s.g.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                parse_with_dim(e, n).map_err(|err| field(&format!("system.g[{i}][{j}]"), err.to_string()))?;
            }
        }
        if let Some(l) = &s.lipschitz {
            if l.len() != m + 1 || l.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                return Err(field(
                    "system.lipschitz",
                    format!("expected {} finite values >= 0", m + 1),
                ));
            }
        }
        if self.omega.boxes.is_empty() {
            return Err(field("omega.boxes", "at least one box required"));
        }
        for (i, b) in self.omega.boxes.iter().enumerate() {
            if b.dim() != n {
                return Err(field(
                    &format!("omega.boxes[{i}]"),
                    format!("expected dimension {n}, got {}", b.dim()),
                ));
            }
        }
        Ok(())
    }

    /// The system model described by the configuration.
    pub fn model(&self) -> Result<SystemModel, ConfigError> {
        let s = &self.system;
        let u = IntervalBox::new(&s.u_lo, &s.u_hi).map_err(|e| field("system.u_hi", e.to_string()))?;
        let omega =
            BoxUnion::new(self.omega.boxes.clone()).map_err(|e| field("omega.boxes", e.to_string()))?;
        let model = SystemModel::parse(&s.f0, &s.g, u, omega).map_err(|e| field("system", e.to_string()))?;
        match &s.lipschitz {
            Some(l) => model
                .with_lipschitz(l.clone())
                .map_err(|e| field("system.lipschitz", e.to_string())),
            None => Ok(model),
        }
    }
}
