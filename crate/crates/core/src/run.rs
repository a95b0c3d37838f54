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

//! Running a configuration and the JSON result format.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algorithms::{
    accelerated, baseline_sampled, fixpoint, verify_invariance, AlgorithmError, ControllerTable, Params,
    RunStats, VerifyReport,
};
use crate::config::{Algorithm, ConfigError, RunConfig};
use crate::interval::{BoxUnion, IntervalBox};

pub const SCHEMA: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Algorithm(#[from] AlgorithmError),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{path}: {msg}")]
    Format { path: String, msg: String },
}

/// Everything a run produces. Apart from `stats.wall_ms` the content is a
/// deterministic function of the configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunOutput {
    pub schema: u32,
    pub config: RunConfig,
    pub cis: BoxUnion,
    pub controller: ControllerTable,
    pub excluded: Vec<IntervalBox>,
    pub indeterminate: Vec<IntervalBox>,
    pub stats: RunStats,
}

pub fn run(config: &RunConfig) -> Result<RunOutput, RunError> {
    config.validate()?;
    let model = config.model()?;
    let params = Params {
        epsilon: config.run.epsilon,
        margin_r: config.run.margin_r,
        threads: config.run.threads,
    };
    let omega = model.omega0();
    let result = match config.run.algorithm {
        Algorithm::Fixpoint => fixpoint(omega, &model, &params)?,
        Algorithm::Accelerated => accelerated(omega, &model, &params)?,
        Algorithm::Baseline => {
            let n_u = config.run.n_u.expect("validated: baseline has n_u");
            baseline_sampled(omega, &model, &params, n_u, config.run.input_grid)?
        }
    };
    Ok(RunOutput {
        schema: SCHEMA,
        config: config.clone(),
        cis: result.cis,
        controller: result.controller,
        excluded: result.excluded,
        indeterminate: result.indeterminate,
        stats: result.stats,
    })
}

impl RunOutput {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output serializes to JSON")
    }

    pub fn from_json(s: &str) -> Result<Self, RunError> {
        let out: RunOutput = serde_json::from_str(s).map_err(|e| RunError::Format {
            path: "<json>".into(),
            msg: e.to_string(),
        })?;
        if out.schema != SCHEMA {
            return Err(RunError::Format {
                path: "schema".into(),
                msg: format!("unsupported schema {} (expected {SCHEMA})", out.schema),
            });
        }
        out.config.validate()?;
        Ok(out)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<(), RunError> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json() + "\n").map_err(|e| RunError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self, RunError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| RunError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Self::from_json(&text).map_err(|e| match e {
            RunError::Format { msg, .. } => RunError::Format {
                path: path.display().to_string(),
                msg,
            },
            other => other,
        })
    }

    /// Closed-loop check of the stored controller on the stored system.
    pub fn verify(&self, trials: usize, horizon: usize, seed: u64) -> Result<VerifyReport, RunError> {
        let model = self.config.model()?;
        Ok(verify_invariance(
            &self.cis,
            &self.controller,
            &model,
            trials,
            horizon,
            seed,
        )?)
    }

    pub fn method_label(&self) -> String {
        match self.config.run.algorithm {
            Algorithm::Baseline => format!("baseline (n_u = {})", self.config.run.n_u.unwrap_or_default()),
            a => a.name().to_string(),
        }
    }
}

fn format_epsilon(e: f64) -> String {
    let exp = e.log10().round();
    if (10f64.powf(exp) - e).abs() <= 1e-12 * e {
        format!("1e{}", exp as i32)
    } else {
        format!("{e}")
    }
}

/// Aligned text table with one row per output.
pub fn summarize(outputs: &[RunOutput]) -> String {
    let header = ["Method", "ε", "Iterations", "Time (s)", "Volume"];
    let rows: Vec<[String; 5]> = outputs
        .iter()
        .map(|o| {
            [
                o.method_label(),
                format_epsilon(o.config.run.epsilon),
                o.stats.pops.to_string(),
                format!("{:.2}", o.stats.wall_ms as f64 / 1000.0),
                format!("{:.1}%", 100.0 * o.stats.volume_fraction),
            ]
        })
        .collect();
    let width = |i: usize| {
        rows.iter()
            .map(|r| r[i].chars().count())
            .chain(std::iter::once(header[i].chars().count()))
            .max()
            .unwrap_or(0)
    };
    let widths: Vec<usize> = (0..5).map(width).collect();
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let pad = widths[i] - c.chars().count();
                if i == 0 {
                    format!("{c}{}", " ".repeat(pad))
                } else {
                    format!("{}{c}", " ".repeat(pad))
                }
            })
            .collect::<Vec<_>>()
            .join(" | ")
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    out.push_str(
        &widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .join("-|-"),
    );
    out.push('\n');
    for r in &rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SHIFT: &str = r#"
[system]
f0 = ["x1"]
g = [["1"]]
u_lo = [-1.0]
u_hi = [1.0]

[omega]
boxes = [{ lo = [-1.0], hi = [1.0] }]

[run]
epsilon = 1e-3
algorithm = "fixpoint"
"#;

    #[test]
    fn stable_shift_keeps_region() {
        let out = run(&RunConfig::from_toml_str(SHIFT).unwrap()).unwrap();
        assert_eq!(out.cis.boxes(), out.config.omega.boxes.as_slice());
        assert_eq!(out.stats.volume_fraction, 1.0);
        let rep = out.verify(20, 20, 1).unwrap();
        assert_eq!(rep.passed, 20);
    }

    #[test]
    fn json_round_trip_and_shape() {
        let out = run(&RunConfig::from_toml_str(SHIFT).unwrap()).unwrap();
        let json = out.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["cis"][0]["lo"][0], -1.0);
        assert!(v["controller"][0]["box"]["hi"].is_array());
        let poly = &v["controller"][0]["inputs"][0];
        assert!(poly["H"].is_array() && poly["b"].is_array() && poly["V"].is_array());
        for key in ["pops", "sweeps", "wall_ms", "volume_fraction", "rho", "r"] {
            assert!(v["stats"].get(key).is_some(), "{key}");
        }
        let back = RunOutput::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn schema_is_checked() {
        let out = run(&RunConfig::from_toml_str(SHIFT).unwrap()).unwrap();
        let json = out.to_json().replacen("\"schema\": 1", "\"schema\": 2", 1);
        assert!(RunOutput::from_json(&json).is_err());
    }

    #[test]
    fn summary_table() {
        let mut out = run(&RunConfig::from_toml_str(SHIFT).unwrap()).unwrap();
        out.stats.volume_fraction = 0.0;
        let mut base = out.clone();
        base.config.run.algorithm = Algorithm::Baseline;
        base.config.run.n_u = Some(10);
        let t = summarize(&[out, base]);
        let lines: Vec<&str> = t.lines().collect();
        assert!(lines[0].starts_with("Method"));
        assert!(lines[0].contains("| ε |") || lines[0].contains("ε"));
        assert!(lines[2].contains("1e-3") && lines[2].ends_with("0.0%"));
        assert!(lines[3].starts_with("baseline (n_u = 10)"));
        let widths: Vec<usize> = lines.iter().map(|l| l.chars().count()).collect();
        assert!(widths.windows(2).all(|w| w[0] == w[1]));
    }
}
