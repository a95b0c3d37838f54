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

//! Closed-loop simulation of a synthesized controller.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{AlgorithmError, ControllerTable};
use crate::dynamics::SystemModel;
use crate::interval::BoxUnion;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    /// Smallest ∞-distance of any visited state to the complement of the
    /// set; negative if a state left it.
    pub worst_margin: f64,
}

/// Samples `trials` initial states uniformly in `cis`, and runs each for
/// `horizon` steps with the input taken from the controller entry covering
/// the current state (the centroid of its first input polytope). A trial
/// fails if a state leaves `cis` or is not covered by the table.
pub fn verify_invariance(
    cis: &BoxUnion,
    table: &ControllerTable,
    model: &SystemModel,
    trials: usize,
    horizon: usize,
    seed: u64,
) -> Result<VerifyReport, AlgorithmError> {
    let mut report = VerifyReport {
        trials: 0,
        passed: 0,
        failed: 0,
        worst_margin: f64::INFINITY,
    };
    let boxes = cis.boxes();
    let weights: Vec<f64> = boxes.iter().map(|b| b.volume()).collect();
    let Ok(pick) = WeightedIndex::new(&weights) else {
        return Ok(report);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let b = &boxes[pick.sample(&mut rng)];
        let mut x: Vec<f64> = b
            .intervals()
            .iter()
            .map(|iv| rng.gen_range(iv.lo()..=iv.hi()))
            .collect();
        report.trials += 1;
        let mut ok = true;
        for _ in 0..horizon {
            let Some(entry) = table.lookup(&x) else {
                ok = false;
                break;
            };
            let Some(u) = entry.inputs.parts().first().and_then(|p| p.centroid()) else {
                ok = false;
                break;
            };
            x = model.step(&x, &u)?;
            let depth = cis.depth(&x);
            report.worst_margin = report.worst_margin.min(depth);
            if !cis.contains_point(&x) {
                ok = false;
                break;
            }
        }
        if ok {
            report.passed += 1;
        } else {
            report.failed += 1;
        }
    }
    Ok(report)
}
