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

//! Refinement algorithms for controlled invariant sets.
//!
//! * [`under_i`] refines a region once: every box is classified as
//!   disjoint from the region's pre-set, inside it (with the inputs that
//!   certify this), indeterminate at the precision limit, or bisected.
//! * [`fixpoint`] repeats [`under_i`] until the region stops changing.
//! * [`accelerated`] shrinks the region in place as soon as a box is
//!   rejected and re-verifies accepted boxes until all are checked against
//!   the current region.
//! * [`baseline_sampled`] replaces the polytope test by pure interval
//!   images under a finite grid of inputs.

mod baseline;
mod feasible;
mod oracle;
mod refine;
mod verify;

use serde::{Deserialize, Serialize};

use crate::dynamics::DynamicsError;
use crate::geometry::PolyUnion;
use crate::interval::{BoxError, BoxUnion, IntervalBox};

pub use baseline::{baseline_sampled, input_grid, InputGrid};
pub use feasible::{classify, feasible_inputs};
pub use oracle::{brute_force_cis, GridRegion};
pub use refine::{accelerated, fixpoint, under_i};
pub use verify::{verify_invariance, VerifyReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgorithmError {
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Box(#[from] BoxError),
    #[error("{0}")]
    Invalid(String),
}

/// Outcome of testing one box against the current region.
#[derive(Debug, Clone)]
pub enum Classification {
    /// The over-approximated reachable set misses the region.
    Disjoint,
    /// Every input in the set keeps the box inside the region.
    Inside(PolyUnion),
    /// Neither test succeeded and the box is at the precision limit.
    Indeterminate,
    Split(IntervalBox, IntervalBox),
}

/// Tuning shared by all algorithms.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub epsilon: f64,
    /// Extra robustness: successors must land this deep (∞-distance)
    /// inside the region.
    pub margin_r: f64,
    /// Worker threads for classification within a sweep (1 = sequential).
    pub threads: usize,
}

impl Params {
    pub fn new(epsilon: f64) -> Self {
        Self {
            epsilon,
            margin_r: 0.0,
            threads: 1,
        }
    }

    fn validate(&self) -> Result<(), AlgorithmError> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(AlgorithmError::Invalid("epsilon must be positive".into()));
        }
        if !(self.margin_r >= 0.0 && self.margin_r.is_finite()) {
            return Err(AlgorithmError::Invalid("margin_r must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ControllerEntry {
    #[serde(rename = "box")]
    pub bx: IntervalBox,
    pub inputs: PolyUnion,
}

/// Certified boxes with the inputs that keep them in the set.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ControllerTable {
    pub entries: Vec<ControllerEntry>,
}

impl ControllerTable {
    /// First entry whose box contains `x`.
    pub fn lookup(&self, x: &[f64]) -> Option<&ControllerEntry> {
        self.entries
            .iter()
            .find(|e| e.bx.contains_point(x).unwrap_or(false))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    /// Boxes dequeued and classified.
    pub pops: u64,
    pub sweeps: u64,
    pub wall_ms: u64,
    pub volume_fraction: f64,
    pub rho: f64,
    pub r: f64,
}

/// Result of a run: the set, its controller and the rejected boxes.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub cis: BoxUnion,
    pub controller: ControllerTable,
    pub excluded: Vec<IntervalBox>,
    pub indeterminate: Vec<IntervalBox>,
    pub stats: RunStats,
}
