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

//! Sampled-input baseline: inputs are a finite grid and each box is tested
//! with interval images only.

use serde::{Deserialize, Serialize};

use super::feasible::Target;
use super::refine::fixpoint_with;
use super::{AlgorithmError, Classification, Params, Synthesis};
use crate::dynamics::SystemModel;
use crate::geometry::{PolyUnion, Polytope};
use crate::interval::{BoxUnion, IntervalBox};

/// Placement of the samples along each input axis, for `k` samples on an
/// interval of width `w` starting at `lo`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputGrid {
    /// `lo + j·w/k` for `j = 0..k`: lower corners of `k` equal cells.
    #[default]
    Lower,
    /// `lo + (j + 1/2)·w/k`: centres of `k` equal cells.
    Midpoints,
    /// `lo + j·w/(k−1)`: both ends included (the centre when `k = 1`).
    Endpoints,
}

/// Uniform grid of about `n_u` points over `u`. With one input the grid
/// has exactly `n_u` points; with `m` inputs each axis gets
/// `ceil(n_u^(1/m))` points.
pub fn input_grid(u: &IntervalBox, n_u: usize, placement: InputGrid) -> Vec<Vec<f64>> {
    assert!(n_u >= 1, "n_u must be at least 1");
    let m = u.dim();
    let k = if m == 1 {
        n_u
    } else {
        (n_u as f64).powf(1.0 / m as f64).ceil() as usize
    };
    let axes: Vec<Vec<f64>> = u
        .intervals()
        .iter()
        .map(|iv| {
            let (lo, w) = (iv.lo(), iv.width());
            (0..k)
                .map(|j| match placement {
                    InputGrid::Lower => lo + w * j as f64 / k as f64,
                    InputGrid::Midpoints => lo + w * (j as f64 + 0.5) / k as f64,
                    InputGrid::Endpoints if k == 1 => iv.mid(),
                    InputGrid::Endpoints => lo + w * j as f64 / (k - 1) as f64,
                })
                .collect()
        })
        .collect();
    let mut out = vec![Vec::with_capacity(m)];
    for axis in &axes {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// True if the union of `cover` contains `b`.
fn covered(b: &IntervalBox, cover: &[IntervalBox]) -> bool {
    if cover.iter().any(|c| b.is_subset_of(c)) {
        return true;
    }
    if b.volume() == 0.0 {
        return false;
    }
    let mut rest = vec![b.clone()];
    for c in cover {
        rest = rest.into_iter().flat_map(|r| r.subtract(c)).collect();
        if rest.is_empty() {
            return true;
        }
    }
    false
}

fn classify_sampled(
    bx: &IntervalBox,
    target: &Target,
    model: &SystemModel,
    grid: &[Vec<f64>],
    epsilon: f64,
) -> Result<Classification, AlgorithmError> {
    let enc = model.enclosure(bx)?;
    let mut hit = false;
    for u in grid {
        let img = enc.image(u);
        let near: Vec<IntervalBox> = target
            .boxes
            .iter()
            .filter(|b| b.intersects(&img).unwrap_or(false))
            .cloned()
            .collect();
        if near.is_empty() {
            continue;
        }
        hit = true;
        if covered(&img, &near) {
            let point = Polytope::from_points(u.len(), std::slice::from_ref(u));
            return Ok(Classification::Inside(PolyUnion::new(vec![point])));
        }
    }
    if !hit {
        return Ok(Classification::Disjoint);
    }
    if bx.width() <= epsilon {
        return Ok(Classification::Indeterminate);
    }
    let (l, r) = bx.bisect()?;
    Ok(Classification::Split(l, r))
}

/// Fixpoint refinement where a box is accepted if the interval image under
/// some grid input lies in the region. The controller stores that input.
pub fn baseline_sampled(
    omega: &BoxUnion,
    model: &SystemModel,
    params: &Params,
    n_u: usize,
    placement: InputGrid,
) -> Result<Synthesis, AlgorithmError> {
    if n_u == 0 {
        return Err(AlgorithmError::Invalid("n_u must be at least 1".into()));
    }
    let grid = input_grid(model.input_box(), n_u, placement);
    let eps = params.epsilon;
    let classify = move |bx: &IntervalBox, t: &Target| classify_sampled(bx, t, model, &grid, eps);
    fixpoint_with(omega, model, params, &classify, None)
}
