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

//! Inputs that translate the reachable set into a union of boxes.
//!
//! With `P̄_u = P̄0 + Su`, the question "which `u` keep `P̄_u` inside `Ω`"
//! is a translation problem. Clip `Ω` to `P̄`, take the convex hull `𝒫`
//! of the clipped pieces and the gaps `𝒬 = 𝒫 \ pieces`. A translation `s`
//! works iff `P̄0 + s ⊆ 𝒫` and `P̄0 + s` does not overlap the interior of
//! any gap. Both conditions are linear in `s`, and substituting `s = Su`
//! pulls them back to constraints on `u`, which are intersected with `U`.
//! Working in input coordinates avoids a pseudo-inverse and handles
//! `rank(S) < n` exactly.

use nalgebra::DMatrix;

use super::{AlgorithmError, Classification};
use crate::dynamics::{decompose, reach_p0, AffineDecomposition, SystemModel};
use crate::geometry::{intersects, normalize_rows, overlap_rows, set_difference, PolyUnion, Polytope, TOL};
use crate::interval::{BoxUnion, IntervalBox};

/// Region being refined, with each box prepared as a polytope.
pub(crate) struct Target {
    pub(crate) boxes: Vec<IntervalBox>,
    polys: Vec<Polytope>,
}

impl Target {
    pub(crate) fn new(omega: &BoxUnion) -> Self {
        Self {
            boxes: omega.boxes().to_vec(),
            polys: omega.boxes().iter().map(Polytope::from_box).collect(),
        }
    }

    /// Members whose closed box meets `bb`.
    fn near<'a>(&'a self, bb: &'a IntervalBox) -> impl Iterator<Item = &'a Polytope> + 'a {
        self.boxes
            .iter()
            .zip(&self.polys)
            .filter(move |(b, _)| b.inflate(TOL).intersects(bb).unwrap_or(false))
            .map(|(_, p)| p)
    }
}

enum Degenerate {
    /// A row independent of `u` must hold for every input.
    Require,
    /// A row independent of `u` that holds at most with equality means the
    /// whole set is reached only on its boundary.
    Touch,
}

/// `{u ∈ U : h·(S u) <= c for each row}`, or `None` if empty.
fn pull_back(
    rows: impl IntoIterator<Item = (Vec<f64>, f64)>,
    s: &DMatrix<f64>,
    u_rows: &[(Vec<f64>, f64)],
    mode: Degenerate,
) -> Option<Polytope> {
    let m = s.ncols();
    let mut hs = Vec::new();
    let mut cs = Vec::new();
    for (h, c) in rows {
        let a: Vec<f64> = (0..m)
            .map(|j| (0..s.nrows()).map(|i| s[(i, j)] * h[i]).sum())
            .collect();
        if a.iter().map(|x| x * x).sum::<f64>().sqrt() <= 1e-12 {
            match mode {
                Degenerate::Require if c < -TOL => return None,
                Degenerate::Touch if c <= TOL => return None,
                _ => continue,
            }
        }
        hs.push(a);
        cs.push(c);
    }
    let mut all = normalize_rows(&hs, &cs).ok()?;
    all.extend_from_slice(u_rows);
    let p = Polytope::from_rows_bounded(m, &all);
    (!p.is_empty()).then_some(p)
}

pub(crate) fn feasible_from_parts(
    p0: &Polytope,
    pbar: &Polytope,
    target: &Target,
    s: &DMatrix<f64>,
    u: &IntervalBox,
) -> PolyUnion {
    let n = p0.dim();
    let Some(bb) = pbar.bounding_box() else {
        return PolyUnion::empty();
    };
    let want = pbar.affine_dim();
    let pieces: Vec<Polytope> = target
        .near(&bb)
        .map(|w| w.intersection(pbar))
        .filter(|c| !c.is_empty() && c.affine_dim() == want)
        .collect();
    if pieces.is_empty() {
        return PolyUnion::empty();
    }
    let pts: Vec<Vec<f64>> = pieces.iter().flat_map(|p| p.vertices().to_vec()).collect();
    let hull = Polytope::from_points(n, &pts);
    let u_rows: Vec<(Vec<f64>, f64)> = Polytope::from_box(u)
        .rows()
        .map(|(h, b)| (h.clone(), b))
        .collect();

    let insertion = hull.rows().map(|(h, b)| (h.clone(), b - p0.support_max(h)));
    let Some(base) = pull_back(insertion, s, &u_rows, Degenerate::Require) else {
        return PolyUnion::empty();
    };
    let gaps = set_difference(&hull, &pieces);
    let overlaps: Vec<Polytope> = gaps
        .parts()
        .iter()
        .filter_map(|q| pull_back(overlap_rows(p0, q), s, &u_rows, Degenerate::Touch))
        .collect();
    set_difference(&base, &overlaps)
}

/// All inputs `u ∈ U` with `P̄_u([x]) ⊆ Ω`, as a union of polytopes in
/// input space. Empty if there are none.
pub fn feasible_inputs(omega: &BoxUnion, dec: &AffineDecomposition, u: &IntervalBox) -> PolyUnion {
    let p0 = reach_p0(dec, u);
    let pbar = p0.minkowski_sum(&Polytope::from_box(u).linear_image(&dec.s));
    feasible_from_parts(&p0, &pbar, &Target::new(omega), &dec.s, u)
}

pub(crate) fn classify_in(
    bx: &IntervalBox,
    target: &Target,
    model: &SystemModel,
    epsilon: f64,
) -> Result<Classification, AlgorithmError> {
    let u = model.input_box();
    let dec = decompose(model, bx)?;
    let p0 = reach_p0(&dec, u);
    let pbar = p0.minkowski_sum(&Polytope::from_box(u).linear_image(&dec.s));
    let hit = match pbar.bounding_box() {
        Some(bb) => target.near(&bb).any(|w| intersects(&pbar, w)),
        None => false,
    };
    if !hit {
        return Ok(Classification::Disjoint);
    }
    let inputs = feasible_from_parts(&p0, &pbar, target, &dec.s, u);
    if !inputs.is_empty() {
        return Ok(Classification::Inside(inputs));
    }
    if bx.width() <= epsilon {
        return Ok(Classification::Indeterminate);
    }
    let (l, r) = bx.bisect()?;
    Ok(Classification::Split(l, r))
}

/// Classifies `[x]` against `omega`: disjoint, inside, indeterminate or
/// split, tested in that order.
pub fn classify(
    bx: &IntervalBox,
    omega: &BoxUnion,
    model: &SystemModel,
    epsilon: f64,
) -> Result<Classification, AlgorithmError> {
    classify_in(bx, &Target::new(omega), model, epsilon)
}
