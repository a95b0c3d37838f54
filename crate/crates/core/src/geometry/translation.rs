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

//! Translation sets between polytopes and intersection tests.
//!
//! For polytopes `P` and `Q`:
//!
//! * the insertion set `I(P, Q) = {r : P + r ⊆ Q}` is
//!   `{r : H_Q r <= b_Q − β}` with `β_i = max_{v ∈ V_P} (H_Q)_i v`;
//! * the overlap set `O(P, Q) = {s : (P + s) ∩ Q ≠ ∅}` is described by the
//!   stacked rows `[H_Q; −H_P] s <= [b_Q − α; b_P − γ]` with
//!   `α_i = min_{v ∈ V_P} (H_Q)_i v` and `γ_i = min_{v ∈ V_Q} (H_P)_i v`.
//!
//! The overlap formula rests on the criterion "P meets every halfspace of Q
//! and Q meets every halfspace of P", which characterizes intersection for
//! polytopes in one and two dimensions. In three dimensions two polytopes
//! can also be separated by a plane spanned by one edge of each, so the
//! stacked rows describe a superset of `O(P, Q)` there.

use super::hull::dot;
use super::polytope::{Halfspace, Polytope};
use super::TOL;

/// All translations `r` with `p + r ⊆ q`. Empty when `p` does not fit.
pub fn insertion_set(p: &Polytope, q: &Polytope) -> Polytope {
    assert_eq!(p.dim(), q.dim(), "dimension mismatch");
    if p.is_empty() || q.is_empty() {
        return Polytope::empty(p.dim());
    }
    let rows: Vec<_> = q.rows().map(|(h, b)| (h.clone(), b - p.support_max(h))).collect();
    Polytope::from_rows_bounded(p.dim(), &rows)
}

/// Halfspace rows of the overlap set before vertex enumeration.
pub(crate) fn overlap_rows(p: &Polytope, q: &Polytope) -> Vec<(Vec<f64>, f64)> {
    let mut rows: Vec<_> = q.rows().map(|(h, b)| (h.clone(), b - p.support_min(h))).collect();
    rows.extend(
        p.rows()
            .map(|(h, b)| (h.iter().map(|x| -x).collect(), b - q.support_min(h))),
    );
    rows
}

/// All translations `s` with `(p + s) ∩ q ≠ ∅`.
pub fn overlap_set(p: &Polytope, q: &Polytope) -> Polytope {
    assert_eq!(p.dim(), q.dim(), "dimension mismatch");
    if p.is_empty() || q.is_empty() {
        return Polytope::empty(p.dim());
    }
    Polytope::from_rows_bounded(p.dim(), &overlap_rows(p, q))
}

/// Translations of `p` that meet the halfspace: `{s : h·s <= b − min_v h·v}`.
pub fn overlap_halfspace(p: &Polytope, hs: &Halfspace) -> Halfspace {
    Halfspace {
        h: hs.h.clone(),
        b: hs.b - p.support_min(&hs.h),
    }
}

/// Closed-set intersection test by feasibility of the stacked constraints.
pub fn intersects(p: &Polytope, q: &Polytope) -> bool {
    if p.is_empty() || q.is_empty() {
        return false;
    }
    // Cheap separating test on the bounding boxes first.
    if let (Some(a), Some(b)) = (p.bounding_box(), q.bounding_box()) {
        if !a.inflate(TOL).intersects(&b).unwrap_or(false) {
            return false;
        }
    }
    !p.intersection(q).is_empty()
}

/// Intersection test through the halfspace criterion: every halfspace of
/// `q` meets `p` and every halfspace of `p` meets `q`. Exact in one and two
/// dimensions.
pub fn intersects_by_halfspaces(p: &Polytope, q: &Polytope) -> bool {
    if p.is_empty() || q.is_empty() {
        return false;
    }
    q.rows().all(|(h, b)| p.support_min(h) <= b + TOL) && p.rows().all(|(h, b)| q.support_min(h) <= b + TOL)
}

/// True if every vertex of `p` satisfies the constraints of `q` within `tol`.
pub fn contains(q: &Polytope, p: &Polytope, tol: f64) -> bool {
    p.vertices()
        .iter()
        .all(|v| q.rows().all(|(h, b)| dot(h, v) <= b + tol))
}
