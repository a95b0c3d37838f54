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

//! Set differences of polytopes and finite polytope unions.

use serde::{Deserialize, Serialize};

use super::hull::{dot, AffineFrame, Point};
use super::polytope::{normalize_rows, Halfspace, Polytope};
use super::TOL;

/// A finite union of polytopes of the same ambient dimension.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyUnion {
    parts: Vec<Polytope>,
}

impl PolyUnion {
    pub fn new(parts: Vec<Polytope>) -> Self {
        if let Some(first) = parts.first() {
            assert!(
                parts.iter().all(|p| p.dim() == first.dim()),
                "mixed dimensions in polytope union"
            );
        }
        Self {
            parts: parts.into_iter().filter(|p| !p.is_empty()).collect(),
        }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    #[inline]
    pub fn parts(&self) -> &[Polytope] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Polytope> {
        self.parts
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn contains_point(&self, p: &[f64], tol: f64) -> bool {
        self.parts.iter().any(|q| q.contains_point(p, tol))
    }

    /// Measure of the union, counting overlaps once.
    pub fn volume(&self) -> f64 {
        let mut total = 0.0;
        for (i, p) in self.parts.iter().enumerate() {
            total += set_difference(p, &self.parts[..i])
                .parts()
                .iter()
                .map(Polytope::volume)
                .sum::<f64>();
        }
        total
    }
}

/// `closure(p \ ∪ qs)` as interior-disjoint polytopes.
///
/// Recursive facet splitting: for the first subtrahend that overlaps `p`,
/// peel off the part of `p` beyond each of its facets, recurse on those
/// pieces with the remaining subtrahends, and drop what is left inside.
/// Pieces thinner than the geometric tolerance are discarded. Contact along
/// a boundary does not remove anything.
pub fn set_difference(p: &Polytope, qs: &[Polytope]) -> PolyUnion {
    if p.is_empty() {
        return PolyUnion::empty();
    }
    match p.affine_dim() {
        Some(k) if k == p.dim() => {
            let relevant: Vec<&Polytope> = qs.iter().filter(|q| q.is_full_dim()).collect();
            let mut out = Vec::new();
            peel(p, &relevant, &mut out);
            PolyUnion { parts: out }
        }
        _ => difference_in_affine_hull(p, qs),
    }
}

fn overlaps_interior(p: &Polytope, q: &Polytope) -> bool {
    match (p.bounding_box(), q.bounding_box()) {
        (Some(a), Some(b)) if !a.overlaps_interior(&b) => false,
        _ => p.intersection(q).is_full_dim(),
    }
}

fn peel(p: &Polytope, qs: &[&Polytope], out: &mut Vec<Polytope>) {
    let Some(pos) = qs.iter().position(|q| overlaps_interior(p, q)) else {
        out.push(p.clone());
        return;
    };
    let q = qs[pos];
    let rest = &qs[pos + 1..];
    let mut inside = p.clone();
    for (h, b) in q.rows() {
        if inside.support_max(h) <= b + TOL {
            continue;
        }
        let beyond = inside.clip(&Halfspace {
            h: h.iter().map(|x| -x).collect(),
            b: -b,
        });
        if beyond.is_full_dim() {
            peel(&beyond, rest, out);
        }
        inside = inside.clip(&Halfspace { h: h.clone(), b });
        if !inside.is_full_dim() {
            break;
        }
    }
}

/// Difference for a lower-dimensional minuend, computed in coordinates of
/// its affine hull so that subtrahends are judged by their relative
/// interior there.
fn difference_in_affine_hull(p: &Polytope, qs: &[Polytope]) -> PolyUnion {
    let frame = AffineFrame::of(p.vertices());
    let k = frame.dim();
    if k == 0 {
        let x = &p.vertices()[0];
        let removed = qs
            .iter()
            .any(|q| !q.is_empty() && q.rows().all(|(h, b)| dot(h, x) < b - TOL));
        return if removed {
            PolyUnion::empty()
        } else {
            PolyUnion {
                parts: vec![p.clone()],
            }
        };
    }
    let local_p = Polytope::from_points(
        k,
        &p.vertices().iter().map(|v| frame.coords(v)).collect::<Vec<_>>(),
    );
    let mut local_qs = Vec::new();
    'q: for q in qs.iter().filter(|q| !q.is_empty()) {
        let mut h_rows = Vec::new();
        let mut b_rows = Vec::new();
        for (h, b) in q.rows() {
            let a: Point = frame.basis.iter().map(|e| dot(h, e)).collect();
            let c = b - dot(h, &frame.origin);
            if a.iter().map(|x| x * x).sum::<f64>().sqrt() <= 1e-12 {
                if c > TOL {
                    continue;
                }
                // The affine hull lies on or outside this facet.
                continue 'q;
            }
            h_rows.push(a);
            b_rows.push(c);
        }
        if h_rows.is_empty() {
            continue;
        }
        let Ok(rows) = normalize_rows(&h_rows, &b_rows) else {
            continue;
        };
        local_qs.push(Polytope::from_rows_bounded(k, &rows));
    }
    let local = set_difference(&local_p, &local_qs);
    PolyUnion {
        parts: local
            .parts
            .iter()
            .map(|piece| {
                let pts: Vec<Point> = piece.vertices().iter().map(|y| frame.lift(y)).collect();
                Polytope::from_points(p.dim(), &pts)
            })
            .collect(),
    }
}
