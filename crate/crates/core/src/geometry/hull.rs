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

//! Convex hulls of small point sets (ambient dimension at most 3).
//!
//! Points are first expressed in an orthonormal frame of their affine hull,
//! so segments in the plane or polygons in space are handled the same way
//! as full-dimensional sets. The hull's halfspaces are lifted back to the
//! ambient space together with equality constraints (as opposing
//! inequality pairs) for directions orthogonal to the affine hull.

use super::TOL;

pub(crate) type Point = Vec<f64>;

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn sub(a: &[f64], b: &[f64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[inline]
pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Orthonormal frame `origin + span(basis)` of a point set's affine hull.
#[derive(Debug, Clone)]
pub(crate) struct AffineFrame {
    pub origin: Point,
    pub basis: Vec<Point>,
}

impl AffineFrame {
    /// Greedy frame: repeatedly add the direction of the point farthest from
    /// the current subspace until every point lies within `TOL` of it.
    pub fn of(points: &[Point]) -> AffineFrame {
        let n = points[0].len();
        let origin = points[0].clone();
        let mut basis: Vec<Point> = Vec::new();
        while basis.len() < n {
            let mut best: Option<(f64, Point)> = None;
            for p in points {
                let mut r = sub(p, &origin);
                for e in &basis {
                    let c = dot(&r, e);
                    r.iter_mut().zip(e).for_each(|(x, y)| *x -= c * y);
                }
                let len = norm(&r);
                if best.as_ref().is_none_or(|(l, _)| len > *l) {
                    best = Some((len, r));
                }
            }
            match best {
                Some((len, r)) if len > TOL => {
                    // Re-orthogonalize once for numerical hygiene.
                    let mut v: Point = r.iter().map(|x| x / len).collect();
                    for e in &basis {
                        let c = dot(&v, e);
                        v.iter_mut().zip(e).for_each(|(x, y)| *x -= c * y);
                    }
                    let l = norm(&v);
                    basis.push(v.iter().map(|x| x / l).collect());
                }
                _ => break,
            }
        }
        AffineFrame { origin, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.origin.len()
    }

    pub fn coords(&self, p: &[f64]) -> Point {
        let d = sub(p, &self.origin);
        self.basis.iter().map(|e| dot(&d, e)).collect()
    }

    pub fn lift(&self, y: &[f64]) -> Point {
        let mut p = self.origin.clone();
        for (e, &c) in self.basis.iter().zip(y) {
            p.iter_mut().zip(e).for_each(|(x, v)| *x += c * v);
        }
        p
    }

    /// Lifts a direction expressed in frame coordinates.
    pub fn lift_direction(&self, a: &[f64]) -> Point {
        let mut v = vec![0.0; self.ambient()];
        for (e, &c) in self.basis.iter().zip(a) {
            v.iter_mut().zip(e).for_each(|(x, y)| *x += c * y);
        }
        v
    }

    /// Orthonormal completion of the basis to the ambient space.
    pub fn complement(&self) -> Vec<Point> {
        let n = self.ambient();
        let mut all = self.basis.clone();
        let mut extra = Vec::new();
        for i in 0..n {
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            for e in &all {
                let c = dot(&v, e);
                v.iter_mut().zip(e).for_each(|(x, y)| *x -= c * y);
            }
            let l = norm(&v);
            if l > 1e-6 {
                let v: Point = v.iter().map(|x| x / l).collect();
                all.push(v.clone());
                extra.push(v);
            }
            if all.len() == n {
                break;
            }
        }
        extra
    }
}

/// Hull of a finite point set.
#[derive(Debug, Clone)]
pub(crate) struct Hull {
    /// Indices into the input of the hull vertices. In a 2-D affine hull the
    /// order is counter-clockwise in frame coordinates.
    pub vertices: Vec<usize>,
    /// Halfspaces `h·x <= b` with unit-norm `h`, including equality pairs.
    pub halfspaces: Vec<(Point, f64)>,
    pub affine_dim: usize,
}

pub(crate) fn dedup_points(points: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if !out
            .iter()
            .any(|q| q.iter().zip(p).all(|(a, b)| (a - b).abs() <= TOL))
        {
            out.push(p.clone());
        }
    }
    out
}

/// Convex hull of `points` (non-empty, already de-duplicated).
pub(crate) fn hull(points: &[Point]) -> Hull {
    let frame = AffineFrame::of(points);
    let local: Vec<Point> = points.iter().map(|p| frame.coords(p)).collect();
    let (vertices, facets) = match frame.dim() {
        0 => (vec![0], Vec::new()),
        1 => hull_1d(&local),
        2 => hull_2d(&local),
        3 => hull_3d(&local),
        k => panic!("hulls are supported up to dimension 3, got {k}"),
    };
    let mut halfspaces: Vec<(Point, f64)> = facets
        .into_iter()
        .map(|(a, c)| {
            let h = frame.lift_direction(&a);
            let b = c + dot(&h, &frame.origin);
            (h, b)
        })
        .collect();
    for e in frame.complement() {
        let c = dot(&e, &frame.origin);
        halfspaces.push((e.iter().map(|x| -x).collect(), -c));
        halfspaces.push((e, c));
    }
    Hull {
        vertices,
        halfspaces,
        affine_dim: frame.dim(),
    }
}

type Facets = Vec<(Point, f64)>;

fn hull_1d(pts: &[Point]) -> (Vec<usize>, Facets) {
    let (mut lo, mut hi) = (0, 0);
    for (i, p) in pts.iter().enumerate() {
        if p[0] < pts[lo][0] {
            lo = i;
        }
        if p[0] > pts[hi][0] {
            hi = i;
        }
    }
    (
        vec![lo, hi],
        vec![(vec![-1.0], -pts[lo][0]), (vec![1.0], pts[hi][0])],
    )
}

fn cross(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; drops vertices within `TOL` of the chord.
fn hull_2d(pts: &[Point]) -> (Vec<usize>, Facets) {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| {
        pts[i][0]
            .total_cmp(&pts[j][0])
            .then(pts[i][1].total_cmp(&pts[j][1]))
    });
    let keeps_turning = |chain: &[usize], next: usize| {
        let (o, a) = (&pts[chain[chain.len() - 2]], &pts[chain[chain.len() - 1]]);
        let b = &pts[next];
        let span = norm(&sub(b, o));
        cross(o, a, b) > TOL * span
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && !keeps_turning(&lower, i) {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && !keeps_turning(&upper, i) {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let ring = lower;
    let facets = (0..ring.len())
        .map(|k| {
            let a = &pts[ring[k]];
            let b = &pts[ring[(k + 1) % ring.len()]];
            let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
            let l = (dx * dx + dy * dy).sqrt();
            // Outward normal of a counter-clockwise edge.
            let nrm = vec![dy / l, -dx / l];
            let off = dot(&nrm, a).max(dot(&nrm, b));
            (nrm, off)
        })
        .collect();
    (ring, facets)
}

fn cross3(a: &[f64], b: &[f64]) -> Point {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Brute-force facet search; fine for the few dozen points met here.
fn hull_3d(pts: &[Point]) -> (Vec<usize>, Facets) {
    let n = pts.len();
    let mut facets: Facets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let u = sub(&pts[j], &pts[i]);
                let v = sub(&pts[k], &pts[i]);
                let c = cross3(&u, &v);
                let l = norm(&c);
                if l <= 1e-12 * norm(&u) * norm(&v) || l == 0.0 {
                    continue;
                }
                let mut nrm: Point = c.iter().map(|x| x / l).collect();
                let mut off = dot(&nrm, &pts[i]);
                let (mut above, mut below) = (false, false);
                for p in pts {
                    let s = dot(&nrm, p) - off;
                    above |= s > TOL;
                    below |= s < -TOL;
                }
                if above && below {
                    continue;
                }
                if above {
                    nrm.iter_mut().for_each(|x| *x = -*x);
                    off = -off;
                }
                let off = pts.iter().map(|p| dot(&nrm, p)).fold(off, f64::max);
                let dup = facets.iter().any(|(m, o)| {
                    (o - off).abs() <= TOL && m.iter().zip(&nrm).all(|(a, b)| (a - b).abs() <= 1e-9)
                });
                if !dup {
                    facets.push((nrm, off));
                }
            }
        }
    }
    let vertices = (0..n)
        .filter(|&p| {
            let on: Vec<&Point> = facets
                .iter()
                .filter(|(m, o)| (dot(m, &pts[p]) - o).abs() <= TOL)
                .map(|(m, _)| m)
                .collect();
            // A vertex sits on three facets with independent normals.
            on.iter().enumerate().any(|(a, m1)| {
                on.iter().enumerate().skip(a + 1).any(|(b, m2)| {
                    on.iter()
                        .skip(b + 1)
                        .any(|m3| dot(&cross3(m1, m2), m3).abs() > 1e-9)
                })
            })
        })
        .collect();
    (vertices, facets)
}
