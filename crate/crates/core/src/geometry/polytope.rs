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

//! Bounded convex polytopes in dual representation.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::hull::{dedup_points, dot, hull, sub, Point};
use super::{GeometryError, TOL};
use crate::interval::IntervalBox;

/// A halfspace `{x : h·x <= b}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub h: Vec<f64>,
    pub b: f64,
}

impl Halfspace {
    /// Builds a halfspace with `h` rescaled to unit 2-norm.
    pub fn new(h: Vec<f64>, b: f64) -> Result<Self, GeometryError> {
        let l = h.iter().map(|x| x * x).sum::<f64>().sqrt();
        if l == 0.0 || !l.is_finite() {
            return Err(GeometryError::ZeroNormal);
        }
        Ok(Self {
            h: h.iter().map(|x| x / l).collect(),
            b: b / l,
        })
    }
}

/// A bounded polyhedron `{x : Hx <= b}` with its vertex list.
///
/// Both representations are always present and canonical: rows of `H` are
/// unit 2-norm and irredundant, lower-dimensional polytopes carry their
/// affine hull as pairs of opposing rows, and the empty polytope has no
/// vertices.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(into = "RawPolytope", try_from = "RawPolytope")]
pub struct Polytope {
    dim: usize,
    h: Vec<Point>,
    b: Vec<f64>,
    vertices: Vec<Point>,
    affine_dim: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawPolytope {
    #[serde(rename = "H")]
    h: Vec<Vec<f64>>,
    b: Vec<f64>,
    #[serde(rename = "V")]
    v: Vec<Vec<f64>>,
}

impl From<Polytope> for RawPolytope {
    fn from(p: Polytope) -> Self {
        RawPolytope {
            h: p.h,
            b: p.b,
            v: p.vertices,
        }
    }
}

impl TryFrom<RawPolytope> for Polytope {
    type Error = GeometryError;

    fn try_from(raw: RawPolytope) -> Result<Self, GeometryError> {
        if let Some(first) = raw.v.first() {
            let dim = first.len();
            Ok(Polytope::from_points(dim, &raw.v))
        } else if let Some(first) = raw.h.first() {
            Ok(Polytope::empty(first.len()))
        } else {
            Err(GeometryError::Empty)
        }
    }
}

impl Polytope {
    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            h: Vec::new(),
            b: Vec::new(),
            vertices: Vec::new(),
            affine_dim: None,
        }
    }

    /// Convex hull of a finite point set.
    pub fn from_points(dim: usize, points: &[Point]) -> Self {
        assert!(
            (1..=3).contains(&dim),
            "polytopes are supported in dimensions 1 to 3"
        );
        if points.is_empty() {
            return Self::empty(dim);
        }
        let pts = dedup_points(points);
        let hl = hull(&pts);
        let vertices = hl.vertices.iter().map(|&i| pts[i].clone()).collect();
        let (h, b) = hl.halfspaces.into_iter().unzip();
        Self {
            dim,
            h,
            b,
            vertices,
            affine_dim: Some(hl.affine_dim),
        }
    }

    pub fn from_box(bx: &IntervalBox) -> Self {
        let n = bx.dim();
        let corners = (0..1usize << n)
            .map(|mask| {
                (0..n)
                    .map(|k| {
                        let side = bx.get(k);
                        if mask >> k & 1 == 1 {
                            side.hi()
                        } else {
                            side.lo()
                        }
                    })
                    .collect()
            })
            .collect::<Vec<Point>>();
        Self::from_points(n, &corners)
    }

    /// Polytope from a halfspace representation. Fails if the constraints
    /// admit an unbounded direction; returns the empty polytope when they
    /// are infeasible.
    pub fn from_hrep(h: &[Vec<f64>], b: &[f64]) -> Result<Self, GeometryError> {
        let dim = h.first().map(Vec::len).ok_or(GeometryError::Unbounded)?;
        if h.len() != b.len() || h.iter().any(|r| r.len() != dim) {
            return Err(GeometryError::DimensionMismatch);
        }
        let rows = normalize_rows(h, b)?;
        if !positively_spanning(dim, &rows) {
            return Err(GeometryError::Unbounded);
        }
        Ok(Self::from_rows_bounded(dim, &rows))
    }

    /// Caller guarantees the constraints describe a bounded set.
    pub fn from_rows_bounded(dim: usize, rows: &[(Point, f64)]) -> Self {
        let verts = enumerate_vertices(dim, rows);
        Self::from_points(dim, &verts)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension of the affine hull, `None` when empty.
    #[inline]
    pub fn affine_dim(&self) -> Option<usize> {
        self.affine_dim
    }

    /// True when the polytope has non-empty interior (thicker than the
    /// geometric tolerance in every direction).
    #[inline]
    pub fn is_full_dim(&self) -> bool {
        self.affine_dim == Some(self.dim)
    }

    #[inline]
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Halfspace representation `(H, b)`.
    pub fn halfspaces(&self) -> (&[Point], &[f64]) {
        (&self.h, &self.b)
    }

    pub fn rows(&self) -> impl Iterator<Item = (&Point, f64)> {
        self.h.iter().zip(self.b.iter().copied())
    }

    pub(crate) fn row_pairs(&self) -> Vec<(Point, f64)> {
        self.h.iter().cloned().zip(self.b.iter().copied()).collect()
    }

    pub fn contains_point(&self, p: &[f64], tol: f64) -> bool {
        !self.is_empty() && self.rows().all(|(h, b)| dot(h, p) <= b + tol)
    }

    /// Minimum of `h·v` over the vertices.
    pub fn support_min(&self, h: &[f64]) -> f64 {
        self.vertices
            .iter()
            .map(|v| dot(h, v))
            .fold(f64::INFINITY, f64::min)
    }

    /// Maximum of `h·v` over the vertices.
    pub fn support_max(&self, h: &[f64]) -> f64 {
        self.vertices
            .iter()
            .map(|v| dot(h, v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn centroid(&self) -> Option<Point> {
        let k = self.vertices.len();
        if k == 0 {
            return None;
        }
        let mut c = vec![0.0; self.dim];
        for v in &self.vertices {
            c.iter_mut().zip(v).for_each(|(a, b)| *a += b);
        }
        c.iter_mut().for_each(|a| *a /= k as f64);
        Some(c)
    }

    pub fn bounding_box(&self) -> Option<IntervalBox> {
        if self.is_empty() {
            return None;
        }
        let lo: Vec<f64> = (0..self.dim)
            .map(|k| self.vertices.iter().map(|v| v[k]).fold(f64::INFINITY, f64::min))
            .collect();
        let hi: Vec<f64> = (0..self.dim)
            .map(|k| {
                self.vertices
                    .iter()
                    .map(|v| v[k])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        IntervalBox::new(&lo, &hi).ok()
    }

    pub fn translate(&self, t: &[f64]) -> Polytope {
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
            .collect();
        Polytope::from_points(self.dim, &pts)
    }

    /// Image under a linear map (`A` may be singular or rectangular).
    pub fn linear_image(&self, a: &DMatrix<f64>) -> Polytope {
        assert_eq!(a.ncols(), self.dim, "matrix/polytope dimension mismatch");
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| {
                (0..a.nrows())
                    .map(|i| (0..a.ncols()).map(|j| a[(i, j)] * v[j]).sum())
                    .collect()
            })
            .collect();
        Polytope::from_points(a.nrows(), &pts)
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Polytope {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if self.is_empty() || other.is_empty() {
            return Polytope::empty(self.dim);
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for p in &self.vertices {
            for q in &other.vertices {
                pts.push(p.iter().zip(q).map(|(a, b)| a + b).collect());
            }
        }
        Polytope::from_points(self.dim, &pts)
    }

    /// Intersection with another polytope.
    pub fn intersection(&self, other: &Polytope) -> Polytope {
        if self.is_empty() || other.is_empty() {
            return Polytope::empty(self.dim);
        }
        let mut rows = self.row_pairs();
        rows.extend(other.row_pairs());
        Polytope::from_rows_bounded(self.dim, &rows)
    }

    /// Intersection with a halfspace.
    pub fn clip(&self, hs: &Halfspace) -> Polytope {
        if self.is_empty() {
            return self.clone();
        }
        if self.support_max(&hs.h) <= hs.b {
            return self.clone();
        }
        let mut rows = self.row_pairs();
        rows.push((hs.h.clone(), hs.b));
        Polytope::from_rows_bounded(self.dim, &rows)
    }

    /// Smallest facet-normal extent: `min_i (b_i − min_v h_i·v)`. Zero for
    /// lower-dimensional polytopes.
    pub fn thickness(&self) -> f64 {
        if !self.is_full_dim() {
            return 0.0;
        }
        self.rows()
            .map(|(h, b)| b - self.support_min(h))
            .fold(f64::INFINITY, f64::min)
    }

    /// Lebesgue measure in the ambient dimension.
    pub fn volume(&self) -> f64 {
        if !self.is_full_dim() {
            return 0.0;
        }
        match self.dim {
            1 => self.vertices[1][0] - self.vertices[0][0],
            2 => polygon_area(&self.vertices),
            3 => self.volume_3d(),
            _ => unreachable!(),
        }
    }

    fn volume_3d(&self) -> f64 {
        let c = self.centroid().expect("non-empty");
        let mut total = 0.0;
        for (h, b) in self.rows() {
            let on: Vec<&Point> = self
                .vertices
                .iter()
                .filter(|v| (dot(h, v) - b).abs() <= 10.0 * TOL)
                .collect();
            if on.len() < 3 {
                continue;
            }
            // Area of the facet polygon via projection onto its plane.
            let fc: Point = (0..3)
                .map(|k| on.iter().map(|v| v[k]).sum::<f64>() / on.len() as f64)
                .collect();
            let e1 = {
                let d = sub(on[0], &fc);
                let l = dot(&d, &d).sqrt();
                d.iter().map(|x| x / l).collect::<Point>()
            };
            let e2 = cross(h, &e1);
            let mut ring: Vec<(f64, f64)> = on
                .iter()
                .map(|v| {
                    let d = sub(v, &fc);
                    (dot(&d, &e1), dot(&d, &e2))
                })
                .collect();
            ring.sort_by(|a, b| a.1.atan2(a.0).total_cmp(&b.1.atan2(b.0)));
            let area = 0.5
                * (0..ring.len())
                    .map(|i| {
                        let (x0, y0) = ring[i];
                        let (x1, y1) = ring[(i + 1) % ring.len()];
                        x0 * y1 - x1 * y0
                    })
                    .sum::<f64>()
                    .abs();
            let height = b - dot(h, &c);
            total += area * height / 3.0;
        }
        total
    }
}

fn cross(a: &[f64], b: &[f64]) -> Point {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Shoelace formula; vertices are stored in counter-clockwise frame order,
/// which may be clockwise in ambient coordinates, so take the magnitude.
fn polygon_area(vs: &[Point]) -> f64 {
    0.5 * (0..vs.len())
        .map(|i| {
            let a = &vs[i];
            let b = &vs[(i + 1) % vs.len()];
            a[0] * b[1] - b[0] * a[1]
        })
        .sum::<f64>()
        .abs()
}

pub fn normalize_rows(h: &[Vec<f64>], b: &[f64]) -> Result<Vec<(Point, f64)>, GeometryError> {
    h.iter()
        .zip(b)
        .map(|(row, &rhs)| Halfspace::new(row.clone(), rhs).map(|hs| (hs.h, hs.b)))
        .collect()
}

/// `{d : H d <= 0} = {0}` iff the origin is interior to the hull of the rows.
fn positively_spanning(dim: usize, rows: &[(Point, f64)]) -> bool {
    let normals: Vec<Point> = rows.iter().map(|(h, _)| h.clone()).collect();
    let cone = Polytope::from_points(dim, &normals);
    cone.is_full_dim() && cone.rows().all(|(h, b)| b > 1e-12 && dot(h, &vec![0.0; dim]) < b)
}

/// Vertices of `{x : h_i·x <= b_i}` by solving every `dim`-subset of rows.
pub(crate) fn enumerate_vertices(dim: usize, rows: &[(Point, f64)]) -> Vec<Point> {
    let feasible = |x: &[f64]| rows.iter().all(|(h, b)| dot(h, x) <= b + TOL);
    let mut out: Vec<Point> = Vec::new();
    let mut push = |x: Point| {
        if x.iter().all(|v| v.is_finite()) && feasible(&x) {
            out.push(x);
        }
    };
    let m = rows.len();
    match dim {
        1 => {
            let mut lo = f64::NEG_INFINITY;
            let mut hi = f64::INFINITY;
            for (h, b) in rows {
                if h[0] > 0.0 {
                    hi = hi.min(b / h[0]);
                } else if h[0] < 0.0 {
                    lo = lo.max(b / h[0]);
                }
            }
            if lo <= hi + TOL {
                let (lo, hi) = if lo <= hi {
                    (lo, hi)
                } else {
                    (0.5 * (lo + hi), 0.5 * (lo + hi))
                };
                push(vec![lo]);
                push(vec![hi]);
            }
        }
        2 => {
            for i in 0..m {
                for j in (i + 1)..m {
                    let (a, p) = (&rows[i].0, rows[i].1);
                    let (c, q) = (&rows[j].0, rows[j].1);
                    let det = a[0] * c[1] - a[1] * c[0];
                    if det.abs() < 1e-13 {
                        continue;
                    }
                    push(vec![(p * c[1] - a[1] * q) / det, (a[0] * q - p * c[0]) / det]);
                }
            }
        }
        3 => {
            for i in 0..m {
                for j in (i + 1)..m {
                    let cij = cross(&rows[i].0, &rows[j].0);
                    for k in (j + 1)..m {
                        let det = dot(&cij, &rows[k].0);
                        if det.abs() < 1e-13 {
                            continue;
                        }
                        // Cramer's rule via cross products.
                        let cjk = cross(&rows[j].0, &rows[k].0);
                        let cki = cross(&rows[k].0, &rows[i].0);
                        let x = (0..3)
                            .map(|t| (rows[i].1 * cjk[t] + rows[j].1 * cki[t] + rows[k].1 * cij[t]) / det)
                            .collect();
                        push(x);
                    }
                }
            }
        }
        _ => panic!("vertex enumeration supports dimensions 1 to 3"),
    }
    out
}
