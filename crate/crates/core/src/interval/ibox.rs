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

//! Axis-aligned boxes `[x] = [lo, hi]` in R^n.

use serde::{Deserialize, Serialize};

use super::scalar::Interval;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoxError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("box must have at least one dimension")]
    ZeroDimension,
    #[error("inverted bounds in dimension {dim}: lo={lo} > hi={hi}")]
    Inverted { dim: usize, lo: f64, hi: f64 },
    #[error("cannot bisect a box of zero width")]
    ZeroWidth,
}

/// A compact box, stored as one interval per coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBox", into = "RawBox")]
pub struct IntervalBox {
    dims: Vec<Interval>,
}

#[derive(Serialize, Deserialize)]
struct RawBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl TryFrom<RawBox> for IntervalBox {
    type Error = BoxError;

    fn try_from(raw: RawBox) -> Result<Self, BoxError> {
        IntervalBox::new(&raw.lo, &raw.hi)
    }
}

impl From<IntervalBox> for RawBox {
    fn from(b: IntervalBox) -> RawBox {
        RawBox {
            lo: b.lo(),
            hi: b.hi(),
        }
    }
}

impl IntervalBox {
    pub fn new(lo: &[f64], hi: &[f64]) -> Result<Self, BoxError> {
        if lo.len() != hi.len() {
            return Err(BoxError::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        if lo.is_empty() {
            return Err(BoxError::ZeroDimension);
        }
        let dims = lo
            .iter()
            .zip(hi)
            .enumerate()
            .map(|(dim, (&l, &h))| {
                Interval::try_new(l, h).map_err(|_| BoxError::Inverted { dim, lo: l, hi: h })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { dims })
    }

    pub fn from_intervals(dims: Vec<Interval>) -> Self {
        assert!(!dims.is_empty(), "box must have at least one dimension");
        Self { dims }
    }

    pub fn point(p: &[f64]) -> Self {
        Self::from_intervals(p.iter().map(|&v| Interval::point(v)).collect())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    #[inline]
    pub fn intervals(&self) -> &[Interval] {
        &self.dims
    }

    #[inline]
    pub fn get(&self, i: usize) -> Interval {
        self.dims[i]
    }

    pub fn lo(&self) -> Vec<f64> {
        self.dims.iter().map(Interval::lo).collect()
    }

    pub fn hi(&self) -> Vec<f64> {
        self.dims.iter().map(Interval::hi).collect()
    }

    /// Width in the ∞-norm: the largest side length.
    pub fn width(&self) -> f64 {
        self.dims.iter().map(Interval::width).fold(0.0, f64::max)
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.dims.iter().map(Interval::mid).collect()
    }

    pub fn volume(&self) -> f64 {
        self.dims.iter().map(Interval::width).product()
    }

    /// Index of the widest side; ties go to the lowest index.
    pub fn widest_dim(&self) -> usize {
        let mut best = 0;
        for (i, d) in self.dims.iter().enumerate() {
            if d.width() > self.dims[best].width() {
                best = i;
            }
        }
        best
    }

    /// Splits along the widest side at its midpoint.
    pub fn bisect(&self) -> Result<(IntervalBox, IntervalBox), BoxError> {
        if self.width() <= 0.0 {
            return Err(BoxError::ZeroWidth);
        }
        let k = self.widest_dim();
        let side = self.dims[k];
        let mid = side.mid();
        let mut left = self.clone();
        let mut right = self.clone();
        left.dims[k] = Interval::new(side.lo(), mid);
        right.dims[k] = Interval::new(mid, side.hi());
        Ok((left, right))
    }

    fn check_dim(&self, other: usize) -> Result<(), BoxError> {
        if self.dim() == other {
            Ok(())
        } else {
            Err(BoxError::DimensionMismatch {
                expected: self.dim(),
                got: other,
            })
        }
    }

    pub fn contains_point(&self, p: &[f64]) -> Result<bool, BoxError> {
        self.check_dim(p.len())?;
        Ok(self.dims.iter().zip(p).all(|(d, &v)| d.contains(v)))
    }

    /// Closed-set intersection test; boxes sharing only a face intersect.
    pub fn intersects(&self, other: &IntervalBox) -> Result<bool, BoxError> {
        self.check_dim(other.dim())?;
        Ok(self
            .dims
            .iter()
            .zip(&other.dims)
            .all(|(a, b)| a.lo() <= b.hi() && b.lo() <= a.hi()))
    }

    /// True when the interiors overlap (positive-volume intersection).
    pub fn overlaps_interior(&self, other: &IntervalBox) -> bool {
        self.dims
            .iter()
            .zip(&other.dims)
            .all(|(a, b)| a.lo() < b.hi() && b.lo() < a.hi())
    }

    pub fn intersection(&self, other: &IntervalBox) -> Result<Option<IntervalBox>, BoxError> {
        self.check_dim(other.dim())?;
        let dims: Option<Vec<Interval>> = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a.intersect(b))
            .collect();
        Ok(dims.map(IntervalBox::from_intervals))
    }

    pub fn is_subset_of(&self, other: &IntervalBox) -> bool {
        self.dims.iter().zip(&other.dims).all(|(a, b)| a.is_subset_of(b))
    }

    pub fn hull(&self, other: &IntervalBox) -> IntervalBox {
        IntervalBox::from_intervals(
            self.dims
                .iter()
                .zip(&other.dims)
                .map(|(a, b)| a.hull(b))
                .collect(),
        )
    }

    /// Grows every face outward by `r`.
    pub fn inflate(&self, r: f64) -> IntervalBox {
        IntervalBox::from_intervals(
            self.dims
                .iter()
                .map(|d| Interval::new(d.lo() - r, d.hi() + r))
                .collect(),
        )
    }

    /// Shrinks every face inward by `r`; `None` if the box vanishes.
    pub fn shrink(&self, r: f64) -> Option<IntervalBox> {
        let dims: Option<Vec<Interval>> = self
            .dims
            .iter()
            .map(|d| Interval::try_new(d.lo() + r, d.hi() - r).ok())
            .collect();
        dims.map(IntervalBox::from_intervals)
    }

    /// `self \ other` as interior-disjoint boxes whose union is the closure
    /// of the difference. Boxes that only touch are returned unchanged.
    pub fn subtract(&self, other: &IntervalBox) -> Vec<IntervalBox> {
        if !self.overlaps_interior(other) {
            return vec![self.clone()];
        }
        let mut pieces = Vec::with_capacity(2 * self.dim());
        let mut core = self.clone();
        for k in 0..self.dim() {
            let side = core.dims[k];
            let cut = other.dims[k];
            if side.lo() < cut.lo() {
                let mut below = core.clone();
                below.dims[k] = Interval::new(side.lo(), cut.lo());
                pieces.push(below);
            }
            if cut.hi() < side.hi() {
                let mut above = core.clone();
                above.dims[k] = Interval::new(cut.hi(), side.hi());
                pieces.push(above);
            }
            core.dims[k] = Interval::new(side.lo().max(cut.lo()), side.hi().min(cut.hi()));
        }
        pieces
    }

    /// ∞-distance from `p` to the complement of the box; negative outside.
    pub fn depth(&self, p: &[f64]) -> f64 {
        self.dims
            .iter()
            .zip(p)
            .map(|(d, &v)| (v - d.lo()).min(d.hi() - v))
            .fold(f64::INFINITY, f64::min)
    }
}
