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

//! Finite unions of boxes with a mutation counter.

use serde::{Deserialize, Serialize};

use super::ibox::{BoxError, IntervalBox};

/// A finite union of same-dimension boxes.
///
/// Boxes may overlap after [`BoxUnion::push`]; [`BoxUnion::subtract`] and
/// [`BoxUnion::disjoint`] always produce interior-disjoint pieces. The
/// version counter increases every time a subtraction or erosion changes the
/// set, which lets callers detect staleness cheaply.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoxUnion {
    boxes: Vec<IntervalBox>,
    #[serde(skip)]
    version: u64,
}

impl PartialEq for BoxUnion {
    fn eq(&self, other: &Self) -> bool {
        self.boxes == other.boxes
    }
}

impl BoxUnion {
    pub fn new(boxes: Vec<IntervalBox>) -> Result<Self, BoxError> {
        if let Some(first) = boxes.first() {
            let n = first.dim();
            if let Some(bad) = boxes.iter().find(|b| b.dim() != n) {
                return Err(BoxError::DimensionMismatch {
                    expected: n,
                    got: bad.dim(),
                });
            }
        }
        Ok(Self { boxes, version: 0 })
    }

    pub fn empty() -> Self {
        Self {
            boxes: Vec::new(),
            version: 0,
        }
    }

    pub fn single(b: IntervalBox) -> Self {
        Self {
            boxes: vec![b],
            version: 0,
        }
    }

    #[inline]
    pub fn boxes(&self) -> &[IntervalBox] {
        &self.boxes
    }

    pub fn into_boxes(self) -> Vec<IntervalBox> {
        self.boxes
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    #[inline]
    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn dim(&self) -> Option<usize> {
        self.boxes.first().map(IntervalBox::dim)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, IntervalBox> {
        self.boxes.iter()
    }

    pub fn push(&mut self, b: IntervalBox) -> Result<(), BoxError> {
        if let Some(n) = self.dim() {
            if b.dim() != n {
                return Err(BoxError::DimensionMismatch {
                    expected: n,
                    got: b.dim(),
                });
            }
        }
        self.boxes.push(b);
        Ok(())
    }

    pub fn bounding_box(&self) -> Option<IntervalBox> {
        let mut it = self.boxes.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, b| acc.hull(b)))
    }

    pub fn contains_point(&self, p: &[f64]) -> bool {
        self.boxes.iter().any(|b| b.contains_point(p).unwrap_or(false))
    }

    /// Largest ∞-depth of `p` inside any single member box (a lower bound on
    /// the distance to the complement of the union); negative if outside.
    pub fn depth(&self, p: &[f64]) -> f64 {
        self.boxes
            .iter()
            .map(|b| b.depth(p))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `self \ b` as a disjoint box list.
    pub fn subtract(&self, b: &IntervalBox) -> Result<BoxUnion, BoxError> {
        let mut out = self.clone();
        out.subtract_in_place(b)?;
        Ok(out)
    }

    /// In-place `self \ b`. Returns whether the set changed.
    pub fn subtract_in_place(&mut self, b: &IntervalBox) -> Result<bool, BoxError> {
        if let Some(n) = self.dim() {
            if n != b.dim() {
                return Err(BoxError::DimensionMismatch {
                    expected: n,
                    got: b.dim(),
                });
            }
        }
        let changed = self.boxes.iter().any(|x| x.overlaps_interior(b));
        let needs_refine = !self.is_disjoint();
        if changed {
            let mut pieces = Vec::with_capacity(self.boxes.len() + 4);
            for x in &self.boxes {
                if x.overlaps_interior(b) {
                    pieces.extend(x.subtract(b));
                } else {
                    pieces.push(x.clone());
                }
            }
            self.boxes = pieces;
            self.version += 1;
        }
        if needs_refine {
            self.boxes = disjoint_refinement(&self.boxes);
        }
        Ok(changed)
    }

    /// True when no two member boxes share interior points.
    pub fn is_disjoint(&self) -> bool {
        for (i, a) in self.boxes.iter().enumerate() {
            if self.boxes[i + 1..].iter().any(|b| a.overlaps_interior(b)) {
                return false;
            }
        }
        true
    }

    /// Same point set as interior-disjoint boxes.
    pub fn disjoint(&self) -> BoxUnion {
        BoxUnion {
            boxes: disjoint_refinement(&self.boxes),
            version: self.version,
        }
    }

    /// Exact Lebesgue measure, counting overlaps once.
    /// Volume; `+0.0` for the empty union.
    pub fn volume(&self) -> f64 {
        if self.is_disjoint() {
            self.boxes.iter().map(IntervalBox::volume).fold(0.0, |a, v| a + v)
        } else {
            disjoint_refinement(&self.boxes)
                .iter()
                .map(IntervalBox::volume)
                .fold(0.0, |a, v| a + v)
        }
    }

    /// Merges pairs of boxes that share a full face, until none remain.
    /// The point set is unchanged.
    pub fn coalesced(&self) -> BoxUnion {
        let mut boxes = disjoint_refinement(&self.boxes);
        // Each merge removes one box, so the loop is bounded.
        'outer: loop {
            for i in 0..boxes.len() {
                for j in (i + 1)..boxes.len() {
                    if let Some(m) = merge_faces(&boxes[i], &boxes[j]) {
                        boxes[i] = m;
                        boxes.swap_remove(j);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        BoxUnion {
            boxes,
            version: self.version,
        }
    }

    /// Pontryagin difference with the ∞-ball of radius `r`:
    /// `{x : x + B_r ⊆ self}`.
    ///
    /// Computed exactly as the bounding box shrunk by `r`, minus every piece
    /// of the complement (within the bounding box) grown by `r`.
    pub fn erode(&self, r: f64) -> BoxUnion {
        assert!(r >= 0.0, "erosion radius must be non-negative");
        let mut out = BoxUnion {
            boxes: Vec::new(),
            version: self.version,
        };
        let Some(bb) = self.bounding_box() else {
            return out;
        };
        if r == 0.0 {
            out.boxes = self.boxes.clone();
            return out;
        }
        let Some(core) = bb.shrink(r) else {
            out.version += 1;
            return out;
        };
        let mut holes = BoxUnion::single(bb);
        for b in &self.boxes {
            holes
                .subtract_in_place(b)
                .expect("dimensions checked at construction");
        }
        let mut result = BoxUnion::single(core);
        for h in holes.boxes() {
            result.subtract_in_place(&h.inflate(r)).expect("same dimension");
        }
        // Degenerate slivers carry no volume.
        result.boxes.retain(|b| b.volume() > 0.0);
        out.boxes = result.boxes;
        out.version += 1;
        out
    }
}

fn merge_faces(a: &IntervalBox, b: &IntervalBox) -> Option<IntervalBox> {
    let mut axis = None;
    for k in 0..a.dim() {
        let (x, y) = (a.get(k), b.get(k));
        if x == y {
            continue;
        }
        if axis.is_some() {
            return None;
        }
        if x.hi() == y.lo() || y.hi() == x.lo() {
            axis = Some(k);
        } else {
            return None;
        }
    }
    axis.map(|_| a.hull(b))
}

fn disjoint_refinement(boxes: &[IntervalBox]) -> Vec<IntervalBox> {
    let mut out: Vec<IntervalBox> = Vec::with_capacity(boxes.len());
    for b in boxes {
        let mut pieces = vec![b.clone()];
        for kept in &out {
            if pieces.iter().any(|p| p.overlaps_interior(kept)) {
                pieces = pieces.iter().flat_map(|p| p.subtract(kept)).collect();
            }
        }
        out.extend(pieces);
    }
    out
}
