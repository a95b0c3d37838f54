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

//! Interval-valued matrices and their action on boxes.

use super::ibox::{BoxError, IntervalBox};
use super::scalar::Interval;

/// Dense row-major `rows × cols` matrix of intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Interval>,
}

impl IntervalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Interval::point(0.0); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Interval>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Interval {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Interval) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Interval> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Enclosure of `{M v : M ∈ self, v ∈ b}` by interval sums of products.
    pub fn mul_box(&self, b: &IntervalBox) -> Result<IntervalBox, BoxError> {
        if b.dim() != self.cols {
            return Err(BoxError::DimensionMismatch {
                expected: self.cols,
                got: b.dim(),
            });
        }
        let out = (0..self.rows)
            .map(|i| (0..self.cols).fold(Interval::point(0.0), |acc, j| acc + self.get(i, j) * b.get(j)))
            .collect();
        Ok(IntervalBox::from_intervals(out))
    }
}
