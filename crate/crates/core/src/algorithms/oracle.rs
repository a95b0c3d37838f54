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

//! Grid approximation of the largest controlled invariant set, used as a
//! test oracle.

use rayon::prelude::*;

use super::baseline::{input_grid, InputGrid};
use crate::dynamics::SystemModel;
use crate::interval::IntervalBox;

/// Cells of a uniform grid over a bounding box, each alive or not.
#[derive(Debug, Clone)]
pub struct GridRegion {
    pub lo: Vec<f64>,
    pub cell: Vec<f64>,
    pub shape: Vec<usize>,
    pub alive: Vec<bool>,
}

impl GridRegion {
    fn index_of(&self, x: &[f64]) -> Option<usize> {
        let mut idx = 0;
        for k in (0..self.shape.len()).rev() {
            let t = ((x[k] - self.lo[k]) / self.cell[k]).floor();
            if t.is_nan() || t < 0.0 || t as usize >= self.shape[k] {
                // The upper boundary belongs to the last cell.
                let at_top =
                    (x[k] - self.lo[k] - self.cell[k] * self.shape[k] as f64).abs() <= 1e-12 * self.cell[k];
                if !at_top {
                    return None;
                }
                idx = idx * self.shape[k] + self.shape[k] - 1;
                continue;
            }
            idx = idx * self.shape[k] + t as usize;
        }
        Some(idx)
    }

    fn multi_index(&self, mut i: usize) -> Vec<usize> {
        self.shape
            .iter()
            .map(|&s| {
                let c = i % s;
                i /= s;
                c
            })
            .collect()
    }

    pub fn cell_box(&self, i: usize) -> IntervalBox {
        let mi = self.multi_index(i);
        let lo: Vec<f64> = (0..mi.len())
            .map(|k| self.lo[k] + mi[k] as f64 * self.cell[k])
            .collect();
        let hi: Vec<f64> = (0..mi.len())
            .map(|k| self.lo[k] + (mi[k] + 1) as f64 * self.cell[k])
            .collect();
        IntervalBox::new(&lo, &hi).expect("cells are well-formed")
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.index_of(x).is_some_and(|i| self.alive[i])
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|a| **a).count()
    }

    pub fn volume(&self) -> f64 {
        self.alive_count() as f64 * self.cell.iter().product::<f64>()
    }

    /// True if `b` lies inside the union of alive cells grown by `margin`
    /// in the ∞-norm.
    pub fn covers_inflated(&self, b: &IntervalBox, margin: f64) -> bool {
        let n = self.shape.len();
        let mut rest = vec![b.clone()];
        // Only cells within reach of `b` matter.
        let lo_idx: Vec<usize> = (0..n)
            .map(|k| {
                (((b.get(k).lo() - margin - self.lo[k]) / self.cell[k])
                    .floor()
                    .max(0.0)) as usize
            })
            .collect();
        let hi_idx: Vec<usize> = (0..n)
            .map(|k| {
                let t = ((b.get(k).hi() + margin - self.lo[k]) / self.cell[k])
                    .ceil()
                    .max(0.0) as usize;
                t.min(self.shape[k])
            })
            .collect();
        let mut cursor = lo_idx.clone();
        if (0..n).any(|k| lo_idx[k] >= hi_idx[k]) {
            return false;
        }
        loop {
            let flat = (0..n).rev().fold(0, |acc, k| acc * self.shape[k] + cursor[k]);
            if self.alive[flat] {
                let c = self.cell_box(flat).inflate(margin);
                rest = rest.into_iter().flat_map(|r| r.subtract(&c)).collect();
                if rest.is_empty() {
                    return true;
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    return rest.is_empty();
                }
                cursor[k] += 1;
                if cursor[k] < hi_idx[k] {
                    break;
                }
                cursor[k] = lo_idx[k];
                k += 1;
            }
        }
    }
}

/// Grid fixpoint over the bounding box of the model's region: cells whose
/// centre lies in the region start alive, and a cell stays alive while some
/// grid input maps its centre into an alive cell. Inputs are `n_inputs`
/// evenly spaced points including both ends of each axis.
pub fn brute_force_cis(model: &SystemModel, shape: &[usize], n_inputs: usize) -> GridRegion {
    let bb = model.omega0().bounding_box().expect("model region is non-empty");
    assert_eq!(shape.len(), bb.dim(), "grid shape must match the state dimension");
    let cell: Vec<f64> = (0..bb.dim())
        .map(|k| bb.get(k).width() / shape[k] as f64)
        .collect();
    let mut grid = GridRegion {
        lo: bb.lo(),
        cell,
        shape: shape.to_vec(),
        alive: vec![false; shape.iter().product()],
    };
    let centres: Vec<Vec<f64>> = (0..grid.alive.len())
        .map(|i| grid.cell_box(i).midpoint())
        .collect();
    for (i, c) in centres.iter().enumerate() {
        grid.alive[i] = model.omega0().contains_point(c);
    }
    let inputs = input_grid(model.input_box(), n_inputs, InputGrid::Endpoints);
    loop {
        let next: Vec<bool> = (0..grid.alive.len())
            .into_par_iter()
            .map(|i| {
                grid.alive[i]
                    && inputs
                        .iter()
                        .any(|u| model.step(&centres[i], u).is_ok_and(|y| grid.contains(&y)))
            })
            .collect();
        if next == grid.alive {
            return grid;
        }
        grid.alive = next;
    }
}
