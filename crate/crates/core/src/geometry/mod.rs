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

//! Polytope kernel for ambient dimensions one to three: dual
//! representations, hulls, Minkowski sums, translation sets, intersection
//! tests and set differences.
//!
//! All comparisons use the absolute tolerance [`TOL`]: constraint rows are
//! unit-norm, so it is a distance. Sets thinner than `TOL` are treated as
//! lower-dimensional.

mod difference;
mod hull;
mod polytope;
mod translation;

pub use difference::{set_difference, PolyUnion};
pub use polytope::{normalize_rows, Halfspace, Polytope};
pub use translation::{
    contains, insertion_set, intersects, intersects_by_halfspaces, overlap_halfspace, overlap_set,
};

pub(crate) use translation::overlap_rows;

/// Geometric tolerance (a distance).
pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("halfspace normal must be non-zero and finite")]
    ZeroNormal,
    #[error("constraints do not bound the set")]
    Unbounded,
    #[error("empty polytope")]
    Empty,
    #[error("inconsistent dimensions")]
    DimensionMismatch,
}
