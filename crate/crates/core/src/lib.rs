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

//! Controlled invariant sets of discrete-time control-affine systems.
//!
//! Given dynamics `x+ = f0(x) + Σ g_i(x) u_i` with `u` in a box `U` and a
//! region of interest `Ω` (a finite union of boxes), the algorithms in
//! [`algorithms`] refine `Ω` by bisection and certify boxes whose one-step
//! reachable set can be translated, by some admissible input, entirely into
//! the current region. Each certified box carries the full set of inputs
//! that achieve this, as a union of polytopes.

pub mod algorithms;
pub mod config;
pub mod dynamics;
pub mod expr;
pub mod geometry;
pub mod interval;
pub mod run;
