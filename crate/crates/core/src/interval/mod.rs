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

//! Interval arithmetic: scalar intervals, boxes, box unions and interval
//! matrices.

mod ibox;
mod matrix;
mod scalar;
mod union;

pub use ibox::{BoxError, IntervalBox};
pub use matrix::IntervalMatrix;
pub use scalar::{Interval, IntervalError, TRANSCENDENTAL_EPS};
pub use union::BoxUnion;
