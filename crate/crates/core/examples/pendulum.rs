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

//! Runs every algorithm on the inverted pendulum and prints a summary.

use cis_core::algorithms::{accelerated, baseline_sampled, fixpoint, InputGrid, Params, Synthesis};
use cis_core::dynamics::SystemModel;
use cis_core::interval::{BoxUnion, IntervalBox};

fn main() {
    let model = SystemModel::parse(
        &[
            "x1 + 0.01*x2",
            "x2 + 0.01*(9.8*0.2*0.3/0.006*sin(x1) - 0.1/0.006*x2)",
        ],
        &[vec!["0"], vec!["0.01*0.3/0.006*cos(x1)"]],
        IntervalBox::new(&[-0.1], &[0.1]).unwrap(),
        BoxUnion::single(IntervalBox::new(&[-0.05, -0.01], &[0.05, 0.01]).unwrap()),
    )
    .unwrap();
    let params = Params::new(1e-3);
    let report = |name: &str, r: Synthesis| {
        println!(
            "{name:<24} pops {:>6} sweeps {:>3} volume {:6.2}% time {:>6} ms rho {:.4}",
            r.stats.pops,
            r.stats.sweeps,
            100.0 * r.stats.volume_fraction,
            r.stats.wall_ms,
            r.stats.rho
        );
    };
    report("fixpoint", fixpoint(model.omega0(), &model, &params).unwrap());
    report(
        "accelerated",
        accelerated(model.omega0(), &model, &params).unwrap(),
    );
    for n_u in [10, 1000] {
        report(
            &format!("baseline n_u={n_u}"),
            baseline_sampled(model.omega0(), &model, &params, n_u, InputGrid::Lower).unwrap(),
        );
    }
}
