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

//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use cis_core::algorithms::InputGrid;
use cis_core::config::Algorithm;
use cis_core::interval::BoxUnion;
use cis_core::run::{run, RunOutput};

struct Report {
    failed: usize,
    total: usize,
}

impl Report {
    fn line(&mut self, name: &str, result: common::Check) {
        self.total += 1;
        match result {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                self.failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }

    fn info(&self, name: &str, detail: String) {
        println!("INFO  {name}: {detail}");
    }
}

fn within(value: f64, target: f64, tol: f64) -> bool {
    (value - target).abs() <= tol
}

fn pct(f: f64) -> String {
    format!("{:.2}%", 100.0 * f)
}

fn pendulum_run(algorithm: Algorithm, n_u: Option<usize>, grid: InputGrid) -> (RunOutput, f64) {
    let mut cfg = common::load_config("pendulum.toml");
    cfg.run.algorithm = algorithm;
    cfg.run.n_u = n_u;
    cfg.run.input_grid = grid;
    let t = Instant::now();
    let out = run(&cfg).expect("pendulum run");
    (out, t.elapsed().as_secs_f64())
}

fn main() -> ExitCode {
    let mut rep = Report { failed: 0, total: 0 };

    // Pendulum reproduction.
    let (fix, t_fix) = pendulum_run(Algorithm::Fixpoint, None, InputGrid::Lower);
    let (acc, t_acc) = pendulum_run(Algorithm::Accelerated, None, InputGrid::Lower);
    let (b10, t_b10) = pendulum_run(Algorithm::Baseline, Some(10), InputGrid::Lower);
    let (b1000, t_b1000) = pendulum_run(Algorithm::Baseline, Some(1000), InputGrid::Lower);
    let vf = fix.stats.volume_fraction;

    rep.line(
        "pendulum fixpoint volume 97.9% ± 1.5 pp",
        if within(vf, 0.979, 0.015) {
            Ok(pct(vf))
        } else {
            Err(pct(vf))
        },
    );
    let sd = common::symmetric_difference_volume(&fix.cis, &acc.cis);
    rep.line(
        "pendulum accelerated set equals fixpoint set (symmetric difference < 1e-9)",
        if sd < 1e-9 {
            Ok(format!("{sd:e}"))
        } else {
            Err(format!("{sd:e}"))
        },
    );
    let pops = format!(
        "accelerated {} pops, fixpoint {} pops",
        acc.stats.pops, fix.stats.pops
    );
    rep.line(
        "pendulum accelerated pops < fixpoint pops",
        if acc.stats.pops < fix.stats.pops {
            Ok(pops)
        } else {
            Err(pops)
        },
    );
    let v10 = b10.stats.volume_fraction;
    rep.line(
        "pendulum baseline n_u=10 volume 59.8% ± 5 pp and below the main result",
        if within(v10, 0.598, 0.05) && v10 < vf {
            Ok(format!("{} ({} pops) vs {}", pct(v10), b10.stats.pops, pct(vf)))
        } else {
            Err(format!("{} vs {}", pct(v10), pct(vf)))
        },
    );
    let v1000 = b1000.stats.volume_fraction;
    rep.line(
        "pendulum baseline n_u=1000 volume 97.9% ± 1.5 pp",
        if within(v1000, 0.979, 0.015) {
            Ok(format!("{} ({} pops)", pct(v1000), b1000.stats.pops))
        } else {
            Err(pct(v1000))
        },
    );
    let slowest = [t_fix, t_acc, t_b10, t_b1000].into_iter().fold(0.0, f64::max);
    rep.line(
        "pendulum wall time ≤ 60 s per run",
        if slowest <= 60.0 {
            Ok(format!("slowest {slowest:.2} s"))
        } else {
            Err(format!("slowest {slowest:.2} s"))
        },
    );
    for (grid, name) in [
        (InputGrid::Midpoints, "midpoints"),
        (InputGrid::Endpoints, "endpoints"),
    ] {
        let (o, _) = pendulum_run(Algorithm::Baseline, Some(10), grid);
        rep.info(
            &format!("baseline n_u=10 with {name} input grid"),
            format!("{} ({} pops)", pct(o.stats.volume_fraction), o.stats.pops),
        );
    }

    // Invariance certificate.
    let v = fix.verify(1000, 100, fix.config.run.seed).expect("verify");
    rep.line(
        "verify pendulum output, 1000 trials × 100 steps, all inside",
        if v.failed == 0 && v.passed == 1000 {
            Ok(format!(
                "{} passed, worst margin {:.2e}",
                v.passed, v.worst_margin
            ))
        } else {
            Err(format!("{} of {} failed", v.failed, v.trials))
        },
    );

    // Geometry oracles.
    rep.line(
        "geometry: insertion set, 200 pairs × 50 + 50 translations",
        common::check_insertion_set(200, 11),
    );
    rep.line(
        "geometry: overlap set equals q ⊕ (−p)",
        common::check_overlap_set(200, 12),
    );
    rep.line(
        "geometry: intersects agrees with LP, 500 pairs",
        common::check_intersects_lp(500, 13),
    );
    rep.line(
        "geometry: separation criterion agrees with stacked test, 500 pairs",
        common::check_halfspace_criterion(500, 14),
    );
    rep.line(
        "geometry: set difference membership, 10^4 points",
        common::check_set_difference(10_000, 15),
    );

    // Inclusion soundness.
    rep.line(
        "inclusion: 1000 random expressions × 100 points",
        common::check_expr_soundness(1000, 100, 21),
    );
    rep.line(
        "inclusion: gradients vs central differences (h = 1e-6, 1e-5)",
        common::check_gradients(300, 20, 22),
    );
    rep.line(
        "inclusion: interval gradients enclose sampled gradients",
        common::check_interval_gradients(500, 50, 23),
    );
    rep.line(
        "inclusion: reach-set sandwich on pendulum",
        common::check_sandwich(&common::pendulum(), 30, 25),
    );
    for seed in 1..=3 {
        rep.line(
            &format!("inclusion: reach-set sandwich on random system {seed}"),
            common::check_sandwich(&common::random_system(seed), 20, 100 + seed),
        );
    }

    // Oracle containment.
    let pend = common::pendulum();
    rep.line(
        "containment: pendulum fixpoint inside 100×100 oracle + cell + ρε",
        common::check_containment(&pend, &fix.cis, &[100, 100], 21, 1e-3),
    );
    rep.line(
        "containment: pendulum accelerated inside 100×100 oracle + cell + ρε",
        common::check_containment(&pend, &acc.cis, &[100, 100], 21, 1e-3),
    );
    let one = common::load_config("unstable.toml");
    let one_out = run(&one).expect("1-D run");
    let one_cis: BoxUnion = one_out.cis.clone();
    rep.line(
        "containment: 1-D example inside 2000-cell oracle + cell + ρε",
        common::check_containment(&one.model().unwrap(), &one_cis, &[2000], 101, one.run.epsilon),
    );

    // Width bound.
    rep.line(
        "width bound: w(Φ) ≤ L̃0·w([x]) on 100 sub-boxes",
        common::check_width_bound(&pend, 100, 26),
    );

    println!("{} of {} criteria passed", rep.total - rep.failed, rep.total);
    if rep.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
