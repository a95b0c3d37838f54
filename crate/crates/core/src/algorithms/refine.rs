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

//! Queue-based refinement: a single sweep, the sweep fixpoint and the
//! accelerated in-place variant.

use std::collections::VecDeque;
use std::time::Instant;

use rayon::prelude::*;

use super::feasible::{classify_in, Target};
use super::{AlgorithmError, Classification, ControllerEntry, ControllerTable, Params, RunStats, Synthesis};
use crate::dynamics::{width_bounds, SystemModel};
use crate::geometry::PolyUnion;
use crate::interval::{BoxUnion, IntervalBox};

/// Classifies one box against a frozen target.
pub(crate) type Classifier<'a> =
    dyn Fn(&IntervalBox, &Target) -> Result<Classification, AlgorithmError> + Sync + 'a;

#[derive(Default)]
pub(crate) struct SweepOut {
    pub inside: Vec<ControllerEntry>,
    pub excluded: Vec<IntervalBox>,
    pub indeterminate: Vec<IntervalBox>,
    pub pops: u64,
}

impl SweepOut {
    fn append(&mut self, other: SweepOut) {
        self.inside.extend(other.inside);
        self.excluded.extend(other.excluded);
        self.indeterminate.extend(other.indeterminate);
        self.pops += other.pops;
    }
}

/// Depth-first processing of one box and its bisection descendants. The
/// right child is handled before the left, matching a queue where both
/// are pushed to the front with the right one last.
fn process(
    bx: &IntervalBox,
    target: &Target,
    classify: &Classifier,
    parallel: bool,
) -> Result<SweepOut, AlgorithmError> {
    let mut out = SweepOut {
        pops: 1,
        ..Default::default()
    };
    match classify(bx, target)? {
        Classification::Disjoint => out.excluded.push(bx.clone()),
        Classification::Indeterminate => out.indeterminate.push(bx.clone()),
        Classification::Inside(inputs) => out.inside.push(ControllerEntry {
            bx: bx.clone(),
            inputs,
        }),
        Classification::Split(l, r) => {
            let (first, second) = if parallel {
                rayon::join(
                    || process(&r, target, classify, true),
                    || process(&l, target, classify, true),
                )
            } else {
                (
                    process(&r, target, classify, false),
                    process(&l, target, classify, false),
                )
            };
            out.append(first?);
            out.append(second?);
        }
    }
    Ok(out)
}

pub(crate) struct Runner {
    pool: Option<rayon::ThreadPool>,
}

impl Runner {
    pub(crate) fn new(threads: usize) -> Result<Self, AlgorithmError> {
        let pool = if threads > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| AlgorithmError::Invalid(format!("thread pool: {e}")))?,
            )
        } else {
            None
        };
        Ok(Self { pool })
    }

    /// One pass of the refinement queue over `boxes` against `target`.
    pub(crate) fn sweep(
        &self,
        boxes: &[IntervalBox],
        target: &Target,
        classify: &Classifier,
    ) -> Result<SweepOut, AlgorithmError> {
        let parts = match &self.pool {
            None => boxes
                .iter()
                .map(|b| process(b, target, classify, false))
                .collect::<Result<Vec<_>, _>>()?,
            Some(pool) => pool.install(|| {
                boxes
                    .par_iter()
                    .map(|b| process(b, target, classify, true))
                    .collect::<Result<Vec<_>, _>>()
            })?,
        };
        let mut out = SweepOut::default();
        for p in parts {
            out.append(p);
        }
        Ok(out)
    }
}

pub(crate) fn target_for(omega: &BoxUnion, margin_r: f64) -> Target {
    if margin_r > 0.0 {
        Target::new(&omega.erode(margin_r))
    } else {
        Target::new(omega)
    }
}

pub(crate) fn finish_stats(
    model: &SystemModel,
    cis: &BoxUnion,
    params: &Params,
    pops: u64,
    sweeps: u64,
    start: Instant,
) -> Result<RunStats, AlgorithmError> {
    let rho = width_bounds(model, model.omega0())?.rho;
    let total = model.omega0().volume();
    Ok(RunStats {
        pops,
        sweeps,
        wall_ms: start.elapsed().as_millis() as u64,
        volume_fraction: if total > 0.0 { cis.volume() / total } else { 0.0 },
        rho,
        r: rho * params.epsilon,
    })
}

fn union_of(entries: &[ControllerEntry]) -> Result<BoxUnion, AlgorithmError> {
    Ok(BoxUnion::new(entries.iter().map(|e| e.bx.clone()).collect())?)
}

/// Sweeps until a sweep returns its own input, using `classify` for
/// each box.
pub(crate) fn fixpoint_with(
    omega: &BoxUnion,
    model: &SystemModel,
    params: &Params,
    classify: &Classifier,
    max_sweeps: Option<u64>,
) -> Result<Synthesis, AlgorithmError> {
    params.validate()?;
    let start = Instant::now();
    let runner = Runner::new(params.threads)?;
    let mut current = omega.clone();
    let mut pops = 0;
    let mut sweeps = 0;
    let mut excluded = Vec::new();
    let mut indeterminate = Vec::new();
    let mut controller = ControllerTable::default();
    while !current.is_empty() {
        let target = target_for(&current, params.margin_r);
        let out = runner.sweep(current.boxes(), &target, classify)?;
        pops += out.pops;
        sweeps += 1;
        excluded.extend(out.excluded);
        indeterminate.extend(out.indeterminate);
        let next = union_of(&out.inside)?;
        controller = ControllerTable { entries: out.inside };
        let (v0, v1) = (current.volume(), next.volume());
        current = next;
        // Sweeps only remove material, so equal volume means equal sets.
        if (v0 - v1).abs() <= 1e-12 * v0 || max_sweeps.is_some_and(|k| sweeps >= k) {
            break;
        }
    }
    let stats = finish_stats(model, &current, params, pops, sweeps, start)?;
    Ok(Synthesis {
        cis: current,
        controller,
        excluded,
        indeterminate,
        stats,
    })
}

fn polytope_classifier<'a>(
    model: &'a SystemModel,
    epsilon: f64,
) -> impl Fn(&IntervalBox, &Target) -> Result<Classification, AlgorithmError> + Sync + 'a {
    move |bx, target| classify_in(bx, target, model, epsilon)
}

/// One refinement sweep of `omega` against itself.
pub fn under_i(omega: &BoxUnion, model: &SystemModel, params: &Params) -> Result<Synthesis, AlgorithmError> {
    let classify = polytope_classifier(model, params.epsilon);
    fixpoint_with(omega, model, params, &classify, Some(1))
}

/// Repeats [`under_i`] until the set is unchanged. The controller table
/// comes from the last sweep, so it refers to the returned set.
pub fn fixpoint(omega: &BoxUnion, model: &SystemModel, params: &Params) -> Result<Synthesis, AlgorithmError> {
    let classify = polytope_classifier(model, params.epsilon);
    fixpoint_with(omega, model, params, &classify, None)
}

struct Item {
    bx: IntervalBox,
    /// Region version at which the box was last accepted.
    checked: Option<u64>,
    inputs: Option<PolyUnion>,
}

/// In-place refinement: rejected boxes are removed from the region at
/// once, accepted boxes go to the back of the queue and are re-verified
/// whenever the region has changed since their last check. Sequential.
pub fn accelerated(
    omega: &BoxUnion,
    model: &SystemModel,
    params: &Params,
) -> Result<Synthesis, AlgorithmError> {
    params.validate()?;
    let start = Instant::now();
    let mut region = omega.clone();
    let mut target = target_for(&region, params.margin_r);
    let mut target_version = region.version();
    let mut queue: VecDeque<Item> = omega
        .boxes()
        .iter()
        .map(|b| Item {
            bx: b.clone(),
            checked: None,
            inputs: None,
        })
        .collect();
    let mut pops = 0;
    let mut excluded = Vec::new();
    let mut indeterminate = Vec::new();
    // Accepted boxes sit behind all unchecked ones, and any change to the
    // region invalidates every mark, so a current mark at the front means
    // the whole queue is current.
    while let Some(front) = queue.front() {
        if front.checked == Some(region.version()) {
            break;
        }
        let item = queue.pop_front().expect("front exists");
        if target_version != region.version() {
            target = target_for(&region, params.margin_r);
            target_version = region.version();
        }
        pops += 1;
        match classify_in(&item.bx, &target, model, params.epsilon)? {
            Classification::Disjoint => {
                region.subtract_in_place(&item.bx)?;
                excluded.push(item.bx);
            }
            Classification::Indeterminate => {
                region.subtract_in_place(&item.bx)?;
                indeterminate.push(item.bx);
            }
            Classification::Inside(inputs) => queue.push_back(Item {
                bx: item.bx,
                checked: Some(region.version()),
                inputs: Some(inputs),
            }),
            Classification::Split(l, r) => {
                queue.push_front(Item {
                    bx: l,
                    checked: None,
                    inputs: None,
                });
                queue.push_front(Item {
                    bx: r,
                    checked: None,
                    inputs: None,
                });
            }
        }
    }
    let entries: Vec<ControllerEntry> = queue
        .into_iter()
        .map(|it| ControllerEntry {
            bx: it.bx,
            inputs: it.inputs.expect("accepted boxes carry inputs"),
        })
        .collect();
    let cis = union_of(&entries)?;
    let stats = finish_stats(model, &cis, params, pops, 0, start)?;
    Ok(Synthesis {
        cis,
        controller: ControllerTable { entries },
        excluded,
        indeterminate,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ibox(lo: &[f64], hi: &[f64]) -> IntervalBox {
        IntervalBox::new(lo, hi).unwrap()
    }

    fn model(f0: &str, g: &str, omega: Vec<IntervalBox>) -> SystemModel {
        SystemModel::parse(
            &[f0],
            &[vec![g]],
            ibox(&[-1.0], &[1.0]),
            BoxUnion::new(omega).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn stable_shift_keeps_whole_region() {
        let m = model("x1", "1", vec![ibox(&[-1.0], &[1.0])]);
        let p = Params::new(1e-3);
        let one = under_i(m.omega0(), &m, &p).unwrap();
        assert_eq!(one.stats.pops, 1);
        assert_eq!(one.cis.boxes(), m.omega0().boxes());
        let fix = fixpoint(m.omega0(), &m, &p).unwrap();
        assert_eq!(fix.stats.sweeps, 1);
        assert_eq!(fix.controller.len(), 1);
        let acc = accelerated(m.omega0(), &m, &p).unwrap();
        assert_eq!(acc.stats.pops, 1);
        assert_eq!(acc.cis.boxes(), fix.cis.boxes());
    }

    #[test]
    fn empty_region() {
        let m = model("x1", "1", vec![ibox(&[-1.0], &[1.0])]);
        let r = fixpoint(&BoxUnion::empty(), &m, &Params::new(1e-3)).unwrap();
        assert!(r.cis.is_empty());
        assert_eq!(r.stats.pops, 0);
    }

    #[test]
    fn escaping_map_leaves_only_a_neighbourhood_of_zero() {
        // x+ = 2x + 0.1u: only |x| <= 0.1 can be held.
        let m = model("2*x1", "0.1", vec![ibox(&[-1.0], &[1.0])]);
        let p = Params::new(1e-2);
        let fix = fixpoint(m.omega0(), &m, &p).unwrap();
        let acc = accelerated(m.omega0(), &m, &p).unwrap();
        let bb = fix.cis.bounding_box().unwrap();
        assert!(bb.lo()[0] >= -0.1 - 1e-12 && bb.hi()[0] <= 0.1 + 1e-12);
        assert!(fix.cis.volume() > 0.15);
        assert!((fix.cis.volume() - acc.cis.volume()).abs() < 1e-12);
        assert!(acc.stats.pops <= fix.stats.pops);
    }

    #[test]
    fn threads_do_not_change_the_result() {
        let m = model("2*x1", "0.1", vec![ibox(&[-1.0], &[1.0])]);
        let seq = fixpoint(m.omega0(), &m, &Params::new(1e-2)).unwrap();
        let par = fixpoint(
            m.omega0(),
            &m,
            &Params {
                threads: 4,
                ..Params::new(1e-2)
            },
        )
        .unwrap();
        assert_eq!(seq.cis.boxes(), par.cis.boxes());
        assert_eq!(seq.stats.pops, par.stats.pops);
    }

    #[test]
    fn margin_shrinks_the_set() {
        let m = model("2*x1", "0.1", vec![ibox(&[-1.0], &[1.0])]);
        let plain = fixpoint(m.omega0(), &m, &Params::new(1e-2)).unwrap();
        let robust = fixpoint(
            m.omega0(),
            &m,
            &Params {
                margin_r: 0.02,
                ..Params::new(1e-2)
            },
        )
        .unwrap();
        assert!(robust.cis.volume() < plain.cis.volume());
    }

    #[test]
    fn invalid_params() {
        let m = model("x1", "1", vec![ibox(&[-1.0], &[1.0])]);
        assert!(fixpoint(m.omega0(), &m, &Params::new(0.0)).is_err());
        assert!(accelerated(
            m.omega0(),
            &m,
            &Params {
                margin_r: -1.0,
                ..Params::new(1e-3)
            }
        )
        .is_err());
    }
}
