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

//! Independent oracles shared by the integration tests and the acceptance
//! target. Each `check_*` returns a one-line summary on success and a
//! description of the first violation otherwise.

#![allow(dead_code)]

use std::path::PathBuf;

use cis_core::algorithms::{brute_force_cis, ControllerTable};
use cis_core::config::RunConfig;
use cis_core::dynamics::{decompose, reach_fixed, width_bounds, SystemModel};
use cis_core::expr::{parse_with_dim, InclusionKind};
use cis_core::geometry::{
    insertion_set, intersects, intersects_by_halfspaces, overlap_set, set_difference, Polytope,
};
use cis_core::interval::{BoxUnion, IntervalBox};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<String, String>;

/// Proptest settings without on-disk regression files.
pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        failure_persistence: None,
        ..Default::default()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ibox(lo: &[f64], hi: &[f64]) -> IntervalBox {
    IntervalBox::new(lo, hi).unwrap()
}

// ---------------------------------------------------------------- systems

pub fn config_path(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name]
        .iter()
        .collect()
}

pub fn load_config(name: &str) -> RunConfig {
    RunConfig::load(config_path(name)).unwrap()
}

pub fn pendulum() -> SystemModel {
    load_config("pendulum.toml").model().unwrap()
}

/// `x+ = 2x + u`, `|u| ≤ 0.5`, on `[-1, 1]`; the largest invariant set is `[-0.5, 0.5]`.
pub fn unstable_1d() -> SystemModel {
    load_config("unstable.toml").model().unwrap()
}

/// Random two-state, one-input system with polynomial and trigonometric drift.
pub fn random_system(seed: u64) -> SystemModel {
    let mut r = rng(seed);
    let a: f64 = r.gen_range(-0.3..0.3);
    let b: f64 = r.gen_range(0.5..2.0);
    let c: f64 = r.gen_range(0.0..1.0);
    let d: f64 = r.gen_range(-0.5..0.5);
    let e: f64 = r.gen_range(-0.2..0.2);
    let f0 = [
        format!("x1 + 0.1*x2 + ({a})*x1^2"),
        format!("x2 + 0.1*(({b})*sin(x1) - ({c})*x2 + ({e})*x1*x2)"),
    ];
    let g = [vec!["0".to_string()], vec![format!("0.1*(1 + ({d})*cos(x1))")]];
    let omega = BoxUnion::single(ibox(&[-0.5, -0.5], &[0.5, 0.5]));
    SystemModel::parse(&f0, &g, ibox(&[-1.0], &[1.0]), omega).unwrap()
}

pub fn random_subbox(r: &mut ChaCha8Rng, outer: &IntervalBox, min_frac: f64) -> IntervalBox {
    let (mut lo, mut hi) = (Vec::new(), Vec::new());
    for iv in outer.intervals() {
        let w = iv.width() * r.gen_range(min_frac..=1.0);
        let a = iv.lo() + r.gen_range(0.0..=1.0) * (iv.width() - w);
        lo.push(a);
        hi.push((a + w).min(iv.hi()));
    }
    ibox(&lo, &hi)
}

pub fn sample_box(r: &mut ChaCha8Rng, b: &IntervalBox) -> Vec<f64> {
    b.intervals()
        .iter()
        .map(|iv| iv.lo() + r.gen::<f64>() * iv.width())
        .collect()
}

// --------------------------------------------------------------- geometry

/// Random polygon around a centre drawn from `[-spread, spread]²`.
fn random_polygon(r: &mut ChaCha8Rng, spread: f64, radius: f64) -> Polytope {
    let centre = [r.gen_range(-spread..=spread), r.gen_range(-spread..=spread)];
    loop {
        let k = r.gen_range(3..9);
        let pts: Vec<Vec<f64>> = (0..k)
            .map(|_| {
                let t = r.gen_range(0.0..std::f64::consts::TAU);
                let s = radius * r.gen_range(0.2..1.0f64);
                vec![centre[0] + s * t.cos(), centre[1] + s * t.sin()]
            })
            .collect();
        let p = Polytope::from_points(2, &pts);
        if p.is_full_dim() {
            return p;
        }
    }
}

fn random_polytope_3d(r: &mut ChaCha8Rng, spread: f64, radius: f64) -> Polytope {
    let centre: Vec<f64> = (0..3).map(|_| r.gen_range(-spread..=spread)).collect();
    loop {
        let pts: Vec<Vec<f64>> = (0..r.gen_range(4..10))
            .map(|_| {
                (0..3)
                    .map(|k| centre[k] + radius * r.gen_range(-1.0..1.0))
                    .collect()
            })
            .collect();
        let p = Polytope::from_points(3, &pts);
        if p.is_full_dim() {
            return p;
        }
    }
}

/// `min_j (b_j − h_j·x)` over the unit-normalised rows: positive inside.
fn slack(p: &Polytope, x: &[f64]) -> f64 {
    p.rows()
        .map(|(h, b)| b - h.iter().zip(x).map(|(a, c)| a * c).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// Largest violation of `q`'s inequalities by the vertices of `p + t`.
fn translate_violation(p: &Polytope, t: &[f64], q: &Polytope) -> f64 {
    p.vertices()
        .iter()
        .map(|v| -slack(q, &[v[0] + t[0], v[1] + t[1]]))
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn check_insertion_set(pairs: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let (mut inside, mut outside) = (0, 0);
    let mut done = 0;
    while done < pairs {
        let p = random_polygon(&mut r, 1.0, 0.4);
        let q = random_polygon(&mut r, 1.0, 1.5);
        let t = insertion_set(&p, &q);
        if !t.is_full_dim() {
            continue;
        }
        done += 1;
        let bb = t.bounding_box().unwrap().inflate(1e-3);
        let (mut ni, mut no, mut tries) = (0, 0, 0);
        while (ni < 50 || no < 50) && tries < 2_000_000 {
            tries += 1;
            let x = sample_box(&mut r, &bb);
            let s = slack(&t, &x);
            if s >= 0.0 && ni < 50 {
                ni += 1;
                let v = translate_violation(&p, &x, &q);
                if v > 1e-9 {
                    return Err(format!(
                        "translation {x:?} inside the insertion set violates q by {v:e}"
                    ));
                }
            } else if s < -1e-7 && s > -1e-3 && no < 50 {
                no += 1;
                if translate_violation(&p, &x, &q) <= 0.0 {
                    return Err(format!(
                        "translation {x:?} outside the insertion set keeps p inside q"
                    ));
                }
            }
        }
        inside += ni;
        outside += no;
    }
    Ok(format!(
        "{pairs} pairs, {inside} inside and {outside} near-outside translations"
    ))
}

fn mutually_contained(a: &Polytope, b: &Polytope, tol: f64) -> bool {
    a.vertices().iter().all(|v| b.contains_point(v, tol))
        && b.vertices().iter().all(|v| a.contains_point(v, tol))
}

pub fn check_overlap_set(pairs: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let neg2 = DMatrix::from_diagonal_element(2, 2, -1.0);
    for _ in 0..pairs {
        let p = random_polygon(&mut r, 1.0, 1.0);
        let q = random_polygon(&mut r, 1.0, 1.0);
        let got = overlap_set(&p, &q);
        let want = q.minkowski_sum(&p.linear_image(&neg2));
        if !mutually_contained(&got, &want, 1e-9) {
            return Err(format!(
                "2-D overlap set differs from q ⊕ (−p) for p = {:?}, q = {:?}",
                p.vertices(),
                q.vertices()
            ));
        }
    }
    // In 3-D the stacked rows may only over-approximate.
    let neg3 = DMatrix::from_diagonal_element(3, 3, -1.0);
    for _ in 0..pairs / 4 {
        let p = random_polytope_3d(&mut r, 0.0, 1.0);
        let q = random_polytope_3d(&mut r, 0.5, 1.0);
        let got = overlap_set(&p, &q);
        let want = q.minkowski_sum(&p.linear_image(&neg3));
        if !want.vertices().iter().all(|v| got.contains_point(v, 1e-9)) {
            return Err("3-D overlap set misses part of q ⊕ (−p)".into());
        }
    }
    Ok(format!(
        "{pairs} 2-D pairs equal, {} 3-D pairs enclose q ⊕ (−p)",
        pairs / 4
    ))
}

/// LP feasibility of `H_p x ≤ b_p + δ`, `H_q x ≤ b_q + δ`.
fn lp_intersects(p: &Polytope, q: &Polytope, delta: f64) -> bool {
    use minilp::{ComparisonOp, OptimizationDirection, Problem};
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = (0..p.dim()).map(|_| lp.add_var(0.0, (-100.0, 100.0))).collect();
    for poly in [p, q] {
        for (h, b) in poly.rows() {
            let row: Vec<_> = vars.iter().copied().zip(h.iter().copied()).collect();
            lp.add_constraint(&row[..], ComparisonOp::Le, b + delta);
        }
    }
    lp.solve().is_ok()
}

pub fn check_intersects_lp(pairs: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let (mut hits, mut boundary) = (0, 0);
    for i in 0..pairs {
        let (p, q) = if i % 2 == 0 {
            let p = random_polygon(&mut r, 0.0, 1.0);
            (p, random_polygon(&mut r, 2.5, 1.0))
        } else {
            let p = random_polytope_3d(&mut r, 0.0, 1.0);
            (p, random_polytope_3d(&mut r, 2.0, 1.0))
        };
        let loose = lp_intersects(&p, &q, 1e-7);
        let tight = lp_intersects(&p, &q, -1e-7);
        if loose != tight {
            boundary += 1;
            continue;
        }
        let got = intersects(&p, &q);
        if got != loose {
            return Err(format!("intersects = {got}, LP = {loose} for pair {i}"));
        }
        hits += got as usize;
    }
    Ok(format!(
        "{pairs} pairs agree with the LP ({hits} intersecting, {boundary} within 1e-7 of touching)"
    ))
}

pub fn check_halfspace_criterion(pairs: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let mut hits = 0;
    for i in 0..pairs {
        let p = random_polygon(&mut r, 0.0, 1.0);
        let q = random_polygon(&mut r, 2.5, 1.0);
        let a = intersects_by_halfspaces(&p, &q);
        let b = intersects(&p, &q);
        if a != b {
            return Err(format!(
                "separation criterion = {a}, stacked test = {b} for pair {i}"
            ));
        }
        hits += a as usize;
    }
    Ok(format!("{pairs} 2-D pairs agree ({hits} intersecting)"))
}

pub fn check_set_difference(points: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let mut cases = 0;
    let mut tested = 0;
    let mut skipped = 0;
    while tested < points {
        cases += 1;
        let (p, qs) = if cases % 3 == 0 {
            let p = random_polytope_3d(&mut r, 0.0, 1.0);
            let qs: Vec<_> = (0..r.gen_range(1..3))
                .map(|_| random_polytope_3d(&mut r, 1.0, 0.8))
                .collect();
            (p, qs)
        } else {
            let p = random_polygon(&mut r, 0.0, 1.0);
            let qs: Vec<_> = (0..r.gen_range(1..4))
                .map(|_| random_polygon(&mut r, 1.0, 0.7))
                .collect();
            (p, qs)
        };
        let diff = set_difference(&p, &qs);
        let bb = p.bounding_box().unwrap().inflate(0.1);
        for _ in 0..100 {
            let x = sample_box(&mut r, &bb);
            let sp = slack(&p, &x);
            let sq: Vec<f64> = qs.iter().map(|q| slack(q, &x)).collect();
            if sp.abs() <= 1e-9 || sq.iter().any(|s| s.abs() <= 1e-9) {
                skipped += 1;
                continue;
            }
            let want = sp > 0.0 && sq.iter().all(|&s| s < 0.0);
            let got = diff.contains_point(&x, 1e-9);
            if got != want {
                return Err(format!(
                    "point {x:?}: difference says {got}, definition says {want}"
                ));
            }
            tested += 1;
        }
    }
    Ok(format!(
        "{tested} points over {cases} cases, {skipped} within 1e-9 of a boundary"
    ))
}

// ------------------------------------------------------------ expressions

fn constant(r: &mut ChaCha8Rng) -> String {
    format!("({:.3})", r.gen_range(-2.0..2.0))
}

/// Random expression over `x1, x2`. With `smooth` only everywhere-analytic
/// operations are produced.
pub fn random_expr(r: &mut ChaCha8Rng, depth: u32, smooth: bool) -> String {
    if depth == 0 || r.gen_bool(0.2) {
        return match r.gen_range(0..3) {
            0 => "x1".into(),
            1 => "x2".into(),
            _ => constant(r),
        };
    }
    let sub = |r: &mut ChaCha8Rng| random_expr(r, depth - 1, smooth);
    let choice = r.gen_range(0..if smooth { 11 } else { 15 });
    match choice {
        0 => format!("{} + {}", sub(r), sub(r)),
        1 => format!("{} - {}", sub(r), sub(r)),
        2 | 3 => format!("({})*({})", sub(r), sub(r)),
        4 => format!("sin({})", sub(r)),
        5 => format!("cos({})", sub(r)),
        6 => format!("exp(0.3*({}))", sub(r)),
        7 => format!("({})^{}", sub(r), r.gen_range(2..4)),
        8 => format!("sqrt(1 + ({})^2)", sub(r)),
        9 => format!("({})/(2 + sin({}))", sub(r), sub(r)),
        10 => format!("log(2 + cos({}))", sub(r)),
        11 => format!("abs({})", sub(r)),
        12 => format!("({})/({})", sub(r), sub(r)),
        13 => format!("sqrt({})", sub(r)),
        _ => format!("tan(0.5*sin({}))", sub(r)),
    }
}

pub fn check_expr_soundness(exprs: usize, points: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let domain = ibox(&[-2.0, -2.0], &[2.0, 2.0]);
    let (mut evaluated, mut undefined) = (0, 0);
    while evaluated < exprs {
        let src = random_expr(&mut r, 4, false);
        let e = parse_with_dim(&src, 2).map_err(|err| format!("{src}: {err}"))?;
        let b = random_subbox(&mut r, &domain, 0.01);
        let kinds = [
            InclusionKind::Natural,
            InclusionKind::MeanValue,
            InclusionKind::Combined,
        ];
        let encl: Vec<_> = kinds.iter().map(|&k| e.eval_inclusion(&b, k).ok()).collect();
        let Some(nat) = encl[0] else {
            undefined += 1;
            continue;
        };
        evaluated += 1;
        for _ in 0..points {
            let x = sample_box(&mut r, &b);
            let v = e
                .eval_real(&x)
                .map_err(|err| format!("{src} at {x:?}: {err}, but the enclosure {nat:?} exists"))?;
            for (k, iv) in kinds.iter().zip(&encl) {
                if let Some(iv) = iv {
                    if !iv.contains(v) {
                        return Err(format!("{src} at {x:?} = {v} not in {k:?} enclosure {iv:?}"));
                    }
                }
            }
        }
    }
    Ok(format!(
        "{evaluated} expressions × {points} points contained ({undefined} more were undefined on their box)"
    ))
}

pub fn check_gradients(exprs: usize, points: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let h = 1e-6;
    let mut worst = 0.0f64;
    for _ in 0..exprs {
        let src = random_expr(&mut r, 4, true);
        let e = parse_with_dim(&src, 2).unwrap();
        for _ in 0..points {
            let x = vec![r.gen_range(-1.5..1.5), r.gen_range(-1.5..1.5)];
            let g = e.eval_gradient(&x).map_err(|err| format!("{src}: {err}"))?;
            let fx = e.eval_real(&x).unwrap().abs();
            for k in 0..2 {
                let (mut a, mut b) = (x.clone(), x.clone());
                a[k] += h;
                b[k] -= h;
                let fd = (e.eval_real(&a).unwrap() - e.eval_real(&b).unwrap()) / (2.0 * h);
                let rel = (g[k] - fd).abs() / g[k].abs().max(fx).max(1.0);
                worst = worst.max(rel);
                if rel > 1e-5 {
                    return Err(format!(
                        "{src} at {x:?}: ∂{k} = {} vs central difference {fd}",
                        g[k]
                    ));
                }
            }
        }
    }
    Ok(format!(
        "{exprs} expressions × {points} points, worst relative error {worst:.1e}"
    ))
}

pub fn check_interval_gradients(exprs: usize, points: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let domain = ibox(&[-2.0, -2.0], &[2.0, 2.0]);
    let mut evaluated = 0;
    while evaluated < exprs {
        let smooth = r.gen_bool(0.5);
        let src = random_expr(&mut r, 4, smooth);
        let e = parse_with_dim(&src, 2).unwrap();
        let b = random_subbox(&mut r, &domain, 0.01);
        let Ok(gi) = e.eval_gradient_interval(&b) else {
            continue;
        };
        evaluated += 1;
        for _ in 0..points {
            let x = sample_box(&mut r, &b);
            let Ok(g) = e.eval_gradient(&x) else {
                continue;
            };
            for (k, gk) in g.iter().enumerate() {
                if !gi.get(k).contains(*gk) {
                    return Err(format!("{src} at {x:?}: ∂{k} = {gk} outside {:?}", gi.get(k)));
                }
            }
        }
    }
    Ok(format!(
        "{evaluated} expressions × {points} points inside the interval gradient"
    ))
}

// --------------------------------------------------------------- dynamics

fn inf_dist_to_box(v: &[f64], b: &IntervalBox) -> f64 {
    v.iter()
        .zip(b.intervals())
        .map(|(&x, iv)| (iv.lo() - x).max(x - iv.hi()).max(0.0))
        .fold(0.0, f64::max)
}

/// Lower and upper inclusion of the fixed-input reach set on `boxes` random
/// sub-boxes of the model's region.
pub fn check_sandwich(model: &SystemModel, boxes: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let omega = model.omega0().bounding_box().unwrap();
    let rho = width_bounds(model, model.omega0())
        .map_err(|e| e.to_string())?
        .rho;
    let ubox = model.input_box().clone();
    let mut worst = 0.0f64;
    for _ in 0..boxes {
        let b = random_subbox(&mut r, &omega, 0.05);
        let dec = decompose(model, &b).map_err(|e| e.to_string())?;
        let u = sample_box(&mut r, &ubox);
        let pu = reach_fixed(&dec, &ubox, &u).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let x = sample_box(&mut r, &b);
            let y = model.step(&x, &u).unwrap();
            if !pu.contains_point(&y, 1e-9) {
                return Err(format!("f({x:?}, {u:?}) = {y:?} outside the enclosure on {b:?}"));
            }
        }
        // Image cloud on a 100 × ... grid including the box corners.
        let n = b.dim();
        let per = (10_000f64.powf(1.0 / n as f64)).round() as usize;
        let mut lo = vec![f64::INFINITY; n];
        let mut hi = vec![f64::NEG_INFINITY; n];
        for idx in 0..per.pow(n as u32) {
            let mut k = idx;
            let x: Vec<f64> = b
                .intervals()
                .iter()
                .map(|iv| {
                    let t = (k % per) as f64 / (per - 1) as f64;
                    k /= per;
                    iv.lo() + t * iv.width()
                })
                .collect();
            let y = model.step(&x, &u).unwrap();
            for d in 0..n {
                lo[d] = lo[d].min(y[d]);
                hi[d] = hi[d].max(y[d]);
            }
        }
        let cloud = ibox(&lo, &hi);
        let allowed = rho * b.width() + 1e-6;
        for v in pu.vertices() {
            let d = inf_dist_to_box(v, &cloud);
            worst = worst.max(d / allowed);
            if d > allowed {
                return Err(format!(
                    "vertex {v:?} is {d:e} from the image, allowed {allowed:e} on {b:?}"
                ));
            }
        }
    }
    Ok(format!(
        "{boxes} boxes × 1000 samples, worst upper slack use {:.0}%",
        100.0 * worst
    ))
}

pub fn check_width_bound(model: &SystemModel, boxes: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let omega = model.omega0().bounding_box().unwrap();
    let wb = width_bounds(model, model.omega0()).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for _ in 0..boxes {
        let b = random_subbox(&mut r, &omega, 1e-4);
        let dec = decompose(model, &b).map_err(|e| e.to_string())?;
        let w = b.width();
        let slack = |bound: f64| bound * w * (1.0 + 1e-9) + 1e-15;
        let wphi = dec.phi.width();
        worst = worst.max(wphi / (wb.ltilde[0] * w));
        if wphi > slack(wb.ltilde[0]) {
            return Err(format!(
                "w(Φ) = {wphi:e} > L̃0·w = {:e} on {b:?}",
                wb.ltilde[0] * w
            ));
        }
        for i in 0..model.input_dim() {
            let wpsi = dec.psi.column(i).iter().map(|iv| iv.width()).fold(0.0, f64::max);
            if wpsi > slack(wb.ltilde[i + 1]) {
                return Err(format!("w(Ψ{i}) = {wpsi:e} > L̃{}·w on {b:?}", i + 1));
            }
            if dec.psi.column(i).iter().any(|iv| iv.mid() != 0.0) {
                return Err(format!("Ψ{i} is not centred on {b:?}"));
            }
        }
    }
    Ok(format!("{boxes} sub-boxes, largest w(Φ)/(L̃0·w) = {worst:.3}"))
}

// ------------------------------------------------------------- synthesis

/// Volume of the symmetric difference of two box unions.
pub fn symmetric_difference_volume(a: &BoxUnion, b: &BoxUnion) -> f64 {
    let minus = |x: &BoxUnion, y: &BoxUnion| {
        let mut rest = x.clone();
        for bx in y.boxes() {
            rest = rest.subtract(bx).unwrap();
        }
        rest.volume()
    };
    minus(a, b) + minus(b, a)
}

/// Every returned box lies in the brute-force region inflated by one grid
/// cell plus `rho·epsilon`.
pub fn check_containment(
    model: &SystemModel,
    cis: &BoxUnion,
    shape: &[usize],
    inputs: usize,
    epsilon: f64,
) -> Check {
    let grid = brute_force_cis(model, shape, inputs);
    let rho = width_bounds(model, model.omega0())
        .map_err(|e| e.to_string())?
        .rho;
    let cell = grid.cell.iter().copied().fold(0.0, f64::max);
    let margin = cell + rho * epsilon;
    for b in cis.boxes() {
        if !grid.covers_inflated(b, margin) {
            return Err(format!(
                "{b:?} is not covered by the oracle inflated by {margin:e}"
            ));
        }
    }
    let total: usize = shape.iter().product();
    Ok(format!(
        "{} boxes inside the oracle ({} of {total} cells alive, margin {margin:.2e})",
        cis.len(),
        grid.alive_count()
    ))
}

/// Samples states and inputs from every controller entry and checks that
/// the successor lands in `target`.
pub fn check_inside_soundness(
    model: &SystemModel,
    table: &ControllerTable,
    target: &BoxUnion,
    samples: usize,
    seed: u64,
) -> Check {
    let mut r = rng(seed);
    for entry in &table.entries {
        for _ in 0..samples {
            let x = sample_box(&mut r, &entry.bx);
            let parts = entry.inputs.parts();
            let poly = &parts[r.gen_range(0..parts.len())];
            let vs = poly.vertices();
            let w: Vec<f64> = (0..vs.len()).map(|_| r.gen::<f64>()).collect();
            let s: f64 = w.iter().sum();
            let u: Vec<f64> = (0..poly.dim())
                .map(|k| vs.iter().zip(&w).map(|(v, wi)| v[k] * wi / s).sum())
                .collect();
            let y = model.step(&x, &u).unwrap();
            if target.depth(&y) < -1e-9 {
                return Err(format!("f({x:?}, {u:?}) = {y:?} leaves the set"));
            }
        }
    }
    Ok(format!(
        "{} entries × {samples} samples land in the set",
        table.entries.len()
    ))
}
