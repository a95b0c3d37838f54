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

//! Control-affine system model `x+ = f0(x) + Σ_i g_i(x) u_i` and the
//! per-box machinery built on it.
//!
//! On a box `[x]` the drift is split as `f0(x) = A x + φ(x)` with `A` the
//! Jacobian at the midpoint, and the remainder is enclosed by the
//! mean-value form. Each input column is split as `g_i([x]) ⊆ s_i ⊕ Ψ_i`
//! with `s_i` the midpoint of its enclosure. These give the polytopes
//!
//! ```text
//! P̄0  = A[x] ⊕ Φ ⊕ ΨU
//! P̄   = P̄0 ⊕ SU
//! P̄_u = P̄0 + Su
//! ```
//!
//! which over-approximate the one-step reachable sets.

use nalgebra::DMatrix;

use crate::expr::{parse_with_dim, Expr, ExprError, InclusionKind};
use crate::geometry::Polytope;
use crate::interval::{BoxUnion, Interval, IntervalBox, IntervalMatrix};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DynamicsError {
    #[error("{what}: {source}")]
    Expr {
        what: String,
        #[source]
        source: ExprError,
    },
    #[error("{0}")]
    Model(String),
    #[error("input {0:?} lies outside U")]
    InputOutsideU(Vec<f64>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

fn in_box(what: &str, b: &IntervalBox) -> impl Fn(ExprError) -> DynamicsError {
    let what = format!("{what} on box {:?}..{:?}", b.lo(), b.hi());
    move |source| DynamicsError::Expr {
        what: what.clone(),
        source,
    }
}

/// Discrete-time control-affine dynamics together with the input box and
/// the region of interest.
#[derive(Debug, Clone)]
pub struct SystemModel {
    n: usize,
    m: usize,
    f0: Vec<Expr>,
    /// Row-major `n × m`; column `i` is `g_i`.
    g: Vec<Vec<Expr>>,
    u: IntervalBox,
    omega0: BoxUnion,
    lipschitz: Option<Vec<f64>>,
}

impl SystemModel {
    pub fn new(
        f0: Vec<Expr>,
        g: Vec<Vec<Expr>>,
        u: IntervalBox,
        omega0: BoxUnion,
    ) -> Result<Self, DynamicsError> {
        let n = f0.len();
        let m = u.dim();
        if n == 0 {
            return Err(DynamicsError::Model("f0: at least one state required".into()));
        }
        if g.len() != n {
            return Err(DynamicsError::DimensionMismatch {
                expected: n,
                got: g.len(),
            });
        }
        if let Some(row) = g.iter().find(|row| row.len() != m) {
            return Err(DynamicsError::DimensionMismatch {
                expected: m,
                got: row.len(),
            });
        }
        if omega0.is_empty() {
            return Err(DynamicsError::Model("omega: at least one box required".into()));
        }
        if omega0.dim() != Some(n) {
            return Err(DynamicsError::DimensionMismatch {
                expected: n,
                got: omega0.dim().unwrap_or(0),
            });
        }
        let too_wide = f0
            .iter()
            .chain(g.iter().flatten())
            .map(Expr::arity)
            .max()
            .unwrap_or(0);
        if too_wide > n {
            return Err(DynamicsError::Model(format!(
                "expression references x{too_wide} but the state has dimension {n}"
            )));
        }
        Ok(Self {
            n,
            m,
            f0,
            g,
            u,
            omega0,
            lipschitz: None,
        })
    }

    /// Builds a model from expression sources. `g` is row-major `n × m`.
    pub fn parse<S: AsRef<str>>(
        f0: &[S],
        g: &[Vec<S>],
        u: IntervalBox,
        omega0: BoxUnion,
    ) -> Result<Self, DynamicsError> {
        let n = f0.len();
        let parse = |what: String, src: &str| {
            parse_with_dim(src, n).map_err(|source| DynamicsError::Expr { what, source })
        };
        let f0 = f0
            .iter()
            .enumerate()
            .map(|(i, s)| parse(format!("f0[{i}]"), s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let g = g
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, s)| parse(format!("g[{i}][{j}]"), s.as_ref()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(f0, g, u, omega0)
    }

    /// Overrides the computed width-bound constants `L̃0..L̃m`.
    pub fn with_lipschitz(mut self, l: Vec<f64>) -> Result<Self, DynamicsError> {
        if l.len() != self.m + 1 {
            return Err(DynamicsError::DimensionMismatch {
                expected: self.m + 1,
                got: l.len(),
            });
        }
        if l.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(DynamicsError::Model(
                "lipschitz: constants must be finite and >= 0".into(),
            ));
        }
        self.lipschitz = Some(l);
        Ok(self)
    }

    #[inline]
    pub fn state_dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn input_dim(&self) -> usize {
        self.m
    }

    pub fn f0(&self) -> &[Expr] {
        &self.f0
    }

    pub fn g(&self) -> &[Vec<Expr>] {
        &self.g
    }

    pub fn input_box(&self) -> &IntervalBox {
        &self.u
    }

    pub fn omega0(&self) -> &BoxUnion {
        &self.omega0
    }

    pub fn lipschitz(&self) -> Option<&[f64]> {
        self.lipschitz.as_deref()
    }

    /// One step of the true dynamics.
    pub fn step(&self, x: &[f64], u: &[f64]) -> Result<Vec<f64>, DynamicsError> {
        if x.len() != self.n {
            return Err(DynamicsError::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        if u.len() != self.m {
            return Err(DynamicsError::DimensionMismatch {
                expected: self.m,
                got: u.len(),
            });
        }
        let wrap = |source| DynamicsError::Expr {
            what: format!("step at {x:?}"),
            source,
        };
        (0..self.n)
            .map(|i| {
                let mut v = self.f0[i].eval_real(x).map_err(wrap)?;
                for (gij, uj) in self.g[i].iter().zip(u) {
                    v += gij.eval_real(x).map_err(wrap)? * uj;
                }
                Ok(v)
            })
            .collect()
    }

    /// Interval data for evaluating `f(·, u)` on one box for many fixed `u`.
    pub fn enclosure(&self, b: &IntervalBox) -> Result<BoxEnclosure, DynamicsError> {
        BoxEnclosure::new(self, b)
    }
}

/// Natural and mean-value ingredients of `f_u(x) = f0(x) + Σ g_i(x) u_i`
/// on a fixed box, reusable across inputs.
#[derive(Debug, Clone)]
pub struct BoxEnclosure {
    f0_nat: Vec<Interval>,
    g_nat: Vec<Vec<Interval>>,
    f0_mid: Vec<Interval>,
    g_mid: Vec<Vec<Interval>>,
    jf0: Vec<Vec<Interval>>,
    /// `jg[i][j]` is the gradient of `g[i][j]`.
    jg: Option<Vec<Vec<Vec<Interval>>>>,
    dev: Vec<Interval>,
}

impl BoxEnclosure {
    fn new(model: &SystemModel, b: &IntervalBox) -> Result<Self, DynamicsError> {
        let mid = b.midpoint();
        let pm = IntervalBox::point(&mid);
        let nat = |e: &Expr, at: &IntervalBox| e.eval_interval(at).map_err(in_box("enclosure", b));
        let f0_nat = model
            .f0
            .iter()
            .map(|e| nat(e, b))
            .collect::<Result<Vec<_>, _>>()?;
        let g_nat = model
            .g
            .iter()
            .map(|row| row.iter().map(|e| nat(e, b)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let f0_mid = model
            .f0
            .iter()
            .map(|e| nat(e, &pm))
            .collect::<Result<Vec<_>, _>>()?;
        let g_mid = model
            .g
            .iter()
            .map(|row| row.iter().map(|e| nat(e, &pm)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let grad = |e: &Expr| e.eval_gradient_interval(b).map(|g| g.intervals().to_vec());
        // Without a gradient the mean-value part is skipped; the natural
        // extension alone is still an enclosure.
        let jf0 = model.f0.iter().map(grad).collect::<Result<Vec<_>, _>>();
        let jg = model
            .g
            .iter()
            .map(|row| row.iter().map(grad).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .ok();
        let (jf0, jg) = match jf0 {
            Ok(j) => (j, jg),
            Err(_) => (Vec::new(), None),
        };
        let dev = b
            .intervals()
            .iter()
            .zip(&mid)
            .map(|(x, &m)| *x - Interval::point(m))
            .collect();
        Ok(Self {
            f0_nat,
            g_nat,
            f0_mid,
            g_mid,
            jf0,
            jg,
            dev,
        })
    }

    /// Enclosure of `{f(x, u) : x ∈ [x]}`: natural form intersected with
    /// the mean-value form.
    pub fn image(&self, u: &[f64]) -> IntervalBox {
        let n = self.f0_nat.len();
        let dims = (0..n)
            .map(|i| {
                let mut natural = self.f0_nat[i];
                for (gij, &uj) in self.g_nat[i].iter().zip(u) {
                    natural = natural + *gij * Interval::point(uj);
                }
                let Some(jg) = &self.jg else {
                    return natural;
                };
                let mut mv = self.f0_mid[i];
                for (gij, &uj) in self.g_mid[i].iter().zip(u) {
                    mv = mv + *gij * Interval::point(uj);
                }
                for (k, dev) in self.dev.iter().enumerate() {
                    let mut d = self.jf0[i][k];
                    for (j, &uj) in u.iter().enumerate() {
                        d = d + jg[i][j][k] * Interval::point(uj);
                    }
                    mv = mv + d * *dev;
                }
                natural.intersect(&mv).unwrap_or(natural)
            })
            .collect();
        IntervalBox::from_intervals(dims)
    }
}

/// Per-box split of the dynamics into affine parts and interval remainders.
#[derive(Debug, Clone)]
pub struct AffineDecomposition {
    pub a: DMatrix<f64>,
    pub phi: IntervalBox,
    pub s: DMatrix<f64>,
    pub psi: IntervalMatrix,
    pub bx: IntervalBox,
}

/// Midpoint linearization of `f0` on `b` with the mean-value remainder
/// `Φ = f0(m) − A m + ([J](b) − A)(b − m)`. Falls back to `A = 0`,
/// `Φ = [f0](b)` when `f0` has no derivative on `b`.
pub fn decompose_f0(
    model: &SystemModel,
    b: &IntervalBox,
) -> Result<(DMatrix<f64>, IntervalBox), DynamicsError> {
    let n = model.n;
    if b.dim() != n {
        return Err(DynamicsError::DimensionMismatch {
            expected: n,
            got: b.dim(),
        });
    }
    let mid = b.midpoint();
    let linear = || -> Result<(DMatrix<f64>, IntervalBox), ExprError> {
        let mut a = DMatrix::zeros(n, n);
        let mut jac = Vec::with_capacity(n);
        for (i, e) in model.f0.iter().enumerate() {
            let row = e.eval_gradient(&mid)?;
            if row.iter().any(|v| !v.is_finite()) {
                return Err(ExprError::NonDifferentiable("non-finite derivative"));
            }
            for (j, v) in row.into_iter().enumerate() {
                a[(i, j)] = v;
            }
            jac.push(e.eval_gradient_interval(b)?);
        }
        let pm = IntervalBox::point(&mid);
        let mut phi = Vec::with_capacity(n);
        for (i, e) in model.f0.iter().enumerate() {
            let mut acc = e.eval_interval(&pm)?;
            for j in 0..n {
                let aij = Interval::point(a[(i, j)]);
                acc = acc - aij * Interval::point(mid[j]);
                let dev = b.get(j) - Interval::point(mid[j]);
                acc = acc + (jac[i].get(j) - aij) * dev;
            }
            phi.push(acc);
        }
        Ok((a, IntervalBox::from_intervals(phi)))
    };
    match linear() {
        Ok(r) => Ok(r),
        Err(_) => {
            let phi = model
                .f0
                .iter()
                .map(|e| e.eval_interval(b))
                .collect::<Result<Vec<_>, _>>()
                .map_err(in_box("f0", b))?;
            Ok((DMatrix::zeros(n, n), IntervalBox::from_intervals(phi)))
        }
    }
}

/// `s_i = mid([g_i](b))` and the centered remainders `Ψ_i = [g_i](b) − s_i`.
pub fn decompose_g(
    model: &SystemModel,
    b: &IntervalBox,
) -> Result<(DMatrix<f64>, IntervalMatrix), DynamicsError> {
    let (n, m) = (model.n, model.m);
    let mut s = DMatrix::zeros(n, m);
    let mut psi = IntervalMatrix::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            let img = model.g[i][j]
                .eval_inclusion(b, InclusionKind::Combined)
                .map_err(in_box("g", b))?;
            let c = img.mid();
            // Round the radius up so the symmetric interval covers both ends.
            let r = (img.hi() - c).max(c - img.lo());
            let r = if r > 0.0 { r.next_up() } else { 0.0 };
            s[(i, j)] = c;
            psi.set(i, j, Interval::symmetric(r));
        }
    }
    Ok((s, psi))
}

pub fn decompose(model: &SystemModel, b: &IntervalBox) -> Result<AffineDecomposition, DynamicsError> {
    let (a, phi) = decompose_f0(model, b)?;
    let (s, psi) = decompose_g(model, b)?;
    Ok(AffineDecomposition {
        a,
        phi,
        s,
        psi,
        bx: b.clone(),
    })
}

/// Width-bound constants `L̃0..L̃m` and `ρ = L̃0 + max_i L̃_i w(U_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthBounds {
    pub ltilde: Vec<f64>,
    pub rho: f64,
}

/// Global width-bound constants on the bounding box of `omega`.
///
/// `L̃0` is the largest row sum of interval-Jacobian widths of `f0`, which
/// bounds `w(Φ)/w([x])` for the mean-value remainder because the midpoint
/// Jacobian lies in the interval Jacobian. `L̃_i` is the ∞-norm of the
/// interval Jacobian magnitude of `g_i`.
pub fn width_bounds(model: &SystemModel, omega: &BoxUnion) -> Result<WidthBounds, DynamicsError> {
    let ltilde = match &model.lipschitz {
        Some(l) => l.clone(),
        None => {
            let bb = omega
                .bounding_box()
                .ok_or_else(|| DynamicsError::Model("omega: empty region".into()))?;
            let bound = |e: &Expr, f: fn(&Interval) -> f64| -> Result<f64, DynamicsError> {
                let j = e.eval_gradient_interval(&bb).map_err(in_box("Jacobian", &bb))?;
                let s: f64 = j.intervals().iter().map(f).sum();
                if s.is_finite() {
                    Ok(s)
                } else {
                    Err(DynamicsError::Model(format!("unbounded Jacobian of {e}")))
                }
            };
            let mut l = vec![0.0f64; model.m + 1];
            for e in &model.f0 {
                l[0] = l[0].max(bound(e, Interval::width)?);
            }
            for row in &model.g {
                for (j, e) in row.iter().enumerate() {
                    l[j + 1] = l[j + 1].max(bound(e, Interval::mag)?);
                }
            }
            l
        }
    };
    let rho = ltilde[0]
        + (0..model.m)
            .map(|i| ltilde[i + 1] * model.u.get(i).width())
            .fold(0.0, f64::max);
    Ok(WidthBounds { ltilde, rho })
}

/// `P̄0 = A[x] ⊕ Φ ⊕ ΨU`.
pub fn reach_p0(dec: &AffineDecomposition, u: &IntervalBox) -> Polytope {
    let ax = Polytope::from_box(&dec.bx).linear_image(&dec.a);
    let psi_u = dec.psi.mul_box(u).expect("input dimension matches Ψ");
    ax.minkowski_sum(&Polytope::from_box(&dec.phi))
        .minkowski_sum(&Polytope::from_box(&psi_u))
}

/// `P̄ = P̄0 ⊕ SU`.
pub fn reach_full(dec: &AffineDecomposition, u: &IntervalBox) -> Polytope {
    let su = Polytope::from_box(u).linear_image(&dec.s);
    reach_p0(dec, u).minkowski_sum(&su)
}

/// `P̄_u = P̄0 + Su` for a fixed input `u ∈ U`.
pub fn reach_fixed(
    dec: &AffineDecomposition,
    ubox: &IntervalBox,
    u: &[f64],
) -> Result<Polytope, DynamicsError> {
    if u.len() != ubox.dim() {
        return Err(DynamicsError::DimensionMismatch {
            expected: ubox.dim(),
            got: u.len(),
        });
    }
    if !ubox.contains_point(u).unwrap_or(false) {
        return Err(DynamicsError::InputOutsideU(u.to_vec()));
    }
    let shift: Vec<f64> = (0..dec.s.nrows())
        .map(|i| (0..dec.s.ncols()).map(|j| dec.s[(i, j)] * u[j]).sum())
        .collect();
    Ok(reach_p0(dec, ubox).translate(&shift))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ibox(lo: &[f64], hi: &[f64]) -> IntervalBox {
        IntervalBox::new(lo, hi).unwrap()
    }

    fn model(f0: &[&str], g: &[Vec<&str>], u: (f64, f64), omega: IntervalBox) -> SystemModel {
        SystemModel::parse(f0, g, ibox(&[u.0], &[u.1]), BoxUnion::single(omega)).unwrap()
    }

    fn shift_1d() -> SystemModel {
        model(&["x1"], &[vec!["1"]], (-1.0, 1.0), ibox(&[-1.0], &[1.0]))
    }

    #[test]
    fn model_validation() {
        let u = ibox(&[-1.0], &[1.0]);
        let om = BoxUnion::single(ibox(&[0.0], &[1.0]));
        assert!(SystemModel::parse(&["x2"], &[vec!["1"]], u.clone(), om.clone()).is_err());
        assert!(SystemModel::parse(&["x1"], &[vec!["1", "2"]], u.clone(), om.clone()).is_err());
        assert!(SystemModel::parse(&["x1"], &[vec!["1"]], u.clone(), BoxUnion::empty()).is_err());
        let m = SystemModel::parse(&["x1"], &[vec!["1"]], u, om).unwrap();
        assert!(m.clone().with_lipschitz(vec![1.0]).is_err());
        assert!(m.with_lipschitz(vec![1.0, 0.0]).is_ok());
    }

    #[test]
    fn step_is_control_affine() {
        let m = model(&["2*x1"], &[vec!["x1"]], (-1.0, 1.0), ibox(&[-1.0], &[1.0]));
        assert_eq!(m.step(&[3.0], &[0.5]).unwrap(), vec![7.5]);
        assert!(m.step(&[3.0, 1.0], &[0.5]).is_err());
    }

    #[test]
    fn linear_drift_has_zero_remainder() {
        let m = SystemModel::parse(
            &["x1 + 0.5*x2", "2*x2"],
            &[vec!["0"], vec!["1"]],
            ibox(&[-1.0], &[1.0]),
            BoxUnion::single(ibox(&[-1.0, -1.0], &[1.0, 1.0])),
        )
        .unwrap();
        let (a, phi) = decompose_f0(&m, &ibox(&[0.0, -0.5], &[0.25, 0.5])).unwrap();
        assert_eq!(a, DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 2.0]));
        assert_eq!(phi.width(), 0.0);
        assert_eq!(phi.lo(), vec![0.0, 0.0]);
    }

    #[test]
    fn sine_remainder_bound() {
        let m = model(&["sin(x1)"], &[vec!["0"]], (-1.0, 1.0), ibox(&[-1.0], &[1.0]));
        let (a, phi) = decompose_f0(&m, &ibox(&[-0.1], &[0.1])).unwrap();
        assert_eq!(a[(0, 0)], 1.0);
        let c = (1.0 - 0.1f64.cos()) * 0.1;
        assert!(phi.get(0).mag() <= c * (1.0 + 1e-9));
        assert!(phi.get(0).mag() >= c * (1.0 - 1e-9));
    }

    #[test]
    fn abs_drift_falls_back_to_zero_matrix() {
        let m = model(&["abs(x1)"], &[vec!["0"]], (-1.0, 1.0), ibox(&[-1.0], &[1.0]));
        let (a, phi) = decompose_f0(&m, &ibox(&[-1.0], &[1.0])).unwrap();
        assert_eq!(a[(0, 0)], 0.0);
        assert_eq!(phi.get(0).lo(), 0.0);
        assert_eq!(phi.get(0).hi(), 1.0);
    }

    #[test]
    fn input_split_examples() {
        let c = model(&["x1"], &[vec!["3"]], (-1.0, 1.0), ibox(&[-1.0], &[1.0]));
        let (s, psi) = decompose_g(&c, &ibox(&[0.0], &[1.0])).unwrap();
        assert_eq!(s[(0, 0)], 3.0);
        assert_eq!(psi.get(0, 0).width(), 0.0);

        let lin = model(&["x1"], &[vec!["x1"]], (-1.0, 1.0), ibox(&[-1.0], &[1.0]));
        let (s, psi) = decompose_g(&lin, &ibox(&[0.0], &[1.0])).unwrap();
        assert_eq!(s[(0, 0)], 0.5);
        assert!((psi.get(0, 0).hi() - 0.5).abs() < 1e-15);
        assert_eq!(psi.get(0, 0).mid(), 0.0);

        let cs = model(&["x1"], &[vec!["cos(x1)"]], (-1.0, 1.0), ibox(&[-1.0], &[1.0]));
        let (s, psi) = decompose_g(&cs, &ibox(&[-0.05], &[0.05])).unwrap();
        let k = 0.05f64.cos();
        assert!((s[(0, 0)] - (1.0 + k) / 2.0).abs() < 1e-11);
        assert!((psi.get(0, 0).hi() - (1.0 - k) / 2.0).abs() < 1e-11);
        assert_eq!(psi.get(0, 0).mid(), 0.0);
    }

    #[test]
    fn width_bounds_examples() {
        let wb = width_bounds(&shift_1d(), shift_1d().omega0()).unwrap();
        assert_eq!(wb.ltilde, vec![0.0, 0.0]);
        assert_eq!(wb.rho, 0.0);

        // |d/dx sin| <= 1 on the box, so the width bound is at most 2.
        let m = model(&["sin(x1)"], &[vec!["x1"]], (-0.5, 0.5), ibox(&[-2.0], &[2.0]));
        let wb = width_bounds(&m, m.omega0()).unwrap();
        assert!(wb.ltilde[0] <= 2.0 + 1e-9);
        assert_eq!(wb.ltilde[1], 1.0);
        assert!((wb.rho - (wb.ltilde[0] + 1.0)).abs() < 1e-15);

        let fixed = m.clone().with_lipschitz(vec![0.5, 2.0]).unwrap();
        assert_eq!(width_bounds(&fixed, fixed.omega0()).unwrap().rho, 2.5);
    }

    #[test]
    fn reach_examples() {
        let m = shift_1d();
        let u = m.input_box().clone();
        let dec = decompose(&m, &ibox(&[0.0], &[1.0])).unwrap();
        let full = reach_full(&dec, &u).bounding_box().unwrap();
        assert_eq!((full.lo()[0], full.hi()[0]), (-1.0, 2.0));
        let p0 = reach_p0(&dec, &u).bounding_box().unwrap();
        assert_eq!((p0.lo()[0], p0.hi()[0]), (0.0, 1.0));
        let fixed = reach_fixed(&dec, &u, &[0.5]).unwrap().bounding_box().unwrap();
        assert_eq!((fixed.lo()[0], fixed.hi()[0]), (0.5, 1.5));
        assert!(matches!(
            reach_fixed(&dec, &u, &[1.5]),
            Err(DynamicsError::InputOutsideU(_))
        ));
    }

    #[test]
    fn reach_p0_box_sum() {
        let dec = AffineDecomposition {
            a: DMatrix::identity(2, 2),
            phi: ibox(&[-0.1, -0.1], &[0.1, 0.1]),
            s: DMatrix::zeros(2, 1),
            psi: IntervalMatrix::zeros(2, 1),
            bx: ibox(&[0.0, 0.0], &[1.0, 1.0]),
        };
        let p = reach_p0(&dec, &ibox(&[-1.0], &[1.0]));
        let bb = p.bounding_box().unwrap();
        assert_eq!(bb.lo(), vec![-0.1, -0.1]);
        assert_eq!(bb.hi(), vec![1.1, 1.1]);
        assert!((p.volume() - 1.44).abs() < 1e-12);
    }

    #[test]
    fn enclosure_contains_samples() {
        let m = model(
            &["x1 + 0.1*sin(x1)"],
            &[vec!["cos(x1)"]],
            (-1.0, 1.0),
            ibox(&[-1.0], &[1.0]),
        );
        let b = ibox(&[0.2], &[0.4]);
        let enc = m.enclosure(&b).unwrap();
        for u in [-1.0, -0.3, 0.0, 0.7, 1.0] {
            let img = enc.image(&[u]);
            for k in 0..=20 {
                let x = 0.2 + 0.01 * k as f64;
                assert!(img.get(0).contains(m.step(&[x], &[u]).unwrap()[0]));
            }
        }
    }
}
