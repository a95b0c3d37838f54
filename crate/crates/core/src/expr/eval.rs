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

//! Evaluation of expressions in several arithmetics.

use serde::{Deserialize, Serialize};

use super::{Expr, ExprError, Func};
use crate::interval::{Interval, IntervalBox};

/// Which interval enclosure to use for an expression over a box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InclusionKind {
    /// Interval arithmetic applied node by node.
    #[default]
    Natural,
    /// `f(mid) + [∇f]([x]) · ([x] − mid)`.
    MeanValue,
    /// Intersection of the natural and mean-value enclosures; falls back to
    /// the natural enclosure when the gradient cannot be enclosed.
    Combined,
}

/// Arithmetic an expression can be evaluated in.
trait Scalar: Clone {
    fn constant(c: f64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self) -> Result<Self, ExprError>;
    fn powi(&self, k: i32) -> Result<Self, ExprError>;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn tan(&self) -> Result<Self, ExprError>;
    fn exp(&self) -> Self;
    fn ln(&self) -> Result<Self, ExprError>;
    fn sqrt(&self) -> Result<Self, ExprError>;
    fn abs(&self) -> Result<Self, ExprError>;
    /// Derivative of `abs` at `self`.
    fn sign(&self) -> Result<Self, ExprError>;
}

impl Scalar for f64 {
    fn constant(c: f64) -> Self {
        c
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, o: &Self) -> Result<Self, ExprError> {
        if *o == 0.0 {
            Err(ExprError::Domain("division by zero".into()))
        } else {
            Ok(self / o)
        }
    }
    fn powi(&self, k: i32) -> Result<Self, ExprError> {
        if k < 0 && *self == 0.0 {
            return Err(ExprError::Domain("negative power of zero".into()));
        }
        Ok(f64::powi(*self, k))
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn tan(&self) -> Result<Self, ExprError> {
        Ok(f64::tan(*self))
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Result<Self, ExprError> {
        if *self <= 0.0 {
            Err(ExprError::Domain(format!("log of non-positive value {self}")))
        } else {
            Ok(f64::ln(*self))
        }
    }
    fn sqrt(&self) -> Result<Self, ExprError> {
        if *self < 0.0 {
            Err(ExprError::Domain(format!("sqrt of negative value {self}")))
        } else {
            Ok(f64::sqrt(*self))
        }
    }
    fn abs(&self) -> Result<Self, ExprError> {
        Ok(f64::abs(*self))
    }
    fn sign(&self) -> Result<Self, ExprError> {
        if *self == 0.0 {
            Err(ExprError::NonDifferentiable("abs"))
        } else {
            Ok(self.signum())
        }
    }
}

impl Scalar for Interval {
    fn constant(c: f64) -> Self {
        Interval::point(c)
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn div(&self, o: &Self) -> Result<Self, ExprError> {
        Ok(self.checked_div(o)?)
    }
    fn powi(&self, k: i32) -> Result<Self, ExprError> {
        Ok(Interval::powi(self, k)?)
    }
    fn sin(&self) -> Self {
        Interval::sin(self)
    }
    fn cos(&self) -> Self {
        Interval::cos(self)
    }
    fn tan(&self) -> Result<Self, ExprError> {
        Ok(Interval::tan(self)?)
    }
    fn exp(&self) -> Self {
        Interval::exp(self)
    }
    fn ln(&self) -> Result<Self, ExprError> {
        Ok(Interval::ln(self)?)
    }
    fn sqrt(&self) -> Result<Self, ExprError> {
        Ok(Interval::sqrt(self)?)
    }
    fn abs(&self) -> Result<Self, ExprError> {
        Ok(Interval::abs(self))
    }
    fn sign(&self) -> Result<Self, ExprError> {
        // Clarke generalized gradient of |x|; keeps mean-value forms sound
        // across the kink.
        Ok(self.sign_hull())
    }
}

/// Forward-mode dual number. An empty derivative vector stands for zero.
#[derive(Clone, Debug)]
struct Dual<T> {
    v: T,
    d: Vec<T>,
}

impl<T: Scalar> Dual<T> {
    fn zip(&self, o: &Self, f: impl Fn(&T, &T) -> T, g: impl Fn(&T) -> T, h: impl Fn(&T) -> T) -> Vec<T> {
        match (self.d.is_empty(), o.d.is_empty()) {
            (true, true) => Vec::new(),
            (false, true) => self.d.iter().map(g).collect(),
            (true, false) => o.d.iter().map(h).collect(),
            (false, false) => self.d.iter().zip(&o.d).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn chain(&self, v: T, slope: T) -> Self {
        Dual {
            v,
            d: self.d.iter().map(|x| x.mul(&slope)).collect(),
        }
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn constant(c: f64) -> Self {
        Dual {
            v: T::constant(c),
            d: Vec::new(),
        }
    }
    fn add(&self, o: &Self) -> Self {
        Dual {
            v: self.v.add(&o.v),
            d: self.zip(o, |a, b| a.add(b), T::clone, T::clone),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Dual {
            v: self.v.sub(&o.v),
            d: self.zip(o, |a, b| a.sub(b), T::clone, T::neg),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Dual {
            v: self.v.mul(&o.v),
            d: self.zip(
                o,
                |a, b| a.mul(&o.v).add(&b.mul(&self.v)),
                |a| a.mul(&o.v),
                |b| b.mul(&self.v),
            ),
        }
    }
    fn neg(&self) -> Self {
        Dual {
            v: self.v.neg(),
            d: self.d.iter().map(T::neg).collect(),
        }
    }
    fn div(&self, o: &Self) -> Result<Self, ExprError> {
        let q = self.v.div(&o.v)?;
        if self.d.is_empty() && o.d.is_empty() {
            return Ok(Dual { v: q, d: Vec::new() });
        }
        let d = self
            .zip(o, |a, b| a.sub(&q.mul(b)), T::clone, |b| q.mul(b).neg())
            .iter()
            .map(|x| x.div(&o.v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Dual { v: q, d })
    }
    fn powi(&self, k: i32) -> Result<Self, ExprError> {
        if k == 0 {
            return Ok(Self::constant(1.0));
        }
        let v = self.v.powi(k)?;
        let slope = self.v.powi(k - 1)?.mul(&T::constant(k as f64));
        Ok(self.chain(v, slope))
    }
    fn sin(&self) -> Self {
        self.chain(self.v.sin(), self.v.cos())
    }
    fn cos(&self) -> Self {
        self.chain(self.v.cos(), self.v.sin().neg())
    }
    fn tan(&self) -> Result<Self, ExprError> {
        let t = self.v.tan()?;
        let slope = T::constant(1.0).add(&t.mul(&t));
        Ok(self.chain(t, slope))
    }
    fn exp(&self) -> Self {
        let e = self.v.exp();
        self.chain(e.clone(), e)
    }
    fn ln(&self) -> Result<Self, ExprError> {
        let l = self.v.ln()?;
        let slope = T::constant(1.0).div(&self.v)?;
        Ok(self.chain(l, slope))
    }
    fn sqrt(&self) -> Result<Self, ExprError> {
        let s = self.v.sqrt()?;
        if self.d.is_empty() {
            return Ok(Dual { v: s, d: Vec::new() });
        }
        let slope = T::constant(0.5)
            .div(&s)
            .map_err(|_| ExprError::NonDifferentiable("sqrt"))?;
        Ok(self.chain(s, slope))
    }
    fn abs(&self) -> Result<Self, ExprError> {
        let v = self.v.abs()?;
        if self.d.is_empty() {
            return Ok(Dual { v, d: Vec::new() });
        }
        Ok(self.chain(v, self.v.sign()?))
    }
    fn sign(&self) -> Result<Self, ExprError> {
        Ok(Dual {
            v: self.v.sign()?,
            d: Vec::new(),
        })
    }
}

fn eval<T: Scalar>(e: &Expr, vars: &[T]) -> Result<T, ExprError> {
    Ok(match e {
        Expr::Const(c) => T::constant(*c),
        Expr::Var(i) => vars[*i].clone(),
        Expr::Neg(a) => eval(a, vars)?.neg(),
        Expr::Add(a, b) => eval(a, vars)?.add(&eval(b, vars)?),
        Expr::Sub(a, b) => eval(a, vars)?.sub(&eval(b, vars)?),
        Expr::Mul(a, b) => eval(a, vars)?.mul(&eval(b, vars)?),
        Expr::Div(a, b) => eval(a, vars)?.div(&eval(b, vars)?)?,
        Expr::Pow(a, k) => eval(a, vars)?.powi(*k)?,
        Expr::Call(f, a) => {
            let x = eval(a, vars)?;
            match f {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Tan => x.tan()?,
                Func::Exp => x.exp(),
                Func::Log => x.ln()?,
                Func::Sqrt => x.sqrt()?,
                Func::Abs => x.abs()?,
            }
        }
    })
}

fn seeds<T: Scalar>(values: Vec<T>) -> Vec<Dual<T>> {
    let n = values.len();
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| Dual {
            v,
            d: (0..n)
                .map(|j| T::constant(if i == j { 1.0 } else { 0.0 }))
                .collect(),
        })
        .collect()
}

impl Expr {
    fn check_bindings(&self, got: usize) -> Result<(), ExprError> {
        let expected = self.arity();
        if got < expected {
            Err(ExprError::Bindings { expected, got })
        } else {
            Ok(())
        }
    }

    /// Point evaluation in IEEE double arithmetic.
    pub fn eval_real(&self, x: &[f64]) -> Result<f64, ExprError> {
        self.check_bindings(x.len())?;
        let v = eval(self, x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ExprError::Domain(format!("non-finite result {v}")))
        }
    }

    /// Natural interval extension over a box.
    pub fn eval_interval(&self, b: &IntervalBox) -> Result<Interval, ExprError> {
        self.check_bindings(b.dim())?;
        eval(self, b.intervals())
    }

    /// Enclosure of the image of `b` using the requested inclusion function.
    pub fn eval_inclusion(&self, b: &IntervalBox, kind: InclusionKind) -> Result<Interval, ExprError> {
        match kind {
            InclusionKind::Natural => self.eval_interval(b),
            InclusionKind::MeanValue => self.eval_mean_value(b),
            InclusionKind::Combined => {
                let natural = self.eval_interval(b)?;
                match self.eval_mean_value(b) {
                    // Both enclose the true range, so they always meet.
                    Ok(mv) => Ok(natural.intersect(&mv).unwrap_or(natural)),
                    Err(_) => Ok(natural),
                }
            }
        }
    }

    /// Mean-value form `f(m) + Σ_j [∂_j f]([x]) ([x_j] − m_j)` with `m`
    /// the midpoint of `b`.
    pub fn eval_mean_value(&self, b: &IntervalBox) -> Result<Interval, ExprError> {
        let mid = b.midpoint();
        let center = self.eval_interval(&IntervalBox::point(&mid))?;
        let grad = self.eval_gradient_interval(b)?;
        Ok(grad
            .intervals()
            .iter()
            .zip(b.intervals())
            .zip(&mid)
            .fold(center, |acc, ((g, x), &m)| acc + *g * (*x - Interval::point(m))))
    }

    /// Gradient at a point by forward-mode differentiation.
    pub fn eval_gradient(&self, x: &[f64]) -> Result<Vec<f64>, ExprError> {
        self.check_bindings(x.len())?;
        let vars = seeds(x.to_vec());
        let out = eval(self, &vars)?;
        Ok(if out.d.is_empty() {
            vec![0.0; x.len()]
        } else {
            out.d
        })
    }

    /// Enclosure of all gradients over a box.
    pub fn eval_gradient_interval(&self, b: &IntervalBox) -> Result<IntervalBox, ExprError> {
        self.check_bindings(b.dim())?;
        let vars = seeds(b.intervals().to_vec());
        let out = eval(self, &vars)?;
        Ok(IntervalBox::from_intervals(if out.d.is_empty() {
            vec![Interval::point(0.0); b.dim()]
        } else {
            out.d
        }))
    }
}
