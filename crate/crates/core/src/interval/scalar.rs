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

//! Scalar closed intervals with outward-rounded arithmetic.
//!
//! Sums, products, quotients and square roots are rounded with error-free
//! transformations: an endpoint is moved by one ulp only when the floating
//! point result is inexact, so exactly representable computations stay
//! exact. Library transcendental functions are not correctly rounded, so
//! their endpoints are widened by the relative factor [`TRANSCENDENTAL_EPS`].

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Relative outward inflation applied to endpoints of transcendental results.
pub const TRANSCENDENTAL_EPS: f64 = 1e-12;

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Rounds `value` (with exact residual `err`) towards −∞.
#[inline]
fn down(value: f64, err: f64) -> f64 {
    if err < 0.0 {
        value.next_down()
    } else {
        value
    }
}

#[inline]
fn up(value: f64, err: f64) -> f64 {
    if err > 0.0 {
        value.next_up()
    } else {
        value
    }
}

#[inline]
fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    down(p, a.mul_add(b, -p))
}

#[inline]
fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    up(p, a.mul_add(b, -p))
}

#[inline]
fn div_down(a: f64, b: f64) -> f64 {
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    // a = q*b + r exactly, so a/b - q has the sign of r/b.
    let r = (-q).mul_add(b, a);
    down(q, r * b.signum())
}

#[inline]
fn div_up(a: f64, b: f64) -> f64 {
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    let r = (-q).mul_add(b, a);
    up(q, r * b.signum())
}

#[inline]
fn widen_lo(v: f64) -> f64 {
    v - v.abs() * TRANSCENDENTAL_EPS
}

#[inline]
fn widen_hi(v: f64) -> f64 {
    v + v.abs() * TRANSCENDENTAL_EPS
}

/// Errors raised by interval operations that leave the function's domain.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IntervalError {
    #[error("division by an interval containing zero: {0:?}")]
    DivisionByZero(Interval),
    #[error("{func} undefined on {arg:?}")]
    Domain { func: &'static str, arg: Interval },
    #[error("invalid interval bounds lo={lo} > hi={hi}")]
    Inverted { lo: f64, hi: f64 },
}

impl Interval {
    /// Builds `[lo, hi]`. Panics if the bounds are inverted or NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn try_new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if lo <= hi {
            Ok(Self { lo, hi })
        } else {
            Err(IntervalError::Inverted { lo, hi })
        }
    }

    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    /// Symmetric interval `[-r, r]`.
    pub fn symmetric(r: f64) -> Self {
        let r = r.abs();
        Self { lo: -r, hi: r }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    #[inline]
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Half-width, rounded up.
    #[inline]
    pub fn radius(&self) -> f64 {
        (0.5 * (self.hi - self.lo)).next_up().max(0.0)
    }

    /// Largest absolute value over the interval.
    #[inline]
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    #[inline]
    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    #[inline]
    pub fn contains_zero(&self) -> bool {
        self.lo <= 0.0 && 0.0 <= self.hi
    }

    #[inline]
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Multiplication by a scalar, outward rounded.
    pub fn scale(&self, k: f64) -> Interval {
        *self * Interval::point(k)
    }

    pub fn checked_div(&self, rhs: &Interval) -> Result<Interval, IntervalError> {
        if rhs.contains_zero() {
            return Err(IntervalError::DivisionByZero(*rhs));
        }
        let (a, b) = (self, rhs);
        let lo = div_down(a.lo, b.lo)
            .min(div_down(a.lo, b.hi))
            .min(div_down(a.hi, b.lo))
            .min(div_down(a.hi, b.hi));
        let hi = div_up(a.lo, b.lo)
            .max(div_up(a.lo, b.hi))
            .max(div_up(a.hi, b.lo))
            .max(div_up(a.hi, b.hi));
        Ok(Interval { lo, hi })
    }

    pub fn powi(&self, n: i32) -> Result<Interval, IntervalError> {
        if n == 0 {
            return Ok(Interval::point(1.0));
        }
        if n < 0 {
            let pos = self.powi(-n)?;
            return Interval::point(1.0).checked_div(&pos);
        }
        if n == 1 {
            return Ok(*self);
        }
        let (a, b) = (self.lo.powi(n), self.hi.powi(n));
        let (lo, hi) = if n % 2 == 1 || self.lo >= 0.0 {
            (a, b)
        } else if self.hi <= 0.0 {
            (b, a)
        } else {
            (0.0, a.max(b))
        };
        Ok(Interval {
            lo: widen_lo(lo),
            hi: widen_hi(hi),
        })
    }

    pub fn sqrt(&self) -> Result<Interval, IntervalError> {
        if self.lo < 0.0 {
            return Err(IntervalError::Domain {
                func: "sqrt",
                arg: *self,
            });
        }
        let lo = {
            let s = self.lo.sqrt();
            down(s, (-s).mul_add(s, self.lo))
        };
        let hi = {
            let s = self.hi.sqrt();
            up(s, (-s).mul_add(s, self.hi))
        };
        Ok(Interval { lo: lo.max(0.0), hi })
    }

    pub fn exp(&self) -> Interval {
        Interval {
            lo: widen_lo(self.lo.exp()).max(0.0),
            hi: widen_hi(self.hi.exp()),
        }
    }

    pub fn ln(&self) -> Result<Interval, IntervalError> {
        if self.lo <= 0.0 {
            return Err(IntervalError::Domain {
                func: "log",
                arg: *self,
            });
        }
        Ok(Interval {
            lo: widen_lo(self.lo.ln()),
            hi: widen_hi(self.hi.ln()),
        })
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            Interval {
                lo: -self.hi,
                hi: -self.lo,
            }
        } else {
            Interval {
                lo: 0.0,
                hi: self.mag(),
            }
        }
    }

    /// Sign hull: `{sign(x) : x in self}` with the subgradient `[-1, 1]` at 0.
    pub fn sign_hull(&self) -> Interval {
        if self.lo > 0.0 {
            Interval::point(1.0)
        } else if self.hi < 0.0 {
            Interval::point(-1.0)
        } else {
            Interval::new(-1.0, 1.0)
        }
    }

    pub fn sin(&self) -> Interval {
        // sin peaks at pi/2 + 2k*pi and bottoms at -pi/2 + 2k*pi.
        periodic_range(self, f64::sin, FRAC_PI_2, -FRAC_PI_2)
    }

    pub fn cos(&self) -> Interval {
        periodic_range(self, f64::cos, 0.0, PI)
    }

    pub fn tan(&self) -> Result<Interval, IntervalError> {
        // Poles at pi/2 + k*pi.
        let k = ((self.lo - FRAC_PI_2) / PI).ceil();
        let pole = FRAC_PI_2 + k * PI;
        if self.width() >= PI || pole <= self.hi + pole.abs() * 1e-15 {
            return Err(IntervalError::Domain {
                func: "tan",
                arg: *self,
            });
        }
        Ok(Interval {
            lo: widen_lo(self.lo.tan()),
            hi: widen_hi(self.hi.tan()),
        })
    }
}

/// Range of a 2π-periodic function with a single maximum at `peak` and a
/// single minimum at `trough` per period. Extremum locations are tested with
/// a small slack so that an extremum sitting within rounding of an endpoint
/// is included rather than missed.
fn periodic_range(x: &Interval, f: fn(f64) -> f64, peak: f64, trough: f64) -> Interval {
    if !x.lo.is_finite() || !x.hi.is_finite() || x.width() >= TAU {
        return Interval::new(-1.0, 1.0);
    }
    let hits = |at: f64| {
        let k = ((x.lo - at) / TAU).ceil();
        let point = at + k * TAU;
        let slack = 1e-15 * (1.0 + point.abs());
        point <= x.hi + slack || at + (k - 1.0) * TAU >= x.lo - slack
    };
    let (fa, fb) = (f(x.lo), f(x.hi));
    let lo = if hits(trough) {
        -1.0
    } else {
        widen_lo(fa.min(fb)).max(-1.0)
    };
    let hi = if hits(peak) {
        1.0
    } else {
        widen_hi(fa.max(fb)).min(1.0)
    };
    Interval { lo, hi }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        let (l, el) = two_sum(self.lo, rhs.lo);
        let (h, eh) = two_sum(self.hi, rhs.hi);
        Interval {
            lo: if l.is_finite() { down(l, el) } else { l },
            hi: if h.is_finite() { up(h, eh) } else { h },
        }
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, rhs: Interval) -> Interval {
        self + (-rhs)
    }
}

impl Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        let (a, b) = (self, rhs);
        let lo = mul_down(a.lo, b.lo)
            .min(mul_down(a.lo, b.hi))
            .min(mul_down(a.hi, b.lo))
            .min(mul_down(a.hi, b.hi));
        let hi = mul_up(a.lo, b.lo)
            .max(mul_up(a.lo, b.hi))
            .max(mul_up(a.hi, b.lo))
            .max(mul_up(a.hi, b.hi));
        Interval { lo, hi }
    }
}
