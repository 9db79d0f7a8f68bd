//! Scalar semantics for expressions.
//!
//! Operands with a zero imaginary part are combined in real arithmetic, so
//! real inputs give exactly-real outputs and follow IEEE rules (`1/0 = inf`,
//! `exp(-inf) = 0`). Complex operations use principal branches. Infinite
//! complex operands are treated projectively where that has an obvious
//! meaning, so that `1/sqrt(z)` tends to zero as `z` becomes infinite.

use num_complex::Complex64;

use crate::cmath;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const INF: C = C::new(f64::INFINITY, 0.0);

#[inline]
fn real(z: C) -> Option<f64> {
    (z.im == 0.0).then_some(z.re)
}

#[inline]
fn is_inf(z: C) -> bool {
    z.re.is_infinite() || z.im.is_infinite()
}

#[inline]
fn is_nan(z: C) -> bool {
    z.re.is_nan() || z.im.is_nan()
}

pub(crate) fn add(a: C, b: C) -> C {
    a + b
}

pub(crate) fn sub(a: C, b: C) -> C {
    a - b
}

pub(crate) fn mul(a: C, b: C) -> C {
    if let (Some(x), Some(y)) = (real(a), real(b)) {
        return C::new(x * y, 0.0);
    }
    let p = a * b;
    if is_nan(p) && !is_nan(a) && !is_nan(b) && (is_inf(a) || is_inf(b)) {
        if a == ZERO || b == ZERO {
            return C::new(f64::NAN, 0.0);
        }
        return INF;
    }
    p
}

pub(crate) fn div(a: C, b: C) -> C {
    if let (Some(x), Some(y)) = (real(a), real(b)) {
        return C::new(x / y, 0.0);
    }
    if is_inf(b) && !is_inf(a) && !is_nan(a) {
        return ZERO;
    }
    if is_inf(a) && !is_inf(b) && !is_nan(b) {
        return INF;
    }
    if b == ZERO && a != ZERO && !is_nan(a) {
        return INF;
    }
    cmath::div(a, b)
}

pub(crate) fn neg(a: C) -> C {
    -a
}

pub(crate) fn pow(a: C, b: C) -> C {
    if let (Some(x), Some(y)) = (real(a), real(b)) {
        if x >= 0.0 || y.fract() == 0.0 || x.is_nan() || y.is_nan() {
            return C::new(x.powf(y), 0.0);
        }
    }
    if let Some(n) = real(b).filter(|y| y.fract() == 0.0 && y.abs() <= 64.0) {
        return powi(a, n as i32);
    }
    if a == ZERO {
        return if b.re > 0.0 { ZERO } else { C::new(f64::NAN, f64::NAN) };
    }
    exp(mul(b, log(a)))
}

fn powi(a: C, n: i32) -> C {
    if n == 0 {
        return C::new(1.0, 0.0);
    }
    if is_inf(a) {
        return if n > 0 { INF } else { ZERO };
    }
    let mut base = a;
    let mut k = n.unsigned_abs();
    let mut acc = C::new(1.0, 0.0);
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    if n < 0 {
        div(C::new(1.0, 0.0), acc)
    } else {
        acc
    }
}

pub(crate) fn exp(a: C) -> C {
    if let Some(x) = real(a) {
        return C::new(x.exp(), 0.0);
    }
    if a.re == f64::INFINITY && a.im.is_finite() {
        return INF;
    }
    if a.re == f64::NEG_INFINITY && a.im.is_finite() {
        return ZERO;
    }
    a.exp()
}

pub(crate) fn log(a: C) -> C {
    if let Some(x) = real(a) {
        if x >= 0.0 || x.is_nan() {
            return C::new(x.ln(), 0.0);
        }
    }
    if is_inf(a) {
        return C::new(f64::INFINITY, a.im.atan2(a.re));
    }
    C::new(a.norm().ln(), a.im.atan2(a.re))
}

pub(crate) fn sqrt(a: C) -> C {
    if let Some(x) = real(a) {
        if x >= 0.0 || x.is_nan() {
            return C::new(x.sqrt(), 0.0);
        }
        return C::new(0.0, (-x).sqrt().copysign(a.im));
    }
    if a.im.is_infinite() {
        return C::new(f64::INFINITY, a.im);
    }
    if a.re == f64::INFINITY {
        return C::new(f64::INFINITY, 0.0f64.copysign(a.im));
    }
    if a.re == f64::NEG_INFINITY {
        return C::new(0.0, f64::INFINITY.copysign(a.im));
    }
    // principal root via the half-angle formulas, cut along the negative axis
    let r = a.norm();
    if a.re >= 0.0 {
        let t = ((r + a.re) * 0.5).sqrt();
        C::new(t, a.im / (2.0 * t))
    } else {
        let t = ((r - a.re) * 0.5).sqrt();
        C::new(a.im.abs() / (2.0 * t), t.copysign(a.im))
    }
}

pub(crate) fn sin(a: C) -> C {
    match real(a) {
        Some(x) => C::new(x.sin(), 0.0),
        None => a.sin(),
    }
}

pub(crate) fn cos(a: C) -> C {
    match real(a) {
        Some(x) => C::new(x.cos(), 0.0),
        None => a.cos(),
    }
}

pub(crate) fn tan(a: C) -> C {
    match real(a) {
        Some(x) => C::new(x.tan(), 0.0),
        None => {
            if a.im.abs() > 20.0 {
                // tan z -> ±i exponentially fast away from the real axis
                let e = (-2.0 * a.im.abs()).exp();
                let s = C::new(0.0, a.im.signum());
                let q = C::new((2.0 * a.re).cos(), (2.0 * a.re).sin() * a.im.signum()) * e;
                return s * div(C::new(1.0, 0.0) - q, C::new(1.0, 0.0) + q);
            }
            a.tan()
        }
    }
}

pub(crate) fn tanh(a: C) -> C {
    match real(a) {
        Some(x) => C::new(x.tanh(), 0.0),
        None => {
            if a.re.is_infinite() && a.im.is_finite() {
                return C::new(a.re.signum(), 0.0);
            }
            let swapped = tan(C::new(a.im, -a.re));
            C::new(-swapped.im, swapped.re)
        }
    }
}

pub(crate) fn abs(a: C) -> C {
    match real(a) {
        Some(x) => C::new(x.abs(), 0.0),
        None => C::new(a.norm(), 0.0),
    }
}
