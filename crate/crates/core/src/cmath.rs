//! Complex helpers that keep real operands in real arithmetic and avoid the
//! `|z|²` underflow of the textbook reciprocal.

use num_complex::Complex64;

#[inline]
pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[inline]
pub(crate) fn inv(z: Complex64) -> Complex64 {
    div(Complex64::new(1.0, 0.0), z)
}

/// `a / b` by Smith's algorithm; exact-real when both operands are real.
#[inline]
pub(crate) fn div(a: Complex64, b: Complex64) -> Complex64 {
    if b.im == 0.0 {
        return Complex64::new(a.re / b.re, a.im / b.re);
    }
    if b.re == 0.0 {
        return Complex64::new(a.im / b.im, -a.re / b.im);
    }
    if b.re.abs() >= b.im.abs() {
        let r = b.im / b.re;
        let den = b.re + b.im * r;
        Complex64::new((a.re + a.im * r) / den, (a.im - a.re * r) / den)
    } else {
        let r = b.re / b.im;
        let den = b.re * r + b.im;
        Complex64::new((a.re * r + a.im) / den, (a.im * r - a.re) / den)
    }
}
