//! Barycentric rational functions
//!
//! ```text
//!          m   w_j f_j        m    w_j
//! r(x) =   Σ  ---------   /   Σ  -------
//!         j=1  x - s_j        j=1 x - s_j
//! ```
//!
//! with evaluation, poles, residues and zeros.

use num_complex::Complex64;

use crate::cmath::{div, inv, is_finite};
use crate::error::{Error, Result};
use crate::kernels::arrowhead_pencil_eigenvalues;

/// Relative size below which a numerator (or denominator) sum counts as zero
/// when testing a root of the other for cancellation.
const CANCELLATION_TOL: f64 = 1e-13;

/// Rational function in barycentric form.
#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricRational {
    support: Vec<Complex64>,
    values: Vec<Complex64>,
    weights: Vec<Complex64>,
}

/// Poles with their residues, and zeros, of a [`BarycentricRational`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PoleZeroReport {
    pub poles: Vec<Complex64>,
    pub residues: Vec<Complex64>,
    pub zeros: Vec<Complex64>,
}

impl BarycentricRational {
    pub fn new(
        support: Vec<Complex64>,
        values: Vec<Complex64>,
        weights: Vec<Complex64>,
    ) -> Result<Self> {
        let m = support.len();
        if m == 0 || values.len() != m || weights.len() != m {
            return Err(Error::InvalidSupport(format!(
                "support/values/weights lengths {}/{}/{}",
                m,
                values.len(),
                weights.len()
            )));
        }
        if !support.iter().chain(&values).chain(&weights).all(|z| is_finite(*z)) {
            return Err(Error::InvalidSupport("non-finite entry".into()));
        }
        if weights.iter().all(|w| *w == Complex64::new(0.0, 0.0)) {
            return Err(Error::InvalidSupport("all weights are zero".into()));
        }
        for (i, a) in support.iter().enumerate() {
            if support[i + 1..].contains(a) {
                return Err(Error::InvalidSupport(format!("duplicate support point {a}")));
            }
        }
        Ok(Self {
            support,
            values,
            weights,
        })
    }

    pub fn support(&self) -> &[Complex64] {
        &self.support
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    /// Number of support points `m`.
    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Type `(m-1, m-1)`.
    pub fn degree(&self) -> usize {
        self.support.len() - 1
    }

    /// Evaluates `r(x)`. Exact hits on a support point return the stored value;
    /// a non-finite argument returns the limit at infinity.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        if !is_finite(x) {
            let num: Complex64 = self.weights.iter().zip(&self.values).map(|(w, f)| w * f).sum();
            let den: Complex64 = self.weights.iter().sum();
            return div(num, den);
        }
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = Complex64::new(0.0, 0.0);
        for ((s, f), w) in self.support.iter().zip(&self.values).zip(&self.weights) {
            if x == *s {
                return *f;
            }
            let c = div(*w, x - s);
            num += c * f;
            den += c;
        }
        div(num, den)
    }

    /// Numerator and denominator sums at `x` (not a support point).
    pub fn num_den(&self, x: Complex64) -> (Complex64, Complex64) {
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = Complex64::new(0.0, 0.0);
        for ((s, f), w) in self.support.iter().zip(&self.values).zip(&self.weights) {
            let c = div(*w, x - s);
            num += c * f;
            den += c;
        }
        (num, den)
    }

    /// Support points and weights of the terms with a nonzero weight. Terms
    /// with zero weight contribute nothing to either sum, but would put a
    /// spurious root at their support point into the pencils.
    fn active_terms(&self) -> (Vec<Complex64>, Vec<Complex64>, Vec<Complex64>) {
        let zero = Complex64::new(0.0, 0.0);
        let mut out = (Vec::new(), Vec::new(), Vec::new());
        for ((s, f), w) in self.support.iter().zip(&self.values).zip(&self.weights) {
            if *w != zero {
                out.0.push(*s);
                out.1.push(*w);
                out.2.push(w * f);
            }
        }
        out
    }

    /// All finite roots of the denominator, including any that cancel
    /// against the numerator.
    pub fn raw_poles(&self) -> Result<Vec<Complex64>> {
        let (s, w, _) = self.active_terms();
        if s.len() < 2 {
            return Ok(Vec::new());
        }
        arrowhead_pencil_eigenvalues(&s, &w)
    }

    /// Poles (with residues) and zeros via the arrowhead pencil. Common roots
    /// of numerator and denominator are removable and are left out of both
    /// lists.
    pub fn poles_zeros(&self) -> Result<PoleZeroReport> {
        let (s, w, wf) = self.active_terms();
        if s.len() < 2 {
            return Ok(PoleZeroReport::default());
        }
        let poles: Vec<Complex64> = arrowhead_pencil_eigenvalues(&s, &w)?
            .into_iter()
            .filter(|&t| !cancels(t, &s, &wf))
            .collect();
        let zeros = arrowhead_pencil_eigenvalues(&s, &wf)?
            .into_iter()
            .filter(|&z| !cancels(z, &s, &w))
            .collect();
        let residues = poles.iter().map(|&t| self.residue_at(t)).collect();
        Ok(PoleZeroReport {
            poles,
            residues,
            zeros,
        })
    }

    /// Residue `n(t) / d'(t)` at a simple pole `t`.
    pub fn residue_at(&self, t: Complex64) -> Complex64 {
        let mut num = Complex64::new(0.0, 0.0);
        let mut dprime = Complex64::new(0.0, 0.0);
        for ((s, f), w) in self.support.iter().zip(&self.values).zip(&self.weights) {
            let c = inv(t - s);
            num += w * f * c;
            dprime -= w * c * c;
        }
        div(num, dprime)
    }
}

/// Whether `Σ coeffs_j / (t - s_j)` vanishes at `t` relative to its terms.
fn cancels(t: Complex64, support: &[Complex64], coeffs: &[Complex64]) -> bool {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for (s, c) in support.iter().zip(coeffs) {
        let term = div(*c, t - s);
        sum += term;
        mag += term.norm();
    }
    sum.norm() <= CANCELLATION_TOL * mag
}

/// Evaluates `r` at every point.
pub fn reval(r: &BarycentricRational, pts: &[Complex64]) -> Vec<Complex64> {
    pts.iter().map(|&x| r.eval(x)).collect()
}

/// Poles, residues and zeros of `r`.
pub fn prz(r: &BarycentricRational) -> Result<PoleZeroReport> {
    r.poles_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn rat(s: &[f64], f: &[f64], w: &[f64]) -> BarycentricRational {
        BarycentricRational::new(
            s.iter().map(|&x| c(x)).collect(),
            f.iter().map(|&x| c(x)).collect(),
            w.iter().map(|&x| c(x)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn constant_function() {
        let r = rat(&[-1.0, 1.0], &[2.5, 2.5], &[1.0, 1.0]);
        assert!((r.eval(c(0.3)) - c(2.5)).norm() < 1e-15);
        let rep = r.poles_zeros().unwrap();
        assert!(rep.poles.is_empty() && rep.zeros.is_empty(), "{rep:?}");
    }

    #[test]
    fn identity_function() {
        let r = rat(&[-1.0, 1.0], &[-1.0, 1.0], &[1.0, -1.0]);
        assert!((r.eval(c(0.25)) - c(0.25)).norm() < 1e-15);
        let rep = r.poles_zeros().unwrap();
        assert!(rep.poles.is_empty());
        assert_eq!(rep.zeros.len(), 1);
        assert!(rep.zeros[0].norm() < 1e-15);
    }

    #[test]
    fn reciprocal_function() {
        let r = rat(&[-1.0, 1.0], &[-1.0, 1.0], &[1.0, 1.0]);
        assert!((r.eval(c(0.5)) - c(2.0)).norm() < 1e-14);
        let rep = r.poles_zeros().unwrap();
        assert_eq!(rep.poles.len(), 1);
        assert!(rep.poles[0].norm() < 1e-15);
        assert!((rep.residues[0] - c(1.0)).norm() < 1e-14);
        assert!(rep.zeros.is_empty());
    }

    #[test]
    fn support_hit_returns_value() {
        let r = rat(&[-1.0, 0.2, 1.0], &[3.0, -7.0, 1.0], &[0.3, 0.0, -1.0]);
        assert_eq!(r.eval(c(0.2)), c(-7.0));
        assert_eq!(reval(&r, &[c(-1.0), c(1.0)]), vec![c(3.0), c(1.0)]);
    }

    #[test]
    fn limit_at_infinity() {
        // r(x) = x / (x + 2) written with support -1, 1: values -1, 1/3
        let r = rat(&[-1.0, 1.0], &[-1.0, 1.0 / 3.0], &[1.0, -3.0]);
        let big = r.eval(c(1e12));
        assert!((r.eval(c(f64::INFINITY)) - big).norm() < 1e-10);
    }

    #[test]
    fn zero_weight_terms_add_no_roots() {
        // only the term at 1 is active, so r is the constant 4
        let r = rat(&[-1.0, 1.0], &[3.0, 4.0], &[0.0, 1.0]);
        assert!(r.raw_poles().unwrap().is_empty());
        let rep = r.poles_zeros().unwrap();
        assert!(rep.poles.is_empty() && rep.zeros.is_empty());
        assert_eq!(r.eval(c(0.5)), c(4.0));
    }

    #[test]
    fn validation() {
        let one = vec![c(1.0)];
        assert!(BarycentricRational::new(vec![], vec![], vec![]).is_err());
        assert!(BarycentricRational::new(one.clone(), one.clone(), vec![c(0.0)]).is_err());
        assert!(BarycentricRational::new(vec![c(1.0), c(1.0)], vec![c(0.0); 2], vec![c(1.0); 2]).is_err());
        assert!(BarycentricRational::new(one.clone(), vec![c(f64::NAN)], one).is_err());
    }
}
