//! Approximation domains: sampling geometry, the bad-pole predicate and the
//! Möbius transplant between the unit disk and the right half-plane.
//!
//! Points on a domain are addressed by a real parameter: the abscissa on
//! `[-1, 1]`, or the angle in `[0, 2π)` on the unit circle. The imaginary axis
//! is handled in the `w`-plane of the circle, so its parameter is also an
//! angle, and `w ↦ z = M(1 + w)/(1 - w)` carries it to the axis.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::cmath::{div, is_finite};
use crate::error::{Error, Result};

/// Scale of the disk-to-half-plane map.
pub const MOBIUS_SCALE: f64 = 1.207;

/// Imaginary-part threshold (relative to `max(1, |Re|)`) for a pole to count
/// as lying on the real interval.
pub const INTERVAL_POLE_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    UnitInterval,
    UnitCircle,
    ImaginaryAxis,
}

impl DomainKind {
    pub fn name(self) -> &'static str {
        match self {
            DomainKind::UnitInterval => "interval",
            DomainKind::UnitCircle => "circle",
            DomainKind::ImaginaryAxis => "imaginary_axis",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub kind: DomainKind,
    /// Accept poles inside the disk (or right half-plane).
    pub mero: bool,
    pub mobius_scale: f64,
}

impl Domain {
    pub fn interval() -> Self {
        Self {
            kind: DomainKind::UnitInterval,
            mero: false,
            mobius_scale: MOBIUS_SCALE,
        }
    }

    pub fn circle(mero: bool) -> Self {
        Self {
            kind: DomainKind::UnitCircle,
            mero,
            mobius_scale: MOBIUS_SCALE,
        }
    }

    pub fn imaginary_axis(mero: bool) -> Self {
        Self {
            kind: DomainKind::ImaginaryAxis,
            mero,
            mobius_scale: MOBIUS_SCALE,
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.kind != DomainKind::UnitInterval
    }

    /// Parameters of the initial support set: `{-1, 1}` on the interval,
    /// `{1, -1}` (angles `0, π`) on the circle.
    pub fn initial_params(&self) -> Vec<f64> {
        match self.kind {
            DomainKind::UnitInterval => vec![-1.0, 1.0],
            _ => vec![0.0, PI],
        }
    }

    /// Point in the working variable (`x` on the interval, `w` otherwise).
    pub fn working_point(&self, param: f64) -> Complex64 {
        match self.kind {
            DomainKind::UnitInterval => Complex64::new(param, 0.0),
            _ => unit_point(param),
        }
    }

    /// Inverse of [`Domain::working_point`]: the abscissa on the interval, the
    /// angle in `[0, 2π)` otherwise.
    pub fn working_param(&self, w: Complex64) -> f64 {
        match self.kind {
            DomainKind::UnitInterval => w.re,
            _ => {
                let t = w.im.atan2(w.re);
                if t < 0.0 {
                    t + TAU
                } else {
                    t
                }
            }
        }
    }

    /// Point in the caller's variable.
    pub fn physical_point(&self, param: f64) -> Complex64 {
        self.to_physical(self.working_point(param))
    }

    pub fn to_physical(&self, w: Complex64) -> Complex64 {
        match self.kind {
            DomainKind::ImaginaryAxis => w_to_z(w, self.mobius_scale),
            _ => w,
        }
    }

    pub fn to_working(&self, z: Complex64) -> Complex64 {
        match self.kind {
            DomainKind::ImaginaryAxis => z_to_w(z, self.mobius_scale),
            _ => z,
        }
    }

    /// Whether a pole given in the caller's variable is forbidden. The
    /// forbidden sets are closed: a pole that lands exactly on the circle or
    /// the axis sits on the approximation domain itself.
    pub fn is_bad_pole(&self, pole: Complex64) -> bool {
        match self.kind {
            DomainKind::UnitInterval => {
                pole.im.abs() <= INTERVAL_POLE_TOL * pole.re.abs().max(1.0)
                    && (-1.0..=1.0).contains(&pole.re)
            }
            DomainKind::UnitCircle => !self.mero && pole.norm() <= 1.0,
            DomainKind::ImaginaryAxis => !self.mero && pole.re >= 0.0,
        }
    }

    /// Same predicate for a pole in the working variable.
    pub fn is_bad_working_pole(&self, pole: Complex64) -> bool {
        match self.kind {
            DomainKind::ImaginaryAxis => !self.mero && pole.norm() <= 1.0,
            _ => self.is_bad_pole(pole),
        }
    }
}

/// Bad-pole predicate of `domain` for a pole in the caller's variable.
pub fn bad_pole(pole: Complex64, domain: &Domain) -> bool {
    domain.is_bad_pole(pole)
}

fn unit_point(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// `w ↦ M(1 + w)/(1 - w)`; `w = 1` maps to a non-finite point.
pub fn w_to_z(w: Complex64, m: f64) -> Complex64 {
    let den = Complex64::new(1.0, 0.0) - w;
    if den == Complex64::new(0.0, 0.0) {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    div((Complex64::new(1.0, 0.0) + w) * m, den)
}

/// `z ↦ (z - M)/(z + M)`; non-finite `z` maps to `1`.
pub fn z_to_w(z: Complex64, m: f64) -> Complex64 {
    if !is_finite(z) {
        return Complex64::new(1.0, 0.0);
    }
    div(z - m, z + m)
}

/// Both directions of the Möbius map with scale `m`.
pub fn mobius_maps(m: f64) -> (impl Fn(Complex64) -> Complex64, impl Fn(Complex64) -> Complex64) {
    (move |w| w_to_z(w, m), move |z| z_to_w(z, m))
}

/// Sample parameters with `p` equispaced points strictly inside every gap
/// between consecutive support parameters (including the wrap-around arc on
/// periodic domains), returned in ascending order.
pub fn xs(support: &[f64], p: usize, domain: &Domain) -> Result<Vec<f64>> {
    if support.len() < 2 {
        return Err(Error::InvalidSupport("need at least two support points".into()));
    }
    if p == 0 {
        return Err(Error::InvalidOptions("p must be at least 1".into()));
    }
    for pair in support.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::InvalidSupport(format!("duplicate support point {}", pair[0])));
        }
        if pair[0] > pair[1] {
            return Err(Error::InvalidSupport("support points are not sorted".into()));
        }
    }
    let step = 1.0 / (p + 1) as f64;
    let mut out = Vec::with_capacity(p * support.len());
    let fill = |a: f64, b: f64, out: &mut Vec<f64>| {
        let h = b - a;
        out.extend((1..=p).map(|k| a + (k as f64) * step * h));
    };
    if domain.is_periodic() {
        let (first, last) = (support[0], support[support.len() - 1]);
        if last - first >= TAU {
            return Err(Error::InvalidSupport("angles span more than a full turn".into()));
        }
        let mut wrap = Vec::with_capacity(p);
        fill(last, first + TAU, &mut wrap);
        let (high, low): (Vec<f64>, Vec<f64>) = wrap.into_iter().partition(|&t| t < TAU);
        out.extend(low.into_iter().map(|t| t - TAU));
        for pair in support.windows(2) {
            fill(pair[0], pair[1], &mut out);
        }
        out.extend(high);
    } else {
        for pair in support.windows(2) {
            fill(pair[0], pair[1], &mut out);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-15)
    }

    #[test]
    fn interval_grids() {
        let d = Domain::interval();
        assert!(close(&xs(&[-1.0, 1.0], 3, &d).unwrap(), &[-0.5, 0.0, 0.5]));
        let g = xs(&[-1.0, 0.0, 1.0], 2, &d).unwrap();
        assert!(close(&g, &[-2.0 / 3.0, -1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0]), "{g:?}");
    }

    #[test]
    fn circle_grid_wraps() {
        let d = Domain::circle(false);
        let g = xs(&[0.0, PI], 1, &d).unwrap();
        assert!(close(&g, &[PI / 2.0, 3.0 * PI / 2.0]), "{g:?}");
        let g = xs(&[0.5, 1.0, 6.0], 3, &d).unwrap();
        assert_eq!(g.len(), 9);
        assert!(g.windows(2).all(|w| w[0] < w[1]), "{g:?}");
        assert!(g.iter().all(|t| (0.0..TAU).contains(t)));
    }

    #[test]
    fn grid_errors() {
        let d = Domain::interval();
        assert!(matches!(xs(&[0.0, 0.0], 3, &d), Err(Error::InvalidSupport(_))));
        assert!(matches!(xs(&[1.0, 0.0], 3, &d), Err(Error::InvalidSupport(_))));
        assert!(xs(&[0.0], 3, &d).is_err());
    }

    #[test]
    fn bad_pole_interval() {
        let d = Domain::interval();
        assert!(bad_pole(Complex64::new(0.5, 0.0), &d));
        assert!(!bad_pole(Complex64::new(0.0, 1e-14 * 100.0), &d));
        assert!(!bad_pole(Complex64::new(1.5, 0.0), &d));
        assert!(bad_pole(Complex64::new(-1.0, 0.0), &d));
    }

    #[test]
    fn tiny_imaginary_pole_near_zero_is_legitimate() {
        // conjugate pair of an |x| approximant hugging the origin
        assert!(!bad_pole(Complex64::new(0.0, 1e-12), &Domain::interval()));
        assert!(bad_pole(Complex64::new(0.0, 1e-14), &Domain::interval()));
    }

    #[test]
    fn bad_pole_disk_and_half_plane() {
        let p = Complex64::from_polar(0.9, 1.3);
        assert!(bad_pole(p, &Domain::circle(false)));
        assert!(!bad_pole(p, &Domain::circle(true)));
        assert!(!bad_pole(Complex64::from_polar(1.1, 0.3), &Domain::circle(false)));
        assert!(bad_pole(Complex64::new(0.1, 5.0), &Domain::imaginary_axis(false)));
        assert!(!bad_pole(Complex64::new(-0.1, 5.0), &Domain::imaginary_axis(false)));
        assert!(!bad_pole(Complex64::new(0.1, 5.0), &Domain::imaginary_axis(true)));
    }

    #[test]
    fn poles_on_the_boundary_are_bad() {
        assert!(bad_pole(Complex64::new(1.0, 7e-16), &Domain::circle(false)));
        assert!(bad_pole(Complex64::new(0.0, 3.0), &Domain::imaginary_axis(false)));
        assert!(Domain::imaginary_axis(false).is_bad_working_pole(Complex64::new(0.0, 1.0)));
    }

    #[test]
    fn mobius_pairs() {
        let (to_z, to_w) = mobius_maps(MOBIUS_SCALE);
        assert!((to_z(Complex64::new(0.0, 0.0)) - MOBIUS_SCALE).norm() < 1e-15);
        assert!(to_w(Complex64::new(MOBIUS_SCALE, 0.0)).norm() < 1e-15);
        assert!(to_z(Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!(!is_finite(to_z(Complex64::new(1.0, 0.0))));
        let z = Complex64::new(2.0, 3.0);
        assert!((to_z(to_w(z)) - z).norm() < 1e-14);
    }

    #[test]
    fn axis_bad_pole_agrees_in_both_planes() {
        let d = Domain::imaginary_axis(false);
        for z in [Complex64::new(0.3, -2.0), Complex64::new(-0.3, 7.0), Complex64::new(4.0, 0.1)] {
            assert_eq!(d.is_bad_pole(z), d.is_bad_working_pole(d.to_working(z)));
        }
    }
}
