//! The continuum AAA loop.
//!
//! Each step resamples `f` on `p` equispaced points in every gap between
//! support points, solves the Loewner least-squares problem for the
//! barycentric weights and adds the worst sample point to the support set.
//! Steps whose approximant has a pole in the domain are "bad"; the returned
//! approximant is always the best pole-free one.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::barycentric::{BarycentricRational, PoleZeroReport};
use crate::cmath::{div, is_finite};
use crate::domain::{w_to_z, xs, Domain, DomainKind};
use crate::error::{Error, Result};
use crate::kernels::{min_singular_vector, DenseMatrix};
use crate::lawson::{self, ErrorCurve, LawsonOutcome};

/// Consecutive bad-pole steps after which the run falls back.
pub const BAD_POLE_STREAK: usize = 10;

/// Best pole-free error needed before a bad-pole streak may end the run.
pub const FALLBACK_ACCURACY: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq)]
pub struct AaaOptions {
    /// Relative max-norm tolerance on the sample grid.
    pub tol: f64,
    pub max_degree: usize,
    /// Lawson steps after AAA; 0 skips the refinement.
    pub lawson_steps: usize,
    /// Points per gap of the a posteriori check grid.
    pub fine_grid_density: usize,
    /// Points per gap of the Lawson working grid.
    pub lawson_density: usize,
}

impl Default for AaaOptions {
    fn default() -> Self {
        Self {
            tol: 1e-13,
            max_degree: 150,
            lawson_steps: 0,
            fine_grid_density: 30,
            lawson_density: 3,
        }
    }
}

impl AaaOptions {
    pub fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidOptions(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_degree == 0 {
            return Err(Error::InvalidOptions("max_degree must be at least 1".into()));
        }
        if self.fine_grid_density == 0 || self.lawson_density == 0 {
            return Err(Error::InvalidOptions("grid densities must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Converged,
    MaxDegreeReached,
    BadPoleFallback,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::MaxDegreeReached => "max_degree_reached",
            Status::BadPoleFallback => "bad_pole_fallback",
        }
    }

    pub fn from_name(name: &str) -> Option<Status> {
        [Status::Converged, Status::MaxDegreeReached, Status::BadPoleFallback]
            .into_iter()
            .find(|s| s.name() == name)
    }
}

/// One AAA step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRecord {
    /// `m - 1`.
    pub degree: usize,
    pub grid_error: f64,
    pub bad_poles: bool,
    pub num_bad_poles: usize,
}

#[derive(Debug, Clone)]
pub struct AaaResult {
    pub domain: Domain,
    /// The approximant in the working variable (`w` for the imaginary axis).
    pub approximant: BarycentricRational,
    /// Domain parameters of the support points, ascending, in the same order
    /// as the approximant's support.
    pub support_params: Vec<f64>,
    pub status: Status,
    pub history: Vec<ConvergenceRecord>,
    /// Relative error on the last sample grid of the returned approximant
    /// (the Lawson working grid when Lawson ran).
    pub grid_error: f64,
    /// Relative error on `xs(S, fine_grid_density)`.
    pub fine_error: f64,
    /// Poles, residues and zeros in the caller's variable.
    pub report: PoleZeroReport,
    /// Distinct function evaluations made by the AAA iteration.
    pub feval_count: usize,
    pub lawson: Option<LawsonOutcome>,
}

impl AaaResult {
    pub fn degree(&self) -> usize {
        self.approximant.degree()
    }

    /// Evaluates the approximant at a point in the caller's variable.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.approximant.eval(self.domain.to_working(z))
    }

    /// `f - r` on `xs(S, density)` together with the support points.
    pub fn error_curve(&self, f: &dyn Fn(Complex64) -> Complex64, density: usize) -> Result<ErrorCurve> {
        let mut sampler = Sampler::new(f, self.domain);
        lawson::error_curve(&mut sampler, &self.approximant, &self.support_params, density)
    }
}

/// Evaluates `f` at domain parameters, caching by exact parameter value and
/// counting distinct evaluations.
pub struct Sampler<'f> {
    f: &'f dyn Fn(Complex64) -> Complex64,
    domain: Domain,
    cache: HashMap<u64, Complex64>,
}

impl<'f> Sampler<'f> {
    pub fn new(f: &'f dyn Fn(Complex64) -> Complex64, domain: Domain) -> Self {
        Self {
            f,
            domain,
            cache: HashMap::new(),
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn value(&mut self, param: f64) -> Result<Complex64> {
        if let Some(v) = self.cache.get(&param.to_bits()) {
            return Ok(*v);
        }
        let point = self.domain.physical_point(param);
        let value = (self.f)(point);
        if !is_finite(value) {
            return Err(Error::NonFiniteSample { point, value });
        }
        self.cache.insert(param.to_bits(), value);
        Ok(value)
    }

    pub fn values(&mut self, params: &[f64]) -> Result<Vec<Complex64>> {
        params.iter().map(|&t| self.value(t)).collect()
    }

    /// Number of distinct parameters evaluated so far.
    pub fn evaluations(&self) -> usize {
        self.cache.len()
    }
}

/// Loewner matrix `A[i][j] = (f(x_i) - f(s_j)) / (x_i - s_j)`.
pub fn loewner(
    fx: &[Complex64],
    fs: &[Complex64],
    x: &[Complex64],
    s: &[Complex64],
) -> Result<DenseMatrix> {
    if fx.len() != x.len() || fs.len() != s.len() {
        return Err(Error::InvalidMatrix("values and points differ in length".into()));
    }
    for (pts, vals) in [(x, fx), (s, fs)] {
        if let Some(k) = vals.iter().position(|v| !is_finite(*v)) {
            return Err(Error::NonFiniteSample {
                point: pts[k],
                value: vals[k],
            });
        }
    }
    if let Some(xi) = x.iter().find(|xi| s.contains(xi)) {
        return Err(Error::InvalidSupport(format!("sample point {xi} coincides with a support point")));
    }
    Ok(DenseMatrix::from_fn(x.len(), s.len(), |i, j| {
        div(fx[i] - fs[j], x[i] - s[j])
    }))
}

/// Sample-grid size per gap at step `m`.
pub fn samples_per_gap(m: usize) -> usize {
    16usize.saturating_sub(m).max(3)
}

#[derive(Debug, Clone)]
pub struct StepResult {
    pub approximant: BarycentricRational,
    /// Sample grid parameters, ascending.
    pub grid: Vec<f64>,
    /// `f - r` on the grid.
    pub errors: Vec<Complex64>,
    /// Index into `grid` of the first point of maximal error.
    pub argmax: usize,
    /// `max |f - r| / max |f|` on the grid.
    pub grid_error: f64,
}

/// One AAA step on the sorted support parameters.
pub fn aaa_step(sampler: &mut Sampler<'_>, support: &[f64], p: usize) -> Result<StepResult> {
    let domain = *sampler.domain();
    let grid: Vec<f64> = xs(support, p, &domain)?
        .into_iter()
        .filter(|t| !support.contains(t))
        .collect();
    if grid.is_empty() {
        return Err(Error::InvalidSupport("support gaps too small to sample".into()));
    }
    let fx = sampler.values(&grid)?;
    let fs = sampler.values(support)?;
    let x: Vec<Complex64> = grid.iter().map(|&t| domain.working_point(t)).collect();
    let s: Vec<Complex64> = support.iter().map(|&t| domain.working_point(t)).collect();
    let a = loewner(&fx, &fs, &x, &s)?;
    let w = min_singular_vector(&a)?;
    let approximant = BarycentricRational::new(s, fs, w)?;
    let errors: Vec<Complex64> = x.iter().zip(&fx).map(|(&xi, &fi)| fi - approximant.eval(xi)).collect();
    let (argmax, max_err) = first_max(errors.iter().map(|e| e.norm()));
    let scale = fx.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(StepResult {
        approximant,
        grid,
        errors,
        argmax,
        grid_error: relative(max_err, scale),
    })
}

/// Index and value of the first maximum; NaN counts as infinite.
pub(crate) fn first_max(values: impl Iterator<Item = f64>) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for (k, v) in values.enumerate() {
        let v = if v.is_nan() { f64::INFINITY } else { v };
        if v > best.1 {
            best = (k, v);
        }
    }
    best
}

pub(crate) fn relative(err: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        err / scale
    } else {
        err
    }
}

/// Number of poles of `r` (working variable) that the domain forbids.
pub fn count_bad_poles(r: &BarycentricRational, domain: &Domain) -> Result<usize> {
    Ok(r.raw_poles()?.into_iter().filter(|&t| domain.is_bad_working_pole(t)).count())
}

/// Poles, residues and zeros of a working-variable approximant, mapped to
/// the caller's variable. Points sent to infinity are dropped.
pub fn physical_report(r: &BarycentricRational, domain: &Domain) -> Result<PoleZeroReport> {
    let rep = r.poles_zeros()?;
    if domain.kind != DomainKind::ImaginaryAxis {
        return Ok(rep);
    }
    let m = domain.mobius_scale;
    let mut out = PoleZeroReport::default();
    for (&w, &res) in rep.poles.iter().zip(&rep.residues) {
        let z = w_to_z(w, m);
        if is_finite(z) {
            out.poles.push(z);
            // dz/dw = (z + M)^2 / (2M)
            out.residues.push(res * (z + m) * (z + m) / (2.0 * m));
        }
    }
    out.zeros = rep.zeros.iter().map(|&w| w_to_z(w, m)).filter(|z| is_finite(*z)).collect();
    Ok(out)
}

/// Relative error of `r` on `xs(support, density)`.
pub fn fine_error(
    sampler: &mut Sampler<'_>,
    r: &BarycentricRational,
    support: &[f64],
    density: usize,
) -> Result<f64> {
    let domain = *sampler.domain();
    let grid = xs(support, density, &domain)?;
    let mut err: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for t in grid {
        let v = sampler.value(t)?;
        let e = (v - r.eval(domain.working_point(t))).norm();
        err = err.max(if e.is_nan() { f64::INFINITY } else { e });
        scale = scale.max(v.norm());
    }
    Ok(relative(err, scale))
}

struct Incumbent {
    approximant: BarycentricRational,
    support: Vec<f64>,
    grid_error: f64,
}

/// Runs continuum AAA for `f` on `domain`.
pub fn run(f: &dyn Fn(Complex64) -> Complex64, domain: Domain, opts: &AaaOptions) -> Result<AaaResult> {
    opts.validate()?;
    let mut sampler = Sampler::new(f, domain);
    let mut support = domain.initial_params();
    let mut history = Vec::new();
    let mut best: Option<Incumbent> = None;
    let mut streak = 0;

    let (status, approximant, support, grid_error) = loop {
        let m = support.len();
        let step = aaa_step(&mut sampler, &support, samples_per_gap(m))?;
        let num_bad = count_bad_poles(&step.approximant, &domain)?;
        history.push(ConvergenceRecord {
            degree: m - 1,
            grid_error: step.grid_error,
            bad_poles: num_bad > 0,
            num_bad_poles: num_bad,
        });
        if num_bad == 0 {
            streak = 0;
            if best.as_ref().is_none_or(|b| step.grid_error < b.grid_error) {
                best = Some(Incumbent {
                    approximant: step.approximant.clone(),
                    support: support.clone(),
                    grid_error: step.grid_error,
                });
            }
            if step.grid_error < opts.tol {
                break (Status::Converged, step.approximant, support, step.grid_error);
            }
        } else {
            streak += 1;
        }
        let stop = if m > opts.max_degree {
            Some(Status::MaxDegreeReached)
        } else if streak >= BAD_POLE_STREAK
            && best.as_ref().is_some_and(|b| b.grid_error <= FALLBACK_ACCURACY)
        {
            Some(Status::BadPoleFallback)
        } else {
            None
        };
        if let Some(status) = stop {
            let b = best.take().ok_or(Error::NoValidApproximant)?;
            break (status, b.approximant, b.support, b.grid_error);
        }
        let new = step.grid[step.argmax];
        let at = support.partition_point(|&t| t < new);
        support.insert(at, new);
    };
    let feval_count = sampler.evaluations();

    let (approximant, grid_error, lawson) = if opts.lawson_steps > 0 {
        let refined = lawson::refine(&mut sampler, &approximant, &support, opts.lawson_steps, opts.lawson_density)?;
        let err = refined.outcome.best_relative_error;
        (refined.approximant, err, Some(refined.outcome))
    } else {
        (approximant, grid_error, None)
    };

    let fine_error = fine_error(&mut sampler, &approximant, &support, opts.fine_grid_density)?;
    let report = physical_report(&approximant, &domain)?;
    Ok(AaaResult {
        domain,
        approximant,
        support_params: support,
        status,
        history,
        grid_error,
        fine_error,
        report,
        feval_count,
        lawson,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn loewner_examples() {
        let x = [c(0.1), c(0.7)];
        let s = [c(-1.0), c(1.0)];
        let a = loewner(&x, &s, &x, &s).unwrap();
        assert!(a.as_slice().iter().all(|v| (*v - c(1.0)).norm() < 1e-15));
        let a = loewner(&[c(3.0); 2], &[c(3.0); 2], &x, &s).unwrap();
        assert!(a.as_slice().iter().all(|v| *v == c(0.0)));
        let a = loewner(&[c(0.0)], &[c(1.0), c(1.0)], &[c(0.0)], &s).unwrap();
        assert_eq!(a.as_slice(), &[c(-1.0), c(1.0)]);
    }

    #[test]
    fn loewner_rejects_nonfinite() {
        let err = loewner(&[c(f64::NAN)], &[c(1.0)], &[c(0.5)], &[c(1.0)]).unwrap_err();
        assert!(matches!(err, Error::NonFiniteSample { .. }));
    }

    #[test]
    fn step_on_identity_is_exact() {
        let f = |z: Complex64| z;
        let mut s = Sampler::new(&f, Domain::interval());
        let st = aaa_step(&mut s, &[-1.0, 1.0], 3).unwrap();
        assert!(st.grid_error <= 1e-15);
        assert!((st.approximant.eval(c(0.37)) - c(0.37)).norm() < 1e-15);
    }

    #[test]
    fn step_on_constant_has_zero_error() {
        let f = |_: Complex64| c(2.0);
        let mut s = Sampler::new(&f, Domain::interval());
        assert_eq!(aaa_step(&mut s, &[-1.0, 1.0], 3).unwrap().grid_error, 0.0);
    }

    #[test]
    fn step_on_abs_picks_origin() {
        let f = |z: Complex64| c(z.re.abs());
        let mut s = Sampler::new(&f, Domain::interval());
        let st = aaa_step(&mut s, &[-1.0, 1.0], 3).unwrap();
        assert_eq!(st.grid[st.argmax], 0.0);
    }

    #[test]
    fn schedule() {
        assert_eq!(samples_per_gap(2), 14);
        assert_eq!(samples_per_gap(13), 3);
        assert_eq!(samples_per_gap(100), 3);
    }

    #[test]
    fn sampler_counts_distinct_points() {
        let f = |z: Complex64| z * z;
        let mut s = Sampler::new(&f, Domain::interval());
        s.values(&[0.1, 0.2, 0.1]).unwrap();
        assert_eq!(s.evaluations(), 2);
    }

    #[test]
    fn constant_run() {
        let f = |_: Complex64| c(2.5);
        let res = run(&f, Domain::interval(), &AaaOptions::default()).unwrap();
        assert_eq!(res.status, Status::Converged);
        assert_eq!(res.degree(), 1);
        assert!(res.report.poles.is_empty() && res.report.zeros.is_empty());
    }

    #[test]
    fn exp_run_reaches_degree_six() {
        let f = |z: Complex64| z.exp();
        let res = run(&f, Domain::interval(), &AaaOptions::default()).unwrap();
        assert_eq!(res.status, Status::Converged);
        assert!((5..=8).contains(&res.degree()), "degree {}", res.degree());
        assert!(res.fine_error <= 5e-13, "{}", res.fine_error);
    }

    #[test]
    fn nonfinite_sample_is_reported() {
        let f = |z: Complex64| (z + 1.0).ln();
        let err = run(&f, Domain::interval(), &AaaOptions::default()).unwrap_err();
        assert!(matches!(err, Error::NonFiniteSample { .. }), "{err:?}");
    }

    #[test]
    fn invalid_options() {
        let f = |z: Complex64| z;
        let opts = AaaOptions {
            tol: 0.0,
            ..Default::default()
        };
        assert!(matches!(run(&f, Domain::interval(), &opts), Err(Error::InvalidOptions(_))));
    }
}
