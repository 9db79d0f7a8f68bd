//! AAA-Lawson refinement toward minimax, and diagnostics of error curves.
//!
//! Lawson works at a fixed support set. The support points join the sample
//! set and interpolation is relaxed: numerator and denominator get separate
//! coefficients `α`, `β`, so that
//!
//! ```text
//!          m   α_j        m    β_j
//! r(x) =   Σ  -------  /  Σ  -------
//!         j=1 x - s_j    j=1 x - s_j
//! ```
//!
//! Each step solves a weighted linearized least-squares problem and
//! multiplies the weights by the pointwise error.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::barycentric::BarycentricRational;
use crate::cmath::{div, inv, is_finite};
use crate::domain::{xs, Domain, DomainKind};
use crate::engine::{count_bad_poles, first_max, relative, Sampler};
use crate::error::{Error, Result};
use crate::kernels::{min_singular_vector, DenseMatrix};

/// Lawson is skipped when the starting error is below this many machine
/// epsilons (relative).
pub const SKIP_FACTOR: f64 = 100.0;

/// `f - r` along the domain, ordered by parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorCurve {
    pub params: Vec<f64>,
    /// Points in the caller's variable (non-finite for `z = ∞`).
    pub points: Vec<Complex64>,
    pub errors: Vec<Complex64>,
    /// Whether the curve closes up (circle and imaginary axis).
    pub closed: bool,
}

impl ErrorCurve {
    pub fn len(&self) -> usize {
        self.errors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn max_error(&self) -> f64 {
        self.errors.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }
}

/// Error curve of `r` on `xs(support, density)` merged with the support
/// points.
pub fn error_curve(
    sampler: &mut Sampler<'_>,
    r: &BarycentricRational,
    support: &[f64],
    density: usize,
) -> Result<ErrorCurve> {
    let domain = *sampler.domain();
    let mut params = xs(support, density, &domain)?;
    params.extend_from_slice(support);
    params.sort_by(f64::total_cmp);
    params.dedup();
    let mut errors = Vec::with_capacity(params.len());
    for &t in &params {
        errors.push(sampler.value(t)? - r.eval(domain.working_point(t)));
    }
    Ok(ErrorCurve {
        points: params.iter().map(|&t| domain.physical_point(t)).collect(),
        params,
        errors,
        closed: domain.is_periodic(),
    })
}

/// Net number of turns of the error curve around the origin.
pub fn winding_number(curve: &ErrorCurve) -> Result<i64> {
    let e = &curve.errors;
    if e.len() < 8 {
        return Err(Error::DegenerateCurve(format!("{} points, need at least 8", e.len())));
    }
    if let Some(k) = e.iter().position(|z| z.norm() == 0.0 || !is_finite(*z)) {
        return Err(Error::DegenerateCurve(format!("error {} at index {k}", e[k])));
    }
    let n = e.len();
    let pairs = if curve.closed { n } else { n - 1 };
    let mut total = 0.0;
    for k in 0..pairs {
        let (a, b) = (e[k], e[(k + 1) % n]);
        let jump = div(b, a).arg();
        if jump.abs() >= PI / 2.0 {
            return Err(Error::UnresolvedWinding { index: k, jump });
        }
        total += jump;
    }
    Ok((total / TAU).round() as i64)
}

/// Winding number on successively finer grids until every argument step is
/// resolved.
pub fn resolved_winding_number(
    sampler: &mut Sampler<'_>,
    r: &BarycentricRational,
    support: &[f64],
) -> Result<i64> {
    let mut last = None;
    for density in [30, 100, 300, 1000] {
        match winding_number(&error_curve(sampler, r, support, density)?) {
            Err(e @ Error::UnresolvedWinding { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.unwrap_or(Error::DegenerateCurve("no grid tried".into())))
}

/// Sign alternation of the real part of an error curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equioscillation {
    /// Number of maximal runs of constant sign.
    pub alternations: usize,
    /// Largest over smallest of the per-run extrema of `|Re e|`.
    pub ratio: f64,
    pub max_extremum: f64,
    pub min_extremum: f64,
}

pub fn equioscillation(curve: &ErrorCurve) -> Option<Equioscillation> {
    let mut extrema: Vec<f64> = Vec::new();
    let mut sign = 0.0;
    for e in &curve.errors {
        let v = e.re;
        if v == 0.0 || v.is_nan() {
            continue;
        }
        if v.signum() != sign {
            sign = v.signum();
            extrema.push(v.abs());
        } else if let Some(last) = extrema.last_mut() {
            *last = last.max(v.abs());
        }
    }
    if extrema.is_empty() {
        return None;
    }
    let max_extremum = extrema.iter().copied().fold(0.0, f64::max);
    let min_extremum = extrema.iter().copied().fold(f64::INFINITY, f64::min);
    Some(Equioscillation {
        alternations: extrema.len(),
        ratio: max_extremum / min_extremum,
        max_extremum,
        min_extremum,
    })
}

/// `max |e| / min |e|`; 1 for a perfect circle.
pub fn circularity(curve: &ErrorCurve) -> f64 {
    let min = curve.errors.iter().map(|e| e.norm()).fold(f64::INFINITY, f64::min);
    curve.max_error() / min
}

#[derive(Debug, Clone, PartialEq)]
pub enum LawsonStatus {
    Completed,
    /// The starting approximant was already accurate to rounding level.
    Skipped,
    /// The weights collapsed or became non-finite; the best iterate so far
    /// is returned.
    Breakdown(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LawsonOutcome {
    pub status: LawsonStatus,
    pub steps_taken: usize,
    /// Relative max error of the starting approximant on the working grid.
    pub initial_relative_error: f64,
    pub best_relative_error: f64,
    /// Iteration that produced the returned approximant (0 = the start).
    pub best_step: usize,
    /// Working grid size, support points included.
    pub grid_size: usize,
    /// Sum of the Lawson weights after the last step.
    pub lambda_sum: f64,
}

#[derive(Debug, Clone)]
pub struct LawsonResult {
    pub approximant: BarycentricRational,
    /// Error curve on the working grid.
    pub curve: ErrorCurve,
    pub outcome: LawsonOutcome,
}

/// Lawson refinement of `r0` for `f` on `domain`.
pub fn lawson_refine(
    f: &dyn Fn(Complex64) -> Complex64,
    r0: &BarycentricRational,
    domain: Domain,
    steps: usize,
) -> Result<LawsonResult> {
    if steps == 0 {
        return Err(Error::InvalidOptions("Lawson needs at least one step".into()));
    }
    let mut order: Vec<usize> = (0..r0.len()).collect();
    let params: Vec<f64> = r0.support().iter().map(|&s| domain.working_param(s)).collect();
    order.sort_by(|&a, &b| params[a].total_cmp(&params[b]));
    let pick = |v: &[Complex64]| order.iter().map(|&k| v[k]).collect::<Vec<_>>();
    let r0 = BarycentricRational::new(pick(r0.support()), pick(r0.values()), pick(r0.weights()))?;
    let sorted: Vec<f64> = order.iter().map(|&k| params[k]).collect();
    let mut sampler = Sampler::new(f, domain);
    refine(&mut sampler, &r0, &sorted, steps, 3)
}

struct Candidate {
    approximant: BarycentricRational,
    errors: Vec<Complex64>,
    max_error: f64,
    step: usize,
}

/// Lawson refinement on `xs(support, density) ∪ support`. `support` holds
/// the ascending parameters of `r0`'s support points, in `r0`'s order.
pub(crate) fn refine(
    sampler: &mut Sampler<'_>,
    r0: &BarycentricRational,
    support: &[f64],
    steps: usize,
    density: usize,
) -> Result<LawsonResult> {
    let domain = *sampler.domain();
    let m = r0.len();
    let s = r0.support().to_vec();
    let grid: Vec<f64> = xs(support, density, &domain)?
        .into_iter()
        .filter(|t| !support.contains(t))
        .collect();
    let ns = grid.len();
    let n = ns + m;
    let x: Vec<Complex64> = grid.iter().map(|&t| domain.working_point(t)).collect();
    let mut fv = sampler.values(&grid)?;
    fv.extend(sampler.values(support)?);

    let cauchy: Vec<Complex64> = x
        .iter()
        .flat_map(|&xi| s.iter().map(move |&sj| inv(xi - sj)))
        .collect();
    let row_scale: Vec<f64> = (0..m)
        .map(|j| (0..ns).map(|i| cauchy[i * m + j].norm()).fold(0.0, f64::max).max(1.0))
        .collect();
    let scale = fv.iter().map(|v| v.norm()).fold(0.0, f64::max);

    let errors_of = |r: &BarycentricRational| -> Vec<Complex64> {
        x.iter()
            .chain(&s)
            .zip(&fv)
            .map(|(&xi, &fi)| fi - r.eval(xi))
            .collect()
    };
    let e0 = errors_of(r0);
    let (_, e0_max) = first_max(e0.iter().map(|e| e.norm()));
    let mut best = Candidate {
        approximant: r0.clone(),
        errors: e0,
        max_error: e0_max,
        step: 0,
    };
    let initial = relative(e0_max, scale);

    let mut status = LawsonStatus::Completed;
    let mut steps_taken = 0;
    let mut lambda_sum = 1.0;
    if initial < SKIP_FACTOR * f64::EPSILON {
        status = LawsonStatus::Skipped;
    } else {
        let mut lambda = vec![1.0 / n as f64; n];
        for step in 1..=steps {
            let a = DenseMatrix::from_fn(n, 2 * m, |i, j| {
                let (c, f) = if i < ns {
                    (cauchy[i * m + j % m], fv[i])
                } else if j % m == i - ns {
                    (Complex64::new(row_scale[j % m], 0.0), fv[i])
                } else {
                    return Complex64::new(0.0, 0.0);
                };
                let c = c * lambda[i].sqrt();
                if j < m {
                    f * c
                } else {
                    -c
                }
            });
            let v = min_singular_vector(&a)?;
            let (beta, alpha) = v.split_at(m);
            let errors: Vec<Complex64> = (0..n)
                .map(|i| {
                    let r = if i < ns {
                        let row = &cauchy[i * m..(i + 1) * m];
                        let num: Complex64 = row.iter().zip(alpha).map(|(c, a)| c * a).sum();
                        let den: Complex64 = row.iter().zip(beta).map(|(c, b)| c * b).sum();
                        div(num, den)
                    } else {
                        div(alpha[i - ns], beta[i - ns])
                    };
                    fv[i] - r
                })
                .collect();
            steps_taken = step;
            if let Some(cand) = candidate(&s, alpha, beta, &errors, &domain, step)? {
                if cand.max_error < best.max_error {
                    best = cand;
                }
            }
            let mut sum = 0.0;
            for (l, e) in lambda.iter_mut().zip(&errors) {
                *l *= e.norm();
                sum += *l;
            }
            if !(sum > 0.0 && sum.is_finite()) {
                status = LawsonStatus::Breakdown(format!("weights sum to {sum} at step {step}"));
                break;
            }
            lambda.iter_mut().for_each(|l| *l /= sum);
            lambda_sum = lambda.iter().sum();
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let all_params: Vec<f64> = grid.iter().chain(support).copied().collect();
    order.sort_by(|&a, &b| all_params[a].total_cmp(&all_params[b]));
    let curve = ErrorCurve {
        params: order.iter().map(|&k| all_params[k]).collect(),
        points: order.iter().map(|&k| domain.physical_point(all_params[k])).collect(),
        errors: order.iter().map(|&k| best.errors[k]).collect(),
        closed: domain.kind != DomainKind::UnitInterval,
    };
    Ok(LawsonResult {
        approximant: best.approximant,
        curve,
        outcome: LawsonOutcome {
            status,
            steps_taken,
            initial_relative_error: initial,
            best_relative_error: relative(best.max_error, scale),
            best_step: best.step,
            grid_size: n,
            lambda_sum,
        },
    })
}

/// A Lawson iterate as a barycentric rational, if it is usable: finite,
/// every `β_j` clearly nonzero and no bad poles.
fn candidate(
    s: &[Complex64],
    alpha: &[Complex64],
    beta: &[Complex64],
    errors: &[Complex64],
    domain: &Domain,
    step: usize,
) -> Result<Option<Candidate>> {
    let bmax = beta.iter().map(|b| b.norm()).fold(0.0, f64::max);
    if beta.iter().any(|b| b.norm() <= 1e-14 * bmax) || !errors.iter().all(|e| is_finite(*e)) {
        return Ok(None);
    }
    let values = alpha.iter().zip(beta).map(|(&a, &b)| div(a, b)).collect();
    let Ok(r) = BarycentricRational::new(s.to_vec(), values, beta.to_vec()) else {
        return Ok(None);
    };
    if count_bad_poles(&r, domain)? > 0 {
        return Ok(None);
    }
    let (_, max_error) = first_max(errors.iter().map(|e| e.norm()));
    Ok(Some(Candidate {
        approximant: r,
        errors: errors.to_vec(),
        max_error,
        step,
    }))
}
