//! Serialized results: `model.json`, `history.csv` and `error_curve.csv`.
//!
//! Complex numbers are written as `[re, im]` pairs. Floats use the shortest
//! representation that reads back to the same bits, so a model survives a
//! round trip exactly.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::barycentric::BarycentricRational;
use crate::domain::{Domain, DomainKind};
use crate::engine::{self, AaaResult, ConvergenceRecord, Sampler, Status};
use crate::error::{Error, Result};
use crate::lawson::{ErrorCurve, LawsonStatus};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub degree: usize,
    pub error: f64,
    pub bad_poles: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawsonSummary {
    pub status: String,
    pub steps_taken: usize,
    pub initial_relative_error: f64,
    pub best_relative_error: f64,
}

/// Contents of `model.json`.
///
/// `support`, `values` and `weights` describe the approximant in the working
/// variable: `x` on the interval, `z` on the circle and `w = (z - M)/(z + M)`
/// on the imaginary axis. Poles, residues and zeros are in the caller's
/// variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Model {
    pub domain: String,
    pub mero: bool,
    pub mobius_scale: f64,
    pub degree: usize,
    pub support: Vec<[f64; 2]>,
    /// Domain parameters of the support points (abscissa or angle).
    pub support_params: Vec<f64>,
    pub values: Vec<[f64; 2]>,
    pub weights: Vec<[f64; 2]>,
    pub poles: Vec<[f64; 2]>,
    pub residues: Vec<[f64; 2]>,
    pub zeros: Vec<[f64; 2]>,
    pub status: String,
    pub grid_error: f64,
    pub fine_error: f64,
    pub feval_count: usize,
    pub history: Vec<HistoryEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lawson: Option<LawsonSummary>,
}

fn pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(pair).collect()
}

fn complex(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|p| Complex64::new(p[0], p[1])).collect()
}

fn domain_kind(name: &str) -> Option<DomainKind> {
    [DomainKind::UnitInterval, DomainKind::UnitCircle, DomainKind::ImaginaryAxis]
        .into_iter()
        .find(|k| k.name() == name)
}

impl Model {
    pub fn from_result(result: &AaaResult) -> Self {
        let r = &result.approximant;
        Model {
            domain: result.domain.kind.name().to_string(),
            mero: result.domain.mero,
            mobius_scale: result.domain.mobius_scale,
            degree: result.degree(),
            support: pairs(r.support()),
            support_params: result.support_params.clone(),
            values: pairs(r.values()),
            weights: pairs(r.weights()),
            poles: pairs(&result.report.poles),
            residues: pairs(&result.report.residues),
            zeros: pairs(&result.report.zeros),
            status: result.status.name().to_string(),
            grid_error: result.grid_error,
            fine_error: result.fine_error,
            feval_count: result.feval_count,
            history: result
                .history
                .iter()
                .map(|h| HistoryEntry {
                    degree: h.degree,
                    error: h.grid_error,
                    bad_poles: h.bad_poles,
                })
                .collect(),
            lawson: result.lawson.as_ref().map(|l| LawsonSummary {
                status: match &l.status {
                    LawsonStatus::Completed => "completed".to_string(),
                    LawsonStatus::Skipped => "skipped".to_string(),
                    LawsonStatus::Breakdown(why) => format!("breakdown: {why}"),
                },
                steps_taken: l.steps_taken,
                initial_relative_error: l.initial_relative_error,
                best_relative_error: l.best_relative_error,
            }),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string(self).map_err(|e| Error::Model(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: Model = serde_json::from_str(text).map_err(|e| Error::Model(e.to_string()))?;
        model.domain()?;
        model.approximant()?;
        if Status::from_name(&model.status).is_none() {
            return Err(Error::Model(format!("unknown status {:?}", model.status)));
        }
        if model.support_params.len() != model.support.len() {
            return Err(Error::Model("support_params and support differ in length".into()));
        }
        Ok(model)
    }

    pub fn domain(&self) -> Result<Domain> {
        let kind = domain_kind(&self.domain)
            .ok_or_else(|| Error::Model(format!("unknown domain {:?}", self.domain)))?;
        Ok(Domain {
            kind,
            mero: self.mero,
            mobius_scale: self.mobius_scale,
        })
    }

    /// The approximant in the working variable.
    pub fn approximant(&self) -> Result<BarycentricRational> {
        BarycentricRational::new(complex(&self.support), complex(&self.values), complex(&self.weights))
    }

    /// Relative error of the stored approximant against `f` on the same fine
    /// grid the engine used, `xs(S, density)`.
    pub fn fine_error(&self, f: &dyn Fn(Complex64) -> Complex64, density: usize) -> Result<f64> {
        let mut sampler = Sampler::new(f, self.domain()?);
        engine::fine_error(&mut sampler, &self.approximant()?, &self.support_params, density)
    }
}

/// `history.csv`: one row per AAA step.
pub fn history_csv(history: &[ConvergenceRecord]) -> String {
    let mut s = String::from("degree,error,bad_poles\n");
    for h in history {
        let _ = writeln!(s, "{},{:e},{}", h.degree, h.grid_error, u8::from(h.bad_poles));
    }
    s
}

/// `error_curve.csv`: the point in the caller's variable and the complex
/// error `f - r` there, ordered along the domain.
pub fn error_curve_csv(curve: &ErrorCurve) -> String {
    let mut s = String::from("param_re,param_im,err_re,err_im\n");
    for (z, e) in curve.points.iter().zip(&curve.errors) {
        let _ = writeln!(s, "{:e},{:e},{:e},{:e}", z.re, z.im, e.re, e.im);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run, AaaOptions};

    fn exp(z: Complex64) -> Complex64 {
        z.exp()
    }

    #[test]
    fn json_round_trip_is_exact() {
        let result = run(&exp, Domain::interval(), &AaaOptions::default()).unwrap();
        let model = Model::from_result(&result);
        let back = Model::from_json(&model.to_json().unwrap()).unwrap();
        assert_eq!(back, model);
        assert_eq!(back.approximant().unwrap(), result.approximant);
        assert_eq!(back.history.len(), result.history.len());
    }

    #[test]
    fn fine_error_reproduces_from_file() {
        let spec = crate::funcspec::FunctionSpec::from_text("1/(z+1.5)").unwrap();
        let f = move |z: Complex64| spec.eval(z);
        let result = run(&f, Domain::imaginary_axis(false), &AaaOptions::default()).unwrap();
        let model = Model::from_json(&Model::from_result(&result).to_json().unwrap()).unwrap();
        let again = model.fine_error(&f, 30).unwrap();
        assert!((again - result.fine_error).abs() <= 1e-15, "{again} vs {}", result.fine_error);
    }

    #[test]
    fn constant_model_has_no_poles() {
        let one = |_: Complex64| Complex64::new(1.0, 0.0);
        let result = run(&one, Domain::interval(), &AaaOptions::default()).unwrap();
        let model = Model::from_result(&result);
        assert_eq!(model.degree, 1);
        assert!(model.poles.is_empty() && model.zeros.is_empty());
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(Model::from_json("{"), Err(Error::Model(_))));
        let result = run(&exp, Domain::interval(), &AaaOptions::default()).unwrap();
        let mut model = Model::from_result(&result);
        model.domain = "square".into();
        assert!(Model::from_json(&model.to_json().unwrap()).is_err());
    }

    #[test]
    fn csv_headers_and_rows() {
        let result = run(&exp, Domain::interval(), &AaaOptions::default()).unwrap();
        let h = history_csv(&result.history);
        assert_eq!(h.lines().count(), result.history.len() + 1);
        assert!(h.starts_with("degree,error,bad_poles\n1,"));
        let curve = result.error_curve(&exp, 30).unwrap();
        let c = error_curve_csv(&curve);
        assert_eq!(c.lines().count(), curve.len() + 1);
    }
}
