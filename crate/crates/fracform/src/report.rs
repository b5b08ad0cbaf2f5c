//! Serializable reports for `search`, `certify` and `iterate`.
//!
//! Labels are one-based. Timing never enters a report, so equal inputs give
//! byte-identical files.

use std::io;

use fracform_core::eigenflow::{GridRecord, StepRecord};
use fracform_core::{IterationTrace, ObstructionCertificate, SearchReport, WeightVector, DEFAULT_TOL};
use serde::Serialize;

use crate::format::format_f64;

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub rbar: f64,
    /// The block achieving `rbar`, as its two boundary labels.
    pub near_pair: [usize; 2],
    pub near_ratio: f64,
    pub near_bound: f64,
    pub near_margin: f64,
    /// Label of the largest far-pair conductivity.
    pub far_label: usize,
    pub far_ratio: f64,
    pub far_margin: f64,
    pub far_ratios: Vec<f64>,
    pub min_far_margin: f64,
    pub junction_value: f64,
    pub far_conductivity_renormalized: f64,
    pub test_function_energy: f64,
    pub test_function_bound: f64,
    pub violations: Vec<&'static str>,
}

impl CertificateJson {
    pub fn new(c: &ObstructionCertificate, r: &WeightVector, tol: f64) -> Self {
        CertificateJson {
            rbar: c.rbar,
            near_pair: [2 * c.hbar + 1, 2 * c.hbar + 2],
            near_ratio: c.near_ratio,
            near_bound: c.rbar / 2.0,
            near_margin: c.near_margin,
            far_label: c.lhat + 1,
            far_ratio: c.far_ratio,
            far_margin: c.far_margin,
            far_ratios: c.far_ratios.clone(),
            min_far_margin: c.min_far_margin(),
            junction_value: c.junction_value,
            far_conductivity_renormalized: c.far_conductivity_renormalized,
            test_function_energy: c.test_function_energy,
            test_function_bound: c.test_function_bound,
            violations: c.violations(r, tol),
        }
    }
}

/// Either a certificate or the error that prevented computing one.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome<T> {
    Ok(T),
    Error(String),
}

impl<T> Outcome<T> {
    pub fn ok(&self) -> Option<&T> {
        match self {
            Outcome::Ok(t) => Some(t),
            Outcome::Error(_) => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleJson {
    pub index: u64,
    /// Present when weights were drawn per sample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<f64>>,
    pub certificate: Outcome<CertificateJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyReport {
    pub seed: u64,
    pub sample_count: usize,
    pub tol: f64,
    /// Shared weights, or `None` when every sample draws its own.
    pub r: Option<Vec<f64>>,
    pub failed_samples: usize,
    pub samples_with_violations: usize,
    pub samples: Vec<SampleJson>,
}

impl CertifyReport {
    pub fn is_clean(&self) -> bool {
        self.failed_samples == 0 && self.samples_with_violations == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GridConfigJson {
    pub levels: usize,
    pub max_axes: usize,
    pub max_steps: usize,
    pub tol: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridPointJson {
    pub index: usize,
    pub r: Vec<f64>,
    pub result: Outcome<GridResultJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridResultJson {
    pub converged: bool,
    pub steps: usize,
    pub best_residual: f64,
    pub final_residual: f64,
    pub best_projective_residual: f64,
    pub conductivity_spread: f64,
    pub eigenvalue_estimate: f64,
    /// Last iterate, coefficient sum one, pairs in lexicographic order.
    pub form: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Outcome<CertificateJson>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReportJson {
    pub n_cells: usize,
    pub config: GridConfigJson,
    pub point_count: usize,
    pub converged_count: usize,
    pub best_index: Option<usize>,
    pub best_residual: Option<f64>,
    pub points: Vec<GridPointJson>,
}

fn grid_point(rec: &GridRecord) -> GridPointJson {
    let result = match &rec.outcome {
        Ok(o) => Outcome::Ok(GridResultJson {
            converged: o.converged,
            steps: o.steps,
            best_residual: o.best_residual,
            final_residual: o.final_residual,
            best_projective_residual: o.best_projective_residual,
            conductivity_spread: o.conductivity_spread,
            eigenvalue_estimate: o.eigenvalue_estimate,
            form: o.form.coefficients().to_vec(),
            certificate: o.certificate.as_ref().map(|c| match c {
                Ok(c) => Outcome::Ok(CertificateJson::new(c, &rec.weights, DEFAULT_TOL)),
                Err(e) => Outcome::Error(e.to_string()),
            }),
        }),
        Err(e) => Outcome::Error(e.to_string()),
    };
    GridPointJson { index: rec.index, r: rec.weights.as_slice().to_vec(), result }
}

impl From<&SearchReport> for SearchReportJson {
    fn from(s: &SearchReport) -> Self {
        let points: Vec<GridPointJson> = s.records.iter().map(grid_point).collect();
        SearchReportJson {
            n_cells: s.n_cells,
            config: GridConfigJson {
                levels: s.config.levels,
                max_axes: s.config.max_axes,
                max_steps: s.config.max_steps,
                tol: s.config.tol,
            },
            point_count: points.len(),
            converged_count: s.records.iter().filter(|r| r.outcome.as_ref().is_ok_and(|o| o.converged)).count(),
            best_index: s.best_record().map(|r| r.index),
            best_residual: s.best_residual(),
            points,
        }
    }
}

fn cell(value: Option<f64>) -> String {
    value.map(format_f64).unwrap_or_default()
}

fn trace_row(rec: &StepRecord) -> [String; 6] {
    [
        rec.step.to_string(),
        cell(rec.residual),
        cell(rec.lyapunov.map(|l| l.far_max)),
        cell(rec.lyapunov.map(|l| l.near)),
        cell(rec.lyapunov.map(|l| l.phi)),
        cell(rec.scale),
    ]
}

/// Step trace as CSV with columns `step, residual, M, m, phi, coeff_sum`.
///
/// `coeff_sum` is the coefficient sum of the renormalized previous iterate
/// (the eigenvalue estimate). Cells without a value are left empty: the
/// residual and `coeff_sum` at step 0, and `M, m, phi` off the ring triple.
pub fn write_trace<W: io::Write>(trace: &IterationTrace, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["step", "residual", "M", "m", "phi", "coeff_sum"])?;
    for rec in &trace.records {
        w.write_record(trace_row(rec))?;
    }
    w.flush()?;
    Ok(())
}
