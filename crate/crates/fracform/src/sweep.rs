//! Parallel versions of the grid search and the certificate sweep.
//!
//! Work items are independent; results are collected by index, so the output
//! does not depend on scheduling or thread count.

use fracform_core::eigenflow::{evaluate_grid_point, sample_form, sample_form_and_weights, simplex_grid};
use fracform_core::{Counterexample, FractalTriple, GridConfig, SearchReport, WeightVector};
use rayon::prelude::*;

use crate::report::{CertificateJson, CertifyReport, Outcome, SampleJson};

/// Same report as [`fracform_core::search_g_eigenform`], computed in parallel.
pub fn search(triple: &FractalTriple, config: &GridConfig) -> SearchReport {
    let records = simplex_grid(triple.n_cells(), config)
        .into_par_iter()
        .enumerate()
        .map(|(i, r)| evaluate_grid_point(triple, i, r, config))
        .collect();
    SearchReport::from_records(*config, triple.n_cells(), records)
}

/// Where the weights of a certificate sweep come from.
#[derive(Debug, Clone, PartialEq)]
pub enum Weights {
    Fixed(WeightVector),
    /// Drawn per sample from the sample's own stream, after the form.
    PerSample,
}

/// Certificates for samples `0..count` of `seed`.
pub fn certify(weights: &Weights, count: usize, seed: u64, tol: f64) -> CertifyReport {
    let ce = Counterexample::new();
    let samples: Vec<SampleJson> = (0..count as u64)
        .into_par_iter()
        .map(|index| {
            let (form, r, own) = match weights {
                Weights::Fixed(r) => (sample_form(seed, index), r.clone(), None),
                Weights::PerSample => {
                    let (form, r) = sample_form_and_weights(seed, index);
                    let own = Some(r.as_slice().to_vec());
                    (form, r, own)
                }
            };
            let certificate = match ce.certificate(&form, &r) {
                Ok(c) => Outcome::Ok(CertificateJson::new(&c, &r, tol)),
                Err(e) => Outcome::Error(e.to_string()),
            };
            SampleJson { index, r: own, certificate }
        })
        .collect();
    CertifyReport {
        seed,
        sample_count: count,
        tol,
        r: match weights {
            Weights::Fixed(r) => Some(r.as_slice().to_vec()),
            Weights::PerSample => None,
        },
        failed_samples: samples.iter().filter(|s| s.certificate.ok().is_none()).count(),
        samples_with_violations: samples
            .iter()
            .filter(|s| s.certificate.ok().is_some_and(|c| !c.violations.is_empty()))
            .count(),
        samples,
    }
}
