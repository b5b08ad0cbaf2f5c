//! Independent reference computations: dense Laplacian assembly and an LU
//! solve of the pinned quadratic problem.
#![allow(dead_code)]

use fracform_core::{DirichletForm, FractalTriple, WeightVector};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Laplacian of `sum_i r_i E(v o psi_i)` built straight from the cell maps.
pub fn level1_laplacian(t: &FractalTriple, e: &DirichletForm, r: &WeightVector) -> DMatrix<f64> {
    let n = t.n_boundary();
    let mut l = DMatrix::zeros(t.n_level1(), t.n_level1());
    for (i, cell) in t.cells().enumerate() {
        for a in 0..n {
            for b in a + 1..n {
                let c = r[i] * e.coefficient(a, b);
                let (x, y) = (cell[a], cell[b]);
                l[(x, x)] += c;
                l[(y, y)] += c;
                l[(x, y)] -= c;
                l[(y, x)] -= c;
            }
        }
    }
    l
}

pub fn boundary_laplacian(e: &DirichletForm) -> DMatrix<f64> {
    let n = e.n_boundary();
    DMatrix::from_fn(n, n, |a, b| if a == b { (0..n).map(|c| e.coefficient(a, c)).sum() } else { -e.coefficient(a, b) })
}

pub fn quad(l: &DMatrix<f64>, v: &[f64]) -> f64 {
    let v = DVector::from_column_slice(v);
    (v.transpose() * l * &v)[(0, 0)]
}

/// Minimizer of `v^T L v` with `v[p] = value` for every pin.
pub fn pinned_solve(l: &DMatrix<f64>, pins: &[(usize, f64)]) -> Vec<f64> {
    let n = l.nrows();
    let free: Vec<usize> = (0..n).filter(|i| !pins.iter().any(|p| p.0 == *i)).collect();
    let mut v = vec![0.0; n];
    for &(p, x) in pins {
        v[p] = x;
    }
    if free.is_empty() {
        return v;
    }
    let a = DMatrix::from_fn(free.len(), free.len(), |i, j| l[(free[i], free[j])]);
    let rhs = DVector::from_fn(free.len(), |i, _| -pins.iter().map(|&(p, x)| l[(free[i], p)] * x).sum::<f64>());
    let x = a.lu().solve(&rhs).expect("nonsingular interior block");
    for (i, &f) in free.iter().enumerate() {
        v[f] = x[i];
    }
    v
}

pub fn pinned_min(l: &DMatrix<f64>, pins: &[(usize, f64)]) -> f64 {
    quad(l, &pinned_solve(l, pins))
}

/// Random form with log-uniform coefficients; with `sparsity > 0` some
/// coefficients are zeroed, re-drawing until the form is irreducible.
pub fn random_form(rng: &mut impl Rng, n: usize, sparsity: f64) -> DirichletForm {
    loop {
        let c: Vec<f64> = (0..n * (n - 1) / 2)
            .map(|_| if rng.random::<f64>() < sparsity { 0.0 } else { 10f64.powf(rng.random_range(-1.0..1.0)) })
            .collect();
        let e = DirichletForm::new(n, c).unwrap();
        if e.is_irreducible() {
            return e;
        }
    }
}

pub fn random_weights(rng: &mut impl Rng, k: usize) -> WeightVector {
    WeightVector::new((0..k).map(|_| 10f64.powf(rng.random_range(-1.0..1.0))).collect()).unwrap()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}
