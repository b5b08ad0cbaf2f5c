mod common;

use common::*;
use fracform_core::form::pairs;
use fracform_core::renorm::{level1_energy, renormalize_with_tol};
use fracform_core::*;
use rand::Rng;

fn builders() -> Vec<FractalTriple> {
    let mut out: Vec<FractalTriple> = (2..=6).map(|n| build_gasket(n).unwrap()).collect();
    out.push(build_counterexample());
    out
}

#[test]
fn gasket3_trace_by_dense_minimization() {
    let t = build_gasket(3).unwrap();
    let e = DirichletForm::unit(3);
    let r = WeightVector::ones(3);
    let l = level1_laplacian(&t, &e, &r);
    // pins (0, 1, 0) on the boundary: energy of the traced form is 2 * c
    let min = pinned_min(&l, &[(0, 0.0), (1, 1.0), (2, 0.0)]);
    assert!((min / 2.0 - 0.6).abs() < 1e-12);
    let f = renormalize(&t, &e, &r).unwrap();
    for c in f.coefficients() {
        assert!((c - 0.6).abs() < 1e-12);
    }
}

#[test]
fn harmonic_extension_matches_dense_solve() {
    let mut rng = rng(10);
    for t in builders() {
        let n = t.n_boundary();
        let e = random_form(&mut rng, n, 0.2);
        let r = random_weights(&mut rng, t.n_cells());
        let u: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let v = harmonic_extension(&t, &e, &r, &u.clone().into()).unwrap();
        let pins: Vec<(usize, f64)> = u.iter().copied().enumerate().collect();
        let want = pinned_solve(&level1_laplacian(&t, &e, &r), &pins);
        for (x, y) in v.iter().zip(&want) {
            assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
    }
}

#[test]
fn extension_is_minimal_against_perturbations() {
    let mut rng = rng(11);
    let t = build_counterexample();
    let e = random_form(&mut rng, 20, 0.0);
    let r = random_weights(&mut rng, 20);
    let u: Vec<f64> = (0..20).map(|_| rng.random_range(-1.0..1.0)).collect();
    let v = harmonic_extension(&t, &e, &r, &u.into()).unwrap();
    let best = level1_energy(&t, &e, &r, &v).unwrap();
    for _ in 0..100 {
        let mut w = v.clone();
        for x in w.iter_mut().skip(20) {
            *x += rng.random_range(-0.01..0.01);
        }
        assert!(level1_energy(&t, &e, &r, &w).unwrap() >= best);
    }
    let c = harmonic_extension(&t, &e, &r, &vec![0.3; 20].into()).unwrap();
    assert!(c.iter().all(|x| (x - 0.3).abs() < 1e-15));
}

#[test]
fn assembled_form_equals_cell_sum() {
    let mut rng = rng(12);
    for t in builders() {
        let e = random_form(&mut rng, t.n_boundary(), 0.3);
        let r = random_weights(&mut rng, t.n_cells());
        let s = assemble_level1(&t, &e, &r).unwrap();
        for _ in 0..10 {
            let v: Vec<f64> = (0..t.n_level1()).map(|_| rng.random_range(-1.0..1.0)).collect();
            let a = s.energy(&v).unwrap();
            let b = level1_energy(&t, &e, &r, &v).unwrap();
            assert!((a - b).abs() <= 1e-12 * b);
        }
    }
}

#[test]
fn trace_identity_and_markov_property() {
    let mut rng = rng(13);
    for t in builders() {
        let n = t.n_boundary();
        let e = random_form(&mut rng, n, 0.2);
        let r = random_weights(&mut rng, t.n_cells());
        let f = renormalize_with_tol(&t, &e, &r, 1e-9).unwrap();
        assert!(f.coefficients().iter().all(|&c| c >= 0.0));
        assert!(f.is_irreducible());
        for _ in 0..20 {
            let u: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let v = harmonic_extension(&t, &e, &r, &u.clone().into()).unwrap();
            let lhs = energy(&f, &u.into()).unwrap();
            let rhs = level1_energy(&t, &e, &r, &v).unwrap();
            assert!(rel_close(lhs, rhs, 1e-9), "{lhs} vs {rhs}");
        }
    }
}

#[test]
fn homogeneity_in_form_and_weights() {
    let mut rng = rng(14);
    for t in builders() {
        let e = random_form(&mut rng, t.n_boundary(), 0.0);
        let r = random_weights(&mut rng, t.n_cells());
        let base = renormalize(&t, &e, &r).unwrap();
        let by_form = renormalize(&t, &e.scaled(3.5), &r).unwrap();
        let by_weights = renormalize(&t, &e, &r.scaled(0.25).unwrap()).unwrap();
        for ((b, f), w) in base.coefficients().iter().zip(by_form.coefficients()).zip(by_weights.coefficients()) {
            assert!(rel_close(*f, 3.5 * b, 1e-12));
            assert!(rel_close(*w, 0.25 * b, 1e-12));
        }
    }
}

#[test]
fn two_conductivity_routes_agree() {
    let mut rng = rng(15);
    for t in builders() {
        let e = random_form(&mut rng, t.n_boundary(), 0.0);
        let r = random_weights(&mut rng, t.n_cells());
        let f = renormalize(&t, &e, &r).unwrap();
        let l = level1_laplacian(&t, &e, &r);
        for (a, b) in pairs(t.n_boundary()).step_by(7) {
            let direct = effective_conductivity_level1(&t, &e, &r, a, b).unwrap();
            let traced = effective_conductivity(&f, a, b).unwrap();
            let dense = pinned_min(&l, &[(a, 0.0), (b, 1.0)]);
            assert!(rel_close(direct, traced, 1e-9));
            assert!(rel_close(direct, dense, 1e-9));
        }
    }
}

#[test]
fn golden_controls() {
    let g2 = build_gasket(2).unwrap();
    assert_eq!(effective_conductivity_level1(&g2, &DirichletForm::unit(2), &WeightVector::ones(2), 0, 1).unwrap(), 0.5);
    let g3 = build_gasket(3).unwrap();
    for (a, b) in pairs(3) {
        let c = effective_conductivity_level1(&g3, &DirichletForm::unit(3), &WeightVector::ones(3), a, b).unwrap();
        assert!((c - 0.9).abs() < 1e-12);
    }
}

#[test]
fn reducible_input_fails() {
    let t = build_gasket(3).unwrap();
    let e = DirichletForm::new(3, vec![1.0, 0.0, 0.0]).unwrap();
    let r = WeightVector::ones(3);
    assert_eq!(harmonic_extension(&t, &e, &r, &vec![0.0, 1.0, 0.0].into()), Err(Error::ReducibleForm));
    assert_eq!(effective_conductivity_level1(&t, &e, &r, 0, 1), Err(Error::ReducibleForm));
}
