mod common;

use common::*;
use fracform_core::form::{pairs, ConductivityTable};
use fracform_core::*;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn conductivity_matches_dense_solve() {
    let mut rng = rng(1);
    for _ in 0..200 {
        let n = rng.random_range(2..=6);
        let e = random_form(&mut rng, n, 0.3);
        let l = boundary_laplacian(&e);
        let table = ConductivityTable::of(&e).unwrap();
        for (a, b) in pairs(n) {
            let want = pinned_min(&l, &[(a, 0.0), (b, 1.0)]);
            assert!(rel_close(table.get(a, b), want, 1e-9), "{} vs {want}", table.get(a, b));
            assert_eq!(table.get(a, b), table.get(b, a));
            // any direct conductor is a lower bound
            assert!(table.get(a, b) >= e.coefficient(a, b) * (1.0 - 1e-12));
        }
    }
}

#[test]
fn complete_triangle_by_brute_force() {
    // one free value x: minimize (0-1)^2 + x^2 + (1-x)^2 over a fine grid
    let best = (0..=100_000)
        .map(|i| i as f64 / 100_000.0)
        .map(|x| 1.0 + x * x + (1.0 - x) * (1.0 - x))
        .fold(f64::INFINITY, f64::min);
    let c = effective_conductivity(&DirichletForm::unit(3), 0, 2).unwrap();
    assert!((c - best).abs() < 1e-9);
    assert!((c - 1.5).abs() < 1e-15);
}

#[test]
fn pinned_minimizer_matches_dense_solve() {
    let mut rng = rng(2);
    for _ in 0..100 {
        let n = rng.random_range(2..=6);
        let e = random_form(&mut rng, n, 0.0);
        let a = rng.random_range(0..n);
        let b = (a + rng.random_range(1..n)) % n;
        let (ta, tb) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let (u, en) = pinned_minimizer(&e, a, b, ta, tb).unwrap();
        let want = pinned_solve(&boundary_laplacian(&e), &[(a, ta), (b, tb)]);
        for (x, y) in u.values().iter().zip(&want) {
            assert!((x - y).abs() < 1e-9 * (1.0 + y.abs()));
        }
        let c = effective_conductivity(&e, a, b).unwrap();
        assert!((en - (ta - tb) * (ta - tb) * c).abs() <= 1e-9 * (1.0 + en));
    }
}

#[test]
fn reducible_forms_are_rejected() {
    let e = DirichletForm::new(3, vec![1.0, 0.0, 0.0]).unwrap();
    assert!(!is_irreducible(&e));
    assert_eq!(pinned_minimizer(&e, 0, 2, 0.0, 1.0), Err(Error::ReducibleForm));
    assert_eq!(ConductivityTable::of(&e), Err(Error::ReducibleForm));
}

/// Projected gradient descent on `sum b_i x_i^2` restricted to `sum x_i = 1`.
fn projected_gradient(b: &[f64]) -> f64 {
    let n = b.len() as f64;
    let step = 0.5 / b.iter().cloned().fold(0.0, f64::max);
    let mut x = vec![1.0 / n; b.len()];
    for _ in 0..200_000 {
        let g: Vec<f64> = b.iter().zip(&x).map(|(bi, xi)| 2.0 * bi * xi).collect();
        let mean = g.iter().sum::<f64>() / n;
        let mut moved = 0.0f64;
        for (xi, gi) in x.iter_mut().zip(&g) {
            let d = step * (gi - mean);
            *xi -= d;
            moved = moved.max(d.abs());
        }
        if moved < 1e-17 {
            break;
        }
    }
    b.iter().zip(&x).map(|(bi, xi)| bi * xi * xi).sum()
}

#[test]
fn harmonic_min_three_by_grid_and_gradient() {
    let b = [1.0, 2.0, 3.0];
    let (value, x) = harmonic_min(&b).unwrap();
    assert!((projected_gradient(&b) - value).abs() < 1e-10);
    // exhaustive grid over the plane x1 + x2 + x3 = 1 around the optimum
    let mut best = f64::INFINITY;
    for i in 0..=400 {
        for j in 0..=400 {
            let x1 = 0.4 + i as f64 * 0.0005;
            let x2 = 0.15 + j as f64 * 0.0005;
            let x3 = 1.0 - x1 - x2;
            best = best.min(b[0] * x1 * x1 + b[1] * x2 * x2 + b[2] * x3 * x3);
        }
    }
    assert!(best >= value - 1e-15 && best - value < 1e-6);
    assert!((x.iter().sum::<f64>() - 1.0).abs() < 1e-15);
}

#[test]
fn harmonic_min_beats_random_points() {
    let mut rng = rng(3);
    for _ in 0..20 {
        let n = rng.random_range(1..=9);
        let b: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..10.0)).collect();
        let (value, xbar) = harmonic_min(&b).unwrap();
        let f = |x: &[f64]| b.iter().zip(x).map(|(bi, xi)| bi * xi * xi).sum::<f64>();
        assert!((f(&xbar) - value).abs() <= 1e-12 * value);
        for _ in 0..1000 {
            let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
            let shift = (x.iter().sum::<f64>() - 1.0) / n as f64;
            x.iter_mut().for_each(|xi| *xi -= shift);
            assert!(f(&x) >= value * (1.0 - 1e-12));
        }
    }
}

fn form_strategy() -> impl Strategy<Value = DirichletForm> {
    (2usize..7).prop_flat_map(|n| {
        prop::collection::vec(0.0f64..5.0, n * (n - 1) / 2).prop_map(move |c| DirichletForm::new(n, c).unwrap())
    })
}

proptest! {
    #[test]
    fn energy_ignores_constants(e in form_strategy(), seed in any::<u64>(), shift in -50.0f64..50.0) {
        let mut rng = rng(seed);
        let u: Vec<f64> = (0..e.n_boundary()).map(|_| rng.random_range(-5.0..5.0)).collect();
        let moved: Vec<f64> = u.iter().map(|x| x + shift).collect();
        let a = energy(&e, &u.into()).unwrap();
        let b = energy(&e, &moved.into()).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a));
    }

    #[test]
    fn energy_is_quadratic(e in form_strategy(), seed in any::<u64>(), t in -10.0f64..10.0) {
        let mut rng = rng(seed);
        let u: Vec<f64> = (0..e.n_boundary()).map(|_| rng.random_range(-5.0..5.0)).collect();
        let scaled: Vec<f64> = u.iter().map(|x| x * t).collect();
        let a = energy(&e, &u.into()).unwrap();
        let b = energy(&e, &scaled.into()).unwrap();
        prop_assert!((b - t * t * a).abs() <= 1e-9 * (1.0 + b));
    }
}
