//! Dirichlet forms on the boundary set `V0`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use crate::error::{Error, Result};
use crate::network::{back_substitute, Network};

/// Relative tolerance used by numeric post-conditions unless overridden.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Position of the unordered pair `{a, b}` (a < b) in lexicographic order
/// over all pairs of `0..n`.
#[inline]
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// All unordered pairs of `0..n` in the order used by [`pair_index`].
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
}

/// A Dirichlet form `E(u) = sum c_{a,b} (u_a - u_b)^2` on `n` boundary
/// vertices, stored densely over all pairs (zero coefficients included).
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletForm {
    n: usize,
    coefficients: Vec<f64>,
}

impl DirichletForm {
    /// Builds a form from coefficients in [`pairs`] order.
    pub fn new(n: usize, coefficients: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: n });
        }
        let expected = n * (n - 1) / 2;
        if coefficients.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: coefficients.len() });
        }
        for ((a, b), &value) in pairs(n).zip(&coefficients) {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::NegativeCoefficient { a, b, value });
            }
        }
        Ok(DirichletForm { n, coefficients })
    }

    /// Every coefficient equal to one.
    pub fn unit(n: usize) -> Self {
        Self::constant(n, 1.0)
    }

    pub fn constant(n: usize, value: f64) -> Self {
        assert!(n >= 2 && value >= 0.0);
        DirichletForm { n, coefficients: vec![value; n * (n - 1) / 2] }
    }

    pub fn n_boundary(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Coefficient of the pair `{a, b}` in either order; zero when `a == b`.
    pub fn coefficient(&self, a: usize, b: usize) -> f64 {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => self.coefficients[pair_index(self.n, a, b)],
            core::cmp::Ordering::Greater => self.coefficients[pair_index(self.n, b, a)],
            core::cmp::Ordering::Equal => 0.0,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        DirichletForm { n: self.n, coefficients: self.coefficients.iter().map(|c| c * factor).collect() }
    }

    pub fn coefficient_sum(&self) -> f64 {
        self.coefficients.iter().sum()
    }

    /// The same form rescaled to coefficient sum one.
    pub fn normalized(&self) -> Result<Self> {
        let s = self.coefficient_sum();
        if !(s > 0.0) {
            return Err(Error::ZeroForm);
        }
        Ok(self.scaled(1.0 / s))
    }

    pub fn energy(&self, u: &BoundaryFunction) -> Result<f64> {
        energy(self, u)
    }

    /// Irreducible iff the support graph `{pairs with c > 0}` is connected.
    pub fn is_irreducible(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for (b, s) in seen.iter_mut().enumerate() {
                if !*s && self.coefficient(a, b) > 0.0 {
                    *s = true;
                    stack.push(b);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn require_irreducible(&self) -> Result<()> {
        if self.is_irreducible() {
            Ok(())
        } else {
            Err(Error::ReducibleForm)
        }
    }

    fn check_pins(&self, a: usize, b: usize) -> Result<()> {
        for label in [a, b] {
            if label >= self.n {
                return Err(Error::LabelOutOfRange { label, n: self.n });
            }
        }
        if a == b {
            return Err(Error::SamePins(a));
        }
        Ok(())
    }

    pub(crate) fn network(&self) -> Network {
        let mut net = Network::new(self.n);
        for ((a, b), &c) in pairs(self.n).zip(&self.coefficients) {
            if c > 0.0 {
                net.add(a, b, c);
            }
        }
        net
    }
}

/// A real function on the boundary vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFunction(pub Vec<f64>);

impl BoundaryFunction {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for BoundaryFunction {
    fn from(v: Vec<f64>) -> Self {
        BoundaryFunction(v)
    }
}

impl Index<usize> for BoundaryFunction {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

pub fn energy(form: &DirichletForm, u: &BoundaryFunction) -> Result<f64> {
    if u.len() != form.n {
        return Err(Error::DimensionMismatch { expected: form.n, found: u.len() });
    }
    Ok(pairs(form.n)
        .zip(&form.coefficients)
        .map(|((a, b), &c)| {
            let d = u[a] - u[b];
            c * d * d
        })
        .sum())
}

pub fn is_irreducible(form: &DirichletForm) -> bool {
    form.is_irreducible()
}

/// Minimum energy over boundary functions pinned to 0 at `a` and 1 at `b`.
pub fn effective_conductivity(form: &DirichletForm, a: usize, b: usize) -> Result<f64> {
    form.check_pins(a, b)?;
    form.require_irreducible()?;
    let mut net = form.network();
    net.reduce_to(&[a, b])?;
    Ok(net.get(a, b))
}

/// Effective conductivities for every pair, in [`pairs`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConductivityTable {
    n: usize,
    values: Vec<f64>,
}

impl ConductivityTable {
    pub fn of(form: &DirichletForm) -> Result<Self> {
        let values = pairs(form.n).map(|(a, b)| effective_conductivity(form, a, b)).collect::<Result<Vec<_>>>()?;
        Ok(ConductivityTable { n: form.n, values })
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.values[pair_index(self.n, lo, hi)]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// The energy minimizer with `u(a) = ta`, `u(b) = tb`, and its energy
/// `(ta - tb)^2 * C(a, b)`.
pub fn pinned_minimizer(form: &DirichletForm, a: usize, b: usize, ta: f64, tb: f64) -> Result<(BoundaryFunction, f64)> {
    form.check_pins(a, b)?;
    form.require_irreducible()?;
    let mut net = form.network();
    let steps = net.reduce_to(&[a, b])?;
    let mut values = vec![0.0; form.n];
    values[a] = ta;
    values[b] = tb;
    back_substitute(&mut values, &steps);
    let u = BoundaryFunction(values);
    let e = energy(form, &u)?;
    Ok((u, e))
}

/// Minimum of `sum b_i x_i^2` over `sum x_i = 1`, with its minimizer.
///
/// The value is the harmonic sum `(sum 1/b_i)^{-1}`, attained at
/// `x_i = value / b_i`.
pub fn harmonic_min(b: &[f64]) -> Result<(f64, Vec<f64>)> {
    if b.is_empty() {
        return Err(Error::Empty);
    }
    for (index, &value) in b.iter().enumerate() {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonPositiveWeight { index, value });
        }
    }
    let value = 1.0 / b.iter().map(|x| 1.0 / x).sum::<f64>();
    let x = b.iter().map(|bi| value / bi).collect();
    Ok((value, x))
}
