//! The level-1 energy `S_{1,r}(E)`, harmonic extension, and the
//! renormalization map `Lambda_r` obtained by tracing `S_{1,r}(E)` back onto
//! the boundary.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::form::{pairs, BoundaryFunction, DirichletForm, DEFAULT_TOL};
use crate::network::{back_substitute, Network};
use crate::triple::FractalTriple;

/// Positive weights, one per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(r: Vec<f64>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in r.iter().enumerate() {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveWeight { index, value });
            }
        }
        Ok(WeightVector(r))
    }

    pub fn ones(k: usize) -> Self {
        WeightVector(vec![1.0; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn scaled(&self, t: f64) -> Result<Self> {
        Self::new(self.0.iter().map(|x| x * t).collect())
    }
}

impl core::ops::Index<usize> for WeightVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// `S_{1,r}(E)` as a sparse symmetric conductance map on level-1 ids.
///
/// Keys are `(a, b)` with `a < b`; only pairs lying in a common cell with a
/// positive pulled-back coefficient are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Level1Form {
    n_level1: usize,
    edges: BTreeMap<(usize, usize), f64>,
}

impl Level1Form {
    pub fn n_level1(&self) -> usize {
        self.n_level1
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.edges.iter().map(|(&k, &v)| (k, v))
    }

    pub fn conductance(&self, a: usize, b: usize) -> f64 {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.get(&key).copied().unwrap_or(0.0)
    }

    pub fn energy(&self, v: &[f64]) -> Result<f64> {
        if v.len() != self.n_level1 {
            return Err(Error::DimensionMismatch { expected: self.n_level1, found: v.len() });
        }
        Ok(self
            .edges
            .iter()
            .map(|(&(a, b), &c)| {
                let d = v[a] - v[b];
                c * d * d
            })
            .sum())
    }

    fn network(&self) -> Network {
        let mut net = Network::new(self.n_level1);
        for (&(a, b), &c) in &self.edges {
            net.add(a, b, c);
        }
        net
    }
}

fn check_dims(triple: &FractalTriple, form: &DirichletForm, r: &WeightVector) -> Result<()> {
    if form.n_boundary() != triple.n_boundary() {
        return Err(Error::DimensionMismatch { expected: triple.n_boundary(), found: form.n_boundary() });
    }
    if r.len() != triple.n_cells() {
        return Err(Error::DimensionMismatch { expected: triple.n_cells(), found: r.len() });
    }
    Ok(())
}

pub fn assemble_level1(triple: &FractalTriple, form: &DirichletForm, r: &WeightVector) -> Result<Level1Form> {
    check_dims(triple, form, r)?;
    let n = triple.n_boundary();
    let mut edges = BTreeMap::new();
    for (i, cell) in triple.cells().enumerate() {
        for ((h1, h2), &c) in pairs(n).zip(form.coefficients()) {
            if c > 0.0 {
                let (a, b) = (cell[h1], cell[h2]);
                let key = if a < b { (a, b) } else { (b, a) };
                *edges.entry(key).or_insert(0.0) += r[i] * c;
            }
        }
    }
    Ok(Level1Form { n_level1: triple.n_level1(), edges })
}

/// `S_{1,r}(E)(v) = sum_i r_i E(v o psi_i)`, evaluated cell by cell.
pub fn level1_energy(triple: &FractalTriple, form: &DirichletForm, r: &WeightVector, v: &[f64]) -> Result<f64> {
    check_dims(triple, form, r)?;
    if v.len() != triple.n_level1() {
        return Err(Error::DimensionMismatch { expected: triple.n_level1(), found: v.len() });
    }
    let mut total = 0.0;
    for (i, cell) in triple.cells().enumerate() {
        let pulled = BoundaryFunction(cell.iter().map(|&id| v[id]).collect());
        total += r[i] * form.energy(&pulled)?;
    }
    Ok(total)
}

/// The minimizer of `S_{1,r}(E)` among level-1 functions equal to `u` on the
/// boundary.
pub fn harmonic_extension(
    triple: &FractalTriple,
    form: &DirichletForm,
    r: &WeightVector,
    u: &BoundaryFunction,
) -> Result<Vec<f64>> {
    check_dims(triple, form, r)?;
    if u.len() != triple.n_boundary() {
        return Err(Error::DimensionMismatch { expected: triple.n_boundary(), found: u.len() });
    }
    if !form.is_irreducible() {
        return Err(Error::ReducibleForm);
    }
    let mut net = assemble_level1(triple, form, r)?.network();
    let boundary: Vec<usize> = (0..triple.n_boundary()).collect();
    let steps = net.reduce_to(&boundary)?;
    let mut v = vec![0.0; triple.n_level1()];
    v[..u.len()].copy_from_slice(u.values());
    back_substitute(&mut v, &steps);
    Ok(v)
}

/// `Lambda_r(E)`: the trace of `S_{1,r}(E)` onto the boundary.
pub fn renormalize(triple: &FractalTriple, form: &DirichletForm, r: &WeightVector) -> Result<DirichletForm> {
    renormalize_with_tol(triple, form, r, DEFAULT_TOL)
}

/// As [`renormalize`]; traced coefficients in `[-tol, 0)` are clipped to zero
/// and anything more negative is a numerical failure.
pub fn renormalize_with_tol(
    triple: &FractalTriple,
    form: &DirichletForm,
    r: &WeightVector,
    tol: f64,
) -> Result<DirichletForm> {
    check_dims(triple, form, r)?;
    if !form.is_irreducible() {
        return Err(Error::ReducibleForm);
    }
    let n = triple.n_boundary();
    let mut net = assemble_level1(triple, form, r)?.network();
    let boundary: Vec<usize> = (0..n).collect();
    net.reduce_to(&boundary)?;
    let scale = form.coefficient_sum() * r.as_slice().iter().copied().fold(0.0, f64::max);
    let mut coefficients = Vec::with_capacity(n * (n - 1) / 2);
    for (a, b) in pairs(n) {
        let c = net.get(a, b);
        if !c.is_finite() {
            return Err(Error::NumericalFailure("non-finite traced conductance"));
        }
        if c < 0.0 {
            if c < -tol * scale {
                return Err(Error::NumericalFailure("traced conductance is negative beyond tolerance"));
            }
            coefficients.push(0.0);
        } else {
            coefficients.push(c);
        }
    }
    let out = DirichletForm::new(n, coefficients)?;
    if !out.is_irreducible() {
        return Err(Error::NumericalFailure("renormalized form lost irreducibility"));
    }
    Ok(out)
}

/// Minimum of `S_{1,r}(E)` over level-1 functions with `v(a) = 0`, `v(b) = 1`,
/// computed directly on the level-1 network.
pub fn effective_conductivity_level1(
    triple: &FractalTriple,
    form: &DirichletForm,
    r: &WeightVector,
    a: usize,
    b: usize,
) -> Result<f64> {
    check_dims(triple, form, r)?;
    let n = triple.n_boundary();
    for label in [a, b] {
        if label >= n {
            return Err(Error::LabelOutOfRange { label, n });
        }
    }
    if a == b {
        return Err(Error::SamePins(a));
    }
    if !form.is_irreducible() {
        return Err(Error::ReducibleForm);
    }
    let mut net = assemble_level1(triple, form, r)?.network();
    net.reduce_to(&[a, b])?;
    Ok(net.get(a, b))
}

/// Level-1 minimizer for the two-point problem of
/// [`effective_conductivity_level1`], with values `ta`, `tb` at the pins.
pub fn pinned_level1_minimizer(
    triple: &FractalTriple,
    form: &DirichletForm,
    r: &WeightVector,
    a: usize,
    b: usize,
    ta: f64,
    tb: f64,
) -> Result<Vec<f64>> {
    // validates arguments
    effective_conductivity_level1(triple, form, r, a, b)?;
    let mut net = assemble_level1(triple, form, r)?.network();
    let steps = net.reduce_to(&[a, b])?;
    let mut v = vec![0.0; triple.n_level1()];
    v[a] = ta;
    v[b] = tb;
    back_substitute(&mut v, &steps);
    Ok(v)
}
