//! Dense resistor networks and their reduction by star-mesh elimination.
//!
//! Eliminating a node `k` with neighbour conductances `c_kj` replaces its star
//! by the mesh `c_ij += c_ki * c_kj / sum_j c_kj`. This is the Schur complement
//! of the network Laplacian, computed without a single subtraction, so every
//! conductance keeps full relative accuracy even when the network mixes very
//! strong and very weak links.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub(crate) struct Network {
    n: usize,
    c: Vec<f64>,
    alive: Vec<bool>,
}

/// Back-substitution record: the eliminated node's harmonic value is the
/// convex combination `sum w_j u_j` of its neighbours at elimination time.
#[derive(Debug, Clone)]
pub(crate) struct Elimination {
    node: usize,
    weights: Vec<(usize, f64)>,
}

impl Network {
    pub fn new(n: usize) -> Self {
        Network { n, c: vec![0.0; n * n], alive: vec![true; n] }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.c[a * self.n + b]
    }

    #[inline]
    pub fn add(&mut self, a: usize, b: usize, value: f64) {
        debug_assert!(a != b);
        self.c[a * self.n + b] += value;
        self.c[b * self.n + a] += value;
    }

    /// Eliminates `node`, returning its back-substitution weights.
    ///
    /// Fails if the node has no live neighbour with positive conductance.
    pub fn eliminate(&mut self, node: usize) -> Result<Elimination> {
        let n = self.n;
        let mut nbrs: Vec<(usize, f64)> = Vec::new();
        let mut total = 0.0;
        for j in 0..n {
            let cj = self.c[node * n + j];
            if j != node && self.alive[j] && cj > 0.0 {
                nbrs.push((j, cj));
                total += cj;
            }
        }
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::NumericalFailure("isolated interior vertex during elimination"));
        }
        for (x, &(a, ca)) in nbrs.iter().enumerate() {
            for &(b, cb) in &nbrs[x + 1..] {
                let extra = ca * cb / total;
                self.c[a * n + b] += extra;
                self.c[b * n + a] += extra;
            }
        }
        self.alive[node] = false;
        for j in 0..n {
            self.c[node * n + j] = 0.0;
            self.c[j * n + node] = 0.0;
        }
        for w in nbrs.iter_mut() {
            w.1 /= total;
        }
        Ok(Elimination { node, weights: nbrs })
    }

    /// Eliminates every node not in `keep`, in descending id order.
    pub fn reduce_to(&mut self, keep: &[usize]) -> Result<Vec<Elimination>> {
        let mut keep_mask = vec![false; self.n];
        for &k in keep {
            keep_mask[k] = true;
        }
        let mut steps = Vec::with_capacity(self.n - keep.len());
        for node in (0..self.n).rev() {
            if !keep_mask[node] && self.alive[node] {
                steps.push(self.eliminate(node)?);
            }
        }
        Ok(steps)
    }
}

/// Fills in eliminated values, given values for every kept node.
pub(crate) fn back_substitute(values: &mut [f64], steps: &[Elimination]) {
    for step in steps.iter().rev() {
        values[step.node] = step.weights.iter().map(|&(j, w)| w * values[j]).sum();
    }
}
