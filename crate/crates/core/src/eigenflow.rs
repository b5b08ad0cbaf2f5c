//! Fixed points of the normalized renormalization map, and the obstruction
//! that rules them out on the 20-cell ring triple.
//!
//! On the ring, with `rbar = max_h min(r_{2h}, r_{2h+1})` (zero-based blocks),
//! every irreducible `E` satisfies
//!
//! * near pair: `C(Lambda_r E; 2h, 2h+1) >= rbar/2 * C(E; 2h, 2h+1)` for the
//!   block `h` achieving `rbar`;
//! * far pairs: `C(Lambda_r E; l, l+10) < rbar/2 * max_l' C(E; l', l'+10)`.
//!
//! A fixed point would need both ratios equal to one, i.e. `rbar <= 2` and
//! `rbar > 2` at once.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::form::{
    effective_conductivity, harmonic_min, pinned_minimizer, ConductivityTable, DirichletForm, DEFAULT_TOL,
};
use crate::renorm::{level1_energy, pinned_level1_minimizer, renormalize, WeightVector};
use crate::triple::{junction_id, Counterexample, FractalTriple, RING};

const BLOCKS: usize = RING / 2;
const HALF: usize = RING / 2;

/// `rbar = max_h min(r_{2h}, r_{2h+1})` and the smallest block `h` achieving it.
pub fn rbar(r: &WeightVector) -> Result<(f64, usize)> {
    if r.len() != RING {
        return Err(Error::DimensionMismatch { expected: RING, found: r.len() });
    }
    let mut best = (f64::NEG_INFINITY, 0);
    for h in 0..BLOCKS {
        let m = r[2 * h].min(r[2 * h + 1]);
        if m > best.0 {
            best = (m, h);
        }
    }
    Ok(best)
}

/// Both block conditions behind `rbar`: block `hbar` has both weights
/// `>= rbar`, and every block has some weight `<= rbar`.
pub fn rbar_conditions_hold(r: &WeightVector, rbar: f64, hbar: usize) -> bool {
    let top = r[2 * hbar] >= rbar && r[2 * hbar + 1] >= rbar;
    let every = (0..BLOCKS).all(|h| r[2 * h] <= rbar || r[2 * h + 1] <= rbar);
    top && every
}

/// Sup-norm distance between the coefficient vectors of `e` and `f`, each
/// rescaled to coefficient sum one.
pub fn residual(e: &DirichletForm, f: &DirichletForm) -> Result<f64> {
    if e.n_boundary() != f.n_boundary() {
        return Err(Error::DimensionMismatch { expected: e.n_boundary(), found: f.n_boundary() });
    }
    let (se, sf) = (e.coefficient_sum(), f.coefficient_sum());
    if !(se > 0.0) || !(sf > 0.0) {
        return Err(Error::ZeroForm);
    }
    Ok(e.coefficients().iter().zip(f.coefficients()).map(|(a, b)| (a / se - b / sf).abs()).fold(0.0, f64::max))
}

/// Hilbert projective distance `ln(max_i e_i/f_i) - ln(min_i e_i/f_i)`
/// between coefficient vectors. Scale-free in both arguments; infinite when
/// the supports differ.
///
/// Unlike [`residual`], it does not shrink when iterates approach the
/// boundary of the cone of irreducible forms with coefficients decaying at
/// different rates.
pub fn projective_residual(e: &DirichletForm, f: &DirichletForm) -> Result<f64> {
    if e.n_boundary() != f.n_boundary() {
        return Err(Error::DimensionMismatch { expected: e.n_boundary(), found: f.n_boundary() });
    }
    let mut hi = f64::NEG_INFINITY;
    let mut lo = f64::INFINITY;
    for (&a, &b) in e.coefficients().iter().zip(f.coefficients()) {
        match (a > 0.0, b > 0.0) {
            (true, true) => {
                let q = libm::log(a) - libm::log(b);
                hi = hi.max(q);
                lo = lo.min(q);
            }
            (false, false) => {}
            _ => return Ok(f64::INFINITY),
        }
    }
    if hi == f64::NEG_INFINITY {
        return Err(Error::ZeroForm);
    }
    Ok(hi - lo)
}

/// Far-pair conductivities `C(E; l, l+10)` for `l = 0..10` (the pair for `l`
/// and `l + 10` coincide).
fn far_table(form: &DirichletForm) -> Result<[f64; HALF]> {
    let mut out = [0.0; HALF];
    for (l, slot) in out.iter_mut().enumerate() {
        *slot = effective_conductivity(form, l, l + HALF)?;
    }
    Ok(out)
}

/// Largest far conductivity and the smallest label attaining it.
fn far_max(table: &[f64; HALF]) -> (f64, usize) {
    let mut best = (table[0], 0);
    for (l, &c) in table.iter().enumerate().skip(1) {
        if c > best.0 {
            best = (c, l);
        }
    }
    best
}

/// Ring-only quantity `Phi = M / m`, where `M` is the largest far-pair
/// conductivity and `m` the near-pair conductivity of block `hbar`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lyapunov {
    pub far_max: f64,
    pub near: f64,
    pub phi: f64,
}

impl Lyapunov {
    pub fn of(form: &DirichletForm, hbar: usize) -> Result<Self> {
        let (far_max, _) = far_max(&far_table(form)?);
        let near = effective_conductivity(form, 2 * hbar, 2 * hbar + 1)?;
        Ok(Lyapunov { far_max, near, phi: far_max / near })
    }
}

/// Near-pair data for block `hbar`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearPair {
    pub rbar: f64,
    pub hbar: usize,
    pub ratio: f64,
    /// Value of the level-1 minimizer at the junction joining cells `2h` and
    /// `2h+1`; `t^2 + (1-t)^2 >= 1/2` bounds the energy split there.
    pub junction_value: f64,
}

impl NearPair {
    pub fn bound(&self) -> f64 {
        self.rbar / 2.0
    }

    pub fn margin(&self) -> f64 {
        self.ratio - self.bound()
    }
}

/// The explicit competitor used to bound a far-pair conductivity.
#[derive(Debug, Clone, PartialEq)]
pub struct ProofTestFunction {
    pub label: usize,
    /// Level-1 values; `values[label] = 0`, `values[label + 10] = 1`.
    pub values: Vec<f64>,
    /// Local function `v o psi_i` for every cell, indexed by boundary label.
    pub cell_values: Vec<Vec<f64>>,
    pub x: Vec<f64>,
    pub x_prime: Vec<f64>,
    /// `s(n) = x_1 + ... + x_n` for `n = 0..=9`.
    pub s: Vec<f64>,
    /// `s'(n) = 1 - (x'_1 + ... + x'_n)` for `n = 0..=9`.
    pub s_prime: Vec<f64>,
    /// `S_{1,r}(E)(v)`.
    pub energy: f64,
    /// `M(E) * (H(r_{l+1..l+9}) + H(r_{l+11..l+19}))`, `H` the harmonic sum.
    pub bound: f64,
    /// Largest disagreement between two cells writing the same vertex.
    pub junction_mismatch: f64,
}

/// Record tying one `(E, r)` pair to both halves of the contradiction.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionCertificate {
    pub rbar: f64,
    pub hbar: usize,
    pub lhat: usize,
    pub near_ratio: f64,
    pub far_ratio: f64,
    pub near_margin: f64,
    pub far_margin: f64,
    /// `C(Lambda_r E; l, l+10) / M(E)` for every `l = 0..20`.
    pub far_ratios: Vec<f64>,
    pub junction_value: f64,
    /// Energy of the explicit competitor at `lhat`; never below the true
    /// minimum `C(Lambda_r E; lhat, lhat+10)`.
    pub test_function_energy: f64,
    pub test_function_bound: f64,
    pub far_conductivity_renormalized: f64,
}

impl ObstructionCertificate {
    pub fn min_far_margin(&self) -> f64 {
        let half = self.rbar / 2.0;
        self.far_ratios.iter().map(|f| half - f).fold(f64::INFINITY, f64::min)
    }

    /// Names of the certificate invariants that fail for weights `r` at
    /// relative tolerance `tol`; empty when the certificate is valid.
    pub fn violations(&self, r: &WeightVector, tol: f64) -> Vec<&'static str> {
        let mut out = Vec::new();
        let slack = tol * (1.0 + self.rbar / 2.0);
        if !(self.near_margin >= -slack) {
            out.push("near_margin");
        }
        if !(self.far_margin > 0.0) {
            out.push("far_margin");
        }
        if !(self.min_far_margin() > 0.0) {
            out.push("far_margin_all_labels");
        }
        if !rbar_conditions_hold(r, self.rbar, self.hbar) {
            out.push("rbar_blocks");
        }
        let t = self.junction_value;
        if !(t * t + (1.0 - t) * (1.0 - t) >= 0.5 - tol) {
            out.push("junction_split");
        }
        let floor = self.far_conductivity_renormalized;
        if !(self.test_function_energy >= floor - tol * floor.abs()) {
            out.push("test_function_order");
        }
        if !(self.test_function_energy <= self.test_function_bound * (1.0 + tol)) {
            out.push("test_function_bound");
        }
        out
    }
}

impl Counterexample {
    fn check_form(&self, form: &DirichletForm, r: &WeightVector) -> Result<()> {
        if form.n_boundary() != RING {
            return Err(Error::DimensionMismatch { expected: RING, found: form.n_boundary() });
        }
        if r.len() != RING {
            return Err(Error::DimensionMismatch { expected: RING, found: r.len() });
        }
        if !form.is_irreducible() {
            return Err(Error::ReducibleForm);
        }
        Ok(())
    }

    fn near_from(&self, form: &DirichletForm, image: &DirichletForm, r: &WeightVector) -> Result<NearPair> {
        let (rbar, hbar) = rbar(r)?;
        let (a, b) = (2 * hbar, 2 * hbar + 1);
        let ratio = effective_conductivity(image, a, b)? / effective_conductivity(form, a, b)?;
        let v = pinned_level1_minimizer(self.triple(), form, r, a, b, 0.0, 1.0)?;
        Ok(NearPair { rbar, hbar, ratio, junction_value: v[junction_id(a)] })
    }

    pub fn near_pair(&self, form: &DirichletForm, r: &WeightVector) -> Result<NearPair> {
        self.check_form(form, r)?;
        let image = renormalize(self.triple(), form, r)?;
        self.near_from(form, &image, r)
    }

    /// `C(Lambda_r E; 2h, 2h+1) / C(E; 2h, 2h+1)` at the block achieving `rbar`.
    pub fn near_pair_ratio(&self, form: &DirichletForm, r: &WeightVector) -> Result<f64> {
        Ok(self.near_pair(form, r)?.ratio)
    }

    /// `C(Lambda_r E; l, l+10) / M(E)`.
    pub fn far_pair_ratio(&self, form: &DirichletForm, r: &WeightVector, label: usize) -> Result<f64> {
        self.check_form(form, r)?;
        if label >= RING {
            return Err(Error::LabelOutOfRange { label, n: RING });
        }
        let (m, _) = far_max(&far_table(form)?);
        let image = renormalize(self.triple(), form, r)?;
        Ok(effective_conductivity(&image, label, Self::opposite(label))? / m)
    }

    /// Builds the competitor `v` with `v = 0` on cell `label`, `v = 1` on the
    /// opposite cell, and pinned minimizers between opposite labels on the
    /// nine cells of each arc, stepping through the partial sums of the
    /// harmonic-sum minimizers `x`, `x'`.
    pub fn proof_test_function(
        &self,
        form: &DirichletForm,
        r: &WeightVector,
        label: usize,
    ) -> Result<ProofTestFunction> {
        self.check_form(form, r)?;
        if label >= RING {
            return Err(Error::LabelOutOfRange { label, n: RING });
        }
        let (m, _) = far_max(&far_table(form)?);
        let cell_at = |offset: usize| (label + offset) % RING;
        let arc = |start: usize| -> Vec<f64> { (start..start + 9).map(|o| r[cell_at(o)]).collect() };
        let (h1, x) = harmonic_min(&arc(1))?;
        let (h2, x_prime) = harmonic_min(&arc(HALF + 1))?;
        let s: Vec<f64> = core::iter::once(0.0)
            .chain(x.iter().scan(0.0, |acc, xi| {
                *acc += xi;
                Some(*acc)
            }))
            .collect();
        let s_prime: Vec<f64> = core::iter::once(1.0)
            .chain(x_prime.iter().scan(0.0, |acc, xi| {
                *acc += xi;
                Some(1.0 - *acc)
            }))
            .collect();

        let mut cell_values = vec![Vec::new(); RING];
        cell_values[cell_at(0)] = vec![0.0; RING];
        cell_values[cell_at(HALF)] = vec![1.0; RING];
        for step in 1..=9 {
            for (offset, levels) in [(0, &s), (HALF, &s_prime)] {
                let cell = cell_at(offset + step);
                let sigma = self.sigma(cell)?;
                let (u, _) = pinned_minimizer(form, sigma, Self::opposite(sigma), levels[step - 1], levels[step])?;
                cell_values[cell] = u.0;
            }
        }

        let triple = self.triple();
        let mut values = vec![f64::NAN; triple.n_level1()];
        let mut junction_mismatch: f64 = 0.0;
        for (cell, local) in cell_values.iter().enumerate() {
            for (h, &value) in local.iter().enumerate() {
                let id = triple.image(cell, h);
                if values[id].is_nan() {
                    values[id] = value;
                } else {
                    junction_mismatch = junction_mismatch.max((values[id] - value).abs());
                }
            }
        }
        let energy = level1_energy(triple, form, r, &values)?;
        Ok(ProofTestFunction {
            label,
            values,
            cell_values,
            x,
            x_prime,
            s,
            s_prime,
            energy,
            bound: m * (h1 + h2),
            junction_mismatch,
        })
    }

    /// Evaluates every quantity of the obstruction for one `(E, r)`.
    pub fn certificate(&self, form: &DirichletForm, r: &WeightVector) -> Result<ObstructionCertificate> {
        self.check_form(form, r)?;
        let image = renormalize(self.triple(), form, r)?;
        let near = self.near_from(form, &image, r)?;
        let (m, lhat) = far_max(&far_table(form)?);
        let image_far = far_table(&image)?;
        let far_ratios: Vec<f64> = (0..RING).map(|l| image_far[l % HALF] / m).collect();
        let far_ratio = far_ratios[lhat];
        let test = self.proof_test_function(form, r, lhat)?;
        Ok(ObstructionCertificate {
            rbar: near.rbar,
            hbar: near.hbar,
            lhat,
            near_ratio: near.ratio,
            far_ratio,
            near_margin: near.margin(),
            far_margin: near.bound() - far_ratio,
            far_ratios,
            junction_value: near.junction_value,
            test_function_energy: test.energy,
            test_function_bound: test.bound,
            far_conductivity_renormalized: image_far[lhat % HALF],
        })
    }
}

/// Log-uniform draw on `[0.1, 10]`.
fn log_uniform(rng: &mut ChaCha20Rng) -> f64 {
    let u: f64 = rng.random();
    libm::exp(libm::log(0.1) + u * libm::log(100.0))
}

fn sample_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Sample `index` of the seeded family of random ring forms: every one of the
/// 190 coefficients log-uniform on `[0.1, 10]`, drawn from ChaCha20 stream
/// `index` of `seed`.
pub fn sample_form(seed: u64, index: u64) -> DirichletForm {
    let mut rng = sample_rng(seed, index);
    draw_form(&mut rng)
}

fn draw_form(rng: &mut ChaCha20Rng) -> DirichletForm {
    let coefficients = (0..RING * (RING - 1) / 2).map(|_| log_uniform(rng)).collect();
    DirichletForm::new(RING, coefficients).expect("positive coefficients")
}

/// Like [`sample_form`], plus 20 log-uniform weights drawn right after the
/// form from the same stream.
pub fn sample_form_and_weights(seed: u64, index: u64) -> (DirichletForm, WeightVector) {
    let mut rng = sample_rng(seed, index);
    let form = draw_form(&mut rng);
    let r = WeightVector::new((0..RING).map(|_| log_uniform(&mut rng)).collect()).expect("positive weights");
    (form, r)
}

/// Certificate for sample `index`; see [`certify_no_eigenform`].
pub fn certify_sample(r: &WeightVector, seed: u64, index: u64) -> Result<ObstructionCertificate> {
    Counterexample::new().certificate(&sample_form(seed, index), r)
}

/// One certificate per seeded random form, in sample order.
pub fn certify_no_eigenform(r: &WeightVector, sample_count: usize, seed: u64) -> Vec<Result<ObstructionCertificate>> {
    let ce = Counterexample::new();
    (0..sample_count as u64).map(|i| ce.certificate(&sample_form(seed, i), r)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    /// The iterate, normalized to coefficient sum one.
    pub form: DirichletForm,
    /// Coefficient sum of `Lambda_r` applied to the previous iterate, i.e. the
    /// eigenvalue estimate; `None` at step 0.
    pub scale: Option<f64>,
    /// `residual(E_n, E_{n-1})`; `None` at step 0.
    pub residual: Option<f64>,
    /// `projective_residual(E_n, E_{n-1})`; `None` at step 0.
    pub projective_residual: Option<f64>,
    /// Present on the ring triple only.
    pub lyapunov: Option<Lyapunov>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub records: Vec<StepRecord>,
    pub converged: bool,
}

impl IterationTrace {
    pub fn last(&self) -> &StepRecord {
        self.records.last().expect("trace has an initial record")
    }

    pub fn best_residual(&self) -> Option<f64> {
        self.records.iter().filter_map(|r| r.residual).reduce(f64::min)
    }

    /// True when `Phi` drops strictly at every recorded step.
    pub fn phi_strictly_decreasing(&self) -> Option<bool> {
        let phis: Option<Vec<f64>> = self.records.iter().map(|r| r.lyapunov.map(|l| l.phi)).collect();
        phis.map(|p| p.windows(2).all(|w| w[1] < w[0]))
    }
}

/// Iterates `E -> Lambda_r(E) / sum` from `start` until the residual between
/// successive iterates drops below `tol` or `max_steps` steps are taken.
pub fn iterate(
    triple: &FractalTriple,
    start: &DirichletForm,
    r: &WeightVector,
    max_steps: usize,
    tol: f64,
) -> Result<IterationTrace> {
    if !start.is_irreducible() {
        return Err(Error::ReducibleForm);
    }
    let ring = Counterexample::from_triple(triple).ok();
    let hbar = match ring {
        Some(_) => Some(rbar(r)?.1),
        None => None,
    };
    let lyapunov =
        |form: &DirichletForm| -> Result<Option<Lyapunov>> { hbar.map(|h| Lyapunov::of(form, h)).transpose() };
    let wrap = |step: usize| move |e: Error| Error::IterationFailure { step, source: Box::new(e) };

    let mut current = start.normalized()?;
    let mut records = vec![StepRecord {
        step: 0,
        form: current.clone(),
        scale: None,
        residual: None,
        projective_residual: None,
        lyapunov: lyapunov(&current).map_err(wrap(0))?,
    }];
    let mut converged = false;
    for step in 1..=max_steps {
        let image = renormalize(triple, &current, r).map_err(wrap(step))?;
        let scale = image.coefficient_sum();
        let next = image.normalized().map_err(wrap(step))?;
        let res = residual(&next, &current).map_err(wrap(step))?;
        records.push(StepRecord {
            step,
            form: next.clone(),
            scale: Some(scale),
            residual: Some(res),
            projective_residual: Some(projective_residual(&next, &current).map_err(wrap(step))?),
            lyapunov: lyapunov(&next).map_err(wrap(step))?,
        });
        current = next;
        if res < tol {
            converged = true;
            break;
        }
    }
    Ok(IterationTrace { records, converged })
}

/// Weight-simplex grid settings for [`search_g_eigenform`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    /// Points per axis; axis values are `1, 2, 4, ...`.
    pub levels: usize,
    /// Cells are split into at most this many contiguous groups sharing one
    /// weight.
    pub max_axes: usize,
    pub max_steps: usize,
    pub tol: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { levels: 3, max_axes: 5, max_steps: 200, tol: 1e-10 }
    }
}

impl GridConfig {
    pub fn axes(&self, n_cells: usize) -> usize {
        n_cells.min(self.max_axes).max(1)
    }
}

/// Grid points in odometer order (last axis fastest), one per ray: a level
/// tuple is kept only if some axis sits at the lowest level. Each point is
/// scaled so its weights sum to the number of cells.
pub fn simplex_grid(n_cells: usize, config: &GridConfig) -> Vec<WeightVector> {
    let axes = config.axes(n_cells);
    let levels = config.levels.max(1);
    let mut out = Vec::new();
    let mut digits = vec![0usize; axes];
    loop {
        if digits.contains(&0) {
            let raw: Vec<f64> = (0..n_cells).map(|c| libm::ldexp(1.0, digits[c * axes / n_cells] as i32)).collect();
            let total: f64 = raw.iter().sum();
            let r = raw.iter().map(|x| x * n_cells as f64 / total).collect();
            out.push(WeightVector::new(r).expect("positive grid weights"));
        }
        let mut pos = axes;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < levels {
                break;
            }
            digits[pos] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridRecord {
    pub index: usize,
    pub weights: WeightVector,
    pub outcome: core::result::Result<GridOutcome, Error>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridOutcome {
    /// Smallest residual seen along the iteration.
    pub best_residual: f64,
    pub final_residual: f64,
    /// Smallest projective residual seen along the iteration.
    pub best_projective_residual: f64,
    /// `min / max` effective conductivity over all pairs of the last iterate;
    /// tiny values mean the iterates are heading for a reducible limit.
    pub conductivity_spread: f64,
    pub steps: usize,
    pub converged: bool,
    pub eigenvalue_estimate: f64,
    pub form: DirichletForm,
    /// Ring triple only: obstruction evaluated at the last iterate.
    pub certificate: Option<core::result::Result<ObstructionCertificate, Error>>,
}

impl GridRecord {
    pub fn best_residual(&self) -> Option<f64> {
        self.outcome.as_ref().ok().map(|o| o.best_residual)
    }
}

/// Runs the iteration from the unit form at one grid point.
pub fn evaluate_grid_point(triple: &FractalTriple, index: usize, r: WeightVector, config: &GridConfig) -> GridRecord {
    let outcome = run_point(triple, &r, config);
    GridRecord { index, weights: r, outcome }
}

fn run_point(triple: &FractalTriple, r: &WeightVector, config: &GridConfig) -> Result<GridOutcome> {
    let start = DirichletForm::unit(triple.n_boundary());
    let trace = iterate(triple, &start, r, config.max_steps, config.tol)?;
    let last = trace.last();
    let certificate = Counterexample::from_triple(triple).ok().map(|ce| ce.certificate(&last.form, r));
    let table = ConductivityTable::of(&last.form)?;
    let (lo, hi) = table.values().iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &c| (lo.min(c), hi.max(c)));
    Ok(GridOutcome {
        best_residual: trace.best_residual().unwrap_or(f64::INFINITY),
        final_residual: last.residual.unwrap_or(f64::INFINITY),
        best_projective_residual: trace
            .records
            .iter()
            .filter_map(|r| r.projective_residual)
            .fold(f64::INFINITY, f64::min),
        conductivity_spread: lo / hi,
        steps: last.step,
        converged: trace.converged,
        eigenvalue_estimate: last.scale.unwrap_or(f64::NAN),
        form: last.form.clone(),
        certificate,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub config: GridConfig,
    pub n_cells: usize,
    /// Ordered by grid index.
    pub records: Vec<GridRecord>,
    /// Index into `records` of the smallest best residual; ties go to the
    /// lowest index.
    pub best: Option<usize>,
}

impl SearchReport {
    /// Assembles a report from records produced in any order.
    pub fn from_records(config: GridConfig, n_cells: usize, mut records: Vec<GridRecord>) -> Self {
        records.sort_by_key(|r| r.index);
        let mut best: Option<(usize, f64)> = None;
        for (pos, rec) in records.iter().enumerate() {
            if let Some(res) = rec.best_residual() {
                if best.is_none_or(|(_, b)| res < b) {
                    best = Some((pos, res));
                }
            }
        }
        SearchReport { config, n_cells, records, best: best.map(|b| b.0) }
    }

    pub fn best_record(&self) -> Option<&GridRecord> {
        self.best.map(|i| &self.records[i])
    }

    pub fn best_residual(&self) -> Option<f64> {
        self.best_record().and_then(GridRecord::best_residual)
    }
}

/// Sequential sweep over [`simplex_grid`].
pub fn search_g_eigenform(triple: &FractalTriple, config: &GridConfig) -> SearchReport {
    let records = simplex_grid(triple.n_cells(), config)
        .into_iter()
        .enumerate()
        .map(|(i, r)| evaluate_grid_point(triple, i, r, config))
        .collect();
    SearchReport::from_records(*config, triple.n_cells(), records)
}

/// Default tolerance for certificate checks.
pub const CERTIFICATE_TOL: f64 = DEFAULT_TOL;
