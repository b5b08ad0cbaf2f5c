//! Combinatorial fractal triples `(V0, V1, Psi)`.
//!
//! Boundary vertices carry ids `0..N`, level-1 vertices `0..n_level1`, and
//! each cell map is stored as the list of level-1 ids hit by the boundary
//! labels `0..N` in order. All indices here are zero-based; the file formats
//! in the companion crate shift them by one.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result, ShapeProblem, Violation};

/// Unvalidated triple description, as read from a file or written by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTriple {
    pub n_boundary: usize,
    pub n_cells: usize,
    pub n_level1: usize,
    pub cells: Vec<Vec<usize>>,
}

/// A validated fractal triple.
///
/// Invariants: every cell map is injective, the cells cover `0..n_level1`,
/// cell `j < N` fixes boundary vertex `j` and no other cell touches it, and
/// the union of cell cliques is connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractalTriple {
    n_boundary: usize,
    n_cells: usize,
    n_level1: usize,
    maps: Vec<usize>,
}

impl FractalTriple {
    pub fn n_boundary(&self) -> usize {
        self.n_boundary
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn n_level1(&self) -> usize {
        self.n_level1
    }

    /// Image of boundary label `label` under cell map `cell`.
    #[inline]
    pub fn image(&self, cell: usize, label: usize) -> usize {
        self.maps[cell * self.n_boundary + label]
    }

    /// The level-1 ids of one cell, indexed by boundary label.
    pub fn cell(&self, cell: usize) -> &[usize] {
        let n = self.n_boundary;
        &self.maps[cell * n..(cell + 1) * n]
    }

    pub fn cells(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.maps.chunks_exact(self.n_boundary)
    }

    pub fn to_raw(&self) -> RawTriple {
        RawTriple {
            n_boundary: self.n_boundary,
            n_cells: self.n_cells,
            n_level1: self.n_level1,
            cells: self.cells().map(|c| c.to_vec()).collect(),
        }
    }

    /// Vertices that are not boundary vertices, ascending.
    pub fn interior(&self) -> core::ops::Range<usize> {
        self.n_boundary..self.n_level1
    }
}

impl TryFrom<RawTriple> for FractalTriple {
    type Error = Error;

    fn try_from(raw: RawTriple) -> Result<Self> {
        validate_triple(&raw)
    }
}

/// Checks every triple invariant and reports all violations found.
pub fn validate_triple(raw: &RawTriple) -> Result<FractalTriple> {
    let violations = violations(raw);
    if !violations.is_empty() {
        return Err(Error::InvalidTriple(violations));
    }
    Ok(FractalTriple {
        n_boundary: raw.n_boundary,
        n_cells: raw.n_cells,
        n_level1: raw.n_level1,
        maps: raw.cells.concat(),
    })
}

fn violations(raw: &RawTriple) -> Vec<Violation> {
    let n = raw.n_boundary;
    let k = raw.n_cells;
    let total = raw.n_level1;
    let mut out = Vec::new();

    if n < 2 {
        out.push(Violation::Shape(ShapeProblem::TooFewBoundary(n)));
    }
    if k < n {
        out.push(Violation::Shape(ShapeProblem::TooFewCells { n_boundary: n, n_cells: k }));
    }
    if raw.cells.len() != k {
        out.push(Violation::Shape(ShapeProblem::CellCount { expected: k, found: raw.cells.len() }));
    }
    if total < n {
        out.push(Violation::Shape(ShapeProblem::Level1TooSmall { n_boundary: n, n_level1: total }));
    }
    for (i, cell) in raw.cells.iter().enumerate() {
        if cell.len() != n {
            out.push(Violation::Shape(ShapeProblem::CellLength { cell: i, expected: n, found: cell.len() }));
        }
    }
    if !out.is_empty() {
        return out;
    }

    let mut covered = vec![false; total];
    for (i, cell) in raw.cells.iter().enumerate() {
        let mut seen = vec![false; total];
        for (h, &id) in cell.iter().enumerate() {
            if id >= total {
                out.push(Violation::IdOutOfRange { cell: i, vertex: id });
                continue;
            }
            if seen[id] {
                out.push(Violation::NotInjective { cell: i, vertex: id });
            }
            seen[id] = true;
            covered[id] = true;
            // a boundary vertex may only appear as the fixed point of its own cell
            if id < n && !(i == id && h == id) {
                out.push(Violation::AxiomB { cell: i, vertex: id });
            }
        }
    }
    for j in 0..n {
        let found = raw.cells[j][j];
        if found != j {
            out.push(Violation::AxiomA { label: j, found });
        }
    }
    for (vertex, &hit) in covered.iter().enumerate() {
        if !hit {
            out.push(Violation::CoverageGap { vertex });
        }
    }

    let mut uf = UnionFind::new(total);
    for cell in &raw.cells {
        let mut ids = cell.iter().copied().filter(|&id| id < total);
        if let Some(first) = ids.next() {
            for id in ids {
                uf.union(first, id);
            }
        }
    }
    let components = uf.components();
    if components > 1 {
        let root = uf.find(0);
        let vertex = (0..total).find(|&v| uf.find(v) != root).unwrap_or(0);
        out.push(Violation::AxiomC { components, vertex });
    }
    out
}

/// Shared vertex lists for every unordered pair of cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellAdjacency {
    n_cells: usize,
    shared: Vec<Vec<usize>>,
}

impl CellAdjacency {
    /// Level-1 ids shared by cells `a` and `b`, ascending. Symmetric in the
    /// arguments; `shared(a, a)` is empty.
    pub fn shared(&self, a: usize, b: usize) -> &[usize] {
        if a == b {
            return &[];
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        &self.shared[crate::form::pair_index(self.n_cells, lo, hi)]
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }
}

pub fn cell_adjacency(triple: &FractalTriple) -> CellAdjacency {
    let k = triple.n_cells();
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); triple.n_level1()];
    for (i, cell) in triple.cells().enumerate() {
        for &id in cell {
            owners[id].push(i);
        }
    }
    let mut shared = vec![Vec::new(); k * (k - 1) / 2];
    for (id, cells) in owners.iter().enumerate() {
        for (x, &a) in cells.iter().enumerate() {
            for &b in &cells[x + 1..] {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                shared[crate::form::pair_index(k, lo, hi)].push(id);
            }
        }
    }
    CellAdjacency { n_cells: k, shared }
}

/// The `n`-gasket: `n` cells, every pair of cells glued at one midpoint.
///
/// Midpoint `m_{i,j}` (i < j) gets id `n + pair_index(i, j)` and is
/// `psi_i(P_j) = psi_j(P_i)`.
pub fn build_gasket(n: usize) -> Result<FractalTriple> {
    if n < 2 {
        return Err(Error::InvalidTriple(vec![Violation::Shape(ShapeProblem::TooFewBoundary(n))]));
    }
    let mut maps = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let id = match i.cmp(&j) {
                core::cmp::Ordering::Equal => i,
                core::cmp::Ordering::Less => n + crate::form::pair_index(n, i, j),
                core::cmp::Ordering::Greater => n + crate::form::pair_index(n, j, i),
            };
            maps.push(id);
        }
    }
    Ok(FractalTriple { n_boundary: n, n_cells: n, n_level1: n + n * (n - 1) / 2, maps })
}

/// Number of boundary vertices (and cells) of the counterexample triple.
pub const RING: usize = 20;
const HALF: usize = RING / 2;

#[inline]
fn wrap(i: isize) -> usize {
    i.rem_euclid(RING as isize) as usize
}

/// Boundary label at which cell `cell` of the counterexample meets its
/// predecessor: `Q_{cell-1} = psi_cell(P_sigma)` and `Q_cell = psi_cell(P_{sigma+10})`.
///
/// Zero-based: odd cells use `cell - 1`, even cells `cell - 9`, mod 20.
fn ring_sigma(cell: usize) -> usize {
    let c = cell as isize;
    if cell % 2 == 1 {
        wrap(c - 1)
    } else {
        wrap(c - 9)
    }
}

/// Id of the junction `Q_i` shared by cells `i` and `i + 1`.
#[inline]
pub fn junction_id(i: usize) -> usize {
    RING + i % RING
}

/// Builds the 20-cell ring triple on which no self-similar energy exists.
///
/// Ids `0..20` are the boundary vertices, `20..40` the junctions `Q_0..Q_19`
/// (`Q_i` joins cells `i` and `i + 1`), and the 340 private slots follow in
/// (cell, label) order.
pub fn build_counterexample() -> FractalTriple {
    let mut maps = vec![usize::MAX; RING * RING];
    for c in 0..RING {
        maps[c * RING + c] = c;
        let s = ring_sigma(c);
        maps[c * RING + s] = junction_id(c + RING - 1);
        maps[c * RING + (s + HALF) % RING] = junction_id(c);
    }
    let mut next = 2 * RING;
    for slot in maps.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    FractalTriple { n_boundary: RING, n_cells: RING, n_level1: next, maps }
}

/// Handle on the counterexample triple, used by every operation that is only
/// meaningful there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    triple: FractalTriple,
}

impl Default for Counterexample {
    fn default() -> Self {
        Self::new()
    }
}

impl Counterexample {
    pub fn new() -> Self {
        Counterexample { triple: build_counterexample() }
    }

    /// Accepts `triple` only if it is exactly the canonical counterexample.
    pub fn from_triple(triple: &FractalTriple) -> Result<Self> {
        let canonical = build_counterexample();
        if *triple == canonical {
            Ok(Counterexample { triple: canonical })
        } else {
            Err(Error::NotCounterexample)
        }
    }

    pub fn triple(&self) -> &FractalTriple {
        &self.triple
    }

    /// See [`ring_sigma`]; errors when `cell >= 20`.
    pub fn sigma(&self, cell: usize) -> Result<usize> {
        if cell >= RING {
            return Err(Error::LabelOutOfRange { label: cell, n: RING });
        }
        Ok(ring_sigma(cell))
    }

    /// The label opposite to `label`, i.e. `label + 10 mod 20`.
    pub fn opposite(label: usize) -> usize {
        (label + HALF) % RING
    }

    pub fn wrap(i: isize) -> usize {
        wrap(i)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}
