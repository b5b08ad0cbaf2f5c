//! JSON file formats for triples, forms, weights and reports.
//!
//! Files use one-based vertex ids, labels and cell numbers; the core crate is
//! zero-based. Output is canonical: fields in declaration order, two-space
//! indentation, and every float written as `d.dddddddddddddddde±x`
//! (17 significant digits), so equal values always produce equal bytes and
//! every `f64` survives a round trip.

use std::io;

use fracform_core::error::ShapeProblem;
use fracform_core::form::pairs;
use fracform_core::{DirichletForm, FractalTriple, RawTriple, Violation, WeightVector};
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] fracform_core::Error),
}

/// Pretty printer with fixed float formatting.
struct Canonical {
    pretty: PrettyFormatter<'static>,
}

impl Formatter for Canonical {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{}", format_f64(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object_value(w)
    }
}

/// Scientific notation with 17 significant digits.
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Canonical JSON text of `value`, newline-terminated. Non-finite floats
/// become `null`.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Canonical { pretty: PrettyFormatter::new() });
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleFile {
    pub n_boundary: usize,
    pub n_cells: usize,
    pub n_level1: usize,
    pub cells: Vec<Vec<usize>>,
}

impl From<&FractalTriple> for TripleFile {
    fn from(t: &FractalTriple) -> Self {
        TripleFile {
            n_boundary: t.n_boundary(),
            n_cells: t.n_cells(),
            n_level1: t.n_level1(),
            cells: t.cells().map(|c| c.iter().map(|v| v + 1).collect()).collect(),
        }
    }
}

impl TripleFile {
    /// Zero-based triple, not yet validated. A vertex id of 0 becomes
    /// `usize::MAX` so the validator reports it as out of range.
    pub fn to_raw(&self) -> RawTriple {
        RawTriple {
            n_boundary: self.n_boundary,
            n_cells: self.n_cells,
            n_level1: self.n_level1,
            cells: self
                .cells
                .iter()
                .map(|c| c.iter().map(|&v| v.checked_sub(1).unwrap_or(usize::MAX)).collect())
                .collect(),
        }
    }
}

pub fn triple_to_json(t: &FractalTriple) -> String {
    to_canonical_json(&TripleFile::from(t))
}

pub fn parse_triple(text: &str) -> Result<TripleFile, FormatError> {
    Ok(serde_json::from_str(text)?)
}

/// One-based rendering of a validation failure.
pub fn describe_violation(v: &Violation) -> String {
    let id = |x: usize| x.wrapping_add(1);
    match *v {
        Violation::Shape(ref p) => match *p {
            ShapeProblem::CellLength { cell, expected, found } => {
                format!("shape: cell {} has {found} entries, expected {expected}", id(cell))
            }
            _ => format!("shape: {p}"),
        },
        Violation::AxiomA { label, found } => format!(
            "axiom a: cell {} sends boundary label {} to vertex {}, not to itself",
            id(label),
            id(label),
            id(found)
        ),
        Violation::AxiomB { cell, vertex } => {
            format!("axiom b: boundary vertex {} lies in cell {} outside its reserved slot", id(vertex), id(cell))
        }
        Violation::AxiomC { components, vertex } => {
            format!("axiom c: cell graph has {components} components; vertex {} unreachable from vertex 1", id(vertex))
        }
        Violation::NotInjective { cell, vertex } => {
            format!("cell {} is not injective: vertex {} repeated", id(cell), id(vertex))
        }
        Violation::CoverageGap { vertex } => format!("vertex {} lies in no cell", id(vertex)),
        Violation::IdOutOfRange { cell, vertex } => {
            format!("cell {} references out-of-range vertex {}", id(cell), id(vertex))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairCoefficient {
    pub pair: [usize; 2],
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub n_boundary: usize,
    pub coefficients: Vec<PairCoefficient>,
}

impl From<&DirichletForm> for FormFile {
    fn from(f: &DirichletForm) -> Self {
        let coefficients = pairs(f.n_boundary())
            .zip(f.coefficients())
            .map(|((a, b), &c)| PairCoefficient { pair: [a + 1, b + 1], c })
            .collect();
        FormFile { n_boundary: f.n_boundary(), coefficients }
    }
}

impl TryFrom<&FormFile> for DirichletForm {
    type Error = FormatError;

    /// Pairs may come in any order but each of the `N(N-1)/2` pairs must
    /// appear exactly once, written with `j1 < j2`.
    fn try_from(file: &FormFile) -> Result<Self, FormatError> {
        let n = file.n_boundary;
        if n < 2 {
            return Err(FormatError::Invalid(format!("n_boundary must be at least 2, got {n}")));
        }
        let mut slots: Vec<Option<f64>> = vec![None; n * (n - 1) / 2];
        for entry in &file.coefficients {
            let [j1, j2] = entry.pair;
            if !(1 <= j1 && j1 < j2 && j2 <= n) {
                return Err(FormatError::Invalid(format!("pair [{j1}, {j2}] must satisfy 1 <= j1 < j2 <= {n}")));
            }
            let slot = &mut slots[fracform_core::form::pair_index(n, j1 - 1, j2 - 1)];
            if slot.replace(entry.c).is_some() {
                return Err(FormatError::Invalid(format!("pair [{j1}, {j2}] listed twice")));
            }
        }
        let mut coefficients = Vec::with_capacity(slots.len());
        for ((a, b), slot) in pairs(n).zip(slots) {
            match slot {
                Some(c) => coefficients.push(c),
                None => return Err(FormatError::Invalid(format!("pair [{}, {}] is missing", a + 1, b + 1))),
            }
        }
        Ok(DirichletForm::new(n, coefficients)?)
    }
}

pub fn form_to_json(f: &DirichletForm) -> String {
    to_canonical_json(&FormFile::from(f))
}

pub fn parse_form(text: &str) -> Result<DirichletForm, FormatError> {
    let file: FormFile = serde_json::from_str(text)?;
    DirichletForm::try_from(&file)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsFile {
    pub r: Vec<f64>,
}

pub fn weights_to_json(r: &WeightVector) -> String {
    to_canonical_json(&WeightsFile { r: r.as_slice().to_vec() })
}

pub fn parse_weights(text: &str) -> Result<WeightVector, FormatError> {
    let file: WeightsFile = serde_json::from_str(text)?;
    Ok(WeightVector::new(file.r)?)
}
