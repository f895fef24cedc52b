//! Evaluation-code engine: generator matrices from fibers and fiber-constant
//! basis functions, designed parameters, encoding and local recovery.
//!
//! A code of length `n = (r+1)s` has its coordinates partitioned into `s`
//! fibers of size `r+1`. Each fiber carries distinct values of a coordinate
//! function `x`, and every basis function `f_j` is constant on each fiber.
//! Rows of the generator matrix are the evaluations of `f_j * x^i` for
//! `i < r`, so every codeword restricted to a fiber is a polynomial in `x` of
//! degree below `r`, and any one erased symbol in a fiber can be interpolated
//! from the other `r`.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::matrix::{self, Matrix};
use crate::galois::{Elem, FiniteField, UniPoly};

/// Which construction a code came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    TamoBarg,
    HermitianY,
    HermitianX,
    HermitianLrc2,
    GsTowerL2,
    Custom,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::TamoBarg => "tamo-barg",
            Family::HermitianY => "hermitian-y",
            Family::HermitianX => "hermitian-x",
            Family::HermitianLrc2 => "hermitian-lrc2",
            Family::GsTowerL2 => "gs-tower-l2",
            Family::Custom => "custom",
        }
    }
}

/// One partition of the coordinates into recovering sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    fibers: Vec<Vec<usize>>,
    xvals: Vec<Elem>,
    fiber_of: Vec<usize>,
}

impl Partition {
    /// `fibers` must partition `0..n` into equal-size sets; `xvals[i]` is the
    /// interpolation node of coordinate `i` and must be distinct within a fiber.
    pub fn new(n: usize, fibers: Vec<Vec<usize>>, xvals: Vec<Elem>) -> Result<Partition> {
        if xvals.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: xvals.len() });
        }
        let size = fibers.first().map_or(0, Vec::len);
        if size < 2 {
            return Err(Error::InvalidStructure("fibers need at least two points".into()));
        }
        let mut fiber_of = vec![usize::MAX; n];
        for (fi, fiber) in fibers.iter().enumerate() {
            if fiber.len() != size {
                return Err(Error::InvalidStructure(format!(
                    "fiber {fi} has {} points, expected {size}",
                    fiber.len()
                )));
            }
            let mut seen = HashSet::new();
            for &c in fiber {
                if c >= n || fiber_of[c] != usize::MAX {
                    return Err(Error::InvalidStructure(format!(
                        "coordinate {c} is out of range or in two fibers"
                    )));
                }
                fiber_of[c] = fi;
                if !seen.insert(xvals[c]) {
                    return Err(Error::InvalidStructure(format!(
                        "x takes the value {} twice in fiber {fi}",
                        xvals[c]
                    )));
                }
            }
        }
        if let Some(c) = fiber_of.iter().position(|&f| f == usize::MAX) {
            return Err(Error::InvalidStructure(format!("coordinate {c} is in no fiber")));
        }
        Ok(Partition { fibers, xvals, fiber_of })
    }

    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    pub fn xvals(&self) -> &[Elem] {
        &self.xvals
    }

    pub fn fiber_of(&self, coord: usize) -> usize {
        self.fiber_of[coord]
    }

    pub fn fiber_size(&self) -> usize {
        self.fibers[0].len()
    }

    /// Recovering-set size `r`.
    pub fn locality(&self) -> usize {
        self.fiber_size() - 1
    }

    /// `I_i`: the other coordinates of the fiber containing `coord`.
    pub fn recovering_set(&self, coord: usize) -> Vec<usize> {
        self.fibers[self.fiber_of[coord]].iter().copied().filter(|&c| c != coord).collect()
    }
}

/// One or two partitions of the same coordinate set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveringStructure {
    n: usize,
    partitions: Vec<Partition>,
}

impl RecoveringStructure {
    pub fn new(n: usize, partitions: Vec<Partition>) -> Result<RecoveringStructure> {
        if partitions.is_empty() || partitions.len() > 2 {
            return Err(Error::InvalidStructure("expected one or two partitions".into()));
        }
        if partitions.iter().any(|p| p.xvals.len() != n) {
            return Err(Error::InvalidStructure("partition length differs from n".into()));
        }
        if let [a, b] = partitions.as_slice() {
            // transversality: a fiber of one meets a fiber of the other at most once
            let mut seen = HashSet::new();
            for c in 0..n {
                if !seen.insert((a.fiber_of(c), b.fiber_of(c))) {
                    return Err(Error::InvalidStructure(format!(
                        "fibers of the two partitions meet twice (coordinate {c})"
                    )));
                }
            }
        }
        Ok(RecoveringStructure { n, partitions })
    }

    pub fn single(partition: Partition) -> RecoveringStructure {
        RecoveringStructure { n: partition.xvals.len(), partitions: vec![partition] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn partition(&self, which: usize) -> Result<&Partition> {
        self.partitions.get(which).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "partition {} requested, code has {}",
                which + 1,
                self.partitions.len()
            ))
        })
    }
}

/// Input of [`build_generator`].
#[derive(Clone, Debug)]
pub struct EvaluationCodeSpec {
    pub field: Arc<FiniteField>,
    pub partition: Partition,
    /// `basis_values[j][fiber]`: value of the fiber-constant `f_j` on that fiber.
    pub basis_values: Matrix,
    /// Pole order of `D = t Q_inf`.
    pub t: i64,
    /// Degree of `Q_inf`.
    pub ell: i64,
    /// Genus of the base curve.
    pub genus_y: i64,
    /// Degree of the coordinate function `x`.
    pub h: i64,
    pub family: Family,
    /// Optional human-readable coordinates (e.g. affine points), one per coordinate.
    pub labels: Vec<Vec<Elem>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignedParams {
    pub n: usize,
    pub k_lower: i64,
    pub d_lower: i64,
}

impl EvaluationCodeSpec {
    pub fn locality(&self) -> usize {
        self.partition.locality()
    }

    pub fn dimension(&self) -> usize {
        self.locality() * self.basis_values.len()
    }
}

/// `n = (r+1)s`, `k >= r(t*ell - g_Y + 1)`, `d >= n - t*ell*(r+1) - (r-1)h`.
pub fn designed_params(spec: &EvaluationCodeSpec) -> DesignedParams {
    let n = spec.partition.xvals.len();
    let r = spec.locality() as i64;
    let tl = spec.t * spec.ell;
    DesignedParams {
        n,
        k_lower: r * (tl - spec.genus_y + 1),
        d_lower: n as i64 - tl * (r + 1) - (r - 1) * spec.h,
    }
}

/// A linear code with its recovering structure(s) and designed distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    field: Arc<FiniteField>,
    generator: Matrix,
    structure: RecoveringStructure,
    family: Family,
    designed_distance: i64,
    labels: Vec<Vec<Elem>>,
}

impl LinearCode {
    /// Validates shapes and checks that `generator` has full row rank.
    pub fn new(
        field: Arc<FiniteField>,
        generator: Matrix,
        structure: RecoveringStructure,
        family: Family,
        designed_distance: i64,
        labels: Vec<Vec<Elem>>,
    ) -> Result<LinearCode> {
        let n = structure.len();
        let k = generator.len();
        if let Some(row) = generator.iter().find(|row| row.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: row.len() });
        }
        if generator.iter().flatten().any(|&x| !field.contains(x)) {
            return Err(Error::FieldMismatch);
        }
        if !labels.is_empty() && labels.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: labels.len() });
        }
        let rank = matrix::rank(&field, &generator);
        if rank != k {
            return Err(Error::RankDeficient { rank, expected: k });
        }
        Ok(LinearCode { field, generator, structure, family, designed_distance, labels })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.structure.len()
    }

    pub fn is_empty(&self) -> bool {
        self.structure.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn structure(&self) -> &RecoveringStructure {
        &self.structure
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn designed_distance(&self) -> i64 {
        self.designed_distance
    }

    pub fn labels(&self) -> &[Vec<Elem>] {
        &self.labels
    }

    /// Locality of each partition, in order.
    pub fn localities(&self) -> Vec<usize> {
        self.structure.partitions.iter().map(Partition::locality).collect()
    }

    /// `message * G`.
    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        encode(self, message)
    }

    pub(crate) fn with_family(mut self, family: Family) -> LinearCode {
        self.family = family;
        self
    }

    /// Coordinate index whose label equals `label`.
    pub fn find_label(&self, label: &[Elem]) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Builds the generator matrix of the evaluation code.
///
/// Rows are ordered by power of `x` (outer) then basis index (inner), so for
/// the basis `1, y, y^2` with `r = 2` the rows are `1, y, y^2, x, xy, xy^2`.
pub fn build_generator(spec: &EvaluationCodeSpec) -> Result<LinearCode> {
    let part = &spec.partition;
    let n = part.xvals.len();
    let s = part.fibers.len();
    let r = spec.locality();
    if let Some(row) = spec.basis_values.iter().find(|row| row.len() != s) {
        return Err(Error::LengthMismatch { expected: s, got: row.len() });
    }
    if spec.basis_values.is_empty() {
        return Err(Error::InvalidParameter("basis is empty".into()));
    }
    let params = designed_params(spec);
    if params.d_lower < 1 {
        return Err(Error::DesignedDistanceTooSmall(params.d_lower));
    }
    let f = &spec.field;
    let mut generator = Vec::with_capacity(r * spec.basis_values.len());
    for i in 0..r {
        for basis in &spec.basis_values {
            let row = (0..n)
                .map(|c| f.mul(basis[part.fiber_of[c]], f.pow(part.xvals[c], i as u64)))
                .collect();
            generator.push(row);
        }
    }
    LinearCode::new(
        f.clone(),
        generator,
        RecoveringStructure::single(part.clone()),
        spec.family,
        params.d_lower,
        spec.labels.clone(),
    )
}

pub fn encode(code: &LinearCode, message: &[Elem]) -> Result<Vec<Elem>> {
    if message.len() != code.dimension() {
        return Err(Error::LengthMismatch { expected: code.dimension(), got: message.len() });
    }
    if message.iter().any(|&m| !code.field.contains(m)) {
        return Err(Error::FieldMismatch);
    }
    Ok(matrix::vec_mat(&code.field, message, &code.generator))
}

/// Outcome of a local repair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recovery {
    pub value: Elem,
    pub recovering_set: Vec<usize>,
    /// Interpolant in the fiber coordinate, degree below `r`.
    pub interpolant: UniPoly,
}

/// Repairs the erased coordinate `pos` from the rest of its fiber in
/// partition `which` (0-based). `None` entries of `word` are erasures.
pub fn local_recover(
    code: &LinearCode,
    word: &[Option<Elem>],
    pos: usize,
    which: usize,
) -> Result<Elem> {
    local_recovery(code, word, pos, which).map(|r| r.value)
}

pub fn local_recovery(
    code: &LinearCode,
    word: &[Option<Elem>],
    pos: usize,
    which: usize,
) -> Result<Recovery> {
    let n = code.len();
    if word.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: word.len() });
    }
    if pos >= n {
        return Err(Error::InvalidParameter(format!("position {pos} out of range")));
    }
    if word[pos].is_some() {
        return Err(Error::Erasure(format!("coordinate {pos} is not erased")));
    }
    let part = code.structure.partition(which)?;
    let recovering_set = part.recovering_set(pos);
    let mut nodes = Vec::with_capacity(recovering_set.len());
    for &c in &recovering_set {
        let v = word[c].ok_or_else(|| {
            Error::Erasure(format!("coordinate {c} in the recovering set of {pos} is also erased"))
        })?;
        nodes.push((part.xvals[c], v));
    }
    let interpolant = UniPoly::interpolate(code.field.clone(), &nodes)?;
    let value = interpolant.eval(part.xvals[pos])?;
    Ok(Recovery { value, recovering_set, interpolant })
}
