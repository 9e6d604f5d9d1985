//! Unit-norm frames over the real or complex field.
//!
//! A [`Frame`] is stored as its synthesis matrix: an `M x N` complex matrix
//! whose columns are the frame vectors. Real frames use the same storage with
//! all imaginary parts equal to zero, so every algorithm in the crate runs on a
//! single code path.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Absolute tolerance on column norms.
pub const TOL_UNIT: f64 = 1e-10;

/// Scalar field of a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

impl Field {
    /// Real dimension of the traceless self-adjoint `M x M` matrices.
    pub fn embedding_dim(self, m: usize) -> usize {
        match self {
            Field::Complex => m * m - 1,
            Field::Real => (m + 2) * (m - 1) / 2,
        }
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Field::Real => "R",
            Field::Complex => "C",
        })
    }
}

impl std::str::FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "R" | "r" | "real" => Ok(Field::Real),
            "C" | "c" | "complex" => Ok(Field::Complex),
            other => Err(format!("unknown field '{other}', expected R or C")),
        }
    }
}

/// Numerical tolerances shared by the analysis routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Gap threshold for single-linkage clustering of angles.
    pub cluster: f64,
    /// Tightness threshold per vector; the frame threshold is `tight_per_vector * N`.
    pub tight_per_vector: f64,
    /// Threshold on `|moment - target|` for projective designs.
    pub design: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            cluster: 1e-8,
            tight_per_vector: 1e-9,
            design: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn tight(&self, n: usize) -> f64 {
        self.tight_per_vector * n as f64
    }
}

/// An ordered list of `N` unit vectors in `F^M`, immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    field: Field,
    synthesis: DMatrix<Complex64>,
}

fn check_shape(columns: &[Vec<Complex64>]) -> Result<usize> {
    let first = columns.first().ok_or(Error::EmptyInput)?;
    let m = first.len();
    if m == 0 {
        return Err(Error::EmptyInput);
    }
    for (j, col) in columns.iter().enumerate() {
        if col.len() != m {
            return Err(Error::RaggedColumns {
                expected: m,
                column: j,
                found: col.len(),
            });
        }
        if col.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { column: j });
        }
    }
    Ok(m)
}

fn check_field(field: Field, synthesis: &DMatrix<Complex64>) -> Result<()> {
    if field == Field::Real {
        for (j, col) in synthesis.column_iter().enumerate() {
            if col.iter().any(|z| z.im != 0.0) {
                return Err(Error::ComplexEntryInRealFrame { column: j });
            }
        }
    }
    Ok(())
}

impl Frame {
    /// Builds a frame from columns that must already have unit norm.
    pub fn from_columns(field: Field, columns: &[Vec<Complex64>]) -> Result<Frame> {
        let m = check_shape(columns)?;
        let synthesis = DMatrix::from_fn(m, columns.len(), |k, j| columns[j][k]);
        Frame::from_synthesis(field, synthesis)
    }

    /// Builds a real frame from real columns.
    pub fn from_real_columns(columns: &[Vec<f64>]) -> Result<Frame> {
        let cols: Vec<Vec<Complex64>> = columns
            .iter()
            .map(|c| c.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Frame::from_columns(Field::Real, &cols)
    }

    /// Builds a frame from an `M x N` synthesis matrix, validating unit norms.
    pub fn from_synthesis(field: Field, synthesis: DMatrix<Complex64>) -> Result<Frame> {
        if synthesis.nrows() == 0 || synthesis.ncols() == 0 {
            return Err(Error::EmptyInput);
        }
        for (j, col) in synthesis.column_iter().enumerate() {
            if col.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite { column: j });
            }
            let norm = col.norm();
            if (norm - 1.0).abs() > TOL_UNIT {
                return Err(Error::NonUnitColumn { column: j, norm });
            }
        }
        check_field(field, &synthesis)?;
        Ok(Frame { field, synthesis })
    }

    /// Scales every column to unit norm and builds the frame.
    pub fn normalize_columns(field: Field, columns: &[Vec<Complex64>]) -> Result<Frame> {
        let m = check_shape(columns)?;
        let mut synthesis = DMatrix::from_fn(m, columns.len(), |k, j| columns[j][k]);
        for (j, mut col) in synthesis.column_iter_mut().enumerate() {
            let norm = col.norm();
            if norm == 0.0 {
                return Err(Error::ZeroColumn { column: j });
            }
            col.unscale_mut(norm);
        }
        Frame::from_synthesis(field, synthesis)
    }

    /// Renormalizes columns of an arbitrary matrix; used by generators and the solver.
    pub(crate) fn normalized_synthesis(
        field: Field,
        mut synthesis: DMatrix<Complex64>,
    ) -> Result<Frame> {
        for (j, mut col) in synthesis.column_iter_mut().enumerate() {
            let norm = col.norm();
            if norm == 0.0 || !norm.is_finite() {
                return Err(Error::ZeroColumn { column: j });
            }
            col.unscale_mut(norm);
        }
        Frame::from_synthesis(field, synthesis)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Ambient dimension `M`.
    pub fn dim(&self) -> usize {
        self.synthesis.nrows()
    }

    /// Number of vectors `N`.
    pub fn len(&self) -> usize {
        self.synthesis.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.synthesis.ncols() == 0
    }

    pub fn synthesis(&self) -> &DMatrix<Complex64> {
        &self.synthesis
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        self.synthesis.column(j).iter().copied().collect()
    }

    pub fn columns(&self) -> Vec<Vec<Complex64>> {
        (0..self.len()).map(|j| self.column(j)).collect()
    }

    /// Gram matrix `Φ*Φ`; entry `(j, l)` is `⟨φ_l, φ_j⟩` with the inner
    /// product conjugate-linear in its second slot.
    pub fn gram(&self) -> DMatrix<Complex64> {
        self.synthesis.adjoint() * &self.synthesis
    }

    /// Entrywise magnitudes of the Gram matrix.
    pub fn abs_gram(&self) -> DMatrix<f64> {
        self.gram().map(|z| z.norm())
    }

    /// Frame operator `ΦΦ*`.
    pub fn frame_operator(&self) -> DMatrix<Complex64> {
        &self.synthesis * self.synthesis.adjoint()
    }

    /// Whether the vectors span `F^M`.
    pub fn is_spanning(&self) -> bool {
        let op = self.frame_operator();
        let eig = nalgebra::linalg::SymmetricEigen::new(op);
        let scale = self.len() as f64;
        eig.eigenvalues.iter().all(|&ev| ev > 1e-10 * scale)
    }

    /// Applies `U` to every column. `U` must be unitary (orthogonal for real frames).
    pub fn rotated(&self, unitary: &DMatrix<Complex64>) -> Result<Frame> {
        if unitary.nrows() != self.dim() || unitary.ncols() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "unitary is {}x{}, frame dimension is {}",
                unitary.nrows(),
                unitary.ncols(),
                self.dim()
            )));
        }
        Frame::normalized_synthesis(self.field, unitary * &self.synthesis)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameJson {
    field: Field,
    m: usize,
    n: usize,
    vectors: Vec<Vec<Entry>>,
}

impl FrameJson {
    fn into_frame(self) -> Result<Frame> {
        if self.vectors.len() != self.n {
            return Err(Error::InvalidJson(format!(
                "n = {} but {} vectors given",
                self.n,
                self.vectors.len()
            )));
        }
        let mut columns = Vec::with_capacity(self.n);
        for (j, v) in self.vectors.into_iter().enumerate() {
            if v.len() != self.m {
                return Err(Error::InvalidJson(format!(
                    "m = {} but vector {j} has {} entries",
                    self.m,
                    v.len()
                )));
            }
            let col = v
                .into_iter()
                .map(|e| match (self.field, e) {
                    (Field::Real, Entry::Real(x)) => Ok(Complex64::new(x, 0.0)),
                    (Field::Complex, Entry::Complex([re, im])) => Ok(Complex64::new(re, im)),
                    (Field::Real, Entry::Complex(_)) => Err(Error::InvalidJson(format!(
                        "vector {j}: real field expects bare numbers"
                    ))),
                    (Field::Complex, Entry::Real(_)) => Err(Error::InvalidJson(format!(
                        "vector {j}: complex field expects [re, im] pairs"
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            columns.push(col);
        }
        Frame::from_columns(self.field, &columns)
    }
}

impl From<&Frame> for FrameJson {
    fn from(frame: &Frame) -> Self {
        let vectors = frame
            .synthesis
            .column_iter()
            .map(|col| {
                col.iter()
                    .map(|z| match frame.field {
                        Field::Real => Entry::Real(z.re),
                        Field::Complex => Entry::Complex([z.re, z.im]),
                    })
                    .collect()
            })
            .collect();
        FrameJson {
            field: frame.field,
            m: frame.dim(),
            n: frame.len(),
            vectors,
        }
    }
}

impl Serialize for Frame {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FrameJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Frame {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        FrameJson::deserialize(deserializer)?
            .into_frame()
            .map_err(serde::de::Error::custom)
    }
}

impl Frame {
    /// Parses the frame interchange JSON.
    pub fn from_json(text: &str) -> Result<Frame> {
        let raw: FrameJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidJson(e.to_string()))?;
        raw.into_frame()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("frame serialization cannot fail")
    }
}
