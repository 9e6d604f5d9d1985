//! Coherence, angle sets, tightness, equidistribution and projective design
//! moments of a frame.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{Field, Frame, Tolerances};

/// Absolute Gram matrix together with its clustered angle set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramSummary {
    #[serde(skip)]
    pub abs_gram: DMatrix<f64>,
    /// Cluster representatives, strictly decreasing. Each is the largest
    /// magnitude in its cluster, so `angles[0]` is the coherence.
    pub angles: Vec<f64>,
    /// Row `j`, column `k`: number of partners of vector `j` at angle `angles[k]`.
    pub multiplicity_table: Vec<Vec<usize>>,
    pub cluster_tol: f64,
}

impl GramSummary {
    /// Number of distinct angles `K`.
    pub fn k(&self) -> usize {
        self.angles.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TightnessReport {
    pub is_tight: bool,
    pub tight_constant: f64,
    /// Frobenius norm of `ΦΦ* - (N/M) I`.
    pub defect: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DesignMoment {
    pub t: u32,
    pub moment: f64,
    pub target: f64,
    pub is_design: bool,
}

/// Maximum magnitude of an inner product between distinct frame vectors.
pub fn coherence(frame: &Frame) -> Result<f64> {
    let n = frame.len();
    if n < 2 {
        return Err(Error::TooFewVectors { n });
    }
    let g = frame.abs_gram();
    let mut mu: f64 = 0.0;
    for j in 0..n {
        for l in (j + 1)..n {
            mu = mu.max(g[(j, l)]);
        }
    }
    Ok(mu)
}

/// Clusters the off-diagonal magnitudes by single linkage with gap `cluster_tol`.
///
/// Zero counts as an angle whenever some pair is orthogonal.
pub fn angle_set(frame: &Frame, cluster_tol: f64) -> Result<GramSummary> {
    let n = frame.len();
    if n < 2 {
        return Err(Error::TooFewVectors { n });
    }
    if cluster_tol.is_nan() || cluster_tol <= 0.0 {
        return Err(Error::ShapeMismatch(format!(
            "cluster tolerance must be positive, got {cluster_tol}"
        )));
    }
    let abs_gram = frame.abs_gram();
    summarize(abs_gram, cluster_tol)
}

pub(crate) fn summarize(abs_gram: DMatrix<f64>, cluster_tol: f64) -> Result<GramSummary> {
    let n = abs_gram.nrows();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for j in 0..n {
        for l in (j + 1)..n {
            pairs.push((abs_gram[(j, l)], j, l));
        }
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

    // (representative, smallest member)
    let mut clusters: Vec<(f64, f64)> = Vec::new();
    let mut assignment = Vec::with_capacity(pairs.len());
    for &(value, _, _) in &pairs {
        match clusters.last_mut() {
            Some((_, low)) if *low - value <= cluster_tol => *low = value,
            _ => clusters.push((value, value)),
        }
        assignment.push(clusters.len() - 1);
    }

    for (k, &(rep, low)) in clusters.iter().enumerate() {
        if rep - low > cluster_tol {
            return Err(Error::AmbiguousClustering {
                cluster_tol,
                first: rep,
                second: low,
            });
        }
        if let Some(&(next, _)) = clusters.get(k + 1) {
            if rep - next < 10.0 * cluster_tol {
                return Err(Error::AmbiguousClustering {
                    cluster_tol,
                    first: rep,
                    second: next,
                });
            }
        }
    }

    let k = clusters.len();
    let mut table = vec![vec![0usize; k]; n];
    for (&(_, j, l), &c) in pairs.iter().zip(&assignment) {
        table[j][c] += 1;
        table[l][c] += 1;
    }
    Ok(GramSummary {
        abs_gram,
        angles: clusters.iter().map(|c| c.0).collect(),
        multiplicity_table: table,
        cluster_tol,
    })
}

/// Tightness with the default per-vector tolerance.
pub fn tightness(frame: &Frame) -> TightnessReport {
    tightness_with_tol(frame, Tolerances::default().tight(frame.len()))
}

pub fn tightness_with_tol(frame: &Frame, tol: f64) -> TightnessReport {
    let m = frame.dim();
    let ratio = frame.len() as f64 / m as f64;
    let op = frame.frame_operator();
    let shifted = &op - DMatrix::<Complex64>::identity(m, m) * Complex64::new(ratio, 0.0);
    let defect = shifted.norm();
    let trace: f64 = (0..m).map(|i| op[(i, i)].re).sum();
    TightnessReport {
        is_tight: defect <= tol,
        tight_constant: trace / m as f64,
        defect,
    }
}

/// Per-vector sums `Σ_l |⟨φ_j, φ_l⟩|²`, including `l = j`. Each equals `N/M`
/// for a unit-norm tight frame.
pub fn row_angle_sums(frame: &Frame) -> Vec<f64> {
    let g = frame.abs_gram();
    g.row_iter()
        .map(|row| row.iter().map(|x| x * x).sum())
        .collect()
}

/// The common multiplicity vector if every vector sees each angle equally often.
pub fn equidistribution(frame: &Frame, cluster_tol: f64) -> Result<Option<Vec<usize>>> {
    let summary = angle_set(frame, cluster_tol)?;
    Ok(common_row(&summary))
}

pub(crate) fn common_row(summary: &GramSummary) -> Option<Vec<usize>> {
    let first = summary.multiplicity_table.first()?;
    summary
        .multiplicity_table
        .iter()
        .all(|row| row == first)
        .then(|| first.clone())
}

pub(crate) fn binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Projective `t`-design moment `(1/N²) Σ_{j,l} |⟨φ_j, φ_l⟩|^{2t}` against
/// `1 / C(t+M-1, t)`, using the default design tolerance.
pub fn design_moment(frame: &Frame, t: u32) -> Result<DesignMoment> {
    design_moment_with_tol(frame, t, Tolerances::default().design)
}

pub fn design_moment_with_tol(frame: &Frame, t: u32, tol: f64) -> Result<DesignMoment> {
    if frame.field() != Field::Complex {
        return Err(Error::FieldUnsupported);
    }
    if t == 0 {
        return Err(Error::ShapeMismatch(
            "design order t must be at least 1".into(),
        ));
    }
    let n = frame.len() as f64;
    let g = frame.abs_gram();
    let moment = g.iter().map(|x| (x * x).powi(t as i32)).sum::<f64>() / (n * n);
    let target = 1.0 / binomial(t as u64 + frame.dim() as u64 - 1, t as u64);
    Ok(DesignMoment {
        t,
        moment,
        target,
        is_design: (moment - target).abs() <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn basis2() -> Frame {
        catalog::orthonormal_basis(2, Field::Complex)
    }

    #[test]
    fn coherence_values() {
        assert_eq!(coherence(&basis2()).unwrap(), 0.0);
        assert!((coherence(&catalog::tri_5_2()).unwrap() - H).abs() < 1e-12);
        let a = ((5.0 + 5f64.sqrt()) / 10.0).sqrt();
        assert!((coherence(&catalog::icosaplectic_12_2()).unwrap() - a).abs() < 1e-12);
        assert!((a - 0.8506508).abs() < 1e-7);
        let single = Frame::from_real_columns(&[vec![1.0]]).unwrap();
        assert_eq!(coherence(&single), Err(Error::TooFewVectors { n: 1 }));
    }

    #[test]
    fn angle_sets_of_catalog_frames() {
        let s = angle_set(&catalog::tri_5_2(), 1e-8).unwrap();
        assert_eq!(s.k(), 3);
        for (got, want) in s.angles.iter().zip([H, 0.5, 0.0]) {
            assert!((got - want).abs() < 1e-10);
        }
        for row in &s.multiplicity_table {
            assert_eq!(row.iter().sum::<usize>(), 4);
        }

        let s = angle_set(&catalog::bi_5_2(), 1e-8).unwrap();
        assert_eq!(s.k(), 2);
        assert!((s.angles[0] - H).abs() < 1e-10 && s.angles[1].abs() < 1e-10);
    }

    #[test]
    fn ambiguous_clustering_is_reported() {
        // angles 0.5 and 0.5 + 5e-8 are closer than 10 * tol; the third is ~0.25
        let x = 0.5f64;
        let y = 0.5 + 5e-8;
        let f = Frame::from_real_columns(&[
            vec![1.0, 0.0, 0.0],
            vec![x, (1.0 - x * x).sqrt(), 0.0],
            vec![y, 0.0, (1.0 - y * y).sqrt()],
        ])
        .unwrap();
        assert!(matches!(
            angle_set(&f, 1e-8),
            Err(Error::AmbiguousClustering { .. })
        ));
        assert!(angle_set(&f, 1e-10).is_ok());
        assert_eq!(angle_set(&f, 1e-6).unwrap().k(), 2);
    }

    #[test]
    fn tightness_examples() {
        assert!(tightness(&catalog::tri_5_2()).is_tight);
        let bi = tightness(&catalog::bi_5_2());
        assert!(!bi.is_tight && bi.defect > 0.1);
        let onb = tightness(&basis2());
        assert!(onb.is_tight && (onb.tight_constant - 1.0).abs() < 1e-15);
    }

    #[test]
    fn row_sums() {
        for v in row_angle_sums(&catalog::tri_5_2()) {
            assert!((v - 2.5).abs() < 1e-12);
        }
        assert_eq!(row_angle_sums(&basis2()), vec![1.0, 1.0]);
        let bi = row_angle_sums(&catalog::bi_5_2());
        assert!(bi.iter().any(|v| (v - 2.5).abs() > 0.1));
    }

    #[test]
    fn equidistribution_examples() {
        assert_eq!(
            equidistribution(&catalog::icosaplectic_12_2(), 1e-8).unwrap(),
            Some(vec![5, 5, 1])
        );
        assert_eq!(equidistribution(&catalog::tri_5_2(), 1e-8).unwrap(), None);
        assert_eq!(equidistribution(&basis2(), 1e-8).unwrap(), Some(vec![1]));
    }

    #[test]
    fn design_moment_examples() {
        let d = design_moment(&catalog::icosaplectic_12_2(), 5).unwrap();
        assert!((d.moment - 1.0 / 6.0).abs() < 1e-10 && d.is_design);
        let d = design_moment(&basis2(), 1).unwrap();
        assert_eq!((d.moment, d.target, d.is_design), (0.5, 0.5, true));
        let d = design_moment(&catalog::bi_5_2(), 1).unwrap();
        assert!(!d.is_design && (d.moment - 0.5).abs() > 1e-3);
        let real = catalog::orthonormal_basis(2, Field::Real);
        assert_eq!(design_moment(&real, 1), Err(Error::FieldUnsupported));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 5), 6.0);
        assert_eq!(binomial(2, 1), 2.0);
        assert_eq!(binomial(10, 3), 120.0);
    }
}
