//! Traceless spherical embedding of unit-norm frames.
//!
//! Each vector `φ` is sent to `φφ* - I/M`, a traceless self-adjoint matrix of
//! Hilbert-Schmidt norm `√((M-1)/M)`. Its coordinates are taken in a fixed
//! generalized Gell-Mann basis and rescaled to unit length, giving a point on
//! the unit sphere of `R^D` with
//!
//! ```text
//! |⟨φ_j, φ_l⟩|² = 1/M + (M-1)/M · ⟨y_j, y_l⟩
//! ```
//!
//! Basis order: for each pair `a < b` (row-major), the symmetric element
//! `(E_ab + E_ba)/√2`, then (complex only) the antisymmetric element
//! `i(E_ab - E_ba)/√2`; afterwards the diagonal ladder
//! `(E_00 + … + E_{l-1,l-1} - l E_ll)/√(l(l+1))` for `l = 1..M-1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{Field, Frame};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddedConfig {
    #[serde(rename = "d")]
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    #[serde(skip)]
    pub source_field: Field,
    #[serde(skip)]
    pub source_m: usize,
}

impl EmbeddedConfig {
    pub fn inner(&self, j: usize, l: usize) -> f64 {
        dot(&self.points[j], &self.points[l])
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn embed(frame: &Frame) -> Result<EmbeddedConfig> {
    let m = frame.dim();
    if m < 2 {
        return Err(Error::DimensionTooSmall { m });
    }
    let field = frame.field();
    let dim = field.embedding_dim(m);
    let scale = (m as f64 / (m as f64 - 1.0)).sqrt();
    let sqrt2 = std::f64::consts::SQRT_2;

    let points = frame
        .synthesis()
        .column_iter()
        .map(|phi| {
            let mut y = Vec::with_capacity(dim);
            // X = φφ* - I/M; X_ab = φ_a conj(φ_b)
            for a in 0..m {
                for b in (a + 1)..m {
                    let x_ab = phi[a] * phi[b].conj();
                    y.push(sqrt2 * x_ab.re);
                    if field == Field::Complex {
                        y.push(sqrt2 * x_ab.im);
                    }
                }
            }
            let diag: Vec<f64> = phi.iter().map(|z| z.norm_sqr() - 1.0 / m as f64).collect();
            for l in 1..m {
                let head: f64 = diag[..l].iter().sum();
                y.push((head - l as f64 * diag[l]) / ((l * (l + 1)) as f64).sqrt());
            }
            y.iter_mut().for_each(|v| *v *= scale);
            y
        })
        .collect();

    Ok(EmbeddedConfig {
        dim,
        points,
        source_field: field,
        source_m: m,
    })
}

/// Largest violation of the embedding identity over all pairs `(j, l)`.
pub fn embedding_residual(frame: &Frame, config: &EmbeddedConfig) -> Result<f64> {
    let m = frame.dim();
    if config.points.len() != frame.len()
        || config.source_m != m
        || config.dim != frame.field().embedding_dim(m)
        || config.points.iter().any(|p| p.len() != config.dim)
    {
        return Err(Error::ShapeMismatch(format!(
            "config has {} points in R^{} for a frame of {} vectors in dimension {}",
            config.points.len(),
            config.dim,
            frame.len(),
            m
        )));
    }
    let g = frame.abs_gram();
    let mf = m as f64;
    let mut worst: f64 = 0.0;
    for j in 0..frame.len() {
        for l in j..frame.len() {
            let lhs = g[(j, l)] * g[(j, l)];
            let rhs = 1.0 / mf + (mf - 1.0) / mf * config.inner(j, l);
            worst = worst.max((lhs - rhs).abs());
        }
    }
    Ok(worst)
}

/// Euclidean norm of the sum of the embedded points.
pub fn zero_sum_defect(config: &EmbeddedConfig) -> f64 {
    let mut sum = vec![0.0; config.dim];
    for p in &config.points {
        for (s, v) in sum.iter_mut().zip(p) {
            *s += v;
        }
    }
    dot(&sum, &sum).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn dimensions() {
        let e = embed(&catalog::random_frame(3, 4, Field::Complex, 1)).unwrap();
        assert_eq!(e.dim, 15);
        let e = embed(&catalog::random_frame(3, 4, Field::Real, 1)).unwrap();
        assert_eq!(e.dim, 9);
        let one = catalog::orthonormal_basis(1, Field::Real);
        assert_eq!(embed(&one), Err(Error::DimensionTooSmall { m: 1 }));
    }

    #[test]
    fn basis_goes_to_antipodes() {
        let f = catalog::orthonormal_basis(2, Field::Complex);
        let e = embed(&f).unwrap();
        assert!((e.inner(0, 1) + 1.0).abs() < 1e-15);
        assert!(zero_sum_defect(&e) < 1e-15);
    }

    #[test]
    fn icosaplectic_embeds_on_icosahedron() {
        let e = embed(&catalog::icosaplectic_12_2()).unwrap();
        let r5 = 1.0 / 5f64.sqrt();
        for j in 0..12 {
            for l in (j + 1)..12 {
                let v = e.inner(j, l);
                assert!([r5, -r5, -1.0].iter().any(|t| (v - t).abs() < 1e-9), "{v}");
            }
        }
    }

    #[test]
    fn tri_sums_to_zero_bi_does_not() {
        let tri = embed(&catalog::tri_5_2()).unwrap();
        assert_eq!(tri.points.len(), 5);
        assert!(zero_sum_defect(&tri) <= 1e-9);
        assert!(zero_sum_defect(&embed(&catalog::bi_5_2()).unwrap()) > 0.1);
    }

    #[test]
    fn residual_catches_a_flipped_point() {
        let f = catalog::tri_5_2();
        let mut e = embed(&f).unwrap();
        assert!(embedding_residual(&f, &e).unwrap() <= 1e-10);
        e.points[2].iter_mut().for_each(|v| *v = -*v);
        assert!(embedding_residual(&f, &e).unwrap() > 0.1);

        let single = catalog::random_frame(1, 2, Field::Complex, 0);
        let e = embed(&single).unwrap();
        assert!(embedding_residual(&single, &e).unwrap() < 1e-15);

        let other = embed(&catalog::bi_5_2()).unwrap();
        let small = catalog::orthonormal_basis(2, Field::Complex);
        assert!(matches!(
            embedding_residual(&small, &other),
            Err(Error::ShapeMismatch(_))
        ));
    }
}
