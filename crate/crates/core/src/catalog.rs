//! Closed-form frames and seeded random generators.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::frame::{Field, Frame};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `exp(2πi k / n)` evaluated directly from the angle.
pub fn root_of_unity(k: i64, n: i64) -> Complex64 {
    let theta = 2.0 * PI * (k.rem_euclid(n)) as f64 / n as f64;
    c(theta.cos(), theta.sin())
}

fn build(field: Field, columns: Vec<Vec<Complex64>>) -> Frame {
    Frame::from_columns(field, &columns).expect("catalog frame has unit columns")
}

/// Tight, triangular 5-vector orthoplectic frame in `C^2` with angles `{1/√2, 1/2, 0}`.
pub fn tri_5_2() -> Frame {
    let s = FRAC_1_SQRT_2;
    let w = root_of_unity(1, 3);
    let w2 = root_of_unity(2, 3);
    let one = c(s, 0.0);
    build(
        Field::Complex,
        vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![one, one],
            vec![one, w * s],
            vec![one, w2 * s],
        ],
    )
}

/// Biangular, non-tight 5-vector orthoplectic frame in `C^2` with angles `{1/√2, 0}`.
pub fn bi_5_2() -> Frame {
    let s = FRAC_1_SQRT_2;
    build(
        Field::Complex,
        vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(s, 0.0), c(-s, 0.0)],
            vec![c(s, 0.0), c(s, 0.0)],
            vec![c(s, 0.0), c(0.0, s)],
            vec![c(s, 0.0), c(0.0, -s)],
        ],
    )
}

/// Coherence of the 12-vector icosaplectic frame, `√((5+√5)/10)`.
pub fn icosaplectic_a() -> f64 {
    ((5.0 + 5f64.sqrt()) / 10.0).sqrt()
}

/// Second angle of the icosaplectic frame, `√(1 - a²) = √((5-√5)/10)`.
pub fn icosaplectic_b() -> f64 {
    (1.0 - icosaplectic_a().powi(2)).sqrt()
}

/// Tight, equidistributed, triangular 12-vector frame in `C^2` whose
/// embedding is a regular icosahedron.
pub fn icosaplectic_12_2() -> Frame {
    let a = icosaplectic_a();
    let b = icosaplectic_b();
    // lower ring at phases ωη^k = exp(2πi (1 + 2k) / 10), upper ring at η^k
    let mut cols = vec![
        vec![c(1.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(1.0, 0.0)],
    ];
    for k in 0..5 {
        cols.push(vec![c(-b, 0.0), root_of_unity(1 + 2 * k, 10) * -a]);
    }
    for k in 0..5 {
        cols.push(vec![root_of_unity(k, 5) * a, c(b, 0.0)]);
    }
    build(Field::Complex, cols)
}

pub fn orthonormal_basis(m: usize, field: Field) -> Frame {
    Frame::from_synthesis(field, DMatrix::identity(m, m)).expect("identity columns are unit")
}

/// The standard basis of `C^m` followed by the discrete Fourier basis.
/// Tight and biangular with angles `{1/√m, 0}` for `m >= 2`.
pub fn standard_and_fourier(m: usize) -> Frame {
    let s = 1.0 / (m as f64).sqrt();
    let mut cols: Vec<Vec<Complex64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|k| c(if i == k { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    for i in 0..m {
        cols.push(
            (0..m)
                .map(|k| root_of_unity((i * k) as i64, m as i64) * s)
                .collect(),
        );
    }
    build(Field::Complex, cols)
}

/// The first `count` (1 to 3) of the three mutually unbiased bases of `C^2`.
/// With all three the frame embeds onto the vertices of an octahedron.
pub fn mutually_unbiased_c2(count: usize) -> Frame {
    assert!(
        (1..=3).contains(&count),
        "C^2 has three mutually unbiased bases"
    );
    let s = FRAC_1_SQRT_2;
    let bases = [
        [
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ],
        [vec![c(s, 0.0), c(s, 0.0)], vec![c(s, 0.0), c(-s, 0.0)]],
        [vec![c(s, 0.0), c(0.0, s)], vec![c(s, 0.0), c(0.0, -s)]],
    ];
    build(
        Field::Complex,
        bases[..count].iter().flatten().cloned().collect(),
    )
}

/// `n` equally spaced lines through the origin of `R^2` (tight for `n >= 2`).
pub fn planar_lines(n: usize) -> Frame {
    let cols: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let t = PI * k as f64 / n as f64;
            vec![t.cos(), t.sin()]
        })
        .collect();
    Frame::from_real_columns(&cols).expect("unit columns")
}

pub(crate) fn gaussian_matrix<R: Rng>(
    rows: usize,
    cols: usize,
    field: Field,
    rng: &mut R,
) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = match field {
            Field::Complex => rng.sample(StandardNormal),
            Field::Real => 0.0,
        };
        c(re, im)
    })
}

/// Frame with columns drawn from the rotation-invariant distribution on the
/// unit sphere, using a caller-owned generator.
pub fn random_frame_with<R: Rng>(n: usize, m: usize, field: Field, rng: &mut R) -> Frame {
    loop {
        let g = gaussian_matrix(m, n, field, rng);
        if let Ok(frame) = Frame::normalized_synthesis(field, g) {
            return frame;
        }
    }
}

/// Deterministic random frame for a given seed.
pub fn random_frame(n: usize, m: usize, field: Field, seed: u64) -> Frame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_frame_with(n, m, field, &mut rng)
}

/// Haar-random unitary (orthogonal for the real field) from a seed.
pub fn random_unitary(m: usize, field: Field, seed: u64) -> DMatrix<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = gaussian_matrix(m, m, field, &mut rng);
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for i in 0..m {
        let d = r[(i, i)];
        let n = d.norm();
        if n > 0.0 {
            let phase = d / n;
            for k in 0..m {
                q[(k, i)] *= phase;
            }
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{coherence, tightness};

    #[test]
    fn catalog_frames_are_valid() {
        for f in [
            tri_5_2(),
            bi_5_2(),
            icosaplectic_12_2(),
            standard_and_fourier(3),
            mutually_unbiased_c2(3),
            planar_lines(5),
        ] {
            let rebuilt = Frame::from_columns(f.field(), &f.columns()).unwrap();
            assert_eq!(rebuilt, f);
        }
        assert_eq!(icosaplectic_12_2().len(), 12);
    }

    #[test]
    fn icosaplectic_constants() {
        let b = ((5.0 - 5f64.sqrt()) / 10.0).sqrt();
        assert!((icosaplectic_b() - b).abs() < 1e-15);
        assert!((icosaplectic_a() - 0.850_650_808_352_039_9).abs() < 1e-15);
    }

    #[test]
    fn random_frames_are_deterministic() {
        let a = random_frame(5, 2, Field::Complex, 7);
        let b = random_frame(5, 2, Field::Complex, 7);
        assert_eq!(a, b);
        assert_ne!(a, random_frame(5, 2, Field::Complex, 8));
        for col in a.synthesis().column_iter() {
            assert!((col.norm() - 1.0).abs() < 1e-12);
        }
        let r = random_frame(4, 3, Field::Real, 1);
        assert!(r.synthesis().iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn two_random_vectors_are_never_parallel() {
        for seed in 0..100 {
            let f = random_frame(2, 2, Field::Complex, seed);
            assert!(coherence(&f).unwrap() < 1.0 - 1e-6);
        }
    }

    #[test]
    fn random_unitary_is_unitary() {
        for field in [Field::Real, Field::Complex] {
            let u = random_unitary(4, field, 3);
            let e = u.adjoint() * &u - DMatrix::<Complex64>::identity(4, 4);
            assert!(e.norm() < 1e-12);
        }
    }

    #[test]
    fn reference_frames_are_tight() {
        for f in [
            standard_and_fourier(3),
            mutually_unbiased_c2(2),
            mutually_unbiased_c2(3),
            planar_lines(5),
        ] {
            assert!(tightness(&f).is_tight, "{f:?}");
        }
        assert!((coherence(&standard_and_fourier(3)).unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }
}
