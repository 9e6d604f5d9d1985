#![allow(dead_code)]

use grassmannian::analysis::angle_set;
use grassmannian::catalog::{self, random_unitary};
use grassmannian::solver::{minimize_coherence, SearchConfig};
use grassmannian::{Field, Frame};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Log-sum-exp surrogate computed directly from the definition, without the
/// max shift, on an unnormalized synthesis matrix.
pub fn surrogate(x: &DMatrix<Complex64>, beta: f64) -> f64 {
    let n = x.ncols();
    let mut total = 0.0;
    for j in 0..n {
        for l in (j + 1)..n {
            let ip: Complex64 = x
                .column(j)
                .iter()
                .zip(x.column(l).iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            total += (2.0 * beta * ip.norm_sqr()).exp();
        }
    }
    total.ln() / (2.0 * beta)
}

/// Central differences of `surrogate` in the real and imaginary part of every entry.
pub fn fd_gradient(x: &DMatrix<Complex64>, beta: f64, h: f64, field: Field) -> DMatrix<Complex64> {
    let mut out = DMatrix::zeros(x.nrows(), x.ncols());
    for idx in 0..x.len() {
        let diff = |delta: Complex64| {
            let mut p = x.clone();
            let mut q = x.clone();
            p[idx] += delta;
            q[idx] -= delta;
            (surrogate(&p, beta) - surrogate(&q, beta)) / (2.0 * h)
        };
        let re = diff(Complex64::new(h, 0.0));
        let im = match field {
            Field::Complex => diff(Complex64::new(0.0, h)),
            Field::Real => 0.0,
        };
        out[idx] = Complex64::new(re, im);
    }
    out
}

/// Frames that are tight and biangular by construction, each under many random rotations.
pub fn rotated_btfs(rotations: usize) -> Vec<(String, Frame)> {
    let bases = [
        ("mub2", catalog::mutually_unbiased_c2(2)),
        ("mub3", catalog::mutually_unbiased_c2(3)),
        ("fourier2", catalog::standard_and_fourier(2)),
        ("fourier3", catalog::standard_and_fourier(3)),
        ("fourier4", catalog::standard_and_fourier(4)),
        ("lines4", catalog::planar_lines(4)),
        ("lines5", catalog::planar_lines(5)),
        ("lines5c", complexify(&catalog::planar_lines(5))),
    ];
    let mut out = Vec::new();
    for r in 0..rotations {
        let (name, base) = &bases[r % bases.len()];
        let u = random_unitary(base.dim(), base.field(), r as u64);
        out.push((
            format!("{name}/rot{r}"),
            base.rotated(&u).expect("rotation keeps unit columns"),
        ));
    }
    out
}

pub fn complexify(frame: &Frame) -> Frame {
    Frame::from_synthesis(Field::Complex, frame.synthesis().clone()).expect("unit columns")
}

/// Solver outputs over a fixed grid of shapes and seeds.
pub fn solver_corpus(runs: usize) -> Vec<(String, Frame)> {
    let shapes = [
        (4, 2, Field::Complex),
        (6, 2, Field::Complex),
        (4, 2, Field::Real),
        (5, 2, Field::Real),
        (6, 2, Field::Real),
        (3, 2, Field::Complex),
        (6, 3, Field::Real),
        (4, 3, Field::Real),
        (5, 3, Field::Complex),
        (7, 3, Field::Real),
    ];
    (0..runs)
        .map(|i| {
            let (n, m, field) = shapes[i % shapes.len()];
            let config = SearchConfig::new(n, m, field)
                .with_restarts(4)
                .with_seed(i as u64);
            let result = minimize_coherence(&config).expect("search runs");
            (
                format!("search({n},{m},{field})/seed{i}"),
                result.best_frame,
            )
        })
        .collect()
}

pub fn is_biangular(frame: &Frame, cluster_tol: f64) -> bool {
    matches!(angle_set(frame, cluster_tol), Ok(s) if s.k() == 2)
}

/// Penalized least squares for a tight frame of 5 vectors in C^2 whose
/// squared inner products all lie in {1/2, 1/4}. Returns the best residual
/// `sqrt(penalty)` over all restarts.
pub fn penalty_search(restarts: usize, iters: usize, seed: u64) -> f64 {
    let (n, m) = (5usize, 2usize);
    let mut best = f64::INFINITY;
    for r in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
        let mut x = DMatrix::from_fn(m, n, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        normalize(&mut x);
        let (mut f, mut g) = penalty(&x);
        let mut step = 1.0;
        for _ in 0..iters {
            project(&x, &mut g);
            let gn = g.norm_squared();
            if gn < 1e-28 {
                break;
            }
            loop {
                let mut y = &x - &g * Complex64::new(step, 0.0);
                normalize(&mut y);
                let (fy, gy) = penalty(&y);
                if fy <= f - 1e-4 * step * gn {
                    x = y;
                    f = fy;
                    g = gy;
                    step *= 2.0;
                    break;
                }
                step *= 0.5;
                if step < 1e-16 {
                    break;
                }
            }
            if step < 1e-16 {
                break;
            }
        }
        best = best.min(f.sqrt());
    }
    best
}

fn normalize(x: &mut DMatrix<Complex64>) {
    for mut col in x.column_iter_mut() {
        let n = col.norm();
        col /= Complex64::new(n, 0.0);
    }
}

fn project(x: &DMatrix<Complex64>, g: &mut DMatrix<Complex64>) {
    for j in 0..x.ncols() {
        let along: Complex64 = x
            .column(j)
            .iter()
            .zip(g.column(j).iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        let xj = x.column(j).clone_owned();
        let mut gj = g.column_mut(j);
        gj -= xj * Complex64::new(along.re, 0.0);
    }
}

/// Value and real gradient (as `∂/∂Re + i ∂/∂Im`) of
/// `‖XX* - (N/M) I‖² + Σ_{j<l} min((g - 1/2)², (g - 1/4)²)`.
pub fn penalty(x: &DMatrix<Complex64>) -> (f64, DMatrix<Complex64>) {
    let (m, n) = (x.nrows(), x.ncols());
    let s = x * x.adjoint()
        - DMatrix::<Complex64>::identity(m, m) * Complex64::new(n as f64 / m as f64, 0.0);
    let mut value = s.norm_squared();
    let mut grad = &s * x * Complex64::new(4.0, 0.0);
    let gram = x.adjoint() * x;
    for j in 0..n {
        for l in (j + 1)..n {
            let g = gram[(j, l)].norm_sqr();
            let target = if (g - 0.5).abs() < (g - 0.25).abs() {
                0.5
            } else {
                0.25
            };
            value += (g - target).powi(2);
            let w = Complex64::new(2.0 * (g - target) * 2.0, 0.0);
            let xl = x.column(l).clone_owned();
            let xj = x.column(j).clone_owned();
            let mut gj = grad.column_mut(j);
            gj += xl * gram[(l, j)] * w;
            let mut gl = grad.column_mut(l);
            gl += xj * gram[(j, l)] * w;
        }
    }
    (value, grad)
}
