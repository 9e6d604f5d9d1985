//! Coherence minimization over unit-norm frames.
//!
//! The nonsmooth objective `max_{j<l} |⟨φ_j, φ_l⟩|²` is replaced by the
//! log-sum-exp surrogate
//!
//! ```text
//! F_β(Φ) = 1/(2β) · log Σ_{j<l} exp(2β |⟨φ_j, φ_l⟩|²)
//! ```
//!
//! which overestimates the max by at most `log(N(N-1)/2) / (2β)`. Each stage of
//! an increasing temperature schedule runs projected gradient descent on the
//! product of unit spheres with Armijo backtracking, warm-started from the
//! previous stage. Independent restarts run in parallel and are reduced
//! deterministically (smallest coherence, then smallest restart index).

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::coherence;
use crate::bounds::{best_bound, BoundReport};
use crate::catalog::random_frame_with;
use crate::error::{Error, Result};
use crate::frame::{Field, Frame};

const ARMIJO_C: f64 = 1e-4;
const MIN_STEP: f64 = 1e-18;
const GRAD_TOL: f64 = 1e-14;
const TIE_REL: f64 = 4.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepRule {
    /// Backtracking from a step that doubles after every accepted move.
    Armijo,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub n: usize,
    pub m: usize,
    pub field: Field,
    pub restarts: usize,
    /// Iteration cap per smoothing stage.
    pub max_iters: usize,
    /// Strictly increasing smoothing parameters β.
    pub smoothing_schedule: Vec<f64>,
    pub step_rule: StepRule,
    pub seed: u64,
    /// Largest gap to the best lower bound for which the result counts as certified.
    pub target_tol: f64,
    /// Keep per-restart histories in the result.
    pub record_trace: bool,
}

impl SearchConfig {
    pub fn new(n: usize, m: usize, field: Field) -> Self {
        SearchConfig {
            n,
            m,
            field,
            restarts: 50,
            max_iters: 2000,
            smoothing_schedule: vec![10.0, 30.0, 100.0, 300.0, 1000.0],
            step_rule: StepRule::Armijo,
            seed: 0,
            target_tol: 1e-3,
            record_trace: false,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n <= self.m {
            return Err(Error::ConfigInvalid(format!(
                "need N > M >= 1, got N = {}, M = {}",
                self.n, self.m
            )));
        }
        if self.restarts == 0 || self.max_iters == 0 {
            return Err(Error::ConfigInvalid(
                "restarts and max_iters must be positive".into(),
            ));
        }
        if self.smoothing_schedule.is_empty()
            || self
                .smoothing_schedule
                .iter()
                .any(|b| !(b.is_finite() && *b > 0.0))
            || self.smoothing_schedule.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::ConfigInvalid(
                "smoothing schedule must be positive and strictly increasing".into(),
            ));
        }
        if self.target_tol.is_nan() || self.target_tol < 0.0 {
            return Err(Error::ConfigInvalid(
                "target_tol must be nonnegative".into(),
            ));
        }
        Ok(())
    }
}

/// Objective values along one smoothing stage.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageTrace {
    pub beta: f64,
    /// Smoothed objective at the start of the stage and after every accepted
    /// step, accumulated from the computed per-step changes.
    pub objective: Vec<f64>,
    /// Best coherence seen so far in the restart, at the end of the stage.
    pub best_coherence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartTrace {
    pub restart: usize,
    pub stages: Vec<StageTrace>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub best_frame: Frame,
    pub best_coherence: f64,
    pub bound: BoundReport,
    pub gap: f64,
    pub certified: bool,
    pub iterations_used: usize,
    pub restarts_used: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<RestartTrace>>,
}

struct Evaluation {
    objective: f64,
    max_sq: f64,
    gram: DMatrix<Complex64>,
    /// Softmax weights of the pairs, normalized to sum to one over `j < l`.
    weights: DMatrix<f64>,
}

/// Evaluates the surrogate, and optionally its Euclidean gradient, on a raw synthesis matrix.
fn evaluate(
    x: &DMatrix<Complex64>,
    beta: f64,
    grad: Option<&mut DMatrix<Complex64>>,
) -> Evaluation {
    let n = x.ncols();
    let gram = x.adjoint() * x;
    let scale = 2.0 * beta;

    let mut max_sq = 0.0f64;
    for j in 0..n {
        for l in (j + 1)..n {
            max_sq = max_sq.max(gram[(j, l)].norm_sqr());
        }
    }
    let shift = scale * max_sq;
    let mut weights = DMatrix::<f64>::zeros(n, n);
    let mut total = 0.0;
    for j in 0..n {
        for l in (j + 1)..n {
            let w = (scale * gram[(j, l)].norm_sqr() - shift).exp();
            weights[(j, l)] = w;
            weights[(l, j)] = w;
            total += w;
        }
    }
    weights /= total;
    let objective = (shift + total.ln()) / scale;

    if let Some(out) = grad {
        // column j is Σ_l 2 p_jl φ_l (φ_l* φ_j), i.e. X·B with B_lj = 2 p_jl G_lj
        let b = DMatrix::from_fn(n, n, |l, j| gram[(l, j)] * (2.0 * weights[(j, l)]));
        out.copy_from(&(x * b));
    }
    Evaluation {
        objective,
        max_sq,
        gram,
        weights,
    }
}

/// `F_β(Z) - F_β(X)` for the scale-invariant pair values
/// `|⟨z_j, z_l⟩|² / (‖z_j‖² ‖z_l‖²)`, computed from the differences `Z - X`
/// rather than from two rounded objective values. Decreases far below the
/// rounding error of `F_β` itself stay visible, and the column norms of `Z`
/// (which the retraction later rescales) do not enter.
fn objective_change(
    x: &DMatrix<Complex64>,
    at_x: &Evaluation,
    z: &DMatrix<Complex64>,
    beta: f64,
) -> f64 {
    let n = x.ncols();
    let d = z - x;
    let dg = d.adjoint() * z + x.adjoint() * &d;
    let nx: Vec<f64> = x.column_iter().map(|c| c.norm_squared()).collect();
    let dn: Vec<f64> = (0..n)
        .map(|j| {
            d.column(j)
                .iter()
                .zip(z.column(j).iter().zip(x.column(j).iter()))
                .map(|(a, (b, c))| (a.conj() * (b + c)).re)
                .sum()
        })
        .collect();
    let scale = 2.0 * beta;
    let mut exponents = Vec::with_capacity(n * (n - 1) / 2);
    for j in 0..n {
        for l in (j + 1)..n {
            let g = at_x.gram[(j, l)];
            let a = g.norm_sqr();
            let da = (dg[(j, l)] * (g * 2.0 + dg[(j, l)]).conj()).re;
            let (nzj, nzl) = (nx[j] + dn[j], nx[l] + dn[l]);
            let dprod = dn[j] * nzl + nx[j] * dn[l];
            let delta = (da * nx[j] * nx[l] - a * dprod) / (nzj * nzl * nx[j] * nx[l]);
            exponents.push((at_x.weights[(j, l)], scale * delta));
        }
    }
    // log Σ p e^t: through log1p while the sum is near one, otherwise shifted
    let acc: f64 = exponents.iter().map(|&(p, t)| p * t.exp_m1()).sum();
    if acc > -0.5 && acc < 1.0 {
        return acc.ln_1p() / scale;
    }
    let top = exponents
        .iter()
        .map(|&(_, t)| t)
        .fold(f64::NEG_INFINITY, f64::max);
    let shifted: f64 = exponents.iter().map(|&(p, t)| p * (t - top).exp()).sum();
    (top + shifted.ln()) / scale
}

/// Smoothed coherence surrogate and its Euclidean gradient with respect to the
/// real and imaginary parts of every frame entry (an `M x N` array whose entry
/// `(k, j)` is `∂F/∂Re φ_j[k] + i ∂F/∂Im φ_j[k]`).
pub fn objective_and_gradient(frame: &Frame, beta: f64) -> Result<(f64, DMatrix<Complex64>)> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::ConfigInvalid(format!(
            "beta must be positive, got {beta}"
        )));
    }
    if frame.len() < 2 {
        return Err(Error::TooFewVectors { n: frame.len() });
    }
    let x = frame.synthesis();
    let mut grad = DMatrix::zeros(x.nrows(), x.ncols());
    let eval = evaluate(x, beta, Some(&mut grad));
    if frame.field() == Field::Real {
        grad.iter_mut().for_each(|z| z.im = 0.0);
    }
    Ok((eval.objective, grad))
}

/// Removes from each gradient column its component along the base point.
fn project_tangent(x: &DMatrix<Complex64>, grad: &mut DMatrix<Complex64>) {
    for j in 0..x.ncols() {
        let radial: f64 = x
            .column(j)
            .iter()
            .zip(grad.column(j).iter())
            .map(|(p, g)| (p.conj() * g).re)
            .sum();
        let phi = x.column(j).clone_owned();
        grad.column_mut(j)
            .axpy(Complex64::new(-radial, 0.0), &phi, Complex64::new(1.0, 0.0));
    }
}

fn step_point(
    x: &DMatrix<Complex64>,
    direction: &DMatrix<Complex64>,
    step: f64,
) -> DMatrix<Complex64> {
    x - direction * Complex64::new(step, 0.0)
}

fn retract(mut y: DMatrix<Complex64>) -> DMatrix<Complex64> {
    for mut col in y.column_iter_mut() {
        let norm = col.norm();
        col.unscale_mut(norm);
    }
    y
}

struct RestartOutcome {
    best: DMatrix<Complex64>,
    best_sq: f64,
    iterations: usize,
    stages: Vec<StageTrace>,
}

fn descend(
    start: DMatrix<Complex64>,
    field: Field,
    config: &SearchConfig,
    restart: usize,
) -> Result<RestartOutcome> {
    let mut x = start;
    let mut grad = DMatrix::zeros(x.nrows(), x.ncols());
    let mut best = x.clone();
    let mut best_sq = evaluate(&x, 1.0, None).max_sq;
    let mut floor_sq = best_sq;
    let mut iterations = 0;
    let mut stages = Vec::with_capacity(config.smoothing_schedule.len());

    for &beta in &config.smoothing_schedule {
        let mut step = 1.0 / beta;
        let mut history = Vec::new();
        let mut current = evaluate(&x, beta, Some(&mut grad));
        let mut tracked = current.objective;
        if config.record_trace {
            history.push(tracked);
        }
        for _ in 0..config.max_iters {
            if field == Field::Real {
                grad.iter_mut().for_each(|z| z.im = 0.0);
            }
            project_tangent(&x, &mut grad);
            let gnorm_sq = grad.norm_squared();
            if !gnorm_sq.is_finite() {
                return Err(Error::Diverged { restart });
            }
            if gnorm_sq.sqrt() < GRAD_TOL {
                break;
            }
            let mut accepted = None;
            while step >= MIN_STEP {
                let candidate = step_point(&x, &grad, step);
                let change = objective_change(&x, &current, &candidate, beta);
                if change.is_nan() {
                    return Err(Error::Diverged { restart });
                }
                if change <= -ARMIJO_C * step * gnorm_sq {
                    accepted = Some((candidate, change));
                    break;
                }
                step *= 0.5;
            }
            let Some((next, change)) = accepted else {
                break;
            };
            iterations += 1;
            x = retract(next);
            step *= 2.0;
            current = evaluate(&x, beta, Some(&mut grad));
            tracked += change;
            if config.record_trace {
                history.push(tracked);
            }
            // ties within rounding go to the later, more polished iterate
            if current.max_sq <= floor_sq * (1.0 + TIE_REL) {
                floor_sq = floor_sq.min(current.max_sq);
                best_sq = current.max_sq;
                best.copy_from(&x);
            }
        }
        stages.push(StageTrace {
            beta,
            objective: history,
            best_coherence: best_sq.sqrt(),
        });
    }
    Ok(RestartOutcome {
        best,
        best_sq,
        iterations,
        stages,
    })
}

fn finish(
    config: &SearchConfig,
    outcomes: Vec<RestartOutcome>,
    extra_candidate: Option<&Frame>,
) -> Result<SearchResult> {
    let restarts_used = outcomes.len();
    let iterations_used = outcomes.iter().map(|o| o.iterations).sum();
    let mut best: Option<(Frame, f64)> = None;
    let mut traces = Vec::new();
    for (restart, outcome) in outcomes.into_iter().enumerate() {
        let frame = Frame::normalized_synthesis(config.field, outcome.best)
            .map_err(|_| Error::Diverged { restart })?;
        let mu = coherence(&frame)?;
        debug_assert!((mu * mu - outcome.best_sq).abs() < 1e-9);
        if best.as_ref().is_none_or(|(_, b)| mu < *b) {
            best = Some((frame, mu));
        }
        if config.record_trace {
            traces.push(RestartTrace {
                restart,
                stages: outcome.stages,
            });
        }
    }
    let (mut best_frame, mut best_coherence) = best.expect("at least one restart");
    if let Some(start) = extra_candidate {
        let mu = coherence(start)?;
        if mu <= best_coherence {
            best_frame = start.clone();
            best_coherence = mu;
        }
    }
    let bound = best_bound(config.n, config.m, config.field)?;
    let gap = best_coherence - bound.best;
    Ok(SearchResult {
        best_frame,
        best_coherence,
        bound,
        gap,
        certified: gap <= config.target_tol,
        iterations_used,
        restarts_used,
        trace: config.record_trace.then_some(traces),
    })
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Multi-start search for a frame of minimal coherence.
pub fn minimize_coherence(config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let outcomes = (0..config.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = restart_rng(config.seed, restart);
            let start = random_frame_with(config.n, config.m, config.field, &mut rng);
            descend(start.synthesis().clone(), config.field, config, restart)
        })
        .collect::<Result<Vec<_>>>()?;
    finish(config, outcomes, None)
}

/// Single descent run started from `frame`. Never returns a frame worse than the input.
pub fn refine(frame: &Frame, config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    if frame.len() != config.n || frame.dim() != config.m || frame.field() != config.field {
        return Err(Error::ConfigInvalid(format!(
            "frame is {} vectors in {}^{}, config expects {} in {}^{}",
            frame.len(),
            frame.field(),
            frame.dim(),
            config.n,
            config.field,
            config.m
        )));
    }
    let outcome = descend(frame.synthesis().clone(), config.field, config, 0)?;
    finish(config, vec![outcome], Some(frame))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn objective_change_matches_direct_difference() {
        for seed in 0..5 {
            let f = catalog::random_frame(5, 2, Field::Complex, seed);
            let x = f.synthesis().clone();
            for beta in [1.0, 100.0] {
                let mut g = DMatrix::zeros(2, 5);
                let at_x = evaluate(&x, beta, Some(&mut g));
                project_tangent(&x, &mut g);
                for step in [1e-1, 1e-3, 1e-5] {
                    let z = step_point(&x, &g, step);
                    let direct =
                        evaluate(&retract(z.clone()), beta, None).objective - at_x.objective;
                    let change = objective_change(&x, &at_x, &z, beta);
                    assert!(
                        (direct - change).abs() <= 1e-12 * (1.0 + direct.abs()),
                        "{direct} vs {change}"
                    );
                }
            }
        }
    }

    #[test]
    fn surrogate_bounds_the_max() {
        for seed in 0..10 {
            let f = catalog::random_frame(6, 2, Field::Complex, seed);
            let mu = coherence(&f).unwrap();
            for beta in [1.0, 10.0, 100.0, 1000.0] {
                let (obj, _) = objective_and_gradient(&f, beta).unwrap();
                assert!(obj >= mu * mu - 1e-15);
                assert!(obj - mu * mu <= (15f64).ln() / (2.0 * beta) + 1e-15);
            }
        }
    }

    #[test]
    fn single_orthogonal_pair_has_zero_objective() {
        let f = catalog::orthonormal_basis(2, Field::Complex);
        for beta in [0.5, 10.0, 350.0] {
            let (obj, grad) = objective_and_gradient(&f, beta).unwrap();
            assert_eq!(obj, 0.0);
            assert_eq!(grad.norm(), 0.0);
        }
    }

    #[test]
    fn large_beta_stays_finite() {
        let f = catalog::random_frame(5, 2, Field::Complex, 3);
        let (obj, grad) = objective_and_gradient(&f, 700.0).unwrap();
        assert!(obj.is_finite() && grad.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        assert!(objective_and_gradient(&f, 0.0).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::new(2, 2, Field::Complex).validate().is_err());
        let mut c = SearchConfig::new(5, 2, Field::Complex);
        c.smoothing_schedule = vec![10.0, 10.0];
        assert!(matches!(
            minimize_coherence(&c),
            Err(Error::ConfigInvalid(_))
        ));
        let c = SearchConfig::new(5, 2, Field::Complex).with_restarts(0);
        assert!(c.validate().is_err());
        let c = SearchConfig::new(6, 2, Field::Complex);
        assert!(matches!(
            refine(&catalog::tri_5_2(), &c),
            Err(Error::ConfigInvalid(_))
        ));
    }

    #[test]
    fn refine_never_gets_worse() {
        let config = SearchConfig::new(5, 2, Field::Complex);
        for seed in 0..3 {
            let start = catalog::random_frame(5, 2, Field::Complex, seed);
            let r = refine(&start, &config).unwrap();
            assert!(r.best_coherence <= coherence(&start).unwrap() + 1e-12);
            assert_eq!(r.restarts_used, 1);
        }
    }
}
