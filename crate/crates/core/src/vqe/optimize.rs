//! Unconstrained minimizers used by the VQE driver.
//!
//! Each routine only sees an objective `f(&[f64]) -> f64`; bookkeeping of the best
//! point and the evaluation trace is done by the caller's objective wrapper.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    NelderMead,
    Spsa,
    /// BFGS with central finite-difference gradients and backtracking line search.
    QuasiNewtonFd,
    /// Steepest descent with central finite-difference gradients and backtracking.
    GradientDescentFd,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::QuasiNewtonFd,
        Method::GradientDescentFd,
        Method::NelderMead,
        Method::Spsa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::NelderMead => "nelder-mead",
            Method::Spsa => "spsa",
            Method::QuasiNewtonFd => "quasinewton",
            Method::GradientDescentFd => "gradient-descent",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "nelder-mead" | "neldermead" | "nm" => Ok(Method::NelderMead),
            "spsa" => Ok(Method::Spsa),
            "quasinewton" | "quasi-newton" | "bfgs" | "l-bfgs" | "l-bfgs-b" => Ok(Method::QuasiNewtonFd),
            "gradient-descent" | "gd" => Ok(Method::GradientDescentFd),
            other => Err(Error::Parse(format!(
                "unknown optimizer '{other}' (expected quasinewton, gradient-descent, nelder-mead or spsa)"
            ))),
        }
    }
}

/// Gain schedules `a_k = a/(k+1+A)^α`, `c_k = c/(k+1)^γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpsaSettings {
    pub a: f64,
    pub c: f64,
    /// Stability constant; `None` means `0.1 × max_iterations`.
    pub stability: Option<f64>,
    pub alpha: f64,
    pub gamma: f64,
}

impl Default for SpsaSettings {
    fn default() -> Self {
        Self {
            a: 0.2,
            c: 0.1,
            stability: None,
            alpha: 0.602,
            gamma: 0.101,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerSpec {
    pub method: Method,
    pub max_iterations: usize,
    pub seed: u64,
    /// Independent random starts; the best result is kept.
    pub restarts: usize,
    /// Central-difference step for the gradient-based methods.
    pub fd_step: f64,
    /// Stop once `|Δf| < tolerance` for `patience` consecutive accepted steps.
    pub tolerance: f64,
    pub patience: usize,
    /// Edge length of the initial Nelder–Mead simplex, radians.
    pub simplex_step: f64,
    pub spsa: SpsaSettings,
}

impl OptimizerSpec {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            max_iterations: 600,
            seed: 0,
            restarts: 1,
            fd_step: 1e-5,
            tolerance: 1e-9,
            patience: 10,
            simplex_step: 0.5,
            spsa: SpsaSettings::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(invalid("max_iterations", "must be at least 1"));
        }
        if self.restarts == 0 {
            return Err(invalid("restarts", "must be at least 1"));
        }
        if !(self.fd_step > 0.0) {
            return Err(invalid("fd_step", "must be positive"));
        }
        if !(self.simplex_step > 0.0) {
            return Err(invalid("simplex_step", "must be positive"));
        }
        Ok(())
    }
}

/// Counts consecutive small changes of the objective.
struct Stall {
    tolerance: f64,
    patience: usize,
    count: usize,
}

impl Stall {
    fn new(spec: &OptimizerSpec) -> Self {
        Self {
            tolerance: spec.tolerance,
            patience: spec.patience,
            count: 0,
        }
    }

    /// Records one accepted step; returns true when the run should stop.
    fn record(&mut self, change: f64) -> bool {
        if change.abs() < self.tolerance {
            self.count += 1;
        } else {
            self.count = 0;
        }
        self.count >= self.patience
    }
}

fn central_gradient(f: &mut dyn FnMut(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|k| {
            probe[k] = x[k] + h;
            let up = f(&probe);
            probe[k] = x[k] - h;
            let down = f(&probe);
            probe[k] = x[k];
            (up - down) / (2.0 * h)
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(x: &[f64], t: f64, d: &[f64]) -> Vec<f64> {
    x.iter().zip(d).map(|(a, b)| a + t * b).collect()
}

const ARMIJO_C1: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 40;
/// Longest trial step (Euclidean norm, radians) tried by the line search.
const MAX_STEP: f64 = 1.0;

/// Backtracking Armijo search along `d` starting at step `t0`. Returns the accepted
/// step length and objective value.
fn backtrack(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x: &[f64],
    fx: f64,
    slope: f64,
    d: &[f64],
    t0: f64,
) -> Option<(f64, f64)> {
    let mut t = t0;
    for _ in 0..MAX_BACKTRACKS {
        let ft = f(&axpy(x, t, d));
        if ft <= fx + ARMIJO_C1 * t * slope {
            return Some((t, ft));
        }
        t *= 0.5;
    }
    None
}

fn capped_step(d: &[f64]) -> f64 {
    let norm = dot(d, d).sqrt();
    if norm > MAX_STEP {
        MAX_STEP / norm
    } else {
        1.0
    }
}

pub(crate) fn quasi_newton(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    spec: &OptimizerSpec,
) -> Vec<f64> {
    let n = x0.len();
    let identity = |n: usize| {
        let mut m = vec![0.0; n * n];
        (0..n).for_each(|k| m[k * n + k] = 1.0);
        m
    };
    let mut h_inv = identity(n);
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut g = central_gradient(f, &x, spec.fd_step);
    let mut stall = Stall::new(spec);
    let mut fresh = true;

    for _ in 0..spec.max_iterations {
        if dot(&g, &g).sqrt() < 1e-12 {
            break;
        }
        let d: Vec<f64> = (0..n)
            .map(|r| -(0..n).map(|c| h_inv[r * n + c] * g[c]).sum::<f64>())
            .collect();
        let mut slope = dot(&g, &d);
        let (d, t0) = if slope < 0.0 {
            let t0 = capped_step(&d);
            (d, t0)
        } else {
            // Lost descent: fall back to steepest descent.
            h_inv = identity(n);
            let d: Vec<f64> = g.iter().map(|v| -v).collect();
            slope = dot(&g, &d);
            let t0 = capped_step(&d);
            (d, t0)
        };
        let Some((t, f_new)) = backtrack(f, &x, fx, slope, &d, t0) else {
            if fresh {
                break;
            }
            h_inv = identity(n);
            fresh = true;
            continue;
        };
        let x_new = axpy(&x, t, &d);
        let g_new = central_gradient(f, &x_new, spec.fd_step);
        let s: Vec<f64> = d.iter().map(|v| v * t).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
            if fresh {
                // Rescale the initial inverse Hessian to the observed curvature.
                let gamma = sy / dot(&y, &y);
                h_inv.iter_mut().for_each(|v| *v *= gamma);
            }
            // H ← (I − ρsyᵀ) H (I − ρysᵀ) + ρssᵀ.
            let rho = 1.0 / sy;
            let hy: Vec<f64> = (0..n)
                .map(|r| (0..n).map(|c| h_inv[r * n + c] * y[c]).sum())
                .collect();
            let yhy = dot(&y, &hy);
            for r in 0..n {
                for c in 0..n {
                    h_inv[r * n + c] += rho * ((1.0 + rho * yhy) * s[r] * s[c] - hy[r] * s[c] - s[r] * hy[c]);
                }
            }
            fresh = false;
        }
        let change = f_new - fx;
        x = x_new;
        fx = f_new;
        g = g_new;
        if stall.record(change) {
            break;
        }
    }
    x
}

pub(crate) fn gradient_descent(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    spec: &OptimizerSpec,
) -> Vec<f64> {
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut stall = Stall::new(spec);
    let mut step = MAX_STEP;
    for _ in 0..spec.max_iterations {
        let g = central_gradient(f, &x, spec.fd_step);
        let gnorm = dot(&g, &g).sqrt();
        if gnorm < 1e-12 {
            break;
        }
        let d: Vec<f64> = g.iter().map(|v| -v / gnorm).collect();
        let slope = -gnorm;
        // Try twice the previous step first so the length can grow again.
        let Some((t, f_new)) = backtrack(f, &x, fx, slope, &d, (2.0 * step).min(MAX_STEP)) else {
            break;
        };
        step = t;
        x = axpy(&x, t, &d);
        let change = f_new - fx;
        fx = f_new;
        if stall.record(change) {
            break;
        }
    }
    x
}

/// Nelder–Mead with standard coefficients. Stops when the spread of simplex values
/// stays below the tolerance for `patience` iterations.
pub(crate) fn nelder_mead(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    spec: &OptimizerSpec,
) -> Vec<f64> {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for k in 0..n {
        let mut v = x0.to_vec();
        v[k] += spec.simplex_step;
        let fv = f(&v);
        simplex.push((v, fv));
    }
    let mut stall = Stall::new(spec);

    for _ in 0..spec.max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        if stall.record(spread) {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|(v, _)| v[k]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(REFLECT);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = along(EXPAND);
            let fe = f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst.1 {
            let xc = along(REFLECT * CONTRACT);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = along(-CONTRACT);
            let fc = f(&xc);
            (xc, fc)
        };
        if fc < fr.min(worst.1) {
            simplex[n] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let v: Vec<f64> = best
                .iter()
                .zip(&vertex.0)
                .map(|(b, x)| b + SHRINK * (x - b))
                .collect();
            let fv = f(&v);
            *vertex = (v, fv);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0).0
}

/// Simultaneous-perturbation stochastic approximation with Rademacher perturbations.
/// Runs the full iteration budget.
pub(crate) fn spsa(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    spec: &OptimizerSpec,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    let s = spec.spsa;
    let stability = s.stability.unwrap_or(0.1 * spec.max_iterations as f64);
    let mut x = x0.to_vec();
    let mut delta = vec![0.0; x.len()];
    for k in 0..spec.max_iterations {
        let kf = k as f64 + 1.0;
        let ak = s.a / (kf + stability).powf(s.alpha);
        let ck = s.c / kf.powf(s.gamma);
        delta
            .iter_mut()
            .for_each(|d| *d = if rng.gen::<bool>() { 1.0 } else { -1.0 });
        let plus = f(&axpy(&x, ck, &delta));
        let minus = f(&axpy(&x, -ck, &delta));
        let scale = ak * (plus - minus) / (2.0 * ck);
        // Δ_k entries are ±1, so 1/Δ_k = Δ_k.
        x.iter_mut().zip(&delta).for_each(|(xi, d)| *xi -= scale * d);
    }
    f(&x);
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn rosenbrock(x: &[f64]) -> f64 {
        (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)
    }

    fn quadratic(x: &[f64]) -> f64 {
        x.iter().enumerate().map(|(k, v)| (k as f64 + 1.0) * (v - 0.5).powi(2)).sum()
    }

    fn spec(method: Method, iters: usize) -> OptimizerSpec {
        OptimizerSpec::new(method).with_max_iterations(iters)
    }

    #[test]
    fn quasi_newton_solves_rosenbrock() {
        let mut f = |x: &[f64]| rosenbrock(x);
        let x = quasi_newton(&mut f, &[-1.2, 1.0], &spec(Method::QuasiNewtonFd, 600));
        assert!((x[0] - 1.0).abs() < 1e-4 && (x[1] - 1.0).abs() < 1e-4, "{x:?}");
    }

    #[test]
    fn nelder_mead_solves_rosenbrock() {
        let mut f = |x: &[f64]| rosenbrock(x);
        let x = nelder_mead(&mut f, &[-1.2, 1.0], &spec(Method::NelderMead, 2000));
        assert!(rosenbrock(&x) < 1e-8, "{x:?}");
    }

    #[test]
    fn gradient_descent_on_quadratic() {
        let mut f = |x: &[f64]| quadratic(x);
        let x = gradient_descent(&mut f, &[3.0, -2.0, 1.0], &spec(Method::GradientDescentFd, 2000));
        assert!(quadratic(&x) < 1e-8, "{x:?}");
    }

    #[test]
    fn spsa_descends_on_quadratic() {
        let mut f = |x: &[f64]| quadratic(x);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x0 = [2.0, -1.0, 0.0, 1.5];
        let x = spsa(&mut f, &x0, &spec(Method::Spsa, 2000), &mut rng);
        assert!(quadratic(&x) < 0.1 * quadratic(&x0), "{x:?}");
    }

    #[test]
    fn stall_counter_resets() {
        let mut s = Stall {
            tolerance: 1e-3,
            patience: 3,
            count: 0,
        };
        assert!(!s.record(1e-4));
        assert!(!s.record(1e-4));
        assert!(!s.record(1.0));
        assert!(!s.record(0.0));
        assert!(!s.record(0.0));
        assert!(s.record(0.0));
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert_eq!("L-BFGS".parse::<Method>().unwrap(), Method::QuasiNewtonFd);
        assert!("cobyla".parse::<Method>().is_err());
    }

    #[test]
    fn validation() {
        assert!(spec(Method::Spsa, 0).validate().is_err());
        assert!(OptimizerSpec::new(Method::Spsa).with_restarts(0).validate().is_err());
        assert!(OptimizerSpec::new(Method::Spsa).validate().is_ok());
    }
}
