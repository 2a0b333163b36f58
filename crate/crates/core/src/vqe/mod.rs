//! Statevector VQE with the Ry full-entanglement variational form.

mod ansatz;
pub mod optimize;
mod statevector;

use std::f64::consts::PI;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use ansatz::{ansatz_state, AnsatzConfig, Entanglement, ParameterVector};
pub use optimize::{Method, OptimizerSpec, SpsaSettings};
pub use statevector::{energy_expectation, Statevector};

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub evaluation: usize,
    pub energy: f64,
}

#[derive(Debug, Clone)]
pub struct VqeResult {
    /// Lowest energy seen over every objective evaluation.
    pub energy: f64,
    /// Angles at which `energy` was evaluated.
    pub parameters: ParameterVector,
    pub initial_parameters: ParameterVector,
    /// One entry per objective evaluation, in call order.
    pub trace: Vec<TracePoint>,
    pub evaluations: usize,
}

impl VqeResult {
    pub fn running_minimum(&self) -> Vec<f64> {
        self.trace
            .iter()
            .scan(f64::INFINITY, |best, p| {
                *best = best.min(p.energy);
                Some(*best)
            })
            .collect()
    }

    /// CSV with header `evaluation,energy`.
    pub fn write_trace_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "evaluation,energy")?;
        for p in &self.trace {
            writeln!(out, "{},{:?}", p.evaluation, p.energy)?;
        }
        Ok(())
    }
}

/// Evaluates `⟨ψ(θ)|H|ψ(θ)⟩`. The Ry/CNOT circuit only produces real amplitudes, so a
/// real `H` is contracted with real arithmetic.
struct EnergyObjective<'a> {
    h: &'a HermitianMatrix,
    real_h: Option<Vec<f64>>,
    config: AnsatzConfig,
}

impl<'a> EnergyObjective<'a> {
    fn new(h: &'a HermitianMatrix, config: AnsatzConfig) -> Result<Self> {
        if h.dim() != config.dim() {
            return Err(Error::DimensionMismatch {
                expected: config.dim(),
                found: h.dim(),
            });
        }
        let m = h.as_matrix();
        let real_h = m
            .as_slice()
            .iter()
            .all(|z| z.im == 0.0)
            .then(|| m.as_slice().iter().map(|z| z.re).collect());
        Ok(Self { h, real_h, config })
    }

    fn energy(&self, angles: &[f64]) -> f64 {
        let state = ansatz::prepare(&self.config, angles).expect("angle count checked by caller");
        match &self.real_h {
            Some(h) => {
                let psi: Vec<f64> = state.amplitudes().iter().map(|z| z.re).collect();
                let d = psi.len();
                h.chunks_exact(d)
                    .zip(&psi)
                    .map(|(row, a)| a * row.iter().zip(&psi).map(|(x, y)| x * y).sum::<f64>())
                    .sum()
            }
            None => energy_expectation(self.h, &state).expect("dimension checked on construction"),
        }
    }
}

/// Records every evaluation and remembers the best point.
struct Recorder<'a> {
    objective: &'a EnergyObjective<'a>,
    trace: Vec<TracePoint>,
    best: Option<(f64, Vec<f64>)>,
}

impl Recorder<'_> {
    fn eval(&mut self, angles: &[f64]) -> f64 {
        let e = self.objective.energy(angles);
        self.trace.push(TracePoint {
            evaluation: self.trace.len(),
            energy: e,
        });
        if self.best.as_ref().map_or(true, |(b, _)| e < *b) {
            self.best = Some((e, angles.to_vec()));
        }
        e
    }
}

/// Initial angles uniform in `[−π, π)`.
pub fn initial_parameters(config: &AnsatzConfig, rng: &mut ChaCha8Rng) -> ParameterVector {
    ParameterVector::new(
        (0..config.parameter_count())
            .map(|_| rng.gen_range(-PI..PI))
            .collect(),
    )
    .expect("finite draws")
}

/// Minimizes the ansatz energy from seeded random starts.
///
/// Starting points come from one seeded stream and the optimizer's own randomness
/// from another, so every method sees the same starts for a given seed.
pub fn vqe_minimize(
    h: &HermitianMatrix,
    config: &AnsatzConfig,
    opt: &OptimizerSpec,
) -> Result<VqeResult> {
    opt.validate()?;
    let mut starts = ChaCha8Rng::seed_from_u64(opt.seed);
    let first = initial_parameters(config, &mut starts);
    let mut x0s = vec![first];
    for _ in 1..opt.restarts {
        x0s.push(initial_parameters(config, &mut starts));
    }
    vqe_minimize_from(h, config, opt, &x0s)
}

/// As [`vqe_minimize`], from explicit starting points (one run per start).
pub fn vqe_minimize_from(
    h: &HermitianMatrix,
    config: &AnsatzConfig,
    opt: &OptimizerSpec,
    starts: &[ParameterVector],
) -> Result<VqeResult> {
    opt.validate()?;
    let objective = EnergyObjective::new(h, *config)?;
    if let Some(bad) = starts.iter().find(|s| s.len() != config.parameter_count()) {
        return Err(Error::DimensionMismatch {
            expected: config.parameter_count(),
            found: bad.len(),
        });
    }
    let Some(first) = starts.first() else {
        return Err(crate::error::invalid("starts", "need at least one starting point"));
    };
    let mut noise = ChaCha8Rng::seed_from_u64(opt.seed);
    noise.set_stream(1);
    let mut rec = Recorder {
        objective: &objective,
        trace: Vec::new(),
        best: None,
    };
    for x0 in starts {
        let mut f = |x: &[f64]| rec.eval(x);
        let x0 = x0.as_slice();
        match opt.method {
            Method::QuasiNewtonFd => optimize::quasi_newton(&mut f, x0, opt),
            Method::GradientDescentFd => optimize::gradient_descent(&mut f, x0, opt),
            Method::NelderMead => optimize::nelder_mead(&mut f, x0, opt),
            Method::Spsa => optimize::spsa(&mut f, x0, opt, &mut noise),
        };
    }
    let (energy, best) = rec.best.take().expect("at least one evaluation");
    let evaluations = rec.trace.len();
    Ok(VqeResult {
        energy,
        parameters: ParameterVector::new(best)?,
        initial_parameters: first.clone(),
        trace: rec.trace,
        evaluations,
    })
}

#[derive(Debug, Clone)]
pub struct ComparisonEntry {
    pub method: Method,
    pub result: VqeResult,
}

/// Runs each method from the same seeded starting point(s).
pub fn optimizer_comparison(
    h: &HermitianMatrix,
    config: &AnsatzConfig,
    methods: &[Method],
    seed: u64,
    max_iterations: usize,
) -> Result<Vec<ComparisonEntry>> {
    methods
        .iter()
        .map(|&method| {
            let opt = OptimizerSpec::new(method)
                .with_seed(seed)
                .with_max_iterations(max_iterations);
            Ok(ComparisonEntry {
                method,
                result: vqe_minimize(h, config, &opt)?,
            })
        })
        .collect()
}

/// Long-format CSV `method,evaluation,energy` covering every method's trace.
pub fn write_comparison_csv<W: Write>(entries: &[ComparisonEntry], mut out: W) -> io::Result<()> {
    writeln!(out, "method,evaluation,energy")?;
    for entry in entries {
        for p in &entry.result.trace {
            writeln!(out, "{},{},{:?}", entry.method, p.evaluation, p.energy)?;
        }
    }
    Ok(())
}
