use std::error::Error;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use morse_vqe::basis::{BasisKind, DiscretizedOperatorPair};
use morse_vqe::matrix::{hermitian_eigenvalues, HermitianMatrix};
use morse_vqe::models::{
    build_molecule_hamiltonian, build_susy_hamiltonian, build_triatomic_hamiltonian,
    derive_molecule, lookup_molecule, susy_potential, MoleculeParams, MoleculeRecord,
    PartnerSign, SusyMorseSpec, TriatomicSpec, BUILTIN_MOLECULES,
};
use morse_vqe::pauli::{pauli_decompose, pauli_reconstruct, PauliExpansion};
use morse_vqe::vqe::{
    optimizer_comparison, vqe_minimize, write_comparison_csv, AnsatzConfig, Method,
    OptimizerSpec, VqeResult,
};

use crate::args::{
    Command, DecomposeCmd, ModelArg, MoleculeCmd, MoleculeModel, SizeOpts, SusyCmd, SusyModel,
    TriatomicCmd, TriatomicModel, VqeOpts,
};

pub type Outcome<T = ()> = Result<T, Box<dyn Error>>;

/// Largest register the dense simulator is asked to handle.
const MAX_QUBITS: usize = 10;
/// Default random starts for the two-coordinate model, whose landscape has shallow local minima.
const TRIATOMIC_RESTARTS: usize = 8;

pub fn run(command: &Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Susy(cmd) => susy(cmd, out),
        Command::Molecule(cmd) => molecule(cmd, out),
        Command::Triatomic(cmd) => triatomic(cmd, out),
        Command::Decompose(cmd) => decompose(cmd, out),
    }
}

/// `x` rounded to `digits` significant figures, in positional notation.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn dimensionless(x: f64) -> String {
    sig(x, 6)
}

fn ev(x: f64) -> String {
    sig(x, 5)
}

fn fail(message: impl Into<String>) -> Box<dyn Error> {
    message.into().into()
}

/// Resolves `--qubits` / `--dim` into `(dimension, qubits)`; qubits is `None` for
/// dimensions that are not powers of two.
fn resolve_size(size: &SizeOpts, need_qubits: bool) -> Outcome<(usize, Option<usize>)> {
    let (dim, qubits) = match (size.qubits, size.dim) {
        (Some(q), Some(d)) => {
            if q > MAX_QUBITS || d != 1usize << q {
                return Err(fail(format!(
                    "dimension mismatch: --qubits {q} implies dimension 2^{q}, but --dim {d} was given"
                )));
            }
            (d, Some(q))
        }
        (Some(q), None) => {
            if q == 0 || q > MAX_QUBITS {
                return Err(fail(format!("--qubits must be between 1 and {MAX_QUBITS}, got {q}")));
            }
            (1usize << q, Some(q))
        }
        (None, Some(d)) => (d, d.is_power_of_two().then(|| d.trailing_zeros() as usize)),
        (None, None) => (16, Some(4)),
    };
    if need_qubits && qubits.is_none() {
        return Err(fail(format!(
            "dimension {dim} is not a power of two; VQE and Pauli decomposition need 2^n"
        )));
    }
    Ok((dim, qubits))
}

fn check_writable(path: Option<&Path>) -> Outcome {
    if let Some(p) = path {
        let parent = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        if !parent.is_dir() {
            return Err(fail(format!("output directory {} does not exist", parent.display())));
        }
    }
    Ok(())
}

fn create(path: &Path) -> Outcome<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| fail(format!("cannot write {}: {e}", path.display())))
}

fn lowest(h: &HermitianMatrix, count: usize) -> Outcome<Vec<f64>> {
    let mut ev = hermitian_eigenvalues(h)?;
    ev.truncate(count);
    Ok(ev)
}

fn joined(values: &[f64]) -> String {
    values.iter().map(|&v| dimensionless(v)).collect::<Vec<_>>().join(", ")
}

fn optimizer_spec(opts: &VqeOpts, default_restarts: usize) -> OptimizerSpec {
    OptimizerSpec::new(opts.optimizer)
        .with_seed(opts.seed)
        .with_max_iterations(opts.max_iterations)
        .with_restarts(opts.restarts.unwrap_or(default_restarts))
}

/// Runs the requested optimizer (or all of them) and reports; returns the result of
/// the requested optimizer.
fn run_vqe(
    h: &HermitianMatrix,
    qubits: usize,
    opts: &VqeOpts,
    default_restarts: usize,
    out: &mut dyn Write,
) -> Outcome<VqeResult> {
    let config = AnsatzConfig::new(qubits, opts.depth)?;
    if opts.compare_optimizers {
        let table = optimizer_comparison(h, &config, &Method::ALL, opts.seed, opts.max_iterations)?;
        writeln!(out, "optimizer comparison (seed {}, shared starting point):", opts.seed)?;
        for entry in &table {
            writeln!(
                out,
                "  {:<17} {} ({} evaluations)",
                entry.method.name(),
                dimensionless(entry.result.energy),
                entry.result.evaluations
            )?;
        }
        if let Some(path) = &opts.trace {
            let mut f = create(path)?;
            write_comparison_csv(&table, &mut f)?;
            f.flush()?;
        }
        let chosen = table
            .into_iter()
            .find(|e| e.method == opts.optimizer)
            .expect("every method is compared");
        return Ok(chosen.result);
    }
    let spec = optimizer_spec(opts, default_restarts);
    let result = vqe_minimize(h, &config, &spec)?;
    if let Some(path) = &opts.trace {
        let mut f = create(path)?;
        result.write_trace_csv(&mut f)?;
        f.flush()?;
    }
    Ok(result)
}

fn describe_vqe(result: &VqeResult, opts: &VqeOpts, restarts: usize) -> String {
    format!(
        "{}, depth {}, seed {}, {} start(s), {} evaluations",
        opts.optimizer.name(),
        opts.depth,
        opts.seed,
        if opts.compare_optimizers { 1 } else { restarts },
        result.evaluations
    )
}

fn write_potential(path: &Path, header: &str, rows: impl Iterator<Item = (f64, f64)>) -> Outcome {
    let mut f = create(path)?;
    writeln!(f, "{header}")?;
    for (x, v) in rows {
        writeln!(f, "{x:?},{v:?}")?;
    }
    f.flush()?;
    Ok(())
}

/// Grid `x = (k − 60)/20` for k = 0..=220, i.e. [−3, 8] in steps of 0.05.
fn grid() -> impl Iterator<Item = f64> {
    (0..=220).map(|k| (k as f64 - 60.0) / 20.0)
}

fn susy_spec(model: &SusyModel) -> Outcome<SusyMorseSpec> {
    Ok(SusyMorseSpec::new(
        model.big_a,
        model.sign.into(),
        model.scale,
        model.hierarchy_level,
    )?)
}

fn susy_label(spec: &SusyMorseSpec) -> String {
    match (spec.hierarchy_level(), spec.sign()) {
        (0, PartnerSign::Minus) => "H-".into(),
        (0, PartnerSign::Plus) => "H+".into(),
        (k, _) => format!("H({k})"),
    }
}

fn susy(cmd: &SusyCmd, out: &mut dyn Write) -> Outcome {
    check_writable(cmd.out.output.as_deref())?;
    check_writable(cmd.vqe.trace.as_deref())?;
    check_writable(cmd.potential_csv.as_deref())?;
    let (dim, qubits) = resolve_size(&cmd.size, !cmd.vqe.exact_only)?;
    let spec = susy_spec(&cmd.model)?;
    let kind: BasisKind = cmd.basis.basis.into();
    let pair = DiscretizedOperatorPair::build(kind, dim)?;
    let h = build_susy_hamiltonian(&spec, &pair)?;
    let label = susy_label(&spec);

    writeln!(
        out,
        "# susy {label}: A = {}, hierarchy level {}, scale {}, {kind} basis, dimension {dim}",
        spec.a(),
        spec.hierarchy_level(),
        spec.scale()
    )?;
    let low = lowest(&h, 5)?;
    writeln!(out, "exact eigenvalues (lowest {}): {}", low.len(), joined(&low))?;
    let terms = match qubits {
        Some(n) => {
            let count = pauli_decompose(&h, n, cmd.out.threshold)?.len();
            writeln!(out, "pauli terms (threshold {:e}): {count}", cmd.out.threshold)?;
            Some(count)
        }
        None => None,
    };
    let vqe = match (cmd.vqe.exact_only, qubits) {
        (false, Some(n)) => {
            let res = run_vqe(&h, n, &cmd.vqe, 1, out)?;
            writeln!(out, "vqe energy: {} ({})", dimensionless(res.energy), describe_vqe(&res, &cmd.vqe, cmd.vqe.restarts.unwrap_or(1)))?;
            Some(res.energy)
        }
        _ => None,
    };

    if let Some(path) = &cmd.out.output {
        let mut f = create(path)?;
        writeln!(f, "basis,hamiltonian,vqe_result,pauli_terms,exact")?;
        writeln!(
            f,
            "{kind},{label},{},{},{:?}",
            vqe.map(|e| format!("{e:?}")).unwrap_or_default(),
            terms.map(|t| t.to_string()).unwrap_or_default(),
            low[0]
        )?;
        f.flush()?;
    }
    if let Some(path) = &cmd.potential_csv {
        write_potential(path, "x,potential", grid().map(|x| (x, susy_potential(&spec, x))))?;
    }
    Ok(())
}

fn molecule_params(model: &MoleculeModel) -> Outcome<MoleculeParams> {
    if let Some(name) = &model.name {
        return Ok(lookup_molecule(name)?);
    }
    match (model.reduced_mass, model.well_depth, model.width) {
        (Some(m), Some(d), Some(a)) => Ok(MoleculeParams::new("custom", m, d, a)),
        (None, None, None) => Err(fail(format!(
            "no molecule given: use --name, --all, or all of --mr, --D and --a (built-in: {})",
            BUILTIN_MOLECULES.map(|m| m.0).join(", ")
        ))),
        _ => Err(fail("a custom molecule needs all of --mr, --D and --a")),
    }
}

fn molecule_pair(record: &MoleculeRecord, kind: BasisKind, dim: usize) -> Outcome<DiscretizedOperatorPair> {
    // Oscillator length matched to the harmonic width 1/√λ of the well.
    Ok(DiscretizedOperatorPair::build(kind, dim)?.with_length_scale(1.0 / record.lambda().sqrt())?)
}

struct MoleculeRow {
    record: MoleculeRecord,
    exact: f64,
    vqe: Option<f64>,
}

fn molecule(cmd: &MoleculeCmd, out: &mut dyn Write) -> Outcome {
    check_writable(cmd.out.output.as_deref())?;
    check_writable(cmd.vqe.trace.as_deref())?;
    check_writable(cmd.potential_csv.as_deref())?;
    if cmd.all && cmd.vqe.compare_optimizers {
        return Err(fail("--compare-optimizers runs a single molecule; drop --all"));
    }
    let (dim, qubits) = resolve_size(&cmd.size, !cmd.vqe.exact_only)?;
    let kind: BasisKind = cmd.basis.basis.into();
    let params: Vec<MoleculeParams> = if cmd.all {
        BUILTIN_MOLECULES
            .iter()
            .map(|&(n, m, d, a)| MoleculeParams::new(n, m, d, a))
            .collect()
    } else {
        vec![molecule_params(&cmd.model)?]
    };

    let mut rows = Vec::new();
    let mut traces = Vec::new();
    for p in params {
        let record = derive_molecule(p)?;
        let pair = molecule_pair(&record, kind, dim)?;
        let h = build_molecule_hamiltonian(record.lambda(), &pair)?;
        let exact = lowest(&h, 1)?[0];
        writeln!(out, "# molecule {}: {kind} basis, dimension {dim}", record.name())?;
        writeln!(
            out,
            "lambda^2 = {}, lambda = {}, E_mult = {} eV, bound states = {}",
            dimensionless(record.lambda_squared),
            dimensionless(record.lambda()),
            ev(record.e_mult),
            record.n_bound
        )?;
        writeln!(
            out,
            "epsilon0 = {}, epsilon_inf = {}, epsilon0/epsilon_inf = {}, E0 = {} eV",
            dimensionless(record.epsilon0),
            dimensionless(record.epsilon_inf),
            dimensionless(record.epsilon_ratio()),
            ev(record.ground_energy)
        )?;
        writeln!(out, "exact matrix eigenvalue: {} ({} eV)", dimensionless(exact), ev(record.to_ev(exact)))?;
        if let Some(n) = qubits {
            let count = pauli_decompose(&h, n, cmd.out.threshold)?.len();
            writeln!(out, "pauli terms (threshold {:e}): {count}", cmd.out.threshold)?;
        }
        let vqe = match (cmd.vqe.exact_only, qubits) {
            (false, Some(n)) => {
                // With `--all` the traces share one file, written below.
                let opts = VqeOpts {
                    trace: if cmd.all { None } else { cmd.vqe.trace.clone() },
                    ..cmd.vqe.clone()
                };
                let res = run_vqe(&h, n, &opts, 1, out)?;
                writeln!(
                    out,
                    "vqe energy: {} ({} eV) ({})",
                    dimensionless(res.energy),
                    ev(record.to_ev(res.energy)),
                    describe_vqe(&res, &cmd.vqe, cmd.vqe.restarts.unwrap_or(1))
                )?;
                let energy = res.energy;
                traces.push((record.name().to_string(), res));
                Some(energy)
            }
            _ => None,
        };
        rows.push(MoleculeRow { record, exact, vqe });
    }

    if let (true, Some(path)) = (cmd.all, &cmd.vqe.trace) {
        let mut f = create(path)?;
        writeln!(f, "molecule,evaluation,energy")?;
        for (name, res) in &traces {
            for p in &res.trace {
                writeln!(f, "{name},{},{:?}", p.evaluation, p.energy)?;
            }
        }
        f.flush()?;
    }

    if let Some(path) = &cmd.out.output {
        let mut f = create(path)?;
        writeln!(
            f,
            "molecule,lambda_squared,e_mult,bound_states,e0_ev,e0_vqe_ev,lambda_squared_half,lambda,epsilon_ratio,epsilon0,epsilon0_vqe,epsilon_matrix"
        )?;
        for row in &rows {
            let r = &row.record;
            writeln!(
                f,
                "{},{:?},{:?},{},{:?},{},{:?},{:?},{:?},{:?},{},{:?}",
                r.name(),
                r.lambda_squared,
                r.e_mult,
                r.n_bound,
                r.ground_energy,
                row.vqe.map(|e| format!("{:?}", r.to_ev(e))).unwrap_or_default(),
                r.epsilon_inf,
                r.lambda(),
                r.epsilon_ratio(),
                r.epsilon0,
                row.vqe.map(|e| format!("{e:?}")).unwrap_or_default(),
                row.exact
            )?;
        }
        f.flush()?;
    }

    if let Some(path) = &cmd.potential_csv {
        let mut f = create(path)?;
        writeln!(f, "molecule,x,potential")?;
        for row in &rows {
            let well = row.record.epsilon_inf;
            for x in grid() {
                let e = (-x).exp();
                writeln!(f, "{},{x:?},{:?}", row.record.name(), well * (e * e - 2.0 * e + 1.0))?;
            }
        }
        f.flush()?;
    }
    Ok(())
}

fn triatomic_parts(model: &TriatomicModel, kind: BasisKind) -> Outcome<(TriatomicSpec, DiscretizedOperatorPair, usize)> {
    let q = model.qubits_per_dim;
    if q == 0 || 2 * q > MAX_QUBITS {
        return Err(fail(format!(
            "--qubits-per-dim must be between 1 and {}, got {q}",
            MAX_QUBITS / 2
        )));
    }
    let spec = TriatomicSpec::new(model.m, model.big_m, model.c, model.b, model.form.into())?;
    let pair = DiscretizedOperatorPair::build(kind, 1 << q)?;
    Ok((spec, pair, 2 * q))
}

fn triatomic(cmd: &TriatomicCmd, out: &mut dyn Write) -> Outcome {
    check_writable(cmd.out.output.as_deref())?;
    check_writable(cmd.vqe.trace.as_deref())?;
    let kind: BasisKind = cmd.basis.basis.into();
    let (spec, pair, qubits) = triatomic_parts(&cmd.model, kind)?;
    let h = build_triatomic_hamiltonian(&spec, &pair)?;
    writeln!(
        out,
        "# triatomic {}: m = {}, M = {}, C = {}, b = {}, {kind} basis, {} per coordinate, dimension {}",
        spec.form,
        spec.m,
        spec.big_m,
        spec.c,
        dimensionless(spec.b),
        pair.dim,
        h.dim()
    )?;
    let low = lowest(&h, 5)?;
    writeln!(out, "exact eigenvalues (lowest {}): {}", low.len(), joined(&low))?;
    let terms = pauli_decompose(&h, qubits, cmd.out.threshold)?.len();
    writeln!(out, "pauli terms (threshold {:e}): {terms}", cmd.out.threshold)?;
    let vqe = if cmd.vqe.exact_only {
        None
    } else {
        let res = run_vqe(&h, qubits, &cmd.vqe, TRIATOMIC_RESTARTS, out)?;
        writeln!(
            out,
            "vqe energy: {} ({})",
            dimensionless(res.energy),
            describe_vqe(&res, &cmd.vqe, cmd.vqe.restarts.unwrap_or(TRIATOMIC_RESTARTS))
        )?;
        Some(res.energy)
    };
    if let Some(path) = &cmd.out.output {
        let mut f = create(path)?;
        writeln!(f, "hamiltonian,vqe_result,pauli_terms,exact")?;
        writeln!(
            f,
            "{},{},{terms},{:?}",
            spec.form,
            vqe.map(|e| format!("{e:?}")).unwrap_or_default(),
            low[0]
        )?;
        f.flush()?;
    }
    Ok(())
}

fn decompose(cmd: &DecomposeCmd, out: &mut dyn Write) -> Outcome {
    check_writable(cmd.out.output.as_deref())?;
    let kind: BasisKind = cmd.basis.basis.into();
    let (h, qubits, label) = match cmd.model {
        ModelArg::Identity => {
            let (dim, q) = resolve_size(&cmd.size, true)?;
            (HermitianMatrix::identity(dim), q.expect("checked"), "identity".to_string())
        }
        ModelArg::Susy => {
            let (dim, q) = resolve_size(&cmd.size, true)?;
            let spec = susy_spec(&cmd.susy)?;
            let pair = DiscretizedOperatorPair::build(kind, dim)?;
            (build_susy_hamiltonian(&spec, &pair)?, q.expect("checked"), format!("susy {}", susy_label(&spec)))
        }
        ModelArg::Molecule => {
            let (dim, q) = resolve_size(&cmd.size, true)?;
            let record = derive_molecule(molecule_params(&cmd.molecule)?)?;
            let pair = molecule_pair(&record, kind, dim)?;
            let label = format!("molecule {}", record.name());
            (build_molecule_hamiltonian(record.lambda(), &pair)?, q.expect("checked"), label)
        }
        ModelArg::Triatomic => {
            let (spec, pair, q) = triatomic_parts(&cmd.triatomic, kind)?;
            (build_triatomic_hamiltonian(&spec, &pair)?, q, format!("triatomic {}", spec.form))
        }
    };
    let expansion = pauli_decompose(&h, qubits, cmd.out.threshold)?;
    let text = expansion.to_text();
    match &cmd.out.output {
        Some(path) => fs::write(path, &text).map_err(|e| fail(format!("cannot write {}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    writeln!(out, "{label}: {} terms (threshold {:e})", expansion.len(), cmd.out.threshold)?;
    if cmd.verify {
        let stored = match &cmd.out.output {
            Some(path) => fs::read_to_string(path)?,
            None => text,
        };
        let back = pauli_reconstruct(&PauliExpansion::from_text(&stored)?);
        let err = back.as_matrix().try_sub(h.as_matrix())?.frobenius_norm();
        writeln!(out, "verify: reconstruction Frobenius error {err:.3e}")?;
    }
    Ok(())
}
