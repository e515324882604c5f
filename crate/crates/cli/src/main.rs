//! Batch front-end: ingest algebra/cocycle/fixture JSON, dispatch one
//! operation, emit a JSON report on stdout.
//!
//! Exit codes: 0 = success/pass, 2 = a verification reported failure,
//! 1 = usage or input error. Reports are deterministic for fixed inputs and
//! seed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use liesym_core::algebra::Covector;
use liesym_core::extension::affine_action;
use liesym_core::fixtures::{
    extended_comoment_check, moment_equivariance_check, symplectomorphism_check,
};
use liesym_core::io;
use liesym_core::orbits::{affine_stabilizer, correspondence_check, stabilizer, OrbitReport};
use liesym_core::presymplectic::{neeb_verify, LeftInvariantTwoForm};
use liesym_core::report::MaxTracker;
use liesym_core::{
    sampling, CentralExtensionF64, GroupWordF64, LieAlgebraF64, MatrixRepF64, PhaseSpaceFixtureF64,
    SymplecticCocycleF64, TolerancesF64, TwoCochainF64,
};

#[derive(Parser)]
#[command(
    name = "liesym",
    version,
    about = "Lie algebra cocycles, central extensions, and coadjoint orbits from structure constants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Lie algebra JSON document.
    #[arg(long)]
    algebra: Option<PathBuf>,
    /// Two-cochain JSON document.
    #[arg(long)]
    cocycle: Option<PathBuf>,
    /// Phase-space fixture JSON document.
    #[arg(long)]
    fixture: Option<PathBuf>,
    /// Matrix representation JSON document.
    #[arg(long)]
    rep: Option<PathBuf>,
    /// Group word JSON document.
    #[arg(long)]
    word: Option<PathBuf>,
    /// Covector coordinates "x1,...,xn".
    #[arg(long)]
    alpha: Option<String>,
    /// Sample count for verification loops.
    #[arg(long)]
    samples: Option<usize>,
    /// Finite-difference step.
    #[arg(long)]
    step: Option<f64>,
    /// PRNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override for the verification tolerance.
    #[arg(long = "tol-verify")]
    tol_verify: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the provided inputs against their invariants.
    Check(CommonOpts),
    /// Second-cohomology dimensions and representatives.
    H2(CommonOpts),
    /// Emit the one-dimensional central extension as an algebra document.
    Extend(CommonOpts),
    /// Evaluate the group cocycle on a word and verify its identity.
    Theta(CommonOpts),
    /// Coadjoint stabilizer and orbit data at a dual point.
    Orbit(CommonOpts),
    /// Affine-action stabilizer and orbit data at a dual point.
    #[command(name = "affine-orbit")]
    AffineOrbit(CommonOpts),
    /// Finite-difference certificate for the integrability criterion.
    Neeb(CommonOpts),
    /// Evaluate the cocycle on a declared identity word of a represented group.
    Holonomy(CommonOpts),
    /// Run the full moment-map pipeline on a phase-space fixture.
    Fixture(CommonOpts),
    /// Check the affine-orbit vs extended-coadjoint-orbit correspondence.
    Correspond(CommonOpts),
}

#[derive(Serialize)]
struct Envelope {
    command: &'static str,
    inputs: BTreeMap<String, Value>,
    seed: u64,
    tolerances: BTreeMap<String, f64>,
    result: Value,
}

struct Ctx {
    opts: CommonOpts,
    tols: TolerancesF64,
    inputs: BTreeMap<String, Value>,
}

impl Ctx {
    fn new(opts: CommonOpts) -> Result<Self> {
        let mut tols = TolerancesF64::default();
        if let Some(tv) = opts.tol_verify {
            if tv <= 0.0 {
                bail!("--tol-verify must be positive, got {}", tv);
            }
            tols.verify = tv;
        }
        if let Some(s) = opts.samples {
            if s < 1 {
                bail!("--samples must be at least 1");
            }
        }
        if let Some(st) = opts.step {
            if st <= 0.0 {
                bail!("--step must be positive, got {}", st);
            }
        }
        Ok(Ctx {
            opts,
            tols,
            inputs: BTreeMap::new(),
        })
    }

    fn read(&mut self, key: &str, path: &Path) -> Result<String> {
        self.inputs
            .insert(key.to_string(), json!(path.display().to_string()));
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }

    fn algebra(&mut self) -> Result<LieAlgebraF64> {
        let path = self
            .opts
            .algebra
            .clone()
            .ok_or_else(|| anyhow!("--algebra is required for this command"))?;
        let text = self.read("algebra", &path)?;
        io::algebra_from_json(&text, self.tols.alg)
            .with_context(|| format!("validating {}", path.display()))
    }

    fn cochain(&mut self, dim: usize) -> Result<TwoCochainF64> {
        let path = self
            .opts
            .cocycle
            .clone()
            .ok_or_else(|| anyhow!("--cocycle is required for this command"))?;
        let text = self.read("cocycle", &path)?;
        io::cochain_from_json(&text, dim).with_context(|| format!("validating {}", path.display()))
    }

    fn word(&mut self, dim: usize) -> Result<GroupWordF64> {
        let path = self
            .opts
            .word
            .clone()
            .ok_or_else(|| anyhow!("--word is required for this command"))?;
        let text = self.read("word", &path)?;
        io::word_from_json(&text, dim).with_context(|| format!("validating {}", path.display()))
    }

    fn rep(&mut self, algebra: &LieAlgebraF64) -> Result<MatrixRepF64> {
        let path = self
            .opts
            .rep
            .clone()
            .ok_or_else(|| anyhow!("--rep is required for this command"))?;
        let text = self.read("rep", &path)?;
        io::rep_from_json(&text, algebra, self.tols.alg)
            .with_context(|| format!("validating {}", path.display()))
    }

    fn fixture(&mut self) -> Result<PhaseSpaceFixtureF64> {
        let path = self
            .opts
            .fixture
            .clone()
            .ok_or_else(|| anyhow!("--fixture is required for this command"))?;
        let text = self.read("fixture", &path)?;
        io::fixture_from_json(&text, &self.tols)
            .with_context(|| format!("validating {}", path.display()))
    }

    fn alpha(&mut self, dim: usize) -> Result<Covector<f64>> {
        let raw = self
            .opts
            .alpha
            .clone()
            .ok_or_else(|| anyhow!("--alpha is required for this command"))?;
        self.inputs.insert("alpha".into(), json!(raw.clone()));
        let coords: Vec<f64> = raw
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<f64>()
                    .with_context(|| format!("--alpha component {:?} is not a number", c))
            })
            .collect::<Result<_>>()?;
        if coords.len() != dim {
            bail!(
                "--alpha has {} components, the algebra has dimension {}",
                coords.len(),
                dim
            );
        }
        Ok(Covector::new(coords))
    }

    fn samples(&mut self, default: usize) -> usize {
        let s = self.opts.samples.unwrap_or(default);
        self.inputs.insert("samples".into(), json!(s));
        s
    }

    fn step(&mut self, default: f64) -> f64 {
        let s = self.opts.step.unwrap_or(default);
        self.inputs.insert("step".into(), json!(s));
        s
    }

    fn cocycle(&mut self, algebra: &LieAlgebraF64) -> Result<SymplecticCocycleF64> {
        let c = self.cochain(algebra.dim())?;
        SymplecticCocycleF64::from_ce_cocycle(algebra.clone(), c, self.tols.verify)
            .context("the supplied cochain is not a cocycle")
    }
}

fn to_value<S: Serialize>(s: &S) -> Value {
    serde_json::to_value(s).expect("report types serialize")
}

fn orbit_to_value(rep: &OrbitReport<f64>) -> Value {
    json!({
        "alpha": rep.alpha.coords.iter().copied().collect::<Vec<f64>>(),
        "stabilizer_basis": rep
            .stabilizer_basis
            .iter()
            .map(|v| v.coords.iter().copied().collect::<Vec<f64>>())
            .collect::<Vec<_>>(),
        "orbit_dim": rep.orbit_dim,
        "form_rank": rep.form_rank,
        "singular_values": rep.singular_values,
        "warnings": rep.warnings,
    })
}

fn run_check(ctx: &mut Ctx) -> Result<(Value, bool)> {
    let mut result = BTreeMap::<String, Value>::new();
    let mut algebra: Option<LieAlgebraF64> = None;
    if ctx.opts.algebra.is_some() {
        let alg = ctx.algebra()?;
        result.insert(
            "algebra".into(),
            json!({
                "valid": true,
                "name": alg.name(),
                "dim": alg.dim(),
                "jacobi_residual": alg.jacobi_residual(),
            }),
        );
        algebra = Some(alg);
    }
    if ctx.opts.cocycle.is_some() {
        let alg = algebra
            .as_ref()
            .ok_or_else(|| anyhow!("--cocycle validation needs --algebra"))?;
        let c = ctx.cochain(alg.dim())?;
        let residual = liesym_core::cohomology::cocycle_residual(alg, &c)?;
        result.insert(
            "cocycle".into(),
            json!({
                "valid": true,
                "ce_residual": residual,
                "is_cocycle": residual <= ctx.tols.verify,
            }),
        );
    }
    if ctx.opts.word.is_some() {
        let alg = algebra
            .as_ref()
            .ok_or_else(|| anyhow!("--word validation needs --algebra"))?;
        let w = ctx.word(alg.dim())?;
        result.insert("word".into(), json!({"valid": true, "letters": w.len()}));
    }
    if ctx.opts.rep.is_some() {
        let alg = algebra
            .as_ref()
            .ok_or_else(|| anyhow!("--rep validation needs --algebra"))?;
        let rep = ctx.rep(alg)?;
        result.insert(
            "rep".into(),
            json!({"valid": true, "dim_rep": rep.dim_rep()}),
        );
    }
    if ctx.opts.fixture.is_some() {
        let fx = ctx.fixture()?;
        result.insert(
            "fixture".into(),
            json!({
                "valid": true,
                "name": fx.name(),
                "phase_dim": fx.phase_dim(),
                "algebra_dim": fx.algebra().dim(),
            }),
        );
    }
    if result.is_empty() {
        bail!("check needs at least one input (--algebra, --fixture, ...)");
    }
    Ok((to_value(&result), true))
}

fn run_h2(ctx: &mut Ctx) -> Result<(Value, bool)> {
    let alg = ctx.algebra()?;
    let rep = liesym_core::h2_report(&alg, ctx.tols.rank);
    let basis_docs = |basis: &[TwoCochainF64]| -> Vec<Value> {
        basis
            .iter()
            .map(|c| to_value(&io::cochain_to_doc(c)))
            .collect()
    };
    let result = json!({
        "dim_Z2": rep.dim_z2,
        "dim_B2": rep.dim_b2,
        "dim_H2": rep.dim_h2,
        "cocycle_basis": basis_docs(&rep.cocycle_basis),
        "coboundary_basis": basis_docs(&rep.coboundary_basis),
    });
    Ok((result, true))
}

fn run_extend(ctx: &mut Ctx) -> Result<(Value, bool)> {
    let alg = ctx.algebra()?;
    let c = ctx.cochain(alg.dim())?;
    let ext = CentralExtensionF64::new(alg, c, &ctx.tols)?;
    let doc = io::algebra_to_doc(ext.extended());
    Ok((json!({ "algebra": to_value(&doc) }), true))
}

fn run_theta(ctx: &mut Ctx) -> Result<(Value, bool)> {
    let alg = ctx.algebra()?;
    let s = ctx.cocycle(&alg)?;
    let w = ctx.word(alg.dim())?;
    let samples = ctx.samples(100);
    let theta = s.eval_word(&w)?;
    let mut rng = sampling::seeded(ctx.opts.seed);
    let identity = s.verify_cocycle_identity(samples, &mut rng, ctx.tols.verify)?;
    let pass = identity.pass;
    let result = json!({
        "theta": theta.coords.iter().copied().collect::<Vec<f64>>(),
        "cocycle_identity": to_value(&identity),
    });
    Ok((result, pass))
}

fn run_orbit(ctx: &mut Ctx) -> Result<(Value, bool)> {
    let alg = ctx.algebra()?;
    let alpha = ctx.alpha(alg.dim())?;
    let rep = stabilizer(&alg, &alpha, ctx.tols.rank)?;
    Ok((orbit_to_value(&rep), true))
}

fn run_affine_orbit(ctx: &mut Ctx) -> Result<(Value, bool)> {
    let alg = ctx.algebra()?;
    let c = ctx.cochain(alg.dim())?;
    let alpha = ctx.alpha(alg.dim())?;
    let rep = affine_stabilizer(&alg, &c, &alpha, ctx.tols.rank)?;
    Ok((orbit_to_value(&rep), true))
}

fn run_neeb(ctx: &mut Ctx) -> Result<(Value, bool)> {
    let alg = ctx.algebra()?;
    let s = ctx.cocycle(&alg)?;
    let form = LeftInvariantTwoForm::new(alg, s.dtheta().clone(), ctx.tols.verify)?;
    let samples = ctx.samples(200);
    let step = ctx.step(1e-4);
    let mut rng = sampling::seeded(ctx.opts.seed);
    let report = neeb_verify(&form, &s, samples, step, &mut rng, &ctx.tols)?;
    let pass = report.pass;
    Ok((to_value(&report), pass))
}

fn run_holonomy(ctx: &mut Ctx) -> Result<(Value, bool)> {
    let alg = ctx.algebra()?;
    let s = ctx.cocycle(&alg)?;
    let rep = ctx.rep(&alg)?;
    let w = ctx.word(alg.dim())?;
    let defect = s.holonomy_defect(&rep, &w, ctx.tols.verify)?;
    let norm = defect.norm();
    let result = json!({
        "defect": defect.coords.iter().copied().collect::<Vec<f64>>(),
        "norm": norm,
        "descends": norm <= ctx.tols.verify,
    });
    Ok((result, true))
}

fn run_fixture(ctx: &mut Ctx) -> Result<(Value, bool)> {
    let fx = ctx.fixture()?;
    let samples = ctx.samples(100);
    let mut rng = sampling::seeded(ctx.opts.seed);
    let probes: Vec<_> = (0..10)
        .map(|_| sampling::point_in_cube::<f64, _>(&mut rng, fx.phase_dim()))
        .collect();

    let c = fx.cocycle_matrix(&probes, &ctx.tols)?;
    let ext = CentralExtensionF64::new(fx.algebra().clone(), c.clone(), &ctx.tols)?;
    let s =
        SymplecticCocycleF64::from_ce_cocycle(fx.algebra().clone(), c.clone(), ctx.tols.verify)?;

    // Probe independence and the fixture cocycle entries.
    let n = fx.algebra().dim();
    let mut probe_dev = MaxTracker::<f64>::new();
    let mut fd_res = MaxTracker::<f64>::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (_, rep) = fx.cocycle_value(
                &fx.algebra().basis_vector(i),
                &fx.algebra().basis_vector(j),
                &probes,
                &ctx.tols,
            )?;
            probe_dev.update(rep.max_deviation);
            fd_res.update(rep.fd_residual.unwrap_or(0.0));
        }
    }

    // Word-level consistency of the two theta routes.
    let mut theta_worst = MaxTracker::<f64>::new();
    for _ in 0..samples {
        let w = sampling::word::<f64, _>(&mut rng, n, 3);
        let (from_fixture, _) = fx.theta(&w, &probes, ctx.tols.verify)?;
        let from_cocycle = s.eval_word(&w)?;
        theta_worst.update((from_fixture.coords - from_cocycle.coords).amax());
    }
    let theta_report =
        liesym_core::VerificationReport::new(theta_worst.value(), ctx.tols.verify, samples);

    let comoment = extended_comoment_check(&fx, &ext, samples, &mut rng, &ctx.tols)?;
    let equivariance = moment_equivariance_check(&fx, &ext, &s, samples, &mut rng, &ctx.tols)?;
    let form = symplectomorphism_check(&fx, &ext, samples, &mut rng, &ctx.tols)?;

    let pass = theta_report.pass
        && comoment.pass
        && equivariance.pass
        && form.pass
        && probe_dev.value() <= ctx.tols.verify
        && fd_res.value() <= ctx.tols.fd;
    let result = json!({
        "name": fx.name(),
        "phase_dim": fx.phase_dim(),
        "cocycle": to_value(&io::cochain_to_doc(&c)),
        "probe_deviation": probe_dev.value(),
        "cocycle_fd_residual": fd_res.value(),
        "theta_vs_integrated": to_value(&theta_report),
        "comoment_extension": to_value(&comoment),
        "moment_equivariance": to_value(&equivariance),
        "symplectomorphism": to_value(&form),
    });
    Ok((result, pass))
}

fn run_correspond(ctx: &mut Ctx) -> Result<(Value, bool)> {
    let alg = ctx.algebra()?;
    let s = ctx.cocycle(&alg)?;
    let ext = CentralExtensionF64::new(alg.clone(), s.dtheta().clone(), &ctx.tols)?;
    let alpha = ctx.alpha(alg.dim())?;
    let samples = ctx.samples(100);
    let mut rng = sampling::seeded(ctx.opts.seed);
    let report = correspondence_check(&ext, &s, &alpha, samples, &mut rng, &ctx.tols)?;
    // Spot value of the affine action at the supplied point, as a
    // convenience output.
    let moved = affine_action(&s, &GroupWordF64::identity(), &alpha)?;
    let pass = report.pass;
    let result = json!({
        "clauses": to_value(&report.clauses),
        "samples": report.samples,
        "pass": report.pass,
        "alpha": moved.coords.iter().copied().collect::<Vec<f64>>(),
    });
    Ok((result, pass))
}

fn dispatch(cmd: Command) -> Result<(Envelope, bool)> {
    let (name, opts): (&'static str, CommonOpts) = match cmd {
        Command::Check(o) => ("check", o),
        Command::H2(o) => ("h2", o),
        Command::Extend(o) => ("extend", o),
        Command::Theta(o) => ("theta", o),
        Command::Orbit(o) => ("orbit", o),
        Command::AffineOrbit(o) => ("affine-orbit", o),
        Command::Neeb(o) => ("neeb", o),
        Command::Holonomy(o) => ("holonomy", o),
        Command::Fixture(o) => ("fixture", o),
        Command::Correspond(o) => ("correspond", o),
    };
    let mut ctx = Ctx::new(opts)?;
    let (result, pass) = match name {
        "check" => run_check(&mut ctx)?,
        "h2" => run_h2(&mut ctx)?,
        "extend" => run_extend(&mut ctx)?,
        "theta" => run_theta(&mut ctx)?,
        "orbit" => run_orbit(&mut ctx)?,
        "affine-orbit" => run_affine_orbit(&mut ctx)?,
        "neeb" => run_neeb(&mut ctx)?,
        "holonomy" => run_holonomy(&mut ctx)?,
        "fixture" => run_fixture(&mut ctx)?,
        "correspond" => run_correspond(&mut ctx)?,
        _ => unreachable!(),
    };
    let mut tolerances = BTreeMap::new();
    tolerances.insert("tol_alg".into(), ctx.tols.alg);
    tolerances.insert("tol_verify".into(), ctx.tols.verify);
    tolerances.insert("tol_rank".into(), ctx.tols.rank);
    tolerances.insert("tol_fd".into(), ctx.tols.fd);
    Ok((
        Envelope {
            command: name,
            inputs: ctx.inputs,
            seed: ctx.opts.seed,
            tolerances,
            result,
        },
        pass,
    ))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{}", e);
                return ExitCode::SUCCESS;
            }
            eprint!("{}", e);
            return ExitCode::from(1);
        }
    };
    match dispatch(cli.command) {
        Ok((envelope, pass)) => {
            let out = serde_json::to_string_pretty(&envelope).expect("report serializes");
            println!("{}", out);
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(1)
        }
    }
}
