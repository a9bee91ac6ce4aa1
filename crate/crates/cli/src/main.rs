use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed, Zero};

use ydforge::algebroid::{
    build_algebroid, fit_generator_formula, phase_space_form, verify_algebroid, Algebroid, GeneratorMap,
    GeneratorValue, Presentation,
};
use ydforge::fixtures;
use ydforge::groebner::DEFAULT_DEGREE_CAP;
use ydforge::io::load_algebra;
use ydforge::numeric::numeric_differential_check;
use ydforge::oaut::OAut;
use ydforge::pairing::PairingContext;
use ydforge::poly::Poly;
use ydforge::report::{Check, Report};
use ydforge::yd::{kernel_coaction, lift_independence, sample_automorphisms, verify_yd_suite, Mode, YdOptions};
use ydforge::{lie_quotient, Error, LeibnizAlgebra, Scalar};

#[derive(Parser)]
#[command(
    name = "ydforge",
    version,
    about = "Exact verification of Leibniz Yetter-Drinfeld structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Algebra file (JSON) or built-in fixture name (A0, A1, A2, A3, A4, A2r).
    #[arg(long)]
    algebra: String,
    /// Write a JSON-lines report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Maximum S-pair degree during Buchberger's algorithm.
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: u32,
    /// Include wall-clock times in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresentationArg {
    Phi,
    Theta,
    PhaseSpace,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Leibniz identity of the chosen chirality.
    CheckLeibniz(Common),
    /// Compute the Lie quotient h / span[x, x].
    LieQuotient(Common),
    /// Print the reduced Groebner basis of the automorphism ideal.
    Groebner(Common),
    /// Evaluate the pairing <u, f>.
    Pairing {
        #[command(flatten)]
        common: Common,
        /// PBW element, e.g. "x1 x2 - 1/2 x1".
        #[arg(long)]
        u: String,
        /// Polynomial in G[i,j], Gbar[i,j].
        #[arg(long)]
        f: String,
    },
    /// Verify the Yetter-Drinfeld module algebra identities.
    YdVerify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Degree bound for test monomials in O(Aut(h)).
        #[arg(long, default_value_t = 2)]
        h_degree: u32,
        #[arg(long, default_value = "groebner")]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled automorphisms in eval mode.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Verify the Hopf algebroid structure maps.
    AlgebroidVerify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "theta")]
        presentation: PresentationArg,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Print all structure maps on generators.
    AlgebroidPrint {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        presentation: Option<PresentationArg>,
    },
    /// Compare d/dt G^i_j(exp(t ad x_k)) at 0 with C^i_{kj} numerically.
    NumericCheck {
        #[command(flatten)]
        common: Common,
        /// 1-based indices; all triples when omitted.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_DEGREE_CAP: u8 = 3;

fn fail(e: &Error) -> ExitCode {
    match e {
        Error::DegreeCapExceeded { cap, degree } => {
            eprintln!(
                "error: Groebner degree cap exceeded: S-pair of degree {degree} above cap {cap}; \
                 no verdict was reached (raise --degree-cap)"
            );
            ExitCode::from(EXIT_DEGREE_CAP)
        }
        Error::NotLeibniz { .. } | Error::VerificationFailed(_) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILED)
        }
        _ => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn load(spec: &str) -> Result<(String, LeibnizAlgebra), Error> {
    let path = Path::new(spec);
    if path.exists() {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| spec.to_string());
        return Ok((name, load_algebra(path)?));
    }
    match fixtures::by_name(spec) {
        Some(f) => Ok((f.name.to_string(), f.algebra)),
        None => Err(Error::Parse(format!("{spec}: no such file or built-in fixture"))),
    }
}

fn context(common: &Common) -> Result<PairingContext, Error> {
    let (name, alg) = load(&common.algebra)?;
    PairingContext::new(&name, &alg, common.degree_cap)
}

fn write_report(common: &Common, report: &mut Report, started: Instant) -> Result<(), Error> {
    if common.timings {
        let ms = started.elapsed().as_millis() as u64;
        for r in &mut report.records {
            r.wall_ms = Some(ms);
        }
    }
    if let Some(path) = &common.report {
        std::fs::write(path, report.to_json_lines()).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn summarize(report: &Report) {
    for r in &report.records {
        let status = if r.passed { "pass" } else { "FAIL" };
        match &r.counterexample {
            Some(c) => println!(
                "{status} {} [{}] {} instances; first counterexample: {c}",
                r.id, r.fixture, r.instances
            ),
            None => println!("{status} {} [{}] {} instances", r.id, r.fixture, r.instances),
        }
    }
    println!(
        "{} identities, {} instances, {}",
        report.records.len(),
        report.total_instances(),
        if report.passed() { "all passed" } else { "FAILED" }
    );
}

fn verdict(report: &Report) -> ExitCode {
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}

fn linear_combination(v: &[Scalar]) -> String {
    let terms: Vec<(String, &Scalar)> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (format!("x_{}", i + 1), c))
        .collect();
    let mut out = String::new();
    for (k, (x, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag} "));
        }
        out.push_str(x);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn check_leibniz(common: &Common) -> Result<ExitCode, Error> {
    let started = Instant::now();
    let (name, alg) = load(&common.algebra)?;
    let mut c = Check::new("leibniz.identity", "Leibniz identity of the stated chirality", &name);
    let violation = alg.leibniz_violation();
    c.record(violation.is_none(), || {
        let v = violation.as_ref().expect("violation");
        format!(
            "(i, j, p) = ({}, {}, {}), component k = {}",
            v.i + 1,
            v.j + 1,
            v.p + 1,
            v.k + 1
        )
    });
    match &violation {
        None => println!(
            "{name}: {} Leibniz identity holds (n = {})",
            alg.chirality().as_str(),
            alg.dim()
        ),
        Some(v) => println!(
            "{name}: {} Leibniz identity violated at (i, j, p) = ({}, {}, {}), component k = {}, residual {}",
            alg.chirality().as_str(),
            v.i + 1,
            v.j + 1,
            v.p + 1,
            v.k + 1,
            v.residual
        ),
    }
    let mut report = Report::new();
    report.push(c);
    write_report(common, &mut report, started)?;
    Ok(verdict(&report))
}

fn lie_quotient_cmd(common: &Common) -> Result<ExitCode, Error> {
    let (_, alg) = load(&common.algebra)?;
    alg.require_leibniz()?;
    let lq = lie_quotient(&alg)?;
    println!("m={}", lq.m);
    let kernel: Vec<String> = lq.kernel_basis.iter().map(|v| linear_combination(v)).collect();
    println!("kernel {{{}}}", kernel.join(", "));
    for a in 0..lq.m {
        let row: Vec<Scalar> = (0..alg.dim()).map(|i| lq.q[(a, i)].clone()).collect();
        println!("q: e_{} <- {}", a + 1, linear_combination(&row));
    }
    let mut brackets = Vec::new();
    for a in 0..lq.m {
        for b in 0..lq.m {
            let v = lq.c_lie.bracket_basis(a, b);
            if v.iter().any(|c| !c.is_zero()) {
                brackets.push(format!(
                    "[e_{}, e_{}] = {}",
                    a + 1,
                    b + 1,
                    linear_combination(&v).replace("x_", "e_")
                ));
            }
        }
    }
    if brackets.is_empty() {
        println!("h_Lie is abelian");
    } else {
        for b in brackets {
            println!("{b}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn groebner_cmd(common: &Common) -> Result<ExitCode, Error> {
    let (_, alg) = load(&common.algebra)?;
    let oaut = OAut::new(&alg, common.degree_cap)?;
    for g in oaut.groebner().gens() {
        println!("{g}");
    }
    Ok(ExitCode::SUCCESS)
}

fn pairing_cmd(common: &Common, u: &str, f: &str) -> Result<ExitCode, Error> {
    let ctx = context(common)?;
    let u = ctx.uea.parse(u)?;
    let f = Poly::parse(ctx.n(), f)?;
    println!("{}", ctx.pair(&u, &f));
    Ok(ExitCode::SUCCESS)
}

fn yd_verify(
    common: &Common,
    max_degree: usize,
    h_degree: u32,
    mode: Mode,
    seed: u64,
    samples: usize,
) -> Result<ExitCode, Error> {
    let started = Instant::now();
    let ctx = context(common)?;
    let opts = YdOptions {
        degcap: max_degree,
        h_degree,
        mode,
        samples: sample_automorphisms(&ctx.alg, samples, seed),
    };
    let mut report = verify_yd_suite(&ctx, &opts)?;
    report.extend(kernel_coaction(&ctx));
    report.extend(lift_independence(&ctx, max_degree.min(2), 3, seed));
    summarize(&report);
    write_report(common, &mut report, started)?;
    Ok(verdict(&report))
}

fn maps_for(p: Option<PresentationArg>) -> Vec<GeneratorMap> {
    GeneratorMap::ALL
        .into_iter()
        .filter(|m| {
            !matches!(
                (p, m.presentation()),
                (Some(PresentationArg::Phi), Some(Presentation::Theta))
                    | (Some(PresentationArg::Theta), Some(Presentation::Phi))
            )
        })
        .collect()
}

fn render(a: &Algebroid, map: GeneratorMap, phase: bool) -> Result<(String, bool), Error> {
    let fitted = fit_generator_formula(std::slice::from_ref(a), map)
        .ok_or_else(|| Error::VerificationFailed(format!("{map:?} does not fit the generator template")))?;
    let formula = if phase {
        phase_space_form(&fitted.formula)?
    } else {
        fitted.formula
    };
    Ok((formula.to_string(), fitted.determined))
}

fn algebroid_verify(common: &Common, presentation: PresentationArg, max_degree: usize) -> Result<ExitCode, Error> {
    let started = Instant::now();
    let ctx = context(common)?;
    let a = build_algebroid(&ctx)?;
    let mut report = verify_algebroid(&a, max_degree);
    let phase = matches!(presentation, PresentationArg::PhaseSpace);
    let mut c = Check::new(
        "algebroid.generator_formulas",
        "structure maps on generators fit the closed-form templates",
        &ctx.name,
    );
    let mut lines = Vec::new();
    for map in maps_for(Some(presentation)) {
        match render(&a, map, phase) {
            Ok((s, _)) => {
                c.record(true, String::new);
                lines.push(s);
            }
            Err(e) => c.record(false, || e.to_string()),
        }
    }
    report.push(c);
    summarize(&report);
    for l in lines {
        println!("{l}");
    }
    write_report(common, &mut report, started)?;
    Ok(verdict(&report))
}

fn algebroid_print(common: &Common, presentation: Option<PresentationArg>) -> Result<ExitCode, Error> {
    let ctx = context(common)?;
    let a = build_algebroid(&ctx)?;
    let phase = matches!(presentation, Some(PresentationArg::PhaseSpace));
    let mut undetermined = false;
    for map in maps_for(presentation) {
        let (s, determined) = render(&a, map, phase)?;
        undetermined |= !determined;
        println!("{s}");
        for j in 0..a.n() {
            let v = match a.generator_value(map, j) {
                GeneratorValue::Smash(s) => GeneratorValue::Smash(ctx.smash_normal_form(&s)),
                op => op,
            };
            println!("    j = {}: {v}", j + 1);
        }
    }
    if undetermined {
        println!("note: template coefficients not forced by this algebra alone are printed as 0");
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn numeric_check(
    common: &Common,
    k: Option<usize>,
    i: Option<usize>,
    j: Option<usize>,
    step: f64,
    tol: f64,
) -> Result<ExitCode, Error> {
    let started = Instant::now();
    let (name, alg) = load(&common.algebra)?;
    let n = alg.dim();
    let pick = |x: Option<usize>| -> Result<Vec<usize>, Error> {
        match x {
            None => Ok((0..n).collect()),
            Some(v) if v >= 1 && v <= n => Ok(vec![v - 1]),
            Some(v) => Err(Error::IndexOutOfRange { index: v, n }),
        }
    };
    let (ks, is, js) = (pick(k)?, pick(i)?, pick(j)?);
    let mut c = Check::new(
        "numeric.differential",
        "d/dt G^i_j(exp(t ad x_k)) at t = 0 equals C^i_{kj}",
        &name,
    );
    let mut worst: f64 = 0.0;
    for &kk in &ks {
        for &ii in &is {
            for &jj in &js {
                let r = numeric_differential_check(&alg, kk, ii, jj, step)?;
                worst = worst.max(r);
                println!("k={} i={} j={} residual {r:e}", kk + 1, ii + 1, jj + 1);
                c.record(r <= tol, || {
                    format!("k={}, i={}, j={}: residual {r:e}", kk + 1, ii + 1, jj + 1)
                });
            }
        }
    }
    println!("max residual {worst:e} (tolerance {tol:e})");
    let mut report = Report::new();
    report.push(c);
    write_report(common, &mut report, started)?;
    Ok(verdict(&report))
}

fn configure_threads() {
    if let Ok(v) = std::env::var("YDFORGE_THREADS") {
        if let Ok(t) = v.trim().parse::<usize>() {
            if t > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::CheckLeibniz(c) => check_leibniz(c),
        Command::LieQuotient(c) => lie_quotient_cmd(c),
        Command::Groebner(c) => groebner_cmd(c),
        Command::Pairing { common, u, f } => pairing_cmd(common, u, f),
        Command::YdVerify {
            common,
            max_degree,
            h_degree,
            mode,
            seed,
            samples,
        } => yd_verify(common, *max_degree, *h_degree, *mode, *seed, *samples),
        Command::AlgebroidVerify {
            common,
            presentation,
            max_degree,
        } => algebroid_verify(common, *presentation, *max_degree),
        Command::AlgebroidPrint { common, presentation } => algebroid_print(common, *presentation),
        Command::NumericCheck {
            common,
            k,
            i,
            j,
            step,
            tol,
        } => numeric_check(common, *k, *i, *j, *step, *tol),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    run(cli).unwrap_or_else(|e| fail(&e))
}
