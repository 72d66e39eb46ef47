//! `poncelet`: families, sweeps, claim verification and figures.

mod literal;
mod output;
mod render;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use poncelet_core::centers::CenterIndex;
use poncelet_core::experiments::{self as exp, PropositionReport, Status, Tolerances};
use poncelet_core::geom::{CPoint, DEGENERACY_TOL};
use poncelet_core::poncelet::{
    contains_equilateral, equilateral_lambda, equilateral_vertices, lemma_defect,
    stationary_x110_prediction, triangle_at, FamilyConfig, LambdaParam,
};
use serde_json::json;

use literal::parse_complex;

const TOL_ENV: &str = "PONCELET_TOL";

#[derive(Parser)]
#[command(
    name = "poncelet",
    version,
    about = "Circle-inscribed Poncelet triangle families"
)]
struct Cli {
    /// Kernel degeneracy tolerance.
    #[arg(long, global = true, default_value_t = DEGENERACY_TOL)]
    kernel_tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Foci {
    /// First caustic focus, e.g. 0.5 or 0.2+0.6i.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    f: Option<CPoint>,
    /// Second caustic focus.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    g: Option<CPoint>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print one member of a family and the family's equilateral data.
    Family {
        #[command(flatten)]
        foci: Foci,
        /// Family parameter on the unit circle.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "1")]
        lambda: CPoint,
        #[arg(long)]
        json: bool,
    },
    /// Sample the family uniformly in λ-phase and evaluate triangle centers.
    Sweep {
        #[command(flatten)]
        foci: Foci,
        #[arg(short, long, default_value_t = 360)]
        n: usize,
        /// Comma-separated center indices, e.g. X110,X3233.
        #[arg(long, value_delimiter = ',', default_value = "X110")]
        centers: Vec<CenterIndex>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check one claim (or `all`) and print a JSON report.
    Verify {
        /// x110-stationary, x3233-circle, double-inv-1, l35, l35-vertex,
        /// feuerbach, x65-circle, polar-equilateral, tangential-envelope or all.
        id: String,
        #[command(flatten)]
        foci: Foci,
        /// Seed for generated triangles and corpora.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long, default_value_t = exp::SWEEP_SAMPLES)]
        n: usize,
        /// Ω samples on a line.
        #[arg(short, long, default_value_t = exp::LINE_SAMPLES)]
        m: usize,
        /// Stationary point K for double-inv-1.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        k: Option<CPoint>,
        /// Equilateral vertex for double-inv-1.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a_eq: Option<CPoint>,
        /// Member of the --f/--g family used as the reference triangle.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "i")]
        lambda: CPoint,
        /// Caustic center for l35-vertex; defaults to the family's.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        omega: Option<CPoint>,
        #[arg(long, default_value_t = exp::OBSERVATION_CORPUS)]
        corpus: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write an SVG figure of one member and the family's loci.
    Render {
        #[command(flatten)]
        foci: Foci,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "i")]
        lambda: CPoint,
        #[arg(long)]
        svg: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

type CliResult = Result<ExitCode, Failure>;

fn tolerances(kernel_tol: f64) -> Result<Tolerances, Failure> {
    if !(kernel_tol > 0.0 && kernel_tol.is_finite()) {
        return Err(Failure::Usage(format!(
            "--kernel-tol must be positive, got {kernel_tol}"
        )));
    }
    let mut tols = Tolerances {
        degeneracy: kernel_tol,
        ..Tolerances::default()
    };
    if let Ok(raw) = std::env::var(TOL_ENV) {
        let tol: f64 = raw
            .trim()
            .parse()
            .ok()
            .filter(|t: &f64| *t > 0.0 && t.is_finite())
            .ok_or_else(|| {
                Failure::Usage(format!("{TOL_ENV} must be a positive number, got {raw:?}"))
            })?;
        tols = tols.with_claim_tolerance(tol);
    }
    Ok(tols)
}

fn config(foci: &Foci) -> Result<FamilyConfig, Failure> {
    match (foci.f, foci.g) {
        (None, None) => Ok(exp::reference_config()),
        (Some(f), Some(g)) => FamilyConfig::new(f, g).map_err(|e| Failure::Usage(e.to_string())),
        _ => Err(Failure::Usage("--f and --g must be given together".into())),
    }
}

fn lambda_param(z: CPoint) -> Result<LambdaParam, Failure> {
    LambdaParam::new(z).map_err(|e| Failure::Usage(format!("--lambda: {e}")))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn c(z: CPoint) -> String {
    format!("{:.12}{:+.12}i", z.re, z.im)
}

fn cmd_family(foci: &Foci, lambda: CPoint, as_json: bool, tols: &Tolerances) -> CliResult {
    let cfg = config(foci)?;
    let lam = lambda_param(lambda)?;
    let t = triangle_at(&cfg, lam);
    let caustic = cfg.caustic();
    let eq = contains_equilateral(&cfg, tols.lemma);
    let lam_o = equilateral_lambda(&cfg, tols.lemma).ok();
    let x110 = stationary_x110_prediction(&cfg, tols.lemma).ok();
    let eq_vertices = equilateral_vertices(&cfg, tols.lemma).ok();
    if as_json {
        let v = json!({
            "schema": output::SCHEMA,
            "f": output::point(cfg.f()),
            "g": output::point(cfg.g()),
            "lambda": output::point(lam.value()),
            "vertices": t.vertices().map(output::point),
            "caustic": {
                "center": output::point(caustic.center),
                "a": caustic.a,
                "b": caustic.b,
                "theta": caustic.theta,
            },
            "contains_equilateral": eq,
            "lemma_defect": lemma_defect(&cfg),
            "equilateral_lambda": lam_o.map(|l| output::point(l.value())),
            "equilateral_vertices": eq_vertices.map(|t| t.vertices().map(output::point)),
            "stationary_x110": x110.map(output::point),
        });
        emit(
            None,
            &format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("serializable")
            ),
        )?;
    } else {
        let mut s = format!(
            "f = {}\ng = {}\nlambda = {}\n",
            c(cfg.f()),
            c(cfg.g()),
            c(lam.value())
        );
        for (i, v) in t.vertices().iter().enumerate() {
            s += &format!("v{} = {}\n", i + 1, c(*v));
        }
        s += &format!(
            "caustic: center {}, a = {:.12}, b = {:.12}, theta = {:.12}\n",
            c(caustic.center),
            caustic.a,
            caustic.b,
            caustic.theta
        );
        s += &format!("equilateral member: {}\n", if eq { "yes" } else { "no" });
        if let Some(l) = lam_o {
            s += &format!("lambda_o = {}\n", c(l.value()));
        }
        if let Some(p) = x110 {
            s += &format!("stationary X110 = {}\n", c(p));
        }
        emit(None, &s)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(
    foci: &Foci,
    n: usize,
    centers: &[CenterIndex],
    format: Format,
    out: Option<&Path>,
    tols: &Tolerances,
) -> CliResult {
    let cfg = config(foci)?;
    let sw = exp::sweep(&cfg, n, centers, tols).map_err(|e| Failure::Usage(e.to_string()))?;
    let text = match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&output::sweep_json(&sw)).expect("serializable")
        ),
        Format::Csv => {
            let mut buf = Vec::new();
            output::write_sweep_csv(&sw, &mut buf).map_err(|e| Failure::Io(e.to_string()))?;
            String::from_utf8(buf).expect("csv output is utf-8")
        }
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn status_code(status: Status) -> ExitCode {
    match status {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(1),
        Status::Inconclusive => ExitCode::from(4),
    }
}

struct VerifyArgs<'a> {
    foci: &'a Foci,
    seed: Option<u64>,
    n: usize,
    m: usize,
    k: Option<CPoint>,
    a_eq: Option<CPoint>,
    lambda: CPoint,
    omega: Option<CPoint>,
    corpus: usize,
}

fn l35_inputs(a: &VerifyArgs) -> Result<(poncelet_core::geom::Triangle, CPoint), Failure> {
    if a.foci.f.is_some() || a.foci.g.is_some() {
        let cfg = config(a.foci)?;
        let t = triangle_at(&cfg, lambda_param(a.lambda)?);
        Ok((t, a.omega.unwrap_or((cfg.f() + cfg.g()) / 2.0)))
    } else {
        let (t, center) = exp::l35_case(a.seed);
        Ok((t, a.omega.unwrap_or(center)))
    }
}

fn run_verifier(id: &str, a: &VerifyArgs, tols: &Tolerances) -> Result<PropositionReport, Failure> {
    Ok(match id {
        exp::X110_STATIONARY => exp::verify_x110_stationary(&config(a.foci)?, a.n, tols),
        exp::X3233_CIRCLE => exp::verify_x3233_circle(&config(a.foci)?, a.n, tols),
        exp::DOUBLE_INV => {
            let (k, a_eq) = exp::double_inv_defaults();
            exp::verify_prop_double_inv(a.k.unwrap_or(k), a.a_eq.unwrap_or(a_eq), a.m, a.n, tols)
        }
        exp::L35 => {
            let (t, _) = l35_inputs(a)?;
            exp::verify_prop_l35(&t, a.m, a.n, tols)
        }
        exp::L35_VERTEX => {
            let (t, omega) = l35_inputs(a)?;
            exp::verify_prop_l35_vertex(&t, omega, tols)
        }
        exp::FEUERBACH => exp::verify_feuerbach_stationary(&config(a.foci)?, a.n, tols),
        exp::X65_CIRCLE => exp::verify_x65_circle(&config(a.foci)?, a.n, tols),
        exp::POLAR_EQUILATERAL => {
            let corpus = exp::corpus::observation_corpus(a.seed.unwrap_or(0), a.corpus);
            exp::verify_observation_polar_equilateral(&corpus, tols)
        }
        exp::TANGENTIAL_ENVELOPE => exp::verify_tangential_envelope(&config(a.foci)?, a.n, tols),
        other => {
            return Err(Failure::Usage(format!(
                "unknown verifier {other:?}; expected one of {} or all",
                exp::VERIFIER_IDS.join(", ")
            )))
        }
    })
}

fn cmd_verify(id: &str, a: &VerifyArgs, out: Option<&Path>, tols: &Tolerances) -> CliResult {
    if a.n < exp::MIN_SWEEP_SAMPLES {
        return Err(Failure::Usage(format!(
            "-n must be at least {}",
            exp::MIN_SWEEP_SAMPLES
        )));
    }
    let (value, status) = if id == "all" {
        let reports: Vec<PropositionReport> = exp::VERIFIER_IDS
            .iter()
            .map(|id| run_verifier(id, a, tols))
            .collect::<Result<_, _>>()?;
        (
            output::all_json(&reports, tols),
            output::aggregate(&reports),
        )
    } else {
        let r = run_verifier(id, a, tols)?;
        (output::report_json(&r), r.status)
    };
    emit(
        out,
        &format!(
            "{}\n",
            serde_json::to_string_pretty(&value).expect("serializable")
        ),
    )?;
    Ok(status_code(status))
}

fn cmd_render(foci: &Foci, lambda: CPoint, svg: &Path, tols: &Tolerances) -> CliResult {
    let cfg = config(foci)?;
    let lam = lambda_param(lambda)?;
    emit(Some(svg), &render::render_svg(&cfg, lam, tols))?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CliResult {
    let tols = tolerances(cli.kernel_tol)?;
    match &cli.command {
        Command::Family { foci, lambda, json } => cmd_family(foci, *lambda, *json, &tols),
        Command::Sweep {
            foci,
            n,
            centers,
            format,
            out,
        } => cmd_sweep(foci, *n, centers, *format, out.as_deref(), &tols),
        Command::Verify {
            id,
            foci,
            seed,
            n,
            m,
            k,
            a_eq,
            lambda,
            omega,
            corpus,
            out,
        } => {
            let args = VerifyArgs {
                foci,
                seed: *seed,
                n: *n,
                m: *m,
                k: *k,
                a_eq: *a_eq,
                lambda: *lambda,
                omega: *omega,
                corpus: *corpus,
            };
            cmd_verify(id, &args, out.as_deref(), &tols)
        }
        Command::Render { foci, lambda, svg } => cmd_render(foci, *lambda, svg, &tols),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            let (Failure::Usage(msg) | Failure::Io(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
