//! `apml` — Mahler measures, triangulated hyperbolic volumes, and holonomy
//! polynomials from the command line.
//!
//! Every subcommand produces a run report (inputs, results, checks, wall
//! time); `--json` prints it as a single JSON document instead of text.
//! Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 a
//! numerical method did not converge, 4 a scale guard refused the problem.

mod report;
mod suites;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::exit;

use apml_core::charvar::{presentation_to_equations, CharvarError, GroupPresentation};
use apml_core::hyperbolic::{
    builtin_fig8, eliminate_h, residuals_mult, solve_shapes, volume, HolonomyPoint, HypError,
    Triangulation,
};
use apml_core::mahler::{
    mahler_bivariate_grid_threads, mahler_bivariate_sliced, mahler_integer_univariate,
    MahlerError, MahlerResult,
};
use apml_core::polycore::{
    boundary_slopes, fig8_a_polynomial, newton_polygon, parse_poly_auto, MultiPoly, PolyError,
};
use apml_core::Complex64;
use report::{fmt15, fmt_complex, ReportBuilder, RunReport};

#[derive(Parser)]
#[command(
    name = "apml",
    version,
    about = "Mahler measures, hyperbolic volumes, and holonomy polynomials"
)]
struct Cli {
    /// Print the run report as a single JSON document on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Univariate Jensen for one variable, sliced quadrature for two.
    Auto,
    Univariate,
    Sliced,
    Grid,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Smyth,
    Fig8,
    Charvar,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Mahler measure of an integer Laurent polynomial in one or two variables.
    Mahler {
        /// Polynomial text, e.g. "1 + x + y" or "x^2 - x - 1".
        poly: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Absolute tolerance for the slice quadrature.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Samples per axis for the grid method.
        #[arg(long, default_value_t = 512)]
        grid_n: usize,
        /// Worker threads for the grid method.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Shapes, residuals, and hyperbolic volume of a triangulation.
    Volume {
        /// Use the built-in figure-eight triangulation.
        #[arg(long, conflicts_with = "file")]
        fig8: bool,
        /// Triangulation JSON file.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Holonomy target "x_re,x_im,y_re,y_im"; default is the complete
        /// structure (1,0,1,0).
        #[arg(long)]
        target: Option<String>,
    },
    /// Eliminate the shape variables of a triangulation down to a single
    /// polynomial in the holonomies x and y.
    Eliminate {
        #[arg(long, conflicts_with = "file")]
        fig8: bool,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Report whether this polynomial divides the elimination output.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Newton-polygon vertices and boundary slopes of a two-variable
    /// polynomial.
    Slopes {
        /// Polynomial text (or use --fig8-a).
        poly: Option<String>,
        /// Use the built-in figure-eight A-polynomial.
        #[arg(long = "fig8-a", conflicts_with = "poly")]
        fig8_a: bool,
    },
    /// Defining equations of the SL(2) representation variety of a finitely
    /// presented group ("abAB" style: lowercase generators, uppercase
    /// inverses, relators comma-separated).
    Equations { presentation: String },
    /// Run a named verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Override the numeric tolerances of the suite.
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// Error carrying the process exit code it maps to.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<MahlerError> for CliError {
    fn from(e: MahlerError) -> Self {
        let code = match &e {
            MahlerError::QuadratureBudget { .. } | MahlerError::Numerics(_) => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<HypError> for CliError {
    fn from(e: HypError) -> Self {
        let code = match &e {
            HypError::ScaleGuard(_) => 4,
            HypError::Numerics(_) | HypError::BranchJump { .. } | HypError::EliminationFailed => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<CharvarError> for CliError {
    fn from(e: CharvarError) -> Self {
        let code = match &e {
            CharvarError::ScaleGuard(_) => 4,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli.command) {
        Ok(report) => {
            if json {
                report.print_json();
            } else {
                report.print_text();
            }
            exit(if report.all_pass() { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("apml: {}", e.message);
            exit(e.code);
        }
    }
}

fn run(command: Command) -> Result<RunReport, CliError> {
    match command {
        Command::Mahler {
            poly,
            method,
            tol,
            grid_n,
            threads,
        } => cmd_mahler(&poly, method, tol, grid_n, threads),
        Command::Volume { fig8, file, target } => cmd_volume(fig8, file, target),
        Command::Eliminate { fig8, file, expect } => cmd_eliminate(fig8, file, expect),
        Command::Slopes { poly, fig8_a } => cmd_slopes(poly, fig8_a),
        Command::Equations { presentation } => cmd_equations(&presentation),
        Command::Verify { suite, tol } => cmd_verify(suite, tol),
    }
}

fn effective_var_count(p: &MultiPoly) -> usize {
    (0..p.vars().len())
        .filter(|&i| p.terms().iter().any(|(e, _)| e[i] != 0))
        .count()
}

fn cmd_mahler(
    poly: &str,
    method: MethodArg,
    tol: f64,
    grid_n: usize,
    threads: usize,
) -> Result<RunReport, CliError> {
    let mut rb = ReportBuilder::new("mahler");
    rb.input("poly", poly);
    rb.input("tol", fmt15(tol));
    let p = parse_poly_auto(poly)?;
    if p.is_zero() {
        return Err(CliError::input("the zero polynomial has no Mahler measure"));
    }
    let nvars = effective_var_count(&p);
    let chosen = match method {
        MethodArg::Auto => {
            if nvars <= 1 {
                MethodArg::Univariate
            } else {
                MethodArg::Sliced
            }
        }
        m => m,
    };
    let result: MahlerResult = match chosen {
        MethodArg::Univariate => mahler_integer_univariate(&p)?,
        MethodArg::Sliced => mahler_bivariate_sliced(&p, tol)?,
        MethodArg::Grid => {
            rb.input("grid_n", grid_n.to_string());
            rb.input("threads", threads.to_string());
            mahler_bivariate_grid_threads(&p, grid_n, threads)?
        }
        MethodArg::Auto => unreachable!(),
    };
    rb.result("canonical_poly", p.to_string());
    rb.result_num("value", result.value);
    rb.result_num("error_estimate", result.error_estimate);
    rb.result("evaluations", result.evaluations.to_string());
    rb.result("method", result.method.name());
    if let Some(v) = &result.fixed_var {
        rb.result("fixed_var", v.clone());
    }
    if result.skipped_samples > 0 {
        rb.result("skipped_samples", result.skipped_samples.to_string());
    }
    Ok(rb.finish())
}

fn load_triangulation(
    fig8: bool,
    file: Option<PathBuf>,
    rb: &mut ReportBuilder,
) -> Result<Triangulation, CliError> {
    if fig8 {
        rb.input("triangulation", "builtin fig8");
        return Ok(builtin_fig8());
    }
    let path = file.ok_or_else(|| CliError::input("pass --fig8 or --file PATH"))?;
    rb.input("triangulation", path.display().to_string());
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(Triangulation::from_json_str(&text)?)
}

fn parse_target(text: &str) -> Result<HolonomyPoint, CliError> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::input(format!("bad --target: {e}")))?;
    if parts.len() != 4 {
        return Err(CliError::input(
            "--target needs four numbers: x_re,x_im,y_re,y_im",
        ));
    }
    Ok(HolonomyPoint::new(
        Complex64::new(parts[0], parts[1]),
        Complex64::new(parts[2], parts[3]),
    )?)
}

fn cmd_volume(
    fig8: bool,
    file: Option<PathBuf>,
    target: Option<String>,
) -> Result<RunReport, CliError> {
    let mut rb = ReportBuilder::new("volume");
    let t = load_triangulation(fig8, file, &mut rb)?;
    let target = match target {
        Some(text) => {
            rb.input("target", text.clone());
            parse_target(&text)?
        }
        None => HolonomyPoint::complete(),
    };
    let s = solve_shapes(&t, target, None)?;
    let worst = residuals_mult(&t, &s, Some(target))?
        .iter()
        .map(|r| r.norm())
        .fold(0.0, f64::max);
    rb.result("label", t.label.clone());
    rb.result("n", t.n.to_string());
    for (i, z) in s.z.iter().enumerate() {
        rb.result(&format!("shape_z{}", i + 1), fmt_complex(*z));
    }
    rb.result("geometric", s.geometric().to_string());
    rb.result_num("residual_norm", worst);
    rb.result_num("volume", volume(&s));
    Ok(rb.finish())
}

fn cmd_eliminate(
    fig8: bool,
    file: Option<PathBuf>,
    expect: Option<String>,
) -> Result<RunReport, CliError> {
    let mut rb = ReportBuilder::new("eliminate");
    let t = load_triangulation(fig8, file, &mut rb)?;
    let h = eliminate_h(&t)?;
    rb.result("polynomial", h.to_string());
    if let Some(text) = expect {
        rb.input("expect", text.clone());
        let e = parse_poly_auto(&text)?;
        let quotient = h.divides_exactly(&e);
        let divisible = quotient.is_some();
        rb.result(
            "quotient",
            quotient.map_or("none".to_string(), |q| q.to_string()),
        );
        rb.check_exact(
            "expected-divides-output",
            divisible,
            format!("divisible: {divisible}"),
            "divisible: true",
        );
    }
    Ok(rb.finish())
}

fn cmd_slopes(poly: Option<String>, fig8_a: bool) -> Result<RunReport, CliError> {
    let mut rb = ReportBuilder::new("slopes");
    let p = if fig8_a {
        rb.input("poly", "builtin fig8 A-polynomial");
        fig8_a_polynomial()
    } else {
        let text = poly.ok_or_else(|| CliError::input("pass a polynomial or --fig8-a"))?;
        rb.input("poly", text.clone());
        parse_poly_auto(&text)?
    };
    let np = newton_polygon(&p)?;
    let bs = boundary_slopes(&np);
    rb.result(
        "vertices",
        format!(
            "[{}]",
            np.vertices
                .iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    rb.result(
        "slopes",
        format!(
            "{{{}}}",
            bs.slopes
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    rb.result("horizontal_sides", bs.horizontal_sides.to_string());
    rb.result("vertical_sides", bs.vertical_sides.to_string());
    Ok(rb.finish())
}

fn cmd_equations(presentation: &str) -> Result<RunReport, CliError> {
    let mut rb = ReportBuilder::new("equations");
    rb.input("presentation", presentation);
    let pres = GroupPresentation::parse(presentation)?;
    let eqs = presentation_to_equations(&pres)?;
    let k = pres.relators.len();
    let n = pres.n_generators;
    rb.result("generators", n.to_string());
    rb.result("relators", k.to_string());
    for (i, e) in eqs.iter().enumerate() {
        rb.result(&format!("equation_{i:02}"), e.to_string());
    }
    rb.check_exact(
        "equation-count-4k-plus-n",
        eqs.len() == 4 * k + n,
        eqs.len().to_string(),
        (4 * k + n).to_string(),
    );
    Ok(rb.finish())
}

fn seed_from_env() -> u64 {
    std::env::var("APML_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(0x5eed_cafe)
}

fn cmd_verify(suite: SuiteArg, tol: Option<f64>) -> Result<RunReport, CliError> {
    let mut rb = ReportBuilder::new("verify");
    let seed = seed_from_env();
    match suite {
        SuiteArg::Smyth => {
            rb.input("suite", "smyth");
            suites::add_smyth(&mut rb, tol.unwrap_or(suites::DEFAULT_SMYTH_TOL))?;
        }
        SuiteArg::Fig8 => {
            rb.input("suite", "fig8");
            suites::add_fig8(&mut rb, tol.unwrap_or(suites::DEFAULT_FIG8_TOL))?;
        }
        SuiteArg::Charvar => {
            rb.input("suite", "charvar");
            suites::add_charvar(&mut rb, seed)?;
        }
        SuiteArg::All => {
            rb.input("suite", "all");
            suites::add_smyth(&mut rb, tol.unwrap_or(suites::DEFAULT_SMYTH_TOL))?;
            suites::add_fig8(&mut rb, tol.unwrap_or(suites::DEFAULT_FIG8_TOL))?;
            suites::add_charvar(&mut rb, seed)?;
        }
    }
    Ok(rb.finish())
}
