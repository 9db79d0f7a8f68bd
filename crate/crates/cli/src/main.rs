//! `caaa`: continuum AAA from the command line.
//!
//! ```text
//! caaa aaax --fn "abs(x)"
//! caaa aaaz --catalog sqrt-branch --mero 0 --plot --out runs/sqrt
//! caaa aaai --fn "1/(z+1)" --degree 20 --lawson 20
//! ```
//!
//! Each run writes `model.json`, `history.csv` and `error_curve.csv` (and
//! with `--plot`, `convergence.svg` and `error.svg`) into `--out`.

mod output;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use caaa::funcspec::{lookup, Func};
use caaa::{error_curve_csv, history_csv, run, AaaOptions, Complex64, Domain, DomainKind, FunctionSpec, Model, Status};
use clap::{ArgGroup, Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "caaa", version, about = "Continuum AAA rational approximation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Approximate on the unit interval [-1, 1].
    Aaax(RunArgs),
    /// Approximate on the unit circle (analytic in the disk unless --mero 1).
    Aaaz(RunArgs),
    /// Approximate on the imaginary axis (analytic in the right half-plane
    /// unless --mero 1).
    Aaai(RunArgs),
    /// List the catalog of named test functions.
    Catalog,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["expr", "catalog"])))]
struct RunArgs {
    /// Function of x (or z), e.g. "exp(x)" or "tan(z^4)".
    #[arg(long = "fn", value_name = "EXPR")]
    expr: Option<String>,

    /// Named catalog function; `caaa catalog` lists them.
    #[arg(long, value_name = "NAME")]
    catalog: Option<String>,

    /// Maximum degree.
    #[arg(long, default_value_t = 150)]
    degree: usize,

    /// AAA-Lawson steps after the AAA phase.
    #[arg(long, default_value_t = 0)]
    lawson: usize,

    /// Points per gap of the Lawson working grid.
    #[arg(long, default_value_t = 3)]
    lawson_density: usize,

    /// Relative convergence tolerance.
    #[arg(long, default_value_t = 1e-13)]
    tol: f64,

    /// Accept poles inside the disk / right half-plane. Defaults to the
    /// catalog entry's setting, otherwise 0.
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    mero: Option<u8>,

    /// Output directory (created if missing).
    #[arg(long, default_value = ".")]
    out: PathBuf,

    /// Also write convergence.svg and error.svg.
    #[arg(long)]
    plot: bool,

    /// Points per gap of the fine check grid and of error_curve.csv.
    #[arg(long, default_value_t = 30)]
    fine: usize,
}

fn domain_for(kind: DomainKind, mero: bool) -> Domain {
    match kind {
        DomainKind::UnitInterval => Domain::interval(),
        DomainKind::UnitCircle => Domain::circle(mero),
        DomainKind::ImaginaryAxis => Domain::imaginary_axis(mero),
    }
}

fn exit_code(status: Status) -> u8 {
    match status {
        Status::Converged => 0,
        Status::MaxDegreeReached => 2,
        Status::BadPoleFallback => 3,
    }
}

fn execute(kind: DomainKind, args: RunArgs) -> Result<Status> {
    let (spec, catalog_mero) = match (&args.expr, &args.catalog) {
        (Some(text), None) => {
            // a bare function name such as `exp` stands for `exp(x)`
            let text = match Func::from_name(text.trim()) {
                Some(f) if f.arity() == 1 => format!("{}(x)", f.name()),
                _ => text.clone(),
            };
            (FunctionSpec::from_text(&text).with_context(|| format!("cannot parse {text:?}"))?, false)
        }
        (None, Some(name)) => {
            let entry = lookup(name).with_context(|| format!("no catalog entry named {name:?}"))?;
            if entry.kind != kind {
                bail!("catalog entry {name:?} is defined on the {}", entry.kind.name());
            }
            (FunctionSpec::from_catalog(name).expect("entry exists"), entry.mero)
        }
        _ => unreachable!("clap enforces exactly one function source"),
    };
    if kind == DomainKind::UnitInterval && args.mero == Some(1) {
        bail!("--mero only applies to aaaz and aaai");
    }
    let mero = args.mero.map_or(catalog_mero, |m| m == 1);
    let domain = domain_for(kind, mero);
    let opts = AaaOptions {
        tol: args.tol,
        max_degree: args.degree,
        lawson_steps: args.lawson,
        fine_grid_density: args.fine,
        lawson_density: args.lawson_density,
    };

    let f = |z: Complex64| spec.eval(z);
    let result = run(&f, domain, &opts)?;
    let curve = result.error_curve(&f, args.fine)?;

    // everything is rendered before the first write, so a failure leaves no
    // partial output behind
    let model = Model::from_result(&result);
    let mut files = vec![
        ("model.json", model.to_json()?),
        ("history.csv", history_csv(&result.history)),
        ("error_curve.csv", error_curve_csv(&curve)),
    ];
    if args.plot {
        files.push(("convergence.svg", plot::convergence(&result, &spec.label())));
        files.push(("error.svg", plot::error_curve(&curve, &result.domain)));
    }
    std::fs::create_dir_all(&args.out).with_context(|| format!("cannot create {}", args.out.display()))?;
    for (name, contents) in &files {
        output::write_atomic(&args.out.join(name), contents.as_bytes())?;
    }

    println!(
        "{}: {} on {}, degree {}, grid error {:.3e}, fine error {:.3e}, {} evaluations",
        spec.label(),
        result.status.name(),
        domain.kind.name(),
        result.degree(),
        result.grid_error,
        result.fine_error,
        result.feval_count
    );
    if let Some(l) = &model.lawson {
        println!(
            "lawson: {} after {} steps, error {:.3e} -> {:.3e}",
            l.status, l.steps_taken, l.initial_relative_error, l.best_relative_error
        );
    }
    Ok(result.status)
}

fn list_catalog() {
    for e in caaa::funcspec::catalog() {
        let mero = if e.mero { " mero" } else { "" };
        println!("{:<16} {:<15} {:<45} {}", e.name, format!("{}{mero}", e.kind.name()), e.expr, e.summary);
    }
}

fn main() -> ExitCode {
    // usage errors exit with 1: clap's default of 2 is taken by
    // MaxDegreeReached
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let (kind, args) = match cli.command {
        Command::Aaax(a) => (DomainKind::UnitInterval, a),
        Command::Aaaz(a) => (DomainKind::UnitCircle, a),
        Command::Aaai(a) => (DomainKind::ImaginaryAxis, a),
        Command::Catalog => {
            list_catalog();
            return ExitCode::SUCCESS;
        }
    };
    match execute(kind, args) {
        Ok(status) => ExitCode::from(exit_code(status)),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
