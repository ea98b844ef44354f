//! Command-line front end: JSON in, JSON (or CSV) out.
//!
//! Exit status is 0 on success, 1 when the numerics fail (or a `verify`
//! suite exceeds its tolerance), and 2 for usage and validation errors.

mod csv;
mod io;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use multicentric::calculus::{chi_a, hermite_matrix_function, spectral_mapping_check, SpectrumData};
use multicentric::poly::{fiber, lagrange_basis, roots, Centers};
use multicentric::transform::{gelfand_eval, inverse_transform, PhiPoint, PhiSamples};
use multicentric::verify::{run_suite, SuiteParams, SuiteReport, SUITES};
use multicentric::{AlgebraContext, Complex64, Polynomial, SampleSet, ToleranceConfig, VectorFunction};
use serde::Serialize;
use serde_json::{json, Value};

use io::{load, load_complex, load_complex_list, load_matrix, FunctionDoc, InputError};

#[derive(Parser)]
#[command(name = "multicentric", version, about = "Multicentric calculus: polyproduct algebra, Gelfand transform and matrix functions")]
struct Cli {
    /// Equality tolerance (relative)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Critical-value tolerance on |p'| (relative)
    #[arg(long = "crit-tol", global = true)]
    crit_tol: Option<f64>,
    /// Root residual tolerance (relative)
    #[arg(long = "root-tol", global = true)]
    root_tol: Option<f64>,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Roots of a polynomial `{"coeffs": [...]}` (constant term first)
    Roots {
        #[arg(long, allow_negative_numbers = true)]
        poly: String,
    },
    /// Lagrange basis δ_j on the centers, optionally evaluated at points
    Basis {
        #[arg(long, allow_negative_numbers = true)]
        centers: String,
        #[arg(long, allow_negative_numbers = true)]
        z: Option<String>,
    },
    /// Solutions of p(z) = w
    Fiber {
        #[arg(long, allow_negative_numbers = true)]
        centers: String,
        #[arg(long, allow_negative_numbers = true)]
        w: String,
    },
    /// f̂(z) = Σ δ_j(z) f_j(p(z))
    Gelfand {
        #[arg(long, allow_negative_numbers = true)]
        f: String,
        #[arg(long, allow_negative_numbers = true)]
        z: String,
    },
    /// f(w) from values of φ on the fiber of w
    Invtransform {
        #[arg(long, allow_negative_numbers = true)]
        centers: String,
        #[arg(long, allow_negative_numbers = true)]
        phi: String,
    },
    /// Polyproduct f ⊛ g
    Polyprod {
        #[arg(long, allow_negative_numbers = true)]
        centers: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        f: String,
        #[arg(long, allow_negative_numbers = true)]
        g: String,
        /// Use the boxed-matrix form of the product
        #[arg(long)]
        boxed: bool,
    },
    /// Sup norm, operator norm and the norm-equivalence constant
    Norm {
        #[arg(long, allow_negative_numbers = true)]
        f: String,
    },
    /// Spectrum σ(f), spectral radius and ‖f^{2^k}‖^{1/2^k}
    Spectrum {
        #[arg(long, allow_negative_numbers = true)]
        f: String,
        #[arg(long, default_value_t = 10)]
        iterations: usize,
    },
    /// Coefficients Φ_k(w) of the characteristic function
    Charfunc {
        #[arg(long, allow_negative_numbers = true)]
        f: String,
    },
    /// Inverse of f, or the resolvent report at λ
    Invert {
        #[arg(long, allow_negative_numbers = true)]
        f: String,
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<String>,
    },
    /// Characters over w0
    Characters {
        #[arg(long, allow_negative_numbers = true)]
        centers: String,
        #[arg(long, allow_negative_numbers = true)]
        w0: String,
        /// Sample set M (defaults to {w0})
        #[arg(long, allow_negative_numbers = true)]
        samples: Option<String>,
    },
    /// Basis of the radical over w0
    Radical {
        #[arg(long, allow_negative_numbers = true)]
        centers: String,
        #[arg(long, allow_negative_numbers = true)]
        w0: String,
    },
    /// χ_A(f)
    Chi {
        #[arg(long, allow_negative_numbers = true)]
        matrix: String,
        #[arg(long, allow_negative_numbers = true)]
        spectrum: String,
        #[arg(long, allow_negative_numbers = true)]
        f: String,
    },
    /// Classical φ(A) from derivative data at the eigenvalues
    Hermite {
        #[arg(long, allow_negative_numbers = true)]
        matrix: String,
        #[arg(long, allow_negative_numbers = true)]
        spectrum: String,
        /// Per eigenvalue, the list φ(α), φ'(α), ..., φ^{(n)}(α)
        #[arg(long, allow_negative_numbers = true)]
        values: String,
    },
    /// σ(χ_A(f)) against f̂(σ(A))
    Specmap {
        #[arg(long, allow_negative_numbers = true)]
        matrix: String,
        #[arg(long, allow_negative_numbers = true)]
        spectrum: String,
        #[arg(long, allow_negative_numbers = true)]
        f: String,
    },
    /// Run a property suite (or `all`) and report
    Verify {
        suite: String,
        #[arg(long, allow_negative_numbers = true)]
        cases: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        d: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        samples: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<multicentric::Error> for Failure {
    fn from(e: multicentric::Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

struct Outcome {
    value: Value,
    ok: bool,
}

fn done<T: Serialize>(v: &T) -> Result<Outcome, Failure> {
    Ok(Outcome {
        value: serde_json::to_value(v).map_err(|e| Failure::Numerical(e.to_string()))?,
        ok: true,
    })
}

fn tolerances(cli: &Cli) -> Result<ToleranceConfig, Failure> {
    let d = ToleranceConfig::default();
    Ok(ToleranceConfig::new(
        cli.tol.unwrap_or(d.eq_tol),
        cli.crit_tol.unwrap_or(d.crit_tol),
        cli.root_tol.unwrap_or(d.root_tol),
    )?)
}

fn context(arg: &str, tol: &ToleranceConfig) -> Result<std::sync::Arc<AlgebraContext>, Failure> {
    let lambdas = load_complex_list("centers", arg)?;
    Ok(std::sync::Arc::new(AlgebraContext::from_lambdas(lambdas, *tol)?))
}

fn function(arg: &str, flag: &str, tol: &ToleranceConfig) -> Result<VectorFunction, Failure> {
    let doc: FunctionDoc = load(flag, arg)?;
    Ok(doc.into_function(tol)?)
}

fn function_json(f: &VectorFunction) -> Result<Outcome, Failure> {
    done(&FunctionDoc::from_function(f))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let tol = tolerances(cli)?;
    match &cli.command {
        Command::Roots { poly } => {
            let p: Polynomial = load("poly", poly)?;
            done(&json!({ "roots": roots(&p, &tol)? }))
        }
        Command::Basis { centers, z } => {
            let c = Centers::new(load_complex_list("centers", centers)?, &tol)?;
            let basis = lagrange_basis(&c);
            match z {
                Some(z) => {
                    let values: Vec<Vec<Complex64>> =
                        load_complex_list("z", z)?.iter().map(|&z| c.basis_values(z)).collect();
                    done(&json!({ "basis": basis, "values": values }))
                }
                None => done(&json!({ "basis": basis })),
            }
        }
        Command::Fiber { centers, w } => {
            let c = Centers::new(load_complex_list("centers", centers)?, &tol)?;
            done(&fiber(c.poly(), load_complex("w", w)?, &tol)?)
        }
        Command::Gelfand { f, z } => {
            let f = function(f, "f", &tol)?;
            let values = load_complex_list("z", z)?
                .into_iter()
                .map(|z| Ok(PhiPoint { z, phi: gelfand_eval(&f, z)? }))
                .collect::<Result<Vec<_>, Failure>>()?;
            done(&json!({ "values": values }))
        }
        Command::Invtransform { centers, phi } => {
            let ctx = context(centers, &tol)?;
            let samples: PhiSamples = load("phi", phi)?;
            let f = inverse_transform(&ctx, &samples.pairs(), samples.w)?;
            done(&json!({ "w": samples.w, "f": f }))
        }
        Command::Polyprod { centers, f, g, boxed } => {
            let fd: FunctionDoc = load("f", f)?;
            let gd: FunctionDoc = load("g", g)?;
            if let Some(c) = centers {
                let lambdas = load_complex_list("centers", c)?;
                if lambdas != fd.centers || lambdas != gd.centers {
                    return Err(Failure::Usage("--centers: differs from the centers of --f or --g".into()));
                }
            }
            if fd.centers != gd.centers {
                return Err(multicentric::Error::ContextMismatch.into());
            }
            let ctx = fd.context(&tol)?;
            let f = fd.into_function_in(ctx.clone())?;
            let g = gd.into_function_in(ctx)?;
            let h = if *boxed { f.polyprod_boxed(&g)? } else { f.polyprod(&g)? };
            function_json(&h)
        }
        Command::Norm { f } => {
            let f = function(f, "f", &tol)?;
            done(&json!({
                "sup_norm": f.sup_norm(),
                "op_norm": f.op_norm(),
                "norm_equivalence_constant": f.norm_equivalence_constant(),
            }))
        }
        Command::Spectrum { f, iterations } => {
            let f = function(f, "f", &tol)?;
            done(&json!({
                "spectrum": f.spectrum(),
                "spectral_radius": f.spectral_radius(),
                "power_norms": f.spectral_radius_iter(*iterations)?,
            }))
        }
        Command::Charfunc { f } => done(&function(f, "f", &tol)?.characteristic()),
        Command::Invert { f, lambda } => {
            let f = function(f, "f", &tol)?;
            match lambda {
                Some(l) => done(&f.resolvent_bound_check(load_complex("lambda", l)?)?),
                None => function_json(&f.invert()?),
            }
        }
        Command::Characters { centers, w0, samples } => {
            let ctx = context(centers, &tol)?;
            let w0 = load_complex("w0", w0)?;
            let pts = match samples {
                Some(s) => load_complex_list("samples", s)?,
                None => vec![w0],
            };
            let m = SampleSet::new(&ctx, pts)?;
            done(&ctx.characters_at(&m, w0)?)
        }
        Command::Radical { centers, w0 } => {
            let ctx = context(centers, &tol)?;
            let w0 = load_complex("w0", w0)?;
            done(&json!({ "w0": w0, "basis": ctx.radical_basis_at(w0)? }))
        }
        Command::Chi { matrix, spectrum, f } => {
            let a = load_matrix("matrix", matrix)?;
            let s: SpectrumData = load("spectrum", spectrum)?;
            let f = function(f, "f", &tol)?;
            done(&chi_a(&a, &s, f.ctx().p(), &f)?)
        }
        Command::Hermite { matrix, spectrum, values } => {
            let a = load_matrix("matrix", matrix)?;
            let s: SpectrumData = load("spectrum", spectrum)?;
            let v: Vec<Vec<Complex64>> = load("values", values)?;
            done(&hermite_matrix_function(&a, &s, &v)?)
        }
        Command::Specmap { matrix, spectrum, f } => {
            let a = load_matrix("matrix", matrix)?;
            let s: SpectrumData = load("spectrum", spectrum)?;
            let f = function(f, "f", &tol)?;
            done(&spectral_mapping_check(&a, &s, f.ctx().p(), &f)?)
        }
        Command::Verify { suite, cases, d, samples } => {
            let params = SuiteParams {
                cases: *cases,
                d: *d,
                samples: *samples,
            };
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
                return Err(Failure::Usage(format!(
                    "unknown suite '{bad}'; expected all or one of {}",
                    SUITES.join(", ")
                )));
            }
            let reports = names
                .iter()
                .map(|n| run_suite(n, cli.seed, &params, &tol))
                .collect::<multicentric::Result<Vec<SuiteReport>>>()?;
            let ok = reports.iter().all(|r| r.passed);
            let mut out = done(&if reports.len() == 1 {
                serde_json::to_value(&reports[0])
            } else {
                serde_json::to_value(&reports)
            }
            .map_err(|e| Failure::Numerical(e.to_string()))?)?;
            out.ok = ok;
            Ok(out)
        }
    }
}

fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Csv => csv::to_csv(value),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = render(&outcome.value, cli.format);
            match &cli.output {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: at least one property exceeded its tolerance");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
