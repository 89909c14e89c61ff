//! Command-line front end for the moment-Hankel laboratory.
//!
//! Measures come from spec files
//! (`{"atoms":[{"t":..,"w":..}],"densities":[{"c":..,"beta":..,"lam":..}]}`),
//! commands map onto the core operations, and every run emits a
//! self-describing JSON or CSV report. Exit codes: 0 success, 1 a
//! scenario verdict failed, 2 input error.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use serde_json::json;

use dhmu_core::analytic::{kernel_truncation_order, test_function_f, test_function_g, GKind};
use dhmu_core::measure::{dyadic_grid, from_spec_json, RadialMeasure, TrendVerdict};
use dhmu_core::operator::{norm_profile, tail_block_norm, WeightScheme, WeightedHankelMatrix};
use dhmu_core::verify::{run_scenario, ScenarioParams, SCENARIO_IDS};
use dhmu_core::PowerSeries64;

use report::{emit, Report, Summary, SummaryRow};

#[derive(Parser)]
#[command(
    name = "dhmu",
    version,
    about = "Moment Hankel matrices and the derivative-Hilbert operator: measure diagnostics, spectral profiles, verification scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Unit,
    Derivative,
}

impl From<SchemeArg> for WeightScheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Unit => WeightScheme::Unit,
            SchemeArg::Derivative => WeightScheme::Derivative,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesArg {
    Monomial,
    Geometric,
    KernelF,
    KernelG,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GKindArg {
    Log,
    Cauchy,
    Power,
}

#[derive(Subcommand)]
enum Command {
    /// Moments μ_0..μ_{N-1} of a measure.
    Moments {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long = "N", default_value_t = 16)]
        n: usize,
    },
    /// s-Carleson (optionally α-logarithmic) tail diagnostics.
    Carleson {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long = "grid-j", default_value_t = 20)]
        grid_j: u32,
    },
    /// Apply the weighted Hankel truncation to a named series.
    Apply {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long = "N", default_value_t = 64)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SchemeArg::Derivative)]
        scheme: SchemeArg,
        #[arg(long, value_enum)]
        series: SeriesArg,
        /// Kernel / geometric parameter a in (0, 1).
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        /// Conjugate exponent for the power-kind dual kernel.
        #[arg(long = "q-prime")]
        q_prime: Option<f64>,
        #[arg(long = "g-kind", value_enum)]
        g_kind: Option<GKindArg>,
        /// Degree for the monomial family.
        #[arg(long)]
        degree: Option<usize>,
        /// Truncation order override for the kernel families.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Spectral norms over doubling truncation orders 64..N.
    NormProfile {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long = "N", default_value_t = 1024)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SchemeArg::Derivative)]
        scheme: SchemeArg,
    },
    /// Spectral norms of restricted-measure blocks at r = 1-2^{-j}.
    TailBlocks {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long = "N", default_value_t = 512)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SchemeArg::Derivative)]
        scheme: SchemeArg,
        #[arg(long = "grid-j", default_value_t = 8)]
        grid_j: u32,
    },
    /// Run one named verification scenario.
    Scenario {
        /// Catalog ids: repr-identity, pairing-identity, hilbert-ineq,
        /// h2-bounded-dichotomy, h2-compact-dichotomy, necessity-4.1-i,
        /// necessity-4.1-ii, necessity-4.1-iii, embedding-hastings,
        /// lemma-4.1-integrability, conjecture-4.1-probe.
        id: String,
        #[arg(long)]
        measure: Option<PathBuf>,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long = "grid-j")]
        grid_j: Option<u32>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the full scenario catalog over a directory of measure files.
    ReportAll {
        corpus_dir: PathBuf,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long = "grid-j")]
        grid_j: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_measure(path: &Path) -> Result<RadialMeasure<f64>, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    from_spec_json::<f64>(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn require(cond: bool, message: &str) -> Result<(), InputError> {
    if cond {
        Ok(())
    } else {
        Err(InputError(message.to_string()))
    }
}

fn finish(report: &Report, cli: &Cli) -> Result<ExitCode, InputError> {
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    emit(&text, cli.out.as_deref()).map_err(|e| InputError(e.to_string()))?;
    Ok(match report.passed {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    })
}

fn run(cli: &Cli) -> Result<ExitCode, InputError> {
    match &cli.command {
        Command::Moments { measure, n } => {
            require(*n >= 1, "--N must be at least 1")?;
            let m = load_measure(measure)?;
            let seq = m.moments(*n).map_err(InputError::from)?;
            let mut rep = Report::new(
                "moments",
                json!({ "measure": measure.display().to_string(), "N": n }),
            );
            rep.label("measure", m.describe());
            for (i, v) in seq.values.iter().enumerate() {
                rep.metric(i.to_string(), *v);
            }
            finish(&rep, cli)
        }

        Command::Carleson {
            measure,
            s,
            alpha,
            grid_j,
        } => {
            require(*s > 0.0, "--s must be positive")?;
            require(
                *grid_j >= 1 && *grid_j <= 50,
                "--grid-j must lie in 1..=50 (dyadic points collapse onto 1.0 past j = 50)",
            )?;
            if let Some(a) = alpha {
                require(*a >= 0.0, "--alpha must be nonnegative")?;
            }
            let m = load_measure(measure)?;
            let grid = dyadic_grid::<f64>(1, *grid_j);
            let rep_data = match alpha {
                Some(a) => m.log_carleson_constant(*s, *a, &grid),
                None => m.carleson_constant(*s, &grid),
            };
            let mut rep = Report::new(
                "carleson",
                json!({
                    "measure": measure.display().to_string(),
                    "s": s, "alpha": alpha, "grid_j": grid_j
                }),
            );
            rep.label("measure", m.describe());
            rep.label("verdict", rep_data.vanishing.to_string());
            let classification = match rep_data.vanishing {
                TrendVerdict::Growing => format!("not {s}-Carleson"),
                TrendVerdict::Bounded => format!("{s}-Carleson"),
                TrendVerdict::Decaying => format!("vanishing {s}-Carleson"),
            };
            rep.label("classification", classification);
            rep.metric("constant", rep_data.constant);
            rep.metric("exponent-estimate", rep_data.exponent_estimate);
            for (j, ratio) in rep_data.ratios.iter().enumerate() {
                rep.metric(format!("ratio[j={}]", j + 1), *ratio);
            }
            finish(&rep, cli)
        }

        Command::Apply {
            measure,
            n,
            scheme,
            series,
            a,
            p,
            q_prime,
            g_kind,
            degree,
            terms,
        } => {
            require(*n >= 1, "--N must be at least 1")?;
            let m = load_measure(measure)?;
            let f = build_series(*series, *a, *p, *q_prime, *g_kind, *degree, *terms)?;
            let moments = m.moments(2 * n - 1).map_err(InputError::from)?;
            let matrix = WeightedHankelMatrix::build(&moments, *n, (*scheme).into())
                .map_err(InputError::from)?;
            let mut input: Vec<Complex<f64>> = f.coeffs().to_vec();
            input.resize(*n, Complex::new(0.0, 0.0));
            input.truncate(*n);
            let image = matrix.apply(&input);
            let mut rep = Report::new(
                "apply",
                json!({
                    "measure": measure.display().to_string(),
                    "N": n, "scheme": format!("{}", WeightScheme::from(*scheme)),
                    "a": a, "p": p, "q_prime": q_prime, "degree": degree, "terms": terms
                }),
            );
            rep.label("measure", m.describe());
            for (i, c) in image.iter().enumerate() {
                rep.metric(format!("b[{i}].re"), c.re);
                rep.metric(format!("b[{i}].im"), c.im);
            }
            finish(&rep, cli)
        }

        Command::NormProfile { measure, n, scheme } => {
            require(*n >= 64, "--N must be at least 64")?;
            let m = load_measure(measure)?;
            let mut orders = vec![64usize];
            while *orders.last().unwrap() * 2 <= *n {
                orders.push(orders.last().unwrap() * 2);
            }
            let profile =
                norm_profile(&m, (*scheme).into(), &orders, 1e-8).map_err(InputError::from)?;
            let mut rep = Report::new(
                "norm-profile",
                json!({
                    "measure": measure.display().to_string(),
                    "orders": orders, "scheme": format!("{}", WeightScheme::from(*scheme))
                }),
            );
            rep.label("measure", m.describe());
            rep.label("growth-verdict", profile.growth_verdict.to_string());
            for (order, norm) in profile.orders.iter().zip(&profile.norms) {
                rep.metric(format!("norm[N={order}]"), *norm);
            }
            for (pair, ratio) in profile.orders.windows(2).zip(&profile.ratios) {
                rep.metric(format!("ratio[{}->{}]", pair[0], pair[1]), *ratio);
            }
            finish(&rep, cli)
        }

        Command::TailBlocks {
            measure,
            n,
            scheme,
            grid_j,
        } => {
            require(*n >= 1, "--N must be at least 1")?;
            require(
                *grid_j >= 1 && *grid_j <= 50,
                "--grid-j must lie in 1..=50 (dyadic points collapse onto 1.0 past j = 50)",
            )?;
            let m = load_measure(measure)?;
            let r_list = dyadic_grid::<f64>(1, *grid_j);
            let blocks = tail_block_norm(&m, (*scheme).into(), *n, &r_list, 1e-8)
                .map_err(InputError::from)?;
            let mut rep = Report::new(
                "tail-blocks",
                json!({
                    "measure": measure.display().to_string(),
                    "N": n, "grid_j": grid_j,
                    "scheme": format!("{}", WeightScheme::from(*scheme))
                }),
            );
            rep.label("measure", m.describe());
            for (j, (r, norm)) in blocks.iter().enumerate() {
                rep.metric(format!("r[j={}]", j + 1), *r);
                rep.metric(format!("norm[j={}]", j + 1), *norm);
            }
            finish(&rep, cli)
        }

        Command::Scenario {
            id,
            measure,
            n,
            trials,
            grid_j,
            p,
            q,
            s,
            alpha,
            seed,
        } => {
            if let Some(n) = n {
                require(*n >= 8, "--N must be at least 8")?;
            }
            if let Some(t) = trials {
                require(*t >= 1, "--trials must be at least 1")?;
            }
            if let Some(j) = grid_j {
                require(
                    *j >= 1 && *j <= 50,
                    "--grid-j must lie in 1..=50 (dyadic points collapse onto 1.0 past j = 50)",
                )?;
            }
            if let Some(p) = p {
                require(*p > 0.0, "--p must be positive")?;
            }
            if let Some(q) = q {
                require(*q > 0.0, "--q must be positive")?;
            }
            if let Some(s) = s {
                require(*s > 0.0, "--s must be positive")?;
            }
            if let Some(a) = alpha {
                require(*a >= 0.0, "--alpha must be nonnegative")?;
            }
            let measure_override = match measure {
                Some(path) => Some((path.display().to_string(), load_measure(path)?)),
                None => None,
            };
            let params = ScenarioParams::<f64> {
                seed: *seed,
                trials: *trials,
                truncation: *n,
                grid_j: *grid_j,
                p: *p,
                q: *q,
                s: *s,
                alpha: *alpha,
                measure: measure_override,
            };
            let outcome = run_scenario(id, &params).map_err(InputError::from)?;
            let mut rep = Report::new(
                "scenario",
                json!({
                    "id": id, "seed": seed, "N": n, "trials": trials, "grid_j": grid_j,
                    "p": p, "q": q, "s": s, "alpha": alpha,
                    "measure": measure.as_ref().map(|p| p.display().to_string()),
                    "digest": outcome.inputs_digest
                }),
            );
            rep.passed = Some(outcome.passed);
            for (name, value) in &outcome.labels {
                rep.label(name.clone(), value.clone());
            }
            for (name, value) in &outcome.metrics {
                rep.metric(name.clone(), *value);
            }
            finish(&rep, cli)
        }

        Command::ReportAll {
            corpus_dir,
            n,
            trials,
            grid_j,
            seed,
        } => {
            if let Some(n) = n {
                require(*n >= 8, "--N must be at least 8")?;
            }
            if let Some(t) = trials {
                require(*t >= 1, "--trials must be at least 1")?;
            }
            if let Some(j) = grid_j {
                require(
                    *j >= 1 && *j <= 50,
                    "--grid-j must lie in 1..=50 (dyadic points collapse onto 1.0 past j = 50)",
                )?;
            }
            let mut summary = Summary::new(
                "report-all",
                json!({
                    "corpus_dir": corpus_dir.display().to_string(),
                    "N": n, "trials": trials, "grid_j": grid_j, "seed": seed
                }),
            );
            let mut entries: Vec<PathBuf> = std::fs::read_dir(corpus_dir)
                .map_err(|e| InputError(format!("{}: {e}", corpus_dir.display())))?
                .filter_map(|r| r.ok().map(|d| d.path()))
                .filter(|p| p.extension().map(|e| e == "json").unwrap_or(false))
                .collect();
            entries.sort();

            let mut any_failed = false;
            for path in &entries {
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().to_string())
                    .unwrap_or_else(|| path.display().to_string());
                let measure = match load_measure(path) {
                    Ok(m) => m,
                    Err(InputError(msg)) => {
                        // isolate the bad file; the sweep continues
                        summary.rows.push(SummaryRow {
                            measure: name,
                            scenario: "*".into(),
                            status: "input-error".into(),
                            metric: String::new(),
                            value: None,
                            detail: Some(msg),
                        });
                        any_failed = true;
                        continue;
                    }
                };
                for id in SCENARIO_IDS {
                    let params = ScenarioParams::<f64> {
                        seed: *seed,
                        trials: *trials,
                        truncation: *n,
                        grid_j: *grid_j,
                        measure: Some((name.clone(), measure.clone())),
                        ..Default::default()
                    };
                    match run_scenario(id, &params) {
                        Ok(outcome) => {
                            let informational = outcome
                                .labels
                                .iter()
                                .any(|(k, v)| k == "status" && v == "informational");
                            let status = if informational {
                                "info"
                            } else if outcome.passed {
                                "pass"
                            } else {
                                any_failed = true;
                                "fail"
                            };
                            let (metric, value) = outcome
                                .metrics
                                .last()
                                .map(|(k, v)| (k.clone(), Some(*v)))
                                .unwrap_or_default();
                            summary.rows.push(SummaryRow {
                                measure: name.clone(),
                                scenario: id.to_string(),
                                status: status.into(),
                                metric,
                                value,
                                detail: None,
                            });
                        }
                        Err(e) => {
                            any_failed = true;
                            summary.rows.push(SummaryRow {
                                measure: name.clone(),
                                scenario: id.to_string(),
                                status: "error".into(),
                                metric: String::new(),
                                value: None,
                                detail: Some(e.to_string()),
                            });
                        }
                    }
                }
            }

            let text = match cli.format {
                Format::Json => summary.to_json(),
                Format::Csv => summary.to_csv(),
            };
            emit(&text, cli.out.as_deref()).map_err(|e| InputError(e.to_string()))?;
            Ok(if any_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

fn build_series(
    series: SeriesArg,
    a: Option<f64>,
    p: Option<f64>,
    q_prime: Option<f64>,
    g_kind: Option<GKindArg>,
    degree: Option<usize>,
    terms: Option<usize>,
) -> Result<PowerSeries64, InputError> {
    let need_a = || -> Result<f64, InputError> {
        let a = a.ok_or(InputError("--a is required for this series".into()))?;
        require(a > 0.0 && a < 1.0, "--a must lie in (0, 1)")?;
        Ok(a)
    };
    match series {
        SeriesArg::Monomial => {
            let k = degree.ok_or(InputError("--degree is required for monomial".into()))?;
            Ok(PowerSeries64::monomial(k))
        }
        SeriesArg::Geometric => {
            let a = need_a()?;
            let m = terms.unwrap_or(kernel_truncation_order(2.0, a));
            Ok(PowerSeries64::geometric(a, m))
        }
        SeriesArg::KernelF => {
            let a = need_a()?;
            let p = p.ok_or(InputError("--p is required for kernel-f".into()))?;
            require(p > 0.0, "--p must be positive")?;
            let m = terms.unwrap_or(kernel_truncation_order(p, a));
            Ok(test_function_f(p, a, m))
        }
        SeriesArg::KernelG => {
            let a = need_a()?;
            let kind = match g_kind.ok_or(InputError("--g-kind is required for kernel-g".into()))? {
                GKindArg::Log => GKind::Log,
                GKindArg::Cauchy => GKind::Cauchy,
                GKindArg::Power => {
                    let qp =
                        q_prime.ok_or(InputError("--q-prime is required for power kind".into()))?;
                    require(qp > 1.0, "--q-prime must exceed 1")?;
                    GKind::Power { q_prime: qp }
                }
            };
            let m = terms.unwrap_or(kernel_truncation_order(1.0, a));
            Ok(test_function_g(kind, a, m))
        }
    }
}
