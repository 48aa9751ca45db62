//! `darboux3`: Darboux polynomials, first integrals and structure
//! certification for 3D polynomial vector fields described by model files.
//!
//! Exit codes: 0 when every requested check verified (or a search/simulation
//! completed), 2 when some claim failed with a residual, 1 on usage or parse
//! errors.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use darboux_core::darboux::{search_constant_cofactor_exact, search_numeric, SearchConfig};
use darboux_core::integrals::{combine_cofactors, IntegralFn};
use darboux_core::model::{load_model, Model};
use darboux_core::ode::{drift_integral, integrate, PROBE_H, PROBE_T1};
use darboux_core::rational::{parse_rational, Rational};
use darboux_core::report::{
    drift_result, integral_result, pairs_results, run_claim, CheckResult, ToolReport,
};

#[derive(Parser)]
#[command(name = "darboux3", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum Method {
    /// Exact eigen-method; finds pairs with constant cofactors.
    ExactConst,
    /// Multi-start least squares with exact re-certification; finds
    /// polynomial cofactors too.
    Numeric,
}

#[derive(Args)]
struct ModelArgs {
    /// Model file path.
    model: PathBuf,
    /// Parameter binding `name=value` (exact rational), repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Degree bound for the Darboux polynomial.
    #[arg(long)]
    degree: u32,
    #[arg(long, value_enum, default_value = "exact-const")]
    method: Method,
    /// Seed for the multi-start search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of least-squares starts.
    #[arg(long, default_value_t = 200)]
    starts: usize,
    /// Denominator bound for rationalizing float candidates.
    #[arg(long = "denom-bound", default_value_t = 64)]
    denom_bound: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Search for Darboux pairs (g, lambda) with X(g) = lambda g.
    Darboux {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Search for pairs, then combine cofactors into first integrals.
    Integrals {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Verify the structure and integral claims declared in the model file.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        /// Verify only this claim (claim or integral name).
        #[arg(long)]
        claim: Option<String>,
    },
    /// Re-run the search over a rational parameter grid.
    Scan {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        search: SearchArgs,
        /// Grid spec: `name=[v1,v2,...];name=[...]` with exact rationals.
        #[arg(long)]
        grid: String,
    },
    /// Integrate a trajectory; optionally report the drift of an integral.
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        /// Initial state `x,y,z`.
        #[arg(long)]
        x0: String,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long, default_value_t = PROBE_T1)]
        t1: f64,
        #[arg(long, default_value_t = PROBE_H)]
        dt: f64,
        /// Name of a declared integral claim to track along the trajectory.
        #[arg(long)]
        integral: Option<String>,
        /// Write the trajectory CSV here (default: stdout when no drift
        /// report is requested).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn parse_params(args: &[String]) -> Result<BTreeMap<String, Rational>, String> {
    let mut out = BTreeMap::new();
    for p in args {
        let Some((name, value)) = p.split_once('=') else {
            return Err(format!("--param takes NAME=VALUE, got `{p}`"));
        };
        let Some(v) = parse_rational(value) else {
            return Err(format!("`{value}` is not an exact rational"));
        };
        out.insert(name.trim().to_string(), v);
    }
    Ok(out)
}

fn build_model(args: &ModelArgs) -> Result<Model, String> {
    let src = load_model(&args.model).map_err(|e| e.to_string())?;
    let params = parse_params(&args.params)?;
    src.build(&params).map_err(|e| e.to_string())
}

fn emit(report: &ToolReport, json: bool) -> ExitCode {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn run_search(
    model: &Model,
    search: &SearchArgs,
) -> Result<Vec<darboux_core::darboux::DarbouxPair>, String> {
    let field = model.effective_field();
    let cfg = SearchConfig {
        degree: search.degree,
        starts: search.starts,
        seed: search.seed,
        denom_bound: search.denom_bound,
        ..SearchConfig::default()
    };
    match search.method {
        Method::ExactConst => search_constant_cofactor_exact(field, search.degree),
        Method::Numeric => search_numeric(field, &cfg),
    }
    .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version are not usage errors
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };

    match cli.command {
        Command::Darboux {
            model: margs,
            search,
        } => {
            let model = match build_model(&margs) {
                Ok(m) => m,
                Err(e) => return fail(e),
            };
            let pairs = match run_search(&model, &search) {
                Ok(p) => p,
                Err(e) => return fail(e),
            };
            let field = model.effective_field();
            let report = ToolReport::new("darboux", &model.name, pairs_results(field, &pairs));
            // a completed search is success even when nothing was found
            emit(&report, margs.json);
            ExitCode::SUCCESS
        }
        Command::Integrals {
            model: margs,
            search,
        } => {
            let model = match build_model(&margs) {
                Ok(m) => m,
                Err(e) => return fail(e),
            };
            let pairs = match run_search(&model, &search) {
                Ok(p) => p,
                Err(e) => return fail(e),
            };
            let field = model.effective_field();
            let integrals = match combine_cofactors(field, &pairs) {
                Ok(i) => i,
                Err(e) => return fail(e),
            };
            let mut results = pairs_results(field, &pairs);
            for (k, i) in integrals.iter().enumerate() {
                results.push(integral_result(field, &format!("integral-{k}"), i));
            }
            let report = ToolReport::new("integrals", &model.name, results);
            emit(&report, margs.json)
        }
        Command::Verify {
            model: margs,
            claim,
        } => {
            let model = match build_model(&margs) {
                Ok(m) => m,
                Err(e) => return fail(e),
            };
            let field = model.effective_field();
            let mut results: Vec<CheckResult> = Vec::new();
            let mut matched = false;
            for c in &model.claims {
                if claim.as_deref().is_none_or(|n| n == c.name) {
                    results.push(run_claim(field, c));
                    matched = true;
                }
            }
            for i in &model.integrals {
                if claim.as_deref().is_none_or(|n| n == i.name) {
                    results.push(integral_result(field, &i.name, &i.integral));
                    matched = true;
                }
            }
            if let Some(name) = &claim {
                if !matched {
                    return fail(format!("no claim or integral named `{name}`"));
                }
            }
            let report = ToolReport::new("verify", &model.name, results);
            emit(&report, margs.json)
        }
        Command::Scan {
            model: margs,
            search,
            grid,
        } => {
            let src = match load_model(&margs.model) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let base = match parse_params(&margs.params) {
                Ok(p) => p,
                Err(e) => return fail(e),
            };
            let axes = match parse_grid(&grid) {
                Ok(a) => a,
                Err(e) => return fail(e),
            };
            let mut results = Vec::new();
            let mut point = base.clone();
            if let Err(e) = scan_rec(&src, &search, &axes, 0, &mut point, &mut results) {
                return fail(e);
            }
            let report = ToolReport::new("scan", &src.name, results);
            emit(&report, margs.json)
        }
        Command::Simulate {
            model: margs,
            x0,
            t0,
            t1,
            dt,
            integral,
            csv,
        } => {
            let model = match build_model(&margs) {
                Ok(m) => m,
                Err(e) => return fail(e),
            };
            let field = model.effective_field();
            let x0: Vec<f64> = x0
                .split(',')
                .filter_map(|v| v.trim().parse().ok())
                .collect();
            let [a, b, c] = x0.as_slice() else {
                return fail("--x0 takes three comma-separated numbers");
            };
            if dt <= 0.0 || t1 <= t0 {
                return fail("need --dt > 0 and --t1 > --t0");
            }
            let traj = integrate(field, [*a, *b, *c], t0, t1, dt);
            let csv_text = trajectory_csv(&traj);
            if let Some(path) = &csv {
                if let Err(e) = std::fs::write(path, &csv_text) {
                    return fail(format!("cannot write {}: {e}", path.display()));
                }
            }
            match integral {
                None => {
                    if csv.is_none() {
                        // tolerate a closed pipe (e.g. `| head`)
                        use std::io::Write;
                        let _ = std::io::stdout().write_all(csv_text.as_bytes());
                    }
                    ExitCode::SUCCESS
                }
                Some(name) => {
                    let Some(ic) = model.integrals.iter().find(|i| i.name == name) else {
                        return fail(format!("no integral named `{name}`"));
                    };
                    let f = IntegralFn::compile(&ic.integral);
                    let drift = drift_integral(&f, &traj);
                    let mut result = drift_result(&name, std::slice::from_ref(&drift), 1e-6);
                    if let Some(est) = traj.global_error_estimate {
                        result
                            .notes
                            .push(format!("RK4 half-step error estimate {est:.3e}"));
                    }
                    let report = ToolReport::new("simulate", &model.name, vec![result]);
                    emit(&report, margs.json)
                }
            }
        }
    }
}

fn trajectory_csv(traj: &darboux_core::ode::Trajectory) -> String {
    let mut out = String::from("t,x,y,z\n");
    for (k, st) in traj.states.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            traj.time_at(k),
            st[0],
            st[1],
            st[2]
        ));
    }
    out
}

type GridAxes = Vec<(String, Vec<Rational>)>;

/// `name=[v1,v2,...];name=[...]`
fn parse_grid(spec: &str) -> Result<GridAxes, String> {
    let mut axes = Vec::new();
    for part in spec.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let Some((name, values)) = part.split_once('=') else {
            return Err(format!("grid axis `{part}` is not NAME=[...]"));
        };
        let values = values.trim();
        let Some(listed) = values.strip_prefix('[').and_then(|v| v.strip_suffix(']')) else {
            return Err(format!("grid values for `{name}` must be [v1,v2,...]"));
        };
        let mut vals = Vec::new();
        for v in listed.split(',') {
            let Some(r) = parse_rational(v) else {
                return Err(format!("`{v}` is not an exact rational"));
            };
            vals.push(r);
        }
        if vals.is_empty() {
            return Err(format!("grid axis `{name}` is empty"));
        }
        axes.push((name.trim().to_string(), vals));
    }
    if axes.is_empty() {
        return Err("empty grid".to_string());
    }
    Ok(axes)
}

fn scan_rec(
    src: &darboux_core::model::ModelSource,
    search: &SearchArgs,
    axes: &GridAxes,
    depth: usize,
    point: &mut BTreeMap<String, Rational>,
    results: &mut Vec<CheckResult>,
) -> Result<(), String> {
    if depth == axes.len() {
        let model = src.build(point).map_err(|e| e.to_string())?;
        let label: Vec<String> = axes
            .iter()
            .map(|(n, _)| format!("{n}={}", point[n]))
            .collect();
        let label = label.join(",");
        let pairs = run_search(&model, search)?;
        let field = model.effective_field();
        for (k, p) in pairs.iter().enumerate() {
            results.push(CheckResult {
                name: format!("{label}/pair-{k}"),
                kind: "darboux-pair".into(),
                status: "pass".into(),
                residual: serde_json::json!("0"),
                witness: serde_json::json!({
                    "g": p.g.render(&field.var_names),
                    "lambda": p.lambda.render(&field.var_names),
                }),
                notes: Vec::new(),
            });
        }
        if pairs.is_empty() {
            results.push(CheckResult {
                name: format!("{label}/none"),
                kind: "darboux-pair".into(),
                status: "pass".into(),
                residual: serde_json::Value::Null,
                witness: serde_json::Value::Null,
                notes: vec![format!(
                    "nothing found up to degree {}, denominator bound {}",
                    search.degree, search.denom_bound
                )],
            });
        }
        return Ok(());
    }
    let (name, values) = &axes[depth];
    for v in values {
        point.insert(name.clone(), v.clone());
        scan_rec(src, search, axes, depth + 1, point, results)?;
    }
    point.remove(name);
    Ok(())
}
