use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use facdio_core::abcradical::{grid_csv, ratio_grid, select_epsilon, AbcBoundParams};
use facdio_core::certify::{interval_certificate, monomial_solve_complete, verify_certificate};
use facdio_core::config::parse_instance;
use facdio_core::instance::{EquationInstance, InstanceFlags, Rhs};
use facdio_core::poly::{modified_discriminant, BinaryForm, FormFactorization, IntegerPolynomial};
use facdio_core::search::{solutions_csv, solve_instance, SearchOptions};
use facdio_core::usefulprimes::{is_useful_prime, scan_useful_primes};
use facdio_core::{arith, Error};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "facdio",
    version,
    about = "Factorial products equal to binary forms"
)]
struct Cli {
    /// Worker threads.
    #[arg(long, global = true, env = "FACDIO_JOBS")]
    jobs: Option<usize>,
    /// Directory for report files; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminants and useful primes of the right-hand side form.
    AnalyzeForm(AnalyzeArgs),
    /// Interval certificates for every usable prime up to a limit.
    Certify(CertifyArgs),
    /// Complete solution list when the right-hand side is x^d.
    DecideMonomial(InstanceArg),
    /// Bounded exhaustive search.
    Search(SearchArgs),
    /// Log-ratio grid for the radical bound.
    AbcRatio(AbcArgs),
    /// n! + 1 = x^2.
    Brocard(BrocardArgs),
}

#[derive(Args)]
struct InstanceArg {
    #[arg(long)]
    instance: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long, required_unless_present = "form")]
    instance: Option<PathBuf>,
    /// Binary form coefficients a_d,...,a_0 (alternative to --instance).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    form: Option<Vec<i64>>,
    #[arg(long, default_value_t = 1000)]
    limit: u64,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value_t = 100)]
    limit: u64,
    /// Replay each certificate over this box.
    #[arg(long)]
    xy_box: Option<u64>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    n_max: u64,
    #[arg(long)]
    xy_box: Option<u64>,
    #[arg(long)]
    prune: bool,
}

#[derive(Args)]
struct AbcArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value_t = 20)]
    n_max: u64,
    /// Override the automatically selected epsilon.
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Args)]
struct BrocardArgs {
    #[arg(long, default_value_t = 25)]
    n_max: u64,
}

/// A report and any side files, written to `--out` or stdout.
struct Output {
    report: Value,
    files: Vec<(String, String)>,
}

fn load(path: &Path) -> Result<EquationInstance, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text)
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, Error> {
    serde_json::to_value(v).map_err(|e| Error::Invariant(format!("serialization: {e}")))
}

fn analyze(args: &AnalyzeArgs) -> Result<Output, Error> {
    let ff = match (&args.form, &args.instance) {
        (Some(c), _) => FormFactorization::single(BinaryForm::from_i64(c)?),
        (None, Some(p)) => load(p)?.rhs().form_factorization().ok_or_else(|| {
            Error::InvalidInput("right-hand side x^d has no form to analyze".into())
        })?,
        (None, None) => unreachable!("clap requires one of --form/--instance"),
    };
    let kernel = ff.squarefree_kernel();
    let disc = match modified_discriminant(&kernel) {
        Ok(m) => to_value(&m)?,
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    let scan = scan_useful_primes(&ff, args.limit);
    let factors: Vec<Value> = ff
        .factors()
        .iter()
        .map(|(f, e)| json!({"form": f.to_string(), "exponent": e}))
        .collect();
    Ok(Output {
        report: json!({
            "form": ff.composite().to_string(),
            "factors": factors,
            "discriminant": disc,
            "limit": scan.limit,
            "useful_primes": scan.useful(),
            "evidence": to_value(&scan.primes)?,
            "primes_scanned": scan.primes_scanned,
            "density": scan.density,
            "inconclusive": scan.inconclusive,
        }),
        files: Vec::new(),
    })
}

fn certify(args: &CertifyArgs) -> Result<Output, Error> {
    let inst = load(&args.instance)?;
    inst.require_zero_roots()?;
    let d = inst.rhs().valuation_threshold();
    if inst.sum_l() >= d {
        return Err(Error::Hypothesis(format!(
            "Σlᵢ < d fails: Σlᵢ = {}, d = {d}",
            inst.sum_l()
        )));
    }
    let mut certs = Vec::new();
    let mut refused = Vec::new();
    for q in arith::primes_up_to(args.limit) {
        match interval_certificate(&inst, q) {
            Ok(c) => certs.push(c),
            Err(e) => {
                // Only primes that pass the useful-prime test are worth reporting.
                let useful = inst
                    .rhs()
                    .form_factorization()
                    .is_none_or(|ff| is_useful_prime(&ff, q).is_some());
                if useful {
                    refused.push(json!({"q": q, "reason": e.to_string()}));
                }
            }
        }
    }
    let mut files = Vec::new();
    let mut entries = Vec::new();
    for c in &certs {
        let mut v = to_value(c)?;
        if let Some(b) = args.xy_box {
            v["verified"] = json!(verify_certificate(c, &inst, b));
        }
        let text = serde_json::to_string_pretty(c)
            .map_err(|e| Error::Invariant(format!("serialization: {e}")))?;
        files.push((format!("certificate_q{}.json", c.q), text + "\n"));
        entries.push(v);
    }
    Ok(Output {
        report: json!({"limit": args.limit, "certificates": entries, "refused": refused}),
        files,
    })
}

fn decide(args: &InstanceArg) -> Result<Output, Error> {
    let inst = load(&args.instance)?;
    Ok(Output {
        report: to_value(&monomial_solve_complete(&inst)?)?,
        files: Vec::new(),
    })
}

fn search(
    inst: &EquationInstance,
    n_max: u64,
    xy_box: Option<u64>,
    prune: bool,
) -> Result<Output, Error> {
    let report = solve_instance(
        inst,
        SearchOptions {
            n_bound: n_max,
            xy_box,
            prune,
        },
    )?;
    let csv = solutions_csv(inst.r(), &report.solutions)?;
    Ok(Output {
        report: to_value(&report)?,
        files: vec![("solutions.csv".into(), csv)],
    })
}

fn abc(args: &AbcArgs) -> Result<Output, Error> {
    let inst = load(&args.instance)?;
    let params = match args.epsilon {
        Some(e) => {
            inst.require_zero_roots()?;
            AbcBoundParams::with_epsilon(&inst, e)?
        }
        None => select_epsilon(&inst)?,
    };
    let rows = ratio_grid(&inst, &params, args.n_max)?;
    let csv = grid_csv(inst.r(), &rows)?;
    Ok(Output {
        report: json!({
            "note": "conditional on abc: negative log_ratio means N(F)^(1+eps) < F at that tuple",
            "params": to_value(&params)?,
            "margin_holds": params.margin_holds(),
            "rows": rows.len(),
        }),
        files: vec![("abc_ratio.csv".into(), csv)],
    })
}

fn brocard(args: &BrocardArgs) -> Result<Output, Error> {
    let inst = EquationInstance::new(
        vec![IntegerPolynomial::from_i64(&[1, 1])],
        vec![1],
        Rhs::Univariate {
            poly: IntegerPolynomial::from_i64(&[0, 0, 1]),
        },
        InstanceFlags::default(),
    )?;
    let mut out = search(&inst, args.n_max, None, false)?;
    let pairs: Vec<Value> = out.report["solutions"]
        .as_array()
        .into_iter()
        .flatten()
        .filter(|s| s["x"].as_i64().is_some_and(|x| x > 0))
        .map(|s| json!([s["n"][0], s["x"]]))
        .collect();
    out.report["equation"] = json!("n! + 1 = x^2");
    out.report["pairs_n_x"] = json!(pairs);
    Ok(out)
}

fn emit(out: Output, dir: Option<&Path>, csv_to_stdout: bool) -> Result<(), Error> {
    let io = |e: std::io::Error| Error::Config(format!("cannot write output: {e}"));
    let report = serde_json::to_string_pretty(&out.report)
        .map_err(|e| Error::Invariant(format!("serialization: {e}")))?;
    match dir {
        Some(d) => {
            fs::create_dir_all(d).map_err(io)?;
            fs::write(d.join("report.json"), report + "\n").map_err(io)?;
            for (name, body) in out.files {
                fs::write(d.join(name), body).map_err(io)?;
            }
        }
        None if csv_to_stdout => {
            for (_, body) in out.files {
                print!("{body}");
            }
            eprintln!("{report}");
        }
        None => println!("{report}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Error::Config(format!("--jobs: {e}")))?;
    }
    let (out, csv_to_stdout) = match &cli.command {
        Command::AnalyzeForm(a) => (analyze(a)?, false),
        Command::Certify(a) => (certify(a)?, false),
        Command::DecideMonomial(a) => (decide(a)?, false),
        Command::Search(a) => (
            search(&load(&a.instance)?, a.n_max, a.xy_box, a.prune)?,
            false,
        ),
        Command::AbcRatio(a) => (abc(a)?, true),
        Command::Brocard(a) => (brocard(a)?, false),
    };
    emit(out, cli.out.as_deref(), csv_to_stdout)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_invariant() { 2 } else { 1 })
        }
    }
}
