//! Batch command-line interface: construct a code, enumerate it, confront
//! the closed forms, and emit reports.
//!
//! Exit status contract: 0 success/match, 1 usage or I/O error, 2 theorem
//! mismatch or failed verification, 3 enumeration budget exceeded, 4 no
//! applicable closed form (the enumerated table is still emitted).

mod matrix;
mod reports;

use chaincode_core::analysis::{dual_low_weight_search, minimal_codewords_check};
use chaincode_core::characters::{
    quadratic_gauss_sum, quadratic_gauss_sum_closed_form, square_nonsquare_sums,
    CHAR_SUM_TOLERANCE, EXACT_SUM_TOLERANCE,
};
use chaincode_core::codes::{TraceCode, ENUMERATION_BUDGET};
use chaincode_core::defining_sets::{DefiningSet, SetKind};
use chaincode_core::field::FieldContext;
use chaincode_core::ring::RingContext;
use chaincode_core::theory::{
    griesmer_sum, is_griesmer_optimal, optimality_threshold, predict_d1, predict_d2, predict_d3,
    Prediction,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use reports::{check_report, complex_json, ParamsEcho};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
    Core(chaincode_core::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<chaincode_core::Error> for CliError {
    fn from(e: chaincode_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Core(chaincode_core::Error::BudgetExceeded { .. }) => 3,
            CliError::Core(chaincode_core::Error::VerificationFailed(_)) => 2,
            CliError::Core(_) => 1,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetArg {
    D1,
    D2,
    D3,
}

impl SetArg {
    fn kind(self) -> SetKind {
        match self {
            SetArg::D1 => SetKind::D1,
            SetArg::D2 => SetKind::D2,
            SetArg::D3 => SetKind::D3,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Optimal,
    Dual,
    Minimal,
    Gauss,
    Action,
}

impl CheckKind {
    fn name(self) -> &'static str {
        match self {
            CheckKind::Optimal => "optimal",
            CheckKind::Dual => "dual",
            CheckKind::Minimal => "minimal",
            CheckKind::Gauss => "gauss",
            CheckKind::Action => "action",
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Worker count for the enumeration loops (results never depend on it).
    #[arg(long, env = "CHAINCODE_THREADS", default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WeightsArgs {
    #[arg(long, value_enum)]
    set: SetArg,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k: u32,
    /// Exponent stride for the d3 family (must divide p^m - 1).
    #[arg(long)]
    nprime: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(value_enum)]
    which: CheckKind,
    #[arg(long, value_enum)]
    set: Option<SetArg>,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    nprime: Option<u64>,
    /// Random (u', v') pairs for the action check.
    #[arg(long, default_value_t = 8)]
    trials: u32,
    #[arg(long, default_value_t = 0xC0DE)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct DumpArgs {
    #[arg(long, value_enum)]
    set: SetArg,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    nprime: Option<u64>,
    /// Directory receiving the ring-form and Gray-form dumps.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, env = "CHAINCODE_THREADS", default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Parser)]
#[command(
    name = "chaincode",
    version,
    about = "Few-weight trace codes over chain rings: exact enumeration and closed-form verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a code and confront its closed-form weight table.
    Weights(WeightsArgs),
    /// Run one verification check (optimal, dual, minimal, gauss, action).
    Check(CheckArgs),
    /// Write deterministic codeword dumps in ring and Gray form.
    Dump(DumpArgs),
    /// Run the whole desk-scale verification matrix.
    Matrix(MatrixArgs),
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let exit = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(exit);
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Weights(args) => cmd_weights(args),
        Command::Check(args) => cmd_check(args),
        Command::Dump(args) => cmd_dump(args),
        Command::Matrix(args) => cmd_matrix(args),
    }
}

pub(crate) fn build_code(
    kind: SetKind,
    p: u64,
    m: u32,
    k: u32,
    nprime: Option<u64>,
) -> Result<TraceCode, CliError> {
    let field = Arc::new(FieldContext::new(p, m)?);
    let ring = Arc::new(RingContext::new(field, k)?);
    let set = match kind {
        SetKind::D1 => DefiningSet::squares(ring)?,
        SetKind::D2 => DefiningSet::units(ring)?,
        SetKind::D3 => {
            let stride = nprime.ok_or_else(|| {
                CliError::Usage("--nprime is required for the d3 family".into())
            })?;
            DefiningSet::coset_representatives(ring, stride)?
        }
    };
    Ok(TraceCode::new(Arc::new(set))?)
}

pub(crate) fn predict(
    kind: SetKind,
    p: u64,
    m: u32,
    k: u32,
    nprime: Option<u64>,
) -> Result<Prediction, CliError> {
    Ok(match kind {
        SetKind::D1 => predict_d1(p, m, k)?,
        SetKind::D2 => predict_d2(p, m, k)?,
        SetKind::D3 => {
            let stride = nprime.ok_or_else(|| {
                CliError::Usage("--nprime is required for the d3 family".into())
            })?;
            predict_d3(p, m, k, stride)?
        }
    })
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn params_echo(
    set: Option<SetKind>,
    p: u64,
    m: u32,
    k: Option<u32>,
    nprime: Option<u64>,
    threads: Option<usize>,
) -> ParamsEcho {
    ParamsEcho {
        set: set.map(|s| s.to_string()),
        p,
        m,
        k,
        nprime,
        threads,
    }
}

fn cmd_weights(args: WeightsArgs) -> Result<i32, CliError> {
    let kind = args.set.kind();
    if kind != SetKind::D3 && args.nprime.is_some() {
        return Err(CliError::Usage("--nprime only applies to --set d3".into()));
    }
    let start = Instant::now();
    let code = build_code(kind, args.p, args.m, args.k, args.nprime)?;
    let summary = code.gray_summary(args.output.threads)?;
    let prediction = predict(kind, args.p, args.m, args.k, args.nprime)?;
    let timing_ms = start.elapsed().as_millis() as u64;

    let report = reports::weights_report(
        params_echo(
            Some(kind),
            args.p,
            args.m,
            Some(args.k),
            args.nprime,
            Some(args.output.threads),
        ),
        &summary,
        &prediction,
        Some(timing_ms),
    );
    let text = match args.output.format {
        Format::Json => reports::to_json(&report),
        Format::Table => reports::weights_table(&report),
        Format::Csv => reports::weights_csv(&report),
    };
    write_output(&text, args.output.out.as_deref())?;

    Ok(if !prediction.applicable {
        eprintln!("no applicable closed form: {}", prediction.reason);
        4
    } else if report.matched {
        0
    } else {
        2
    })
}

fn cmd_check(args: CheckArgs) -> Result<i32, CliError> {
    let start = Instant::now();
    let (params, claimed, computed, ok, details) = match args.which {
        CheckKind::Gauss => check_gauss(&args)?,
        CheckKind::Optimal => check_optimal(&args)?,
        CheckKind::Dual => check_dual(&args)?,
        CheckKind::Minimal => check_minimal(&args)?,
        CheckKind::Action => check_action(&args)?,
    };
    let timing_ms = start.elapsed().as_millis() as u64;
    let report = check_report(
        args.which.name(),
        params,
        claimed,
        computed,
        ok,
        details,
        Some(timing_ms),
    );
    let text = match args.output.format {
        Format::Json => reports::to_json(&report),
        Format::Table => reports::check_table(&report),
        Format::Csv => {
            return Err(CliError::Usage(
                "csv output only applies to the weights command".into(),
            ))
        }
    };
    write_output(&text, args.output.out.as_deref())?;
    Ok(if ok { 0 } else { 2 })
}

type CheckOutcome = (ParamsEcho, Value, Value, bool, Value);

fn code_args(args: &CheckArgs) -> Result<(SetKind, u32), CliError> {
    let set = args
        .set
        .ok_or_else(|| CliError::Usage("this check needs --set".into()))?;
    let k = args
        .k
        .ok_or_else(|| CliError::Usage("this check needs --k".into()))?;
    Ok((set.kind(), k))
}

fn check_gauss(args: &CheckArgs) -> Result<CheckOutcome, CliError> {
    let ctx = FieldContext::new(args.p, args.m)?;
    let direct = quadratic_gauss_sum(&ctx)?;
    let closed = quadratic_gauss_sum_closed_form(&ctx)?;
    let (qbar, nbar) = square_nonsquare_sums(&ctx)?;
    let deviation = (direct - closed).norm();
    let pair_residual = (qbar + nbar + 1.0).norm();
    let ok = deviation < CHAR_SUM_TOLERANCE && pair_residual < EXACT_SUM_TOLERANCE;
    Ok((
        params_echo(None, args.p, args.m, None, None, None),
        complex_json(closed),
        complex_json(direct),
        ok,
        json!({
            "square_sum": complex_json(qbar),
            "nonsquare_sum": complex_json(nbar),
            "closed_form_deviation": deviation,
            "pair_sum_residual": pair_residual,
        }),
    ))
}

fn check_optimal(args: &CheckArgs) -> Result<CheckOutcome, CliError> {
    let (kind, k) = code_args(args)?;
    let code = build_code(kind, args.p, args.m, k, args.nprime)?;
    let summary = code.gray_summary(args.output.threads)?;
    let threshold = optimality_threshold(kind, args.p, k)?;
    let side_ok = match kind {
        SetKind::D1 => args.m % 2 == 1 && args.p % 4 == 3,
        SetKind::D2 => true,
        SetKind::D3 => {
            let params = code.defining_set().params().expect("d3 has parameters");
            params.char_order == 1 && (args.m % 2 == 0 || args.p % 4 == 3)
        }
    };
    let claimed = if side_ok && u64::from(args.m) >= threshold.min_m {
        json!(true)
    } else {
        Value::Null
    };
    let computed = is_griesmer_optimal(
        summary.gray_length,
        summary.gray_dimension,
        summary.min_distance,
        args.p,
    )?;
    let ok = claimed.as_bool().map_or(true, |c| c == computed);
    Ok((
        params_echo(
            Some(kind),
            args.p,
            args.m,
            Some(k),
            args.nprime,
            Some(args.output.threads),
        ),
        claimed,
        json!(computed),
        ok,
        json!({
            "code": [summary.gray_length, summary.gray_dimension, summary.min_distance],
            "threshold_m": threshold.min_m,
            "side_condition": threshold.side_condition,
            "side_condition_met": side_ok,
            "griesmer_sum_at_d": griesmer_sum(args.p, summary.gray_dimension, summary.min_distance)? as u64,
            "griesmer_sum_at_d_plus_1": griesmer_sum(args.p, summary.gray_dimension, summary.min_distance + 1)? as u64,
        }),
    ))
}

fn check_dual(args: &CheckArgs) -> Result<CheckOutcome, CliError> {
    let (kind, k) = code_args(args)?;
    let code = build_code(kind, args.p, args.m, k, args.nprime)?;
    let report = dual_low_weight_search(&code, args.output.threads)?;
    let ok = !report.support1_found && report.observed_minimum() == Some(report.claimed);
    Ok((
        params_echo(
            Some(kind),
            args.p,
            args.m,
            Some(k),
            args.nprime,
            Some(args.output.threads),
        ),
        json!(report.claimed),
        json!(report.observed_minimum()),
        ok,
        reports::dual_details(&report),
    ))
}

fn check_minimal(args: &CheckArgs) -> Result<CheckOutcome, CliError> {
    let (kind, k) = code_args(args)?;
    let code = build_code(kind, args.p, args.m, k, args.nprime)?;
    let report = minimal_codewords_check(&code, args.output.threads)?;
    let claimed = match kind {
        SetKind::D1 => {
            if (args.m >= 4 && args.m % 2 == 0) || (args.m >= 3 && args.m % 2 == 1 && args.p % 4 == 3)
            {
                json!(true)
            } else {
                Value::Null
            }
        }
        SetKind::D2 => {
            if args.m >= 2 {
                json!(true)
            } else {
                Value::Null
            }
        }
        SetKind::D3 => {
            let params = code.defining_set().params().expect("d3 has parameters");
            if params.char_order == 1 && args.m >= 2 && (args.m % 2 == 0 || args.p % 4 == 3) {
                json!(true)
            } else {
                Value::Null
            }
        }
    };
    let ok = claimed.as_bool().map_or(true, |c| c == report.all_minimal);
    Ok((
        params_echo(
            Some(kind),
            args.p,
            args.m,
            Some(k),
            args.nprime,
            Some(args.output.threads),
        ),
        claimed,
        json!(report.all_minimal),
        ok,
        reports::minimality_details(&report),
    ))
}

fn check_action(args: &CheckArgs) -> Result<CheckOutcome, CliError> {
    let (kind, k) = code_args(args)?;
    let code = build_code(kind, args.p, args.m, k, args.nprime)?;
    let check = code.regular_action_check(args.trials, args.seed)?;
    let claimed = match kind {
        SetKind::D1 | SetKind::D2 => json!(true),
        SetKind::D3 => Value::Null,
    };
    let ok = claimed.as_bool().map_or(true, |c| c == check.ok);
    Ok((
        params_echo(
            Some(kind),
            args.p,
            args.m,
            Some(k),
            args.nprime,
            Some(args.output.threads),
        ),
        claimed,
        json!(check.ok),
        ok,
        json!({ "trials": check.trials, "failure": check.failure }),
    ))
}

fn cmd_dump(args: DumpArgs) -> Result<i32, CliError> {
    let kind = args.set.kind();
    let code = build_code(kind, args.p, args.m, args.k, args.nprime)?;
    let cost = code.codeword_count() as u128 * code.ring_length() as u128;
    if cost > ENUMERATION_BUDGET {
        return Err(CliError::Core(chaincode_core::Error::BudgetExceeded {
            required: cost,
            cap: ENUMERATION_BUDGET,
        }));
    }
    std::fs::create_dir_all(&args.out)?;
    let suffix = args.nprime.map(|n| format!("_n{n}")).unwrap_or_default();
    let stem = format!("{kind}_p{}_m{}_k{}{suffix}", args.p, args.m, args.k);
    let ring_path = args.out.join(format!("{stem}_ring.txt"));
    let gray_path = args.out.join(format!("{stem}_gray.txt"));

    let ext = code.defining_set().ring().clone();
    let mut ring_out = std::io::BufWriter::new(std::fs::File::create(&ring_path)?);
    let mut gray_out = std::io::BufWriter::new(std::fs::File::create(&gray_path)?);
    for a_idx in 0..code.codeword_count() {
        let cw = code.evaluate(&ext.element_at(a_idx)?)?;
        writeln!(ring_out, "{}", code.format_ring_codeword(&cw)?)?;
        writeln!(gray_out, "{}", code.format_gray_codeword(&cw)?)?;
    }
    ring_out.flush()?;
    gray_out.flush()?;
    println!(
        "wrote {} codewords to {} and {}",
        code.codeword_count(),
        ring_path.display(),
        gray_path.display()
    );
    Ok(0)
}

fn cmd_matrix(args: MatrixArgs) -> Result<i32, CliError> {
    let report = matrix::run_matrix(args.output.threads)?;
    let text = match args.output.format {
        Format::Json => reports::to_json(&report),
        Format::Table => reports::matrix_table(&report),
        Format::Csv => {
            return Err(CliError::Usage(
                "csv output only applies to the weights command".into(),
            ))
        }
    };
    write_output(&text, args.output.out.as_deref())?;
    Ok(if report.all_pass { 0 } else { 2 })
}
