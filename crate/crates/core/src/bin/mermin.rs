use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mermin_core::bounds::{self, BoundState, Branch, DickeState, MaximizeOptions, Mode};
use mermin_core::eigenops::{eigen_basis, table1_catalog, verify_identities, CatalogState};
use mermin_core::format::round_json;
use mermin_core::instructional::{
    device_verdict, parity_certificate, solve, Device, InstructionalSystem, SolveReport,
};
use mermin_core::state::{named_state, SymCoeffs};
use mermin_core::{Error, Result};

const JSON_DIGITS: usize = 15;

#[derive(Parser)]
#[command(
    name = "mermin",
    version,
    about = "Mermin devices for GHZ and Dicke states"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a state's amplitude vector as JSON.
    State {
        #[arg(long)]
        id: String,
        /// Pair coefficients for tv31/tv41/tv42, comma separated.
        #[arg(long)]
        coeffs: Option<SymCoeffs>,
    },
    /// Compute the commuting eigenoperator basis of a state.
    Eigenops {
        #[arg(long)]
        state: String,
        #[arg(long)]
        coeffs: Option<SymCoeffs>,
    },
    /// Verify the operator identities; exits with 2 on any failure.
    Identities,
    /// Solve an instructional-set system.
    Instr(InstrArgs),
    /// Maximize the Mermin expectation of a state over measurement settings.
    Bounds {
        #[arg(long)]
        state: String,
        #[arg(long, default_value = "uniform")]
        mode: String,
        #[arg(long, default_value_t = bounds::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = bounds::DEFAULT_STARTS)]
        starts: usize,
    },
    /// Sample the collinear landscape on a grid and write CSV.
    Contour {
        #[arg(long)]
        state: String,
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
        #[arg(long, default_value_t = 101)]
        res: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct InstrArgs {
    /// Built-in device, e.g. u3, u3-sub, u4-3, tv31, mu3=1, tv41, tv42-21.
    #[arg(
        long,
        conflicts_with = "system_file",
        required_unless_present = "system_file"
    )]
    device: Option<String>,
    /// JSON list of {"expr", "target"} equations.
    #[arg(long)]
    system_file: Option<PathBuf>,
    /// Number of solutions to print.
    #[arg(long, default_value_t = 16)]
    limit: usize,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(v: Value) {
    use std::io::Write;
    let v = round_json(v, JSON_DIGITS);
    let text = serde_json::to_string_pretty(&v).expect("serializable");
    // a closed pipe downstream is not an error for us
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn catalog_for(id: &str) -> Option<CatalogState> {
    match id {
        "v31" | "w3" => Some(CatalogState::TildeV31),
        "v41" => Some(CatalogState::TildeV41),
        "v42" => Some(CatalogState::TildeV42),
        other => CatalogState::from_id(other).ok(),
    }
}

fn cmd_eigenops(id: &str, coeffs: Option<&SymCoeffs>) -> Result<Value> {
    let v = named_state(id, coeffs)?;
    let basis = eigen_basis(&v)?;
    let ops: Vec<Value> = basis
        .operators
        .iter()
        .zip(&basis.eigenvalues)
        .map(|(op, g)| json!({ "operator": op.to_string(), "eigenvalue": g }))
        .collect();
    let mut out = json!({
        "state": id,
        "n": v.n(),
        "dimension": basis.len(),
        "commuting": basis.pairwise_commute()?,
        "max_residual": basis.max_residual()?,
        "basis": ops,
    });
    if let Some(cat) = catalog_for(id) {
        let coeffs = coeffs.filter(|_| cat.family().is_some());
        let row = table1_catalog(cat, coeffs)?;
        let mut entries = Vec::new();
        for ((label, _, _), (op, g)) in cat
            .row()
            .iter()
            .zip(row.operators.iter().zip(&row.eigenvalues))
        {
            let implied = basis.implied_eigenvalue(op)?;
            entries.push(json!({
                "label": label,
                "operator": op.to_string(),
                "eigenvalue": g,
                "in_span": implied.is_some(),
            }));
        }
        out["catalog"] = json!({
            "row": entries,
            "max_residual": row.max_residual()?,
            "commuting": row.pairwise_commute()?,
        });
    }
    Ok(out)
}

fn solutions_json(report: &SolveReport, limit: usize) -> Value {
    let mut v = json!({
        "count": report.count,
        "solutions": to_value(&report.solutions.iter().take(limit).collect::<Vec<_>>()),
    });
    if let Some(w) = &report.witness_values {
        let cut: serde_json::Map<String, Value> = w
            .iter()
            .map(|(k, vals)| {
                (
                    k.clone(),
                    to_value(&vals.iter().take(limit).collect::<Vec<_>>()),
                )
            })
            .collect();
        v["witness_values"] = Value::Object(cut);
    }
    v
}

fn cmd_instr(args: &InstrArgs) -> Result<Value> {
    if let Some(id) = &args.device {
        let verdict = device_verdict(&Device::from_id(id)?)?;
        let mut out = json!({
            "device": verdict.device,
            "explainable": verdict.explainable,
            "certificate": verdict.certificate,
        });
        merge(&mut out, solutions_json(&verdict.report, args.limit));
        return Ok(out);
    }
    let path = args.system_file.as_ref().expect("clap enforces one source");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let sys = InstructionalSystem::from_json(&text)?;
    let report = solve(&sys)?;
    let mut out = json!({
        "system": path.display().to_string(),
        "n": sys.n(),
        "explainable": report.count > 0,
        "certificate": parity_certificate(&sys),
    });
    merge(&mut out, solutions_json(&report, args.limit));
    Ok(out)
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn cmd_bounds(id: &str, mode: &str, seed: u64, starts: usize) -> Result<Value> {
    let mode = Mode::from_id(mode)?;
    let opts = MaximizeOptions { starts, seed };
    let (r, state) = match BoundState::from_id(id) {
        Ok(st) => (
            bounds::maximize_catalog(st, mode, &opts)?,
            st.id().to_string(),
        ),
        Err(_) => (
            bounds::maximize(&named_state(id, None)?, mode, &opts)?,
            id.to_string(),
        ),
    };
    eprintln!("mu = {} at the reported setting", r.signed_value);
    Ok(json!({
        "state": state,
        "mode": to_value(&mode),
        "seed": seed,
        "value": r.value,
        "target": r.target,
        "gap": r.gap,
        "setting": { "x": r.setting.x(), "y": r.setting.y() },
    }))
}

fn cmd_contour(id: &str, sign: &str, res: usize, out: &PathBuf) -> Result<()> {
    let grid = bounds::contour(DickeState::from_id(id)?, Branch::from_symbol(sign)?, res)?;
    std::fs::write(out, grid.to_csv())
        .map_err(|e| Error::Parse(format!("{}: {e}", out.display())))?;
    let (m, x3, y3) = grid.max_abs();
    eprintln!(
        "wrote {}x{} grid to {}; max |mu| = {m} at ({x3}, {y3})",
        res,
        res,
        out.display()
    );
    Ok(())
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    match &cli.command {
        Command::State { id, coeffs } => emit(to_value(&named_state(id, coeffs.as_ref())?)),
        Command::Eigenops { state, coeffs } => emit(cmd_eigenops(state, coeffs.as_ref())?),
        Command::Identities => {
            let report = verify_identities();
            emit(json!({ "all_passed": report.all_passed(), "checks": to_value(&report.checks) }));
            if report.exit_code() != 0 {
                let names: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
                return Err(Failure::Verification(format!(
                    "failed: {}",
                    names.join(", ")
                )));
            }
        }
        Command::Instr(args) => emit(cmd_instr(args)?),
        Command::Bounds {
            state,
            mode,
            seed,
            starts,
        } => emit(cmd_bounds(state, mode, *seed, *starts)?),
        Command::Contour {
            state,
            sign,
            res,
            out,
        } => cmd_contour(state, sign, *res, out)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(2)
        }
    }
}
