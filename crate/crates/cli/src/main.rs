use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use qdrive_core::scenario::{load_config, run_scenario, ScenarioConfig, SchemeKind};
use qdrive_core::FormulaVariant;

/// Evolves one scenario under every selected quantization and writes
/// densities.csv, moments.csv and summary.json.
#[derive(Debug, Parser)]
#[command(name = "qdrive", version)]
struct Args {
    /// Scenario document (TOML, or JSON with a .json extension). Defaults apply when omitted.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory; overrides the scenario's `output_dir`.
    #[arg(long, value_name = "PATH")]
    out_dir: Option<PathBuf>,

    /// Restrict the run to these schemes (hamiltonian, S1, S2, S3). Repeatable.
    #[arg(long = "scheme", value_name = "NAME")]
    schemes: Vec<SchemeKind>,

    /// Fail on norm drift, uncertainty violations or oracle divergence.
    #[arg(long)]
    strict: bool,

    /// Also evaluate the printed closed forms and report their deviations.
    #[arg(long)]
    audit: bool,

    /// Abort instead of widening a grid that is too narrow for the run.
    #[arg(long)]
    no_auto_extend: bool,

    /// Root for output directories when neither --out-dir nor `output_dir` is given.
    #[arg(long, env = "QDRIVE_OUT_ROOT", value_name = "PATH", default_value = "qdrive-out")]
    out_root: PathBuf,
}

fn output_dir(args: &Args, config: &ScenarioConfig) -> PathBuf {
    if let Some(dir) = &args.out_dir {
        return dir.clone();
    }
    if let Some(dir) = &config.output_dir {
        return dir.clone();
    }
    let name = args
        .config
        .as_deref()
        .and_then(Path::file_stem)
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "default".into());
    args.out_root.join(name)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut config = match &args.config {
        Some(path) => match load_config(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => ScenarioConfig::default(),
    };
    if !args.schemes.is_empty() {
        config.schemes = args.schemes.clone();
        config.schemes.dedup();
    }
    if args.strict {
        config.strict = true;
    }
    if args.audit && !config.variants.contains(&FormulaVariant::PaperPrinted) {
        config.variants.push(FormulaVariant::PaperPrinted);
    }
    if args.no_auto_extend {
        config.extend_grid = false;
    }
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }

    let out = output_dir(&args, &config);
    let outcome = match run_scenario(&config, &out) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for w in &outcome.report.warnings {
        eprintln!("warning: {w}");
    }
    for s in &outcome.report.series {
        println!("{:<28} max L1 distance to hamiltonian {:.6e}", s.label, s.max_distance());
    }
    if config.variants.contains(&FormulaVariant::PaperPrinted) {
        for a in &outcome.report.audit {
            println!("audit {:<28} t = {:.6} deviation {:.6e}", a.quantity, a.t, a.deviation);
        }
    }
    for f in &outcome.files {
        println!("wrote {}", f.display());
    }
    if let Some(strict) = &outcome.strict {
        for f in &strict.failures {
            eprintln!("strict: {f}");
        }
        if !strict.passed() {
            return ExitCode::from(1);
        }
    }
    ExitCode::SUCCESS
}
