use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use loccoh::corpus::{random_instance_over, InstanceKind};
use loccoh_cli::job::parse_field;
use loccoh_cli::{parse_spec, run, CliError, Command, JobSpec};

#[derive(Parser)]
#[command(
    name = "loccoh",
    version,
    about = "Local cohomology invariants of monomial ideals"
)]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    sub: Option<Sub>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Sub {
    /// Print a reproducible random job.
    Random {
        /// squarefree, pure-graph, dim1, general-monomial, quotient or cm-with-parameter
        kind: String,
        /// Number of variables.
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "lyubeznik")]
        cmd: String,
        #[arg(long)]
        field: Option<String>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Job file in JSON; reads stdin when absent or `-`.
    job: Option<PathBuf>,
    /// Human-readable output instead of JSON.
    #[arg(long)]
    text: bool,
    /// Override the job's field ("Q" or "F<p>").
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; defaults to all cores.
    #[arg(long, env = "LOCCOH_WORKERS")]
    workers: Option<usize>,
    /// Bass scan box as `lo,hi`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_box)]
    scan_box: Option<[i32; 2]>,
    /// Override the job's command.
    #[arg(long)]
    cmd: Option<String>,
    #[arg(long)]
    level: Option<usize>,
    /// Straightness samples for verify-all.
    #[arg(long)]
    samples: Option<usize>,
    /// Leave timing out of the report.
    #[arg(long)]
    no_timing: bool,
}

fn parse_box(s: &str) -> Result<[i32; 2], String> {
    let (lo, hi) = s.split_once(',').ok_or("expected lo,hi")?;
    let p = |t: &str| t.trim().parse::<i32>().map_err(|e| e.to_string());
    Ok([p(lo)?, p(hi)?])
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => text = std::fs::read_to_string(p)?,
        _ => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn apply_overrides(spec: &mut JobSpec, a: &RunArgs) -> Result<(), CliError> {
    if let Some(f) = &a.field {
        spec.field = f.clone();
    }
    if let Some(c) = &a.cmd {
        spec.cmd = c.parse()?;
    }
    let o = &mut spec.options;
    o.seed = a.seed.or(o.seed);
    o.level = a.level.or(o.level);
    o.scan_box = a.scan_box.or(o.scan_box);
    o.samples = a.samples.or(o.samples);
    Ok(())
}

fn run_job(a: &RunArgs) -> Result<ExitCode, CliError> {
    let text = read_input(a.job.as_ref())?;
    let mut spec = parse_spec(&text)?;
    apply_overrides(&mut spec, a)?;
    let job = spec.resolve(Some(&text))?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = a.workers {
        pool = pool.num_threads(w.max(1));
    }
    let pool = pool.build().map_err(|e| CliError::Usage(e.to_string()))?;
    let mut report = pool.install(|| run(&job))?;
    if a.no_timing {
        report.timing_ms = None;
    }
    if a.text {
        print!("{}", report.text);
    } else {
        println!("{}", report.to_json());
    }
    Ok(if report.verification_failed {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn random_job(
    kind: &str,
    n: usize,
    seed: u64,
    cmd: &str,
    field: Option<&str>,
) -> Result<ExitCode, CliError> {
    let kind: InstanceKind = kind.parse()?;
    let field = field
        .map(parse_field)
        .transpose()?
        .unwrap_or(loccoh::linalg::ScalarField::Rationals);
    let cmd: Command = cmd.parse()?;
    let inst = random_instance_over(kind, n, seed, field)?;
    println!("{}", JobSpec::from_instance(&inst, cmd).to_json());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.sub {
        Some(Sub::Random {
            kind,
            n,
            seed,
            cmd,
            field,
        }) => random_job(kind, *n, *seed, cmd, field.as_deref()),
        None => run_job(&cli.run),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let body = serde_json::json!({ "error": e.report() });
            println!(
                "{}",
                serde_json::to_string_pretty(&body).expect("error reports serialize")
            );
            eprintln!("loccoh: {e}");
            ExitCode::from(2)
        }
    }
}
