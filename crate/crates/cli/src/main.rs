use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cli::{batch_line_json, resolve_mode, run, run_batch, CliError, InputSource, RunConfig, RunMode};

/// Upper bound for the geometric middle Picard number of a hypersurface, or
/// for the Neron-Severi / endomorphism rank of a curve's Jacobian.
#[derive(Parser, Debug)]
#[command(name = "picard-bound", version)]
struct Args {
    /// Polynomial, e.g. "y^4 - x^3*z + y*z^3 + z*w^3 + w^4".
    #[arg(long, group = "source", allow_hyphen_values = true)]
    poly: Option<String>,
    /// File holding the polynomial.
    #[arg(long, group = "source")]
    file: Option<PathBuf>,
    /// Frobenius matrix in the JSON exchange format.
    #[arg(long, group = "source")]
    frobenius: Option<PathBuf>,
    /// Newline-delimited JSON configs ("-" for stdin); writes one report per line.
    #[arg(long, group = "source")]
    batch: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<RunMode>,
    /// Same as --mode tensor.
    #[arg(long)]
    tensor: bool,
    /// Prime; the first good prime is used when omitted.
    #[arg(long)]
    p: Option<u64>,
    /// Lower bound for the p-adic precision.
    #[arg(long, default_value_t = 1)]
    precision: u32,
    #[arg(long, default_value_t = 3)]
    char_bound: u64,
    /// One obstruction map for the whole Tate space.
    #[arg(long)]
    vanilla: bool,
    /// Write the Frobenius matrix to this path.
    #[arg(long)]
    emit_frobenius: Option<PathBuf>,
    /// Recompute with one more series term and digit and compare.
    #[arg(long)]
    recheck: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    json_out: Option<PathBuf>,
    #[arg(long, default_value_t = cli::DEFAULT_PRIME_CEILING)]
    prime_ceiling: u64,
    #[arg(long, env = "PICARD_THREADS")]
    threads: Option<usize>,
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::BadInput(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(CliError::BadInput(e.to_string()))
                }
                _ => Ok(()),
            }
        }
    }
}

fn batch(path: &PathBuf, out: &Option<PathBuf>) -> Result<i32, CliError> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::BadInput(e.to_string()))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?;
    }
    let results = run_batch(&text);
    let code = results.iter().filter_map(|r| r.as_ref().err()).map(|(_, e)| e.exit_code()).max().unwrap_or(0);
    let lines: Vec<String> = results.iter().map(|r| batch_line_json(r).to_string()).collect();
    let mut body = lines.join("\n");
    if out.is_some() {
        body.push('\n');
    }
    write_out(out, &body)?;
    Ok(code)
}

fn main_inner(args: Args) -> Result<i32, CliError> {
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::BadInput(e.to_string()))?;
    }
    if let Some(path) = &args.batch {
        return batch(path, &args.json_out);
    }
    let source = match (args.poly, args.file, args.frobenius) {
        (Some(s), _, _) => InputSource::Poly(s),
        (_, Some(f), _) => InputSource::File(f),
        (_, _, Some(f)) => InputSource::Frobenius(f),
        _ => {
            return Err(CliError::BadInput("one of --poly, --file, --frobenius, --batch is required".into()))
        }
    };
    let mut cfg = RunConfig::new(source);
    cfg.mode = resolve_mode(args.mode, args.tensor)?;
    cfg.p = args.p;
    cfg.precision_bound = args.precision;
    cfg.char_bound = args.char_bound;
    cfg.vanilla = args.vanilla;
    cfg.emit_frobenius = args.emit_frobenius;
    cfg.recheck = args.recheck;
    cfg.prime_ceiling = args.prime_ceiling;
    let out = run(&cfg)?;
    let text = serde_json::to_string_pretty(&out.to_json()).expect("serializable");
    write_out(&args.json_out, &text)?;
    Ok(0)
}

fn main() -> ExitCode {
    match main_inner(Args::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("picard-bound: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
