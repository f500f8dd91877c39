use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ncmodgb::modular::VerifyLevel;
use ncmodgb_cli::document::digest;
use ncmodgb_cli::run::is_failure;
use ncmodgb_cli::{bench_report, load_session, reverify, run_command, RunError, RunFlags, Suite};

#[derive(Parser)]
#[command(
    name = "ncmodgb",
    version,
    about = "Groebner bases in G-algebras over the rationals"
)]
struct Cli {
    /// Worker threads for modular runs.
    #[arg(long, global = true, env = "NCMODGB_THREADS", default_value_t = 1)]
    threads: usize,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, default_value = "full")]
    verify: String,
    /// Primes are drawn below 2^B.
    #[arg(long = "prime-bits", global = true, default_value_t = 31)]
    prime_bits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Record wall times in result documents.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every command of a session file.
    Run { session: PathBuf },
    /// Time a JSON suite of sessions under several engine configurations.
    Bench {
        suite: PathBuf,
        /// Also write the JSON table here.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Re-check a JSON result document against its session.
    Verify { session: PathBuf, document: PathBuf },
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) | Err(code) => code,
    }
}

fn run(cli: &Cli) -> Result<ExitCode, ExitCode> {
    let verify: VerifyLevel = cli.verify.parse().map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })?;
    if cli.threads == 0 || !(2..=32).contains(&cli.prime_bits) {
        eprintln!("error: --threads must be positive and --prime-bits in 2..=32");
        return Err(ExitCode::from(2));
    }
    let flags = RunFlags {
        threads: cli.threads,
        seed: cli.seed,
        verify,
        prime_bits: cli.prime_bits,
        timings: cli.timings,
        engine: None,
    };
    match &cli.cmd {
        Cmd::Run { session } => {
            let text = read(session)?;
            let s = load_session(&text).map_err(|e| {
                eprintln!("{}:{e}", session.display());
                ExitCode::from(2)
            })?;
            let d = digest(&text);
            let mut docs = Vec::new();
            let mut failed = false;
            for cmd in &s.commands {
                match run_command(&s, &d, cmd, &flags) {
                    Ok(doc) => {
                        failed |= is_failure(&doc.status);
                        if let Format::Text = cli.format {
                            println!("{}", doc.to_text());
                        }
                        docs.push(doc);
                    }
                    Err(RunError::Input(e)) => {
                        eprintln!("{}:{e}", session.display());
                        return Err(ExitCode::from(2));
                    }
                    Err(RunError::Compute(e)) => {
                        eprintln!("error: {}: {e}", cmd.text);
                        return Err(ExitCode::from(1));
                    }
                }
            }
            if let Format::Json = cli.format {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&docs).expect("documents serialize")
                );
            }
            Ok(ExitCode::from(u8::from(failed)))
        }
        Cmd::Bench { suite, json_out } => {
            let text = read(suite)?;
            let suite: Suite = serde_json::from_str(&text).map_err(|e| {
                eprintln!("{}:{}:{}: {e}", suite.display(), e.line(), e.column());
                ExitCode::from(2)
            })?;
            let report = bench_report(&suite, &flags);
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{json}"),
            }
            if let Some(path) = json_out {
                std::fs::write(path, json + "\n").map_err(|e| {
                    eprintln!("error: {}: {e}", path.display());
                    ExitCode::from(1)
                })?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { session, document } => {
            let text = read(session)?;
            let s = load_session(&text).map_err(|e| {
                eprintln!("{}:{e}", session.display());
                ExitCode::from(2)
            })?;
            let doc_text = read(document)?;
            let docs: Vec<ncmodgb_cli::ResultDocument> = serde_json::from_str(&doc_text)
                .or_else(|_| serde_json::from_str(&doc_text).map(|d| vec![d]))
                .map_err(|e| {
                    eprintln!("{}:{}:{}: {e}", document.display(), e.line(), e.column());
                    ExitCode::from(2)
                })?;
            let mut ok = true;
            for doc in &docs {
                if doc.input_digest != digest(&text) {
                    eprintln!("{}: digest does not match the session", doc.command);
                    ok = false;
                    continue;
                }
                match reverify(&s, doc) {
                    Ok(Some(true)) => println!("{}: verified", doc.command),
                    Ok(None) => println!("{}: skipped", doc.command),
                    Ok(Some(false)) => {
                        println!("{}: NOT verified", doc.command);
                        ok = false;
                    }
                    Err(e) => {
                        eprintln!("{}: {e}", doc.command);
                        ok = false;
                    }
                }
            }
            Ok(ExitCode::from(u8::from(!ok)))
        }
    }
}
