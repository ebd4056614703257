use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use shapelab::batch::{self, Failure, Loaded};
use shapelab::http::{self, DEFAULT_PORT};
use shapelab::Service;

#[derive(Parser)]
#[command(name = "shapelab", version, about = "Compile, render and run shapelab graphics programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Typecheck a program; diagnostics go to standard error.
    Check { path: PathBuf },
    /// Render the initial view as SVG.
    Render {
        path: PathBuf,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render frames with `model.time` stepping from `--from` to `--to`.
    Animate {
        path: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        fps: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Replay a JSON event script; writes final.svg and trace.json.
    Run {
        path: PathBuf,
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, default_value_t = DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Origin allowed by CORS, e.g. http://localhost:5173, or `*`.
        #[arg(long)]
        allow_origin: Option<String>,
    },
}

fn with_program(path: &Path, f: impl FnOnce(Loaded) -> Result<(), Failure>) -> Result<(), Failure> {
    let loaded = batch::load(path)?;
    for w in &loaded.warnings {
        eprintln!("{}", w.cli_line());
    }
    f(loaded)
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Check { path } => with_program(&path, |_| Ok(())),
        Command::Render { path, out } => with_program(&path, |l| {
            if let Some(svg) = batch::render_to(l.program, out.as_deref())? {
                print!("{svg}");
            }
            Ok(())
        }),
        Command::Animate { path, from, to, fps, out } => with_program(&path, |l| {
            let n = batch::animate(l.program, from, to, fps, &out)?;
            eprintln!("wrote {n} frames to {}", out.display());
            Ok(())
        }),
        Command::Run { path, script, out } => with_program(&path, |l| {
            let trace = batch::run(l.program, &script, &out)?;
            eprintln!("applied {} events; wrote {}", trace.steps.len(), out.display());
            Ok(())
        }),
        Command::Serve { port, host, allow_origin } => {
            tracing_subscriber::fmt().with_writer(std::io::stderr).init();
            let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Io(e.to_string()))?;
            runtime
                .block_on(http::serve(Arc::new(Service::default()), &host, port, allow_origin.as_deref()))
                .map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            for line in f.lines() {
                eprintln!("{line}");
            }
            ExitCode::from(f.exit_code())
        }
    }
}
