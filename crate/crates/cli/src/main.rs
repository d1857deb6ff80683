mod commands;
mod document;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use commands::{Failure, Inputs, Outcome};
use document::Document;

#[derive(Parser)]
#[command(name = "sdclab", version, about = "Deformation problems: DGLAs, SDCs and module structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the axioms of the input object.
    Check(Common),
    /// Cohomology dimensions of a DGLA or SDC.
    Cohomology(Common),
    /// Walk an element up the small-extension tower of a ring.
    Deform(Common),
    /// Round-trip a DGLA through its exponential SDC.
    Translate(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    ring: Option<PathBuf>,
    #[arg(long)]
    element: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    cap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

fn read(path: &PathBuf, hasher: &mut Sha256) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    hasher.update((text.len() as u64).to_le_bytes());
    hasher.update(text.as_bytes());
    document::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(c: &Common) -> Result<Inputs, Failure> {
    let mut hasher = Sha256::new();
    let doc = read(&c.input, &mut hasher)?;
    let ring = match &c.ring {
        Some(p) => match read(p, &mut hasher)? {
            Document::Ring(spec) => Some(Arc::new(spec.build()?)),
            other => return Err(Failure::Input(format!("--ring expects a ring document, got {}", other.kind()))),
        },
        None => None,
    };
    let element = match &c.element {
        Some(p) => match read(p, &mut hasher)? {
            Document::Element(e) => Some(e),
            other => return Err(Failure::Input(format!("--element expects an element document, got {}", other.kind()))),
        },
        None => None,
    };
    Ok(Inputs {
        doc,
        ring,
        element,
        digest: format!("{:x}", hasher.finalize()),
        cap: c.cap,
        seed: c.seed,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, run): (&Common, fn(&Inputs) -> Outcome) = match &cli.command {
        Command::Check(c) => (c, commands::check),
        Command::Cohomology(c) => (c, commands::cohomology),
        Command::Deform(c) => (c, commands::deform),
        Command::Translate(c) => (c, commands::translate),
    };
    match load(common).and_then(|inputs| run(&inputs)) {
        Ok(report) => {
            if common.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                print!("{}", commands::render_text(&report));
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
