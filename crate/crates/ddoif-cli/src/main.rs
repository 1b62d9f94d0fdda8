use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use ddoif::TextFormat;

mod commands;

#[derive(Parser)]
#[command(
    name = "ddoif",
    version,
    about = "Pack, unpack, inspect, and validate DDOIF .ddof containers",
    after_help = "Exit codes: 0 success, 1 findings with errors, 2 malformed input, 3 I/O or usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pack a descriptor and media files into a .ddof container
    Pack {
        /// Descriptor file (YAML, JSON, or XML; stored as canonical JSON)
        #[arg(short = 'd', long = "descriptor", value_name = "DESC")]
        descriptor: PathBuf,
        /// Output path for the container
        #[arg(short = 'o', long = "output", value_name = "OUT")]
        output: PathBuf,
        /// Media files, packed in argument order
        #[arg(value_name = "MEDIA")]
        media: Vec<PathBuf>,
        /// Override the format tag inferred from a file's extension;
        /// INDEX is the zero-based position in the MEDIA list
        #[arg(long = "format", value_name = "TAG@INDEX")]
        format: Vec<String>,
    },
    /// Unpack a container into a descriptor.json plus one file per media chunk
    Unpack {
        /// Container to unpack
        #[arg(value_name = "IN")]
        input: PathBuf,
        /// Directory to write into (created if absent)
        #[arg(short = 'o', long = "output", value_name = "DIR")]
        output: PathBuf,
    },
    /// Show the header, chunk table, and integrity findings of a container
    Inspect {
        /// Container to inspect
        #[arg(value_name = "IN")]
        input: PathBuf,
        /// Emit the report as JSON instead of a table
        #[arg(long)]
        json: bool,
    },
    /// Check a container's integrity and its descriptor against a dictionary
    Validate {
        /// Container to validate
        #[arg(value_name = "IN")]
        input: PathBuf,
        /// Dictionary file to validate against
        #[arg(long = "dict", value_name = "PATH", required_unless_present = "seed", conflicts_with = "seed")]
        dict: Option<PathBuf>,
        /// Validate against the built-in seed dictionary
        #[arg(long)]
        seed: bool,
    },
    /// Dictionary tooling: lint, stats, convert
    Dict {
        #[command(subcommand)]
        action: DictAction,
    },
}

#[derive(Subcommand)]
enum DictAction {
    /// Check class names against the naming conventions
    Lint {
        #[arg(value_name = "PATH")]
        path: PathBuf,
    },
    /// Per-name occurrence statistics over the class tree
    Stats {
        #[arg(value_name = "PATH")]
        path: PathBuf,
        /// Show only the K most frequent names
        #[arg(long, value_name = "K")]
        top: Option<usize>,
    },
    /// Rewrite a dictionary in another text format on standard output
    Convert {
        #[arg(value_name = "PATH")]
        path: PathBuf,
        /// Target format: yaml, json, or xml
        #[arg(long, value_name = "FORMAT")]
        to: TextFormat,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => commands::EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match cli.command {
        Command::Pack {
            descriptor,
            output,
            media,
            format,
        } => commands::pack::run(&descriptor, &output, &media, &format),
        Command::Unpack { input, output } => commands::unpack::run(&input, &output),
        Command::Inspect { input, json } => commands::inspect::run(&input, json),
        Command::Validate { input, dict, seed } => {
            commands::validate::run(&input, dict.as_deref(), seed)
        }
        Command::Dict { action } => match action {
            DictAction::Lint { path } => commands::dict::lint(&path),
            DictAction::Stats { path, top } => commands::dict::stats(&path, top),
            DictAction::Convert { path, to } => commands::dict::convert(&path, to),
        },
    };
    ExitCode::from(code as u8)
}
