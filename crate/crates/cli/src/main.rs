use std::process::ExitCode;

use alexpoly::realize::Mode;
use alexpoly_cli::commands::{self, InputError, Source, DEFAULT_SEED, INPUT_ERROR_EXIT};
use alexpoly_cli::report::Report;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "alexpoly",
    version,
    about = "Alexander polynomials of C-groups and their realization"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Include wall-clock timing in the output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Thm1,
    Thm2,
    Thm3,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Thm1 => Mode::Thm1,
            ModeArg::Thm2 => Mode::Thm2,
            ModeArg::Thm3 => Mode::Thm3,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Alexander polynomial of a C-presentation.
    Compute {
        /// Presentation file, or `-` for stdin.
        #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
        file: Option<String>,
        /// Builtin group: example_4_1, example_4_2, g2, free:M, abelian:N, layer:Phi6, layer:t^2-1.
        #[arg(long)]
        builtin: Option<String>,
        /// Degree of the central word, for the property checks.
        #[arg(long)]
        degree: Option<u64>,
    },
    /// Build a Hurwitz C-group with the given Alexander polynomial.
    Realize {
        poly: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// Refuse constructions needing more generators than this.
        #[arg(long)]
        max_generators: Option<usize>,
    },
    /// Normal form of an integral involution.
    Decompose {
        /// Matrix file, or the matrix text itself.
        input: String,
    },
    /// Necessary properties and the realizability verdict for a polynomial.
    Check {
        poly: String,
        /// Number of irreducible components.
        #[arg(long, default_value_t = 1)]
        components: usize,
        /// Degree of the central word; defaults to the root order.
        #[arg(long)]
        degree: Option<u64>,
    },
    /// Run the builtin demonstration checks.
    Demo {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Compute { .. } => "compute",
        Command::Realize { .. } => "realize",
        Command::Decompose { .. } => "decompose",
        Command::Check { .. } => "check",
        Command::Demo { .. } => "demo",
    }
}

fn run(command: &Command) -> Result<Report, InputError> {
    match command {
        Command::Compute {
            file,
            builtin,
            degree,
        } => {
            let source = match (builtin, file) {
                (Some(b), _) => Source::Builtin(b.clone()),
                (None, Some(f)) if f == "-" => Source::Text(commands::file_or_inline("-")?),
                (None, Some(f)) => Source::Text(
                    std::fs::read_to_string(f)
                        .map_err(|e| InputError::Invalid(format!("{f}: {e}")))?,
                ),
                (None, None) => unreachable!("clap requires one source"),
            };
            commands::compute(&source, *degree)
        }
        Command::Realize {
            poly,
            mode,
            max_generators,
        } => commands::realize(poly, (*mode).into(), *max_generators),
        Command::Decompose { input } => commands::decompose_cmd(input),
        Command::Check {
            poly,
            components,
            degree,
        } => commands::check(poly, *components, *degree),
        Command::Demo { seed } => Ok(commands::demo(*seed)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = name(&cli.command);
    match run(&cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json(cli.timing)).expect("json")
                ),
                Format::Text if command == "demo" => {
                    print!("{}", commands::demo_table(&report));
                    if cli.timing {
                        if let Some(dt) = report.elapsed {
                            println!("elapsed: {:.3} ms", dt.as_secs_f64() * 1000.0);
                        }
                    }
                }
                Format::Text => print!("{}", report.to_text(cli.timing)),
            }
            ExitCode::from(commands::exit_code(&report))
        }
        Err(e) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&commands::input_error_json(command, &e))
                        .expect("json")
                ),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(INPUT_ERROR_EXIT)
        }
    }
}
