use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dsmt::{Frame, Model, DEFAULT_ENUMERATION_LIMIT};
use dsmt_cli::{
    list_lattice, load_scenario, render_json, render_table, run, write_lattice_json, write_lattice_table, CliError,
    Format, RunOptions, Style, TaskRule, Transform,
};

#[derive(Parser)]
#[command(name = "dsmt", version, about = "Fuse belief assignments with DSm and classical combination rules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the fusion tasks of a scenario file.
    Fuse {
        #[arg(long)]
        scenario: PathBuf,
        /// Run only this rule, e.g. `dsm_hybrid`, `tnorm:bounded`, `nnorm:algebraic`.
        #[arg(long)]
        rule: Option<String>,
        /// Run the comparison set of rules side by side.
        #[arg(long)]
        compare: bool,
        /// Report the pignistic probabilities and the decision (gpt or cpt).
        #[arg(long, num_args = 0..=1, default_missing_value = "gpt", value_name = "TRANSFORM")]
        decide: Option<String>,
        /// Report Bel and Pl for every nonempty element.
        #[arg(long)]
        belief: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long, default_value_t = 6)]
        precision: usize,
        /// Print full-precision values.
        #[arg(long)]
        raw: bool,
        /// Largest frame the belief table may enumerate.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        max_frame: usize,
    },
    /// List the reduced hyper-power set with DSm cardinalities.
    Lattice {
        /// Frame size, with hypotheses th1..thN under the free model.
        #[arg(long, required_unless_present = "model", conflicts_with = "model")]
        n: Option<usize>,
        /// Take the frame and model from a scenario file.
        #[arg(long)]
        model: Option<PathBuf>,
        /// Largest frame that may be enumerated (6 is the hard cap).
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        max_frame: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Parse and validate a scenario file.
    Check {
        #[arg(long)]
        scenario: PathBuf,
        /// Print the scenario back in canonical text form.
        #[arg(long)]
        echo: bool,
    },
}

fn invalid(msg: String) -> CliError {
    CliError::Validation(vec![msg])
}

fn execute(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    let emit = |out: &mut dyn Write, text: &str| {
        out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
    };
    match cli.command {
        Command::Fuse {
            scenario,
            rule,
            compare,
            decide,
            belief,
            format,
            precision,
            raw,
            max_frame,
        } => {
            let scenario = load_scenario(&scenario)?;
            let opts = RunOptions {
                rule: rule.map(|r| r.parse::<TaskRule>()).transpose().map_err(invalid)?,
                compare,
                decide: decide.map(|d| d.parse::<Transform>()).transpose().map_err(invalid)?,
                belief,
                max_frame: Some(max_frame),
            };
            let report = run(&scenario, &opts)?;
            let style = Style { precision, raw };
            let text = match format {
                Format::Table => render_table(&report, &style),
                Format::Json => render_json(&report, &style),
            };
            emit(out, &text)?;
            match report.failures() {
                0 => Ok(()),
                failed => Err(CliError::TaskFailures {
                    failed,
                    total: report.results.len(),
                }),
            }
        }
        Command::Lattice {
            n,
            model,
            max_frame,
            format,
        } => {
            let model = match (n, model) {
                (Some(n), _) => Model::free(&Frame::with_size(n)?),
                (None, Some(path)) => load_scenario(&path)?.model,
                (None, None) => unreachable!("clap requires --n or --model"),
            };
            let listing = list_lattice(&model, max_frame)?;
            match format {
                Format::Table => write_lattice_table(&listing, out),
                Format::Json => write_lattice_json(&listing, out),
            }
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })
        }
        Command::Check { scenario, echo } => {
            let s = load_scenario(&scenario)?;
            let text = if echo {
                s.to_text()
            } else {
                format!(
                    "ok: {} hypotheses, {} constraints, {} sources, {} tasks\n",
                    s.frame.len(),
                    s.constraints.len(),
                    s.sources.len(),
                    s.tasks.len()
                )
            };
            emit(out, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::BufWriter::new(std::io::stdout().lock());
    let result = execute(cli, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
