// SPDX-License-Identifier: Apache-2.0

//! `greyrank` command-line interface.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use greyrank_core::{
    demo_input, emit_report, load_input, run_assessment, write_trace, AssessmentInput, Error, InputFormat,
    OutputFormat, RunConfig, ZeroingMode,
};

#[derive(Parser, Debug)]
#[command(name = "greyrank", version, about = "Dynamic multi-criteria risk ranking by volumetric grey incidence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Assess a dataset and print or write the ranked report
    Assess(AssessArgs),
    /// Check a dataset against every input invariant
    Validate(ValidateArgs),
    /// Assess the bundled wildland-urban interface case study
    Demo(ReportArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Dataset: a json file or a csv-bundle directory
    #[arg(long, short)]
    input: PathBuf,
    /// Override input format detection
    #[arg(long, value_enum)]
    input_format: Option<CliInputFormat>,
}

#[derive(Args, Debug)]
struct AssessArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    report: ReportArgs,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Report format
    #[arg(long, short, value_enum, default_value = "text")]
    format: CliOutputFormat,
    /// Write the report here instead of standard output
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Dump every intermediate matrix as csv into this directory
    #[arg(long)]
    trace_dir: Option<PathBuf>,
    /// Zero-starting-point image used before volumes are taken
    #[arg(long, value_enum, default_value = "first-column")]
    zeroing: CliZeroing,
    /// Decimals shown in the text report
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=12))]
    decimals: u8,
    /// Use the weights exactly as given instead of rescaling them to sum to 1
    #[arg(long)]
    no_renormalize: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CliInputFormat {
    Json,
    CsvBundle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CliOutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CliZeroing {
    FirstColumn,
    FirstElement,
    None,
}

impl From<CliZeroing> for ZeroingMode {
    fn from(z: CliZeroing) -> Self {
        match z {
            CliZeroing::FirstColumn => ZeroingMode::FirstColumn,
            CliZeroing::FirstElement => ZeroingMode::FirstElement,
            CliZeroing::None => ZeroingMode::None,
        }
    }
}

impl ReportArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            zeroing_mode: self.zeroing.into(),
            renormalize_weights: !self.no_renormalize,
            report_decimals: self.decimals,
            emit_trace: self.trace_dir.is_some(),
            output_format: match self.format {
                CliOutputFormat::Text => OutputFormat::Text,
                CliOutputFormat::Json => OutputFormat::Json,
                CliOutputFormat::Csv => OutputFormat::Csv,
            },
        }
    }
}

impl InputArgs {
    fn load(&self) -> Result<AssessmentInput, Error> {
        let format = match self.input_format {
            Some(CliInputFormat::Json) => InputFormat::Json,
            Some(CliInputFormat::CsvBundle) => InputFormat::CsvBundle,
            None => InputFormat::detect(&self.input),
        };
        load_input(&self.input, format)
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Validation(_) => 1,
        Error::Io { .. } | Error::Parse { .. } | Error::Config(_) => 2,
        _ => 3,
    }
}

fn assess(input: &AssessmentInput, args: &ReportArgs) -> Result<(), Error> {
    let config = args.config();
    let report = run_assessment(input, &config)?;
    if let Some(dir) = &args.trace_dir {
        let files = write_trace(&report, dir)?;
        eprintln!("wrote {} trace files to {}", files.len(), dir.display());
    }
    emit_report(&report, &config, args.output.as_deref())
}

fn validate(args: &InputArgs) -> Result<(), Error> {
    let input = args.load()?;
    println!(
        "{}: valid ({} areas, {} indices, {} periods)",
        args.input.display(),
        input.area_count(),
        input.index_count(),
        input.period_count()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Assess(args) => args.input.load().and_then(|input| assess(&input, &args.report)),
        Command::Validate(args) => validate(&args.input),
        Command::Demo(args) => assess(&demo_input(), args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
