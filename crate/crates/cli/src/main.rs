use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rcrsbg::benchmark::ExecuteMode;
use rcrsbg_cli::inspect::{cmd_inspect, InspectOptions};
use rcrsbg_cli::report::{cmd_report, format_reports, ReportOptions};
use rcrsbg_cli::run::{cmd_run, load_config, RunOptions};
use rcrsbg_cli::CliError;

#[derive(Parser)]
#[command(name = "rcrsbg", version, about = "Risk-constrained interactive planner benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep (or a single trial) and write a results directory.
    Run(RunArgs),
    /// Recompute metrics, plot data and charts from a results directory.
    Report(ReportArgs),
    /// Print the root policy tables of a diagnostics or policy JSON file.
    Inspect(InspectArgs),
    /// Parse and validate an experiment config.
    ValidateConfig {
        config: PathBuf,
        /// Print the effective config with every default filled in.
        #[arg(long)]
        print: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Execute {
    Sample,
    Mode,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Planner(s), comma separated: rcrsbg, rcrsbg-fullinfo, rsbg, mdp, cooperative.
    #[arg(long, value_delimiter = ',')]
    planner: Vec<String>,
    /// Risk level(s) in [0, 1], comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    beta: Vec<f64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Run only this trial id.
    #[arg(long)]
    trial: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum)]
    execute_mode: Option<Execute>,
    /// Results directory; defaults to a new run directory under the results root.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "RCRSBG_RESULTS", default_value = "results")]
    results_root: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    dir: PathBuf,
    /// Skip the SVG charts.
    #[arg(long)]
    no_svg: bool,
    #[arg(long)]
    tau_a: Option<f64>,
    #[arg(long)]
    max_time: Option<f64>,
}

#[derive(Args)]
struct InspectArgs {
    file: PathBuf,
    #[arg(long)]
    step: Option<u32>,
    #[arg(long)]
    all_steps: bool,
    #[arg(long, default_value_t = 0.01)]
    eps_col: f64,
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run(a) => {
            let opts = RunOptions {
                config: a.config,
                planners: a.planner,
                betas: a.beta,
                trials: a.trials,
                trial: a.trial,
                seed: a.seed,
                iterations: a.iterations,
                jobs: a.jobs,
                execute_mode: a.execute_mode.map(|m| match m {
                    Execute::Sample => ExecuteMode::Sample,
                    Execute::Mode => ExecuteMode::Mode,
                }),
                out: a.out,
                results_root: a.results_root,
            };
            let summary = cmd_run(&opts)?;
            print!("{}", format_reports(&summary.reports));
            println!("results: {}", summary.dir.display());
        }
        Command::Report(a) => {
            let opts = ReportOptions { dir: a.dir.clone(), svg: !a.no_svg, tau_a: a.tau_a, max_time: a.max_time };
            let reports = cmd_report(&opts)?;
            print!("{}", format_reports(&reports));
            println!("wrote {}", a.dir.join("metrics.csv").display());
        }
        Command::Inspect(a) => {
            let opts = InspectOptions { step: a.step, all_steps: a.all_steps, eps_col: a.eps_col };
            print!("{}", cmd_inspect(&a.file, opts)?);
        }
        Command::ValidateConfig { config, print } => {
            let cfg = load_config(Some(&config))?;
            if print {
                print!("{}", cfg.to_toml());
            } else {
                let planners: Vec<String> = cfg.sweep.planners.iter().map(|p| p.to_string()).collect();
                println!(
                    "{}: ok ({:?}, {} trials, planners {}, betas {:?})",
                    config.display(),
                    cfg.scenario.kind,
                    cfg.scenario.trials,
                    planners.join(","),
                    cfg.sweep.betas
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
