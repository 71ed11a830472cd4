//! `bowtie`: construct amalgamated rings and modules over explicit
//! finite carriers, classify ideals and submodules by exhaustive
//! search, and machine-check the statement catalog over instance
//! families.
//!
//! Exit codes: 0 when every verdict holds, 1 when any counterexample
//! was found, 2 on input errors. The exit code is a function of the
//! verdict data only, and machine reports carry no timing, so a rerun
//! on the same inputs is byte identical.

mod error;
mod instance_file;
mod report;
mod runner;

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use bowtie_core::verify::{Family, StatementId};
use bowtie_core::Budget;

use error::{usage, CliError, Result};
use instance_file::Bindings;
use report::Outcome;
use runner::{AmalgamateArgs, FileInstanceArgs, Options, SuiteChoice};

#[derive(Parser)]
#[command(
    name = "bowtie",
    version,
    about = "Finite commutative algebra workbench: glued rings and modules on explicit carriers"
)]
struct Cli {
    /// Primitive step limit shared by every search (default 100000000)
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Seed for the random instance family
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Report format: human text or a stable machine document
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Reject the zero ideal in 2-absorbing ideal checks
    #[arg(long, global = true)]
    strict_nonzero: bool,

    /// Worker threads for sweeps (0 = scheduler default)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Copy, Clone, ValueEnum)]
enum FamilyArg {
    /// Zn glued to itself along every ideal, n up to --max-n
    #[value(name = "amalg-zmod")]
    AmalgZmod,
    /// Trivially glued zmod and product instances for the residual,
    /// chain, localization, and idealization statements
    #[value(name = "section2")]
    Section2,
    /// Product modules with factor-wise classifications
    #[value(name = "products")]
    Products,
    /// Z30 glued to itself along every ideal (raise --budget for the
    /// full gluing)
    #[value(name = "zmod30")]
    Zmod30,
    /// Seeded random instances
    #[value(name = "random")]
    Random,
}

#[derive(Copy, Clone, ValueEnum)]
enum SuiteArg {
    /// The worked examples with frozen outcomes
    Basic,
    /// Every gluing of Z30 with the zero submodule lifted (needs a
    /// raised --budget, about 16000000000)
    Z30,
    /// Both suites
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one binding from an instance file
    Check {
        /// Instance file
        file: PathBuf,
        /// Binding name to classify
        name: String,
    },
    /// Build the glued ring and module pair and report its shape
    Amalgamate {
        /// Instance file
        file: PathBuf,
        /// Ring hom binding R1 -> R2
        #[arg(long)]
        map: String,
        /// Ideal binding of the codomain ring
        #[arg(long)]
        ideal: String,
        /// Module hom binding M -> N over the ring hom
        #[arg(long)]
        module_map: String,
        /// Submodule binding of M to lift through the gluing
        #[arg(long)]
        submodule: Option<String>,
        /// Submodule binding of N to pull back through the projection
        #[arg(long)]
        target_submodule: Option<String>,
    },
    /// List the submodules of a module binding with classifications
    Enumerate {
        /// Instance file
        file: PathBuf,
        /// Module binding name
        name: String,
    },
    /// Localize a ring, and optionally a module and a submodule, at a
    /// multiplicative set
    Localize {
        /// Instance file
        file: PathBuf,
        /// Multiplicative set binding
        #[arg(long)]
        set: String,
        /// Module binding over the same ring
        #[arg(long)]
        module: Option<String>,
        /// Submodule binding of that module
        #[arg(long)]
        submodule: Option<String>,
    },
    /// Run checked statements over a family or over a file instance
    Verify {
        /// Built-in instance family
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Instance file (alternative to --family)
        #[arg(long)]
        file: Option<PathBuf>,
        /// Comma-separated statement ids (default: all)
        #[arg(long)]
        statements: Option<String>,
        /// Largest zmod size for amalg-zmod and section2
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        /// Largest product factor for section2
        #[arg(long, default_value_t = 4)]
        prod_max: u32,
        /// Number of random instances
        #[arg(long, default_value_t = 8)]
        count: u32,
        /// Largest carrier size for random instances
        #[arg(long, default_value_t = 10)]
        max_size: u32,
        /// Ring hom binding (file mode)
        #[arg(long)]
        map: Option<String>,
        /// Ideal binding of the codomain ring (file mode)
        #[arg(long)]
        ideal: Option<String>,
        /// Module hom binding (file mode)
        #[arg(long)]
        module_map: Option<String>,
        /// Pin the quantified submodule of M (file mode)
        #[arg(long)]
        submodule: Option<String>,
        /// Pin the quantified submodule of N (file mode)
        #[arg(long)]
        target_submodule: Option<String>,
        /// Pin the quantified multiplicative set (file mode)
        #[arg(long)]
        multset: Option<String>,
    },
    /// Run the canned example suites with frozen outcomes
    Examples {
        #[arg(long, value_enum, default_value_t = SuiteArg::Basic)]
        suite: SuiteArg,
    },
}

fn parse_statements(arg: Option<&str>) -> Result<Vec<StatementId>> {
    match arg {
        None => Ok(StatementId::ALL.to_vec()),
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| StatementId::from_str(s).map_err(CliError::Algebra))
            .collect(),
    }
}

fn load(path: &Path, opts: &Options) -> Result<Bindings> {
    instance_file::load(path, &opts.budget)
}

fn dispatch(cli: &Cli, opts: &Options) -> Result<Outcome> {
    match &cli.command {
        Command::Check { file, name } => {
            let bindings = load(file, opts)?;
            runner::check(&bindings, name, opts)
        }
        Command::Amalgamate {
            file,
            map,
            ideal,
            module_map,
            submodule,
            target_submodule,
        } => {
            let bindings = load(file, opts)?;
            runner::amalgamate(
                &bindings,
                &AmalgamateArgs {
                    map,
                    ideal,
                    module_map,
                    submodule: submodule.as_deref(),
                    target_submodule: target_submodule.as_deref(),
                },
                opts,
            )
        }
        Command::Enumerate { file, name } => {
            let bindings = load(file, opts)?;
            runner::enumerate(&bindings, name, opts)
        }
        Command::Localize {
            file,
            set,
            module,
            submodule,
        } => {
            let bindings = load(file, opts)?;
            runner::localize(&bindings, set, module.as_deref(), submodule.as_deref(), opts)
        }
        Command::Verify {
            family,
            file,
            statements,
            max_n,
            prod_max,
            count,
            max_size,
            map,
            ideal,
            module_map,
            submodule,
            target_submodule,
            multset,
        } => {
            let ids = parse_statements(statements.as_deref())?;
            match (family, file) {
                (Some(_), Some(_)) => Err(usage("--family and --file are mutually exclusive")),
                (None, None) => Err(usage("verify needs --family or --file")),
                (Some(arg), None) => {
                    let family = match arg {
                        FamilyArg::AmalgZmod => Family::AmalgZmod { max_n: *max_n },
                        FamilyArg::Section2 => Family::Section2 {
                            max_n: *max_n,
                            prod_max: *prod_max,
                        },
                        FamilyArg::Products => Family::Products,
                        FamilyArg::Zmod30 => Family::Zmod30,
                        FamilyArg::Random => Family::Random {
                            count: *count,
                            seed: opts.seed,
                            max_size: *max_size,
                        },
                    };
                    runner::verify_family(&family, &ids, opts)
                }
                (None, Some(path)) => {
                    let bindings = load(path, opts)?;
                    let map = map
                        .as_deref()
                        .ok_or_else(|| usage("file mode needs --map naming a hom binding"))?;
                    let ideal = ideal
                        .as_deref()
                        .ok_or_else(|| usage("file mode needs --ideal naming an ideal binding"))?;
                    let module_map = module_map.as_deref().ok_or_else(|| {
                        usage("file mode needs --module-map naming a modhom binding")
                    })?;
                    runner::verify_file(
                        &bindings,
                        &FileInstanceArgs {
                            map,
                            ideal,
                            module_map,
                            submodule: submodule.as_deref(),
                            target_submodule: target_submodule.as_deref(),
                            multset: multset.as_deref(),
                        },
                        &ids,
                        opts,
                    )
                }
            }
        }
        Command::Examples { suite } => {
            let choice = match suite {
                SuiteArg::Basic => SuiteChoice::Basic,
                SuiteArg::Z30 => SuiteChoice::Z30,
                SuiteArg::All => SuiteChoice::All,
            };
            runner::examples(choice, opts)
        }
    }
}

fn real_main() -> i32 {
    let cli = Cli::parse();
    let opts = Options {
        budget: cli.budget.map(Budget::new).unwrap_or_default(),
        seed: cli.seed,
        strict_nonzero: cli.strict_nonzero,
    };
    let result = if cli.jobs > 0 {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build()
        {
            Ok(pool) => pool.install(|| dispatch(&cli, &opts)),
            Err(e) => Err(usage(format!("cannot build a {}-thread pool: {e}", cli.jobs))),
        }
    } else {
        dispatch(&cli, &opts)
    };
    match result {
        Ok(outcome) => {
            match cli.format {
                Format::Text => print!("{}", outcome.text),
                Format::Machine => {
                    let rendered = serde_json::to_string_pretty(&outcome.machine)
                        .expect("reports serialize");
                    println!("{rendered}");
                }
            }
            if outcome.failures == 0 {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn main() {
    std::process::exit(real_main());
}
