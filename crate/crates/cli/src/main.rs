//! Command-line front end: named verification suites, representation
//! construction from recipe files, and report emission.

mod recipes;
mod report;
mod suites;

use clap::{Parser, Subcommand};
use report::{Status, SuiteReport};

#[derive(Parser)]
#[command(
    name = "qmodrep",
    about = "Exact verification suites for mod-p representations of the quaternion unit group"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite (or `all`).
    Verify {
        /// suite id, or `all`
        suite: String,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        level: u8,
        #[arg(long, default_value_t = 0xDEFA17)]
        seed: u64,
        /// write the JSON report here
        #[arg(long)]
        json: Option<String>,
        /// worker threads for case parallelism (0 = all cores)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Build a representation from a recipe file and print its socle data.
    Construct { recipe: String },
    /// Build the graded module of a recipe and print multiplicity data.
    Gr { recipe: String },
    /// List the available suites.
    Suites,
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify {
            suite,
            p,
            level,
            seed,
            json,
            jobs,
        } => verify(&suite, p, level, seed, json.as_deref(), jobs),
        Command::Construct { recipe } => run_recipe(&recipe, false),
        Command::Gr { recipe } => run_recipe(&recipe, true),
        Command::Suites => {
            for id in suites::SUITE_IDS {
                println!("{id}");
            }
            0
        }
    };
    std::process::exit(code);
}

fn verify(suite: &str, p: u64, level: u8, seed: u64, json: Option<&str>, jobs: usize) -> i32 {
    if jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    if !qmodrep_core::arith::SUPPORTED_PRIMES.contains(&p) {
        eprintln!(
            "unsupported prime {p}; compiled for {:?}",
            qmodrep_core::arith::SUPPORTED_PRIMES
        );
        return 2;
    }
    let ids: Vec<&str> = if suite == "all" {
        suites::SUITE_IDS.to_vec()
    } else if suites::SUITE_IDS.contains(&suite) {
        vec![suite]
    } else {
        eprintln!(
            "unknown suite '{suite}'; available: {}",
            suites::SUITE_IDS.join(", ")
        );
        return 2;
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for id in ids {
        match suites::run_suite(id, p, seed, level) {
            Some(r) => {
                println!("{}", r.human_line());
                if let Some(c) = &r.counterexample {
                    if r.status == Status::Failed {
                        eprintln!(
                            "counterexample: {}",
                            serde_json::to_string_pretty(c).unwrap_or_default()
                        );
                    }
                }
                reports.push(r);
            }
            None => {
                eprintln!("unknown suite '{id}'");
                return 2;
            }
        }
    }
    if let Some(path) = json {
        let doc = serde_json::to_string_pretty(&reports).expect("serializable reports");
        if let Err(e) = std::fs::write(path, doc) {
            eprintln!("cannot write {path}: {e}");
            return 2;
        }
    }
    reports
        .iter()
        .map(|r| r.exit_code())
        .max()
        .unwrap_or(2)
}

fn run_recipe(path: &str, graded: bool) -> i32 {
    match recipes::run_recipe(path, graded) {
        Ok(doc) => {
            // tolerate closed pipes (e.g. `| head`)
            use std::io::Write;
            let _ = writeln!(
                std::io::stdout(),
                "{}",
                serde_json::to_string_pretty(&doc).unwrap_or_default()
            );
            0
        }
        Err(e) => {
            eprintln!("recipe error: {e}");
            2
        }
    }
}
