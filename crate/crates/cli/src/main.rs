mod suites;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use mcbound::bounds::{pigeonhole_report, BigCount};
use mcbound::topology::{self, generate_up_to_with_progress, Progress, TopologySet};
use mcbound::{Circuit, Error};

/// Gate count from which generation runs only with `--allow-long`.
const LONG_K: usize = 6;

/// Published class counts for k = 1..6.
const TABLE2: [u64; 6] = [1, 2, 8, 88, 3564, 555_709];

#[derive(Debug, Parser)]
#[command(
    name = "mcbound",
    version,
    about = "XOR-AND circuit topologies and multiplicative complexity bounds"
)]
struct Cli {
    /// Worker threads for parallel sections; never changes results.
    #[arg(long, global = true, env = "MCBOUND_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write one representative per class of well-layered minimal topologies with k gates.
    Generate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=topology::MAX_GENERATE_K as u64))]
        k: u64,
        #[arg(long)]
        out: PathBuf,
        /// Required for k >= 6.
        #[arg(long)]
        allow_long: bool,
    },
    /// Count topology classes for k = 1..max-k and compare with the published table.
    Table2 {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..=6))]
        max_k: u64,
        /// Required for max-k = 6.
        #[arg(long)]
        allow_long: bool,
    },
    /// Print the counting bounds and the pigeonhole verdict for n inputs and k gates.
    Prove {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=24))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=64))]
        k: u32,
        /// Number of topology classes.
        #[arg(long, conflicts_with = "topologies")]
        classes: Option<u64>,
        /// Topology set file whose member count is used as the class count.
        #[arg(long)]
        topologies: Option<PathBuf>,
    },
    /// Run a self-check suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest gate count for the oracle-topologies suite.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=4))]
        max_k: u64,
        /// Random circuits for the rewrites suite.
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Print the truth table of a circuit file.
    Eval { circuit: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    OracleTopologies,
    Rewrites,
    Completeness,
    M3,
}

/// A failure to report on stderr.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
        {
            eprintln!("error: cannot configure {w} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Generate { k, out, allow_long } => cmd_generate(k as usize, &out, allow_long),
        Command::Table2 { max_k, allow_long } => cmd_table2(max_k as usize, allow_long),
        Command::Prove {
            n,
            k,
            classes,
            topologies,
        } => cmd_prove(n, k, classes, topologies),
        Command::Verify {
            suite,
            max_k,
            cases,
            seed,
        } => match suite {
            Suite::OracleTopologies => suites::oracle_topologies(max_k as usize),
            Suite::Rewrites => suites::rewrites(cases, seed),
            Suite::Completeness => suites::completeness(),
            Suite::M3 => suites::m3(),
        },
        Command::Eval { circuit } => cmd_eval(&circuit),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn long_run_guard(k: usize, allow_long: bool) -> Outcome {
    if k >= LONG_K && !allow_long {
        return Err(Failure(format!(
            "k = {k} is a long computation; pass --allow-long to run it"
        )));
    }
    Ok(())
}

fn report_progress(p: &Progress) {
    eprintln!(
        "k={}: extended {} parents of {} gates by a layer of {}, {} classes so far",
        p.gates, p.parents, p.parent_gates, p.layer_width, p.classes_seen
    );
}

fn generate_sets(max_k: usize, verbose: bool) -> Result<Vec<TopologySet>, Failure> {
    let quiet = |_: &Progress| {};
    let progress: &(dyn Fn(&Progress) + Sync) = if verbose { &report_progress } else { &quiet };
    Ok(generate_up_to_with_progress(max_k, progress)?)
}

fn cmd_generate(k: usize, out: &PathBuf, allow_long: bool) -> Outcome {
    long_run_guard(k, allow_long)?;
    let start = Instant::now();
    let set = generate_sets(k, k >= LONG_K)?.pop().expect("k >= 1");
    fs::write(out, set.to_text())
        .map_err(|e| Failure(format!("cannot write {}: {e}", out.display())))?;
    eprintln!("generated k={k} in {:.2?}", start.elapsed());
    println!("{}", set.len());
    Ok(())
}

fn cmd_table2(max_k: usize, allow_long: bool) -> Outcome {
    long_run_guard(max_k, allow_long)?;
    let start = Instant::now();
    let sets = generate_sets(max_k, max_k >= LONG_K)?;
    println!("k |T_k/≡|");
    let mut mismatches = Vec::new();
    for set in &sets {
        let k = set.gate_count();
        println!("{k} {}", set.len());
        if set.len() as u64 != TABLE2[k - 1] {
            mismatches.push(format!(
                "k={k}: computed {}, expected {}",
                set.len(),
                TABLE2[k - 1]
            ));
        }
    }
    eprintln!("computed in {:.2?}", start.elapsed());
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure(format!(
            "table mismatch: {}",
            mismatches.join("; ")
        )))
    }
}

fn cmd_prove(n: u32, k: u32, classes: Option<u64>, topologies: Option<PathBuf>) -> Outcome {
    let t = match (classes, topologies) {
        (Some(c), _) => c,
        (None, Some(path)) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
            let set = TopologySet::parse(&text)
                .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            if set.gate_count() != k as usize {
                return Err(Failure(format!(
                    "{} holds {}-gate topologies, expected {k}",
                    path.display(),
                    set.gate_count()
                )));
            }
            set.len() as u64
        }
        (None, None) => {
            return Err(Failure(
                "missing topology class count: pass --classes or --topologies".into(),
            ))
        }
    };
    if t == 0 {
        return Err(Failure("the class count must be at least 1".into()));
    }
    let report = pigeonhole_report(n, k, &BigCount::from(t))?;
    print!("{report}");
    if report.verdict {
        Ok(())
    } else {
        Err(Failure(format!(
            "the bound does not separate: refined_bound >= |B_{n}|"
        )))
    }
}

fn cmd_eval(path: &PathBuf) -> Outcome {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    let circuit = Circuit::parse(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    println!("{}", circuit.truth_table()?);
    Ok(())
}
