//! Command-line front end.
//!
//! Exit codes: 0 success or unique decode, 1 usage/parse/other error,
//! 2 ambiguous decode, 3 infeasible parameters.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use atomcode::channel::{redundant_decomposition, transmit, transmit_explicit};
use atomcode::codes::singleton_bound;
use atomcode::experiment::{run_experiment, ExperimentConfig};
use atomcode::invariant::{distance, n_count};
use atomcode::io::{format_subspace, parse_atom_list, parse_code, parse_subspace};
use atomcode::oracle::count_minimal_decompositions;
use atomcode::{AtomicDecomposition, BigCount, ChannelParams, DecodeOutcome, ErasureModel, Error, FieldSpec, Metric, Subspace};
use clap::{Parser, Subcommand};

const EXIT_ERROR: u8 = 1;
const EXIT_AMBIGUOUS: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

#[derive(Parser)]
#[command(name = "atomcode", version, about = "Subspace codes with atomic decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact number of minimal atomic decompositions of a dim-dimensional space.
    Nvalue {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        dim: usize,
    },
    /// Distance between two subspace files.
    Dist {
        #[arg(long)]
        metric: Metric,
        a: PathBuf,
        b: PathBuf,
    },
    /// Pass a subspace through the atomic operator channel.
    Channel {
        input: PathBuf,
        /// Number of atoms in the transmitted decomposition (default 2·dim).
        #[arg(long)]
        redundancy: Option<usize>,
        #[arg(long, conflicts_with = "erasure_prob")]
        erasures: Option<usize>,
        #[arg(long)]
        erasure_prob: Option<f64>,
        #[arg(long, default_value_t = 0)]
        insertions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Explicit decomposition, e.g. "1 0 0 0; 0 1 0 0".
        #[arg(long)]
        atoms: Option<String>,
        /// Explicit erasures; with --insert-atoms, replaces the random channel.
        #[arg(long)]
        erase_atoms: Option<String>,
        #[arg(long)]
        insert_atoms: Option<String>,
        #[arg(long)]
        dump_transcript: Option<PathBuf>,
    },
    /// Minimum-distance decoding of a received subspace.
    Decode {
        #[arg(long)]
        metric: Metric,
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        received: PathBuf,
    },
    /// Singleton-type bound as a CSV row `q,N,k,D,s_star,delta_eff,bound`.
    Bound {
        #[arg(long)]
        q: u64,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "D")]
        d: BigCount,
    },
    /// Compare the brute-force decomposition count with the closed form.
    Verify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        dim: usize,
    },
    /// Run a seeded experiment described by a key=value config file.
    Experiment {
        config: PathBuf,
        #[arg(long)]
        serial: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    Exit(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_subspace(path: &Path) -> Result<Subspace, Failure> {
    parse_subspace(&read(path)?).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Nvalue { q, dim } => println!("{}", n_count(dim, q)?),
        Command::Dist { metric, a, b } => {
            let (a, b) = (load_subspace(&a)?, load_subspace(&b)?);
            println!("{}", distance(metric, &a, &b)?);
        }
        Command::Channel {
            input,
            redundancy,
            erasures,
            erasure_prob,
            insertions,
            seed,
            atoms,
            erase_atoms,
            insert_atoms,
            dump_transcript,
        } => {
            let s = load_subspace(&input)?;
            let (spec, n) = (s.spec(), s.ambient_dim());
            let explicit = erase_atoms.is_some() || insert_atoms.is_some();
            let decomposition = match (&atoms, redundancy) {
                (Some(list), _) => AtomicDecomposition::new(s.clone(), parse_atom_list(spec, n, list)?)?,
                (None, None) if explicit || s.is_zero() => basis_decomposition(&s)?,
                (None, k) => {
                    let cap = atomcode::channel::max_decomposition_size(&s) as usize;
                    redundant_decomposition(&s, k.unwrap_or((2 * s.dim()).min(cap)), seed)?
                }
            };
            let transcript = if explicit {
                let list = |l: &Option<String>| l.as_deref().map_or(Ok(Vec::new()), |t| parse_atom_list(spec, n, t));
                transmit_explicit(&decomposition, &list(&erase_atoms)?, &list(&insert_atoms)?)?
            } else {
                let erasures = match erasure_prob {
                    Some(p) => ErasureModel::Iid(p),
                    None => ErasureModel::FixedCount(erasures.unwrap_or(0)),
                };
                transmit(&decomposition, &ChannelParams { erasures, insertions, seed })?
            };
            if let Some(path) = dump_transcript {
                write(&path, &transcript.to_text())?;
            }
            print!("{}", format_subspace(&transcript.output));
        }
        Command::Decode { metric, code, received } => {
            let code = parse_code(&read(&code)?).map_err(|e| Failure::Io(format!("{}: {e}", code.display())))?;
            let u = load_subspace(&received)?;
            let r = code.decode(&u, metric)?;
            match r.outcome {
                DecodeOutcome::Unique(i) => println!("{i} {}", r.distance),
                DecodeOutcome::Ambiguous(ties) => {
                    let ties: Vec<String> = ties.iter().map(usize::to_string).collect();
                    println!("AMBIGUOUS {}", ties.join(" "));
                    return Err(Failure::Exit(EXIT_AMBIGUOUS));
                }
            }
        }
        Command::Bound { q, n, k, d } => println!("{}", singleton_bound(q, n, k, &d)?.csv_row()),
        Command::Verify { q, dim } => {
            let spec = FieldSpec::new(q)?;
            let oracle = count_minimal_decompositions(&Subspace::full(spec, dim))?;
            let formula = n_count(dim, q)?;
            let ok = oracle == formula;
            println!("oracle={oracle} formula={formula} {}", if ok { "PASS" } else { "FAIL" });
            if !ok {
                return Err(Failure::Exit(EXIT_ERROR));
            }
        }
        Command::Experiment { config, serial, output } => {
            let cfg = ExperimentConfig::parse(&read(&config)?)?;
            let csv = run_experiment(&cfg, !serial)?.to_csv();
            match output {
                Some(path) => write(&path, &csv)?,
                None => print!("{csv}"),
            }
        }
    }
    Ok(())
}

/// The canonical basis rows as a minimal decomposition.
fn basis_decomposition(s: &Subspace) -> Result<AtomicDecomposition, Error> {
    let atoms = s
        .basis()
        .row_iter()
        .map(|r| atomcode::Atom::new(s.spec(), r.to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    AtomicDecomposition::new(s.clone(), atoms)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Exit(code)) => ExitCode::from(code),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Infeasible(_) => EXIT_INFEASIBLE,
                _ => EXIT_ERROR,
            })
        }
    }
}
