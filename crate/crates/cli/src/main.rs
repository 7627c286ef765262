mod report;

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use somp::json::{
    parse_raw_family, somp_to_json, state_set_to_json, stone_to_json, Document, MorphismDoc,
    RawFamily,
};
use somp::morphism::DEFAULT_SEARCH_BUDGET;
use somp::somp::DEFAULT_CLOSURE_CAP;
use somp::states::{dirac_states, enumerate_states_with, SolverConfig, DEFAULT_STATE_LIMIT};
use somp::{
    closure, copy_on_transversal, enumerate_delta_states, find_isomorphism, make_bigsets,
    make_even, make_powerset, make_product, natural_pd_representation, stone_representation,
    validate, Event, Somp, StateSet,
};

use report::{Analysis, MorphismReport};

#[derive(Parser)]
#[command(
    name = "somp",
    version,
    about = "Analyze finite set-representable orthomodular posets"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    /// Write output here instead of standard output (`-`).
    #[arg(long, short, global = true, default_value = "-")]
    output: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Powerset,
    Even,
    Bigsets,
    Product,
}

#[derive(Subcommand)]
enum Command {
    /// Build a standard family.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        /// Number of points (powerset, even, bigsets).
        #[arg(long)]
        n: Option<usize>,
        /// First big set for `bigsets`, as comma-separated points.
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        /// Second big set for `bigsets`, as comma-separated points.
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
        /// Left factor for `product`.
        #[arg(long)]
        left: Option<PathBuf>,
        /// Right factor for `product`.
        #[arg(long)]
        right: Option<PathBuf>,
    },
    /// Check the axioms and list every violation.
    Validate { file: PathBuf },
    /// Close a family of generators under complement and disjoint union.
    Close {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: usize,
    },
    /// Structural flags, partition size and state counts.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// The natural point-distinguishing representation.
    Quotient {
        file: PathBuf,
        /// Emit the copy on least block members instead.
        #[arg(long)]
        transversal: bool,
    },
    /// Enumerate two-valued states.
    States {
        file: PathBuf,
        /// Keep only symmetric-difference states.
        #[arg(long)]
        delta: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Representation whose points are states.
    Stone {
        file: PathBuf,
        /// `dirac`, `all`, `delta`, or a state set file.
        #[arg(long)]
        states: String,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Verify a morphism table between two families.
    CheckMorphism {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
    },
    /// Search for an isomorphism between two families.
    FindIso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
}

#[derive(clap::Args)]
struct SolverArgs {
    /// Maximum number of states to enumerate.
    #[arg(long, env = "SOMP_STATE_LIMIT", default_value_t = DEFAULT_STATE_LIMIT)]
    limit: usize,
    /// Solver threads.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            limit: self.limit,
            workers: self.workers,
        }
    }
}

enum Failure {
    Somp(somp::Error),
    Io(PathBuf, io::Error),
    Usage(String),
    /// Already reported on the error stream.
    Reported,
}

impl From<somp::Error> for Failure {
    fn from(e: somp::Error) -> Self {
        Failure::Somp(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Somp(e) => write!(f, "{}: {e}", e.name()),
            Failure::Io(path, e) => write!(f, "Io: {}: {e}", path.display()),
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Reported => Ok(()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read_input(path: &Path) -> Outcome<String> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Io(path.into(), e))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| Failure::Io(path.into(), e))?;
    }
    Ok(text)
}

/// A possibly invalid family, or the family carried by any other document.
fn read_raw_family(path: &Path) -> Outcome<RawFamily> {
    let text = read_input(path)?;
    match parse_raw_family(&text) {
        Ok(raw) => Ok(raw),
        Err(e) => match Document::parse(&text).and_then(Document::into_somp) {
            Ok(s) => Ok(RawFamily {
                universe_size: s.universe_size(),
                events: s.events().to_vec(),
            }),
            Err(_) => Err(e.into()),
        },
    }
}

/// Any document that carries a family.
fn read_family(path: &Path) -> Outcome<Somp> {
    Ok(Document::parse(&read_input(path)?)?.into_somp()?)
}

fn write_output(path: &Path, text: &str) -> Outcome<()> {
    let mut text = text.to_owned();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    if path == Path::new("-") {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())
            .and_then(|()| out.flush())
            .map_err(|e| Failure::Io(path.into(), e))
    } else {
        fs::write(path, text).map_err(|e| Failure::Io(path.into(), e))
    }
}

fn points(n: usize, list: &[usize]) -> Outcome<Event> {
    Ok(Event::from_members(n, list.iter().copied())?)
}

fn generate(
    family: Family,
    n: Option<usize>,
    a: &[usize],
    b: &[usize],
    left: Option<&Path>,
    right: Option<&Path>,
) -> Outcome<Somp> {
    let need_n = || n.ok_or_else(|| Failure::Usage("--n is required for this family".into()));
    Ok(match family {
        Family::Powerset => make_powerset(need_n()?)?,
        Family::Even => make_even(need_n()?)?,
        Family::Bigsets => {
            let n = need_n()?;
            make_bigsets(n, &points(n, a)?, &points(n, b)?)?
        }
        Family::Product => {
            let (Some(l), Some(r)) = (left, right) else {
                return Err(Failure::Usage("product needs --left and --right".into()));
            };
            make_product(&read_family(l)?, &read_family(r)?)?
        }
    })
}

fn state_source(s: &Somp, source: &str, config: SolverConfig) -> Outcome<StateSet> {
    Ok(match source {
        "dirac" => dirac_states(s),
        "all" => enumerate_states_with(s, config)?,
        "delta" => enumerate_delta_states(s, Some(config.limit))?,
        file => match Document::parse(&read_input(Path::new(file))?)? {
            Document::StateSet(ss) => ss,
            other => {
                return Err(Failure::Somp(somp::Error::Malformed(format!(
                    "expected a state set, found a {}",
                    other.kind()
                ))))
            }
        },
    })
}

fn run(cli: Cli) -> Outcome<String> {
    let table = cli.format == Format::Table;
    match cli.command {
        Command::Generate {
            family,
            n,
            a,
            b,
            left,
            right,
        } => {
            let s = generate(family, n, &a, &b, left.as_deref(), right.as_deref())?;
            Ok(family_out(&s, table))
        }
        Command::Validate { file } => {
            let raw = read_raw_family(&file)?;
            let v = validate(raw.universe_size, &raw.events)?;
            match v.somp {
                Some(s) => Ok(family_out(&s, table)),
                None => {
                    for violation in &v.report.violations {
                        eprintln!(
                            "somp: {}: {}",
                            violation.name(),
                            report::violation_labels(violation)
                        );
                    }
                    eprintln!(
                        "somp: InvalidFamily: {} violations",
                        v.report.violations.len()
                    );
                    Err(Failure::Reported)
                }
            }
        }
        Command::Close { file, cap } => {
            let raw = read_raw_family(&file)?;
            let s = closure(raw.universe_size, &raw.events, cap)?;
            Ok(family_out(&s, table))
        }
        Command::Analyze { file, solver } => {
            let s = read_family(&file)?;
            let a = Analysis::compute(&s, solver.config())?;
            Ok(if table { a.to_table() } else { a.to_json() })
        }
        Command::Quotient { file, transversal } => {
            let s = read_family(&file)?;
            let q = natural_pd_representation(&s);
            if transversal {
                let t = copy_on_transversal(&q);
                Ok(if table {
                    report::transversal_table(&t)
                } else {
                    somp::json::transversal_to_json(&t)
                })
            } else if table {
                Ok(report::quotient_table(&s, &q))
            } else {
                Ok(somp::json::quotient_to_json(&q))
            }
        }
        Command::States {
            file,
            delta,
            solver,
        } => {
            let s = read_family(&file)?;
            let states = if delta {
                enumerate_delta_states(&s, Some(solver.limit))?
            } else {
                enumerate_states_with(&s, solver.config())?
            };
            if table {
                Ok(report::states_table(&s, &states)?)
            } else {
                Ok(state_set_to_json(&states))
            }
        }
        Command::Stone {
            file,
            states,
            solver,
        } => {
            let s = read_family(&file)?;
            let ss = state_source(&s, &states, solver.config())?;
            let r = stone_representation(&s, &ss)?;
            Ok(if table {
                report::stone_table(&s, &r)
            } else {
                stone_to_json(&r)
            })
        }
        Command::CheckMorphism {
            source,
            target,
            map,
        } => {
            let src = read_family(&source)?;
            let dst = read_family(&target)?;
            let doc = match Document::parse(&read_input(&map)?)? {
                Document::Morphism(m) => m,
                other => {
                    return Err(Failure::Somp(somp::Error::Malformed(format!(
                        "expected a morphism table, found a {}",
                        other.kind()
                    ))))
                }
            };
            let m = doc.bind(&src, &dst)?;
            let r = MorphismReport::new(&m);
            let out = if table { r.to_table() } else { r.to_json() };
            if r.morphism {
                Ok(out)
            } else {
                write_output(&cli.output, &out)?;
                Err(Failure::Somp(somp::Error::NotAMorphism(r.violations.len())))
            }
        }
        Command::FindIso { a, b, budget } => {
            let l = read_family(&a)?;
            let k = read_family(&b)?;
            let found = find_isomorphism(&l, &k, budget)?;
            Ok(match (found, table) {
                (Some(m), false) => MorphismDoc::from_table(&m).to_json(),
                (Some(m), true) => report::morphism_table(&m),
                (None, false) => "null".into(),
                (None, true) => "not isomorphic".into(),
            })
        }
    }
}

fn family_out(s: &Somp, table: bool) -> String {
    if table {
        report::family_table(s)
    } else {
        somp_to_json(s)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    let result = run(cli).and_then(|text| write_output(&output, &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("somp: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Reported) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("somp: {e}");
            ExitCode::FAILURE
        }
    }
}
