//! The `polog` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::compat::gen_random_kb;
use crate::error::{Error, Result};
use crate::formula::{parse_formula, Formula};
use crate::kb::{load_kb, write_kb, PartiallyOrderedKb};
use crate::lattice::load_timed;
use crate::limits::Limits;
use crate::report::{format_report, run_lattice, run_query, run_query_timed, Engine, Mode, QueryReport};
use crate::semantics::SemanticModel;
use crate::syntactic::{build_ker, compute_cons_with, Subbase};
use crate::Interpretation;

pub const EXIT_ENTAILED: i32 = 0;
pub const EXIT_NOT_ENTAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_DISAGREEMENT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "polog", version, about = "Reasoning with partially ordered propositional knowledge bases")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest universe whose interpretations are enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().max_atoms)]
    max_atoms: usize,
    /// Largest base whose subsets are enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().max_formulas)]
    max_formulas: usize,
    /// Most compatible total pre-orders the oracle visits.
    ///
    /// Without order relations n formulas have the ordered Bell number of
    /// extensions: 1, 3, 13, 75, 541, 4683, 47293, 545835 for n = 1..8.
    #[arg(long, global = true, default_value_t = Limits::default().max_extensions)]
    max_extensions: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a formula follows from a base.
    Entail {
        file: PathBuf,
        #[arg(long, short)]
        query: String,
        /// oracle, semantic, cons, ker, alt, or lattice for a timed file.
        #[arg(long, short, default_value = "ker")]
        engine: String,
        /// Report the elapsed time (makes the output vary between runs).
        #[arg(long)]
        timing: bool,
    },
    /// List the kernels: the inclusion-minimal preferred consistent subsets.
    Ker {
        file: PathBuf,
        /// Also report consistency-test counts.
        #[arg(long)]
        stats: bool,
    },
    /// List the preferred consistent subsets.
    Cons { file: PathBuf },
    /// List the preferred interpretations.
    MinInterps { file: PathBuf },
    /// Rewrite a base without changing what follows from it. With no flag,
    /// every step runs.
    Preprocess {
        file: PathBuf,
        /// Drop tautologies.
        #[arg(long)]
        tautologies: bool,
        /// Split formulas into clauses.
        #[arg(long)]
        cnf: bool,
        /// Drop formulas entailed by strictly preferred ones.
        #[arg(long)]
        subsumption: bool,
    },
    /// Run the four equivalent engines and check that they agree.
    Compare {
        file: PathBuf,
        #[arg(long, short)]
        query: String,
    },
    /// Plausible consequence in a timed clause base.
    Lattice {
        file: PathBuf,
        #[arg(long, short)]
        query: String,
    },
    /// Print a random base.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        atoms: usize,
        #[arg(long, default_value_t = 6)]
        formulas: usize,
        /// Probability of an order link between two formulas.
        #[arg(long, default_value_t = 0.3)]
        density: f64,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<PartiallyOrderedKb> {
    load_kb(&read(path)?)
}

fn query(text: &str) -> Result<Formula> {
    parse_formula(text).map_err(|e| Error::Invalid(format!("query: {e}")))
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn subbase_line(kb: &PartiallyOrderedKb, s: Subbase) -> String {
    let formulas: Vec<String> = s.iter().map(|i| kb.formula(i).to_string()).collect();
    format!("{} = {}", braces(&kb.labels_of(s)), braces(&formulas))
}

fn subbase_json(kb: &PartiallyOrderedKb, s: Subbase) -> Value {
    let formulas: Vec<String> = s.iter().map(|i| kb.formula(i).to_string()).collect();
    json!({ "labels": kb.labels_of(s), "formulas": formulas })
}

fn interpretation_line(w: &Interpretation) -> String {
    format!("w{} {w}", w.index())
}

struct Output<'a> {
    out: &'a mut dyn Write,
    mode: Mode,
}

impl Output<'_> {
    fn text(&mut self, s: &str) -> Result<()> {
        self.out
            .write_all(s.as_bytes())
            .map_err(|e| Error::Invalid(format!("write failed: {e}")))
    }

    fn json(&mut self, v: &Value) -> Result<()> {
        self.text(&format!("{v}\n"))
    }

    fn report(&mut self, r: &QueryReport) -> Result<()> {
        let s = format_report(r, self.mode);
        self.text(&s)
    }
}

fn verdict_code(entailed: bool) -> i32 {
    if entailed {
        EXIT_ENTAILED
    } else {
        EXIT_NOT_ENTAILED
    }
}

fn run(cli: Cli, out: &mut Output<'_>) -> Result<i32> {
    let g = &cli.global;
    let limits = Limits {
        max_atoms: g.max_atoms,
        max_formulas: g.max_formulas,
        max_extensions: g.max_extensions,
    };
    match cli.command {
        Command::Entail {
            file,
            query: q,
            engine,
            timing,
        } => {
            let engine: Engine = engine.parse()?;
            let psi = query(&q)?;
            let report = if engine == Engine::Lattice {
                run_lattice(&load_timed(&read(&file)?)?, &psi)
            } else {
                let kb = load(&file)?;
                if timing {
                    run_query_timed(&kb, &psi, engine, &limits)?
                } else {
                    run_query(&kb, &psi, engine, &limits)?
                }
            };
            out.report(&report)?;
            Ok(verdict_code(report.entailed))
        }
        Command::Lattice { file, query: q } => {
            let report = run_lattice(&load_timed(&read(&file)?)?, &query(&q)?);
            out.report(&report)?;
            Ok(verdict_code(report.entailed))
        }
        Command::Ker { file, stats } => {
            let kb = load(&file)?;
            let r = build_ker(&kb);
            if out.mode == Mode::Json {
                let mut v = json!({ "kernels": r.kernels.iter().map(|&k| subbase_json(&kb, k)).collect::<Vec<_>>() });
                if stats {
                    v["branch_consistency_tests"] = json!(r.branch_consistency_tests);
                    v["init_consistency_tests"] = json!(r.init_consistency_tests);
                }
                out.json(&v)?;
            } else {
                let mut s: String = r.kernels.iter().map(|&k| subbase_line(&kb, k) + "\n").collect();
                if stats {
                    s += &format!(
                        "branch consistency tests: {}\ninitialization consistency tests: {}\n",
                        r.branch_consistency_tests, r.init_consistency_tests
                    );
                }
                out.text(&s)?;
            }
            Ok(EXIT_ENTAILED)
        }
        Command::Cons { file } => {
            let kb = load(&file)?;
            let cons = compute_cons_with(&kb, &limits)?;
            if out.mode == Mode::Json {
                out.json(&json!({ "cons": cons.iter().map(|&c| subbase_json(&kb, c)).collect::<Vec<_>>() }))?;
            } else {
                let s: String = cons.iter().map(|&c| subbase_line(&kb, c) + "\n").collect();
                out.text(&s)?;
            }
            Ok(EXIT_ENTAILED)
        }
        Command::MinInterps { file } => {
            let kb = load(&file)?;
            let minimal = SemanticModel::new(&kb, &limits)?.interpretations();
            if out.mode == Mode::Json {
                let items: Vec<Value> = minimal
                    .iter()
                    .map(|w| {
                        let values: serde_json::Map<String, Value> =
                            w.values().into_iter().map(|(a, v)| (a, Value::Bool(v))).collect();
                        json!({ "index": w.index(), "values": values })
                    })
                    .collect();
                out.json(&json!({ "atoms": kb.universe().atoms(), "minimal_interpretations": items }))?;
            } else {
                let s: String = minimal.iter().map(|w| interpretation_line(w) + "\n").collect();
                out.text(&s)?;
            }
            Ok(EXIT_ENTAILED)
        }
        Command::Preprocess {
            file,
            tautologies,
            cnf,
            subsumption,
        } => {
            let all = !(tautologies || cnf || subsumption);
            let mut kb = load(&file)?;
            if all || tautologies {
                kb = kb.remove_tautologies();
            }
            if all || cnf {
                kb = kb.cnf_transform()?;
            }
            if all || subsumption {
                kb = kb.remove_subsumed();
            }
            let text = write_kb(&kb);
            if out.mode == Mode::Json {
                out.json(&json!({ "kb": text }))?;
            } else {
                out.text(&text)?;
            }
            Ok(EXIT_ENTAILED)
        }
        Command::Compare { file, query: q } => {
            let kb = load(&file)?;
            let psi = query(&q)?;
            let reports = Engine::EQUIVALENT
                .iter()
                .map(|&e| run_query(&kb, &psi, e, &limits))
                .collect::<Result<Vec<_>>>()?;
            let agree = reports.windows(2).all(|w| w[0].entailed == w[1].entailed);
            if out.mode == Mode::Json {
                let verdicts: serde_json::Map<String, Value> = reports
                    .iter()
                    .map(|r| (r.engine.name().to_string(), json!(r.entailed)))
                    .collect();
                out.json(&json!({ "query": psi.to_string(), "entailed": verdicts, "agree": agree }))?;
            } else {
                let mut s = format!("query: {psi}\n");
                for r in &reports {
                    let verdict = if r.entailed { "ENTAILED" } else { "NOT ENTAILED" };
                    s += &format!("{}: {verdict}\n", r.engine);
                }
                s += if agree { "engines agree\n" } else { "ENGINES DISAGREE\n" };
                out.text(&s)?;
            }
            Ok(if agree { verdict_code(reports[0].entailed) } else { EXIT_DISAGREEMENT })
        }
        Command::Gen {
            seed,
            atoms,
            formulas,
            density,
        } => {
            if atoms == 0 || formulas == 0 {
                return Err(Error::Invalid("--atoms and --formulas must be at least 1".into()));
            }
            let text = write_kb(&gen_random_kb(seed, atoms, formulas, density));
            if out.mode == Mode::Json {
                out.json(&json!({ "kb": text }))?;
            } else {
                out.text(&text)?;
            }
            Ok(EXIT_ENTAILED)
        }
    }
}

/// Runs the command line `argv` (program name first) and returns the exit
/// status.
pub fn execute<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_ENTAILED
            };
        }
    };
    let mode = if cli.global.json { Mode::Json } else { Mode::Text };
    let mut output = Output { out, mode };
    match run(cli, &mut output) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_cap() {
                EXIT_CAP
            } else {
                EXIT_USAGE
            }
        }
    }
}
