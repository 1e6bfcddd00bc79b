use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use friendly_core::automata::{
    equivalent, minimize, parse_dfa, print_dfa, to_dot, to_dot_with_labels, Dfa, MinimizeAlgo,
};
use friendly_core::experiments::{
    distinguishability_audit, gst_audit_random, injectivity_probe, run_rows, sc_table,
    unary_bound_audit, RowSpec, Settings, TableFormat,
};
use friendly_core::friendly::{word_oracle, EPredicate, OpExpr};
use friendly_core::gen::all_words;
use friendly_core::modifiers::{build_standard_labeled, BuildKind, BuildMode, DEFAULT_MAX_STATES};
use friendly_core::monsters::{monster, AlphabetKind, MonsterSpec};
use friendly_core::upseq::CharTuple;
use friendly_core::Error;

/// Friendly regular-language operations on DFAs.
#[derive(Parser, Debug)]
#[command(name = "friendly", version)]
struct Cli {
    /// Largest automaton any command may build.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_states: u64,

    /// Seed for randomized audits.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Table format for `sc`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Accessible,
    Full,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algo {
    Hopcroft,
    Moore,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Full,
    Generators,
}

impl From<Kind> for AlphabetKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Full => AlphabetKind::Full,
            Kind::Generators => AlphabetKind::Generators,
        }
    }
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct PredArgs {
    /// Operation as an expression, e.g. "root[2](L1) ^ L2".
    #[arg(long)]
    expr: Option<String>,

    /// Operation as an explicit set of characteristic tuples.
    #[arg(long)]
    eset: Option<PathBuf>,

    /// The wheel operation of the given arity.
    #[arg(long)]
    wheel: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply an operation to DFAs through the standard construction.
    Build {
        #[command(flatten)]
        pred: PredArgs,
        /// Input automata, one per argument of the operation.
        #[arg(long = "dfa", required = true, num_args = 1..)]
        dfas: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Accessible)]
        mode: Mode,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write a `state label` table naming each state's tuple.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Minimize a DFA.
    Minimize {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Hopcroft)]
        algo: Algo,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide language equivalence; exits 1 when the languages differ.
    Equiv { first: PathBuf, second: PathBuf },
    /// Render a DFA as Graphviz.
    Dot {
        input: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the monster automata for the given sizes.
    Monster {
        /// Component sizes, e.g. 2x3.
        #[arg(long)]
        sizes: String,
        #[arg(long, value_enum, default_value_t = Kind::Generators)]
        kind: Kind,
        /// Directory receiving monster_1.dfa, monster_2.dfa, ...
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Membership of a characteristic tuple in the operation's set, or of
    /// a word in the operation applied to DFAs.
    Member {
        #[command(flatten)]
        pred: PredArgs,
        /// Characteristic tuple, e.g. "0(1),(01)".
        #[arg(long, conflicts_with_all = ["dfas", "word"])]
        tuple: Option<String>,
        #[arg(long = "dfa", num_args = 1..)]
        dfas: Vec<PathBuf>,
        /// Space-separated letters; empty for the empty word.
        #[arg(long, requires = "dfas")]
        word: Option<String>,
    },
    /// Compare the construction with direct word evaluation on all short words.
    Oracle {
        #[command(flatten)]
        pred: PredArgs,
        #[arg(long = "dfa", required = true, num_args = 1..)]
        dfas: Vec<PathBuf>,
        #[arg(long, default_value_t = 7)]
        maxlen: usize,
    },
    /// State complexity on monster witnesses.
    Sc {
        #[command(flatten)]
        pred: PredArgs,
        /// Comma-separated rows: `n`, `a..b` (same size in every coordinate)
        /// or `n1xn2x...`.
        #[arg(long)]
        sizes: String,
        #[arg(long, value_enum, default_value_t = Kind::Generators)]
        kind: Kind,
    },
    /// Randomized and structural audits of the state-complexity bounds.
    Audit {
        #[command(subcommand)]
        which: AuditKind,
    },
}

#[derive(Subcommand, Debug)]
enum AuditKind {
    /// Minimal sizes of random unary operations stay within n^n - n + 1.
    Bound {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// The functions g_{s,t} fall into at most n^2 - n + 1 classes.
    Gst {
        #[arg(long, default_value_t = 50)]
        cases: usize,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
    /// Nerode classes of the wheel construction on a monster.
    Distinguish {
        #[arg(long)]
        n: usize,
    },
    /// Distinct characteristic tuples give distinct operations.
    Injectivity {
        #[arg(long, default_value_t = 50)]
        pairs: usize,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource_limit() { 3 } else { 2 })
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let max_states = usize::try_from(cli.max_states).unwrap_or(usize::MAX);
    let settings = Settings {
        max_states,
        cross_check: false,
    };
    match cli.command {
        Command::Build {
            pred,
            dfas,
            mode,
            output,
            labels,
        } => {
            let dfas = read_dfas(&dfas)?;
            let pred = resolve(&pred, Some(dfas.len()))?;
            let kind = match mode {
                Mode::Accessible => BuildKind::Accessible,
                Mode::Full => BuildKind::Full,
            };
            let built = build_standard_labeled(&pred, &dfas, BuildMode { kind, max_states })?;
            emit(output.as_deref(), &print_dfa(&built.dfa))?;
            if let Some(path) = labels {
                let table: String = built
                    .states
                    .iter()
                    .enumerate()
                    .map(|(q, t)| format!("{q} {}\n", t.token()))
                    .collect();
                write_file(&path, &table)?;
            }
            Ok(())
        }
        Command::Minimize {
            input,
            algo,
            output,
        } => {
            let algo = match algo {
                Algo::Hopcroft => MinimizeAlgo::Hopcroft,
                Algo::Moore => MinimizeAlgo::Moore,
            };
            emit(
                output.as_deref(),
                &print_dfa(&minimize(&read_dfa(&input)?, algo)),
            )
        }
        Command::Equiv { first, second } => {
            if equivalent(&read_dfa(&first)?, &read_dfa(&second)?)? {
                println!("equivalent");
                Ok(())
            } else {
                println!("not equivalent");
                Err(Failure::Violation(String::new()))
            }
        }
        Command::Dot {
            input,
            labels,
            output,
        } => {
            let d = read_dfa(&input)?;
            let dot = match labels {
                Some(path) => to_dot_with_labels(&d, &read_labels(&path, d.n_states())?),
                None => to_dot(&d),
            };
            emit(output.as_deref(), &dot)
        }
        Command::Monster {
            sizes,
            kind,
            out_dir,
        } => {
            let sizes = parse_product(&sizes)?;
            let dfas = monster(&MonsterSpec::new(sizes, kind.into())?, max_states)?;
            fs::create_dir_all(&out_dir)
                .map_err(|e| Failure::Usage(format!("{}: {e}", out_dir.display())))?;
            for (j, d) in dfas.iter().enumerate() {
                let path = out_dir.join(format!("monster_{}.dfa", j + 1));
                write_file(&path, &print_dfa(d))?;
                println!("{}", path.display());
            }
            Ok(())
        }
        Command::Member {
            pred,
            tuple,
            dfas,
            word,
        } => {
            let answer = match tuple {
                Some(text) => {
                    let chi: CharTuple = text.parse()?;
                    resolve(&pred, Some(chi.arity()))?.contains(&chi)?
                }
                None => {
                    if dfas.is_empty() {
                        return Err(Failure::Usage(
                            "member needs --tuple or --dfa with --word".into(),
                        ));
                    }
                    let dfas = read_dfas(&dfas)?;
                    let pred = resolve(&pred, Some(dfas.len()))?;
                    let word = word.unwrap_or_default();
                    let letters: Vec<&str> = word.split_whitespace().collect();
                    word_oracle(&pred, &dfas, &letters)?
                }
            };
            println!("{answer}");
            Ok(())
        }
        Command::Oracle { pred, dfas, maxlen } => {
            let dfas = read_dfas(&dfas)?;
            let pred = resolve(&pred, Some(dfas.len()))?;
            let built =
                build_standard_labeled(&pred, &dfas, BuildMode::accessible().with_cap(max_states))?
                    .dfa;
            let alphabet = built.alphabet().to_vec();
            let words = all_words(alphabet.len(), maxlen);
            for w in &words {
                let letters: Vec<&str> = w.iter().map(|&a| alphabet[a].as_str()).collect();
                if built.accepts_indices(w) != word_oracle(&pred, &dfas, &letters)? {
                    return Err(Failure::Violation(format!(
                        "disagreement on word '{}'",
                        letters.join(" ")
                    )));
                }
            }
            println!("agree on {} words up to length {maxlen}", words.len());
            Ok(())
        }
        Command::Sc { pred, sizes, kind } => {
            let first = resolve(&pred, None)?;
            let rows = parse_rows(&sizes, first.arity())?
                .into_iter()
                .map(|s| {
                    let pred = resolve(&pred, Some(s.len()))?;
                    Ok(RowSpec {
                        pred,
                        sizes: s,
                        kind: kind.into(),
                    })
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            let out = run_rows(&rows, &settings)?;
            let format = match cli.format {
                Format::Csv => TableFormat::Csv,
                Format::Md => TableFormat::Markdown,
            };
            print!("{}", sc_table(&out, format));
            if out.iter().any(|r| r.matched == Some(false)) {
                return Err(Failure::Violation(
                    "measured complexity differs from the closed form".into(),
                ));
            }
            Ok(())
        }
        Command::Audit { which } => audit(which, cli.seed, &settings),
    }
}

fn audit(which: AuditKind, seed: u64, settings: &Settings) -> CmdResult {
    let ok = match which {
        AuditKind::Bound { trials, max_n } => {
            let r = unary_bound_audit(trials, max_n, seed, settings)?;
            println!("seed {seed}");
            for row in &r.rows {
                println!(
                    "n={} trials={} max={} bound={} violations={}",
                    row.n,
                    row.trials,
                    row.max_observed,
                    row.bound,
                    row.violations.len()
                );
                for v in &row.violations {
                    println!("  {v}");
                }
            }
            r.passed()
        }
        AuditKind::Gst { cases, max_n } => {
            let r = gst_audit_random(cases, max_n, seed, settings)?;
            println!("seed {seed}");
            for (i, a) in r.iter().enumerate() {
                println!(
                    "case {i}: n={} classes={} bound={}",
                    a.n, a.classes, a.bound
                );
            }
            r.iter().all(|a| a.passed())
        }
        AuditKind::Distinguish { n } => {
            let r = distinguishability_audit(n, settings)?;
            println!(
                "n={} classes={} singletons={} merged={:?} constants_merged={}",
                r.n,
                r.total_classes,
                r.singleton_classes,
                r.multi_state_classes,
                r.constants_form_the_merged_class
            );
            r.passed()
        }
        AuditKind::Injectivity { pairs } => {
            let r = injectivity_probe(pairs, seed)?;
            println!(
                "seed {seed} pairs={} failures={}",
                r.pairs,
                r.failures.len()
            );
            for f in &r.failures {
                println!("  {f}");
            }
            r.failures.is_empty()
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation("audit found violations".into()))
    }
}

/// The predicate named by the flags. `arity` widens expressions that do not
/// mention every argument.
fn resolve(args: &PredArgs, arity: Option<usize>) -> Result<EPredicate, Failure> {
    let pred = if let Some(text) = &args.expr {
        let expr = OpExpr::parse(text)?;
        match arity {
            Some(k) if k > expr.arity() => EPredicate::compiled_with_arity(expr, k)?,
            _ => EPredicate::compiled(expr),
        }
    } else if let Some(path) = &args.eset {
        EPredicate::explicit_from_file(&read_text(path)?)?
    } else if let Some(k) = args.wheel {
        EPredicate::wheel(k)?
    } else {
        return Err(Failure::Usage(
            "one of --expr, --eset, --wheel is required".into(),
        ));
    };
    match arity {
        Some(k) if k != pred.arity() => Err(Failure::Lib(Error::ArityMismatch {
            expected: pred.arity(),
            found: k,
        })),
        _ => Ok(pred),
    }
}

fn parse_size(s: &str) -> Result<usize, Failure> {
    s.trim()
        .parse::<usize>()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("bad size '{s}'")))
}

fn parse_product(s: &str) -> Result<Vec<usize>, Failure> {
    s.split('x').map(parse_size).collect()
}

/// Rows of `--sizes`: `a..b` and bare `n` repeat the size in all `arity`
/// coordinates; `n1xn2` is taken literally.
fn parse_rows(spec: &str, arity: usize) -> Result<Vec<Vec<usize>>, Failure> {
    let mut rows = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = item.split_once("..") {
            let (a, b) = (parse_size(a)?, parse_size(b)?);
            if a > b {
                return Err(Failure::Usage(format!("empty range '{item}'")));
            }
            rows.extend((a..=b).map(|n| vec![n; arity]));
        } else if item.contains('x') {
            rows.push(parse_product(item)?);
        } else {
            rows.push(vec![parse_size(item)?; arity]);
        }
    }
    Ok(rows)
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_dfa(path: &Path) -> Result<Dfa, Failure> {
    parse_dfa(&read_text(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_dfas(paths: &[PathBuf]) -> Result<Vec<Dfa>, Failure> {
    paths.iter().map(|p| read_dfa(p)).collect()
}

/// Reads `state label` lines; states without a line keep their number.
fn read_labels(path: &Path, n: usize) -> Result<Vec<String>, Failure> {
    let mut labels: Vec<String> = (0..n).map(|q| q.to_string()).collect();
    for (i, line) in read_text(path)?.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = || {
            Failure::Usage(format!(
                "{}:{}: expected '<state> <label>'",
                path.display(),
                i + 1
            ))
        };
        let (q, label) = line.split_once(char::is_whitespace).ok_or_else(bad)?;
        let q: usize = q.parse().map_err(|_| bad())?;
        if q >= n {
            return Err(bad());
        }
        labels[q] = label.trim().to_string();
    }
    Ok(labels)
}

fn write_file(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
