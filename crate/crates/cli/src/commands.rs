//! Subcommand implementations. Each returns the text to print on standard
//! output.

use std::fmt::Write;
use std::fs;
use std::path::Path;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tlyndon_core::duplication::tau;
use tlyndon_core::factorizer::{factorize_with, Options, StateSets};
use tlyndon_core::marked::{MarkedExpression, MarkerStyle};
use tlyndon_core::oracle::{check_factorization, prime_verdict, PrimeVerdict};
use tlyndon_core::random::{self, Shape};
use tlyndon_core::{
    compare, factorize_structural, Alphabet, Automaton, CompareOutcome, Factorization, RatExpr,
};

use crate::dot::to_dot;
use crate::report::{BatchRecord, FactorizeReport};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "tlyndon",
    version,
    about = "Lyndon factorization of rational transfinite words"
)]
pub struct Cli {
    /// Ordered alphabet, smallest letter first.
    #[arg(long, global = true, default_value = "abcdefghijklmnopqrstuvwxyz")]
    pub alphabet: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Automaton,
    Structural,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prime factorization of an expression.
    Factorize {
        expr: String,
        #[arg(long, value_enum, default_value_t = Engine::Automaton)]
        engine: Engine,
        #[arg(long)]
        json: bool,
        /// Print the duplicated expression with its cut markers.
        #[arg(long)]
        marked: bool,
        /// Use `||` instead of `‖` for main cuts.
        #[arg(long)]
        ascii: bool,
        /// Print every pair added to the history.
        #[arg(long)]
        trace: bool,
    },
    /// The duplicated expression.
    Tau { expr: String },
    /// The compiled automaton.
    Compile {
        expr: String,
        #[arg(long)]
        dot: bool,
    },
    /// Lexicographic comparison of two words.
    Compare { left: String, right: String },
    /// Primality test.
    Prime { expr: String },
    /// Factorize every line of a file, printing JSON lines.
    Batch { file: std::path::PathBuf },
    /// Cross-check both engines on random expressions.
    Selftest {
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let alphabet = Alphabet::new(cli.alphabet.chars())?;
    match &cli.command {
        Command::Factorize {
            expr,
            engine,
            json,
            marked,
            ascii,
            trace,
        } => {
            let flags = FactorizeFlags {
                engine: *engine,
                json: *json,
                marked: *marked,
                ascii: *ascii,
                trace: *trace,
            };
            factorize(expr, flags, &alphabet)
        }
        Command::Tau { expr } => {
            let e = RatExpr::parse(expr, &alphabet)?;
            Ok(format!("{}\n", tau(&e).display(&alphabet)))
        }
        Command::Compile { expr, dot } => compile(expr, *dot, &alphabet),
        Command::Compare { left, right } => {
            let x = RatExpr::parse(left, &alphabet)?;
            let y = RatExpr::parse(right, &alphabet)?;
            Ok(format!("{}\n", compare_symbol(&compare(&x, &y))))
        }
        Command::Prime { expr } => prime(expr, &alphabet),
        Command::Batch { file } => batch(file, &alphabet),
        Command::Selftest { cases, seed } => selftest(*cases, *seed),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FactorizeFlags {
    pub engine: Engine,
    pub json: bool,
    pub marked: bool,
    pub ascii: bool,
    pub trace: bool,
}

struct Outcome {
    factorization: Factorization,
    sets: Option<StateSets>,
}

fn run_engines(e: &RatExpr, engine: Engine, record: bool) -> Result<Outcome, CliError> {
    let automaton = |record| {
        factorize_with(
            e,
            Options {
                check_level: 1,
                record,
            },
        )
    };
    match engine {
        Engine::Automaton => {
            let (f, sets) = automaton(record)?;
            Ok(Outcome {
                factorization: f,
                sets: Some(sets),
            })
        }
        Engine::Structural => Ok(Outcome {
            factorization: factorize_structural(e)?,
            sets: None,
        }),
        Engine::Both => {
            let (f, sets) = automaton(record)?;
            let g = factorize_structural(e)?;
            if !f.equivalent(&g) {
                return Err(CliError::Internal(format!(
                    "engines disagree on {e}: automaton {f}, structural {g}"
                )));
            }
            Ok(Outcome {
                factorization: f,
                sets: Some(sets),
            })
        }
    }
}

pub fn factorize(
    text: &str,
    flags: FactorizeFlags,
    alphabet: &Alphabet,
) -> Result<String, CliError> {
    let e = RatExpr::parse(text, alphabet)?;
    if flags.engine == Engine::Structural && (flags.marked || flags.trace) {
        return Err(CliError::Input(
            "--marked and --trace need the automaton engine".into(),
        ));
    }
    let out = run_engines(&e, flags.engine, flags.trace)?;
    let style = if flags.ascii {
        MarkerStyle::Ascii
    } else {
        MarkerStyle::Unicode
    };
    let marked = out
        .sets
        .as_ref()
        .filter(|_| flags.marked)
        .map(|s| MarkedExpression::from_states(s).render(alphabet, style));

    let mut s = String::new();
    if flags.json {
        let mut report = FactorizeReport::new(
            text,
            tau(&e).display(alphabet).to_string(),
            &out.factorization,
            out.sets.as_ref(),
            alphabet,
        );
        report.marked = marked;
        if flags.trace {
            report.trace = out
                .sets
                .as_ref()
                .map(|s| s.events.iter().map(|ev| ev.to_string()).collect());
        }
        let json = serde_json::to_string(&report).expect("report serializes");
        writeln!(s, "{json}").unwrap();
        return Ok(s);
    }
    if let Some(sets) = out.sets.as_ref().filter(|_| flags.trace) {
        for ev in &sets.events {
            writeln!(s, "{ev}").unwrap();
        }
    }
    if let Some(m) = marked {
        writeln!(s, "{m}").unwrap();
    }
    writeln!(s, "{}", out.factorization.display(alphabet)).unwrap();
    Ok(s)
}

fn compile(text: &str, dot: bool, alphabet: &Alphabet) -> Result<String, CliError> {
    let e = RatExpr::parse(text, alphabet)?;
    let a = Automaton::compile(&e);
    if dot {
        return Ok(to_dot(&a, alphabet));
    }
    let mut s = String::new();
    writeln!(s, "states: {}", a.state_count()).unwrap();
    writeln!(s, "initial: {}", a.first()).unwrap();
    writeln!(s, "final: {}", a.last()).unwrap();
    writeln!(s, "word: {}", a.numbered_word(alphabet)?).unwrap();
    for (from, letter, to) in a.successors() {
        let c = alphabet.symbol(letter).unwrap_or('?');
        writeln!(s, "  {from} -{c}-> {to}").unwrap();
    }
    for l in a.limits() {
        writeln!(s, "  {{{}..{}}} => {}", l.lo, l.hi, l.target).unwrap();
    }
    Ok(s)
}

pub fn compare_symbol(outcome: &CompareOutcome) -> &'static str {
    match outcome {
        CompareOutcome::StrictlyLess { .. } => "<",
        CompareOutcome::StrictlyGreater { .. } => ">",
        CompareOutcome::Equal => "=",
        CompareOutcome::LeftIsProperPrefix => "< (prefix)",
        CompareOutcome::RightIsProperPrefix => "> (prefix)",
    }
}

fn prime(text: &str, alphabet: &Alphabet) -> Result<String, CliError> {
    let e = RatExpr::parse(text, alphabet)?;
    Ok(match prime_verdict(&e) {
        PrimeVerdict::Prime => "prime\n".to_string(),
        PrimeVerdict::SmallerSuffix { state, suffix } => format!(
            "not prime: suffix {} from state {state} is smaller\n",
            suffix.display(alphabet)
        ),
        PrimeVerdict::NotPrimitive { root, exponent } => format!(
            "not prime: power of {} with exponent {exponent}\n",
            root.display(alphabet)
        ),
    })
}

fn batch_record(line: usize, input: &str, alphabet: &Alphabet) -> BatchRecord {
    let start = Instant::now();
    let result = RatExpr::parse(input, alphabet)
        .map_err(CliError::from)
        .and_then(|e| {
            let out = run_engines(&e, Engine::Automaton, false)?;
            Ok(FactorizeReport::new(
                input,
                tau(&e).display(alphabet).to_string(),
                &out.factorization,
                out.sets.as_ref(),
                alphabet,
            ))
        });
    let ms = start.elapsed().as_secs_f64() * 1000.0;
    match result {
        Ok(r) => BatchRecord {
            line,
            input: input.to_string(),
            ok: true,
            result: Some(r),
            error: None,
            ms,
        },
        Err(err) => BatchRecord {
            line,
            input: input.to_string(),
            ok: false,
            result: None,
            error: Some(err.to_string()),
            ms,
        },
    }
}

/// One record per non-blank line that is not a `#` comment. Per-line
/// errors end up in the record.
pub fn batch_lines(content: &str, alphabet: &Alphabet) -> Vec<BatchRecord> {
    content
        .lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| batch_record(i + 1, l.trim(), alphabet))
        .collect()
}

fn batch(file: &Path, alphabet: &Alphabet) -> Result<String, CliError> {
    let content = fs::read_to_string(file)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", file.display())))?;
    let mut s = String::new();
    for r in batch_lines(&content, alphabet) {
        writeln!(
            s,
            "{}",
            serde_json::to_string(&r).expect("record serializes")
        )
        .unwrap();
    }
    Ok(s)
}

fn selftest(cases: usize, seed: u64) -> Result<String, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..cases {
        let e = random::expr(&mut rng, Shape::default());
        if let Err(msg) = selftest_case(&e) {
            failures.push(format!("{e}: {msg}"));
        }
    }
    if failures.is_empty() {
        Ok(format!(
            "selftest: {cases} cases, seed {seed}, no failures\n"
        ))
    } else {
        Err(CliError::Internal(format!(
            "selftest: {} of {cases} cases failed (seed {seed})\n{}",
            failures.len(),
            failures.join("\n")
        )))
    }
}

fn selftest_case(e: &RatExpr) -> Result<(), String> {
    let opts = Options {
        check_level: 2,
        record: false,
    };
    let (f, sets) = factorize_with(e, opts).map_err(|err| err.to_string())?;
    let g = factorize_structural(e).map_err(|err| err.to_string())?;
    if !f.equivalent(&g) {
        return Err(format!("automaton {f} vs structural {g}"));
    }
    let problems = check_factorization(e, &f, true);
    if !problems.is_empty() {
        return Err(problems.join("; "));
    }
    let n = sets.automaton.state_count() - 1;
    if sets.steps > n * n * n {
        return Err(format!("{} steps for n = {n}", sets.steps));
    }
    Ok(())
}
