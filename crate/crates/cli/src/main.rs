//! `frx`: match, enumerate, normalize and build automata for forkable
//! regular expressions.
//!
//! Exit codes: 0 yes, 1 no, 2 usage or parse error, 3 state explosion or
//! uncertified operand. Answers go to stdout, diagnostics to stderr.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use frx_core::automaton::{
    check_well_behaved, contains, contains_unchecked, count_reachable_states, equivalent,
    equivalent_unchecked, explore, ContainmentError, StateCount, Status, Verdict,
};
use frx_core::decompose::{conc_part, seq_part};
use frx_core::derivative::{deriv_chain, matches};
use frx_core::gen::{generate, GenConfig};
use frx_core::oracle::{lang, Word};
use frx_core::similarity::{normalize, normalize_traced};
use frx_core::syntax::{parse, Behavior};

const DEFAULT_MAX_BOUND: usize = 10;

#[derive(Parser)]
#[command(name = "frx", version, about = "Forkable regular expressions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Limit {
    /// Give up after this many dissimilar states.
    #[arg(long, env = "FRX_MAX_STATES", default_value_t = frx_core::automaton::DEFAULT_MAX_STATES)]
    max_states: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a word is a trace of the expression.
    Match {
        expr: String,
        /// Whitespace-separated symbols; "-" or "" for the empty word.
        word: String,
        /// Print the derivative after each symbol.
        #[arg(long)]
        steps: bool,
    },
    /// List every trace up to a length bound.
    Enumerate { expr: String, bound: usize },
    /// Build the derivative automaton.
    Dfa {
        expr: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[command(flatten)]
        limit: Limit,
    },
    /// Report whether every starred body is similar to a fork-free term.
    Check { expr: String },
    /// Decide L(left) ⊆ L(right).
    Contains {
        left: String,
        right: String,
        #[command(flatten)]
        limit: Limit,
        /// Run even when an operand is not certified.
        #[arg(long)]
        force: bool,
    },
    /// Decide L(left) = L(right).
    Equiv {
        left: String,
        right: String,
        #[command(flatten)]
        limit: Limit,
        #[arg(long)]
        force: bool,
    },
    /// Print the canonical normal form.
    Normalize {
        expr: String,
        /// Print each simplification step.
        #[arg(long)]
        trace: bool,
    },
    /// Print the concurrent and sequential parts.
    Decompose { expr: String },
    /// Print the canonical derivative after each prefix of a word.
    Derive { expr: String, word: String },
    /// Count dissimilar descendants.
    CountStates {
        expr: String,
        #[command(flatten)]
        limit: Limit,
    },
    /// Emit random expressions.
    #[command(hide = true)]
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 15)]
        size: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long)]
        fork_free: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

const YES: u8 = 0;
const NO: u8 = 1;
const USAGE: u8 = 2;
const EXPLOSION: u8 = 3;

/// An outcome that is not an answer: message for stderr and exit code.
struct Failure(u8, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(USAGE, msg.into())
}

fn expr(text: &str) -> Result<Behavior, Failure> {
    parse(text).map_err(|e| usage(format!("cannot parse {text:?}: {e}")))
}

fn word(text: &str) -> Result<Word, Failure> {
    Word::parse(text).map_err(|e| usage(format!("cannot parse word {text:?}: {e}")))
}

fn max_bound() -> Result<usize, Failure> {
    match std::env::var("FRX_MAX_BOUND") {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("FRX_MAX_BOUND is not a number: {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_BOUND),
    }
}

fn containment(result: Result<Verdict, ContainmentError>, out: &mut String, equiv: bool) -> Result<u8, Failure> {
    match result {
        Ok(Verdict::Holds) => {
            out.push_str(if equiv { "equivalent\n" } else { "contained\n" });
            Ok(YES)
        }
        Ok(Verdict::Fails { witness, in_left }) => {
            if equiv {
                let side = if in_left { "left" } else { "right" };
                let _ = writeln!(out, "not equivalent\nwitness: {witness} (only in {side})");
            } else {
                let _ = writeln!(out, "not contained\nwitness: {witness}");
            }
            Ok(NO)
        }
        Err(e @ ContainmentError::NotCertified { .. }) => {
            Err(Failure(EXPLOSION, format!("{e}\nuse --force for a bounded attempt")))
        }
        Err(e) => Err(Failure(EXPLOSION, e.to_string())),
    }
}

fn run(command: Command, out: &mut String) -> Result<u8, Failure> {
    match command {
        Command::Match { expr: e, word: w, steps } => {
            let r = expr(&e)?;
            let w = word(&w)?;
            if steps {
                let chain = deriv_chain(&r, &w);
                let _ = writeln!(out, "  {}", chain[0]);
                for (x, d) in w.symbols().iter().zip(&chain[1..]) {
                    let _ = writeln!(out, "{x} {d}");
                }
            }
            let yes = matches(&r, &w);
            out.push_str(if yes { "match\n" } else { "no match\n" });
            Ok(if yes { YES } else { NO })
        }
        Command::Enumerate { expr: e, bound } => {
            let r = expr(&e)?;
            let limit = max_bound()?;
            if bound > limit {
                return Err(usage(format!("bound {bound} exceeds the limit {limit} (set FRX_MAX_BOUND)")));
            }
            for w in lang(&r, bound).iter() {
                let _ = writeln!(out, "{w}");
            }
            Ok(YES)
        }
        Command::Dfa { expr: e, format, limit } => {
            let r = expr(&e)?;
            match explore(&r, limit.max_states) {
                Ok(dfa) => {
                    out.push_str(&match format {
                        Format::Dot => dfa.to_dot(),
                        Format::Json => dfa.to_json(),
                    });
                    if !out.ends_with('\n') {
                        out.push('\n');
                    }
                    Ok(YES)
                }
                Err(err) => {
                    let mut msg = format!("{err}\nfirst states reached:");
                    for s in err.states.iter().take(8) {
                        let _ = write!(msg, "\n  {s}");
                    }
                    if let Some(r) = check_well_behaved(&r).starred_subterms.iter().find(|s| s.status != Status::Certified) {
                        let _ = write!(msg, "\nnot certified: {}", r.subterm);
                    }
                    Err(Failure(EXPLOSION, msg))
                }
            }
        }
        Command::Check { expr: e } => {
            let r = expr(&e)?;
            let report = check_well_behaved(&r);
            for s in &report.starred_subterms {
                let _ = writeln!(out, "{:<9}  {}  body {}", s.status, s.subterm, s.normalized_body);
            }
            let _ = writeln!(out, "overall: {}", report.overall);
            Ok(if report.is_certified() { YES } else { NO })
        }
        Command::Contains { left, right, limit, force } => {
            let (r, s) = (expr(&left)?, expr(&right)?);
            let result = if force {
                contains_unchecked(&r, &s, limit.max_states)
            } else {
                contains(&r, &s, limit.max_states)
            };
            containment(result, out, false)
        }
        Command::Equiv { left, right, limit, force } => {
            let (r, s) = (expr(&left)?, expr(&right)?);
            let result = if force {
                equivalent_unchecked(&r, &s, limit.max_states)
            } else {
                equivalent(&r, &s, limit.max_states)
            };
            containment(result, out, true)
        }
        Command::Normalize { expr: e, trace } => {
            let r = expr(&e)?;
            if trace {
                let (c, steps) = normalize_traced(&r);
                for step in steps {
                    let _ = writeln!(out, "{step}");
                }
                let _ = writeln!(out, "{c}");
            } else {
                let _ = writeln!(out, "{}", normalize(&r));
            }
            Ok(YES)
        }
        Command::Decompose { expr: e } => {
            let r = expr(&e)?;
            let (c, s) = (conc_part(&r), seq_part(&r));
            let _ = writeln!(out, "conc:      {c}");
            let _ = writeln!(out, "conc (nf): {}", normalize(&c));
            let _ = writeln!(out, "seq:       {s}");
            let _ = writeln!(out, "seq (nf):  {}", normalize(&s));
            Ok(YES)
        }
        Command::Derive { expr: e, word: w } => {
            let r = expr(&e)?;
            let w = word(&w)?;
            let chain = deriv_chain(&r, &w);
            let mut prefix = Word::epsilon();
            let _ = writeln!(out, "{prefix}\t{}", chain[0]);
            for (x, d) in w.symbols().iter().zip(&chain[1..]) {
                prefix.push(x.clone());
                let _ = writeln!(out, "{prefix}\t{d}");
            }
            Ok(YES)
        }
        Command::CountStates { expr: e, limit } => {
            let r = expr(&e)?;
            let count = count_reachable_states(&r, limit.max_states);
            let _ = writeln!(out, "{count}");
            Ok(match count {
                StateCount::Exact(_) => YES,
                StateCount::AtLeast(_) => EXPLOSION,
            })
        }
        Command::Gen { seed, count, size, alphabet, fork_free } => {
            let mut config = GenConfig::new(size, alphabet);
            if fork_free {
                config = config.fork_free();
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let _ = writeln!(out, "{}", generate(&mut rng, &config));
            }
            Ok(YES)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("frx: {msg}");
            code
        }
    };
    print!("{out}");
    ExitCode::from(code)
}
