//! `prx`: decide membership, nonemptiness, universality, containment and
//! intersection for parameterized regular expressions.
//!
//! Exit codes: 0 when the answer is true (or a construction succeeded),
//! 1 when it is false, 2 on usage errors and exceeded caps.
//!
//! Variables are written `$name`, so quote expressions in the shell:
//! `prx member --expr '(0$x)*1($x$y)*' --word 01110 --semantics diamond`.
//! The empty word is `_` and the empty language `@`.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use paramregex::constructions::{
    family_box_doubleexp, family_box_subword, family_diamond_power, fooling_pairs_box, fooling_pairs_diamond,
    verify_fooling_set, FoolingSet,
};
use paramregex::fast_paths::{membership_box_fixed_word, membership_diamond_fixed_word, nonemptiness_box_sh0};
use paramregex::valuations::DEFAULT_VALUATION_CAP;
use paramregex::{
    parse, print, word_to_string, Alphabet, DecisionReport, DomainSpec, Error, Limits, ParamRegex, Problem, Semantics,
    Solver, Stats,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "prx", version, about = "Parameterized regular expressions: decision problems and constructions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Alphabet letters, e.g. `01` or `abc`.
    #[arg(long, global = true, default_value = "01")]
    alphabet: String,
    #[arg(long, global = true, value_enum, default_value_t = Sem::Box)]
    semantics: Sem,
    /// JSON object mapping variable names to domain expressions, e.g. {"x": "0*"}.
    #[arg(long, global = true, value_name = "FILE")]
    domains: Option<PathBuf>,
    /// Use the specialized algorithm; fails when its preconditions do not hold.
    #[arg(long, global = true)]
    fast: bool,
    /// Print the witness (or certifying valuation) on its own line.
    #[arg(long, global = true)]
    witness: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_VALUATION_CAP)]
    max_valuations: usize,
    #[arg(long, global = true, default_value_t = Limits::default().max_states)]
    max_states: usize,
    /// Cap on the words of a finite domain.
    #[arg(long, global = true, default_value_t = Limits::default().max_words)]
    max_words: usize,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Process valuations in parallel; output is identical.
    #[arg(long, global = true)]
    parallel: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sem {
    Box,
    Diamond,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum NfaFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    BoxSubword,
    BoxDoubleexp,
    DiamondPower,
}

#[derive(Clone, Copy, ValueEnum)]
enum FoolingKind {
    /// Pairs for ((0|1){n+1})*$x1…$x(n+1)((0|1){n+1})*; C(2^(n+1), 2^n) pairs, practical for n ≤ 2.
    Box,
    /// Pairs for ($x1…$xn)*; 2^n pairs.
    Diamond,
}

#[derive(Subcommand)]
enum Command {
    /// Is the word in the language?
    Member {
        #[arg(long)]
        expr: String,
        /// Use `_` for the empty word.
        #[arg(long)]
        word: String,
    },
    /// Is the language nonempty?
    Nonempty {
        #[arg(long)]
        expr: String,
    },
    /// Is the language all of Σ*?
    Universal {
        #[arg(long)]
        expr: String,
    },
    /// Is the language of --lhs contained in that of --rhs?
    Contains {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Does the language meet that of a variable-free expression?
    Intersect {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        regular: String,
    },
    /// Print the automaton of the language.
    BuildNfa {
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = NfaFormat::Dot)]
        format: NfaFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a member of an expression family.
    Family {
        #[arg(long, value_enum)]
        kind: FamilyKind,
        #[arg(long)]
        n: usize,
    },
    /// Generate or verify fooling sets (NFA state lower bounds).
    Fooling {
        #[command(subcommand)]
        action: FoolingAction,
    },
}

#[derive(Subcommand)]
enum FoolingAction {
    /// Write the pairs, one `u<TAB>v` per line.
    Generate {
        #[arg(long, value_enum)]
        kind: FoolingKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the pairs in FILE against the language of --expr.
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        expr: String,
    },
}

struct Ctx {
    g: Global,
    alphabet: Alphabet,
    solver: Solver,
    sem: Semantics,
    domains: Option<DomainSpec>,
}

impl Ctx {
    fn new(g: Global) -> Result<Self, String> {
        let alphabet = Alphabet::from_chars(&g.alphabet).map_err(|e| e.to_string())?;
        if g.max_valuations == 0 || g.max_states == 0 || g.max_words == 0 {
            return Err("caps must be positive".into());
        }
        let limits = Limits { max_valuations: g.max_valuations, max_states: g.max_states, max_words: g.max_words };
        let solver = Solver::new(alphabet.clone()).with_limits(limits).with_parallel(g.parallel);
        let sem = match g.semantics {
            Sem::Box => Semantics::Certainty,
            Sem::Diamond => Semantics::Possibility,
        };
        let domains = match &g.domains {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                Some(DomainSpec::from_json(&text, &alphabet, g.max_words).map_err(|e| e.to_string())?)
            }
            None => None,
        };
        Ok(Ctx { g, alphabet, solver, sem, domains })
    }

    fn expr(&self, text: &str) -> Result<ParamRegex, String> {
        parse(text, &self.alphabet).map_err(|e| format!("{text:?}: {e}"))
    }

    fn decide(&self, problem: Problem, e: &ParamRegex) -> Result<DecisionReport, String> {
        if self.g.fast {
            return self.decide_fast(problem, e);
        }
        let r = match &self.domains {
            Some(spec) => self.solver.decide_domains(problem, e, spec, self.sem),
            None => match problem {
                Problem::Membership(w) => self.solver.membership(e, &w, self.sem),
                Problem::Nonemptiness => self.solver.nonemptiness(e, self.sem),
                Problem::Universality => self.solver.universality(e, self.sem),
                Problem::Containment(rhs) => self.solver.containment(e, &rhs, self.sem),
                Problem::NonemptyIntReg(r) => self.solver.nonempty_int_reg(e, &r, self.sem),
            },
        };
        r.map_err(|e| e.to_string())
    }

    fn decide_fast(&self, problem: Problem, e: &ParamRegex) -> Result<DecisionReport, String> {
        if self.domains.is_some() {
            return Err("--fast does not support --domains".into());
        }
        let report = |answer, witness, valuation| DecisionReport { answer, witness, valuation, stats: Stats::default() };
        let err = |e: Error| e.to_string();
        match (problem, self.sem) {
            (Problem::Membership(w), Semantics::Certainty) => {
                Ok(report(membership_box_fixed_word(e, &w, &self.alphabet).map_err(err)?, None, None))
            }
            (Problem::Membership(w), Semantics::Possibility) => {
                let (answer, nu) = membership_diamond_fixed_word(e, &w, &self.alphabet).map_err(err)?;
                Ok(report(answer, None, nu))
            }
            (Problem::Nonemptiness, Semantics::Certainty) => {
                let (answer, witness) = nonemptiness_box_sh0(e, &self.solver).map_err(err)?;
                Ok(report(answer, witness, None))
            }
            _ => Err("no fast path for this problem and semantics".into()),
        }
    }

    fn emit(&self, r: &DecisionReport) -> ExitCode {
        match self.g.output {
            Output::Json => println!("{}", r.to_json()),
            Output::Text => {
                println!("{}", r.answer);
                if self.g.witness {
                    if let Some(w) = &r.witness {
                        println!("{}", word_to_string(w));
                    } else if let Some(v) = &r.valuation {
                        println!("{v}");
                    }
                }
            }
        }
        code(r.answer)
    }

    fn write(&self, text: &str, out: &Option<PathBuf>) -> Result<(), String> {
        match out {
            Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn code(answer: bool) -> ExitCode {
    if answer {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let ctx = Ctx::new(cli.global)?;
    match cli.command {
        Command::Member { expr, word } => {
            let e = ctx.expr(&expr)?;
            let w = ctx.alphabet.parse_word(&word).map_err(|e| e.to_string())?;
            Ok(ctx.emit(&ctx.decide(Problem::Membership(w), &e)?))
        }
        Command::Nonempty { expr } => Ok(ctx.emit(&ctx.decide(Problem::Nonemptiness, &ctx.expr(&expr)?)?)),
        Command::Universal { expr } => Ok(ctx.emit(&ctx.decide(Problem::Universality, &ctx.expr(&expr)?)?)),
        Command::Contains { lhs, rhs } => {
            let (l, r) = (ctx.expr(&lhs)?, ctx.expr(&rhs)?);
            Ok(ctx.emit(&ctx.decide(Problem::Containment(r), &l)?))
        }
        Command::Intersect { expr, regular } => {
            let (e, r) = (ctx.expr(&expr)?, ctx.expr(&regular)?);
            Ok(ctx.emit(&ctx.decide(Problem::NonemptyIntReg(r), &e)?))
        }
        Command::BuildNfa { expr, format, out } => {
            if ctx.g.fast {
                return Err("no fast path for build-nfa".into());
            }
            let e = ctx.expr(&expr)?;
            let a = match &ctx.domains {
                Some(spec) => ctx.solver.construct_nfa_domains(&e, spec, ctx.sem),
                None => ctx.solver.construct_nfa(&e, ctx.sem),
            }
            .map_err(|e| e.to_string())?;
            let text = match format {
                NfaFormat::Dot => a.to_dot(),
                NfaFormat::Json => a.to_json_string() + "\n",
            };
            ctx.write(&text, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Family { kind, n } => {
            let e = match kind {
                FamilyKind::BoxSubword => family_box_subword(n),
                FamilyKind::BoxDoubleexp => family_box_doubleexp(n),
                FamilyKind::DiamondPower => family_diamond_power(n),
            }
            .map_err(|e| e.to_string())?;
            match ctx.g.output {
                Output::Text => println!("{}", print(&e)),
                Output::Json => println!("{}", json!({ "expression": print(&e), "variables": e.variables().len() })),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fooling { action: FoolingAction::Generate { kind, n, out } } => {
            let cap = ctx.g.max_valuations;
            let p = match kind {
                FoolingKind::Box => fooling_pairs_box(n, cap),
                FoolingKind::Diamond => fooling_pairs_diamond(n, cap),
            }
            .map_err(|e| e.to_string())?;
            ctx.write(&p.to_text(), &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fooling { action: FoolingAction::Verify { file, expr } } => {
            let e = ctx.expr(&expr)?;
            let text = fs::read_to_string(&file).map_err(|err| format!("{}: {err}", file.display()))?;
            let p = FoolingSet::from_text(&text, &ctx.alphabet).map_err(|e| e.to_string())?;
            let v = verify_fooling_set(&p, |w| Ok(ctx.solver.membership(&e, w, ctx.sem)?.answer))
                .map_err(|e| e.to_string())?;
            match ctx.g.output {
                Output::Json => {
                    println!("{}", json!({ "verified": v.verified, "bound": v.bound, "violation": v.violation }))
                }
                Output::Text if v.verified => println!("verified: every NFA needs at least {} states", v.bound),
                Output::Text => println!("not verified: {}", v.violation.as_deref().unwrap_or("")),
            }
            Ok(code(v.verified))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
