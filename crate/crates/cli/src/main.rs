use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use reesmon::identities::{
    check_rees, check_table, match_pattern_budgeted, CheckOutcome, IdentityError, Status, Substitution, Witness,
    DEFAULT_MATCHER_BUDGET, DEFAULT_TABLE_BUDGET,
};
use reesmon::monoid::{from_presentation, FiniteMonoid, DEFAULT_CLOSURE_LENGTH};
use reesmon::verify::{self, Budgets, ClaimStatus, Config};
use reesmon::{generate_wn, Depth, Identity, Preset, ReesQuotient, Word, WordSet};

#[derive(Parser)]
#[command(name = "reesmon", version, about = "Rees quotient monoids, letter depth and identity checking")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for parallel checks (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Table,
    Rees,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Build M(W) and print its order and multiplication table
    Rees {
        /// Comma-separated words, or wn:N1,N2,...
        wordset: String,
    },
    /// Print the depth of every letter of a word
    Depth { word: String },
    /// Print w_n in dotted form
    Wn { n: u32 },
    /// Decide whether an identity holds in a monoid
    Check {
        /// rees:<wordset> or preset:<M_SCRIPT|A21|B21>
        #[arg(long)]
        monoid: String,
        /// Identity "u=v"; x^3 expands to xxx in compact sides
        #[arg(long)]
        identity: String,
        /// Checker (default: rees for Rees quotients, table otherwise)
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Evaluation budget (table) or search-node budget (rees)
        #[arg(long)]
        budget: Option<u64>,
    },
    /// List every substitution sending a pattern onto a factor of a target
    Match {
        pattern: String,
        target: String,
        /// Forbid empty images
        #[arg(long)]
        no_erasing: bool,
        #[arg(long, default_value_t = DEFAULT_MATCHER_BUDGET)]
        budget: u64,
    },
    /// Canonical words with two repeated letters whose M(w) is small
    Enumerate {
        #[arg(long, default_value_t = verify::ENUMERATE_MAX_LEN)]
        max_len: usize,
        #[arg(long, default_value_t = verify::ENUMERATE_MAX_ORDER)]
        max_order: usize,
    },
    /// Run the claim suite and print the report
    VerifyPaper {
        #[arg(long, default_value_t = 2)]
        max_n: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Also write the JSON report to this file
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TABLE_BUDGET)]
        table_budget: u64,
        #[arg(long, default_value_t = DEFAULT_MATCHER_BUDGET)]
        matcher_budget: u64,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<IdentityError> for Failure {
    fn from(e: IdentityError) -> Self {
        match e {
            IdentityError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
            }
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exhausted: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Rees { wordset } => {
            let source: WordSet = wordset.parse().map_err(usage)?;
            let q = ReesQuotient::new(&source);
            Ok(Output::ok(table_text(q.monoid()), q.monoid().to_json()))
        }
        Command::Depth { word } => {
            let w: Word = word.parse().map_err(usage)?;
            let depths = w.depth_map();
            let mut text = String::new();
            let mut map = serde_json::Map::new();
            for (letter, d) in &depths {
                let _ = writeln!(text, "{letter}\t{d}");
                let value = match d {
                    Depth::Finite(k) => json!(k),
                    Depth::Infinite => json!("inf"),
                };
                map.insert(letter.to_string(), value);
            }
            Ok(Output::ok(text, Value::Object(map)))
        }
        Command::Wn { n } => {
            let w = generate_wn(n).map_err(usage)?;
            Ok(Output::ok(format!("{w}\n"), json!(w.to_string())))
        }
        Command::Check {
            monoid,
            identity,
            method,
            budget,
        } => check(&monoid, &identity, method, budget),
        Command::Match {
            pattern,
            target,
            no_erasing,
            budget,
        } => {
            let u: Word = pattern.parse().map_err(usage)?;
            let w: Word = target.parse().map_err(usage)?;
            let found = match_pattern_budgeted(&u, &w, !no_erasing, budget)?;
            let mut text = String::new();
            for phi in &found.substitutions {
                let _ = writeln!(text, "{phi}");
            }
            let _ = writeln!(text, "{} substitutions", found.substitutions.len());
            let json = Value::Array(found.substitutions.iter().map(substitution_json).collect());
            Ok(Output::ok(text, json))
        }
        Command::Enumerate { max_len, max_order } => {
            let found = verify::enumerate_small_rees(max_len, max_order);
            let mut text = String::new();
            for (w, order) in &found {
                let _ = writeln!(text, "{w}\t{order}");
            }
            let json = Value::Array(found.iter().map(|(w, o)| json!({"word": w.to_string(), "order": o})).collect());
            Ok(Output::ok(text, json))
        }
        Command::VerifyPaper {
            max_n,
            seed,
            out,
            table_budget,
            matcher_budget,
        } => {
            if max_n == 0 {
                return Err(Failure::Usage("--max-n must be at least 1".to_string()));
            }
            let config = Config {
                max_n,
                budgets: Budgets {
                    table: table_budget,
                    matcher: matcher_budget,
                },
                seed,
            };
            let report = verify::run_claims(&config);
            if let Some(path) = out {
                fs::write(&path, report.to_json() + "\n").map_err(|e| usage(format!("{path}: {e}")))?;
            }
            let mut text = String::new();
            for c in &report.claims {
                let status = serde_json::to_value(c.status).expect("status");
                let _ = write!(text, "{:<4} {:<8} {}", c.id, status.as_str().unwrap_or_default(), c.title);
                if let Some(w) = &c.witness {
                    let _ = write!(text, "  [{w}]");
                }
                let _ = writeln!(text, "  ({} ms)", c.millis);
            }
            let s = &report.summary;
            let _ = writeln!(text, "pass {} fail {} skipped {} budget {}", s.pass, s.fail, s.skipped, s.budget);
            let code = if report.claims.iter().any(|c| c.status == ClaimStatus::Fail) {
                1
            } else if s.budget > 0 {
                3
            } else {
                0
            };
            let json = serde_json::to_value(&report).expect("report");
            Ok(Output { text, json, code })
        }
    }
}

enum Target {
    Rees(ReesQuotient),
    Table(FiniteMonoid),
}

impl Target {
    fn monoid(&self) -> &FiniteMonoid {
        match self {
            Target::Rees(q) => q.monoid(),
            Target::Table(m) => m,
        }
    }
}

fn parse_monoid(spec: &str) -> Result<Target, Failure> {
    if let Some(ws) = spec.strip_prefix("rees:") {
        let source: WordSet = ws.parse().map_err(usage)?;
        Ok(Target::Rees(ReesQuotient::new(&source)))
    } else if let Some(name) = spec.strip_prefix("preset:") {
        let p: Preset = name.parse().map_err(usage)?;
        let m = from_presentation(&p.presentation(), DEFAULT_CLOSURE_LENGTH).map_err(usage)?;
        Ok(Target::Table(m))
    } else {
        Err(Failure::Usage(format!("`{spec}`: expected rees:<wordset> or preset:<name>")))
    }
}

fn check(spec: &str, identity: &str, method: Option<Method>, budget: Option<u64>) -> Result<Output, Failure> {
    let target = parse_monoid(spec)?;
    let id: Identity = identity.parse().map_err(usage)?;
    let method = method.unwrap_or(match target {
        Target::Rees(_) => Method::Rees,
        Target::Table(_) => Method::Table,
    });
    let m = target.monoid();
    let mut outcomes: Vec<(&str, CheckOutcome)> = Vec::new();
    if matches!(method, Method::Table | Method::Both) {
        outcomes.push(("table", check_table(m, &id, budget.unwrap_or(DEFAULT_TABLE_BUDGET))?));
    }
    if matches!(method, Method::Rees | Method::Both) {
        let Target::Rees(q) = &target else {
            return Err(Failure::Usage("the rees method needs a rees:<wordset> monoid".to_string()));
        };
        outcomes.push(("rees", check_rees(q.source(), &id, budget.unwrap_or(DEFAULT_MATCHER_BUDGET))?));
    }
    let status = outcomes[0].1.status;
    let agree = outcomes.iter().all(|(_, o)| o.status == status);
    let mut text = String::new();
    let mut results = Vec::new();
    for (name, out) in &outcomes {
        let witness = out.witness_text(m);
        if outcomes.len() > 1 {
            let _ = write!(text, "{name}: ");
        }
        let _ = write!(text, "{}", out.status);
        if let Some(w) = &witness {
            let _ = write!(text, " {w}");
        }
        let _ = writeln!(text);
        results.push(json!({
            "method": name,
            "status": out.status.to_string(),
            "witness": out.witness.as_ref().map(|w| witness_json(w, m)),
            "evaluations": out.evaluations,
        }));
    }
    if !agree {
        let _ = writeln!(text, "checkers disagree");
    }
    let code = if agree && status == Status::Holds { 0 } else { 1 };
    let json = json!({ "identity": id.to_string(), "results": results, "agree": agree });
    Ok(Output { text, json, code })
}

fn substitution_json(phi: &Substitution) -> Value {
    Value::Object(phi.iter().map(|(v, img)| (v.to_string(), json!(img.to_string()))).collect())
}

fn witness_json(w: &Witness, m: &FiniteMonoid) -> Value {
    match w {
        Witness::Words(phi) => substitution_json(phi),
        Witness::Elements(a) => Value::Object(
            a.0.iter()
                .map(|(v, &e)| (v.to_string(), json!(m.label(e).to_string())))
                .collect(),
        ),
    }
}

fn table_text(m: &FiniteMonoid) -> String {
    let names: Vec<String> = m.labels().iter().map(|l| l.to_string()).collect();
    let width = names.iter().map(String::len).max().unwrap_or(1);
    let mut text = format!("order {}\n", m.order());
    let _ = write!(text, "{:>width$} |", "*");
    for n in &names {
        let _ = write!(text, " {n:>width$}");
    }
    let _ = writeln!(text);
    for (i, row) in m.rows().enumerate() {
        let _ = write!(text, "{:>width$} |", names[i]);
        for &p in row {
            let _ = write!(text, " {:>width$}", names[p]);
        }
        let _ = writeln!(text);
    }
    text
}
