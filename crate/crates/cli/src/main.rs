use std::fs;
use std::fmt::Display;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use knfrag::expressiveness::{
    catalogue, replay_theorem, search_weak_translation_with, strong_translation_check_with, weak_equiv_check_with,
    SearchOptions, TheoremReport, Verdict,
};
use knfrag::solver::{sat_bruteforce_with, sat_tableau_with, tree_model_bound, SatResult, SatStatus};
use knfrag::syntax::{parse_with, ParseOptions};
use knfrag::translate::{translate, Target};
use knfrag::{classify, recognize_clausal, Error, Formula, Fragment, KripkeModel, Limits};
use serde_json::{json, Value};

const EX_USAGE: u8 = 64;
const EX_NOINPUT: u8 = 66;
const EX_UNAVAILABLE: u8 = 69;

#[derive(Parser)]
#[command(name = "knfrag", version, about = "Clausal fragments of multi-modal logic K_N")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on enumerated models and tableau nodes.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print it in canonical form.
    Parse { formula: Option<String> },
    /// Recognise a clausal formula and report its fragments.
    Classify { formula: Option<String> },
    /// Evaluate a formula on a model file.
    Check {
        model: PathBuf,
        formula: Option<String>,
        /// World to evaluate at; defaults to the model's designated world,
        /// or every world if it has none.
        #[arg(long)]
        world: Option<String>,
    },
    /// Decide satisfiability. Exit 0 SAT, 1 UNSAT, 2 unknown at the bound.
    Sat {
        #[arg(long, value_enum, default_value_t = Engine::Tableau)]
        engine: Engine,
        /// World bound for the brute-force engine; defaults to the proven bound.
        #[arg(long)]
        max_worlds: Option<usize>,
        formula: Option<String>,
    },
    /// Rewrite a Krom formula into its box or diamond fragment.
    Translate {
        #[arg(long, value_parser = parse_target)]
        to: Target,
        /// Write the fresh-letter sidecar here instead of stdout.
        #[arg(long)]
        sidecar: Option<PathBuf>,
        formula: Option<String>,
    },
    /// Bounded weak equivalence or strong translation check. Exit 0 when no
    /// counterexample is found, 1 otherwise.
    Equiv {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        /// Letters of the weak check; defaults to those of both formulas.
        #[arg(long, value_delimiter = ',')]
        alphabet: Option<Vec<String>>,
        f: String,
        g: String,
    },
    /// Search a fragment for a formula weakly equivalent to the target.
    Search {
        #[arg(long, value_parser = parse_fragment)]
        fragment: Fragment,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        /// Letters available to candidates; defaults to those of the target.
        #[arg(long, value_delimiter = ',')]
        alphabet: Option<Vec<String>>,
        target: Option<String>,
    },
    /// Replay the separation and equivalence results as JSON lines. Exit 0
    /// iff every step passes.
    VerifyPaper {
        #[arg(long)]
        id: Option<String>,
        /// List the replay ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Print the expressiveness diagram as Graphviz DOT.
    Hierarchy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Brute,
    Tableau,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Weak,
    Strong,
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse()
}

fn parse_fragment(s: &str) -> Result<Fragment, String> {
    s.parse().map_err(|e: knfrag::syntax::UnknownFragment| e.to_string())
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Limit(_) => EX_UNAVAILABLE,
            _ => EX_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EX_USAGE, message: message.into() }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EX_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if cli.json {
                eprintln!("{}", json!({ "error": f.message, "exit_code": f.code }));
            } else {
                eprintln!("knfrag: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    match cli.cap {
        Some(n) => Limits::default().with_max_models(n).with_max_tableau_nodes(n),
        None => Limits::default(),
    }
}

/// The formula argument, or stdin when it is absent or `-`.
fn formula_text(arg: &Option<String>) -> Result<String, Failure> {
    match arg.as_deref() {
        Some(text) if text != "-" => Ok(text.to_string()),
        _ => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure { code: EX_NOINPUT, message: format!("reading stdin: {e}") })?;
            Ok(buf.trim().to_string())
        }
    }
}

fn read_formula(arg: &Option<String>, allow_reserved: bool) -> Result<Formula, Failure> {
    let text = formula_text(arg)?;
    Ok(parse_with(&text, ParseOptions { allow_reserved }).map_err(Error::from)?)
}

fn read_model(path: &Path) -> Result<(KripkeModel, Option<usize>), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure { code: EX_NOINPUT, message: format!("{}: {e}", path.display()) })?;
    KripkeModel::from_json(&text).map_err(|e| Failure { code: EX_NOINPUT, message: format!("{}: {e}", path.display()) })
}

/// Writes a line to stdout; a closed pipe is not an error.
fn say(text: impl Display) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn emit(cli: &Cli, value: &Value, plain: impl FnOnce() -> String) {
    if cli.json {
        say(value);
    } else {
        say(plain());
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Parse { formula } => cmd_parse(cli, formula),
        Command::Classify { formula } => cmd_classify(cli, formula),
        Command::Check { model, formula, world } => cmd_check(cli, model, formula, world),
        Command::Sat { engine, max_worlds, formula } => cmd_sat(cli, *engine, *max_worlds, formula),
        Command::Translate { to, sidecar, formula } => cmd_translate(cli, *to, sidecar, formula),
        Command::Equiv { mode, max_worlds, alphabet, f, g } => cmd_equiv(cli, *mode, *max_worlds, alphabet, f, g),
        Command::Search { fragment, size, max_worlds, alphabet, target } => {
            cmd_search(cli, *fragment, *size, *max_worlds, alphabet, target)
        }
        Command::VerifyPaper { id, list } => cmd_verify(id, *list),
        Command::Hierarchy => cmd_hierarchy(cli),
    }
}

fn cmd_parse(cli: &Cli, formula: &Option<String>) -> Outcome {
    let f = read_formula(formula, false)?;
    let text = f.to_string();
    let value = json!({
        "formula": text,
        "size": f.size(),
        "modal_depth": f.modal_depth(),
        "letters": f.letters(),
        "modalities": f.modalities().iter().map(|m| m.name().to_string()).collect::<Vec<_>>(),
        "clausal": recognize_clausal(&f).is_ok(),
    });
    emit(cli, &value, || text);
    Ok(0)
}

fn cmd_classify(cli: &Cli, formula: &Option<String>) -> Outcome {
    let f = read_formula(formula, false)?;
    let cf = recognize_clausal(&f).map_err(Error::from)?;
    let d = classify(&cf);
    let fragments: Vec<String> = Fragment::ALL.iter().filter(|fr| fr.contains(&cf)).map(|fr| fr.to_string()).collect();
    let value = json!({
        "formula": cf.to_string(),
        "horn": d.horn,
        "krom": d.krom,
        "core": d.core,
        "box_only": d.box_only,
        "diamond_only": d.diamond_only,
        "fragments": fragments,
    });
    emit(cli, &value, || serde_json::to_string_pretty(&value).expect("plain JSON value"));
    Ok(0)
}

fn cmd_check(cli: &Cli, path: &Path, formula: &Option<String>, world: &Option<String>) -> Outcome {
    let (model, designated) = read_model(path)?;
    let f = read_formula(formula, true)?;
    if let Some(bad) = f.letters().iter().find(|l| !model.alphabet().contains(*l)) {
        return Err(usage(format!("letter `{bad}` is not in the model's alphabet")));
    }
    let worlds: Vec<usize> = match (world, designated) {
        (Some(name), _) => vec![model.frame().world_index(name).map_err(|e| usage(e.to_string()))?],
        (None, Some(w)) => vec![w],
        (None, None) => (0..model.world_count()).collect(),
    };
    let results: Vec<(String, bool)> =
        worlds.iter().map(|&w| (model.frame().name(w).to_string(), model.satisfies(w, &f))).collect();
    let value = json!({
        "formula": f.to_string(),
        "results": results.iter().map(|(w, b)| json!({ "world": w, "holds": b })).collect::<Vec<_>>(),
    });
    emit(cli, &value, || match results.as_slice() {
        [(_, b)] => b.to_string(),
        _ => results.iter().map(|(w, b)| format!("{w}: {b}")).collect::<Vec<_>>().join("\n"),
    });
    Ok(0)
}

fn cmd_sat(cli: &Cli, engine: Engine, max_worlds: Option<usize>, formula: &Option<String>) -> Outcome {
    let f = read_formula(formula, false)?;
    let limits = limits(cli);
    let (engine_name, bound, result): (&str, Option<usize>, SatResult) = match engine {
        Engine::Tableau => ("tableau", None, sat_tableau_with(&f, &limits).map_err(Error::from)?),
        Engine::Brute => {
            let bound = max_worlds.unwrap_or_else(|| tree_model_bound(&f));
            ("brute", Some(bound), sat_bruteforce_with(&f, bound, &limits).map_err(Error::from)?)
        }
    };
    let witness = result.witness.as_ref().map(|w| w.to_json());
    let mut value = json!({ "formula": f.to_string(), "engine": engine_name, "status": result.status });
    if let Some(b) = bound {
        value["max_worlds"] = json!(b);
    }
    if let Some(w) = &witness {
        value["witness"] = w.clone();
    }
    emit(cli, &value, || match &witness {
        Some(w) => format!("{}\n{}", result.status, serde_json::to_string_pretty(w).expect("plain JSON value")),
        None => result.status.to_string(),
    });
    Ok(match result.status {
        SatStatus::Sat => 0,
        SatStatus::Unsat => 1,
        SatStatus::UnknownAtBound => 2,
    })
}

fn cmd_translate(cli: &Cli, to: Target, sidecar: &Option<PathBuf>, formula: &Option<String>) -> Outcome {
    let f = read_formula(formula, false)?;
    let cf = recognize_clausal(&f).map_err(Error::from)?;
    let t = translate(&cf, to).map_err(Error::from)?;
    let side = json!({ "fresh_letters": t.fresh_letters });
    if let Some(path) = sidecar {
        fs::write(path, format!("{side}\n"))
            .map_err(|e| Failure { code: EX_NOINPUT, message: format!("{}: {e}", path.display()) })?;
    }
    let value = json!({
        "input": cf.to_string(),
        "target": to.to_string(),
        "formula": t.formula.to_string(),
        "fresh_letters": t.fresh_letters,
        "steps": t.steps(),
    });
    emit(cli, &value, || match sidecar {
        Some(_) => t.formula.to_string(),
        None => format!("{}\n{side}", t.formula),
    });
    Ok(0)
}

fn verdict_plain(v: &Verdict) -> String {
    match &v.counterexample {
        None => format!("EQUIVALENT_UP_TO_BOUND ({} worlds)", v.max_worlds),
        Some(c) => {
            let mut s = format!("COUNTEREXAMPLE: {}\n{}", c.details, serde_json::to_string_pretty(&c.model.to_json()).expect("plain JSON value"));
            if let Some(e) = c.extension.as_ref().filter(|e| e.model.alphabet() != c.model.model.alphabet()) {
                s.push_str(&format!("\nextension:\n{}", serde_json::to_string_pretty(&e.to_json()).expect("plain JSON value")));
            }
            s
        }
    }
}

fn cmd_equiv(cli: &Cli, mode: Mode, max_worlds: usize, alphabet: &Option<Vec<String>>, f: &str, g: &str) -> Outcome {
    let options = ParseOptions { allow_reserved: true };
    let f = parse_with(f, options).map_err(Error::from)?;
    let g = parse_with(g, options).map_err(Error::from)?;
    let limits = limits(cli);
    let verdict = match mode {
        Mode::Weak => {
            let letters = match alphabet {
                Some(xs) => xs.iter().cloned().collect(),
                None => f.letters().union(&g.letters()).cloned().collect(),
            };
            weak_equiv_check_with(&f, &g, &letters, max_worlds, &limits)?
        }
        Mode::Strong => strong_translation_check_with(&f, &g, max_worlds, &limits)?,
    };
    let mut value = serde_json::to_value(&verdict).expect("verdicts serialise");
    value["mode"] = json!(match mode {
        Mode::Weak => "weak",
        Mode::Strong => "strong",
    });
    emit(cli, &value, || verdict_plain(&verdict));
    Ok(u8::from(!verdict.is_equivalent()))
}

fn cmd_search(
    cli: &Cli,
    fragment: Fragment,
    size: usize,
    max_worlds: usize,
    alphabet: &Option<Vec<String>>,
    target: &Option<String>,
) -> Outcome {
    let target = read_formula(target, false)?;
    let alphabet = match alphabet {
        Some(xs) => xs.iter().cloned().collect(),
        None => target.letters(),
    };
    let options = SearchOptions { fragment, alphabet, modalities: None, max_size: size, max_worlds };
    let found = search_weak_translation_with(&target, &options, &limits(cli))?;
    let mut value = json!({
        "target": target.to_string(),
        "fragment": fragment.to_string(),
        "max_size": size,
        "max_worlds": max_worlds,
        "status": if found.is_some() { "FOUND" } else { "NOT_FOUND" },
    });
    if let Some(cf) = &found {
        value["formula"] = json!(cf.to_string());
    }
    emit(cli, &value, || match &found {
        Some(cf) => cf.to_string(),
        None => format!("NotFound (size <= {size}, worlds <= {max_worlds})"),
    });
    Ok(0)
}

fn cmd_verify(id: &Option<String>, list: bool) -> Outcome {
    if list {
        for (id, summary) in catalogue() {
            say(format!("{id}\t{summary}"));
        }
        return Ok(0);
    }
    let reports: Vec<TheoremReport> = match id {
        Some(id) => vec![replay_theorem(id)?],
        None => catalogue().iter().map(|(id, _)| replay_theorem(id)).collect::<Result<_, _>>()?,
    };
    for r in &reports {
        for line in r.json_lines() {
            say(line);
        }
    }
    Ok(u8::from(!reports.iter().all(|r| r.overall)))
}

fn cmd_hierarchy(cli: &Cli) -> Outcome {
    let dot = knfrag::hierarchy::to_dot();
    if cli.json {
        let value = json!({
            "nodes": knfrag::hierarchy::NODES,
            "edges": knfrag::hierarchy::EDGES,
            "equivalent": knfrag::hierarchy::EQUIVALENT,
            "dot": dot,
        });
        say(value);
    } else {
        let _ = io::stdout().lock().write_all(dot.as_bytes());
    }
    Ok(0)
}
