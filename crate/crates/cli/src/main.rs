use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fglue::encodings::EncodingCatalog;
use fglue::glue::{check_lexicon, compose, load_lexicon, parse_tree, EntryKind, Lexicon, LexiconError, SentenceTree};
use fglue::kernel::{
    normalize_traced, parse_term, parse_term_in, typecheck, Context, Rule, Term, DEFAULT_FUEL,
};
use fglue::readback::{classify_order, readback_formula, Order};
use fglue::signature::{load_signature, Signature, SignatureError};

#[derive(Parser)]
#[command(name = "fglue", version, about = "System F glue semantics toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Type check every lexicon entry.
    Check {
        #[arg(long)]
        sig: PathBuf,
        #[arg(long)]
        lex: PathBuf,
    },
    /// Normalize a term, optionally type checking it against a signature.
    Normalize {
        #[arg(long)]
        sig: Option<PathBuf>,
        #[command(flatten)]
        input: TermInput,
        #[arg(long)]
        fuel: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Term)]
        format: Format,
    },
    /// Compose a sentence tree, normalize it and print the result.
    Compose {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Formula)]
        format: Format,
    },
    /// Print the order of the formula a sentence tree reads back to.
    Classify {
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TermInput {
    /// Term given inline.
    #[arg(long)]
    expr: Option<String>,
    /// File holding the term.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    sig: PathBuf,
    #[arg(long)]
    lex: PathBuf,
    #[arg(long)]
    fuel: Option<u64>,
    #[command(flatten)]
    input: TreeInput,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TreeInput {
    /// File holding the sentence tree.
    #[arg(long)]
    tree: Option<PathBuf>,
    /// Sentence tree given inline.
    #[arg(long)]
    expr: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Formula,
    Term,
    Trace,
}

/// A failure with its exit code: 1 for semantic failures, 2 for IO and
/// parse failures.
struct Failure {
    code: u8,
    message: String,
}

fn semantic(e: impl ToString) -> Failure {
    Failure { code: 1, message: e.to_string() }
}

fn syntax(e: impl ToString) -> Failure {
    Failure { code: 2, message: e.to_string() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| syntax(format!("{}: {e}", path.display())))
}

fn load_sig(path: &Path) -> Result<Signature, Failure> {
    load_signature(&read(path)?).map_err(|e| {
        let msg = format!("{}: {e}", path.display());
        match e {
            SignatureError::Parse(_) => syntax(msg),
            _ => semantic(msg),
        }
    })
}

fn load_lex(sig: &Signature, path: &Path) -> Result<Lexicon, Failure> {
    load_lexicon(sig, &read(path)?).map_err(|e| {
        let msg = format!("{}: {e}", path.display());
        match e {
            LexiconError::Parse(_) => syntax(msg),
            _ => semantic(msg),
        }
    })
}

fn fuel(f: Option<u64>) -> Result<u64, Failure> {
    match f {
        Some(0) => Err(syntax("--fuel must be positive")),
        Some(n) => Ok(n),
        None => Ok(DEFAULT_FUEL),
    }
}

fn cmd_check(sig: &Path, lex: &Path) -> Result<String, Failure> {
    let sig = load_sig(sig)?;
    let src = read(lex)?;
    let reports = check_lexicon(&sig, &src).map_err(|e| syntax(format!("{}: {e}", lex.display())))?;
    let mut out = String::new();
    let mut failed = 0;
    for r in &reports {
        let prefix = match r.kind {
            EntryKind::Word => String::new(),
            EntryKind::Coercion => "coercion ".to_string(),
        };
        match &r.result {
            Ok(ty) => out.push_str(&format!("{prefix}{} : {ty}\n", r.name)),
            Err(LexiconError::IllTyped { error, .. }) => {
                failed += 1;
                out.push_str(&format!("{prefix}{} : error: {error}\n", r.name));
            }
            Err(e) => {
                failed += 1;
                out.push_str(&format!("{prefix}{} : error: {e}\n", r.name));
            }
        }
    }
    if failed > 0 {
        print!("{out}");
        return Err(semantic(format!("{failed} of {} entries failed", reports.len())));
    }
    Ok(out)
}

fn render_trace(steps: &[(Rule, Term)]) -> String {
    let mut out = String::new();
    for (k, (rule, term)) in steps.iter().enumerate() {
        out.push_str(&format!("step {} [{rule}]: {term}\n", k + 1));
    }
    out.push_str(&format!("steps: {}\n", steps.len()));
    out
}

fn cmd_normalize(
    sig: Option<&Path>,
    input: &TermInput,
    fuel_override: Option<u64>,
    format: Format,
) -> Result<String, Failure> {
    let fuel = fuel(fuel_override)?;
    let src = match (&input.expr, &input.file) {
        (Some(e), _) => e.clone(),
        (None, Some(p)) => read(p)?,
        (None, None) => unreachable!("clap requires one input"),
    };
    let sig = sig.map(load_sig).transpose()?;
    let parsed = match &sig {
        Some(s) => parse_term_in(&src, s),
        None => parse_term(&src),
    }
    .map_err(syntax)?;
    let term = EncodingCatalog::standard()
        .expand(&parsed)
        .map_err(|name| semantic(format!("unknown catalog name `{name}`")))?;
    // Without a signature only terms free of constants and sorts can be checked.
    let empty = Signature::new();
    let check_sig = match &sig {
        Some(s) => Some(s),
        None if term.constants().is_empty() && term.base_sorts().is_empty() => Some(&empty),
        None => None,
    };
    if let Some(s) = check_sig {
        typecheck(&Context::new(s), &term).map_err(semantic)?;
    }
    let (steps, normal) = normalize_traced(&term, fuel).map_err(semantic)?;
    Ok(match format {
        Format::Trace => render_trace(&steps),
        Format::Term | Format::Formula => format!("{normal}\n"),
    })
}

fn load_tree(input: &TreeInput, sig: &Signature) -> Result<SentenceTree, Failure> {
    let (src, origin) = match (&input.expr, &input.tree) {
        (Some(e), _) => (e.clone(), "--expr".to_string()),
        (None, Some(p)) => (read(p)?, p.display().to_string()),
        (None, None) => unreachable!("clap requires one input"),
    };
    parse_tree(src.trim(), Some(sig)).map_err(|e| syntax(format!("{origin}: {e}")))
}

struct Composed {
    lex: Lexicon,
    steps: Vec<(Rule, Term)>,
    normal: Term,
}

fn run_pipeline(run: &RunArgs) -> Result<Composed, Failure> {
    let fuel = fuel(run.fuel)?;
    let sig = load_sig(&run.sig)?;
    let lex = load_lex(&sig, &run.lex)?;
    let tree = load_tree(&run.input, &sig)?;
    let term = compose(&lex, &tree).map_err(semantic)?;
    let (steps, normal) = normalize_traced(&term, fuel).map_err(semantic)?;
    Ok(Composed { lex, steps, normal })
}

fn cmd_compose(run: &RunArgs, format: Format) -> Result<String, Failure> {
    let c = run_pipeline(run)?;
    Ok(match format {
        Format::Term => format!("{}\n", c.normal),
        Format::Trace => render_trace(&c.steps),
        Format::Formula => {
            let f = readback_formula(c.lex.signature(), &c.normal).map_err(semantic)?;
            format!("{f}\n")
        }
    })
}

fn cmd_classify(run: &RunArgs) -> Result<String, Failure> {
    let c = run_pipeline(run)?;
    let f = readback_formula(c.lex.signature(), &c.normal).map_err(semantic)?;
    let report = classify_order(&f).map_err(semantic)?;
    let mut out = format!("order: {}\n", report.order);
    for (sort, order) in &report.witnesses {
        out.push_str(&format!("witness: {sort} (order {order})\n"));
    }
    if report.order == Order::Omega {
        out.push_str("note: order exceeds the finite cap\n");
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { sig, lex } => cmd_check(sig, lex),
        Command::Normalize { sig, input, fuel, format } => {
            cmd_normalize(sig.as_deref(), input, *fuel, *format)
        }
        Command::Compose { run, format } => cmd_compose(run, *format),
        Command::Classify { run } => cmd_classify(run),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
