//! `ucf`: command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use unionclosed::closure::close;
use unionclosed::constructions::{
    all_ksets_construction, colex_segment, maxlex_segment, minus_construction, plus_construction,
    Construction,
};
use unionclosed::harness::{run_suite, SuiteOptions, CLAIM_IDS, DEFAULT_SEED};
use unionclosed::orders::{initial_segment, rank, OrderKind};
use unionclosed::search::{f_min, Pruning, SearchConfig, SearchOutcome, UpperBoundSeed};
use unionclosed::shadows::{
    complement_transform, kk_min_upper_shadow, lower_shadow, total_upper_shadow_count,
    upper_shadow_iterated, UniformFamily,
};
use unionclosed::{ElementSet, Error, Family};

const EXIT_OK: i32 = 0;
const EXIT_CHECK_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ucf",
    version,
    about = "Union-closed families generated by k-sets",
    long_about = "Closures, set orders, shadows, extremal constructions, and the exact \
                  minimum f(n, k) of |<A>| over families of n distinct k-sets.\n\n\
                  Family files hold one set per line, labels 1..=64 separated by spaces; \
                  blank lines and lines starting with '#' are ignored. Use '-' for stdin.\n\n\
                  Exit status: 0 on success, 1 if a check fails, 2 on usage or input errors."
)]
struct Cli {
    /// Output format; `fmin` and `verify` default to json, the rest to plain.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Size (and optionally members) of the union closure of a family.
    Closure {
        /// Family file, or '-' for stdin.
        file: PathBuf,
        /// List the members of the closure.
        #[arg(long)]
        members: bool,
    },
    /// Initial segment of an order, or the rank of one set.
    Order(OrderArgs),
    /// Shadows of a uniform family inside [p].
    Shadow(ShadowArgs),
    /// Build a named construction and compare its predicted closure size.
    Construct(ConstructArgs),
    /// Exact f(n, k) by exhaustive search.
    Fmin(FminArgs),
    /// Run a named check and print its report.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct OrderArgs {
    /// colex, lex or max-lex.
    #[arg(long, value_parser = parse_order)]
    kind: OrderKind,
    /// Set size.
    #[arg(long)]
    k: u32,
    /// Segment length.
    #[arg(long, required_unless_present = "rank")]
    n: Option<usize>,
    /// Universe size p (required for lex).
    #[arg(long)]
    universe: Option<u32>,
    /// Print the 0-based rank of this set instead, e.g. "1 2 5".
    #[arg(long, conflicts_with = "n")]
    rank: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ShadowOp {
    /// Lower shadow.
    Lower,
    /// Upper shadow, applied --times times.
    Upper,
    /// Size of the total upper shadow.
    Total,
    /// The map A -> reflect(complement(A)).
    Complement,
    /// Least upper shadow size over families of the same size.
    KkMin,
}

#[derive(Args, Debug)]
struct ShadowArgs {
    /// Family file, or '-' for stdin.
    file: PathBuf,
    #[arg(long, value_enum)]
    op: ShadowOp,
    /// Universe size p.
    #[arg(long)]
    universe: u32,
    /// Iterations for the upper shadow.
    #[arg(long, default_value_t = 1)]
    times: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConstructKind {
    /// [t]^(k); needs --t.
    AllKsets,
    /// First n sets of colex; needs --n.
    Colex,
    /// First n sets of max-lex; needs --n.
    MaxLex,
    /// [t]^(k) minus a lifted colex segment of length l; needs --t, --l.
    Minus,
    /// [t]^(k) plus l pencil sets; needs --t, --l.
    Plus,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    kind: ConstructKind,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
}

#[derive(Args, Debug)]
struct FminArgs {
    /// Number of sets.
    #[arg(long)]
    n: usize,
    /// Set size.
    #[arg(long)]
    k: u32,
    /// Largest ground set explored (default n·k, at most 64).
    #[arg(long)]
    ground_cap: Option<u32>,
    /// Stop after this many nodes; the result is then marked incomplete.
    #[arg(long)]
    budget: Option<u64>,
    /// Checkpoint file; resumed from if it exists.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, env = "UCF_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Initial upper bound: max-lex, colex, none, or a number.
    #[arg(long, default_value = "max-lex", value_parser = parse_seed)]
    upper_bound: UpperBoundSeed,
    /// Disable the closure-size bound.
    #[arg(long)]
    no_bound: bool,
    /// Disable the ground-size caps.
    #[arg(long)]
    no_ground_prune: bool,
    /// Disable canonicity checks (duplicates are merged at the end).
    #[arg(long)]
    no_canonicity: bool,
    /// Check canonicity every this many levels (always at the last).
    #[arg(long, default_value_t = 1)]
    canonicity_interval: u32,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// counterexample, theorem2, conj7, conj8, prop9, lemmas, kk,
    /// constructions, oracle, or all.
    claim: String,
    /// Largest n for theorem2, conj8 and oracle.
    #[arg(long)]
    n_max: Option<usize>,
    /// k for conj7, conj8, prop9; largest k for constructions and oracle.
    #[arg(long)]
    k: Option<u32>,
    /// t for conj7; largest t for constructions.
    #[arg(long)]
    t: Option<u32>,
    /// Trials for the randomized suites.
    #[arg(long)]
    trials: Option<usize>,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for search-backed checks.
    #[arg(long, env = "UCF_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Also write the JSON report to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_order(s: &str) -> Result<OrderKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_seed(s: &str) -> Result<UpperBoundSeed, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

// Writes to stdout; a closed pipe ends the process quietly instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {
        write_stdout(format_args!($($arg)*))
    };
}

macro_rules! outln {
    ($($arg:tt)*) => {
        write_stdout(format_args!("{}\n", format_args!($($arg)*)))
    };
}

fn write_stdout(args: std::fmt::Arguments<'_>) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(EXIT_OK);
        }
        eprintln!("error: {e}");
        std::process::exit(EXIT_USAGE);
    }
}

/// Parses `argv`, runs the command, and returns the exit status.
pub fn main(argv: impl IntoIterator<Item = OsString>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_input(path: &Path) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

fn read_family(path: &Path) -> Result<Family, Error> {
    Family::parse(&read_input(path)?)
}

fn print_json(value: &impl serde::Serialize) {
    outln!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<i32, Error> {
    let format = cli.format;
    let plain = |default: Format| format.unwrap_or(default) == Format::Plain;
    match cli.command {
        Command::Closure { file, members } => {
            let family = read_family(&file)?;
            let closure = close(&family)?;
            if plain(Format::Plain) {
                outln!("size {}", closure.len());
                if members {
                    for m in closure.members() {
                        outln!("{}", m.to_line());
                    }
                }
            } else {
                let mut out = json!({ "size": closure.len() });
                if members {
                    out["members"] = json!(closure.members());
                }
                print_json(&out);
            }
        }
        Command::Order(args) => run_order(args, plain(Format::Plain))?,
        Command::Shadow(args) => run_shadow(args, plain(Format::Plain))?,
        Command::Construct(args) => run_construct(args, plain(Format::Plain))?,
        Command::Fmin(args) => run_fmin(args, plain(Format::Json))?,
        Command::Verify(args) => return run_verify(args, plain(Format::Json)),
    }
    Ok(EXIT_OK)
}

fn parse_set(text: &str) -> Result<ElementSet, Error> {
    let labels = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::Domain(format!("`{t}` is not an element label")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    ElementSet::try_from_labels(&labels)
}

fn run_order(args: OrderArgs, plain: bool) -> Result<(), Error> {
    if let Some(text) = &args.rank {
        let set = parse_set(text)?;
        if set.len() != args.k {
            return Err(Error::Domain(format!("{set} does not have {} elements", args.k)));
        }
        let r = rank(args.kind, set, args.universe)?;
        if plain {
            outln!("rank {r}");
        } else {
            print_json(&json!({ "order": args.kind, "set": set, "rank": r.to_string() }));
        }
        return Ok(());
    }
    let n = args.n.expect("clap requires n without rank");
    let family = initial_segment(args.kind, args.k, n, args.universe)?;
    if plain {
        outln!("# {} segment, k = {}, n = {n}", args.kind, args.k);
        out!("{}", family.to_text());
    } else {
        print_json(&json!({ "order": args.kind, "family": family }));
    }
    Ok(())
}

fn run_shadow(args: ShadowArgs, plain: bool) -> Result<(), Error> {
    let family = read_family(&args.file)?;
    let f = UniformFamily::from_family(&family, args.universe)?;
    let (size, members): (u128, Option<Vec<ElementSet>>) = match args.op {
        ShadowOp::Lower => {
            let s = lower_shadow(&f)?;
            (s.len() as u128, Some(s.members().collect()))
        }
        ShadowOp::Upper => {
            let s = upper_shadow_iterated(&f, args.times)?;
            (s.len() as u128, Some(s.members().collect()))
        }
        ShadowOp::Complement => {
            let s = complement_transform(&f);
            (s.len() as u128, Some(s.members().collect()))
        }
        ShadowOp::Total => (total_upper_shadow_count(&f), None),
        ShadowOp::KkMin => (kk_min_upper_shadow(f.len(), f.r(), args.universe)?, None),
    };
    if plain {
        outln!("size {size}");
        for m in members.iter().flatten() {
            outln!("{}", m.to_line());
        }
    } else {
        let mut out = json!({ "size": size.to_string() });
        if let Some(m) = members {
            out["members"] = json!(m);
        }
        print_json(&out);
    }
    Ok(())
}

fn need<T>(value: Option<T>, flag: &str, kind: &str) -> Result<T, Error> {
    value.ok_or_else(|| Error::Domain(format!("--{flag} is required for --kind {kind}")))
}

fn run_construct(args: ConstructArgs, plain: bool) -> Result<(), Error> {
    let k = args.k;
    let c: Construction = match args.kind {
        ConstructKind::AllKsets => all_ksets_construction(need(args.t, "t", "all-ksets")?, k)?,
        ConstructKind::Colex => colex_segment(k, need(args.n, "n", "colex")?)?,
        ConstructKind::MaxLex => maxlex_segment(k, need(args.n, "n", "max-lex")?)?,
        ConstructKind::Minus => minus_construction(need(args.t, "t", "minus")?, k, need(args.l, "l", "minus")?)?,
        ConstructKind::Plus => plus_construction(need(args.t, "t", "plus")?, k, need(args.l, "l", "plus")?)?,
    };
    let actual = close(&c.family)?.len();
    if plain {
        let kind = serde_json::to_value(c.kind).expect("serializable");
        outln!("# {} k = {} n = {}", kind.as_str().unwrap_or("?"), c.k, c.n);
        match c.predicted_size {
            Some(p) => outln!("# predicted {p}"),
            None => outln!("# predicted unknown"),
        }
        outln!("# actual {actual}");
        out!("{}", c.family.to_text());
    } else {
        print_json(&json!({
            "construction": c,
            "predicted_size": c.predicted_size.map(|p| p.to_string()),
            "actual_size": actual,
        }));
    }
    Ok(())
}

fn run_fmin(args: FminArgs, plain: bool) -> Result<(), Error> {
    let mut pruning = Pruning::ALL;
    pruning.bound = !args.no_bound;
    pruning.lemma3 = !args.no_ground_prune;
    pruning.pair_ground_cap = !args.no_ground_prune;
    pruning.canonicity = !args.no_canonicity;
    pruning.canonicity_interval = args.canonicity_interval;
    let mut config = SearchConfig::new(args.n, args.k)
        .with_pruning(pruning)
        .with_workers(args.workers)
        .with_seed(args.upper_bound);
    config.ground_cap = args.ground_cap;
    config.node_budget = args.budget;
    config.checkpoint = args.checkpoint;
    let outcome = f_min(&config)?;
    if plain {
        print_outcome(&outcome);
    } else {
        print_json(&outcome);
    }
    Ok(())
}

fn print_outcome(o: &SearchOutcome) {
    match o.minimum {
        Some(m) => outln!("minimum {m}"),
        None => outln!("minimum none"),
    }
    outln!("complete {}", o.complete);
    outln!(
        "witnesses {}{}",
        o.witness_count,
        if o.witnesses_truncated { " (truncated)" } else { "" }
    );
    outln!(
        "nodes {} pruned-bound {} pruned-canonicity {} pruned-ground {}",
        o.nodes_explored, o.pruned_by_bound, o.pruned_by_canonicity, o.pruned_by_lemma3
    );
    for (i, w) in o.witnesses.iter().enumerate() {
        outln!("# witness {}", i + 1);
        out!("{}", w.family().to_text());
    }
}

fn run_verify(args: VerifyArgs, plain: bool) -> Result<i32, Error> {
    let options = SuiteOptions {
        seed: args.seed,
        workers: args.workers.max(1),
        n_max: args.n_max,
        k: args.k,
        t: args.t,
        trials: args.trials,
    };
    let Some(file) = run_suite(&args.claim, &options) else {
        return Err(Error::Domain(format!(
            "unknown claim `{}`; expected one of {} or all",
            args.claim,
            CLAIM_IDS.join(", ")
        )));
    };
    if let Some(path) = &args.output {
        let text = serde_json::to_string_pretty(&file).expect("serializable");
        fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    if plain {
        outln!("# seed {} version {}", file.header.seed, file.header.version);
        for r in &file.reports {
            let status = serde_json::to_value(r.status).expect("serializable");
            outln!(
                "{} {} {} {} -> {} ({:.1} ms)",
                status.as_str().unwrap_or("?"),
                r.claim_id,
                r.parameters,
                r.expected,
                r.computed,
                r.runtime_ms
            );
        }
        outln!("passed {} failed {}", file.passed, file.failed);
    } else {
        print_json(&file);
    }
    Ok(if file.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
}
