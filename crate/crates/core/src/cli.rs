//! Command-line front end.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::continuity::analyze;
use crate::doctrines::{Doctrine, DoctrinePair};
use crate::duality::{dual_of_inflattice, dual_of_lattice, roundtrip};
use crate::error::{Error, Result};
use crate::gelfand::{approximate_inverse, iota_transpose, urysohn_separate, GridDual};
use crate::interval::{fmt_q, parse_q, PLMap, Q};
use crate::io::{pl_from_value, pl_to_value, poset_to_value, read_poset, read_value, table_to_value, to_dot};
use crate::order::{enumerate_lattices, enumerate_posets, FinPoset};
use crate::suite::{replay, run_suite, Outcome, SuiteParams, DEFAULT_SEED};
use crate::umodules::{
    closed_invariant_filter, dist, le_r, morphisms_to_i, rho, stack_glue, FunctionModule, IntervalModule,
    InvariantFilter, PLModule,
};

/// Writes a line to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

#[derive(Debug, Parser)]
#[command(name = "ordkit", version, about = "Finite order theory, join doctrines and [0,1]-valued dualities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate posets or lattices up to isomorphism.
    Posets {
        #[command(subcommand)]
        action: PosetsCmd,
    },
    /// Way-below relation and continuity report for a lattice.
    Continuity {
        #[arg(long, default_value = "directed")]
        doctrine: String,
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Two-valued dual of a lattice or inflattice.
    Dual {
        #[arg(long, default_value = "directed")]
        doctrine: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Direction::Lattice)]
        direction: Direction,
    },
    /// Piecewise-linear maps of [0,1].
    Pl {
        #[command(subcommand)]
        action: PlCmd,
    },
    /// Modules over the monoid of surjections of [0,1].
    Umod {
        #[command(subcommand)]
        action: UmodCmd,
    },
    /// Morphisms into [0,1] and approximate inverses.
    Gelfand {
        #[command(subcommand)]
        action: GelfandCmd,
    },
    /// Verification suites.
    Suite {
        #[command(subcommand)]
        action: SuiteCmd,
    },
    /// Re-run a counterexample payload written by a suite.
    Replay { file: PathBuf },
    /// Convert a poset file to canonical JSON or a DOT Hasse diagram.
    Export {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Direction {
    Lattice,
    Inflattice,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum PosetsCmd {
    Enumerate {
        #[arg(short = 'n')]
        n: usize,
        /// Only complete lattices.
        #[arg(long)]
        lattices: bool,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum PlCmd {
    Eval {
        #[arg(long)]
        f: String,
        #[arg(long)]
        x: String,
    },
    /// `f ∘ g`.
    Compose {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    Adjoint {
        #[arg(long)]
        f: String,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
    },
    Rho {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    Classify {
        #[arg(long)]
        f: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Args)]
pub struct ModuleArgs {
    #[arg(long, value_enum, default_value_t = ModuleKind::Interval)]
    pub module: ModuleKind,
    /// Base lattice for `function`.
    #[arg(long)]
    pub lattice: Option<PathBuf>,
    #[arg(long, default_value = "directed")]
    pub doctrine: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModuleKind {
    Interval,
    Function,
    Pl,
}

#[derive(Debug, Subcommand)]
pub enum UmodCmd {
    #[command(name = "le_r", alias = "le-r")]
    LeR {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        r: String,
    },
    Rho {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    Glue {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        r: String,
    },
    /// Invariant closed filters: of the given generators, or all of them.
    Filters {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long = "gen")]
        generators: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GelfandCmd {
    Urysohn {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long, default_value = "directed")]
        doctrine: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 3)]
        depth: u32,
    },
    #[command(name = "approx-inverse")]
    ApproxInverse {
        #[arg(long)]
        n: usize,
        /// Base lattice of the function module; the interval when absent.
        #[arg(long)]
        module: Option<PathBuf>,
        /// `{"a0": element}` or `{"filters": [[element, ...], ...]}`.
        #[arg(long)]
        f: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum SuiteCmd {
    Run {
        name: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        /// Include wall time in the report.
        #[arg(long)]
        timing: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    List,
}

/// A JSON argument given inline or as `@path`; bare words become strings.
fn json_arg(s: &str) -> Result<Value> {
    if let Some(path) = s.strip_prefix('@') {
        return read_value(std::path::Path::new(path));
    }
    Ok(serde_json::from_str(s).unwrap_or_else(|_| Value::String(s.to_string())))
}

fn q_arg(s: &str) -> Result<Q> {
    parse_q(s)
}

fn pl_arg(s: &str) -> Result<PLMap> {
    pl_from_value(&json_arg(s)?)
}

fn rational_value(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) => parse_q(&n.to_string()),
        _ => Err(Error::Schema { pointer: String::new(), message: "expected a rational".into() }),
    }
}

fn function_module(m: &ModuleArgs) -> Result<FunctionModule> {
    let path = m.lattice.as_ref().ok_or_else(|| Error::Precondition("--lattice is required for --module function".into()))?;
    FunctionModule::new(read_poset(path)?, DoctrinePair::parse(&m.doctrine)?)
}

fn filter_json<E>(f: &InvariantFilter<E>, show: impl Fn(&E) -> Value) -> Value {
    json!(f.indicators.iter().map(show).collect::<Vec<_>>())
}

fn print(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn label_index(x: &FinPoset, s: &str) -> Result<usize> {
    x.index_of_label(s).ok_or_else(|| Error::Precondition(format!("no element labelled `{s}`")))
}

fn run_umod(cmd: &UmodCmd) -> Result<i32> {
    macro_rules! dispatch {
        ($m:expr, $parse:expr, $show:expr) => {{
            let m = $m;
            let parse = $parse;
            let show = $show;
            match cmd {
                UmodCmd::LeR { a, b, r, .. } => {
                    let (a, b) = (parse(&m, a)?, parse(&m, b)?);
                    print(&json!({ "le_r": le_r(&m, &a, &b, &q_arg(r)?) }));
                }
                UmodCmd::Rho { a, b, .. } => {
                    let (a, b) = (parse(&m, a)?, parse(&m, b)?);
                    print(&json!({ "rho": fmt_q(&rho(&m, &a, &b)?), "dist": fmt_q(&dist(&m, &a, &b)?) }));
                }
                UmodCmd::Glue { a, b, r, .. } => {
                    let (a, b) = (parse(&m, a)?, parse(&m, b)?);
                    let c = stack_glue(&m, &q_arg(r)?, &a, &b)?;
                    print(&json!({ "glued": show(&m, &c) }));
                }
                UmodCmd::Filters { generators, .. } => {
                    let filters = if generators.is_empty() {
                        morphisms_to_i(&m)?
                    } else {
                        let gens = generators.iter().map(|g| parse(&m, g)).collect::<Result<Vec<_>>>()?;
                        vec![closed_invariant_filter(&m, &gens)?]
                    };
                    let out: Vec<Value> = filters.iter().map(|f| filter_json(f, |e| show(&m, e))).collect();
                    print(&json!({ "filters": out }));
                }
            }
            Ok(0)
        }};
    }
    let margs = match cmd {
        UmodCmd::LeR { m, .. } | UmodCmd::Rho { m, .. } | UmodCmd::Glue { m, .. } | UmodCmd::Filters { m, .. } => m,
    };
    match margs.module {
        ModuleKind::Interval => dispatch!(
            IntervalModule::new(DoctrinePair::parse(&margs.doctrine)?),
            |_: &IntervalModule, s: &String| q_arg(s),
            |_: &IntervalModule, x: &Q| Value::String(fmt_q(x))
        ),
        ModuleKind::Function => dispatch!(
            function_module(margs)?,
            |m: &FunctionModule, s: &String| m.element_from_json(&json_arg(s)?),
            |m: &FunctionModule, x: &Vec<Q>| m.element_to_json(x)
        ),
        ModuleKind::Pl => {
            if matches!(cmd, UmodCmd::Filters { .. }) {
                return Err(Error::Unsupported("filters are enumerable only for coordinate modules".into()));
            }
            let parse_pl = |_: &PLModule, s: &String| -> Result<PLMap> {
                let f = pl_arg(s)?;
                if !f.in_uhat() {
                    return Err(Error::Precondition(format!("{} is not in Û", f.to_json_string())));
                }
                Ok(f)
            };
            let m = PLModule;
            match cmd {
                UmodCmd::LeR { a, b, r, .. } => {
                    print(&json!({ "le_r": le_r(&m, &parse_pl(&m, a)?, &parse_pl(&m, b)?, &q_arg(r)?) }))
                }
                UmodCmd::Rho { a, b, .. } => {
                    let (a, b) = (parse_pl(&m, a)?, parse_pl(&m, b)?);
                    print(&json!({ "rho": fmt_q(&rho(&m, &a, &b)?), "dist": fmt_q(&dist(&m, &a, &b)?) }))
                }
                UmodCmd::Glue { a, b, r, .. } => {
                    let c = stack_glue(&m, &q_arg(r)?, &parse_pl(&m, a)?, &parse_pl(&m, b)?)?;
                    print(&json!({ "glued": pl_to_value(&c) }))
                }
                UmodCmd::Filters { .. } => unreachable!(),
            }
            Ok(0)
        }
    }
}

fn grid_dual_interval(m: &IntervalModule, v: &Value, n: usize) -> Result<GridDual<Q>> {
    if let Some(a0) = v.get("a0") {
        return iota_transpose(m, &rational_value(a0)?, n);
    }
    let fs = v.get("filters").and_then(Value::as_array).ok_or_else(|| Error::Schema {
        pointer: "/filters".into(),
        message: "expected `a0` or `filters`".into(),
    })?;
    let filters = fs
        .iter()
        .map(|gens| {
            let gens = gens.as_array().cloned().unwrap_or_default();
            let gens = gens.iter().map(rational_value).collect::<Result<Vec<_>>>()?;
            closed_invariant_filter(m, &gens)
        })
        .collect::<Result<_>>()?;
    Ok(GridDual { n, filters })
}

fn grid_dual_function(m: &FunctionModule, v: &Value, n: usize) -> Result<GridDual<Vec<Q>>> {
    if let Some(a0) = v.get("a0") {
        return iota_transpose(m, &m.element_from_json(a0)?, n);
    }
    let fs = v.get("filters").and_then(Value::as_array).ok_or_else(|| Error::Schema {
        pointer: "/filters".into(),
        message: "expected `a0` or `filters`".into(),
    })?;
    let filters = fs
        .iter()
        .map(|gens| {
            let gens = gens.as_array().cloned().unwrap_or_default();
            let gens = gens.iter().map(|g| m.element_from_json(g)).collect::<Result<Vec<_>>>()?;
            closed_invariant_filter(m, &gens)
        })
        .collect::<Result<_>>()?;
    Ok(GridDual { n, filters })
}

fn run_gelfand(cmd: &GelfandCmd) -> Result<i32> {
    match cmd {
        GelfandCmd::Urysohn { lattice, doctrine, y, x, depth } => {
            let l = read_poset(lattice)?;
            let d = Doctrine::parse(doctrine)?;
            let f = urysohn_separate(&l, &d, label_index(&l, y)?, label_index(&l, x)?, *depth)?;
            let lower: Vec<String> = f.lower.iter().map(|&i| l.label(i)).collect();
            print(&json!({
                "values": table_to_value(&l, &f.values),
                "depth": f.depth,
                "lower_adjoint": lower,
                "preserves_meets": f.preserves_meets,
                "preserves_joins": f.preserves_joins,
            }));
        }
        GelfandCmd::ApproxInverse { n, module, f } => {
            let v = read_value(f)?;
            match module {
                None => {
                    let m = IntervalModule::default();
                    let a = approximate_inverse(&m, &grid_dual_interval(&m, &v, *n)?)?;
                    print(&json!({ "a": fmt_q(&a), "bound": fmt_q(&Q::new(2.into(), (*n).into())) }));
                }
                Some(path) => {
                    let m = FunctionModule::directed(read_poset(path)?)?;
                    let a = approximate_inverse(&m, &grid_dual_function(&m, &v, *n)?)?;
                    print(&json!({ "a": m.element_to_json(&a), "bound": fmt_q(&Q::new(2.into(), (*n).into())) }));
                }
            }
        }
    }
    Ok(0)
}

fn run_pl(cmd: &PlCmd) -> Result<i32> {
    match cmd {
        PlCmd::Eval { f, x } => {
            let f = pl_arg(f)?;
            let x = q_arg(x)?;
            print(&json!({
                "value": fmt_q(&f.eval(&x)),
                "left_limit": fmt_q(&f.left_limit(&x)),
                "right_limit": fmt_q(&f.right_limit(&x)),
            }));
        }
        PlCmd::Compose { f, g } => print(&pl_to_value(&pl_arg(f)?.compose(&pl_arg(g)?))),
        PlCmd::Adjoint { f, side } => {
            let f = pl_arg(f)?;
            let a = match side {
                Side::Right => f.right_adjoint()?,
                Side::Left => f.left_adjoint()?,
            };
            print(&pl_to_value(&a));
        }
        PlCmd::Rho { f, g } => print(&json!({ "rho": fmt_q(&pl_arg(f)?.linf_rho(&pl_arg(g)?)) })),
        PlCmd::Classify { f } => {
            let c = pl_arg(f)?.classify();
            print(&json!({ "in_u": c.in_u, "in_uhat": c.in_uhat, "continuous": c.continuous, "surjective": c.surjective }));
        }
    }
    Ok(0)
}

fn run_command(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Posets { action: PosetsCmd::Enumerate { n, lattices, count } } => {
            let list = if *lattices { enumerate_lattices(*n)? } else { enumerate_posets(*n)? };
            if *count {
                out!("{}", list.len());
            } else {
                print(&json!(list.iter().map(poset_to_value).collect::<Vec<_>>()));
            }
            Ok(0)
        }
        Command::Continuity { doctrine, lattice } => {
            let x = read_poset(lattice)?;
            let r = analyze(&x, &Doctrine::parse(doctrine)?)?;
            let compacts: Vec<String> = r.compacts.iter().map(|&i| x.label(i)).collect();
            print(&json!({
                "continuous": r.continuous,
                "algebraic": r.algebraic,
                "compacts": compacts,
                "waybelow": r.waybelow,
                "distributivity_witness": r.distributivity_witness,
            }));
            Ok(0)
        }
        Command::Dual { doctrine, input, direction } => {
            let x = read_poset(input)?;
            let pair = DoctrinePair::parse(doctrine)?;
            match direction {
                Direction::Lattice => {
                    let d = dual_of_lattice(&x, &pair)?;
                    let w = roundtrip(&x, &pair)?;
                    let elements: Vec<String> = d.elements.iter().map(|&i| x.label(i)).collect();
                    print(&json!({
                        "dual": poset_to_value(&d.poset),
                        "elements": elements,
                        "roundtrip": w.forward.values,
                    }));
                }
                Direction::Inflattice => {
                    let d = dual_of_inflattice(&x, &pair)?;
                    let sets: Vec<Vec<String>> = d.sets.iter().map(|s| s.iter().map(|i| x.label(i)).collect()).collect();
                    print(&json!({ "dual": poset_to_value(&d.lattice), "sets": sets }));
                }
            }
            Ok(0)
        }
        Command::Pl { action } => run_pl(action),
        Command::Umod { action } => run_umod(action),
        Command::Gelfand { action } => run_gelfand(action),
        Command::Suite { action: SuiteCmd::List } => {
            for s in crate::suite::SUITES {
                out!("{s}");
            }
            Ok(0)
        }
        Command::Suite { action: SuiteCmd::Run { name, seed, max_size, samples, timing, out } } => {
            let params = SuiteParams { max_size: *max_size, seed: *seed, samples: *samples }.with_env()?;
            let report = run_suite(name, &params)?;
            let text = serde_json::to_string_pretty(&report.to_json(*timing)).expect("serializable");
            match out {
                Some(p) => std::fs::write(p, text + "\n")?,
                None => out!("{text}"),
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Replay { file } => match replay(&read_value(file)?)? {
            Outcome::Pass => {
                out!("pass");
                Ok(0)
            }
            Outcome::Skipped(m) => {
                out!("skipped: {m}");
                Ok(0)
            }
            Outcome::Fail(m) => {
                out!("fail: {m}");
                Ok(1)
            }
        },
        Command::Export { input, format } => {
            let x = read_poset(input)?;
            match format {
                Format::Dot => out!("{}", to_dot(&x).trim_end()),
                Format::Json => out!("{}", crate::io::poset_to_string(&x)),
            }
            Ok(0)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Schema { .. }
        | Error::UnknownSuite(_)
        | Error::UnknownDoctrine(_)
        | Error::Precondition(_)
        | Error::Io(_)
        | Error::Unsupported(_) => 2,
        _ => 1,
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_command(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
