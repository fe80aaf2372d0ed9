//! The `usvkit` command line. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code.

pub mod render;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use usvkit::geometry::{edge_set, extract_graph, validate_layout};
use usvkit::graphs::{classify, v_isomorphic};
use usvkit::io;
use usvkit::recognize::{enumerate_layout_classes, recognize_usgv, recognize_usv, RecognizeError, SearchBudget};
use usvkit::rectilinear::{drawing_to_weak_layout, layout_to_drawing, strengthen_weak_layout};
use usvkit::reduce::{
    normalize_nae, reduce_3partition, reduce_nae, solve_3partition, solve_nae, witness_layout_3partition,
    witness_layout_nae, NormalizeMode,
};
use usvkit::{Class, Graph, Layout, Rat, Verdict};

use render::{render_svg, RenderOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_NO: i32 = 10;
pub const EXIT_UNKNOWN: i32 = 20;

#[derive(Parser, Debug)]
#[command(name = "usvkit", version, about = "Unit square visibility layouts and graphs")]
struct Cli {
    /// Output format for verdicts and summaries.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    Usgv,
    Usv,
}

impl From<ClassArg> for Class {
    fn from(c: ClassArg) -> Class {
        match c {
            ClassArg::Usgv => Class::Usgv,
            ClassArg::Usv => Class::Usv,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Core,
    Full,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Maximum number of search nodes.
    #[arg(long)]
    budget: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Single-threaded search with a fixed expansion order.
    #[arg(long)]
    deterministic: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget, Failure> {
        let time_limit = match self.time_limit {
            Some(t) if !(t > 0.0 && t.is_finite()) => return Err(input("--time-limit must be a positive number")),
            Some(t) => Some(Duration::from_secs_f64(t)),
            None => None,
        };
        Ok(SearchBudget { max_nodes: self.budget, time_limit, deterministic: self.deterministic })
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the visibility graph of a layout.
    Extract { layout: PathBuf },
    /// Decide membership by exhaustive search.
    Recognize {
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Grid box width in cells.
        #[arg(long)]
        width: Option<i64>,
        /// Grid box height in cells.
        #[arg(long)]
        height: Option<i64>,
        /// LRDU or HV restriction file (grid class only).
        #[arg(long)]
        restriction: Option<PathBuf>,
        /// Denominator of free positions.
        #[arg(long)]
        denominator: Option<i64>,
        /// Largest free coordinate, e.g. `5` or `9/2`.
        #[arg(long)]
        bound: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Where to write the layout on a yes verdict [default: <graph>.witness.layout].
        #[arg(long)]
        witness: Option<PathBuf>,
        graph: PathBuf,
    },
    /// Decide membership by closed-form rules.
    Classify {
        #[arg(long, value_enum)]
        class: ClassArg,
        graph: PathBuf,
    },
    /// One layout per V-isomorphism class.
    EnumerateClasses {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        denominator: Option<i64>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Directory receiving class_<k>.layout files.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        graph: PathBuf,
    },
    /// Build the graph of a hardness reduction.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Check that a layout realizes a graph exactly.
    Verify { layout: PathBuf, graph: PathBuf },
    /// Check two layouts for V-isomorphism.
    Visomorphic { first: PathBuf, second: PathBuf },
    /// Draw a layout as SVG.
    Render {
        layout: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Pixels per unit.
        #[arg(long, default_value_t = 40)]
        scale: u32,
        #[arg(long)]
        show_visibilities: bool,
        #[arg(long)]
        show_crossings: bool,
    },
    /// Turn a rectilinear drawing into a grid layout.
    DrawingToLayout {
        drawing: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Remove visibilities that are not edges of the drawing.
        #[arg(long)]
        strong: bool,
    },
    /// Turn a grid layout into a rectilinear drawing.
    LayoutToDrawing {
        layout: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Remove the visibilities of a grid layout that are not edges of a graph.
    Strengthen {
        layout: PathBuf,
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ReduceCmd {
    /// Grid layouts in a bounded box.
    #[command(name = "3partition")]
    ThreePartition {
        instance: PathBuf,
        /// Graph file [default: stdout].
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Solve the instance and write a layout of the graph here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Free layouts from NAE-3SAT.
    Nae3sat {
        formula: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

/// An error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_INPUT, error: anyhow!("{e}") }
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_INTERNAL, error: anyhow!("{e}") }
}

struct Ctx {
    format: Format,
}

impl Ctx {
    /// One line on stdout: `key=value` pairs or a JSON object.
    fn summary(&self, fields: Value) {
        match self.format {
            Format::Json => println!("{fields}"),
            Format::Text => {
                let obj = fields.as_object().expect("summaries are objects");
                let parts: Vec<String> = obj
                    .iter()
                    .map(|(k, v)| match v {
                        Value::String(s) if s.contains(' ') => format!("{k}=\"{s}\""),
                        Value::String(s) => format!("{k}={s}"),
                        other => format!("{k}={other}"),
                    })
                    .collect();
                println!("{}", parts.join(" "));
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parsed<T>(path: &Path, r: Result<T, io::ParseError>) -> Result<T, Failure> {
    r.map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_layout(path: &Path) -> Result<Layout, Failure> {
    let l = parsed(path, io::parse_layout(&read(path)?))?;
    let report = validate_layout(&l);
    if !report.is_ok() {
        return Err(input(format!("{}: invalid layout: {report}", path.display())));
    }
    Ok(l)
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parsed(path, io::parse_graph(&read(path)?))
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Yes => EXIT_OK,
        Verdict::No => EXIT_NO,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn parse_rat(s: &str) -> Result<Rat, Failure> {
    let bad = || input(format!("'{s}' is not a rational number"));
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (i64, i64) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
            if q == 0 {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Vertex ids of `l` must be exactly `0..g.n()`.
fn same_vertices(l: &Layout, g: &Graph) -> bool {
    let mut ids = l.ids();
    ids.sort_unstable();
    ids == (0..g.n()).collect::<Vec<_>>()
}

/// Write `l` and check that the file reads back as a layout of `g`.
fn write_witness(path: &Path, l: &Layout, g: &Graph) -> Result<(), Failure> {
    write(path, &io::emit_layout(l))?;
    let back = load_layout(path).map_err(|f| internal(f.error))?;
    if !same_vertices(&back, g) || edge_set(&back).map_err(internal)? != g.edge_set() {
        return Err(internal(format!("{}: witness does not re-verify", path.display())));
    }
    Ok(())
}

fn default_witness(graph: &Path) -> PathBuf {
    let mut s = graph.as_os_str().to_owned();
    s.push(".witness.layout");
    PathBuf::from(s)
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Err(f) = configure_threads() {
        eprintln!("error: {}", f.error);
        return f.code;
    }
    let ctx = Ctx { format: cli.format };
    match dispatch(&ctx, cli.cmd) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.error);
            f.code
        }
    }
}

/// `USVKIT_THREADS` caps the worker pool of parallel searches.
fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("USVKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| input(format!("USVKIT_THREADS must be a positive integer, got '{v}'")))?;
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn dispatch(ctx: &Ctx, cmd: Cmd) -> Result<i32, Failure> {
    match cmd {
        Cmd::Extract { layout } => {
            let l = load_layout(&layout)?;
            let g = extract_graph(&l).map_err(internal)?;
            match ctx.format {
                Format::Text => print!("{}", io::emit_graph(&g)),
                Format::Json => {
                    let edges: Vec<[usize; 2]> = g.edges().iter().map(|&(u, v)| [u, v]).collect();
                    ctx.summary(json!({"command": "extract", "vertices": g.n(), "edges": edges}));
                }
            }
            Ok(EXIT_OK)
        }
        Cmd::Recognize { class, width, height, restriction, denominator, bound, budget, witness, graph } => {
            let g = load_graph(&graph)?;
            let b = budget.budget()?;
            let r = match class {
                ClassArg::Usgv => {
                    if denominator.is_some() || bound.is_some() {
                        return Err(input("--denominator and --bound apply to --class usv"));
                    }
                    let restr = match &restriction {
                        Some(p) => Some(parsed(p, io::parse_restriction(&read(p)?))?),
                        None => None,
                    };
                    recognize_usgv(&g, width, height, restr.as_ref(), &b)
                }
                ClassArg::Usv => {
                    if width.is_some() || height.is_some() || restriction.is_some() {
                        return Err(input("--width, --height and --restriction apply to --class usgv"));
                    }
                    let bound = bound.as_deref().map(parse_rat).transpose()?;
                    recognize_usv(&g, denominator, bound, &b)
                }
            };
            let r = r.map_err(|e| match e {
                RecognizeError::Unsound => internal(e),
                _ => input(e),
            })?;
            let mut fields = json!({
                "command": "recognize",
                "class": Class::from(class).name(),
                "verdict": r.verdict().to_string(),
                "engine": r.engine,
                "nodes": r.nodes,
                "elapsed_ms": r.elapsed.as_millis() as u64,
                "domain": r.domain,
            });
            if let Some(l) = r.outcome.layout() {
                let path = witness.unwrap_or_else(|| default_witness(&graph));
                write_witness(&path, l, &g)?;
                fields["witness"] = json!(path.display().to_string());
            }
            ctx.summary(fields);
            if r.verdict() == Verdict::No {
                eprintln!("no layout in the searched domain ({})", r.domain);
            }
            Ok(verdict_code(r.verdict()))
        }
        Cmd::Classify { class, graph } => {
            let g = load_graph(&graph)?;
            let c = classify(&g, class.into());
            ctx.summary(json!({
                "command": "classify",
                "class": Class::from(class).name(),
                "verdict": c.verdict.to_string(),
                "rule": c.rule,
            }));
            eprintln!("{}", c.detail);
            Ok(verdict_code(c.verdict))
        }
        Cmd::EnumerateClasses { class, denominator, budget, out_dir, graph } => {
            let g = load_graph(&graph)?;
            if matches!(class, ClassArg::Usgv) && denominator.is_some() {
                return Err(input("--denominator applies to --class usv"));
            }
            match enumerate_layout_classes(&g, class.into(), denominator, &budget.budget()?) {
                Ok(e) => {
                    if let Some(dir) = &out_dir {
                        fs::create_dir_all(dir).map_err(|err| input(format!("{}: {err}", dir.display())))?;
                        for (k, l) in e.classes.iter().enumerate() {
                            write(&dir.join(format!("class_{}.layout", k + 1)), &io::emit_layout(l))?;
                        }
                    }
                    ctx.summary(json!({
                        "command": "enumerate-classes",
                        "class": Class::from(class).name(),
                        "classes": e.classes.len(),
                        "layouts": e.layouts,
                        "nodes": e.nodes,
                        "domain": e.domain,
                    }));
                    Ok(EXIT_OK)
                }
                Err(RecognizeError::Partial { nodes, classes }) => {
                    ctx.summary(json!({
                        "command": "enumerate-classes",
                        "verdict": "unknown",
                        "classes_so_far": classes,
                        "nodes": nodes,
                    }));
                    eprintln!("budget exhausted; the class list is incomplete");
                    Ok(EXIT_UNKNOWN)
                }
                Err(e) => Err(input(e)),
            }
        }
        Cmd::Reduce(r) => reduce(ctx, r),
        Cmd::Verify { layout, graph } => {
            let l = load_layout(&layout)?;
            let g = load_graph(&graph)?;
            if !same_vertices(&l, &g) {
                return Err(input(format!("layout ids must be 0..{} to match the graph", g.n())));
            }
            let got = edge_set(&l).map_err(internal)?;
            let want = g.edge_set();
            let missing: Vec<_> = want.difference(&got).collect();
            let extra: Vec<_> = got.difference(&want).collect();
            let ok = missing.is_empty() && extra.is_empty();
            ctx.summary(json!({
                "command": "verify",
                "verdict": if ok { "yes" } else { "no" },
                "missing": missing.len(),
                "extra": extra.len(),
            }));
            for (u, v) in missing.iter().take(10) {
                eprintln!("missing edge {} {}", u + 1, v + 1);
            }
            for (u, v) in extra.iter().take(10) {
                eprintln!("extra edge {} {}", u + 1, v + 1);
            }
            Ok(if ok { EXIT_OK } else { EXIT_NO })
        }
        Cmd::Visomorphic { first, second } => {
            let a = load_layout(&first)?;
            let b = load_layout(&second)?;
            let iso = v_isomorphic(&a, &b).map_err(internal)?;
            ctx.summary(json!({"command": "visomorphic", "verdict": if iso { "yes" } else { "no" }}));
            Ok(if iso { EXIT_OK } else { EXIT_NO })
        }
        Cmd::Render { layout, output, scale, show_visibilities, show_crossings } => {
            let l = load_layout(&layout)?;
            if scale == 0 {
                return Err(input("--scale must be positive"));
            }
            if show_crossings && l.kind() != usvkit::Kind::Grid {
                return Err(input("--show-crossings needs a grid layout"));
            }
            let svg = render_svg(&l, &RenderOptions { scale, show_visibilities, show_crossings }).map_err(internal)?;
            write_or_print(output.as_deref(), &svg)?;
            Ok(EXIT_OK)
        }
        Cmd::DrawingToLayout { drawing, output, strong } => {
            let d = parsed(&drawing, io::parse_drawing(&read(&drawing)?))?;
            let weak = drawing_to_weak_layout(&d).map_err(|e| input(format!("{}: {e}", drawing.display())))?;
            let l = if strong { strengthen_weak_layout(&weak, &d.graph).map_err(internal)? } else { weak };
            write_or_print(output.as_deref(), &io::emit_layout(&l))?;
            Ok(EXIT_OK)
        }
        Cmd::LayoutToDrawing { layout, output } => {
            let l = load_layout(&layout)?;
            let d = layout_to_drawing(&l).map_err(|e| input(format!("{}: {e}", layout.display())))?;
            write_or_print(output.as_deref(), &io::emit_drawing(&d))?;
            Ok(EXIT_OK)
        }
        Cmd::Strengthen { layout, graph, output } => {
            let l = load_layout(&layout)?;
            let g = load_graph(&graph)?;
            let s = strengthen_weak_layout(&l, &g).map_err(input)?;
            write_or_print(output.as_deref(), &io::emit_layout(&s))?;
            Ok(EXIT_OK)
        }
    }
}

fn reduce(ctx: &Ctx, cmd: ReduceCmd) -> Result<i32, Failure> {
    match cmd {
        ReduceCmd::ThreePartition { instance, output, witness } => {
            let inst = parsed(&instance, io::parse_3partition(&read(&instance)?))?;
            let g = reduce_3partition(&inst).map_err(|e| input(format!("{}: {e}", instance.display())))?;
            write_or_print(output.as_deref(), &io::emit_graph(&g))?;
            let mut fields = json!({
                "command": "reduce 3partition",
                "vertices": g.n(),
                "edges": g.edge_count(),
            });
            let mut code = EXIT_OK;
            if let Some(path) = witness {
                match solve_3partition(&inst) {
                    Some(p) => {
                        // The box layout sees more than the graph; shifting
                        // removes the surplus at the cost of the box.
                        let weak = witness_layout_3partition(&inst, &p).map_err(internal)?;
                        let strong = strengthen_weak_layout(&weak, &g).map_err(internal)?;
                        write_witness(&path, &strong, &g)?;
                        let triples: Vec<Vec<u64>> = p.iter().map(|t| t.iter().map(|&i| inst.a[i]).collect()).collect();
                        fields["partition"] = json!(triples);
                        fields["witness"] = json!(path.display().to_string());
                    }
                    None => {
                        fields["verdict"] = json!("no");
                        eprintln!("the instance has no 3-partition; no witness written");
                        code = EXIT_NO;
                    }
                }
            }
            print_reduce_summary(ctx, output.is_none(), fields);
            Ok(code)
        }
        ReduceCmd::Nae3sat { formula, mode, output, witness } => {
            let cnf = parsed(&formula, io::parse_dimacs(&read(&formula)?))?;
            let mode = match mode {
                ModeArg::Core => NormalizeMode::Core,
                ModeArg::Full => NormalizeMode::Full,
            };
            let f = normalize_nae(&cnf, mode).map_err(|e| input(format!("{}: {e}", formula.display())))?;
            let g = reduce_nae(&f).map_err(internal)?;
            write_or_print(output.as_deref(), &io::emit_graph(&g))?;
            let mut fields = json!({
                "command": "reduce nae3sat",
                "clauses": f.m(),
                "variables": f.vars,
                "vertices": g.n(),
                "edges": g.edge_count(),
            });
            let mut code = EXIT_OK;
            if let Some(path) = witness {
                match solve_nae(&f) {
                    Some(a) => {
                        let l = witness_layout_nae(&f, &a).map_err(internal)?;
                        write_witness(&path, &l, &g)?;
                        let bits: String = f.project(&a).0.iter().map(|&b| if b { '1' } else { '0' }).collect();
                        fields["assignment"] = json!(bits);
                        fields["witness"] = json!(path.display().to_string());
                    }
                    None => {
                        fields["verdict"] = json!("no");
                        eprintln!("the formula is not NAE-satisfiable; no witness written");
                        code = EXIT_NO;
                    }
                }
            }
            print_reduce_summary(ctx, output.is_none(), fields);
            Ok(code)
        }
    }
}

/// With the graph on stdout the summary goes to stderr.
fn print_reduce_summary(ctx: &Ctx, graph_on_stdout: bool, fields: Value) {
    if graph_on_stdout {
        eprintln!("{fields}");
    } else {
        ctx.summary(fields);
    }
}

