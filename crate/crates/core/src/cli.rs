//! Batch front end. `run` never exits the process; `main` does that with the
//! returned code.
//!
//! Exit codes: 0 success, 1 the run worked but the finding is negative
//! (out of class, no configuration, negative charges, UNSAT, failed
//! verification), 2 bad input or usage.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coloring::{
    reduce_and_color, verify_coloring, DefectiveColoring, ListAssignment, Oracle, OracleOutcome,
    ReductionOutcome, DEFAULT_BUDGET,
};
use crate::discharging::{
    apply_discharging, audit, fmt_rational, initial_charges, Element, RuleSet,
};
use crate::graph::{EmbeddedGraph, Graph, TriangleMode};
use crate::io::generators::{gen_subdivision, gen_torus_grid};
use crate::io::{
    emit_coloring, emit_graph6, emit_lists, emit_rotation, parse_coloring, parse_graph_input,
    parse_lists, CorpusEntry, Palette,
};
use crate::structures::{class_membership, find_all_configurations, Case};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "toruscolor", version, about = "Embeddings, discharging audits and defective list colorings")]
struct Cli {
    /// One `key=value` record per line instead of the readable report.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Face census and genus of a rotation file.
    Faces { file: PathBuf },
    /// Class membership of an embedded graph.
    Class {
        file: PathBuf,
        #[arg(long, default_value = "cycles")]
        triangle_mode: String,
    },
    /// All reducible configurations of a graph6 or rotation file.
    Configs { file: PathBuf },
    /// Run a rule set and audit the final charges.
    Discharge {
        file: PathBuf,
        #[arg(long, required_unless_present = "rules", conflicts_with = "rules")]
        case: Option<u8>,
        #[arg(long)]
        rules: Option<PathBuf>,
        /// Also print every transfer.
        #[arg(long)]
        ledger: bool,
    },
    /// Constructive (L,1)-coloring for lists of size at least 3.
    Color {
        graph: PathBuf,
        #[command(flatten)]
        lists: ListArgs,
        #[arg(long)]
        emit_coloring: Option<PathBuf>,
    },
    /// Exhaustive search for an (L,d)-coloring.
    Oracle {
        graph: PathBuf,
        #[command(flatten)]
        lists: ListArgs,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        emit_coloring: Option<PathBuf>,
    },
    /// Check a coloring file against a list file.
    Verify {
        graph: PathBuf,
        #[arg(long)]
        lists: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Emit generated graphs.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(clap::Args, Debug)]
struct ListArgs {
    /// A list file, or `random` for seeded random lists.
    #[arg(long)]
    lists: String,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of colors random lists draw from.
    #[arg(long, default_value_t = 5)]
    palette: usize,
    /// Size of each random list.
    #[arg(long, default_value_t = 3)]
    list_size: usize,
    /// Write the lists actually used to this file.
    #[arg(long)]
    emit_lists: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Toroidal grid C_m x C_n as a rotation file.
    Grid {
        m: usize,
        n: usize,
        #[arg(long)]
        diagonals: bool,
    },
    /// Subdivide every edge `k` times; keeps the input format.
    Subdiv { file: PathBuf, k: usize },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

struct Output {
    code: i32,
    text: String,
}

fn ok(text: String) -> Output {
    Output { code: 0, text }
}

fn verdict(good: bool, text: String) -> Output {
    Output {
        code: if good { 0 } else { 1 },
        text,
    }
}

pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandResult {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CommandResult {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => CommandResult {
            code: out.code,
            stdout: out.text,
            stderr: String::new(),
        },
        Err(Failure(msg)) => CommandResult {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let m = cli.machine;
    match &cli.command {
        Command::Faces { file } => faces(&read_embedding(file)?, m),
        Command::Class {
            file,
            triangle_mode,
        } => {
            let mode: TriangleMode = triangle_mode.parse()?;
            class(&read_embedding(file)?, mode, m)
        }
        Command::Configs { file } => {
            let (g, e) = read_graph(file)?;
            configs(&g, e.as_ref(), m)
        }
        Command::Discharge {
            file,
            case,
            rules,
            ledger,
        } => {
            let e = read_embedding(file)?;
            let (rule_set, case) = match (case, rules) {
                (Some(c), _) => {
                    let case = Case::from_number(*c)
                        .ok_or_else(|| Failure(format!("--case must be 1 or 2, got {c}")))?;
                    (RuleSet::builtin(case), Some(case))
                }
                (None, Some(path)) => (RuleSet::parse(&read(path)?)?, None),
                (None, None) => return Err(Failure("give --case or --rules".into())),
            };
            discharge(&e, &rule_set, case, *ledger, m)
        }
        Command::Color {
            graph,
            lists,
            emit_coloring,
        } => {
            let (g, _) = read_graph(graph)?;
            let (l, palette, header) = load_lists(lists, g.vertex_count(), m)?;
            color(&g, &l, &palette, header, emit_coloring.as_deref(), m)
        }
        Command::Oracle {
            graph,
            lists,
            d,
            budget,
            emit_coloring,
        } => {
            let (g, _) = read_graph(graph)?;
            let (l, palette, header) = load_lists(lists, g.vertex_count(), m)?;
            oracle(&g, &l, &palette, header, *d, *budget, emit_coloring.as_deref(), m)
        }
        Command::Verify {
            graph,
            lists,
            coloring,
            d,
        } => {
            let (g, _) = read_graph(graph)?;
            let mut palette = Palette::new();
            let l = parse_lists(&read(lists)?, g.vertex_count(), &mut palette)?;
            let phi = parse_coloring(&read(coloring)?, g.vertex_count(), &mut palette)?;
            verify(&g, &l, &phi, *d, m)
        }
        Command::Gen(GenCommand::Grid { m: rows, n, diagonals }) => {
            let entry = gen_torus_grid(*rows, *n, *diagonals)?;
            Ok(ok(emit_entry(&entry)))
        }
        Command::Gen(GenCommand::Subdiv { file, k }) => {
            let (g, e) = read_graph(file)?;
            let entry = match e {
                Some(e) => CorpusEntry::embedded("input", e, "input"),
                None => CorpusEntry::abstract_graph("input", &g, "input"),
            };
            Ok(ok(emit_entry(&gen_subdivision(&entry, *k))))
        }
    }
}

fn emit_entry(entry: &CorpusEntry) -> String {
    match &entry.embedding {
        Some(e) => emit_rotation(e),
        None => format!("{}\n", emit_graph6(&entry.graph)),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<(Graph, Option<EmbeddedGraph>), Failure> {
    Ok(parse_graph_input(&read(path)?)?)
}

fn read_embedding(path: &Path) -> Result<EmbeddedGraph, Failure> {
    match read_graph(path)? {
        (_, Some(e)) => Ok(e),
        (_, None) => Err(Failure(format!(
            "{}: needs a rotation file, got an abstract graph",
            path.display()
        ))),
    }
}

/// Lists from a file or from the seeded generator, plus a header line
/// describing where they came from.
fn load_lists(
    args: &ListArgs,
    n: usize,
    machine: bool,
) -> Result<(ListAssignment, Palette, String), Failure> {
    let (lists, palette, header) = if args.lists == "random" {
        let seed = match (args.seed, machine) {
            (Some(s), _) => s,
            (None, false) => 0,
            (None, true) => return Err(Failure("--seed is required for random lists in machine mode".into())),
        };
        if args.palette < args.list_size {
            return Err(Failure(format!(
                "palette of {} colors cannot fill lists of size {}",
                args.palette, args.list_size
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lists = ListAssignment::random(n, args.list_size, args.palette, &mut rng);
        let header = if machine {
            format!("lists=random seed={seed} palette={} size={}", args.palette, args.list_size)
        } else {
            format!("lists random seed {seed} palette {} size {}", args.palette, args.list_size)
        };
        (lists, Palette::numeric(args.palette), header)
    } else {
        let mut palette = Palette::new();
        let lists = parse_lists(&read(Path::new(&args.lists))?, n, &mut palette)?;
        let header = if machine {
            format!("lists=file min_size={}", lists.min_size())
        } else {
            format!("lists from {} (smallest has {} colors)", args.lists, lists.min_size())
        };
        (lists, palette, header)
    };
    if let Some(path) = &args.emit_lists {
        write(path, &emit_lists(&lists, &palette))?;
    }
    Ok((lists, palette, header))
}

fn faces(e: &EmbeddedGraph, machine: bool) -> Result<Output, Failure> {
    let fs = e.faces();
    let mut out = String::new();
    if machine {
        writeln!(
            out,
            "vertices={} edges={} faces={} genus={}",
            e.vertex_count(),
            e.edge_count(),
            e.face_count(),
            e.genus()
        )?;
        for (i, f) in fs.faces().iter().enumerate() {
            writeln!(out, "face={i} degree={} vertices={}", f.degree(), join(&f.vertices(), ","))?;
        }
    } else {
        writeln!(
            out,
            "V={} E={} F={} genus {}",
            e.vertex_count(),
            e.edge_count(),
            e.face_count(),
            e.genus()
        )?;
        let max = fs.faces().iter().map(|f| f.degree()).max().unwrap_or(0);
        for d in 0..=max {
            let count = fs.faces().iter().filter(|f| f.degree() == d).count();
            if count > 0 {
                writeln!(out, "{count} face(s) of degree {d}")?;
            }
        }
        for (i, f) in fs.faces().iter().enumerate() {
            writeln!(out, "face {i}: {}", join(&f.vertices(), " "))?;
        }
    }
    Ok(ok(out))
}

fn class(e: &EmbeddedGraph, mode: TriangleMode, machine: bool) -> Result<Output, Failure> {
    let r = class_membership(e, mode);
    let mut out = String::new();
    let l = if r.qualifying_l.is_empty() {
        "none".to_string()
    } else {
        join(&r.qualifying_l, ",")
    };
    if machine {
        writeln!(
            out,
            "in_class={} genus={} genus_ok={} min_degree={} adjacent_triangles={} c5={} c6={} c7={} qualifying_l={l}",
            r.in_class, r.genus, r.genus_ok, r.min_degree, r.adjacent_triangles,
            r.has_5_cycle, r.has_6_cycle, r.has_7_cycle
        )?;
    } else {
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(out, "in class: {}", yn(r.in_class))?;
        writeln!(out, "genus {} ({})", r.genus, if r.genus_ok { "ok" } else { "too large" })?;
        writeln!(out, "minimum degree {}", r.min_degree)?;
        writeln!(out, "adjacent triangles: {}", yn(r.adjacent_triangles))?;
        writeln!(out, "5-cycle: {}", yn(r.has_5_cycle))?;
        writeln!(out, "6-cycle: {}", yn(r.has_6_cycle))?;
        writeln!(out, "7-cycle: {}", yn(r.has_7_cycle))?;
        writeln!(out, "qualifying l: {l}")?;
    }
    Ok(verdict(r.in_class, out))
}

fn configs(g: &Graph, e: Option<&EmbeddedGraph>, machine: bool) -> Result<Output, Failure> {
    let all = find_all_configurations(g, e);
    let mut out = String::new();
    for c in &all {
        if machine {
            let face = c.face_id.map_or("none".to_string(), |f| f.to_string());
            writeln!(out, "kind={} witness={} face={face}", c.kind.label(), join(&c.witness, ","))?;
        } else {
            writeln!(out, "{c}")?;
        }
    }
    if all.is_empty() {
        out.push_str(if machine { "kind=none\n" } else { "NotFound\n" });
    }
    Ok(verdict(!all.is_empty(), out))
}

fn discharge(
    e: &EmbeddedGraph,
    rules: &RuleSet,
    case: Option<Case>,
    ledger: bool,
    machine: bool,
) -> Result<Output, Failure> {
    let (fin, led) = apply_discharging(e, rules);
    let report = audit(&fin, e, case)?;
    let replay_ok = led.replay(&initial_charges(e)) == fin;
    let mut out = String::new();
    if machine {
        writeln!(
            out,
            "genus={} total={} expected={} conserved={} replay={} negatives={}",
            report.genus,
            fmt_rational(&report.total),
            fmt_rational(&report.expected_total),
            report.conserved(),
            replay_ok,
            report.negatives.len()
        )?;
        for (el, c) in fin.elements() {
            let (kind, i) = match el {
                Element::Vertex(v) => ("vertex", v),
                Element::Face(f) => ("face", f),
            };
            writeln!(out, "element={kind} index={i} charge={}", fmt_rational(&c))?;
        }
        for t in &report.templates {
            writeln!(
                out,
                "template={} face={} bound={} charge={} met={}",
                t.template.label(),
                t.face,
                fmt_rational(&t.bound),
                fmt_rational(&t.charge),
                t.met()
            )?;
        }
        if ledger {
            for t in &led.entries {
                writeln!(
                    out,
                    "transfer_from={} transfer_to={} rule={} amount={}",
                    t.source.to_string().replace(' ', ":"),
                    t.target.to_string().replace(' ', ":"),
                    t.rule + 1,
                    fmt_rational(&t.amount())
                )?;
            }
        }
    } else {
        out.push_str(&report.emit());
        writeln!(out, "ledger replay {}", if replay_ok { "matches" } else { "differs" })?;
        if ledger {
            out.push_str("ledger\n");
            out.push_str(&led.emit());
        }
    }
    Ok(verdict(report.negatives.is_empty() && report.conserved() && replay_ok, out))
}

fn color(
    g: &Graph,
    lists: &ListAssignment,
    palette: &Palette,
    header: String,
    emit_to: Option<&Path>,
    machine: bool,
) -> Result<Output, Failure> {
    let outcome = reduce_and_color(g, lists)?;
    let mut out = format!("{header}\n");
    let tok = |set: &std::collections::BTreeSet<u32>, sep: &str| {
        set.iter().map(|&c| palette.token(c)).collect::<Vec<_>>().join(sep)
    };
    match outcome {
        ReductionOutcome::Colored { coloring, trace } => {
            let verdict_ok = verify_coloring(g, lists, &coloring, 1).is_ok();
            for (i, step) in trace.steps.iter().enumerate() {
                let residual: Vec<String> = step
                    .residual
                    .iter()
                    .map(|(v, l)| if machine { format!("{v}:{}", tok(l, "|")) } else { format!("{v}:{{{}}}", tok(l, " ")) })
                    .collect();
                if machine {
                    writeln!(
                        out,
                        "step={} kind={} witness={} residual={}",
                        i + 1,
                        step.config.kind.label(),
                        join(&step.config.witness, ","),
                        residual.join(",")
                    )?;
                } else {
                    writeln!(out, "step {} {} residual {}", i + 1, step.config, residual.join(" "))?;
                }
            }
            if machine {
                writeln!(out, "result=colored verified={verdict_ok} d=1")?;
                for (v, &c) in coloring.colors.iter().enumerate() {
                    writeln!(out, "vertex={v} color={}", palette.token(c))?;
                }
            } else {
                writeln!(
                    out,
                    "colored, {} d=1",
                    if verdict_ok { "verified" } else { "VERIFICATION FAILED" }
                )?;
                out.push_str(&emit_coloring(&coloring, palette));
            }
            if let Some(path) = emit_to {
                write(path, &emit_coloring(&coloring, palette))?;
            }
            Ok(verdict(verdict_ok, out))
        }
        ReductionOutcome::Stuck(stuck) => {
            if machine {
                writeln!(out, "result=stuck steps={} remaining={}", stuck.trace.steps.len(), join(&stuck.remaining, ","))?;
            } else {
                writeln!(
                    out,
                    "stuck after {} steps; no configuration among {}",
                    stuck.trace.steps.len(),
                    join(&stuck.remaining, " ")
                )?;
            }
            Ok(verdict(false, out))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn oracle(
    g: &Graph,
    lists: &ListAssignment,
    palette: &Palette,
    header: String,
    d: usize,
    budget: u64,
    emit_to: Option<&Path>,
    machine: bool,
) -> Result<Output, Failure> {
    let mut out = format!("{header}\n");
    match Oracle::with_budget(budget).solve(g, lists, d) {
        Ok(OracleOutcome::Satisfiable(phi)) => {
            if machine {
                writeln!(out, "result=sat d={d}")?;
                for (v, &c) in phi.colors.iter().enumerate() {
                    writeln!(out, "vertex={v} color={}", palette.token(c))?;
                }
            } else {
                writeln!(out, "SAT d={d}")?;
                out.push_str(&emit_coloring(&phi, palette));
            }
            if let Some(path) = emit_to {
                write(path, &emit_coloring(&phi, palette))?;
            }
            Ok(ok(out))
        }
        Ok(OracleOutcome::Unsatisfiable) => {
            out.push_str(if machine { "result=unsat\n" } else { "UNSAT\n" });
            Ok(verdict(false, out))
        }
        Err(crate::coloring::ColoringError::BudgetExceeded(b)) => {
            if machine {
                writeln!(out, "result=unknown budget={b}")?;
            } else {
                writeln!(out, "UNKNOWN: budget of {b} expansions exhausted")?;
            }
            Ok(verdict(false, out))
        }
        Err(e) => Err(e.into()),
    }
}

fn verify(
    g: &Graph,
    lists: &ListAssignment,
    phi: &DefectiveColoring,
    d: usize,
    machine: bool,
) -> Result<Output, Failure> {
    let v = verify_coloring(g, lists, phi, d);
    let mut out = String::new();
    if machine {
        writeln!(out, "valid={} d={d} violations={}", v.is_ok(), v.violations.len())?;
        for x in &v.violations {
            writeln!(out, "violation={}", x.to_string().replace(' ', "_"))?;
        }
    } else {
        writeln!(out, "{} d={d}", if v.is_ok() { "valid" } else { "invalid" })?;
        for x in &v.violations {
            writeln!(out, "{x}")?;
        }
    }
    Ok(verdict(v.is_ok(), out))
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}
