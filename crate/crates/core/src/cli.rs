//! Command-line front end. [`run`] is the whole program minus process I/O so
//! it can be driven from tests.
//!
//! Exit codes: 0 when the requested object was decided to exist (or the
//! command simply succeeded), 1 when it was decided not to exist or a
//! verification failed, 2 on input or usage errors.
//!
//! DOT output (`--dot`) marks forest arcs and perfect-forest edges with
//! `style=bold`. JSON output (`--json`) always carries
//! `"schema": "outforest/v1"`.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::connectivity::classify;
use crate::exec::Execution;
use crate::forest::{verify, ForestKind, OutForest};
use crate::gadget::{build_gadget, decide_weak};
use crate::hardness::reduce_3dm;
use crate::io::{
    digraph_dot, parse_3dm, parse_digraph, parse_forest, parse_ugraph, ugraph_dot, write_correspondence,
    write_digraph, write_forest, write_reduction_map, write_ugraph,
};
use crate::lemmas::{perfect_forest_undirected, weak_to_almost};
use crate::matching::maximum_matching;
use crate::oracle::{oracle_forest_with, oracle_matching, OracleBudget};
use crate::graph::Digraph;

pub const JSON_SCHEMA: &str = "outforest/v1";

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome { code: 0, stdout, stderr: String::new() }
    }

    fn absent(stdout: String) -> Self {
        CommandOutcome { code: 1, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        CommandOutcome { code: 2, stdout: String::new(), stderr }
    }

    fn warn(mut self, w: Option<String>) -> Self {
        if let Some(w) = w {
            self.stderr.insert_str(0, &format!("warning: {w}\n"));
        }
        self
    }
}

#[derive(Debug, Parser)]
#[command(name = "outforest", version, about = "Perfect-forest variants in digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Largest vertex count the exhaustive search accepts.
    #[arg(long, default_value_t = 10)]
    max_vertices: usize,
    /// Largest number of search states.
    #[arg(long, default_value_t = 100_000_000)]
    max_states: u64,
    /// Wall-clock limit in milliseconds.
    #[arg(long)]
    time_limit_ms: Option<u64>,
    /// Do not split the search across threads.
    #[arg(long)]
    sequential: bool,
}

impl BudgetArgs {
    fn budget(&self) -> OracleBudget {
        let b = OracleBudget::default().with_max_vertices(self.max_vertices).with_max_states(self.max_states);
        match self.time_limit_ms {
            Some(ms) => b.with_time_limit(Duration::from_millis(ms)),
            None => b,
        }
    }

    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the connectivity class of a digraph.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a forest of the given kind exists and print one.
    Decide {
        #[arg(long)]
        kind: ForestKind,
        /// Use exhaustive search (required for `perfect`).
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dot: bool,
        file: PathBuf,
    },
    /// Write a forest file of the given kind.
    Construct {
        #[arg(long)]
        kind: ForestKind,
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Output path; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        file: PathBuf,
    },
    /// Check a forest file against a digraph.
    Verify {
        #[arg(long)]
        kind: ForestKind,
        digraph: PathBuf,
        forest: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Emit the matching gadget of a digraph as an undirected edge list.
    Gadget {
        file: PathBuf,
        /// Write the block/pair correspondence here.
        #[arg(long)]
        correspondence: Option<PathBuf>,
        #[arg(long)]
        dot: bool,
    },
    /// Maximum matching of an undirected edge list.
    Match {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Reduce a 3-dimensional matching instance to a digraph.
    #[command(name = "reduce-3dm")]
    Reduce3dm {
        file: PathBuf,
        /// Write the vertex layout here.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long)]
        dot: bool,
    },
    /// Exhaustive search for a forest (or, with --matching, a maximum matching).
    Oracle {
        #[arg(long, required_unless_present = "matching")]
        kind: Option<ForestKind>,
        /// Read an undirected graph and compute a maximum matching.
        #[arg(long, conflicts_with = "kind")]
        matching: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        file: PathBuf,
    },
    /// Perfect forest of a connected undirected graph of even order.
    Scott {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
}

fn read(path: &Path) -> Result<String, CommandOutcome> {
    fs::read_to_string(path).map_err(|e| CommandOutcome::usage(format!("{}: {e}", path.display())))
}

fn load_digraph(path: &Path) -> Result<Digraph, CommandOutcome> {
    parse_digraph(&read(path)?).map_err(|e| CommandOutcome::usage(format!("{}: {e}", path.display())))
}

fn forest_json(f: &OutForest) -> Value {
    json!({ "roots": f.roots(), "arcs": f.arcs() })
}

fn disconnected_warning(d: &Digraph) -> Option<String> {
    (!classify(d).is_connected()).then(|| "input digraph is not connected".to_string())
}

/// Finds a forest of `kind`, exhaustively when `oracle` is set.
fn find_forest(d: &Digraph, kind: ForestKind, oracle: bool, budget: &BudgetArgs) -> Result<Option<OutForest>, CommandOutcome> {
    if oracle {
        return oracle_forest_with(d, kind, budget.budget(), budget.exec()).map_err(|e| CommandOutcome::usage(e.to_string()));
    }
    Ok(match kind {
        ForestKind::Perfect => {
            return Err(CommandOutcome::usage("perfect out-forest decision is NP-hard; rerun with --oracle"))
        }
        ForestKind::WeakPerfect | ForestKind::Even => decide_weak(d),
        ForestKind::AlmostPerfect => decide_weak(d).map(|f| weak_to_almost(d, &f).expect("decided forest is weak perfect")),
    })
}

fn dispatch(cmd: Command) -> Result<CommandOutcome, CommandOutcome> {
    match cmd {
        Command::Classify { file, json } => {
            let class = classify(&load_digraph(&file)?);
            Ok(CommandOutcome::ok(if json {
                format!("{}\n", json!({ "schema": JSON_SCHEMA, "class": class.as_str() }))
            } else {
                format!("{class}\n")
            }))
        }
        Command::Decide { kind, oracle, budget, json, dot, file } => {
            let d = load_digraph(&file)?;
            let warning = disconnected_warning(&d);
            let found = find_forest(&d, kind, oracle, &budget)?;
            let out = if json {
                format!(
                    "{}\n",
                    json!({
                        "schema": JSON_SCHEMA,
                        "kind": kind.as_str(),
                        "exists": found.is_some(),
                        "forest": found.as_ref().map(forest_json),
                    })
                )
            } else {
                match &found {
                    Some(f) if dot => digraph_dot(&d, Some(f)),
                    Some(f) => format!("{kind} out-forest found\n{}", write_forest(f)),
                    None => format!("no {kind} out-forest\n"),
                }
            };
            let outcome = if found.is_some() { CommandOutcome::ok(out) } else { CommandOutcome::absent(out) };
            Ok(outcome.warn(warning))
        }
        Command::Construct { kind, oracle, budget, output, file } => {
            let d = load_digraph(&file)?;
            let warning = disconnected_warning(&d);
            let Some(f) = find_forest(&d, kind, oracle, &budget)? else {
                return Ok(CommandOutcome::absent(format!("no {kind} out-forest\n")).warn(warning));
            };
            let text = write_forest(&f);
            let outcome = match output {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| CommandOutcome::usage(format!("{}: {e}", path.display())))?;
                    CommandOutcome::ok(String::new())
                }
                None => CommandOutcome::ok(text),
            };
            Ok(outcome.warn(warning))
        }
        Command::Verify { kind, digraph, forest, json } => {
            let d = load_digraph(&digraph)?;
            let f = parse_forest(&read(&forest)?)
                .map_err(|e| CommandOutcome::usage(format!("{}: {e}", forest.display())))?;
            let report = verify(&d, &f, kind);
            let out = if json {
                format!("{}\n", json!({ "schema": JSON_SCHEMA, "kind": kind.as_str(), "report": report }))
            } else {
                let mut s = format!("{}: {kind}\n", if report.passed() { "pass" } else { "fail" });
                for v in &report.violations {
                    s.push_str(&format!("  {}\n", serde_json::to_string(v).unwrap()));
                }
                s
            };
            Ok(if report.passed() { CommandOutcome::ok(out) } else { CommandOutcome::absent(out) })
        }
        Command::Gadget { file, correspondence, dot } => {
            let d = load_digraph(&file)?;
            let (g, c) = build_gadget(&d).map_err(|e| CommandOutcome::usage(e.to_string()))?;
            if let Some(path) = correspondence {
                fs::write(&path, write_correspondence(&c))
                    .map_err(|e| CommandOutcome::usage(format!("{}: {e}", path.display())))?;
            }
            Ok(CommandOutcome::ok(if dot { ugraph_dot(&g, None) } else { write_ugraph(&g) }))
        }
        Command::Match { file, json, dot } => {
            let g = parse_ugraph(&read(&file)?).map_err(|e| CommandOutcome::usage(format!("{}: {e}", file.display())))?;
            let m = maximum_matching(&g);
            let edges = m.edges();
            Ok(CommandOutcome::ok(if json {
                format!(
                    "{}\n",
                    json!({ "schema": JSON_SCHEMA, "size": m.len(), "perfect": m.is_perfect(), "edges": edges })
                )
            } else if dot {
                ugraph_dot(&g, Some(&edges))
            } else {
                let mut s = format!("matching size {}\n", m.len());
                for (a, b) in edges {
                    s.push_str(&format!("{a} {b}\n"));
                }
                s
            }))
        }
        Command::Reduce3dm { file, map, dot } => {
            let inst = parse_3dm(&read(&file)?).map_err(|e| CommandOutcome::usage(format!("{}: {e}", file.display())))?;
            let (d, layout) = reduce_3dm(&inst).map_err(|e| CommandOutcome::usage(e.to_string()))?;
            if let Some(path) = map {
                fs::write(&path, write_reduction_map(&layout))
                    .map_err(|e| CommandOutcome::usage(format!("{}: {e}", path.display())))?;
            }
            let warning = layout
                .is_degenerate()
                .then(|| "m = k: no X vertices, the digraph need not be strongly connected".to_string());
            Ok(CommandOutcome::ok(if dot { digraph_dot(&d, None) } else { write_digraph(&d) }).warn(warning))
        }
        Command::Oracle { kind, matching, budget, file } => {
            if matching {
                let g = parse_ugraph(&read(&file)?)
                    .map_err(|e| CommandOutcome::usage(format!("{}: {e}", file.display())))?;
                let m = oracle_matching(&g, budget.budget()).map_err(|e| CommandOutcome::usage(e.to_string()))?;
                let mut s = format!("matching size {}\n", m.len());
                for (a, b) in m.edges() {
                    s.push_str(&format!("{a} {b}\n"));
                }
                return Ok(CommandOutcome::ok(s));
            }
            let kind = kind.expect("clap requires --kind without --matching");
            let d = load_digraph(&file)?;
            Ok(match find_forest(&d, kind, true, &budget)? {
                Some(f) => CommandOutcome::ok(format!("{kind} out-forest found\n{}", write_forest(&f))),
                None => CommandOutcome::absent(format!("no {kind} out-forest\n")),
            })
        }
        Command::Scott { file, json, dot } => {
            let g = parse_ugraph(&read(&file)?).map_err(|e| CommandOutcome::usage(format!("{}: {e}", file.display())))?;
            let found = perfect_forest_undirected(&g);
            let out = if json {
                format!("{}\n", json!({ "schema": JSON_SCHEMA, "exists": found.is_some(), "edges": found }))
            } else {
                match &found {
                    Some(edges) if dot => ugraph_dot(&g, Some(edges)),
                    Some(edges) => {
                        let mut s = format!("perfect forest with {} edges\n", edges.len());
                        for (a, b) in edges {
                            s.push_str(&format!("{a} {b}\n"));
                        }
                        s
                    }
                    None => "no perfect forest (graph is disconnected or of odd order)\n".to_string(),
                }
            };
            Ok(if found.is_some() { CommandOutcome::ok(out) } else { CommandOutcome::absent(out) })
        }
    }
}

/// Runs the tool on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome::usage(text)
            } else {
                CommandOutcome::ok(text)
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(|e| e)
}
