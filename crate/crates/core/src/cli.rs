//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::batch::{batch_run, ResultLine, JOBS_ENV};
use crate::detect::detect_unique_perfect;
use crate::error::{Error, Result};
use crate::grid::{GridState, MarkerList, VertList};
use crate::ingest::{ingest_csv, IngestConfig};
use crate::oracle::enumerate_states;
use crate::render::{render, Format, RenderOptions};
use crate::search::{search_pipeline, SearchLimits, SearchStatus};
use crate::winding::{alexander_constant_from, w_matrix, winding_value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "gridforge",
    version,
    about = "Search for nice grid diagrams of fibered knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Row and column numbers and the unique-perfect-state test for one diagram.
    Check(DiagramArg),
    /// Search for a nice diagram of one knot.
    Search(SearchArgs),
    /// Search every fibered knot of a table, appending results as JSON lines.
    Batch(BatchArgs),
    /// Enumerate all grid states of a small diagram.
    Oracle(DiagramArg),
    /// Draw a diagram as text or SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
struct DiagramArg {
    /// Diagram as 1-based (tail,head) rows per column, e.g. "(2,1),(1,2)".
    #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
    vertlist: Option<String>,
    /// Diagram in grid notation, e.g. "[[1,1],[1,2],[2,1],[2,2]]".
    #[arg(long)]
    grid: Option<String>,
}

impl DiagramArg {
    fn diagram(&self) -> Result<VertList> {
        match (&self.vertlist, &self.grid) {
            (Some(v), _) => v.parse(),
            (None, Some(g)) => g.parse::<MarkerList>()?.to_vertlist(),
            (None, None) => Err(Error::Usage("a diagram is required".into())),
        }
    }
}

#[derive(Debug, Args)]
struct Budget {
    #[arg(long, default_value_t = 1_000_000)]
    max_nodes: u64,
    /// Wall clock per knot.
    #[arg(long, default_value_t = 600.0)]
    max_seconds: f64,
    #[arg(long, default_value_t = 4_000_000)]
    max_queue: usize,
}

impl Budget {
    fn limits(&self) -> Result<SearchLimits> {
        if !(self.max_seconds.is_finite() && self.max_seconds > 0.0) {
            return Err(Error::Usage("--max-seconds must be positive".into()));
        }
        let limits = SearchLimits {
            max_nodes: self.max_nodes,
            max_seconds: Duration::from_secs_f64(self.max_seconds),
            max_queue: self.max_queue,
        };
        limits.validate()?;
        Ok(limits)
    }
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Knot table in CSV form.
    #[arg(long)]
    db: PathBuf,
    /// Mirror marker rows while reading the table.
    #[arg(long)]
    row_flip: bool,
}

impl TableArgs {
    fn config(&self) -> IngestConfig {
        IngestConfig {
            row_flip: self.row_flip,
            ..IngestConfig::default()
        }
    }
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, conflicts_with_all = ["knot", "grid"])]
    vertlist: Option<String>,
    #[arg(long, conflicts_with = "knot")]
    grid: Option<String>,
    /// Knot name looked up in --db.
    #[arg(long, requires = "db", required_unless_present_any = ["vertlist", "grid"])]
    knot: Option<String>,
    #[arg(long)]
    db: Option<PathBuf>,
    #[arg(long)]
    row_flip: bool,
    /// Allow one stabilization after the commutation search.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    stabilize: u8,
    #[command(flatten)]
    budget: Budget,
    /// Append the result as a JSON line to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the result as a JSON line instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct BatchArgs {
    #[command(flatten)]
    table: TableArgs,
    #[arg(long)]
    out: PathBuf,
    /// Knots searched in parallel.
    #[arg(long, env = JOBS_ENV, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[command(flatten)]
    diagram: DiagramArg,
    /// Grid state as 1-based rows per column, e.g. "(1,2)".
    #[arg(long)]
    state: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    format: Format,
    /// Overlay winding numbers (SVG).
    #[arg(long)]
    winding: bool,
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) | Error::GenusMismatch { .. } => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Check(d) => check(&d.diagram()?, out),
        Command::Search(a) => search(&a, out),
        Command::Batch(a) => batch(&a, out, err),
        Command::Oracle(d) => oracle(&d.diagram()?, out),
        Command::Render(a) => {
            let v = a.diagram.diagram()?;
            let state = a
                .state
                .as_deref()
                .map(str::parse::<GridState>)
                .transpose()?;
            let text = render(
                &v,
                state.as_ref(),
                a.format,
                RenderOptions { winding: a.winding },
            )?;
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

fn check(v: &VertList, out: &mut dyn Write) -> Result<i32> {
    let m = w_matrix(v);
    let report = detect_unique_perfect(&m)?;
    writeln!(out, "diagram {v}")?;
    writeln!(out, "size {}", v.size())?;
    writeln!(out, "row_number {}", report.bounds.row_number)?;
    writeln!(out, "column_number {}", report.bounds.col_number)?;
    writeln!(out, "status {}", report.verdict.name())?;
    writeln!(out, "axis {}", report.axis)?;
    writeln!(out, "min_detections {}", report.min_detections)?;
    if let Some(x) = report.verdict.unique() {
        let a = winding_value(&m, x)? + alexander_constant_from(v, &m)?;
        writeln!(out, "state {x}")?;
        writeln!(out, "alexander {a}")?;
    }
    Ok(EXIT_OK)
}

fn search(a: &SearchArgs, out: &mut dyn Write) -> Result<i32> {
    let limits = a.budget.limits()?;
    let (name, start, genus) = if let Some(knot) = &a.knot {
        let db = a.db.as_ref().expect("clap enforces --db");
        let config = IngestConfig {
            row_flip: a.row_flip,
            ..IngestConfig::default()
        };
        let table = ingest_csv(db, &config)?;
        let rec = table
            .records
            .into_iter()
            .find(|r| &r.name == knot)
            .ok_or_else(|| {
                Error::Usage(format!(
                    "no fibered knot named {knot:?} in {}",
                    db.display()
                ))
            })?;
        (rec.name, rec.grid_notation.to_vertlist()?, Some(rec.genus))
    } else {
        let d = DiagramArg {
            vertlist: a.vertlist.clone(),
            grid: a.grid.clone(),
        };
        ("-".to_string(), d.diagram()?, None)
    };
    let outcome = search_pipeline(&start, &limits, a.stabilize == 1)?;
    let line = ResultLine::from_outcome(&name, start.size(), &outcome, genus);
    if let Some(path) = &a.out {
        line.append_to(path)?;
    }
    if a.json {
        writeln!(out, "{}", serde_json::to_string(&line)?)?;
    } else {
        writeln!(out, "knot {name}")?;
        writeln!(out, "status {}", outcome.status)?;
        if let Some(w) = &outcome.witness {
            writeln!(out, "grid_size {}", w.diagram.size())?;
            writeln!(out, "stabilizations {}", w.stabilizations)?;
            writeln!(out, "vertlist {}", w.diagram)?;
            writeln!(out, "state {}", w.state)?;
            writeln!(out, "alexander {}", w.alexander)?;
        }
        let s = &outcome.stats;
        writeln!(out, "nodes_explored {}", s.nodes_explored)?;
        writeln!(out, "duplicates_skipped {}", s.duplicates_skipped)?;
        writeln!(out, "frontier_peak {}", s.frontier_peak)?;
        writeln!(out, "seconds {:.3}", s.elapsed_seconds)?;
    }
    if let (Some(w), Some(g)) = (&outcome.witness, genus) {
        if w.alexander != g {
            return Err(Error::GenusMismatch {
                knot: name,
                alexander: w.alexander,
                genus: g,
            });
        }
    }
    Ok(match outcome.status {
        SearchStatus::NiceFound => EXIT_OK,
        _ => EXIT_NOT_FOUND,
    })
}

fn batch(a: &BatchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let limits = a.budget.limits()?;
    let table = ingest_csv(&a.table.db, &a.table.config())?;
    for r in &table.rejected {
        writeln!(err, "skipped line {} ({}): {}", r.line, r.name, r.reason)?;
    }
    let report = batch_run(&table.records, &limits, a.jobs, &a.out)?;
    writeln!(out, "{}", serde_json::to_string(&report.summary)?)?;
    writeln!(
        err,
        "searched {} knots, {} already in {}",
        report.searched,
        report.resumed,
        a.out.display()
    )?;
    Ok(if report.summary.nice_found == report.summary.knots {
        EXIT_OK
    } else {
        EXIT_NOT_FOUND
    })
}

fn oracle(v: &VertList, out: &mut dyn Write) -> Result<i32> {
    let r = enumerate_states(&w_matrix(v))?;
    writeln!(out, "size {}", r.size)?;
    writeln!(out, "bound {}", r.bound)?;
    writeln!(out, "max_winding {}", r.max_winding)?;
    writeln!(out, "argmax_count {}", r.argmax_count)?;
    writeln!(out, "perfect_count {}", r.perfect_count)?;
    for x in &r.witness_states {
        writeln!(out, "maximizer {x}")?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["gridforge"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn check_trefoil() {
        let (code, out, _) = run_str(&["check", "--vertlist", "(3,1),(4,2),(5,3),(1,4),(2,5)"]);
        assert_eq!(code, 0);
        assert!(out.contains("row_number 6\n"));
        assert!(out.contains("column_number 6\n"));
        assert!(out.contains("status unique\n"));
        assert!(out.contains("alexander 1\n"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&[]).0, 2);
        assert_eq!(run_str(&["check"]).0, 2);
        assert_eq!(run_str(&["check", "--vertlist", "(1,1)"]).0, 2);
        assert_eq!(
            run_str(&["search", "--vertlist", "(2,1),(1,2)", "--stabilize", "2"]).0,
            2
        );
        assert_eq!(run_str(&["search", "--knot", "3_1"]).0, 2);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("search"));
    }

    #[test]
    fn oracle_unknot() {
        let (code, out, _) = run_str(&["oracle", "--grid", "[[1,1],[1,2],[2,1],[2,2]]"]);
        assert_eq!(code, 0);
        assert!(out.contains("max_winding 1\n"));
        assert!(out.contains("perfect_count 1\n"));
    }

    #[test]
    fn render_ascii() {
        let (code, out, _) = run_str(&["render", "--vertlist", "(2,1),(1,2)", "--state", "(1,2)"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 5);
        assert_eq!(out.matches('*').count(), 2);
    }
}
