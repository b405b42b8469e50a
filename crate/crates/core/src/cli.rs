//! The `qdom` command line.
//!
//! Every subcommand prints a human-readable report followed by one JSON line.
//! Exit status: 0 on success, 1 when a check fails or no placement exists,
//! 2 on usage errors.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::annulus::{analyze, AnnulusReport, Inequality};
use crate::board::{coverage, dominates, Placement};
use crate::bounds::{bound_reports, fixpoint_lb, ub_connected};
use crate::construction::{construct_connected, validate_construction};
use crate::error::Error;
use crate::solver::{feasible, Method, SolveRequest, SolveResult, Variant};
use crate::text::{read_placement, write_placement};
use crate::visibility::{build_visibility, component_count, every_queen_sees_another};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "qdom",
    version,
    about = "Queen domination solver and bound checker"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute an exact minimum.
    Solve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        variant: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "bb")]
        method: String,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        node_limit: Option<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Append a result record to this ledger.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Write the witness placement here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print closed-form bounds.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Build and validate the three-block connected placement.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Annulus decomposition, commonality tally and inequality report.
    Analyze {
        #[arg(long)]
        placement: PathBuf,
    },
    /// Check a placement against a variant.
    Verify {
        #[arg(long)]
        placement: PathBuf,
        #[arg(long)]
        variant: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Solve a range of boards and variants.
    Scan {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Comma-separated variant names.
        #[arg(long, value_delimiter = ',')]
        variant: Vec<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "bb")]
        method: String,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

/// One line of the results ledger.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub n: usize,
    pub variant: String,
    pub k: Option<usize>,
    pub value: Option<usize>,
    pub lb: usize,
    pub ub: Option<usize>,
    pub placement: Vec<[usize; 2]>,
    pub method: String,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub proven_optimal: bool,
    pub tool_version: String,
}

impl ResultRecord {
    pub fn from_result(r: &SolveResult) -> Self {
        let ub = match r.variant {
            Variant::Total => None,
            _ => Some(ub_connected(r.n).value),
        };
        ResultRecord {
            n: r.n,
            variant: r.variant.name().to_string(),
            k: r.variant.k(),
            value: r.value,
            lb: r.variant.lower_bound(r.n),
            ub,
            placement: r
                .witness
                .as_ref()
                .map(|w| w.queens().iter().map(|q| [q.x, q.y]).collect())
                .unwrap_or_default(),
            method: r.method.name().to_string(),
            nodes: r.nodes_explored,
            elapsed_ms: r.elapsed.as_millis() as u64,
            proven_optimal: r.proven_optimal,
            tool_version: TOOL_VERSION.to_string(),
        }
    }
}

/// Appends one record as a single newline-terminated write.
pub fn append_record(path: &Path, record: &ResultRecord) -> std::io::Result<()> {
    let mut line = serde_json::to_string(record).map_err(std::io::Error::other)?;
    line.push('\n');
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    f.write_all(line.as_bytes())
}

/// Reads every record of a ledger.
pub fn read_records(path: &Path) -> crate::error::Result<Vec<ResultRecord>> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

const OK: i32 = 0;
const FINDING: i32 = 1;
const USAGE: i32 = 2;

/// Runs the CLI on `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Infeasible { .. } => FINDING,
                _ => USAGE,
            }
        }
    }
}

fn json<T: Serialize>(out: &mut dyn Write, value: &T) -> crate::error::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string(value).map_err(std::io::Error::other)?
    )?;
    Ok(())
}

fn dispatch(command: Command, out: &mut dyn Write) -> crate::error::Result<i32> {
    match command {
        Command::Solve {
            n,
            variant,
            k,
            method,
            max_size,
            node_limit,
            workers,
            cache,
            out: witness_path,
        } => {
            let mut req = SolveRequest::new(n, Variant::parse(&variant, k)?)
                .method(method.parse::<Method>()?)
                .workers(workers);
            req.max_size = max_size;
            req.node_limit = node_limit;
            let result = match req.solve() {
                Err(Error::BoardTooLarge { .. }) => {
                    writeln!(out, "board too large for exact search; bounds only:")?;
                    for b in bound_reports(n, k.unwrap_or(1))? {
                        writeln!(out, "{b}")?;
                    }
                    return Ok(USAGE);
                }
                other => other?,
            };
            writeln!(out, "{result}")?;
            let record = ResultRecord::from_result(&result);
            if let Some(w) = &result.witness {
                let qs: Vec<String> = w.queens().iter().map(|q| format!("({q})")).collect();
                writeln!(out, "witness: {}", qs.join(" "))?;
                if let Some(path) = witness_path {
                    write_placement(&path, w)?;
                }
            }
            if let Some(path) = cache {
                append_record(&path, &record)?;
            }
            json(out, &record)?;
            Ok(if result.proven_optimal { OK } else { FINDING })
        }
        Command::Bounds { n, k } => {
            let reports = bound_reports(n, k)?;
            for b in &reports {
                writeln!(out, "{b}")?;
            }
            writeln!(out, "fixpoint   n={n:<4} lb={}", fixpoint_lb(n))?;
            json(out, &reports)?;
            Ok(OK)
        }
        Command::Construct { n, out: path } => {
            let outcome = construct_connected(n)?;
            let report = validate_construction(&outcome);
            writeln!(out, "{report}")?;
            if let Some(path) = path {
                write_placement(&path, &outcome.placement)?;
            }
            json(out, &report)?;
            Ok(if report.dominating && report.connected {
                OK
            } else {
                FINDING
            })
        }
        Command::Analyze { placement } => {
            let p = read_placement(&placement)?;
            let graph = build_visibility(&p);
            writeln!(
                out,
                "n={} queens={} edges={}",
                p.n(),
                p.n_q(),
                graph.edge_count()
            )?;
            writeln!(out, "edges:")?;
            for e in graph.edge_list() {
                writeln!(out, "  {e}")?;
            }
            match analyze(&p) {
                Ok(report) => {
                    print_annulus(out, &report)?;
                    json(out, &report)?;
                    Ok(if annulus_findings(&p, &report) {
                        FINDING
                    } else {
                        OK
                    })
                }
                Err(Error::Degenerate(why)) => {
                    writeln!(out, "annulus decomposition not applicable: {why}")?;
                    Ok(OK)
                }
                Err(e) => Err(e),
            }
        }
        Command::Verify {
            placement,
            variant,
            k,
        } => {
            let p = read_placement(&placement)?;
            let variant = Variant::parse(&variant, k)?;
            let yn = |b: bool| if b { "yes" } else { "no" };
            let graph = build_visibility(&p);
            let components = component_count(&graph).ok();
            let sees = every_queen_sees_another(&graph).unwrap_or(false);
            let ok = feasible(&p, variant);
            writeln!(
                out,
                "dominating: {}, connected: {}, every queen seen: {}",
                yn(dominates(&p)),
                yn(components == Some(1)),
                yn(sees)
            )?;
            writeln!(
                out,
                "queens: {}, uncovered: {}, components: {}",
                p.n_q(),
                coverage(&p).uncovered,
                components.unwrap_or(0)
            )?;
            writeln!(
                out,
                "{variant}: {}",
                if ok { "feasible" } else { "infeasible" }
            )?;
            Ok(if ok { OK } else { FINDING })
        }
        Command::Scan {
            n_min,
            n_max,
            variant,
            k,
            method,
            workers,
            cache,
        } => {
            let method = method.parse::<Method>()?;
            let variants = variant
                .iter()
                .map(|v| Variant::parse(v.trim(), k))
                .collect::<crate::error::Result<Vec<_>>>()?;
            let mut code = OK;
            for n in n_min..=n_max {
                for &v in &variants {
                    let req = SolveRequest::new(n, v).method(method).workers(workers);
                    match req.solve() {
                        Ok(r) => {
                            writeln!(out, "{r}")?;
                            let record = ResultRecord::from_result(&r);
                            if let Some(path) = &cache {
                                append_record(path, &record)?;
                            }
                            json(out, &record)?;
                            if !r.proven_optimal {
                                code = FINDING;
                            }
                        }
                        Err(e @ (Error::Infeasible { .. } | Error::BoardTooLarge { .. })) => {
                            writeln!(out, "n={n} variant={v}: {e}")?;
                            code = FINDING;
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            Ok(code)
        }
    }
}

fn print_annulus(out: &mut dyn Write, r: &AnnulusReport) -> std::io::Result<()> {
    let s = r.sentinels;
    writeln!(
        out,
        "sentinels: x1={} x2={} y1={} y2={}",
        s.x1, s.x2, s.y1, s.y2
    )?;
    let qs: Vec<String> = r
        .queen_counts
        .iter()
        .enumerate()
        .map(|(i, c)| format!("Q{}={c}", i + 1))
        .collect();
    writeln!(out, "regions: {}", qs.join(" "))?;
    writeln!(out, "annulus size: {}", r.annulus_size)?;
    let t = r.tally;
    writeln!(
        out,
        "commonality: R(I)={} C(I)={} D(on A)={} D(off A)={} R(II)={} C(II)={} total={}",
        t.common_r_i,
        t.common_c_i,
        t.common_d_on_annulus,
        t.common_d_off_annulus,
        t.common_r_ii,
        t.common_c_ii,
        t.total()
    )?;
    for ineq in &r.inequalities {
        writeln!(out, "{ineq}")?;
    }
    Ok(())
}

/// (II) and (V) must hold for every decomposable placement; (I), (III) and
/// (IV) only for dominating ones.
fn annulus_findings(p: &Placement, r: &AnnulusReport) -> bool {
    let dom = dominates(p);
    r.inequalities.iter().any(|i| {
        !i.holds
            && match i.which {
                Inequality::II | Inequality::V => true,
                Inequality::I | Inequality::III | Inequality::IV => dom,
            }
    })
}
