mod report;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use ramseylab::machinery::{
    balance_pipeline, choose_apexes, derandomized_split, peel_min_degree, property_suite,
    prune_bipartite, verify_constant_inequalities, BipartiteGraph, Verdict, DEFAULT_A,
};
use ramseylab::{
    decide_ramsey, export_cnf, find_loose_path, find_mono_loose_path, full_star, is_star,
    pair_cover, ramsey_bounds, star_clique_coloring, turan_max_edges, Coloring, ForbiddenPattern,
    Hypergraph, PathLength, RamseyVerdict, SearchConfig, TuranStatus,
};

use report::{Failure, Outcome, RunReport, Status, EXIT_USAGE};

/// Loose-path Ramsey and Turán computations for k-uniform hypergraphs.
#[derive(Parser, Debug)]
#[command(name = "ramseylab", version)]
struct Cli {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Look for a pattern in a hypergraph, or in each class of a coloring.
    Detect {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        pattern: Pattern,
        /// The input is a coloring file.
        #[arg(long)]
        coloring: bool,
    },
    /// Decide whether every r-coloring of K_n^(k) has a monochromatic loose 3-path.
    Ramsey {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        r: u32,
        /// Skip colorings that differ by permuting the vertices outside the first edge.
        #[arg(long)]
        vertex_pruning: bool,
        /// Where to write the witness coloring.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Maximum edges of an n-vertex k-graph avoiding a loose path.
    Turan {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum)]
        pattern: TuranPattern,
        /// Where to write the extremal hypergraph.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write an extremal coloring or hypergraph.
    Construct {
        #[command(subcommand)]
        what: Construction,
    },
    /// Check a coloring file for monochromatic loose 3-paths.
    VerifyColoring { file: PathBuf },
    /// Export the Ramsey instance as DIMACS CNF.
    Cnf {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify the constant inequalities exactly.
    Constants {
        #[arg(long)]
        k: u64,
        #[arg(long = "A", default_value_t = DEFAULT_A)]
        a: u64,
        /// Values of r for the per-r color-class inequality.
        #[arg(long, value_delimiter = ',', default_values_t = [1000u64])]
        r_list: Vec<u64>,
    },
    /// Closed-form bounds on R(P^(k); r).
    Bounds {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        r: u64,
    },
    /// Run one of the constructive proof steps on a hypergraph file.
    Machinery {
        #[arg(value_enum)]
        step: Step,
        #[arg(long)]
        input: PathBuf,
    },
    /// Seeded postcondition suite over random instances.
    Selfcheck {
        /// Defaults to $RAMSEYLAB_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        instances: usize,
    },
}

#[derive(Args, Debug, Serialize)]
struct SearchArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// Node budget; 0 means unlimited.
    #[arg(long, default_value_t = 0)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Construction {
    /// r-1 stars plus a clique on K_{r+3k-4}^(k).
    StarClique {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Every edge through one vertex.
    FullStar {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        center: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Every edge through two fixed vertices.
    PairCover {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, num_args = 2, default_values_t = [0usize, 1])]
        pair: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Pattern {
    #[value(name = "loose-path-2")]
    #[serde(rename = "loose-path-2")]
    LoosePath2,
    #[value(name = "loose-path-3")]
    #[serde(rename = "loose-path-3")]
    LoosePath3,
    Star,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum TuranPattern {
    #[value(name = "loose-path-2")]
    #[serde(rename = "loose-path-2")]
    LoosePath2,
    #[value(name = "loose-path-3")]
    #[serde(rename = "loose-path-3")]
    LoosePath3,
}

impl From<TuranPattern> for ForbiddenPattern {
    fn from(p: TuranPattern) -> Self {
        match p {
            TuranPattern::LoosePath2 => ForbiddenPattern::LoosePath2,
            TuranPattern::LoosePath3 => ForbiddenPattern::LoosePath3,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Step {
    Peel,
    Prune,
    Tripartition,
    Split,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph, Failure> {
    Ok(Hypergraph::parse(&read(path)?)?)
}

fn read_coloring(path: &Path) -> Result<Coloring, Failure> {
    Ok(Coloring::parse(&read(path)?)?)
}

/// Writes `text` to `output`, or returns it for printing.
fn emit(output: &Option<PathBuf>, text: String) -> Result<String, Failure> {
    match output {
        Some(path) => {
            write(path, &text)?;
            Ok(format!("wrote {}", path.display()))
        }
        None => Ok(text),
    }
}

fn path_length(p: Pattern) -> Option<PathLength> {
    match p {
        Pattern::LoosePath2 => Some(PathLength::Two),
        Pattern::LoosePath3 => Some(PathLength::Three),
        Pattern::Star => None,
    }
}

fn witness_text(edges: &[ramseylab::Edge]) -> String {
    edges
        .iter()
        .map(|e| format!("{{{e}}}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn detect(input: &Path, pattern: Pattern, coloring: bool) -> Result<Outcome, Failure> {
    if coloring {
        let len = path_length(pattern).ok_or_else(|| {
            Failure::Usage("star detection takes a hypergraph, not a coloring".into())
        })?;
        let c = read_coloring(input)?;
        return Ok(match find_mono_loose_path(&c, len) {
            Some((color, w)) => Outcome::new(
                Status::Witness,
                json!({ "found": true, "color": color, "edges": w.edges, "links": w.links }),
                format!("found in color {color}: {}", witness_text(&w.edges)),
            )?,
            None => Outcome::new(Status::Ok, json!({ "found": false }), "absent")?,
        });
    }
    let h = read_hypergraph(input)?;
    match path_length(pattern) {
        Some(len) => Ok(match find_loose_path(&h, len) {
            Some(w) => Outcome::new(
                Status::Witness,
                json!({ "found": true, "edges": w.edges, "links": w.links }),
                format!("found: {}", witness_text(&w.edges)),
            )?,
            None => Outcome::new(Status::Ok, json!({ "found": false }), "absent")?,
        }),
        None => Ok(match is_star(&h) {
            Some(center) => Outcome::new(
                Status::Witness,
                json!({ "found": true, "center": center }),
                format!("star centered at {center}"),
            )?,
            None => Outcome::new(Status::Ok, json!({ "found": false }), "not a star")?,
        }),
    }
}

fn config(search: &SearchArgs, vertex_pruning: bool) -> SearchConfig {
    SearchConfig {
        budget: search.budget,
        threads: search.threads,
        vertex_pruning,
    }
}

fn ramsey(
    search: &SearchArgs,
    r: u32,
    vertex_pruning: bool,
    output: &Option<PathBuf>,
) -> Result<Outcome, Failure> {
    let out = decide_ramsey(search.k, r, search.n, &config(search, vertex_pruning))?;
    let (status, text) = match (&out.verdict, &out.witness) {
        (RamseyVerdict::Fails, Some(w)) => (
            Status::Witness,
            format!("fails\n{}", emit(output, w.to_text())?),
        ),
        (RamseyVerdict::Fails, None) => {
            return Err(Failure::Internal("fails without witness".into()))
        }
        (RamseyVerdict::Holds, _) => (Status::Ok, "holds".to_string()),
        (RamseyVerdict::Unknown, _) => (Status::Unknown, "unknown (budget exhausted)".to_string()),
    };
    let text = format!(
        "{text}\nnodes {} prunes {}",
        out.stats.nodes, out.stats.prunes
    );
    Outcome::new(status, &out, text)
}

fn turan(
    search: &SearchArgs,
    pattern: TuranPattern,
    output: &Option<PathBuf>,
) -> Result<Outcome, Failure> {
    let out = turan_max_edges(search.k, search.n, pattern.into(), &config(search, false))?;
    let status = match out.status {
        TuranStatus::Exact => Status::Ok,
        TuranStatus::LowerBoundOnly => Status::Unknown,
    };
    let label = if status == Status::Ok {
        "exact"
    } else {
        "lower bound only"
    };
    let text = format!(
        "max edges {} ({label})\n{}",
        out.max_edges,
        emit(output, out.extremal.to_text())?
    );
    Outcome::new(status, &out, text)
}

fn construct(what: &Construction) -> Result<Outcome, Failure> {
    let (text, output, summary) = match what {
        Construction::StarClique { k, r, output } => {
            let c = star_clique_coloring(*k, *r)?;
            let summary = json!({ "n": c.vertex_count(), "class_sizes": c.class_sizes() });
            (c.to_text(), output, summary)
        }
        Construction::FullStar {
            k,
            n,
            center,
            output,
        } => {
            let h = full_star(*n, *k, *center)?;
            (h.to_text(), output, json!({ "edges": h.edge_count() }))
        }
        Construction::PairCover { k, n, pair, output } => {
            let h = pair_cover(*n, *k, (pair[0], pair[1]))?;
            (h.to_text(), output, json!({ "edges": h.edge_count() }))
        }
    };
    let printed = emit(output, text)?;
    Outcome::new(Status::Ok, summary, printed)
}

fn verify_coloring(file: &Path) -> Result<Outcome, Failure> {
    let c = read_coloring(file)?;
    Ok(match find_mono_loose_path(&c, PathLength::Three) {
        Some((color, w)) => Outcome::new(
            Status::Witness,
            json!({ "path_free": false, "color": color, "edges": w.edges }),
            format!(
                "monochromatic loose 3-path in color {color}: {}",
                witness_text(&w.edges)
            ),
        )?,
        None => Outcome::new(
            Status::Ok,
            json!({ "path_free": true }),
            "no monochromatic loose 3-path",
        )?,
    })
}

fn cnf(k: usize, r: u32, n: usize, output: &Option<PathBuf>) -> Result<Outcome, Failure> {
    let inst = export_cnf(k, r, n)?;
    let summary = json!({
        "variables": inst.variable_count(),
        "clauses": inst.clause_count(),
        "path_count": inst.path_count,
    });
    let printed = emit(output, inst.to_dimacs())?;
    Outcome::new(Status::Ok, summary, printed)
}

fn constants(k: u64, a: u64, r_list: &[u64]) -> Result<Outcome, Failure> {
    let report = verify_constant_inequalities(k, a, r_list)?;
    let status = if report.records.iter().any(|r| r.holds == Verdict::No) {
        Status::Witness
    } else if report.all_hold() {
        Status::Ok
    } else {
        Status::Unknown
    };
    let text = report
        .records
        .iter()
        .map(|rec| {
            let params: Vec<String> = rec.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!(
                "{:<28} {:<22} {:?}",
                rec.name(),
                params.join(" "),
                rec.holds
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    Outcome::new(status, &report, text)
}

fn machinery(step: Step, input: &Path) -> Result<Outcome, Failure> {
    let h = read_hypergraph(input)?;
    match step {
        Step::Peel => {
            let p = peel_min_degree(&h)?;
            let result = json!({
                "threshold": p.threshold.to_string(),
                "vertices": p.vertices,
                "min_degree": p.min_degree(),
                "hypergraph": p.hypergraph.to_text(),
            });
            let text = format!(
                "kept {} vertices, {} edges",
                p.vertices.len(),
                p.hypergraph.edge_count()
            );
            Outcome::new(Status::Ok, result, text)
        }
        Step::Prune => {
            let (b, shadow) = BipartiteGraph::vertex_shadow_incidence(&h)?;
            let pruned = prune_bipartite(&b)?;
            let edges: Vec<(usize, String)> = pruned
                .edges()
                .iter()
                .map(|&(v, f)| (v, shadow[f].to_string()))
                .collect();
            let result = json!({
                "vertices": pruned.left(),
                "shadow_sets": pruned.right().iter().map(|&f| shadow[f].to_string()).collect::<Vec<_>>(),
                "edges": edges,
            });
            let text = format!(
                "kept {} vertices, {} shadow sets, {} of {} incidences",
                pruned.left().len(),
                pruned.right().len(),
                pruned.edge_count(),
                b.edge_count()
            );
            Outcome::new(Status::Ok, result, text)
        }
        Step::Tripartition => {
            let (_, tri, summary) = balance_pipeline(&h)?;
            let text = format!(
                "sums {} {} {}, gap {}",
                tri.sums[0],
                tri.sums[1],
                tri.sums[2],
                tri.gap()
            );
            Outcome::new(Status::Ok, &summary, text)
        }
        Step::Split => {
            let apexes = choose_apexes(&h)?;
            let s = derandomized_split(&apexes, h.vertex_count(), h.uniformity())?;
            let result = json!({
                "u1": s.u1,
                "u2": s.u2,
                "proper_count": s.proper_count,
                "expectation": s.expectation.to_string(),
            });
            let text = format!(
                "{} proper sets (expected {})",
                s.proper_count, s.expectation
            );
            Outcome::new(Status::Ok, result, text)
        }
    }
}

fn selfcheck(seed: Option<u64>, instances: usize) -> Result<Outcome, Failure> {
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var("RAMSEYLAB_SEED") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("RAMSEYLAB_SEED is not an integer: {v:?}")))?,
            Err(_) => 0,
        },
    };
    let report = property_suite(seed, instances);
    let status = if report.all_passed() {
        Status::Ok
    } else {
        Status::Witness
    };
    let text = report
        .checks
        .iter()
        .map(|c| format!("{:<20} {} passed, {} failed", c.name, c.passed, c.failed))
        .collect::<Vec<_>>()
        .join("\n");
    let mut out = Outcome::new(status, &report, text)?;
    out.seed = Some(seed);
    Ok(out)
}

fn dispatch(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Detect {
            input,
            pattern,
            coloring,
        } => detect(input, *pattern, *coloring),
        Command::Ramsey {
            search,
            r,
            vertex_pruning,
            output,
        } => ramsey(search, *r, *vertex_pruning, output),
        Command::Turan {
            search,
            pattern,
            output,
        } => turan(search, *pattern, output),
        Command::Construct { what } => construct(what),
        Command::VerifyColoring { file } => verify_coloring(file),
        Command::Cnf { k, r, n, output } => cnf(*k, *r, *n, output),
        Command::Constants { k, a, r_list } => constants(*k, *a, r_list),
        Command::Bounds { k, r } => {
            let b = ramsey_bounds(*k, *r)?;
            let text = format!(
                "lower {} (all r)\nupper {} (r large)\nupper {} (r large)\n{}",
                b.lower,
                b.upper_kr,
                b.upper_250r,
                b.caveats.join("\n")
            );
            Outcome::new(Status::Ok, &b, text)
        }
        Command::Machinery { step, input } => machinery(*step, input),
        Command::Selfcheck { seed, instances } => selfcheck(*seed, *instances),
    }
}

/// Prints to stdout, ignoring a closed pipe.
fn print(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

/// The subcommand name and its arguments as a JSON object.
fn describe(command: &Command) -> (String, serde_json::Value) {
    match serde_json::to_value(command) {
        Ok(serde_json::Value::Object(map)) if map.len() == 1 => {
            let (name, params) = map.into_iter().next().expect("one entry");
            (name, params)
        }
        Ok(other) => (other.to_string(), serde_json::Value::Null),
        Err(e) => (format!("<unserializable: {e}>"), serde_json::Value::Null),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let start = Instant::now();
    let outcome = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(f) => {
            eprintln!("ramseylab: {f}");
            return f.exit_code();
        }
    };
    if cli.json {
        let (command, parameters) = describe(&cli.command);
        let report = RunReport {
            command,
            parameters,
            result: outcome.result,
            timing: start.elapsed().as_secs_f64(),
            seed: outcome.seed,
        };
        match serde_json::to_string_pretty(&report) {
            Ok(s) => print(&s),
            Err(e) => {
                eprintln!("ramseylab: {e}");
                return ExitCode::from(report::EXIT_SOFTWARE);
            }
        }
    } else {
        print(outcome.text.trim_end());
    }
    ExitCode::from(outcome.status.code())
}
