//! Command-line frontend: insertion statistics, layered permutations,
//! jump partitions, two-column decomposition, and verification sweeps.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 guard or regime refusal.

mod input;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use shapeinv::jump::{decompose_two_column, enumerate_jumps, is_valid, JumpPartition};
use shapeinv::minimal::{all_minimal, is_minimal, min_inversions, minimal_from_composition};
use shapeinv::oracle::{
    structural_audit, sweep, verify_conjecture, verify_minimal, verify_two_column, Report,
    ShapeTable, SweepConfig,
};
use shapeinv::tableau::{rs, shape_of, Tableau};

use input::{parse_components, parse_composition, parse_permutation, parse_shape};

#[derive(Parser)]
#[command(
    name = "shapeinv",
    version,
    about = "Exact combinatorics of permutation shapes and inversions",
    long_about = "Exact combinatorics of permutation shapes and inversions: the insertion \
                  correspondence, layered permutations, jump partitions, and brute-force \
                  verification of the counting identities.\n\n\
                  Shape arguments accept part lists and frequency notation:\n\
                  \x20 shape := item { (\",\" | space) item }\n\
                  \x20 item  := PART [ \"^\" MULTIPLICITY ]\n\
                  e.g. \"4,3,1\" and \"2^6\" (optionally wrapped in parentheses or angle \
                  brackets). Expanded parts must be weakly decreasing."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory for cached sweep tables and verification reports.
    #[arg(long, global = true, env = "SHAPEINV_CACHE_DIR", default_value = ".shapeinv-cache")]
    cache_dir: PathBuf,

    /// Worker threads for sweeps (defaults to the available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Allow full sweeps above the n = 11 guard, up to n = 12.
    #[arg(long = "allow-large-n", global = true)]
    allow_large_n: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Insertion and recording tableaux, shape, and inversion excess of a permutation.
    Rs {
        /// One-line notation, e.g. "3 1 2" or 3,1,2.
        #[arg(required = true)]
        permutation: Vec<String>,
    },
    /// List the layered (minimal-inversion) permutations of a shape.
    Minimal {
        /// Shape, e.g. "4,3,1" or "2^6".
        #[arg(long)]
        shape: String,
    },
    /// Enumerate the jump partitions of a shape at a given excess.
    Jumps {
        #[arg(long)]
        shape: String,
        /// Single excess to enumerate.
        #[arg(long, conflicts_with = "delta_max")]
        delta: Option<usize>,
        /// Enumerate every excess from 0 through this bound.
        #[arg(long)]
        delta_max: Option<usize>,
    },
    /// Apply jump components to the layered permutation of a composition.
    Apply {
        /// Block lengths, e.g. "14,15,12,12".
        #[arg(long)]
        composition: String,
        /// Inner components, semicolon separated: "1,1;2,1;".
        #[arg(long, default_value = "")]
        inner: String,
        /// Outer components, semicolon separated: ";3,1;2".
        #[arg(long, default_value = "")]
        outer: String,
    },
    /// Recover the layered permutation and jump partition behind a
    /// two-column permutation with excess below the smaller column.
    Decompose {
        #[arg(required = true)]
        permutation: Vec<String>,
    },
    /// Sweep S_n and check the counting identities against it.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Sweep S_n and export the (shape, excess) count table.
    Sweep {
        #[arg(long)]
        n: usize,
        /// Only include buckets with excess at most this bound.
        #[arg(long)]
        delta_max: Option<u32>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Minimal,
    TwoColumn,
    Conjecture,
    Structure,
    All,
}

/// A failed run: message plus process exit code.
#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl Failure {
    pub fn input(message: String) -> Self {
        Failure { message, code: 2 }
    }

    fn io(context: &str, err: std::io::Error) -> Self {
        Failure {
            message: format!("{context}: {err}"),
            code: 1,
        }
    }
}

impl From<shapeinv::Error> for Failure {
    fn from(err: shapeinv::Error) -> Self {
        use shapeinv::Error::*;
        let code = match err {
            SweepGuard { .. } | ClosureGuard { .. } | ExcessOutOfRegime { .. }
            | NotTwoColumn(_) | ClassCap(_) => 3,
            DecompositionInternal(_) | CorruptTable(_) | CountOverflow | Serialization(_) => 1,
            _ => 2,
        };
        let message = match &err {
            SweepGuard { .. } => format!("{err} (pass --allow-large-n to go up to 12)"),
            ExcessOutOfRegime { delta, bound } => format!(
                "excess {delta} is not below the smallest column length {bound}: \
                 no decomposition theorem applies"
            ),
            _ => err.to_string(),
        };
        Failure { message, code }
    }
}

fn main() -> ExitCode {
    // Die quietly when a pager closes the pipe instead of panicking
    // mid-table.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let config = SweepConfig {
        workers: cli
            .workers
            .unwrap_or_else(|| SweepConfig::default().workers)
            .max(1),
        allow_large: cli.allow_large_n,
    };
    match &cli.command {
        Command::Rs { permutation } => cmd_rs(&permutation.join(" "), cli.format),
        Command::Minimal { shape } => cmd_minimal(shape, cli.format),
        Command::Jumps {
            shape,
            delta,
            delta_max,
        } => cmd_jumps(shape, *delta, *delta_max, cli.format),
        Command::Apply {
            composition,
            inner,
            outer,
        } => cmd_apply(composition, inner, outer, cli.format),
        Command::Decompose { permutation } => cmd_decompose(&permutation.join(" "), cli.format),
        Command::Verify { n, suite } => cmd_verify(*n, *suite, &config, &cli.cache_dir, cli.format),
        Command::Sweep { n, delta_max } => {
            cmd_sweep(*n, *delta_max, &config, &cli.cache_dir, cli.format)
        }
    }
}

fn render_tableau_lines(t: &Tableau, indent: &str) -> String {
    t.rows()
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            format!("{indent}{}", cells.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_rs(raw: &str, format: Format) -> Result<u8, Failure> {
    let p = parse_permutation(raw)?;
    let pair = rs(&p);
    let shape = pair.shape();
    let inversions = p.inversions();
    let minimum = min_inversions(&shape);
    let excess = inversions - minimum;
    let blocks = is_minimal(&p);
    match format {
        Format::Json => {
            let value = json!({
                "permutation": p,
                "insertion": pair.insertion(),
                "recording": pair.recording(),
                "shape": shape,
                "conjugate": shape.conjugate(),
                "inversions": inversions,
                "min_inversions": minimum,
                "excess": excess,
                "layered_blocks": blocks,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Text | Format::Csv => {
            println!("permutation: {p}");
            println!("insertion (P):\n{}", render_tableau_lines(pair.insertion(), "  "));
            println!("recording (Q):\n{}", render_tableau_lines(pair.recording(), "  "));
            println!("shape: {shape}");
            println!("conjugate: {}", shape.conjugate());
            println!("inversions: {inversions}");
            println!("min_inversions: {minimum}");
            println!("excess: {excess}");
            match blocks {
                Some(c) => println!("layered_blocks: {c}"),
                None => println!("layered_blocks: none"),
            }
        }
    }
    Ok(0)
}

fn cmd_minimal(shape_raw: &str, format: Format) -> Result<u8, Failure> {
    let shape = parse_shape(shape_raw)?;
    let list = all_minimal(&shape);
    match format {
        Format::Json => {
            let value = json!({
                "shape": shape,
                "count": list.len(),
                "min_inversions": min_inversions(&shape),
                "minimal": list
                    .iter()
                    .map(|(c, p)| json!({"blocks": c, "permutation": p}))
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Csv => {
            println!("blocks,permutation");
            for (c, p) in &list {
                println!("{},{}", c.blocks().iter().map(|b| b.to_string()).collect::<Vec<_>>().join("."), p);
            }
        }
        Format::Text => {
            println!(
                "shape {shape}: {} layered permutation(s), {} inversions each",
                list.len(),
                min_inversions(&shape)
            );
            for (c, p) in &list {
                println!("  blocks {c}: {p}");
            }
        }
    }
    Ok(0)
}

fn cmd_jumps(
    shape_raw: &str,
    delta: Option<usize>,
    delta_max: Option<usize>,
    format: Format,
) -> Result<u8, Failure> {
    let shape = parse_shape(shape_raw)?;
    let deltas: Vec<usize> = match (delta, delta_max) {
        (Some(d), _) => vec![d],
        (None, Some(max)) => (0..=max).collect(),
        (None, None) => vec![0],
    };
    let compositions = all_minimal(&shape);
    let mut json_deltas = Vec::new();
    for &d in &deltas {
        let mut per_composition = Vec::new();
        for (c, _) in &compositions {
            per_composition.push((c.clone(), enumerate_jumps(c, d)));
        }
        if format == Format::Text {
            let total: usize = per_composition.iter().map(|(_, js)| js.len()).sum();
            println!("shape {shape}, excess {d}: {total} jump partition(s)");
            for (c, jumps) in &per_composition {
                println!("  composition {c}: {}", jumps.len());
                for jump in jumps {
                    println!("    {jump}");
                }
            }
        } else {
            json_deltas.push(json!({
                "delta": d,
                "compositions": per_composition
                    .iter()
                    .map(|(c, js)| json!({"blocks": c, "jumps": js}))
                    .collect::<Vec<_>>(),
            }));
        }
    }
    match format {
        Format::Json => {
            let value = json!({"shape": shape, "deltas": json_deltas});
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Csv => {
            println!("delta,blocks,inner,outer");
            for entry in &json_deltas {
                let d = entry["delta"].as_u64().unwrap();
                for comp in entry["compositions"].as_array().unwrap() {
                    for jump in comp["jumps"].as_array().unwrap() {
                        println!(
                            "{},{},\"{}\",\"{}\"",
                            d,
                            comp["blocks"]
                                .as_array()
                                .unwrap()
                                .iter()
                                .map(|b| b.to_string())
                                .collect::<Vec<_>>()
                                .join("."),
                            jump["inner"],
                            jump["outer"]
                        );
                    }
                }
            }
        }
        Format::Text => {}
    }
    Ok(0)
}

fn cmd_apply(
    composition_raw: &str,
    inner_raw: &str,
    outer_raw: &str,
    format: Format,
) -> Result<u8, Failure> {
    let composition = parse_composition(composition_raw)?;
    let boundaries = composition.len().saturating_sub(1);
    let inner = parse_components(inner_raw, boundaries)?;
    let outer = parse_components(outer_raw, boundaries)?;
    let jump = JumpPartition::from_parts(composition.clone(), inner, outer)?;
    let pi = minimal_from_composition(&composition);
    let result = jump.apply(&pi)?;
    let shape_preserved = is_valid(&jump, &pi)?;
    match format {
        Format::Json => {
            let value = json!({
                "composition": composition,
                "jump": jump,
                "size": jump.size(),
                "layered": pi,
                "result": result,
                "inversions_before": pi.inversions(),
                "inversions_after": result.inversions(),
                "shape_preserved": shape_preserved,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Text | Format::Csv => {
            println!("composition: {composition}");
            println!("layered: {pi}");
            println!("jump: {jump} (size {})", jump.size());
            println!("result: {result}");
            println!(
                "inversions: {} -> {}",
                pi.inversions(),
                result.inversions()
            );
            println!("shape_preserved: {shape_preserved}");
        }
    }
    Ok(0)
}

fn cmd_decompose(raw: &str, format: Format) -> Result<u8, Failure> {
    let sigma = parse_permutation(raw)?;
    let (pi, jump) = decompose_two_column(&sigma)?;
    match format {
        Format::Json => {
            let value = json!({
                "permutation": sigma,
                "layered": pi,
                "composition": jump.composition(),
                "jump": jump,
                "excess": jump.size(),
                "shape": shape_of(&sigma),
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Text | Format::Csv => {
            println!("permutation: {sigma}");
            println!("shape: {}", shape_of(&sigma));
            println!("layered: {pi}");
            println!("composition: {}", jump.composition());
            println!("jump: {jump}");
            println!("excess: {}", jump.size());
        }
    }
    Ok(0)
}

fn table_cache_path(cache_dir: &Path, n: usize) -> PathBuf {
    cache_dir.join(format!("sweep_n{n}.json"))
}

/// Loads the cached table when its n and code version match; otherwise
/// sweeps and refreshes the cache.
fn load_or_sweep(n: usize, config: &SweepConfig, cache_dir: &Path) -> Result<ShapeTable, Failure> {
    let path = table_cache_path(cache_dir, n);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(table) = ShapeTable::from_json(&text) {
            if table.n() == n && table.meta().version == shapeinv::VERSION {
                eprintln!("using cached table {}", path.display());
                return Ok(table);
            }
        }
        eprintln!("cache at {} is stale; resweeping", path.display());
    }
    let table = sweep(n, config)?;
    fs::create_dir_all(cache_dir).map_err(|e| Failure::io("creating cache dir", e))?;
    fs::write(&path, table.to_json()).map_err(|e| Failure::io("writing table cache", e))?;
    eprintln!("cached table at {}", path.display());
    Ok(table)
}

fn persist_report(report: &Report, cache_dir: &Path) -> Result<PathBuf, Failure> {
    fs::create_dir_all(cache_dir).map_err(|e| Failure::io("creating cache dir", e))?;
    let path = cache_dir.join(format!("report_{}_n{}.json", report.suite, report.n));
    let body = serde_json::to_string_pretty(report)
        .map_err(|e| Failure::io("serializing report", std::io::Error::other(e)))?;
    fs::write(&path, body).map_err(|e| Failure::io("writing report", e))?;
    Ok(path)
}

fn cmd_verify(
    n: usize,
    suite: Suite,
    config: &SweepConfig,
    cache_dir: &Path,
    format: Format,
) -> Result<u8, Failure> {
    let mut reports = Vec::new();
    let needs_table = matches!(
        suite,
        Suite::Minimal | Suite::TwoColumn | Suite::Conjecture | Suite::All
    );
    if needs_table {
        let table = load_or_sweep(n, config, cache_dir)?;
        match suite {
            Suite::Minimal => reports.push(verify_minimal(&table)),
            Suite::TwoColumn => reports.push(verify_two_column(&table)),
            Suite::Conjecture => reports.push(verify_conjecture(&table)),
            Suite::All => {
                reports.push(verify_minimal(&table));
                reports.push(verify_two_column(&table));
                reports.push(verify_conjecture(&table));
            }
            Suite::Structure => unreachable!(),
        }
    }
    if matches!(suite, Suite::Structure | Suite::All) {
        reports.push(structural_audit(n, config)?);
    }

    let mut clean = true;
    for report in &reports {
        clean &= report.is_clean();
        match format {
            Format::Text => print!("{}", report.render_text()),
            Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
            Format::Csv => print!("{}", report.to_csv()),
        }
        let path = persist_report(report, cache_dir)?;
        eprintln!("report persisted to {}", path.display());
    }
    Ok(if clean { 0 } else { 1 })
}

fn cmd_sweep(
    n: usize,
    delta_max: Option<u32>,
    config: &SweepConfig,
    cache_dir: &Path,
    format: Format,
) -> Result<u8, Failure> {
    let table = load_or_sweep(n, config, cache_dir)?;
    let within = |delta: u32| delta_max.is_none_or(|max| delta <= max);
    match format {
        Format::Json => match delta_max {
            None => println!("{}", table.to_json()),
            Some(_) => {
                let entries: Vec<_> = table
                    .entries()
                    .filter(|(_, delta, _)| within(*delta))
                    .map(|(shape, delta, count)| {
                        json!({"shape": shape, "delta": delta, "count": count.to_string()})
                    })
                    .collect();
                let value = json!({"n": n, "entries": entries});
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            }
        },
        Format::Csv => {
            println!("shape,delta,count");
            for (shape, delta, count) in table.entries().filter(|(_, d, _)| within(*d)) {
                println!("{},{delta},{count}", shape.dot_key());
            }
        }
        Format::Text => {
            println!("n = {n}, total {}", table.total());
            println!("{:<16} {:>6} {:>14}", "shape", "excess", "count");
            for (shape, delta, count) in table.entries().filter(|(_, d, _)| within(*d)) {
                println!("{:<16} {:>6} {:>14}", shape.to_string(), delta, count.to_string());
            }
        }
    }
    Ok(0)
}
