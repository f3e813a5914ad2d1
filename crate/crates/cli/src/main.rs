//! Command-line surface: instance generation, decomposition dumps, the
//! coloring family, verification, exact oracles, SVG rendering, and the
//! corpus benchmark harness.
//!
//! Exit codes: 0 success, 1 validation failure, 2 budget exhausted,
//! 3 input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spiralchain::json::{ColoringDump, DecompositionDump};
use spiralchain::render::RenderColors;
use spiralchain::spiral::{decompose, Direction};
use spiralchain::*;

#[derive(Parser)]
#[command(name = "spiralchain", version, about = "Spiral-chain coloring toolkit for plane graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Copy, Clone, ValueEnum)]
enum GenKindArg {
    Maximal,
    TriangleFree,
}

#[derive(Copy, Clone, ValueEnum)]
enum DirectionArg {
    Cw,
    Ccw,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Direction {
        match d {
            DirectionArg::Cw => Direction::Clockwise,
            DirectionArg::Ccw => Direction::Counterclockwise,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum ColorKind {
    Vertex,
    Edge,
    Total,
    Entire,
    Three,
}

#[derive(Copy, Clone, ValueEnum)]
enum ThreeVariant {
    Priority,
    Forest,
    Steinberg,
}

#[derive(Copy, Clone, ValueEnum)]
enum OracleKind {
    Vertex,
    Edge,
    Total,
    Entire,
}

#[derive(Args)]
struct BudgetArgs {
    /// Kempe switch budget for the repair loops.
    #[arg(long, default_value_t = 20_000)]
    budget_switches: usize,
    /// Backtrack / repair-step budget.
    #[arg(long, default_value_t = 2_000_000)]
    budget_backtracks: usize,
}

impl BudgetArgs {
    fn build(&self) -> RepairBudget {
        RepairBudget {
            max_kempe_switches: self.budget_switches,
            max_backtrack_nodes: self.budget_backtracks,
            palette_cap: None,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and write it in the `.rot` format.
    Gen {
        /// Random instance family.
        #[arg(long, value_enum, conflicts_with = "name")]
        kind: Option<GenKindArg>,
        /// Named reference instance (k4, c5, cube, octahedron, icosahedron,
        /// dodecahedron).
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Randomizing edge flips (maximal kind).
        #[arg(long, default_value_t = 24)]
        flips: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a DIMACS-style edge list.
        #[arg(long)]
        dimacs_out: Option<PathBuf>,
    },
    /// Decompose an embedding into spiral chains.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        /// Start vertex (defaults to the smallest outer-face vertex).
        #[arg(long)]
        start: Option<usize>,
        #[arg(long, value_enum, default_value = "cw")]
        direction: DirectionArg,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Color an instance and emit the coloring with run statistics.
    Color {
        #[arg(value_enum)]
        kind: ColorKind,
        #[arg(long)]
        input: PathBuf,
        /// Three-coloring variant.
        #[arg(long, value_enum, default_value = "priority")]
        variant: ThreeVariant,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring document against an embedding.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Exact minimum palette for small instances.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: OracleKind,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Render the embedding (optionally with a coloring) as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an algorithm over a generated corpus and report statistics.
    Bench {
        #[arg(long, value_enum)]
        algorithm: BenchAlgorithm,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        min_n: usize,
        #[arg(long, default_value_t = 60)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "maximal")]
        kind: GenKindArg,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum BenchAlgorithm {
    Vertex,
    Edge,
    Total,
    Entire,
    Three,
    ThreeForest,
    ThreeSteinberg,
}

impl From<BenchAlgorithm> for AlgorithmKind {
    fn from(a: BenchAlgorithm) -> AlgorithmKind {
        match a {
            BenchAlgorithm::Vertex => AlgorithmKind::Vertex,
            BenchAlgorithm::Edge => AlgorithmKind::Edge,
            BenchAlgorithm::Total => AlgorithmKind::Total,
            BenchAlgorithm::Entire => AlgorithmKind::Entire,
            BenchAlgorithm::Three => AlgorithmKind::Three,
            BenchAlgorithm::ThreeForest => AlgorithmKind::ThreeForest,
            BenchAlgorithm::ThreeSteinberg => AlgorithmKind::ThreeSteinberg,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExhausted(_) => 2u8,
                _ => 3u8,
            })
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_embedding(path: &PathBuf) -> Result<PlanarEmbedding> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    PlanarEmbedding::from_rot_str(&text)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { kind, name, n, seed, flips, out, dimacs_out } => {
            let emb = if let Some(name) = name {
                named_instance(&name)?
            } else {
                match kind.unwrap_or(GenKindArg::Maximal) {
                    GenKindArg::Maximal => gen_maximal_planar(&GenSpec::maximal(n, seed, flips))?,
                    GenKindArg::TriangleFree => {
                        gen_triangle_free(&GenSpec::triangle_free(n, seed))?
                    }
                }
            };
            emit(&out, &emb.to_rot_string())?;
            if let Some(path) = dimacs_out {
                emit(&Some(path), &emb.to_dimacs())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { input, start, direction, format, out } => {
            let emb = load_embedding(&input)?;
            let start = match start {
                Some(v) if v < emb.n() => VertexId(v),
                Some(v) => {
                    return Err(Error::Parse(format!(
                        "start vertex {v} out of range 0..{}",
                        emb.n()
                    )))
                }
                None => corpus::default_start(&emb),
            };
            let dec = decompose(&emb, start, direction.into());
            let dump = DecompositionDump::build(&emb, &dec);
            let text = match format {
                OutputFormat::Json => dump.to_json(),
                OutputFormat::Text => {
                    let mut s = String::new();
                    for (i, chain) in dump.chains.iter().enumerate() {
                        s += &format!("chain {i}: {chain:?}\n");
                    }
                    let spiral = dump
                        .edges
                        .iter()
                        .filter(|e| e.tag == spiralchain::spiral::EdgeTag::Spiral)
                        .count();
                    s += &format!(
                        "{} chains, {} spiral / {} non-spiral edges\n",
                        dump.chains.len(),
                        spiral,
                        dump.edges.len() - spiral
                    );
                    s
                }
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Color { kind, input, variant, budget, format, out } => {
            let emb = load_embedding(&input)?;
            let dec = decompose(&emb, corpus::default_start(&emb), Direction::Clockwise);
            let budget = budget.build();
            let dump = match kind {
                ColorKind::Vertex => {
                    let (col, stats) = four_color(&emb, &dec, &budget)?;
                    ColoringDump::vertex(&emb, &col, &stats)
                }
                ColorKind::Edge => {
                    let (col, stats) = spiral_edge_color(&emb, &dec, &budget)?;
                    ColoringDump::edge(&emb, &col, &stats)
                }
                ColorKind::Total => {
                    let (col, stats) = total_color(&emb, &dec, &budget)?;
                    ColoringDump::total(&emb, &col, &stats)
                }
                ColorKind::Entire => {
                    let (col, stats) = entire_color(&emb, &dec, &budget)?;
                    ColoringDump::entire(&emb, &col, &stats)
                }
                ColorKind::Three => {
                    let (col, stats) = match variant {
                        ThreeVariant::Priority => three_color_triangle_free(&emb, &dec, &budget)?,
                        ThreeVariant::Forest => three_color_forest(&emb, &dec)?,
                        ThreeVariant::Steinberg => three_color_steinberg(&emb, &dec, &budget)?,
                    };
                    ColoringDump::vertex(&emb, &col, &stats)
                }
            };
            let text = match format {
                OutputFormat::Json => dump.to_json(),
                OutputFormat::Text => format!(
                    "kind: {}\npalette used: {}\nswitches: {} kempe, {} boat, {} mixed\nfallback events: {}\n",
                    dump.kind,
                    dump.stats.palette_used,
                    dump.stats.kempe_switches,
                    dump.stats.boat_switches,
                    dump.stats.m_kempe_switches,
                    dump.stats.fallback_events
                ),
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, coloring } => {
            let emb = load_embedding(&input)?;
            let text = fs::read_to_string(&coloring)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", coloring.display())))?;
            let dump = ColoringDump::from_json(&text)?;
            let edge_colors = dump.edge_colors_for(&emb)?;
            let violations = match (dump.kind.as_str(), &dump.vertices, &edge_colors, &dump.faces) {
                ("vertex", Some(v), _, _) => verify_vertex(&emb, v)?,
                ("edge", _, Some(e), _) => verify_edge(&emb, e)?,
                ("total", Some(v), Some(e), _) => verify_total(&emb, v, e)?,
                ("entire", Some(v), Some(e), Some(f)) => verify_entire(&emb, v, e, f)?,
                _ => {
                    return Err(Error::Parse(format!(
                        "coloring document of kind {:?} is missing sections",
                        dump.kind
                    )))
                }
            };
            if violations.is_empty() {
                println!("ok: proper {} coloring", dump.kind);
                Ok(ExitCode::SUCCESS)
            } else {
                println!("{} violation(s):", violations.len());
                for v in violations.iter().take(50) {
                    println!("  {v:?}");
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Oracle { input, kind, cap } => {
            let emb = load_embedding(&input)?;
            let delta = emb.max_degree();
            let value = match kind {
                OracleKind::Vertex => chromatic_number_exact(&emb, cap.unwrap_or(8))?,
                OracleKind::Edge => chromatic_index_exact(&emb, cap.unwrap_or(delta + 2))?,
                OracleKind::Total => total_chromatic_exact(&emb, cap.unwrap_or(delta + 3))?,
                OracleKind::Entire => entire_chromatic_exact(&emb, cap.unwrap_or(delta + 5))?,
            };
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Render { input, coloring, out } => {
            let emb = load_embedding(&input)?;
            let dec = decompose(&emb, corpus::default_start(&emb), Direction::Clockwise);
            let layout = tutte_layout(&emb);
            let mut colors = RenderColors::default();
            if let Some(path) = coloring {
                let text = fs::read_to_string(&path)
                    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
                let dump = ColoringDump::from_json(&text)?;
                colors.edges = dump.edge_colors_for(&emb)?;
                colors.vertices = dump.vertices;
                colors.faces = dump.faces;
            }
            let svg = render_svg(&emb, &layout, &colors, Some(&dec));
            emit(&Some(out), &svg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { algorithm, count, min_n, max_n, seed, kind, budget, format, out } => {
            let span = (max_n.saturating_sub(min_n)).max(1);
            let instances = (0..count)
                .map(|i| {
                    let n = (min_n + (i * 37) % span).max(4);
                    let s = seed + i as u64;
                    corpus::InstanceSpec::Gen(match kind {
                        GenKindArg::Maximal => GenSpec::maximal(n, s, 2 * n),
                        GenKindArg::TriangleFree => GenSpec::triangle_free(n, s),
                    })
                })
                .collect();
            let spec =
                CorpusSpec { instances, algorithm: algorithm.into(), budget: budget.build() };
            let report = run_corpus(&spec);
            let text = match format {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Text => report.to_text(),
            };
            emit(&out, &text)?;
            Ok(ExitCode::from(report.worst_failure()))
        }
    }
}
