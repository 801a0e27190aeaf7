use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use flipforge::analysis::{
    bounds_csv, bounds_table, search_sumfree_inverse_closed, verify_flip, FlipReport, RangePolicy, SearchMode,
};
use flipforge::construct::{cartesian_product, cayley_build, pack_cayley, strong_product, ColouredConnectingSet};
use flipforge::pipelines::{
    build_br, build_gaps, colour_merge, plan_br, plan_gaps, plan_gaps_relaxed, GapsInput, GapsOutcome,
    DEFAULT_MATERIALIZE_LIMIT,
};
use flipforge::{Colour, EdgeColouredGraph, GroupSpec, GroupSubset};

#[derive(Parser)]
#[command(name = "flipforge", version, about = "Build and verify flip-coloured Cayley graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the (b, r)-flip Cayley graph.
    ConstructBr {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        r: u64,
        /// Graph JSON output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the verified profile.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        plan_out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the flip conditions on a graph file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Expected colour degrees, e.g. 4,5.
        #[arg(long)]
        sequence: Option<String>,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Strong or Cartesian product of two graph files.
    Product {
        #[arg(long, value_enum)]
        kind: ProductKind,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cayley graph from colour classes, e.g. --class 1=9,18,22,31.
    Cayley {
        /// z:40, z2xz:28 or z:2,2,20.
        #[arg(long)]
        group: String,
        /// colour=elements; elements of product groups use dots, e.g. 2=0.8,1.0
        #[arg(long = "class", required = true)]
        classes: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the connecting set as JSON.
        #[arg(long)]
        sets_out: Option<PathBuf>,
    },
    /// Pack two Cayley graphs given as connecting-set files.
    Pack {
        #[arg(long)]
        group: String,
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Merge colour classes, e.g. --partition "1,2|3".
    Merge {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        partition: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Old and new order bounds for the given b values.
    Bounds {
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Range::Common)]
        range: Range,
    },
    /// Plan (and, when small enough, build) H ⊠ (F □ K).
    GapsPlan {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        k: u64,
        /// Use the (b, r) graph as F.
        #[arg(long, conflicts_with_all = ["d", "a", "f_order"])]
        from_br: Option<String>,
        /// Closed counts of F.
        #[arg(long = "D", value_delimiter = ',')]
        d: Option<Vec<u64>>,
        /// Colour degrees of F.
        #[arg(long, value_delimiter = ',')]
        a: Option<Vec<u64>>,
        #[arg(long)]
        f_order: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long, env = "FLIPFORGE_MATERIALIZE_LIMIT", default_value_t = DEFAULT_MATERIALIZE_LIMIT)]
        materialize_limit: u64,
        /// Skip the hypotheses; for small test instances.
        #[arg(long)]
        relaxed: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest sum-free inverse-closed subset.
    SearchSumfree {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = u64::MAX)]
        budget: u64,
    },
    /// Re-emit a graph file as canonical JSON or DOT.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductKind {
    Strong,
    Cartesian,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Range {
    Common,
    Union,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Greedy,
}

/// Exit status of a command that ran to completion.
enum Status {
    Ok,
    VerdictFail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::VerdictFail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            let written = stdout.write_all(text.as_bytes()).and_then(|()| {
                if text.ends_with('\n') {
                    Ok(())
                } else {
                    stdout.write_all(b"\n")
                }
            });
            match written {
                // a closed pipe (e.g. `| head`) is not an error
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn read_graph(path: &Path) -> Result<EdgeColouredGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    EdgeColouredGraph::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|s| s.trim().parse().with_context(|| format!("bad integer {s:?}")))
        .collect()
}

fn tuple(xs: &[u64]) -> String {
    let parts: Vec<String> = xs.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

fn print_report(report: &FlipReport) {
    println!("vertices {}", report.vertex_count);
    if let Some(a) = &report.colour_degrees {
        println!("deg {}", tuple(a));
    }
    match &report.e_chain {
        flipforge::analysis::EChain::Uniform(e) => println!("e {}", tuple(e)),
        flipforge::analysis::EChain::PerVertex(_) => println!("e varies by vertex"),
    }
    if report.passed() {
        println!("PASS");
    } else {
        println!("FAIL ({} violations)", report.violation_count);
        for v in report.violations.iter().take(flipforge::analysis::SERIALIZED_VIOLATION_LIMIT) {
            let at = v.vertex.map(|x| format!("vertex {x}")).unwrap_or_else(|| "graph".into());
            let reason = serde_json::to_value(v.reason).expect("reason serializes");
            println!("  {at}: {}: {}", reason.as_str().unwrap_or_default(), v.detail);
        }
    }
}

/// `colour=x,y,...` with elements of product groups written `a.b.c`.
fn parse_class(spec: &GroupSpec, text: &str) -> Result<(Colour, GroupSubset)> {
    let (colour, elems) = text.split_once('=').ok_or_else(|| anyhow!("class {text:?} is not colour=elements"))?;
    let colour: Colour = colour.trim().parse().with_context(|| format!("bad colour in {text:?}"))?;
    let arrays = elems
        .split(',')
        .map(|e| {
            e.trim()
                .split('.')
                .map(|r| r.parse::<i64>().with_context(|| format!("bad element {e:?}")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((colour, GroupSubset::from_arrays(spec, &arrays)?))
}

fn read_connecting_set(path: &Path, spec: &GroupSpec) -> Result<ColouredConnectingSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let ccs = ColouredConnectingSet::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    if ccs.spec() != spec {
        bail!("{} is over {}, not {spec}", path.display(), ccs.spec());
    }
    Ok(ccs)
}

fn run(command: Command) -> Result<Status> {
    match command {
        Command::ConstructBr {
            b,
            r,
            out,
            verify,
            plan_out,
            dot,
        } => {
            let plan = plan_br(b, r)?;
            let (graph, report, _) = build_br(&plan)?;
            if let Some(path) = &plan_out {
                emit(Some(path), &plan.to_json())?;
            }
            if let Some(path) = &out {
                emit(Some(path), &graph.to_json())?;
            }
            if let Some(path) = &dot {
                emit(Some(path), &graph.to_dot())?;
            }
            println!("order {}", graph.vertex_count());
            if verify {
                print_report(&report);
            }
            Ok(Status::Ok)
        }
        Command::Verify { input, sequence, json } => {
            let expected = sequence.as_deref().map(parse_list).transpose()?;
            let graph = read_graph(&input)?;
            if let Some(exp) = &expected {
                if exp.len() != graph.colour_count() as usize {
                    bail!("--sequence has {} entries but the graph has {} colours", exp.len(), graph.colour_count());
                }
            }
            let report = verify_flip(&graph, expected.as_deref());
            if json {
                emit(None, &report.to_json())?;
            } else {
                print_report(&report);
            }
            Ok(if report.passed() { Status::Ok } else { Status::VerdictFail })
        }
        Command::Product { kind, left, right, out } => {
            let (g, h) = (read_graph(&left)?, read_graph(&right)?);
            let p = match kind {
                ProductKind::Strong => strong_product(&g, &h)?,
                ProductKind::Cartesian => cartesian_product(&g, &h)?,
            };
            emit(out.as_deref(), &p.to_json())?;
            Ok(Status::Ok)
        }
        Command::Cayley {
            group,
            classes,
            out,
            sets_out,
        } => {
            let spec: GroupSpec = group.parse()?;
            let mut map = BTreeMap::new();
            for text in &classes {
                let (c, set) = parse_class(&spec, text)?;
                if map.insert(c, set).is_some() {
                    bail!("colour {c} given twice");
                }
            }
            let ccs = ColouredConnectingSet::new(&spec, map)?;
            if let Some(path) = &sets_out {
                emit(Some(path), &ccs.to_json())?;
            }
            emit(out.as_deref(), &cayley_build(&ccs)?.to_json())?;
            Ok(Status::Ok)
        }
        Command::Pack {
            group,
            first,
            second,
            out,
        } => {
            let spec: GroupSpec = group.parse()?;
            let a = read_connecting_set(&first, &spec)?;
            let b = read_connecting_set(&second, &spec)?;
            emit(out.as_deref(), &pack_cayley(&spec, &a, &b)?.to_json())?;
            Ok(Status::Ok)
        }
        Command::Merge { input, partition, out } => {
            let parts = partition
                .split('|')
                .map(|p| {
                    p.split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(|s| s.trim().parse::<Colour>().with_context(|| format!("bad colour {s:?}")))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let merged = colour_merge(&read_graph(&input)?, &parts)?;
            emit(out.as_deref(), &merged.to_json())?;
            Ok(Status::Ok)
        }
        Command::Bounds { b, format, range } => {
            let policy = match range {
                Range::Common => RangePolicy::Common,
                Range::Union => RangePolicy::Union,
            };
            let rows = bounds_table(&b, policy);
            match format {
                Format::Csv => emit(None, &bounds_csv(&rows))?,
                Format::Json => emit(None, &serde_json::to_string_pretty(&rows)?)?,
            }
            Ok(Status::Ok)
        }
        Command::GapsPlan {
            q,
            k,
            from_br,
            d,
            a,
            f_order,
            t,
            materialize_limit,
            relaxed,
            out,
        } => {
            let (input, f) = match (from_br, d, a) {
                (Some(br), None, None) => {
                    let br = parse_list(&br)?;
                    let [b, r] = br[..] else {
                        bail!("--from-br takes b,r");
                    };
                    let (f, _, _) = build_br(&plan_br(b, r)?)?;
                    let input = GapsInput::from_graph(&f, k, t)?;
                    if q.is_some_and(|q| q != input.q) {
                        bail!("--q must be 2 for a (b, r) graph");
                    }
                    (input, Some(f))
                }
                (None, Some(d), Some(a)) => {
                    let q = q.unwrap_or(d.len() as u64);
                    let f_order = f_order.ok_or_else(|| anyhow!("--f-order is required with --D"))?;
                    let input = GapsInput {
                        q,
                        k,
                        d,
                        a_low: a,
                        t_override: t,
                        f_order,
                    };
                    (input, None)
                }
                _ => bail!("give either --from-br b,r or both --D and --a"),
            };
            let plan = if relaxed { plan_gaps_relaxed(&input)? } else { plan_gaps(&input)? };
            match f {
                Some(f) if plan.materialized_order_estimate <= materialize_limit as u128 => {
                    let result = build_gaps(&plan, &f, materialize_limit)?;
                    emit(out.as_deref(), &result.to_json())?;
                    match result.outcome {
                        GapsOutcome::Materialized { flip, .. } if !flip.passed() => Ok(Status::VerdictFail),
                        _ => Ok(Status::Ok),
                    }
                }
                Some(_) => {
                    eprintln!(
                        "materialization skipped: estimated order {} exceeds limit {materialize_limit}",
                        plan.materialized_order_estimate
                    );
                    emit(out.as_deref(), &plan.to_json())?;
                    Ok(Status::Ok)
                }
                None => {
                    eprintln!(
                        "materialization skipped: no F graph given (estimated order {})",
                        plan.materialized_order_estimate
                    );
                    emit(out.as_deref(), &plan.to_json())?;
                    Ok(Status::Ok)
                }
            }
        }
        Command::SearchSumfree { group, mode, budget } => {
            let spec: GroupSpec = group.parse()?;
            let mode = match mode {
                Mode::Exhaustive => SearchMode::Exhaustive,
                Mode::Greedy => SearchMode::Greedy,
            };
            let outcome = search_sumfree_inverse_closed(&spec, mode, budget)?;
            emit(None, &serde_json::to_string_pretty(&outcome)?)?;
            Ok(Status::Ok)
        }
        Command::Export { input, dot, out } => {
            let g = read_graph(&input)?;
            emit(out.as_deref(), &if dot { g.to_dot() } else { g.to_json() })?;
            Ok(Status::Ok)
        }
    }
}
