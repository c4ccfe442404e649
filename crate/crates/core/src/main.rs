use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tightcut::certificate::{verify_certificate, Certificate};
use tightcut::decompose::{decompose_tight_cut_traced, Trace};
use tightcut::graph::{boundary, is_2connected, Cut, Graph, VertexSet};
use tightcut::instances::{canonical, random_graph, CorpusSpec, CANONICAL_NAMES};
use tightcut::io::{read_edge_list, to_dot, write_edge_list};
use tightcut::matching::{is_bicritical, is_critical, is_matching_covered};
use tightcut::sweep::{run_sweep, SweepOptions};
use tightcut::tightcuts::{classify_cut, CutClassification, TightnessOracle};
use tightcut::Error;

/// Tight cuts, ELP-cuts and their certificates for matching covered graphs.
#[derive(Parser)]
#[command(name = "tightcut", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural status of a graph, and of a cut with --cut.
    Check {
        file: PathBuf,
        #[arg(long, value_parser = parse_shore)]
        cut: Option<VertexSet>,
        /// JSON report, to stdout when no path is given.
        #[arg(long, num_args = 0..=1)]
        json: Option<Option<PathBuf>>,
    },
    /// Contraction certificate for a tight cut.
    Decompose {
        file: PathBuf,
        #[arg(long, value_parser = parse_shore)]
        cut: VertexSet,
        /// Certificate JSON, to stdout when no path is given.
        #[arg(long, num_args = 0..=1)]
        json: Option<Option<PathBuf>>,
        /// Directory for one DOT file per graph of the sequence.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a certificate against a graph and cut without rebuilding it.
    Verify {
        file: PathBuf,
        #[arg(long, value_parser = parse_shore)]
        cut: VertexSet,
        certificate: PathBuf,
    },
    /// Run every corpus property.
    Sweep {
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Smallest order; defaults to 2 (exhaustive) or 8 (random).
        #[arg(long)]
        min_n: Option<usize>,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write non-ELP instances found by the sweep into this directory.
        #[arg(long)]
        harvest: Option<PathBuf>,
        /// Fail when some branch of the construction never ran.
        #[arg(long)]
        require_coverage: bool,
        /// Print the report as JSON instead of a summary.
        #[arg(long)]
        json: bool,
    },
    /// Write a named or random matching covered graph as an edge list.
    Generate {
        /// One of K2, K4, K33, C<2k>, PETERSEN, PRISM, CUBE, DOUBLE_K4.
        name: Option<String>,
        #[arg(long, requires_all = ["n"])]
        random: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output path; `-` for stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

/// Exit 1 for property violations, 2 for usage and input errors.
enum Failure {
    Violation(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Violation(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn parse_shore(s: &str) -> Result<VertexSet, String> {
    let ids: Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
    let ids = ids.map_err(|e| format!("cut must be a comma-separated vertex list: {e}"))?;
    Ok(VertexSet::of(ids))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Check { file, cut, json } => cmd_check(&file, cut, json),
        Command::Decompose {
            file,
            cut,
            json,
            dot,
        } => cmd_decompose(&file, &cut, json, dot),
        Command::Verify {
            file,
            cut,
            certificate,
        } => cmd_verify(&file, &cut, &certificate),
        Command::Sweep {
            mode,
            max_n,
            min_n,
            samples,
            seed,
            report,
            harvest,
            require_coverage,
            json,
        } => {
            let spec = match mode {
                ModeArg::Exhaustive => CorpusSpec {
                    min_n: min_n.unwrap_or(2),
                    ..CorpusSpec::exhaustive(max_n)
                },
                ModeArg::Random => CorpusSpec::random(min_n.unwrap_or(8), max_n, samples, seed),
            };
            let opts = SweepOptions {
                command: std::env::args().collect(),
                require_coverage,
                harvest,
            };
            cmd_sweep(spec, opts, report, json)
        }
        Command::Generate {
            name,
            random,
            n,
            seed,
            out,
        } => cmd_generate(name, random, n, seed, out),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<Graph, Failure> {
    read_edge_list(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit_json<T: Serialize>(value: &T, target: Option<PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    match target {
        Some(p) => std::fs::write(&p, text + "\n")
            .map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct CheckReport {
    n: usize,
    m: usize,
    matching_covered: bool,
    critical: bool,
    bicritical: bool,
    two_connected: bool,
    perfect_matchings: Option<usize>,
    cut: Option<CutReport>,
}

#[derive(Serialize)]
struct CutReport {
    shore: VertexSet,
    tight: bool,
    trivial: bool,
    /// Present for matching covered graphs only.
    classification: Option<CutClassification>,
}

fn cmd_check(
    file: &Path,
    cut: Option<VertexSet>,
    json: Option<Option<PathBuf>>,
) -> Result<(), Failure> {
    let g = load(file)?;
    let mc = is_matching_covered(&g);
    let oracle = TightnessOracle::new(&g).ok();
    let cut = match cut {
        None => None,
        Some(x) => {
            let c = boundary(&g, &x)?;
            let tight = match &oracle {
                Some(o) => o.is_tight(&c),
                None => tightcut::tightcuts::is_tight(&g, &c)?,
            };
            let classification = if mc {
                Some(classify_cut(&g, &c)?)
            } else {
                None
            };
            Some(CutReport {
                shore: x,
                tight,
                trivial: c.is_trivial(),
                classification,
            })
        }
    };
    let report = CheckReport {
        n: g.vertex_count(),
        m: g.edge_count(),
        matching_covered: mc,
        critical: is_critical(&g),
        bicritical: is_bicritical(&g),
        two_connected: is_2connected(&g),
        perfect_matchings: oracle.as_ref().map(TightnessOracle::matching_count),
        cut,
    };
    if let Some(target) = json {
        return emit_json(&report, target);
    }
    println!("vertices: {}", report.n);
    println!("edges: {}", report.m);
    println!("matching covered: {}", report.matching_covered);
    println!("critical: {}", report.critical);
    println!("bicritical: {}", report.bicritical);
    println!("2-connected: {}", report.two_connected);
    if let Some(k) = report.perfect_matchings {
        println!("perfect matchings: {k}");
    }
    if let Some(c) = &report.cut {
        println!("cut {}: tight={} trivial={}", c.shore, c.tight, c.trivial);
        if let Some(cl) = &c.classification {
            println!("elp: {}", cl.elp);
            for w in &cl.barrier_witnesses {
                println!(
                    "  barrier {} (component {})",
                    w.barrier.members, w.barrier.odd_parts[w.component]
                );
            }
            for s in &cl.twosep_witnesses {
                println!(
                    "  2-separation {{{}, {}}}: {} | {}",
                    s.pair.0, s.pair.1, s.side1, s.side2
                );
            }
        }
    }
    Ok(())
}

fn cmd_decompose(
    file: &Path,
    shore: &VertexSet,
    json: Option<Option<PathBuf>>,
    dot: Option<PathBuf>,
) -> Result<(), Failure> {
    let g = load(file)?;
    let c = boundary(&g, shore)?;
    let mut trace = Trace::default();
    let cert = decompose_tight_cut_traced(&g, &c, &mut trace)?;
    verify_certificate(&g, &c, &cert)
        .map_err(|e| Failure::Violation(format!("certificate rejected: {e}")))?;

    if let Some(dir) = dot {
        write_dots(&dir, &cert, &c)?;
    }
    let to_stdout = matches!(json, Some(None));
    match json {
        Some(None) => println!("{}", cert.to_json_string()),
        Some(Some(p)) => {
            std::fs::write(&p, cert.to_json_string() + "\n")
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            eprintln!("certificate written to {}", p.display());
        }
        None => {}
    }
    if !to_stdout {
        println!("r = {}", cert.r);
        for (i, s) in cert.steps.iter().enumerate() {
            println!(
                "step {}: cut {} contracted {} -> {}",
                i + 1,
                s.cut.shore,
                s.contracted_shore,
                s.new_vertex
            );
        }
        let fc = &cert.final_classification;
        let kind = if !fc.twosep_witnesses.is_empty() {
            "2-separation cut"
        } else {
            "barrier cut"
        };
        println!("final: {kind}");
        println!("verified");
    }
    Ok(())
}

fn write_dots(dir: &Path, cert: &Certificate, target: &Cut) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Usage(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    for (i, s) in cert.steps.iter().enumerate() {
        let text = to_dot(
            &s.graph,
            Some(&s.cut),
            &format!("G{} with C{} = ∂({})", i + 1, i + 1, s.cut.shore),
        );
        std::fs::write(dir.join(format!("step{}.dot", i + 1)), text).map_err(io)?;
    }
    // The target cut keeps its edge ids in the last graph.
    let last = &cert.final_graph;
    let fin = Cut {
        shore: VertexSet::new(),
        complement: last.vertex_set(),
        boundary: target.boundary.clone(),
    };
    let text = to_dot(
        last,
        Some(&fin),
        &format!("G{} with the target cut", cert.r),
    );
    std::fs::write(dir.join(format!("step{}.dot", cert.r)), text).map_err(io)?;
    Ok(())
}

fn cmd_verify(file: &Path, shore: &VertexSet, cert_path: &Path) -> Result<(), Failure> {
    let g = load(file)?;
    let c = boundary(&g, shore)?;
    let text = std::fs::read_to_string(cert_path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", cert_path.display())))?;
    let cert = Certificate::from_json_str(&text)?;
    match verify_certificate(&g, &c, &cert) {
        Ok(()) => {
            println!("certificate verified (r = {})", cert.r);
            Ok(())
        }
        Err(e) => Err(Failure::Violation(format!("certificate rejected: {e}"))),
    }
}

fn cmd_sweep(
    spec: CorpusSpec,
    opts: SweepOptions,
    report: Option<PathBuf>,
    json: bool,
) -> Result<(), Failure> {
    let r = run_sweep(std::slice::from_ref(&spec), &opts)?;
    if let Some(p) = report {
        emit_json(&r, Some(p))?;
    }
    if json {
        emit_json(&r, None)?;
    } else {
        let k = &r.counters;
        println!(
            "graphs: {} ({} with a nontrivial tight cut)",
            k.graphs, k.graphs_with_tight_cut
        );
        println!(
            "tight cut pairs: {}, non-crossing verified: {}",
            k.tight_cut_pairs, k.noncrossing_verified
        );
        println!(
            "non-ELP pairs: {}, certificates verified: {}, max r: {}",
            k.non_elp_pairs, k.certificates_verified, k.max_r
        );
        println!(
            "contractions checked: {}, lifts: {}/{}",
            k.contractions_checked, k.lifts_verified, k.lift_scenarios
        );
        println!("DM instances: {}/{}", k.dm_verified, k.dm_instances);
        for (b, n) in &r.branches.hits {
            println!("  {b:?}: {n}");
        }
        println!(
            "repeated barrier side: {}",
            r.branches.repeated_barrier_side
        );
        for p in &r.harvested {
            println!("harvested {}", p.display());
        }
        for v in &r.violations {
            println!("VIOLATION {:?} {:?}: {}", v.instance, v.property, v.detail);
        }
        println!("{} violations, {} ms", r.violations.len(), r.elapsed_ms);
    }
    if r.is_clean() {
        Ok(())
    } else {
        Err(Failure::Violation(format!(
            "{} property violations",
            r.violations.len()
        )))
    }
}

fn cmd_generate(
    name: Option<String>,
    random: bool,
    n: Option<usize>,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let (g, stem) = match (name, random, n) {
        (Some(name), false, _) => (canonical(&name)?, name.to_lowercase()),
        (None, true, Some(n)) => (random_graph(n, seed)?, format!("random-n{n}-s{seed}")),
        _ => {
            return Err(Failure::Usage(format!(
                "give a graph name ({}) or --random --n <N>",
                CANONICAL_NAMES.join(", ")
            )))
        }
    };
    let text = write_edge_list(&g);
    let path = out.unwrap_or_else(|| PathBuf::from(format!("{stem}.el")));
    if path.as_os_str() == "-" {
        print!("{text}");
        return Ok(());
    }
    std::fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    println!("{}", path.display());
    Ok(())
}
