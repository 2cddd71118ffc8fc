//! `wbo`: compute and check well-balanced orientations from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 parse/IO/usage error,
//! 3 unknown vertex, 4 orientation or decomposition does not match the
//! graph, 5 graph not connected, 6 any other violated precondition.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wellbalanced::connectivity::{min_cut, ConnectivityReport};
use wellbalanced::decomposition::{bond_faithful, efficient_rewrite, segment_connectivity_check};
use wellbalanced::format::{
    parse_decomposition, parse_graph, parse_orientation, parse_path, parse_star,
    write_decomposition, write_graph, write_orientation, write_path, write_symbolic,
};
use wellbalanced::fuzz::{self, FuzzConfig};
use wellbalanced::rayless::{instantiate_oriented, lambda_symbolic};
use wellbalanced::{
    block_tree, contract, lambda, orient_bounded_vertices, orient_rayless1, verify_symbolic,
    verify_well_balanced, ContractionSpec, Decomposition, Error,
};

#[derive(Parser)]
#[command(
    name = "wbo",
    version,
    about = "Well-balanced orientations of multigraphs with ω edges"
)]
struct Cli {
    /// Print progress to stderr; repeat for more detail.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print λ(x, y), the number of edge-disjoint x-y paths.
    Lambda {
        graph: PathBuf,
        x: String,
        y: String,
        /// Also print a minimum cut.
        #[arg(long)]
        certificate: bool,
    },
    /// Write a well-balanced orientation of a graph.
    Orient {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether an orientation is well-balanced.
    Verify {
        graph: PathBuf,
        orientation: PathBuf,
    },
    /// Contract classes of pairwise non-adjacent vertices.
    Contract {
        graph: PathBuf,
        /// A comma-separated class; repeat for several classes.
        #[arg(long = "class", required = true)]
        classes: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the blocks of a graph and the tree joining them.
    Blocks {
        graph: PathBuf,
        /// Print the blocks as a decomposition file instead.
        #[arg(long)]
        fragments: bool,
    },
    /// Orient an order-one star and check the result.
    RaylessOrient {
        star: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also check the instance with this many copies per ω template.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        cap: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite a path so it meets every fragment in one segment, then check
    /// λ inside each segment.
    EfficientPath {
        graph: PathBuf,
        /// Decomposition file; the blocks of the graph when omitted.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List fragment bonds with at most `bmax` edges that are not bonds of
    /// the graph.
    BondCheck {
        graph: PathBuf,
        /// Decomposition file; the blocks of the graph when omitted.
        decomposition: Option<PathBuf>,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        bmax: u64,
    },
    /// Run the invariant checks on random instances.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest number of vertices per random graph.
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(2..=20))]
        size: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        first_trial: u64,
        /// Directory for replay files of failing trials.
        #[arg(long, default_value = "fuzz-failures")]
        out: PathBuf,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    /// A check ran and reported a negative result.
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::UnknownVertex(_) => 3,
        Error::InvalidOrientation(_)
        | Error::OrientationMismatch(_)
        | Error::BaseMismatch(_)
        | Error::PartMismatch(_)
        | Error::FragmentMismatch(_)
        | Error::InconsistentClasses(_)
        | Error::InvalidDecomposition(_) => 4,
        Error::NotConnected => 5,
        _ => 6,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_lines(report: &ConnectivityReport, only_violations: bool) -> String {
    let mut out = String::new();
    for p in &report.pairs {
        if only_violations && p.satisfied {
            continue;
        }
        let _ = writeln!(
            out,
            "{} {} {} lambda {} forward {} backward {} required {}",
            if p.satisfied { "ok" } else { "violation" },
            p.pair.lo(),
            p.pair.hi(),
            p.lambda,
            p.forward,
            p.backward,
            p.required
        );
    }
    out
}

fn decomposition_for(
    graph: &wellbalanced::ExtMultigraph,
    file: Option<&Path>,
) -> Result<Decomposition, Failure> {
    match file {
        Some(p) => Ok(parse_decomposition(&read(p)?, graph)?),
        None => Ok(Decomposition::blocks(graph)),
    }
}

fn run(cli: Cli) -> Outcome {
    let verbose = cli.verbose;
    match cli.command {
        Command::Lambda {
            graph,
            x,
            y,
            certificate,
        } => {
            let g = parse_graph(&read(&graph)?)?;
            println!("{}", lambda(&g, &x, &y)?);
            if certificate {
                let cut = min_cut(&g, &x, &y)?;
                let side: Vec<&str> = cut.source_side.iter().map(String::as_str).collect();
                println!("side {}", side.join(" "));
                for ((u, v), m) in &cut.crossing {
                    println!("cut {u} {v} {m}");
                }
            }
            Ok(())
        }
        Command::Orient { graph, seed, out } => {
            let g = parse_graph(&read(&graph)?)?;
            let d = orient_bounded_vertices(&g, seed)?;
            emit(out.as_deref(), &write_orientation(&d))
        }
        Command::Verify { graph, orientation } => {
            let g = parse_graph(&read(&graph)?)?;
            let d = parse_orientation(&read(&orientation)?, &g)?;
            let report = verify_well_balanced(&g, &d)?;
            if report.is_well_balanced() {
                println!("well-balanced ({} pairs)", report.pairs.len());
                Ok(())
            } else {
                print!("{}", report_lines(&report, true));
                Err(Failure::Check)
            }
        }
        Command::Contract {
            graph,
            classes,
            out,
        } => {
            let g = parse_graph(&read(&graph)?)?;
            let sets = group_classes(&classes);
            let q = contract(&g, &ContractionSpec::new(sets)?)?;
            emit(out.as_deref(), &write_graph(&q.quotient))
        }
        Command::Blocks { graph, fragments } => {
            let g = parse_graph(&read(&graph)?)?;
            if fragments {
                print!("{}", write_decomposition(&Decomposition::blocks(&g)));
                return Ok(());
            }
            let bt = block_tree(&g);
            for (id, vs) in bt.parts() {
                let vs: Vec<&str> = vs.iter().map(String::as_str).collect();
                println!("part {id} {}", vs.join(" "));
            }
            for (a, b) in bt.tree_edges() {
                println!("tree {a} {b}");
            }
            Ok(())
        }
        Command::RaylessOrient {
            star,
            seed,
            cap,
            out,
        } => {
            let s = parse_star(&read(&star)?)?;
            let outcome = orient_rayless1(&s, seed)?;
            if verbose > 0 {
                eprintln!(
                    "wbo: order {}, {} classes, {} deleted pairs",
                    s.order(),
                    outcome
                        .orientation
                        .classes
                        .iter()
                        .map(Vec::len)
                        .sum::<usize>(),
                    outcome.deleted.pairs().len()
                );
            }
            let report = verify_symbolic(&s, &outcome.orientation)?;
            let mut instance_ok = true;
            let mut text = write_symbolic(&s, &outcome.orientation);
            if out.is_some() {
                emit(out.as_deref(), &text)?;
                text.clear();
            }
            let shown = ConnectivityReport {
                pairs: report
                    .pairs
                    .iter()
                    .filter(|p| {
                        verbose > 0
                            || !p.satisfied
                            || (s.core().has_vertex(p.pair.lo())
                                && s.core().has_vertex(p.pair.hi()))
                    })
                    .cloned()
                    .collect(),
            };
            for line in report_lines(&shown, false).lines() {
                let _ = writeln!(text, "# {line}");
            }
            let _ = writeln!(
                text,
                "# checked {} pairs, {} violations",
                report.pairs.len(),
                report.violations().count()
            );
            if let Some(cap) = cap {
                // Pairs with finite λ in the star keep that λ in every large
                // enough instance, so only they are checked against `cap`.
                let d = instantiate_oriented(&s, &outcome.orientation, cap)?;
                let inst = verify_well_balanced(d.base(), &d)?;
                let mut checked = 0;
                for p in &inst.pairs {
                    let finite_in_star = [p.pair.lo(), p.pair.hi()]
                        .iter()
                        .all(|v| s.core().has_vertex(v));
                    if !finite_in_star || lambda_symbolic(&s, p.pair.lo(), p.pair.hi())?.is_omega()
                    {
                        continue;
                    }
                    checked += 1;
                    if !p.satisfied {
                        instance_ok = false;
                        let _ = writeln!(
                            text,
                            "# cap {cap} violation {} {}",
                            p.pair.lo(),
                            p.pair.hi()
                        );
                    }
                }
                let _ = writeln!(text, "# cap {cap} checked {checked} core pairs");
            }
            print!("{text}");
            if report.is_well_balanced() && instance_ok {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::EfficientPath {
            graph,
            decomposition,
            path,
            out,
        } => {
            let g = parse_graph(&read(&graph)?)?;
            let d = decomposition_for(&g, decomposition.as_deref())?;
            let p = parse_path(&read(&path)?, &d)?;
            let (q, rounds) = efficient_rewrite(&d, &p)?;
            let report = segment_connectivity_check(&d, &q)?;
            let mut text = write_path(&q, &d);
            let _ = writeln!(text, "# rounds {rounds}");
            let _ = writeln!(text, "# lambda {} {} {}", q.start(), q.end(), report.lambda);
            for s in &report.segments {
                let _ = writeln!(
                    text,
                    "# {} {} {} {} lambda {}",
                    if s.satisfied { "ok" } else { "violation" },
                    s.fragment,
                    s.from,
                    s.to,
                    s.lambda
                );
            }
            emit(out.as_deref(), &text)?;
            if report.holds() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::BondCheck {
            graph,
            decomposition,
            bmax,
        } => {
            let g = parse_graph(&read(&graph)?)?;
            let d = decomposition_for(&g, decomposition.as_deref())?;
            let violations = bond_faithful(&d, bmax)?;
            if violations.is_empty() {
                println!("bond-faithful up to {bmax} edges");
                return Ok(());
            }
            for v in &violations {
                let cut: Vec<String> = v
                    .cut
                    .iter()
                    .map(|(p, m)| format!("{}-{}:{m}", p.lo(), p.hi()))
                    .collect();
                println!("violation {} {}", v.fragment, cut.join(" "));
            }
            Err(Failure::Check)
        }
        Command::Fuzz {
            seed,
            size,
            trials,
            first_trial,
            out,
            inject_fault,
        } => {
            let config = FuzzConfig {
                seed,
                size: size as usize,
                trials,
                first_trial,
                inject_fault,
            };
            if verbose > 0 {
                eprintln!("wbo: fuzz trials {first_trial}..{}", first_trial + trials);
            }
            let summary = fuzz::run(&config);
            print!("{summary}");
            if summary.ok() {
                return Ok(());
            }
            fs::create_dir_all(&out).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
            for f in &summary.failures {
                let file = out.join(format!("trial-{}-{}.graph", f.trial, f.check.name()));
                fs::write(&file, &f.replay)
                    .map_err(|e| Failure::Io(format!("{}: {e}", file.display())))?;
                println!("replay {}", file.display());
            }
            Err(Failure::Check)
        }
    }
}

fn group_classes(values: &[String]) -> Vec<BTreeSet<String>> {
    values
        .iter()
        .map(|c| {
            c.split(',')
                .filter(|v| !v.is_empty())
                .map(str::to_string)
                .collect()
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Io(msg)) => {
            eprintln!("wbo: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("wbo: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
