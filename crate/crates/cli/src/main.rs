use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use udgplanar::augmentation::{algorithm2, algorithm3, compose_blocks};
use udgplanar::crossing::algorithm1;
use udgplanar::fixtures::{self, Precondition};
use udgplanar::io::{format_points, parse_points, render_svg, GraphDocument};
use udgplanar::oracle::{exists_planar_subgraph, optimal_planar_radius};
use udgplanar::udg::build_udg;
use udgplanar::{audit, Error, GeometricGraph, PointSet, Property, VerificationReport};

#[derive(Parser)]
#[command(name = "udgplanar", version, about = "Planar spanning subgraphs of unit disk graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a planar spanning subgraph of the unit disk graph of a point file.
    Build {
        /// CSV file with one `x,y` per line.
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Alg::Auto)]
        alg: Alg,
        /// Transmission radius in input units; coordinates are divided by it.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Graph JSON destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Audit a graph JSON file. Exits 0 iff the graph is planar.
    Verify { graph: PathBuf },
    /// Print a generated point set as CSV.
    Gen {
        #[arg(value_enum)]
        gadget: Gadget,
        /// Component count for the gadgets.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Point count for `sqrt5` and `random`.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = fixtures::DEFAULT_SLACK)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Pre::TwoEdge)]
        pre: Pre,
    },
    /// Decide whether a crossing-free spanning subgraph with a property
    /// exists; without `--radius`, report the smallest radius that admits one.
    Oracle {
        input: PathBuf,
        #[arg(long, value_enum)]
        prop: Prop,
        #[arg(long)]
        radius: Option<f64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Alg {
    /// Minimum degree 2, edges up to 2.
    Deg2,
    /// 2-edge connected, edges up to sqrt(5).
    TecSqrt5,
    /// 2-edge connected, edges up to 2; needs a 2-vertex connected input.
    TecR2,
    /// 2-edge connected, edges up to 2, block by block.
    Blocks,
    /// Strongest construction whose requirement holds.
    Auto,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Gadget {
    Mindeg2,
    Sqrt5,
    #[value(name = "2ec")]
    TwoEdge,
    Highcon,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Pre {
    Mindeg2,
    ConnectedMindeg2,
    #[value(name = "2vc")]
    TwoVertex,
    #[value(name = "2ec")]
    TwoEdge,
}

impl From<Pre> for Precondition {
    fn from(p: Pre) -> Self {
        match p {
            Pre::Mindeg2 => Precondition::MinDeg2,
            Pre::ConnectedMindeg2 => Precondition::ConnectedMinDeg2,
            Pre::TwoVertex => Precondition::TwoVertexConnected,
            Pre::TwoEdge => Precondition::TwoEdgeConnected,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Prop {
    Connected,
    Mindeg2,
    #[value(name = "2ec")]
    TwoEdge,
    #[value(name = "2vc")]
    TwoVertex,
}

impl From<Prop> for Property {
    fn from(p: Prop) -> Self {
        match p {
            Prop::Connected => Property::Connected,
            Prop::Mindeg2 => Property::MinDegree2,
            Prop::TwoEdge => Property::TwoEdgeConnected,
            Prop::TwoVertex => Property::TwoVertexConnected,
        }
    }
}

/// Failure of a command, mapped to the process exit code.
enum Failure {
    /// I/O, parse and internal errors.
    General(String),
    /// The input does not meet a requirement, or the output is not planar.
    Finding(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_)
            | Error::IsolatedVertex { .. }
            | Error::Disconnected
            | Error::Unattainable(_)
            | Error::TooLarge { .. }
            | Error::BudgetExhausted => Failure::Finding(e.to_string()),
            _ => Failure::General(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::General(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::General(format!("{}: {e}", path.display())))
}

fn choose(ps: &PointSet) -> Result<Alg, Failure> {
    let adj = build_udg(ps, 1.0)?.adjacency();
    let alg = if Property::TwoVertexConnected.holds(&adj) {
        Alg::TecR2
    } else if Property::TwoEdgeConnected.holds(&adj) {
        Alg::Blocks
    } else if Property::Connected.holds(&adj) && Property::MinDegree2.holds(&adj) {
        Alg::TecSqrt5
    } else if Property::MinDegree2.holds(&adj) {
        Alg::Deg2
    } else {
        return Err(Failure::Finding(
            "unit disk graph has a vertex of degree below 2; no construction applies".into(),
        ));
    };
    Ok(alg)
}

fn summary(rep: &VerificationReport) -> String {
    format!(
        "vertices: {}\nedges: {}\nplanar: {}\ncrossings: {}\nbridges: {}\nmin_degree: {}\nconnected: {}\ntwo_edge_connected: {}\ntwo_vertex_connected: {}\nmax_edge_length: {}\n",
        rep.vertex_count,
        rep.edge_count,
        rep.is_planar,
        rep.crossing_count,
        rep.bridges.len(),
        rep.min_degree,
        rep.is_connected,
        rep.is_two_edge_connected,
        rep.is_two_vertex_connected,
        rep.max_edge_length
    )
}

fn build(
    input: &Path,
    alg: Alg,
    radius: f64,
    out: Option<&Path>,
    svg: Option<&Path>,
) -> Result<(), Failure> {
    let ps = parse_points(&read(input)?, radius)?;
    let alg = match alg {
        Alg::Auto => choose(&ps)?,
        other => other,
    };
    let run = |ps: &PointSet| -> udgplanar::Result<GeometricGraph> {
        match alg {
            Alg::Deg2 => algorithm1(ps),
            Alg::TecSqrt5 => algorithm2(ps),
            Alg::TecR2 => algorithm3(ps),
            Alg::Blocks | Alg::Auto => compose_blocks(ps),
        }
    };
    let g = run(&ps).map_err(|e| match Failure::from(e) {
        Failure::Finding(msg) => {
            let unit = audit(&build_udg(&ps, 1.0).expect("radius is positive"));
            Failure::Finding(format!("{msg}\nunit disk graph audit:\n{}", summary(&unit)))
        }
        other => other,
    })?;
    let doc = GraphDocument::new(&g, radius);
    let json = doc.to_json();
    match out {
        Some(path) => write(path, &json)?,
        None => println!("{json}"),
    }
    if let Some(path) = svg {
        write(path, &render_svg(&g))?;
    }
    eprintln!(
        "algorithm: {}; edges: {}; max edge: {}",
        alg.to_possible_value().expect("not skipped").get_name(),
        doc.report.edge_count,
        doc.report.max_edge_length
    );
    Ok(())
}

fn verify(path: &Path) -> Result<(), Failure> {
    let doc = GraphDocument::from_json(&read(path)?)?;
    let g = doc.to_graph()?;
    let rep = audit(&g);
    print!("{}", summary(&rep));
    for (s, t) in &rep.crossings {
        println!("crossing: {s:?} x {t:?}");
    }
    for b in &rep.bridges {
        println!("bridge: {b:?}");
    }
    if rep != doc.report {
        println!("stored report differs from the recomputed one");
    }
    if rep.is_planar {
        Ok(())
    } else {
        Err(Failure::Finding(format!("graph has {} crossing pairs", rep.crossing_count)))
    }
}

fn generate(gadget: Gadget, k: usize, n: Option<usize>, eps: f64, seed: u64, pre: Pre) -> Result<(), Failure> {
    let ps = match gadget {
        Gadget::Mindeg2 => fixtures::gen_mindeg2_gadget(k, eps)?,
        Gadget::Sqrt5 => fixtures::gen_sqrt5_gadget(n.unwrap_or(8), eps)?,
        Gadget::TwoEdge => fixtures::gen_2ec_gadget(k, eps)?,
        Gadget::Highcon => fixtures::gen_highcon_gadget(k.max(2), eps)?,
        Gadget::Random => fixtures::gen_random(n.unwrap_or(20), seed, pre.into())?,
    };
    print!("{}", format_points(&ps));
    Ok(())
}

fn oracle(input: &Path, prop: Prop, radius: Option<f64>) -> Result<(), Failure> {
    let ps = parse_points(&read(input)?, 1.0)?;
    let prop = Property::from(prop);
    match radius {
        Some(r) => {
            let witness = exists_planar_subgraph(&ps, r, prop)?;
            println!("exists: {}", witness.is_some());
            if let Some(w) = witness {
                for s in w.segments() {
                    println!("edge: {s:?}");
                }
            }
        }
        None => println!("optimal radius: {:?}", optimal_planar_radius(&ps, prop)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build {
            input,
            alg,
            radius,
            out,
            svg,
        } => build(&input, alg, radius, out.as_deref(), svg.as_deref()),
        Command::Verify { graph } => verify(&graph),
        Command::Gen {
            gadget,
            k,
            n,
            eps,
            seed,
            pre,
        } => generate(gadget, k, n, eps, seed, pre),
        Command::Oracle { input, prop, radius } => oracle(&input, prop, radius),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::General(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Finding(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
