//! `ltq`: command-line access to locally twisted cube queries, routing
//! congestion, crossing bounds, meshes and drawings.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ltq_core::bounds::{bounds_table, TableFormat};
use ltq_core::construct::construct_next;
use ltq_core::drawing::{export_mesh_svg, export_svg, generate_mesh, load_drawing, save_drawing, validate_properties};
use ltq_core::drawing::{LtqDrawing, SvgOptions};
use ltq_core::routing::{CongestionOptions, DEFAULT_CONGESTION_CAP};
use ltq_core::{canonical_path, congestion_report, edge_congestion, Edge, Error, LtqGraph, VertexLabel};

#[derive(Parser, Debug)]
#[command(name = "ltq", version, about = "Locally twisted cubes: routing, congestion, crossing bounds and drawings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertex, edge and degree counts of LTQ_n.
    Info { n: usize },
    /// Neighbors of a vertex, one per dimension.
    Neighbors {
        /// Bit string such as `0110` or `decimal@n` such as `6@4`.
        vertex: VertexLabel,
    },
    /// Canonical path from `u` to `v`.
    Path { u: VertexLabel, v: VertexLabel },
    /// Edge congestion of the canonical-path embedding of K_{2^n}.
    Congestion {
        n: usize,
        /// Report a single edge, given as `x,y`.
        #[arg(long, value_parser = parse_edge)]
        edge: Option<Edge>,
        #[arg(long)]
        csv: bool,
        /// Largest n accepted.
        #[arg(long, default_value_t = DEFAULT_CONGESTION_CAP)]
        max_n: usize,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Upper and lower crossing-number bounds for a range such as `6..12`.
    Bounds {
        #[arg(value_parser = parse_range)]
        range: (usize, usize),
        #[arg(long)]
        csv: bool,
    },
    /// Realizes the mesh M^n (or M_c^n) and counts its crossings.
    Mesh {
        n: usize,
        #[arg(long)]
        chopped: bool,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Drawing workflows on LTQDRAW files.
    #[command(subcommand)]
    Draw(DrawCommand),
}

#[derive(Subcommand, Debug)]
enum DrawCommand {
    /// Prints the number of crossings.
    Count { file: PathBuf },
    /// Checks good-drawing conditions and Properties 1 to 5.
    Validate { file: PathBuf },
    /// Applies the doubling construction `steps` times.
    Extend {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(short = 'o', value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Renders the drawing as SVG.
    Svg {
        file: PathBuf,
        #[arg(short = 'o', value_name = "PATH")]
        output: PathBuf,
        /// Circle every crossing.
        #[arg(long)]
        markers: bool,
    },
}

fn parse_edge(s: &str) -> Result<Edge, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `x,y`, got {s:?}"))?;
    let a: VertexLabel = a.parse().map_err(|e: Error| e.to_string())?;
    let b: VertexLabel = b.parse().map_err(|e: Error| e.to_string())?;
    Edge::new(a, b).map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected `nmin..nmax`, got {s:?}"))?;
    let a = a.parse().map_err(|_| format!("invalid lower end {a:?}"))?;
    let b = b.parse().map_err(|_| format!("invalid upper end {b:?}"))?;
    Ok((a, b))
}

/// A failed command: message for the error stream and the exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Property { .. }
            | Error::Structure(_)
            | Error::Construction(_)
            | Error::Geometry(_)
            | Error::MalformedPolyline { .. } => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn read_drawing(path: &Path) -> Result<LtqDrawing, Failure> {
    let bytes = std::fs::read(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    load_drawing(&bytes).map_err(|e| {
        let f = Failure::from(e);
        Failure { message: format!("{}: {}", path.display(), f.message), ..f }
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| Failure { code: 1, message: format!("cannot write {}: {e}", path.display()) })
}

/// Output of a successful or property-failing command.
struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let mut out = String::new();
    match cli.command {
        Command::Info { n } => {
            let g = LtqGraph::new(n)?;
            let _ = writeln!(out, "n = {n}");
            let _ = writeln!(out, "vertices = {}", g.vertex_count());
            let _ = writeln!(out, "edges = {}", g.edge_count());
            let _ = writeln!(out, "degree = {n}");
            let _ = writeln!(out, "connected = {}", g.is_connected());
        }
        Command::Neighbors { vertex } => {
            for (i, w) in vertex.neighbors().iter().enumerate() {
                let _ = writeln!(out, "{} {w}", i + 1);
            }
        }
        Command::Path { u, v } => {
            let p = canonical_path(&u, &v)?;
            let labels: Vec<String> = p.vertices().iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{}", labels.join(" "));
        }
        Command::Congestion { n, edge, csv, max_n, jobs } => {
            if n > max_n {
                return Err(Error::ResourceLimit { n, cap: max_n }.into());
            }
            if jobs == 0 {
                return Err(usage("--jobs must be at least 1"));
            }
            match edge {
                Some(e) => {
                    if e.lo().dim() != n {
                        return Err(usage(format!("edge {e} does not belong to LTQ_{n}")));
                    }
                    let load = edge_congestion(n, &e)?;
                    if csv {
                        let _ = writeln!(out, "x,y,p_xy,p_yx,total");
                        let _ = writeln!(out, "{},{},{},{},{}", e.lo().to_decimal(), e.hi().to_decimal(), load.p_xy, load.p_yx, load.total);
                    } else {
                        let _ = writeln!(out, "edge {e}: p_xy = {}, p_yx = {}, total = {}", load.p_xy, load.p_yx, load.total);
                    }
                }
                None => {
                    let report = congestion_report(n, CongestionOptions { max_n, jobs })?;
                    if csv {
                        out.push_str(&report.to_csv());
                    } else {
                        for (e, load) in &report.per_edge {
                            let _ = writeln!(out, "{} {} {} {} {}", e.lo(), e.hi(), load.p_xy, load.p_yx, load.total);
                        }
                        let _ = writeln!(out, "edges = {}", report.per_edge.len());
                        let _ = writeln!(out, "max congestion = {}", report.max_congestion);
                    }
                }
            }
        }
        Command::Bounds { range: (lo, hi), csv } => {
            out = bounds_table(lo, hi, if csv { TableFormat::Csv } else { TableFormat::Text })?;
        }
        Command::Mesh { n, chopped, svg } => {
            let m = generate_mesh(n, chopped)?;
            let report = m.crossing_report()?;
            let name = if chopped { format!("M_c^{n}") } else { format!("M^{n}") };
            let _ = writeln!(out, "{name}: {} crossings (expected {})", report.total, m.expected_crossings());
            if let Some(path) = svg {
                let opts = SvgOptions { markers: true, ..SvgOptions::default() };
                write_file(&path, export_mesh_svg(&m, &opts)?.as_bytes())?;
            }
            if report.total != m.expected_crossings() {
                return Ok(Outcome { stdout: out, code: 1 });
            }
        }
        Command::Draw(cmd) => return draw(cmd),
    }
    Ok(Outcome::ok(out))
}

fn draw(cmd: DrawCommand) -> Result<Outcome, Failure> {
    let mut out = String::new();
    match cmd {
        DrawCommand::Count { file } => {
            let d = read_drawing(&file)?;
            let _ = writeln!(out, "{}", d.crossing_count()?);
        }
        DrawCommand::Validate { file } => {
            let d = read_drawing(&file)?;
            let report = validate_properties(&d)?;
            let code = u8::from(!report.all_pass());
            return Ok(Outcome { stdout: report.to_string(), code });
        }
        DrawCommand::Extend { file, steps, output } => {
            if steps == 0 {
                return Err(usage("--steps must be at least 1"));
            }
            let mut d = read_drawing(&file)?;
            for _ in 0..steps {
                let (next, trace) = construct_next(&d)?;
                eprint!("{}", trace.report());
                d = next;
            }
            let bytes = save_drawing(&d);
            match output {
                Some(path) => write_file(&path, &bytes)?,
                None => out = String::from_utf8(bytes).expect("LTQDRAW output is ASCII"),
            }
        }
        DrawCommand::Svg { file, output, markers } => {
            let d = read_drawing(&file)?;
            let opts = SvgOptions { markers, ..SvgOptions::default() };
            write_file(&output, export_svg(&d, &opts)?.as_bytes())?;
        }
    }
    Ok(Outcome::ok(out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome { stdout, code }) => {
            print!("{stdout}");
            ExitCode::from(code)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
