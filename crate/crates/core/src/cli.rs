//! The `cutvol` command line. [`run`] returns the process exit code:
//! 0 on success, 2 for usage errors, 3 when a computation fails.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::elliptope::{asymptotic_log_volume, corrected_asymptotic_log_volume, i_log_volume};
use crate::error::Error;
use crate::estimate::{elliptope_rejection, sob_volume, vpolytope_estimate, Direction, EstimateStats, WalkConfig};
use crate::exactvol::{formula_volume, lasserre_volume, rmet_volume, ADVISORY_DIM};
use crate::graphs::{classify, make_complete, make_cycle, make_path, make_star, Graph};
use crate::polytope::{
    cut_hrep_complete, cut_hrep_sparse, cut_vertices, met_hrep, rmet_hrep, write_ext, write_ine, HPolytope,
};
use crate::report::{build_report, crossover_text, format_sig, met_log_points, quadratic_fit, ReportKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cutvol", version, about = "Volumes of cut, metric and rooted metric polytopes and elliptopes")]
pub struct Cli {
    /// Seed for the Monte Carlo estimators.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Number of independent estimator runs.
    #[arg(long, global = true)]
    pub runs: Option<usize>,
    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// `ine` or `ext` for construct, `text` or `csv` elsewhere.
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Body {
    Cut,
    Met,
    Rmet,
    Elliptope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Exact,
    Estimate,
    Elliptope,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Coordinate,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the H- or V-representation of a body.
    Construct {
        #[arg(long, value_enum)]
        body: Body,
        /// `Kn`, `Cn`, `Pn`, `Sn` or a graph file.
        #[arg(long)]
        graph: String,
    },
    /// Print one volume.
    Volume {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long, value_enum, default_value = "cut")]
        body: Body,
        #[arg(long)]
        graph: Option<String>,
        /// Vertex count for complete-graph bodies and the elliptope.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Repeated Monte Carlo volume estimates with run statistics.
    Estimate {
        #[arg(long, value_enum, default_value = "met")]
        body: Body,
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        walk_len: Option<usize>,
        /// Samples per phase, or total samples for the elliptope.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        radius_growth: Option<f64>,
        #[arg(long, value_enum, default_value = "coordinate")]
        direction: DirectionArg,
    },
    /// Reproduce a volume table or the log-volume plot series.
    Report {
        /// 1, 2, 3, 4 or figure5.
        #[arg(long)]
        table: String,
    },
    /// Fit a parabola to log-volumes, by default of Met_n.
    Fit {
        /// CSV with columns `n,y`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Where the elliptope overtakes the metric polytope.
    Crossover,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn as_usage<T>(r: crate::Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::Usage(e.to_string()))
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Like [`run`] with explicit output and diagnostic streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(CliError::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_COMPUTE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Construct { body, graph } => cmd_construct(cli, *body, graph, out),
        Command::Volume { method, body, graph, n } => {
            let line = cmd_volume(cli, *method, *body, graph.as_deref(), *n, err)?;
            emit(cli, &line, out)
        }
        Command::Estimate {
            body,
            graph,
            n,
            walk_len,
            samples,
            radius_growth,
            direction,
        } => {
            let target = Target::resolve(*body, graph.as_deref(), *n)?;
            let stats = estimate_target(cli, &target, *walk_len, *samples, *radius_growth, *direction)?;
            emit(cli, &stats_text(cli, &stats)?, out)
        }
        Command::Report { table } => cmd_report(cli, table, out),
        Command::Fit { input } => {
            let pts = match input {
                Some(p) => read_points(p)?,
                None => met_log_points()?,
            };
            let f = quadratic_fit(&pts)?;
            let text = match text_or_csv(cli)? {
                true => format!(
                    "y = {} n^2 + {} n + {}  (rms {})\n",
                    format_sig(f.a2, 3, false),
                    format_sig(f.a1, 3, false),
                    format_sig(f.a0, 3, false),
                    format_sig(f.residual_rms, 3, false)
                ),
                false => format!("a2,a1,a0,residual_rms\n{:e},{:e},{:e},{:e}\n", f.a2, f.a1, f.a0, f.residual_rms),
            };
            emit(cli, &text, out)
        }
        Command::Crossover => emit(cli, &crossover_text()?, out),
    }
}

fn emit(cli: &Cli, text: &str, out: &mut dyn Write) -> CliResult<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Compute(e.into())),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::Compute(e.into())),
    }
}

/// True for text, false for csv.
fn text_or_csv(cli: &Cli) -> CliResult<bool> {
    match cli.format.as_deref() {
        None | Some("text") => Ok(true),
        Some("csv") => Ok(false),
        Some(f) => usage(format!("unknown format `{f}`, expected text or csv")),
    }
}

/// `Kn`, `Cn`, `Pn`, `Sn`, or a path to a graph file.
pub fn parse_graph_spec(spec: &str) -> crate::Result<Graph> {
    let mut chars = spec.chars();
    if let (Some(c), rest) = (chars.next(), chars.as_str()) {
        if let Ok(n) = rest.parse::<usize>() {
            match c {
                'K' => return make_complete(n),
                'C' => return make_cycle(n),
                'P' => return make_path(n),
                'S' => return make_star(n),
                _ => {}
            }
        }
    }
    let path = Path::new(spec);
    if !path.is_file() {
        return Err(Error::InvalidArgument(format!(
            "`{spec}` is neither Kn, Cn, Pn, Sn nor a graph file"
        )));
    }
    Graph::from_text(&std::fs::read_to_string(path)?)
}

/// A body resolved from the command-line flags.
enum Target {
    Cut(Graph),
    Met(usize),
    Rmet(usize),
    Elliptope(usize),
}

impl Target {
    fn resolve(body: Body, graph: Option<&str>, n: Option<usize>) -> CliResult<Target> {
        let g = graph.map(parse_graph_spec).transpose();
        let g = as_usage(g)?;
        let complete_n = |what: &str| -> CliResult<usize> {
            match (&g, n) {
                (Some(g), _) if g.is_complete() => Ok(g.n()),
                (Some(_), _) => usage(format!("{what} is only built over complete graphs (Kn)")),
                (None, Some(n)) => Ok(n),
                (None, None) => usage(format!("{what} needs --graph Kn or --n")),
            }
        };
        Ok(match body {
            Body::Cut => match (g, n) {
                (Some(g), _) => Target::Cut(g),
                (None, Some(n)) => Target::Cut(as_usage(make_complete(n))?),
                (None, None) => return usage("cut needs --graph or --n"),
            },
            Body::Met => Target::Met(complete_n("the metric polytope")?),
            Body::Rmet => Target::Rmet(complete_n("the rooted metric polytope")?),
            Body::Elliptope => Target::Elliptope(complete_n("the elliptope")?),
        })
    }

    fn name(&self) -> String {
        match self {
            Target::Cut(g) => format!("cut_{}", g.n()),
            Target::Met(n) => format!("met_{n}"),
            Target::Rmet(n) => format!("rmet_{n}"),
            Target::Elliptope(n) => format!("elliptope_{n}"),
        }
    }

    fn hrep(&self) -> CliResult<HPolytope> {
        match self {
            Target::Met(n) => as_usage(met_hrep(*n)),
            Target::Rmet(n) => as_usage(rmet_hrep(*n)),
            Target::Cut(g) if g.is_complete() => {
                if g.n() >= 5 {
                    return usage(format!(
                        "unsupported: no H-representation of Cut(K_{}) (the graph has a K_5 minor)",
                        g.n()
                    ));
                }
                as_usage(cut_hrep_complete(g.n()))
            }
            Target::Cut(g) => cut_hrep_sparse(g).or_else(|e| match e {
                Error::UnsupportedFamily(m) => usage(format!("unsupported: {m}")),
                e => Err(e.into()),
            }),
            Target::Elliptope(_) => usage("unsupported: the elliptope is not a polytope"),
        }
    }
}

fn cmd_construct(cli: &Cli, body: Body, graph: &str, out: &mut dyn Write) -> CliResult<()> {
    let target = Target::resolve(body, Some(graph), None)?;
    let mut buf = Vec::new();
    match cli.format.as_deref().unwrap_or("ine") {
        "ine" => write_ine(&target.hrep()?, &target.name(), &mut buf)?,
        "ext" => match &target {
            Target::Cut(g) => write_ext(&cut_vertices(g)?, &target.name(), &mut buf)?,
            _ => return usage("unsupported: vertex enumeration is only built for cut polytopes"),
        },
        f => return usage(format!("unknown format `{f}`, expected ine or ext")),
    }
    emit(cli, &String::from_utf8(buf).expect("utf-8"), out)
}

fn cmd_volume(
    cli: &Cli,
    method: Method,
    body: Body,
    graph: Option<&str>,
    n: Option<usize>,
    err: &mut dyn Write,
) -> CliResult<String> {
    let body = if matches!(method, Method::Elliptope | Method::Asymptotic) { Body::Elliptope } else { body };
    let target = Target::resolve(body, graph, n)?;
    match method {
        Method::Formula => {
            let v = match &target {
                Target::Cut(g) => formula_volume(&classify(g)).or_else(|e| match e {
                    Error::UnsupportedFamily(m) => usage(format!("unsupported: {m}")),
                    e => Err(e.into()),
                })?,
                Target::Rmet(n) => rmet_volume(*n)?,
                _ => return usage("unsupported: closed forms exist for cut polytopes of sparse graphs and RMet_n"),
            };
            Ok(format!("{v}\n"))
        }
        Method::Exact => {
            let h = target.hrep()?;
            if h.dim() > ADVISORY_DIM {
                let _ = writeln!(err, "warning: dimension {} is above {ADVISORY_DIM}; this may take long", h.dim());
            }
            Ok(format!("{}\n", lasserre_volume(&h)?))
        }
        Method::Estimate => {
            let stats = estimate_target(cli, &target, None, None, None, DirectionArg::Coordinate)?;
            stats_text(cli, &stats)
        }
        Method::Elliptope => {
            let Target::Elliptope(n) = target else { unreachable!("resolved as elliptope") };
            let v = i_log_volume(n)?;
            Ok(format!("{}  (log {})\n", v.format_sci(3), v.log_value))
        }
        Method::Asymptotic => {
            let Target::Elliptope(n) = target else { unreachable!("resolved as elliptope") };
            let printed = asymptotic_log_volume(n)?;
            let corrected = corrected_asymptotic_log_volume(n)?;
            Ok(format!(
                "log v_n = {}\ncorrected = {}\n",
                printed.log_value, corrected.log_value
            ))
        }
    }
}

fn estimate_target(
    cli: &Cli,
    target: &Target,
    walk_len: Option<usize>,
    samples: Option<usize>,
    growth: Option<f64>,
    direction: DirectionArg,
) -> CliResult<EstimateStats> {
    if let Target::Elliptope(n) = target {
        return Ok(elliptope_rejection(*n, samples.unwrap_or(1_000_000), cli.seed)?);
    }
    let (h, vertices) = match target {
        Target::Cut(g) if g.is_complete() && g.n() >= 5 => (None, Some(cut_vertices(g)?)),
        t => (Some(t.hrep()?), None),
    };
    let dim = h.as_ref().map_or_else(|| vertices.as_ref().map_or(0, |v| v.dim()), |h| h.dim());
    let mut cfg = WalkConfig::for_dim(dim);
    cfg.seed = cli.seed;
    if let Some(r) = cli.runs {
        cfg.runs = r;
    }
    if let Some(w) = walk_len {
        cfg.walk_len = w;
    }
    if let Some(s) = samples {
        cfg.samples_per_phase = s;
    }
    if let Some(g) = growth {
        cfg.radius_growth = g;
    }
    cfg.direction = match direction {
        DirectionArg::Coordinate => Direction::Coordinate,
        DirectionArg::Random => Direction::Random,
    };
    as_usage(cfg.validate())?;
    Ok(match (h, vertices) {
        (Some(h), _) => sob_volume(&h, &cfg)?,
        (None, Some(v)) => vpolytope_estimate(&v, &cfg)?,
        (None, None) => unreachable!("one representation is always built"),
    })
}

fn stats_text(cli: &Cli, s: &EstimateStats) -> CliResult<String> {
    let vals = [s.min, s.q1, s.median, s.mean, s.q3, s.max];
    Ok(if text_or_csv(cli)? {
        let cells: Vec<String> = vals.iter().map(|v| format_sig(*v, 3, false)).collect();
        format!(
            "mean {}  (min {}  q1 {}  median {}  q3 {}  max {}; {} runs)\n",
            cells[3], cells[0], cells[1], cells[2], cells[4], cells[5], s.n_runs
        )
    } else {
        let mut t = String::from("runs,min,q1,median,mean,q3,max\n");
        let _ = write!(t, "{}", s.n_runs);
        for v in vals {
            let _ = write!(t, ",{v:e}");
        }
        t.push('\n');
        t
    })
}

fn cmd_report(cli: &Cli, table: &str, out: &mut dyn Write) -> CliResult<()> {
    let kind: ReportKind = as_usage(table.parse())?;
    let want_text = text_or_csv(cli)?;
    let rep = build_report(kind)?;
    match &cli.out {
        Some(p) => {
            let io = |e: std::io::Error| CliError::Compute(e.into());
            std::fs::write(p.with_extension("csv"), rep.to_csv()).map_err(io)?;
            std::fs::write(p.with_extension("txt"), rep.to_text()).map_err(io)?;
            Ok(())
        }
        None => {
            let text = if want_text { rep.to_text() } else { rep.to_csv() };
            out.write_all(text.as_bytes()).map_err(|e| CliError::Compute(e.into()))
        }
    }
}

fn read_points(path: &Path) -> CliResult<Vec<(f64, f64)>> {
    let mut rd = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut pts = Vec::new();
    for rec in rd.deserialize::<(f64, f64)>() {
        pts.push(rec.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?);
    }
    Ok(pts)
}
