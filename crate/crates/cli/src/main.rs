use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;
use tropgr::combinat::check_desk_scale;
use tropgr::ncfan::{nc_decompose, psi, TPoint};
use tropgr::pluecker::{is_positive_tropical, PositivityCertificate};
use tropgr::troplin::{bounded_complex, diameter_check_with, VertexOptions};
use tropgr::verify::{duality_check, run_suite};
use tropgr::weight::weight_report;
use tropgr::{ladder, PlueckerVector};

#[derive(Parser)]
#[command(name = "tropgr", version, about = "Exact computations on positive tropical Grassmannians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the parallel parts of the core; 0 uses every core.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Lift the default k <= 6, n <= 12, C(n,k) <= 1000 limits.
    #[arg(long, global = true)]
    allow_large: bool,
}

#[derive(Args)]
struct Dims {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct Input {
    /// A file path, inline JSON, or `-` for stdin.
    #[arg(long = "in", value_name = "PATH|JSON|-")]
    input: String,
}

#[derive(Args)]
struct ComplexArgs {
    #[command(flatten)]
    input: Input,
    /// Also report edges of the bounded complex.
    #[arg(long)]
    edges: bool,
    /// Seconds allowed for vertex enumeration.
    #[arg(long, default_value_t = 600)]
    budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Check u^t_J(rho(t_J')) = delta_{J,J'} over all noncyclic pairs.
    Duality(Dims),
    /// Write a point of T^{k,n} as a noncrossing tableau.
    Decompose(Input),
    /// PK weight, NC weight and the bridge functional of a positive vector.
    Weight(Input),
    /// Plücker vector to its point of T^{k,n}.
    Psi(Input),
    /// Point of T^{k,n} to its positive tropical Plücker vector.
    Rho(Input),
    /// Bounded complex of the central representative.
    Bounded(ComplexArgs),
    /// Bounded complex of the balanced representative against the weight dilate.
    Diameter(ComplexArgs),
    /// Run the seeded invariant suite.
    Verify {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

enum Failure {
    /// Bad arguments, malformed input, or a violated precondition.
    Usage(String),
    /// The computation ran and a checked identity or bound failed.
    Math(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Math(_) => 1,
        }
    }
}

impl From<tropgr::Error> for Failure {
    fn from(e: tropgr::Error) -> Self {
        use tropgr::Error::*;
        match e {
            InvalidDimensions(_) | InvalidSubset(_) | SizeMismatch(_) | CyclicSubset(_) | InvalidArgument(_) | Parse(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Math(e.to_string()),
        }
    }
}

type Outcome = Result<(String, Option<String>), Failure>;

fn read_input(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("reading {arg}: {e}")))
    }
}

fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    path.iter()
        .filter_map(|seg| match seg {
            Segment::Seq { index } => Some(index.to_string()),
            Segment::Map { key } => Some(key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => Some(variant.clone()),
            Segment::Unknown => None,
        })
        .map(|s| format!("/{s}"))
        .collect()
}

fn parse<T: DeserializeOwned>(input: &Input) -> Result<T, Failure> {
    let text = read_input(&input.input)?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let ptr = json_pointer(e.path());
        let at = if ptr.is_empty() { "document root".to_string() } else { ptr };
        Failure::Usage(format!("schema error at {at}: {}", e.inner()))
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn positive(pi: &PlueckerVector) -> Result<(), Failure> {
    match is_positive_tropical(pi) {
        PositivityCertificate::Positive => Ok(()),
        v => Err(Failure::Usage(format!("input is not a positive tropical Plücker vector: {}", to_json(&v)))),
    }
}

fn vector(input: &Input, allow_large: bool) -> Result<PlueckerVector, Failure> {
    let pi: PlueckerVector = parse(input)?;
    check_desk_scale(pi.k(), pi.n(), allow_large)?;
    Ok(pi)
}

fn tpoint(input: &Input, allow_large: bool) -> Result<TPoint, Failure> {
    let t: TPoint = parse(input)?;
    check_desk_scale(t.k(), t.n(), allow_large)?;
    Ok(t)
}

fn options(a: &ComplexArgs) -> VertexOptions {
    VertexOptions { budget: Some(Duration::from_secs(a.budget)), edges: a.edges }
}

fn run(cli: &Cli) -> Outcome {
    let large = cli.allow_large;
    match &cli.command {
        Command::Duality(d) => {
            check_desk_scale(d.k, d.n, large)?;
            let r = duality_check(d.k, d.n)?;
            let fail = r.mismatches.first().map(|m| format!("duality fails at J={} J'={}: value {}", m.j, m.j_prime, m.value));
            Ok((to_json(&r), fail))
        }
        Command::Decompose(i) => Ok((to_json(&nc_decompose(&tpoint(i, large)?)?), None)),
        Command::Weight(i) => {
            let pi = vector(i, large)?;
            positive(&pi)?;
            let r = weight_report(&pi)?;
            let fail = (!r.agree).then(|| format!("weights disagree: pk {} nc {} bridge {}", r.pk_weight, r.nc_weight, r.bridge_value));
            Ok((to_json(&r), fail))
        }
        Command::Psi(i) => Ok((to_json(&psi(&vector(i, large)?)?), None)),
        Command::Rho(i) => Ok((to_json(&ladder::rho(&tpoint(i, large)?)?), None)),
        Command::Bounded(a) => {
            let pi = vector(&a.input, large)?;
            positive(&pi)?;
            Ok((to_json(&bounded_complex(&pi, &options(a))?), None))
        }
        Command::Diameter(a) => {
            let pi = vector(&a.input, large)?;
            positive(&pi)?;
            let r = diameter_check_with(&pi, &options(a))?;
            let fail = (!(r.within_dilate && r.extent_within_weight))
                .then(|| format!("vertices leave the {}-fold dilate: spread {} extent {}", r.pk_weight, r.max_coordinate_spread, r.max_vertex_extent));
            Ok((to_json(&r), fail))
        }
        Command::Verify { dims, seed, samples } => {
            check_desk_scale(dims.k, dims.n, large)?;
            let r = run_suite(dims.k, dims.n, *seed, *samples)?;
            let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
            let fail = (!r.passed).then(|| format!("failed checks: {}", failed.join(", ")));
            Ok((to_json(&r), fail))
        }
    }
}

fn emit(out: &Option<PathBuf>, json: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, format!("{json}\n")).map_err(|e| Failure::Usage(format!("writing {}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            writeln!(so, "{json}").map_err(|e| Failure::Usage(format!("writing stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| run(&cli)).and_then(|(json, fail)| {
        emit(&cli.out, &json)?;
        fail.map_or(Ok(()), |m| Err(Failure::Math(m)))
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Usage(m) | Failure::Math(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}
