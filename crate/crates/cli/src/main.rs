use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use latval::kernel::{descent_chain, region_tag_with_band, RAY_BAND};
use latval::verify::{parse_suites, run_suite};
use latval::{KernelSpec, LatticePolygon, ScalarField, Valuation};

#[derive(Parser)]
#[command(
    name = "latval",
    version,
    about = "Exponential lattice-polygon valuations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Z(P) at one point
    Eval {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long)]
        kernel: PathBuf,
        /// Evaluation point as X,Y
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Write Z(P) on a regular grid as CSV
    Grid(GridArgs),
    /// Run the randomized verification suites
    Verify(VerifyArgs),
    /// Classify a point of the closed positive quadrant
    Region {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    polygon: PathBuf,
    #[arg(long)]
    kernel: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    xmin: f64,
    #[arg(long, allow_hyphen_values = true)]
    xmax: f64,
    #[arg(long, allow_hyphen_values = true)]
    ymin: f64,
    #[arg(long, allow_hyphen_values = true)]
    ymax: f64,
    #[arg(long)]
    nx: usize,
    #[arg(long)]
    ny: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// all, valuation, covariance, equations, fibonacci or laplace
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    cases: usize,
    /// Kernel JSON file; overridden by the expression flags
    #[arg(long)]
    kernel: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    f0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    f1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<String>,
    /// Replace the simple part by this expression, or "analytic"
    #[arg(long, allow_hyphen_values = true)]
    f2: Option<String>,
}

struct Fail {
    code: u8,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail {
        code: 2,
        msg: msg.into(),
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_polygon(path: &Path) -> Result<LatticePolygon, Fail> {
    let src = read(path)?;
    if let Ok(v) = serde_json::from_str::<Value>(&src) {
        if let Some(vs) = v.get("vertices").and_then(Value::as_array) {
            if let Some(bad) = vs
                .iter()
                .find_map(|p| p.as_array().filter(|a| a.len() != 2))
            {
                return Err(Fail {
                    code: 3,
                    msg: format!(
                        "{}: vertex of dimension {}, expected 2",
                        path.display(),
                        bad.len()
                    ),
                });
            }
        }
    }
    LatticePolygon::from_json(&src).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_kernel(path: &Path) -> Result<KernelSpec, Fail> {
    KernelSpec::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn num(v: f64) -> String {
    format!("{v:?}")
}

fn parse_at(s: &str) -> Result<[f64; 2], Fail> {
    let parts: Vec<&str> = s.split(',').collect();
    let bad = || usage(format!("--at expects X,Y, got '{s}'"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let x = parts[0].trim().parse().map_err(|_| bad())?;
    let y = parts[1].trim().parse().map_err(|_| bad())?;
    Ok([x, y])
}

fn eval(polygon: &Path, kernel: &Path, at: &str) -> Result<(), Fail> {
    let x = parse_at(at)?;
    let p = load_polygon(polygon)?;
    let z = Valuation::new(&load_kernel(kernel)?);
    println!("{}", num(z.evaluate(&p, x)));
    Ok(())
}

fn axis(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    if i + 1 == n {
        hi
    } else {
        lo + (hi - lo) * i as f64 / (n - 1) as f64
    }
}

fn grid(a: &GridArgs) -> Result<(), Fail> {
    if a.nx < 2 || a.ny < 2 {
        return Err(usage("--nx and --ny must be at least 2"));
    }
    let p = load_polygon(&a.polygon)?;
    let z = Valuation::new(&load_kernel(&a.kernel)?);
    let io = |e: std::io::Error| usage(format!("{}: {e}", a.out.display()));
    let mut w = BufWriter::new(fs::File::create(&a.out).map_err(io)?);
    writeln!(w, "x,y,value").map_err(io)?;
    for j in 0..a.ny {
        let y = axis(a.ymin, a.ymax, a.ny, j);
        for i in 0..a.nx {
            let x = axis(a.xmin, a.xmax, a.nx, i);
            writeln!(w, "{},{},{}", num(x), num(y), num(z.evaluate(&p, [x, y]))).map_err(io)?;
        }
    }
    w.flush().map_err(io)
}

fn verify(a: &VerifyArgs) -> Result<bool, Fail> {
    let suites = parse_suites(&a.suite).map_err(usage)?;
    let mut spec = match &a.kernel {
        Some(path) => load_kernel(path)?,
        None => KernelSpec::laplace(),
    };
    if a.f0.is_some() || a.f1.is_some() || a.rho.is_some() {
        let parsed = |s: &Option<String>, default: &ScalarField| match s {
            Some(src) => ScalarField::from_expr(src).map_err(|e| usage(format!("'{src}': {e}"))),
            None => Ok(default.clone()),
        };
        spec = KernelSpec::new(
            a.f0.unwrap_or(spec.f0),
            parsed(&a.f1, &spec.f1_seed)?,
            parsed(&a.rho, &spec.rho_seed)?,
        );
    }
    let z = match a.f2.as_deref() {
        None => Valuation::new(&spec),
        Some("analytic") => Valuation::analytic_example(),
        Some(src) => Valuation::new(&spec)
            .with_f2(ScalarField::from_expr(src).map_err(|e| usage(format!("'{src}': {e}")))?),
    };
    let mut all = true;
    for s in suites {
        let report = run_suite(s, &z, a.seed, a.cases);
        all &= report.pass;
        println!("{}", report.to_json());
    }
    Ok(all)
}

fn decimals(s: &str) -> i32 {
    let mantissa = s.split(['e', 'E']).next().unwrap_or("");
    mantissa.split_once('.').map_or(0, |(_, f)| f.len() as i32)
}

fn coordinate(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{v}")
    } else {
        num(v)
    }
}

fn region(xs: &str, ys: &str) -> Result<(), Fail> {
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| usage(format!("not a number: '{s}'")))
    };
    let (x, y) = (parse(xs)?, parse(ys)?);
    let digits = decimals(xs).max(decimals(ys));
    let resolution = if digits > 0 { 10f64.powi(-digits) } else { 0.0 };
    let band = (RAY_BAND * (1.0 + x.abs())).max(resolution);
    let tag = region_tag_with_band(x, y, band).map_err(|e| usage(e.to_string()))?;
    let chain = descent_chain(x, y, band).map_err(|e| usage(e.to_string()))?;
    println!("{tag}");
    let steps: Vec<String> = chain
        .iter()
        .map(|&(a, b)| format!("({}, {})", coordinate(a), coordinate(b)))
        .collect();
    println!("{}", steps.join(" -> "));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval {
            polygon,
            kernel,
            at,
        } => eval(polygon, kernel, at).map(|_| true),
        Command::Grid(a) => grid(a).map(|_| true),
        Command::Verify(a) => verify(a),
        Command::Region { x, y } => region(x, y).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
