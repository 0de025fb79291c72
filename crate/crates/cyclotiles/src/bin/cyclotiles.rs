use clap::{Parser, Subcommand, ValueEnum};
use cyclotiles::algebra::parse::parse_polynomial;
use cyclotiles::report::{build_report, RunReport};
use cyclotiles::solver::{self, SolveResult};
use cyclotiles::tiling::cases::{case_by_id, enumerate_cases};
use cyclotiles::tiling::{solve_cases, TilingError};
use serde::Serialize;
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cyclotiles",
    version,
    about = "Roots-of-unity solutions and the rational a3b monotile classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Md, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest f scanned for family members.
    #[arg(long, default_value_t = 200, global = true)]
    f_max: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Run all 36 cases and merge them into the classification.
    Classify,
    /// Run a single case, e.g. `abd` or `b3+a4`.
    Case { id: String },
    /// Roots-of-unity solutions of a polynomial in x, y, z.
    Roots {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        vars: u8,
        poly: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

enum Failure {
    Parse(String),
    Inconsistent(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Inconsistent(_) => 3,
            Failure::Other(_) => 1,
        }
    }
}

impl From<TilingError> for Failure {
    fn from(e: TilingError) -> Self {
        match e {
            TilingError::UnknownCase(_) => Failure::Parse(e.to_string()),
            TilingError::Inconsistent(_) => Failure::Inconsistent(e.to_string()),
            e => Failure::Other(e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct RootsReport {
    polynomial: String,
    /// Each coordinate as [k, n] for e^{2 pi i k/n}.
    points: Vec<Vec<[u64; 2]>>,
    families: Vec<String>,
}

fn roots(vars: u8, text: &str) -> Result<RootsReport, Failure> {
    let p = parse_polynomial(text, vars as usize).map_err(|e| Failure::Parse(e.to_string()))?;
    let r: SolveResult = solver::solve(&p).map_err(|e| Failure::Other(e.to_string()))?;
    Ok(RootsReport {
        polynomial: p.to_string(),
        points: r
            .points
            .iter()
            .map(|pt| {
                pt.coords
                    .iter()
                    .map(|c| [c.numerator(), c.order()])
                    .collect()
            })
            .collect(),
        families: r.families.iter().map(|f| f.to_string()).collect(),
    })
}

fn render_roots(r: &RootsReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("serializes"),
        Format::Csv => {
            let mut s = String::from("kind,value\n");
            for p in &r.points {
                let t: Vec<String> = p.iter().map(|[k, n]| format!("{}/{}", k, n)).collect();
                let _ = writeln!(s, "point,\"({})\"", t.join(", "));
            }
            for f in &r.families {
                let _ = writeln!(s, "family,\"{}\"", f);
            }
            s
        }
        Format::Md => {
            let mut s = format!("Solutions of {} = 0\n\n", r.polynomial);
            for p in &r.points {
                let t: Vec<String> = p.iter().map(|[k, n]| format!("{}/{}", k, n)).collect();
                let _ = writeln!(s, "- point ({})", t.join(", "));
            }
            for f in &r.families {
                let _ = writeln!(s, "- family {}", f);
            }
            s
        }
    }
}

fn render_report(r: &RunReport, format: Format) -> String {
    match format {
        Format::Json => r.to_json(),
        Format::Csv => r.to_csv(),
        Format::Md => r.to_markdown(),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Roots { vars, poly } => Ok(render_roots(&roots(*vars, poly)?, cli.format)),
        Command::Classify | Command::Case { .. } => {
            let cases = match &cli.command {
                Command::Case { id } => vec![case_by_id(id)?],
                _ => enumerate_cases(),
            };
            let results: Vec<_> = cases
                .iter()
                .cloned()
                .zip(solve_cases(&cases, cli.f_max))
                .collect();
            let report = build_report(&results, cli.f_max, true)?;
            let text = render_report(&report, cli.format);
            if let Some((c, Err(e))) = results
                .iter()
                .find(|(_, r)| matches!(r, Err(TilingError::Inconsistent(_))))
            {
                emit(cli, &text)?;
                return Err(Failure::Inconsistent(format!("{}: {}", c.id, e)));
            }
            Ok(text)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Other(format!("{}: {}", path.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {}", e);
            return ExitCode::from(1);
        }
    }
    match run(&cli).and_then(|text| emit(&cli, &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Parse(m) | Failure::Inconsistent(m) | Failure::Other(m)) = &f;
            eprintln!("error: {}", m);
            ExitCode::from(f.code())
        }
    }
}
