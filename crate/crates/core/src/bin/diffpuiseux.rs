//! Command-line frontend: solve an ordinary polynomial differential
//! equation in Puiseux series, exactly.

use std::fs;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use diffpuiseux::rat::parse_frac;
use diffpuiseux::report::{run, OutputFormat, PolygonFormat, ProblemSpec};
use diffpuiseux::Error;

#[derive(Parser)]
#[command(
    name = "diffpuiseux",
    about = "Exact Puiseux-series solutions of polynomial ODEs F(y, y', ..., y^(n)) = 0",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolygonArg {
    Ascii,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an equation given as an expression, a file path, or '-' (stdin)
    Solve {
        /// Expression like "y0^2 - x" or "x*y0*y2 - x*y1^2 + y0*y1"
        input: String,

        /// Largest leading exponent expanded, as p/q
        #[arg(long, value_name = "p/q", default_value = "10")]
        max_exponent: String,

        /// Maximum tree depth
        #[arg(long, default_value_t = 32)]
        max_level: u32,

        /// Maximum number of tree nodes
        #[arg(long, default_value_t = 10000)]
        max_nodes: usize,

        /// Admit negative inclinations (search for negative-order solutions)
        #[arg(long)]
        allow_negative_inclinations: bool,

        /// Assign a value to a parametric family, e.g. c0=3/2 or c0=root(Z^2-2)
        #[arg(long, value_name = "name=value")]
        param: Vec<String>,

        /// Report format
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,

        /// Also render the Newton polygon of the input
        #[arg(long, value_enum)]
        polygon: Option<PolygonArg>,

        /// Re-verify every solution's residual up to this exponent, as p/q
        #[arg(long, value_name = "p/q")]
        verify_to: Option<String>,

        /// Write the report (and any SVG polygon) to a file instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<String>,
    },
}

fn read_input(input: &str) -> std::io::Result<String> {
    if input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        return Ok(buf);
    }
    if Path::new(input).is_file() {
        return fs::read_to_string(input);
    }
    Ok(input.to_string())
}

fn solve_main(cli: Cli) -> Result<(), Error> {
    let Command::Solve {
        input,
        max_exponent,
        max_level,
        max_nodes,
        allow_negative_inclinations,
        param,
        format,
        polygon,
        verify_to,
        out,
    } = cli.command;

    let source = read_input(&input)
        .map_err(|e| Error::Unsupported(format!("cannot read input: {}", e)))?;
    let mut spec = ProblemSpec::from_source(&source)?;
    spec.budget.max_exponent = parse_frac(&max_exponent)
        .ok_or_else(|| Error::Unsupported(format!("malformed --max-exponent '{}'", max_exponent)))?;
    spec.budget.max_level = max_level;
    spec.budget.max_nodes = max_nodes;
    spec.strict_b = !allow_negative_inclinations;
    for p in &param {
        spec.parse_param(p)?;
    }
    spec.format = match format {
        FormatArg::Text => OutputFormat::Text,
        FormatArg::Json => OutputFormat::Json,
    };
    spec.polygon = polygon.map(|p| match p {
        PolygonArg::Ascii => PolygonFormat::Ascii,
        PolygonArg::Svg => PolygonFormat::Svg,
    });
    spec.verify_to = match &verify_to {
        Some(s) => Some(parse_frac(s).ok_or_else(|| {
            Error::Unsupported(format!("malformed --verify-to '{}'", s))
        })?),
        None => None,
    };

    let mut report = run(&spec)?;
    // With --out and an SVG polygon, the file receives the drawing and the
    // report itself goes to stdout.
    let mut svg_out = None;
    if let (Some(PolygonFormat::Svg), Some(path)) = (spec.polygon, &out) {
        svg_out = Some((path.clone(), report.polygon.take().unwrap_or_default()));
    }
    let rendered = match spec.format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
    };
    match (svg_out, out) {
        (Some((path, svg)), _) => {
            fs::write(&path, svg)
                .map_err(|e| Error::Unsupported(format!("cannot write '{}': {}", path, e)))?;
            print!("{}", rendered);
        }
        (None, Some(path)) => fs::write(&path, rendered)
            .map_err(|e| Error::Unsupported(format!("cannot write '{}': {}", path, e)))?,
        (None, None) => print!("{}", rendered),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match solve_main(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
