use std::io::Read;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};

use pinvode::cli::{run, run_batch, split_ode, Format, RunConfig, EXIT_PARSE};
use pinvode::Method;

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Matrix,
    Adaptive,
    Maclaurin,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Latex,
    Json,
}

/// Particular solutions of linear ODEs with constant coefficients.
#[derive(Parser)]
#[command(version, group(ArgGroup::new("input").args(["ode", "batch"]).conflicts_with_all(["op", "rhs"])))]
struct Args {
    /// Operator, e.g. "D^2 - 4D + 13" or "y'' - 4y' + 13y".
    #[arg(long)]
    op: Option<String>,
    /// Right-hand side, e.g. "2*x*e^(2x)*cos(3x)".
    #[arg(long)]
    rhs: Option<String>,
    /// Whole equation, e.g. "y'' + y = x*cos(1x)".
    #[arg(long, conflicts_with = "batch")]
    ode: Option<String>,
    #[arg(long, value_enum, default_value = "matrix")]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Print the basis, matrices and coordinate vectors.
    #[arg(long)]
    show_work: bool,
    /// Skip the floating-point spot check. The exact check always runs.
    #[arg(long)]
    no_verify: bool,
    /// Antidifferentiate the right-hand side.
    #[arg(long, conflicts_with = "op")]
    integrate: bool,
    /// File with one `op ; rhs` problem per line, or `-` for stdin.
    #[arg(long, value_name = "FILE")]
    batch: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut config = RunConfig {
        method: match args.method {
            MethodArg::Matrix => Method::MatrixMultiplicity,
            MethodArg::Adaptive => Method::MatrixAdaptive,
            MethodArg::Maclaurin => Method::Maclaurin,
        },
        format: match args.format {
            FormatArg::Text => Format::Text,
            FormatArg::Latex => Format::Latex,
            FormatArg::Json => Format::Json,
        },
        show_work: args.show_work,
        verify: !args.no_verify,
        integrate_mode: args.integrate,
        ..RunConfig::default()
    };
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());

    let code = if let Some(path) = args.batch {
        let text = if path == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        } else {
            std::fs::read_to_string(&path)
        };
        match text {
            Ok(text) => run_batch(&text, &config, &mut out, &mut err),
            Err(e) => {
                eprintln!("error: cannot read {path}: {e}");
                EXIT_PARSE
            }
        }
    } else {
        if let Some(ode) = args.ode {
            let Some((lhs, rhs)) = split_ode(&ode) else {
                eprintln!("error: --ode needs exactly one `=`");
                return ExitCode::from(EXIT_PARSE as u8);
            };
            config.operator_text = lhs;
            config.rhs_text = rhs;
        } else {
            let need_op = !config.integrate_mode && args.op.is_none();
            if need_op || args.rhs.is_none() {
                eprintln!("error: give --op and --rhs, --ode, --integrate --rhs, or --batch");
                return ExitCode::from(EXIT_PARSE as u8);
            }
            config.operator_text = args.op.unwrap_or_default();
            config.rhs_text = args.rhs.unwrap_or_default();
        }
        run(&config, &mut out, &mut err)
    };
    ExitCode::from(code as u8)
}
