use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use asymspace_cli::space::parse_vector;
use asymspace_cli::{dd_budget_from_env, run_batch, CliError, Command, Format, Options};
use clap::Parser;

/// Exact computations on finite-dimensional asymmetric normed spaces.
#[derive(Parser, Debug)]
#[command(name = "asymspace", version)]
struct Args {
    command: Command,
    /// space files (JSON) or builtin:NAME[:SIZE]
    #[arg(required = true)]
    files: Vec<String>,
    /// exit with 3 when a report leaves a flag unknown
    #[arg(long)]
    strict: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// comma separated rationals, e.g. 7,-2 or 1/2,3
    #[arg(short = 'x', allow_hyphen_values = true)]
    x: Option<String>,
    /// a subspace block name or a basis such as "1,0;0,1"
    #[arg(long, allow_hyphen_values = true)]
    subspace: Option<String>,
    /// where `render` writes its SVG
    #[arg(long)]
    out: Option<PathBuf>,
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("asymspace: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let x = match args.x.as_deref().map(parse_vector).transpose() {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    let dd_budget = match dd_budget_from_env() {
        Ok(b) => b,
        Err(e) => return fail(&e),
    };
    if args.out.is_some() && args.files.len() > 1 {
        return fail(&CliError::Usage("--out takes a single input".into()));
    }
    let opts = Options { format: args.format, strict: args.strict, x, subspace: args.subspace, out: args.out, dd_budget };

    let results = run_batch(args.command, &args.files, &opts);
    let many = args.files.len() > 1;
    let mut code = 0;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for (file, result) in args.files.iter().zip(results) {
        match result {
            Ok(outcome) => {
                if many && opts.format == Format::Text {
                    let _ = writeln!(out, "== {file}");
                }
                let _ = out.write_all(outcome.output.as_bytes());
                let c = outcome.exit_code(opts.strict);
                if code == 0 {
                    code = c;
                }
            }
            Err(e) => {
                eprintln!("asymspace: {file}: {e}");
                // errors outrank an unknown-dominated report
                if code == 0 || code == 3 || e.exit_code() > code {
                    code = e.exit_code();
                }
            }
        }
    }
    ExitCode::from(code as u8)
}
