use std::process::ExitCode;

use clap::Parser;

use artin_sigma_cli::{parse_field, parse_inline_character, parse_input, render_text, run_command, CliError, Command, RunOptions};

/// Sigma-invariant, living-subgraph and kernel-homology reports for Artin
/// groups given by labelled graphs.
#[derive(Parser, Debug)]
#[command(name = "artin-sigma", version)]
struct Args {
    /// JSON job file, or `-` for standard input.
    #[arg(long, conflicts_with = "inline")]
    input: Option<String>,
    /// Inline graph `a-b:3,b-c:4`, optionally followed by `;a=1,b=1,c=2`.
    #[arg(long)]
    inline: Option<String>,
    /// Character `a=1,b=-1,...` overriding the one in the input.
    #[arg(long)]
    character: Option<String>,
    /// classify | liv | sigma1 | sigma2 | homology | fibring | scan
    #[arg(long)]
    command: String,
    /// Comma-separated fields, e.g. `Q,F2,F3`.
    #[arg(long)]
    fields: Option<String>,
    /// Scan bound B; characters range over [-B, B].
    #[arg(long)]
    bound: Option<i64>,
    /// Pretty-printed JSON output (default)
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Flattened `path: value` lines
    #[arg(long)]
    text: bool,
    /// Treat the K(pi,1)-conjecture as known for the input graph.
    #[arg(long)]
    assume_kpi1: bool,
}

fn run(args: &Args) -> Result<String, CliError> {
    let text = match (&args.input, &args.inline) {
        (Some(path), _) if path == "-" => std::io::read_to_string(std::io::stdin())
            .map_err(|e| CliError::Precondition(format!("cannot read standard input: {e}")))?,
        (Some(path), _) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Precondition(format!("cannot read {path}: {e}")))?,
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(CliError::Precondition("give --input FILE or --inline SPEC".into())),
    };
    let mut spec = parse_input(&text)?;
    if let Some(c) = &args.character {
        spec.characters = vec![parse_inline_character(&spec.graph, c)?];
    }
    if let Some(f) = &args.fields {
        spec.fields = f.split(',').filter(|s| !s.trim().is_empty()).map(parse_field).collect::<Result<_, _>>()?;
    }
    let command = Command::parse(&args.command)?;
    let opts = RunOptions { assume_kpi1: args.assume_kpi1, bound: args.bound };
    let report = run_command(&spec, command, &opts)?;
    Ok(if args.json {
        serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
    } else {
        render_text(&report)
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
