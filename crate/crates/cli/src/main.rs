use std::process::ExitCode;

use clap::Parser;
use zhangtwist::twist::Window;
use zhangtwist_cli::parse::parse_document;
use zhangtwist_cli::run::{run, Command, Overrides, Session};

/// Exact Zhang twists, Koszul duals, Manin bialgebras and cocycle twists.
///
/// Commands: hilbert, twist, koszul, bullet, endr, verify-twist, verify-dual,
/// verify-bullet, verify-cocycle, verify-theorem, emit-envelope K, verify-all.
#[derive(Parser, Debug)]
#[command(name = "zhangtwist", version)]
struct Args {
    command: String,
    /// `<file>`, or `<K> <file>` for emit-envelope
    #[arg(num_args = 1..=2, required = true)]
    operands: Vec<String>,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    window: Option<Vec<i64>>,
    #[arg(long)]
    seed: Option<u64>,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
    /// Algebra to use when the document declares several
    #[arg(long)]
    algebra: Option<String>,
    /// Twist to use when the algebra carries several
    #[arg(long)]
    twist: Option<String>,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (level, file) = match (args.command.as_str(), args.operands.as_slice()) {
        ("emit-envelope", [k, file]) => match k.parse::<usize>() {
            Ok(k) => (Some(k), file),
            Err(_) => {
                return usage(format!(
                    "emit-envelope level must be a non-negative integer, found `{k}`"
                ))
            }
        },
        ("emit-envelope", _) => return usage("usage: zhangtwist emit-envelope <K> <file>"),
        (_, [file]) => (None, file),
        _ => return usage(format!("`{}` takes exactly one file", args.command)),
    };
    let Some(cmd) = Command::parse(&args.command, level) else {
        return usage(format!("unknown command `{}`", args.command));
    };
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return usage(format!("{file}: {e}")),
    };
    let doc = match parse_document(&text) {
        Ok(d) => d,
        Err(e) => return usage(format!("{file}: {e}")),
    };
    let window = match args.window.as_deref() {
        Some(&[lo, hi]) if lo <= hi => Some(Window::new(lo, hi)),
        Some(_) => return usage("--window needs LO <= HI"),
        None => None,
    };
    let ov = Overrides {
        cap: args.cap,
        window,
        seed: args.seed,
        algebra: args.algebra,
        twist: args.twist,
    };
    let session = match Session::resolve(&doc, cmd, &ov) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let outcome = run(&session, cmd);
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&outcome).expect("report serializes")
        );
    } else {
        print!("{}", outcome.text());
    }
    ExitCode::from(outcome.exit_code() as u8)
}
