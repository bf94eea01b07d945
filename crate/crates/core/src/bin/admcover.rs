use std::io::Read;

use clap::Parser;

use admcover::cli::{run_text, Args, EXIT_USAGE};

fn main() {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let text = match args.input.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
        Some(path) => std::fs::read_to_string(path),
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read input: {e}");
            std::process::exit(EXIT_USAGE);
        }
    };
    let report = run_text(args.command, &text, &args.flags());
    if report.code == EXIT_USAGE {
        eprint!("{}", report.text);
    } else {
        print!("{}", report.text);
    }
    std::process::exit(report.code);
}
