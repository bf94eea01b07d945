//! Parses a curve document and runs every report on it, as the command line
//! tool does.
//!
//! ```text
//! cargo run --example document_report -- examples/data/two_nodes.curve
//! ```

use admcover::cli::{parse, run, serialize, Command, Flags};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/weierstrass_join.curve").to_string());
    let text = std::fs::read_to_string(&path).unwrap();
    let doc = match parse(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{path}: {e}");
            std::process::exit(1);
        }
    };
    print!("canonical form:\n{}", serialize(&doc));
    let flags = Flags {
        all_cases: true,
        ..Flags::default()
    };
    for cmd in [Command::Validate, Command::Genus, Command::Classify, Command::Gonality] {
        let r = run(cmd, &doc, &flags);
        print!("--- {cmd:?} (exit {})\n{}", r.code, r.text);
    }
}
