//! Drives the command-line front end in process: a stats report, then the
//! top-level keys of the JSON report.

use clap::Parser;
use lpcad::cli::{run_text, Args};

fn main() {
    let run = |problem: &str, argv: &[&str]| {
        let args = Args::parse_from(["lpcad", "-"].iter().chain(argv));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_text(&args, problem, &mut out, &mut err);
        eprint!("{}", String::from_utf8_lossy(&err));
        (code, String::from_utf8(out).unwrap())
    };
    let (code, stats) = run(include_str!("../problems/quartic.cad"), &["--emit", "stats", "--check", "2000"]);
    print!("{}", stats);
    println!("exit code {}", code);

    let (_, json) = run(include_str!("../problems/ellipse_lobes.cad"), &["--emit", "json", "--method", "cad-mc"]);
    let report: serde_json::Value = serde_json::from_str(&json).unwrap();
    for (key, value) in report.as_object().unwrap() {
        if key != "formula" {
            println!("{}: {}", key, value);
        }
    }
}
