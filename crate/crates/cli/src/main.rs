use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use xq_core::arbiter::{judge_game, parse_position};
use xq_core::board::{perft, perft_divide};
use xq_core::corpus::{load_corpus, run_corpus};

mod engine;

#[derive(Parser)]
#[command(name = "xq", version, about = "Xiangqi repetition arbiter and engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rule on a move sequence played from a position.
    Judge {
        #[arg(long, default_value = "startpos")]
        fen: String,
        /// Recurrences of the same position needed for a ruling.
        #[arg(long, default_value_t = 2)]
        ntimes: u32,
        #[arg(long)]
        json: bool,
        /// Coordinate (h2e2) or WXF (C2=5) moves.
        moves: Vec<String>,
    },
    /// Replay a corpus file and compare every ruling.
    Corpus {
        path: PathBuf,
        /// Also write the report as JSON.
        #[arg(long)]
        json_report: Option<PathBuf>,
    },
    /// Count leaf nodes of the legal move tree.
    Perft {
        #[arg(long, default_value = "startpos")]
        fen: String,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long)]
        divide: bool,
    },
    /// Speak the engine line protocol on stdin/stdout.
    Engine,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Judge {
            fen,
            ntimes,
            json,
            moves,
        } => cmd_judge(&fen, &moves, ntimes, json),
        Command::Corpus { path, json_report } => cmd_corpus(&path, json_report.as_deref()),
        Command::Perft { fen, depth, divide } => cmd_perft(&fen, depth, divide),
        Command::Engine => {
            engine::run(std::io::stdin().lock(), std::io::stdout());
            ExitCode::SUCCESS
        }
    }
}

fn cmd_judge(fen: &str, moves: &[String], ntimes: u32, json: bool) -> ExitCode {
    let ruling = match judge_game(fen, moves, ntimes) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_parse_error() { 2 } else { 3 });
        }
    };
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&ruling).expect("ruling serializes")
        );
    } else {
        let ours = ruling.judged_side;
        println!("{}", ruling.summary());
        println!(
            "{ours}: {} chased [{}]",
            ruling.violation_ours,
            ruling.chased_by_ours.join(" ")
        );
        println!(
            "{}: {} chased [{}]",
            !ours,
            ruling.violation_opponent,
            ruling.chased_by_opponent.join(" ")
        );
    }
    ExitCode::SUCCESS
}

fn cmd_corpus(path: &std::path::Path, json_report: Option<&std::path::Path>) -> ExitCode {
    let cases = match load_corpus(path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = run_corpus(&cases);
    print!("{}", report.render());
    if let Some(out) = json_report {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        if let Err(e) = std::fs::write(out, text) {
            eprintln!("error: {}: {e}", out.display());
            return ExitCode::from(2);
        }
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn cmd_perft(fen: &str, depth: u32, divide: bool) -> ExitCode {
    let mut pos = match parse_position(fen) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: fen: {e}");
            return ExitCode::from(2);
        }
    };
    if divide && depth > 0 {
        let split = perft_divide(&mut pos, depth);
        let mut total = 0;
        for (m, n) in &split {
            println!("{m}: {n}");
            total += n;
        }
        println!("total: {total}");
    } else {
        for d in 0..=depth {
            println!("depth {d}: {}", perft(&mut pos, d));
        }
    }
    ExitCode::SUCCESS
}
