//! Line protocol: `position`, `go`, `stop`, `quit`, plus `uci`/`isready`.

use std::io::{BufRead, Write};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex};
use std::thread::JoinHandle;
use std::time::Duration;

use xq_core::arbiter::{replay, Replay};
use xq_core::search::{SearchLimits, SearchOptions, Searcher};
use xq_core::Position;

const DEFAULT_DEPTH: u32 = 6;
const MAX_DEPTH: u32 = 64;

type Output<W> = Arc<Mutex<W>>;

fn emit<W: Write>(out: &Output<W>, line: &str) {
    let mut w = out.lock().unwrap();
    let _ = writeln!(w, "{line}");
    let _ = w.flush();
}

struct Running {
    stop: Arc<AtomicBool>,
    handle: JoinHandle<()>,
}

pub struct Engine<W: Write + Send + 'static> {
    out: Output<W>,
    game: Replay,
    running: Option<Running>,
}

impl<W: Write + Send + 'static> Engine<W> {
    pub fn new(out: W) -> Self {
        Engine {
            out: Arc::new(Mutex::new(out)),
            game: replay::<&str>("startpos", &[]).expect("start position"),
            running: None,
        }
    }

    /// Handles one line. Returns false on `quit`.
    pub fn handle(&mut self, line: &str) -> bool {
        let mut words = line.split_whitespace();
        let Some(cmd) = words.next() else {
            return true;
        };
        let args: Vec<&str> = words.collect();
        match cmd {
            "uci" => {
                emit(&self.out, "id name xq");
                emit(&self.out, "uciok");
            }
            "isready" => {
                self.join();
                emit(&self.out, "readyok");
            }
            "ucinewgame" => {
                self.stop();
                self.game = replay::<&str>("startpos", &[]).expect("start position");
            }
            "position" => {
                self.stop();
                self.position(&args);
            }
            "go" => {
                self.join();
                self.go(&args);
            }
            "stop" => self.stop(),
            "quit" => {
                self.stop();
                return false;
            }
            _ => emit(&self.out, "error: unknown command"),
        }
        true
    }

    /// Waits for a running search to finish on its own.
    pub fn join(&mut self) {
        if let Some(r) = self.running.take() {
            let _ = r.handle.join();
        }
    }

    fn stop(&mut self) {
        if let Some(r) = &self.running {
            r.stop.store(true, Ordering::Relaxed);
        }
        self.join();
    }

    fn position(&mut self, args: &[&str]) {
        let split = args
            .iter()
            .position(|&a| a == "moves")
            .unwrap_or(args.len());
        let (head, moves) = (&args[..split], args.get(split + 1..).unwrap_or(&[]));
        let fen = match head {
            ["startpos"] => "startpos".to_string(),
            ["fen", rest @ ..] if !rest.is_empty() => rest.join(" "),
            _ => {
                emit(
                    &self.out,
                    "error: expected 'position startpos|fen <fen> [moves ...]'",
                );
                return;
            }
        };
        match replay(&fen, moves) {
            Ok(game) => self.game = game,
            Err(e) => emit(&self.out, &format!("error: {e}")),
        }
    }

    fn go(&mut self, args: &[&str]) {
        let mut limits = SearchLimits::default();
        let mut it = args.iter();
        while let Some(&key) = it.next() {
            let value = it.next().and_then(|v| v.parse::<u64>().ok());
            match (key, value) {
                ("depth", Some(d)) => limits.depth = (d as u32).clamp(1, MAX_DEPTH),
                ("movetime", Some(ms)) => limits.movetime = Some(Duration::from_millis(ms)),
                ("nodes", Some(n)) => limits.nodes = Some(n),
                _ => {
                    emit(&self.out, "error: expected 'go depth N | movetime T'");
                    return;
                }
            }
        }
        if limits.depth == 0 {
            limits.depth = if limits.movetime.is_some() || limits.nodes.is_some() {
                MAX_DEPTH
            } else {
                DEFAULT_DEPTH
            };
        }
        let stop = Arc::new(AtomicBool::new(false));
        limits.stop = Some(stop.clone());

        let pos: Position = self.game.position.clone();
        let history = self.game.history.clone();
        let out = self.out.clone();
        let handle = std::thread::spawn(move || {
            let mut legal = pos.clone();
            if legal.generate_moves().is_empty() {
                emit(&out, "bestmove (none)");
                return;
            }
            let mut searcher = Searcher::new(pos, history, SearchOptions::default());
            let result = searcher.iterate(limits, |info| emit(&out, &info.line()));
            match result.best_move {
                Some(m) => emit(&out, &format!("bestmove {m}")),
                None => emit(&out, "bestmove (none)"),
            }
        });
        self.running = Some(Running { stop, handle });
    }
}

/// Runs the protocol until `quit` or end of input. A search still running
/// at end of input is allowed to finish.
pub fn run<R: BufRead, W: Write + Send + 'static>(input: R, output: W) {
    let mut engine = Engine::new(output);
    for line in input.lines() {
        let Ok(line) = line else { break };
        if !engine.handle(&line) {
            return;
        }
    }
    engine.join();
}
