//! Rulings on finished move sequences.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::board::{Color, FenError, Move, Position, Square};
use crate::chase::ThreatCache;
use crate::judge::{compare_levels, GameResult, History, JudgeRules, ViolationLevel};
use crate::notation::{parse_move, NotationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArbiterError {
    #[error("fen: {0}")]
    Fen(#[from] FenError),
    #[error("move {index}: {error}")]
    Move { index: usize, error: NotationError },
}

impl ArbiterError {
    /// True for malformed input text, false for well-formed but illegal moves.
    pub fn is_parse_error(&self) -> bool {
        match self {
            ArbiterError::Fen(_) => true,
            ArbiterError::Move { error, .. } => error.is_syntax(),
        }
    }
}

/// Parses a FEN, accepting `startpos` for the initial position.
pub fn parse_position(fen: &str) -> Result<Position, FenError> {
    if fen.trim() == "startpos" {
        Ok(Position::startpos())
    } else {
        Position::from_fen(fen)
    }
}

/// A replayed game: final position, its history and the moves played.
#[derive(Debug, Clone)]
pub struct Replay {
    pub position: Position,
    pub history: History,
    pub moves: Vec<Move>,
}

/// Replays `moves` from `fen`, classifying every move as the engine does.
pub fn replay<S: AsRef<str>>(fen: &str, moves: &[S]) -> Result<Replay, ArbiterError> {
    let mut position = parse_position(fen)?;
    let mut history = History::new(&position);
    let mut played = Vec::with_capacity(moves.len());
    for (index, text) in moves.iter().enumerate() {
        let m = parse_move(&mut position, text.as_ref())
            .map_err(|error| ArbiterError::Move { index, error })?;
        history.advance(&mut position, m, &mut ThreatCache::new());
        played.push(m);
    }
    Ok(Replay {
        position,
        history,
        moves: played,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ruling {
    /// Outcome for `judged_side`, the side to move after the last move.
    pub result: GameResult,
    pub judged_side: Color,
    pub violation_ours: ViolationLevel,
    pub violation_opponent: ViolationLevel,
    pub repetition_found: bool,
    pub chased_by_ours: Vec<String>,
    pub chased_by_opponent: Vec<String>,
    pub final_fen: String,
}

impl Ruling {
    pub fn result_for(&self, color: Color) -> GameResult {
        if color == self.judged_side {
            self.result
        } else {
            self.result.flipped()
        }
    }

    /// `LOSS for red (PerpetualChase vs PerpetualIdle)`, `DRAW (...)` or
    /// `UNDECIDED`. The loser's level is listed first.
    pub fn summary(&self) -> String {
        let ours = self.violation_ours;
        let theirs = self.violation_opponent;
        match self.result {
            GameResult::Undecided => "UNDECIDED".to_string(),
            GameResult::Draw => format!("DRAW ({ours} vs {theirs})"),
            GameResult::Loss => format!("LOSS for {} ({ours} vs {theirs})", self.judged_side),
            GameResult::Win => format!("LOSS for {} ({theirs} vs {ours})", !self.judged_side),
        }
    }
}

impl fmt::Display for Ruling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

fn squares(set: crate::board::SquareSet) -> Vec<String> {
    set.iter().map(|s: Square| s.to_string()).collect()
}

/// Judges the final position of a replay.
pub fn rule(replay: &Replay, ntimes: u32, rules: JudgeRules) -> Ruling {
    let h = &replay.history;
    let last = h.len() as isize - 1;
    let opponent = rules.judge_player_detail(h, last, ntimes);
    let ours = rules.judge_player_detail(h, last - 1, ntimes);
    let result = compare_levels(ours.level, opponent.level);
    debug_assert_eq!(result, rules.judge_ntimes(h, ntimes));
    Ruling {
        result,
        judged_side: replay.position.side_to_move(),
        violation_ours: ours.level,
        violation_opponent: opponent.level,
        repetition_found: result != GameResult::Undecided,
        chased_by_ours: squares(ours.chased),
        chased_by_opponent: squares(opponent.chased),
        final_fen: replay.position.to_fen(),
    }
}

/// Replays and judges in one step with the default rules.
pub fn judge_game<S: AsRef<str>>(
    fen: &str,
    moves: &[S],
    ntimes: u32,
) -> Result<Ruling, ArbiterError> {
    let r = replay(fen, moves)?;
    Ok(rule(&r, ntimes, JudgeRules::default()))
}
