//! Position history and repetition rulings.
//!
//! Record `i` of a [`History`] describes the position after `i` half-moves.
//! Its status classifies the move that produced it; the chase bit is filled
//! in once the reply is known (see [`History::advance`]). Judging a player
//! walks that player's own records backwards two plies at a time, ORs their
//! statuses and tracks the set of consistently chased victims until the
//! current position's hash recurs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::board::{Move, Position, Undo};
use crate::chase::{
    classify_reply, irreversible, provisional_status, ChasedSet, Status, ThreatCache,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HistoryRecord {
    pub hash: u64,
    /// Move that produced this position; `None` for the first record.
    pub mv: Option<Move>,
    pub status: Status,
    pub chased_set: ChasedSet,
}

/// Append-only ledger of positions; index 0 is the starting position.
#[derive(Debug, Clone, Default)]
pub struct History {
    records: Vec<HistoryRecord>,
}

impl History {
    pub fn new(root: &Position) -> History {
        History {
            records: vec![HistoryRecord {
                hash: root.hash(),
                mv: None,
                status: provisional_status(root),
                chased_set: ChasedSet::EMPTY,
            }],
        }
    }

    /// Builds a history directly from records. Intended for tests and
    /// tools that synthesise ledgers.
    pub fn from_records(records: Vec<HistoryRecord>) -> History {
        History { records }
    }

    pub fn records(&self) -> &[HistoryRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn last(&self) -> &HistoryRecord {
        self.records.last().expect("history has a root record")
    }

    /// Plays `mv` on `pos` and appends the resulting record.
    ///
    /// Captures and forward pawn moves append a `Cancel` record and never
    /// touch `threats`. Quiet moves settle the status of the current last
    /// record from the threat list of `pos` (computed on first use and kept
    /// in `threats`, so siblings at one node share it) and append a record
    /// with a provisional status.
    pub fn advance(&mut self, pos: &mut Position, mv: Move, threats: &mut ThreatCache) -> Undo {
        let mover = pos
            .piece_at(mv.from)
            .expect("move from an empty square")
            .kind;
        let last = self.records.len() - 1;
        if irreversible(mv, mover) {
            let prior = self.records[last].status;
            if prior != Status::CANCEL {
                self.records[last].status = if threats.prior_check(pos) {
                    Status::CHECK
                } else {
                    Status::IDLE
                };
            }
            self.records[last].chased_set = ChasedSet::EMPTY;
            let undo = pos.make_move(mv);
            self.records.push(HistoryRecord {
                hash: pos.hash(),
                mv: Some(mv),
                status: Status::CANCEL,
                chased_set: ChasedSet::EMPTY,
            });
            return undo;
        }
        let prior_check = threats.prior_check(pos);
        threats.ensure(pos);
        let undo = pos.make_move(mv);
        let (status, chased) = classify_reply(pos, prior_check, mv, threats.threats());
        if self.records[last].status != Status::CANCEL {
            self.records[last].status = status;
            self.records[last].chased_set = chased;
        }
        self.records.push(HistoryRecord {
            hash: pos.hash(),
            mv: Some(mv),
            status: provisional_status(pos),
            chased_set: ChasedSet::EMPTY,
        });
        undo
    }

    /// Convenience wrapper around [`History::advance`] with a fresh cache.
    pub fn play(&mut self, pos: &mut Position, mv: Move) -> Undo {
        self.advance(pos, mv, &mut ThreatCache::new())
    }

    /// Removes the last record. The caller unmakes the move on its position.
    pub fn pop(&mut self) {
        debug_assert!(self.records.len() > 1, "cannot pop the root record");
        self.records.pop();
    }
}

/// Severity of one player's repetition behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[repr(i8)]
pub enum ViolationLevel {
    Undecided = -1,
    PerpetualIdle = 0,
    PerpetualChase = 1,
    PerpetualCheck = 2,
}

impl fmt::Display for ViolationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationLevel::Undecided => "Undecided",
            ViolationLevel::PerpetualIdle => "PerpetualIdle",
            ViolationLevel::PerpetualChase => "PerpetualChase",
            ViolationLevel::PerpetualCheck => "PerpetualCheck",
        })
    }
}

/// Outcome relative to the side to move at the judged position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameResult {
    Undecided,
    Win,
    Loss,
    Draw,
}

impl GameResult {
    /// The same outcome seen by the other player.
    pub fn flipped(self) -> GameResult {
        match self {
            GameResult::Win => GameResult::Loss,
            GameResult::Loss => GameResult::Win,
            other => other,
        }
    }
}

impl fmt::Display for GameResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameResult::Undecided => "undecided",
            GameResult::Win => "win",
            GameResult::Loss => "loss",
            GameResult::Draw => "draw",
        })
    }
}

/// How a chase that keeps hitting several victims at once is classified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MultiVictimPolicy {
    /// Any non-empty intersection of chased sets is a perpetual chase.
    #[default]
    AnyCommonVictim,
    /// Only a single persistent victim is a perpetual chase; two or more
    /// persistent victims are an idle repetition.
    SingleVictimOnly,
}

impl MultiVictimPolicy {
    fn persists(self, set: ChasedSet) -> bool {
        match self {
            MultiVictimPolicy::AnyCommonVictim => !set.is_empty(),
            MultiVictimPolicy::SingleVictimOnly => set.len() == 1,
        }
    }
}

/// Level plus the state the scan ended in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlayerJudgement {
    pub level: ViolationLevel,
    /// OR of the scanned statuses (after any chase demotion).
    pub status: Status,
    /// Victims chased throughout the window, at their latest squares.
    pub chased: ChasedSet,
}

impl PlayerJudgement {
    const UNDECIDED: PlayerJudgement = PlayerJudgement {
        level: ViolationLevel::Undecided,
        status: Status::NONE,
        chased: ChasedSet::EMPTY,
    };
}

/// Judging rules. The free functions in this module use the default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct JudgeRules {
    pub multi_victim: MultiVictimPolicy,
}

impl JudgeRules {
    /// Judges the player who moved into `h[index]`.
    pub fn judge_player_detail(&self, h: &History, index: isize, ntimes: u32) -> PlayerJudgement {
        let records = h.records();
        if index < 0 || index as usize >= records.len() {
            return PlayerJudgement::UNDECIDED;
        }
        let current = &records[index as usize];
        if current.status == Status::CANCEL {
            return PlayerJudgement::UNDECIDED;
        }
        let mut remaining = ntimes.max(1);
        let mut status = Status::NONE;
        let mut repeating = false;
        let mut initialized = false;
        let mut chased = ChasedSet::EMPTY;
        let mut j = index - 2;
        while j >= 0 {
            let rec = &records[j as usize];
            let next = &records[j as usize + 1];
            if rec.status == Status::CANCEL || next.status == Status::CANCEL {
                break;
            }
            status |= rec.status;
            if status == Status::CHASE {
                if !initialized {
                    initialized = true;
                    chased = rec.chased_set;
                } else {
                    if let Some(mv) = next.mv {
                        chased = update_subset(chased, mv);
                    }
                    chased = chased.intersection(rec.chased_set);
                }
                if !self.multi_victim.persists(chased) {
                    status = Status::IDLE;
                }
            }
            if rec.hash == current.hash {
                remaining -= 1;
                if remaining == 0 {
                    repeating = true;
                    break;
                }
            }
            j -= 2;
        }
        let level = if !repeating {
            ViolationLevel::Undecided
        } else if status == Status::CHECK {
            ViolationLevel::PerpetualCheck
        } else if status == Status::CHASE {
            ViolationLevel::PerpetualChase
        } else {
            ViolationLevel::PerpetualIdle
        };
        if !repeating {
            return PlayerJudgement::UNDECIDED;
        }
        if level != ViolationLevel::PerpetualChase {
            chased = ChasedSet::EMPTY;
        }
        PlayerJudgement {
            level,
            status,
            chased,
        }
    }

    pub fn judge_player(&self, h: &History, index: isize, ntimes: u32) -> ViolationLevel {
        self.judge_player_detail(h, index, ntimes).level
    }

    /// Ruling for the side to move at the last record.
    pub fn judge_ntimes(&self, h: &History, ntimes: u32) -> GameResult {
        let last = h.len() as isize - 1;
        let opponent = self.judge_player(h, last, ntimes);
        if opponent == ViolationLevel::Undecided {
            return GameResult::Undecided;
        }
        let ours = self.judge_player(h, last - 1, ntimes);
        compare_levels(ours, opponent)
    }

    /// Search-time ruling. When our own repetition is idle and a draw is
    /// already enough to fail high, only checks that the opponent repeats.
    pub fn judge_prune(&self, h: &History, draw_score: i32, beta: i32, ntimes: u32) -> GameResult {
        let last = h.len() as isize - 1;
        let ours = self.judge_player(h, last - 1, ntimes);
        if ours == ViolationLevel::Undecided {
            return GameResult::Undecided;
        }
        if ours == ViolationLevel::PerpetualIdle && draw_score >= beta {
            return if is_repetition_n(h, last, ntimes) {
                GameResult::Draw
            } else {
                GameResult::Undecided
            };
        }
        let opponent = self.judge_player(h, last, ntimes);
        compare_levels(ours, opponent)
    }
}

/// Alg-8 style comparison: equal levels draw, the greater violation loses.
pub fn compare_levels(ours: ViolationLevel, opponent: ViolationLevel) -> GameResult {
    if ours == ViolationLevel::Undecided || opponent == ViolationLevel::Undecided {
        GameResult::Undecided
    } else if ours == opponent {
        GameResult::Draw
    } else if ours > opponent {
        GameResult::Loss
    } else {
        GameResult::Win
    }
}

/// Follows a victim that moved: if `intervening.from` is in the set it is
/// replaced by `intervening.to`.
pub fn update_subset(set: ChasedSet, intervening: Move) -> ChasedSet {
    let mut out = set;
    if out.contains(intervening.from) {
        out.remove(intervening.from);
        out.insert(intervening.to);
    }
    out
}

pub fn judge_player(h: &History, index: isize, ntimes: u32) -> ViolationLevel {
    JudgeRules::default().judge_player(h, index, ntimes)
}

pub fn judge_ntimes(h: &History, ntimes: u32) -> GameResult {
    JudgeRules::default().judge_ntimes(h, ntimes)
}

pub fn judge_prune(h: &History, draw_score: i32, beta: i32, ntimes: u32) -> GameResult {
    JudgeRules::default().judge_prune(h, draw_score, beta, ntimes)
}

/// True if `h[index]`'s hash occurred at an earlier position with the same
/// side to move and no irreversible move in between.
pub fn is_repetition(h: &History, index: isize) -> bool {
    is_repetition_n(h, index, 1)
}

/// Like [`is_repetition`], requiring `ntimes` earlier occurrences (at least one).
pub fn is_repetition_n(h: &History, index: isize, ntimes: u32) -> bool {
    let records = h.records();
    if index < 0 || index as usize >= records.len() {
        return false;
    }
    let current = &records[index as usize];
    if current.status == Status::CANCEL {
        return false;
    }
    let mut remaining = ntimes.max(1);
    let mut j = index - 2;
    while j >= 0 {
        let rec = &records[j as usize];
        if rec.status == Status::CANCEL || records[j as usize + 1].status == Status::CANCEL {
            return false;
        }
        if rec.hash == current.hash {
            remaining -= 1;
            if remaining == 0 {
                return true;
            }
        }
        j -= 2;
    }
    false
}
