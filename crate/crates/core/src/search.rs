//! Alpha-beta search with repetition rulings at interior nodes.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::board::{Color, Move, PieceKind, Position};
use crate::chase::ThreatCache;
use crate::judge::{GameResult, History, JudgeRules};

pub const MATE: i32 = 20_000;
const INF: i32 = 30_000;

/// Scores beyond this magnitude are mate (or repetition-loss) scores.
pub const MATE_BOUND: i32 = MATE - 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Compute a node's threat list only when its first quiet move is
    /// searched, instead of on entry.
    pub lazy_threats: bool,
    /// Apply repetition rulings inside the tree.
    pub judge: bool,
    pub ntimes: u32,
    pub rules: JudgeRules,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            lazy_threats: true,
            judge: true,
            ntimes: 1,
            rules: JudgeRules::default(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchLimits {
    pub depth: u32,
    pub nodes: Option<u64>,
    pub movetime: Option<Duration>,
    pub stop: Option<Arc<AtomicBool>>,
}

impl SearchLimits {
    pub fn depth(depth: u32) -> Self {
        SearchLimits {
            depth,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    /// Interior nodes whose threat list was generated.
    pub threat_lists_computed: u64,
    /// Interior nodes that finished without generating one.
    pub threat_lists_skipped: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchInfo {
    pub depth: u32,
    pub score: i32,
    pub nodes: u64,
    pub time: Duration,
    pub pv: Vec<Move>,
}

impl SearchInfo {
    pub fn line(&self) -> String {
        let pv: Vec<String> = self.pv.iter().map(|m| m.to_string()).collect();
        format!(
            "info depth {} score {} nodes {} time {} pv {}",
            self.depth,
            self.score,
            self.nodes,
            self.time.as_millis(),
            pv.join(" ")
        )
        .trim_end()
        .to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub best_move: Option<Move>,
    /// Score from the side to move's point of view.
    pub score: i32,
    /// Deepest completed iteration.
    pub depth: u32,
    pub pv: Vec<Move>,
    pub stats: SearchStats,
}

fn piece_value(kind: PieceKind) -> i32 {
    match kind {
        PieceKind::Rook => 900,
        PieceKind::Cannon => 450,
        PieceKind::Knight => 400,
        PieceKind::Advisor | PieceKind::Elephant => 200,
        PieceKind::Pawn => 100,
        PieceKind::King => 0,
    }
}

/// Static evaluation from the side to move's point of view.
///
/// Material plus a small bonus for mobile pieces near the centre files.
/// Color-symmetric: the color mirror of a position evaluates to the
/// negated score.
pub fn evaluate(pos: &Position) -> i32 {
    let mut score = 0;
    for (sq, p) in pos.pieces() {
        let mut v = piece_value(p.kind);
        if p.kind == PieceKind::Pawn && !sq.on_own_side(p.color) {
            v += 100;
        }
        if matches!(
            p.kind,
            PieceKind::Rook | PieceKind::Knight | PieceKind::Cannon
        ) {
            v += 4 * (4 - (sq.file() as i32 - 4).abs());
        }
        score += if p.color == Color::Red { v } else { -v };
    }
    if pos.side_to_move() == Color::Red {
        score
    } else {
        -score
    }
}

fn mvv_lva(pos: &Position, m: Move) -> i32 {
    match m.captured {
        Some(v) => {
            let attacker = pos.piece_at(m.from).map_or(0, |p| piece_value(p.kind));
            10_000 + 10 * piece_value(v) - attacker / 10
        }
        None => 0,
    }
}

/// Captures by MVV-LVA, then quiet moves in their given order. `first`,
/// if present, goes to the front.
pub fn order_moves(pos: &Position, moves: &mut [Move], first: Option<Move>) {
    moves.sort_by_key(|&m| {
        if Some(m) == first {
            i32::MIN
        } else {
            -mvv_lva(pos, m)
        }
    });
}

/// Score for a repetition ruling at `ply`, from the side to move.
fn ruling_score(result: GameResult, ply: u32) -> Option<i32> {
    match result {
        GameResult::Undecided => None,
        GameResult::Draw => Some(0),
        GameResult::Win => Some(MATE - ply as i32),
        GameResult::Loss => Some(-(MATE - ply as i32)),
    }
}

/// Searches one position. The history must end at `pos`.
pub struct Searcher {
    pos: Position,
    history: History,
    options: SearchOptions,
    stats: SearchStats,
    limits: SearchLimits,
    started: Instant,
    aborted: bool,
}

impl Searcher {
    pub fn new(pos: Position, history: History, options: SearchOptions) -> Searcher {
        debug_assert_eq!(history.last().hash, pos.hash());
        Searcher {
            pos,
            history,
            options,
            stats: SearchStats::default(),
            limits: SearchLimits::default(),
            started: Instant::now(),
            aborted: false,
        }
    }

    /// Starts from `pos` with a fresh one-record history.
    pub fn from_position(pos: Position, options: SearchOptions) -> Searcher {
        let history = History::new(&pos);
        Searcher::new(pos, history, options)
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    /// Fixed-depth search with no limits and no iterative deepening.
    pub fn search_depth(&mut self, depth: u32) -> SearchResult {
        self.limits = SearchLimits::depth(depth);
        self.stats = SearchStats::default();
        self.started = Instant::now();
        self.aborted = false;
        let mut pv = Vec::new();
        let score = self.negamax(depth, -INF, INF, 0, &mut pv, None);
        SearchResult {
            best_move: pv.first().copied(),
            score,
            depth,
            pv,
            stats: self.stats,
        }
    }

    /// Iterative deepening up to `limits.depth`, reporting each completed
    /// iteration to `info`.
    pub fn iterate(
        &mut self,
        limits: SearchLimits,
        mut info: impl FnMut(&SearchInfo),
    ) -> SearchResult {
        self.limits = limits;
        self.stats = SearchStats::default();
        self.started = Instant::now();
        self.aborted = false;
        let max_depth = self.limits.depth.max(1);
        let mut best = SearchResult {
            best_move: None,
            score: 0,
            depth: 0,
            pv: Vec::new(),
            stats: self.stats,
        };
        for depth in 1..=max_depth {
            let mut pv = Vec::new();
            let hint = best.pv.first().copied();
            let score = self.negamax(depth, -INF, INF, 0, &mut pv, hint);
            if self.aborted {
                break;
            }
            best = SearchResult {
                best_move: pv.first().copied(),
                score,
                depth,
                pv: pv.clone(),
                stats: self.stats,
            };
            info(&SearchInfo {
                depth,
                score,
                nodes: self.stats.nodes,
                time: self.started.elapsed(),
                pv,
            });
            if best.best_move.is_none() || score.abs() >= MATE_BOUND {
                break;
            }
        }
        if best.best_move.is_none() {
            // Stopped before the first iteration finished: any legal move.
            best.best_move = self.pos.generate_moves().first().copied();
        }
        best.stats = self.stats;
        best
    }

    fn should_stop(&mut self) -> bool {
        if self.aborted {
            return true;
        }
        if self.stats.nodes & 1023 == 0 {
            let by_flag = self
                .limits
                .stop
                .as_ref()
                .is_some_and(|s| s.load(Ordering::Relaxed));
            let by_time = self
                .limits
                .movetime
                .is_some_and(|t| self.started.elapsed() >= t);
            let by_nodes = self.limits.nodes.is_some_and(|n| self.stats.nodes >= n);
            self.aborted = by_flag || by_time || by_nodes;
        }
        self.aborted
    }

    fn negamax(
        &mut self,
        depth: u32,
        mut alpha: i32,
        beta: i32,
        ply: u32,
        pv: &mut Vec<Move>,
        hint: Option<Move>,
    ) -> i32 {
        self.stats.nodes += 1;
        pv.clear();
        if ply > 0 && self.should_stop() {
            return 0;
        }
        if ply > 0 && self.options.judge {
            let result =
                self.options
                    .rules
                    .judge_prune(&self.history, 0, beta, self.options.ntimes);
            if let Some(score) = ruling_score(result, ply) {
                return score;
            }
        }
        if depth == 0 {
            return evaluate(&self.pos);
        }
        let mut moves = self.pos.generate_moves();
        if moves.is_empty() {
            return -(MATE - ply as i32);
        }
        order_moves(&self.pos, &mut moves, hint);
        let mut threats = ThreatCache::new();
        if self.options.judge && !self.options.lazy_threats {
            threats.ensure(&mut self.pos);
        }
        let mut best = -INF;
        let mut child_pv = Vec::new();
        for m in moves {
            let undo = self.history.advance(&mut self.pos, m, &mut threats);
            let score = -self.negamax(depth - 1, -beta, -alpha, ply + 1, &mut child_pv, None);
            self.history.pop();
            self.pos.unmake_move(undo);
            if self.aborted {
                break;
            }
            if score > best {
                best = score;
                if score > alpha {
                    alpha = score;
                    pv.clear();
                    pv.push(m);
                    pv.extend_from_slice(&child_pv);
                }
            }
            if alpha >= beta {
                break;
            }
        }
        if threats.is_computed() {
            self.stats.threat_lists_computed += 1;
        } else {
            self.stats.threat_lists_skipped += 1;
        }
        best
    }
}

/// Searches `pos` (with no prior history) to a fixed depth.
pub fn search(pos: &Position, depth: u32, options: SearchOptions) -> SearchResult {
    Searcher::from_position(pos.clone(), options).search_depth(depth)
}
