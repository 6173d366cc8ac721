//! Shared helpers: an independent array-board move generator used as an
//! oracle, and seeded random positions.
#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use xq_core::chase::Status;
use xq_core::judge::{History, HistoryRecord, ViolationLevel};
use xq_core::{Color, Move, Position, SquareSet};

/// `(red, letter)` with lowercase letters, or empty.
pub type Cell = Option<(bool, char)>;

/// Naive board indexed `[rank][file]`, rank 0 at the red side.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Naive {
    pub cells: [[Cell; 9]; 10],
    pub red_to_move: bool,
}

pub type NaiveMove = ((usize, usize), (usize, usize));

pub fn move_text(m: NaiveMove) -> String {
    let ((r0, f0), (r1, f1)) = m;
    format!(
        "{}{}{}{}",
        (b'a' + f0 as u8) as char,
        r0,
        (b'a' + f1 as u8) as char,
        r1
    )
}

impl Naive {
    pub fn from_fen(fen: &str) -> Naive {
        let mut fields = fen.split_whitespace();
        let board = fields.next().unwrap();
        let mut cells = [[None; 9]; 10];
        for (i, row) in board.split('/').enumerate() {
            let rank = 9 - i;
            let mut file = 0;
            for c in row.chars() {
                if let Some(d) = c.to_digit(10) {
                    file += d as usize;
                } else {
                    let letter = match c.to_ascii_lowercase() {
                        'h' => 'n',
                        'e' => 'b',
                        l => l,
                    };
                    cells[rank][file] = Some((c.is_ascii_uppercase(), letter));
                    file += 1;
                }
            }
        }
        let red_to_move = !matches!(fields.next(), Some("b"));
        Naive { cells, red_to_move }
    }

    fn at(&self, r: i32, f: i32) -> Option<Cell> {
        if (0..10).contains(&r) && (0..9).contains(&f) {
            Some(self.cells[r as usize][f as usize])
        } else {
            None
        }
    }

    fn in_palace(red: bool, r: i32, f: i32) -> bool {
        (3..=5).contains(&f)
            && if red {
                (0..=2).contains(&r)
            } else {
                (7..=9).contains(&r)
            }
    }

    fn own_half(red: bool, r: i32) -> bool {
        if red {
            r <= 4
        } else {
            r >= 5
        }
    }

    /// Destinations of the piece on `(r, f)`, ignoring checks.
    pub fn targets(&self, r: i32, f: i32) -> Vec<(usize, usize)> {
        let Some((red, kind)) = self.cells[r as usize][f as usize] else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let push = |tr: i32, tf: i32, out: &mut Vec<(usize, usize)>| {
            if let Some(c) = self.at(tr, tf) {
                if c.is_none_or(|(cr, _)| cr != red) {
                    out.push((tr as usize, tf as usize));
                }
            }
        };
        let orth = [(1, 0), (-1, 0), (0, 1), (0, -1)];
        let diag = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
        match kind {
            'k' => {
                for (dr, df) in orth {
                    if Self::in_palace(red, r + dr, f + df) {
                        push(r + dr, f + df, &mut out);
                    }
                }
            }
            'a' => {
                for (dr, df) in diag {
                    if Self::in_palace(red, r + dr, f + df) {
                        push(r + dr, f + df, &mut out);
                    }
                }
            }
            'b' => {
                for (dr, df) in diag {
                    let (tr, tf) = (r + 2 * dr, f + 2 * df);
                    if Self::own_half(red, tr) && self.at(r + dr, f + df) == Some(None) {
                        push(tr, tf, &mut out);
                    }
                }
            }
            'n' => {
                for (dr, df) in orth {
                    if self.at(r + dr, f + df) != Some(None) {
                        continue;
                    }
                    let (sr, sf) = if dr != 0 { (0, 1) } else { (1, 0) };
                    push(r + 2 * dr + sr, f + 2 * df + sf, &mut out);
                    push(r + 2 * dr - sr, f + 2 * df - sf, &mut out);
                }
            }
            'r' | 'c' => {
                for (dr, df) in orth {
                    let (mut tr, mut tf) = (r + dr, f + df);
                    let mut screened = false;
                    while let Some(c) = self.at(tr, tf) {
                        match (c, kind, screened) {
                            (None, 'r', _) | (None, 'c', false) => push(tr, tf, &mut out),
                            (None, _, _) => {}
                            (Some(_), 'r', _) => {
                                push(tr, tf, &mut out);
                                break;
                            }
                            (Some(_), _, false) => screened = true,
                            (Some(_), _, true) => {
                                push(tr, tf, &mut out);
                                break;
                            }
                        }
                        tr += dr;
                        tf += df;
                    }
                }
            }
            'p' => {
                let fwd = if red { 1 } else { -1 };
                push(r + fwd, f, &mut out);
                if !Self::own_half(red, r) {
                    push(r, f + 1, &mut out);
                    push(r, f - 1, &mut out);
                }
            }
            _ => unreachable!(),
        }
        out
    }

    pub fn king(&self, red: bool) -> Option<(usize, usize)> {
        (0..10)
            .flat_map(|r| (0..9).map(move |f| (r, f)))
            .find(|&(r, f)| self.cells[r][f] == Some((red, 'k')))
    }

    /// True if `red`'s king is attacked or faces the other king.
    pub fn king_exposed(&self, red: bool) -> bool {
        let Some(k) = self.king(red) else { return true };
        if let Some(o) = self.king(!red) {
            if o.1 == k.1 {
                let (lo, hi) = (k.0.min(o.0), k.0.max(o.0));
                if (lo + 1..hi).all(|r| self.cells[r][k.1].is_none()) {
                    return true;
                }
            }
        }
        for r in 0..10 {
            for f in 0..9 {
                if matches!(self.cells[r][f], Some((c, _)) if c != red)
                    && self.targets(r as i32, f as i32).contains(&k)
                {
                    return true;
                }
            }
        }
        false
    }

    pub fn apply(&self, m: NaiveMove) -> Naive {
        let mut next = self.clone();
        let ((r0, f0), (r1, f1)) = m;
        next.cells[r1][f1] = next.cells[r0][f0].take();
        next.red_to_move = !self.red_to_move;
        next
    }

    pub fn legal_moves(&self) -> Vec<NaiveMove> {
        let mut out = Vec::new();
        for r in 0..10 {
            for f in 0..9 {
                if !matches!(self.cells[r][f], Some((c, _)) if c == self.red_to_move) {
                    continue;
                }
                for t in self.targets(r as i32, f as i32) {
                    let m = ((r, f), t);
                    if !self.apply(m).king_exposed(self.red_to_move) {
                        out.push(m);
                    }
                }
            }
        }
        out
    }

    pub fn perft(&self, depth: u32) -> u64 {
        if depth == 0 {
            return 1;
        }
        let moves = self.legal_moves();
        if depth == 1 {
            return moves.len() as u64;
        }
        moves.iter().map(|&m| self.apply(m).perft(depth - 1)).sum()
    }

    /// Snapshot-rule protection: can the victim's side legally recapture
    /// after `m`, tracing rook and cannon lines over the board before `m`?
    /// Victims outranking their attacker are never protected.
    pub fn protected(&self, m: NaiveMove) -> bool {
        let ((r0, f0), (r1, f1)) = m;
        let (_, attacker) = self.cells[r0][f0].unwrap();
        let (victim_red, victim) = self.cells[r1][f1].unwrap();
        let class = |k: char| match k {
            'r' => 3,
            'n' | 'c' => 2,
            _ => 1,
        };
        if attacker != 'k' && victim != 'k' && class(victim) > class(attacker) {
            return false;
        }
        let after = self.apply(m);
        for r in 0..10 {
            for f in 0..9 {
                let Some((red, kind)) = after.cells[r][f] else {
                    continue;
                };
                if red != victim_red {
                    continue;
                }
                let reaches = match kind {
                    'r' | 'c' => self.line_reaches((r, f), (r1, f1), kind == 'c'),
                    _ => after.targets(r as i32, f as i32).contains(&(r1, f1)),
                };
                if reaches && !after.apply(((r, f), (r1, f1))).king_exposed(victim_red) {
                    return true;
                }
            }
        }
        false
    }

    /// Whether a rook (or cannon) on `from` reaches `to` on this board.
    fn line_reaches(&self, from: (usize, usize), to: (usize, usize), cannon: bool) -> bool {
        if from.0 != to.0 && from.1 != to.1 {
            return false;
        }
        let between: usize = if from.0 == to.0 {
            let (lo, hi) = (from.1.min(to.1), from.1.max(to.1));
            (lo + 1..hi)
                .filter(|&f| self.cells[from.0][f].is_some())
                .count()
        } else {
            let (lo, hi) = (from.0.min(to.0), from.0.max(to.0));
            (lo + 1..hi)
                .filter(|&r| self.cells[r][from.1].is_some())
                .count()
        };
        between == usize::from(cannon)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A position reached by uniformly random legal moves from the start,
/// or `None` if the game ended first.
pub fn random_playout(rng: &mut ChaCha8Rng, plies: usize) -> Option<Position> {
    let mut pos = Position::startpos();
    for _ in 0..plies {
        let moves = pos.generate_moves();
        let m = *moves.choose(rng)?;
        pos.make_move(m);
    }
    (!pos.generate_moves().is_empty()).then_some(pos)
}

/// Random midgame positions: playouts of 16..60 plies.
pub fn midgame_positions(seed: u64, count: usize) -> Vec<Position> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let plies = rng.gen_range(16..60);
        if let Some(p) = random_playout(&mut rng, plies) {
            out.push(p);
        }
    }
    out
}

/// Sparse random placements that pass FEN validation, with the side to
/// move not giving check. Denser in captures than playouts.
pub fn sparse_positions(seed: u64, count: usize) -> Vec<Position> {
    let mut rng = rng(seed);
    let letters = ['R', 'N', 'C', 'A', 'B', 'P', 'r', 'n', 'c', 'a', 'b', 'p'];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut cells = [[' '; 9]; 10];
        cells[rng.gen_range(0..3)][rng.gen_range(3..6)] = 'K';
        cells[rng.gen_range(7..10)][rng.gen_range(3..6)] = 'k';
        for _ in 0..rng.gen_range(4..14) {
            let (r, f) = (rng.gen_range(0..10), rng.gen_range(0..9));
            if cells[r][f] == ' ' {
                cells[r][f] = *letters.choose(&mut rng).unwrap();
            }
        }
        let side = if rng.gen() { "w" } else { "b" };
        let fen = format!("{} {side}", board_fen(&cells));
        let Ok(pos) = Position::from_fen(&fen) else {
            continue;
        };
        let mover = pos.side_to_move();
        if pos.in_check(!mover) {
            continue;
        }
        out.push(pos);
    }
    out
}

fn board_fen(cells: &[[char; 9]; 10]) -> String {
    let mut rows = Vec::new();
    for rank in cells.iter().rev() {
        let mut row = String::new();
        let mut empty = 0;
        for &cell in rank {
            match cell {
                ' ' => empty += 1,
                c => {
                    if empty > 0 {
                        row.push_str(&empty.to_string());
                        empty = 0;
                    }
                    row.push(c);
                }
            }
        }
        if empty > 0 {
            row.push_str(&empty.to_string());
        }
        rows.push(row);
    }
    rows.join("/")
}

pub fn side_name(c: Color) -> &'static str {
    match c {
        Color::Red => "red",
        Color::Black => "black",
    }
}

pub const LEVELS: [ViolationLevel; 4] = [
    ViolationLevel::Undecided,
    ViolationLevel::PerpetualIdle,
    ViolationLevel::PerpetualChase,
    ViolationLevel::PerpetualCheck,
];

fn record(hash: u64, status: Status) -> HistoryRecord {
    let mut chased = SquareSet::default();
    if status == Status::CHASE {
        chased.insert(xq_core::Square::new(4, 4));
    }
    HistoryRecord {
        hash,
        mv: None,
        status,
        chased_set: chased,
    }
}

fn status_for(level: ViolationLevel) -> Status {
    match level {
        ViolationLevel::PerpetualCheck => Status::CHECK,
        ViolationLevel::PerpetualChase => Status::CHASE,
        _ => Status::IDLE,
    }
}

/// Six records; the side to move at the end is "ours". A level of
/// `Undecided` gets a fresh hash so that side never repeats.
pub fn synthetic(ours: ViolationLevel, theirs: ViolationLevel) -> History {
    let mut hashes = [1, 2, 3, 4, 1, 2];
    if theirs == ViolationLevel::Undecided {
        hashes[5] = 99;
    }
    if ours == ViolationLevel::Undecided {
        hashes[4] = 98;
    }
    let records = hashes
        .iter()
        .enumerate()
        .map(|(i, &hash)| {
            // Odd records were produced by "theirs", even ones by "ours".
            let level = if i % 2 == 1 { theirs } else { ours };
            record(hash, status_for(level))
        })
        .collect();
    History::from_records(records)
}

/// Random game that prefers undoing its own previous move, so cycles are
/// common. Calls `visit` after every move.
pub fn cyclic_playout(
    rng: &mut impl Rng,
    plies: usize,
    mut visit: impl FnMut(&History, &Position),
) {
    let mut pos = Position::startpos();
    let mut h = History::new(&pos);
    let mut played: Vec<Move> = Vec::new();
    for ply in 0..plies {
        let moves = pos.generate_moves();
        if moves.is_empty() {
            break;
        }
        let back = (ply >= 2)
            .then(|| played[ply - 2])
            .map(|m| pos.move_between(m.to, m.from))
            .filter(|m| moves.contains(m));
        let m = match back {
            Some(b) if rng.gen_bool(0.7) => b,
            _ => *moves.choose(rng).unwrap(),
        };
        h.play(&mut pos, m);
        played.push(m);
        visit(&h, &pos);
    }
}
