//! Capture threats on unprotected pieces and per-move status labels.
//!
//! The status of a half-move is settled one ply late: a move is a chase only
//! if the opponent's reply answers one of the threats it created, by moving
//! the victim away, blocking the line, or protecting the victim.

use std::fmt;
use std::ops::{BitOr, BitOrAssign};

use crate::board::{Color, Move, PieceKind, Position, SquareSet};
use crate::protection::{has_legal_recapture, is_protected, piece_value_class};

/// Bit-flag status of a history record.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Status(u8);

impl Status {
    pub const NONE: Status = Status(0);
    pub const IDLE: Status = Status(1);
    pub const CHASE: Status = Status(2);
    pub const CHECK: Status = Status(4);
    /// Irreversible move. Terminates repetition scans; never OR-combined.
    pub const CANCEL: Status = Status(8);

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, other: Status) -> bool {
        self.0 & other.0 == other.0
    }
}

impl BitOr for Status {
    type Output = Status;

    fn bitor(self, rhs: Status) -> Status {
        Status(self.0 | rhs.0)
    }
}

impl BitOrAssign for Status {
    fn bitor_assign(&mut self, rhs: Status) {
        self.0 |= rhs.0;
    }
}

impl fmt::Debug for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Status::NONE {
            return f.write_str("None");
        }
        let names = [
            (Status::IDLE, "Idle"),
            (Status::CHASE, "Chase"),
            (Status::CHECK, "Check"),
            (Status::CANCEL, "Cancel"),
        ];
        let mut first = true;
        for (flag, name) in names {
            if self.contains(flag) {
                if !first {
                    f.write_str("|")?;
                }
                f.write_str(name)?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Capture threats against unprotected pieces.
pub type ThreatList = Vec<Move>;

/// Squares of consistently chased victims.
pub type ChasedSet = SquareSet;

const THREAT_KINDS: [PieceKind; 5] = [
    PieceKind::Knight,
    PieceKind::Rook,
    PieceKind::Cannon,
    PieceKind::Advisor,
    PieceKind::Elephant,
];

/// Pseudo-legal captures of the side to move by knights, rooks, cannons,
/// advisors and elephants. Kings and pawns never chase.
pub fn gen_captures(pos: &Position) -> Vec<Move> {
    gen_captures_for(pos, pos.side_to_move())
}

pub fn gen_captures_for(pos: &Position, color: Color) -> Vec<Move> {
    let mut out = Vec::new();
    for kind in THREAT_KINDS {
        for (sq, piece) in pos.pieces() {
            if piece.color == color && piece.kind == kind {
                pos.piece_moves(sq, piece, true, &mut out);
            }
        }
    }
    out
}

/// True if the victim of `capture` is a pawn still on its own side.
pub fn pawn_not_passed(pos: &Position, capture: Move) -> bool {
    pos.piece_at(capture.to)
        .is_some_and(|v| v.kind == PieceKind::Pawn && capture.to.on_own_side(v.color))
}

/// Equal-class capture that the victim's side can legally answer with a
/// recapture on the same square.
pub fn is_exchange_move(pos: &mut Position, capture: Move) -> bool {
    let (Some(attacker), Some(victim)) = (pos.piece_at(capture.from), pos.piece_at(capture.to))
    else {
        return false;
    };
    if attacker.kind == PieceKind::King || victim.kind == PieceKind::King {
        return false;
    }
    piece_value_class(attacker.kind) == piece_value_class(victim.kind)
        && has_legal_recapture(pos, capture)
}

/// Free-capture threats of the side that just moved against the side to
/// move: legal captures of unprotected, non-king victims that are neither
/// exchanges nor unpassed pawns.
pub fn get_chases(pos: &mut Position) -> ThreatList {
    let attacker = !pos.side_to_move();
    let mut chases = ThreatList::new();
    for m in gen_captures_for(pos, attacker) {
        if m.captured == Some(PieceKind::King) || pawn_not_passed(pos, m) || !pos.is_legal(m) {
            continue;
        }
        if !is_exchange_move(pos, m) && !is_protected(pos, m) {
            chases.push(m);
        }
    }
    chases
}

/// Status and chased set for the move that created `threats`, given the
/// opponent's quiet `reply`.
///
/// `pos_after` is the position after `reply`; `prior_check` tells whether the
/// replying side was in check before it. A threat joins the chased set when
/// the reply moved its victim (the set records the new square), blocked the
/// capture, or left the victim protected. A reply that gives check does not
/// count as blocking merely because the capture became illegal.
pub fn classify_reply(
    pos_after: &mut Position,
    prior_check: bool,
    reply: Move,
    threats: &[Move],
) -> (Status, ChasedSet) {
    let mut victims = ChasedSet::EMPTY;
    if prior_check {
        return (Status::CHECK, victims);
    }
    let attacker = pos_after.side_to_move();
    let reply_checks = pos_after.in_check(attacker);
    for &threat in threats {
        if threat.to == reply.from {
            victims.insert(reply.to);
            continue;
        }
        let blocked =
            !pos_after.is_pseudolegal(threat) || (!reply_checks && !pos_after.is_legal(threat));
        if blocked || is_protected(pos_after, threat) {
            victims.insert(threat.to);
        }
    }
    let status = if victims.is_empty() {
        Status::IDLE
    } else {
        Status::CHASE
    };
    (status, victims)
}

/// Captures and forward pawn moves can never be repeated.
pub fn irreversible(m: Move, mover: PieceKind) -> bool {
    m.is_capture() || (mover == PieceKind::Pawn && m.from.file() == m.to.file())
}

/// Status a record carries before its reply is known.
pub(crate) fn provisional_status(pos: &Position) -> Status {
    if pos.in_check(pos.side_to_move()) {
        Status::CHECK
    } else {
        Status::IDLE
    }
}

/// Per-node lazily computed threat list and check flag.
#[derive(Debug, Default, Clone)]
pub struct ThreatCache {
    threats: Option<ThreatList>,
    prior_check: Option<bool>,
}

impl ThreatCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_computed(&self) -> bool {
        self.threats.is_some()
    }

    /// Computes the threat list for `pos` if not done yet. `pos` must be the
    /// node's position, before any child move is made.
    pub fn ensure(&mut self, pos: &mut Position) {
        if self.threats.is_none() {
            self.threats = Some(get_chases(pos));
        }
    }

    pub fn threats(&self) -> &[Move] {
        self.threats.as_deref().expect("threat list not computed")
    }

    pub fn prior_check(&mut self, pos: &Position) -> bool {
        *self
            .prior_check
            .get_or_insert_with(|| pos.in_check(pos.side_to_move()))
    }
}
