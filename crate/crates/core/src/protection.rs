//! Whether a piece under a hypothetical capture is protected.
//!
//! A victim is protected when, after the capture is played on the board, at
//! least one of its own pieces can legally recapture on the same square.
//! Cannon and rook recaptures are traced over the occupancy *before* the
//! capture: a piece that leaves its square to capture still screens (or
//! blocks) lines through that square.

use crate::board::{Move, Piece, PieceKind, Position, Square, SquareSet};

/// Exchange-value rank of a piece kind. Kings have no class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValueClass(u8);

impl ValueClass {
    pub fn rank(self) -> u8 {
        self.0
    }
}

/// Rook 3; knight and cannon 2; advisor, elephant and pawn 1.
///
/// Panics on `King`.
pub fn piece_value_class(kind: PieceKind) -> ValueClass {
    ValueClass(match kind {
        PieceKind::Rook => 3,
        PieceKind::Knight | PieceKind::Cannon => 2,
        PieceKind::Advisor | PieceKind::Elephant | PieceKind::Pawn => 1,
        PieceKind::King => panic!("the king has no value class"),
    })
}

/// True when trading `attacker` for `victim` is favorable to the attacker on
/// its face. A king attacker never outranks.
pub(crate) fn victim_outranks(victim: PieceKind, attacker: PieceKind) -> bool {
    attacker != PieceKind::King
        && victim != PieceKind::King
        && piece_value_class(victim) > piece_value_class(attacker)
}

/// Occupied squares captured before a hypothetical capture is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OccupancySnapshot(SquareSet);

impl OccupancySnapshot {
    pub fn take(pos: &Position) -> Self {
        OccupancySnapshot(pos.occupancy())
    }

    pub fn squares(&self) -> SquareSet {
        self.0
    }
}

const DEFENDER_ORDER: [PieceKind; 7] = [
    PieceKind::Advisor,
    PieceKind::Elephant,
    PieceKind::Pawn,
    PieceKind::Knight,
    PieceKind::Cannon,
    PieceKind::Rook,
    PieceKind::King,
];

/// Candidate recaptures onto `to`, where the capturing piece now stands.
///
/// `pos` must be the position after the hypothetical capture; `snapshot`
/// the occupancy from before it. Moves are listed by defender kind in the
/// order advisor, elephant, pawn, knight, cannon, rook, king. Legality is
/// not checked here.
pub fn get_defenders(pos: &Position, to: Square, snapshot: &OccupancySnapshot) -> Vec<Move> {
    let Some(target) = pos.piece_at(to) else {
        return Vec::new();
    };
    let defender = !target.color;
    let mut out = Vec::new();
    for kind in DEFENDER_ORDER {
        let piece = Piece::new(defender, kind);
        let lines = match kind {
            PieceKind::Cannon | PieceKind::Rook => snapshot.squares(),
            _ => pos.occupancy(),
        };
        for (from, p) in pos.pieces() {
            if p == piece && pos.reaches(piece, from, to, &lines, true) {
                out.push(Move::new(from, to, Some(target.kind)));
            }
        }
    }
    out
}

/// Applies `capture`, asks whether the victim's side can legally recapture
/// (lines traced over the pre-capture occupancy), and restores the board.
pub(crate) fn has_legal_recapture(pos: &mut Position, capture: Move) -> bool {
    let snapshot = OccupancySnapshot::take(pos);
    let undo = pos.make_move(capture);
    let defenders = get_defenders(pos, capture.to, &snapshot);
    let found = defenders.into_iter().any(|d| pos.is_legal(d));
    pos.unmake_move(undo);
    found
}

/// Whether the piece on `capture.to` counts as protected against `capture`.
///
/// Returns false outright when the victim's class exceeds the attacker's.
/// The board is restored before returning.
pub fn is_protected(pos: &mut Position, capture: Move) -> bool {
    let (Some(attacker), Some(victim)) = (pos.piece_at(capture.from), pos.piece_at(capture.to))
    else {
        return false;
    };
    debug_assert_ne!(attacker.color, victim.color);
    if victim_outranks(victim.kind, attacker.kind) {
        return false;
    }
    has_legal_recapture(pos, capture)
}
