//! Xiangqi FEN: ten rank fields from Black's back rank (rank 9) down to
//! Red's (rank 0), letters `kabnrcp`, uppercase for Red, then the side to
//! move (`w`/`r` for Red, `b` for Black). Trailing fields are ignored.

use thiserror::Error;

use super::position::Position;
use super::types::{Color, Piece, PieceKind, Square, FILES, RANKS};

pub const START_FEN: &str = "rnbakabnr/9/1c5c1/p1p1p1p1p/9/9/P1P1P1P1P/1C5C1/9/RNBAKABNR w";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FenError {
    #[error("board field: expected 10 rank fields, found {0}")]
    RankCount(usize),
    #[error("rank width: rank {rank} field {field:?} spans {width} columns, expected 9")]
    RankWidth {
        rank: u8,
        field: String,
        width: usize,
    },
    #[error("board field: invalid piece character {0:?}")]
    BadPiece(char),
    #[error("side-to-move field missing")]
    MissingSide,
    #[error("side-to-move field: expected 'w', 'r' or 'b', found {0:?}")]
    BadSide(String),
    #[error("piece count: {color} has {count} {kind} pieces, at most {max} allowed")]
    PieceCount {
        color: Color,
        kind: PieceKind,
        count: usize,
        max: usize,
    },
    #[error("king: {0} king missing")]
    MissingKing(Color),
    #[error("king: {color} king outside palace at {square}")]
    KingOutsidePalace { color: Color, square: Square },
    #[error("placement: {color} {kind} cannot stand on {square}")]
    IllegalPlacement {
        color: Color,
        kind: PieceKind,
        square: Square,
    },
    #[error("side-to-move field: {0} is to move but the other side is in check")]
    OpponentInCheck(Color),
}

impl Position {
    pub fn startpos() -> Position {
        Position::from_fen(START_FEN).expect("start position parses")
    }

    /// Parses and validates a FEN string.
    pub fn from_fen(text: &str) -> Result<Position, FenError> {
        let pos = Position::from_fen_unchecked(text)?;
        pos.validate()?;
        Ok(pos)
    }

    /// Syntax-only parse: no piece-count, placement or check validation.
    /// Useful for constructing deliberately illegal test boards.
    pub fn from_fen_unchecked(text: &str) -> Result<Position, FenError> {
        let mut fields = text.split_whitespace();
        let board = fields.next().unwrap_or("");
        let rows: Vec<&str> = board.split('/').collect();
        if rows.len() != RANKS as usize {
            return Err(FenError::RankCount(rows.len()));
        }
        let side = match fields.next() {
            None => return Err(FenError::MissingSide),
            Some("w") | Some("r") | Some("W") | Some("R") => Color::Red,
            Some("b") | Some("B") => Color::Black,
            Some(other) => return Err(FenError::BadSide(other.to_string())),
        };
        let mut pos = Position::empty(side);
        for (i, row) in rows.iter().enumerate() {
            let rank = RANKS - 1 - i as u8;
            let mut file = 0usize;
            let mut placed = Vec::new();
            for c in row.chars() {
                if let Some(d) = c.to_digit(10) {
                    if d == 0 {
                        return Err(FenError::BadPiece(c));
                    }
                    file += d as usize;
                } else {
                    let piece = Piece::from_char(c).ok_or(FenError::BadPiece(c))?;
                    placed.push((file, piece));
                    file += 1;
                }
            }
            if file != FILES as usize {
                return Err(FenError::RankWidth {
                    rank,
                    field: row.to_string(),
                    width: file,
                });
            }
            for (f, piece) in placed {
                pos.set_piece(Square::new(f as u8, rank), Some(piece));
            }
        }
        Ok(pos)
    }

    /// Checks piece counts, king presence and palace confinement, piece
    /// placement, and that the side not to move is not in check.
    pub fn validate(&self) -> Result<(), FenError> {
        for color in Color::ALL {
            for kind in PieceKind::ALL {
                let count = self.count(Piece::new(color, kind));
                if count > kind.max_count() {
                    return Err(FenError::PieceCount {
                        color,
                        kind,
                        count,
                        max: kind.max_count(),
                    });
                }
            }
            let king = self
                .king_square(color)
                .ok_or(FenError::MissingKing(color))?;
            if !king.in_palace(color) {
                return Err(FenError::KingOutsidePalace {
                    color,
                    square: king,
                });
            }
        }
        for (sq, p) in self.pieces() {
            if !placement_ok(p, sq) {
                return Err(FenError::IllegalPlacement {
                    color: p.color,
                    kind: p.kind,
                    square: sq,
                });
            }
        }
        let waiting = !self.side_to_move();
        if self.in_check(waiting) {
            return Err(FenError::OpponentInCheck(self.side_to_move()));
        }
        Ok(())
    }

    pub fn to_fen(&self) -> String {
        let mut out = String::with_capacity(64);
        for rank in (0..RANKS).rev() {
            let mut gap = 0;
            for file in 0..FILES {
                match self.piece_at(Square::new(file, rank)) {
                    None => gap += 1,
                    Some(p) => {
                        if gap > 0 {
                            out.push(char::from_digit(gap, 10).unwrap());
                            gap = 0;
                        }
                        out.push(p.to_char());
                    }
                }
            }
            if gap > 0 {
                out.push(char::from_digit(gap, 10).unwrap());
            }
            if rank > 0 {
                out.push('/');
            }
        }
        out.push(' ');
        out.push(match self.side_to_move() {
            Color::Red => 'w',
            Color::Black => 'b',
        });
        out
    }
}

fn placement_ok(p: Piece, sq: Square) -> bool {
    // Work in the owner's frame: rank 0 is the owner's back rank.
    let rel = match p.color {
        Color::Red => sq,
        Color::Black => sq.flip_rank(),
    };
    let (f, r) = (rel.file(), rel.rank());
    match p.kind {
        PieceKind::King => rel.in_palace(Color::Red),
        PieceKind::Advisor => rel.in_palace(Color::Red) && (f + r) % 2 == 1,
        PieceKind::Elephant => {
            matches!((f, r), (2 | 6, 0) | (0 | 4 | 8, 2) | (2 | 6, 4))
        }
        PieceKind::Pawn => r >= 3 && (r >= 5 || f % 2 == 0),
        _ => true,
    }
}
