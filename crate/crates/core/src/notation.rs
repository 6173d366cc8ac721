//! Move text: coordinate notation (`h2e2`) and WXF (`C2=5`, `R++1`, `+R+1`).
//!
//! WXF file numbers count from each player's right: Red's file 1 is the
//! `i` file, Black's file 1 is the `a` file. Two pieces of one kind on a
//! file are told apart by `+` (front) and `-` (rear), written either in
//! place of the file digit or before the letter; three or more pawns use
//! `a`, `b`, `c`... counting from the front.

use thiserror::Error;

use crate::board::{Color, Move, Piece, PieceKind, Position, Square, FILES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error("cannot parse move {0:?}")]
    Syntax(String),
    #[error("{0:?}: lowercase piece letter but Red is to move")]
    WrongCase(String),
    #[error("{0:?}: no matching piece")]
    NoSuchPiece(String),
    #[error("{0:?}: ambiguous")]
    Ambiguous(String),
    #[error("{0:?}: not a move for the side to move")]
    NoMatch(String),
    #[error("{0:?}: illegal, leaves the king in check")]
    Illegal(String),
}

impl NotationError {
    /// Errors about the text itself rather than about the position.
    pub fn is_syntax(&self) -> bool {
        matches!(self, NotationError::Syntax(_) | NotationError::WrongCase(_))
    }
}

/// True if `text` looks like a coordinate move such as `h2e2`.
pub fn is_coordinate(text: &str) -> bool {
    let b = text.as_bytes();
    b.len() == 4
        && (b'a'..=b'i').contains(&b[0])
        && b[1].is_ascii_digit()
        && (b'a'..=b'i').contains(&b[2])
        && b[3].is_ascii_digit()
}

/// Parses either notation into a legal move of the side to move.
pub fn parse_move(pos: &mut Position, text: &str) -> Result<Move, NotationError> {
    if is_coordinate(text) {
        parse_coordinate(pos, text)
    } else {
        parse_wxf(pos, text)
    }
}

/// Parses and plays a whole sequence, returning the moves.
pub fn parse_line<S: AsRef<str>>(
    pos: &mut Position,
    moves: &[S],
) -> Result<Vec<Move>, NotationError> {
    let mut out = Vec::with_capacity(moves.len());
    for text in moves {
        let m = parse_move(pos, text.as_ref())?;
        pos.make_move(m);
        out.push(m);
    }
    Ok(out)
}

pub fn parse_coordinate(pos: &mut Position, text: &str) -> Result<Move, NotationError> {
    let err = || NotationError::Syntax(text.to_string());
    if !is_coordinate(text) {
        return Err(err());
    }
    let from = Square::parse(&text[..2]).ok_or_else(err)?;
    let to = Square::parse(&text[2..]).ok_or_else(err)?;
    match pos.piece_at(from) {
        Some(p) if p.color == pos.side_to_move() => {}
        _ => return Err(NotationError::NoSuchPiece(text.to_string())),
    }
    let m = pos.move_between(from, to);
    if !pos.is_pseudolegal(m) {
        return Err(NotationError::NoMatch(text.to_string()));
    }
    if !pos.is_legal(m) {
        return Err(NotationError::Illegal(text.to_string()));
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Selector {
    File(u8),
    /// Position counted from the front among same-kind pieces on one file.
    Nth(usize),
    Rear,
}

fn kind_from_letter(c: char) -> Option<PieceKind> {
    Some(match c.to_ascii_uppercase() {
        'R' => PieceKind::Rook,
        'N' | 'H' => PieceKind::Knight,
        'B' | 'E' => PieceKind::Elephant,
        'A' => PieceKind::Advisor,
        'K' => PieceKind::King,
        'C' => PieceKind::Cannon,
        'P' => PieceKind::Pawn,
        _ => return None,
    })
}

/// Board column of WXF file `n` (1..=9) for `color`.
pub fn wxf_file_to_column(color: Color, n: u8) -> u8 {
    match color {
        Color::Red => FILES - n,
        Color::Black => n - 1,
    }
}

pub fn column_to_wxf_file(color: Color, column: u8) -> u8 {
    match color {
        Color::Red => FILES - column,
        Color::Black => column + 1,
    }
}

fn straight_mover(kind: PieceKind) -> bool {
    matches!(
        kind,
        PieceKind::Rook | PieceKind::Cannon | PieceKind::King | PieceKind::Pawn
    )
}

/// Same-kind pieces on `column`, front first.
fn file_pieces(pos: &Position, piece: Piece, column: u8) -> Vec<Square> {
    let mut squares: Vec<Square> = pos
        .pieces()
        .filter(|&(sq, p)| p == piece && sq.file() == column)
        .map(|(sq, _)| sq)
        .collect();
    squares.sort_by_key(|sq| match piece.color {
        Color::Red => -(sq.rank() as i32),
        Color::Black => sq.rank() as i32,
    });
    squares
}

pub fn parse_wxf(pos: &mut Position, text: &str) -> Result<Move, NotationError> {
    let syntax = || NotationError::Syntax(text.to_string());
    let chars: Vec<char> = text.chars().collect();
    if chars.len() != 4 {
        return Err(syntax());
    }
    // Normalise "+R+1" to "R++1".
    let (letter, sel, op, digit) = if matches!(chars[0], '+' | '-') {
        (chars[1], chars[0], chars[2], chars[3])
    } else {
        (chars[0], chars[1], chars[2], chars[3])
    };
    let kind = kind_from_letter(letter).ok_or_else(syntax)?;
    let side = pos.side_to_move();
    if letter.is_ascii_lowercase() && side == Color::Red {
        return Err(NotationError::WrongCase(text.to_string()));
    }
    let selector = match sel {
        '1'..='9' => Selector::File(sel as u8 - b'0'),
        '+' => Selector::Nth(0),
        '-' => Selector::Rear,
        'a'..='e' => Selector::Nth((sel as u8 - b'a') as usize),
        _ => return Err(syntax()),
    };
    if !matches!(op, '+' | '-' | '=' | '.') {
        return Err(syntax());
    }
    let n = match digit {
        '1'..='9' => digit as u8 - b'0',
        _ => return Err(syntax()),
    };
    if !straight_mover(kind) && matches!(op, '=' | '.') {
        return Err(syntax());
    }

    let piece = Piece::new(side, kind);
    let origins: Vec<Square> = match selector {
        Selector::File(f) => file_pieces(pos, piece, wxf_file_to_column(side, f)),
        Selector::Nth(_) | Selector::Rear => {
            let mut picked = Vec::new();
            for column in 0..FILES {
                let on_file = file_pieces(pos, piece, column);
                if on_file.len() < 2 {
                    continue;
                }
                let chosen = match selector {
                    Selector::Nth(i) => on_file.get(i).copied(),
                    _ => on_file.last().copied(),
                };
                picked.extend(chosen);
            }
            picked
        }
    };
    if origins.is_empty() {
        return Err(NotationError::NoSuchPiece(text.to_string()));
    }

    let forward = side.forward();
    let mut matches = Vec::new();
    let mut illegal = false;
    for from in origins {
        let target = if straight_mover(kind) {
            match op {
                '+' => from.offset(0, forward * n as i8),
                '-' => from.offset(0, -forward * n as i8),
                _ => Some(Square::new(wxf_file_to_column(side, n), from.rank())),
            }
        } else {
            let column = wxf_file_to_column(side, n);
            let sign = if op == '+' { forward } else { -forward };
            pos.generate_pseudolegal()
                .into_iter()
                .find(|m| {
                    m.from == from
                        && m.to.file() == column
                        && (m.to.rank() as i8 - from.rank() as i8).signum() == sign
                })
                .map(|m| m.to)
        };
        let Some(to) = target else { continue };
        if to == from {
            continue;
        }
        let m = pos.move_between(from, to);
        if !pos.is_pseudolegal(m) {
            continue;
        }
        if pos.is_legal(m) {
            matches.push(m);
        } else {
            illegal = true;
        }
    }
    match matches.len() {
        1 => Ok(matches[0]),
        0 if illegal => Err(NotationError::Illegal(text.to_string())),
        0 => Err(NotationError::NoMatch(text.to_string())),
        _ => Err(NotationError::Ambiguous(text.to_string())),
    }
}

/// WXF text for a move of the side to move, using uppercase letters.
pub fn to_wxf(pos: &Position, m: Move) -> String {
    let piece = pos.piece_at(m.from).expect("move from an empty square");
    let side = piece.color;
    let letter = match piece.kind {
        PieceKind::Rook => 'R',
        PieceKind::Knight => 'N',
        PieceKind::Elephant => 'B',
        PieceKind::Advisor => 'A',
        PieceKind::King => 'K',
        PieceKind::Cannon => 'C',
        PieceKind::Pawn => 'P',
    };
    let on_file = file_pieces(pos, piece, m.from.file());
    let selector = if on_file.len() < 2 {
        (b'0' + column_to_wxf_file(side, m.from.file())) as char
    } else {
        let idx = on_file.iter().position(|&s| s == m.from).unwrap();
        if on_file.len() == 2 {
            if idx == 0 {
                '+'
            } else {
                '-'
            }
        } else {
            (b'a' + idx as u8) as char
        }
    };
    let dr = (m.to.rank() as i8 - m.from.rank() as i8) * side.forward();
    let op = match dr.signum() {
        1 => '+',
        -1 => '-',
        _ => '=',
    };
    let n = if straight_mover(piece.kind) && dr != 0 {
        dr.unsigned_abs()
    } else {
        column_to_wxf_file(side, m.to.file())
    };
    format!("{letter}{selector}{op}{n}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(fen: &str) -> Position {
        Position::from_fen(fen).unwrap()
    }

    #[test]
    fn opening_moves() {
        let mut s = Position::startpos();
        assert_eq!(parse_move(&mut s, "C2=5").unwrap().to_string(), "h2e2");
        assert_eq!(parse_move(&mut s, "H2+3").unwrap().to_string(), "h0g2");
        assert_eq!(parse_move(&mut s, "P7+1").unwrap().to_string(), "c3c4");
        assert_eq!(parse_move(&mut s, "A4+5").unwrap().to_string(), "f0e1");
        assert_eq!(parse_move(&mut s, "E3+5").unwrap().to_string(), "g0e2");
        assert_eq!(parse_move(&mut s, "R1+2").unwrap().to_string(), "i0i2");
        let m = parse_move(&mut s, "h2e2").unwrap();
        s.make_move(m);
        assert_eq!(parse_move(&mut s, "c8=5").unwrap().to_string(), "h7e7");
        assert_eq!(parse_move(&mut s, "H8+7").unwrap().to_string(), "h9g7");
        assert_eq!(parse_move(&mut s, "P3+1").unwrap().to_string(), "c6c5");
    }

    #[test]
    fn tandem_pieces() {
        // Red rooks on e6 and e4, black rooks on a8 and a6.
        let mut q = p("3k5/r8/9/r3R4/9/4R4/9/9/9/5K3 w");
        assert_eq!(parse_move(&mut q, "R++1").unwrap().to_string(), "e6e7");
        assert_eq!(parse_move(&mut q, "+R+1").unwrap().to_string(), "e6e7");
        assert_eq!(parse_move(&mut q, "R-=1").unwrap().to_string(), "e4i4");
        assert_eq!(
            parse_move(&mut q, "R5+1"),
            Err(NotationError::Ambiguous("R5+1".into()))
        );
        q.set_side_to_move(Color::Black);
        assert_eq!(parse_move(&mut q, "r+-1").unwrap().to_string(), "a6a7");
        assert_eq!(parse_move(&mut q, "R-+1").unwrap().to_string(), "a8a7");
    }

    #[test]
    fn errors() {
        let mut s = Position::startpos();
        assert!(matches!(
            parse_move(&mut s, "Z2=5"),
            Err(NotationError::Syntax(_))
        ));
        assert!(matches!(
            parse_move(&mut s, "c2=5"),
            Err(NotationError::WrongCase(_))
        ));
        assert!(matches!(
            parse_move(&mut s, "C3=5"),
            Err(NotationError::NoSuchPiece(_))
        ));
        assert!(matches!(
            parse_move(&mut s, "R1+9"),
            Err(NotationError::NoMatch(_))
        ));
        assert!(matches!(
            parse_move(&mut s, "e0e2"),
            Err(NotationError::NoMatch(_))
        ));
        assert!(matches!(
            parse_move(&mut s, "a9a8"),
            Err(NotationError::NoSuchPiece(_))
        ));
        assert!(NotationError::Syntax(String::new()).is_syntax());
    }

    #[test]
    fn illegal_move_is_reported() {
        // The knight on e5 is pinned against the black king.
        let mut q = p("4k4/9/9/9/4n4/9/9/9/9/4K4 b");
        assert!(matches!(
            parse_move(&mut q, "e5d3"),
            Err(NotationError::Illegal(_))
        ));
        assert!(matches!(
            parse_move(&mut q, "N5+4"),
            Err(NotationError::Illegal(_))
        ));
    }

    #[test]
    fn startpos_round_trip() {
        let mut s = Position::startpos();
        for m in s.generate_moves() {
            let text = to_wxf(&s, m);
            assert_eq!(parse_move(&mut s, &text), Ok(m), "{text}");
        }
    }
}
