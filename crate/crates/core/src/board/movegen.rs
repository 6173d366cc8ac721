use super::position::{Position, DIAG, KNIGHT, ORTHO};
use super::types::{Color, Move, Piece, PieceKind, Square};

impl Position {
    /// Moves obeying piece geometry for the side to move, ignoring self-check.
    pub fn generate_pseudolegal(&self) -> Vec<Move> {
        self.pseudolegal_for(self.side_to_move(), false)
    }

    /// Pseudo-legal moves for `color`. With `captures_only` set, quiet moves
    /// are skipped.
    pub fn pseudolegal_for(&self, color: Color, captures_only: bool) -> Vec<Move> {
        let mut out = Vec::with_capacity(64);
        for (sq, piece) in self.pieces() {
            if piece.color == color {
                self.piece_moves(sq, piece, captures_only, &mut out);
            }
        }
        out
    }

    /// Legal moves for the side to move. Empty means the side to move has
    /// lost (checkmate or stalemate).
    pub fn generate_moves(&mut self) -> Vec<Move> {
        let mut moves = self.generate_pseudolegal();
        moves.retain(|&m| self.is_legal(m));
        moves
    }

    pub(crate) fn piece_moves(
        &self,
        from: Square,
        piece: Piece,
        captures_only: bool,
        out: &mut Vec<Move>,
    ) {
        let color = piece.color;
        let push = |to: Square, out: &mut Vec<Move>| match self.piece_at(to) {
            None if !captures_only => out.push(Move::quiet(from, to)),
            Some(p) if p.color != color => out.push(Move::new(from, to, Some(p.kind))),
            _ => {}
        };
        match piece.kind {
            PieceKind::Rook => {
                for (df, dr) in ORTHO {
                    let mut cur = from.offset(df, dr);
                    while let Some(sq) = cur {
                        push(sq, out);
                        if self.piece_at(sq).is_some() {
                            break;
                        }
                        cur = sq.offset(df, dr);
                    }
                }
            }
            PieceKind::Cannon => {
                for (df, dr) in ORTHO {
                    let mut cur = from.offset(df, dr);
                    let mut screened = false;
                    while let Some(sq) = cur {
                        match self.piece_at(sq) {
                            None => {
                                if !screened && !captures_only {
                                    out.push(Move::quiet(from, sq));
                                }
                            }
                            Some(p) => {
                                if screened {
                                    if p.color != color {
                                        out.push(Move::new(from, sq, Some(p.kind)));
                                    }
                                    break;
                                }
                                screened = true;
                            }
                        }
                        cur = sq.offset(df, dr);
                    }
                }
            }
            PieceKind::Knight => {
                for ((df, dr), (lf, lr)) in KNIGHT {
                    if let Some(to) = from.offset(df, dr) {
                        let leg = from.offset(lf, lr).expect("leg on board");
                        if self.piece_at(leg).is_none() {
                            push(to, out);
                        }
                    }
                }
            }
            PieceKind::Elephant => {
                for (df, dr) in DIAG {
                    if let Some(to) = from.offset(2 * df, 2 * dr) {
                        let eye = from.offset(df, dr).expect("eye on board");
                        if to.on_own_side(color) && self.piece_at(eye).is_none() {
                            push(to, out);
                        }
                    }
                }
            }
            PieceKind::Advisor => {
                for (df, dr) in DIAG {
                    if let Some(to) = from.offset(df, dr) {
                        if to.in_palace(color) {
                            push(to, out);
                        }
                    }
                }
            }
            PieceKind::King => {
                for (df, dr) in ORTHO {
                    if let Some(to) = from.offset(df, dr) {
                        if to.in_palace(color) {
                            push(to, out);
                        }
                    }
                }
                // Flying capture of the opposing king on an open file.
                let dr = color.forward();
                let mut cur = from.offset(0, dr);
                while let Some(sq) = cur {
                    if let Some(p) = self.piece_at(sq) {
                        if p == Piece::new(!color, PieceKind::King) {
                            out.push(Move::new(from, sq, Some(PieceKind::King)));
                        }
                        break;
                    }
                    cur = sq.offset(0, dr);
                }
            }
            PieceKind::Pawn => {
                if let Some(to) = from.offset(0, color.forward()) {
                    push(to, out);
                }
                if !from.on_own_side(color) {
                    for df in [-1, 1] {
                        if let Some(to) = from.offset(df, 0) {
                            push(to, out);
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(s: &str) -> Square {
        Square::parse(s).unwrap()
    }

    #[test]
    fn startpos_has_44_legal_moves() {
        let mut p = Position::startpos();
        let moves = p.generate_moves();
        assert_eq!(moves.len(), 44);
        // Both central cannon moves and the four knight developments.
        for m in ["b2e2", "h2e2", "b0a2", "b0c2", "h0g2", "h0i2"] {
            assert!(moves.iter().any(|x| x.to_string() == m), "missing {m}");
        }
    }

    #[test]
    fn lone_kings_on_open_file_can_fly() {
        let mut p = Position::empty(Color::Red);
        p.set_piece(sq("e0"), Some(Piece::new(Color::Red, PieceKind::King)));
        p.set_piece(sq("e9"), Some(Piece::new(Color::Black, PieceKind::King)));
        let fly = Move::new(sq("e0"), sq("e9"), Some(PieceKind::King));
        assert!(p.generate_pseudolegal().contains(&fly));
        p.set_side_to_move(Color::Black);
        let back = Move::new(sq("e9"), sq("e0"), Some(PieceKind::King));
        assert!(p.generate_pseudolegal().contains(&back));
    }

    #[test]
    fn blocked_knight_leg() {
        // Red knight b0 with its leg b1 occupied cannot jump to a2 or c2.
        let p = Position::from_fen("4k4/9/9/9/9/9/9/9/1R7/1N1K5 w").unwrap();
        let from = sq("b0");
        let knight: Vec<_> = p
            .generate_pseudolegal()
            .into_iter()
            .filter(|m| m.from == from)
            .collect();
        assert!(knight.iter().all(|m| m.to != sq("a2") && m.to != sq("c2")));
        assert!(knight.iter().any(|m| m.to == sq("d1")));
    }

    #[test]
    fn checkmate_has_no_moves() {
        // Double rook mate on the back rank.
        let mut mated = Position::from_fen("R2k5/1R7/9/9/9/9/9/9/9/4K4 b").unwrap();
        assert!(mated.generate_moves().is_empty());
    }
}
