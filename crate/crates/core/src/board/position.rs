use super::types::{Color, Move, Piece, PieceKind, Square, SquareSet, NUM_SQUARES};
use super::zobrist;

pub(crate) const ORTHO: [(i8, i8); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
pub(crate) const DIAG: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
/// Knight steps paired with the leg offset that must be empty.
pub(crate) const KNIGHT: [((i8, i8), (i8, i8)); 8] = [
    ((1, 2), (0, 1)),
    ((-1, 2), (0, 1)),
    ((1, -2), (0, -1)),
    ((-1, -2), (0, -1)),
    ((2, 1), (1, 0)),
    ((2, -1), (1, 0)),
    ((-2, 1), (-1, 0)),
    ((-2, -1), (-1, 0)),
];

/// Full game state. Single owner; the Zobrist tables it reads are static.
#[derive(Clone, PartialEq, Eq)]
pub struct Position {
    board: [Option<Piece>; NUM_SQUARES],
    side: Color,
    hash: u64,
    ply: u32,
    kings: [Option<Square>; 2],
}

/// Everything `unmake_move` needs to restore the prior state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Undo {
    pub mv: Move,
    moved: Piece,
}

impl Position {
    /// An empty board. Not a valid game position until kings are placed.
    pub fn empty(side: Color) -> Position {
        Position {
            board: [None; NUM_SQUARES],
            side,
            hash: zobrist::side_component(side),
            ply: 0,
            kings: [None; 2],
        }
    }

    #[inline]
    pub fn piece_at(&self, sq: Square) -> Option<Piece> {
        self.board[sq.index()]
    }

    #[inline]
    pub fn side_to_move(&self) -> Color {
        self.side
    }

    #[inline]
    pub fn hash(&self) -> u64 {
        self.hash
    }

    /// Half-moves made since this position object was created or parsed.
    #[inline]
    pub fn ply(&self) -> u32 {
        self.ply
    }

    pub fn king_square(&self, color: Color) -> Option<Square> {
        self.kings[color.index()]
    }

    pub fn occupancy(&self) -> SquareSet {
        self.pieces().map(|(sq, _)| sq).collect()
    }

    pub fn pieces(&self) -> impl Iterator<Item = (Square, Piece)> + '_ {
        self.board
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (Square::from_index(i), p)))
    }

    pub fn count(&self, piece: Piece) -> usize {
        self.board.iter().filter(|&&p| p == Some(piece)).count()
    }

    /// Places or clears a piece, keeping the hash and king table current.
    pub fn set_piece(&mut self, sq: Square, piece: Option<Piece>) {
        if let Some(old) = self.board[sq.index()] {
            self.hash ^= zobrist::piece_key(old, sq);
            if old.kind == PieceKind::King && self.kings[old.color.index()] == Some(sq) {
                self.kings[old.color.index()] = None;
            }
        }
        self.board[sq.index()] = piece;
        if let Some(new) = piece {
            self.hash ^= zobrist::piece_key(new, sq);
            if new.kind == PieceKind::King {
                self.kings[new.color.index()] = Some(sq);
            }
        }
    }

    pub fn set_side_to_move(&mut self, side: Color) {
        if side != self.side {
            self.hash ^= zobrist::side_key();
            self.side = side;
        }
    }

    /// Hash recomputed from scratch: XOR of piece-square keys plus the side key.
    pub fn compute_hash(&self) -> u64 {
        self.pieces()
            .fold(zobrist::side_component(self.side), |h, (sq, p)| {
                h ^ zobrist::piece_key(p, sq)
            })
    }

    /// Applies `mv` for whichever side owns the piece on `mv.from`, then
    /// passes the turn. Legality is the caller's responsibility.
    pub fn make_move(&mut self, mv: Move) -> Undo {
        let moved = self.board[mv.from.index()].expect("make_move from an empty square");
        debug_assert_eq!(
            self.board[mv.to.index()].map(|p| p.kind),
            mv.captured,
            "capture tag does not match board at {mv}"
        );
        if let Some(victim) = self.board[mv.to.index()] {
            self.hash ^= zobrist::piece_key(victim, mv.to);
            if victim.kind == PieceKind::King {
                self.kings[victim.color.index()] = None;
            }
        }
        self.hash ^= zobrist::piece_key(moved, mv.from) ^ zobrist::piece_key(moved, mv.to);
        self.board[mv.to.index()] = Some(moved);
        self.board[mv.from.index()] = None;
        if moved.kind == PieceKind::King {
            self.kings[moved.color.index()] = Some(mv.to);
        }
        self.side = !self.side;
        self.hash ^= zobrist::side_key();
        self.ply += 1;
        Undo { mv, moved }
    }

    pub fn unmake_move(&mut self, undo: Undo) {
        let Undo { mv, moved } = undo;
        self.ply -= 1;
        self.side = !self.side;
        self.hash ^= zobrist::side_key();
        self.hash ^= zobrist::piece_key(moved, mv.from) ^ zobrist::piece_key(moved, mv.to);
        self.board[mv.from.index()] = Some(moved);
        if moved.kind == PieceKind::King {
            self.kings[moved.color.index()] = Some(mv.from);
        }
        let restored = mv.captured.map(|kind| Piece::new(!moved.color, kind));
        self.board[mv.to.index()] = restored;
        if let Some(victim) = restored {
            self.hash ^= zobrist::piece_key(victim, mv.to);
            if victim.kind == PieceKind::King {
                self.kings[victim.color.index()] = Some(mv.to);
            }
        }
    }

    /// Builds the move object for `from -> to` with the correct capture tag.
    pub fn move_between(&self, from: Square, to: Square) -> Move {
        Move::new(from, to, self.piece_at(to).map(|p| p.kind))
    }

    /// True if a piece of `by` pseudo-legally attacks `target`. The flying-king
    /// rule counts as an attack when `target` holds the other king.
    pub fn is_attacked(&self, target: Square, by: Color) -> bool {
        let is = |sq: Square, kind: PieceKind| self.piece_at(sq) == Some(Piece::new(by, kind));
        let target_is_enemy_king = self.piece_at(target) == Some(Piece::new(!by, PieceKind::King));

        for (df, dr) in ORTHO {
            let mut cur = target.offset(df, dr);
            let mut screened = false;
            while let Some(sq) = cur {
                if let Some(p) = self.piece_at(sq) {
                    if !screened {
                        if p.color == by
                            && (p.kind == PieceKind::Rook
                                || (p.kind == PieceKind::King && df == 0 && target_is_enemy_king))
                        {
                            return true;
                        }
                        screened = true;
                    } else {
                        if p.color == by && p.kind == PieceKind::Cannon {
                            return true;
                        }
                        break;
                    }
                }
                cur = sq.offset(df, dr);
            }
        }

        for ((df, dr), (lf, lr)) in KNIGHT {
            // Knight at target - step; its leg is next to the knight.
            if let Some(src) = target.offset(-df, -dr) {
                if is(src, PieceKind::Knight) {
                    let leg = src.offset(lf, lr).expect("leg lies between src and target");
                    if self.piece_at(leg).is_none() {
                        return true;
                    }
                }
            }
        }

        if let Some(src) = target.offset(0, -by.forward()) {
            if is(src, PieceKind::Pawn) {
                return true;
            }
        }
        for df in [-1, 1] {
            if let Some(src) = target.offset(df, 0) {
                if is(src, PieceKind::Pawn) && !src.on_own_side(by) {
                    return true;
                }
            }
        }

        if target.in_palace(by) {
            for (df, dr) in ORTHO {
                if let Some(src) = target.offset(df, dr) {
                    if is(src, PieceKind::King) {
                        return true;
                    }
                }
            }
            for (df, dr) in DIAG {
                if let Some(src) = target.offset(df, dr) {
                    if is(src, PieceKind::Advisor) {
                        return true;
                    }
                }
            }
        }

        if target.on_own_side(by) {
            for (df, dr) in DIAG {
                if let (Some(eye), Some(src)) =
                    (target.offset(df, dr), target.offset(2 * df, 2 * dr))
                {
                    if is(src, PieceKind::Elephant) && self.piece_at(eye).is_none() {
                        return true;
                    }
                }
            }
        }

        false
    }

    /// True if `side`'s king is attacked, including by the opposing king
    /// along an open file.
    pub fn in_check(&self, side: Color) -> bool {
        match self.king_square(side) {
            Some(k) => self.is_attacked(k, !side),
            None => true,
        }
    }

    /// True if the move does not leave the mover's king attacked. The mover is
    /// the owner of the piece on `mv.from`, not necessarily the side to move.
    pub fn is_legal(&mut self, mv: Move) -> bool {
        let mover = match self.piece_at(mv.from) {
            Some(p) => p.color,
            None => return false,
        };
        let undo = self.make_move(mv);
        let ok = !self.in_check(mover);
        self.unmake_move(undo);
        ok
    }

    /// Geometry test for the piece on `from` moving to `to` on the current
    /// board. Does not consider check.
    pub fn is_pseudolegal(&self, mv: Move) -> bool {
        let Some(piece) = self.piece_at(mv.from) else {
            return false;
        };
        let target = self.piece_at(mv.to);
        if target.map(|p| p.kind) != mv.captured {
            return false;
        }
        if target.is_some_and(|p| p.color == piece.color) {
            return false;
        }
        self.reaches(piece, mv.from, mv.to, &self.occupancy(), target.is_some())
    }

    /// Whether `piece` standing on `from` can move to `to`. Rook and cannon
    /// lines are evaluated against `lines`; the knight leg, elephant eye and
    /// flying-king file use the live board.
    pub(crate) fn reaches(
        &self,
        piece: Piece,
        from: Square,
        to: Square,
        lines: &SquareSet,
        capture: bool,
    ) -> bool {
        if from == to {
            return false;
        }
        let df = to.file() as i8 - from.file() as i8;
        let dr = to.rank() as i8 - from.rank() as i8;
        match piece.kind {
            PieceKind::Rook => (df == 0 || dr == 0) && count_between(lines, from, to) == 0,
            PieceKind::Cannon => {
                (df == 0 || dr == 0)
                    && count_between(lines, from, to) == if capture { 1 } else { 0 }
            }
            PieceKind::Knight => KNIGHT.iter().any(|&((kf, kr), (lf, lr))| {
                kf == df
                    && kr == dr
                    && self
                        .piece_at(from.offset(lf, lr).expect("leg on board"))
                        .is_none()
            }),
            PieceKind::Elephant => {
                df.abs() == 2
                    && dr.abs() == 2
                    && to.on_own_side(piece.color)
                    && self
                        .piece_at(from.offset(df / 2, dr / 2).expect("eye"))
                        .is_none()
            }
            PieceKind::Advisor => df.abs() == 1 && dr.abs() == 1 && to.in_palace(piece.color),
            PieceKind::King => {
                if df.abs() + dr.abs() == 1 {
                    to.in_palace(piece.color)
                } else {
                    df == 0
                        && self.piece_at(to) == Some(Piece::new(!piece.color, PieceKind::King))
                        && count_between(&self.occupancy(), from, to) == 0
                }
            }
            PieceKind::Pawn => {
                let fwd = piece.color.forward();
                (df == 0 && dr == fwd)
                    || (dr == 0 && df.abs() == 1 && !from.on_own_side(piece.color))
            }
        }
    }

    /// Mirror image: ranks flipped and colors swapped, side to move kept.
    pub fn color_mirror(&self) -> Position {
        let mut out = Position::empty(self.side);
        for (sq, p) in self.pieces() {
            out.set_piece(sq.flip_rank(), Some(Piece::new(!p.color, p.kind)));
        }
        out.ply = self.ply;
        out
    }

    /// Debug rendering, Black at the top.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for rank in (0..10).rev() {
            s.push_str(&format!("{rank} "));
            for file in 0..9 {
                let c = self
                    .piece_at(Square::new(file, rank))
                    .map_or('.', Piece::to_char);
                s.push(c);
                s.push(' ');
            }
            s.push('\n');
        }
        s.push_str("  a b c d e f g h i\n");
        s
    }
}

impl std::fmt::Debug for Position {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Position({})", self.to_fen())
    }
}

/// Occupied squares strictly between two squares on one line.
pub(crate) fn count_between(occ: &SquareSet, a: Square, b: Square) -> u32 {
    let df = (b.file() as i8 - a.file() as i8).signum();
    let dr = (b.rank() as i8 - a.rank() as i8).signum();
    debug_assert!(df == 0 || dr == 0);
    let mut n = 0;
    let mut cur = a.offset(df, dr);
    while let Some(sq) = cur {
        if sq == b {
            break;
        }
        if occ.contains(sq) {
            n += 1;
        }
        cur = sq.offset(df, dr);
    }
    n
}
