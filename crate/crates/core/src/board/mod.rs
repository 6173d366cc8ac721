//! Board representation, move generation, make/unmake and hashing.

mod fen;
mod movegen;
mod perft;
mod position;
mod types;
pub mod zobrist;

pub use fen::{FenError, START_FEN};
pub use perft::{perft, perft_divide};
pub use position::{Position, Undo};
pub use types::{Color, Move, Piece, PieceKind, Square, SquareSet, FILES, NUM_SQUARES, RANKS};
