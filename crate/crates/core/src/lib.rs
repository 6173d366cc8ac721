pub mod arbiter;
pub mod board;
pub mod chase;
pub mod corpus;
pub mod judge;
pub mod notation;
pub mod protection;
pub mod search;

pub use board::{Color, Move, Piece, PieceKind, Position, Square, SquareSet};
pub use chase::{Status, ThreatCache};
pub use judge::{GameResult, History, HistoryRecord, ViolationLevel};
