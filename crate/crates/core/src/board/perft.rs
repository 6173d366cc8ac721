use super::position::Position;
use super::types::Move;

/// Number of legal move sequences of exactly `depth` plies.
pub fn perft(pos: &mut Position, depth: u32) -> u64 {
    if depth == 0 {
        return 1;
    }
    let moves = pos.generate_moves();
    if depth == 1 {
        return moves.len() as u64;
    }
    let mut total = 0;
    for m in moves {
        let undo = pos.make_move(m);
        total += perft(pos, depth - 1);
        pos.unmake_move(undo);
    }
    total
}

/// Per-root-move split of `perft(pos, depth)`, in generation order.
pub fn perft_divide(pos: &mut Position, depth: u32) -> Vec<(Move, u64)> {
    if depth == 0 {
        return Vec::new();
    }
    let moves = pos.generate_moves();
    moves
        .into_iter()
        .map(|m| {
            let undo = pos.make_move(m);
            let n = perft(pos, depth - 1);
            pos.unmake_move(undo);
            (m, n)
        })
        .collect()
}
