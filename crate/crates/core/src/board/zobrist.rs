//! Zobrist keys. The tables are generated at compile time from a fixed
//! splitmix64 seed, so keys are identical across runs and builds.

use super::types::{Color, Piece, Square, NUM_SQUARES};

const SEED: u64 = 0x5851_F42D_4C95_7F2D;

const fn splitmix64(state: u64) -> (u64, u64) {
    let next = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = next;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (next, z ^ (z >> 31))
}

struct Keys {
    pieces: [[u64; NUM_SQUARES]; 14],
    side: u64,
}

const fn build_keys() -> Keys {
    let mut pieces = [[0u64; NUM_SQUARES]; 14];
    let mut state = SEED;
    let mut p = 0;
    while p < 14 {
        let mut sq = 0;
        while sq < NUM_SQUARES {
            let (s, k) = splitmix64(state);
            state = s;
            pieces[p][sq] = k;
            sq += 1;
        }
        p += 1;
    }
    let (_, side) = splitmix64(state);
    Keys { pieces, side }
}

static KEYS: Keys = build_keys();

#[inline]
pub fn piece_key(piece: Piece, sq: Square) -> u64 {
    KEYS.pieces[piece.index()][sq.index()]
}

/// Mixed in when Black is to move.
#[inline]
pub fn side_key() -> u64 {
    KEYS.side
}

#[inline]
pub fn side_component(side: Color) -> u64 {
    match side {
        Color::Red => 0,
        Color::Black => KEYS.side,
    }
}
