mod common;

use std::collections::{BTreeSet, HashMap};

use common::{move_text, Naive};
use proptest::prelude::*;
use xq_core::board::{perft, perft_divide, START_FEN};
use xq_core::Position;

fn core_moves(pos: &Position) -> BTreeSet<String> {
    pos.clone()
        .generate_moves()
        .iter()
        .map(|m| m.to_string())
        .collect()
}

fn naive_moves(fen: &str) -> BTreeSet<String> {
    Naive::from_fen(fen)
        .legal_moves()
        .into_iter()
        .map(move_text)
        .collect()
}

#[test]
fn perft_start_matches_naive_generator() {
    let naive = Naive::from_fen(START_FEN);
    let mut pos = Position::startpos();
    for depth in 1..=3 {
        assert_eq!(perft(&mut pos, depth), naive.perft(depth), "depth {depth}");
    }
    assert_eq!(perft(&mut pos, 0), 1);
}

#[test]
fn perft_start_known_counts() {
    let mut pos = Position::startpos();
    let counts: Vec<u64> = (1..=3).map(|d| perft(&mut pos, d)).collect();
    assert_eq!(counts, [44, 1920, 79666]);
}

#[test]
fn divide_partitions_total() {
    let mut pos = Position::startpos();
    let split = perft_divide(&mut pos, 3);
    assert_eq!(split.len(), 44);
    assert_eq!(split.iter().map(|(_, n)| n).sum::<u64>(), 79666);
}

#[test]
fn move_sets_match_naive_on_playouts() {
    for pos in common::midgame_positions(11, 300) {
        let fen = pos.to_fen();
        assert_eq!(core_moves(&pos), naive_moves(&fen), "{fen}");
    }
}

#[test]
fn move_sets_match_naive_on_sparse_positions() {
    for pos in common::sparse_positions(12, 2000) {
        let fen = pos.to_fen();
        assert_eq!(core_moves(&pos), naive_moves(&fen), "{fen}");
    }
}

#[test]
fn perft_three_matches_naive_on_midgames() {
    for pos in common::midgame_positions(13, 5) {
        let fen = pos.to_fen();
        let mut p = pos.clone();
        assert_eq!(perft(&mut p, 3), Naive::from_fen(&fen).perft(3), "{fen}");
    }
}

#[test]
fn no_hash_collisions_in_playouts() {
    let mut rng = common::rng(14);
    let mut seen: HashMap<u64, String> = HashMap::new();
    for _ in 0..200 {
        let mut pos = Position::startpos();
        for _ in 0..150 {
            let board = pos.to_fen();
            if let Some(prev) = seen.insert(pos.hash(), board.clone()) {
                assert_eq!(prev, board, "hash collision");
            }
            let moves = pos.generate_moves();
            let Some(&m) = rand::seq::SliceRandom::choose(moves.as_slice(), &mut rng) else {
                break;
            };
            pos.make_move(m);
        }
    }
    assert!(seen.len() > 10_000);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn make_unmake_restores(seed in any::<u64>(), plies in 1usize..80) {
        let mut rng = common::rng(seed);
        let mut pos = Position::startpos();
        let mut stack = Vec::new();
        let mut fens = Vec::new();
        for _ in 0..plies {
            let moves = pos.generate_moves();
            let Some(&m) = rand::seq::SliceRandom::choose(moves.as_slice(), &mut rng) else { break };
            fens.push((pos.to_fen(), pos.hash()));
            stack.push(pos.make_move(m));
            prop_assert_eq!(pos.hash(), pos.compute_hash());
        }
        while let Some(u) = stack.pop() {
            pos.unmake_move(u);
            let (fen, hash) = fens.pop().unwrap();
            prop_assert_eq!(pos.to_fen(), fen);
            prop_assert_eq!(pos.hash(), hash);
        }
    }

    #[test]
    fn fen_round_trips(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        if let Some(pos) = common::random_playout(&mut rng, 40) {
            let back = Position::from_fen(&pos.to_fen()).unwrap();
            prop_assert_eq!(back.to_fen(), pos.to_fen());
            prop_assert_eq!(back.hash(), pos.hash());
        }
    }

    #[test]
    fn mirror_is_an_involution(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        if let Some(pos) = common::random_playout(&mut rng, 30) {
            let mirrored = pos.color_mirror();
            prop_assert_eq!(mirrored.color_mirror().to_fen(), pos.to_fen());
        }
    }
}
