//! Shared fixtures for the integration suites.
#![allow(dead_code)]

use misere_core::{Arena, GameId};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// The four games born by day 1: `0`, `*`, `1`, `~1`.
pub fn day1_games(arena: &mut Arena) -> Vec<GameId> {
    vec![arena.zero(), arena.star(), arena.one(), arena.one_bar()]
}

/// All 256 formal games whose options are games born by day 1. Every one
/// is canonical, so this is also the day-2 census.
pub fn day2_games(arena: &mut Arena) -> Vec<GameId> {
    let day1 = day1_games(arena);
    let sets: Vec<Vec<GameId>> = (0..16u32)
        .map(|mask| {
            day1.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &g)| g)
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(256);
    for left in &sets {
        for right in &sets {
            out.push(arena.intern(left.clone(), right.clone()));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Uniformly sampled formal trees born by day 3: each day-2 game joins
/// each side independently with probability 1/2. Seeded, so reruns see the
/// same sample.
pub fn day3_sample(arena: &mut Arena, count: usize, seed: u64) -> Vec<GameId> {
    let day2 = day2_games(arena);
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let pick = |rng: &mut StdRng| -> Vec<GameId> {
                day2.iter()
                    .copied()
                    .filter(|_| rng.random_bool(0.5))
                    .collect()
            };
            let left = pick(&mut rng);
            let right = pick(&mut rng);
            arena.intern(left, right)
        })
        .collect()
}

/// Every impartial formal tree born by day 4: both sides always share one
/// option set. There are 2^16 = 65,536 of them.
pub fn impartial_trees_born_by_four(arena: &mut Arena) -> Vec<GameId> {
    let mut level = vec![arena.zero()];
    for _ in 0..3 {
        level = impartial_successors(arena, &level);
    }
    assert_eq!(level.len(), 16);
    impartial_successors(arena, &level)
}

fn impartial_successors(arena: &mut Arena, pool: &[GameId]) -> Vec<GameId> {
    (0..1u32 << pool.len())
        .map(|mask| {
            let options: Vec<GameId> = pool
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &g)| g)
                .collect();
            arena.intern(options.clone(), options)
        })
        .collect()
}
