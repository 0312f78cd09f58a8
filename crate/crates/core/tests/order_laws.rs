//! Order-theoretic laws of the misère and normal-play comparisons, checked
//! exhaustively on small days and by property tests on random trees.

mod common;

use misere_core::{outcome_ge, Arena, GameId, Outcome, Poset};
use proptest::prelude::*;

fn flip(outcome: Outcome) -> Outcome {
    match outcome {
        Outcome::L => Outcome::R,
        Outcome::R => Outcome::L,
        other => other,
    }
}

/// Build the formal day-2 tree whose sides are the day-1 subsets selected
/// by two 4-bit masks.
fn day2_from_masks(arena: &mut Arena, left_mask: u32, right_mask: u32) -> GameId {
    let day1 = common::day1_games(arena);
    let side = |mask: u32| -> Vec<GameId> {
        day1.iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &g)| g)
            .collect()
    };
    let (left, right) = (side(left_mask), side(right_mask));
    arena.intern(left, right)
}

fn day3_from_indices(arena: &mut Arena, left: &[usize], right: &[usize]) -> GameId {
    let day2 = common::day2_games(arena);
    let pick = |indices: &[usize]| -> Vec<GameId> { indices.iter().map(|&i| day2[i]).collect() };
    let (l, r) = (pick(left), pick(right));
    arena.intern(l, r)
}

#[test]
fn misere_order_is_reflexive_on_day_two() {
    let mut arena = Arena::new();
    for g in common::day2_games(&mut arena) {
        assert!(arena.ge_misere(g, g));
    }
}

#[test]
fn misere_order_is_antisymmetric_on_canonical_forms() {
    let mut arena = Arena::new();
    let day2 = common::day2_games(&mut arena);
    for &g in &day2 {
        for &h in &day2 {
            if arena.ge_misere(g, h) && arena.ge_misere(h, g) {
                assert_eq!(g, h, "two distinct canonical forms compare equal");
            }
        }
    }
}

#[test]
fn misere_order_is_transitive_on_day_two() {
    let mut arena = Arena::new();
    let day2 = common::day2_games(&mut arena);
    let poset = Poset::build(&mut arena, day2);
    let closed = poset.relation().transitive_closure();
    assert_eq!(*poset.relation(), closed);
}

#[test]
fn conjugation_reverses_the_order() {
    let mut arena = Arena::new();
    let day2 = common::day2_games(&mut arena);
    for &g in &day2 {
        for &h in &day2 {
            let forward = arena.ge_misere(g, h);
            let cg = arena.conjugate(g);
            let ch = arena.conjugate(h);
            assert_eq!(forward, arena.ge_misere(ch, cg));
        }
    }
}

#[test]
fn trivial_comparison_implies_the_misere_order() {
    let mut arena = Arena::new();
    let day2 = common::day2_games(&mut arena);
    for &g in &day2 {
        for &h in &day2 {
            if arena.ge_trivial(g, h) {
                assert!(arena.ge_misere(g, h), "trivial comparison over-approximates");
            }
        }
    }
}

#[test]
fn mismatched_ends_block_the_comparison() {
    let mut arena = Arena::new();
    let day2 = common::day2_games(&mut arena);
    for &g in &day2 {
        for &h in &day2 {
            if arena.is_left_end(h) && !arena.is_left_end(g) {
                assert!(!arena.ge_misere(g, h));
            }
            if arena.is_right_end(g) && !arena.is_right_end(h) {
                assert!(!arena.ge_misere(g, h));
            }
        }
    }
}

#[test]
fn games_above_zero_are_left_ends_with_tame_right_options() {
    let mut arena = Arena::new();
    let zero = arena.zero();
    let star = arena.star();
    let one = arena.one();
    let day2 = common::day2_games(&mut arena);
    for &g in &day2 {
        let expected = arena.is_left_end(g)
            && arena
                .node(g)
                .right()
                .iter()
                .all(|&r| r == star || r == one);
        assert_eq!(arena.ge_misere(g, zero), expected, "mischaracterized {g:?}");
    }
}

#[test]
fn normal_play_comparisons_match_the_classical_values() {
    let mut arena = Arena::new();
    let zero = arena.zero();
    let star = arena.star();
    let one = arena.one();
    let one_bar = arena.one_bar();

    assert!(arena.ge_normal(one, zero) && !arena.ge_normal(zero, one));
    assert!(arena.ge_normal(zero, one_bar) && !arena.ge_normal(one_bar, zero));
    assert!(arena.ge_normal(one, one_bar) && !arena.ge_normal(one_bar, one));
    assert!(arena.ge_normal(one, star) && !arena.ge_normal(star, one));
    assert!(arena.ge_normal(star, one_bar) && !arena.ge_normal(one_bar, star));
    assert!(!arena.ge_normal(star, zero) && !arena.ge_normal(zero, star));

    // * + * is a genuine normal-play zero, unlike its misère counterpart.
    let double_star = arena.sum(star, star);
    assert!(arena.ge_normal(double_star, zero) && arena.ge_normal(zero, double_star));
    assert!(!arena.eq_misere(double_star, zero));
}

#[test]
fn distinguish_succeeds_exactly_on_inequivalent_pairs() {
    let mut arena = Arena::new();
    let day1 = common::day1_games(&mut arena);
    for &g in &day1 {
        for &h in &day1 {
            let result = arena.distinguish(g, h);
            if arena.eq_misere(g, h) {
                assert!(result.is_err());
            } else {
                let witness = result.expect("inequivalent pair must be separable");
                assert!(witness.verify(&mut arena));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn comparison_or_witness_never_both(
        (gl, gr) in (0..16u32, 0..16u32),
        (hl, hr) in (0..16u32, 0..16u32),
    ) {
        let mut arena = Arena::new();
        let g = day2_from_masks(&mut arena, gl, gr);
        let h = day2_from_masks(&mut arena, hl, hr);
        let holds = arena.ge_misere(g, h);
        let witness = arena.witness_a(g, h);
        prop_assert_eq!(holds, witness.is_err(), "ge and witness_a must partition pairs");
        if let Ok(w) = witness {
            prop_assert!(w.verify(&mut arena));
        }
    }

    #[test]
    fn outcomes_flip_under_conjugation(
        left in prop::collection::vec(0..256usize, 0..6),
        right in prop::collection::vec(0..256usize, 0..6),
    ) {
        let mut arena = Arena::new();
        let g = day3_from_indices(&mut arena, &left, &right);
        let cg = arena.conjugate(g);
        prop_assert_eq!(arena.misere_outcome(cg), flip(arena.misere_outcome(g)));
        prop_assert_eq!(arena.normal_outcome(cg), flip(arena.normal_outcome(g)));
    }

    #[test]
    fn conjugation_is_an_involution(
        left in prop::collection::vec(0..256usize, 0..6),
        right in prop::collection::vec(0..256usize, 0..6),
    ) {
        let mut arena = Arena::new();
        let g = day3_from_indices(&mut arena, &left, &right);
        let cg = arena.conjugate(g);
        prop_assert_eq!(arena.conjugate(cg), g);
    }

    #[test]
    fn sums_commute_and_associate_structurally(
        a in (0..16u32, 0..16u32),
        b in (0..16u32, 0..16u32),
        c in (0..16u32, 0..16u32),
    ) {
        let mut arena = Arena::new();
        let ga = day2_from_masks(&mut arena, a.0, a.1);
        let gb = day2_from_masks(&mut arena, b.0, b.1);
        let gc = day2_from_masks(&mut arena, c.0, c.1);
        let ab = arena.sum(ga, gb);
        let ba = arena.sum(gb, ga);
        prop_assert_eq!(ab, ba);
        let ab_c = arena.sum(ab, gc);
        let bc = arena.sum(gb, gc);
        let a_bc = arena.sum(ga, bc);
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn paired_outcome_matches_the_materialized_sum(
        a in (0..16u32, 0..16u32),
        b in (0..16u32, 0..16u32),
    ) {
        let mut arena = Arena::new();
        let ga = day2_from_masks(&mut arena, a.0, a.1);
        let gb = day2_from_masks(&mut arena, b.0, b.1);
        let materialized = arena.sum(ga, gb);
        prop_assert_eq!(arena.sum_outcome(ga, gb), arena.misere_outcome(materialized));
    }

    #[test]
    fn bounded_comparison_is_sound_on_day_one_contexts(
        (gl, gr) in (0..16u32, 0..16u32),
        (hl, hr) in (0..16u32, 0..16u32),
    ) {
        let mut arena = Arena::new();
        let g = day2_from_masks(&mut arena, gl, gr);
        let h = day2_from_masks(&mut arena, hl, hr);
        if arena.ge_misere(g, h) {
            for x in common::day1_games(&mut arena) {
                let og = arena.sum_outcome(g, x);
                let oh = arena.sum_outcome(h, x);
                prop_assert!(outcome_ge(og, oh), "context {x:?} flips the comparison");
            }
        }
    }
}
