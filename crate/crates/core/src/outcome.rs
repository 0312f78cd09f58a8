//! Outcome classes and outcome evaluation.
//!
//! Under misère play a player with no legal move **wins**. The outcome of a
//! game says who wins under best play, as a function of who moves first:
//! `L` (Left wins regardless), `R` (Right wins regardless), `N` (the player
//! moving first, "next", wins), `P` (the player moving second, "previous",
//! wins).

use std::cmp::Ordering;
use std::fmt;

use crate::arena::{Arena, GameId};

/// Who wins under best play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// Left wins no matter who starts.
    L,
    /// Right wins no matter who starts.
    R,
    /// The second player wins.
    P,
    /// The first player wins.
    N,
}

/// Outcomes are ordered by how good they are for Left: `L` on top, `R` on the
/// bottom, `P` and `N` in between and incomparable with each other.
impl PartialOrd for Outcome {
    fn partial_cmp(&self, other: &Outcome) -> Option<Ordering> {
        use Outcome::*;
        match (self, other) {
            (a, b) if a == b => Some(Ordering::Equal),
            (L, _) | (_, R) => Some(Ordering::Greater),
            (R, _) | (_, L) => Some(Ordering::Less),
            // P vs N in either order.
            _ => None,
        }
    }
}

/// `a >= b` in the outcome order; false when they are incomparable.
pub fn outcome_ge(a: Outcome, b: Outcome) -> bool {
    a >= b
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::L => "L",
            Outcome::R => "R",
            Outcome::P => "P",
            Outcome::N => "N",
        };
        f.write_str(s)
    }
}

fn assemble(left_first_wins: bool, right_first_wins: bool) -> Outcome {
    match (left_first_wins, right_first_wins) {
        (true, true) => Outcome::N,
        (true, false) => Outcome::L,
        (false, true) => Outcome::R,
        (false, false) => Outcome::P,
    }
}

/// A player moving first wins iff they win for the mover-to-be in some
/// option, or — misère only — they have no option at all.
fn wins(outcome_of_option: Outcome, good_for: Outcome) -> bool {
    // Moving to an option the opponent must move from first: the mover wins
    // iff the option's outcome is P (opponent, now first, loses) or wholly
    // in the mover's favor.
    outcome_of_option == Outcome::P || outcome_of_option == good_for
}

impl Arena {
    /// Misère outcome of `g`: a player stuck without a move wins.
    pub fn misere_outcome(&mut self, g: GameId) -> Outcome {
        if let Some(&o) = self.misere_cache.get(&g) {
            return o;
        }
        let (left, right) = {
            let n = self.node(g);
            (n.left().to_vec(), n.right().to_vec())
        };
        let left_first_wins = left.is_empty()
            || left
                .iter()
                .any(|&o| wins(self.misere_outcome(o), Outcome::L));
        let right_first_wins = right.is_empty()
            || right
                .iter()
                .any(|&o| wins(self.misere_outcome(o), Outcome::R));
        let o = assemble(left_first_wins, right_first_wins);
        self.misere_cache.insert(g, o);
        o
    }

    /// Normal-play outcome of `g`: a player stuck without a move loses.
    pub fn normal_outcome(&mut self, g: GameId) -> Outcome {
        if let Some(&o) = self.normal_cache.get(&g) {
            return o;
        }
        let (left, right) = {
            let n = self.node(g);
            (n.left().to_vec(), n.right().to_vec())
        };
        let left_first_wins = left
            .iter()
            .any(|&o| wins(self.normal_outcome(o), Outcome::L));
        let right_first_wins = right
            .iter()
            .any(|&o| wins(self.normal_outcome(o), Outcome::R));
        let o = assemble(left_first_wins, right_first_wins);
        self.normal_cache.insert(g, o);
        o
    }

    /// Misère outcome of the disjunctive sum `a + b`, computed over pairs of
    /// component positions without interning any sum position.
    ///
    /// Agrees with `misere_outcome(sum(a, b))` but stays cheap when the same
    /// components are summed against many partners: the memo table is keyed
    /// on unordered id pairs, so work is shared across calls.
    pub fn sum_outcome(&mut self, a: GameId, b: GameId) -> Outcome {
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(&o) = self.sum_outcome_cache.get(&key) {
            return o;
        }
        let (a_left, a_right, b_left, b_right) = {
            let na = self.node(a);
            let nb = self.node(b);
            (
                na.left().to_vec(),
                na.right().to_vec(),
                nb.left().to_vec(),
                nb.right().to_vec(),
            )
        };
        let left_first_wins = (a_left.is_empty() && b_left.is_empty())
            || a_left
                .iter()
                .any(|&o| wins(self.sum_outcome(o, b), Outcome::L))
            || b_left
                .iter()
                .any(|&o| wins(self.sum_outcome(a, o), Outcome::L));
        let right_first_wins = (a_right.is_empty() && b_right.is_empty())
            || a_right
                .iter()
                .any(|&o| wins(self.sum_outcome(o, b), Outcome::R))
            || b_right
                .iter()
                .any(|&o| wins(self.sum_outcome(a, o), Outcome::R));
        let o = assemble(left_first_wins, right_first_wins);
        self.sum_outcome_cache.insert(key, o);
        o
    }
}
