//! The misère partial order on games, with checkable certificates.
//!
//! `g >= h` under misère play means Left always prefers `g`: in every
//! disjunctive context `T`, the misère outcome of `g + T` is at least that of
//! `h + T` in the outcome order. The comparison itself is decided by a finite
//! recursion ([`Arena::ge_misere`]); its companion relation
//! ([`Arena::downlinked`]) captures the single-move interleavings the
//! recursion rules out.
//!
//! When a comparison fails, that failure is demonstrable: there is a concrete
//! context in which `h` outperforms `g`. The `witness_*` constructors build
//! such a context by recursion over the failed comparison and return it as a
//! [`Witness`] carrying machine-checkable outcome bounds. Every witness is
//! re-verified by direct outcome evaluation before it is handed out, so a bug
//! in the construction shows up as a panic here, never as a silently wrong
//! certificate.

use thiserror::Error;

use crate::arena::{Arena, GameId};
use crate::outcome::{outcome_ge, Outcome};

/// Requested a separating certificate for a pair that is actually ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no separating context exists: game {g} >= game {h} under misère comparison")]
pub struct OrderedPairError {
    pub g: GameId,
    pub h: GameId,
}

/// Requested a downlink certificate for a pair that is not downlinked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("game {g} is not downlinked to game {h}")]
pub struct NotDownlinkedError {
    pub g: GameId,
    pub h: GameId,
}

/// What a witness context demonstrates about its pair of games.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// Separates on "Left wins moving first": adding the context makes `h` a
    /// first-player win for Left but not `g`.
    FormA,
    /// Separates on "Right loses moving first": adding the context makes `h`
    /// safe for Left as second player but makes `g` a win for Right moving
    /// first.
    FormB,
    /// A context in which the two games have different misère outcomes.
    DistinguishingContext,
    /// A context certifying a downlink: both sums land on the boundary, `g`
    /// at most a second-player win, `h` at least one.
    DownlinkContext,
}

/// One-sided bound on a misère outcome, in the outcome order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeBound {
    AtMostP,
    AtLeastP,
    AtMostN,
    AtLeastN,
}

impl OutcomeBound {
    /// Does `outcome` satisfy this bound?
    pub fn holds(self, outcome: Outcome) -> bool {
        match self {
            OutcomeBound::AtMostP => outcome_ge(Outcome::P, outcome),
            OutcomeBound::AtLeastP => outcome_ge(outcome, Outcome::P),
            OutcomeBound::AtMostN => outcome_ge(Outcome::N, outcome),
            OutcomeBound::AtLeastN => outcome_ge(outcome, Outcome::N),
        }
    }
}

impl std::fmt::Display for OutcomeBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OutcomeBound::AtMostP => "<= P",
            OutcomeBound::AtLeastP => ">= P",
            OutcomeBound::AtMostN => "<= N",
            OutcomeBound::AtLeastN => ">= N",
        };
        f.write_str(s)
    }
}

/// A context game together with the outcome bounds it certifies.
///
/// `certified` lists, for each game of the pair the witness was built for,
/// the bound that the misère outcome of `game + context` must satisfy.
/// [`Witness::verify`] re-checks those bounds by direct evaluation; the
/// constructors only return witnesses that pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub context: GameId,
    pub certified: [(GameId, OutcomeBound); 2],
}

impl Witness {
    /// Check the certified bounds by evaluating both sums.
    pub fn verify(&self, arena: &mut Arena) -> bool {
        self.certified
            .iter()
            .all(|&(game, bound)| bound.holds(arena.sum_outcome(game, self.context)))
    }
}

impl Arena {
    /// Misère comparison: `g >= h` as Left's preference in every disjunctive
    /// context.
    ///
    /// The recursion refuses the comparison exactly when one of four things
    /// goes wrong: `g` is downlinked to some Left option of `h`; some Right
    /// option of `g` is downlinked to `h`; `h` is a Left end but `g` is not;
    /// or `g` is a Right end but `h` is not.
    pub fn ge_misere(&mut self, g: GameId, h: GameId) -> bool {
        if let Some(&v) = self.ge_misere_cache.get(&(g, h)) {
            return v;
        }
        let (g_right, h_left) = {
            let (ng, nh) = (self.node(g), self.node(h));
            (ng.right().to_vec(), nh.left().to_vec())
        };
        let g_left_end = self.is_left_end(g);
        let h_right_end = self.is_right_end(h);
        // End conditions first: they need no recursion at all.
        let value = if (h_left.is_empty() && !g_left_end)
            || (g_right.is_empty() && !h_right_end)
        {
            false
        } else {
            // The measure birthday(g) + birthday(h) strictly decreases into
            // every nested comparison, so the mutual recursion with
            // `downlinked` terminates.
            let measure = self.birthday(g) + self.birthday(h);
            let mut ok = true;
            for hl in h_left {
                debug_assert!(self.birthday(g) + self.birthday(hl) < measure);
                if self.downlinked(g, hl) {
                    ok = false;
                    break;
                }
            }
            if ok {
                for gr in g_right {
                    debug_assert!(self.birthday(gr) + self.birthday(h) < measure);
                    if self.downlinked(gr, h) {
                        ok = false;
                        break;
                    }
                }
            }
            ok
        };
        self.ge_misere_cache.insert((g, h), value);
        value
    }

    /// Misère equivalence: `>=` in both directions.
    pub fn eq_misere(&mut self, g: GameId, h: GameId) -> bool {
        self.ge_misere(g, h) && self.ge_misere(h, g)
    }

    /// `g` is downlinked to `h` when no Left option of `g` is `>= h` and `g`
    /// is `>=` no Right option of `h` — the pair sits strictly between the
    /// two option fronts.
    pub fn downlinked(&mut self, g: GameId, h: GameId) -> bool {
        if let Some(&v) = self.downlinked_cache.get(&(g, h)) {
            return v;
        }
        let (g_left, h_right) = {
            let (ng, nh) = (self.node(g), self.node(h));
            (ng.left().to_vec(), nh.right().to_vec())
        };
        let measure = self.birthday(g) + self.birthday(h);
        let mut value = true;
        for gl in g_left {
            debug_assert!(self.birthday(gl) + self.birthday(h) < measure);
            if self.ge_misere(gl, h) {
                value = false;
                break;
            }
        }
        if value {
            for hr in h_right {
                debug_assert!(self.birthday(g) + self.birthday(hr) < measure);
                if self.ge_misere(g, hr) {
                    value = false;
                    break;
                }
            }
        }
        self.downlinked_cache.insert((g, h), value);
        value
    }

    /// Normal-play comparison (`g >= h` when a player with no move loses).
    /// Kept alongside the misère order for contrast: the two orders disagree
    /// already on day-1 games.
    pub fn ge_normal(&mut self, g: GameId, h: GameId) -> bool {
        if let Some(&v) = self.ge_normal_cache.get(&(g, h)) {
            return v;
        }
        let (g_right, h_left) = {
            let (ng, nh) = (self.node(g), self.node(h));
            (ng.right().to_vec(), nh.left().to_vec())
        };
        let mut value = true;
        for gr in g_right {
            if self.ge_normal(h, gr) {
                value = false;
                break;
            }
        }
        if value {
            for hl in h_left {
                if self.ge_normal(hl, g) {
                    value = false;
                    break;
                }
            }
        }
        self.ge_normal_cache.insert((g, h), value);
        value
    }

    /// Syntactic sufficient condition for `g >= h`: every Left option of `h`
    /// is literally a Left option of `g`, every Right option of `g` is
    /// literally a Right option of `h`, and the two games agree on being
    /// Left/Right ends. Pure set containment on interned ids — no game
    /// evaluation at all.
    pub fn ge_trivial(&self, g: GameId, h: GameId) -> bool {
        let (ng, nh) = (self.node(g), self.node(h));
        let (g_left, g_right) = (ng.left(), ng.right());
        let (h_left, h_right) = (nh.left(), nh.right());
        h_left.iter().all(|o| g_left.contains(o))
            && g_right.iter().all(|o| h_right.contains(o))
            && g_left.is_empty() == h_left.is_empty()
            && g_right.is_empty() == h_right.is_empty()
    }

    /// Context demonstrating `¬(g >= h)` by separating on "Left wins moving
    /// first": in the returned context, `h` is a first-player win for Left
    /// while `g` is not.
    pub fn witness_a(&mut self, g: GameId, h: GameId) -> Result<Witness, OrderedPairError> {
        if self.ge_misere(g, h) {
            return Err(OrderedPairError { g, h });
        }
        let context = self.witness_a_context(g, h);
        let witness = Witness {
            kind: WitnessKind::FormA,
            context,
            certified: [(g, OutcomeBound::AtMostP), (h, OutcomeBound::AtLeastN)],
        };
        assert!(
            witness.verify(self),
            "separating context failed its own bounds for games {g} and {h}"
        );
        Ok(witness)
    }

    /// Context demonstrating `¬(g >= h)` by separating on "Right loses moving
    /// first": in the returned context, `h` is safe for Left moving second
    /// while `g` is a win for Right moving first.
    pub fn witness_b(&mut self, g: GameId, h: GameId) -> Result<Witness, OrderedPairError> {
        if self.ge_misere(g, h) {
            return Err(OrderedPairError { g, h });
        }
        let context = self.witness_b_context(g, h);
        let witness = Witness {
            kind: WitnessKind::FormB,
            context,
            certified: [(g, OutcomeBound::AtMostN), (h, OutcomeBound::AtLeastP)],
        };
        assert!(
            witness.verify(self),
            "separating context failed its own bounds for games {g} and {h}"
        );
        Ok(witness)
    }

    /// A context in which `g` and `h` take different misère outcomes.
    ///
    /// Requires `¬(g >= h)`; the certified bounds pin the two sums to
    /// disjoint outcome sets, so inequality of outcomes follows.
    pub fn distinguish(&mut self, g: GameId, h: GameId) -> Result<Witness, OrderedPairError> {
        let base = self.witness_a(g, h)?;
        Ok(Witness {
            kind: WitnessKind::DistinguishingContext,
            ..base
        })
    }

    /// Context certifying that `g` is downlinked to `h`: the sum with `g`
    /// is at most a second-player win while the sum with `h` is at least one.
    pub fn downlink_witness(&mut self, g: GameId, h: GameId) -> Result<Witness, NotDownlinkedError> {
        if !self.downlinked(g, h) {
            return Err(NotDownlinkedError { g, h });
        }
        let context = self.downlink_context(g, h);
        let witness = Witness {
            kind: WitnessKind::DownlinkContext,
            context,
            certified: [(g, OutcomeBound::AtMostP), (h, OutcomeBound::AtLeastP)],
        };
        assert!(
            witness.verify(self),
            "downlink context failed its own bounds for games {g} and {h}"
        );
        Ok(witness)
    }

    /// Build the `FormA` context for an unordered pair. Callers guarantee
    /// `¬(g >= h)`.
    fn witness_a_context(&mut self, g: GameId, h: GameId) -> GameId {
        if let Some(&c) = self.witness_a_cache.get(&(g, h)) {
            return c;
        }
        let (g_left, g_right, h_left, h_right) = self.option_lists(g, h);
        let mut context = None;
        for &hl in &h_left {
            if self.downlinked(g, hl) {
                context = Some(self.downlink_context(g, hl));
                break;
            }
        }
        if context.is_none() {
            for &gr in &g_right {
                if self.downlinked(gr, h) {
                    let u = self.downlink_context(gr, h);
                    context = Some(self.guarded_by_left_adjoints(u, &g_left));
                    break;
                }
            }
        }
        let context = context.unwrap_or_else(|| {
            if h_left.is_empty() && !g_left.is_empty() {
                let u = self.left_end_separation_context(&g_left, &h_right);
                self.guarded_by_left_adjoints(u, &g_left)
            } else if g_right.is_empty() && !h_right.is_empty() {
                self.right_end_separation_context(&g_left, &h_right)
            } else {
                unreachable!("pair is ordered; no separating context exists")
            }
        });
        self.witness_a_cache.insert((g, h), context);
        context
    }

    /// Build the `FormB` context for an unordered pair. Callers guarantee
    /// `¬(g >= h)`.
    fn witness_b_context(&mut self, g: GameId, h: GameId) -> GameId {
        if let Some(&c) = self.witness_b_cache.get(&(g, h)) {
            return c;
        }
        let (g_left, g_right, h_left, h_right) = self.option_lists(g, h);
        let mut context = None;
        for &hl in &h_left {
            if self.downlinked(g, hl) {
                let t = self.downlink_context(g, hl);
                context = Some(self.guarded_by_right_adjoints(t, &h_right));
                break;
            }
        }
        if context.is_none() {
            for &gr in &g_right {
                if self.downlinked(gr, h) {
                    context = Some(self.downlink_context(gr, h));
                    break;
                }
            }
        }
        let context = context.unwrap_or_else(|| {
            if h_left.is_empty() && !g_left.is_empty() {
                self.left_end_separation_context(&g_left, &h_right)
            } else if g_right.is_empty() && !h_right.is_empty() {
                let t = self.right_end_separation_context(&g_left, &h_right);
                self.guarded_by_right_adjoints(t, &h_right)
            } else {
                unreachable!("pair is ordered; no separating context exists")
            }
        });
        self.witness_b_cache.insert((g, h), context);
        context
    }

    /// Build the certifying context for a downlinked pair. Callers guarantee
    /// `downlinked(g, h)`.
    ///
    /// The general construction answers every component move: Left moves of
    /// `g` are punished by a separating context for the option, Right moves
    /// of `h` symmetrically, and moves inside either game's other option set
    /// are answered by the matching adjoint. Pairs involving ends would leave
    /// one player stranded in that construction — stranded players *win* at
    /// misère — so those pairs get bespoke small contexts instead.
    fn downlink_context(&mut self, g: GameId, h: GameId) -> GameId {
        if let Some(&c) = self.downlink_context_cache.get(&(g, h)) {
            return c;
        }
        let z = self.zero();
        let (g_left, g_right, h_left, h_right) = self.option_lists(g, h);
        let context = if g == z && h == z {
            self.star()
        } else if g == z && h_right.is_empty() {
            let right: Vec<GameId> = h_left.iter().map(|&o| self.adjoint(o)).collect();
            self.intern(vec![z], right)
        } else if h == z && g_left.is_empty() {
            let left: Vec<GameId> = g_right.iter().map(|&o| self.adjoint(o)).collect();
            self.intern(left, vec![z])
        } else {
            let mut left: Vec<GameId> = h_right
                .iter()
                .map(|&hr| self.witness_b_context(g, hr))
                .collect();
            left.extend(g_right.iter().map(|&o| self.adjoint(o)));
            let mut right: Vec<GameId> = g_left
                .iter()
                .map(|&gl| self.witness_a_context(gl, h))
                .collect();
            right.extend(h_left.iter().map(|&o| self.adjoint(o)));
            self.intern(left, right)
        };
        self.downlink_context_cache.insert((g, h), context);
        context
    }

    /// Turn a `FormB` context into a `FormA` one: `{u | adjoints of g's Left
    /// options}`. Left's entering move goes to `u`; any later Left move by
    /// `g` is answered by the matching adjoint.
    fn guarded_by_left_adjoints(&mut self, u: GameId, g_left: &[GameId]) -> GameId {
        let right: Vec<GameId> = g_left.iter().map(|&o| self.adjoint(o)).collect();
        self.intern(vec![u], right)
    }

    /// Turn a `FormA` context into a `FormB` one: `{adjoints of h's Right
    /// options | t}` — the mirror of [`Self::guarded_by_left_adjoints`].
    fn guarded_by_right_adjoints(&mut self, t: GameId, h_right: &[GameId]) -> GameId {
        let left: Vec<GameId> = h_right.iter().map(|&o| self.adjoint(o)).collect();
        self.intern(left, vec![t])
    }

    /// Separating context for "`h` is a Left end, `g` is not": `{adjoints of
    /// h's Right options | {· | adjoints of g's Left options}}`.
    fn left_end_separation_context(&mut self, g_left: &[GameId], h_right: &[GameId]) -> GameId {
        let inner_right: Vec<GameId> = g_left.iter().map(|&o| self.adjoint(o)).collect();
        let inner = self.intern(Vec::new(), inner_right);
        let left: Vec<GameId> = h_right.iter().map(|&o| self.adjoint(o)).collect();
        self.intern(left, vec![inner])
    }

    /// Separating context for "`g` is a Right end, `h` is not": `{{adjoints
    /// of h's Right options | ·} | adjoints of g's Left options}` — the
    /// conjugate-shaped dual of [`Self::left_end_separation_context`].
    fn right_end_separation_context(&mut self, g_left: &[GameId], h_right: &[GameId]) -> GameId {
        let inner_left: Vec<GameId> = h_right.iter().map(|&o| self.adjoint(o)).collect();
        let inner = self.intern(inner_left, Vec::new());
        let right: Vec<GameId> = g_left.iter().map(|&o| self.adjoint(o)).collect();
        self.intern(vec![inner], right)
    }

    fn option_lists(
        &self,
        g: GameId,
        h: GameId,
    ) -> (Vec<GameId>, Vec<GameId>, Vec<GameId>, Vec<GameId>) {
        let (ng, nh) = (self.node(g), self.node(h));
        (
            ng.left().to_vec(),
            ng.right().to_vec(),
            nh.left().to_vec(),
            nh.right().to_vec(),
        )
    }
}
