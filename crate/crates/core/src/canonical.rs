//! Canonical forms: the unique simplest representative of each misère
//! equivalence class.
//!
//! A game is simplified by repeating two moves until neither applies, after
//! first canonicalizing every option:
//!
//! - **bypass** a reversible option: if a Left option `l` has a Right option
//!   `t` with `g >= t`, then `l` is a detour — replace it by `t`'s Left
//!   options (mirrored for Right);
//! - **remove** a dominated option: a Left option `<=` a different Left
//!   option contributes nothing (mirrored for Right).
//!
//! The single-step queries ([`Arena::dominated_left`],
//! [`Arena::reversible_left`], [`Arena::bypass_left`] and their mirrors) are
//! public so the rewrite system can be driven, and therefore audited, one
//! step at a time. [`Arena::canonicalize`] runs them to a fixpoint: all Left
//! bypasses, all Right bypasses, then one sweep of dominated-option removal,
//! repeated until nothing changes.
//!
//! The result is canonical: equivalent games simplify to the *same* interned
//! id, so misère equivalence testing on canonical forms is pointer equality.
//! Each simplification also records a [`SimplificationTrace`] — enough
//! information to replay the exact rewrite sequence step by step and land on
//! the same id, which makes the simplifier's work independently checkable.
//!
//! Two facts keep the rewrite honest, both asserted in debug builds: the
//! formal tree size strictly shrinks at every step (so the loop terminates),
//! and a bypass can never empty the side it rewrites — `g >= t` forces `t`
//! to have a Left option whenever `g` does, because a Left end can only
//! compare below another Left end.

use thiserror::Error;

use crate::arena::{Arena, GameId};

/// A simplification step does not apply: the named option is missing from
/// the position, or the comparison justifying the step does not hold there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("option {target} of game {game} cannot be simplified via {via}")]
pub struct NotReversibleError {
    /// The position the step was applied to.
    pub game: GameId,
    /// The option the step removes or rewrites.
    pub target: GameId,
    /// The option justifying the step: a dominating sibling, or the
    /// reversing move passed through.
    pub via: GameId,
}

/// One rewrite applied during simplification.
///
/// `target` is always an option of the position being rewritten; `via` is the
/// evidence: the dominating sibling option, or the Right (resp. Left) option
/// of `target` that the bypass reverses through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplificationStep {
    RemovedDominatedLeft { target: GameId, via: GameId },
    RemovedDominatedRight { target: GameId, via: GameId },
    BypassedLeft { target: GameId, via: GameId },
    BypassedRight { target: GameId, via: GameId },
}

/// Record of one game's simplification, replayable against the original.
///
/// `option_rewrites` maps each option to its canonical form (identity
/// rewrites are omitted); `steps` then lists the top-level rewrites in the
/// order they were applied. [`SimplificationTrace::replay`] re-applies the
/// whole record mechanically, re-checking each step's justification.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimplificationTrace {
    pub option_rewrites: Vec<(GameId, GameId)>,
    pub steps: Vec<SimplificationStep>,
}

impl SimplificationTrace {
    /// No rewriting happened: the game was already canonical.
    pub fn is_empty(&self) -> bool {
        self.option_rewrites.is_empty() && self.steps.is_empty()
    }

    /// Re-apply the recorded simplification to `start`, verifying each step.
    ///
    /// Returns the resulting game, which for a trace produced by
    /// [`Arena::canonicalize_with_trace`] is the canonical form of `start`.
    pub fn replay(&self, arena: &mut Arena, start: GameId) -> Result<GameId, NotReversibleError> {
        let rewrite = |o: GameId| {
            self.option_rewrites
                .iter()
                .find(|&&(from, _)| from == o)
                .map_or(o, |&(_, to)| to)
        };
        let (left, right) = {
            let n = arena.node(start);
            (
                n.left().iter().copied().map(rewrite).collect::<Vec<_>>(),
                n.right().iter().copied().map(rewrite).collect::<Vec<_>>(),
            )
        };
        let mut cur = arena.intern(left, right);
        for &step in &self.steps {
            cur = apply_step(arena, cur, step)?;
        }
        Ok(cur)
    }
}

fn apply_step(
    arena: &mut Arena,
    cur: GameId,
    step: SimplificationStep,
) -> Result<GameId, NotReversibleError> {
    use SimplificationStep::*;
    match step {
        BypassedLeft { target, via } => arena.bypass_left(cur, target, via),
        BypassedRight { target, via } => arena.bypass_right(cur, target, via),
        RemovedDominatedLeft { target, via } => {
            let left = arena.node(cur).left().to_vec();
            let justified = left.contains(&target)
                && left.contains(&via)
                && target != via
                && arena.ge_misere(via, target);
            if !justified {
                return Err(NotReversibleError {
                    game: cur,
                    target,
                    via,
                });
            }
            let right = arena.node(cur).right().to_vec();
            Ok(arena.intern(left.into_iter().filter(|&o| o != target).collect(), right))
        }
        RemovedDominatedRight { target, via } => {
            let right = arena.node(cur).right().to_vec();
            let justified = right.contains(&target)
                && right.contains(&via)
                && target != via
                && arena.ge_misere(target, via);
            if !justified {
                return Err(NotReversibleError {
                    game: cur,
                    target,
                    via,
                });
            }
            let left = arena.node(cur).left().to_vec();
            Ok(arena.intern(left, right.into_iter().filter(|&o| o != target).collect()))
        }
    }
}

impl Arena {
    /// Left options of `g` dominated by a *different* Left option, in stored
    /// order. For Left, dominated means `<=` a sibling.
    pub fn dominated_left(&mut self, g: GameId) -> Vec<GameId> {
        let left = self.node(g).left().to_vec();
        (0..left.len())
            .filter(|&i| (0..left.len()).any(|j| j != i && self.ge_misere(left[j], left[i])))
            .map(|i| left[i])
            .collect()
    }

    /// Right options of `g` dominated by a different Right option: those
    /// `>=` a sibling. Mirror of [`Self::dominated_left`].
    pub fn dominated_right(&mut self, g: GameId) -> Vec<GameId> {
        let right = self.node(g).right().to_vec();
        (0..right.len())
            .filter(|&i| (0..right.len()).any(|j| j != i && self.ge_misere(right[i], right[j])))
            .map(|i| right[i])
            .collect()
    }

    /// Reversible Left options of `g` as `(option, through)` pairs, in scan
    /// order: `through` is a Right option of `option` with `g >= through`,
    /// so moving to `option` invites a reversal Left cannot object to.
    pub fn reversible_left(&mut self, g: GameId) -> Vec<(GameId, GameId)> {
        let left = self.node(g).left().to_vec();
        let mut found = Vec::new();
        for l in left {
            for t in self.node(l).right().to_vec() {
                if self.ge_misere(g, t) {
                    found.push((l, t));
                }
            }
        }
        found
    }

    /// Reversible Right options of `g` as `(option, through)` pairs:
    /// `through` is a Left option of `option` with `through >= g`.
    pub fn reversible_right(&mut self, g: GameId) -> Vec<(GameId, GameId)> {
        let right = self.node(g).right().to_vec();
        let mut found = Vec::new();
        for r in right {
            for t in self.node(r).left().to_vec() {
                if self.ge_misere(t, g) {
                    found.push((r, t));
                }
            }
        }
        found
    }

    /// Replace the reversible Left option `target` of `g` by the Left
    /// options of `through`, the reversing move being bypassed.
    ///
    /// Fails with [`NotReversibleError`] unless `target` is a Left option of
    /// `g`, `through` a Right option of `target`, and `g >= through`.
    pub fn bypass_left(
        &mut self,
        g: GameId,
        target: GameId,
        through: GameId,
    ) -> Result<GameId, NotReversibleError> {
        let left = self.node(g).left().to_vec();
        let justified = left.contains(&target)
            && self.node(target).right().contains(&through)
            && self.ge_misere(g, through);
        if !justified {
            return Err(NotReversibleError {
                game: g,
                target,
                via: through,
            });
        }
        let replacement = self.node(through).left().to_vec();
        debug_assert!(
            !replacement.is_empty(),
            "a game with Left options compared above a Left end"
        );
        let mut new_left: Vec<GameId> = left.into_iter().filter(|&o| o != target).collect();
        new_left.extend(replacement);
        let right = self.node(g).right().to_vec();
        let before = self.tree_size(g);
        let next = self.intern(new_left, right);
        debug_assert!(self.tree_size(next) < before);
        Ok(next)
    }

    /// Replace the reversible Right option `target` of `g` by the Right
    /// options of `through`. Mirror of [`Self::bypass_left`].
    pub fn bypass_right(
        &mut self,
        g: GameId,
        target: GameId,
        through: GameId,
    ) -> Result<GameId, NotReversibleError> {
        let right = self.node(g).right().to_vec();
        let justified = right.contains(&target)
            && self.node(target).left().contains(&through)
            && self.ge_misere(through, g);
        if !justified {
            return Err(NotReversibleError {
                game: g,
                target,
                via: through,
            });
        }
        let replacement = self.node(through).right().to_vec();
        debug_assert!(
            !replacement.is_empty(),
            "a game with Right options compared below a Right end"
        );
        let mut new_right: Vec<GameId> = right.into_iter().filter(|&o| o != target).collect();
        new_right.extend(replacement);
        let left = self.node(g).left().to_vec();
        let before = self.tree_size(g);
        let next = self.intern(left, new_right);
        debug_assert!(self.tree_size(next) < before);
        Ok(next)
    }

    /// Canonical form of `g`: the unique simplest game misère-equivalent to
    /// `g`. Two games are equivalent exactly when their canonical forms are
    /// the same id.
    pub fn canonicalize(&mut self, g: GameId) -> GameId {
        self.canonicalize_with_trace(g).0
    }

    /// Canonical form of `g` together with the rewrite record that produced
    /// it.
    pub fn canonicalize_with_trace(&mut self, g: GameId) -> (GameId, SimplificationTrace) {
        if let Some((canon, trace)) = self.canonical_cache.get(&g) {
            return (*canon, trace.clone());
        }
        let (left, right) = {
            let n = self.node(g);
            (n.left().to_vec(), n.right().to_vec())
        };
        let mut option_rewrites = Vec::new();
        let mut rewrite_side = |arena: &mut Arena, side: &[GameId]| -> Vec<GameId> {
            side.iter()
                .map(|&o| {
                    let c = arena.canonicalize(o);
                    if c != o && !option_rewrites.iter().any(|&(from, _)| from == o) {
                        option_rewrites.push((o, c));
                    }
                    c
                })
                .collect()
        };
        let canon_left = rewrite_side(self, &left);
        let canon_right = rewrite_side(self, &right);
        let mut cur = self.intern(canon_left, canon_right);

        let mut steps = Vec::new();
        loop {
            let mut changed = false;
            while let Some((target, via)) = self.reversible_left(cur).into_iter().next() {
                cur = self
                    .bypass_left(cur, target, via)
                    .expect("the scan just established the bypass precondition");
                steps.push(SimplificationStep::BypassedLeft { target, via });
                changed = true;
            }
            while let Some((target, via)) = self.reversible_right(cur).into_iter().next() {
                cur = self
                    .bypass_right(cur, target, via)
                    .expect("the scan just established the bypass precondition");
                steps.push(SimplificationStep::BypassedRight { target, via });
                changed = true;
            }
            if let Some(next) = self.drop_dominated(cur, &mut steps) {
                cur = next;
                changed = true;
            }
            if !changed {
                break;
            }
        }

        let trace = SimplificationTrace {
            option_rewrites,
            steps,
        };
        self.canonical_cache.insert(g, (cur, trace.clone()));
        // The result is canonical by construction; record that so later
        // queries against it return immediately.
        self.canonical_cache
            .entry(cur)
            .or_insert_with(|| (cur, SimplificationTrace::default()));
        (cur, trace)
    }

    /// Remove every dominated option on both sides at once.
    ///
    /// All options here are canonical, so equivalence is id equality and
    /// "dominated" always means *strictly* below (above) a sibling; the kept
    /// maximal (minimal) siblings are untouched by the sweep. Each removal is
    /// recorded against such a kept dominator, which keeps the one-step
    /// replay valid in recorded order.
    fn drop_dominated(
        &mut self,
        cur: GameId,
        steps: &mut Vec<SimplificationStep>,
    ) -> Option<GameId> {
        let dominated_left = self.dominated_left(cur);
        let dominated_right = self.dominated_right(cur);
        if dominated_left.is_empty() && dominated_right.is_empty() {
            return None;
        }
        let (left, right) = {
            let n = self.node(cur);
            (n.left().to_vec(), n.right().to_vec())
        };
        let new_left: Vec<GameId> = left
            .iter()
            .copied()
            .filter(|o| !dominated_left.contains(o))
            .collect();
        let new_right: Vec<GameId> = right
            .iter()
            .copied()
            .filter(|o| !dominated_right.contains(o))
            .collect();
        for &target in &dominated_left {
            let via = new_left
                .iter()
                .copied()
                .find(|&keep| self.ge_misere(keep, target))
                .expect("a dominated option always has an undominated dominator");
            steps.push(SimplificationStep::RemovedDominatedLeft { target, via });
        }
        for &target in &dominated_right {
            let via = new_right
                .iter()
                .copied()
                .find(|&keep| self.ge_misere(target, keep))
                .expect("a dominated option always has an undominated dominator");
            steps.push(SimplificationStep::RemovedDominatedRight { target, via });
        }
        let options_before = left.len() + right.len();
        let before = self.tree_size(cur);
        let next = self.intern(new_left, new_right);
        let n = self.node(next);
        debug_assert!(n.left().len() + n.right().len() < options_before);
        debug_assert!(self.tree_size(next) < before);
        Some(next)
    }
}
