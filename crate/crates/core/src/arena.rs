//! Interned store of game positions.
//!
//! Every position lives in an [`Arena`] exactly once: option lists are sorted
//! and deduplicated before lookup, so structurally equal games always share a
//! [`GameId`]. Ids are append-only and stable for the lifetime of the arena,
//! which lets every other module memoize on ids and id pairs. Interning and
//! cache fills require `&mut Arena` (single writer); anything already interned
//! can be read through `&Arena`.

use std::cmp::Ordering;
use std::collections::HashMap;

use indexmap::IndexSet;

use crate::canonical::SimplificationTrace;
use crate::outcome::Outcome;

/// Handle to an interned game position.
///
/// Ids are only meaningful for the arena that produced them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameId(pub(crate) u32);

impl GameId {
    /// Position of the game in its arena's insertion order.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Prints the raw id number; use [`Arena::print_game`] for game notation.
impl std::fmt::Display for GameId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A game position: the moves available to Left and to Right.
///
/// Both lists are sorted under the arena's structural order and contain no
/// duplicates; every entry was interned strictly earlier than this node, so
/// the store is acyclic by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameNode {
    left: Box<[GameId]>,
    right: Box<[GameId]>,
}

impl GameNode {
    pub fn left(&self) -> &[GameId] {
        &self.left
    }

    pub fn right(&self) -> &[GameId] {
        &self.right
    }
}

/// Append-only interned game store plus the memo tables built over it.
///
/// One arena is shared by everything in a run; all caches key on [`GameId`]s
/// and rely on their stability.
#[derive(Debug, Default)]
pub struct Arena {
    nodes: IndexSet<GameNode>,
    birthdays: Vec<u32>,
    sizes: Vec<u64>,
    conjugate_cache: HashMap<GameId, GameId>,
    adjoint_cache: HashMap<GameId, GameId>,
    sum_cache: HashMap<(GameId, GameId), GameId>,
    pub(crate) misere_cache: HashMap<GameId, Outcome>,
    pub(crate) normal_cache: HashMap<GameId, Outcome>,
    pub(crate) sum_outcome_cache: HashMap<(GameId, GameId), Outcome>,
    pub(crate) ge_misere_cache: HashMap<(GameId, GameId), bool>,
    pub(crate) ge_normal_cache: HashMap<(GameId, GameId), bool>,
    pub(crate) downlinked_cache: HashMap<(GameId, GameId), bool>,
    pub(crate) witness_a_cache: HashMap<(GameId, GameId), GameId>,
    pub(crate) witness_b_cache: HashMap<(GameId, GameId), GameId>,
    pub(crate) downlink_context_cache: HashMap<(GameId, GameId), GameId>,
    pub(crate) canonical_cache: HashMap<GameId, (GameId, SimplificationTrace)>,
}

impl Arena {
    /// Fresh arena containing only the empty game `0` at id 0.
    pub fn new() -> Arena {
        let mut arena = Arena::default();
        let zero = arena.intern(Vec::new(), Vec::new());
        debug_assert_eq!(zero.index(), 0);
        arena
    }

    /// Number of interned positions.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, id: GameId) -> bool {
        id.index() < self.nodes.len()
    }

    /// Look up an interned position.
    ///
    /// Panics on an id that does not reference this arena (malformed
    /// reference).
    pub fn node(&self, id: GameId) -> &GameNode {
        self.nodes
            .get_index(id.index())
            .unwrap_or_else(|| panic!("malformed reference: GameId {} is not in this arena", id.0))
    }

    /// Intern a position from its option lists. Input order and duplicates do
    /// not matter; equal inputs always return the same id.
    ///
    /// Panics if any option id does not reference this arena.
    pub fn intern(&mut self, left: Vec<GameId>, right: Vec<GameId>) -> GameId {
        let left = self.normalize_options(left);
        let right = self.normalize_options(right);
        let node = GameNode { left, right };
        if let Some(index) = self.nodes.get_index_of(&node) {
            return GameId(index as u32);
        }
        let birthday = node
            .left
            .iter()
            .chain(node.right.iter())
            .map(|&o| self.birthdays[o.index()] + 1)
            .max()
            .unwrap_or(0);
        let size = 1 + node
            .left
            .iter()
            .chain(node.right.iter())
            .map(|&o| self.sizes[o.index()])
            .sum::<u64>();
        let (index, fresh) = self.nodes.insert_full(node);
        debug_assert!(fresh);
        self.birthdays.push(birthday);
        self.sizes.push(size);
        GameId(index as u32)
    }

    fn normalize_options(&self, mut options: Vec<GameId>) -> Box<[GameId]> {
        for &option in &options {
            assert!(
                self.contains(option),
                "malformed reference: GameId {} is not in this arena",
                option.0
            );
        }
        options.sort_by(|&a, &b| self.structural_cmp(a, b));
        options.dedup();
        options.into_boxed_slice()
    }

    /// The empty game `0 = { | }`.
    pub fn zero(&self) -> GameId {
        GameId(0)
    }

    /// `* = {0|0}`.
    pub fn star(&mut self) -> GameId {
        let z = self.zero();
        self.intern(vec![z], vec![z])
    }

    /// `1 = {0| }`.
    pub fn one(&mut self) -> GameId {
        let z = self.zero();
        self.intern(vec![z], Vec::new())
    }

    /// `~1 = { |0}`, the conjugate of `1`.
    pub fn one_bar(&mut self) -> GameId {
        let z = self.zero();
        self.intern(Vec::new(), vec![z])
    }

    /// True when Left has no move from `g`.
    pub fn is_left_end(&self, g: GameId) -> bool {
        self.node(g).left.is_empty()
    }

    /// True when Right has no move from `g`.
    pub fn is_right_end(&self, g: GameId) -> bool {
        self.node(g).right.is_empty()
    }

    /// Height of the game tree: 0 for the empty game, else one more than the
    /// tallest option.
    pub fn birthday(&self, g: GameId) -> u32 {
        self.birthdays[self.checked(g).index()]
    }

    /// Number of nodes in the formal tree with shared subtrees counted once
    /// per distinct option. Strictly decreases under every simplification
    /// step, which makes it the termination measure for canonicalization.
    pub fn tree_size(&self, g: GameId) -> u64 {
        self.sizes[self.checked(g).index()]
    }

    fn checked(&self, g: GameId) -> GameId {
        assert!(
            self.contains(g),
            "malformed reference: GameId {} is not in this arena",
            g.0
        );
        g
    }

    /// Total order on interned games used to sort option lists: birthday
    /// first, then the Left lists compared lexicographically (recursively),
    /// then the Right lists. Depends only on game structure, never on
    /// insertion order, so sorted lists agree across arenas.
    pub fn structural_cmp(&self, a: GameId, b: GameId) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        let by_birthday = self.birthday(a).cmp(&self.birthday(b));
        if by_birthday != Ordering::Equal {
            return by_birthday;
        }
        let (na, nb) = (self.node(a), self.node(b));
        let by_left = self.cmp_option_lists(&na.left, &nb.left);
        if by_left != Ordering::Equal {
            return by_left;
        }
        let by_right = self.cmp_option_lists(&na.right, &nb.right);
        debug_assert_ne!(
            by_right,
            Ordering::Equal,
            "distinct ids with identical structure escaped interning"
        );
        by_right
    }

    fn cmp_option_lists(&self, a: &[GameId], b: &[GameId]) -> Ordering {
        for (&x, &y) in a.iter().zip(b.iter()) {
            let c = self.structural_cmp(x, y);
            if c != Ordering::Equal {
                return c;
            }
        }
        a.len().cmp(&b.len())
    }

    /// Disjunctive sum: play proceeds in exactly one component per move.
    pub fn sum(&mut self, a: GameId, b: GameId) -> GameId {
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(&s) = self.sum_cache.get(&key) {
            return s;
        }
        let (a_left, a_right, b_left, b_right) = {
            let na = self.node(a);
            let nb = self.node(b);
            (
                na.left.to_vec(),
                na.right.to_vec(),
                nb.left.to_vec(),
                nb.right.to_vec(),
            )
        };
        let mut left = Vec::with_capacity(a_left.len() + b_left.len());
        for l in a_left {
            left.push(self.sum(l, b));
        }
        for l in b_left {
            left.push(self.sum(a, l));
        }
        let mut right = Vec::with_capacity(a_right.len() + b_right.len());
        for r in a_right {
            right.push(self.sum(r, b));
        }
        for r in b_right {
            right.push(self.sum(a, r));
        }
        let s = self.intern(left, right);
        self.sum_cache.insert(key, s);
        s
    }

    /// Mirror image: Left and Right trade places throughout the tree.
    pub fn conjugate(&mut self, g: GameId) -> GameId {
        if let Some(&c) = self.conjugate_cache.get(&g) {
            return c;
        }
        let (left, right) = {
            let n = self.node(g);
            (n.left.to_vec(), n.right.to_vec())
        };
        let new_left: Vec<GameId> = right.into_iter().map(|r| self.conjugate(r)).collect();
        let new_right: Vec<GameId> = left.into_iter().map(|l| self.conjugate(l)).collect();
        let c = self.intern(new_left, new_right);
        self.conjugate_cache.insert(g, c);
        self.conjugate_cache.insert(c, g);
        c
    }

    /// The adjoint of `g`: a companion game such that `g + adjoint(g)` is
    /// always a misère P-position. Never an end, so neither player is ever
    /// stranded next to it.
    pub fn adjoint(&mut self, g: GameId) -> GameId {
        if let Some(&a) = self.adjoint_cache.get(&g) {
            return a;
        }
        let z = self.zero();
        let (left, right) = {
            let n = self.node(g);
            (n.left.to_vec(), n.right.to_vec())
        };
        let a = if g == z {
            self.star()
        } else if left.is_empty() {
            // Nonzero Left end: Left's move answers any Right option, Right
            // moves to 0.
            let new_left: Vec<GameId> = right.iter().map(|&r| self.adjoint(r)).collect();
            self.intern(new_left, vec![z])
        } else if right.is_empty() {
            let new_right: Vec<GameId> = left.iter().map(|&l| self.adjoint(l)).collect();
            self.intern(vec![z], new_right)
        } else {
            let new_left: Vec<GameId> = right.iter().map(|&r| self.adjoint(r)).collect();
            let new_right: Vec<GameId> = left.iter().map(|&l| self.adjoint(l)).collect();
            self.intern(new_left, new_right)
        };
        self.adjoint_cache.insert(g, a);
        a
    }

    /// Every position reachable from `g` by any sequence of moves, including
    /// `g` itself.
    pub fn subpositions(&self, g: GameId) -> Vec<GameId> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![self.checked(g)];
        let mut out = Vec::new();
        while let Some(id) = stack.pop() {
            if seen[id.index()] {
                continue;
            }
            seen[id.index()] = true;
            out.push(id);
            let n = self.node(id);
            stack.extend(n.left.iter().chain(n.right.iter()).copied());
        }
        out
    }
}
