//! The census of canonical forms by birthday, and the structure of the
//! day-2 partial order.
//!
//! Counting is exhaustive and exact through day 2: there is one game born by
//! day 0, four born by day 1, and 256 born by day 2 — every formal tree of
//! height two is already canonical. Past that the count explodes; what this
//! module offers for day 3 is a proved upper bound ([`day3_bound`]), built
//! from antichain counts of the day-2 order.
//!
//! The 256-element day-2 order splits into four pieces: the nonzero Left
//! ends, the nonzero Right ends, the games with options on both sides, and
//! `0` by itself ([`Day2Partition`]). Each piece has the order structure of
//! a Boolean lattice with an extreme removed (or a product of two), and the
//! whole order is generated by the pieces plus four explicit cross relations
//! and their mirrors — both facts are checked mechanically, not assumed
//! ([`check_component_isomorphisms`], [`check_generation`]).

use std::collections::HashSet;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::arena::{Arena, GameId};

/// Hard cap on exhaustive census depth. Day 3 is out of reach: the bound
/// computed by [`day3_bound`] shows its census would dwarf any store.
pub const MAX_CENSUS_DAY: u32 = 2;

/// Largest poset [`count_antichains`] will enumerate. The subset recursion
/// is exponential in the element count; 24 keeps the worst case around a
/// few tens of millions of steps.
pub const MAX_ANTICHAIN_ELEMENTS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CensusError {
    /// The requested day lies past [`MAX_CENSUS_DAY`].
    #[error("day {requested} is past the supported census cap of day {cap}")]
    DayTooDeep { requested: u32, cap: u32 },
    /// The census handed in stops before the day the operation needs.
    #[error("the census only reaches day {max_day}, but day {needed} is required")]
    Incomplete { max_day: u32, needed: u32 },
}

/// The poset handed to [`count_antichains`] has too many elements to
/// enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("cannot count antichains of a {size}-element poset; the cap is {cap} elements")]
pub struct TooLargeError {
    pub size: usize,
    pub cap: usize,
}

/// All canonical forms born by each day up to a requested day.
///
/// `born_by(d)` is cumulative — every game born by day `d - 1` is also born
/// by day `d` — and each day's list is sorted in the arena's structural
/// order, so the census is deterministic for a deterministically built
/// arena.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    per_day: Vec<Vec<GameId>>,
}

impl Census {
    /// Enumerate every misère canonical form born by `day`.
    ///
    /// Day `d` canonical forms are found by canonicalizing every formal game
    /// whose option sets draw from the day `d - 1` census, then deduplicating.
    pub fn games_born_by(arena: &mut Arena, day: u32) -> Result<Census, CensusError> {
        if day > MAX_CENSUS_DAY {
            return Err(CensusError::DayTooDeep {
                requested: day,
                cap: MAX_CENSUS_DAY,
            });
        }
        let mut per_day: Vec<Vec<GameId>> = vec![vec![arena.zero()]];
        for _ in 1..=day {
            let previous = per_day.last().unwrap().clone();
            debug_assert!(previous.len() <= 16, "the census cap keeps option pools tiny");
            let subsets: Vec<Vec<GameId>> = (0..1u32 << previous.len())
                .map(|mask| {
                    previous
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, &g)| g)
                        .collect()
                })
                .collect();
            let mut born: Vec<GameId> = Vec::new();
            for left in &subsets {
                for right in &subsets {
                    let g = arena.intern(left.clone(), right.clone());
                    born.push(arena.canonicalize(g));
                }
            }
            born.sort_by(|&a, &b| arena.structural_cmp(a, b));
            born.dedup();
            per_day.push(born);
        }
        Ok(Census { per_day })
    }

    /// The deepest day this census reaches.
    pub fn max_day(&self) -> u32 {
        (self.per_day.len() - 1) as u32
    }

    /// Every canonical form born by `day`, sorted structurally.
    ///
    /// # Panics
    /// If `day` exceeds [`Census::max_day`].
    pub fn born_by(&self, day: u32) -> &[GameId] {
        &self.per_day[day as usize]
    }

    /// The per-day lists, day 0 first.
    pub fn days(&self) -> &[Vec<GameId>] {
        &self.per_day
    }

    /// Reassemble a census from per-day lists (used by the JSON importer).
    pub(crate) fn from_days(per_day: Vec<Vec<GameId>>) -> Census {
        Census { per_day }
    }
}

/// The day-2 census split by end structure: `plus` holds the 15 nonzero
/// Left ends, `minus` the 15 nonzero Right ends, `zero_part` the 225 games
/// with options on both sides, and `origin` is `0` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Day2Partition {
    pub plus: Vec<GameId>,
    pub minus: Vec<GameId>,
    pub zero_part: Vec<GameId>,
    pub origin: GameId,
}

impl Day2Partition {
    /// Split the day-2 census by end structure.
    pub fn classify(arena: &Arena, census: &Census) -> Result<Day2Partition, CensusError> {
        if census.max_day() < 2 {
            return Err(CensusError::Incomplete {
                max_day: census.max_day(),
                needed: 2,
            });
        }
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        let mut zero_part = Vec::new();
        let origin = arena.zero();
        for &g in census.born_by(2) {
            let left_end = arena.is_left_end(g);
            let right_end = arena.is_right_end(g);
            match (left_end, right_end) {
                (true, true) => debug_assert_eq!(g, origin),
                (true, false) => plus.push(g),
                (false, true) => minus.push(g),
                (false, false) => zero_part.push(g),
            }
        }
        Ok(Day2Partition {
            plus,
            minus,
            zero_part,
            origin,
        })
    }
}

/// A square 0/1 relation matrix; `get(i, j)` reads "element `i` is greater
/// than or equal to element `j`".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderMatrix {
    size: usize,
    bits: Vec<bool>,
}

impl OrderMatrix {
    pub fn new(size: usize) -> OrderMatrix {
        OrderMatrix {
            size,
            bits: vec![false; size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.bits[i * self.size + j] = value;
    }

    /// The reflexive-transitive closure (Warshall).
    pub fn transitive_closure(&self) -> OrderMatrix {
        let mut closed = self.clone();
        for i in 0..self.size {
            closed.set(i, i, true);
        }
        for k in 0..self.size {
            for i in 0..self.size {
                if !closed.get(i, k) {
                    continue;
                }
                for j in 0..self.size {
                    if closed.get(k, j) {
                        closed.set(i, j, true);
                    }
                }
            }
        }
        closed
    }

    /// The submatrix on the rows and columns in `keep`, in that order.
    pub fn restrict(&self, keep: &[usize]) -> OrderMatrix {
        let mut sub = OrderMatrix::new(keep.len());
        for (i, &ki) in keep.iter().enumerate() {
            for (j, &kj) in keep.iter().enumerate() {
                sub.set(i, j, self.get(ki, kj));
            }
        }
        sub
    }
}

/// A finite poset of games: an element list plus the full `>=` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<GameId>,
    relation: OrderMatrix,
}

impl Poset {
    /// Compute the misère order restricted to `elements` (sorted and
    /// deduplicated structurally first).
    pub fn build(arena: &mut Arena, mut elements: Vec<GameId>) -> Poset {
        elements.sort_by(|&a, &b| arena.structural_cmp(a, b));
        elements.dedup();
        let mut relation = OrderMatrix::new(elements.len());
        for (i, &g) in elements.iter().enumerate() {
            for (j, &h) in elements.iter().enumerate() {
                relation.set(i, j, arena.ge_misere(g, h));
            }
        }
        Poset { elements, relation }
    }

    /// Assemble a poset from parts already at hand (an import, or a
    /// deliberately perturbed relation in a self-test).
    ///
    /// # Panics
    /// If the matrix size disagrees with the element count.
    pub fn from_parts(elements: Vec<GameId>, relation: OrderMatrix) -> Poset {
        assert_eq!(elements.len(), relation.size());
        Poset { elements, relation }
    }

    pub fn elements(&self) -> &[GameId] {
        &self.elements
    }

    pub fn relation(&self) -> &OrderMatrix {
        &self.relation
    }

    pub fn index_of(&self, g: GameId) -> Option<usize> {
        self.elements.iter().position(|&e| e == g)
    }

    /// The stored order relation between two member games.
    ///
    /// # Panics
    /// If either game is not an element of this poset.
    pub fn ge(&self, g: GameId, h: GameId) -> bool {
        let i = self.index_of(g).expect("game is not an element of this poset");
        let j = self.index_of(h).expect("game is not an element of this poset");
        self.relation.get(i, j)
    }

    /// The sub-poset on `keep`, preserving this poset's stored relation.
    pub fn restrict(&self, keep: &[GameId]) -> Poset {
        let indices: Vec<usize> = keep
            .iter()
            .map(|&g| self.index_of(g).expect("game is not an element of this poset"))
            .collect();
        Poset {
            elements: keep.to_vec(),
            relation: self.relation.restrict(&indices),
        }
    }
}

/// The Boolean lattice of all subsets of a `dimension`-element set, ordered
/// by inclusion. Element `i` is the subset with characteristic bits `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BooleanLattice {
    pub dimension: u32,
}

impl BooleanLattice {
    /// The full `>=` matrix: `i >= j` iff `j ⊆ i`.
    pub fn order_matrix(&self) -> OrderMatrix {
        let n = 1usize << self.dimension;
        let mut matrix = OrderMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                matrix.set(i, j, j & i == j);
            }
        }
        matrix
    }
}

/// Count every antichain of the poset, the empty one included.
///
/// Subset recursion with pruning: scanning candidates from the lowest index,
/// each element is either skipped or taken, and taking it discards all
/// comparable candidates. Fails if the poset has more than
/// [`MAX_ANTICHAIN_ELEMENTS`] elements.
pub fn count_antichains(matrix: &OrderMatrix) -> Result<u64, TooLargeError> {
    let n = matrix.size();
    if n > MAX_ANTICHAIN_ELEMENTS {
        return Err(TooLargeError {
            size: n,
            cap: MAX_ANTICHAIN_ELEMENTS,
        });
    }
    let comparable: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && (matrix.get(i, j) || matrix.get(j, i)))
                .fold(0u32, |acc, j| acc | 1 << j)
        })
        .collect();
    fn count(candidates: u32, comparable: &[u32]) -> u64 {
        if candidates == 0 {
            return 1;
        }
        let lowest = candidates.trailing_zeros() as usize;
        let rest = candidates & !(1 << lowest);
        count(rest, comparable) + count(rest & !comparable[lowest], comparable)
    }
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    Ok(count(all, &comparable))
}

/// The day-3 size bound, assembled from antichain counts of the day-2
/// order's components.
///
/// A game born by day 3 is determined by its two sets of day-2 options, and
/// only antichains of maximal options matter once the game is simplified, so
/// the canonical count is at most `M^2` where `M` bounds the antichains of
/// the 256-game day-2 order. `M` multiplies the independent per-component
/// counts: 2 for `{0}`, 167 for each family of ends, and the
/// dimension-8 Boolean lattice count for the middle component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Day3Bound {
    /// Antichains of the dimension-4 Boolean lattice: 168.
    pub b4_antichains: u64,
    /// Antichains of each end component (the lattice minus one extreme): 167.
    pub component_antichains: u64,
    /// Antichains of the dimension-8 Boolean lattice, bounding the middle
    /// component. Cited, not recomputed: counting it takes serious effort.
    pub b8_antichains: BigUint,
    /// `M = 2 * 167 * 167 * b8`, bounding antichains of the whole order.
    pub antichain_bound: BigUint,
    /// `M^2`, bounding the day-3 canonical census.
    pub tree_bound: BigUint,
    /// `floor(log2(M^2))`.
    pub log2_floor: u64,
}

impl Day3Bound {
    /// Whether the bound beats the raw count of height-3 trees, `2^512`.
    pub fn below_2_pow_512(&self) -> bool {
        self.tree_bound.bits() <= 512
    }
}

/// Compute the day-3 bound. The small antichain counts are enumerated on
/// the spot; the dimension-8 count is the known value of the sequence
/// counting Boolean-lattice antichains (OEIS A000372, n = 8).
pub fn day3_bound() -> Day3Bound {
    let b4 = BooleanLattice { dimension: 4 }.order_matrix();
    let b4_antichains = count_antichains(&b4).expect("16 elements is under the cap");
    // Dropping the top of the lattice removes exactly the one antichain
    // that contained it; either end component has that shape.
    let minus_top: Vec<usize> = (0..15).collect();
    let component_antichains =
        count_antichains(&b4.restrict(&minus_top)).expect("15 elements is under the cap");
    let b8_antichains = BigUint::from_str("56130437228687557907788")
        .expect("the cited antichain count is a valid decimal");
    let antichain_bound = BigUint::from(2u32)
        * component_antichains
        * component_antichains
        * &b8_antichains;
    let tree_bound = &antichain_bound * &antichain_bound;
    let log2_floor = tree_bound.bits() - 1;
    Day3Bound {
        b4_antichains,
        component_antichains,
        b8_antichains,
        antichain_bound,
        tree_bound,
        log2_floor,
    }
}

/// One component's comparison of the computed order against its structural
/// description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCheck {
    /// Which component was checked: `"plus"`, `"minus"`, or `"zero"`.
    pub label: &'static str,
    /// How many games the component holds.
    pub size: usize,
    /// Whether the structural images (option sets) cover everything they
    /// should — all 15 nonempty subsets, or all 225 pairs of them.
    pub image_complete: bool,
    /// Pairs where the stored order and the structural rule disagree.
    pub violations: Vec<(GameId, GameId)>,
}

impl ComponentCheck {
    pub fn passed(&self) -> bool {
        self.image_complete && self.violations.is_empty()
    }
}

/// The three per-component structure checks for the day-2 order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsomorphismReport {
    pub plus: ComponentCheck,
    pub minus: ComponentCheck,
    pub zero_part: ComponentCheck,
}

impl IsomorphismReport {
    pub fn passed(&self) -> bool {
        self.plus.passed() && self.minus.passed() && self.zero_part.passed()
    }
}

fn id_set(ids: &[GameId]) -> Vec<GameId> {
    let mut set = ids.to_vec();
    set.sort();
    set
}

fn is_subset(a: &[GameId], b: &[GameId]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn nonempty_subsets(pool: &[GameId]) -> Vec<Vec<GameId>> {
    (1u32..1 << pool.len())
        .map(|mask| {
            id_set(
                &pool
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &g)| g)
                    .collect::<Vec<_>>(),
            )
        })
        .collect()
}

/// Verify that each component of the day-2 order is the poset its option
/// sets say it is: on the Left ends, `g >= h` exactly when `g`'s Right
/// options are a subset of `h`'s; mirrored on the Right ends; and on the
/// middle component both containments at once. Also verifies each
/// component's option sets realize every possible subset, which pins the
/// component's shape to a Boolean lattice with an extreme removed (or the
/// product of two such).
pub fn check_component_isomorphisms(
    arena: &mut Arena,
    partition: &Day2Partition,
    poset: &Poset,
) -> IsomorphismReport {
    let day1 = vec![
        arena.zero(),
        arena.star(),
        arena.one(),
        arena.one_bar(),
    ];
    let arena = &*arena;
    let all_nonempty: HashSet<Vec<GameId>> = nonempty_subsets(&day1).into_iter().collect();

    let component = |label: &'static str,
                     games: &[GameId],
                     expected: &dyn Fn(GameId, GameId) -> bool,
                     images: HashSet<Vec<GameId>>,
                     full_image: bool|
     -> ComponentCheck {
        let mut violations = Vec::new();
        for &g in games {
            for &h in games {
                if poset.ge(g, h) != expected(g, h) {
                    violations.push((g, h));
                }
            }
        }
        ComponentCheck {
            label,
            size: games.len(),
            image_complete: full_image && images.len() == games.len(),
            violations,
        }
    };

    let rights = |g: GameId| id_set(arena.node(g).right());
    let lefts = |g: GameId| id_set(arena.node(g).left());

    let plus_images: HashSet<Vec<GameId>> = partition.plus.iter().map(|&g| rights(g)).collect();
    let plus = component(
        "plus",
        &partition.plus,
        &|g, h| is_subset(&rights(g), &rights(h)),
        plus_images.clone(),
        plus_images == all_nonempty,
    );

    let minus_images: HashSet<Vec<GameId>> = partition.minus.iter().map(|&g| lefts(g)).collect();
    let minus = component(
        "minus",
        &partition.minus,
        &|g, h| is_subset(&lefts(h), &lefts(g)),
        minus_images.clone(),
        minus_images == all_nonempty,
    );

    let zero_images: HashSet<(Vec<GameId>, Vec<GameId>)> = partition
        .zero_part
        .iter()
        .map(|&g| (lefts(g), rights(g)))
        .collect();
    let zero_full = zero_images
        .iter()
        .all(|(l, r)| all_nonempty.contains(l) && all_nonempty.contains(r))
        && zero_images.len() == all_nonempty.len() * all_nonempty.len();
    let mut zero_violations = Vec::new();
    for &g in &partition.zero_part {
        for &h in &partition.zero_part {
            let expected = is_subset(&lefts(h), &lefts(g)) && is_subset(&rights(g), &rights(h));
            if poset.ge(g, h) != expected {
                zero_violations.push((g, h));
            }
        }
    }
    let zero_part = ComponentCheck {
        label: "zero",
        size: partition.zero_part.len(),
        image_complete: zero_full,
        violations: zero_violations,
    };

    IsomorphismReport {
        plus,
        minus,
        zero_part,
    }
}

/// The difference between the day-2 order and the closure of its claimed
/// generators: `missing` pairs are ordered but not generated, `extra` pairs
/// generated but not ordered. Both lists empty means the generators tell
/// the whole story.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationReport {
    pub missing: Vec<(GameId, GameId)>,
    pub extra: Vec<(GameId, GameId)>,
}

impl GenerationReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Check that the day-2 order is generated by its three component
/// restrictions together with four cross relations and their mirror images:
/// `{|*,1} >= 0`, and `{X|*,1} >= {X|}` for `X` each nonempty subset of
/// `{*, ~1}`.
pub fn check_generation(
    arena: &mut Arena,
    partition: &Day2Partition,
    poset: &Poset,
) -> GenerationReport {
    let n = poset.elements().len();
    let mut base = OrderMatrix::new(n);
    for i in 0..n {
        base.set(i, i, true);
    }
    let components: [&[GameId]; 4] = [
        &partition.plus,
        &partition.minus,
        &partition.zero_part,
        std::slice::from_ref(&partition.origin),
    ];
    for comp in components {
        for &g in comp {
            for &h in comp {
                if poset.ge(g, h) {
                    let i = poset.index_of(g).unwrap();
                    let j = poset.index_of(h).unwrap();
                    base.set(i, j, true);
                }
            }
        }
    }

    let z = arena.zero();
    let s = arena.star();
    let one = arena.one();
    let one_bar = arena.one_bar();
    let upper = vec![s, one];
    let generators = [
        (arena.intern(vec![], upper.clone()), z),
        (
            arena.intern(vec![s], upper.clone()),
            arena.intern(vec![s], vec![]),
        ),
        (
            arena.intern(vec![one_bar], upper.clone()),
            arena.intern(vec![one_bar], vec![]),
        ),
        (
            arena.intern(vec![s, one_bar], upper.clone()),
            arena.intern(vec![s, one_bar], vec![]),
        ),
    ];
    for (g, h) in generators {
        let i = poset.index_of(g).expect("generator is a day-2 game");
        let j = poset.index_of(h).expect("generator is a day-2 game");
        base.set(i, j, true);
        // Conjugating an inequality flips it.
        let cg = arena.conjugate(g);
        let ch = arena.conjugate(h);
        let ci = poset.index_of(ch).expect("conjugate is a day-2 game");
        let cj = poset.index_of(cg).expect("conjugate is a day-2 game");
        base.set(ci, cj, true);
    }

    let closed = base.transitive_closure();
    let mut missing = Vec::new();
    let mut extra = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ordered = poset.relation().get(i, j);
            let generated = closed.get(i, j);
            if ordered && !generated {
                missing.push((poset.elements()[i], poset.elements()[j]));
            }
            if generated && !ordered {
                extra.push((poset.elements()[i], poset.elements()[j]));
            }
        }
    }
    GenerationReport { missing, extra }
}
