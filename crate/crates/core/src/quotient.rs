//! Bounded quotients: the outcome structure of a finitely generated family
//! of games under disjunctive sum.
//!
//! Fix generators `g_1 .. g_k`. The family of sums `a_1·g_1 + … + a_k·g_k`
//! is described, up to a multiplicity bound `B`, by identifying elements
//! that carry the same outcome against every element of the window
//! `0 <= a_i <= B`. Each class keeps its own outcome, and classes inherit a
//! partial order: one class sits above another when its outcomes dominate
//! pointwise across the window.
//!
//! The identification is a *bounded* approximation of genuine misère
//! equivalence on the family — raising `B` can only split classes, never
//! merge them. The quotient can also gain order relations that the raw
//! game order refuses: `~1 > 0 > 1` holds in the quotient of `[1, ~1]` even
//! though `~1` and `0` are incomparable as games. [`verify_z_presentation`]
//! checks that this two-generator quotient is exactly the integers in
//! disguise.

use std::collections::HashMap;

use thiserror::Error;

use crate::arena::{Arena, GameId};
use crate::census::OrderMatrix;
use crate::outcome::{outcome_ge, Outcome};

/// Largest multiplicity window [`bounded_quotient`] will enumerate. The
/// window is `(B+1)^k` elements and the outcome table is quadratic in that.
pub const MAX_WINDOW_ELEMENTS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("a window of {size} elements is past the cap of {cap}")]
pub struct WindowTooLargeError {
    pub size: u128,
    pub cap: usize,
}

/// A formal product of generators, one multiplicity per generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidElement {
    pub multiplicities: Vec<u32>,
}

/// Realize `element` as a game: the disjunctive sum of `multiplicities[i]`
/// copies of `generators[i]`. The empty product is `0`.
pub fn element_game(
    arena: &mut Arena,
    generators: &[GameId],
    element: &MonoidElement,
) -> GameId {
    assert_eq!(generators.len(), element.multiplicities.len());
    let mut acc = arena.zero();
    for (&g, &count) in generators.iter().zip(&element.multiplicities) {
        for _ in 0..count {
            acc = arena.sum(acc, g);
        }
    }
    acc
}

/// A bounded quotient presentation: the window elements in odometer order
/// (identity first), their partition into outcome-indistinguishable classes,
/// each class's own outcome, and the induced class order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPresentation {
    pub generators: Vec<GameId>,
    pub bound: u32,
    /// All multiplicity vectors with entries `<= bound`, odometer order:
    /// the identity `(0,…,0)` is first.
    pub elements: Vec<MonoidElement>,
    /// `class_of[i]` is the class index of `elements[i]`. Classes are
    /// numbered in order of first appearance, so the identity's class is 0.
    pub class_of: Vec<usize>,
    /// For each class, the window index of its first representative.
    pub class_representatives: Vec<usize>,
    /// Each class's outcome when played on its own.
    pub class_outcomes: Vec<Outcome>,
    /// `order.get(c, d)`: class `c`'s outcomes dominate class `d`'s against
    /// every window element.
    pub order: OrderMatrix,
}

impl QuotientPresentation {
    pub fn class_count(&self) -> usize {
        self.class_representatives.len()
    }

    /// The window index of a multiplicity vector, if it is in range.
    pub fn element_index(&self, multiplicities: &[u32]) -> Option<usize> {
        if multiplicities.len() != self.generators.len()
            || multiplicities.iter().any(|&m| m > self.bound)
        {
            return None;
        }
        // Odometer order: the last coordinate varies fastest.
        let mut index = 0usize;
        for &m in multiplicities {
            index = index * (self.bound as usize + 1) + m as usize;
        }
        Some(index)
    }

    /// The class of a multiplicity vector, if it is in range.
    pub fn class_of_element(&self, multiplicities: &[u32]) -> Option<usize> {
        self.element_index(multiplicities).map(|i| self.class_of[i])
    }
}

/// Compute the bounded quotient of `generators` at multiplicity bound
/// `bound`: outcome rows over the whole window, grouped into classes.
pub fn bounded_quotient(
    arena: &mut Arena,
    generators: &[GameId],
    bound: u32,
) -> Result<QuotientPresentation, WindowTooLargeError> {
    let size = (bound as u128 + 1).pow(generators.len() as u32);
    if size > MAX_WINDOW_ELEMENTS as u128 {
        return Err(WindowTooLargeError {
            size,
            cap: MAX_WINDOW_ELEMENTS,
        });
    }
    let mut elements = Vec::with_capacity(size as usize);
    let mut current = vec![0u32; generators.len()];
    loop {
        elements.push(MonoidElement {
            multiplicities: current.clone(),
        });
        // Odometer increment, last coordinate fastest; stop once the carry
        // falls off the front.
        let mut pos = generators.len();
        let mut wrapped = true;
        while pos > 0 {
            pos -= 1;
            if current[pos] < bound {
                current[pos] += 1;
                wrapped = false;
                break;
            }
            current[pos] = 0;
        }
        if wrapped {
            break;
        }
    }
    debug_assert_eq!(elements.len(), size as usize);

    let games: Vec<GameId> = elements
        .iter()
        .map(|e| element_game(arena, generators, e))
        .collect();
    let rows: Vec<Vec<Outcome>> = games
        .iter()
        .map(|&x| games.iter().map(|&z| arena.sum_outcome(x, z)).collect())
        .collect();

    let mut class_of = Vec::with_capacity(rows.len());
    let mut class_representatives = Vec::new();
    let mut seen: HashMap<&[Outcome], usize> = HashMap::new();
    for (i, row) in rows.iter().enumerate() {
        let class = *seen.entry(row.as_slice()).or_insert_with(|| {
            class_representatives.push(i);
            class_representatives.len() - 1
        });
        class_of.push(class);
    }

    // The identity is window element 0, so o(x + identity) — the first
    // column — is each element's own outcome.
    let class_outcomes: Vec<Outcome> = class_representatives
        .iter()
        .map(|&rep| rows[rep][0])
        .collect();

    let classes = class_representatives.len();
    let mut order = OrderMatrix::new(classes);
    for c in 0..classes {
        for d in 0..classes {
            let dominates = rows[class_representatives[c]]
                .iter()
                .zip(&rows[class_representatives[d]])
                .all(|(&a, &b)| outcome_ge(a, b));
            order.set(c, d, dominates);
        }
    }

    Ok(QuotientPresentation {
        generators: generators.to_vec(),
        bound,
        elements,
        class_of,
        class_representatives,
        class_outcomes,
        order,
    })
}

/// One named check of [`verify_z_presentation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// The checklist certifying a quotient is the integers in disguise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZReport {
    pub checks: Vec<ZCheck>,
}

impl ZReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Certify that a two-generator quotient of `[1, ~1]` presents the integers:
/// classes are indexed by the multiplicity difference, translation by
/// `1 + ~1` is the identity, the order is the usual total order of the
/// integers, and outcomes follow the sign.
pub fn verify_z_presentation(arena: &mut Arena, quotient: &QuotientPresentation) -> ZReport {
    let mut checks = Vec::new();
    let b = quotient.bound as i64;

    let one = arena.one();
    let one_bar = arena.one_bar();
    let canonical_generators: Vec<GameId> = quotient
        .generators
        .iter()
        .map(|&g| arena.canonicalize(g))
        .collect();
    let generators_ok = canonical_generators == vec![one, one_bar];
    checks.push(ZCheck {
        name: "generators",
        passed: generators_ok,
        detail: if generators_ok {
            "the generators are 1 and ~1".to_string()
        } else {
            format!(
                "expected generators 1 and ~1, got {:?}",
                canonical_generators
            )
        },
    });
    if !generators_ok {
        return ZReport { checks };
    }

    let diff = |e: &MonoidElement| e.multiplicities[0] as i64 - e.multiplicities[1] as i64;

    let expected_classes = (2 * b + 1) as usize;
    checks.push(ZCheck {
        name: "class count",
        passed: quotient.class_count() == expected_classes,
        detail: format!(
            "{} classes for differences -{}..{}",
            quotient.class_count(),
            b,
            b
        ),
    });

    let mut difference_indexed = true;
    for (i, x) in quotient.elements.iter().enumerate() {
        for (j, y) in quotient.elements.iter().enumerate() {
            let same_class = quotient.class_of[i] == quotient.class_of[j];
            if same_class != (diff(x) == diff(y)) {
                difference_indexed = false;
            }
        }
    }
    checks.push(ZCheck {
        name: "difference indexing",
        passed: difference_indexed,
        detail: "two sums coincide exactly when their multiplicity differences agree".to_string(),
    });

    // Adding one copy of each generator never changes the class: 1 + ~1
    // acts as the identity.
    let mut translation_invariant = true;
    for x in &quotient.elements {
        let (a, c) = (x.multiplicities[0], x.multiplicities[1]);
        if a < quotient.bound
            && c < quotient.bound
            && quotient.class_of_element(&[a + 1, c + 1]) != quotient.class_of_element(&[a, c])
        {
            translation_invariant = false;
        }
    }
    checks.push(ZCheck {
        name: "identity translation",
        passed: translation_invariant,
        detail: "adding 1 + ~1 fixes every class".to_string(),
    });

    // Class order must be the total order of the differences, more copies
    // of ~1 sitting higher.
    let mut totally_ordered = true;
    let class_diff: Vec<i64> = quotient
        .class_representatives
        .iter()
        .map(|&rep| diff(&quotient.elements[rep]))
        .collect();
    for c in 0..quotient.class_count() {
        for d in 0..quotient.class_count() {
            let expected = class_diff[c] <= class_diff[d];
            if quotient.order.get(c, d) != expected {
                totally_ordered = false;
            }
        }
    }
    checks.push(ZCheck {
        name: "total order",
        passed: totally_ordered,
        detail: "classes form a chain ordered by decreasing difference".to_string(),
    });

    let mut outcomes_by_sign = true;
    for (c, &d) in class_diff.iter().enumerate() {
        let expected = match d {
            0 => Outcome::N,
            d if d > 0 => Outcome::R,
            _ => Outcome::L,
        };
        if quotient.class_outcomes[c] != expected {
            outcomes_by_sign = false;
        }
    }
    checks.push(ZCheck {
        name: "sign outcomes",
        passed: outcomes_by_sign,
        detail: "a surplus of 1 loses for Left, a surplus of ~1 wins, balance is first-player"
            .to_string(),
    });

    ZReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Outcomes of `a·1 + b·~1` worked out by hand: with only end moves in
    /// play, each player simply spends their own supply, and whoever
    /// holds the larger supply is forced to move last.
    fn sign_outcome(a: u32, b: u32) -> Outcome {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => Outcome::N,
            std::cmp::Ordering::Greater => Outcome::R,
            std::cmp::Ordering::Less => Outcome::L,
        }
    }

    #[test]
    fn sums_of_ones_follow_the_sign_rule() {
        let mut arena = Arena::new();
        let one = arena.one();
        let one_bar = arena.one_bar();
        for a in 0..6u32 {
            for b in 0..6u32 {
                let g = element_game(
                    &mut arena,
                    &[one, one_bar],
                    &MonoidElement {
                        multiplicities: vec![a, b],
                    },
                );
                assert_eq!(
                    arena.misere_outcome(g),
                    sign_outcome(a, b),
                    "outcome of {a} copies of 1 plus {b} copies of ~1"
                );
            }
        }
    }

    #[test]
    fn element_game_of_identity_is_zero() {
        let mut arena = Arena::new();
        let one = arena.one();
        let one_bar = arena.one_bar();
        let g = element_game(
            &mut arena,
            &[one, one_bar],
            &MonoidElement {
                multiplicities: vec![0, 0],
            },
        );
        assert_eq!(g, arena.zero());
    }

    #[test]
    fn window_is_odometer_ordered_with_identity_first() {
        let mut arena = Arena::new();
        let one = arena.one();
        let one_bar = arena.one_bar();
        let q = bounded_quotient(&mut arena, &[one, one_bar], 1).unwrap();
        let vectors: Vec<Vec<u32>> = q.elements.iter().map(|e| e.multiplicities.clone()).collect();
        assert_eq!(
            vectors,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(q.class_of[0], 0);
        assert_eq!(q.element_index(&[1, 0]), Some(2));
    }

    #[test]
    fn two_generator_quotient_collapses_to_differences() {
        let mut arena = Arena::new();
        let one = arena.one();
        let one_bar = arena.one_bar();
        let q = bounded_quotient(&mut arena, &[one, one_bar], 3).unwrap();
        assert_eq!(q.elements.len(), 16);
        assert_eq!(q.class_count(), 7);
        let report = verify_z_presentation(&mut arena, &q);
        assert!(report.passed(), "{:?}", report.checks);
        assert_eq!(report.checks.len(), 6);
    }

    #[test]
    fn corrupted_presentation_fails_verification() {
        let mut arena = Arena::new();
        let one = arena.one();
        let one_bar = arena.one_bar();
        let mut q = bounded_quotient(&mut arena, &[one, one_bar], 2).unwrap();
        q.class_outcomes[0] = Outcome::L;
        let report = verify_z_presentation(&mut arena, &q);
        assert!(!report.passed());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "sign outcomes" && !c.passed));
    }

    #[test]
    fn wrong_generators_fail_verification_early() {
        let mut arena = Arena::new();
        let s = arena.star();
        let one_bar = arena.one_bar();
        let q = bounded_quotient(&mut arena, &[s, one_bar], 1).unwrap();
        let report = verify_z_presentation(&mut arena, &q);
        assert!(!report.passed());
        assert_eq!(report.checks.len(), 1);
        assert_eq!(report.checks[0].name, "generators");
    }

    #[test]
    fn star_quotient_has_two_alternating_classes() {
        let mut arena = Arena::new();
        let s = arena.star();
        let q = bounded_quotient(&mut arena, &[s], 4).unwrap();
        // 0, *, *+*, *+*+*, …: only parity matters against any window sum.
        assert_eq!(q.class_count(), 2);
        assert_eq!(q.class_of, vec![0, 1, 0, 1, 0]);
        assert_eq!(q.class_outcomes, vec![Outcome::N, Outcome::P]);
        // The two classes are incomparable: N and P cross over.
        assert!(!q.order.get(0, 1));
        assert!(!q.order.get(1, 0));
        assert!(q.order.get(0, 0) && q.order.get(1, 1));
    }

    #[test]
    fn oversized_window_is_refused() {
        let mut arena = Arena::new();
        let one = arena.one();
        let one_bar = arena.one_bar();
        let err = bounded_quotient(&mut arena, &[one, one_bar], 300).unwrap_err();
        assert_eq!(
            err,
            WindowTooLargeError {
                size: 301 * 301,
                cap: MAX_WINDOW_ELEMENTS
            }
        );
    }

    #[test]
    fn larger_bounds_only_refine_classes() {
        let mut arena = Arena::new();
        let one = arena.one();
        let one_bar = arena.one_bar();
        let coarse = bounded_quotient(&mut arena, &[one, one_bar], 2).unwrap();
        let fine = bounded_quotient(&mut arena, &[one, one_bar], 4).unwrap();
        for x in &coarse.elements {
            for y in &coarse.elements {
                let fine_same = fine.class_of_element(&x.multiplicities)
                    == fine.class_of_element(&y.multiplicities);
                let coarse_same = coarse.class_of_element(&x.multiplicities)
                    == coarse.class_of_element(&y.multiplicities);
                if fine_same {
                    assert!(coarse_same, "{:?} vs {:?}", x, y);
                }
            }
        }
    }
}
