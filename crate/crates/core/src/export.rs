//! JSON export and import of censuses and posets, JSON export of quotient
//! presentations, and DOT rendering of posets.
//!
//! Exports are self-contained: the `nodes` table lists every reachable
//! subposition bottom-up (options always appear before the games using
//! them), renumbered 0, 1, 2, … in structural order. Importing therefore
//! works on a fresh arena — and because a fresh arena holds nothing but the
//! node for `0`, which is always the structurally smallest node, importing
//! into one reproduces the exported ids exactly. Integers are plain and
//! key order is fixed, so exports are byte-stable and diffable.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arena::{Arena, GameId};
use crate::census::{Census, OrderMatrix, Poset};
use crate::quotient::QuotientPresentation;

/// One game tree node: its id and the ids of its options.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: u32,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

/// A census export: the node table, the per-day id lists, and the order
/// relation over the deepest day's games.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusJson {
    pub nodes: Vec<NodeJson>,
    pub days: Vec<Vec<u32>>,
    pub elements: Vec<u32>,
    pub relation: Vec<Vec<u8>>,
}

/// A poset export: the node table, the element ids, and the full relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub nodes: Vec<NodeJson>,
    pub elements: Vec<u32>,
    pub relation: Vec<Vec<u8>>,
}

/// A quotient presentation export: generators in game notation, the window,
/// its partition into classes, and the class order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientJson {
    pub generators: Vec<String>,
    pub bound: u32,
    pub elements: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
    pub class_outcomes: Vec<String>,
    pub order: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ImportError {
    /// Node ids must be their positions: 0, 1, 2, …
    #[error("node at position {index} must have id {index}, found {id}")]
    MisnumberedNode { index: usize, id: u32 },
    /// Options may only reference nodes defined earlier in the table.
    #[error("node {node} references option {option}, which is not defined earlier")]
    ForwardReference { node: u32, option: u32 },
    /// A day or element list points outside the node table.
    #[error("{what} index {index} is out of range for {len} nodes")]
    IndexOutOfRange {
        what: &'static str,
        index: u32,
        len: usize,
    },
    /// The relation is not an `n`-square 0/1 matrix over the elements.
    #[error("the relation must be {expected}x{expected} entries of 0 or 1")]
    MalformedRelation { expected: usize },
    /// A census must cover day 0 at least.
    #[error("a census must cover at least day 0")]
    EmptyCensus,
}

/// Every subposition of `seeds`, renumbered in structural order.
fn node_table(arena: &Arena, seeds: &[GameId]) -> (Vec<GameId>, HashMap<GameId, u32>) {
    let mut set: HashSet<GameId> = HashSet::new();
    for &g in seeds {
        set.extend(arena.subpositions(g));
    }
    let mut nodes: Vec<GameId> = set.into_iter().collect();
    nodes.sort_by(|&a, &b| arena.structural_cmp(a, b));
    let index: HashMap<GameId, u32> = nodes
        .iter()
        .enumerate()
        .map(|(i, &g)| (g, i as u32))
        .collect();
    (nodes, index)
}

fn node_rows(arena: &Arena, nodes: &[GameId], index: &HashMap<GameId, u32>) -> Vec<NodeJson> {
    nodes
        .iter()
        .enumerate()
        .map(|(i, &g)| {
            let n = arena.node(g);
            NodeJson {
                id: i as u32,
                left: n.left().iter().map(|o| index[o]).collect(),
                right: n.right().iter().map(|o| index[o]).collect(),
            }
        })
        .collect()
}

fn relation_rows(matrix: &OrderMatrix) -> Vec<Vec<u8>> {
    (0..matrix.size())
        .map(|i| (0..matrix.size()).map(|j| matrix.get(i, j) as u8).collect())
        .collect()
}

/// Export a census, computing the order relation over its deepest day.
pub fn census_to_json(arena: &mut Arena, census: &Census) -> CensusJson {
    let top = census.born_by(census.max_day()).to_vec();
    let (nodes, index) = node_table(arena, &top);
    let relation: Vec<Vec<u8>> = top
        .iter()
        .map(|&g| {
            top.iter()
                .map(|&h| arena.ge_misere(g, h) as u8)
                .collect()
        })
        .collect();
    CensusJson {
        nodes: node_rows(arena, &nodes, &index),
        days: census
            .days()
            .iter()
            .map(|day| day.iter().map(|g| index[g]).collect())
            .collect(),
        elements: top.iter().map(|g| index[g]).collect(),
        relation,
    }
}

/// Export a poset and its stored relation.
pub fn poset_to_json(arena: &Arena, poset: &Poset) -> PosetJson {
    let (nodes, index) = node_table(arena, poset.elements());
    PosetJson {
        nodes: node_rows(arena, &nodes, &index),
        elements: poset.elements().iter().map(|g| index[g]).collect(),
        relation: relation_rows(poset.relation()),
    }
}

/// Export a quotient presentation, printing generators in game notation.
pub fn quotient_to_json(arena: &Arena, quotient: &QuotientPresentation) -> QuotientJson {
    QuotientJson {
        generators: quotient
            .generators
            .iter()
            .map(|&g| arena.print_game(g))
            .collect(),
        bound: quotient.bound,
        elements: quotient
            .elements
            .iter()
            .map(|e| e.multiplicities.clone())
            .collect(),
        class_of: quotient.class_of.iter().map(|&c| c as u32).collect(),
        class_outcomes: quotient
            .class_outcomes
            .iter()
            .map(|o| o.to_string())
            .collect(),
        order: relation_rows(&quotient.order),
    }
}

/// Rebuild the node table, returning the arena id of each exported node.
fn import_nodes(arena: &mut Arena, nodes: &[NodeJson]) -> Result<Vec<GameId>, ImportError> {
    let mut id_map: Vec<GameId> = Vec::with_capacity(nodes.len());
    for (i, node) in nodes.iter().enumerate() {
        if node.id != i as u32 {
            return Err(ImportError::MisnumberedNode {
                index: i,
                id: node.id,
            });
        }
        let resolve = |options: &[u32]| -> Result<Vec<GameId>, ImportError> {
            options
                .iter()
                .map(|&o| {
                    if (o as usize) < i {
                        Ok(id_map[o as usize])
                    } else {
                        Err(ImportError::ForwardReference {
                            node: node.id,
                            option: o,
                        })
                    }
                })
                .collect()
        };
        let left = resolve(&node.left)?;
        let right = resolve(&node.right)?;
        id_map.push(arena.intern(left, right));
    }
    Ok(id_map)
}

fn resolve_indices(
    indices: &[u32],
    id_map: &[GameId],
    what: &'static str,
) -> Result<Vec<GameId>, ImportError> {
    indices
        .iter()
        .map(|&i| {
            id_map
                .get(i as usize)
                .copied()
                .ok_or(ImportError::IndexOutOfRange {
                    what,
                    index: i,
                    len: id_map.len(),
                })
        })
        .collect()
}

fn import_relation(rows: &[Vec<u8>], expected: usize) -> Result<OrderMatrix, ImportError> {
    let malformed = ImportError::MalformedRelation { expected };
    if rows.len() != expected {
        return Err(malformed);
    }
    let mut matrix = OrderMatrix::new(expected);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != expected {
            return Err(malformed);
        }
        for (j, &bit) in row.iter().enumerate() {
            if bit > 1 {
                return Err(malformed);
            }
            matrix.set(i, j, bit == 1);
        }
    }
    Ok(matrix)
}

/// Re-intern an exported census. Returns the census over the importing
/// arena's ids, plus the id of every exported node in table order.
pub fn import_census(
    arena: &mut Arena,
    json: &CensusJson,
) -> Result<(Census, Vec<GameId>), ImportError> {
    let id_map = import_nodes(arena, &json.nodes)?;
    if json.days.is_empty() {
        return Err(ImportError::EmptyCensus);
    }
    let mut days = Vec::with_capacity(json.days.len());
    for day in &json.days {
        days.push(resolve_indices(day, &id_map, "day")?);
    }
    let elements = resolve_indices(&json.elements, &id_map, "element")?;
    import_relation(&json.relation, elements.len())?;
    Ok((Census::from_days(days), id_map))
}

/// Re-intern an exported poset. Returns the poset over the importing
/// arena's ids, plus the id of every exported node in table order.
pub fn import_poset(
    arena: &mut Arena,
    json: &PosetJson,
) -> Result<(Poset, Vec<GameId>), ImportError> {
    let id_map = import_nodes(arena, &json.nodes)?;
    let elements = resolve_indices(&json.elements, &id_map, "element")?;
    let relation = import_relation(&json.relation, elements.len())?;
    Ok((Poset::from_parts(elements, relation), id_map))
}

/// Render a poset as a DOT digraph of its cover relation (the transitive
/// reduction), lower elements pointing at the elements covering them.
/// Labels use game notation.
pub fn poset_to_dot(arena: &Arena, poset: &Poset) -> String {
    let n = poset.elements().len();
    let strict = |i: usize, j: usize| i != j && poset.relation().get(i, j);
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for (i, &g) in poset.elements().iter().enumerate() {
        let label = arena.print_game(g).replace('\\', "\\\\").replace('"', "\\\"");
        out.push_str(&format!("  n{i} [label=\"{label}\"];\n"));
    }
    for i in 0..n {
        for j in 0..n {
            let covers = strict(i, j) && !(0..n).any(|k| strict(i, k) && strict(k, j));
            if covers {
                out.push_str(&format!("  n{j} -> n{i};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn day_zero_census_export_is_byte_stable() {
        let mut arena = Arena::new();
        let census = Census::games_born_by(&mut arena, 0).unwrap();
        let json = census_to_json(&mut arena, &census);
        assert_eq!(
            serde_json::to_string(&json).unwrap(),
            r#"{"nodes":[{"id":0,"left":[],"right":[]}],"days":[[0]],"elements":[0],"relation":[[1]]}"#
        );
    }

    #[test]
    fn day_one_census_export_has_structural_ids() {
        let mut arena = Arena::new();
        let census = Census::games_born_by(&mut arena, 1).unwrap();
        let json = census_to_json(&mut arena, &census);
        // Structural order: 0, ~1, 1, *.
        assert_eq!(
            json.nodes,
            vec![
                NodeJson { id: 0, left: vec![], right: vec![] },
                NodeJson { id: 1, left: vec![], right: vec![0] },
                NodeJson { id: 2, left: vec![0], right: vec![] },
                NodeJson { id: 3, left: vec![0], right: vec![0] },
            ]
        );
        assert_eq!(json.days, vec![vec![0], vec![0, 1, 2, 3]]);
        assert_eq!(json.elements, vec![0, 1, 2, 3]);
        // Day-1 games are pairwise incomparable.
        for (i, row) in json.relation.iter().enumerate() {
            for (j, &bit) in row.iter().enumerate() {
                assert_eq!(bit, (i == j) as u8);
            }
        }
    }

    #[test]
    fn census_reimport_into_a_fresh_arena_reproduces_ids() {
        let mut arena = Arena::new();
        let census = Census::games_born_by(&mut arena, 2).unwrap();
        let json = census_to_json(&mut arena, &census);

        let mut fresh = Arena::new();
        let (imported, id_map) = import_census(&mut fresh, &json).unwrap();
        for (i, &g) in id_map.iter().enumerate() {
            assert_eq!(g.index(), i, "fresh arena ids follow the table");
        }
        assert_eq!(imported.max_day(), 2);
        assert_eq!(imported.born_by(2).len(), 256);
        // The reimported census is the census the fresh arena would build.
        let rebuilt = Census::games_born_by(&mut fresh, 2).unwrap();
        assert_eq!(imported, rebuilt);
    }

    #[test]
    fn import_rejects_malformed_tables() {
        let mut arena = Arena::new();
        let census = Census::games_born_by(&mut arena, 1).unwrap();
        let good = census_to_json(&mut arena, &census);

        let mut misnumbered = good.clone();
        misnumbered.nodes[1].id = 7;
        assert_eq!(
            import_census(&mut Arena::new(), &misnumbered),
            Err(ImportError::MisnumberedNode { index: 1, id: 7 })
        );

        let mut forward = good.clone();
        forward.nodes[1].right = vec![3];
        assert_eq!(
            import_census(&mut Arena::new(), &forward),
            Err(ImportError::ForwardReference { node: 1, option: 3 })
        );

        let mut bad_day = good.clone();
        bad_day.days[0] = vec![9];
        assert_eq!(
            import_census(&mut Arena::new(), &bad_day),
            Err(ImportError::IndexOutOfRange {
                what: "day",
                index: 9,
                len: 4
            })
        );

        let mut bad_relation = good.clone();
        bad_relation.relation[2] = vec![0, 1];
        assert_eq!(
            import_census(&mut Arena::new(), &bad_relation),
            Err(ImportError::MalformedRelation { expected: 4 })
        );

        let mut no_days = good;
        no_days.days.clear();
        assert_eq!(
            import_census(&mut Arena::new(), &no_days),
            Err(ImportError::EmptyCensus)
        );
    }

    #[test]
    fn poset_json_round_trips_through_a_fresh_arena() {
        let mut arena = Arena::new();
        let z = arena.zero();
        let s = arena.star();
        let one = arena.one();
        let big = arena.intern(vec![], vec![s, one]);
        let poset = Poset::build(&mut arena, vec![z, big]);
        let json = poset_to_json(&arena, &poset);

        let mut fresh = Arena::new();
        let (imported, id_map) = import_poset(&mut fresh, &json).unwrap();
        assert_eq!(id_map.len(), json.nodes.len());
        assert_eq!(imported.elements().len(), 2);
        let fz = fresh.zero();
        let fs = fresh.star();
        let fone = fresh.one();
        let fbig = fresh.intern(vec![], vec![fs, fone]);
        assert!(imported.ge(fbig, fz));
        assert!(!imported.ge(fz, fbig));
        assert_eq!(poset_to_json(&fresh, &imported), json);
    }

    #[test]
    fn dot_renders_isolated_nodes_for_an_antichain() {
        let mut arena = Arena::new();
        let day1 = crate::test_support::day1_games(&mut arena);
        let poset = Poset::build(&mut arena, day1);
        let dot = poset_to_dot(&arena, &poset);
        assert!(dot.starts_with("digraph poset {"));
        assert!(dot.contains(r#"n0 [label="0"];"#));
        assert!(dot.contains(r#"n3 [label="*"];"#));
        assert!(!dot.contains("->"), "an antichain draws no edges");
    }

    #[test]
    fn dot_renders_one_edge_for_a_two_chain() {
        let mut arena = Arena::new();
        let z = arena.zero();
        let s = arena.star();
        let one = arena.one();
        let big = arena.intern(vec![], vec![s, one]);
        let poset = Poset::build(&mut arena, vec![z, big]);
        let dot = poset_to_dot(&arena, &poset);
        // {|1,*} > 0 and the edge points from the lower game up.
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("n0 -> n1;"));
        assert!(dot.contains(r#"n1 [label="{|1,*}"];"#));
    }

    #[test]
    fn quotient_export_carries_notation_and_outcomes() {
        let mut arena = Arena::new();
        let one = arena.one();
        let one_bar = arena.one_bar();
        let q = crate::quotient::bounded_quotient(&mut arena, &[one, one_bar], 1).unwrap();
        let json = quotient_to_json(&arena, &q);
        assert_eq!(json.generators, vec!["1", "~1"]);
        assert_eq!(json.bound, 1);
        assert_eq!(json.elements, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(json.class_of, vec![0, 1, 2, 0]);
        assert_eq!(json.class_outcomes, vec!["N", "L", "R"]);
    }
}
