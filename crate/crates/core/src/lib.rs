//! Exact computation engine for finite partizan games under the misère play
//! convention, where a player with no move **wins**.
//!
//! Positions are interned in an [`Arena`] and named by [`GameId`]s. On top of
//! the store sit:
//!
//! - outcome evaluation for single games and for disjunctive sums
//!   ([`Arena::misere_outcome`], [`Arena::sum_outcome`]),
//! - the misère partial order with certificate extraction — when two games
//!   compare strictly or stand incomparable, a concrete distinguishing context
//!   can be produced and replayed ([`Arena::ge_misere`],
//!   [`Arena::distinguish`]),
//! - canonicalization to the unique simplest equivalent form, with a step
//!   trace ([`Arena::canonicalize`]),
//! - the day-by-day census of canonical forms, the day-2 partial order and
//!   its structure ([`Census`], [`Day2Partition`], [`Poset`]),
//! - counting machinery for the day-3 size bound ([`count_antichains`],
//!   [`day3_bound`]),
//! - bounded quotient presentations of sum-closed families
//!   ([`QuotientPresentation`]),
//! - a plain-text game notation parser/printer ([`parse_game`],
//!   [`Arena::print_game`]) and JSON/DOT export ([`export`]).

pub mod arena;
pub mod canonical;
pub mod census;
pub mod export;
pub mod notation;
pub mod order;
pub mod outcome;
pub mod quotient;

pub use arena::{Arena, GameId, GameNode};
pub use canonical::{NotReversibleError, SimplificationStep, SimplificationTrace};
pub use census::{
    check_component_isomorphisms, check_generation, count_antichains, day3_bound, BooleanLattice,
    Census, CensusError, ComponentCheck, Day2Partition, Day3Bound, GenerationReport,
    IsomorphismReport, OrderMatrix, Poset, TooLargeError,
};
pub use export::{
    census_to_json, import_census, import_poset, poset_to_dot, poset_to_json, quotient_to_json,
    CensusJson, ImportError, NodeJson, PosetJson, QuotientJson,
};
pub use notation::{parse_game, GameExpression, ParseError};
pub use order::{NotDownlinkedError, OrderedPairError, OutcomeBound, Witness, WitnessKind};
pub use outcome::{outcome_ge, Outcome};
pub use quotient::{
    bounded_quotient, element_game, verify_z_presentation, MonoidElement, QuotientPresentation,
    WindowTooLargeError, ZCheck, ZReport,
};
