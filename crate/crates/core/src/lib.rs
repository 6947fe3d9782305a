//! Minimal DM₁ words, Newton polygons, and certified chains of elementary
//! moves between minimal words.
//!
//! Words are 0/1 strings. Position `i` holding a 0 is in the image of `F`,
//! a 1 in the image of `V`; `A_ξ` is the minimal word of a Newton polygon `ξ`.

pub mod campaign;
pub mod error;
pub mod lattice;
pub mod moves;
pub mod polygon;
pub mod poset;
pub mod specialization;
pub mod verify;
pub mod word;

pub use campaign::{run_campaign, CampaignKind, Counterexample, Report};
pub use error::{Error, Result};
pub use moves::{elementary_moves, leq_oracle, move_path, MoveGraph, MoveWitness};
pub use polygon::{
    c_value, enumerate_nps, is_saturated, minimal_word, np_eval, np_normalize, ordinary, precedes,
    straight_line, NewtonPolygon, Rational, Segment,
};
pub use poset::PolygonPoset;
pub use specialization::{
    chain_general, chain_saturated_two_segment, classify_case, minus_square_decompose,
    prop3_decompose, rho_segment, search_chain, CaseTag, Chain, DecompositionResult, Method,
};
pub use verify::{verify_chain, verify_witness, ChainDefect, WitnessDefect};
pub use word::{
    b_expansion, b_expansions, check_dm1_axioms, cycle_decomposition, cycle_words, direct_sum,
    direct_sum_all, dual, fv_permutation, fv_structure, length_ell, minus, simple_word, Arrow,
    CyclicWord, FvPermutation, FvStructure, PeriodicBinary, Word,
};
