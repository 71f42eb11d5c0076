//! Residues, local invariants and index computations for Brauer classes on
//! curves over finite fields and their local lifts.

pub mod global;
pub mod goodred;
pub mod local;
pub mod splitting;

pub use global::{cft_pair, class_index, invariant_vector, InvariantVector, SymbolClassSpec, WittPair};
pub use goodred::{good_reduction_brauer_structure, GoodReductionReport};
pub use local::{
    nakayama_index, residue_order, symbol_invariant, tame_residue, unram_cup_invariant, UnramCharacter,
    RESIDUE_CONVENTION,
};
pub use splitting::{asw_splitting, kummer_splitting, witt_carry, AswPlace, AswReport, SplittingDatum};
