//! Full automata and related constructions for nondeterministic
//! ω-automata: transition profiles, lasso membership, conversions, rank
//! based complementation, and lower-bound witness families.

pub mod analysis;
pub mod automaton;
pub mod confuse;
pub mod convert;
pub mod error;
pub mod full;
pub mod gamma;
pub mod graph;
pub mod lasso;
pub mod nbw;
pub mod ngbw;
pub mod product;
pub mod profile;
pub mod rank;
pub mod relation;
pub mod run;
pub mod set;

pub use automaton::{Acceptance, AcceptanceKind, Alphabet, Automaton, FiniteWord, LassoWord};
pub use convert::{buchi_to_type, complement_det, degeneralize};
pub use error::{Error, Result};
pub use lasso::{accepting_run, lasso_member, verify_lasso_run, LassoProduct};
pub use product::{intersect_empty, is_empty};
pub use profile::{transition_profile, Profile};
pub use relation::{id_letter, Letter, Relation};
pub use run::{run_search, DeltaGraph, LassoRun, Run, RunCount, RunSearch};
pub use set::StateSet;
