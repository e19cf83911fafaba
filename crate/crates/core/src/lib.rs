//! Converse bounds for single-server and distributed index coding.
//!
//! Messages are 0-based inside the library and 1-based in every text and
//! JSON format. Bound values are exact [`Rational`]s.

pub mod chain;
pub mod compare;
pub mod dic;
pub mod error;
pub mod instance;
pub mod lp;
pub mod mais;
pub mod rational;
pub mod report;
pub mod search;
pub mod set;

pub use chain::{
    cic_bound, internal_conflict_bound, verify_basic_tower, verify_chain, Chain, ChainError, Floor, Tower, TowerKind,
    Verdict, VerifiedChain, Violation,
};
pub use compare::{compare, CompareOptions, Comparison, LpOutcome};
pub use dic::{capacity_sum, dic_bound_disjoint, dic_bound_singleton, DicBound, DicError, ServerSum};
pub use error::InstanceError;
pub use instance::{CapacityMap, Form, Instance};
pub use lp::{
    build_pm_model, build_pm_model_with, solve, zy_augmented_bound, zy_instantiate, LinearInequality, LpError,
    LpSolution, ModelOptions, Objective, PMModel, Var,
};
pub use mais::{mais_bound, mais_size, MaisResult};
pub use rational::Rational;
pub use report::BoundReport;
pub use search::{min_alignment_chain, search_disjoint, search_plain, search_singleton, SearchLimits};
pub use set::MessageSet;
