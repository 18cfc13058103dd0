//! Equational analysis of finite monoids: identity checking, isoterms,
//! same-type terms and Property (C_l), with the Lee, Dilworth and
//! same-type quotient constructions.

pub mod algebra;
pub mod config;
pub mod eqcheck;
pub mod error;
pub mod termcheck;
pub mod words;

pub use algebra::{
    adjoin_zero, dilworth, evaluate, lee_monoid, lee_semigroup_elements, monoid_from_table,
    s1_tau_sametype, transformation_monoid, Assignment, Elem, FiniteMonoid,
};
pub use config::Config;
pub use eqcheck::{
    free_algebra, satisfies, satisfies_lee, satisfies_with, word_function, word_function_table,
    FreeAlgebra, SearchOptions, Verdict,
};
pub use error::{Error, Result};
pub use termcheck::{
    enumerate_equivalent, equiv_language, is_isoterm, is_tau_term_sametype, isoterm_scan, klimited,
    property_c, variety_containment, ContainmentTarget, TermChecker, TermStatus, TermVerdict,
};
pub use words::{parse_word, Shape, Substitution, Var, Word};
