//! Exact deciders for isoterms and same-type terms.

mod automata;
mod terms;

pub use automata::{
    distance_to, language_size, shape_letters, shortlex, LanguageSize, ProductTree, SmallDfa,
};
pub use terms::{
    enumerate_equivalent, equiv_language, fresh_variable, is_isoterm, is_tau_term_sametype,
    isoterm_scan, klimited, property_c, two_letter_shape, variety_containment, Containment,
    ContainmentTarget, EquivAutomaton, Evidence, IsotermScan, PropertyC, ScanRow, TermChecker,
    TermMode, TermStatus, TermVerdict,
};
