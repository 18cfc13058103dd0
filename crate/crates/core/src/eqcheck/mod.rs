//! Identity satisfaction and relatively free monoids.

mod free;
mod satisfy;

pub use free::{free_algebra, word_function, word_function_table, FreeAlgebra};
pub use satisfy::{
    mixed_powers_vanish, satisfies, satisfies_lee, satisfies_with, variable_order, SearchOptions,
    Verdict,
};
