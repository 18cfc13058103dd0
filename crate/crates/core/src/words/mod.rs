//! Words of the free monoid and the word families built from them.

mod families;
mod ops;
mod var;
mod word;

pub use families::{
    distinct_between_islands, identity_pair_unvn, jackson, lee_shape_set, perkins_words,
    verify_jackson_properties, zimin, JacksonReport,
};
pub use ops::{
    blocks, equalize, height, islands_and_height, project, reverse, same_type, shape_of,
    substitute, word_stats, Blocks, Equalized, Islands, Shape, Substitution, WordStats,
};
pub use var::Var;
pub use word::{parse_word, Run, Word};
