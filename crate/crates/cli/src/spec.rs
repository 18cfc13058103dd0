//! Monoid selectors accepted on the command line.
//!
//! * `lee:L` is the Lee monoid `L_L^1`.
//! * `perkins` and `dilworth:perkins` give the 25-element Dilworth monoid.
//! * `dilworth:WORDS` takes a comma-separated list, or a path to a file of
//!   whitespace- or comma-separated words.
//! * `table:PATH` reads a JSON table.
//! * `trivial` is the one-element monoid.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use isoterm_core::words::perkins_words;
use isoterm_core::{dilworth, lee_monoid, parse_word, FiniteMonoid, Word};

#[derive(Clone, Debug)]
pub struct MonoidSpec {
    pub name: String,
    pub monoid: FiniteMonoid,
    /// Set for Lee presets, which unlocks the reduced search engine.
    pub lee: Option<usize>,
}

pub fn parse_word_list(text: &str) -> Result<Vec<Word>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| parse_word(s).with_context(|| format!("bad word {s:?}")))
        .collect()
}

pub fn parse_monoid(spec: &str) -> Result<MonoidSpec> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let (monoid, lee) = match kind {
        "lee" => {
            let l: usize = arg.parse().with_context(|| format!("bad Lee parameter {arg:?}"))?;
            (lee_monoid(l)?, Some(l))
        }
        "perkins" if arg.is_empty() => (dilworth(&perkins_words())?, None),
        "dilworth" if arg == "perkins" => (dilworth(&perkins_words())?, None),
        "dilworth" => {
            let words = if Path::new(arg).is_file() {
                let text = fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
                parse_word_list(&text)?
            } else {
                parse_word_list(arg)?
            };
            (dilworth(&words)?, None)
        }
        "table" => {
            let text = fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
            (FiniteMonoid::from_json(&text)?, None)
        }
        "trivial" if arg.is_empty() => (FiniteMonoid::trivial(), None),
        _ => bail!("unknown monoid {spec:?}; expected lee:L, perkins, dilworth:WORDS, table:PATH or trivial"),
    };
    Ok(MonoidSpec {
        name: spec.to_string(),
        monoid,
        lee,
    })
}
