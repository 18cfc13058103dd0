use std::fmt;
use std::str::FromStr;

use super::Var;
use crate::error::{Error, Result};

/// A maximal power `var^exp` inside a word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Run {
    pub var: Var,
    pub exp: u32,
}

/// A nonempty word of the free semigroup, stored as its run sequence.
///
/// Adjacent runs always carry distinct variables and every exponent is at
/// least one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    runs: Vec<Run>,
}

impl Word {
    /// Builds a word from runs, merging equal neighbours.
    pub fn from_runs<I: IntoIterator<Item = (Var, u32)>>(runs: I) -> Result<Word> {
        let mut out: Vec<Run> = Vec::new();
        for (pos, (var, exp)) in runs.into_iter().enumerate() {
            if exp == 0 {
                return Err(Error::ZeroExponent { pos });
            }
            match out.last_mut() {
                Some(last) if last.var == var => last.exp += exp,
                _ => out.push(Run { var, exp }),
            }
        }
        if out.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word { runs: out })
    }

    pub fn from_letters<I: IntoIterator<Item = Var>>(letters: I) -> Result<Word> {
        Word::from_runs(letters.into_iter().map(|v| (v, 1)))
    }

    pub fn letter(var: Var) -> Word {
        Word {
            runs: vec![Run { var, exp: 1 }],
        }
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    /// The letters one at a time, exponents expanded.
    pub fn letters(&self) -> impl Iterator<Item = Var> + '_ {
        self.runs
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.var, r.exp as usize))
    }

    pub fn to_letters(&self) -> Vec<Var> {
        self.letters().collect()
    }

    /// Letter length.
    pub fn len(&self) -> usize {
        self.runs.iter().map(|r| r.exp as usize).sum()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Variables in order of first occurrence.
    pub fn content(&self) -> Vec<Var> {
        let mut seen = Vec::new();
        for r in &self.runs {
            if !seen.contains(&r.var) {
                seen.push(r.var);
            }
        }
        seen
    }

    pub fn occurrences(&self, var: Var) -> usize {
        self.runs
            .iter()
            .filter(|r| r.var == var)
            .map(|r| r.exp as usize)
            .sum()
    }

    pub fn first(&self) -> Var {
        self.runs[0].var
    }

    pub fn last(&self) -> Var {
        self.runs[self.runs.len() - 1].var
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut runs = self.runs.clone();
        for r in &other.runs {
            match runs.last_mut() {
                Some(last) if last.var == r.var => last.exp += r.exp,
                _ => runs.push(*r),
            }
        }
        Word { runs }
    }

    /// True when `factor` occurs as a contiguous subword.
    pub fn contains_factor(&self, factor: &[Var]) -> bool {
        if factor.is_empty() {
            return true;
        }
        let letters = self.to_letters();
        letters.windows(factor.len()).any(|w| w == factor)
    }

    /// Letters written out one by one, e.g. `xyyx`. Multi-character names
    /// keep their brackets.
    pub fn compact(&self) -> String {
        self.letters().map(|v| v.to_string()).collect()
    }
}

impl fmt::Display for Word {
    /// Run form: `x y^2 x^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", r.var)?;
            if r.exp > 1 {
                write!(f, "^{}", r.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(text: &str) -> Result<Word> {
        parse_word(text)
    }
}

/// Parses `WORD := TERM+`, `TERM := NAME ('^' POSINT)?`, where a name is a
/// single letter or a bracketed id such as `[x12]`. Whitespace between
/// terms is optional, so `xyyx^5` and `x y^2 x^5` both parse.
pub fn parse_word(text: &str) -> Result<Word> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let mut runs = Vec::new();
    let syntax = |pos: usize, msg: &str| Error::Syntax {
        pos,
        msg: msg.to_string(),
    };

    loop {
        while pos < chars.len() && chars[pos].is_whitespace() {
            pos += 1;
        }
        if pos == chars.len() {
            break;
        }
        let var = match chars[pos] {
            '[' => {
                let close = chars[pos + 1..]
                    .iter()
                    .position(|&c| c == ']')
                    .ok_or_else(|| syntax(pos, "unclosed `[`"))?;
                let name: String = chars[pos + 1..pos + 1 + close].iter().collect();
                if name.is_empty() || name.chars().any(|c| c.is_whitespace() || "[^".contains(c)) {
                    return Err(syntax(pos + 1, "bad bracketed name"));
                }
                pos += close + 2;
                Var::new(&name)
            }
            c if c.is_alphabetic() => {
                pos += 1;
                Var::new(&c.to_string())
            }
            c => return Err(syntax(pos, &format!("unexpected `{c}`"))),
        };
        let mut exp = 1u32;
        if pos < chars.len() && chars[pos] == '^' {
            pos += 1;
            let digits_start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            if digits_start == pos {
                return Err(syntax(digits_start, "expected exponent"));
            }
            let digits: String = chars[digits_start..pos].iter().collect();
            exp = digits
                .parse()
                .map_err(|_| syntax(digits_start, "exponent too large"))?;
            if exp == 0 {
                return Err(Error::ZeroExponent { pos: digits_start });
            }
        }
        runs.push((var, exp));
    }
    if runs.is_empty() {
        return Err(syntax(0, "empty word"));
    }
    Word::from_runs(runs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Var {
        Var::new(s)
    }

    #[test]
    fn parses_mixed_compact_and_exponents() {
        let w: Word = "xyyx^5yx^3".parse().unwrap();
        let runs: Vec<_> = w.runs().iter().map(|r| (r.var, r.exp)).collect();
        assert_eq!(
            runs,
            vec![
                (v("x"), 1),
                (v("y"), 2),
                (v("x"), 5),
                (v("y"), 1),
                (v("x"), 3)
            ]
        );
    }

    #[test]
    fn single_letter() {
        let w: Word = "x".parse().unwrap();
        assert_eq!(
            w.runs(),
            &[Run {
                var: v("x"),
                exp: 1
            }]
        );
    }

    #[test]
    fn merges_runs() {
        let w: Word = "x^2 x^3".parse().unwrap();
        assert_eq!(
            w.runs(),
            &[Run {
                var: v("x"),
                exp: 5
            }]
        );
    }

    #[test]
    fn bracketed_names() {
        let w: Word = "[x1][x2]^2 [x1]".parse().unwrap();
        assert_eq!(w.to_string(), "[x1] [x2]^2 [x1]");
        assert_eq!(w.len(), 4);
    }

    #[test]
    fn rejects_zero_exponent() {
        assert!(matches!(
            "x^0".parse::<Word>(),
            Err(Error::ZeroExponent { pos: 2 })
        ));
    }

    #[test]
    fn reports_syntax_position() {
        match "xy+z".parse::<Word>() {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!("".parse::<Word>(), Err(Error::Syntax { .. })));
        assert!(matches!("x^".parse::<Word>(), Err(Error::Syntax { .. })));
        assert!(matches!("[x".parse::<Word>(), Err(Error::Syntax { .. })));
    }

    #[test]
    fn compact_expands_letters() {
        let w: Word = "a^2t".parse().unwrap();
        assert_eq!(w.compact(), "aat");
        assert!(w.contains_factor(&[v("a"), v("t")]));
        assert!(!w.contains_factor(&[v("t"), v("a")]));
    }
}
