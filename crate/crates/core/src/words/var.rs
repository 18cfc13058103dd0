use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

/// An interned variable name.
///
/// Ids are handed out in interning order. The ASCII letters are interned
/// first (`a..z` then `A..Z`) so their relative order never depends on
/// what else a process has parsed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

#[derive(Default)]
struct Interner {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, u32>,
}

impl Interner {
    fn seeded() -> Self {
        let mut interner = Interner::default();
        for c in ('a'..='z').chain('A'..='Z') {
            interner.intern(&c.to_string());
        }
        interner
    }

    fn intern(&mut self, name: &str) -> u32 {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = u32::try_from(self.names.len()).expect("too many variables");
        let name: Arc<str> = Arc::from(name);
        self.names.push(name.clone());
        self.ids.insert(name, id);
        id
    }
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| RwLock::new(Interner::seeded()))
}

impl Var {
    pub fn new(name: &str) -> Var {
        assert!(!name.is_empty(), "variable names are nonempty");
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Var(id);
        }
        Var(interner().write().unwrap().intern(name))
    }

    /// `x1`, `x2`, ... as used by the indexed word families.
    pub fn indexed(prefix: &str, i: usize) -> Var {
        Var::new(&format!("{prefix}{i}"))
    }

    pub fn name(self) -> Arc<str> {
        interner().read().unwrap().names[self.0 as usize].clone()
    }

    pub fn id(self) -> u32 {
        self.0
    }

    /// Single-character names print bare, everything else in brackets.
    pub fn is_simple(self) -> bool {
        self.name().chars().count() == 1
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.name();
        if name.chars().count() == 1 {
            f.write_str(&name)
        } else {
            write!(f, "[{name}]")
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_are_preinterned_in_order() {
        assert!(Var::new("a") < Var::new("b"));
        assert!(Var::new("x") < Var::new("y"));
        assert!(Var::new("z") < Var::new("A"));
    }

    #[test]
    fn interning_is_stable() {
        let v = Var::new("x12");
        assert_eq!(v, Var::indexed("x", 12));
        assert_eq!(v.to_string(), "[x12]");
        assert_eq!(Var::new("q").to_string(), "q");
    }
}
