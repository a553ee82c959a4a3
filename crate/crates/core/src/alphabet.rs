//! Finite alphabets and wire bundles.
//!
//! An [`Obj`] is an ordered list of atomic [`Alphabet`]s. Its tuple space is the
//! Cartesian product of the wires, and a tuple is stored as a single mixed-radix
//! index with the first wire most significant. Because of that encoding the
//! bundles `[A, B] ++ [C]` and `[A, B, C]` share the same indices, so flattening
//! is free. Wires equal to the unit alphabet are dropped on construction, which
//! makes the empty bundle and a bundle of unit wires interchangeable.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Name and only symbol of the one-element alphabet.
pub const UNIT_NAME: &str = "unit";
pub const UNIT_SYMBOL: &str = "()";

/// A named finite set of symbols with a fixed canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    name: String,
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<N, I, S>(name: N, symbols: I) -> Result<Self>
    where
        N: Into<String>,
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let name = name.into();
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateSymbol {
                    alphabet: name,
                    symbol: s.clone(),
                });
            }
        }
        Ok(Alphabet { name, symbols })
    }

    /// Alphabet `name` with symbols `prefix0 .. prefix{n-1}`.
    pub fn numbered(name: &str, prefix: &str, n: usize) -> Self {
        Alphabet {
            name: name.to_string(),
            symbols: (0..n).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn unit() -> Self {
        Alphabet {
            name: UNIT_NAME.to_string(),
            symbols: vec![UNIT_SYMBOL.to_string()],
        }
    }

    pub fn is_unit(&self) -> bool {
        self.name == UNIT_NAME && self.symbols.len() == 1 && self.symbols[0] == UNIT_SYMBOL
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }
}

/// An ordered bundle of wires; the objects of the relational category.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj {
    wires: Vec<Alphabet>,
}

impl Obj {
    pub fn new(wires: impl IntoIterator<Item = Alphabet>) -> Self {
        Obj {
            wires: wires.into_iter().filter(|w| !w.is_unit()).collect(),
        }
    }

    /// The monoidal unit: no wires, one (empty) tuple.
    pub fn unit() -> Self {
        Obj { wires: Vec::new() }
    }

    pub fn wire(a: Alphabet) -> Self {
        Obj::new([a])
    }

    pub fn wires(&self) -> &[Alphabet] {
        &self.wires
    }

    pub fn is_unit(&self) -> bool {
        self.wires.is_empty()
    }

    /// Number of tuples.
    pub fn size(&self) -> usize {
        self.wires.iter().map(Alphabet::len).product()
    }

    /// `self ++ other`.
    pub fn concat(&self, other: &Obj) -> Obj {
        let mut wires = self.wires.clone();
        wires.extend(other.wires.iter().cloned());
        Obj { wires }
    }

    /// Splits off the trailing `suffix`, if `self` ends with it.
    pub fn strip_suffix(&self, suffix: &Obj) -> Option<Obj> {
        let n = self.wires.len();
        let m = suffix.wires.len();
        if m > n || self.wires[n - m..] != suffix.wires[..] {
            return None;
        }
        Some(Obj {
            wires: self.wires[..n - m].to_vec(),
        })
    }

    pub fn encode(&self, components: &[usize]) -> Result<usize> {
        if components.len() != self.wires.len() {
            return Err(Error::TypeMismatch {
                expected: format!("{} components", self.wires.len()),
                found: format!("{} components", components.len()),
            });
        }
        let mut idx = 0;
        for (w, &c) in self.wires.iter().zip(components) {
            if c >= w.len() {
                return Err(Error::OutOfRange {
                    object: w.name.clone(),
                    index: c,
                    size: w.len(),
                });
            }
            idx = idx * w.len() + c;
        }
        Ok(idx)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.wires.len()];
        for (slot, w) in out.iter_mut().zip(&self.wires).rev() {
            *slot = idx % w.len();
            idx /= w.len();
        }
        out
    }

    /// Symbol names of the tuple at `idx`, one per wire.
    pub fn symbols_of(&self, idx: usize) -> Vec<&str> {
        self.decode(idx)
            .into_iter()
            .zip(&self.wires)
            .map(|(c, w)| w.symbols[c].as_str())
            .collect()
    }

    pub fn index_of_symbols<S: AsRef<str>>(&self, symbols: &[S]) -> Result<usize> {
        if symbols.len() != self.wires.len() {
            return Err(Error::TypeMismatch {
                expected: format!("tuple of {} symbols for `{}`", self.wires.len(), self),
                found: format!("{} symbols", symbols.len()),
            });
        }
        let mut components = Vec::with_capacity(symbols.len());
        for (w, s) in self.wires.iter().zip(symbols) {
            let c = w.index_of(s.as_ref()).ok_or_else(|| Error::UnknownSymbol {
                object: w.name.clone(),
                symbol: s.as_ref().to_string(),
            })?;
            components.push(c);
        }
        self.encode(&components)
    }

    /// Human-readable tuple: the bare symbol for a single wire, `()` for the
    /// unit, `(a,b)` otherwise.
    pub fn render(&self, idx: usize) -> String {
        let syms = self.symbols_of(idx);
        match syms.len() {
            0 => UNIT_SYMBOL.to_string(),
            1 => syms[0].to_string(),
            _ => format!("({})", syms.join(",")),
        }
    }

    /// Looks a tuple up by its rendered name.
    pub fn parse_rendered(&self, text: &str) -> Result<usize> {
        (0..self.size())
            .find(|&i| self.render(i) == text)
            .ok_or_else(|| Error::UnknownSymbol {
                object: self.to_string(),
                symbol: text.to_string(),
            })
    }

    /// A single atomic wire whose symbols are the rendered tuples of `self`.
    pub fn flatten_named(&self, name: &str) -> Alphabet {
        Alphabet {
            name: name.to_string(),
            symbols: (0..self.size()).map(|i| self.render(i)).collect(),
        }
    }

    /// Atomic alphabet holding only the tuples in `kept` (in the given order).
    pub fn restrict_named(&self, name: &str, kept: &[usize]) -> Alphabet {
        Alphabet {
            name: name.to_string(),
            symbols: kept.iter().map(|&i| self.render(i)).collect(),
        }
    }

    /// Checks that `idx` is a valid tuple index.
    pub fn check(&self, idx: usize) -> Result<()> {
        if idx < self.size() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                object: self.to_string(),
                index: idx,
                size: self.size(),
            })
        }
    }

    /// Errors unless `other` is the same bundle of wires.
    pub fn expect_eq(&self, other: &Obj) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::TypeMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.wires.is_empty() {
            return f.write_str(UNIT_NAME);
        }
        let names: Vec<&str> = self.wires.iter().map(|w| w.name.as_str()).collect();
        f.write_str(&names.join("×"))
    }
}

impl From<Alphabet> for Obj {
    fn from(a: Alphabet) -> Self {
        Obj::wire(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new("A", ["a", "b"]).unwrap()
    }

    #[test]
    fn duplicate_symbols_rejected() {
        assert!(matches!(
            Alphabet::new("A", ["a", "a"]),
            Err(Error::DuplicateSymbol { .. })
        ));
    }

    #[test]
    fn unit_wires_are_dropped() {
        let o = Obj::new([Alphabet::unit(), ab(), Alphabet::unit()]);
        assert_eq!(o, Obj::wire(ab()));
        assert_eq!(Obj::new([Alphabet::unit()]), Obj::unit());
        assert_eq!(Obj::unit().size(), 1);
    }

    #[test]
    fn encoding_is_flat() {
        let c = Alphabet::new("C", ["x", "y", "z"]).unwrap();
        let left = Obj::new([ab(), c.clone()]).concat(&Obj::wire(ab()));
        let flat = Obj::new([ab(), c, ab()]);
        assert_eq!(left, flat);
        for i in 0..flat.size() {
            assert_eq!(flat.encode(&flat.decode(i)).unwrap(), i);
        }
        assert_eq!(flat.render(flat.encode(&[1, 2, 0]).unwrap()), "(b,z,a)");
        assert_eq!(flat.parse_rendered("(b,z,a)").unwrap(), 1 * 6 + 2 * 2);
    }

    #[test]
    fn strip_suffix() {
        let q = Alphabet::new("Q", ["p", "q"]).unwrap();
        let o = Obj::new([ab(), q.clone()]);
        assert_eq!(o.strip_suffix(&Obj::wire(q)), Some(Obj::wire(ab())));
        assert_eq!(o.strip_suffix(&Obj::wire(Alphabet::numbered("Z", "z", 2))), None);
    }
}
