//! Typed finite relations and the monoidal, compact-closed operations on them.

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::{Alphabet, Obj};
use crate::error::{Error, Result};

/// A relation between the tuple spaces of `dom` and `cod`, stored as an
/// explicit sorted set of index pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rel {
    dom: Obj,
    cod: Obj,
    pairs: BTreeSet<(usize, usize)>,
}

impl Rel {
    pub fn new(dom: Obj, cod: Obj, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        for &(x, y) in &pairs {
            dom.check(x)?;
            cod.check(y)?;
        }
        Ok(Rel { dom, cod, pairs })
    }

    /// Builds a relation from rendered tuple names.
    pub fn from_rendered<S: AsRef<str>>(dom: Obj, cod: Obj, pairs: &[(S, S)]) -> Result<Self> {
        let mut out = BTreeSet::new();
        for (x, y) in pairs {
            out.insert((dom.parse_rendered(x.as_ref())?, cod.parse_rendered(y.as_ref())?));
        }
        Ok(Rel { dom, cod, pairs: out })
    }

    pub fn empty(dom: Obj, cod: Obj) -> Self {
        Rel {
            dom,
            cod,
            pairs: BTreeSet::new(),
        }
    }

    pub fn dom(&self) -> &Obj {
        &self.dom
    }

    pub fn cod(&self) -> &Obj {
        &self.cod
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Image of every domain element, indexed by domain tuple.
    pub fn image_table(&self) -> Vec<Vec<usize>> {
        let mut table = vec![Vec::new(); self.dom.size()];
        for &(x, y) in &self.pairs {
            table[x].push(y);
        }
        table
    }

    /// `{ y | x ∈ xs, (x, y) ∈ self }`
    pub fn image(&self, xs: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.pairs
            .iter()
            .filter(|(x, _)| xs.contains(x))
            .map(|&(_, y)| y)
            .collect()
    }

    /// `{ x | (x, y) ∈ self, y ∈ ys }`
    pub fn preimage(&self, ys: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.pairs
            .iter()
            .filter(|(_, y)| ys.contains(y))
            .map(|&(x, _)| x)
            .collect()
    }

    pub fn domain_of_definition(&self) -> BTreeSet<usize> {
        self.pairs.iter().map(|&(x, _)| x).collect()
    }

    pub fn range(&self) -> BTreeSet<usize> {
        self.pairs.iter().map(|&(_, y)| y).collect()
    }

    /// Sequential composition: `self` first, then `next`.
    pub fn then(&self, next: &Rel) -> Result<Rel> {
        self.cod.expect_eq(&next.dom)?;
        let mut by_mid: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(y, z) in &next.pairs {
            by_mid.entry(y).or_default().push(z);
        }
        let mut pairs = BTreeSet::new();
        for &(x, y) in &self.pairs {
            if let Some(zs) = by_mid.get(&y) {
                pairs.extend(zs.iter().map(|&z| (x, z)));
            }
        }
        Ok(Rel {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            pairs,
        })
    }

    /// Parallel (tensor) product.
    pub fn product(&self, other: &Rel) -> Rel {
        let (dn, cn) = (other.dom.size(), other.cod.size());
        let mut pairs = BTreeSet::new();
        for &(x1, y1) in &self.pairs {
            for &(x2, y2) in &other.pairs {
                pairs.insert((x1 * dn + x2, y1 * cn + y2));
            }
        }
        Rel {
            dom: self.dom.concat(&other.dom),
            cod: self.cod.concat(&other.cod),
            pairs,
        }
    }

    pub fn transpose(&self) -> Rel {
        Rel {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            pairs: self.pairs.iter().map(|&(x, y)| (y, x)).collect(),
        }
    }

    pub fn union(&self, other: &Rel) -> Result<Rel> {
        self.expect_same_type(other)?;
        Ok(Rel {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            pairs: self.pairs.union(&other.pairs).copied().collect(),
        })
    }

    pub fn identity(o: &Obj) -> Rel {
        Rel {
            dom: o.clone(),
            cod: o.clone(),
            pairs: (0..o.size()).map(|x| (x, x)).collect(),
        }
    }

    /// `γ_{a,b}`: relates `(x, y)` to `(y, x)`.
    pub fn swap(a: &Obj, b: &Obj) -> Rel {
        let (na, nb) = (a.size(), b.size());
        let mut pairs = BTreeSet::new();
        for x in 0..na {
            for y in 0..nb {
                pairs.insert((x * nb + y, y * na + x));
            }
        }
        Rel {
            dom: a.concat(b),
            cod: b.concat(a),
            pairs,
        }
    }

    /// `unit → a × a`, the diagonal.
    pub fn cup(a: &Obj) -> Rel {
        let n = a.size();
        Rel {
            dom: Obj::unit(),
            cod: a.concat(a),
            pairs: (0..n).map(|x| (0, x * n + x)).collect(),
        }
    }

    /// `a × a → unit`, the transpose of [`Rel::cup`].
    pub fn cap(a: &Obj) -> Rel {
        Rel::cup(a).transpose()
    }

    /// The maximal relation `o → unit`.
    pub fn full_to_unit(o: &Obj) -> Rel {
        Rel {
            dom: o.clone(),
            cod: Obj::unit(),
            pairs: (0..o.size()).map(|x| (x, 0)).collect(),
        }
    }

    /// A subset seen as a relation `unit → o`.
    pub fn point(o: &Obj, subset: &BTreeSet<usize>) -> Result<Rel> {
        Rel::new(Obj::unit(), o.clone(), subset.iter().map(|&x| (0, x)))
    }

    /// A subset seen as a relation `o → unit`.
    pub fn copoint(o: &Obj, subset: &BTreeSet<usize>) -> Result<Rel> {
        Rel::new(o.clone(), Obj::unit(), subset.iter().map(|&x| (x, 0)))
    }

    /// The graph of a total function given as a table.
    pub fn from_function(dom: Obj, cod: Obj, f: &[usize]) -> Result<Rel> {
        if f.len() != dom.size() {
            return Err(Error::TypeMismatch {
                expected: format!("table of {} entries", dom.size()),
                found: format!("{} entries", f.len()),
            });
        }
        Rel::new(dom, cod, f.iter().copied().enumerate())
    }

    pub fn is_partial_function(&self) -> bool {
        let mut last = None;
        for &(x, _) in &self.pairs {
            if last == Some(x) {
                return false;
            }
            last = Some(x);
        }
        true
    }

    pub fn is_total(&self) -> bool {
        self.domain_of_definition().len() == self.dom.size()
    }

    pub fn is_function(&self) -> bool {
        self.is_partial_function() && self.is_total()
    }

    pub fn is_surjective(&self) -> bool {
        self.range().len() == self.cod.size()
    }

    pub fn is_injective(&self) -> bool {
        self.transpose().is_partial_function()
    }

    pub fn is_bijection(&self) -> bool {
        self.is_function() && self.is_injective() && self.is_surjective()
    }

    pub fn subset_of(&self, other: &Rel) -> Result<bool> {
        self.expect_same_type(other)?;
        Ok(self.pairs.is_subset(&other.pairs))
    }

    pub fn rel_equals(&self, other: &Rel) -> Result<bool> {
        self.expect_same_type(other)?;
        Ok(self.pairs == other.pairs)
    }

    fn expect_same_type(&self, other: &Rel) -> Result<()> {
        self.dom.expect_eq(&other.dom)?;
        self.cod.expect_eq(&other.cod)
    }

    /// Same pairs, retyped onto another bundle with the same tuple space.
    pub fn retyped(&self, dom: Obj, cod: Obj) -> Result<Rel> {
        if dom.size() != self.dom.size() || cod.size() != self.cod.size() {
            return Err(Error::TypeMismatch {
                expected: format!("{} → {}", self.dom, self.cod),
                found: format!("{dom} → {cod}"),
            });
        }
        Ok(Rel {
            dom,
            cod,
            pairs: self.pairs.clone(),
        })
    }
}

/// `compose(r, s)` is `s ∘ r`: first `r`, then `s`.
pub fn compose(r: &Rel, s: &Rel) -> Result<Rel> {
    r.then(s)
}

pub fn product(r: &Rel, s: &Rel) -> Rel {
    r.product(s)
}

pub fn transpose(r: &Rel) -> Rel {
    r.transpose()
}

/// Subset of `a` given by symbol names, as a relation `unit → a`.
pub fn subset_as_point<S: AsRef<str>>(a: &Alphabet, subset: &[S]) -> Result<Rel> {
    let o = Obj::wire(a.clone());
    Rel::point(&o, &symbol_subset(&o, subset)?)
}

/// Subset of `a` given by symbol names, as a relation `a → unit`.
pub fn subset_as_copoint<S: AsRef<str>>(a: &Alphabet, subset: &[S]) -> Result<Rel> {
    let o = Obj::wire(a.clone());
    Rel::copoint(&o, &symbol_subset(&o, subset)?)
}

pub(crate) fn symbol_subset<S: AsRef<str>>(o: &Obj, subset: &[S]) -> Result<BTreeSet<usize>> {
    subset.iter().map(|s| o.parse_rendered(s.as_ref())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bit() -> Obj {
        Obj::wire(Alphabet::new("B", ["0", "1"]).unwrap())
    }

    fn not() -> Rel {
        Rel::new(bit(), bit(), [(0, 1), (1, 0)]).unwrap()
    }

    #[test]
    fn not_is_an_involution() {
        assert_eq!(compose(&not(), &not()).unwrap(), Rel::identity(&bit()));
    }

    #[test]
    fn empty_annihilates() {
        let e = Rel::empty(bit(), bit());
        assert!(compose(&e, &not()).unwrap().is_empty());
        assert!(product(&not(), &e).is_empty());
    }

    #[test]
    fn compose_enumerated() {
        let r = Rel::new(bit(), bit(), [(0, 0), (0, 1)]).unwrap();
        let s = Rel::new(bit(), bit(), [(1, 0)]).unwrap();
        // brute force over every middle element
        let mut expected = BTreeSet::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    if r.contains(x, y) && s.contains(y, z) {
                        expected.insert((x, z));
                    }
                }
            }
        }
        assert_eq!(expected, BTreeSet::from([(0, 0)]));
        assert_eq!(compose(&r, &s).unwrap().pairs(), &expected);
    }

    #[test]
    fn compose_type_mismatch() {
        let other = Obj::wire(Alphabet::new("C", ["0", "1"]).unwrap());
        let r = Rel::identity(&other);
        assert!(matches!(compose(&not(), &r), Err(Error::TypeMismatch { .. })));
    }

    #[test]
    fn product_of_nots() {
        let p = product(&not(), &not());
        assert_eq!(p.len(), 4);
        for x in 0..2 {
            for y in 0..2 {
                assert!(p.contains(x * 2 + y, (1 - x) * 2 + (1 - y)));
            }
        }
        let a = Obj::wire(Alphabet::new("A", ["a", "b", "c"]).unwrap());
        assert_eq!(
            product(&Rel::identity(&bit()), &Rel::identity(&a)),
            Rel::identity(&bit().concat(&a))
        );
    }

    #[test]
    fn transpose_basics() {
        let r = Rel::new(bit(), bit(), [(0, 1)]).unwrap();
        assert_eq!(r.transpose().pairs(), &BTreeSet::from([(1, 0)]));
        assert_eq!(Rel::identity(&bit()).transpose(), Rel::identity(&bit()));
        let r = Rel::new(bit(), bit(), [(0, 0), (0, 1)]).unwrap();
        assert_eq!(r.transpose().transpose(), r);
    }

    #[test]
    fn cup_cap_and_snake() {
        let a = Obj::wire(Alphabet::new("A", ["a", "b"]).unwrap());
        let cup = Rel::cup(&a);
        let expected = Rel::from_rendered(Obj::unit(), a.concat(&a), &[("()", "(a,a)"), ("()", "(b,b)")]).unwrap();
        assert_eq!(cup, expected);
        let left = product(&Rel::cup(&a), &Rel::identity(&a));
        let right = product(&Rel::identity(&a), &Rel::cap(&a));
        assert_eq!(left.then(&right).unwrap(), Rel::identity(&a));
    }

    #[test]
    fn full_to_unit_relates_everything() {
        let a = Obj::wire(Alphabet::new("A", ["a", "b"]).unwrap());
        let r = Rel::full_to_unit(&a);
        assert_eq!(r, Rel::from_rendered(a, Obj::unit(), &[("a", "()"), ("b", "()")]).unwrap());
    }

    #[test]
    fn predicates() {
        assert!(not().is_function());
        let r = Rel::new(bit(), bit(), [(0, 0), (0, 1)]).unwrap();
        assert!(!r.is_partial_function());
        let s = Rel::new(bit(), bit(), [(0, 0)]).unwrap();
        assert!(s.subset_of(&Rel::identity(&bit())).unwrap());
        assert!(s.is_partial_function() && !s.is_total() && !s.is_surjective());
        let other = Obj::wire(Alphabet::new("C", ["0", "1"]).unwrap());
        assert!(s.subset_of(&Rel::identity(&other)).is_err());
        assert!(!s.rel_equals(&Rel::identity(&bit())).unwrap());
    }

    #[test]
    fn points_and_copoints() {
        let q = Alphabet::new("Q", ["p", "q"]).unwrap();
        assert_eq!(subset_as_point(&q, &["p"]).unwrap().pairs(), &BTreeSet::from([(0, 0)]));
        assert!(subset_as_copoint(&q, &[] as &[&str]).unwrap().is_empty());
        let meet = compose(
            &subset_as_point(&q, &["p", "q"]).unwrap(),
            &subset_as_copoint(&q, &["q"]).unwrap(),
        )
        .unwrap();
        assert_eq!(meet.pairs(), &BTreeSet::from([(0, 0)]));
        assert!(matches!(
            subset_as_point(&q, &["r"]),
            Err(Error::UnknownSymbol { .. })
        ));
    }
}
