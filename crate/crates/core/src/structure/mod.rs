//! Finite relational structures and the constructions built on them.

mod construct;
mod json;
mod power;

pub use construct::{expand, induced_substructure, power, product, PIN_PREFIX};
pub(crate) use construct::{odometer, power_with_budget};
pub use json::{
    parse_instance, parse_structure, serialize_instance, serialize_structure, structure_to_value,
};
pub use power::{
    power_membership, power_set_of, power_structure, power_structure_by_membership, sing_structure,
    unionsing_structure,
    PowerProduct, SizeBudget, MAX_POWER_UNIVERSE,
};

use crate::{Error, Result, ValueSet};
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// A relational signature; symbols are kept sorted by name, so two
/// signatures with the same symbols compare equal regardless of input order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut out: Vec<Symbol> = symbols
            .into_iter()
            .map(|(n, arity)| Symbol {
                name: n.into(),
                arity,
            })
            .collect();
        out.sort();
        for w in out.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::DuplicateSymbol(w[0].name.clone()));
            }
        }
        if let Some(s) = out.iter().find(|s| s.arity == 0) {
            return Err(Error::ZeroArity(s.name.clone()));
        }
        Ok(Signature { symbols: out })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.symbols
            .binary_search_by(|s| s.name.as_str().cmp(name))
            .ok()
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|s| s.arity).max().unwrap_or(0)
    }
}

/// A set of tuples of element indices, stored flat and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    arity: usize,
    data: Vec<usize>,
}

impl Relation {
    pub fn empty(arity: usize) -> Self {
        Relation {
            arity,
            data: Vec::new(),
        }
    }

    /// Collects tuples, sorting and removing duplicates.
    ///
    /// Panics if a tuple does not have length `arity`.
    pub fn from_tuples<I, T>(arity: usize, tuples: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[usize]>,
    {
        let mut rows: Vec<Vec<usize>> = tuples
            .into_iter()
            .map(|t| {
                let t = t.as_ref();
                assert_eq!(t.len(), arity, "tuple arity");
                t.to_vec()
            })
            .collect();
        rows.sort_unstable();
        rows.dedup();
        Relation {
            arity,
            data: rows.concat(),
        }
    }

    /// Builds from a flat row-major buffer in any order, with duplicates.
    pub(crate) fn from_flat(arity: usize, data: Vec<usize>) -> Self {
        assert!(arity > 0);
        let n = data.len() / arity;
        let mut order: Vec<usize> = (0..n).collect();
        let row = |i: usize| &data[i * arity..(i + 1) * arity];
        order.sort_unstable_by(|&a, &b| row(a).cmp(row(b)));
        order.dedup_by(|a, b| row(*a) == row(*b));
        let mut out = Vec::with_capacity(order.len() * arity);
        for i in order {
            out.extend_from_slice(row(i));
        }
        Relation { arity, data: out }
    }

    /// Builds from a flat buffer that is already sorted and duplicate-free.
    pub(crate) fn from_sorted_flat(arity: usize, data: Vec<usize>) -> Self {
        debug_assert_eq!(data.len() % arity.max(1), 0);
        Relation { arity, data }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.arity).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.data[i * self.arity..(i + 1) * self.arity]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, usize> {
        self.data.chunks_exact(self.arity.max(1))
    }

    pub fn contains(&self, t: &[usize]) -> bool {
        if t.len() != self.arity {
            return false;
        }
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.tuple(mid).cmp(t) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// `π_i` of the relation.
    pub fn projection(&self, i: usize, universe_len: usize) -> ValueSet {
        ValueSet::from_indices(universe_len, self.iter().map(|t| t[i]))
    }
}

/// A finite relational structure: a signature, an ordered universe of
/// element identifiers, and one relation per symbol.
///
/// Element order is the order of the universe list. Every "arbitrary"
/// choice made by the algorithms follows it.
#[derive(Debug, Clone)]
pub struct Structure {
    signature: Signature,
    universe: Vec<String>,
    index: HashMap<String, usize>,
    relations: Vec<Relation>,
}

impl PartialEq for Structure {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature
            && self.universe == other.universe
            && self.relations == other.relations
    }
}

impl Eq for Structure {}

impl Structure {
    /// Assembles a structure from index-level relations, one per symbol in
    /// signature order, validating every invariant.
    pub fn from_parts(
        signature: Signature,
        universe: Vec<String>,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(universe.len());
        for (i, e) in universe.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        if relations.len() != signature.len() {
            return Err(Error::SignatureMismatch(format!(
                "{} relations for {} symbols",
                relations.len(),
                signature.len()
            )));
        }
        for (sym, rel) in signature.symbols().iter().zip(&relations) {
            if rel.arity() != sym.arity {
                return Err(Error::TupleArity {
                    symbol: sym.name.clone(),
                    tuple: 0,
                    expected: sym.arity,
                    found: rel.arity(),
                });
            }
            for (ti, t) in rel.iter().enumerate() {
                if let Some(&bad) = t.iter().find(|&&v| v >= universe.len()) {
                    return Err(Error::UnknownElementInTuple {
                        symbol: sym.name.clone(),
                        tuple: ti,
                        element: format!("#{bad}"),
                    });
                }
            }
        }
        Ok(Structure {
            signature,
            universe,
            index,
            relations,
        })
    }

    /// Builds a structure from element names.
    ///
    /// `relations` lists `(symbol, arity, tuples)`; the signature is exactly
    /// the listed symbols.
    pub fn from_named<U, S>(universe: U, relations: Vec<(&str, usize, Vec<Vec<S>>)>) -> Result<Self>
    where
        U: IntoIterator,
        U::Item: Into<String>,
        S: AsRef<str>,
    {
        let universe: Vec<String> = universe.into_iter().map(Into::into).collect();
        let signature = Signature::new(relations.iter().map(|(n, a, _)| (n.to_string(), *a)))?;
        let mut index = HashMap::new();
        for (i, e) in universe.iter().enumerate() {
            if index.insert(e.as_str(), i).is_some() {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        let mut rels = vec![Relation::empty(0); signature.len()];
        for (name, arity, tuples) in &relations {
            let pos = signature.position(name).expect("symbol just inserted");
            let mut rows = Vec::with_capacity(tuples.len());
            for (ti, t) in tuples.iter().enumerate() {
                if t.len() != *arity {
                    return Err(Error::TupleArity {
                        symbol: name.to_string(),
                        tuple: ti,
                        expected: *arity,
                        found: t.len(),
                    });
                }
                let mut row = Vec::with_capacity(*arity);
                for e in t {
                    match index.get(e.as_ref()) {
                        Some(&i) => row.push(i),
                        None => {
                            return Err(Error::UnknownElementInTuple {
                                symbol: name.to_string(),
                                tuple: ti,
                                element: e.as_ref().to_string(),
                            })
                        }
                    }
                }
                rows.push(row);
            }
            rels[pos] = Relation::from_tuples(*arity, rows);
        }
        Structure::from_parts(signature, universe, rels)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn element(&self, i: usize) -> &str {
        &self.universe[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, i: usize) -> &Relation {
        &self.relations[i]
    }

    pub fn relation_by_name(&self, name: &str) -> Option<&Relation> {
        self.signature.position(name).map(|i| &self.relations[i])
    }

    pub fn is_similar(&self, other: &Structure) -> bool {
        self.signature == other.signature
    }

    pub(crate) fn check_similar(&self, other: &Structure) -> Result<()> {
        if self.is_similar(other) {
            Ok(())
        } else {
            let a: BTreeSet<_> = self.signature.symbols().iter().collect();
            let b: BTreeSet<_> = other.signature.symbols().iter().collect();
            let diff: Vec<String> = a
                .symmetric_difference(&b)
                .map(|s| format!("{}/{}", s.name, s.arity))
                .collect();
            Err(Error::SignatureMismatch(format!(
                "symbols differ: {}",
                diff.join(", ")
            )))
        }
    }

    pub fn full_set(&self) -> ValueSet {
        ValueSet::full(self.len())
    }

    /// Total number of tuples over all relations.
    pub fn tuple_count(&self) -> usize {
        self.relations.iter().map(Relation::len).sum()
    }

    /// Names of the members of `s`, in element order.
    pub fn names_of(&self, s: &ValueSet) -> Vec<String> {
        s.iter().map(|i| self.universe[i].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_sorted_and_checked() {
        let s = Signature::new([("S", 3), ("R", 3)]).unwrap();
        assert_eq!(s.symbols()[0].name, "R");
        assert_eq!(
            Signature::new([("R", 2), ("R", 1)]).unwrap_err(),
            Error::DuplicateSymbol("R".into())
        );
        assert_eq!(
            Signature::new([("U", 0)]).unwrap_err(),
            Error::ZeroArity("U".into())
        );
    }

    #[test]
    fn relation_contains_uses_sorted_storage() {
        let r = Relation::from_tuples(2, [[1, 0], [0, 1], [0, 1]]);
        assert_eq!(r.len(), 2);
        assert!(r.contains(&[0, 1]));
        assert!(r.contains(&[1, 0]));
        assert!(!r.contains(&[1, 1]));
        assert!(!r.contains(&[1]));
    }

    #[test]
    fn named_construction_errors() {
        let err = Structure::from_named(["0", "1"], vec![("E", 2, vec![vec!["0", "1", "1"]])])
            .unwrap_err();
        assert!(matches!(err, Error::TupleArity { expected: 2, found: 3, .. }));
        let err =
            Structure::from_named(["0", "1"], vec![("E", 2, vec![vec!["0", "2"]])]).unwrap_err();
        assert!(matches!(err, Error::UnknownElementInTuple { .. }));
        let err = Structure::from_named(["0", "0"], Vec::<(&str, usize, Vec<Vec<&str>>)>::new())
            .unwrap_err();
        assert_eq!(err, Error::DuplicateElement("0".into()));
    }
}
