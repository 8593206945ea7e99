//! Finite operations and the algebraic predicates built on them.

mod closure;
mod digraph;
mod laws;
mod relations;

pub use closure::{
    all_partitions, congruences, is_simple, subalgebra_closure, AlgebraView, Partition,
    MAX_CONGRUENCE_CARRIER,
};
pub use digraph::{induced_digraph, maximal_scc, strongly_connected_components};
pub use laws::{
    check_conservative, check_majority, check_two_semilattice, is_conservative, is_majority,
    is_polymorphism, is_polymorphism_by_power, is_two_semilattice, Violation,
};
pub use relations::{
    almost_trivial_decomposition, coordinate_partitions, is_almost_trivial_with, is_ideal,
    is_subdirect, MAX_ALMOST_TRIVIAL_ARITY,
};

use crate::structure::odometer;
use crate::{Error, Result, Structure};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::{BTreeMap, HashMap};

/// A total operation `f: Bⁿ → B` stored as a dense table.
///
/// Arguments are encoded in mixed radix with the first argument most
/// significant, matching the element order of [`crate::structure::power`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOperation {
    arity: usize,
    base: Vec<String>,
    table: Vec<usize>,
}

impl FiniteOperation {
    pub fn new(arity: usize, base: Vec<String>, table: Vec<usize>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroArity("operation".into()));
        }
        let mut seen = HashMap::new();
        for (i, e) in base.iter().enumerate() {
            if seen.insert(e.as_str(), i).is_some() {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        let expected = base.len().pow(arity as u32);
        if table.len() != expected {
            return Err(Error::IncompleteTable(format!(
                "{} of {} entries given",
                table.len(),
                expected
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= base.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: base.len(),
            });
        }
        Ok(FiniteOperation { arity, base, table })
    }

    /// Tabulates `f` over every argument tuple.
    pub fn from_fn<S, F>(arity: usize, base: &[S], f: F) -> Self
    where
        S: AsRef<str>,
        F: Fn(&[usize]) -> usize,
    {
        let n = base.len();
        let mut table = Vec::with_capacity(n.pow(arity as u32));
        let mut args = vec![0usize; arity];
        if n > 0 {
            loop {
                table.push(f(&args));
                if !odometer(&mut args, n) {
                    break;
                }
            }
        }
        let base = base.iter().map(|s| s.as_ref().to_string()).collect();
        FiniteOperation::new(arity, base, table).expect("tabulated operation is well formed")
    }

    /// The `i`-th projection of the given arity.
    pub fn projection<S: AsRef<str>>(arity: usize, base: &[S], i: usize) -> Self {
        Self::from_fn(arity, base, |args| args[i])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn base_len(&self) -> usize {
        self.base.len()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn index_of(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        args.iter().fold(0, |acc, &a| acc * self.base.len() + a)
    }

    #[inline]
    pub fn apply(&self, args: &[usize]) -> usize {
        self.table[self.index_of(args)]
    }

    #[inline]
    pub fn apply2(&self, x: usize, y: usize) -> usize {
        self.table[x * self.base.len() + y]
    }

    pub(crate) fn require_arity(&self, expected: usize) -> Result<()> {
        if self.arity != expected {
            return Err(Error::WrongArity {
                expected,
                found: self.arity,
            });
        }
        Ok(())
    }

    /// The same operation re-indexed so that its base follows the universe
    /// order of `b`. Fails unless the base and the universe hold the same
    /// names.
    pub fn aligned_to(&self, b: &Structure) -> Result<FiniteOperation> {
        if self.base == b.universe() {
            return Ok(self.clone());
        }
        if self.base.len() != b.len() {
            return Err(Error::BaseMismatch);
        }
        let to_b: Vec<usize> = self
            .base
            .iter()
            .map(|e| b.index_of(e).ok_or(Error::BaseMismatch))
            .collect::<Result<_>>()?;
        let mut from_b = vec![0; b.len()];
        for (i, &j) in to_b.iter().enumerate() {
            from_b[j] = i;
        }
        let remapped = Self::from_fn(self.arity, b.universe(), |args| {
            let own: Vec<usize> = args.iter().map(|&a| from_b[a]).collect();
            to_b[self.apply(&own)]
        });
        Ok(remapped)
    }

    pub fn describe_args(&self, args: &[usize]) -> String {
        args.iter()
            .map(|&a| self.base[a].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperationDoc {
    arity: usize,
    base: Vec<String>,
    table: BTreeMap<String, String>,
}

/// Parses `{"arity":2,"base":["0","1"],"table":{"0,0":"0",…}}`.
pub fn parse_operation(text: &str) -> Result<FiniteOperation> {
    let doc: OperationDoc = serde_json::from_str(text)?;
    if doc.arity == 0 {
        return Err(Error::ZeroArity("operation".into()));
    }
    if let Some(e) = doc.base.iter().find(|e| e.contains(',')) {
        return Err(Error::Json(format!("base element `{e}` contains ','")));
    }
    let index: HashMap<&str, usize> = doc
        .base
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_str(), i))
        .collect();
    if index.len() != doc.base.len() {
        let mut names = doc.base.clone();
        names.sort();
        let dup = names.windows(2).find(|w| w[0] == w[1]).map(|w| w[0].clone());
        return Err(Error::DuplicateElement(dup.unwrap_or_default()));
    }
    let n = doc.base.len();
    let mut table = vec![usize::MAX; n.pow(doc.arity as u32)];
    for (key, value) in &doc.table {
        let parts: Vec<&str> = key.split(',').collect();
        if parts.len() != doc.arity {
            return Err(Error::ArityMismatch {
                expected: doc.arity,
                found: parts.len(),
            });
        }
        let mut pos = 0;
        for p in parts {
            let &i = index.get(p).ok_or_else(|| Error::UnknownElement(p.to_string()))?;
            pos = pos * n + i;
        }
        table[pos] = *index
            .get(value.as_str())
            .ok_or_else(|| Error::UnknownElement(value.clone()))?;
    }
    if let Some(missing) = table.iter().position(|&v| v == usize::MAX) {
        let mut args = vec![0; doc.arity];
        let mut rest = missing;
        for slot in args.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        let key: Vec<&str> = args.iter().map(|&a| doc.base[a].as_str()).collect();
        return Err(Error::IncompleteTable(key.join(",")));
    }
    FiniteOperation::new(doc.arity, doc.base, table)
}

pub fn operation_to_value(f: &FiniteOperation) -> Value {
    let n = f.base_len();
    let mut table = BTreeMap::new();
    let mut args = vec![0usize; f.arity()];
    if n > 0 {
        loop {
            table.insert(f.describe_args(&args), f.base[f.apply(&args)].clone());
            if !odometer(&mut args, n) {
                break;
            }
        }
    }
    serde_json::to_value(OperationDoc {
        arity: f.arity,
        base: f.base.clone(),
        table,
    })
    .expect("operation documents always serialize")
}

pub fn serialize_operation(f: &FiniteOperation) -> String {
    operation_to_value(f).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn json_round_trip() {
        let f = fixtures::twosem_table();
        let text = serialize_operation(&f);
        assert_eq!(parse_operation(&text).unwrap(), f);
    }

    #[test]
    fn incomplete_table_names_missing_entry() {
        let err = parse_operation(r#"{"arity":2,"base":["a","b"],"table":{"a,a":"a","a,b":"b","b,a":"b"}}"#)
            .unwrap_err();
        assert_eq!(err, Error::IncompleteTable("b,b".into()));
        let err = parse_operation(r#"{"arity":1,"base":["a"],"table":{"a":"z"}}"#).unwrap_err();
        assert_eq!(err, Error::UnknownElement("z".into()));
        let err = parse_operation(r#"{"arity":1,"base":["a,b"],"table":{}}"#).unwrap_err();
        assert!(matches!(err, Error::Json(_)));
    }

    #[test]
    fn alignment_permutes_by_name() {
        let b = fixtures::k2();
        let not = FiniteOperation::new(1, vec!["1".into(), "0".into()], vec![1, 0]).unwrap();
        // in base order ("1","0"): 1 ↦ 0, 0 ↦ 1
        let aligned = not.aligned_to(&b).unwrap();
        assert_eq!(aligned.table(), [1, 0]);
        let first = FiniteOperation::new(1, vec!["1".into(), "0".into()], vec![0, 0]).unwrap();
        assert_eq!(first.aligned_to(&b).unwrap().table(), [1, 1]);
        let wrong = FiniteOperation::projection(1, &["x", "y"], 0);
        assert_eq!(wrong.aligned_to(&b).unwrap_err(), Error::BaseMismatch);
    }
}
