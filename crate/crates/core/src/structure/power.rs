//! The power structure `℘(B)` and its `Sing`/`UnionSing` products.
//!
//! Elements of `℘(B)` are the nonempty subsets of the universe, ordered by
//! bitmask: element `i` is the set with mask `i + 1`. Relation tuples are the
//! coordinate projections of nonempty subsets of `R^B`.

use super::construct::odometer;
use super::{Relation, Structure};
use crate::{Error, Result, ValueSet};
use std::collections::HashSet;

/// Largest universe for which `℘(B)` is materialized.
pub const MAX_POWER_UNIVERSE: usize = 16;

/// Limits on materialized constructions. Exceeding one is an error, never a
/// silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeBudget {
    /// Maximum universe size of a constructed structure.
    pub max_elements: u128,
    /// Maximum number of candidate tuple combinations examined.
    pub max_work: u128,
}

impl Default for SizeBudget {
    fn default() -> Self {
        SizeBudget {
            max_elements: 1_000_000,
            max_work: 200_000_000,
        }
    }
}

impl SizeBudget {
    pub(crate) fn check_elements(&self, size: u128) -> Result<()> {
        if size > self.max_elements {
            return Err(Error::SizeGuard {
                what: "universe",
                size,
                limit: self.max_elements,
            });
        }
        Ok(())
    }

    pub(crate) fn check_work(&self, work: u128) -> Result<()> {
        if work > self.max_work {
            return Err(Error::SizeGuard {
                what: "tuple combinations",
                size: work,
                limit: self.max_work,
            });
        }
        Ok(())
    }
}

fn guard_power(b: &Structure) -> Result<()> {
    if b.len() > MAX_POWER_UNIVERSE {
        return Err(Error::SizeGuard {
            what: "power structure base universe",
            size: b.len() as u128,
            limit: MAX_POWER_UNIVERSE as u128,
        });
    }
    Ok(())
}

/// The value set denoted by element `i` of `℘(B)` for `|B| = base_len`.
pub fn power_set_of(i: usize, base_len: usize) -> ValueSet {
    ValueSet::from_mask(base_len, (i + 1) as u64)
}

fn set_name(b: &Structure, mask: u64) -> String {
    let names: Vec<&str> = (0..b.len())
        .filter(|&v| mask >> v & 1 == 1)
        .map(|v| b.element(v))
        .collect();
    format!("{{{}}}", names.join(","))
}

/// Whether `(S₁,…,S_k)` is a tuple of `R^℘(B)`.
///
/// Holds iff `T = R ∩ (S₁ × … × S_k)` is nonempty and `π_i T = S_i` for all
/// `i`; `T` itself is then a witness subset of `R`.
pub fn power_membership(r: &Relation, sets: &[ValueSet]) -> Result<bool> {
    if sets.len() != r.arity() {
        return Err(Error::ArityMismatch {
            expected: r.arity(),
            found: sets.len(),
        });
    }
    if sets.iter().any(ValueSet::is_empty) {
        return Err(Error::EmptySubset);
    }
    let mut proj: Vec<ValueSet> = sets.iter().map(|s| ValueSet::empty(s.universe_len())).collect();
    let mut any = false;
    for t in r.iter() {
        if t.iter().zip(sets).all(|(&v, s)| s.contains(v)) {
            any = true;
            for (p, &v) in proj.iter_mut().zip(t) {
                p.insert(v);
            }
        }
    }
    Ok(any && proj.iter().zip(sets).all(|(p, s)| p == s))
}

/// All projection tuples of nonempty subsets of `r`, as bitmask tuples.
///
/// Projections distribute over union, so the result is the closure of the
/// singleton projections under componentwise union; the search is linear in
/// the output rather than in `2^|R|`.
fn power_relation_masks(r: &Relation) -> Vec<Vec<u64>> {
    let seeds: Vec<Vec<u64>> = r
        .iter()
        .map(|t| t.iter().map(|&v| 1u64 << v).collect())
        .collect();
    let mut seen: HashSet<Vec<u64>> = seeds.iter().cloned().collect();
    let mut queue: Vec<Vec<u64>> = seen.iter().cloned().collect();
    while let Some(x) = queue.pop() {
        for s in &seeds {
            let y: Vec<u64> = x.iter().zip(s).map(|(a, b)| a | b).collect();
            if !seen.contains(&y) {
                seen.insert(y.clone());
                queue.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// The power structure `℘(B)` on the `2^|B| − 1` nonempty subsets.
pub fn power_structure(b: &Structure) -> Result<Structure> {
    guard_power(b)?;
    let n = (1usize << b.len()) - 1;
    let universe = (1..=n as u64).map(|m| set_name(b, m)).collect();
    let relations = b
        .relations()
        .iter()
        .map(|r| {
            let mut data = Vec::new();
            for t in power_relation_masks(r) {
                data.extend(t.iter().map(|&m| m as usize - 1));
            }
            if data.is_empty() {
                Relation::empty(r.arity())
            } else {
                Relation::from_flat(r.arity(), data)
            }
        })
        .collect();
    Structure::from_parts(b.signature().clone(), universe, relations)
}

/// `℘(B)` built by testing [`power_membership`] on every candidate tuple of
/// nonempty subsets. Exponential in arity; an independent route to
/// [`power_structure`].
pub fn power_structure_by_membership(b: &Structure, budget: &SizeBudget) -> Result<Structure> {
    guard_power(b)?;
    let n = (1usize << b.len()) - 1;
    let work: u128 = b
        .relations()
        .iter()
        .map(|r| (n as u128).pow(r.arity() as u32))
        .sum();
    budget.check_work(work)?;
    let universe = (1..=n as u64).map(|m| set_name(b, m)).collect();
    let sets: Vec<ValueSet> = (0..n).map(|i| power_set_of(i, b.len())).collect();
    let mut relations = Vec::new();
    for r in b.relations() {
        let k = r.arity();
        let mut data = Vec::new();
        let mut pick = vec![0usize; k];
        loop {
            let cand: Vec<ValueSet> = pick.iter().map(|&i| sets[i].clone()).collect();
            if power_membership(r, &cand)? {
                data.extend_from_slice(&pick);
            }
            if !odometer(&mut pick, n) {
                break;
            }
        }
        relations.push(Relation::from_sorted_flat(k, data));
    }
    Structure::from_parts(b.signature().clone(), universe, relations)
}

/// An induced substructure of `℘(B)ⁿ`, remembering which tuple of subsets
/// each element stands for.
#[derive(Debug, Clone)]
pub struct PowerProduct {
    pub structure: Structure,
    /// For each element, the `n` coordinate masks over `B`.
    pub coordinates: Vec<Vec<u64>>,
    base_len: usize,
}

impl PowerProduct {
    pub fn sets(&self, element: usize) -> Vec<ValueSet> {
        self.coordinates[element]
            .iter()
            .map(|&m| ValueSet::from_mask(self.base_len, m))
            .collect()
    }

    /// Index of the element whose coordinates are `masks`, if present.
    pub fn find(&self, masks: &[u64]) -> Option<usize> {
        self.coordinates.binary_search_by(|c| c.as_slice().cmp(masks)).ok()
    }
}

fn power_product_filtered<F>(
    b: &Structure,
    n: usize,
    budget: &SizeBudget,
    keep: F,
) -> Result<PowerProduct>
where
    F: Fn(&[u64]) -> bool,
{
    assert!(n >= 1, "power exponent must be positive");
    let p = power_structure(b)?;
    let m = p.len();
    let total = (m as u128).pow(n as u32);
    budget.check_elements(total)?;
    let work: u128 = p
        .relations()
        .iter()
        .map(|r| (r.len() as u128).pow(n as u32))
        .sum();
    budget.check_work(work)?;

    let mut code_to_index = vec![u32::MAX; total as usize];
    let mut universe = Vec::new();
    let mut coordinates = Vec::new();
    let mut digits = vec![0usize; n];
    for slot in code_to_index.iter_mut() {
        let masks: Vec<u64> = digits.iter().map(|&d| d as u64 + 1).collect();
        if keep(&masks) {
            *slot = universe.len() as u32;
            let names: Vec<&str> = digits.iter().map(|&d| p.element(d)).collect();
            universe.push(format!("({})", names.join(",")));
            coordinates.push(masks);
        }
        odometer(&mut digits, m);
    }

    let mut relations = Vec::with_capacity(p.relations().len());
    for r in p.relations() {
        let k = r.arity();
        let mut data = Vec::new();
        if !r.is_empty() {
            let mut pick = vec![0usize; n];
            let mut row = vec![0usize; k];
            'combos: loop {
                let mut ok = true;
                for (i, slot) in row.iter_mut().enumerate() {
                    let code = pick.iter().fold(0usize, |acc, &t| acc * m + r.tuple(t)[i]);
                    let idx = code_to_index[code];
                    if idx == u32::MAX {
                        ok = false;
                        break;
                    }
                    *slot = idx as usize;
                }
                if ok {
                    data.extend_from_slice(&row);
                }
                if !odometer(&mut pick, r.len()) {
                    break 'combos;
                }
            }
        }
        relations.push(if data.is_empty() {
            Relation::empty(k)
        } else {
            Relation::from_flat(k, data)
        });
    }
    let structure = Structure::from_parts(b.signature().clone(), universe, relations)?;
    Ok(PowerProduct {
        structure,
        coordinates,
        base_len: b.len(),
    })
}

fn is_singleton_mask(m: u64) -> bool {
    m.count_ones() == 1
}

/// `Sing(℘(B)ⁿ)`: tuples with at least one singleton coordinate.
pub fn sing_structure(b: &Structure, n: usize, budget: &SizeBudget) -> Result<PowerProduct> {
    power_product_filtered(b, n, budget, |ms| ms.iter().any(|&m| is_singleton_mask(m)))
}

/// `UnionSing(℘(B)ⁿ)`: tuples whose union equals the union of their
/// singleton coordinates.
pub fn unionsing_structure(b: &Structure, n: usize, budget: &SizeBudget) -> Result<PowerProduct> {
    power_product_filtered(b, n, budget, |ms| {
        let all = ms.iter().fold(0, |a, &m| a | m);
        let singles = ms
            .iter()
            .filter(|&&m| is_singleton_mask(m))
            .fold(0, |a, &m| a | m);
        all == singles
    })
}
