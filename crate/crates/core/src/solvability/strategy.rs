//! `k`-strategies: greatest families of partial homomorphisms with domains
//! of size at most `k` satisfying the restriction and extension conditions.

use crate::{Error, Instance, PartialHom, Relation, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256StarStar;
use std::collections::HashMap;

/// Default cap on the number of candidate partial homomorphisms.
pub const STRATEGY_BUDGET: u128 = 2_000_000;

/// The surviving family of a `k`-strategy computation, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategySet {
    pub k: usize,
    pub family: Vec<PartialHom>,
}

impl StrategySet {
    /// Whether the family is a (nonempty) `k`-strategy.
    pub fn holds(&self) -> bool {
        !self.family.is_empty()
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn candidates(inst: &Instance, k: usize, budget: u128) -> Result<Vec<PartialHom>> {
    let (lhs, rhs) = inst.expanded()?;
    let (na, nb) = (lhs.len(), rhs.len());
    let total: u128 = (0..=k.min(na))
        .map(|j| binomial(na, j).saturating_mul((nb as u128).saturating_pow(j as u32)))
        .fold(0u128, |a, x| a.saturating_add(x));
    if total > budget {
        return Err(Error::SizeGuard {
            what: "partial homomorphisms",
            size: total,
            limit: budget,
        });
    }
    // grow level by level: every partial hom of size j+1 extends one of size j
    let mut out = vec![PartialHom::empty()];
    let mut frontier = vec![PartialHom::empty()];
    for _ in 0..k.min(na) {
        let mut next = Vec::new();
        for f in &frontier {
            let start = f.domain().last().map_or(0, |&m| m + 1);
            for a in start..na {
                for b in 0..nb {
                    let g = f.with(a, b);
                    if g.is_partial_hom(&lhs, &rhs) {
                        next.push(g);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    Ok(out)
}

/// [`k_strategy_with`] with the default budget and the deterministic sweep.
pub fn k_strategy(inst: &Instance, k: usize) -> Result<StrategySet> {
    k_strategy_with(inst, k, STRATEGY_BUDGET, None)
}

pub fn has_k_strategy(inst: &Instance, k: usize) -> Result<bool> {
    Ok(k_strategy(inst, k)?.holds())
}

/// Starts from every partial homomorphism with at most `k` elements in its
/// domain and deletes, until nothing changes, each `f` that
/// - has `|Dom f| < k` and some `a ∉ Dom f` with no surviving `f ∪ {a ↦ b}`, or
/// - has a one-element restriction that was deleted.
///
/// Sweeps go in sorted order, or in a permutation drawn from `shuffle` when
/// given; the fixpoint does not depend on it.
pub fn k_strategy_with(inst: &Instance, k: usize, budget: u128, shuffle: Option<u64>) -> Result<StrategySet> {
    assert!(k >= 1, "k must be positive");
    let family = candidates(inst, k, budget)?;
    let na = inst.lhs().len();
    let nb = inst.rhs().len();
    let index: HashMap<&PartialHom, usize> = family.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut alive = vec![true; family.len()];
    let mut order: Vec<usize> = (0..family.len()).collect();
    if let Some(seed) = shuffle {
        order.shuffle(&mut Xoshiro256StarStar::seed_from_u64(seed));
    }
    loop {
        let mut changed = false;
        for &i in &order {
            if !alive[i] {
                continue;
            }
            let f = &family[i];
            let restriction_dead = (0..f.len()).any(|p| {
                index
                    .get(&f.without_position(p))
                    .is_none_or(|&j| !alive[j])
            });
            let extension_missing = f.len() < k
                && (0..na).filter(|&a| f.get(a).is_none()).any(|a| {
                    !(0..nb).any(|b| index.get(&f.with(a, b)).is_some_and(|&j| alive[j]))
                });
            if restriction_dead || extension_missing {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(StrategySet {
        k,
        family: family
            .into_iter()
            .zip(alive)
            .filter_map(|(f, keep)| keep.then_some(f))
            .collect(),
    })
}

/// `H_{a₁,…,a_j}`: the tuples `(f(a₁),…,f(a_j))` over members `f` with
/// domain exactly `{a₁,…,a_j}`. The `aᵢ` must be distinct.
pub fn strategy_relation(h: &StrategySet, elements: &[usize]) -> Relation {
    let mut dom = elements.to_vec();
    dom.sort_unstable();
    assert!(dom.windows(2).all(|w| w[0] != w[1]), "elements must be distinct");
    let rows = h.family.iter().filter(|f| f.domain() == dom).map(|f| {
        elements
            .iter()
            .map(|&a| f.get(a).expect("in domain"))
            .collect::<Vec<_>>()
    });
    if elements.is_empty() {
        return Relation::empty(0);
    }
    Relation::from_tuples(elements.len(), rows)
}
