use super::{FiniteOperation, Partition};
use crate::{Error, Relation, Result, ValueSet};
use std::collections::BTreeSet;

/// Largest arity accepted by [`almost_trivial_decomposition`].
pub const MAX_ALMOST_TRIVIAL_ARITY: usize = 10;

/// `I` is an ideal of `J` under `m`: `x, z ∈ I` and `y ∈ J` give
/// `m(x, y, z) ∈ I`.
pub fn is_ideal(m: &FiniteOperation, i: &ValueSet, j: &ValueSet) -> Result<bool> {
    m.require_arity(3)?;
    if !i.is_subset(j) {
        return Err(Error::Containment("I is not a subset of J".into()));
    }
    for x in i.iter() {
        for z in i.iter() {
            for y in j.iter() {
                if !i.contains(m.apply(&[x, y, z])) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether `π_i S = factors[i]` for every coordinate.
pub fn is_subdirect(s: &Relation, factors: &[ValueSet]) -> bool {
    s.arity() == factors.len()
        && factors
            .iter()
            .enumerate()
            .all(|(i, f)| s.projection(i, f.universe_len()) == *f)
}

fn project(s: &Relation, coords: &[usize]) -> BTreeSet<Vec<usize>> {
    s.iter()
        .map(|t| coords.iter().map(|&c| t[c]).collect())
        .collect()
}

fn distinct(s: &Relation, i: usize) -> usize {
    s.iter().map(|t| t[i]).collect::<BTreeSet<_>>().len()
}

/// The partition of coordinates witnessing that `s` is almost trivial, if
/// there is one.
///
/// Coordinates `i, j` share a block when `π_{i,j} S` is the graph of a
/// bijection between `π_i S` and `π_j S`; the resulting partition is then
/// checked against both conditions.
pub fn almost_trivial_decomposition(s: &Relation) -> Result<Option<Partition>> {
    let n = s.arity();
    if n > MAX_ALMOST_TRIVIAL_ARITY {
        return Err(Error::SizeGuard {
            what: "almost-trivial arity",
            size: n as u128,
            limit: MAX_ALMOST_TRIVIAL_ARITY as u128,
        });
    }
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    let sizes: Vec<usize> = (0..n).map(|i| distinct(s, i)).collect();
    let mut labels = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        if labels[i] != usize::MAX {
            continue;
        }
        labels[i] = next;
        for j in i + 1..n {
            if labels[j] == usize::MAX
                && sizes[i] == sizes[j]
                && project(s, &[i, j]).len() == sizes[i]
            {
                labels[j] = next;
            }
        }
        next += 1;
    }
    let coords: Vec<usize> = (0..n).collect();
    let p = Partition::from_labels(&coords, &labels);
    let mut product: u128 = 1;
    for block in &p.blocks {
        let q = project(s, block).len();
        if block.iter().any(|&i| sizes[i] != q) {
            return Ok(None);
        }
        product = product.saturating_mul(q as u128);
    }
    Ok((product == s.len() as u128).then_some(p))
}

/// Checks both conditions for a given partition directly: each block
/// projection is a family of coordinatewise bijections, and membership in
/// `s` is decided blockwise (by enumerating the product of the blocks).
pub fn is_almost_trivial_with(s: &Relation, p: &Partition) -> bool {
    let n = s.arity();
    let mut covered: Vec<usize> = p.blocks.iter().flatten().copied().collect();
    covered.sort_unstable();
    if covered != (0..n).collect::<Vec<_>>() || p.blocks.iter().any(|b| b.is_empty()) {
        return false;
    }
    let projections: Vec<Vec<Vec<usize>>> = p
        .blocks
        .iter()
        .map(|b| project(s, b).into_iter().collect())
        .collect();
    for rows in &projections {
        if rows.is_empty() {
            return false;
        }
        for c in 0..rows[0].len() {
            let values: BTreeSet<usize> = rows.iter().map(|r| r[c]).collect();
            if values.len() != rows.len() {
                return false;
            }
        }
    }
    let radix: Vec<usize> = projections.iter().map(|r| r.len()).collect();
    let mut pick = vec![0usize; radix.len()];
    let mut t = vec![0usize; n];
    loop {
        for ((block, rows), &k) in p.blocks.iter().zip(&projections).zip(&pick) {
            for (&c, &v) in block.iter().zip(&rows[k]) {
                t[c] = v;
            }
        }
        if !s.contains(&t) {
            return false;
        }
        let mut i = radix.len();
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < radix[i] {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// Every partition of `[n]`; used by exhaustive searches.
pub fn coordinate_partitions(n: usize) -> Vec<Partition> {
    super::closure::all_partitions(&(0..n).collect::<Vec<_>>())
}
