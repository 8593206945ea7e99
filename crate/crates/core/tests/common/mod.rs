//! Brute-force oracles and seeded instance families shared by the
//! integration tests. Nothing here calls the propagation code.

#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use relcsp::fixtures::{random_instance, random_structure, InstanceParams, StructureParams};
use relcsp::hom::enumerate_homs;
use relcsp::structure::{power_set_of, power_structure_by_membership, SizeBudget};
use relcsp::{Instance, Relation, Structure, ValueSet};

pub fn rng(seed: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// Every homomorphism `A → ℘(B)` respecting the instance pins (as singleton
/// images), as value-set vectors. `℘(B)` is built by the membership route.
pub fn homs_into_power(inst: &Instance) -> Vec<Vec<ValueSet>> {
    let b = inst.rhs();
    let p = power_structure_by_membership(b, &SizeBudget::default()).expect("power structure");
    let pins: Vec<(usize, usize)> = inst
        .pins()
        .iter()
        .map(|&(a, v)| (a, (1usize << v) - 1))
        .collect();
    enumerate_homs(inst.lhs(), &p, &pins)
        .expect("oracle budget")
        .into_iter()
        .map(|h| h.values().iter().map(|&i| power_set_of(i, b.len())).collect())
        .collect()
}

/// ACC: some homomorphism `A → ℘(B)`.
pub fn acc_holds(homs: &[Vec<ValueSet>]) -> bool {
    !homs.is_empty()
}

/// PACC: for every `a`, a homomorphism `A → ℘(B)` with `h(a)` a singleton.
pub fn pacc_holds(homs: &[Vec<ValueSet>], a_len: usize) -> bool {
    (0..a_len).all(|a| homs.iter().any(|h| h[a].is_singleton()))
}

/// SACC by exhaustive search over `s: A → ℘(B) \ {∅}`.
pub fn sacc_witness(homs: &[Vec<ValueSet>], a_len: usize, b_len: usize) -> Option<Vec<ValueSet>> {
    let subsets = (1u64 << b_len) - 1;
    let mut digits = vec![0u64; a_len];
    loop {
        let s: Vec<ValueSet> = digits.iter().map(|&d| ValueSet::from_mask(b_len, d + 1)).collect();
        let ok = (0..a_len).all(|a| {
            s[a].iter().all(|b| {
                homs.iter().any(|h| {
                    h[a] == ValueSet::singleton(b_len, b)
                        && h.iter().zip(&s).all(|(x, y)| x.is_subset(y))
                })
            })
        });
        if ok {
            return Some(s);
        }
        let mut i = a_len;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < subsets {
                break;
            }
            digits[i] = 0;
        }
    }
}

pub fn satisfiable(inst: &Instance) -> bool {
    !enumerate_homs(inst.lhs(), inst.rhs(), inst.pins())
        .expect("oracle budget")
        .is_empty()
}

/// `∃ ∅ ≠ S' ⊆ R` with `π_i S' = sets[i]`, by enumerating subsets of `R`.
pub fn member_by_subsets(r: &Relation, sets: &[ValueSet]) -> bool {
    let n = r.len();
    assert!(n <= 20);
    (1u64..1 << n).any(|sub| {
        let mut proj: Vec<ValueSet> = sets.iter().map(|s| ValueSet::empty(s.universe_len())).collect();
        for t in 0..n {
            if sub >> t & 1 == 1 {
                for (i, p) in proj.iter_mut().enumerate() {
                    p.insert(r.tuple(t)[i]);
                }
            }
        }
        proj.as_slice() == sets
    })
}

const SIGNATURES: [&[(&str, usize)]; 4] = [
    &[("E", 2)],
    &[("E", 2), ("U", 1)],
    &[("R", 3)],
    &[("E", 2), ("R", 3)],
];

/// A small random template on `1..=max_b` elements.
pub fn random_template(seed: u64, min_b: usize, max_b: usize) -> Structure {
    let mut r = rng(seed ^ 0x7e57_7e57);
    let sig = SIGNATURES[r.random_range(0..SIGNATURES.len())];
    random_structure(&StructureParams {
        elements: r.random_range(min_b..=max_b),
        signature: sig.iter().map(|&(n, k)| (n.to_string(), k)).collect(),
        max_tuples: 5,
        seed,
    })
    .expect("random template")
}

/// A random instance over `b` with `1..=max_a` elements and `0..=max_t`
/// tuples, planted on odd seeds.
pub fn random_over(b: &Structure, seed: u64, max_a: usize, max_t: usize) -> Instance {
    let mut r = rng(seed ^ 0x1257_a4ce);
    let params = InstanceParams {
        elements: r.random_range(1..=max_a),
        tuples: r.random_range(0..=max_t),
        seed,
        planted: seed % 2 == 1,
    };
    match random_instance(b, &params) {
        Ok(g) => g.instance,
        Err(_) => {
            random_instance(b, &InstanceParams { planted: false, ..params })
                .expect("unplanted generation")
                .instance
        }
    }
}

/// Random instance families for the equivalence suites: a random template
/// with `|B| ≤ max_b` and an instance with `|A| ≤ max_a`, `≤ max_t` tuples.
pub fn random_pair(seed: u64, min_b: usize, max_b: usize, max_a: usize, max_t: usize) -> Instance {
    let b = random_template(seed, min_b, max_b);
    random_over(&b, seed, max_a, max_t)
}

/// A random almost-trivial relation: random coordinate blocks, each the
/// graph of `q` coordinatewise-injective rows, multiplied out.
pub fn random_almost_trivial(seed: u64, n: usize, b_len: usize) -> Relation {
    let mut r = rng(seed);
    let mut labels = vec![0usize; n];
    for i in 1..n {
        let max = labels[..i].iter().max().copied().unwrap_or(0);
        labels[i] = r.random_range(0..=max + 1);
    }
    let blocks = labels.iter().max().map_or(0, |m| m + 1);
    let mut block_rows: Vec<(Vec<usize>, Vec<Vec<usize>>)> = Vec::new();
    for blk in 0..blocks {
        let coords: Vec<usize> = (0..n).filter(|&i| labels[i] == blk).collect();
        let q = r.random_range(1..=b_len);
        let mut columns = Vec::new();
        for _ in &coords {
            let mut vals: Vec<usize> = (0..b_len).collect();
            for i in (1..vals.len()).rev() {
                vals.swap(i, r.random_range(0..=i));
            }
            vals.truncate(q);
            columns.push(vals);
        }
        let rows = (0..q).map(|p| columns.iter().map(|c| c[p]).collect()).collect();
        block_rows.push((coords, rows));
    }
    let mut tuples: Vec<Vec<usize>> = vec![vec![0; n]];
    for (coords, rows) in &block_rows {
        let mut next = Vec::new();
        for t in &tuples {
            for row in rows {
                let mut u = t.clone();
                for (&c, &v) in coords.iter().zip(row) {
                    u[c] = v;
                }
                next.push(u);
            }
        }
        tuples = next;
    }
    Relation::from_tuples(n, tuples)
}

/// A random relation with up to `max` tuples drawn from `b_len^n`.
pub fn random_relation(seed: u64, n: usize, b_len: usize, max: usize) -> Relation {
    let mut r = rng(seed);
    let count = r.random_range(1..=max);
    let tuples: Vec<Vec<usize>> = (0..count)
        .map(|_| (0..n).map(|_| r.random_range(0..b_len)).collect())
        .collect();
    Relation::from_tuples(n, tuples)
}

/// Both conditions of almost triviality for the coordinate blocks, checked
/// over all of `B^n`.
pub fn almost_trivial_by_definition(s: &Relation, blocks: &[Vec<usize>], b_len: usize) -> bool {
    use std::collections::BTreeSet;
    let n = s.arity();
    let project = |t: &[usize], blk: &[usize]| -> Vec<usize> { blk.iter().map(|&c| t[c]).collect() };
    let images: Vec<BTreeSet<Vec<usize>>> = blocks
        .iter()
        .map(|blk| s.iter().map(|t| project(t, blk)).collect())
        .collect();
    for (blk, rows) in blocks.iter().zip(&images) {
        for pos in 0..blk.len() {
            let column: BTreeSet<usize> = rows.iter().map(|r| r[pos]).collect();
            if column.len() != rows.len() {
                return false;
            }
        }
    }
    let total = b_len.pow(n as u32);
    (0..total).all(|code| {
        let mut t = vec![0; n];
        let mut rest = code;
        for slot in t.iter_mut().rev() {
            *slot = rest % b_len;
            rest /= b_len;
        }
        let blockwise = blocks
            .iter()
            .zip(&images)
            .all(|(blk, rows)| rows.contains(&project(&t, blk)));
        s.contains(&t) == blockwise
    })
}
