//! Weak and strong strategies.
//!
//! A pattern step `a --(R,i,j)--> a'` exists when some `t ∈ R^A` has
//! `t[i] = a`, `t[j] = a'` (`i = j` allowed). On the `B` side the same label
//! moves `t[i]` to `t[j]` for `t ∈ R^B`. A realization lies *inside* `H` when
//! every pattern element's value is in `H` of that element; the other
//! coordinates of the witnessing tuples are unconstrained.
//!
//! Pins are checked as the unary relations of the expansion.

use crate::{Instance, Structure, ValueSet};
use std::collections::{BTreeSet, HashSet, VecDeque};

struct Steps {
    /// `(a, label, a')`, deduplicated.
    edges: Vec<(usize, usize, usize)>,
    /// `moves[label][b]`: values reachable from `b` under `label`.
    moves: Vec<Vec<ValueSet>>,
    /// Outgoing edge indices per `A` element.
    out: Vec<Vec<usize>>,
}

fn steps(lhs: &Structure, rhs: &Structure) -> Steps {
    let b_len = rhs.len();
    let mut labels = Vec::new();
    let mut moves = Vec::new();
    let mut edges = BTreeSet::new();
    for (s, (ra, rb)) in lhs.relations().iter().zip(rhs.relations()).enumerate() {
        let k = ra.arity();
        for i in 0..k {
            for j in 0..k {
                let label = labels.len();
                labels.push((s, i, j));
                let mut m = vec![ValueSet::empty(b_len); b_len];
                for u in rb.iter() {
                    m[u[i]].insert(u[j]);
                }
                moves.push(m);
                for t in ra.iter() {
                    edges.insert((t[i], label, t[j]));
                }
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let mut out = vec![Vec::new(); lhs.len()];
    for (e, &(a, _, _)) in edges.iter().enumerate() {
        out[a].push(e);
    }
    Steps { edges, moves, out }
}

fn image(moves: &[ValueSet], from: &ValueSet, len: usize) -> ValueSet {
    let mut z = ValueSet::empty(len);
    for b in from.iter() {
        z.union_with(&moves[b]);
    }
    z
}

fn is_set_system(inst: &Instance, h: &[ValueSet]) -> bool {
    assert_eq!(h.len(), inst.lhs().len(), "set system must cover the left universe");
    h.iter().all(|s| !s.is_empty())
}

/// Every length-2 pattern `a, e, a'` has, for each `b ∈ H(a)`, a support
/// `(b, b')` with `b' ∈ H(a')`. Empty values make `H` no set system and
/// the answer `false`.
pub fn is_weak_strategy(inst: &Instance, h: &[ValueSet]) -> bool {
    if !is_set_system(inst, h) {
        return false;
    }
    let (lhs, rhs) = inst.expanded().expect("instance is well formed");
    let st = steps(&lhs, &rhs);
    st.edges.iter().all(|&(a, label, a2)| {
        h[a]
            .iter()
            .all(|b| st.moves[label][b].iter().any(|b2| h[a2].contains(b2)))
    })
}

/// For every cycle from `a` and every `b ∈ H(a)`, some realization inside
/// `H` starts and ends at `b`.
///
/// Decided on the subset automaton: from `(a, {b})`, a step along `e` maps
/// `(a', Z)` to `(a'', moves_e(Z) ∩ H(a''))`. `H` fails iff some reachable
/// state sits at `a` with `b ∉ Z`.
pub fn is_strong_strategy(inst: &Instance, h: &[ValueSet]) -> bool {
    if !is_set_system(inst, h) {
        return false;
    }
    let (lhs, rhs) = inst.expanded().expect("instance is well formed");
    let st = steps(&lhs, &rhs);
    let b_len = rhs.len();
    for a in 0..lhs.len() {
        for b in h[a].iter() {
            let start = (a, ValueSet::singleton(b_len, b));
            let mut seen = HashSet::from([start.clone()]);
            let mut queue = VecDeque::from([start]);
            while let Some((x, z)) = queue.pop_front() {
                for &e in &st.out[x] {
                    let (_, label, y) = st.edges[e];
                    let mut z2 = image(&st.moves[label], &z, b_len);
                    z2.intersect_with(&h[y]);
                    if y == a && !z2.contains(b) {
                        return false;
                    }
                    let next = (y, z2);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::{arc_consistency, sac, Verdict};
    use crate::fixtures::k2;

    fn inst(universe: &[&str], edges: &[[&str; 2]]) -> Instance {
        let a = Structure::from_named(
            universe.iter().copied(),
            vec![("E", 2, edges.iter().map(|e| e.to_vec()).collect())],
        )
        .unwrap();
        Instance::new(a, k2()).unwrap()
    }

    #[test]
    fn loop_on_k2() {
        let i = inst(&["a"], &[["a", "a"]]);
        let h = vec![ValueSet::full(2)];
        assert!(is_weak_strategy(&i, &h));
        assert!(!is_strong_strategy(&i, &h));
    }

    #[test]
    fn unsupported_edge() {
        let i = inst(&["x", "y"], &[["x", "y"]]);
        let h = vec![ValueSet::singleton(2, 0), ValueSet::singleton(2, 0)];
        assert!(!is_weak_strategy(&i, &h));
        let good = vec![ValueSet::singleton(2, 0), ValueSet::singleton(2, 1)];
        assert!(is_strong_strategy(&i, &good));
    }

    #[test]
    fn isolated_element_is_trivially_strong() {
        let i = inst(&["x"], &[]);
        assert!(is_strong_strategy(&i, &[ValueSet::full(2)]));
        assert!(!is_weak_strategy(&i, &[ValueSet::empty(2)]));
    }

    #[test]
    fn ac_sets_are_weak_and_sac_sets_strong_on_even_cycle() {
        let i = inst(&["p", "q", "r", "s"], &[["p", "q"], ["q", "r"], ["r", "s"], ["s", "p"]]);
        let ac = arc_consistency(&i);
        assert!(is_weak_strategy(&i, &ac.sets));
        let sc = sac(&i);
        assert_eq!(sc.verdict, Verdict::Unknown);
        assert!(is_strong_strategy(&i, &sc.sets));
    }

    #[test]
    fn pins_count_as_unary_constraints() {
        let i = inst(&["x", "y"], &[["x", "y"]]).pinned(0, 1).unwrap();
        let free = vec![ValueSet::full(2), ValueSet::full(2)];
        assert!(!is_weak_strategy(&i, &free));
        let pinned = vec![ValueSet::singleton(2, 1), ValueSet::singleton(2, 0)];
        assert!(is_weak_strategy(&i, &pinned));
    }
}
