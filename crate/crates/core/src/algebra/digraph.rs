use super::{check_two_semilattice, FiniteOperation};
use crate::{Error, Result, ValueSet};

/// Edges `(a, b)` with `a ⋆ b = b`, sorted. Requires an idempotent binary
/// operation, so every vertex carries a loop.
pub fn induced_digraph(f: &FiniteOperation) -> Result<Vec<(usize, usize)>> {
    f.require_arity(2)?;
    let n = f.base_len();
    if let Some(x) = (0..n).find(|&x| f.apply2(x, x) != x) {
        return Err(Error::NotIdempotent(f.describe_args(&[x, x])));
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if f.apply2(a, b) == b {
                edges.push((a, b));
            }
        }
    }
    Ok(edges)
}

/// Tarjan's algorithm, iteratively. Components come out in reverse
/// topological order (sinks first), each sorted.
pub fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*next) {
                *next += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// The unique strongly connected component of `(G, a → a ⋆ b)` without
/// outgoing edges, for a 2-semilattice `⋆` on the subalgebra `G`.
pub fn maximal_scc(f: &FiniteOperation, carrier: &ValueSet) -> Result<ValueSet> {
    if let Some(v) = check_two_semilattice(f)? {
        return Err(Error::NotTwoSemilattice(format!(
            "{} fails at ({})",
            v.law,
            f.describe_args(&v.args)
        )));
    }
    if carrier.is_empty() {
        return Err(Error::EmptySubset);
    }
    let members: Vec<usize> = carrier.iter().collect();
    let mut local = vec![usize::MAX; f.base_len()];
    for (i, &g) in members.iter().enumerate() {
        local[g] = i;
    }
    let mut adj = vec![Vec::new(); members.len()];
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            let ab = f.apply2(a, b);
            if !carrier.contains(ab) {
                return Err(Error::Containment(format!(
                    "carrier not closed: {} ⋆ {} = {}",
                    f.base()[a],
                    f.base()[b],
                    f.base()[ab]
                )));
            }
            if ab == b {
                adj[i].push(j);
            }
        }
    }
    let comps = strongly_connected_components(&adj);
    let mut comp_of = vec![0; members.len()];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = c;
        }
    }
    let sinks: Vec<usize> = (0..comps.len())
        .filter(|&c| {
            comps[c]
                .iter()
                .all(|&v| adj[v].iter().all(|&w| comp_of[w] == c))
        })
        .collect();
    match sinks.as_slice() {
        [c] => Ok(ValueSet::from_indices(
            f.base_len(),
            comps[*c].iter().map(|&v| members[v]),
        )),
        _ => Err(Error::NotTwoSemilattice(format!(
            "{} maximal components",
            sinks.len()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn twosem_digraph() {
        let t = fixtures::twosem_table();
        let edges: Vec<_> = induced_digraph(&t)
            .unwrap()
            .into_iter()
            .filter(|(a, b)| a != b)
            .collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]);
        assert_eq!(
            maximal_scc(&t, &ValueSet::full(4)).unwrap(),
            ValueSet::from_indices(4, [1, 2, 3])
        );
        assert_eq!(
            maximal_scc(&t, &ValueSet::singleton(4, 0)).unwrap(),
            ValueSet::singleton(4, 0)
        );
    }

    #[test]
    fn boolean_and() {
        let and = FiniteOperation::from_fn(2, &["0", "1"], |a| a[0] & a[1]);
        assert_eq!(induced_digraph(&and).unwrap(), vec![(0, 0), (1, 0), (1, 1)]);
        assert_eq!(maximal_scc(&and, &ValueSet::full(2)).unwrap(), ValueSet::singleton(2, 0));
    }

    #[test]
    fn non_idempotent_rejected() {
        let xor = FiniteOperation::from_fn(2, &["0", "1"], |a| a[0] ^ a[1]);
        assert!(matches!(induced_digraph(&xor), Err(Error::NotIdempotent(_))));
        assert!(matches!(
            maximal_scc(&xor, &ValueSet::full(2)),
            Err(Error::NotTwoSemilattice(_))
        ));
    }

    #[test]
    fn tarjan_on_small_graphs() {
        let adj = vec![vec![1], vec![2], vec![0, 3], vec![]];
        let mut comps = strongly_connected_components(&adj);
        comps.sort();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3]]);
        assert!(strongly_connected_components(&[]).is_empty());
    }
}
