use super::FiniteOperation;
use crate::structure::odometer;
use crate::{Error, Result, ValueSet};

/// Largest carrier accepted by [`congruences`].
pub const MAX_CONGRUENCE_CARRIER: usize = 8;

/// A set partition, blocks sorted internally and by first element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    pub blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds the partition of `items` whose block labels are `labels`
    /// (a restricted growth string).
    pub fn from_labels(items: &[usize], labels: &[usize]) -> Self {
        let k = labels.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (&x, &l) in items.iter().zip(labels) {
            blocks[l].push(x);
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        Partition { blocks }
    }

    pub fn discrete(items: &[usize]) -> Self {
        Partition::from_labels(items, &(0..items.len()).collect::<Vec<_>>())
    }

    pub fn full(items: &[usize]) -> Self {
        Partition::from_labels(items, &vec![0; items.len()])
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&x))
    }
}

/// Every partition of `items`, enumerated as restricted growth strings.
pub fn all_partitions(items: &[usize]) -> Vec<Partition> {
    let n = items.len();
    if n == 0 {
        return vec![Partition { blocks: Vec::new() }];
    }
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    loop {
        out.push(Partition::from_labels(items, &labels));
        // next restricted growth string: a[i] ≤ 1 + max(a[..i])
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let bound = labels[..i].iter().max().copied().unwrap_or(0) + 1;
            if labels[i] < bound {
                labels[i] += 1;
                for l in &mut labels[i + 1..] {
                    *l = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// A carrier `G` together with operations under which it is closed.
#[derive(Debug, Clone)]
pub struct AlgebraView {
    carrier: ValueSet,
    ops: Vec<FiniteOperation>,
}

impl AlgebraView {
    pub fn new(carrier: ValueSet, ops: Vec<FiniteOperation>) -> Result<Self> {
        if carrier.is_empty() {
            return Err(Error::EmptySubset);
        }
        for f in &ops {
            if f.base_len() != carrier.universe_len() {
                return Err(Error::BaseMismatch);
            }
            let members: Vec<usize> = carrier.iter().collect();
            let mut pick = vec![0usize; f.arity()];
            let mut args = vec![0usize; f.arity()];
            loop {
                for (a, &p) in args.iter_mut().zip(&pick) {
                    *a = members[p];
                }
                let v = f.apply(&args);
                if !carrier.contains(v) {
                    return Err(Error::Containment(format!(
                        "f({}) = {} leaves the carrier",
                        f.describe_args(&args),
                        f.base()[v]
                    )));
                }
                if !odometer(&mut pick, members.len()) {
                    break;
                }
            }
        }
        Ok(AlgebraView { carrier, ops })
    }

    pub fn carrier(&self) -> &ValueSet {
        &self.carrier
    }

    pub fn ops(&self) -> &[FiniteOperation] {
        &self.ops
    }
}

/// `⟨T⟩`: the least superset of `t` closed under every operation in `ops`.
pub fn subalgebra_closure(ops: &[FiniteOperation], t: &ValueSet) -> ValueSet {
    let mut current = t.clone();
    loop {
        let members: Vec<usize> = current.iter().collect();
        let mut next = current.clone();
        for f in ops {
            let mut pick = vec![0usize; f.arity()];
            let mut args = vec![0usize; f.arity()];
            if members.is_empty() {
                continue;
            }
            loop {
                for (a, &p) in args.iter_mut().zip(&pick) {
                    *a = members[p];
                }
                next.insert(f.apply(&args));
                if !odometer(&mut pick, members.len()) {
                    break;
                }
            }
        }
        if next == current {
            return current;
        }
        current = next;
    }
}

fn preserves(view: &AlgebraView, members: &[usize], p: &Partition) -> bool {
    let mut label = vec![usize::MAX; view.carrier.universe_len()];
    for (i, b) in p.blocks.iter().enumerate() {
        for &x in b {
            label[x] = i;
        }
    }
    for f in &view.ops {
        let n = f.arity();
        let mut pick = vec![0usize; n];
        let mut args = vec![0usize; n];
        loop {
            for (a, &q) in args.iter_mut().zip(&pick) {
                *a = members[q];
            }
            let base = label[f.apply(&args)];
            for k in 0..n {
                let orig = args[k];
                for &y in &p.blocks[label[orig]] {
                    if y <= orig {
                        continue;
                    }
                    args[k] = y;
                    let other = label[f.apply(&args)];
                    args[k] = orig;
                    if other != base {
                        return false;
                    }
                }
            }
            if !odometer(&mut pick, members.len()) {
                break;
            }
        }
    }
    true
}

/// All congruences of the algebra, by checking every partition of the
/// carrier for compatibility with each operation.
pub fn congruences(view: &AlgebraView) -> Result<Vec<Partition>> {
    let members: Vec<usize> = view.carrier.iter().collect();
    if members.len() > MAX_CONGRUENCE_CARRIER {
        return Err(Error::SizeGuard {
            what: "congruence carrier",
            size: members.len() as u128,
            limit: MAX_CONGRUENCE_CARRIER as u128,
        });
    }
    Ok(all_partitions(&members)
        .into_iter()
        .filter(|p| preserves(view, &members, p))
        .collect())
}

/// Whether the only congruences are equality and the full relation.
pub fn is_simple(view: &AlgebraView) -> Result<bool> {
    let members: Vec<usize> = view.carrier.iter().collect();
    let discrete = Partition::discrete(&members);
    let full = Partition::full(&members);
    Ok(congruences(view)?
        .iter()
        .all(|p| *p == discrete || *p == full))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(xs: &[usize]) -> ValueSet {
        ValueSet::from_indices(4, xs.iter().copied())
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=6)
            .map(|n| all_partitions(&(0..n).collect::<Vec<_>>()).len())
            .collect();
        assert_eq!(counts, [1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn closure_examples() {
        let t = [fixtures::twosem_table()];
        assert_eq!(subalgebra_closure(&t, &set(&[1, 2])), set(&[1, 2]));
        assert_eq!(subalgebra_closure(&t, &set(&[1, 3])), set(&[1, 3]));
        assert_eq!(subalgebra_closure(&t, &set(&[0, 2])), set(&[0, 2]));
        for b in 0..4 {
            assert_eq!(subalgebra_closure(&t, &set(&[b])), set(&[b]));
        }
        let plus = FiniteOperation::from_fn(2, &["0", "1", "2", "3"], |a| (a[0] + a[1]) % 4);
        assert_eq!(subalgebra_closure(&[plus], &set(&[1])), ValueSet::full(4));
    }

    #[test]
    fn twosem_congruences() {
        let t = fixtures::twosem_table();
        let top = AlgebraView::new(set(&[1, 2, 3]), vec![t.clone()]).unwrap();
        assert!(is_simple(&top).unwrap());
        let whole = AlgebraView::new(ValueSet::full(4), vec![t.clone()]).unwrap();
        let mut cs = congruences(&whole).unwrap();
        cs.sort_by_key(|p| std::cmp::Reverse(p.len()));
        // {0} | {1,2,3} collapses the maximal component
        assert_eq!(
            cs,
            vec![
                Partition { blocks: vec![vec![0], vec![1], vec![2], vec![3]] },
                Partition { blocks: vec![vec![0], vec![1, 2, 3]] },
                Partition { blocks: vec![vec![0, 1, 2, 3]] },
            ]
        );
        assert!(!is_simple(&whole).unwrap());
        for pair in [[0, 1], [1, 2], [0, 3]] {
            let v = AlgebraView::new(set(&pair), vec![t.clone()]).unwrap();
            assert!(is_simple(&v).unwrap());
        }
    }

    #[test]
    fn view_requires_closure() {
        let plus = FiniteOperation::from_fn(2, &["0", "1", "2", "3"], |a| (a[0] + a[1]) % 4);
        assert!(matches!(
            AlgebraView::new(set(&[1]), vec![plus]),
            Err(Error::Containment(_))
        ));
    }

    #[test]
    fn guard() {
        let base: Vec<String> = (0..9).map(|i| i.to_string()).collect();
        let p = FiniteOperation::projection(2, &base, 0);
        let v = AlgebraView::new(ValueSet::full(9), vec![p]).unwrap();
        assert!(matches!(congruences(&v), Err(Error::SizeGuard { .. })));
    }
}
