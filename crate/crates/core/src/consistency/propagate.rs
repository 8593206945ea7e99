use super::{Cause, Removal, Trace};
use crate::{Structure, ValueSet};
use std::collections::VecDeque;

/// Which constraints start on the worklist.
pub(crate) enum Seeds<'s> {
    All,
    /// Only constraints mentioning one of these elements.
    Elements(&'s [usize]),
}

/// Worklist arc consistency for a fixed pair of similar structures.
///
/// A constraint is one tuple of `A`; revising it narrows every coordinate
/// to `π_i(R^B ∩ (S_{a₁} × … × S_{a_k}))`. Any change re-queues every
/// constraint that mentions the changed element.
pub(crate) struct Propagator<'a> {
    lhs: &'a Structure,
    rhs: &'a Structure,
    constraints: Vec<(usize, usize)>,
    occurrences: Vec<Vec<usize>>,
    /// Whether supports must agree on positions sharing an element.
    equal_repeats: bool,
}

impl<'a> Propagator<'a> {
    pub(crate) fn new(lhs: &'a Structure, rhs: &'a Structure) -> Self {
        debug_assert!(lhs.is_similar(rhs));
        let mut constraints = Vec::with_capacity(lhs.tuple_count());
        let mut occurrences = vec![Vec::new(); lhs.len()];
        for (s, r) in lhs.relations().iter().enumerate() {
            for (ti, t) in r.iter().enumerate() {
                let c = constraints.len();
                constraints.push((s, ti));
                for &a in t {
                    if occurrences[a].last() != Some(&c) {
                        occurrences[a].push(c);
                    }
                }
            }
        }
        Propagator {
            lhs,
            rhs,
            constraints,
            occurrences,
            equal_repeats: false,
        }
    }

    /// A propagator for homomorphism search: a `B`-tuple supports a tuple
    /// with a repeated element only if it repeats the value there too.
    /// Sound for maps into `B`, but stronger than arc consistency.
    pub(crate) fn for_search(lhs: &'a Structure, rhs: &'a Structure) -> Self {
        Propagator {
            equal_repeats: true,
            ..Propagator::new(lhs, rhs)
        }
    }

    /// Narrows `domains` to the greatest arc-consistent sub-system.
    ///
    /// Returns `false` iff some domain ends up empty. With `stop_on_empty`
    /// the run aborts at the first empty domain, leaving the rest partially
    /// narrowed; otherwise it always reaches the full fixpoint.
    pub(crate) fn run(
        &self,
        domains: &mut [ValueSet],
        seeds: Seeds<'_>,
        stop_on_empty: bool,
        mut trace: Option<&mut Trace>,
    ) -> bool {
        if stop_on_empty && domains.iter().any(ValueSet::is_empty) {
            return false;
        }
        let mut queued = vec![false; self.constraints.len()];
        let mut queue = VecDeque::new();
        match seeds {
            Seeds::All => {
                queue.extend(0..self.constraints.len());
                queued.fill(true);
            }
            Seeds::Elements(es) => {
                for &a in es {
                    for &c in &self.occurrences[a] {
                        if !queued[c] {
                            queued[c] = true;
                            queue.push_back(c);
                        }
                    }
                }
            }
        }

        let b_len = self.rhs.len();
        let mut proj: Vec<ValueSet> = Vec::new();
        while let Some(c) = queue.pop_front() {
            queued[c] = false;
            let (s, ti) = self.constraints[c];
            let t = self.lhs.relation(s).tuple(ti);
            let rb = self.rhs.relation(s);
            proj.clear();
            proj.resize(t.len(), ValueSet::empty(b_len));
            let repeated = self.equal_repeats && (1..t.len()).any(|j| t[..j].contains(&t[j]));
            for u in rb.iter() {
                if repeated && (1..t.len()).any(|j| (0..j).any(|i| t[i] == t[j] && u[i] != u[j])) {
                    continue;
                }
                if u.iter().zip(t).all(|(&v, &a)| domains[a].contains(v)) {
                    for (p, &v) in proj.iter_mut().zip(u) {
                        p.insert(v);
                    }
                }
            }
            for (i, &a) in t.iter().enumerate() {
                let before = trace.as_ref().map(|_| domains[a].clone());
                if !domains[a].intersect_with(&proj[i]) {
                    continue;
                }
                if let (Some(tr), Some(before)) = (trace.as_deref_mut(), before) {
                    for v in before.iter().filter(|&v| !domains[a].contains(v)) {
                        tr.push(Removal {
                            element: a,
                            value: v,
                            cause: Cause::Tuple {
                                symbol: s,
                                tuple: ti,
                            },
                        });
                    }
                }
                if domains[a].is_empty() && stop_on_empty {
                    return false;
                }
                for &c2 in &self.occurrences[a] {
                    if !queued[c2] {
                        queued[c2] = true;
                        queue.push_back(c2);
                    }
                }
            }
        }
        !domains.iter().any(ValueSet::is_empty)
    }

    /// Whether AC from `domains` survives without an empty set.
    pub(crate) fn survives(&self, mut domains: Vec<ValueSet>) -> bool {
        self.run(&mut domains, Seeds::All, true, None)
    }
}

/// One narrowing step at a single coordinate, as the textbook loop body.
fn narrow(lhs: &Structure, rhs: &Structure, domains: &mut [ValueSet], s: usize, ti: usize, i: usize) -> bool {
    let t = lhs.relation(s).tuple(ti);
    let mut p = ValueSet::empty(rhs.len());
    for u in rhs.relation(s).iter() {
        if u.iter().zip(t).all(|(&v, &a)| domains[a].contains(v)) {
            p.insert(u[i]);
        }
    }
    domains[t[i]].intersect_with(&p)
}

/// Every `(symbol, tuple, coordinate)` triple of `lhs`, in declaration order.
pub fn sweep_order(lhs: &Structure) -> Vec<(usize, usize, usize)> {
    let mut order = Vec::new();
    for (s, r) in lhs.relations().iter().enumerate() {
        for ti in 0..r.len() {
            for i in 0..r.arity() {
                order.push((s, ti, i));
            }
        }
    }
    order
}

/// Full-sweep arc consistency: repeat passes over `order` until no set
/// changes. `order` defaults to [`sweep_order`]. Returns the final sets.
pub fn arc_consistency_sweep(
    inst: &crate::Instance,
    order: Option<&[(usize, usize, usize)]>,
) -> Vec<ValueSet> {
    let default;
    let order = match order {
        Some(o) => o,
        None => {
            default = sweep_order(inst.lhs());
            &default
        }
    };
    let mut d = inst.initial_domains();
    loop {
        let mut changed = false;
        for &(s, ti, i) in order {
            changed |= narrow(inst.lhs(), inst.rhs(), &mut d, s, ti, i);
        }
        if !changed {
            return d;
        }
    }
}
