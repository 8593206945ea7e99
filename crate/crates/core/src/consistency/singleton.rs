use super::{Cause, Options, Outcome, Propagator, Removal, Trace};
use crate::{Instance, ValueSet};

/// Singleton arc consistency.
///
/// Starting from `S_a = B`, repeatedly visit `(a, b)` for `b ∈ S_a` in
/// element-then-value order and remove `b` when arc consistency rejects
/// with every `S_{a'}` pinned as a unary set and `a` pinned to `{b}`.
/// Stops after a full pass without change.
pub fn sac(inst: &Instance) -> Outcome {
    sac_with(inst, &Options::default())
}

pub fn sac_with(inst: &Instance, opts: &Options) -> Outcome {
    let prop = Propagator::new(inst.lhs(), inst.rhs());
    let base = inst.initial_domains();
    let n = inst.lhs().len();
    let b_len = inst.rhs().len();
    let mut sets = vec![ValueSet::full(b_len); n];
    let mut trace = opts.trace.then(Trace::default);

    loop {
        let mut changed = false;
        for a in 0..n {
            let candidates: Vec<usize> = sets[a].iter().collect();
            for b in candidates {
                let mut d = base.clone();
                for (x, s) in d.iter_mut().zip(&sets) {
                    x.intersect_with(s);
                }
                d[a].intersect_with(&ValueSet::singleton(b_len, b));
                if !prop.survives(d) {
                    sets[a].remove(b);
                    changed = true;
                    if let Some(t) = trace.as_mut() {
                        t.push(Removal {
                            element: a,
                            value: b,
                            cause: Cause::SingletonRejected,
                        });
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Outcome::from_sets(sets, trace)
}
