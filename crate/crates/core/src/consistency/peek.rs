use super::{Cause, Options, Outcome, Propagator, Removal, Trace};
use crate::{par, Instance, ValueSet};

/// Peek arc consistency: `b` leaves `S_a` iff arc consistency with `a ↦ b`
/// pinned rejects.
pub fn pac(inst: &Instance) -> Outcome {
    pac_with(inst, &Options::default())
}

/// The `|A|·|B|` probes are independent; with `opts.parallel` they run on
/// the thread pool. The outcome is identical either way.
pub fn pac_with(inst: &Instance, opts: &Options) -> Outcome {
    let prop = Propagator::new(inst.lhs(), inst.rhs());
    let base = inst.initial_domains();
    let n = inst.lhs().len();
    let b_len = inst.rhs().len();

    let alive = par::map_indexed(n * b_len, opts.parallel, |k| {
        let (a, b) = (k / b_len, k % b_len);
        let mut d = base.clone();
        d[a].intersect_with(&ValueSet::singleton(b_len, b));
        prop.survives(d)
    });

    let mut sets = vec![ValueSet::full(b_len); n];
    let mut trace = opts.trace.then(Trace::default);
    for (k, ok) in alive.into_iter().enumerate() {
        if !ok {
            let (a, b) = (k / b_len, k % b_len);
            sets[a].remove(b);
            if let Some(t) = trace.as_mut() {
                t.push(Removal {
                    element: a,
                    value: b,
                    cause: Cause::PeekRejected,
                });
            }
        }
    }
    Outcome::from_sets(sets, trace)
}
