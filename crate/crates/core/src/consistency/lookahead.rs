use super::{Cause, Options, Outcome, Propagator, Removal, Trace, Verdict};
use crate::{Assignment, Instance, ValueSet};

/// Look-ahead arc consistency: fix `a₁, a₂, …` in element order, each to
/// the smallest value that arc consistency does not reject given the
/// earlier choices. Returns `Accept` with the built map or `Unknown`.
pub fn laac(inst: &Instance) -> Outcome {
    laac_with(inst, &Options::default())
}

pub(crate) fn laac_with(inst: &Instance, opts: &Options) -> Outcome {
    let prop = Propagator::new(inst.lhs(), inst.rhs());
    let base = inst.initial_domains();
    let n = inst.lhs().len();
    let b_len = inst.rhs().len();
    let mut sets = vec![ValueSet::full(b_len); n];
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut trace = opts.trace.then(Trace::default);

    for a in 0..n {
        for b in 0..b_len {
            let mut d = base.clone();
            for (x, &v) in chosen.iter().enumerate() {
                d[x].intersect_with(&ValueSet::singleton(b_len, v));
            }
            d[a].intersect_with(&ValueSet::singleton(b_len, b));
            if !prop.survives(d) {
                sets[a].remove(b);
                if let Some(t) = trace.as_mut() {
                    t.push(Removal {
                        element: a,
                        value: b,
                        cause: Cause::LookAhead,
                    });
                }
            }
        }
        match sets[a].first() {
            Some(b) => chosen.push(b),
            None => {
                return Outcome {
                    verdict: Verdict::Unknown,
                    sets,
                    trace,
                }
            }
        }
    }
    Outcome {
        verdict: Verdict::Accept(Assignment::new(chosen)),
        sets,
        trace,
    }
}
