//! Arc consistency and its look-ahead, peek and singleton extensions.
//!
//! Every algorithm works on set systems `S: A → 2^B` and is deterministic:
//! wherever a choice is "arbitrary" it follows element order. Pins of the
//! instance act as the unary expansion `[A,{a}]`, `[B,{b}]`, which is the same
//! as starting `S_a` at `{b}`.

mod lookahead;
mod peek;
mod propagate;
mod singleton;
mod strategy;

pub use lookahead::laac;
pub use peek::{pac, pac_with};
pub use propagate::{arc_consistency_sweep, sweep_order};
pub use singleton::{sac, sac_with};
pub use strategy::{is_strong_strategy, is_weak_strategy};

pub(crate) use propagate::{Propagator, Seeds};

use crate::{Assignment, Instance, ValueSet};
use serde_json::{json, Map, Value};
use std::fmt;
use std::str::FromStr;

/// Traces stop recording after this many removals.
pub const MAX_TRACE: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Ac,
    Laac,
    Pac,
    Sac,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Ac, Method::Laac, Method::Pac, Method::Sac];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Ac => "ac",
            Method::Laac => "laac",
            Method::Pac => "pac",
            Method::Sac => "sac",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method `{s}` (expected ac, laac, pac or sac)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Reject,
    Unknown,
    Accept(Assignment),
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Reject => "reject",
            Verdict::Unknown => "unknown",
            Verdict::Accept(_) => "accept",
        }
    }

    pub fn is_reject(&self) -> bool {
        matches!(self, Verdict::Reject)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cause {
    /// Narrowed by the tuple `tuple` of relation `symbol` of `A`.
    Tuple { symbol: usize, tuple: usize },
    /// Arc consistency with `a ↦ b` pinned rejected.
    PeekRejected,
    /// Arc consistency with the current sets and `a ↦ b` pinned rejected.
    SingletonRejected,
    /// The look-ahead test for `a ↦ b` rejected.
    LookAhead,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Removal {
    pub element: usize,
    pub value: usize,
    pub cause: Cause,
}

/// An ordered, bounded log of value removals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub entries: Vec<Removal>,
    pub truncated: bool,
}

impl Trace {
    pub(crate) fn push(&mut self, r: Removal) {
        if self.entries.len() < MAX_TRACE {
            self.entries.push(r);
        } else {
            self.truncated = true;
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    pub trace: bool,
    /// Dispatch independent inner runs on the thread pool (peek only).
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub sets: Vec<ValueSet>,
    pub trace: Option<Trace>,
}

impl Outcome {
    pub(crate) fn from_sets(sets: Vec<ValueSet>, trace: Option<Trace>) -> Self {
        let verdict = if sets.iter().any(ValueSet::is_empty) {
            Verdict::Reject
        } else {
            Verdict::Unknown
        };
        Outcome {
            verdict,
            sets,
            trace,
        }
    }
}

/// Arc consistency: the greatest fixpoint of
/// `S_{a_i} := π_i(R^B ∩ (S_{a₁} × … × S_{a_k}))` over all tuples of `A`.
pub fn arc_consistency(inst: &Instance) -> Outcome {
    arc_consistency_with(inst, &Options::default())
}

pub fn arc_consistency_with(inst: &Instance, opts: &Options) -> Outcome {
    let prop = Propagator::new(inst.lhs(), inst.rhs());
    let mut sets = inst.initial_domains();
    let mut trace = opts.trace.then(Trace::default);
    prop.run(&mut sets, Seeds::All, false, trace.as_mut());
    Outcome::from_sets(sets, trace)
}

pub fn run(method: Method, inst: &Instance, opts: &Options) -> Outcome {
    match method {
        Method::Ac => arc_consistency_with(inst, opts),
        Method::Laac => lookahead::laac_with(inst, opts),
        Method::Pac => pac_with(inst, opts),
        Method::Sac => sac_with(inst, opts),
    }
}

fn cause_to_value(inst: &Instance, c: &Cause) -> Value {
    match *c {
        Cause::Tuple { symbol, tuple } => {
            let t = inst.lhs().relation(symbol).tuple(tuple);
            json!({
                "kind": "tuple",
                "symbol": inst.lhs().signature().symbols()[symbol].name,
                "tuple": t.iter().map(|&a| inst.lhs().element(a)).collect::<Vec<_>>(),
            })
        }
        Cause::PeekRejected => json!({"kind": "peek"}),
        Cause::SingletonRejected => json!({"kind": "singleton"}),
        Cause::LookAhead => json!({"kind": "look_ahead"}),
    }
}

/// `{"verdict", "sets", "assignment", "trace"}` with element names.
pub fn outcome_to_value(inst: &Instance, out: &Outcome) -> Value {
    let (lhs, rhs) = (inst.lhs(), inst.rhs());
    let sets: Map<String, Value> = out
        .sets
        .iter()
        .enumerate()
        .map(|(a, s)| (lhs.element(a).to_string(), json!(rhs.names_of(s))))
        .collect();
    let assignment = match &out.verdict {
        Verdict::Accept(h) => Value::Object(
            h.values()
                .iter()
                .enumerate()
                .map(|(a, &b)| (lhs.element(a).to_string(), json!(rhs.element(b))))
                .collect(),
        ),
        _ => Value::Null,
    };
    let trace = match &out.trace {
        Some(t) => Value::Array(
            t.entries
                .iter()
                .map(|r| {
                    json!({
                        "element": lhs.element(r.element),
                        "value": rhs.element(r.value),
                        "cause": cause_to_value(inst, &r.cause),
                    })
                })
                .collect(),
        ),
        None => Value::Null,
    };
    json!({
        "verdict": out.verdict.as_str(),
        "sets": sets,
        "assignment": assignment,
        "trace": trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, k2};
    use crate::structure::expand;
    use crate::Structure;

    fn loop_a() -> Structure {
        Structure::from_named(["a"], vec![("E", 2, vec![vec!["a", "a"]])]).unwrap()
    }

    #[test]
    fn loop_into_k2_is_missed_by_ac() {
        let inst = Instance::new(loop_a(), k2()).unwrap();
        let out = arc_consistency(&inst);
        assert_eq!(out.verdict, Verdict::Unknown);
        assert_eq!(out.sets, vec![ValueSet::full(2)]);
    }

    #[test]
    fn pinned_loop_is_rejected() {
        let inst = Instance::with_pins(loop_a(), k2(), vec![(0, 0)]).unwrap();
        assert_eq!(arc_consistency(&inst).verdict, Verdict::Reject);
    }

    #[test]
    fn tupleless_lhs_keeps_full_sets() {
        let one = Structure::from_named(["x"], vec![("E", 2, Vec::<Vec<&str>>::new())]).unwrap();
        let out = arc_consistency(&Instance::new(one, k2()).unwrap());
        assert_eq!(out.verdict, Verdict::Unknown);
        assert_eq!(out.sets[0], ValueSet::full(2));
    }

    #[test]
    fn worklist_matches_sweep_and_literal_expansion() {
        let b = fixtures::laac_not_ac();
        let a = Structure::from_named(
            ["x", "y", "z"],
            vec![
                ("R00", 2, vec![vec!["x", "y"], vec!["y", "z"]]),
                ("R11", 2, vec![vec!["z", "x"]]),
                ("U0", 1, vec![vec!["x"]]),
                ("U1", 1, Vec::new()),
            ],
        )
        .unwrap();
        let inst = Instance::with_pins(a.clone(), b.clone(), vec![(1, 1)]).unwrap();
        let fast = arc_consistency(&inst).sets;
        assert_eq!(fast, arc_consistency_sweep(&inst, None));
        // the same pin as a genuine unary symbol on both sides
        let la = expand(&a, &[ValueSet::singleton(3, 1)]).unwrap();
        let lb = expand(&b, &[ValueSet::singleton(2, 1)]).unwrap();
        let literal = arc_consistency(&Instance::new(la, lb).unwrap()).sets;
        assert_eq!(fast, literal);
    }

    #[test]
    fn trace_records_tuple_causes() {
        let inst = Instance::with_pins(loop_a(), k2(), vec![(0, 1)]).unwrap();
        let out = arc_consistency_with(
            &inst,
            &Options {
                trace: true,
                parallel: false,
            },
        );
        let t = out.trace.as_ref().unwrap();
        assert_eq!(
            t.entries[0],
            Removal {
                element: 0,
                value: 1,
                cause: Cause::Tuple { symbol: 0, tuple: 0 }
            }
        );
        let v = outcome_to_value(&inst, &out);
        assert_eq!(v["verdict"], "reject");
        assert_eq!(v["trace"][0]["cause"]["symbol"], "E");
        assert_eq!(v["sets"]["a"], json!([]));
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("gac".parse::<Method>().is_err());
    }
}
