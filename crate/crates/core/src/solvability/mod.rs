//! Deciders for which templates each consistency method solves.
//!
//! AC and LAAC solvability are decided exactly by a single homomorphism
//! search. PAC and SAC solvability quantify over every level `n`; they are
//! checked up to a bound, so a refutation is definitive while a pass is
//! reported as inconclusive evidence.

mod strategy;

pub use strategy::{
    has_k_strategy, k_strategy, k_strategy_with, strategy_relation, StrategySet,
    STRATEGY_BUDGET,
};

use crate::consistency::Method;
use crate::hom::find_hom;
use crate::structure::{power_structure, product, sing_structure, unionsing_structure, SizeBudget};
use crate::{Assignment, Result, Structure};
use serde_json::{json, Map, Value};

/// Default number of levels checked by [`pac_solves_up_to`] and
/// [`sac_solves_up_to`].
pub const DEFAULT_NMAX: usize = 2;

/// A homomorphism into the template, with the names of its source elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub source: Vec<String>,
    pub map: Assignment,
}

impl Witness {
    pub fn to_value(&self, b: &Structure) -> Value {
        let mut m = Map::new();
        for (name, &v) in self.source.iter().zip(self.map.values()) {
            m.insert(name.clone(), Value::String(b.element(v).to_string()));
        }
        Value::Object(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolvabilityVerdict {
    /// A definitive positive answer.
    Solvable(Witness),
    /// A definitive negative answer; `level` is set for the levelled deciders.
    NotSolvable { level: Option<usize> },
    /// Every level up to `n_max` has a homomorphism, listed in level order.
    InconclusiveUpTo { n_max: usize, witnesses: Vec<Witness> },
}

impl SolvabilityVerdict {
    pub fn outcome_str(&self) -> &'static str {
        match self {
            SolvabilityVerdict::Solvable(_) => "solvable",
            SolvabilityVerdict::NotSolvable { .. } => "not_solvable",
            SolvabilityVerdict::InconclusiveUpTo { .. } => "inconclusive",
        }
    }
}

/// CSP(B) is solved by AC iff `℘(B) → B`.
pub fn ac_solves(b: &Structure) -> Result<SolvabilityVerdict> {
    let p = power_structure(b)?;
    Ok(match find_hom(&p, b, &[])? {
        Some(h) => SolvabilityVerdict::Solvable(Witness {
            source: p.universe().to_vec(),
            map: h,
        }),
        None => SolvabilityVerdict::NotSolvable { level: None },
    })
}

/// Pins for `l: ℘(B) × B → B` with `l({b}, b') = b`.
pub fn laac_pins(b_len: usize) -> Vec<(usize, usize)> {
    let mut pins = Vec::with_capacity(b_len * b_len);
    for b in 0..b_len {
        let single = (1usize << b) - 1;
        for b2 in 0..b_len {
            pins.push((single * b_len + b2, b));
        }
    }
    pins
}

/// CSP(B) is solved by LAAC iff some `l: ℘(B) × B → B` has `l({b}, b') = b`.
pub fn laac_solves(b: &Structure) -> Result<SolvabilityVerdict> {
    let p = product(&power_structure(b)?, b)?;
    Ok(match find_hom(&p, b, &laac_pins(b.len()))? {
        Some(h) => SolvabilityVerdict::Solvable(Witness {
            source: p.universe().to_vec(),
            map: h,
        }),
        None => SolvabilityVerdict::NotSolvable { level: None },
    })
}

fn levels<F>(b: &Structure, n_max: usize, build: F) -> Result<SolvabilityVerdict>
where
    F: Fn(usize) -> Result<Structure>,
{
    let mut witnesses = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let s = build(n)?;
        match find_hom(&s, b, &[])? {
            Some(h) => witnesses.push(Witness {
                source: s.universe().to_vec(),
                map: h,
            }),
            None => return Ok(SolvabilityVerdict::NotSolvable { level: Some(n) }),
        }
    }
    Ok(SolvabilityVerdict::InconclusiveUpTo { n_max, witnesses })
}

/// Searches `Sing(℘(B)ⁿ) → B` for `n = 1..=n_max`, stopping at the first
/// level without a homomorphism.
pub fn pac_solves_up_to(b: &Structure, n_max: usize, budget: &SizeBudget) -> Result<SolvabilityVerdict> {
    levels(b, n_max, |n| Ok(sing_structure(b, n, budget)?.structure))
}

/// As [`pac_solves_up_to`] with `UnionSing(℘(B)ⁿ)`.
pub fn sac_solves_up_to(b: &Structure, n_max: usize, budget: &SizeBudget) -> Result<SolvabilityVerdict> {
    levels(b, n_max, |n| Ok(unionsing_structure(b, n, budget)?.structure))
}

/// Runs the decider for `method`; `n_max` only matters for PAC and SAC.
pub fn decide(method: Method, b: &Structure, n_max: usize, budget: &SizeBudget) -> Result<SolvabilityVerdict> {
    match method {
        Method::Ac => ac_solves(b),
        Method::Laac => laac_solves(b),
        Method::Pac => pac_solves_up_to(b, n_max, budget),
        Method::Sac => sac_solves_up_to(b, n_max, budget),
    }
}

/// `{"method","outcome","level","witness"}`. For inconclusive verdicts the
/// witness maps each level to its homomorphism.
pub fn verdict_to_value(method: Method, b: &Structure, v: &SolvabilityVerdict) -> Value {
    let (level, witness) = match v {
        SolvabilityVerdict::Solvable(w) => (Value::Null, w.to_value(b)),
        SolvabilityVerdict::NotSolvable { level } => (json!(level), Value::Null),
        SolvabilityVerdict::InconclusiveUpTo { n_max, witnesses } => {
            let mut m = Map::new();
            for (i, w) in witnesses.iter().enumerate() {
                m.insert((i + 1).to_string(), w.to_value(b));
            }
            (json!(n_max), Value::Object(m))
        }
    };
    json!({
        "method": method.as_str(),
        "outcome": v.outcome_str(),
        "level": level,
        "witness": witness,
    })
}
