use super::FiniteOperation;
use crate::hom::is_hom;
use crate::structure::{odometer, power_with_budget, SizeBudget};
use crate::{Assignment, Result, Structure};

/// A failed identity and the arguments witnessing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub args: Vec<usize>,
}

impl Violation {
    fn new(law: &'static str, args: &[usize]) -> Self {
        Violation {
            law,
            args: args.to_vec(),
        }
    }
}

/// `m(x,y,y) = m(y,x,y) = m(y,y,x) = y`.
pub fn check_majority(f: &FiniteOperation) -> Result<Option<Violation>> {
    f.require_arity(3)?;
    let n = f.base_len();
    for x in 0..n {
        for y in 0..n {
            for args in [[x, y, y], [y, x, y], [y, y, x]] {
                if f.apply(&args) != y {
                    return Ok(Some(Violation::new("majority", &args)));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_majority(f: &FiniteOperation) -> Result<bool> {
    Ok(check_majority(f)?.is_none())
}

/// Idempotency, commutativity and `x ⋆ (x ⋆ y) = (x ⋆ x) ⋆ y`, checked law by law.
pub fn check_two_semilattice(f: &FiniteOperation) -> Result<Option<Violation>> {
    f.require_arity(2)?;
    let n = f.base_len();
    for x in 0..n {
        if f.apply2(x, x) != x {
            return Ok(Some(Violation::new("idempotency", &[x, x])));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if f.apply2(x, y) != f.apply2(y, x) {
                return Ok(Some(Violation::new("commutativity", &[x, y])));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if f.apply2(x, f.apply2(x, y)) != f.apply2(f.apply2(x, x), y) {
                return Ok(Some(Violation::new("restricted associativity", &[x, y])));
            }
        }
    }
    Ok(None)
}

pub fn is_two_semilattice(f: &FiniteOperation) -> Result<bool> {
    Ok(check_two_semilattice(f)?.is_none())
}

/// `x ⋆ y ∈ {x, y}`.
pub fn check_conservative(f: &FiniteOperation) -> Result<Option<Violation>> {
    f.require_arity(2)?;
    let n = f.base_len();
    for x in 0..n {
        for y in 0..n {
            let v = f.apply2(x, y);
            if v != x && v != y {
                return Ok(Some(Violation::new("conservativity", &[x, y])));
            }
        }
    }
    Ok(None)
}

pub fn is_conservative(f: &FiniteOperation) -> Result<bool> {
    Ok(check_conservative(f)?.is_none())
}

/// Whether every relation of `b` is closed under coordinatewise `f`.
pub fn is_polymorphism(b: &Structure, f: &FiniteOperation) -> Result<bool> {
    let f = f.aligned_to(b)?;
    let n = f.arity();
    let mut args = vec![0usize; n];
    let mut image = Vec::new();
    for r in b.relations() {
        if r.is_empty() {
            continue;
        }
        let mut pick = vec![0usize; n];
        loop {
            image.clear();
            for i in 0..r.arity() {
                for (slot, &p) in args.iter_mut().zip(&pick) {
                    *slot = r.tuple(p)[i];
                }
                image.push(f.apply(&args));
            }
            if !r.contains(&image) {
                return Ok(false);
            }
            if !odometer(&mut pick, r.len()) {
                break;
            }
        }
    }
    Ok(true)
}

/// [`is_polymorphism`] as the question whether `f` is a homomorphism
/// `Bⁿ → B`.
pub fn is_polymorphism_by_power(b: &Structure, f: &FiniteOperation) -> Result<bool> {
    let f = f.aligned_to(b)?;
    let power = power_with_budget(b, f.arity(), &SizeBudget::default())?;
    is_hom(&power, b, &Assignment::new(f.table().to_vec()))
}
