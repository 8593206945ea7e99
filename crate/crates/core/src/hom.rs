//! Homomorphism checking, search and enumeration.

use crate::consistency::{Propagator, Seeds};
use crate::structure::odometer;
use crate::{Assignment, Error, Instance, Result, Structure, ValueSet};

/// Default cap on the number of candidate maps `|B|^|A|` that
/// [`enumerate_homs`] will examine.
pub const ENUMERATION_BUDGET: u128 = 10_000_000;

fn check_pins(a: &Structure, b: &Structure, pins: &[(usize, usize)]) -> Result<()> {
    for &(x, y) in pins {
        if x >= a.len() {
            return Err(Error::IndexOutOfRange { index: x, size: a.len() });
        }
        if y >= b.len() {
            return Err(Error::IndexOutOfRange { index: y, size: b.len() });
        }
    }
    Ok(())
}

/// Whether `h` maps every tuple of `a` into the matching relation of `b`.
pub fn is_hom(a: &Structure, b: &Structure, h: &Assignment) -> Result<bool> {
    a.check_similar(b)?;
    if h.len() != a.len() {
        return Err(Error::NotTotal {
            expected: a.len(),
            found: h.len(),
        });
    }
    if let Some(&bad) = h.values().iter().find(|&&v| v >= b.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: b.len(),
        });
    }
    let mut image = Vec::new();
    for (ra, rb) in a.relations().iter().zip(b.relations()) {
        for t in ra.iter() {
            image.clear();
            image.extend(t.iter().map(|&x| h.get(x)));
            if !rb.contains(&image) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct Frame {
    domains: Vec<ValueSet>,
    var: usize,
    values: Vec<usize>,
    next: usize,
}

/// Backtracking search with arc consistency after every decision.
///
/// Branches on the first element (in element order) whose set is not yet a
/// singleton, trying values in ascending order, so the result is the
/// lexicographically smallest homomorphism extending `pins`.
pub fn find_hom(a: &Structure, b: &Structure, pins: &[(usize, usize)]) -> Result<Option<Assignment>> {
    a.check_similar(b)?;
    check_pins(a, b, pins)?;
    let prop = Propagator::for_search(a, b);
    let mut domains = vec![b.full_set(); a.len()];
    for &(x, y) in pins {
        domains[x].intersect_with(&ValueSet::singleton(b.len(), y));
    }
    if !prop.run(&mut domains, Seeds::All, true, None) {
        return Ok(None);
    }
    let mut stack: Vec<Frame> = Vec::new();
    loop {
        match domains.iter().position(|d| d.count() > 1) {
            None => {
                let h = Assignment::new(domains.iter().map(|d| d.first().expect("nonempty")).collect());
                debug_assert!(is_hom(a, b, &h).unwrap_or(false));
                return Ok(Some(h));
            }
            Some(var) => {
                let values = domains[var].iter().collect();
                stack.push(Frame {
                    domains: std::mem::take(&mut domains),
                    var,
                    values,
                    next: 0,
                });
            }
        }
        // advance to the next viable child, popping exhausted frames
        loop {
            let Some(top) = stack.last_mut() else {
                return Ok(None);
            };
            if top.next == top.values.len() {
                stack.pop();
                continue;
            }
            let v = top.values[top.next];
            top.next += 1;
            let mut d = top.domains.clone();
            d[top.var] = ValueSet::singleton(b.len(), v);
            if prop.run(&mut d, Seeds::Elements(&[top.var]), true, None) {
                domains = d;
                break;
            }
        }
    }
}

/// [`find_hom`] on an instance, honouring its pins.
pub fn find_hom_for(inst: &Instance) -> Result<Option<Assignment>> {
    find_hom(inst.lhs(), inst.rhs(), inst.pins())
}

/// All homomorphisms extending `pins`, in lexicographic order, by filtering
/// every map `A → B`.
pub fn enumerate_homs(a: &Structure, b: &Structure, pins: &[(usize, usize)]) -> Result<Vec<Assignment>> {
    enumerate_homs_with_budget(a, b, pins, ENUMERATION_BUDGET)
}

pub fn enumerate_homs_with_budget(
    a: &Structure,
    b: &Structure,
    pins: &[(usize, usize)],
    budget: u128,
) -> Result<Vec<Assignment>> {
    a.check_similar(b)?;
    check_pins(a, b, pins)?;
    let total = (b.len() as u128)
        .checked_pow(a.len() as u32)
        .unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::SizeGuard {
            what: "candidate maps",
            size: total,
            limit: budget,
        });
    }
    let mut out = Vec::new();
    if total == 0 {
        return Ok(out);
    }
    let mut digits = vec![0usize; a.len()];
    loop {
        let h = Assignment::new(digits.clone());
        if pins.iter().all(|&(x, y)| h.get(x) == y) && is_hom(a, b, &h)? {
            out.push(h);
        }
        if !odometer(&mut digits, b.len()) {
            break;
        }
    }
    Ok(out)
}

/// Whether every element `b` has a relation interpreted as exactly `{(b)}`.
pub fn has_all_constants(b: &Structure) -> bool {
    let mut covered = ValueSet::empty(b.len());
    for r in b.relations() {
        if r.arity() == 1 && r.len() == 1 {
            covered.insert(r.tuple(0)[0]);
        }
    }
    covered.count() == b.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, k2};
    use crate::structure::power_structure;

    fn graph(universe: &[&str], edges: &[[&str; 2]]) -> Structure {
        Structure::from_named(
            universe.iter().copied(),
            vec![("E", 2, edges.iter().map(|e| e.to_vec()).collect())],
        )
        .unwrap()
    }

    fn triangle() -> Structure {
        graph(
            &["p", "q", "r"],
            &[["p", "q"], ["q", "p"], ["q", "r"], ["r", "q"], ["r", "p"], ["p", "r"]],
        )
    }

    #[test]
    fn is_hom_basics() {
        let k = k2();
        assert!(is_hom(&k, &k, &Assignment::new(vec![0, 1])).unwrap());
        assert!(!is_hom(&k, &k, &Assignment::new(vec![0, 0])).unwrap());
        assert!(matches!(
            is_hom(&k, &k, &Assignment::new(vec![0])),
            Err(Error::NotTotal { .. })
        ));
        assert!(matches!(
            is_hom(&k, &k, &Assignment::new(vec![0, 2])),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn triangle_has_no_two_colouring() {
        let t = triangle();
        let k = k2();
        assert!(enumerate_homs(&t, &k, &[]).unwrap().is_empty());
        assert_eq!(find_hom(&t, &k, &[]).unwrap(), None);
    }

    #[test]
    fn path_colouring_is_lexicographically_first() {
        let p = graph(&["a", "b", "c"], &[["a", "b"], ["b", "a"], ["b", "c"], ["c", "b"]]);
        let all = enumerate_homs(&p, &k2(), &[]).unwrap();
        assert_eq!(all.len(), 2);
        let h = find_hom(&p, &k2(), &[]).unwrap().unwrap();
        assert_eq!(h, all[0]);
        assert_eq!(h.values(), [0, 1, 0]);
        let pinned = find_hom(&p, &k2(), &[(1, 0)]).unwrap().unwrap();
        assert_eq!(pinned.values(), [1, 0, 1]);
    }

    #[test]
    fn loop_has_no_hom_to_k2() {
        let l = graph(&["a"], &[["a", "a"]]);
        assert_eq!(find_hom(&l, &k2(), &[]).unwrap(), None);
    }

    #[test]
    fn enumeration_small_cases() {
        let e = graph(&["a", "b"], &[["a", "b"]]);
        assert_eq!(enumerate_homs(&e, &k2(), &[]).unwrap().len(), 2);
        let single = graph(&["x"], &[]);
        assert_eq!(enumerate_homs(&single, &k2(), &[]).unwrap().len(), 2);
        let err = enumerate_homs_with_budget(&triangle(), &k2(), &[], 7).unwrap_err();
        assert!(matches!(err, Error::SizeGuard { size: 8, .. }));
    }

    #[test]
    fn ac_not_laac_power_maps_to_zero() {
        let b = fixtures::ac_not_laac();
        let p = power_structure(&b).unwrap();
        let h = find_hom(&p, &b, &[]).unwrap().expect("hom exists");
        assert!(is_hom(&p, &b, &h).unwrap());
        assert!(is_hom(&p, &b, &Assignment::constant(p.len(), 0)).unwrap());
    }

    #[test]
    fn singleton_embedding_into_power() {
        for b in fixtures::structure_fixtures() {
            let p = power_structure(&b.1).unwrap();
            // {b} has index 2^b - 1
            let h = Assignment::new((0..b.1.len()).map(|v| (1usize << v) - 1).collect());
            assert!(is_hom(&b.1, &p, &h).unwrap(), "{}", b.0);
        }
    }

    #[test]
    fn constants() {
        assert!(has_all_constants(&fixtures::pac_not_laac()));
        assert!(!has_all_constants(&k2()));
        assert!(!has_all_constants(&fixtures::ac_not_laac()));
    }
}
