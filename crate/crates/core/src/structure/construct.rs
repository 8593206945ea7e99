use super::{Relation, Signature, SizeBudget, Structure, Symbol};
use crate::{Error, Result, ValueSet};

/// Prefix of the unary symbols added by [`expand`]; rejected in parsed input.
pub const PIN_PREFIX: &str = "__pin_";

/// The product structure `X × Y`. Element `(x, y)` has index `x·|Y| + y`.
pub fn product(x: &Structure, y: &Structure) -> Result<Structure> {
    x.check_similar(y)?;
    let ny = y.len();
    let universe = x
        .universe()
        .iter()
        .flat_map(|a| y.universe().iter().map(move |b| format!("({a},{b})")))
        .collect();
    let relations = x
        .relations()
        .iter()
        .zip(y.relations())
        .map(|(rx, ry)| {
            let k = rx.arity();
            let mut data = Vec::with_capacity(rx.len() * ry.len() * k);
            for t in rx.iter() {
                for u in ry.iter() {
                    data.extend((0..k).map(|i| t[i] * ny + u[i]));
                }
            }
            Relation::from_flat(k, data)
        })
        .collect();
    Structure::from_parts(x.signature().clone(), universe, relations)
}

/// The `n`-fold power `Xⁿ` with flat `n`-tuple elements.
///
/// Element `(x₁,…,xₙ)` has mixed-radix index with `x₁` most significant, so
/// an `n`-ary operation table indexed the same way is directly a map `Xⁿ → X`.
pub fn power(x: &Structure, n: usize) -> Result<Structure> {
    power_with_budget(x, n, &SizeBudget::default())
}

pub(crate) fn power_with_budget(x: &Structure, n: usize, budget: &SizeBudget) -> Result<Structure> {
    assert!(n >= 1, "power exponent must be positive");
    let size = (x.len() as u128).pow(n as u32);
    budget.check_elements(size)?;
    let work: u128 = x
        .relations()
        .iter()
        .map(|r| (r.len() as u128).pow(n as u32))
        .sum();
    budget.check_work(work)?;

    let size = size as usize;
    let mut universe = Vec::with_capacity(size);
    let mut digits = vec![0usize; n];
    for _ in 0..size {
        let names: Vec<&str> = digits.iter().map(|&d| x.element(d)).collect();
        universe.push(format!("({})", names.join(",")));
        odometer(&mut digits, x.len());
    }

    let base = x.len();
    let relations = x
        .relations()
        .iter()
        .map(|r| {
            let k = r.arity();
            let mut data = Vec::new();
            if !r.is_empty() {
                let mut pick = vec![0usize; n];
                loop {
                    data.extend(
                        (0..k).map(|i| pick.iter().fold(0, |acc, &p| acc * base + r.tuple(p)[i])),
                    );
                    if !odometer(&mut pick, r.len()) {
                        break;
                    }
                }
            }
            Relation::from_flat(k, data)
        })
        .collect();
    Structure::from_parts(x.signature().clone(), universe, relations)
}

/// Advances a little-endian-last counter; returns `false` after wrapping.
pub(crate) fn odometer(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// The substructure induced on `s`, keeping element order.
pub fn induced_substructure(x: &Structure, s: &ValueSet) -> Result<Structure> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    if s.universe_len() != x.len() {
        return Err(Error::ArityMismatch {
            expected: x.len(),
            found: s.universe_len(),
        });
    }
    let mut remap = vec![usize::MAX; x.len()];
    let mut universe = Vec::with_capacity(s.count());
    for (new, old) in s.iter().enumerate() {
        remap[old] = new;
        universe.push(x.element(old).to_string());
    }
    let relations = x
        .relations()
        .iter()
        .map(|r| {
            let mut data = Vec::new();
            for t in r.iter() {
                if t.iter().all(|&v| s.contains(v)) {
                    data.extend(t.iter().map(|&v| remap[v]));
                }
            }
            // remap is monotone, so sortedness survives
            Relation::from_sorted_flat(r.arity(), data)
        })
        .collect();
    Structure::from_parts(x.signature().clone(), universe, relations)
}

/// The expansion `[X, S₁, …, Sₙ]`: fresh unary symbols `__pin_<k>`
/// interpreted as the given sets. Empty sets are allowed.
///
/// Pin numbering continues after any pin symbols `X` already carries, so
/// repeated expansion stays collision-free and deterministic.
pub fn expand(x: &Structure, sets: &[ValueSet]) -> Result<Structure> {
    if sets.is_empty() {
        return Ok(x.clone());
    }
    for s in sets {
        if s.universe_len() != x.len() {
            return Err(Error::ArityMismatch {
                expected: x.len(),
                found: s.universe_len(),
            });
        }
    }
    let first = x
        .signature()
        .symbols()
        .iter()
        .filter_map(|s| s.name.strip_prefix(PIN_PREFIX)?.parse::<usize>().ok())
        .map(|k| k + 1)
        .max()
        .unwrap_or(0);
    let mut symbols: Vec<(Symbol, Relation)> = x
        .signature()
        .symbols()
        .iter()
        .cloned()
        .zip(x.relations().iter().cloned())
        .collect();
    for (k, s) in sets.iter().enumerate() {
        symbols.push((
            Symbol {
                name: format!("{PIN_PREFIX}{}", first + k),
                arity: 1,
            },
            Relation::from_tuples(1, s.iter().map(|v| [v])),
        ));
    }
    symbols.sort_by(|a, b| a.0.cmp(&b.0));
    let signature = Signature::new(symbols.iter().map(|(s, _)| (s.name.clone(), s.arity)))?;
    let relations = symbols.into_iter().map(|(_, r)| r).collect();
    Structure::from_parts(signature, x.universe().to_vec(), relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, k2};

    #[test]
    fn k2_squared_has_four_edges() {
        let k = k2();
        let p = product(&k, &k).unwrap();
        assert_eq!(p.len(), 4);
        // E(K2)×E(K2): 2·2 tuple pairs
        assert_eq!(p.relation_by_name("E").unwrap().len(), 4);
        assert!(p.relation_by_name("E").unwrap().contains(&[0, 3]));
    }

    #[test]
    fn product_with_loop_is_isomorphic_copy() {
        let k = k2();
        let one = Structure::from_named(["*"], vec![("E", 2, vec![vec!["*", "*"]])]).unwrap();
        let p = product(&k, &one).unwrap();
        assert_eq!(p.len(), k.len());
        assert_eq!(p.relations(), k.relations());
    }

    #[test]
    fn laac_not_ac_squared_relation_size() {
        let b = fixtures::laac_not_ac();
        let p = product(&b, &b).unwrap();
        assert_eq!(p.relation_by_name("R00").unwrap().len(), 9);
        assert_eq!(power(&b, 2).unwrap().relation_by_name("R00").unwrap().len(), 9);
    }

    #[test]
    fn power_agrees_with_iterated_product() {
        let b = fixtures::pac_not_laac();
        let p = product(&b, &b).unwrap();
        let q = power(&b, 2).unwrap();
        assert_eq!(p.relations(), q.relations());
        assert_eq!(p.universe(), q.universe());
    }

    #[test]
    fn product_rejects_dissimilar() {
        let err = product(&k2(), &fixtures::ac_not_laac()).unwrap_err();
        assert!(matches!(err, Error::SignatureMismatch(_)));
    }

    #[test]
    fn induced_examples() {
        let k = k2();
        let sub = induced_substructure(&k, &ValueSet::singleton(2, 0)).unwrap();
        assert_eq!(sub.universe(), ["0"]);
        assert!(sub.relation_by_name("E").unwrap().is_empty());
        assert_eq!(induced_substructure(&k, &k.full_set()).unwrap(), k);
        assert_eq!(
            induced_substructure(&k, &ValueSet::empty(2)).unwrap_err(),
            Error::EmptySubset
        );

        let b = fixtures::sac_not_pac();
        let s = ValueSet::from_indices(4, [1, 2, 3]);
        let sub = induced_substructure(&b, &s).unwrap();
        let r2: Vec<Vec<&str>> = sub
            .relation_by_name("R2")
            .unwrap()
            .iter()
            .map(|t| t.iter().map(|&v| sub.element(v)).collect())
            .collect();
        assert_eq!(r2, vec![vec!["1", "2"], vec!["2", "3"], vec!["3", "1"]]);
    }

    #[test]
    fn expand_examples() {
        let k = k2();
        let e = expand(&k, &[ValueSet::singleton(2, 0)]).unwrap();
        assert_eq!(e.signature().len(), 2);
        assert_eq!(e.relation_by_name("__pin_0").unwrap().iter().collect::<Vec<_>>(), vec![&[0][..]]);
        assert_eq!(e.relation_by_name("E"), k.relation_by_name("E"));
        assert_eq!(expand(&k, &[]).unwrap(), k);

        let again = expand(&e, &[ValueSet::empty(2)]).unwrap();
        assert!(again.relation_by_name("__pin_1").unwrap().is_empty());
        assert_eq!(again.signature().len(), 3);
    }
}
