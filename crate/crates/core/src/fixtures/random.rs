//! Seeded generators. All randomness comes from `Xoshiro256StarStar`
//! seeded through `seed_from_u64`, so a seed names the same object on every
//! platform.

use crate::algebra::FiniteOperation;
use crate::{Assignment, Error, Instance, Result, Structure};
use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

/// Attempts at drawing a planted map whose image admits at least one tuple.
const PLANT_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceParams {
    /// `|A|`.
    pub elements: usize,
    /// Number of tuples drawn; duplicates collapse, so `A` may hold fewer.
    pub tuples: usize,
    pub seed: u64,
    /// Draw `h: A → B` first and keep only tuples it satisfies.
    pub planted: bool,
}

#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub instance: Instance,
    /// The map the instance was planted with.
    pub planted: Option<Assignment>,
}

fn rng(seed: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(seed)
}

fn element_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A random left structure over the signature of `b`.
///
/// Each tuple picks a relation symbol uniformly, then its entries uniformly
/// from `A`. In planted mode a map `h` is drawn first and each tuple is the
/// preimage of a uniformly chosen `B`-tuple inside the image of `h`, so `h`
/// is a homomorphism by construction.
pub fn random_instance(b: &Structure, p: &InstanceParams) -> Result<GeneratedInstance> {
    if p.elements == 0 {
        return Err(Error::Infeasible("instance needs at least one element".into()));
    }
    if b.is_empty() && p.planted {
        return Err(Error::Infeasible("cannot plant into an empty template".into()));
    }
    let mut r = rng(p.seed);
    let sig = b.signature();
    let mut rels: Vec<Vec<Vec<usize>>> = vec![Vec::new(); sig.len()];
    let planted = if p.planted {
        if b.relations().iter().all(|rel| rel.is_empty()) && p.tuples > 0 {
            return Err(Error::Infeasible("every relation of the template is empty".into()));
        }
        let mut found = None;
        for _ in 0..PLANT_ATTEMPTS {
            let h: Vec<usize> = (0..p.elements).map(|_| r.random_range(0..b.len())).collect();
            let mut pre: Vec<Vec<usize>> = vec![Vec::new(); b.len()];
            for (a, &v) in h.iter().enumerate() {
                pre[v].push(a);
            }
            let candidates: Vec<(usize, usize)> = b
                .relations()
                .iter()
                .enumerate()
                .flat_map(|(s, rel)| (0..rel.len()).map(move |t| (s, t)))
                .filter(|&(s, t)| b.relation(s).tuple(t).iter().all(|&v| !pre[v].is_empty()))
                .collect();
            if candidates.is_empty() && p.tuples > 0 {
                continue;
            }
            found = Some((h, pre, candidates));
            break;
        }
        let Some((h, pre, candidates)) = found else {
            return Err(Error::Infeasible("no planted map admits a tuple".into()));
        };
        for _ in 0..p.tuples {
            let (s, t) = candidates[r.random_range(0..candidates.len())];
            let row = b
                .relation(s)
                .tuple(t)
                .iter()
                .map(|&v| pre[v][r.random_range(0..pre[v].len())])
                .collect();
            rels[s].push(row);
        }
        Some(Assignment::new(h))
    } else {
        if sig.is_empty() && p.tuples > 0 {
            return Err(Error::Infeasible("signature has no symbols".into()));
        }
        for _ in 0..p.tuples {
            let s = r.random_range(0..sig.len());
            let k = sig.symbols()[s].arity;
            rels[s].push((0..k).map(|_| r.random_range(0..p.elements)).collect());
        }
        None
    };
    let names = element_names("a", p.elements);
    let named: Vec<(&str, usize, Vec<Vec<&str>>)> = sig
        .symbols()
        .iter()
        .zip(&rels)
        .map(|(sym, ts)| {
            let ts = ts
                .iter()
                .map(|t| t.iter().map(|&a| names[a].as_str()).collect())
                .collect();
            (sym.name.as_str(), sym.arity, ts)
        })
        .collect();
    let a = Structure::from_named(names.iter(), named)?;
    Ok(GeneratedInstance {
        instance: Instance::new(a, b.clone())?,
        planted,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureParams {
    pub elements: usize,
    /// `(name, arity)` pairs.
    pub signature: Vec<(String, usize)>,
    /// Each relation receives between 0 and this many drawn tuples.
    pub max_tuples: usize,
    pub seed: u64,
}

/// A random structure on elements `"0"`, `"1"`, ….
pub fn random_structure(p: &StructureParams) -> Result<Structure> {
    if p.elements == 0 {
        return Err(Error::Infeasible("structure needs at least one element".into()));
    }
    let mut r = rng(p.seed);
    let names: Vec<String> = (0..p.elements).map(|i| i.to_string()).collect();
    let mut named = Vec::with_capacity(p.signature.len());
    for (name, k) in &p.signature {
        let count = r.random_range(0..=p.max_tuples);
        let ts: Vec<Vec<&str>> = (0..count)
            .map(|_| {
                (0..*k)
                    .map(|_| names[r.random_range(0..p.elements)].as_str())
                    .collect()
            })
            .collect();
        named.push((name.as_str(), *k, ts));
    }
    Structure::from_named(names.iter(), named)
}

/// A uniformly random total operation of the given arity.
pub fn random_operation<S: AsRef<str>>(base: &[S], arity: usize, seed: u64) -> FiniteOperation {
    let mut r = rng(seed);
    let n = base.len();
    let size = n.pow(arity as u32);
    let table = (0..size).map(|_| r.random_range(0..n)).collect();
    let base = base.iter().map(|s| s.as_ref().to_string()).collect();
    FiniteOperation::new(arity, base, table).expect("random table is total")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{k2, sac_not_pac};
    use crate::hom::{find_hom_for, is_hom};
    use crate::structure::serialize_instance;

    fn params(seed: u64, planted: bool) -> InstanceParams {
        InstanceParams {
            elements: 3,
            tuples: 3,
            seed,
            planted,
        }
    }

    #[test]
    fn planted_map_is_a_homomorphism() {
        for seed in 0..50 {
            let g = random_instance(&sac_not_pac(), &params(seed, true)).unwrap();
            let h = g.planted.unwrap();
            assert!(is_hom(g.instance.lhs(), g.instance.rhs(), &h).unwrap());
        }
        let g = random_instance(&k2(), &params(1, true)).unwrap();
        assert!(find_hom_for(&g.instance).unwrap().is_some());
    }

    #[test]
    fn same_seed_same_bytes() {
        let a = random_instance(&k2(), &params(1, false)).unwrap();
        let b = random_instance(&k2(), &params(1, false)).unwrap();
        assert_eq!(serialize_instance(&a.instance), serialize_instance(&b.instance));
        let c = random_instance(&k2(), &params(2, false)).unwrap();
        assert_ne!(serialize_instance(&a.instance), serialize_instance(&c.instance));
    }

    #[test]
    fn infeasible_parameters() {
        let empty = Structure::from_named(["0"], vec![("E", 2, Vec::<Vec<&str>>::new())]).unwrap();
        assert!(matches!(
            random_instance(&empty, &params(0, true)),
            Err(Error::Infeasible(_))
        ));
        let mut p = params(0, false);
        p.elements = 0;
        assert!(matches!(random_instance(&k2(), &p), Err(Error::Infeasible(_))));
    }

    #[test]
    fn random_structure_is_seeded() {
        let p = StructureParams {
            elements: 3,
            signature: vec![("R".into(), 2), ("U".into(), 1)],
            max_tuples: 5,
            seed: 9,
        };
        assert_eq!(random_structure(&p).unwrap(), random_structure(&p).unwrap());
        let f = random_operation(&["0", "1", "2"], 2, 4);
        assert_eq!(f.table().len(), 9);
        assert_eq!(f, random_operation(&["0", "1", "2"], 2, 4));
    }
}
