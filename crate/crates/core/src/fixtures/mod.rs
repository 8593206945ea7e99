//! Named example templates and operations, plus seeded random generators.
//!
//! Element names are the decimal digits `"0"`, `"1"`, …; relation names
//! follow the usual notation (`U0` for the constant `{0}`, `R00` for
//! `R_(0,0)`, and so on).

mod random;

pub use random::{
    random_instance, random_operation, random_structure, GeneratedInstance, InstanceParams,
    StructureParams,
};

use crate::algebra::{is_polymorphism, operation_to_value, FiniteOperation};
use crate::structure::{structure_to_value, PowerProduct};
use crate::{Assignment, Error, Result, Structure};
use serde_json::Value;

/// Every name accepted by [`build`], structures first.
pub const FIXTURE_NAMES: [&str; 10] = [
    "k2",
    "k2_with_constants",
    "laac_not_ac",
    "ac_not_laac",
    "pac_not_laac",
    "sac_not_pac",
    "boolean_median_language",
    "sac_not_pac_op",
    "twosem_table",
    "boolean_median",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    Structure(Structure),
    Operation(FiniteOperation),
}

impl Fixture {
    pub fn to_value(&self) -> Value {
        match self {
            Fixture::Structure(s) => structure_to_value(s),
            Fixture::Operation(f) => operation_to_value(f),
        }
    }
}

fn digits(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn pairs_except(n: usize, skip: &[(usize, usize)]) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !skip.contains(&(x, y)) {
                out.push(vec![x.to_string(), y.to_string()]);
            }
        }
    }
    out
}

fn rows(ts: &[&[usize]]) -> Vec<Vec<String>> {
    ts.iter()
        .map(|t| t.iter().map(|x| x.to_string()).collect())
        .collect()
}

fn constants(n: usize) -> Vec<(String, Vec<Vec<String>>)> {
    (0..n)
        .map(|b| (format!("U{b}"), vec![vec![b.to_string()]]))
        .collect()
}

fn assemble(n: usize, rels: Vec<(String, usize, Vec<Vec<String>>)>) -> Structure {
    let rels: Vec<(&str, usize, Vec<Vec<String>>)> = rels
        .iter()
        .map(|(name, k, ts)| (name.as_str(), *k, ts.clone()))
        .collect();
    Structure::from_named(digits(n), rels).expect("fixture definitions are well formed")
}

/// The complete graph on two vertices, `E = {(0,1), (1,0)}`.
pub fn k2() -> Structure {
    assemble(2, vec![("E".into(), 2, rows(&[&[0, 1], &[1, 0]]))])
}

/// `K2` expanded with both constants.
pub fn k2_with_constants() -> Structure {
    let mut rels = vec![("E".to_string(), 2, rows(&[&[0, 1], &[1, 0]]))];
    rels.extend(constants(2).into_iter().map(|(n, t)| (n, 1, t)));
    assemble(2, rels)
}

/// Solvable by look-ahead but not by AC: constants and
/// `R00 = {0,1}² \ {(0,0)}`, `R11 = {0,1}² \ {(1,1)}`.
pub fn laac_not_ac() -> Structure {
    let mut rels: Vec<_> = constants(2).into_iter().map(|(n, t)| (n, 1, t)).collect();
    rels.push(("R00".into(), 2, pairs_except(2, &[(0, 0)])));
    rels.push(("R11".into(), 2, pairs_except(2, &[(1, 1)])));
    assemble(2, rels)
}

fn triples_except(skip: [usize; 3]) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                if [x, y, z] != skip {
                    out.push(vec![x.to_string(), y.to_string(), z.to_string()]);
                }
            }
        }
    }
    out
}

/// Solvable by AC but not by look-ahead: `R = {0,1}³ \ {(0,1,1)}`,
/// `S = {0,1}³ \ {(1,0,0)}`.
pub fn ac_not_laac() -> Structure {
    assemble(
        2,
        vec![
            ("R".into(), 3, triples_except([0, 1, 1])),
            ("S".into(), 3, triples_except([1, 0, 0])),
        ],
    )
}

/// Solvable by PAC but not by look-ahead: constants on `{0,1,2}`,
/// `R1 = ({0,1} × {0,1,2}) \ {(0,0)}`, `R2 = {(0,0), (1,2), (2,1)}`.
pub fn pac_not_laac() -> Structure {
    let mut rels: Vec<_> = constants(3).into_iter().map(|(n, t)| (n, 1, t)).collect();
    let r1: Vec<Vec<String>> = pairs_except(3, &[(0, 0)])
        .into_iter()
        .filter(|t| t[0] != "2")
        .collect();
    rels.push(("R1".into(), 2, r1));
    rels.push(("R2".into(), 2, rows(&[&[0, 0], &[1, 2], &[2, 1]])));
    assemble(3, rels)
}

/// Solvable by SAC but not by PAC: constants on `{0,1,2,3}`,
/// `R1 = {0,1,2,3}² \ {(0,0)}`, `R2 = {(1,2), (2,3), (3,1), (0,0)}`.
pub fn sac_not_pac() -> Structure {
    let mut rels: Vec<_> = constants(4).into_iter().map(|(n, t)| (n, 1, t)).collect();
    rels.push(("R1".into(), 2, pairs_except(4, &[(0, 0)])));
    rels.push(("R2".into(), 2, rows(&[&[1, 2], &[2, 3], &[3, 1], &[0, 0]])));
    assemble(4, rels)
}

/// Both constants and all sixteen binary relations over `{0,1}`. Relation
/// `Bwxyz` contains `(0,0)` iff `w = 1`, `(0,1)` iff `x = 1`, `(1,0)` iff
/// `y = 1` and `(1,1)` iff `z = 1`.
pub fn boolean_median_language() -> Structure {
    let mut rels: Vec<_> = constants(2).into_iter().map(|(n, t)| (n, 1, t)).collect();
    let cells = [(0, 0), (0, 1), (1, 0), (1, 1)];
    for mask in 0..16u32 {
        let bits: String = (0..4).map(|i| if mask >> (3 - i) & 1 == 1 { '1' } else { '0' }).collect();
        let mut tuples = Vec::new();
        for (i, &(x, y)) in cells.iter().enumerate() {
            if mask >> (3 - i) & 1 == 1 {
                tuples.push(vec![x.to_string(), y.to_string()]);
            }
        }
        rels.push((format!("B{bits}"), 2, tuples));
    }
    assemble(2, rels)
}

/// The 2-semilattice `⋆` on `{0,1,2,3}`: idempotent, commutative,
/// `0 ⋆ a = a`, `1 ⋆ 2 = 2`, `2 ⋆ 3 = 3`, `3 ⋆ 1 = 1`.
pub fn twosem_table() -> FiniteOperation {
    FiniteOperation::from_fn(2, &digits(4), |a| {
        let (x, y) = (a[0].min(a[1]), a[0].max(a[1]));
        match (x, y) {
            _ if x == y => x,
            (0, _) => y,
            (1, 2) => 2,
            (2, 3) => 3,
            (1, 3) => 1,
            _ => unreachable!(),
        }
    })
}

/// The polymorphism `⋆` of [`sac_not_pac`]; the same table as
/// [`twosem_table`].
pub fn sac_not_pac_op() -> FiniteOperation {
    twosem_table()
}

/// The median on `{0,1}`.
pub fn boolean_median() -> FiniteOperation {
    FiniteOperation::from_fn(3, &digits(2), |a| usize::from(a[0] + a[1] + a[2] >= 2))
}

/// Every structure fixture with its name.
pub fn structure_fixtures() -> Vec<(&'static str, Structure)> {
    FIXTURE_NAMES
        .iter()
        .filter_map(|&n| match build(n) {
            Ok(Fixture::Structure(s)) => Some((n, s)),
            _ => None,
        })
        .collect()
}

fn expect_count(name: &str, s: &Structure, rel: &str, count: usize) -> Result<()> {
    let found = s.relation_by_name(rel).map(|r| r.len());
    if found != Some(count) {
        return Err(Error::FixtureCheck {
            name: name.into(),
            detail: format!("|{rel}| = {found:?}, expected {count}"),
        });
    }
    Ok(())
}

fn validate(name: &str, f: &Fixture) -> Result<()> {
    let fail = |detail: &str| Error::FixtureCheck {
        name: name.into(),
        detail: detail.into(),
    };
    match (name, f) {
        ("k2", Fixture::Structure(s)) => expect_count(name, s, "E", 2),
        ("k2_with_constants", Fixture::Structure(s)) => expect_count(name, s, "E", 2),
        ("laac_not_ac", Fixture::Structure(s)) => {
            expect_count(name, s, "R00", 3)?;
            expect_count(name, s, "R11", 3)
        }
        ("ac_not_laac", Fixture::Structure(s)) => {
            expect_count(name, s, "R", 7)?;
            expect_count(name, s, "S", 7)?;
            let r = s.relation_by_name("R").expect("R");
            if r.contains(&[0, 1, 1]) || !r.contains(&[1, 1, 1]) {
                return Err(fail("R membership"));
            }
            Ok(())
        }
        ("pac_not_laac", Fixture::Structure(s)) => {
            expect_count(name, s, "R1", 5)?;
            expect_count(name, s, "R2", 3)
        }
        ("sac_not_pac", Fixture::Structure(s)) => {
            expect_count(name, s, "R1", 15)?;
            expect_count(name, s, "R2", 4)?;
            if !is_polymorphism(s, &sac_not_pac_op())? {
                return Err(fail("⋆ is not a polymorphism"));
            }
            Ok(())
        }
        ("boolean_median_language", Fixture::Structure(s)) => {
            if s.relations().len() != 18 {
                return Err(fail("expected 18 relations"));
            }
            expect_count(name, s, "B1111", 4)?;
            expect_count(name, s, "B0000", 0)?;
            if !is_polymorphism(s, &boolean_median())? {
                return Err(fail("median is not a polymorphism"));
            }
            Ok(())
        }
        ("sac_not_pac_op" | "twosem_table", Fixture::Operation(op)) => {
            let checks = [(0, 2, 2), (1, 2, 2), (2, 3, 3), (1, 3, 1), (3, 1, 1)];
            if checks.iter().any(|&(x, y, z)| op.apply2(x, y) != z) {
                return Err(fail("table entries"));
            }
            Ok(())
        }
        ("boolean_median", Fixture::Operation(op)) => {
            if op.apply(&[0, 1, 1]) != 1 || op.apply(&[1, 0, 0]) != 0 {
                return Err(fail("median entries"));
            }
            Ok(())
        }
        _ => Err(fail("unexpected fixture kind")),
    }
}

/// Builds a named fixture and re-checks it against its definition.
pub fn build(name: &str) -> Result<Fixture> {
    let f = match name {
        "k2" => Fixture::Structure(k2()),
        "k2_with_constants" => Fixture::Structure(k2_with_constants()),
        "laac_not_ac" => Fixture::Structure(laac_not_ac()),
        "ac_not_laac" => Fixture::Structure(ac_not_laac()),
        "pac_not_laac" => Fixture::Structure(pac_not_laac()),
        "sac_not_pac" => Fixture::Structure(sac_not_pac()),
        "boolean_median_language" => Fixture::Structure(boolean_median_language()),
        "sac_not_pac_op" => Fixture::Operation(sac_not_pac_op()),
        "twosem_table" => Fixture::Operation(twosem_table()),
        "boolean_median" => Fixture::Operation(boolean_median()),
        _ => return Err(Error::UnknownFixture(name.into())),
    };
    validate(name, &f)?;
    Ok(f)
}

/// The level-`n` homomorphism `Sing(℘(B)ⁿ) → B` for [`pac_not_laac`]: find
/// the first coordinate holding `{1}`, `{2}`, `{0,1}` or `{0,2}`; send the
/// tuple to 1 for `{1}`/`{0,1}`, to 2 for `{2}`/`{0,2}`, and to 0 when there
/// is no such coordinate.
pub fn pac_not_laac_level_map(p: &PowerProduct) -> Assignment {
    const ONE: u64 = 0b010;
    const TWO: u64 = 0b100;
    const ZERO_ONE: u64 = 0b011;
    const ZERO_TWO: u64 = 0b101;
    Assignment::new(
        p.coordinates
            .iter()
            .map(|ms| {
                match ms
                    .iter()
                    .find(|&&m| matches!(m, ONE | TWO | ZERO_ONE | ZERO_TWO))
                {
                    Some(&ONE) | Some(&ZERO_ONE) => 1,
                    Some(_) => 2,
                    None => 0,
                }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::is_hom;
    use crate::structure::{sing_structure, SizeBudget};

    #[test]
    fn every_fixture_builds_and_validates() {
        for name in FIXTURE_NAMES {
            build(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert_eq!(structure_fixtures().len(), 7);
        assert!(matches!(build("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn explicit_level_map_is_a_homomorphism() {
        let b = pac_not_laac();
        for n in 1..=2 {
            let p = sing_structure(&b, n, &SizeBudget::default()).unwrap();
            let f = pac_not_laac_level_map(&p);
            assert!(is_hom(&p.structure, &b, &f).unwrap(), "level {n}");
        }
    }

    #[test]
    fn median_language_names() {
        let s = boolean_median_language();
        let r = s.relation_by_name("B0110").unwrap();
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![&[0, 1][..], &[1, 0][..]]);
    }
}
