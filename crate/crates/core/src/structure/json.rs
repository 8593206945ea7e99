//! The JSON document formats for structures and instances.
//!
//! ```json
//! {"signature":[{"name":"E","arity":2}],"universe":["0","1"],
//!  "relations":{"E":[["0","1"],["1","0"]]}}
//! ```
//!
//! An instance is `{"lhs":<structure>,"rhs":<structure>,"pins":{"a":"0"}}`.

use super::{Relation, Signature, Structure, PIN_PREFIX};
use crate::{Error, Instance, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolDoc {
    name: String,
    arity: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureDoc {
    signature: Vec<SymbolDoc>,
    universe: Vec<String>,
    #[serde(default)]
    relations: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    lhs: StructureDoc,
    rhs: StructureDoc,
    #[serde(default)]
    pins: BTreeMap<String, String>,
}

fn from_doc(doc: StructureDoc) -> Result<Structure> {
    if let Some(s) = doc.signature.iter().find(|s| s.name.starts_with(PIN_PREFIX)) {
        return Err(Error::ReservedSymbol(s.name.clone()));
    }
    let signature = Signature::new(doc.signature.iter().map(|s| (s.name.clone(), s.arity)))?;
    let mut index = HashMap::with_capacity(doc.universe.len());
    for (i, e) in doc.universe.iter().enumerate() {
        if index.insert(e.as_str(), i).is_some() {
            return Err(Error::DuplicateElement(e.clone()));
        }
    }
    let mut relations: Vec<Relation> = signature
        .symbols()
        .iter()
        .map(|s| Relation::empty(s.arity))
        .collect();
    for (name, tuples) in &doc.relations {
        let pos = signature
            .position(name)
            .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
        let arity = signature.symbols()[pos].arity;
        let mut data = Vec::with_capacity(tuples.len() * arity);
        for (ti, t) in tuples.iter().enumerate() {
            if t.len() != arity {
                return Err(Error::TupleArity {
                    symbol: name.clone(),
                    tuple: ti,
                    expected: arity,
                    found: t.len(),
                });
            }
            for e in t {
                let &v = index.get(e.as_str()).ok_or_else(|| Error::UnknownElementInTuple {
                    symbol: name.clone(),
                    tuple: ti,
                    element: e.clone(),
                })?;
                data.push(v);
            }
        }
        if !data.is_empty() {
            relations[pos] = Relation::from_flat(arity, data);
        }
    }
    Structure::from_parts(signature, doc.universe, relations)
}

fn to_doc(s: &Structure) -> StructureDoc {
    StructureDoc {
        signature: s
            .signature()
            .symbols()
            .iter()
            .map(|sym| SymbolDoc {
                name: sym.name.clone(),
                arity: sym.arity,
            })
            .collect(),
        universe: s.universe().to_vec(),
        relations: s
            .signature()
            .symbols()
            .iter()
            .zip(s.relations())
            .map(|(sym, r)| {
                let tuples = r
                    .iter()
                    .map(|t| t.iter().map(|&v| s.element(v).to_string()).collect())
                    .collect();
                (sym.name.clone(), tuples)
            })
            .collect(),
    }
}

pub fn parse_structure(text: &str) -> Result<Structure> {
    from_doc(serde_json::from_str(text)?)
}

pub fn serialize_structure(s: &Structure) -> String {
    serde_json::to_string(&to_doc(s)).expect("structure documents always serialize")
}

pub fn structure_to_value(s: &Structure) -> Value {
    serde_json::to_value(to_doc(s)).expect("structure documents always serialize")
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_str(text)?;
    let lhs = from_doc(doc.lhs)?;
    let rhs = from_doc(doc.rhs)?;
    let mut pins = Vec::with_capacity(doc.pins.len());
    for (a, b) in &doc.pins {
        let ai = lhs.index_of(a).ok_or_else(|| Error::UnknownElement(a.clone()))?;
        let bi = rhs.index_of(b).ok_or_else(|| Error::UnknownElement(b.clone()))?;
        pins.push((ai, bi));
    }
    Instance::with_pins(lhs, rhs, pins)
}

pub fn serialize_instance(inst: &Instance) -> String {
    let doc = InstanceDoc {
        lhs: to_doc(inst.lhs()),
        rhs: to_doc(inst.rhs()),
        pins: inst
            .pins()
            .iter()
            .map(|&(a, b)| (inst.lhs().element(a).to_string(), inst.rhs().element(b).to_string()))
            .collect(),
    };
    serde_json::to_string(&doc).expect("instance documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, k2};

    #[test]
    fn k2_round_trip_is_canonical() {
        let text = serialize_structure(&k2());
        assert_eq!(
            text,
            r#"{"signature":[{"name":"E","arity":2}],"universe":["0","1"],"relations":{"E":[["0","1"],["1","0"]]}}"#
        );
        assert_eq!(parse_structure(&text).unwrap(), k2());
        assert_eq!(serialize_structure(&parse_structure(&text).unwrap()), text);
    }

    #[test]
    fn input_order_does_not_matter() {
        let a = parse_structure(
            r#"{"signature":[{"name":"S","arity":1},{"name":"E","arity":2}],"universe":["x","y"],
                "relations":{"E":[["y","x"],["x","y"],["x","y"]],"S":[["x"]]}}"#,
        )
        .unwrap();
        let b = parse_structure(
            r#"{"universe":["x","y"],"relations":{"S":[["x"]],"E":[["x","y"],["y","x"]]},
                "signature":[{"name":"E","arity":2},{"name":"S","arity":1}]}"#,
        )
        .unwrap();
        assert_eq!(serialize_structure(&a), serialize_structure(&b));
    }

    #[test]
    fn schema_violations_are_located() {
        let err = parse_structure(
            r#"{"signature":[{"name":"E","arity":2}],"universe":["0","1"],"relations":{"E":[["0","1"],["0","1","1"]]}}"#,
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::TupleArity {
                symbol: "E".into(),
                tuple: 1,
                expected: 2,
                found: 3
            }
        );
        let err = parse_structure(
            r#"{"signature":[{"name":"E","arity":2}],"universe":["0"],"relations":{"E":[["0","9"]]}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnknownElementInTuple { tuple: 0, .. }));
        let err = parse_structure(
            r#"{"signature":[{"name":"E","arity":2},{"name":"E","arity":1}],"universe":["0"]}"#,
        )
        .unwrap_err();
        assert_eq!(err, Error::DuplicateSymbol("E".into()));
        let err = parse_structure(r#"{"signature":[],"universe":["0"],"relations":{"F":[]}}"#).unwrap_err();
        assert_eq!(err, Error::UnknownSymbol("F".into()));
        let err =
            parse_structure(r#"{"signature":[{"name":"__pin_0","arity":1}],"universe":["0"]}"#).unwrap_err();
        assert!(matches!(err, Error::ReservedSymbol(_)));
        assert!(matches!(parse_structure("{").unwrap_err(), Error::Json(_)));
    }

    #[test]
    fn ac_not_laac_document() {
        let text = serialize_structure(&fixtures::ac_not_laac());
        let s = parse_structure(&text).unwrap();
        assert_eq!(s.relation_by_name("R").unwrap().len(), 7);
        assert_eq!(s.relation_by_name("S").unwrap().len(), 7);
    }

    #[test]
    fn instance_round_trip() {
        let text = format!(
            r#"{{"lhs":{},"rhs":{},"pins":{{"1":"0"}}}}"#,
            serialize_structure(&k2()),
            serialize_structure(&k2())
        );
        let inst = parse_instance(&text).unwrap();
        assert_eq!(inst.pins(), [(1, 0)]);
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
        let bad = text.replace(r#""1":"0""#, r#""7":"0""#);
        assert_eq!(parse_instance(&bad).unwrap_err(), Error::UnknownElement("7".into()));
    }
}
