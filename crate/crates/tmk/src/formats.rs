//! JSON file formats for matroids and cycles, and the named matroid
//! builders accepted on the command line.
//!
//! A matroid is `{"n": <ground size>, "bases": [[elements]]}`. A cycle is
//! `{"ambient": n, "dim": k, "facets": [{"rays": [[ints]], "lineality":
//! [[ints]], "weight": int}]}`. Keys other than these are metadata: they
//! are ignored on input, and some commands add them on output. Integers
//! outside the 64 bit range are written as decimal strings, and either
//! form is accepted on input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use tmk_core::cycles::FanCycle;
use tmk_core::linear::{Int, IntVec};
use tmk_core::matroid::{elements, Matroid};
use tmk_core::polyhedra::Cone;

/// An input that could not be read, with the place it went wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Where the problem is: a file name with a line and column or a JSON
    /// pointer, or a command line argument.
    pub location: String,
    /// What is wrong there.
    pub message: String,
}

impl ParseError {
    pub fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError { location: location.into(), message: message.into() }
    }

    fn at(source: &str, pointer: &str, message: impl Into<String>) -> Self {
        let location = if pointer.is_empty() { String::from(source) } else { format!("{source}#{pointer}") };
        ParseError::new(location, message)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse_json(source: &str, text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::new(format!("{source}:{}:{}", e.line(), e.column()), e.to_string()))
}

/// An integer as JSON: a number when it fits in 64 bits, a decimal string
/// otherwise.
pub fn int_to_json(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

fn vec_to_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

fn int_from_json(source: &str, pointer: &str, v: &Value) -> Result<Int, ParseError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(ParseError::at(source, pointer, "expected an integer"))
            }
        }
        Value::String(s) => s.parse::<BigInt>().map_err(|_| ParseError::at(source, pointer, format!("{s:?} is not a decimal integer"))),
        _ => Err(ParseError::at(source, pointer, "expected an integer")),
    }
}

fn usize_from_json(source: &str, pointer: &str, v: &Value) -> Result<usize, ParseError> {
    v.as_u64().and_then(|x| usize::try_from(x).ok()).ok_or_else(|| ParseError::at(source, pointer, "expected a nonnegative integer"))
}

fn array<'a>(source: &str, pointer: &str, v: &'a Value) -> Result<&'a Vec<Value>, ParseError> {
    v.as_array().ok_or_else(|| ParseError::at(source, pointer, "expected an array"))
}

fn object<'a>(source: &str, pointer: &str, v: &'a Value) -> Result<&'a Map<String, Value>, ParseError> {
    v.as_object().ok_or_else(|| ParseError::at(source, pointer, "expected an object"))
}

fn field<'a>(source: &str, pointer: &str, obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, ParseError> {
    obj.get(key).ok_or_else(|| ParseError::at(source, pointer, format!("missing key {key:?}")))
}

fn vectors(source: &str, pointer: &str, v: &Value, n: usize) -> Result<Vec<IntVec>, ParseError> {
    let mut out = Vec::new();
    for (i, row) in array(source, pointer, v)?.iter().enumerate() {
        let p = format!("{pointer}/{i}");
        let entries = array(source, &p, row)?;
        if entries.len() != n {
            return Err(ParseError::at(source, &p, format!("expected {n} coordinates, found {}", entries.len())));
        }
        let vec = entries.iter().enumerate().map(|(j, x)| int_from_json(source, &format!("{p}/{j}"), x)).collect::<Result<IntVec, _>>()?;
        out.push(vec);
    }
    Ok(out)
}

/// Reads a cycle from its JSON form. `source` names the input in error
/// messages.
pub fn cycle_from_json(source: &str, v: &Value) -> Result<FanCycle, ParseError> {
    let obj = object(source, "", v)?;
    let ambient = usize_from_json(source, "/ambient", field(source, "", obj, "ambient")?)?;
    let dim = usize_from_json(source, "/dim", field(source, "", obj, "dim")?)?;
    if dim > ambient {
        return Err(ParseError::at(source, "/dim", format!("dimension {dim} exceeds ambient dimension {ambient}")));
    }
    let mut facets = Vec::new();
    for (i, f) in array(source, "/facets", field(source, "", obj, "facets")?)?.iter().enumerate() {
        let p = format!("/facets/{i}");
        let fo = object(source, &p, f)?;
        let rays = vectors(source, &format!("{p}/rays"), field(source, &p, fo, "rays")?, ambient)?;
        let lineality = match fo.get("lineality") {
            Some(l) => vectors(source, &format!("{p}/lineality"), l, ambient)?,
            None => Vec::new(),
        };
        let weight = int_from_json(source, &format!("{p}/weight"), field(source, &p, fo, "weight")?)?;
        let cone = Cone::new(rays, lineality, ambient).map_err(|e| ParseError::at(source, &p, e.to_string()))?;
        if cone.dim() != dim {
            return Err(ParseError::at(source, &p, format!("facet has dimension {}, the cycle has dimension {dim}", cone.dim())));
        }
        facets.push((cone, weight));
    }
    FanCycle::new(ambient, dim, facets).map_err(|e| ParseError::at(source, "", e.to_string()))
}

/// The JSON form of one facet.
pub fn facet_to_json(cone: &Cone, weight: &Int) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("rays".into(), Value::Array(cone.rays().iter().map(|r| vec_to_json(r)).collect()));
    m.insert("lineality".into(), Value::Array(cone.lineality().iter().map(|r| vec_to_json(r)).collect()));
    m.insert("weight".into(), int_to_json(weight));
    m
}

/// The JSON form of a cycle.
pub fn cycle_to_json(c: &FanCycle) -> Value {
    let facets: Vec<Value> = c.facets().iter().map(|(cone, w)| Value::Object(facet_to_json(cone, w))).collect();
    json!({ "ambient": c.ambient_dim(), "dim": c.dim(), "facets": facets })
}

/// Reads a matroid from its JSON form.
pub fn matroid_from_json(source: &str, v: &Value) -> Result<Matroid, ParseError> {
    let obj = object(source, "", v)?;
    let n = usize_from_json(source, "/n", field(source, "", obj, "n")?)?;
    let mut bases = Vec::new();
    for (i, b) in array(source, "/bases", field(source, "", obj, "bases")?)?.iter().enumerate() {
        let p = format!("/bases/{i}");
        let basis = array(source, &p, b)?
            .iter()
            .enumerate()
            .map(|(j, x)| usize_from_json(source, &format!("{p}/{j}"), x))
            .collect::<Result<Vec<usize>, _>>()?;
        bases.push(basis);
    }
    Matroid::from_bases(n, &bases).map_err(|e| ParseError::at(source, "/bases", e.to_string()))
}

/// The JSON form of a matroid, with bases in increasing order.
pub fn matroid_to_json(m: &Matroid) -> Value {
    let mut bases: Vec<Vec<usize>> = m.bases().iter().map(|&b| elements(b)).collect();
    bases.sort();
    json!({ "n": m.ground_size(), "bases": bases })
}

/// The named matroid builders, with a description of each.
pub const MATROID_BUILDERS: &[(&str, &str)] = &[
    ("uniform:r,n", "uniform matroid of rank r on n elements"),
    ("graphic:K4", "cycle matroid of the complete graph K4, edges 01 02 03 12 13 23"),
    ("graphic:Kn", "cycle matroid of the complete graph on n vertices, edges in lexicographic order"),
    ("fano", "Fano plane; deleting element 6 leaves graphic:K4"),
    ("nonfano", "non-Fano plane: the Fano plane with the line {0,5,6} relaxed"),
];

/// Builds a matroid from a builder name, or returns `None` when `name` is
/// not a builder name.
pub fn named_matroid(name: &str) -> Option<Result<Matroid, ParseError>> {
    let bad = |msg: String| ParseError::new(format!("matroid {name:?}"), msg);
    if name == "fano" {
        return Some(Ok(Matroid::fano()));
    }
    if name == "nonfano" {
        return Some(Ok(Matroid::nonfano()));
    }
    if let Some(rest) = name.strip_prefix("uniform:") {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        let parsed: Option<Vec<usize>> = parts.iter().map(|p| p.parse().ok()).collect();
        return Some(match parsed.as_deref() {
            Some(&[r, n]) => Matroid::uniform(r, n).map_err(|e| bad(e.to_string())),
            _ => Err(bad(String::from("expected uniform:r,n"))),
        });
    }
    if let Some(rest) = name.strip_prefix("graphic:") {
        let k = rest.strip_prefix('K').and_then(|s| s.parse::<usize>().ok());
        return Some(match k {
            Some(k) if k >= 2 => {
                let edges: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
                Matroid::graphic(k, &edges).map_err(|e| bad(e.to_string()))
            }
            _ => Err(bad(String::from("expected graphic:Kn with n at least 2"))),
        });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use tmk_core::bergman::bergman_cycle;
    use tmk_core::linear::ivec;

    #[test]
    fn cycle_round_trip_is_exact() {
        let c = bergman_cycle(&Matroid::k4());
        let back = cycle_from_json("t", &cycle_to_json(&c)).unwrap();
        assert!(back.sub(&c).unwrap().is_zero());
    }

    #[test]
    fn big_integers_are_strings_and_read_back() {
        let big = BigInt::from(i64::MAX) * 4 + 1;
        assert_eq!(int_to_json(&big), Value::String(big.to_string()));
        assert_eq!(int_to_json(&BigInt::from(-3)), json!(-3));
        let c = FanCycle::point(2, big.clone());
        let back = cycle_from_json("t", &cycle_to_json(&c)).unwrap();
        assert_eq!(back.origin_weight(), big);
    }

    #[test]
    fn schema_errors_point_at_the_offending_value() {
        let v = json!({"ambient": 2, "dim": 1, "facets": [{"rays": [[1, 0]], "weight": 1}, {"rays": [[1]], "weight": 1}]});
        let e = cycle_from_json("f.json", &v).unwrap_err();
        assert_eq!(e.location, "f.json#/facets/1/rays/0");
        let v = json!({"ambient": 2, "dim": 1, "facets": [{"rays": [[1, 0]], "weight": "x"}]});
        assert_eq!(cycle_from_json("f.json", &v).unwrap_err().location, "f.json#/facets/0/weight");
        let v = json!({"ambient": 2, "dim": 1, "facets": [{"rays": [[1, 0], [0, 1]], "weight": 1}]});
        assert!(cycle_from_json("f.json", &v).unwrap_err().message.contains("dimension 2"));
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let e = parse_json("f.json", "{\n  \"n\": 3,\n  oops\n}").unwrap_err();
        assert_eq!(e.location, "f.json:3:3");
    }

    #[test]
    fn matroid_json_round_trip_and_validation() {
        let m = Matroid::fano();
        assert_eq!(matroid_from_json("t", &matroid_to_json(&m)).unwrap(), m);
        let bad = json!({"n": 4, "bases": [[0, 1], [2, 3]]});
        assert_eq!(matroid_from_json("t", &bad).unwrap_err().location, "t#/bases");
    }

    #[test]
    fn builders() {
        assert_eq!(named_matroid("uniform:2,3").unwrap().unwrap(), Matroid::uniform(2, 3).unwrap());
        assert_eq!(named_matroid("graphic:K4").unwrap().unwrap(), Matroid::k4());
        assert_eq!(named_matroid("fano").unwrap().unwrap().delete(6).unwrap(), Matroid::k4());
        assert!(named_matroid("uniform:5,3").unwrap().is_err());
        assert!(named_matroid("graphic:X").unwrap().is_err());
        assert!(named_matroid("m.json").is_none());
        let line = cycle_to_json(&bergman_cycle(&Matroid::uniform(2, 3).unwrap()));
        let rays: Vec<IntVec> = cycle_from_json("t", &line).unwrap().facets().iter().map(|(c, _)| c.rays()[0].clone()).collect();
        assert!(rays.contains(&ivec(&[1, 1])) && rays.contains(&ivec(&[-1, 0])) && rays.contains(&ivec(&[0, -1])));
    }
}
