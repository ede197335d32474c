//! Canonical JSON interchange.
//!
//! ```text
//! {"p":2,"n":1,"levels":[{"relations":[[2]]},{"relations":[[0],[2]]}],"act":[...],"res":[...],"tr":[...]}
//! ```
//!
//! Matrices are arrays of rows. Relations are columns, so the relation matrix of a level has one
//! row per generator. `res[k]` maps level `k + 1` to level `k` and `tr[k]` maps level `k` to
//! level `k + 1`. The writer emits keys in this order with no whitespace.

use std::fmt::Write;

use num_bigint::BigInt;
use serde_json::{Map, Value};

use super::{CyclicGroupSpec, MackeyFunctor};
use crate::error::{Error, Result};
use crate::zmod::{IntMatrix, PresentedAbGroup};

const KEYS: [&str; 6] = ["p", "n", "levels", "act", "res", "tr"];

fn write_matrix(out: &mut String, m: &IntMatrix) {
    out.push('[');
    for i in 0..m.rows() {
        if i > 0 {
            out.push(',');
        }
        out.push('[');
        for j in 0..m.cols() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{}", m[(i, j)]).expect("write to string");
        }
        out.push(']');
    }
    out.push(']');
}

fn write_matrices<'a>(out: &mut String, ms: impl Iterator<Item = &'a IntMatrix>) {
    out.push('[');
    for (i, m) in ms.enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_matrix(out, m);
    }
    out.push(']');
}

/// Canonical serialization; equal presentations give identical bytes.
pub fn to_json(m: &MackeyFunctor) -> String {
    let mut out = String::new();
    write!(out, "{{\"p\":{},\"n\":{},\"levels\":[", m.p(), m.n()).expect("write to string");
    for (k, g) in m.levels().iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str("{\"relations\":");
        write_matrix(&mut out, g.relations());
        out.push('}');
    }
    out.push_str("],\"act\":");
    write_matrices(&mut out, (0..=m.n()).map(|k| m.act(k).matrix()));
    out.push_str(",\"res\":");
    write_matrices(&mut out, (1..=m.n()).map(|k| m.res(k).matrix()));
    out.push_str(",\"tr\":");
    write_matrices(&mut out, (1..=m.n()).map(|k| m.tr(k).matrix()));
    out.push('}');
    out
}

/// Parses the interchange format. Syntax errors carry the line and column; schema errors name
/// the offending field. Only shapes are checked, not the axioms.
pub fn from_json(text: &str) -> Result<MackeyFunctor> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    from_json_value(&v)
}

fn integer(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            s.parse::<BigInt>().map_err(|_| Error::Parse(format!("{what}: {s} is not an integer")))
        }
        other => Err(Error::Parse(format!("{what}: expected an integer, found {other}"))),
    }
}

fn small(v: &Value, what: &str) -> Result<u64> {
    let x = integer(v, what)?;
    u64::try_from(&x).map_err(|_| Error::Parse(format!("{what}: {x} is out of range")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{what}: expected an array")))
}

/// A matrix with the given number of columns; `rows` is checked when known.
fn matrix(v: &Value, rows: Option<usize>, cols: Option<usize>, what: &str) -> Result<IntMatrix> {
    let rs = array(v, what)?;
    if let Some(r) = rows {
        if rs.len() != r {
            return Err(Error::Dimension(format!("{what}: expected {r} rows, found {}", rs.len())));
        }
    }
    let mut width = cols;
    let mut data = Vec::new();
    for (i, row) in rs.iter().enumerate() {
        let row = array(row, &format!("{what} row {i}"))?;
        match width {
            Some(w) if w != row.len() => {
                return Err(Error::Dimension(format!("{what}: row {i} has {} entries, expected {w}", row.len())))
            }
            _ => width = Some(row.len()),
        }
        for (j, x) in row.iter().enumerate() {
            data.push(integer(x, &format!("{what}[{i}][{j}]"))?);
        }
    }
    IntMatrix::from_vec(rs.len(), width.unwrap_or(0), data)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field \"{key}\"")))
}

pub fn from_json_value(v: &Value) -> Result<MackeyFunctor> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(Error::Parse(format!("unknown field \"{k}\"")));
    }
    let p = small(field(obj, "p")?, "p")?;
    let n = small(field(obj, "n")?, "n")?;
    let n = usize::try_from(n).map_err(|_| Error::Parse("n is out of range".into()))?;
    let spec = CyclicGroupSpec::new(p, n)?;

    let raw_levels = array(field(obj, "levels")?, "levels")?;
    if raw_levels.len() != n + 1 {
        return Err(Error::Dimension(format!("levels: expected {} entries, found {}", n + 1, raw_levels.len())));
    }
    let mut levels = Vec::new();
    for (k, l) in raw_levels.iter().enumerate() {
        let lo = l.as_object().ok_or_else(|| Error::Parse(format!("levels[{k}]: expected an object")))?;
        if let Some(key) = lo.keys().find(|key| key.as_str() != "relations") {
            return Err(Error::Parse(format!("levels[{k}]: unknown field \"{key}\"")));
        }
        let rel = matrix(field(lo, "relations")?, None, None, &format!("levels[{k}].relations"))?;
        levels.push(PresentedAbGroup::new(rel.rows(), rel)?);
    }
    let ngens: Vec<usize> = levels.iter().map(PresentedAbGroup::ngens).collect();

    let maps = |key: &str, count: usize, shape: &dyn Fn(usize) -> (usize, usize)| -> Result<Vec<IntMatrix>> {
        let arr = array(field(obj, key)?, key)?;
        if arr.len() != count {
            return Err(Error::Dimension(format!("{key}: expected {count} matrices, found {}", arr.len())));
        }
        arr.iter()
            .enumerate()
            .map(|(k, m)| {
                let (r, c) = shape(k);
                matrix(m, Some(r), Some(c), &format!("{key}[{k}]"))
            })
            .collect()
    };
    let act = maps("act", n + 1, &|k| (ngens[k], ngens[k]))?;
    let res = maps("res", n, &|k| (ngens[k], ngens[k + 1]))?;
    let tr = maps("tr", n, &|k| (ngens[k + 1], ngens[k]))?;
    MackeyFunctor::new(spec, levels, act, res, tr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{burnside, constant_z};

    const E: &str = r#"{"p":2,"n":1,"levels":[{"relations":[[2]]},{"relations":[[0],[2]]}],"act":[[[1]],[[1,0],[0,1]]],"res":[[[1,0]]],"tr":[[[0],[1]]]}"#;

    #[test]
    fn round_trip_is_byte_exact() {
        let m = from_json(E).unwrap();
        assert!(m.is_valid());
        assert_eq!(to_json(&m), E);
        for f in [burnside(CyclicGroupSpec::new(3, 2).unwrap()), constant_z(CyclicGroupSpec::new(2, 0).unwrap())] {
            let s = to_json(&f);
            assert_eq!(from_json(&s).unwrap(), f);
            assert_eq!(to_json(&from_json(&s).unwrap()), s);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(from_json(r#"{"p":2,"n":0}"#), Err(Error::Parse(_))));
        let bad_prime = r#"{"p":4,"n":0,"levels":[{"relations":[]}],"act":[[]],"res":[],"tr":[]}"#;
        assert!(matches!(from_json(bad_prime), Err(Error::Input(_))));
        let fractional = E.replace("[[2]]", "[[2.5]]");
        assert!(matches!(from_json(&fractional), Err(Error::Parse(_))));
        let short = E.replace("\"res\":[[[1,0]]]", "\"res\":[[[1]]]");
        assert!(matches!(from_json(&short), Err(Error::Dimension(_))));
        let extra = E.replace("\"p\":2", "\"p\":2,\"q\":1");
        assert!(from_json(&extra).is_err());
    }

    #[test]
    fn huge_entries_survive() {
        let big = E.replace("[[2]]", "[[123456789012345678901234567890]]");
        let m = from_json(&big).unwrap();
        assert!(to_json(&m).contains("123456789012345678901234567890"));
    }
}
