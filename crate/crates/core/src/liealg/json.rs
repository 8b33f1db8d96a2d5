use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{ksign, Realization, SuperLieAlgebra, SuperSpace};
use crate::exactla::field::{frac_string, parse_scalar};
use crate::exactla::{FieldElem, Matrix, NumberField, QPoly, Scalar, SparseVec};
use crate::{Error, Result};

pub fn scalar_json(s: &Scalar, degree: usize) -> Value {
    match s {
        Scalar::Rat(r) => Value::String(frac_string(r)),
        Scalar::Ext(..) => json!(s.to_json_strings(degree)),
    }
}

pub fn field_json(f: &NumberField) -> Value {
    json!({ "minpoly": f.minpoly().coeffs().iter().map(frac_string).collect::<Vec<_>>() })
}

pub fn field_from_json(v: Option<&Value>) -> Result<Arc<NumberField>> {
    let Some(v) = v else { return Ok(NumberField::rationals()) };
    let coeffs = v
        .get("minpoly")
        .and_then(|m| m.as_array())
        .ok_or_else(|| Error::Parse("field needs a \"minpoly\" coefficient list".into()))?;
    let q = NumberField::rationals();
    let mut c = Vec::new();
    for x in coeffs {
        match parse_scalar(x, &q)? {
            Scalar::Rat(r) => c.push(r),
            _ => return Err(Error::Parse("minpoly coefficients must be rational".into())),
        }
    }
    let p = QPoly::new(c);
    if p.degree() == Some(1) {
        return Ok(NumberField::rationals());
    }
    NumberField::new(p)
}

pub fn sparse_json(v: &SparseVec, degree: usize) -> Value {
    Value::Array(v.entries().iter().map(|(k, c)| json!([k, scalar_json(c, degree)])).collect())
}

pub fn sparse_from_json(v: &Value, field: &Arc<NumberField>) -> Result<SparseVec> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("expected a list of [index, scalar] pairs".into()))?;
    let mut pairs = Vec::new();
    for e in arr {
        let p = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Parse(format!("bad entry {e}")))?;
        let k = p[0].as_u64().ok_or_else(|| Error::Parse(format!("bad index {}", p[0])))? as usize;
        pairs.push((k, parse_scalar(&p[1], field)?));
    }
    Ok(SparseVec::from_pairs(pairs))
}

fn matrix_json(m: &Matrix, degree: usize) -> Value {
    let mut out = Vec::new();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let c = m.get(i, j);
            if !c.is_zero() {
                out.push(json!([i, j, scalar_json(c, degree)]));
            }
        }
    }
    Value::Array(out)
}

fn matrix_from_json(v: &Value, k: usize, field: &Arc<NumberField>) -> Result<Matrix> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("matrix must be a list of [i, j, scalar]".into()))?;
    let mut m = Matrix::zeros(k, k);
    for e in arr {
        let p = e.as_array().filter(|p| p.len() == 3).ok_or_else(|| Error::Parse(format!("bad matrix entry {e}")))?;
        let i = p[0].as_u64().ok_or_else(|| Error::Parse("bad row".into()))? as usize;
        let j = p[1].as_u64().ok_or_else(|| Error::Parse("bad column".into()))? as usize;
        if i >= k || j >= k {
            return Err(Error::Parse(format!("matrix entry ({i},{j}) out of range")));
        }
        m.set(i, j, parse_scalar(&p[2], field)?);
    }
    Ok(m)
}

/// Canonical JSON: canonical pairs only, sorted, nonzero.
pub fn algebra_to_json(g: &SuperLieAlgebra) -> Value {
    let d = g.field().degree();
    let basis: Vec<Value> =
        (0..g.dim()).map(|i| json!({"label": g.label(i), "parity": super::parity_name(g.parity(i))})).collect();
    let brackets: Vec<Value> = g.structure_entries().map(|(i, j, v)| json!([i, j, sparse_json(v, d)])).collect();
    let mut obj = serde_json::Map::new();
    obj.insert("name".into(), json!(g.name()));
    obj.insert("field".into(), field_json(g.field()));
    obj.insert("basis".into(), Value::Array(basis));
    obj.insert("brackets".into(), Value::Array(brackets));
    if let Some(h) = g.cartan() {
        let as_idx: Option<Vec<usize>> =
            h.iter().map(|v| (v.nnz() == 1 && v.entries()[0].1.is_one()).then(|| v.entries()[0].0)).collect();
        let val = match as_idx {
            Some(ix) => json!(ix),
            None => Value::Array(h.iter().map(|v| sparse_json(v, d)).collect()),
        };
        obj.insert("cartan_even".into(), val);
    }
    if let Some(r) = g.realization() {
        obj.insert(
            "realization".into(),
            json!({
                "m": r.m, "n": r.n, "exact": r.exact,
                "matrices": r.mats.iter().map(|m| matrix_json(m, d)).collect::<Vec<_>>(),
            }),
        );
    }
    Value::Object(obj)
}

fn parse_parity(v: &Value) -> Result<u8> {
    match v {
        Value::String(s) if s == "even" || s == "0" => Ok(0),
        Value::String(s) if s == "odd" || s == "1" => Ok(1),
        Value::Number(n) if n.as_u64() == Some(0) => Ok(0),
        Value::Number(n) if n.as_u64() == Some(1) => Ok(1),
        _ => Err(Error::Parse(format!("bad parity {v}"))),
    }
}

/// Reads the algebra JSON. Basis order and bracket pairs may be loose: the
/// basis is stably reordered even-first, and pairs given in only one order
/// are completed by super-antisymmetry. Pairs given in both orders are kept
/// verbatim so that `validate` can report any inconsistency.
pub fn algebra_from_json(v: &Value) -> Result<SuperLieAlgebra> {
    let field = field_from_json(v.get("field"))?;
    let basis = v.get("basis").and_then(|b| b.as_array()).ok_or_else(|| Error::Parse("missing \"basis\"".into()))?;
    let mut labels = Vec::new();
    let mut pars = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let label = b.get("label").and_then(|l| l.as_str()).map(|s| s.to_string()).unwrap_or_else(|| format!("e{i}"));
        let p = parse_parity(b.get("parity").ok_or_else(|| Error::Parse("basis entry without parity".into()))?)?;
        labels.push(label);
        pars.push(p);
    }
    let n = labels.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| pars[i]);
    let mut new_of = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        new_of[old] = new;
    }
    let space = SuperSpace::new(order.iter().map(|&i| labels[i].clone()).collect(), order.iter().map(|&i| pars[i]).collect())?;
    let remap = |s: SparseVec| -> Result<SparseVec> {
        if s.max_index().is_some_and(|k| k >= n) {
            return Err(Error::Parse("bracket coefficient index out of range".into()));
        }
        Ok(s.remap(|k| Some(new_of[k])))
    };
    let mut given: HashMap<(usize, usize), SparseVec> = HashMap::new();
    for e in v.get("brackets").and_then(|b| b.as_array()).map(|a| a.as_slice()).unwrap_or(&[]) {
        let p = e.as_array().filter(|p| p.len() == 3).ok_or_else(|| Error::Parse(format!("bad bracket entry {e}")))?;
        let i = p[0].as_u64().ok_or_else(|| Error::Parse("bad bracket index".into()))? as usize;
        let j = p[1].as_u64().ok_or_else(|| Error::Parse("bad bracket index".into()))? as usize;
        if i >= n || j >= n {
            return Err(Error::Parse(format!("bracket index ({i},{j}) out of range")));
        }
        let val = remap(sparse_from_json(&p[2], &field)?)?;
        if given.insert((new_of[i], new_of[j]), val).is_some() {
            return Err(Error::Parse(format!("bracket ({i},{j}) given twice")));
        }
    }
    let mut table = vec![SparseVec::new(); n * n];
    for (&(i, j), val) in &given {
        table[i * n + j] = val.clone();
        if !given.contains_key(&(j, i)) && i != j {
            let s = ksign(space.parity(i), space.parity(j));
            table[j * n + i] = val.scale(&Scalar::int(-s));
        }
    }
    let name = v.get("name").and_then(|x| x.as_str()).unwrap_or("algebra").to_string();
    let mut g = SuperLieAlgebra::from_table(name, field.clone(), space, table)?;
    if let Some(h) = v.get("cartan_even").and_then(|c| c.as_array()) {
        let mut hv = Vec::new();
        for x in h {
            if let Some(i) = x.as_u64() {
                let i = i as usize;
                if i >= n {
                    return Err(Error::Parse(format!("cartan index {i} out of range")));
                }
                hv.push(SparseVec::unit(new_of[i]));
            } else {
                hv.push(remap(sparse_from_json(x, &field)?)?);
            }
        }
        g = g.with_cartan(hv);
    }
    if let Some(r) = v.get("realization") {
        let m = r.get("m").and_then(|x| x.as_u64()).ok_or_else(|| Error::Parse("realization needs m".into()))? as usize;
        let nn = r.get("n").and_then(|x| x.as_u64()).ok_or_else(|| Error::Parse("realization needs n".into()))? as usize;
        let exact = r.get("exact").and_then(|x| x.as_bool()).unwrap_or(true);
        let mats = r.get("matrices").and_then(|x| x.as_array()).ok_or_else(|| Error::Parse("realization needs matrices".into()))?;
        if mats.len() != n {
            return Err(Error::Parse("realization must give one matrix per basis vector".into()));
        }
        let mut ms = vec![Matrix::zeros(0, 0); n];
        for (old, mv) in mats.iter().enumerate() {
            ms[new_of[old]] = matrix_from_json(mv, m + nn, &field)?;
        }
        g = g.with_realization(Realization { m, n: nn, mats: ms, exact });
    }
    Ok(g)
}
