//! Text formats for surfaces, coordinates, curves and curve pairs.
//!
//! All formats are JSON documents. Numbers that must be exact are written
//! as strings: `"3/2"`, `"7"`, or decimals such as `"0.125"` (read exactly).
//! Output is canonical: keys sorted, fractions reduced, fixed indentation.
//!
//! Surface:
//! ```text
//! { "genus": 1, "punctures": 1,
//!   "triangles": [["0.0","0.1","0.2"], ["1.0","1.1","1.2"]],
//!   "gluings": [["0.0","1.2"], ["0.1","1.0"], ["0.2","1.1"]] }
//! ```
//! Side `"t.k"` runs from corner `k` to corner `k+1` of triangle `t`, and
//! each triangle lists its sides in anticlockwise order (any rotation).
//!
//! Coordinates: `{"surface": <surface object | path | builtin name>,
//! "triangles": {"0": "1", ...}, "edges": {"0.0": "3/2", ...}}`. The
//! edge key is the side whose tail carries the ratio. Missing entries
//! are an error.
//!
//! Curves: `{"curves": {"name": "T+ t0 E 0.1 T- t1 E 1.1"}}`.
//!
//! Curve pair: `{"alpha": tokens, "beta": tokens, "intersections":
//! [{"sign": 1, "path": tokens}, ...]}`.

use crate::coords::CoordVector;
use crate::corpus;
use crate::error::{Error, Result};
use crate::poisson::{AnnotatedCurvePair, Intersection};
use crate::surface::{parse_slot_label, slot, slot_label, DualPath, IdealTriangulation};
use num::{BigInt, BigRational, One, Signed, Zero};
use serde_json::{json, Map, Value};
use std::path::Path;

type Q = BigRational;

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
}

fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Parse `"p/q"`, an integer, or a decimal literal (optional exponent).
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((p, d)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(p, d));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = Q::from_integer(digits);
    if scale >= 0 {
        r *= Q::from_integer(num::pow(ten, scale as usize));
    } else {
        r /= Q::from_integer(num::pow(ten, (-scale) as usize));
    }
    Some(if neg { -r } else { r })
}

/// Canonical text of a rational: `"p"` or `"p/q"` in lowest terms.
pub fn format_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn as_obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::Parse(format!("{what}: expected an object")))
}

fn get<'a>(o: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| Error::Parse(format!("missing key `{key}`")))
}

fn check_keys(o: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    for k in o.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(Error::Parse(format!("{what}: unexpected key `{k}`")));
        }
    }
    Ok(())
}

fn side_label(v: &Value, n_slots: usize, key: &str) -> Result<usize> {
    v.as_str()
        .and_then(parse_slot_label)
        .filter(|&s| s < n_slots)
        .ok_or_else(|| Error::Parse(format!("`{key}`: bad side label {v}")))
}

/// Parse a surface from its JSON value.
pub fn surface_from_value(v: &Value) -> Result<IdealTriangulation> {
    let o = as_obj(v, "surface")?;
    check_keys(o, &["genus", "punctures", "triangles", "gluings"], "surface")?;
    let int = |k: &str| -> Result<u32> {
        get(o, k)?
            .as_u64()
            .and_then(|x| u32::try_from(x).ok())
            .ok_or_else(|| Error::Parse(format!("`{k}`: expected a non-negative integer")))
    };
    let genus = int("genus")?;
    let punctures = int("punctures")?;
    let tris = get(o, "triangles")?
        .as_array()
        .ok_or_else(|| Error::Parse("`triangles`: expected an array".into()))?;
    let n = tris.len();
    for (t, entry) in tris.iter().enumerate() {
        let sides = entry
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::Parse(format!("`triangles[{t}]`: expected three side labels")))?;
        let s: Vec<usize> = sides
            .iter()
            .map(|x| side_label(x, 3 * n, &format!("triangles[{t}]")))
            .collect::<Result<_>>()?;
        let rotation_ok = (0..3).any(|r| (0..3).all(|k| s[k] == slot(t, (k + r) % 3)));
        if !rotation_ok {
            return Err(Error::Parse(format!(
                "`triangles[{t}]`: sides must be {}, {}, {} in anticlockwise order",
                slot_label(slot(t, 0)),
                slot_label(slot(t, 1)),
                slot_label(slot(t, 2))
            )));
        }
    }
    let glue = get(o, "gluings")?
        .as_array()
        .ok_or_else(|| Error::Parse("`gluings`: expected an array".into()))?;
    let mut pairs = Vec::with_capacity(glue.len());
    for (i, g) in glue.iter().enumerate() {
        let a = g
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse(format!("`gluings[{i}]`: expected a pair of side labels")))?;
        let key = format!("gluings[{i}]");
        pairs.push((side_label(&a[0], 3 * n, &key)?, side_label(&a[1], 3 * n, &key)?));
    }
    IdealTriangulation::build_from_gluing(genus, punctures, n, &pairs)
}

pub fn parse_surface(text: &str) -> Result<IdealTriangulation> {
    surface_from_value(&parse_json(text)?)
}

pub fn surface_to_value(tr: &IdealTriangulation) -> Value {
    let n = tr.n_triangles();
    let tris: Vec<Value> = (0..n).map(|t| json!((0..3).map(|k| slot_label(slot(t, k))).collect::<Vec<_>>())).collect();
    let gl: Vec<Value> = tr.pairs().iter().map(|&(a, b)| json!([slot_label(a), slot_label(b)])).collect();
    json!({ "genus": tr.genus(), "punctures": tr.punctures(), "triangles": tris, "gluings": gl })
}

pub fn serialize_surface(tr: &IdealTriangulation) -> String {
    to_text(&surface_to_value(tr))
}

/// Resolve a `surface` entry: inline object, builtin name, or file path
/// relative to `base`.
fn resolve_surface(v: &Value, base: Option<&Path>) -> Result<IdealTriangulation> {
    match v {
        Value::String(s) => {
            if let Some(ns) = corpus::surfaces().into_iter().find(|ns| ns.name == s) {
                return Ok(ns.tri);
            }
            let p = match base {
                Some(b) => b.join(s),
                None => Path::new(s).to_path_buf(),
            };
            let text = std::fs::read_to_string(&p)
                .map_err(|e| Error::Parse(format!("`surface`: cannot read {}: {e}", p.display())))?;
            parse_surface(&text)
        }
        _ => surface_from_value(v),
    }
}

fn rational_entry(v: &Value, key: &str) -> Result<Q> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(Error::Parse(format!("`{key}`: expected a rational string"))),
    };
    parse_rational(&s).ok_or_else(|| Error::Parse(format!("`{key}`: malformed rational \"{s}\"")))
}

/// Parse a coordinate file; `base` is used to resolve a surface path.
pub fn parse_coords(text: &str, base: Option<&Path>) -> Result<CoordVector> {
    let v = parse_json(text)?;
    let o = as_obj(&v, "coordinates")?;
    check_keys(o, &["surface", "triangles", "edges"], "coordinates")?;
    let tr = resolve_surface(get(o, "surface")?, base)?;
    let n = tr.n_triangles();
    let mut values: Vec<Option<Q>> = vec![None; 4 * n];
    let tris = as_obj(get(o, "triangles")?, "`triangles`")?;
    for (k, x) in tris {
        let key = format!("triangles.{k}");
        let t: usize = k
            .parse()
            .ok()
            .filter(|&t| t < n)
            .ok_or_else(|| Error::Parse(format!("`{key}`: bad triangle index")))?;
        values[t] = Some(rational_entry(x, &key)?);
    }
    let edges = as_obj(get(o, "edges")?, "`edges`")?;
    for (k, x) in edges {
        let key = format!("edges.{k}");
        let s = parse_slot_label(k)
            .filter(|&s| s < 3 * n)
            .ok_or_else(|| Error::Parse(format!("`{key}`: bad side label")))?;
        values[n + s] = Some(rational_entry(x, &key)?);
    }
    let mut out = Vec::with_capacity(4 * n);
    for (i, x) in values.into_iter().enumerate() {
        match x {
            Some(q) => {
                if !q.is_positive() {
                    let key = if i < n { format!("triangles.{i}") } else { format!("edges.{}", slot_label(i - n)) };
                    return Err(Error::Parse(format!("`{key}`: value must be positive")));
                }
                out.push(q)
            }
            None => {
                let key = if i < n { format!("triangles.{i}") } else { format!("edges.{}", slot_label(i - n)) };
                return Err(Error::Parse(format!("missing coordinate `{key}`")));
            }
        }
    }
    CoordVector::new(tr, out)
}

pub fn coords_to_value(c: &CoordVector) -> Value {
    let tr = c.triangulation();
    let n = tr.n_triangles();
    let tris: Map<String, Value> = (0..n).map(|t| (t.to_string(), json!(format_rational(c.triangle(t))))).collect();
    let edges: Map<String, Value> =
        (0..3 * n).map(|s| (slot_label(s), json!(format_rational(c.edge(s))))).collect();
    json!({ "surface": surface_to_value(tr), "triangles": tris, "edges": edges })
}

pub fn serialize_coords(c: &CoordVector) -> String {
    to_text(&coords_to_value(c))
}

/// Parse a curve file into named paths.
pub fn parse_curves(tr: &IdealTriangulation, text: &str) -> Result<Vec<(String, DualPath)>> {
    let v = parse_json(text)?;
    let o = as_obj(&v, "curve file")?;
    check_keys(o, &["curves"], "curve file")?;
    let curves = as_obj(get(o, "curves")?, "`curves`")?;
    curves
        .iter()
        .map(|(k, x)| {
            let s = x.as_str().ok_or_else(|| Error::Parse(format!("`curves.{k}`: expected a token string")))?;
            let p = DualPath::parse_tokens(tr, s).map_err(|e| Error::Parse(format!("`curves.{k}`: {e}")))?;
            Ok((k.clone(), p))
        })
        .collect()
}

pub fn serialize_curves(tr: &IdealTriangulation, curves: &[(String, DualPath)]) -> String {
    let m: Map<String, Value> = curves.iter().map(|(k, p)| (k.clone(), json!(p.to_tokens(tr)))).collect();
    to_text(&json!({ "curves": m }))
}

/// Parse an annotated curve pair.
pub fn parse_pair(tr: &IdealTriangulation, text: &str) -> Result<AnnotatedCurvePair> {
    let v = parse_json(text)?;
    let o = as_obj(&v, "curve pair")?;
    check_keys(o, &["alpha", "beta", "intersections"], "curve pair")?;
    let path = |x: &Value, key: &str| -> Result<DualPath> {
        let s = x.as_str().ok_or_else(|| Error::Parse(format!("`{key}`: expected a token string")))?;
        DualPath::parse_tokens(tr, s).map_err(|e| Error::Parse(format!("`{key}`: {e}")))
    };
    let alpha = path(get(o, "alpha")?, "alpha")?;
    let beta = path(get(o, "beta")?, "beta")?;
    let list = get(o, "intersections")?
        .as_array()
        .ok_or_else(|| Error::Parse("`intersections`: expected an array".into()))?;
    let mut intersections = Vec::new();
    for (i, x) in list.iter().enumerate() {
        let key = format!("intersections[{i}]");
        let e = as_obj(x, &key)?;
        check_keys(e, &["sign", "path"], &key)?;
        let sign = match get(e, "sign")?.as_i64() {
            Some(1) => 1,
            Some(-1) => -1,
            _ => return Err(Error::Parse(format!("`{key}.sign`: expected 1 or -1"))),
        };
        intersections.push(Intersection { sign, path: path(get(e, "path")?, &format!("{key}.path"))? });
    }
    Ok(AnnotatedCurvePair { alpha, beta, intersections })
}

pub fn serialize_pair(tr: &IdealTriangulation, p: &AnnotatedCurvePair) -> String {
    let ints: Vec<Value> =
        p.intersections.iter().map(|x| json!({ "sign": x.sign, "path": x.path.to_tokens(tr) })).collect();
    to_text(&json!({
        "alpha": p.alpha.to_tokens(tr),
        "beta": p.beta.to_tokens(tr),
        "intersections": ints,
    }))
}
