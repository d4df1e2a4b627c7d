//! JSON encodings. Maps are `serde_json`'s default sorted maps, so output is
//! byte-stable; scalars are written as canonical strings.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, MetricAlgebra};
use crate::bialgebra::{
    Cocycle, Double, DoubleReport, FiniteBialgebra, IdentityReport, JordanReport, ManinReport, SeriesManinReport,
};
use crate::cybe::{Equation, OrthogonalityReport, PairingIdentityReport, StandardFormSeries, VerifyReport};
use crate::dnalg::{DegreeWindow, SpanReport, WBasis};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::series::{Coefficient, Laurent, Series, Series1};
use crate::stolin::{EpsilonLagrangian, StolinPair, StolinReport};
use crate::tensor::{Element, Tensor, Tensor2};

fn err(path: &str, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: msg.into(),
    }
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(path, format!("missing field {key:?}")))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn as_uint(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| err(path, "expected a non-negative integer"))
}

fn as_int(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| err(path, "expected an integer"))
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

/// Scalars are strings; bare JSON integers are accepted too.
pub fn scalar_from_json(v: &Value, path: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => s.parse::<Scalar>().map_err(|e| err(path, e.to_string())),
        Value::Number(n) => n
            .as_i64()
            .map(Scalar::from_int)
            .ok_or_else(|| err(path, "non-integer number; write rationals as \"p/q\" strings")),
        _ => Err(err(path, "expected a scalar string")),
    }
}

/// Coefficient spaces that have a JSON form: scalars and nested arrays.
pub trait JsonCoeff: Coefficient + Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value, dim: usize, path: &str) -> Result<Self>;
}

impl JsonCoeff for Scalar {
    fn to_json(&self) -> Value {
        scalar_to_json(self)
    }
    fn from_json(v: &Value, _dim: usize, path: &str) -> Result<Self> {
        scalar_from_json(v, path)
    }
}

fn nest(data: &[Scalar], d: usize, depth: usize) -> Value {
    if depth == 1 {
        return Value::Array(data.iter().map(scalar_to_json).collect());
    }
    let chunk = data.len() / d;
    Value::Array(data.chunks(chunk.max(1)).map(|c| nest(c, d, depth - 1)).collect())
}

fn unnest(v: &Value, d: usize, depth: usize, path: &str, out: &mut Vec<Scalar>) -> Result<()> {
    let arr = as_array(v, path)?;
    if arr.len() != d {
        return Err(err(path, format!("expected {d} entries, found {}", arr.len())));
    }
    for (i, x) in arr.iter().enumerate() {
        let p = format!("{path}[{i}]");
        if depth == 1 {
            out.push(scalar_from_json(x, &p)?);
        } else {
            unnest(x, d, depth - 1, &p, out)?;
        }
    }
    Ok(())
}

impl<const R: usize> JsonCoeff for Tensor<R> {
    fn to_json(&self) -> Value {
        nest(self.data(), self.dim(), R)
    }
    fn from_json(v: &Value, dim: usize, path: &str) -> Result<Self> {
        let mut data = Vec::with_capacity(dim.pow(R as u32));
        unnest(v, dim, R, path, &mut data)?;
        Tensor::from_data(dim, data)
    }
}

const VARS: [&str; 3] = ["x", "y", "z"];

pub fn series_to_json<C: JsonCoeff, const K: usize>(s: &Series<C, K>) -> Value {
    let vars: Vec<&str> = if K == 1 { vec!["z"] } else { VARS[..K].to_vec() };
    let terms: Vec<Value> = s
        .terms()
        .iter()
        .map(|(e, c)| json!({"exp": e.to_vec(), "coeff": c.to_json()}))
        .collect();
    json!({"vars": vars, "trunc": s.trunc(), "terms": terms})
}

pub fn series_from_json<C: JsonCoeff, const K: usize>(v: &Value, dim: usize, path: &str) -> Result<Series<C, K>> {
    let trunc = as_uint(field(v, "trunc", path)?, &format!("{path}.trunc"))? as u32;
    let mut terms = Vec::new();
    for (i, t) in as_array(field(v, "terms", path)?, &format!("{path}.terms"))?
        .iter()
        .enumerate()
    {
        let p = format!("{path}.terms[{i}]");
        let exp_v = as_array(field(t, "exp", &p)?, &format!("{p}.exp"))?;
        if exp_v.len() != K {
            return Err(err(&format!("{p}.exp"), format!("expected {K} exponents")));
        }
        let mut exp = [0u32; K];
        for (j, x) in exp_v.iter().enumerate() {
            exp[j] = as_uint(x, &format!("{p}.exp[{j}]"))? as u32;
        }
        if exp.iter().sum::<u32>() > trunc {
            return Err(err(&format!("{p}.exp"), format!("degree exceeds trunc {trunc}")));
        }
        terms.push((exp, C::from_json(field(t, "coeff", &p)?, dim, &format!("{p}.coeff"))?));
    }
    Ok(Series::from_terms(trunc, terms))
}

/// `{"lo", "hi", "terms"}`: exponents lie in `[lo, hi]`; `hi = null` means exact.
pub fn laurent_to_json<C: JsonCoeff>(l: &Laurent<C>) -> Value {
    let terms: Vec<Value> = l
        .terms()
        .iter()
        .map(|(e, c)| json!({"exp": e, "coeff": c.to_json()}))
        .collect();
    json!({"vars": ["z"], "lo": l.lo(), "hi": l.hi(), "terms": terms})
}

pub fn laurent_from_json<C: JsonCoeff>(v: &Value, dim: usize, path: &str) -> Result<Laurent<C>> {
    let hi = match v.get("hi") {
        None | Some(Value::Null) => None,
        Some(h) => Some(as_int(h, &format!("{path}.hi"))?),
    };
    let mut terms = Vec::new();
    for (i, t) in as_array(field(v, "terms", path)?, &format!("{path}.terms"))?
        .iter()
        .enumerate()
    {
        let p = format!("{path}.terms[{i}]");
        let e = as_int(field(t, "exp", &p)?, &format!("{p}.exp"))?;
        if hi.is_some_and(|h| e > h) {
            return Err(err(&format!("{p}.exp"), format!("exponent {e} above hi")));
        }
        terms.push((e, C::from_json(field(t, "coeff", &p)?, dim, &format!("{p}.coeff"))?));
    }
    let lowest = terms.iter().map(|(e, _)| *e).min().unwrap_or(0);
    let lo = match v.get("lo") {
        None | Some(Value::Null) => lowest,
        Some(l) => as_int(l, &format!("{path}.lo"))?.min(lowest),
    };
    let mut out = Laurent::with_window(lo, hi);
    for (e, c) in &terms {
        out.add_term(*e, c);
    }
    Ok(out)
}

fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

fn matrix_from_json(v: &Value, rows: usize, cols: usize, path: &str) -> Result<Matrix> {
    let arr = as_array(v, path)?;
    if arr.len() != rows {
        return Err(err(path, format!("expected {rows} rows, found {}", arr.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, r) in arr.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let row = as_array(r, &p)?;
        if row.len() != cols {
            return Err(err(&p, format!("expected {cols} entries, found {}", row.len())));
        }
        out.push(
            row.iter()
                .enumerate()
                .map(|(j, x)| scalar_from_json(x, &format!("{p}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(Matrix::from_rows(out, cols))
}

/// Named algebras are written as `{"named": …}` when the name round-trips.
pub fn metric_to_json(m: &MetricAlgebra) -> Value {
    if MetricAlgebra::named(m.name()).map(|n| &n == m).unwrap_or(false) {
        return json!({"named": m.name()});
    }
    metric_full_json(m)
}

/// Full structure-constant dump.
pub fn metric_full_json(m: &MetricAlgebra) -> Value {
    let alg = m.algebra();
    let d = alg.dim();
    json!({
        "name": m.name(),
        "dim": d,
        "structure": nest(alg.structure(), d, 3),
        "gram": matrix_to_json(m.gram()),
        "labels": alg.labels(),
    })
}

pub fn metric_from_json(v: &Value, path: &str) -> Result<MetricAlgebra> {
    if let Some(name) = v.get("named") {
        let name = name
            .as_str()
            .ok_or_else(|| err(&format!("{path}.named"), "expected a string"))?;
        return MetricAlgebra::named(name).map_err(|e| err(&format!("{path}.named"), e.to_string()));
    }
    if let Value::String(name) = v {
        return MetricAlgebra::named(name).map_err(|e| err(path, e.to_string()));
    }
    let (name, alg, gram) = raw_metric_from_json(v, path)?;
    MetricAlgebra::new(name, alg, gram).map_err(|e| err(path, e.to_string()))
}

/// The full algebra form without validating the metric, so a caller can
/// report why a candidate form fails.
pub fn raw_metric_from_json(v: &Value, path: &str) -> Result<(String, Algebra, Matrix)> {
    let d = as_uint(field(v, "dim", path)?, &format!("{path}.dim"))? as usize;
    let mut structure = Vec::with_capacity(d * d * d);
    unnest(
        field(v, "structure", path)?,
        d,
        3,
        &format!("{path}.structure"),
        &mut structure,
    )?;
    let gram = matrix_from_json(field(v, "gram", path)?, d, d, &format!("{path}.gram"))?;
    let labels = match v.get("labels") {
        None => None,
        Some(l) => Some(
            as_array(l, &format!("{path}.labels"))?
                .iter()
                .map(|x| {
                    x.as_str()
                        .map(String::from)
                        .ok_or_else(|| err(&format!("{path}.labels"), "expected strings"))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let name = v.get("name").and_then(Value::as_str).unwrap_or("custom").to_string();
    let alg = Algebra::new(d, structure, labels).map_err(|e| err(path, e.to_string()))?;
    Ok((name, alg, gram))
}

pub fn solution_to_json(r: &StandardFormSeries) -> Value {
    json!({
        "algebra": metric_to_json(&r.metric),
        "n": r.n,
        "lambda": series_to_json(&r.lambda),
        "tail": series_to_json(&r.tail),
        "trunc": r.trunc(),
    })
}

pub fn solution_from_json(v: &Value, path: &str) -> Result<StandardFormSeries> {
    let metric = metric_from_json(field(v, "algebra", path)?, &format!("{path}.algebra"))?;
    let d = metric.dim();
    let n = as_uint(field(v, "n", path)?, &format!("{path}.n"))? as u32;
    let tail = series_from_json(field(v, "tail", path)?, d, &format!("{path}.tail"))?;
    let lambda: Series1 = match v.get("lambda") {
        None | Some(Value::Null) => Series1::one(tail.trunc()),
        Some(l) => series_from_json(l, 1, &format!("{path}.lambda"))?,
    };
    let r = StandardFormSeries::new(metric, n, lambda, tail).map_err(|e| err(path, e.to_string()))?;
    if let Some(t) = v.get("trunc") {
        let t = as_uint(t, &format!("{path}.trunc"))? as u32;
        if t > r.trunc() {
            return Err(err(
                &format!("{path}.trunc"),
                format!("declared trunc {t} exceeds the data's truncation {}", r.trunc()),
            ));
        }
    }
    Ok(r)
}

pub fn equation_from_str(s: &str) -> Option<Equation> {
    match s {
        "cybe" => Some(Equation::Cybe),
        "gcybe" => Some(Equation::Gcybe),
        _ => None,
    }
}

pub fn verify_report_to_json(rep: &VerifyReport) -> Value {
    let first = match &rep.first_nonzero {
        None => Value::Null,
        Some((exp, c)) => json!({"exp": exp.to_vec(), "coeff": c.to_json()}),
    };
    json!({
        "equation": rep.equation.name(),
        "verified_through_degree": rep.verified_through_degree,
        "pole": rep.pole,
        "holds": rep.holds(),
        "first_nonzero": first,
    })
}

fn gen_key(k: usize, i: usize) -> String {
    format!("{k},{i}")
}

fn parse_key(key: &str, path: &str) -> Result<(usize, usize)> {
    let (a, b) = key
        .split_once(',')
        .ok_or_else(|| err(path, format!("bad generator key {key:?}; expected \"k,i\"")))?;
    let k = a.trim().parse().map_err(|_| err(path, format!("bad k in {key:?}")))?;
    let i = b.trim().parse().map_err(|_| err(path, format!("bad i in {key:?}")))?;
    Ok((k, i))
}

pub fn cobracket_to_json(c: &Cocycle) -> Value {
    let mut gens = Map::new();
    let mut trunc = u32::MAX;
    for (k, row) in c.images.iter().enumerate() {
        for (i, s) in row.iter().enumerate() {
            trunc = trunc.min(s.trunc());
            gens.insert(gen_key(k, i), series_to_json(s));
        }
    }
    json!({"generators": gens, "trunc": if trunc == u32::MAX { 0 } else { trunc }})
}

pub fn wbasis_to_json(w: &WBasis) -> Value {
    let tails: BTreeMap<String, Value> = w
        .tails
        .iter()
        .map(|((k, i), t)| (gen_key(*k, *i), laurent_to_json(t)))
        .collect();
    json!({
        "n": w.n,
        "tail_bound": w.tail_bound,
        "tails": tails,
        "lambda": w.lambda.as_ref().map(series_to_json),
    })
}

pub fn wbasis_from_json(v: &Value, d: usize, path: &str) -> Result<WBasis> {
    let n = as_uint(field(v, "n", path)?, &format!("{path}.n"))? as usize;
    let mut w = WBasis::zero_tails(d, n);
    if let Some(t) = v.get("tails") {
        let obj = t
            .as_object()
            .ok_or_else(|| err(&format!("{path}.tails"), "expected an object"))?;
        for (key, val) in obj {
            let p = format!("{path}.tails.{key}");
            let (k, i) = parse_key(key, &p)?;
            if i >= d {
                return Err(err(&p, format!("basis index {i} out of range for dimension {d}")));
            }
            w.set_tail(k, i, laurent_from_json(val, d, &p)?);
        }
    }
    if let Some(l) = v.get("lambda").filter(|l| !l.is_null()) {
        w.lambda = Some(series_from_json(l, 1, &format!("{path}.lambda"))?);
    }
    Ok(w)
}

pub fn window_to_json(w: &DegreeWindow) -> Value {
    json!([w.lo, w.hi])
}

pub fn span_report_to_json(r: &SpanReport) -> Value {
    let rows: Vec<Value> = r
        .rank_table
        .iter()
        .map(|row| json!({"degree": row.degree, "rank": row.rank, "expected": row.expected}))
        .collect();
    json!({
        "window": window_to_json(&r.window),
        "isotropic": r.isotropic,
        "complementary": r.complementary,
        "subalgebra": r.subalgebra,
        "holds": r.all_hold(),
        "first_non_isotropic": r.first_non_isotropic.as_ref().map(|((k, i), (l, j), v)| json!({
            "a": gen_key(*k, *i), "b": gen_key(*l, *j), "value": scalar_to_json(v)
        })),
        "first_non_closed": r.first_non_closed.as_ref().map(|((k, i), (l, j), deg)| json!({
            "a": gen_key(*k, *i), "b": gen_key(*l, *j), "degree": deg
        })),
        "rank_table": rows,
    })
}

pub fn series_manin_report_to_json(r: &SeriesManinReport) -> Value {
    json!({
        "diagonal_isotropic": r.diagonal_isotropic,
        "diagonal_closed": r.diagonal_closed,
        "w": span_report_to_json(&r.w),
        "holds": r.holds(),
    })
}

pub fn identity_report_to_json(name: &str, r: &IdentityReport) -> Value {
    json!({
        "check": name,
        "holds": r.holds,
        "pairs_checked": r.pairs_checked,
        "verified_through_degree": r.degree,
        "first_failure": r.first_failure.map(|((k, i), (l, j))| json!([gen_key(k, i), gen_key(l, j)])),
    })
}

pub fn jordan_report_to_json(r: &JordanReport) -> Value {
    json!({
        "check": "jordan",
        "holds": r.holds,
        "first_failure": r.first_failure.as_ref().map(|(id, a, b)| json!({"identity": id, "a": a, "b": b})),
    })
}

pub fn double_report_to_json(dbl: &Double, r: &DoubleReport) -> Value {
    json!({
        "dim": dbl.algebra.dim(),
        "categories": {
            "associative": r.categories.associative,
            "lie": r.categories.lie,
            "jordan": r.categories.jordan,
            "commutative": r.categories.commutative,
            "unital": r.categories.unital(),
        },
        "metric_ok": r.metric_ok,
        "a_subalgebra": r.a_subalgebra,
        "dual_subalgebra": r.dual_subalgebra,
        "a_isotropic": r.a_isotropic,
        "dual_isotropic": r.dual_isotropic,
        "structure": nest(dbl.algebra.structure(), dbl.algebra.dim(), 3),
        "gram": matrix_to_json(&dbl.gram),
        "labels": dbl.algebra.labels(),
    })
}

pub fn manin_report_to_json(r: &ManinReport) -> Value {
    json!({
        "complementary": r.complementary,
        "plus_isotropic": r.plus_isotropic,
        "minus_isotropic": r.minus_isotropic,
        "plus_closed": r.plus_closed,
        "minus_closed": r.minus_closed,
        "holds": r.holds(),
    })
}

pub fn orthogonality_report_to_json(r: &OrthogonalityReport) -> Value {
    json!({
        "orthogonal": r.orthogonal,
        "holds": r.holds(),
        "bar_span": span_report_to_json(&r.bar_span),
        "first_failure": r.first_failure.as_ref().map(|((k, i), (l, j), v)| json!({
            "a": gen_key(*k, *i), "b": gen_key(*l, *j), "value": scalar_to_json(v)
        })),
    })
}

pub fn pairing_identity_report_to_json(r: &PairingIdentityReport) -> Value {
    json!({
        "triples_checked": r.triples_checked,
        "nonzero_triples": r.nonzero_triples,
        "holds": r.holds(),
        "first_failure": r.first_failure.map(|t| t.iter().map(|(k, i)| gen_key(*k, *i)).collect::<Vec<_>>()),
    })
}

/// `{"algebra", "delta": [tensor per basis element]}`, or `{"algebra", "t",
/// "co_opposite"?}` for the principal derivation `a ↦ a^{(1)}t − t a^{(2)}`
/// (or its co-opposite); with neither, `δ = 0`.
pub fn bialgebra_from_json(v: &Value, path: &str) -> Result<(MetricAlgebra, FiniteBialgebra)> {
    let metric = metric_from_json(field(v, "algebra", path)?, &format!("{path}.algebra"))?;
    let d = metric.dim();
    let alg = metric.algebra().clone();
    let b = match (v.get("delta"), v.get("t")) {
        (Some(_), Some(_)) => return Err(err(path, "give either \"delta\" or \"t\", not both")),
        (Some(dv), None) => {
            let arr = as_array(dv, &format!("{path}.delta"))?;
            if arr.len() != d {
                return Err(err(
                    &format!("{path}.delta"),
                    format!("expected {d} tensors, found {}", arr.len()),
                ));
            }
            let delta = arr
                .iter()
                .enumerate()
                .map(|(i, t)| Tensor2::from_json(t, d, &format!("{path}.delta[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            FiniteBialgebra::new(alg, delta).map_err(|e| err(path, e.to_string()))?
        }
        (None, Some(tv)) => {
            let t = Tensor2::from_json(tv, d, &format!("{path}.t"))?;
            let b = FiniteBialgebra::coboundary(alg, &t);
            match v.get("co_opposite").map(|c| c.as_bool()) {
                None | Some(Some(false)) => b,
                Some(Some(true)) => b.tau(),
                Some(None) => return Err(err(&format!("{path}.co_opposite"), "expected a boolean")),
            }
        }
        (None, None) => FiniteBialgebra::zero(alg),
    };
    Ok((metric, b))
}

pub fn bialgebra_to_json(metric: &MetricAlgebra, b: &FiniteBialgebra) -> Value {
    json!({
        "algebra": metric_to_json(metric),
        "delta": b.delta.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
    })
}

fn element_to_matrix_json(e: &Element, n: usize) -> Value {
    nest(e.data(), n, 2)
}

pub fn pair_to_json(p: &StolinPair) -> Value {
    json!({
        "n": p.n,
        "k": p.k,
        "S_basis": p.s_basis.iter().map(|b| element_to_matrix_json(b, p.n)).collect::<Vec<_>>(),
        "chi": matrix_to_json(&p.chi),
    })
}

pub fn pair_from_json(v: &Value, path: &str) -> Result<StolinPair> {
    let n = as_uint(field(v, "n", path)?, &format!("{path}.n"))? as usize;
    let k = as_uint(field(v, "k", path)?, &format!("{path}.k"))? as usize;
    let basis_v = as_array(field(v, "S_basis", path)?, &format!("{path}.S_basis"))?;
    let mut basis = Vec::with_capacity(basis_v.len());
    for (i, b) in basis_v.iter().enumerate() {
        let mut data = Vec::with_capacity(n * n);
        unnest(b, n, 2, &format!("{path}.S_basis[{i}]"), &mut data)?;
        basis.push(Element::from_vec(data));
    }
    let m = basis.len();
    let chi = matrix_from_json(field(v, "chi", path)?, m, m, &format!("{path}.chi"))?;
    StolinPair::new(n, k, basis, chi).map_err(|e| err(path, e.to_string()))
}

pub fn stolin_report_to_json(r: &StolinReport) -> Value {
    json!({
        "closed": r.closed,
        "spans_with_p_k": r.spans_with_p_k,
        "skew": r.skew,
        "connes": r.connes,
        "first_connes_failure": r.first_connes_failure.map(|t| t.to_vec()),
        "intersection_dim": r.intersection_dim,
        "nondegenerate_on_intersection": r.nondegenerate_on_intersection,
        "valid": r.is_valid(),
    })
}

pub fn lagrangian_to_json(v: &EpsilonLagrangian) -> Value {
    json!({
        "basis": v.basis.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
        "f_tilde": v.f_tilde.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
        "subalgebra": v.subalgebra,
        "lagrangian": v.lagrangian,
        "complementary": v.complementary,
    })
}

/// Pretty-printed canonical form with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_document(text: &str, path: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| err(path, format!("line {}, column {}: {e}", e.line(), e.column())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Series2;
    use crate::tensor::Tensor2;

    #[test]
    fn scalar_strings() {
        assert_eq!(scalar_to_json(&Scalar::ratio(-3, 4)), json!("-3/4"));
        assert_eq!(scalar_from_json(&json!("5"), "$").unwrap(), Scalar::from_int(5));
        assert_eq!(scalar_from_json(&json!(2), "$").unwrap(), Scalar::from_int(2));
        assert!(matches!(scalar_from_json(&json!(0.5), "$.x"), Err(Error::Parse { path, .. }) if path == "$.x"));
    }

    #[test]
    fn solution_round_trip() {
        let m = MetricAlgebra::matrix(2).unwrap();
        let t = Tensor2::unit(4, [0, 1]).sub(&Tensor2::unit(4, [1, 0]));
        let r = StandardFormSeries::with_unit_lambda(m, 0, Series2::monomial([0, 0], t, 5), 5).unwrap();
        let v = solution_to_json(&r);
        assert_eq!(v["algebra"], json!({"named": "matrix:2"}));
        let back = solution_from_json(&v, "$").unwrap();
        assert_eq!(back, r);
        assert_eq!(to_canonical_string(&solution_to_json(&back)), to_canonical_string(&v));
    }

    #[test]
    fn custom_metric_round_trip() {
        let m = MetricAlgebra::sl(2).unwrap().rescaled(&Scalar::from_int(2)).unwrap();
        let back = metric_from_json(&metric_to_json(&m), "$").unwrap();
        assert_eq!(back.gram(), m.gram());
        assert_eq!(back.algebra(), m.algebra());
    }

    #[test]
    fn bialgebra_forms() {
        let v = json!({"algebra": {"named": "matrix:2"}, "t": [["0","1","0","0"],["-1","0","0","0"],["0","0","0","0"],["0","0","0","0"]], "co_opposite": true});
        let (m, b) = bialgebra_from_json(&v, "$").unwrap();
        let back = bialgebra_from_json(&bialgebra_to_json(&m, &b), "$").unwrap().1;
        assert_eq!(back, b);
        let zero = bialgebra_from_json(&json!({"algebra": "jordan:sym_2"}), "$").unwrap().1;
        assert!(zero.delta.iter().all(|t| t.is_zero()));
    }

    #[test]
    fn parse_errors_carry_paths() {
        let v = json!({"algebra": {"named": "matrix:2"}, "n": 0, "tail": {"trunc": 2, "terms": [{"exp": [0], "coeff": 0}]}});
        match solution_from_json(&v, "$") {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "$.tail.terms[0].exp"),
            other => panic!("{other:?}"),
        }
    }
}
