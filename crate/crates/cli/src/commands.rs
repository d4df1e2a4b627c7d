//! One function per subcommand. Each takes parsed JSON so `demo` can reuse
//! them on bundled inputs.

use acybe::bialgebra::{
    build_double, check_associative_cocycle, check_balanced, check_jordan_identities, check_lie_cocycle, delta_from_r,
    determined_delta_series, manin_triple_check_series, Cocycle, FiniteBialgebra, IdentityReport,
};
use acybe::cybe::{pairing_for, series_to_subspace, subspace_to_series, verify as verify_eq, StandardFormSeries};
use acybe::dnalg::DegreeWindow;
use acybe::json::{
    bialgebra_from_json, cobracket_to_json, double_report_to_json, identity_report_to_json, jordan_report_to_json,
    metric_from_json, metric_to_json, pair_from_json, pair_to_json, raw_metric_from_json, series_manin_report_to_json,
    solution_from_json, solution_to_json, stolin_report_to_json, verify_report_to_json, wbasis_from_json,
    wbasis_to_json, window_to_json, JsonCoeff,
};
use acybe::stolin::{check_stolin_pair, quasi_rational_from_pair, rational_from_pair};
use acybe::{Algebra, MetricAlgebra, Tensor2};
use serde_json::{json, Value};

use crate::render;
use crate::{CliError, Context, Kind, Opts, Report};

/// Default window for windowed checks.
pub const DEFAULT_WINDOW: DegreeWindow = DegreeWindow { lo: -4, hi: 4 };

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn is_solution(v: &Value) -> bool {
    v.get("tail").is_some()
}

pub fn gamma(v: &Value) -> Result<Report, CliError> {
    let (name, alg, gram): (String, Algebra, _) = if v.get("dim").is_some() {
        raw_metric_from_json(v, "$").context("algebra")?
    } else {
        let m = metric_from_json(v, "$").context("algebra")?;
        (m.name().to_string(), m.algebra().clone(), m.gram().clone())
    };
    let d = alg.dim();
    let inv = gram
        .inverse()
        .ok_or_else(|| CliError::Usage(format!("{name}: the form is degenerate, so γ is undefined")))?;
    let data = (0..d * d).map(|o| inv.get(o / d, o % d).clone()).collect();
    let g = Tensor2::from_data(d, data).context("γ")?;
    let failure = alg.invariance_failure(&g);
    let ok = failure.is_none();
    let first = failure.map(|(i, which)| {
        json!({
            "basis_index": i,
            "label": alg.labels()[i],
            "identity": if which == 1 { "a^(1)γ = γa^(2)" } else { "a^(2)γ = γa^(1)" },
        })
    });
    let mut text = format!("γ({name}) = {}\n", render::tensor(&g, alg.labels()));
    text.push_str(&format!("invariance: {}", status(ok)));
    if let Some(f) = &first {
        text.push_str(&format!(" (first failure at {} for {})", f["label"], f["identity"]));
    }
    Ok(Report {
        ok,
        json: json!({
            "algebra": name,
            "dim": d,
            "gamma": g.to_json(),
            "invariant": ok,
            "first_failure": first,
        }),
        text,
        artifact: None,
    })
}

fn verify_solution(r: &StandardFormSeries, opts: &Opts) -> Result<(bool, Value, String), CliError> {
    let rep = verify_eq(r, opts.equation, opts.order).context(format!(
        "verifying {} through degree {}",
        opts.equation.name(),
        opts.order
    ))?;
    let skew = r.is_skew().context("skew-symmetry")?;
    let mut j = verify_report_to_json(&rep);
    let obj = j.as_object_mut().expect("object");
    obj.insert("algebra".into(), Value::String(r.metric.name().into()));
    obj.insert(
        "type".into(),
        json!({"n": r.n, "lambda_is_one": render::lambda_is_one(&r.lambda)}),
    );
    obj.insert("classification".into(), Value::String(r.classify().into()));
    obj.insert("trunc".into(), json!(r.trunc()));
    obj.insert("skew".into(), json!(skew));
    let mut text = render::solution(r);
    text.push_str(&format!(
        "{} through total degree {}: {}",
        rep.equation.name(),
        rep.verified_through_degree,
        status(rep.holds())
    ));
    if let Some((exp, c)) = &rep.first_nonzero {
        let what = if rep.pole {
            "residue along z1 = z3"
        } else {
            "coefficient"
        };
        text.push_str(&format!(
            "\nfirst nonzero {what} at z^{exp:?}: {}",
            render::tensor(c, r.metric.algebra().labels())
        ));
    }
    text.push_str(&format!("\nskew (r = r̄): {skew}"));
    Ok((rep.holds(), j, text))
}

pub fn verify(v: &Value, opts: &Opts) -> Result<Report, CliError> {
    let r = solution_from_json(v, "$").context("solution")?;
    let (ok, json, text) = verify_solution(&r, opts)?;
    Ok(Report {
        ok,
        json,
        text,
        artifact: None,
    })
}

pub fn build_stolin(v: &Value, opts: &Opts) -> Result<Report, CliError> {
    let kind = opts.kind.unwrap_or(Kind::Rational);
    if matches!(kind, Kind::QuasiTrig | Kind::Trig) {
        return Err(CliError::Usage(
            "build-stolin builds rational or quasi-rational solutions only".into(),
        ));
    }
    let pair = pair_from_json(v, "$").context("pair")?;
    let check = check_stolin_pair(&pair).context("checking the pair")?;
    let mut j = json!({
        "pair": pair_to_json(&pair),
        "pair_report": stolin_report_to_json(&check),
    });
    if !check.is_valid() {
        let failure = check.first_failure().unwrap_or("invalid");
        return Ok(Report {
            ok: false,
            json: j,
            text: format!("Stolin pair: FAIL ({failure})"),
            artifact: None,
        });
    }
    // Two degrees of headroom beyond the verified order.
    let trunc = opts.order + 3;
    let (name, r) = match kind {
        Kind::Rational => ("rational", rational_from_pair(&pair, trunc)),
        _ => ("quasi-rational", quasi_rational_from_pair(&pair, trunc)),
    };
    let r = r.context(format!("building the {name} solution"))?;
    let (ok, vj, vtext) = verify_solution(&r, opts)?;
    let sol = solution_to_json(&r);
    let obj = j.as_object_mut().expect("object");
    obj.insert("kind".into(), Value::String(name.into()));
    obj.insert("verify".into(), vj);
    obj.insert("solution".into(), sol.clone());
    Ok(Report {
        ok,
        json: j,
        text: format!("Stolin pair: PASS\n{name} solution:\n{vtext}"),
        artifact: Some(sol),
    })
}

pub fn convert(v: &Value, opts: &Opts) -> Result<Report, CliError> {
    if is_solution(v) {
        let r = solution_from_json(v, "$").context("solution")?;
        let w = series_to_subspace(&r).context("series to subspace")?;
        let back = subspace_to_series(&w, &r.metric, r.trunc()).context("subspace to series")?;
        let ok = back == r;
        let doc = json!({
            "algebra": metric_to_json(&r.metric),
            "trunc": r.trunc(),
            "wbasis": wbasis_to_json(&w),
        });
        let text = format!(
            "{}W-basis: n = {}, tails vanish from k = {}, {} nonzero tails\nround trip: {}",
            render::solution(&r),
            w.n,
            w.tail_bound,
            w.tails.values().filter(|t| !t.is_zero()).count(),
            status(ok)
        );
        return Ok(Report {
            ok,
            json: json!({"direction": "series-to-subspace", "round_trip": ok, "output": doc}),
            text,
            artifact: Some(doc),
        });
    }
    if v.get("wbasis").is_none() {
        return Err(CliError::Usage(
            "convert expects a solution (with \"tail\") or a W-basis document (with \"wbasis\")".into(),
        ));
    }
    let metric = metric_from_json(
        v.get("algebra")
            .ok_or_else(|| CliError::Usage("W-basis document lacks \"algebra\"".into()))?,
        "$.algebra",
    )
    .context("algebra")?;
    let w = wbasis_from_json(&v["wbasis"], metric.dim(), "$.wbasis").context("W-basis")?;
    let trunc = match v.get("trunc") {
        Some(t) => t
            .as_u64()
            .ok_or_else(|| CliError::Usage("$.trunc must be a non-negative integer".into()))? as u32,
        None => opts.order + 3,
    };
    let r = subspace_to_series(&w, &metric, trunc).context("subspace to series")?;
    let again = series_to_subspace(&r).context("series to subspace")?;
    let ok = again == w;
    let sol = solution_to_json(&r);
    Ok(Report {
        ok,
        json: json!({"direction": "subspace-to-series", "round_trip": ok, "output": sol}),
        text: format!("{}round trip: {}", render::solution(&r), status(ok)),
        artifact: Some(sol),
    })
}

pub fn double(v: &Value) -> Result<Report, CliError> {
    let (metric, b) = bialgebra_from_json(v, "$").context("bialgebra")?;
    double_of(&metric, &b)
}

pub fn double_of(metric: &MetricAlgebra, b: &FiniteBialgebra) -> Result<Report, CliError> {
    let dbl = build_double(b);
    let rep = dbl.report();
    let base = b.algebra.categories();
    // The double should live in the category of A.
    let same_category = (!base.associative || rep.categories.associative)
        && (!base.lie || rep.categories.lie)
        && (!base.jordan || rep.categories.jordan);
    let determined = dbl.determined_delta().context("determined cobracket")?;
    let first_mismatch = determined.iter().zip(&b.delta).position(|(a, b)| a != b);
    let checks = [
        ("same_category", same_category),
        ("metric", rep.metric_ok),
        ("a_subalgebra", rep.a_subalgebra),
        ("dual_subalgebra", rep.dual_subalgebra),
        ("a_isotropic", rep.a_isotropic),
        ("dual_isotropic", rep.dual_isotropic),
        ("determines_delta", first_mismatch.is_none()),
    ];
    let first_failure = checks.iter().find(|(_, ok)| !ok).map(|(n, _)| *n);
    let ok = first_failure.is_none();
    let mut j = double_report_to_json(&dbl, &rep);
    let obj = j.as_object_mut().expect("object");
    obj.insert("algebra".into(), metric_to_json(metric));
    obj.insert("same_category".into(), json!(same_category));
    obj.insert("determines_delta".into(), json!(first_mismatch.is_none()));
    obj.insert(
        "first_delta_mismatch".into(),
        json!(first_mismatch.map(|i| b.algebra.labels()[i].clone())),
    );
    obj.insert("first_failure".into(), json!(first_failure));
    obj.insert("holds".into(), json!(ok));
    let mut text = format!("double of {} (dimension {}):\n", metric.name(), 2 * dbl.d);
    for (name, pass) in checks {
        text.push_str(&format!("  {name}: {}\n", status(pass)));
    }
    Ok(Report {
        ok,
        json: j,
        text,
        artifact: None,
    })
}

fn identity_text(name: &str, r: &IdentityReport, labels: &[String]) -> String {
    let mut s = format!(
        "  {name}: {} ({} generator pairs through degree {})",
        status(r.holds),
        r.pairs_checked,
        r.degree
    );
    if let Some(((k, i), (l, j))) = r.first_failure {
        s.push_str(&format!(
            ", first failure at ({}·z^{k}, {}·z^{l})",
            labels[i], labels[j]
        ));
    }
    s
}

fn cocycle_checks(
    alg: &Algebra,
    delta: &Cocycle,
    window: usize,
) -> Result<Vec<(&'static str, IdentityReport)>, CliError> {
    if alg.is_lie() {
        Ok(vec![(
            "lie_cocycle",
            check_lie_cocycle(delta, window).context("Lie cocycle")?,
        )])
    } else if alg.is_associative() {
        Ok(vec![
            (
                "associative_cocycle",
                check_associative_cocycle(delta, window).context("associative cocycle")?,
            ),
            ("balanced", check_balanced(delta, window).context("balancedness")?),
        ])
    } else {
        Err(CliError::Usage(
            "cocycle identities for this algebra need a finite bialgebra input".into(),
        ))
    }
}

pub fn cocycle_check(v: &Value, opts: &Opts) -> Result<Report, CliError> {
    let window = opts.window.unwrap_or(DEFAULT_WINDOW).hi;
    let window = usize::try_from(window).map_err(|_| CliError::Usage("cocycle-check needs a window N ≥ 0".into()))?;
    if is_solution(v) {
        let r = solution_from_json(v, "$").context("solution")?;
        let alg = r.metric.algebra().clone();
        let max_k = 2 * window;
        let delta = delta_from_r(&r, max_k).context("δ_r")?;
        // For associative A the infinitesimal cobracket is τδ_r.
        let (which, checked) = if alg.is_lie() {
            ("δ_r", delta.clone())
        } else {
            ("τδ_r", delta.tau())
        };
        let reports = cocycle_checks(&alg, &checked, window)?;
        let ok = reports.iter().all(|(_, r)| r.holds);
        let mut text = format!(
            "{}checking {which} on generators b_i z^k, k ≤ {window}:\n",
            render::solution(&r)
        );
        for (name, rep) in &reports {
            text.push_str(&identity_text(name, rep, alg.labels()));
            text.push('\n');
        }
        return Ok(Report {
            ok,
            json: json!({
                "algebra": r.metric.name(),
                "cobracket": which,
                "window": window,
                "max_k": max_k,
                "checks": reports.iter().map(|(n, r)| identity_report_to_json(n, r)).collect::<Vec<_>>(),
                "holds": ok,
            }),
            text,
            artifact: Some(cobracket_to_json(&checked)),
        });
    }
    let (metric, b) = bialgebra_from_json(v, "$").context("bialgebra")?;
    let alg = &b.algebra;
    if alg.is_jordan() && !alg.is_associative() {
        let rep = check_jordan_identities(&b).context("Jordan identities")?;
        let mut text = format!(
            "Jordan bialgebra identities on {}: {}",
            metric.name(),
            status(rep.holds)
        );
        if let Some((id, a, bb)) = &rep.first_failure {
            text.push_str(&format!(", identity {id} fails at a = {a:?}, b = {bb:?}"));
        }
        return Ok(Report {
            ok: rep.holds,
            json: json!({"algebra": metric.name(), "checks": [jordan_report_to_json(&rep)], "holds": rep.holds}),
            text,
            artifact: None,
        });
    }
    let reports = cocycle_checks(alg, &b.to_cocycle(), 0)?;
    let ok = reports.iter().all(|(_, r)| r.holds);
    let mut text = format!("cocycle identities on {}:\n", metric.name());
    for (name, rep) in &reports {
        text.push_str(&identity_text(name, rep, alg.labels()));
        text.push('\n');
    }
    Ok(Report {
        ok,
        json: json!({
            "algebra": metric.name(),
            "checks": reports.iter().map(|(n, r)| identity_report_to_json(n, r)).collect::<Vec<_>>(),
            "holds": ok,
        }),
        text,
        artifact: None,
    })
}

/// Degree through which the triple's cobracket is compared with `δ_r`.
const MANIN_DELTA_DEGREE: u32 = 3;

pub fn manin_check(v: &Value, opts: &Opts) -> Result<Report, CliError> {
    let window = opts.window.unwrap_or(DEFAULT_WINDOW);
    let r = solution_from_json(v, "$").context("solution")?;
    let w = series_to_subspace(&r).context("series to subspace")?;
    let p = pairing_for(&r).context("pairing")?;
    let rep = manin_triple_check_series(&w, &p, window).context("Manin triple")?;
    let max_k = window.hi.clamp(0, 3) as usize;
    let from_triple = determined_delta_series(&w, &p, max_k, MANIN_DELTA_DEGREE).context("determined cobracket")?;
    let from_r = delta_from_r(&r, max_k).context("δ_r")?;
    let d = r.metric.dim();
    let mut degree = MANIN_DELTA_DEGREE;
    let mut mismatch = None;
    'outer: for k in 0..=max_k {
        for i in 0..d {
            let (a, b) = (from_triple.image(k, i), from_r.image(k, i));
            degree = degree.min(b.trunc());
            if let Some(e) = a.first_difference(b, degree) {
                mismatch = Some((k, i, e));
                break 'outer;
            }
        }
    }
    let ok = rep.holds() && mismatch.is_none();
    let labels = r.metric.algebra().labels();
    let mut text = render::solution(&r);
    text.push_str(&format!(
        "Manin triple over window [{}, {}]:\n  diagonal isotropic: {}\n  diagonal closed: {}\n  W isotropic: {}\n  W complementary: {}\n  W closed: {}\n",
        window.lo,
        window.hi,
        status(rep.diagonal_isotropic),
        status(rep.diagonal_closed),
        status(rep.w.isotropic),
        status(rep.w.complementary),
        status(rep.w.subalgebra),
    ));
    text.push_str(&format!(
        "determined cobracket = δ_r for k ≤ {max_k} through degree {degree}: {}",
        status(mismatch.is_none())
    ));
    if let Some((k, i, e)) = mismatch {
        text.push_str(&format!(" (first difference at {}·z^{k}, exponent {e:?})", labels[i]));
    }
    Ok(Report {
        ok,
        json: json!({
            "algebra": r.metric.name(),
            "window": window_to_json(&window),
            "manin": series_manin_report_to_json(&rep),
            "determined_delta": {
                "max_k": max_k,
                "degree": degree,
                "agrees": mismatch.is_none(),
                "first_mismatch": mismatch.map(|(k, i, e)| json!({"generator": format!("{k},{i}"), "exp": e.to_vec()})),
            },
            "holds": ok,
        }),
        text,
        artifact: None,
    })
}
