//! `acybe demo`: the bundled M_2 examples, end to end. Every step states the
//! outcome it expects; failing inputs are expected to fail.

use acybe::bialgebra::manin_triple_check_finite;
use acybe::cybe::{
    emit_standard_form, gauge_transform, gcyb_pairing_identity, normalize_type, orthogonality_check, pairing_for,
    series_to_subspace, verify, Equation, GaugeData, StandardKind, TrigFormData,
};
use acybe::dnalg::{pole_expansion_failure, wbasis_span_check, DegreeWindow, ResiduePairing};
use acybe::json::{parse_document, solution_from_json};
use acybe::stolin::{enumerate_pairs, pair_from_solution, pair_to_lagrangian};
use acybe::{bernoulli_expansion, Element, Matrix, MetricAlgebra, Scalar, Series2, Tensor2};
use serde_json::{json, Value};

use crate::commands;
use crate::{CliError, Context, Kind, Opts, Report};

pub const YANG_M1: &str = include_str!("../data/yang_matrix1.json");
pub const YANG_M2: &str = include_str!("../data/yang_matrix2.json");
pub const YANG_SL2: &str = include_str!("../data/yang_sl2.json");
pub const CONSTANT_M2: &str = include_str!("../data/constant_matrix2.json");
pub const CORRUPTED_M2: &str = include_str!("../data/corrupted_matrix2.json");
pub const POLE_M2: &str = include_str!("../data/pole_matrix2.json");
pub const NON_SKEW_M2: &str = include_str!("../data/non_skew_matrix2.json");
pub const STOLIN_PAIR: &str = include_str!("../data/stolin_pair_m2.json");
pub const DEGENERATE_PAIR: &str = include_str!("../data/degenerate_pair_m2.json");
pub const PRINCIPAL: &str = include_str!("../data/principal_m2.json");
pub const PRINCIPAL_CO_OPPOSITE: &str = include_str!("../data/principal_m2_co_opposite.json");
pub const JORDAN_ZERO: &str = include_str!("../data/jordan_zero_sym2.json");
pub const JORDAN_BAD: &str = include_str!("../data/jordan_bad_sym2.json");
pub const BAD_METRIC: &str = include_str!("../data/bad_metric.json");

fn doc(text: &str) -> Result<Value, CliError> {
    parse_document(text, "$").context("bundled data")
}

struct Step {
    name: &'static str,
    expected: bool,
    got: bool,
    detail: String,
}

fn from_report(name: &'static str, expected: bool, r: Report) -> Step {
    Step {
        name,
        expected,
        got: r.ok,
        detail: summary_line(&r.text),
    }
}

/// The first failing line, else the last passing one, else the last line.
fn summary_line(text: &str) -> String {
    let lines: Vec<&str> = text.lines().map(str::trim).collect();
    lines
        .iter()
        .find(|l| l.contains("FAIL"))
        .or_else(|| lines.iter().rev().find(|l| l.contains("PASS")))
        .or(lines.last())
        .unwrap_or(&"")
        .to_string()
}

fn check(name: &'static str, got: bool, detail: impl Into<String>) -> Step {
    Step {
        name,
        expected: true,
        got,
        detail: detail.into(),
    }
}

/// `Ad_g` on `M_2` for `g = [[1,1],[0,1]]`, as a matrix on the basis `e_ij`.
fn conjugation_m2() -> Matrix {
    let g = [[1i64, 1], [0, 1]];
    let g_inv = [[1i64, -1], [0, 1]];
    let image = |i: usize, j: usize| {
        // g e_ij g^{-1} = Σ_{a,b} g[a][i] g_inv[j][b] e_ab
        let mut col = vec![Scalar::zero(); 4];
        for a in 0..2 {
            for b in 0..2 {
                col[a * 2 + b] = Scalar::from_int(g[a][i] * g_inv[j][b]);
            }
        }
        col
    };
    let cols: Vec<Vec<Scalar>> = (0..4).map(|c| image(c / 2, c % 2)).collect();
    Matrix::from_fn(4, 4, |r, c| cols[c][r].clone())
}

fn steps(opts: &Opts) -> Result<Vec<Step>, CliError> {
    let mut out = Vec::new();
    let o6 = Opts { order: 6, ..*opts };

    for name in ["matrix:1", "matrix:2", "matrix:3", "lie:sl_2", "jordan:sym_2"] {
        let r = commands::gamma(&Value::String(name.into()))?;
        out.push(Step {
            name: "gamma invariance",
            expected: true,
            got: r.ok,
            detail: name.to_string(),
        });
    }
    out.push(from_report(
        "gamma of a non-associative form",
        false,
        commands::gamma(&doc(BAD_METRIC)?)?,
    ));

    for (name, text) in [
        ("Yang solution over matrix:1", YANG_M1),
        ("Yang solution over matrix:2", YANG_M2),
        ("Yang solution over lie:sl_2", YANG_SL2),
        ("constant solution γ/(x−y) + t", CONSTANT_M2),
    ] {
        out.push(from_report(name, true, commands::verify(&doc(text)?, &o6)?));
    }
    out.push(from_report(
        "corrupted solution",
        false,
        commands::verify(&doc(CORRUPTED_M2)?, &o6)?,
    ));
    out.push(from_report(
        "γ/(x−y) + e11⊗e11 has a pole",
        false,
        commands::verify(&doc(POLE_M2)?, &o6)?,
    ));
    let gcybe = Opts {
        equation: Equation::Gcybe,
        ..o6
    };
    out.push(from_report(
        "non-skew yγ/(x−y) solves the GCYBE",
        true,
        commands::verify(&doc(NON_SKEW_M2)?, &gcybe)?,
    ));

    let pair = doc(STOLIN_PAIR)?;
    let rat = commands::build_stolin(
        &pair,
        &Opts {
            kind: Some(Kind::Rational),
            ..o6
        },
    )?;
    out.push(from_report(
        "Stolin pair → rational solution",
        true,
        rat.clone_summary(),
    ));
    let quasi = commands::build_stolin(
        &pair,
        &Opts {
            kind: Some(Kind::QuasiRational),
            ..o6
        },
    )?;
    out.push(from_report(
        "Stolin pair → quasi-rational solution",
        true,
        quasi.clone_summary(),
    ));
    out.push(from_report(
        "degenerate pair is rejected",
        false,
        commands::build_stolin(&doc(DEGENERATE_PAIR)?, &o6)?,
    ));

    let r = solution_from_json(&rat.json["solution"], "$").context("rational solution")?;
    let q = solution_from_json(&quasi.json["solution"], "$").context("quasi-rational solution")?;
    let p = acybe::json::pair_from_json(&pair, "$").context("pair")?;
    let canonical = p.canonical();
    out.push(check(
        "pair recovered from the rational solution",
        pair_from_solution(&r, p.k).context("recovering the pair")? == canonical,
        "S = span{e11, e12}, χ(e11, e12) = 1",
    ));
    out.push(check(
        "pair recovered from the quasi-rational solution",
        pair_from_solution(&q, p.k).context("recovering the pair")? == canonical,
        "S = span{e11, e12}, χ(e11, e12) = 1",
    ));
    let lag = pair_to_lagrangian(&p).context("Lagrangian")?;
    out.push(check(
        "ε-Lagrangian of the pair",
        lag.holds(),
        format!("dim V = {}", lag.basis.len()),
    ));

    // xyγ/(x−y) − t, normalized, is the quasi-rational output.
    let t = r.tail.coeff(&[0, 0]).cloned().unwrap_or_else(|| Tensor2::zeros(4));
    let xy: Series2<Scalar> = Series2::monomial([1, 1], Scalar::one(), q.trunc() + 2);
    let normalized =
        normalize_type(&xy, &Series2::monomial([0, 0], t.neg(), q.trunc()), &q.metric).context("normalize_type")?;
    out.push(check(
        "normalize_type(xyγ/(x−y) − t) is the quasi-rational solution",
        normalized.n == 2 && normalized.tail.agrees_through(&q.tail, q.trunc()),
        crate::render::standard_form(&normalized),
    ));

    let window = DegreeWindow::new(-2, 2);
    let pr = pairing_for(&r).context("pairing")?;
    let orth = orthogonality_check(&r, &pr, window).context("orthogonality")?;
    out.push(check("A(r)^⊥ = A(r̄) in window [-2, 2]", orth.holds(), ""));
    let span = wbasis_span_check(&series_to_subspace(&r).context("W-basis")?, &pr, window).context("span check")?;
    out.push(check(
        "A(r) is a complementary isotropic subalgebra",
        span.all_hold(),
        "",
    ));
    let ident = gcyb_pairing_identity(&r, &pr, DegreeWindow::new(-1, 1)).context("pairing identity")?;
    out.push(check(
        "GCYB pairing identity",
        ident.holds(),
        format!("{} triples, {} nonzero", ident.triples_checked, ident.nonzero_triples),
    ));

    let ns = solution_from_json(&doc(NON_SKEW_M2)?, "$").context("non-skew candidate")?;
    let ns_span = wbasis_span_check(
        &series_to_subspace(&ns).context("W-basis")?,
        &pairing_for(&ns).context("pairing")?,
        window,
    )
    .context("span check")?;
    out.push(Step {
        name: "non-skew yγ/(x−y) is not skew and not isotropic",
        expected: false,
        got: ns.is_skew().context("skew")? || ns_span.isotropic,
        detail: match &ns_span.first_non_isotropic {
            Some(((k, i), (l, j), v)) => format!("β(w_{{{k},{i}}}, w_{{{l},{j}}}) = {v}"),
            None => "isotropic".into(),
        },
    });

    let w2 = Opts {
        window: Some(DegreeWindow::new(0, 2)),
        ..o6
    };
    out.push(from_report(
        "τδ_r is infinitesimal and balanced",
        true,
        commands::cocycle_check(&doc(CONSTANT_M2)?, &w2)?,
    ));
    out.push(from_report(
        "δ_r over sl_2 is a Lie cocycle",
        true,
        commands::cocycle_check(&doc(YANG_SL2)?, &w2)?,
    ));
    out.push(from_report(
        "principal derivation δ_t is infinitesimal",
        true,
        commands::cocycle_check(&doc(PRINCIPAL)?, &o6)?,
    ));
    out.push(from_report(
        "δ = 0 on sym_2 is a Jordan bialgebra",
        true,
        commands::cocycle_check(&doc(JORDAN_ZERO)?, &o6)?,
    ));
    out.push(from_report(
        "δ(b1) = b1⊗b1 on sym_2 is not",
        false,
        commands::cocycle_check(&doc(JORDAN_BAD)?, &o6)?,
    ));

    out.push(from_report(
        "double D(M_2, τδ_t)",
        true,
        commands::double(&doc(PRINCIPAL_CO_OPPOSITE)?)?,
    ));
    out.push(from_report(
        "double D(M_2, δ_t) is not associative",
        false,
        commands::double(&doc(PRINCIPAL)?)?,
    ));
    let (m2, b) = acybe::json::bialgebra_from_json(&doc(PRINCIPAL_CO_OPPOSITE)?, "$").context("bialgebra")?;
    let dbl = acybe::bialgebra::build_double(&b);
    let dm = dbl.metric().context("double metric")?;
    let plus: Vec<Element> = (0..4).map(|i| Element::basis(8, i)).collect();
    let minus: Vec<Element> = (4..8).map(|i| Element::basis(8, i)).collect();
    out.push(check(
        "((D, ev), A, A*) is a Manin triple",
        manin_triple_check_finite(&dm, &plus, &minus).holds(),
        format!("over {}", m2.name()),
    ));

    let wm = Opts {
        window: Some(DegreeWindow::new(-2, 2)),
        ..o6
    };
    out.push(from_report(
        "Manin triple (D_0(M_2), A[[z]], A(r))",
        true,
        commands::manin_check(&doc(CONSTANT_M2)?, &wm)?,
    ));
    out.push(from_report(
        "series ↔ subspace round trip",
        true,
        commands::convert(&doc(CONSTANT_M2)?, &o6)?,
    ));

    let g = GaugeData::constant(&conjugation_m2(), r.trunc());
    let gauged = gauge_transform(&r, &g).context("gauge transform")?;
    let order = gauged.trunc().saturating_sub(3);
    out.push(check(
        "gauge by Ad_g keeps a solution",
        verify(&gauged, Equation::Cybe, order).context("verify")?.holds(),
        format!("{} through degree {order}", crate::render::standard_form(&gauged)),
    ));

    let bern = bernoulli_expansion(4);
    let want = [
        (-1, Scalar::one()),
        (0, Scalar::ratio(-1, 2)),
        (1, Scalar::ratio(1, 12)),
        (2, Scalar::zero()),
        (3, Scalar::ratio(-1, 720)),
    ];
    out.push(check(
        "Bernoulli expansion of 1/(e^z − 1)",
        want.iter().all(|(e, c)| &bern.coeff_at(*e) == c),
        "1/z − 1/2 + z/12 − z³/720 + …",
    ));
    let m2 = MetricAlgebra::matrix(2).context("matrix:2")?;
    let trig = TrigFormData::from_automorphism(&m2, Matrix::identity(4), 1).context("trigonometric data")?;
    let cand = emit_standard_form(&StandardKind::Trigonometric(trig), &m2, 5).context("trigonometric candidate")?;
    let rep = verify(&cand, Equation::Cybe, 3).context("verify")?;
    let detail = match &rep.first_nonzero {
        Some((e, _)) if rep.pole => format!("pole along z1 = z3, first residue coefficient at {e:?}"),
        Some((e, _)) => format!("first nonzero coefficient at {e:?}"),
        None => "cyb vanishes through degree 3".into(),
    };
    out.push(Step {
        name: "trigonometric m = 1 candidate",
        expected: false,
        got: rep.holds(),
        detail,
    });

    out.push(check(
        "pole expansion of 1/(x − y) in D_n",
        (0..=3).all(|n| pole_expansion_failure(n, 6).is_none()),
        "n = 0..3",
    ));
    let rp = ResiduePairing::standard(m2.clone(), 2, 6);
    out.push(check("standard pairing on D_2(M_2)", rp.n() == 2, "β_(2,1)"));

    let found = enumerate_pairs(2, 0).context("enumerating pairs")?;
    let witnesses = found.iter().filter(|e| e.witness.is_some()).count();
    out.push(check(
        "Stolin pairs spanned by matrix units (n = 2, k = 0)",
        witnesses > 0,
        format!("{} subalgebras, {witnesses} with a non-degenerate cocycle", found.len()),
    ));
    Ok(out)
}

impl Report {
    /// Same verdict and text, without the large JSON payload.
    fn clone_summary(&self) -> Report {
        Report {
            ok: self.ok,
            json: Value::Null,
            text: self.text.clone(),
            artifact: None,
        }
    }
}

pub fn run(opts: &Opts) -> Result<Report, CliError> {
    let steps = steps(opts)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for s in &steps {
        let pass = s.got == s.expected;
        let expect = if s.expected { "pass" } else { "fail" };
        text.push_str(&format!(
            "{} {} [expect {expect}]{}\n",
            if pass { "ok  " } else { "FAIL" },
            s.name,
            if s.detail.is_empty() {
                String::new()
            } else {
                format!(": {}", s.detail)
            }
        ));
        rows.push(json!({"step": s.name, "expected": s.expected, "observed": s.got, "pass": pass, "detail": s.detail}));
    }
    let ok = steps.iter().all(|s| s.got == s.expected);
    text.push_str(&format!(
        "{} of {} steps as expected",
        steps.iter().filter(|s| s.got == s.expected).count(),
        steps.len()
    ));
    Ok(Report {
        ok,
        json: json!({"steps": rows, "holds": ok}),
        text,
        artifact: None,
    })
}
