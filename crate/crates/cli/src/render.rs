//! Human-readable renderings for `--format text`.

use acybe::cybe::StandardFormSeries;
use acybe::{Scalar, Series1, Tensor};

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).expect("decimal digit") as usize])
        .collect()
}

fn power(var: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}{}", superscript(e)),
    }
}

pub fn monomial(vars: &[&str], exp: &[u32]) -> String {
    vars.iter().zip(exp).map(|(v, e)| power(v, *e)).collect()
}

/// `c1·a + c2·b − …`; unit coefficients are dropped.
fn signed_sum(terms: impl IntoIterator<Item = (Scalar, String)>) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        let neg = c.is_negative_rational();
        let mag = if neg { -&c } else { c };
        out.push_str(match (out.is_empty(), neg) {
            (true, false) => "",
            (true, true) => "−",
            (false, false) => " + ",
            (false, true) => " − ",
        });
        if mag.is_one() && !label.is_empty() {
            out.push_str(&label);
        } else if label.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_rational() {
            out.push_str(&format!("{mag}·{label}"));
        } else {
            out.push_str(&format!("({mag})·{label}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn tensor<const R: usize>(t: &Tensor<R>, labels: &[String]) -> String {
    signed_sum(t.nonzeros().map(|(idx, c)| {
        let name: Vec<&str> = idx.iter().map(|&i| labels[i].as_str()).collect();
        (c.clone(), name.join("⊗"))
    }))
}

pub fn scalar_series(s: &Series1, var: &str) -> String {
    let body = signed_sum(s.terms().iter().map(|([e], c)| (c.clone(), power(var, *e))));
    format!("{body} + O({var}{})", superscript(s.trunc() + 1))
}

pub fn lambda_is_one(l: &Series1) -> bool {
    l.terms().len() == 1 && l.coeff(&[0]).is_some_and(Scalar::is_one)
}

/// `y²·γ/(x−y) + t, type (2,1)`.
pub fn standard_form(r: &StandardFormSeries) -> String {
    let prefix = match r.n {
        0 => String::new(),
        n => format!("{}·", power("y", n)),
    };
    let unit = lambda_is_one(&r.lambda);
    let lam = if unit { "" } else { "λ(x)·" };
    let tail = if r.tail.is_zero() { "" } else { " + t" };
    let ty = if unit { "1" } else { "λ" };
    format!("{prefix}{lam}γ/(x−y){tail}, type ({},{ty})", r.n)
}

/// Standard form plus the tail coefficients and the truncation.
pub fn solution(r: &StandardFormSeries) -> String {
    let labels = r.metric.algebra().labels();
    let mut out = format!("r = {}  over {}\n", standard_form(r), r.metric.name());
    if !lambda_is_one(&r.lambda) {
        out.push_str(&format!("  λ(z) = {}\n", scalar_series(&r.lambda, "z")));
    }
    for (exp, c) in r.tail.terms() {
        let mono = monomial(&["x", "y"], exp);
        let mono = if mono.is_empty() { "1".to_string() } else { mono };
        out.push_str(&format!("  t[{mono}] = {}\n", tensor(c, labels)));
    }
    out.push_str(&format!("  known through total degree {}\n", r.trunc()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use acybe::{MetricAlgebra, Series2, Tensor2};

    #[test]
    fn renders_quasi_rational_type() {
        let m = MetricAlgebra::matrix(2).unwrap();
        let t = Tensor2::unit(4, [0, 1]).sub(&Tensor2::unit(4, [1, 0]));
        let r = StandardFormSeries::with_unit_lambda(m, 2, Series2::monomial([0, 0], t.clone(), 4), 4).unwrap();
        assert_eq!(standard_form(&r), "y²·γ/(x−y) + t, type (2,1)");
        assert_eq!(tensor(&t, r.metric.algebra().labels()), "e11⊗e12 − e12⊗e11");
        assert_eq!(monomial(&["x", "y"], &[2, 1]), "x²y");
    }
}
