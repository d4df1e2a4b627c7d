//! Series of type `(n, λ)`, the A-CYBE and A-GCYBE evaluators, the
//! correspondence between series and subspaces of `D_n(A)`, gauge
//! equivalence and constructors for the standard forms.

use std::collections::BTreeMap;

use crate::algebra::MetricAlgebra;
use crate::dnalg::{wbasis_span_check, DegreeWindow, DnElement, ResiduePairing, SpanReport, WBasis};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{primitive_root, Scalar};
use crate::series::{Laurent, Series, Series1, Series2, Series3};
use crate::tensor::{Element, Tensor2, Tensor3};

/// `r(x,y) = yⁿλ(x)γ/(x−y) + t(x,y)`.
#[derive(Clone, Debug)]
pub struct StandardFormSeries {
    pub metric: MetricAlgebra,
    pub n: u32,
    pub lambda: Series1,
    pub tail: Series2<Tensor2>,
}

impl PartialEq for StandardFormSeries {
    fn eq(&self, other: &Self) -> bool {
        self.metric.name() == other.metric.name()
            && self.n == other.n
            && self.lambda == other.lambda
            && self.tail == other.tail
    }
}

impl StandardFormSeries {
    pub fn new(metric: MetricAlgebra, n: u32, lambda: Series1, tail: Series2<Tensor2>) -> Result<Self> {
        if lambda.constant_term().is_zero() {
            return Err(Error::NotAUnit);
        }
        if let Some((_, t)) = tail.terms().iter().next() {
            if t.dim() != metric.dim() {
                return Err(Error::DimensionMismatch {
                    expected: metric.dim(),
                    got: t.dim(),
                });
            }
        }
        Ok(StandardFormSeries {
            metric,
            n,
            lambda,
            tail,
        })
    }

    /// `yⁿγ/(x−y) + t` with `λ = 1`, both known through `trunc`.
    pub fn with_unit_lambda(metric: MetricAlgebra, n: u32, tail: Series2<Tensor2>, trunc: u32) -> Result<Self> {
        let tail = tail.with_trunc(trunc);
        Self::new(metric, n, Series1::one(trunc), tail)
    }

    /// Truncation of the tail.
    pub fn trunc(&self) -> u32 {
        self.tail.trunc()
    }

    /// Degree through which the numerator `R = yⁿλ(x)γ + (x−y)t` is known.
    pub fn numerator_trunc(&self) -> u32 {
        (self.n + self.lambda.trunc()).min(self.tail.trunc() + 1)
    }

    /// `R(x,y) = yⁿλ(x)γ + (x−y)t(x,y)`, so that `r = R/(x−y)`.
    pub fn numerator(&self) -> Series2<Tensor2> {
        let k = self.numerator_trunc();
        let gamma = self.metric.gamma();
        let pole: Series2<Tensor2> = self
            .lambda
            .map(|c| gamma.scale(c))
            .embed::<2>([0])
            .shift([0, self.n])
            .truncated(k);
        let diff = self.tail.shift([1, 0]).sub(&self.tail.shift([0, 1]));
        pole.add(&diff).truncated(k)
    }

    /// Recover a series from its numerator; fails with `NotDivisible` unless
    /// `R(z,z) = zⁿλ(z)γ`.
    pub fn from_numerator(metric: MetricAlgebra, n: u32, lambda: Series1, numer: &Series2<Tensor2>) -> Result<Self> {
        let gamma = metric.gamma();
        let pole: Series2<Tensor2> = lambda.map(|c| gamma.scale(c)).embed::<2>([0]).shift([0, n]);
        let tail = numer.sub(&pole).divide_by_diagonal()?;
        Self::new(metric, n, lambda, tail)
    }

    pub fn is_skew(&self) -> Result<bool> {
        let b = self.bar()?;
        let k = self.lambda.trunc().min(b.lambda.trunc());
        let t = self.tail.trunc().min(b.tail.trunc());
        Ok(self.n == b.n && self.lambda.agrees_through(&b.lambda, k) && self.tail.agrees_through(&b.tail, t))
    }

    /// `r̄(x,y) = −τ r(y,x)`, of the same type `(n, λ)`.
    pub fn bar(&self) -> Result<Self> {
        let a: Series2<Scalar> = self.lambda.embed::<2>([1]).shift([self.n, 0]);
        let s = self.tail.swap_vars().map(|t| t.flip().neg());
        normalize_type(&a, &s, &self.metric)
    }

    /// Coarse classification by pole order.
    pub fn classify(&self) -> &'static str {
        match self.n {
            0 => "rational",
            1 => "quasi-trigonometric",
            2 => "quasi-rational",
            _ => "unclassified",
        }
    }
}

/// Rewrite `a(x,y)γ/(x−y) + s(x,y)` as a series of type `(n, λ)` where
/// `a(z,z) = zⁿλ(z)`.
pub fn normalize_type(a: &Series2<Scalar>, s: &Series2<Tensor2>, metric: &MetricAlgebra) -> Result<StandardFormSeries> {
    let diag = a.restrict_diagonal();
    let Some(([n], _)) = diag.first_nonzero() else {
        return Err(Error::DiagonalVanishes(diag.trunc() as usize));
    };
    let lambda = Series1::from_terms(
        diag.trunc() - n,
        diag.terms().iter().map(|([k], c)| ([k - n], c.clone())),
    );
    let y_lambda: Series2<Scalar> = lambda.embed::<2>([0]).shift([0, n]);
    let b = a.sub(&y_lambda).divide_by_diagonal()?;
    let gamma = metric.gamma();
    let tail = b.map(|c| gamma.scale(c)).add(s);
    StandardFormSeries::new(metric.clone(), n, lambda, tail)
}

/// Which of the two equations to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equation {
    Cybe,
    Gcybe,
}

impl Equation {
    pub fn name(self) -> &'static str {
        match self {
            Equation::Cybe => "cybe",
            Equation::Gcybe => "gcybe",
        }
    }
}

/// Left-hand side of the A-CYBE, `r¹³r¹² − r¹²r²³ + r²³r¹³`, as a power
/// series in `z1, z2, z3`. Fails with `NotDivisible` when it has a pole
/// along `z1 = z3`, which happens exactly for non-skew tails.
pub fn cyb(r: &StandardFormSeries) -> Result<Series3<Tensor3>> {
    match evaluate(r, Equation::Cybe)? {
        Evaluation::Regular(s) => Ok(s),
        Evaluation::Pole { .. } => Err(Error::NotDivisible("CYB(r) has a pole along z1 = z3".into())),
    }
}

/// Left-hand side of the A-GCYBE, `r¹³r¹² − r¹²r²³ + r̄²³r¹³`; always regular.
pub fn gcyb(r: &StandardFormSeries) -> Result<Series3<Tensor3>> {
    match evaluate(r, Equation::Gcybe)? {
        Evaluation::Regular(s) => Ok(s),
        Evaluation::Pole { .. } => Err(Error::NotDivisible("GCYB(r) has a pole along z1 = z3".into())),
    }
}

/// Result of evaluating one of the equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Regular(Series3<Tensor3>),
    /// Simple pole along `z1 = z3`; `residue(z1, z2)` is the coefficient of
    /// `(z1 − z3)^{-1}` restricted to the diagonal.
    Pole {
        residue: Series2<Tensor3>,
    },
}

pub fn evaluate(r: &StandardFormSeries, eq: Equation) -> Result<Evaluation> {
    let alg = r.metric.algebra();
    let numer = r.numerator();
    let last = match eq {
        Equation::Cybe => numer.clone(),
        Equation::Gcybe => r.bar()?.numerator(),
    };
    let k = numer.trunc().min(last.trunc());
    if k < 2 {
        return Err(Error::TruncationTooSmall {
            needed: 2,
            have: k as usize,
        });
    }
    let r13: Series3<Tensor2> = numer.embed([0, 2]);
    let r12: Series3<Tensor2> = numer.embed([0, 1]);
    let r23: Series3<Tensor2> = numer.embed([1, 2]);
    let l23: Series3<Tensor2> = last.embed([1, 2]);
    let a = r13.mul_with(&r12, k, |p, q| alg.leg13_12(p, q));
    let b = r12.mul_with(&r23, k, |p, q| alg.leg12_23(p, q));
    let c = l23.mul_with(&r13, k, |p, q| alg.leg23_13(p, q));
    // Common denominator (z1−z2)(z1−z3)(z2−z3).
    let f = a
        .shift([0, 1, 0])
        .sub(&a.shift([0, 0, 1]))
        .sub(&b.shift([1, 0, 0]).sub(&b.shift([0, 0, 1])))
        .add(&c.shift([1, 0, 0]).sub(&c.shift([0, 1, 0])));
    let h = f.divide_by_difference(0, 1)?.divide_by_difference(1, 2)?;
    match h.divide_by_difference(0, 2) {
        Ok(s) => Ok(Evaluation::Regular(s)),
        Err(Error::NotDivisible(_)) => {
            let mut residue = Series2::zero(h.trunc());
            for ([p, q, s], v) in h.terms() {
                residue.add_term([p + s, *q], v);
            }
            Ok(Evaluation::Pole { residue })
        }
        Err(e) => Err(e),
    }
}

/// Outcome of checking an equation through a given degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub equation: Equation,
    pub verified_through_degree: u32,
    /// Whether the left-hand side has a pole along `z1 = z3`; then
    /// `first_nonzero` refers to the residue, with exponent `[p, q, 0]`.
    pub pole: bool,
    pub first_nonzero: Option<([u32; 3], Tensor3)>,
}

impl VerifyReport {
    pub fn holds(&self) -> bool {
        self.first_nonzero.is_none()
    }
}

/// Evaluate and report the first nonzero coefficient through `order`.
pub fn verify(r: &StandardFormSeries, eq: Equation, order: u32) -> Result<VerifyReport> {
    let (trunc, pole, first) = match evaluate(r, eq)? {
        Evaluation::Regular(v) => {
            let first = v.truncated(order).first_nonzero().map(|(e, c)| (e, c.clone()));
            (v.trunc(), false, first)
        }
        Evaluation::Pole { residue } => {
            let first = residue
                .truncated(order)
                .first_nonzero()
                .map(|([p, q], c)| ([p, q, 0], c.clone()));
            (residue.trunc(), true, first)
        }
    };
    if trunc < order {
        return Err(Error::TruncationTooSmall {
            needed: order as usize,
            have: trunc as usize,
        });
    }
    Ok(VerifyReport {
        equation: eq,
        verified_through_degree: order,
        pole,
        first_nonzero: first,
    })
}

/// Read `A(r)` off a polynomial-tail series: `t_{k,i}(x) = Σ_{p,a} t^{a,i}_{p,k} xᵖ b_a`.
pub fn series_to_subspace(r: &StandardFormSeries) -> Result<WBasis> {
    let d = r.metric.dim();
    let top = r.tail.trunc();
    if r.tail.terms().keys().any(|[p, q]| p + q == top) {
        return Err(Error::NonPolynomialTail(top as usize));
    }
    let mut polys: BTreeMap<(usize, usize), Laurent<Element>> = BTreeMap::new();
    for ([p, k], t) in r.tail.terms() {
        for ([a, i], c) in t.nonzeros() {
            let entry = polys.entry((*k as usize, i)).or_insert_with(Laurent::zero);
            let mut e = Element::zeros(d);
            e.set([a], c.clone());
            entry.add_term(*p as i64, &e);
        }
    }
    let mut w = WBasis::zero_tails(d, r.n as usize);
    for ((k, i), t) in polys {
        w.set_tail(k, i, t);
    }
    w.lambda = Some(r.lambda.clone());
    Ok(w)
}

/// Inverse of [`series_to_subspace`]: `r = Σ (λw_{k,i} + t_{k,i}) ⊗ b_i yᵏ`.
pub fn subspace_to_series(w: &WBasis, metric: &MetricAlgebra, trunc: u32) -> Result<StandardFormSeries> {
    if w.d != metric.dim() {
        return Err(Error::DimensionMismatch {
            expected: metric.dim(),
            got: w.d,
        });
    }
    let d = w.d;
    let lambda = w.lambda.clone().unwrap_or_else(|| Series1::one(trunc));
    let mut tail = Series2::zero(trunc);
    for ((k, i), t) in &w.tails {
        for (p, e) in t.terms() {
            if *p < 0 {
                return Err(Error::NonPolynomialTail(*k));
            }
            let col = Element::basis(d, *i);
            tail.add_term([*p as u32, *k as u32], &e.outer(&col));
        }
    }
    StandardFormSeries::new(metric.clone(), w.n as u32, lambda, tail)
}

/// The pairing for `D_n(A)` matching a series' type.
pub fn pairing_for(r: &StandardFormSeries) -> Result<ResiduePairing> {
    ResiduePairing::new(r.metric.clone(), r.n as usize, r.lambda.clone())
}

fn check_pairing(r: &StandardFormSeries, p: &ResiduePairing) -> Result<()> {
    let k = r.lambda.trunc().min(p.lambda().trunc());
    if p.n() != r.n as usize || !p.lambda().agrees_through(&r.lambda, k) || p.metric().dim() != r.metric.dim() {
        return Err(Error::ParameterMismatch(
            "pairing does not match the series type".into(),
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityReport {
    /// `β(A(r), A(r̄)) = 0` on the window.
    pub orthogonal: bool,
    pub first_failure: Option<crate::dnalg::PairWitness<Scalar>>,
    /// Span checks of `A(r̄)`; its complementarity certifies `A(r)^⊥` is no larger.
    pub bar_span: SpanReport,
}

impl OrthogonalityReport {
    pub fn holds(&self) -> bool {
        self.orthogonal && self.bar_span.complementary
    }
}

/// Check `A(r)^⊥ = A(r̄)` within the window.
pub fn orthogonality_check(
    r: &StandardFormSeries,
    p: &ResiduePairing,
    window: DegreeWindow,
) -> Result<OrthogonalityReport> {
    check_pairing(r, p)?;
    let m = &r.metric;
    let w = series_to_subspace(r)?;
    let wb = series_to_subspace(&r.bar()?)?;
    let count = window.generator_count(r.n as usize);
    if count == 0 {
        return Err(Error::WindowTooSmall(format!(
            "window lower bound {} covers no generators",
            window.lo
        )));
    }
    let gens = |b: &WBasis| -> Result<Vec<((usize, usize), DnElement)>> {
        (0..count)
            .flat_map(|k| (0..m.dim()).map(move |i| (k, i)))
            .map(|(k, i)| b.generator(m, k, i).map(|g| ((k, i), g)))
            .collect()
    };
    let ga = gens(&w)?;
    let gb = gens(&wb)?;
    let mut first_failure = None;
    'outer: for (ka, a) in &ga {
        for (kb, b) in &gb {
            let v = p.pair(a, b)?;
            if !v.is_zero() {
                first_failure = Some((*ka, *kb, v));
                break 'outer;
            }
        }
    }
    let bar_span = wbasis_span_check(&wb, p, window)?;
    Ok(OrthogonalityReport {
        orthogonal: first_failure.is_none(),
        first_failure,
        bar_span,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingIdentityReport {
    pub triples_checked: usize,
    pub nonzero_triples: usize,
    pub first_failure: Option<[(usize, usize); 3]>,
}

impl PairingIdentityReport {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Check `β^{⊗3}(r̄_{k1,i1} ⊗ r_{k2,i2} ⊗ r_{k3,i3}, GCYB(r)) = β_{(n,λ)}(r̄_{k1,i1}, r_{k3,i3} r_{k2,i2})`
/// for all generator triples with `k_j` in the window and `k1+k2+k3` within
/// the degree to which `GCYB(r)` is known.
pub fn gcyb_pairing_identity(
    r: &StandardFormSeries,
    p: &ResiduePairing,
    window: DegreeWindow,
) -> Result<PairingIdentityReport> {
    check_pairing(r, p)?;
    let m = &r.metric;
    let d = m.dim();
    let n = r.n as usize;
    let count = window.generator_count(n);
    if count == 0 {
        return Err(Error::WindowTooSmall(format!(
            "window lower bound {} covers no generators",
            window.lo
        )));
    }
    let g = gcyb(r)?;
    let known = g.trunc() as usize;
    let w = series_to_subspace(r)?;
    let wb = series_to_subspace(&r.bar()?)?;
    let kmax = count - 1;
    let gens = |b: &WBasis| -> Result<Vec<Vec<DnElement>>> {
        (0..count)
            .map(|k| (0..d).map(|i| b.generator(m, k, i)).collect())
            .collect()
    };
    let ga = gens(&w)?;
    let gb = gens(&wb)?;
    // Pairing tables against diagonal monomials b_a z^q.
    let maxq = known.min(3 * kmax);
    let table = |gs: &Vec<Vec<DnElement>>| -> Result<Vec<Vec<Vec<Vec<Scalar>>>>> {
        gs.iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        (0..=maxq)
                            .map(|q| {
                                (0..d)
                                    .map(|a| {
                                        p.pair(x, &DnElement::diagonal_monomial(n, &Element::basis(d, a), q as u32))
                                    })
                                    .collect::<Result<Vec<_>>>()
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect()
    };
    let ta = table(&ga)?;
    let tb = table(&gb)?;
    let mut report = PairingIdentityReport {
        triples_checked: 0,
        nonzero_triples: 0,
        first_failure: None,
    };
    for k1 in 0..count {
        for k2 in 0..count {
            for k3 in 0..count {
                if k1 + k2 + k3 > known {
                    continue;
                }
                for i1 in 0..d {
                    for i2 in 0..d {
                        for i3 in 0..d {
                            let mut lhs = Scalar::zero();
                            for ([q1, q2, q3], c) in g.terms() {
                                let (q1, q2, q3) = (*q1 as usize, *q2 as usize, *q3 as usize);
                                if q1.max(q2).max(q3) > maxq {
                                    continue;
                                }
                                for ([a, b, cc], v) in c.nonzeros() {
                                    let f1 = &tb[k1][i1][q1][a];
                                    if f1.is_zero() {
                                        continue;
                                    }
                                    let f2 = &ta[k2][i2][q2][b];
                                    if f2.is_zero() {
                                        continue;
                                    }
                                    let f3 = &ta[k3][i3][q3][cc];
                                    if !f3.is_zero() {
                                        lhs += &(&(v * f1) * &(f2 * f3));
                                    }
                                }
                            }
                            let prod = ga[k3][i3].mul(m.algebra(), &ga[k2][i2])?;
                            let rhs = p.pair(&gb[k1][i1], &prod)?;
                            report.triples_checked += 1;
                            if !rhs.is_zero() {
                                report.nonzero_triples += 1;
                            }
                            if lhs != rhs && report.first_failure.is_none() {
                                report.first_failure = Some([(k1, i1), (k2, i2), (k3, i3)]);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// A coordinate change `u` (with `u(0) = 0`, `u'(0) ≠ 0`) and a series `φ`
/// of algebra automorphisms, `φ(b_j) = Σ_i φ_{ij}(z) b_i`.
#[derive(Clone, Debug)]
pub struct GaugeData {
    pub phi: Vec<Vec<Series1>>,
    pub u: Series1,
}

impl GaugeData {
    pub fn identity(d: usize, trunc: u32) -> Self {
        let phi = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == j {
                            Series1::one(trunc)
                        } else {
                            Series1::zero(trunc)
                        }
                    })
                    .collect()
            })
            .collect();
        GaugeData {
            phi,
            u: Series1::monomial([1], Scalar::one(), trunc),
        }
    }

    /// Constant automorphism given by a matrix (columns are images of basis vectors).
    pub fn constant(m: &Matrix, trunc: u32) -> Self {
        let d = m.rows();
        let phi = (0..d)
            .map(|i| (0..d).map(|j| Series1::constant(m.get(i, j).clone(), trunc)).collect())
            .collect();
        GaugeData {
            phi,
            u: Series1::monomial([1], Scalar::one(), trunc),
        }
    }

    fn trunc(&self) -> u32 {
        self.phi
            .iter()
            .flatten()
            .map(|s| s.trunc())
            .chain([self.u.trunc()])
            .min()
            .unwrap_or(0)
    }

    /// `φ(x)(e)` as a series of elements.
    fn apply_phi(&self, e: &Element, trunc: u32) -> Series<Element, 1> {
        let d = e.dim();
        let mut out = Series::zero(trunc);
        for (j, c) in e.data().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                for ([k], s) in self.phi[i][j].terms() {
                    out.add_term([*k], &Element::basis(d, i).scale(&(c * s)));
                }
            }
        }
        out.truncated(trunc)
    }

    /// Checks: `u(0) = 0`, `u'(0) ≠ 0`, `φ(0)` invertible, `φ` multiplicative
    /// on basis pairs and `(φ(z)⊗φ(z))γ = γ`, all through the truncation.
    pub fn validate(&self, metric: &MetricAlgebra) -> Result<()> {
        let d = metric.dim();
        if self.phi.len() != d || self.phi.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidGauge(format!("φ must be {d}×{d}")));
        }
        if !self.u.constant_term().is_zero() {
            return Err(Error::InvalidGauge("u(0) ≠ 0".into()));
        }
        if self.u.coeff_at(1).is_zero() {
            return Err(Error::InvalidGauge("u'(0) = 0".into()));
        }
        let phi0 = Matrix::from_fn(d, d, |i, j| self.phi[i][j].constant_term());
        if phi0.inverse().is_none() {
            return Err(Error::InvalidGauge("φ(0) is not invertible".into()));
        }
        let trunc = self.trunc();
        let alg = metric.algebra();
        let images: Vec<Series<Element, 1>> = (0..d).map(|j| self.apply_phi(&Element::basis(d, j), trunc)).collect();
        for a in 0..d {
            for b in 0..d {
                let lhs = self.apply_phi(&alg.mul(&Element::basis(d, a), &Element::basis(d, b)), trunc);
                let rhs = images[a].mul_with(&images[b], trunc, |x, y| alg.mul(x, y));
                if !lhs.agrees_through(&rhs, trunc) {
                    return Err(Error::InvalidGauge(format!(
                        "φ is not multiplicative on basis pair ({a}, {b})"
                    )));
                }
            }
        }
        let g = metric.gamma();
        let img = self.apply_phi_tensor(&Series2::monomial([0, 0], g.clone(), trunc), trunc);
        if !img
            .restrict_diagonal()
            .agrees_through(&Series::monomial([0], g, trunc), trunc)
        {
            return Err(Error::InvalidGauge("(φ⊗φ)γ ≠ γ".into()));
        }
        Ok(())
    }

    /// `(φ(x)⊗φ(y)) s(x,y)`.
    fn apply_phi_tensor(&self, s: &Series2<Tensor2>, trunc: u32) -> Series2<Tensor2> {
        let d = self.phi.len();
        let trunc = trunc.min(s.trunc());
        let mut out = Series2::zero(trunc);
        // Split s by basis pair, then multiply by φ_{ia}(x) φ_{jb}(y).
        for a in 0..d {
            for b in 0..d {
                let comp: Series2<Scalar> = Series::from_terms(
                    trunc,
                    s.terms()
                        .iter()
                        .filter(|(_, t)| !t.get([a, b]).is_zero())
                        .map(|(e, t)| (*e, t.get([a, b]).clone())),
                );
                if comp.is_zero() {
                    continue;
                }
                for i in 0..d {
                    if self.phi[i][a].is_zero() {
                        continue;
                    }
                    let px: Series2<Scalar> = self.phi[i][a].embed([0]);
                    let ci = comp.mul(&px).truncated(trunc);
                    for j in 0..d {
                        if self.phi[j][b].is_zero() {
                            continue;
                        }
                        let py: Series2<Scalar> = self.phi[j][b].embed([1]);
                        let cij = ci.mul(&py).truncated(trunc);
                        let unit = Tensor2::unit(d, [i, j]);
                        for (e, c) in cij.terms() {
                            out.add_term(*e, &unit.scale(c));
                        }
                    }
                }
            }
        }
        out
    }
}

/// `(φ(x)⊗φ(y)) r(u(x), u(y))`, renormalized to a standard form.
pub fn gauge_transform(r: &StandardFormSeries, g: &GaugeData) -> Result<StandardFormSeries> {
    g.validate(&r.metric)?;
    let trunc = g.trunc().min(r.trunc());
    // Pole: yⁿλ(x) → u(y)ⁿλ(u(x)) / q(x,y) with u(x) − u(y) = (x−y) q(x,y).
    let a: Series2<Scalar> = r.lambda.embed::<2>([0]).shift([0, r.n]);
    let a_sub = a.substitute_both(&g.u, trunc + 1)?;
    let u2: Series2<Scalar> = g.u.embed([0]);
    let q = u2.sub(&g.u.embed([1])).with_trunc(g.u.trunc()).divide_by_diagonal()?;
    let a_new = a_sub.mul(&q.invert()?);
    let tail_sub = r.tail.substitute_both(&g.u, trunc)?;
    // Numerator of the transformed series: a_new (φ⊗φ)γ + (x−y)(φ⊗φ)t(u,u).
    let gamma = r.metric.gamma();
    let pole = g.apply_phi_tensor(&a_new.map(|c| gamma.scale(c)), trunc + 1);
    let t2 = g.apply_phi_tensor(&tail_sub, trunc);
    let numer = pole.add(&t2.shift([1, 0]).sub(&t2.shift([0, 1])));
    let diag = a_new.restrict_diagonal();
    let Some(([n], _)) = diag.first_nonzero() else {
        return Err(Error::DiagonalVanishes(diag.trunc() as usize));
    };
    let lambda = Series1::from_terms(
        diag.trunc() - n,
        diag.terms().iter().map(|([k], c)| ([k - n], c.clone())),
    );
    StandardFormSeries::from_numerator(r.metric.clone(), n, lambda, &numer)
}

/// Data for the trigonometric form: an automorphism `σ` of order `m` and the
/// components `γ_j` (`j = 1..m`) of `γ` with `(σ⊗1)γ_j = εʲγ_j`.
#[derive(Clone, Debug)]
pub struct TrigFormData {
    pub sigma: Matrix,
    pub m: u32,
    pub gammas: Vec<Tensor2>,
    /// Tail `t(X,Y)` in the loop variables `X = e^{x/m}`, `Y = e^{y/m}`.
    pub tail: Vec<((i64, i64), Tensor2)>,
}

impl TrigFormData {
    /// Split `γ` into σ-eigencomponents by averaging over the cyclic group.
    pub fn from_automorphism(metric: &MetricAlgebra, sigma: Matrix, m: u32) -> Result<Self> {
        let d = metric.dim();
        let eps = primitive_root(m);
        let gamma = metric.gamma();
        let mut powers = vec![gamma.clone()];
        for l in 1..m as usize {
            let prev = &powers[l - 1];
            powers.push(apply_first_leg(&sigma, prev));
        }
        let inv_m = Scalar::ratio(1, m as i64);
        let gammas = (1..=m)
            .map(|j| {
                let mut acc = Tensor2::zeros(d);
                for (l, p) in powers.iter().enumerate() {
                    let w = eps.pow(-((j as i64) * l as i64)).expect("root of unity is invertible");
                    acc.add_scaled(&(&w * &inv_m), p);
                }
                acc
            })
            .collect();
        Ok(TrigFormData {
            sigma,
            m,
            gammas,
            tail: Vec::new(),
        })
    }

    pub fn validate(&self, metric: &MetricAlgebra) -> Result<()> {
        let d = metric.dim();
        if self.gammas.len() != self.m as usize || self.sigma.rows() != d || self.sigma.cols() != d {
            return Err(Error::EigencomponentMismatch(format!(
                "expected {} components over dimension {d}",
                self.m
            )));
        }
        let mut sum = Tensor2::zeros(d);
        for g in &self.gammas {
            sum.add_assign(g);
        }
        if sum != metric.gamma() {
            return Err(Error::EigencomponentMismatch("Σγ_j ≠ γ".into()));
        }
        let eps = primitive_root(self.m);
        for (idx, g) in self.gammas.iter().enumerate() {
            let j = idx as i64 + 1;
            let w = eps.pow(j).expect("power");
            if apply_first_leg(&self.sigma, g) != g.scale(&w) {
                return Err(Error::EigencomponentMismatch(format!(
                    "γ_{j} is not in the ε^{j} eigenspace"
                )));
            }
        }
        Ok(())
    }
}

/// `(σ⊗1)t` for a matrix acting on the first leg.
fn apply_first_leg(sigma: &Matrix, t: &Tensor2) -> Tensor2 {
    let d = t.dim();
    let mut out = Tensor2::zeros(d);
    for ([a, b], c) in t.nonzeros() {
        for i in 0..d {
            let s = sigma.get(i, a);
            if !s.is_zero() {
                out.add_at([i, b], &(s * c));
            }
        }
    }
    out
}

/// Which standard form to emit.
#[derive(Clone, Debug)]
pub enum StandardKind {
    Rational(Series2<Tensor2>),
    QuasiTrigonometric(Series2<Tensor2>),
    QuasiRational(Series2<Tensor2>),
    Trigonometric(TrigFormData),
}

/// Build the candidate series of the requested shape through `trunc`.
/// Solutionhood is not checked here.
pub fn emit_standard_form(kind: &StandardKind, metric: &MetricAlgebra, trunc: u32) -> Result<StandardFormSeries> {
    match kind {
        StandardKind::Rational(t) => StandardFormSeries::with_unit_lambda(metric.clone(), 0, t.clone(), trunc),
        StandardKind::QuasiTrigonometric(t) => {
            StandardFormSeries::with_unit_lambda(metric.clone(), 1, t.clone(), trunc)
        }
        StandardKind::QuasiRational(t) => StandardFormSeries::with_unit_lambda(metric.clone(), 2, t.clone(), trunc),
        StandardKind::Trigonometric(data) => {
            data.validate(metric)?;
            let m = data.m as i64;
            // w/(e^w − 1) through degree trunc + 1.
            let bern = crate::series::bernoulli_expansion(trunc + 1).shift(1);
            let bern = Series1::from_terms(trunc + 1, bern.terms().iter().map(|(e, c)| ([*e as u32], c.clone())));
            let d = metric.dim();
            let mut numer: Series2<Tensor2> = Series2::zero(trunc + 1);
            for (idx, g) in data.gammas.iter().enumerate() {
                let j = idx as i64 + 1;
                let e = scaled_exp(&Scalar::ratio(j, m), trunc + 1);
                let f = e.mul(&bern).truncated(trunc + 1);
                let f2 = Series::<Scalar, 2>::of_difference(&f);
                numer = numer.add(&f2.map(|c| g.scale(c)));
            }
            let mut tail: Series2<Tensor2> = Series2::zero(trunc);
            for ((p, q), t) in &data.tail {
                let ex = scaled_exp(&Scalar::ratio(*p, m), trunc).embed::<2>([0]);
                let ey = scaled_exp(&Scalar::ratio(*q, m), trunc).embed::<2>([1]);
                let w = ex.mul(&ey).truncated(trunc);
                tail = tail.add(&w.map(|c| t.scale(c)));
            }
            let numer = numer.add(&tail.shift([1, 0]).sub(&tail.shift([0, 1])));
            debug_assert_eq!(d, metric.dim());
            StandardFormSeries::from_numerator(metric.clone(), 0, Series1::one(trunc + 1), &numer)
        }
    }
}

/// `e^{c z}` through degree `n`.
fn scaled_exp(c: &Scalar, n: u32) -> Series1 {
    let e = Series1::exp_series(n);
    Series1::from_terms(
        n,
        e.terms()
            .iter()
            .map(|([k], v)| ([*k], v * &c.pow(*k as i64).expect("power"))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> Scalar {
        Scalar::ratio(p, r)
    }

    fn yang(m: &MetricAlgebra, trunc: u32) -> StandardFormSeries {
        StandardFormSeries::with_unit_lambda(m.clone(), 0, Series2::zero(trunc), trunc).unwrap()
    }

    fn skew_e11_e12(m: &MetricAlgebra) -> Tensor2 {
        let i11 = m.basis_index("e11").unwrap();
        let i12 = m.basis_index("e12").unwrap();
        let d = m.dim();
        Tensor2::unit(d, [i11, i12]).sub(&Tensor2::unit(d, [i12, i11]))
    }

    #[test]
    fn normalize_examples() {
        let m = MetricAlgebra::matrix(2).unwrap();
        let g = m.gamma();
        let a = Series2::monomial([1, 0], Scalar::one(), 6);
        let r = normalize_type(&a, &Series2::zero(6), &m).unwrap();
        assert_eq!(r.n, 1);
        assert_eq!(r.lambda, Series1::one(5));
        assert_eq!(r.tail, Series2::monomial([0, 0], g.clone(), 5));
        let a = Series2::monomial([1, 1], Scalar::one(), 6);
        let r = normalize_type(&a, &Series2::zero(6), &m).unwrap();
        assert_eq!(r.n, 2);
        assert_eq!(r.tail, Series2::monomial([0, 1], g, 5));
        assert!(matches!(
            normalize_type(&Series2::zero(4), &Series2::zero(4), &m),
            Err(Error::DiagonalVanishes(_))
        ));
    }

    #[test]
    fn bar_examples() {
        let m = MetricAlgebra::matrix(2).unwrap();
        let r = yang(&m, 6);
        assert!(r.is_skew().unwrap());
        let r1 = StandardFormSeries::with_unit_lambda(m.clone(), 1, Series2::zero(6), 6).unwrap();
        let b = r1.bar().unwrap();
        assert_eq!(b.tail.truncated(5), Series2::monomial([0, 0], m.gamma(), 5));
        assert!(!r1.is_skew().unwrap());
        let t = Series2::monomial([0, 1], m.gamma(), 6).add(&Series2::monomial([0, 0], skew_e11_e12(&m), 6));
        let qr = StandardFormSeries::with_unit_lambda(m.clone(), 2, t, 6).unwrap();
        assert!(qr.is_skew().unwrap());
        let bb = qr.bar().unwrap().bar().unwrap();
        assert!(bb.tail.agrees_through(&qr.tail, bb.trunc()));
    }

    #[test]
    fn yang_and_constant_skew_solve_cybe() {
        let k = MetricAlgebra::matrix(1).unwrap();
        assert!(verify(&yang(&k, 8), Equation::Cybe, 6).unwrap().holds());
        let m = MetricAlgebra::matrix(2).unwrap();
        let t = Series2::monomial([0, 0], skew_e11_e12(&m), 9);
        let r = StandardFormSeries::with_unit_lambda(m.clone(), 0, t, 9).unwrap();
        assert!(verify(&r, Equation::Cybe, 6).unwrap().holds());
        assert!(verify(&r, Equation::Gcybe, 6).unwrap().holds());
    }

    #[test]
    fn non_solution_fails_in_degree_zero() {
        let m = MetricAlgebra::matrix(2).unwrap();
        let i11 = m.basis_index("e11").unwrap();
        let t = Series2::monomial([0, 0], Tensor2::unit(4, [i11, i11]), 9);
        let r = StandardFormSeries::with_unit_lambda(m, 0, t, 9).unwrap();
        let rep = verify(&r, Equation::Cybe, 6).unwrap();
        assert!(rep.pole);
        let (e, _) = rep.first_nonzero.unwrap();
        assert_eq!(e.iter().sum::<u32>(), 0);
        // GCYB stays regular and nonzero.
        assert!(!verify(&r, Equation::Gcybe, 6).unwrap().holds());
    }

    #[test]
    fn trig_m1_expansion() {
        let k = MetricAlgebra::matrix(1).unwrap();
        let data = TrigFormData::from_automorphism(&k, Matrix::identity(1), 1).unwrap();
        let r = emit_standard_form(&StandardKind::Trigonometric(data), &k, 5).unwrap();
        assert_eq!(r.n, 0);
        let g = k.gamma();
        assert_eq!(r.tail.coeff(&[0, 0]), Some(&g.scale(&q(1, 2))));
        assert_eq!(r.tail.coeff(&[1, 0]), Some(&g.scale(&q(1, 12))));
        assert_eq!(r.tail.coeff(&[0, 1]), Some(&g.scale(&q(-1, 12))));
        // r̄ = r − γ, so the m = 1 candidate is not skew.
        let b = r.bar().unwrap();
        let diff = r.tail.sub(&b.tail).truncated(3);
        assert_eq!(diff, Series2::monomial([0, 0], g, 3));
    }

    #[test]
    fn trig_eigencomponents() {
        let m = MetricAlgebra::matrix(2).unwrap();
        // Conjugation by diag(1, −1): e12, e21 ↦ −e12, −e21.
        let sigma = Matrix::from_fn(4, 4, |i, j| {
            if i != j {
                Scalar::zero()
            } else if i == 1 || i == 2 {
                Scalar::from_int(-1)
            } else {
                Scalar::one()
            }
        });
        let data = TrigFormData::from_automorphism(&m, sigma, 2).unwrap();
        data.validate(&m).unwrap();
        assert_eq!(data.gammas[1].nonzeros().count(), 2);
        let mut bad = data.clone();
        bad.gammas.swap(0, 1);
        assert!(matches!(bad.validate(&m), Err(Error::EigencomponentMismatch(_))));
        let r = emit_standard_form(&StandardKind::Trigonometric(data), &m, 4).unwrap();
        assert_eq!(r.n, 0);
    }

    #[test]
    fn gauge_rescaling() {
        let k = MetricAlgebra::matrix(1).unwrap();
        let r = yang(&k, 6);
        let mut g = GaugeData::identity(1, 6);
        g.u = Series1::monomial([1], Scalar::from_int(2), 6);
        let r2 = gauge_transform(&r, &g).unwrap();
        assert_eq!(r2.n, 0);
        assert_eq!(r2.lambda.constant_term(), q(1, 2));
        assert!(r2.tail.is_zero());
        let id = gauge_transform(&r, &GaugeData::identity(1, 6)).unwrap();
        assert!(id.tail.is_zero());
        assert_eq!(id.lambda.coeff_at(0), Scalar::one());
    }

    #[test]
    fn subspace_round_trip() {
        let m = MetricAlgebra::matrix(2).unwrap();
        let t = Series2::monomial([0, 0], skew_e11_e12(&m), 6);
        let r = StandardFormSeries::with_unit_lambda(m.clone(), 0, t, 6).unwrap();
        let w = series_to_subspace(&r).unwrap();
        assert_eq!(w.tail_bound, 1);
        let back = subspace_to_series(&w, &m, 6).unwrap();
        assert_eq!(back, r);
    }
}
