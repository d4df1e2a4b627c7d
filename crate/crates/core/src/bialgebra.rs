//! Cobrackets on `A[[z]]` and on finite-dimensional algebras: `δ_r`, the
//! Lie, associative, balanced and Jordan axiom checks, the classical double
//! and Manin-triple verification.

use crate::algebra::{Algebra, CategoryReport, MetricAlgebra};
use crate::cybe::StandardFormSeries;
use crate::dnalg::{wbasis_span_check, DegreeWindow, DnElement, ResiduePairing, SpanReport, WBasis};
use crate::error::{Error, Result};
use crate::linalg::{span_basis, Matrix};
use crate::scalar::Scalar;
use crate::series::Series2;
use crate::tensor::{Element, Tensor, Tensor2, Tensor3};

/// A continuous linear map `A[[z]] → (A⊗A)[[x,y]]`, stored by its values
/// `δ(b_i z^k)` for `k ≤ max_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub algebra: Algebra,
    /// `images[k][i] = δ(b_i z^k)`.
    pub images: Vec<Vec<Series2<Tensor2>>>,
}

impl Cocycle {
    pub fn zero(algebra: Algebra, max_k: usize, trunc: u32) -> Self {
        let d = algebra.dim();
        Cocycle {
            algebra,
            images: vec![vec![Series2::zero(trunc); d]; max_k + 1],
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn max_k(&self) -> usize {
        self.images.len().saturating_sub(1)
    }

    pub fn image(&self, k: usize, i: usize) -> &Series2<Tensor2> {
        &self.images[k][i]
    }

    /// `δ(e z^k)` by linearity.
    pub fn apply(&self, e: &Element, k: usize) -> Result<Series2<Tensor2>> {
        if k > self.max_k() {
            return Err(Error::WindowTooSmall(format!(
                "cobracket known on generators of degree ≤ {}, need {k}",
                self.max_k()
            )));
        }
        let mut out: Option<Series2<Tensor2>> = None;
        for (i, c) in e.data().iter().enumerate() {
            let term = self.images[k][i].scale(c);
            out = Some(match out {
                Some(o) => o.add(&term),
                None => term,
            });
        }
        Ok(out.unwrap_or_else(|| Series2::zero(0)))
    }

    /// The co-opposite `τδ`: swap tensor legs and the variables `x ↔ y`.
    pub fn tau(&self) -> Cocycle {
        Cocycle {
            algebra: self.algebra.clone(),
            images: self
                .images
                .iter()
                .map(|row| row.iter().map(tau_series).collect())
                .collect(),
        }
    }
}

/// `τ s(y,x)` for a two-variable tensor series.
pub fn tau_series(s: &Series2<Tensor2>) -> Series2<Tensor2> {
    s.swap_vars().map(|t| t.flip())
}

/// Multiply leg `leg` (variable `leg`) of `s` by `e z^deg`, from the left or right.
fn act(alg: &Algebra, s: &Series2<Tensor2>, e: &Element, deg: usize, leg: usize, left: bool) -> Series2<Tensor2> {
    let mut exp = [0u32; 2];
    exp[leg] = deg as u32;
    s.shift(exp).map(|t| {
        if left {
            alg.left_leg(e, leg, t)
        } else {
            alg.right_leg(e, leg, t)
        }
    })
}

/// `δ_r(a)(x,y) = (r(x,y) a(x)^{(1)} − a(y)^{(2)} r(x,y))`, computed on
/// `a = b_i z^k` for `k ≤ max_k` from the numerator of `r` by exact division
/// by `x − y`.
pub fn delta_from_r(r: &StandardFormSeries, max_k: usize) -> Result<Cocycle> {
    let alg = r.metric.algebra();
    let d = alg.dim();
    let numer = r.numerator();
    let mut images = Vec::with_capacity(max_k + 1);
    for k in 0..=max_k {
        let mut row = Vec::with_capacity(d);
        for i in 0..d {
            let b = Element::basis(d, i);
            let lhs = act(alg, &numer, &b, k, 0, false);
            let rhs = act(alg, &numer, &b, k, 1, true);
            let q = lhs.sub(&rhs).divide_by_diagonal().map_err(|e| match e {
                Error::NotDivisible(m) => Error::PoleDoesNotCancel(format!("δ_r(b{} z^{k}): {m}", i + 1)),
                other => other,
            })?;
            row.push(q);
        }
        images.push(row);
    }
    Ok(Cocycle {
        algebra: alg.clone(),
        images,
    })
}

/// Result of a windowed identity check over generator pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub holds: bool,
    pub pairs_checked: usize,
    /// First failing pair `((k, i), (l, j))` of generators `b_i z^k`, `b_j z^l`.
    pub first_failure: Option<((usize, usize), (usize, usize))>,
    /// Degree through which the comparison was made.
    pub degree: u32,
}

fn agree(a: &Series2<Tensor2>, b: &Series2<Tensor2>) -> (bool, u32) {
    let deg = a.trunc().min(b.trunc());
    (a.agrees_through(b, deg), deg)
}

/// Generator pairs `(k, i), (l, j)` whose product degree `k + l` stays within
/// `max_k` (so `δ(ab)` is available) and `k, l ≤ window`.
fn generator_pairs(d: usize, max_k: usize, window: usize) -> Vec<((usize, usize), (usize, usize))> {
    let mut out = Vec::new();
    for k in 0..=window.min(max_k) {
        for l in 0..=window.min(max_k) {
            if k + l > max_k {
                continue;
            }
            for i in 0..d {
                for j in 0..d {
                    out.push(((k, i), (l, j)));
                }
            }
        }
    }
    out
}

fn run_pairs(
    delta: &Cocycle,
    window: usize,
    f: impl Fn((usize, &Element), (usize, &Element)) -> Result<(Series2<Tensor2>, Series2<Tensor2>)>,
) -> Result<IdentityReport> {
    let d = delta.dim();
    let mut report = IdentityReport {
        holds: true,
        pairs_checked: 0,
        first_failure: None,
        degree: u32::MAX,
    };
    for ((k, i), (l, j)) in generator_pairs(d, delta.max_k(), window) {
        let a = Element::basis(d, i);
        let b = Element::basis(d, j);
        let (lhs, rhs) = f((k, &a), (l, &b))?;
        let (ok, deg) = agree(&lhs, &rhs);
        report.pairs_checked += 1;
        report.degree = report.degree.min(deg);
        if !ok && report.first_failure.is_none() {
            report.holds = false;
            report.first_failure = Some(((k, i), (l, j)));
        }
    }
    if report.pairs_checked == 0 {
        report.degree = 0;
    }
    Ok(report)
}

/// `δ(ab) = (a^{(1)} + a^{(2)})δ(b) + δ(a)(b^{(1)} + b^{(2)})` on generator pairs.
pub fn check_lie_cocycle(delta: &Cocycle, window: usize) -> Result<IdentityReport> {
    let alg = &delta.algebra;
    if !alg.is_lie() {
        return Err(Error::CategoryMismatch("Lie cocycle check needs a Lie algebra".into()));
    }
    run_pairs(delta, window, |(k, a), (l, b)| {
        let lhs = delta.apply(&alg.mul(a, b), k + l)?;
        let db = delta.apply(b, l)?;
        let da = delta.apply(a, k)?;
        let rhs = act(alg, &db, a, k, 0, true)
            .add(&act(alg, &db, a, k, 1, true))
            .add(&act(alg, &da, b, l, 0, false))
            .add(&act(alg, &da, b, l, 1, false));
        Ok((lhs, rhs))
    })
}

/// `δ(ab) = a^{(1)}δ(b) + δ(a)b^{(2)}` on generator pairs.
pub fn check_associative_cocycle(delta: &Cocycle, window: usize) -> Result<IdentityReport> {
    let alg = &delta.algebra;
    if !alg.is_associative() {
        return Err(Error::CategoryMismatch(
            "associative cocycle check needs an associative algebra".into(),
        ));
    }
    run_pairs(delta, window, |(k, a), (l, b)| {
        let lhs = delta.apply(&alg.mul(a, b), k + l)?;
        let rhs = act(alg, &delta.apply(b, l)?, a, k, 0, true).add(&act(alg, &delta.apply(a, k)?, b, l, 1, false));
        Ok((lhs, rhs))
    })
}

/// `a₁^{(1)}τδ(a₂) + a₂^{(2)}δ(a₁) = δ(a₁)a₂^{(1)} + τδ(a₂)a₁^{(2)}` on generator pairs.
pub fn check_balanced(delta: &Cocycle, window: usize) -> Result<IdentityReport> {
    let alg = &delta.algebra;
    if !alg.is_associative() {
        return Err(Error::CategoryMismatch(
            "balance check needs an associative algebra".into(),
        ));
    }
    let tau = delta.tau();
    let d = delta.dim();
    let mut report = IdentityReport {
        holds: true,
        pairs_checked: 0,
        first_failure: None,
        degree: u32::MAX,
    };
    let top = window.min(delta.max_k());
    for k in 0..=top {
        for l in 0..=top {
            for i in 0..d {
                for j in 0..d {
                    let a1 = Element::basis(d, i);
                    let a2 = Element::basis(d, j);
                    let d1 = delta.apply(&a1, k)?;
                    let t2 = tau.apply(&a2, l)?;
                    let lhs = act(alg, &t2, &a1, k, 0, true).add(&act(alg, &d1, &a2, l, 1, true));
                    let rhs = act(alg, &d1, &a2, l, 0, false).add(&act(alg, &t2, &a1, k, 1, false));
                    let (ok, deg) = agree(&lhs, &rhs);
                    report.pairs_checked += 1;
                    report.degree = report.degree.min(deg);
                    if !ok && report.first_failure.is_none() {
                        report.holds = false;
                        report.first_failure = Some(((k, i), (l, j)));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// A finite-dimensional algebra with a comultiplication table `δ(b_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBialgebra {
    pub algebra: Algebra,
    pub delta: Vec<Tensor2>,
}

impl FiniteBialgebra {
    pub fn new(algebra: Algebra, delta: Vec<Tensor2>) -> Result<Self> {
        let d = algebra.dim();
        if delta.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: delta.len(),
            });
        }
        if let Some(t) = delta.iter().find(|t| t.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: t.dim(),
            });
        }
        Ok(FiniteBialgebra { algebra, delta })
    }

    pub fn zero(algebra: Algebra) -> Self {
        let d = algebra.dim();
        FiniteBialgebra {
            algebra,
            delta: vec![Tensor2::zeros(d); d],
        }
    }

    /// The principal derivation `δ_t(a) = a^{(1)}t − t a^{(2)}`; for a skew AYBE
    /// solution `t` this is a balanced infinitesimal cobracket, and its
    /// co-opposite is the constant analogue of `δ_r`.
    pub fn coboundary(algebra: Algebra, t: &Tensor2) -> Self {
        let d = algebra.dim();
        let delta = (0..d)
            .map(|i| {
                let a = Element::basis(d, i);
                algebra.left_leg(&a, 0, t).sub(&algebra.right_leg(&a, 1, t))
            })
            .collect();
        FiniteBialgebra { algebra, delta }
    }

    /// The co-opposite `τδ`.
    pub fn tau(&self) -> Self {
        FiniteBialgebra {
            algebra: self.algebra.clone(),
            delta: self.delta.iter().map(|t| t.flip()).collect(),
        }
    }

    pub fn apply(&self, a: &Element) -> Tensor2 {
        let mut out = Tensor2::zeros(self.algebra.dim());
        for (i, c) in a.data().iter().enumerate() {
            out.add_scaled(c, &self.delta[i]);
        }
        out
    }

    /// The constant cobracket on `A[[z]]` extended `z`-linearly, on degree-0 generators.
    pub fn to_cocycle(&self) -> Cocycle {
        Cocycle {
            algebra: self.algebra.clone(),
            images: vec![self
                .delta
                .iter()
                .map(|t| Series2::monomial([0, 0], t.clone(), 0))
                .collect()],
        }
    }
}

/// Operations in `U^{⊗R}` for the unitalization `U = A ⊕ k` (unit = last index).
struct Unital {
    d: usize,
    u: Algebra,
}

impl Unital {
    fn new(alg: &Algebra) -> Self {
        Unital {
            d: alg.dim(),
            u: alg.unitalize(),
        }
    }

    fn one(&self) -> Element {
        Element::basis(self.d + 1, self.d)
    }

    fn el(&self, a: &Element) -> Element {
        let mut v = a.data().to_vec();
        v.push(Scalar::zero());
        Element::from_vec(v)
    }

    fn t2(&self, t: &Tensor2) -> Tensor2 {
        let mut out = Tensor2::zeros(self.d + 1);
        for (idx, c) in t.nonzeros() {
            out.set(idx, c.clone());
        }
        out
    }

    /// `δ` on an element of `U` (zero on the unit).
    fn delta(&self, b: &FiniteBialgebra, x: &Element) -> Tensor2 {
        let a = Element::from_vec(x.data()[..self.d].to_vec());
        self.t2(&b.apply(&a))
    }

    /// `(δ⊗1)X`.
    fn delta_1(&self, b: &FiniteBialgebra, x: &Tensor2) -> Tensor3 {
        let e = self.d + 1;
        let mut out = Tensor3::zeros(e);
        for ([p, q], c) in x.nonzeros() {
            let dp = self.delta(b, &Element::basis(e, p));
            for ([i, j], v) in dp.nonzeros() {
                out.add_at([i, j, q], &(c * v));
            }
        }
        out
    }

    /// `(1⊗δ)X`.
    fn delta_2(&self, b: &FiniteBialgebra, x: &Tensor2) -> Tensor3 {
        let e = self.d + 1;
        let mut out = Tensor3::zeros(e);
        for ([p, q], c) in x.nonzeros() {
            let dq = self.delta(b, &Element::basis(e, q));
            for ([i, j], v) in dq.nonzeros() {
                out.add_at([p, i, j], &(c * v));
            }
        }
        out
    }

    fn tensor3(&self, x: &Element, y: &Element, z: &Element) -> Tensor3 {
        x.outer(y).outer_right(z)
    }

    /// `X ⊗ 1`.
    fn with_unit_right(&self, x: &Tensor2) -> Tensor3 {
        x.outer_right(&self.one())
    }

    /// `1 ⊗ X`.
    fn with_unit_left(&self, x: &Tensor2) -> Tensor3 {
        x.outer_left(&self.one())
    }

    /// `a^{(leg)}` as an element of `U^{⊗3}`.
    fn leg3(&self, a: &Element, leg: usize) -> Tensor3 {
        let one = self.one();
        let ua = self.el(a);
        match leg {
            0 => self.tensor3(&ua, &one, &one),
            1 => self.tensor3(&one, &ua, &one),
            _ => self.tensor3(&one, &one, &ua),
        }
    }

    fn leg2(&self, a: &Element, leg: usize) -> Tensor2 {
        let one = self.one();
        let ua = self.el(a);
        if leg == 0 {
            ua.outer(&one)
        } else {
            one.outer(&ua)
        }
    }

    fn mul<const R: usize>(&self, x: &Tensor<R>, y: &Tensor<R>) -> Tensor<R> {
        self.u.tensor_mul(x, y)
    }
}

/// `(1⊗τ)` on a three-tensor.
fn swap23(t: &Tensor3) -> Tensor3 {
    t.permute([0, 2, 1])
}

/// Which of the Jordan bialgebra identities failed, and on which input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanReport {
    pub holds: bool,
    /// `(identity number 1..=3, a, b)` with `a`, `b` basis-index sets.
    pub first_failure: Option<(u8, Vec<usize>, Option<usize>)>,
}

/// The three Jordan bialgebra identities, transcribed term by term. Products
/// of tensors are taken componentwise in `U^{⊗3}`.
///
/// (1) ½((δ⊗1)−(1⊗δ))δ(a²) = a^{(2)}(δ⊗1−1⊗δ)δ(a) + (a^{(3)}−a^{(1)})(1⊗τ)(δ⊗1)δ(a)
///     + (δ(a)⊗1 − 1⊗δ(a))(1⊗τ)(δ(a)⊗1)
///
/// (2) (δ⊗1+1⊗δ+(1⊗τ)(δ⊗1))((1⊗a+a⊗1)δ(a)) = 2a^{(2)}(1⊗δ)δ(a) + a^{(1)}(1⊗τ)(δ⊗1)δ(a)
///     + (1⊗δ(a))(1⊗τ)(δ(a)⊗1) + (δ⊗1)δ(a²)
///
/// (3) δ(a²b) − δ(a²)b^{(1)} − δ(b)(a²)^{(2)} + 2δ(b)(a⊗a) − 2δ(ab)a^{(1)}
///     + 2(δ(a)b^{(1)})a^{(1)} + 2(δ(a)b^{(2)})a^{(2)} − 2δ(a)(ab)^{(2)} = 0
pub fn check_jordan_identities(b: &FiniteBialgebra) -> Result<JordanReport> {
    let alg = &b.algebra;
    if !alg.is_jordan() {
        return Err(Error::CategoryMismatch(
            "Jordan identities need a Jordan algebra".into(),
        ));
    }
    let d = alg.dim();
    let u = Unital::new(alg);
    // The identities are quadratic in a: basis elements and pair sums suffice.
    let mut inputs: Vec<Vec<usize>> = (0..d).map(|i| vec![i]).collect();
    for i in 0..d {
        for j in i + 1..d {
            inputs.push(vec![i, j]);
        }
    }
    for idx in &inputs {
        let mut a = Element::zeros(d);
        for &i in idx {
            a.add_assign(&Element::basis(d, i));
        }
        let a2 = alg.mul(&a, &a);
        let da = u.t2(&b.apply(&a));
        let da2 = u.t2(&b.apply(&a2));
        let half = Scalar::ratio(1, 2);
        let two = Scalar::from_int(2);

        // (1)
        let lhs1 = u.delta_1(b, &da2).sub(&u.delta_2(b, &da2)).scale(&half);
        let d1da = u.delta_1(b, &da);
        let d2da = u.delta_2(b, &da);
        let sw = swap23(&d1da);
        let rhs1 = u
            .mul(&u.leg3(&a, 1), &d1da.sub(&d2da))
            .add(&u.mul(&u.leg3(&a, 2).sub(&u.leg3(&a, 0)), &sw))
            .add(&u.mul(
                &u.with_unit_right(&da).sub(&u.with_unit_left(&da)),
                &swap23(&u.with_unit_right(&da)),
            ));
        if lhs1 != rhs1 {
            return Ok(JordanReport {
                holds: false,
                first_failure: Some((1, idx.clone(), None)),
            });
        }

        // (2)
        let x = u.mul(&u.leg2(&a, 1).add(&u.leg2(&a, 0)), &da);
        let lhs2 = u.delta_1(b, &x).add(&u.delta_2(b, &x)).add(&swap23(&u.delta_1(b, &x)));
        let rhs2 = u
            .mul(&u.leg3(&a, 1), &d2da)
            .scale(&two)
            .add(&u.mul(&u.leg3(&a, 0), &sw))
            .add(&u.mul(&u.with_unit_left(&da), &swap23(&u.with_unit_right(&da))))
            .add(&u.delta_1(b, &da2));
        if lhs2 != rhs2 {
            return Ok(JordanReport {
                holds: false,
                first_failure: Some((2, idx.clone(), None)),
            });
        }

        // (3), linear in b.
        for j in 0..d {
            let bb = Element::basis(d, j);
            let ab = alg.mul(&a, &bb);
            let a2b = alg.mul(&a2, &bb);
            let db = u.t2(&b.apply(&bb));
            let aa = u.el(&a).outer(&u.el(&a));
            let terms = u
                .t2(&b.apply(&a2b))
                .sub(&u.mul(&da2, &u.leg2(&bb, 0)))
                .sub(&u.mul(&db, &u.leg2(&a2, 1)))
                .add(&u.mul(&db, &aa).scale(&two))
                .sub(&u.mul(&u.t2(&b.apply(&ab)), &u.leg2(&a, 0)).scale(&two))
                .add(&u.mul(&u.mul(&da, &u.leg2(&bb, 0)), &u.leg2(&a, 0)).scale(&two))
                .add(&u.mul(&u.mul(&da, &u.leg2(&bb, 1)), &u.leg2(&a, 1)).scale(&two))
                .sub(&u.mul(&da, &u.leg2(&ab, 1)).scale(&two));
            if !terms.is_zero() {
                return Ok(JordanReport {
                    holds: false,
                    first_failure: Some((3, idx.clone(), Some(j))),
                });
            }
        }
    }
    Ok(JordanReport {
        holds: true,
        first_failure: None,
    })
}

/// The classical double `D(A,δ)` on `A ⊕ A*` with the evaluation pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Double {
    pub algebra: Algebra,
    pub gram: Matrix,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleReport {
    pub categories: CategoryReport,
    /// `ev` is symmetric, non-degenerate and associative on the double.
    pub metric_ok: bool,
    pub a_subalgebra: bool,
    pub dual_subalgebra: bool,
    pub a_isotropic: bool,
    pub dual_isotropic: bool,
}

/// Assemble the double. With `f_j` the dual basis of `A*`:
/// `f_i f_j = Σ_k δ(b_k)^{ij} f_k`, `b_i f_j = Σ_q δ(b_i)^{jq} b_q + Σ_k C_{ki}^j f_k`,
/// `f_j b_i = Σ_p δ(b_i)^{pj} b_p + Σ_k C_{ik}^j f_k`.
pub fn build_double(b: &FiniteBialgebra) -> Double {
    let alg = &b.algebra;
    let d = alg.dim();
    let e = 2 * d;
    let mut s = vec![Scalar::zero(); e * e * e];
    let idx = |i: usize, j: usize, k: usize| (i * e + j) * e + k;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                s[idx(i, j, k)] = alg.structure_constant(i, j, k).clone();
                s[idx(d + i, d + j, d + k)] = b.delta[k].get([i, j]).clone();
                // b_i f_j
                s[idx(i, d + j, k)] = b.delta[i].get([j, k]).clone();
                s[idx(i, d + j, d + k)] = alg.structure_constant(k, i, j).clone();
                // f_j b_i
                s[idx(d + j, i, k)] = b.delta[i].get([k, j]).clone();
                s[idx(d + j, i, d + k)] = alg.structure_constant(i, k, j).clone();
            }
        }
    }
    let mut labels: Vec<String> = alg.labels().to_vec();
    labels.extend(alg.labels().iter().map(|l| format!("{l}*")));
    let algebra = Algebra::new(e, s, Some(labels)).expect("consistent dimensions");
    let gram = Matrix::from_fn(e, e, |i, j| {
        if (i < d) != (j < d) && i % d == j % d {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    Double { algebra, gram, d }
}

fn span_closed(alg: &Algebra, basis: &[Element]) -> bool {
    let dim = alg.dim();
    let rows: Vec<Vec<Scalar>> = basis.iter().map(|e| e.data().to_vec()).collect();
    let rank = span_basis(&rows, dim).len();
    for x in basis {
        for y in basis {
            let mut r = rows.clone();
            r.push(alg.mul(x, y).into_data());
            if span_basis(&r, dim).len() != rank {
                return false;
            }
        }
    }
    true
}

fn isotropic(gram: &Matrix, basis: &[Element]) -> bool {
    basis.iter().all(|x| basis.iter().all(|y| pair(gram, x, y).is_zero()))
}

fn pair(gram: &Matrix, x: &Element, y: &Element) -> Scalar {
    let gy = gram.mul_vec(y.data());
    x.data().iter().zip(&gy).map(|(a, b)| a * b).sum()
}

impl Double {
    pub fn metric(&self) -> Result<MetricAlgebra> {
        MetricAlgebra::new("double", self.algebra.clone(), self.gram.clone())
    }

    fn half(&self, dual: bool) -> Vec<Element> {
        let off = if dual { self.d } else { 0 };
        (0..self.d).map(|i| Element::basis(2 * self.d, off + i)).collect()
    }

    pub fn report(&self) -> DoubleReport {
        let a = self.half(false);
        let f = self.half(true);
        DoubleReport {
            categories: self.algebra.categories(),
            metric_ok: self.metric().is_ok(),
            a_subalgebra: span_closed(&self.algebra, &a),
            dual_subalgebra: span_closed(&self.algebra, &f),
            a_isotropic: isotropic(&self.gram, &a),
            dual_isotropic: isotropic(&self.gram, &f),
        }
    }

    /// The cobracket determined by the Manin triple `((D, ev), A, A*)`.
    pub fn determined_delta(&self) -> Result<Vec<Tensor2>> {
        let m = self.metric()?;
        determined_delta_finite(&m, &self.half(false), &self.half(true))
    }
}

/// Outcome of a Manin-triple check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManinReport {
    pub complementary: bool,
    pub plus_isotropic: bool,
    pub minus_isotropic: bool,
    pub plus_closed: bool,
    pub minus_closed: bool,
}

impl ManinReport {
    pub fn holds(&self) -> bool {
        self.complementary && self.plus_isotropic && self.minus_isotropic && self.plus_closed && self.minus_closed
    }
}

/// Check `M = M₊ ⊕ M₋` with both halves isotropic subalgebras.
pub fn manin_triple_check_finite(m: &MetricAlgebra, plus: &[Element], minus: &[Element]) -> ManinReport {
    let dim = m.dim();
    let rows: Vec<Vec<Scalar>> = plus.iter().chain(minus).map(|e| e.data().to_vec()).collect();
    let complementary = plus.len() + minus.len() == dim && span_basis(&rows, dim).len() == dim;
    ManinReport {
        complementary,
        plus_isotropic: isotropic(m.gram(), plus),
        minus_isotropic: isotropic(m.gram(), minus),
        plus_closed: span_closed(m.algebra(), plus),
        minus_closed: span_closed(m.algebra(), minus),
    }
}

/// Solve `β^{⊗2}(δ(a), m₁⊗m₂) = β(a, m₁m₂)` for `a` ranging over the basis of
/// `M₊`; the result is written in the basis of `M₊`.
pub fn determined_delta_finite(m: &MetricAlgebra, plus: &[Element], minus: &[Element]) -> Result<Vec<Tensor2>> {
    let k = plus.len();
    if minus.len() != k {
        return Err(Error::NotComplementary(format!(
            "halves of dimension {k} and {}",
            minus.len()
        )));
    }
    let g = Matrix::from_fn(k, k, |i, j| m.beta(&plus[i], &minus[j]));
    let ginv = g
        .inverse()
        .ok_or_else(|| Error::NotComplementary("pairing between the halves is degenerate".into()))?;
    let alg = m.algebra();
    plus.iter()
        .map(|a| {
            let x = Matrix::from_fn(k, k, |p, q| m.beta(a, &alg.mul(&minus[p], &minus[q])));
            // c = G^{-T} X G^{-1}
            let c = ginv.transpose().mul(&x)?.mul(&ginv)?;
            let mut t = Tensor2::zeros(k);
            for p in 0..k {
                for q in 0..k {
                    t.set([p, q], c.get(p, q).clone());
                }
            }
            Ok(t)
        })
        .collect()
}

/// Manin-triple report for `((D_n(A), β_{(n,λ)}), A[[z]], W)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesManinReport {
    pub diagonal_isotropic: bool,
    pub diagonal_closed: bool,
    pub w: SpanReport,
}

impl SeriesManinReport {
    pub fn holds(&self) -> bool {
        self.diagonal_isotropic && self.diagonal_closed && self.w.all_hold()
    }
}

pub fn manin_triple_check_series(w: &WBasis, p: &ResiduePairing, window: DegreeWindow) -> Result<SeriesManinReport> {
    let m = p.metric();
    let d = m.dim();
    let n = p.n();
    let top = window.hi.max(0) as u32;
    let mono: Vec<DnElement> = (0..=top)
        .flat_map(|q| (0..d).map(move |i| (q, i)))
        .map(|(q, i)| DnElement::diagonal_monomial(n, &Element::basis(d, i), q))
        .collect();
    let mut diagonal_isotropic = true;
    let mut diagonal_closed = true;
    for x in &mono {
        for y in &mono {
            if !p.pair(x, y)?.is_zero() {
                diagonal_isotropic = false;
            }
            let prod = x.mul(m.algebra(), y)?;
            let (principal, right) = prod.quotient()?;
            if !principal.is_zero() || right.iter().any(|e| !e.is_zero()) {
                diagonal_closed = false;
            }
        }
    }
    Ok(SeriesManinReport {
        diagonal_isotropic,
        diagonal_closed,
        w: wbasis_span_check(w, p, window)?,
    })
}

/// The cobracket on `A[[z]]` determined by the Manin triple with `W`: the
/// coefficient of `δ(b_i z^k)` at `b_a x^p ⊗ b_b y^q` is
/// `β_{(n,λ)}(b_i z^k, w_{p,a} w_{q,b})`, for `p, q ≤ trunc`.
pub fn determined_delta_series(w: &WBasis, p: &ResiduePairing, max_k: usize, trunc: u32) -> Result<Cocycle> {
    let m = p.metric();
    let d = m.dim();
    let n = p.n();
    let gens: Vec<Vec<DnElement>> = (0..=trunc as usize)
        .map(|k| (0..d).map(|i| w.generator(m, k, i)).collect())
        .collect::<Result<_>>()?;
    let mut images = vec![vec![Series2::zero(trunc); d]; max_k + 1];
    for pdeg in 0..=trunc as usize {
        for qdeg in 0..=(trunc as usize - pdeg) {
            for a in 0..d {
                for bb in 0..d {
                    let prod = gens[pdeg][a].mul(m.algebra(), &gens[qdeg][bb])?;
                    for (k, row) in images.iter_mut().enumerate() {
                        for (i, img) in row.iter_mut().enumerate() {
                            let gen = DnElement::diagonal_monomial(n, &Element::basis(d, i), k as u32);
                            let v = p.pair(&gen, &prod)?;
                            if !v.is_zero() {
                                img.add_term([pdeg as u32, qdeg as u32], &Tensor2::unit(d, [a, bb]).scale(&v));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Cocycle {
        algebra: m.algebra().clone(),
        images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Series2;

    fn skew_e11_e12(m: &MetricAlgebra) -> Tensor2 {
        let i11 = m.basis_index("e11").unwrap();
        let i12 = m.basis_index("e12").unwrap();
        Tensor2::unit(4, [i11, i12]).sub(&Tensor2::unit(4, [i12, i11]))
    }

    #[test]
    fn delta_of_yang_on_matrix1() {
        let k = MetricAlgebra::matrix(1).unwrap();
        let r = StandardFormSeries::with_unit_lambda(k.clone(), 0, Series2::zero(6), 6).unwrap();
        let delta = delta_from_r(&r, 2).unwrap();
        assert!(delta.image(0, 0).is_zero());
        let one = Tensor2::unit(1, [0, 0]);
        assert_eq!(delta.image(1, 0).truncated(3), Series2::monomial([0, 0], one, 3));
    }

    #[test]
    fn dual_numbers_double() {
        let k = MetricAlgebra::matrix(1).unwrap();
        let b = FiniteBialgebra::zero(k.algebra().clone());
        let dbl = build_double(&b);
        let rep = dbl.report();
        assert!(rep.categories.associative && rep.categories.commutative);
        let eps = Element::basis(2, 1);
        assert!(dbl.algebra.mul(&eps, &eps).is_zero());
        assert!(rep.metric_ok && rep.a_isotropic && rep.dual_isotropic);
        assert!(dbl.determined_delta().unwrap().iter().all(|t| t.is_zero()));
    }

    #[test]
    fn coboundary_double_is_associative() {
        let m = MetricAlgebra::matrix(2).unwrap();
        let t = skew_e11_e12(&m);
        let inf = FiniteBialgebra::coboundary(m.algebra().clone(), &t);
        let c = inf.to_cocycle();
        assert!(check_associative_cocycle(&c, 0).unwrap().holds);
        assert!(check_balanced(&c, 0).unwrap().holds);
        let b = inf.tau();
        let dbl = build_double(&b);
        assert!(dbl.algebra.is_associative());
        let rep = dbl.report();
        assert!(rep.metric_ok && rep.a_subalgebra && rep.dual_subalgebra);
        assert_eq!(dbl.determined_delta().unwrap(), b.delta);
        assert!(!build_double(&inf).algebra.is_associative());
    }

    #[test]
    fn jordan_zero_and_random() {
        let s = MetricAlgebra::sym(2).unwrap();
        let zero = FiniteBialgebra::zero(s.algebra().clone());
        assert!(check_jordan_identities(&zero).unwrap().holds);
        let mut delta = vec![Tensor2::zeros(3); 3];
        delta[0].set([0, 1], Scalar::from_int(1));
        delta[1].set([2, 2], Scalar::from_int(-2));
        let b = FiniteBialgebra::new(s.algebra().clone(), delta).unwrap();
        assert!(!check_jordan_identities(&b).unwrap().holds);
        let m = MetricAlgebra::matrix(2).unwrap();
        assert!(matches!(
            check_jordan_identities(&FiniteBialgebra::zero(m.algebra().clone())),
            Err(Error::CategoryMismatch(_))
        ));
    }

    #[test]
    fn yang_on_sl2_is_a_lie_cocycle() {
        let sl2 = MetricAlgebra::sl(2).unwrap();
        let r = StandardFormSeries::with_unit_lambda(sl2, 0, Series2::zero(5), 5).unwrap();
        let delta = delta_from_r(&r, 3).unwrap();
        let rep = check_lie_cocycle(&delta, 3).unwrap();
        assert!(rep.holds, "{rep:?}");
        assert!(rep.pairs_checked > 0);

        let mut bad = delta.clone();
        bad.images[1][0] = bad.images[1][0].add(&Series2::monomial([0, 0], Tensor2::unit(3, [0, 1]), 4));
        assert!(!check_lie_cocycle(&bad, 3).unwrap().holds);
    }

    #[test]
    fn rational_solution_on_matrix2_is_infinitesimal() {
        let m = MetricAlgebra::matrix(2).unwrap();
        let t = skew_e11_e12(&m);
        let r = StandardFormSeries::with_unit_lambda(m, 0, Series2::monomial([0, 0], t, 5), 5).unwrap();
        let delta = delta_from_r(&r, 2).unwrap();
        let tau = delta.tau();
        assert!(check_associative_cocycle(&tau, 2).unwrap().holds);
        assert!(check_balanced(&tau, 2).unwrap().holds);
        assert!(!check_associative_cocycle(&delta, 2).unwrap().holds);
    }

    #[test]
    fn manin_triple_reproduces_delta_r() {
        use crate::cybe::{pairing_for, series_to_subspace};
        let sl2 = MetricAlgebra::sl(2).unwrap();
        let h = sl2.basis_index("h").unwrap();
        let e = sl2.basis_index("e").unwrap();
        let t = Tensor2::unit(3, [h, e]).sub(&Tensor2::unit(3, [e, h]));
        let r = StandardFormSeries::with_unit_lambda(sl2, 0, Series2::monomial([0, 0], t, 10), 10).unwrap();
        let w = series_to_subspace(&r).unwrap();
        let p = pairing_for(&r).unwrap();
        let rep = manin_triple_check_series(&w, &p, DegreeWindow::new(-3, 2)).unwrap();
        assert!(rep.holds(), "{rep:?}");
        let from_triple = determined_delta_series(&w, &p, 1, 3).unwrap();
        let from_r = delta_from_r(&r, 1).unwrap();
        for k in 0..=1 {
            for i in 0..3 {
                assert!(
                    from_triple.image(k, i).agrees_through(from_r.image(k, i), 2),
                    "k={k} i={i}: {:?} vs {:?}",
                    from_triple.image(k, i),
                    from_r.image(k, i)
                );
            }
        }
    }
}
