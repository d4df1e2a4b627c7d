//! The algebra `D_n(A) = A((z)) × A[z]/z^n A[z]`, its residue pairings, the
//! expansion of `1/(x−y)` inside it, the generators `w_{k,i}`, and tail
//! corrected spanning families of complements of the diagonal `A[[z]]`.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, MetricAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::series::{Laurent, Series1};
use crate::tensor::Element;

/// Element `(f, [g])` of `D_n(A)`: `f ∈ A((z))` (truncated Laurent) and `g`
/// a polynomial of degree `< n` (coefficients `right[0..n]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DnElement {
    d: usize,
    n: usize,
    left: Laurent<Element>,
    right: Vec<Element>,
}

impl DnElement {
    pub fn new(d: usize, n: usize, left: Laurent<Element>, right: Vec<Element>) -> Result<Self> {
        if right.len() > n {
            // Reduce modulo z^n.
            let mut r = right;
            r.truncate(n);
            return Self::new(d, n, left, r);
        }
        let mut right = right;
        right.resize(n, Element::zeros(d));
        for e in left.terms().values().chain(&right) {
            if e.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: e.dim(),
                });
            }
        }
        Ok(DnElement { d, n, left, right })
    }

    pub fn zero(d: usize, n: usize) -> Self {
        DnElement {
            d,
            n,
            left: Laurent::zero(),
            right: vec![Element::zeros(d); n],
        }
    }

    /// The diagonal embedding `a ↦ (a, [a])` of a (truncated) series in `A[[z]]`.
    pub fn diagonal(n: usize, a: &Laurent<Element>, d: usize) -> Self {
        let mut right = vec![Element::zeros(d); n];
        for (e, c) in a.terms() {
            if *e >= 0 && (*e as usize) < n {
                right[*e as usize] = c.clone();
            }
        }
        DnElement {
            d,
            n,
            left: a.clone(),
            right,
        }
    }

    /// `b z^k` embedded diagonally.
    pub fn diagonal_monomial(n: usize, b: &Element, k: u32) -> Self {
        Self::diagonal(n, &Laurent::monomial(k as i64, b.clone()), b.dim())
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn left(&self) -> &Laurent<Element> {
        &self.left
    }

    pub fn right(&self) -> &[Element] {
        &self.right
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.d != other.d || self.n != other.n {
            return Err(Error::ParameterMismatch(format!(
                "D_{}(dim {}) vs D_{}(dim {})",
                self.n, self.d, other.n, other.d
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(DnElement {
            d: self.d,
            n: self.n,
            left: self.left.add(&other.left),
            right: self.right.iter().zip(&other.right).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        DnElement {
            d: self.d,
            n: self.n,
            left: self.left.scale(s),
            right: self.right.iter().map(|a| a.scale(s)).collect(),
        }
    }

    /// Componentwise product; the right component is reduced mod `z^n`.
    pub fn mul(&self, alg: &Algebra, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let left = self.left.mul_with(&other.left, |a, b| alg.mul(a, b));
        let mut right = vec![Element::zeros(self.d); self.n];
        for (i, a) in self.right.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.right.iter().enumerate().take(self.n - i) {
                if !b.is_zero() {
                    right[i + j].add_assign(&alg.mul(a, b));
                }
            }
        }
        Ok(DnElement {
            d: self.d,
            n: self.n,
            left,
            right,
        })
    }

    /// Multiply by a scalar series acting diagonally as `(λ, [λ])`.
    pub fn scalar_series_mul(&self, lambda: &Series1) -> Result<Self> {
        let lam = Laurent::from_series(lambda);
        let left = lam.mul_with(&self.left, |s, e| e.scale(s));
        if self.n > 0 && (lambda.trunc() as usize) < self.n - 1 {
            return Err(Error::WindowTooSmall(format!(
                "λ known through {} but D_{} needs degree {}",
                lambda.trunc(),
                self.n,
                self.n - 1
            )));
        }
        let mut right = vec![Element::zeros(self.d); self.n];
        for (i, a) in self.right.iter().enumerate() {
            for j in 0..self.n - i {
                let c = lambda.coeff_at(j as u32);
                if !c.is_zero() {
                    right[i + j].add_scaled(&c, a);
                }
            }
        }
        Ok(DnElement {
            d: self.d,
            n: self.n,
            left,
            right,
        })
    }

    /// The quotient map `D_n(A) → D_n(A)/A[[z]]`, `(f,[g]) ↦ (f_−, [g − f_+])`,
    /// returned as (principal part, right class).
    pub fn quotient(&self) -> Result<(Laurent<Element>, Vec<Element>)> {
        if self.n > 0 && !self.left.knows(self.n as i64 - 1) {
            return Err(Error::WindowTooSmall(format!(
                "left component known through {:?}, need degree {}",
                self.left.hi(),
                self.n - 1
            )));
        }
        let mut right = self.right.clone();
        for (e, c) in self.left.terms().range(0..self.n as i64) {
            right[*e as usize] = right[*e as usize].sub(c);
        }
        Ok((self.left.principal_part(), right))
    }

    /// Whether the element is exactly zero wherever it is known.
    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.iter().all(|e| e.is_zero())
    }
}

/// The pairing `β_{(n,λ)}((a1,[a2]),(b1,[b2])) = res_0 (β(a1,b1) − β(a2,b2)) / (z^n λ)`.
#[derive(Clone, Debug)]
pub struct ResiduePairing {
    metric: MetricAlgebra,
    n: usize,
    lambda: Series1,
    lambda_inv: Series1,
}

impl ResiduePairing {
    pub fn new(metric: MetricAlgebra, n: usize, lambda: Series1) -> Result<Self> {
        let lambda_inv = lambda.invert_unit(lambda.trunc())?;
        Ok(ResiduePairing {
            metric,
            n,
            lambda,
            lambda_inv,
        })
    }

    /// `λ = 1`, known exactly through degree `trunc`.
    pub fn standard(metric: MetricAlgebra, n: usize, trunc: u32) -> Self {
        Self::new(metric, n, Series1::one(trunc)).expect("1 is a unit")
    }

    pub fn metric(&self) -> &MetricAlgebra {
        &self.metric
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &Series1 {
        &self.lambda
    }

    pub fn pair(&self, x: &DnElement, y: &DnElement) -> Result<Scalar> {
        x.compatible(y)?;
        if x.n != self.n || x.d != self.metric.dim() {
            return Err(Error::ParameterMismatch(format!(
                "pairing for D_{} over dim {}, element in D_{} over dim {}",
                self.n,
                self.metric.dim(),
                x.n,
                x.d
            )));
        }
        let f = x.left.mul_with(&y.left, |a, b| self.metric.beta(a, b));
        let mut h = f;
        for (i, a) in x.right.iter().enumerate() {
            for (j, b) in y.right.iter().enumerate().take(self.n - i) {
                let v = self.metric.beta(a, b);
                if !v.is_zero() {
                    h.add_term((i + j) as i64, &-v);
                }
            }
        }
        let top = self.n as i64 - 1;
        if !h.knows(top) {
            return Err(Error::WindowTooSmall(format!(
                "pairing known through degree {:?}, residue needs degree {top}",
                h.hi()
            )));
        }
        let Some(v) = h.valuation() else {
            return Ok(Scalar::zero());
        };
        if v > top {
            return Ok(Scalar::zero());
        }
        let need = (top - v) as u32;
        if self.lambda_inv.trunc() < need {
            return Err(Error::WindowTooSmall(format!(
                "1/λ known through {}, residue needs degree {need}",
                self.lambda_inv.trunc()
            )));
        }
        let mut acc = Scalar::zero();
        for (e, c) in h.terms().range(..=top) {
            let m = self.lambda_inv.coeff_at((top - e) as u32);
            if !m.is_zero() {
                acc += &(c * &m);
            }
        }
        Ok(acc)
    }
}

/// Coefficient of `y^j` in the expansion of `1/(x−y)` inside `D_n(k)`, as a
/// pair (left Laurent, right polynomial) over scalars:
/// `(0, −[x^{−j−1}])` for `−n ≤ j < 0` and `(x^{−j−1}, 0)` for `j ≥ 0`.
pub fn pole_coefficient(n: usize, j: i64) -> (Laurent<Scalar>, Vec<Scalar>) {
    let mut right = vec![Scalar::zero(); n];
    if j < 0 {
        if j >= -(n as i64) {
            right[(-j - 1) as usize] = Scalar::from_int(-1);
        }
        (Laurent::zero(), right)
    } else {
        (Laurent::monomial(-j - 1, Scalar::one()), right)
    }
}

/// The expansion `Σ_{k<n} (0, −[x]^{n−k−1}) y^{k−n} + Σ_{k≥0} (x^{−k−1}, 0) y^k`
/// for `y`-exponents `−n ≤ j ≤ max_j`, as elements of `D_n(k)` (`k = matrix:1`).
pub fn pole_expansion(n: usize, max_j: i64) -> Vec<(i64, DnElement)> {
    let one = |c: Scalar| Element::from_vec(vec![c]);
    (-(n as i64)..=max_j)
        .map(|j| {
            let (l, r) = pole_coefficient(n, j);
            let left = l.map(|c| one(c.clone()));
            let right = r.into_iter().map(one).collect();
            (j, DnElement::new(1, n, left, right).expect("dimension 1"))
        })
        .collect()
}

/// Check `((x,[x]) − y) · expansion = (1,1)` for all `y`-exponents `j` with
/// `−n ≤ j ≤ max_j`; returns the first failing exponent.
pub fn pole_expansion_failure(n: usize, max_j: i64) -> Option<i64> {
    let k = MetricAlgebra::matrix(1).expect("matrix:1");
    let alg = k.algebra();
    let one = Element::from_vec(vec![Scalar::one()]);
    let x = DnElement::diagonal_monomial(n, &one, 1);
    let exp: BTreeMap<i64, DnElement> = pole_expansion(n, max_j).into_iter().collect();
    let zero = DnElement::zero(1, n);
    let unit = DnElement::diagonal_monomial(n, &one, 0);
    for j in -(n as i64)..=max_j {
        let cur = exp.get(&j).unwrap_or(&zero);
        let prev = exp.get(&(j - 1)).unwrap_or(&zero);
        let got = x.mul(alg, cur).and_then(|p| p.sub(prev)).ok()?;
        let want = if j == 0 { &unit } else { &zero };
        if &got != want {
            return Some(j);
        }
    }
    None
}

/// `w_{k,i}`: `(0, −[b_i* x^{n−1−k}])` for `k < n`, `(b_i* x^{n−1−k}, 0)` for `k ≥ n`.
pub fn w_generator(m: &MetricAlgebra, n: usize, k: usize, i: usize) -> Result<DnElement> {
    let d = m.dim();
    if i >= d {
        return Err(Error::IndexOutOfRange(format!("basis index {i} ≥ dimension {d}")));
    }
    let dual = &m.dual_basis()[i];
    let e = n as i64 - 1 - k as i64;
    if k < n {
        let mut right = vec![Element::zeros(d); n];
        right[e as usize] = dual.neg();
        DnElement::new(d, n, Laurent::zero(), right)
    } else {
        DnElement::new(d, n, Laurent::monomial(e, dual.clone()), vec![])
    }
}

/// The family `{λ w_{k,i} + t_{k,i}}` with polynomial tails `t_{k,i} ∈ A[z]`
/// that vanish for `k ≥ tail_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WBasis {
    pub d: usize,
    pub n: usize,
    pub tail_bound: usize,
    /// Tails keyed by `(k, i)`; missing keys are zero.
    pub tails: BTreeMap<(usize, usize), Laurent<Element>>,
    /// `None` means `λ = 1`.
    pub lambda: Option<Series1>,
}

impl WBasis {
    pub fn zero_tails(d: usize, n: usize) -> Self {
        WBasis {
            d,
            n,
            tail_bound: 0,
            tails: BTreeMap::new(),
            lambda: None,
        }
    }

    pub fn tail(&self, k: usize, i: usize) -> Laurent<Element> {
        self.tails.get(&(k, i)).cloned().unwrap_or_else(Laurent::zero)
    }

    pub fn set_tail(&mut self, k: usize, i: usize, t: Laurent<Element>) {
        if t.is_zero() {
            self.tails.remove(&(k, i));
        } else {
            self.tails.insert((k, i), t);
            self.tail_bound = self.tail_bound.max(k + 1);
        }
    }

    /// `λ w_{k,i} + (t_{k,i}, [t_{k,i}])`.
    pub fn generator(&self, m: &MetricAlgebra, k: usize, i: usize) -> Result<DnElement> {
        if m.dim() != self.d {
            return Err(Error::ParameterMismatch(format!(
                "basis over dimension {}, algebra of dimension {}",
                self.d,
                m.dim()
            )));
        }
        let w = w_generator(m, self.n, k, i)?;
        let w = match &self.lambda {
            Some(l) => w.scalar_series_mul(l)?,
            None => w,
        };
        w.add(&DnElement::diagonal(self.n, &self.tail(k, i), self.d))
    }
}

/// Which generators a windowed check covers: `g_{k,i}` with leading pole
/// degree `n−1−k ≥ lo`, i.e. `k ≤ n−1−lo`; `hi` bounds the diagonal monomials
/// `b_i z^m` (`m ≤ hi`) paired against in Manin-triple checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeWindow {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeWindow {
    pub fn new(lo: i64, hi: i64) -> Self {
        DegreeWindow { lo, hi }
    }

    /// Number of generator indices `k` covered for pole order `n`.
    pub fn generator_count(&self, n: usize) -> usize {
        (n as i64 - self.lo).max(0) as usize
    }
}

/// One row of the complementarity table: generators with `k < n − degree`
/// against coordinates of the quotient in degrees `[degree, n−1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankRow {
    pub degree: i64,
    pub rank: usize,
    pub expected: usize,
}

/// `((k,i),(l,j))` generator indices with a witness value.
pub type PairWitness<T> = ((usize, usize), (usize, usize), T);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub window: DegreeWindow,
    pub isotropic: bool,
    pub complementary: bool,
    pub subalgebra: bool,
    /// First pair `((k,i),(l,j))` with nonzero pairing, and the value.
    pub first_non_isotropic: Option<PairWitness<Scalar>>,
    pub rank_table: Vec<RankRow>,
    /// First pair whose product leaves the span, with the offending degree.
    pub first_non_closed: Option<PairWitness<i64>>,
}

impl SpanReport {
    pub fn all_hold(&self) -> bool {
        self.isotropic && self.complementary && self.subalgebra
    }
}

/// Coordinates of the quotient of `D_n(A)` by the diagonal `A[[z]]` for
/// generator levels `k < levels`: right part (degrees `0..n`), then principal
/// degrees `−1, −2, ..., n − levels`.
fn quotient_coords(x: &DnElement, levels: usize) -> Result<Option<Vec<Scalar>>> {
    let (principal, right) = x.quotient()?;
    let d = x.dim();
    let n = x.n();
    let mut v = Vec::with_capacity(levels * d);
    for e in &right {
        v.extend(e.data().iter().cloned());
    }
    let lowest = n as i64 - levels as i64;
    if let Some(val) = principal.valuation() {
        if val < lowest {
            return Ok(None);
        }
    }
    for deg in (lowest..0).rev() {
        match principal.coeff(deg) {
            Some(c) => v.extend(c.data().iter().cloned()),
            None => v.extend(std::iter::repeat_n(Scalar::zero(), d)),
        }
    }
    Ok(Some(v))
}

/// Decompose `x` along the generators modulo nothing: finds `c` with
/// `π(x) = Σ c_{k,i} π(g_{k,i})` and returns the residual `x − Σ c g`.
struct Decomposer {
    levels: usize,
    gens: Vec<DnElement>,
    inverse: Matrix,
}

impl Decomposer {
    fn new(w: &WBasis, m: &MetricAlgebra, levels: usize) -> Result<Option<Self>> {
        let d = m.dim();
        let mut gens = Vec::with_capacity(levels * d);
        let mut rows = Vec::with_capacity(levels * d);
        for k in 0..levels {
            for i in 0..d {
                let g = w.generator(m, k, i)?;
                let coords = quotient_coords(&g, levels)?.expect("generator pole order bounded by its level");
                rows.push(coords);
                gens.push(g);
            }
        }
        let mat = Matrix::from_rows(rows, levels * d);
        Ok(mat.inverse().map(|inverse| Decomposer { levels, gens, inverse }))
    }

    fn residual(&self, x: &DnElement) -> Result<Option<DnElement>> {
        let Some(v) = quotient_coords(x, self.levels)? else {
            return Ok(None);
        };
        // Row vector v = c · M, so c = v · M^{-1}.
        let c = self.inverse.transpose().mul_vec(&v);
        let mut r = x.clone();
        for (ci, g) in c.iter().zip(&self.gens) {
            if !ci.is_zero() {
                r = r.sub(&g.scale(ci))?;
            }
        }
        Ok(Some(r))
    }
}

/// Lowest degree at which `x` is nonzero (left or right component).
fn first_nonzero_degree(x: &DnElement) -> Option<i64> {
    let l = x.left().valuation();
    let r = x.right().iter().position(|e| !e.is_zero()).map(|p| p as i64);
    match (l, r) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// Isotropy, complementarity to `A[[z]]`, and closure of the span of `W`
/// within the window.
pub fn wbasis_span_check(w: &WBasis, pairing: &ResiduePairing, window: DegreeWindow) -> Result<SpanReport> {
    let m = pairing.metric();
    let n = w.n;
    if n != pairing.n() {
        return Err(Error::ParameterMismatch(format!(
            "basis for D_{n}, pairing for D_{}",
            pairing.n()
        )));
    }
    let d = m.dim();
    let count = window.generator_count(n);
    if count == 0 {
        return Err(Error::WindowTooSmall(format!(
            "window lower bound {} covers no generators",
            window.lo
        )));
    }
    let gens: Vec<((usize, usize), DnElement)> = (0..count)
        .flat_map(|k| (0..d).map(move |i| (k, i)))
        .map(|(k, i)| w.generator(m, k, i).map(|g| ((k, i), g)))
        .collect::<Result<_>>()?;

    let mut first_non_isotropic = None;
    'iso: for (a, (ka, ga)) in gens.iter().enumerate() {
        for (kb, gb) in &gens[a..] {
            let v = pairing.pair(ga, gb)?;
            if !v.is_zero() {
                first_non_isotropic = Some((*ka, *kb, v));
                break 'iso;
            }
        }
    }

    let mut rank_table = Vec::new();
    for level in (n.max(1)..=count).filter(|&l| l >= 1) {
        let deg = n as i64 - level as i64;
        let rows: Vec<Vec<Scalar>> = gens
            .iter()
            .filter(|((k, _), _)| *k < level)
            .map(|(_, g)| quotient_coords(g, level).map(|c| c.expect("bounded pole")))
            .collect::<Result<_>>()?;
        let rank = Matrix::from_rows(rows, level * d).rank();
        rank_table.push(RankRow {
            degree: deg,
            rank,
            expected: level * d,
        });
    }
    let complementary = rank_table.iter().all(|r| r.rank == r.expected);

    let mut first_non_closed = None;
    if complementary {
        let mut decomposers: BTreeMap<usize, Option<Decomposer>> = BTreeMap::new();
        'closure: for (a, (ka, ga)) in gens.iter().enumerate() {
            for (kb, gb) in &gens[a..] {
                for (p, (x, y)) in [(ga, gb), (gb, ga)].into_iter().enumerate() {
                    if p == 1 && ka == kb {
                        continue;
                    }
                    let prod = x.mul(m.algebra(), y)?;
                    let val = prod.left().valuation().unwrap_or(0).min(0);
                    let levels = (n as i64 - val).max(n as i64).max(1) as usize;
                    if let std::collections::btree_map::Entry::Vacant(e) = decomposers.entry(levels) {
                        e.insert(Decomposer::new(w, m, levels)?);
                    }
                    let Some(dec) = decomposers[&levels].as_ref() else {
                        first_non_closed = Some((*ka, *kb, val));
                        break 'closure;
                    };
                    match dec.residual(&prod)? {
                        Some(r) if r.is_zero() => {}
                        Some(r) => {
                            first_non_closed = Some((*ka, *kb, first_nonzero_degree(&r).unwrap_or(0)));
                            break 'closure;
                        }
                        None => {
                            first_non_closed = Some((*ka, *kb, val));
                            break 'closure;
                        }
                    }
                }
            }
        }
    }

    Ok(SpanReport {
        window,
        isotropic: first_non_isotropic.is_none(),
        complementary,
        subalgebra: complementary && first_non_closed.is_none(),
        first_non_isotropic,
        rank_table,
        first_non_closed,
    })
}

/// The trace extension `R_n`: pairs `(a, [b])` in `k((z)) × k[z]/z^n` with
/// trace `t_{(n,λ)}(a,[b]) = res_0 (a − b)/(z^n λ)`.
#[derive(Clone, Debug)]
pub struct TraceExtensionRn {
    pairing: ResiduePairing,
}

impl TraceExtensionRn {
    pub fn new(n: usize, lambda: Series1) -> Result<Self> {
        let k = MetricAlgebra::matrix(1)?;
        Ok(TraceExtensionRn {
            pairing: ResiduePairing::new(k, n, lambda)?,
        })
    }

    pub fn element(&self, a: Laurent<Scalar>, b: Vec<Scalar>) -> DnElement {
        let one = |c: &Scalar| Element::from_vec(vec![c.clone()]);
        DnElement::new(1, self.pairing.n(), a.map(one), b.iter().map(one).collect()).expect("dimension 1")
    }

    pub fn mul(&self, x: &DnElement, y: &DnElement) -> Result<DnElement> {
        x.mul(self.pairing.metric().algebra(), y)
    }

    pub fn trace(&self, x: &DnElement) -> Result<Scalar> {
        let one = Element::from_vec(vec![Scalar::one()]);
        let unit = DnElement::diagonal_monomial(self.pairing.n(), &one, 0);
        self.pairing.pair(x, &unit)
    }
}

/// The trace extension `R_∞ = k[[z]] ⊕ Span{a_k}`, truncated: power-series
/// part through `z^bound` and `a_0..a_bound`. Multiplication: `a_j a_k = 0`,
/// `a_j z^k = a_{j−k}` for `k ≤ j` (else 0); trace `t(a_j) = δ_{j0}`, zero on
/// `k[[z]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RInfinityElement {
    pub series: Vec<Scalar>,
    pub a: Vec<Scalar>,
}

impl RInfinityElement {
    pub fn zero(bound: usize) -> Self {
        RInfinityElement {
            series: vec![Scalar::zero(); bound + 1],
            a: vec![Scalar::zero(); bound + 1],
        }
    }

    pub fn z_power(bound: usize, k: usize) -> Self {
        let mut e = Self::zero(bound);
        e.series[k] = Scalar::one();
        e
    }

    pub fn a_k(bound: usize, k: usize) -> Self {
        let mut e = Self::zero(bound);
        e.a[k] = Scalar::one();
        e
    }

    pub fn add(&self, other: &Self) -> Self {
        RInfinityElement {
            series: self.series.iter().zip(&other.series).map(|(a, b)| a + b).collect(),
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        }
    }

    /// Product. The power-series part is truncated at the bound; the
    /// `a`-part is exact because `a_j z^k` only lowers indices.
    pub fn mul(&self, other: &Self) -> Self {
        let b = self.series.len() - 1;
        let mut out = Self::zero(b);
        for (i, x) in self.series.iter().enumerate() {
            for (j, y) in other.series.iter().enumerate() {
                if i + j <= b && !x.is_zero() && !y.is_zero() {
                    out.series[i + j] += &(x * y);
                }
            }
        }
        for (f, g) in [(self, other), (other, self)] {
            for (j, aj) in f.a.iter().enumerate() {
                if aj.is_zero() {
                    continue;
                }
                for (k, zk) in g.series.iter().enumerate().take(j + 1) {
                    if !zk.is_zero() {
                        out.a[j - k] += &(aj * zk);
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        self.a[0].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_el(c: i64) -> Element {
        Element::from_vec(vec![Scalar::from_int(c)])
    }

    #[test]
    fn dn_products() {
        let k = MetricAlgebra::matrix(1).unwrap();
        let alg = k.algebra();
        let zinv = DnElement::new(1, 1, Laurent::monomial(-1, scalar_el(1)), vec![]).unwrap();
        let sq = zinv.mul(alg, &zinv).unwrap();
        assert_eq!(sq.left(), &Laurent::monomial(-2, scalar_el(1)));
        let one = DnElement::diagonal_monomial(1, &scalar_el(1), 0);
        assert_eq!(one.mul(alg, &one).unwrap(), one);
        let z = DnElement::new(1, 2, Laurent::zero(), vec![scalar_el(0), scalar_el(1)]).unwrap();
        assert!(z.mul(alg, &z).unwrap().is_zero());
        let other = DnElement::zero(1, 3);
        assert!(matches!(z.mul(alg, &other), Err(Error::ParameterMismatch(_))));
    }

    #[test]
    fn residue_pairing_examples() {
        let k = MetricAlgebra::matrix(1).unwrap();
        let p0 = ResiduePairing::standard(k.clone(), 0, 4);
        let x = DnElement::new(1, 0, Laurent::monomial(-1, scalar_el(1)), vec![]).unwrap();
        let y = DnElement::diagonal_monomial(0, &scalar_el(1), 0);
        assert_eq!(p0.pair(&x, &y).unwrap(), Scalar::one());
        let p1 = ResiduePairing::standard(k, 1, 4);
        let w = DnElement::new(1, 1, Laurent::zero(), vec![scalar_el(-1)]).unwrap();
        assert_eq!(p1.pair(&w, &w).unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn pole_expansion_identity() {
        for n in 0..=3 {
            assert_eq!(pole_expansion_failure(n, 6), None, "n = {n}");
        }
        let e = pole_expansion(1, 2);
        assert_eq!(e[0].0, -1);
        assert_eq!(e[0].1.right(), &[scalar_el(-1)]);
    }

    #[test]
    fn w_generator_shapes() {
        let k = MetricAlgebra::matrix(1).unwrap();
        let w0 = w_generator(&k, 1, 0, 0).unwrap();
        assert!(w0.left().is_zero());
        assert_eq!(w0.right(), &[scalar_el(-1)]);
        let w2 = w_generator(&k, 1, 2, 0).unwrap();
        assert_eq!(w2.left(), &Laurent::monomial(-2, scalar_el(1)));
        assert!(matches!(w_generator(&k, 1, 0, 3), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn zero_tail_span_report() {
        let k = MetricAlgebra::matrix(1).unwrap();
        let w = WBasis::zero_tails(1, 1);
        let p = ResiduePairing::standard(k, 1, 8);
        let rep = wbasis_span_check(&w, &p, DegreeWindow::new(-4, 4)).unwrap();
        assert!(rep.subalgebra);
        assert!(rep.complementary);
        assert!(!rep.isotropic);
        let (k0, _, v) = rep.first_non_isotropic.unwrap();
        assert_eq!(k0, (0, 0));
        assert_eq!(v, Scalar::from_int(-1));
    }

    #[test]
    fn r_infinity_table() {
        let b = 4;
        let a2 = RInfinityElement::a_k(b, 2);
        let z = RInfinityElement::z_power(b, 1);
        assert_eq!(a2.mul(&z), RInfinityElement::a_k(b, 1));
        assert_eq!(a2.mul(&RInfinityElement::z_power(b, 3)), RInfinityElement::zero(b));
        assert_eq!(a2.mul(&RInfinityElement::a_k(b, 0)), RInfinityElement::zero(b));
        assert_eq!(a2.mul(&RInfinityElement::z_power(b, 2)).trace(), Scalar::one());
    }

    #[test]
    fn rn_trace() {
        let r1 = TraceExtensionRn::new(1, Series1::one(4)).unwrap();
        let x = r1.element(Laurent::monomial(-1, Scalar::one()), vec![Scalar::zero()]);
        // res_0 z^{-1} · z^{-1} = 0; res_0 of (0 − 1)/z = −1
        assert_eq!(r1.trace(&x).unwrap(), Scalar::zero());
        let y = r1.element(Laurent::zero(), vec![Scalar::one()]);
        assert_eq!(r1.trace(&y).unwrap(), Scalar::from_int(-1));
        let xy = r1.mul(&x, &y).unwrap();
        assert!(xy.is_zero());
    }
}
