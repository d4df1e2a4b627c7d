//! Associative Stolin pairs for `M_n` and the bijections with rational and
//! quasi-rational solutions through the ε-double `D_ε = A ⊕ εA`.

use crate::algebra::{Algebra, MetricAlgebra};
use crate::cybe::{series_to_subspace, subspace_to_series, StandardFormSeries};
use crate::dnalg::WBasis;
use crate::error::{Error, Result};
use crate::linalg::{coordinates, span_basis, Matrix};
use crate::scalar::Scalar;
use crate::series::Laurent;
use crate::tensor::Element;

/// `d_j − d_i` for `d_k = diag(1,…,1,z,…,z)` (`k` trailing `z`s): the
/// exponent shift of entry `(i, j)` under `X ↦ d_k^{-1} X d_k`.
fn shift(n: usize, k: usize, e: usize) -> i64 {
    let d = |i: usize| i64::from(i >= n - k);
    d(e % n) - d(e / n)
}

fn check_nk(n: usize, k: usize, max_k: usize) -> Result<()> {
    if n == 0 || k > max_k {
        return Err(Error::IndexOutOfRange(format!("type k = {k} for n = {n}")));
    }
    Ok(())
}

/// Basis of the block-parabolic `P_k ⊆ M_n` (matrix units with `shift ≥ 0`).
pub fn parabolic_p_k(n: usize, k: usize) -> Result<Vec<Element>> {
    check_nk(n, k, n.saturating_sub(1))?;
    Ok((0..n * n)
        .filter(|&e| shift(n, k, e) >= 0)
        .map(|e| Element::basis(n * n, e))
        .collect())
}

/// Basis of `P_k^⊥` under the trace form: the upper-right block.
pub fn parabolic_p_k_perp(n: usize, k: usize) -> Result<Vec<Element>> {
    check_nk(n, k, n.saturating_sub(1))?;
    Ok((0..n * n)
        .filter(|&e| shift(n, k, e) == 1)
        .map(|e| Element::basis(n * n, e))
        .collect())
}

/// The order `N_k = d_k^{-1} M_n[z^{-1}] d_k ⊆ M_n((z))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderN {
    pub n: usize,
    pub k: usize,
}

impl OrderN {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_nk(n, k, n)?;
        Ok(OrderN { n, k })
    }

    /// Highest power of `z` allowed in entry `e`.
    pub fn max_exponent(&self, e: usize) -> i64 {
        shift(self.n, self.k, e)
    }

    /// Membership, decided coefficient-wise; needs the series known through degree 1.
    pub fn contains(&self, f: &Laurent<Element>) -> Result<bool> {
        if let Some(hi) = f.hi() {
            if hi < 1 {
                return Err(Error::WindowTooSmall(format!(
                    "membership in N_{} needs coefficients through z^1, known through z^{hi}",
                    self.k
                )));
            }
        }
        Ok(self.first_violation(f).is_none())
    }

    /// First `(entry, exponent)` outside the order.
    pub fn first_violation(&self, f: &Laurent<Element>) -> Option<(usize, i64)> {
        f.terms().iter().find_map(|(m, x)| {
            x.data()
                .iter()
                .enumerate()
                .find(|(e, c)| !c.is_zero() && *m > self.max_exponent(*e))
                .map(|(e, _)| (e, *m))
        })
    }

    /// Spanning monomials `e z^m` of `N_k` with `m ≥ lo`, as `(entry, exponent)`.
    pub fn spanning_family(&self, lo: i64) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for e in 0..self.n * self.n {
            let top = self.max_exponent(e);
            for m in (lo..=top).rev() {
                out.push((e, m));
            }
        }
        out
    }

    /// Image of `e z^m` in `D_ε = N_k / z^{-2}N_k`.
    pub fn to_epsilon(&self, e: usize, m: i64) -> Element {
        let d = self.n * self.n;
        match self.max_exponent(e) - m {
            0 => Element::basis(2 * d, e),
            1 => Element::basis(2 * d, d + e),
            _ => Element::zeros(2 * d),
        }
    }

    /// Image of `A[[z]] ∩ N_k` in `D_ε`.
    pub fn regular_image(&self) -> Vec<Element> {
        let d = self.n * self.n;
        let rows: Vec<Vec<Scalar>> = self
            .spanning_family(0)
            .into_iter()
            .map(|(e, m)| self.to_epsilon(e, m).into_data())
            .collect();
        span_basis(&rows, 2 * d).into_iter().map(Element::from_vec).collect()
    }
}

/// `D_ε = A ⊕ εA` with `β_ε(a₁+εa₂, b₁+εb₂) = β(a₁,b₂) + β(a₂,b₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonDouble {
    base: MetricAlgebra,
    metric: MetricAlgebra,
}

impl EpsilonDouble {
    pub fn new(base: &MetricAlgebra) -> Result<Self> {
        let d = base.dim();
        let e = 2 * d;
        let alg = base.algebra();
        let mut s = vec![Scalar::zero(); e * e * e];
        let idx = |i: usize, j: usize, k: usize| (i * e + j) * e + k;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = alg.structure_constant(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    s[idx(i, j, k)] = c.clone();
                    s[idx(i, d + j, d + k)] = c.clone();
                    s[idx(d + i, j, d + k)] = c.clone();
                }
            }
        }
        let mut labels: Vec<String> = alg.labels().to_vec();
        labels.extend(alg.labels().iter().map(|l| format!("ε{l}")));
        let algebra = Algebra::new(e, s, Some(labels))?;
        let g = base.gram();
        let gram = Matrix::from_fn(e, e, |i, j| {
            if (i < d) != (j < d) {
                g.get(i % d, j % d).clone()
            } else {
                Scalar::zero()
            }
        });
        let metric = MetricAlgebra::new(format!("eps-double({})", base.name()), algebra, gram)?;
        Ok(EpsilonDouble {
            base: base.clone(),
            metric,
        })
    }

    pub fn base(&self) -> &MetricAlgebra {
        &self.base
    }

    pub fn metric(&self) -> &MetricAlgebra {
        &self.metric
    }

    /// `a + εb`.
    pub fn element(&self, a: &Element, b: &Element) -> Element {
        let mut v = a.data().to_vec();
        v.extend_from_slice(b.data());
        Element::from_vec(v)
    }

    pub fn parts(&self, x: &Element) -> (Element, Element) {
        let d = self.base.dim();
        (
            Element::from_vec(x.data()[..d].to_vec()),
            Element::from_vec(x.data()[d..].to_vec()),
        )
    }
}

/// An associative Stolin pair `(S, χ)` of type `k` in `M_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StolinPair {
    pub n: usize,
    pub k: usize,
    /// Basis of `S`, as coordinate vectors in the matrix units `e_ij` (index `i*n+j`).
    pub s_basis: Vec<Element>,
    /// Gram matrix of `χ` on `s_basis`.
    pub chi: Matrix,
}

impl StolinPair {
    pub fn new(n: usize, k: usize, s_basis: Vec<Element>, chi: Matrix) -> Result<Self> {
        check_nk(n, k, n.saturating_sub(1))?;
        if let Some(b) = s_basis.iter().find(|b| b.dim() != n * n) {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: b.dim(),
            });
        }
        if chi.rows() != s_basis.len() || chi.cols() != s_basis.len() {
            return Err(Error::DimensionMismatch {
                expected: s_basis.len(),
                got: chi.rows().max(chi.cols()),
            });
        }
        let rows: Vec<Vec<Scalar>> = s_basis.iter().map(|b| b.data().to_vec()).collect();
        if span_basis(&rows, n * n).len() != s_basis.len() {
            return Err(Error::InvalidPair("basis of S is linearly dependent".into()));
        }
        Ok(StolinPair { n, k, s_basis, chi })
    }

    pub fn metric(&self) -> Result<MetricAlgebra> {
        MetricAlgebra::matrix(self.n)
    }

    pub fn dim(&self) -> usize {
        self.s_basis.len()
    }

    /// Coordinates of `a` in `s_basis`, if `a ∈ S`.
    pub fn coords(&self, a: &Element) -> Option<Vec<Scalar>> {
        let rows: Vec<Vec<Scalar>> = self.s_basis.iter().map(|b| b.data().to_vec()).collect();
        coordinates(&rows, a.data())
    }

    /// `χ(a, b)` for `a, b ∈ S`.
    pub fn chi_of(&self, a: &Element, b: &Element) -> Option<Scalar> {
        let x = self.coords(a)?;
        let y = self.coords(b)?;
        Some(form(&self.chi, &x, &y))
    }

    /// The same pair written in the row-reduced basis of `S`.
    pub fn canonical(&self) -> StolinPair {
        let rows: Vec<Vec<Scalar>> = self.s_basis.iter().map(|b| b.data().to_vec()).collect();
        let basis: Vec<Element> = span_basis(&rows, self.n * self.n)
            .into_iter()
            .map(Element::from_vec)
            .collect();
        let m = basis.len();
        let coords: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|b| self.coords(b).expect("row-reduced basis spans S"))
            .collect();
        let chi = Matrix::from_fn(m, m, |i, j| form(&self.chi, &coords[i], &coords[j]));
        StolinPair {
            n: self.n,
            k: self.k,
            s_basis: basis,
            chi,
        }
    }
}

fn form(g: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let gy = g.mul_vec(y);
    x.iter().zip(&gy).map(|(a, b)| a * b).sum()
}

/// Per-invariant outcome of [`check_stolin_pair`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StolinReport {
    pub closed: bool,
    pub spans_with_p_k: bool,
    pub skew: bool,
    pub connes: bool,
    /// First basis triple `(a₁, a₂, a₃)` violating the cocycle identity.
    pub first_connes_failure: Option<[usize; 3]>,
    pub intersection_dim: usize,
    pub nondegenerate_on_intersection: bool,
}

impl StolinReport {
    pub fn is_valid(&self) -> bool {
        self.closed && self.spans_with_p_k && self.skew && self.connes && self.nondegenerate_on_intersection
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        if !self.closed {
            Some("S is not closed under multiplication")
        } else if !self.spans_with_p_k {
            Some("S + P_k ≠ A")
        } else if !self.skew {
            Some("χ is not skew-symmetric")
        } else if !self.connes {
            Some("χ is not a Connes 2-cocycle")
        } else if !self.nondegenerate_on_intersection {
            Some("χ is degenerate on S ∩ P_k")
        } else {
            None
        }
    }
}

/// Basis of `S ∩ P_k`, as coordinate vectors in `p.s_basis`.
fn intersection_coords(p: &StolinPair) -> Vec<Vec<Scalar>> {
    let n = p.n;
    let outside: Vec<usize> = (0..n * n).filter(|&e| shift(n, p.k, e) < 0).collect();
    let m = Matrix::from_fn(outside.len(), p.dim(), |r, c| p.s_basis[c].data()[outside[r]].clone());
    if outside.is_empty() {
        return (0..p.dim())
            .map(|i| {
                (0..p.dim())
                    .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                    .collect()
            })
            .collect();
    }
    m.nullspace()
}

fn restricted_gram(chi: &Matrix, basis: &[Vec<Scalar>]) -> Matrix {
    Matrix::from_fn(basis.len(), basis.len(), |i, j| form(chi, &basis[i], &basis[j]))
}

pub fn check_stolin_pair(p: &StolinPair) -> Result<StolinReport> {
    let metric = p.metric()?;
    let alg = metric.algebra();
    let n = p.n;
    let m = p.dim();
    let closed = p
        .s_basis
        .iter()
        .all(|a| p.s_basis.iter().all(|b| p.coords(&alg.mul(a, b)).is_some()));
    let mut rows: Vec<Vec<Scalar>> = p.s_basis.iter().map(|b| b.data().to_vec()).collect();
    rows.extend(parabolic_p_k(n, p.k)?.into_iter().map(|e| e.into_data()));
    let spans_with_p_k = span_basis(&rows, n * n).len() == n * n;
    let skew = (0..m).all(|i| (0..m).all(|j| (p.chi.get(i, j) + p.chi.get(j, i)).is_zero()));

    let mut first_connes_failure = None;
    if closed {
        let chi = |x: &Element, y: &Element| p.chi_of(x, y).expect("closed");
        'outer: for i in 0..m {
            for j in 0..m {
                for l in 0..m {
                    let (a1, a2, a3) = (&p.s_basis[i], &p.s_basis[j], &p.s_basis[l]);
                    let v = chi(&alg.mul(a1, a2), a3) + chi(&alg.mul(a2, a3), a1) + chi(&alg.mul(a3, a1), a2);
                    if !v.is_zero() {
                        first_connes_failure = Some([i, j, l]);
                        break 'outer;
                    }
                }
            }
        }
    }
    let inter = intersection_coords(p);
    let g = restricted_gram(&p.chi, &inter);
    Ok(StolinReport {
        closed,
        spans_with_p_k,
        skew,
        connes: closed && first_connes_failure.is_none(),
        first_connes_failure,
        intersection_dim: inter.len(),
        nondegenerate_on_intersection: !g.det().is_zero() || inter.is_empty(),
    })
}

fn require_valid(p: &StolinPair) -> Result<()> {
    let rep = check_stolin_pair(p)?;
    match rep.first_failure() {
        Some(why) => Err(Error::InvalidPair(why.into())),
        None => Ok(()),
    }
}

/// The Lagrangian subalgebra `V = {a + εf̃(a)} ⊕ εS^⊥ ⊆ D_ε` of a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonLagrangian {
    pub double: EpsilonDouble,
    pub basis: Vec<Element>,
    /// `f̃(s)` for each element of the pair's `s_basis`.
    pub f_tilde: Vec<Element>,
    pub subalgebra: bool,
    pub lagrangian: bool,
    /// `D_ε = (P_k ⊕ εP_k^⊥) ⊕ V`.
    pub complementary: bool,
}

impl EpsilonLagrangian {
    pub fn holds(&self) -> bool {
        self.subalgebra && self.lagrangian && self.complementary
    }

    pub fn contains(&self, x: &Element) -> bool {
        let rows: Vec<Vec<Scalar>> = self.basis.iter().map(|b| b.data().to_vec()).collect();
        coordinates(&rows, x.data()).is_some()
    }
}

/// `S^⊥` under the trace form.
fn s_perp(metric: &MetricAlgebra, s: &[Element]) -> Vec<Element> {
    let d = metric.dim();
    if s.is_empty() {
        return (0..d).map(|i| Element::basis(d, i)).collect();
    }
    let g = metric.gram();
    let rows: Vec<Vec<Scalar>> = s.iter().map(|x| g.mul_vec(x.data())).collect();
    Matrix::from_rows(rows, d)
        .nullspace()
        .into_iter()
        .map(Element::from_vec)
        .collect()
}

/// `f̃(s_j)`, chosen in `span{G^{-1}s}`, a complement of `S^⊥`, with
/// `β(f̃(s_j), s_l) = χ(s_j, s_l)`.
fn f_tilde(metric: &MetricAlgebra, p: &StolinPair) -> Result<Vec<Element>> {
    let m = p.dim();
    let ginv = metric.gram_inverse();
    let reps: Vec<Vec<Scalar>> = p.s_basis.iter().map(|s| ginv.mul_vec(s.data())).collect();
    // β(G^{-1}s_a, s_l) = s_a·s_l
    let e = Matrix::from_fn(m, m, |a, l| {
        p.s_basis[a]
            .data()
            .iter()
            .zip(p.s_basis[l].data())
            .map(|(x, y)| x * y)
            .sum()
    });
    (0..m)
        .map(|j| {
            let rhs: Vec<Scalar> = (0..m).map(|l| p.chi.get(j, l).clone()).collect();
            let mu = e
                .transpose()
                .solve_unique(&rhs)
                .ok_or_else(|| Error::InvalidPair("degenerate basis of S".into()))?;
            let mut out = Element::zeros(metric.dim());
            for (a, c) in mu.iter().enumerate() {
                out.add_assign(&Element::from_vec(reps[a].clone()).scale(c));
            }
            Ok(out)
        })
        .collect()
}

pub fn pair_to_lagrangian(p: &StolinPair) -> Result<EpsilonLagrangian> {
    require_valid(p)?;
    let metric = p.metric()?;
    let double = EpsilonDouble::new(&metric)?;
    let d = metric.dim();
    let ft = f_tilde(&metric, p)?;
    let zero = Element::zeros(d);
    let mut basis: Vec<Element> = p.s_basis.iter().zip(&ft).map(|(s, f)| double.element(s, f)).collect();
    basis.extend(s_perp(&metric, &p.s_basis).iter().map(|x| double.element(&zero, x)));

    let dm = double.metric();
    let rows: Vec<Vec<Scalar>> = basis.iter().map(|b| b.data().to_vec()).collect();
    let subalgebra = basis.iter().all(|x| {
        basis
            .iter()
            .all(|y| coordinates(&rows, dm.algebra().mul(x, y).data()).is_some())
    });
    let isotropic = basis.iter().all(|x| basis.iter().all(|y| dm.beta(x, y).is_zero()));
    let lagrangian = isotropic && span_basis(&rows, 2 * d).len() == d;
    let mut all = rows.clone();
    all.extend(
        OrderN::new(p.n, p.k)?
            .regular_image()
            .into_iter()
            .map(|e| e.into_data()),
    );
    let complementary = all.len() == 2 * d && span_basis(&all, 2 * d).len() == 2 * d;
    Ok(EpsilonLagrangian {
        double,
        basis,
        f_tilde: ft,
        subalgebra,
        lagrangian,
        complementary,
    })
}

/// Solve for the tail `t₀ + t₁z` of generator `(q, i)`: the unique element of
/// `W` in `w_{q,i} + A[[z]]`.
fn generator_tail(
    order: &OrderN,
    v: &EpsilonLagrangian,
    metric: &MetricAlgebra,
    quasi: bool,
    q: usize,
    i: usize,
) -> Result<Laurent<Element>> {
    let d = metric.dim();
    let nv = v.basis.len();
    let cols = 2 * d + nv;
    let dual = &metric.dual_basis()[i];
    // Known part of the left component: exponent and coefficient.
    let left_known: Option<(i64, &Element)> = match (quasi, q) {
        (false, _) => Some((-1 - q as i64, dual)),
        (true, q) if q >= 2 => Some((1 - q as i64, dual)),
        _ => None,
    };
    let right_known: Option<(i64, &Element)> = match (quasi, q) {
        (true, q) if q < 2 => Some((1 - q as i64, dual)),
        _ => None,
    };
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let unknown = |m: i64, e: usize| -> Option<usize> {
        match m {
            0 => Some(e),
            1 => Some(d + e),
            _ => None,
        }
    };
    let known = |k: Option<(i64, &Element)>, m: i64, e: usize| -> Scalar {
        match k {
            Some((mk, x)) if mk == m => x.data()[e].clone(),
            _ => Scalar::zero(),
        }
    };
    // Left component in N_k.
    for e in 0..d {
        for m in 0..=1i64 {
            if m > order.max_exponent(e) {
                let mut row = vec![Scalar::zero(); cols];
                row[unknown(m, e).expect("m ∈ {0,1}")] = Scalar::one();
                rows.push(row);
                rhs.push(-known(left_known, m, e));
            }
        }
    }
    // The ε-image (rational) or the right component (quasi-rational) lies in V.
    for slot in 0..2usize {
        for e in 0..d {
            let (m, sign, k) = if quasi {
                (slot as i64, Scalar::one(), right_known)
            } else {
                (order.max_exponent(e) - slot as i64, Scalar::one(), left_known)
            };
            let mut row = vec![Scalar::zero(); cols];
            if let Some(u) = unknown(m, e) {
                row[u] = sign.clone();
            }
            for (j, b) in v.basis.iter().enumerate() {
                row[2 * d + j] = -b.data()[slot * d + e].clone();
            }
            rows.push(row);
            let c = known(k, m, e);
            rhs.push(if quasi { c } else { -c });
        }
    }
    let mat = Matrix::from_rows(rows, cols);
    let sol = mat
        .solve_unique(&rhs)
        .ok_or_else(|| Error::InvalidPair(format!("no unique element of W over generator ({q}, {i})")))?;
    let mut tail = Laurent::zero();
    tail.add_term(0, &Element::from_vec(sol[..d].to_vec()));
    tail.add_term(1, &Element::from_vec(sol[d..2 * d].to_vec()));
    Ok(tail)
}

fn build(p: &StolinPair, trunc: u32, quasi: bool) -> Result<StandardFormSeries> {
    let v = pair_to_lagrangian(p)?;
    if !v.holds() {
        return Err(Error::InvalidPair(
            "V is not a complementary Lagrangian subalgebra".into(),
        ));
    }
    let metric = p.metric()?;
    let order = OrderN::new(p.n, p.k)?;
    let d = metric.dim();
    let n = if quasi { 2 } else { 0 };
    let mut w = WBasis::zero_tails(d, n);
    // Tails vanish for q ≥ 2: the zero tail already lands in W there.
    for q in 0..=3 {
        for i in 0..d {
            let t = generator_tail(&order, &v, &metric, quasi, q, i)?;
            if q >= 2 && !t.is_zero() {
                return Err(Error::InvalidPair(format!("unexpected tail at generator ({q}, {i})")));
            }
            w.set_tail(q, i, t);
        }
    }
    subspace_to_series(&w, &metric, trunc)
}

/// The rational solution `γ/(x−y) + t` attached to a pair.
pub fn rational_from_pair(p: &StolinPair, trunc: u32) -> Result<StandardFormSeries> {
    build(p, trunc, false)
}

/// The quasi-rational solution `y²γ/(x−y) + t` of type `(2, 1)` attached to a pair.
pub fn quasi_rational_from_pair(p: &StolinPair, trunc: u32) -> Result<StandardFormSeries> {
    build(p, trunc, true)
}

/// Recover `(S, χ)` from a rational (`n = 0`) or quasi-rational (`n = 2`)
/// solution of type `k` with `λ = 1`.
pub fn pair_from_solution(r: &StandardFormSeries, k: usize) -> Result<StolinPair> {
    let size = r
        .metric
        .matrix_size()
        .ok_or_else(|| Error::ParameterMismatch(format!("{} is not a matrix algebra", r.metric.name())))?;
    let quasi = match r.n {
        0 => false,
        2 => true,
        n => {
            return Err(Error::ParameterMismatch(format!(
                "series of type n = {n} is neither rational nor quasi-rational"
            )))
        }
    };
    let lt = r.lambda.trunc();
    if !r.lambda.agrees_through(&crate::series::Series1::one(lt), lt) {
        return Err(Error::ParameterMismatch(
            "Stolin pairs parametrize series with λ = 1".into(),
        ));
    }
    check_nk(size, k, size - 1)?;
    let order = OrderN::new(size, k)?;
    let metric = &r.metric;
    let d = metric.dim();
    let w = series_to_subspace(r)?;
    let double = EpsilonDouble::new(metric)?;
    let mut images: Vec<Vec<Scalar>> = Vec::new();
    for q in 0..=w.tail_bound.max(3) {
        for i in 0..d {
            let g = w.generator(metric, q, i)?;
            if let Some((e, m)) = order.first_violation(g.left()) {
                return Err(Error::NotInOrder(format!(
                    "generator ({q}, {i}) has a z^{m} term in entry {} of N_{k}",
                    metric.algebra().labels()[e]
                )));
            }
            let img = if quasi {
                let right = g.right();
                double.element(&right[0], &right[1])
            } else {
                let mut x = Element::zeros(2 * d);
                for (m, c) in g.left().terms() {
                    for (e, v) in c.data().iter().enumerate() {
                        if !v.is_zero() {
                            x.add_assign(&order.to_epsilon(e, *m).scale(v));
                        }
                    }
                }
                x
            };
            images.push(img.into_data());
        }
    }
    let v = span_basis(&images, 2 * d);
    if v.len() != d {
        return Err(Error::NotInOrder(format!(
            "image in D_ε has dimension {}, expected {d}",
            v.len()
        )));
    }
    let a_parts: Vec<Vec<Scalar>> = v.iter().map(|x| x[..d].to_vec()).collect();
    let s_basis: Vec<Element> = span_basis(&a_parts, d).into_iter().map(Element::from_vec).collect();
    // For each s_j pick v ∈ V with a-part s_j; its ε-part represents f(s_j).
    let f: Vec<Element> = s_basis
        .iter()
        .map(|s| {
            let c = coordinates(&a_parts, s.data()).expect("s lies in the projection");
            let mut b = Element::zeros(d);
            for (row, x) in v.iter().zip(&c) {
                b.add_assign(&Element::from_vec(row[d..].to_vec()).scale(x));
            }
            b
        })
        .collect();
    let m = s_basis.len();
    let chi = Matrix::from_fn(m, m, |a, b| metric.beta(&f[a], &s_basis[b]));
    let pair = StolinPair::new(size, k, s_basis, chi)?;
    require_valid(&pair)?;
    Ok(pair)
}

/// A subalgebra spanned by matrix units, with its space of Connes cocycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedSubalgebra {
    /// Matrix-unit indices spanning `S`.
    pub units: Vec<usize>,
    pub cocycle_dim: usize,
    /// A Connes cocycle non-degenerate on `S ∩ P_k`, if one exists.
    pub witness: Option<StolinPair>,
}

/// Basis of the Connes 2-cocycles on `S` (skew forms as Gram matrices).
pub fn connes_cocycles(metric: &MetricAlgebra, s: &[Element]) -> Result<Vec<Matrix>> {
    let m = s.len();
    let alg = metric.algebra();
    let rows: Vec<Vec<Scalar>> = s.iter().map(|b| b.data().to_vec()).collect();
    let coord = |x: &Element| {
        coordinates(&rows, x.data()).ok_or_else(|| Error::InvalidPair("S is not closed under multiplication".into()))
    };
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    // χ(x, y) as a linear function of the free entries χ_{ij}, i < j.
    let lin = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        pairs
            .iter()
            .map(|&(i, j)| &(&x[i] * &y[j]) - &(&x[j] * &y[i]))
            .collect()
    };
    let mut eqs: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for l in 0..m {
                let (a1, a2, a3) = (&s[i], &s[j], &s[l]);
                let t1 = lin(&coord(&alg.mul(a1, a2))?, &coord(a3)?);
                let t2 = lin(&coord(&alg.mul(a2, a3))?, &coord(a1)?);
                let t3 = lin(&coord(&alg.mul(a3, a1))?, &coord(a2)?);
                eqs.push(t1.iter().zip(&t2).zip(&t3).map(|((a, b), c)| &(a + b) + c).collect());
            }
        }
    }
    let sols = if pairs.is_empty() {
        Vec::new()
    } else {
        Matrix::from_rows(eqs, pairs.len()).nullspace()
    };
    Ok(sols
        .into_iter()
        .map(|v| {
            let mut g = Matrix::zeros(m, m);
            for (c, &(i, j)) in v.iter().zip(&pairs) {
                g.set(i, j, c.clone());
                g.set(j, i, -c);
            }
            g
        })
        .collect())
}

/// Subalgebras of `M_n` spanned by matrix units with `S + P_k = M_n`, for
/// `n ≤ 2`. The witness search is exhaustive: `det` of the restricted form is
/// of degree `≤ p` in each cocycle coordinate, so it vanishes on the grid
/// `{0,…,p}^m` only if it vanishes identically.
pub fn enumerate_pairs(n: usize, k: usize) -> Result<Vec<EnumeratedSubalgebra>> {
    if n > 2 {
        return Err(Error::IndexOutOfRange(format!(
            "enumeration is limited to n ≤ 2, got {n}"
        )));
    }
    check_nk(n, k, n.saturating_sub(1))?;
    let metric = MetricAlgebra::matrix(n)?;
    let d = n * n;
    let alg = metric.algebra();
    let mut out = Vec::new();
    for mask in 0u32..(1 << d) {
        let units: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
        let s: Vec<Element> = units.iter().map(|&i| Element::basis(d, i)).collect();
        let closed = s.iter().all(|a| {
            s.iter().all(|b| {
                let p = alg.mul(a, b);
                p.data()
                    .iter()
                    .enumerate()
                    .all(|(e, c)| c.is_zero() || units.contains(&e))
            })
        });
        if !closed || !(0..d).all(|e| units.contains(&e) || shift(n, k, e) >= 0) {
            continue;
        }
        let cocycles = connes_cocycles(&metric, &s)?;
        let m = s.len();
        let probe = StolinPair::new(n, k, s.clone(), Matrix::zeros(m, m))?;
        let inter = intersection_coords(&probe);
        let p = inter.len();
        let mut witness = None;
        if p == 0 {
            witness = Some(probe);
        } else if !cocycles.is_empty() {
            let mut point = vec![0usize; cocycles.len()];
            loop {
                let mut chi = Matrix::zeros(m, m);
                for (c, g) in point.iter().zip(&cocycles) {
                    let c = Scalar::from_int(*c as i64);
                    chi = Matrix::from_fn(m, m, |i, j| chi.get(i, j) + &(&c * g.get(i, j)));
                }
                if !restricted_gram(&chi, &inter).det().is_zero() {
                    witness = Some(StolinPair::new(n, k, s.clone(), chi)?);
                    break;
                }
                // Next grid point in {0..=p}^m.
                let mut idx = 0;
                while idx < point.len() && point[idx] == p {
                    point[idx] = 0;
                    idx += 1;
                }
                if idx == point.len() {
                    break;
                }
                point[idx] += 1;
            }
        }
        out.push(EnumeratedSubalgebra {
            units,
            cocycle_dim: cocycles.len(),
            witness,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cybe::{verify, Equation};

    fn bundled(k: usize, chi01: i64) -> StolinPair {
        let s = vec![Element::basis(4, 0), Element::basis(4, 1)];
        let chi = Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => Scalar::from_int(chi01),
            (1, 0) => Scalar::from_int(-chi01),
            _ => Scalar::zero(),
        });
        StolinPair::new(2, k, s, chi).unwrap()
    }

    fn el(v: &[i64]) -> Element {
        Element::from_vec(v.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    #[test]
    fn parabolic_shapes() {
        assert_eq!(parabolic_p_k(2, 0).unwrap().len(), 4);
        let p1 = parabolic_p_k(2, 1).unwrap();
        assert_eq!(
            p1,
            vec![Element::basis(4, 0), Element::basis(4, 1), Element::basis(4, 3)]
        );
        assert!(matches!(parabolic_p_k(2, 2), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn order_membership() {
        let o = OrderN::new(2, 1).unwrap();
        let e21 = Element::basis(4, 2);
        assert!(o.contains(&Laurent::monomial(-1, e21.clone())).unwrap());
        assert!(!o.contains(&Laurent::monomial(0, e21)).unwrap());
        assert!(o.contains(&Laurent::monomial(1, Element::basis(4, 1))).unwrap());
    }

    #[test]
    fn regular_image_is_p_plus_eps_p_perp() {
        for k in 0..2 {
            let o = OrderN::new(2, k).unwrap();
            let dbl = EpsilonDouble::new(&MetricAlgebra::matrix(2).unwrap()).unwrap();
            let zero = Element::zeros(4);
            let mut expect: Vec<Vec<Scalar>> = parabolic_p_k(2, k)
                .unwrap()
                .iter()
                .map(|p| dbl.element(p, &zero).into_data())
                .collect();
            expect.extend(
                parabolic_p_k_perp(2, k)
                    .unwrap()
                    .iter()
                    .map(|p| dbl.element(&zero, p).into_data()),
            );
            let got: Vec<Vec<Scalar>> = o.regular_image().into_iter().map(|e| e.into_data()).collect();
            assert_eq!(span_basis(&expect, 8), got);
        }
    }

    #[test]
    fn stolin_checks() {
        assert!(check_stolin_pair(&bundled(0, 1)).unwrap().is_valid());
        let degenerate = check_stolin_pair(&bundled(0, 0)).unwrap();
        assert!(degenerate.connes && !degenerate.nondegenerate_on_intersection);

        let all: Vec<Element> = (0..4).map(|i| Element::basis(4, i)).collect();
        let mut chi = Matrix::zeros(4, 4);
        chi.set(0, 3, Scalar::one());
        chi.set(3, 0, Scalar::from_int(-1));
        let bad = StolinPair::new(2, 1, all, chi).unwrap();
        let rep = check_stolin_pair(&bad).unwrap();
        assert!(rep.skew && !rep.connes);
        assert!(rep.first_connes_failure.is_some());
    }

    #[test]
    fn lagrangian_of_bundled_pair() {
        let v = pair_to_lagrangian(&bundled(0, 1)).unwrap();
        assert!(v.holds());
        assert_eq!(v.f_tilde[0], el(&[0, 0, 1, 0]));
        assert_eq!(v.f_tilde[1], el(&[-1, 0, 0, 0]));
        assert!(matches!(pair_to_lagrangian(&bundled(0, 0)), Err(Error::InvalidPair(_))));
    }

    #[test]
    fn rational_round_trip() {
        let p = bundled(0, 1);
        let r = rational_from_pair(&p, 9).unwrap();
        assert_eq!(r.n, 0);
        assert!(r.is_skew().unwrap());
        assert!(verify(&r, Equation::Cybe, 6).unwrap().holds());
        // constant tail
        assert!(r.tail.terms().keys().all(|e| *e == [0, 0]));
        assert_eq!(pair_from_solution(&r, 0).unwrap(), p.canonical());
    }

    #[test]
    fn quasi_rational_round_trip() {
        let p = bundled(0, 1);
        let r = quasi_rational_from_pair(&p, 9).unwrap();
        assert_eq!((r.n, r.classify()), (2, "quasi-rational"));
        assert!(r.is_skew().unwrap());
        assert!(verify(&r, Equation::Cybe, 6).unwrap().holds());
        assert_eq!(pair_from_solution(&r, 0).unwrap(), p.canonical());
    }

    #[test]
    fn type_one_pairs() {
        let found = enumerate_pairs(2, 1).unwrap();
        let with_witness: Vec<_> = found.iter().filter_map(|e| e.witness.clone()).collect();
        assert!(!with_witness.is_empty());
        for p in &with_witness {
            assert!(check_stolin_pair(p).unwrap().is_valid());
            let r = rational_from_pair(p, 8).unwrap();
            assert!(r.is_skew().unwrap());
            assert!(verify(&r, Equation::Cybe, 5).unwrap().holds());
            assert_eq!(pair_from_solution(&r, 1).unwrap(), p.canonical());
            let q = quasi_rational_from_pair(p, 8).unwrap();
            assert!(verify(&q, Equation::Cybe, 5).unwrap().holds());
            assert_eq!(pair_from_solution(&q, 1).unwrap(), p.canonical());
        }
    }

    #[test]
    fn yang_is_the_zero_pair() {
        let m = MetricAlgebra::matrix(2).unwrap();
        let r = StandardFormSeries::with_unit_lambda(m, 0, crate::series::Series2::zero(4), 4).unwrap();
        let p = pair_from_solution(&r, 0).unwrap();
        assert_eq!(p.dim(), 0);
    }
}
