//! Truncated formal power series in `K` variables and truncated Laurent
//! series in one variable, with coefficients in any [`Coefficient`] space.
//!
//! A [`Series`] with truncation `N` knows every coefficient of total degree
//! `≤ N`; nothing is claimed beyond. Binary operations carry the minimum of
//! the operand truncations unless documented otherwise.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::Tensor;

/// A finite-dimensional coefficient space: a vector space over [`Scalar`].
pub trait Coefficient: Clone + PartialEq + Debug {
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn negated(&self) -> Self;
    fn scaled(&self, s: &Scalar) -> Self;
}

impl Coefficient for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, s: &Scalar) -> Self {
        self * s
    }
}

impl<const R: usize> Coefficient for Tensor<R> {
    fn is_zero(&self) -> bool {
        Tensor::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.add_assign(other);
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, s: &Scalar) -> Self {
        self.scale(s)
    }
}

fn degree<const K: usize>(e: &[u32; K]) -> u32 {
    e.iter().sum()
}

/// Truncated power series in `K` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<C, const K: usize> {
    trunc: u32,
    terms: BTreeMap<[u32; K], C>,
}

pub type Series1 = Series<Scalar, 1>;
pub type Series2<C> = Series<C, 2>;
pub type Series3<C> = Series<C, 3>;

impl<C: Coefficient, const K: usize> Series<C, K> {
    pub fn zero(trunc: u32) -> Self {
        Series {
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exp: [u32; K], c: C, trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        s.add_term(exp, &c);
        s
    }

    pub fn from_terms(trunc: u32, terms: impl IntoIterator<Item = ([u32; K], C)>) -> Self {
        let mut s = Self::zero(trunc);
        for (e, c) in terms {
            s.add_term(e, &c);
        }
        s
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<[u32; K], C> {
        &self.terms
    }

    pub fn coeff(&self, exp: &[u32; K]) -> Option<&C> {
        self.terms.get(exp)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree of a stored term.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(degree).max()
    }

    /// Add `c · x^exp`; ignored beyond the truncation.
    pub fn add_term(&mut self, exp: [u32; K], c: &C) {
        if degree(&exp) > self.trunc || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncated(self.trunc.min(other.trunc));
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.trunc);
        }
        self.map(|c| c.scaled(s))
    }

    /// Lower the truncation (never raises it).
    pub fn truncated(&self, trunc: u32) -> Self {
        let trunc = trunc.min(self.trunc);
        Series {
            trunc,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| degree(e) <= trunc)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Declare a new truncation. Raising it asserts the stored terms are the
    /// complete series through that degree (e.g. for exact polynomials).
    pub fn with_trunc(mut self, trunc: u32) -> Self {
        if trunc < self.trunc {
            return self.truncated(trunc);
        }
        self.trunc = trunc;
        self
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Series<D, K> {
        let mut out = Series::zero(self.trunc);
        for (e, c) in &self.terms {
            out.add_term(*e, &f(c));
        }
        out
    }

    /// Bilinear product with an arbitrary coefficient pairing; the result
    /// truncation is `min(self.trunc, other.trunc, bound)`.
    pub fn mul_with<D: Coefficient, E: Coefficient>(
        &self,
        other: &Series<D, K>,
        bound: u32,
        f: impl Fn(&C, &D) -> E,
    ) -> Series<E, K> {
        let trunc = self.trunc.min(other.trunc).min(bound);
        let mut out = Series::zero(trunc);
        for (e1, c1) in &self.terms {
            let d1 = degree(e1);
            if d1 > trunc {
                continue;
            }
            for (e2, c2) in &other.terms {
                if d1 + degree(e2) > trunc {
                    continue;
                }
                let mut e = *e1;
                for i in 0..K {
                    e[i] += e2[i];
                }
                out.add_term(e, &f(c1, c2));
            }
        }
        out
    }

    /// Multiply by a scalar series (module action).
    pub fn scalar_mul(&self, s: &Series<Scalar, K>) -> Self {
        s.mul_with(self, u32::MAX, |a, c| c.scaled(a))
    }

    /// Multiply by the monomial `x^exp`; the truncation rises by its degree.
    pub fn shift(&self, exp: [u32; K]) -> Self {
        let dd = degree(&exp);
        let mut out = Self::zero(self.trunc + dd);
        for (e, c) in &self.terms {
            let mut n = *e;
            for i in 0..K {
                n[i] += exp[i];
            }
            out.add_term(n, c);
        }
        out
    }

    /// Lowest-degree nonzero term (ties broken lexicographically).
    pub fn first_nonzero(&self) -> Option<([u32; K], &C)> {
        self.terms
            .iter()
            .min_by_key(|(e, _)| (degree(e), **e))
            .map(|(e, c)| (*e, c))
    }

    /// Lowest-degree term where `self` and `other` differ, through `deg`.
    pub fn first_difference(&self, other: &Self, deg: u32) -> Option<[u32; K]> {
        let diff = self.truncated(deg).sub(&other.truncated(deg));
        diff.first_nonzero().map(|(e, _)| e)
    }

    /// Equality of all coefficients through total degree `deg`.
    pub fn agrees_through(&self, other: &Self, deg: u32) -> bool {
        self.first_difference(other, deg).is_none()
    }

    /// Rename variables: variable `i` of `self` becomes variable `slots[i]`
    /// of the result.
    pub fn embed<const L: usize>(&self, slots: [usize; K]) -> Series<C, L> {
        let mut out = Series::zero(self.trunc);
        for (e, c) in &self.terms {
            let mut n = [0u32; L];
            for i in 0..K {
                n[slots[i]] += e[i];
            }
            out.add_term(n, c);
        }
        out
    }

    /// Divide by `(z_i − z_j)`. The result has truncation `trunc − 1`; fails
    /// with [`Error::NotDivisible`] if the restriction to `z_i = z_j` has a
    /// nonzero coefficient of degree `≤ trunc`.
    pub fn divide_by_difference(&self, i: usize, j: usize) -> Result<Self> {
        assert!(i != j && i < K && j < K);
        if self.trunc == 0 {
            // Nothing can be certified; a constant must vanish.
            if let Some(c) = self.terms.get(&[0; K]) {
                if !c.is_zero() {
                    return Err(Error::NotDivisible(format!(
                        "restriction z{} = z{} is nonzero in degree 0",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let out_trunc = self.trunc.saturating_sub(1);
        let mut g = Self::zero(out_trunc);
        let mut residual: Series<C, K> = Series::zero(self.trunc);
        // f_p = g_{p-1} − z_j g_p in z_i-degree p, unrolled:
        // g_{p-1}[m] = Σ_{s≥0} f_{p+s}[m / z_j^s].
        for (e, c) in &self.terms {
            let q = e[i];
            for p in 1..=q {
                let mut n = *e;
                n[i] = p - 1;
                n[j] += q - p;
                g.add_term(n, c);
            }
            let mut n = *e;
            n[i] = 0;
            n[j] += q;
            residual.add_term(n, c);
        }
        if let Some((e, _)) = residual.first_nonzero() {
            return Err(Error::NotDivisible(format!(
                "restriction z{} = z{} is nonzero at exponent {:?} (degree {})",
                i + 1,
                j + 1,
                e,
                degree(&e)
            )));
        }
        Ok(g)
    }

    /// Evaluate a series all of whose terms are stored (a polynomial).
    pub fn evaluate(&self, point: &[Scalar; K]) -> Option<C> {
        let mut acc: Option<C> = None;
        for (e, c) in &self.terms {
            let mut w = Scalar::one();
            for i in 0..K {
                w = &w * &point[i].pow(e[i] as i64).expect("nonnegative power");
            }
            let term = c.scaled(&w);
            match &mut acc {
                Some(a) => a.add_assign_ref(&term),
                None => acc = Some(term),
            }
        }
        acc
    }
}

impl<const K: usize> Series<Scalar, K> {
    pub fn one(trunc: u32) -> Self {
        Self::monomial([0; K], Scalar::one(), trunc)
    }

    pub fn constant(c: Scalar, trunc: u32) -> Self {
        Self::monomial([0; K], c, trunc)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_with(other, u32::MAX, |a, b| a * b)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&[0; K]).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Inverse of a unit in `K` variables, degree by degree.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = c0.inv()?;
        let mut by_degree: Vec<Vec<([u32; K], Scalar)>> = vec![Vec::new(); self.trunc as usize + 1];
        by_degree[0].push(([0; K], inv0.clone()));
        for d in 1..=self.trunc {
            let mut acc: Series<Scalar, K> = Series::zero(d);
            for (e, c) in self.terms.iter().filter(|(e, _)| (1..=d).contains(&degree(e))) {
                for (g_e, g_c) in &by_degree[(d - degree(e)) as usize] {
                    let mut n = *e;
                    for i in 0..K {
                        n[i] += g_e[i];
                    }
                    acc.add_term(n, &(c * g_c));
                }
            }
            by_degree[d as usize] = acc.terms.into_iter().map(|(e, c)| (e, -(&c * &inv0))).collect();
        }
        Ok(Series::from_terms(self.trunc, by_degree.into_iter().flatten()))
    }
}

impl<C: Coefficient> Series<C, 1> {
    /// Coefficient of `z^k` (zero if absent).
    pub fn at(&self, k: u32) -> Option<&C> {
        self.coeff(&[k])
    }
}

impl Series1 {
    /// `Σ c_k z^k` from a coefficient list.
    pub fn from_coeffs(coeffs: Vec<Scalar>, trunc: u32) -> Self {
        Self::from_terms(trunc, coeffs.into_iter().enumerate().map(|(k, c)| ([k as u32], c)))
    }

    pub fn coeff_at(&self, k: u32) -> Scalar {
        self.at(k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Inverse of a unit through degree `min(n, trunc)`, by back-substitution.
    pub fn invert_unit(&self, n: u32) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let trunc = n.min(self.trunc);
        let inv0 = c0.inv()?;
        let mut g = vec![Scalar::zero(); trunc as usize + 1];
        g[0] = inv0.clone();
        for k in 1..=trunc as usize {
            let mut acc = Scalar::zero();
            for (&[j], c) in self.terms.range([1]..=[k as u32]) {
                acc += &(c * &g[k - j as usize]);
            }
            g[k] = -(&acc * &inv0);
        }
        Ok(Self::from_coeffs(g, trunc))
    }

    /// `self ∘ u` for `u(0) = 0`, through `min(n, self.trunc, u.trunc)`.
    pub fn substitute(&self, u: &Self, n: u32) -> Result<Self> {
        if !u.constant_term().is_zero() {
            return Err(Error::NonvanishingConstantTerm);
        }
        let trunc = n.min(self.trunc).min(u.trunc);
        let u = u.truncated(trunc);
        let mut out = Self::zero(trunc);
        let mut pow = Self::one(trunc);
        for k in 0..=trunc {
            if let Some(c) = self.at(k) {
                out = out.add(&pow.scale(c));
            }
            pow = pow.mul(&u);
        }
        Ok(out)
    }

    /// `Σ_{k ≤ n} z^k / k!`.
    pub fn exp_series(n: u32) -> Self {
        let mut coeffs = Vec::with_capacity(n as usize + 1);
        let mut fact = Scalar::one();
        for k in 0..=n as i64 {
            if k > 0 {
                fact = &fact * &Scalar::from_int(k);
            }
            coeffs.push(fact.inv().expect("nonzero factorial"));
        }
        Self::from_coeffs(coeffs, n)
    }

    /// Formal derivative; the truncation drops by one.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(self.trunc.saturating_sub(1));
        for (&[k], c) in &self.terms {
            if k > 0 {
                out.add_term([k - 1], &(c * &Scalar::from_int(k as i64)));
            }
        }
        out
    }
}

impl Series<Scalar, 2> {
    /// `f(x − y)` for a one-variable `f`.
    pub fn of_difference(f: &Series1) -> Self {
        let trunc = f.trunc;
        let mut out = Self::zero(trunc);
        for (&[k], c) in &f.terms {
            // (x − y)^k = Σ_j C(k, j) x^{k−j} (−y)^j
            let mut binom = Scalar::one();
            for j in 0..=k {
                let sign = if j % 2 == 0 { c.clone() } else { -c };
                out.add_term([k - j, j], &(&sign * &binom));
                binom = &(&binom * &Scalar::from_int((k - j) as i64)) / &Scalar::from_int(j as i64 + 1);
            }
        }
        out
    }
}

impl<C: Coefficient> Series<C, 2> {
    /// `f(y, x)`.
    pub fn swap_vars(&self) -> Self {
        let mut out = Self::zero(self.trunc);
        for ([p, q], c) in &self.terms {
            out.add_term([*q, *p], c);
        }
        out
    }

    /// `f(z, z)`.
    pub fn restrict_diagonal(&self) -> Series<C, 1> {
        let mut out = Series::zero(self.trunc);
        for ([p, q], c) in &self.terms {
            out.add_term([p + q], c);
        }
        out
    }

    /// `g` with `(x − y) g = f`; truncation drops by one.
    pub fn divide_by_diagonal(&self) -> Result<Self> {
        self.divide_by_difference(0, 1)
    }

    /// `f(u(x), u(y))` for `u(0) = 0`, through `min(n, trunc, u.trunc)`.
    pub fn substitute_both(&self, u: &Series1, n: u32) -> Result<Self> {
        if !u.constant_term().is_zero() {
            return Err(Error::NonvanishingConstantTerm);
        }
        let trunc = n.min(self.trunc).min(u.trunc);
        let mut pows = vec![Series1::one(trunc)];
        for k in 1..=trunc as usize {
            pows.push(pows[k - 1].mul(u));
        }
        let mut out = Self::zero(trunc);
        for ([p, q], c) in &self.terms {
            if p + q > trunc {
                continue;
            }
            let ux: Series<Scalar, 2> = pows[*p as usize].embed([0]);
            let uy: Series<Scalar, 2> = pows[*q as usize].embed([1]);
            let w = ux.mul(&uy).with_trunc(trunc);
            for (e, s) in w.terms() {
                out.add_term(*e, &c.scaled(s));
            }
        }
        Ok(out)
    }
}

impl<C: Coefficient> Series<C, 3> {
    /// `G` with `(z1−z2)(z1−z3)(z2−z3) G = F`; truncation drops by three.
    pub fn vandermonde_divide(&self) -> Result<Self> {
        self.divide_by_difference(0, 1)?
            .divide_by_difference(0, 2)?
            .divide_by_difference(1, 2)
    }
}

/// Truncated Laurent series in one variable. All stored exponents lie in
/// `[lo, hi]`; `hi = None` means every coefficient is known (a Laurent
/// polynomial), otherwise coefficients above `hi` are unknown.
#[derive(Clone, Debug)]
pub struct Laurent<C> {
    lo: i64,
    hi: Option<i64>,
    terms: BTreeMap<i64, C>,
}

/// Equality ignores the bookkeeping lower bound `lo`.
impl<C: PartialEq> PartialEq for Laurent<C> {
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.terms == other.terms
    }
}

impl<C: Eq> Eq for Laurent<C> {}

impl<C: Coefficient> Laurent<C> {
    pub fn zero() -> Self {
        Laurent {
            lo: 0,
            hi: None,
            terms: BTreeMap::new(),
        }
    }

    /// Empty series with an explicit window.
    pub fn with_window(lo: i64, hi: Option<i64>) -> Self {
        Laurent {
            lo,
            hi,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exp: i64, c: C) -> Self {
        let mut l = Laurent::with_window(exp, None);
        l.add_term(exp, &c);
        l
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> Option<i64> {
        self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.hi.is_none()
    }

    pub fn terms(&self) -> &BTreeMap<i64, C> {
        &self.terms
    }

    pub fn coeff(&self, e: i64) -> Option<&C> {
        self.terms.get(&e)
    }

    /// Whether the coefficient of `z^e` is determined.
    pub fn knows(&self, e: i64) -> bool {
        self.hi.is_none_or(|h| e <= h)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: i64, c: &C) {
        if !self.knows(e) || c.is_zero() {
            return;
        }
        if e < self.lo {
            self.lo = e;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    fn min_hi(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => Some(x.min(y)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let hi = Self::min_hi(self.hi, other.hi);
        let mut out = Laurent::with_window(self.lo.min(other.lo), hi);
        for (e, c) in self.terms.iter().chain(&other.terms) {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map(|c| c.scaled(s))
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        let mut out = Laurent::with_window(self.lo, self.hi);
        for (e, c) in &self.terms {
            out.add_term(*e, &f(c));
        }
        out
    }

    /// Forget coefficients above `hi`.
    pub fn truncated(&self, hi: i64) -> Self {
        let hi = Self::min_hi(self.hi, Some(hi));
        let mut out = Laurent::with_window(self.lo, hi);
        for (e, c) in &self.terms {
            out.add_term(*e, c);
        }
        out
    }

    /// Product with an arbitrary bilinear pairing. The window is
    /// `[lo1 + lo2, min(lo1 + hi2, lo2 + hi1)]`.
    pub fn mul_with<D: Coefficient, E: Coefficient>(&self, other: &Laurent<D>, f: impl Fn(&C, &D) -> E) -> Laurent<E> {
        let hi = Self::min_hi(self.hi.map(|h| h + other.lo), other.hi.map(|h| h + self.lo));
        let mut out = Laurent::with_window(self.lo + other.lo, hi);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if out.knows(e) {
                    out.add_term(e, &f(c1, c2));
                }
            }
        }
        out
    }

    /// `z^k · self`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = Laurent::with_window(self.lo + k, self.hi.map(|h| h + k));
        for (e, c) in &self.terms {
            out.add_term(e + k, c);
        }
        out
    }

    /// Part with exponents `< 0`.
    pub fn principal_part(&self) -> Self {
        let mut out = Laurent::with_window(self.lo.min(-1), None);
        for (e, c) in self.terms.range(..0) {
            out.add_term(*e, c);
        }
        out
    }

    /// Part with exponents `≥ 0`, as a power series through `hi`.
    pub fn regular_part(&self) -> Self {
        let mut out = Laurent::with_window(0, self.hi);
        for (e, c) in self.terms.range(0..) {
            out.add_term(*e, c);
        }
        out
    }

    /// Coefficient of `z^{-1}`.
    pub fn residue(&self) -> Result<Option<&C>> {
        if !self.knows(-1) {
            return Err(Error::WindowTooSmall(format!(
                "residue needs degree -1, series known through {}",
                self.hi.unwrap_or(i64::MAX)
            )));
        }
        Ok(self.terms.get(&-1))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }
}

impl Laurent<Scalar> {
    pub fn from_series(s: &Series1) -> Self {
        let mut out = Laurent::with_window(0, Some(s.trunc() as i64));
        for (&[k], c) in s.terms() {
            out.add_term(k as i64, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_with(other, |a, b| a * b)
    }

    pub fn coeff_at(&self, e: i64) -> Scalar {
        self.coeff(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn residue_scalar(&self) -> Result<Scalar> {
        Ok(self.residue()?.cloned().unwrap_or_else(Scalar::zero))
    }
}

/// `1/(e^z − 1)` on the window `[−1, n]`, computed as `z^{-1}` times the
/// inverse of `(e^z − 1)/z`.
pub fn bernoulli_expansion(n: u32) -> Laurent<Scalar> {
    let shifted = Series1::exp_series(n + 2);
    let quotient = Series1::from_terms(
        n + 1,
        shifted
            .terms()
            .iter()
            .filter(|(e, _)| e[0] >= 1)
            .map(|(e, c)| ([e[0] - 1], c.clone())),
    );
    let inv = quotient.invert_unit(n + 1).expect("constant term is 1");
    Laurent::from_series(&inv).shift(-1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_variable_inverse() {
        // q = 2 + x − 3xy
        let q = Series::<Scalar, 2>::from_terms(
            6,
            [
                ([0, 0], Scalar::from_int(2)),
                ([1, 0], Scalar::one()),
                ([1, 1], Scalar::from_int(-3)),
            ],
        );
        let g = q.invert().unwrap();
        assert_eq!(q.mul(&g), Series::one(6));
    }

    #[test]
    fn difference_substitution() {
        let f = Series1::from_coeffs(vec![Scalar::zero(), Scalar::zero(), Scalar::one()], 4);
        let g = Series::<Scalar, 2>::of_difference(&f);
        assert_eq!(g.coeff(&[1, 1]), Some(&Scalar::from_int(-2)));
        assert_eq!(g.coeff(&[0, 2]), Some(&Scalar::one()));
    }

    fn q(p: i64, r: i64) -> Scalar {
        Scalar::ratio(p, r)
    }

    fn s1(coeffs: &[i64], trunc: u32) -> Series1 {
        Series1::from_coeffs(coeffs.iter().map(|&c| Scalar::from_int(c)).collect(), trunc)
    }

    #[test]
    fn product_truncates() {
        let a = s1(&[1, 1], 2);
        let b = s1(&[1, -1], 2);
        assert_eq!(a.mul(&b), s1(&[1, 0, -1], 2));
    }

    #[test]
    fn invert_geometric() {
        assert_eq!(s1(&[1], 5).invert_unit(3).unwrap(), s1(&[1], 3));
        assert_eq!(s1(&[1, -1], 5).invert_unit(3).unwrap(), s1(&[1, 1, 1, 1], 3));
        let e = Series1::exp_series(2);
        let inv = e.invert_unit(2).unwrap();
        assert_eq!(inv, Series1::from_coeffs(vec![q(1, 1), q(-1, 1), q(1, 2)], 2));
        assert_eq!(s1(&[0, 1], 3).invert_unit(3), Err(Error::NotAUnit));
    }

    #[test]
    fn substitution_examples() {
        let f = s1(&[0, 0, 1], 4);
        let u = s1(&[0, 2], 4);
        assert_eq!(f.substitute(&u, 4).unwrap(), s1(&[0, 0, 4], 4));
        let geo = s1(&[1, 1, 1, 1, 1], 4);
        let u2 = s1(&[0, 0, 1], 4);
        assert_eq!(geo.substitute(&u2, 4).unwrap(), s1(&[1, 0, 1, 0, 1], 4));
        let e = Series1::exp_series(3);
        let v = s1(&[0, 1, 1], 3);
        let expected = Series1::from_coeffs(vec![q(1, 1), q(1, 1), q(3, 2), q(7, 6)], 3);
        assert_eq!(e.substitute(&v, 3).unwrap(), expected);
        assert_eq!(f.substitute(&s1(&[1, 1], 3), 3), Err(Error::NonvanishingConstantTerm));
    }

    #[test]
    fn laurent_windows() {
        let a = Laurent::monomial(-1, Scalar::one());
        let b = Laurent::monomial(1, Scalar::one());
        assert_eq!(a.mul(&b), Laurent::monomial(0, Scalar::one()));
        // (1 − z)^{-1} z^{-2} on [−2, 2]
        let geo = Laurent::from_series(&s1(&[1, -1], 4).invert_unit(4).unwrap());
        let f = geo.shift(-2);
        assert_eq!(f.hi(), Some(2));
        assert_eq!(f.residue_scalar().unwrap(), Scalar::one());
        let unknown = Laurent::<Scalar>::with_window(0, Some(-3));
        assert!(matches!(unknown.residue(), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn diagonal_division_examples() {
        let x_minus_y = Series2::from_terms(4, [([1, 0], Scalar::one()), ([0, 1], Scalar::from_int(-1))]);
        assert_eq!(x_minus_y.divide_by_diagonal().unwrap(), Series2::one(3));
        let sq = Series2::from_terms(4, [([2, 0], Scalar::one()), ([0, 2], Scalar::from_int(-1))]);
        let xy = Series2::from_terms(3, [([1, 0], Scalar::one()), ([0, 1], Scalar::one())]);
        assert_eq!(sq.divide_by_diagonal().unwrap(), xy);
        let f = Series2::from_terms(5, [([3, 1], Scalar::one()), ([1, 3], Scalar::from_int(-1))]);
        let g = Series2::from_terms(4, [([2, 1], Scalar::one()), ([1, 2], Scalar::one())]);
        assert_eq!(f.divide_by_diagonal().unwrap(), g);
        let bad = Series2::from_terms(4, [([1, 0], Scalar::one())]);
        assert!(matches!(bad.divide_by_diagonal(), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn vandermonde_examples() {
        let z = |i: usize| {
            let mut e = [0u32; 3];
            e[i] = 1;
            Series3::monomial(e, Scalar::one(), 10)
        };
        let v = z(0).sub(&z(1)).mul(&z(0).sub(&z(2))).mul(&z(1).sub(&z(2)));
        assert_eq!(v.vandermonde_divide().unwrap(), Series3::one(7));
        assert!(Series3::<Scalar>::zero(6).vandermonde_divide().unwrap().is_zero());
        let sum = z(0).add(&z(1)).add(&z(2));
        assert_eq!(v.mul(&sum).vandermonde_divide().unwrap(), sum.truncated(7));
        assert!(matches!(sum.vandermonde_divide(), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn bernoulli_low_coefficients() {
        let b = bernoulli_expansion(4);
        assert_eq!(b.lo(), -1);
        assert_eq!(b.hi(), Some(4));
        assert_eq!(b.coeff_at(-1), q(1, 1));
        assert_eq!(b.coeff_at(0), q(-1, 2));
        assert_eq!(b.coeff_at(1), q(1, 12));
        assert_eq!(b.coeff_at(2), Scalar::zero());
        assert_eq!(b.coeff_at(3), q(-1, 720));
    }
}
