//! Dense coefficient arrays over the distinguished basis: elements of `A`,
//! `A⊗A` and `A⊗A⊗A`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A rank-`R` tensor over a `d`-dimensional space, stored row-major:
/// the coefficient of `b_{i0} ⊗ ... ⊗ b_{i(R-1)}` lives at
/// `((i0 * d + i1) * d + ...)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor<const R: usize> {
    d: usize,
    data: Vec<Scalar>,
}

pub type Element = Tensor<1>;
pub type Tensor2 = Tensor<2>;
pub type Tensor3 = Tensor<3>;

impl<const R: usize> Tensor<R> {
    pub fn zeros(d: usize) -> Self {
        Tensor {
            d,
            data: vec![Scalar::zero(); d.pow(R as u32)],
        }
    }

    pub fn from_data(d: usize, data: Vec<Scalar>) -> Result<Self> {
        let expected = d.pow(R as u32);
        if data.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: data.len(),
            });
        }
        Ok(Tensor { d, data })
    }

    /// `b_{i0} ⊗ ... ⊗ b_{i(R-1)}`.
    pub fn unit(d: usize, idx: [usize; R]) -> Self {
        let mut t = Self::zeros(d);
        t.set(idx, Scalar::one());
        t
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn offset(&self, idx: [usize; R]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.d + i)
    }

    pub fn index_of(&self, mut offset: usize) -> [usize; R] {
        let mut idx = [0; R];
        for slot in idx.iter_mut().rev() {
            *slot = offset % self.d;
            offset /= self.d;
        }
        idx
    }

    pub fn get(&self, idx: [usize; R]) -> &Scalar {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: [usize; R], v: Scalar) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn add_at(&mut self, idx: [usize; R], v: &Scalar) {
        let o = self.offset(idx);
        self.data[o] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Nonzero entries with their multi-indices.
    pub fn nonzeros(&self) -> impl Iterator<Item = ([usize; R], &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(o, v)| (self.index_of(o), v))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "tensor dimension mismatch");
        Tensor {
            d: self.d,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "tensor dimension mismatch");
        Tensor {
            d: self.d,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Tensor {
            d: self.d,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zeros(self.d);
        }
        Tensor {
            d: self.d,
            data: self
                .data
                .iter()
                .map(|a| if a.is_zero() { a.clone() } else { a * s })
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.d, other.d, "tensor dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: &Scalar, other: &Self) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += &(s * b);
            }
        }
    }

    /// Apply an arbitrary permutation of tensor legs: leg `j` of the result
    /// is leg `perm[j]` of the input.
    pub fn permute(&self, perm: [usize; R]) -> Self {
        let mut out = Self::zeros(self.d);
        for (idx, v) in self.nonzeros() {
            let mut new = [0; R];
            for j in 0..R {
                new[j] = idx[perm[j]];
            }
            out.set(new, v.clone());
        }
        out
    }
}

impl Element {
    pub fn basis(d: usize, i: usize) -> Self {
        Tensor::unit(d, [i])
    }

    pub fn from_vec(v: Vec<Scalar>) -> Self {
        Tensor { d: v.len(), data: v }
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.data[i]
    }

    /// `self ⊗ other`.
    pub fn outer(&self, other: &Element) -> Tensor2 {
        let d = self.d;
        let mut t = Tensor2::zeros(d);
        for (i, a) in self.data.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.data.iter().enumerate() {
                if !b.is_zero() {
                    t.set([i, j], a * b);
                }
            }
        }
        t
    }
}

impl Tensor2 {
    /// The flip `τ(a⊗b) = b⊗a`.
    pub fn flip(&self) -> Self {
        self.permute([1, 0])
    }

    /// `self ⊗ b` as a three-tensor.
    pub fn outer_right(&self, e: &Element) -> Tensor3 {
        let mut t = Tensor3::zeros(self.d);
        for ([i, j], a) in self.nonzeros() {
            for (k, b) in e.data.iter().enumerate() {
                if !b.is_zero() {
                    t.set([i, j, k], a * b);
                }
            }
        }
        t
    }

    /// `b ⊗ self` as a three-tensor.
    pub fn outer_left(&self, e: &Element) -> Tensor3 {
        let mut t = Tensor3::zeros(self.d);
        for (i, b) in e.data.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for ([j, k], a) in self.nonzeros() {
                t.set([i, j, k], b * a);
            }
        }
        t
    }

    /// Contract the second leg against a vector: `Σ t^{ij} v_j b_i`.
    pub fn contract_second(&self, v: &[Scalar]) -> Element {
        let mut e = Element::zeros(self.d);
        for ([i, j], a) in self.nonzeros() {
            if !v[j].is_zero() {
                e.data[i] += &(a * &v[j]);
            }
        }
        e
    }
}

impl<const R: usize> fmt::Debug for Tensor<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nonzeros().map(|(idx, v)| format!("{v}*{idx:?}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
