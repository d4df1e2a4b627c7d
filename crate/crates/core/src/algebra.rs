//! Finite-dimensional algebras given by structure constants, algebra metrics
//! and the canonical invariant element `γ`.

use crate::error::{Error, Result};
use crate::linalg::{coordinates, Matrix};
use crate::scalar::Scalar;
use crate::tensor::{Element, Tensor, Tensor2, Tensor3};

/// An algebra with basis `b_0..b_{d-1}` and `b_i b_j = Σ_k C[i][j][k] b_k`.
/// No law is assumed; see [`Algebra::categories`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    structure: Vec<Scalar>,
    /// Nonzero entries of `b_i b_j`, indexed by `i * d + j`.
    sparse: Vec<Vec<(usize, Scalar)>>,
    labels: Vec<String>,
}

/// What [`Algebra::categories`] found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryReport {
    pub associative: bool,
    pub lie: bool,
    pub jordan: bool,
    pub commutative: bool,
    pub unit: Option<Element>,
}

impl CategoryReport {
    pub fn unital(&self) -> bool {
        self.unit.is_some()
    }
}

impl Algebra {
    /// Structure constants in row-major `[i][j][k]` order.
    pub fn new(dim: usize, structure: Vec<Scalar>, labels: Option<Vec<String>>) -> Result<Self> {
        if structure.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                got: structure.len(),
            });
        }
        let labels = match labels {
            Some(l) if l.len() != dim => {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: l.len(),
                })
            }
            Some(l) => l,
            None => (0..dim).map(|i| format!("b{}", i + 1)).collect(),
        };
        let sparse = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter_map(|k| {
                        let c = &structure[ij * dim + k];
                        (!c.is_zero()).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        Ok(Algebra {
            dim,
            structure,
            sparse,
            labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure(&self) -> &[Scalar] {
        &self.structure
    }

    /// Nonzero terms of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.sparse[i * self.dim + j]
    }

    fn check(&self, x: &Element) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// Unchecked product; panics on dimension mismatch.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zeros(self.dim);
        for (i, a) in x.data().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.data().iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.basis_product(i, j) {
                    out.add_at([*k], &(&ab * c));
                }
            }
        }
        out
    }

    /// Matrix of `L_a: b ↦ ab` in the distinguished basis (columns are images).
    pub fn left_matrix(&self, a: &Element) -> Matrix {
        let cols: Vec<Element> = (0..self.dim)
            .map(|j| self.mul(a, &Element::basis(self.dim, j)))
            .collect();
        Matrix::from_fn(self.dim, self.dim, |i, j| cols[j].coeff(i).clone())
    }

    /// Matrix of `R_a: b ↦ ba`.
    pub fn right_matrix(&self, a: &Element) -> Matrix {
        let cols: Vec<Element> = (0..self.dim)
            .map(|j| self.mul(&Element::basis(self.dim, j), a))
            .collect();
        Matrix::from_fn(self.dim, self.dim, |i, j| cols[j].coeff(i).clone())
    }

    /// `a^{(leg)} t`: multiply leg `leg` of `t` by `a` from the left.
    pub fn left_leg<const R: usize>(&self, a: &Element, leg: usize, t: &Tensor<R>) -> Tensor<R> {
        self.leg_action(a, leg, t, true)
    }

    /// `t a^{(leg)}`: multiply leg `leg` of `t` by `a` from the right.
    pub fn right_leg<const R: usize>(&self, a: &Element, leg: usize, t: &Tensor<R>) -> Tensor<R> {
        self.leg_action(a, leg, t, false)
    }

    fn leg_action<const R: usize>(&self, a: &Element, leg: usize, t: &Tensor<R>, left: bool) -> Tensor<R> {
        assert!(leg < R, "leg out of range");
        let mut out = Tensor::<R>::zeros(self.dim);
        for (idx, v) in t.nonzeros() {
            for (p, ap) in a.data().iter().enumerate() {
                if ap.is_zero() {
                    continue;
                }
                let prod = if left {
                    self.basis_product(p, idx[leg])
                } else {
                    self.basis_product(idx[leg], p)
                };
                let va = v * ap;
                for (k, c) in prod {
                    let mut j = idx;
                    j[leg] = *k;
                    out.add_at(j, &(&va * c));
                }
            }
        }
        out
    }

    /// Componentwise product in `A^{⊗R}`.
    pub fn tensor_mul<const R: usize>(&self, x: &Tensor<R>, y: &Tensor<R>) -> Tensor<R> {
        let mut out = Tensor::<R>::zeros(self.dim);
        let ynz: Vec<([usize; R], Scalar)> = y.nonzeros().map(|(i, v)| (i, v.clone())).collect();
        for (ix, vx) in x.nonzeros() {
            for (iy, vy) in &ynz {
                let coeff = vx * vy;
                // Expand the product leg by leg.
                let mut partial: Vec<([usize; R], Scalar)> = vec![([0; R], coeff)];
                for leg in 0..R {
                    let prod = self.basis_product(ix[leg], iy[leg]);
                    if prod.is_empty() {
                        partial.clear();
                        break;
                    }
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (idx, c) in &partial {
                        for (k, ck) in prod {
                            let mut j = *idx;
                            j[leg] = *k;
                            next.push((j, c * ck));
                        }
                    }
                    partial = next;
                }
                for (idx, c) in partial {
                    out.add_at(idx, &c);
                }
            }
        }
        out
    }

    /// `r13 r12`: `(a⊗1⊗b)(c⊗d⊗1) = ac ⊗ d ⊗ b` for `r13 = Σ a⊗b`, `r12 = Σ c⊗d`.
    pub fn leg13_12(&self, r13: &Tensor2, r12: &Tensor2) -> Tensor3 {
        let mut out = Tensor3::zeros(self.dim);
        let rhs: Vec<_> = r12.nonzeros().map(|(i, v)| (i, v.clone())).collect();
        for ([a, b], va) in r13.nonzeros() {
            for ([c, d], vc) in &rhs {
                let s = va * vc;
                for (k, ck) in self.basis_product(a, *c) {
                    out.add_at([*k, *d, b], &(&s * ck));
                }
            }
        }
        out
    }

    /// `r12 r23`: `(c⊗d⊗1)(1⊗e⊗f) = c ⊗ de ⊗ f`.
    pub fn leg12_23(&self, r12: &Tensor2, r23: &Tensor2) -> Tensor3 {
        let mut out = Tensor3::zeros(self.dim);
        let rhs: Vec<_> = r23.nonzeros().map(|(i, v)| (i, v.clone())).collect();
        for ([c, d], vc) in r12.nonzeros() {
            for ([e, f], ve) in &rhs {
                let s = vc * ve;
                for (k, ck) in self.basis_product(d, *e) {
                    out.add_at([c, *k, *f], &(&s * ck));
                }
            }
        }
        out
    }

    /// `r23 r13`: `(1⊗e⊗f)(a⊗1⊗b) = a ⊗ e ⊗ fb`.
    pub fn leg23_13(&self, r23: &Tensor2, r13: &Tensor2) -> Tensor3 {
        let mut out = Tensor3::zeros(self.dim);
        let rhs: Vec<_> = r13.nonzeros().map(|(i, v)| (i, v.clone())).collect();
        for ([e, f], ve) in r23.nonzeros() {
            for ([a, b], va) in &rhs {
                let s = ve * va;
                for (k, ck) in self.basis_product(f, *b) {
                    out.add_at([*a, e, *k], &(&s * ck));
                }
            }
        }
        out
    }

    fn basis(&self, i: usize) -> Element {
        Element::basis(self.dim, i)
    }

    /// First basis element `a` (and identity 1 or 2) violating
    /// `a^{(1)}t = t a^{(2)}`, resp. `a^{(2)}t = t a^{(1)}`.
    pub fn invariance_failure(&self, t: &Tensor2) -> Option<(usize, u8)> {
        for i in 0..self.dim {
            let a = Element::basis(self.dim, i);
            if self.left_leg(&a, 0, t) != self.right_leg(&a, 1, t) {
                return Some((i, 1));
            }
            if self.left_leg(&a, 1, t) != self.right_leg(&a, 0, t) {
                return Some((i, 2));
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    self.mul(&self.mul(&a, &b), &c) == self.mul(&a, &self.mul(&b, &c))
                })
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (0..i).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    pub fn is_lie(&self) -> bool {
        let d = self.dim;
        let anti = (0..d).all(|i| {
            (0..=i).all(|j| {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                let ji = self.mul(&self.basis(j), &self.basis(i));
                ij.add(&ji).is_zero()
            })
        });
        if !anti {
            return false;
        }
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let t1 = self.mul(&a, &self.mul(&b, &c));
                    let t2 = self.mul(&b, &self.mul(&c, &a));
                    let t3 = self.mul(&c, &self.mul(&a, &b));
                    t1.add(&t2).add(&t3).is_zero()
                })
            })
        })
    }

    /// Commutative and `(a²b)a = a²(ba)`. The identity is cubic in `a`, so it
    /// is tested on all sums of at most three distinct basis elements.
    pub fn is_jordan(&self) -> bool {
        if !self.is_commutative() {
            return false;
        }
        let d = self.dim;
        let mut candidates = Vec::new();
        for i in 0..d {
            candidates.push(self.basis(i));
            for j in i + 1..d {
                let ij = self.basis(i).add(&self.basis(j));
                for k in j + 1..d {
                    candidates.push(ij.add(&self.basis(k)));
                }
                candidates.push(ij);
            }
        }
        candidates.iter().all(|a| {
            let a2 = self.mul(a, a);
            (0..d).all(|j| {
                let b = self.basis(j);
                self.mul(&self.mul(&a2, &b), a) == self.mul(&a2, &self.mul(&b, a))
            })
        })
    }

    /// Two-sided unit, found by solving `u b_j = b_j = b_j u` for all `j`.
    pub fn unit(&self) -> Option<Element> {
        let d = self.dim;
        if d == 0 {
            return None;
        }
        // Unknown u = Σ u_p b_p; equations indexed by (side, j, k).
        let mut rows = Vec::with_capacity(2 * d * d);
        let mut rhs = Vec::with_capacity(2 * d * d);
        for j in 0..d {
            for k in 0..d {
                let target = if j == k { Scalar::one() } else { Scalar::zero() };
                rows.push((0..d).map(|p| self.structure_constant(p, j, k).clone()).collect());
                rhs.push(target.clone());
                rows.push((0..d).map(|p| self.structure_constant(j, p, k).clone()).collect());
                rhs.push(target);
            }
        }
        let m = Matrix::from_rows(rows, d);
        m.solve(&rhs).map(Element::from_vec)
    }

    pub fn categories(&self) -> CategoryReport {
        CategoryReport {
            associative: self.is_associative(),
            lie: self.is_lie(),
            jordan: self.is_jordan(),
            commutative: self.is_commutative(),
            unit: self.unit(),
        }
    }

    /// `U = A ⊕ k` with `(a1,u1)(a2,u2) = (a1a2 + u1a2 + u2a1, u1u2)`; the
    /// adjoined unit is the last basis vector.
    pub fn unitalize(&self) -> Algebra {
        let d = self.dim;
        let e = d + 1;
        let mut s = vec![Scalar::zero(); e * e * e];
        let idx = |i: usize, j: usize, k: usize| (i * e + j) * e + k;
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.basis_product(i, j) {
                    s[idx(i, j, *k)] = c.clone();
                }
            }
            s[idx(d, i, i)] = Scalar::one();
            s[idx(i, d, i)] = Scalar::one();
        }
        s[idx(d, d, d)] = Scalar::one();
        let mut labels = self.labels.clone();
        labels.push("1".to_string());
        Algebra::new(e, s, Some(labels)).expect("consistent dimensions")
    }

    /// The symmetrized algebra `a∘b = (ab + ba)/2`.
    pub fn symmetrized(&self) -> Algebra {
        let d = self.dim;
        let half = Scalar::ratio(1, 2);
        let s = (0..d * d * d)
            .map(|o| {
                let (ij, k) = (o / d, o % d);
                let (i, j) = (ij / d, ij % d);
                &(self.structure_constant(i, j, k) + self.structure_constant(j, i, k)) * &half
            })
            .collect();
        Algebra::new(d, s, Some(self.labels.clone())).expect("consistent dimensions")
    }

    /// Algebra spanned by the given `n×n` matrices (linearly independent and
    /// closed under `product`).
    pub fn from_matrices(
        n: usize,
        basis: &[Matrix],
        labels: Vec<String>,
        product: impl Fn(&Matrix, &Matrix) -> Matrix,
    ) -> Result<Self> {
        let d = basis.len();
        let flat: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|m| (0..n * n).map(|o| m.get(o / n, o % n).clone()).collect())
            .collect();
        let mut s = Vec::with_capacity(d * d * d);
        for a in basis {
            for b in basis {
                let p = product(a, b);
                let v: Vec<Scalar> = (0..n * n).map(|o| p.get(o / n, o % n).clone()).collect();
                let c = coordinates(&flat, &v)
                    .ok_or_else(|| Error::InvalidMetric("matrix basis is not closed under the product".into()))?;
                s.extend(c);
            }
        }
        Algebra::new(d, s, Some(labels))
    }
}

/// Matrix unit `e_{ij}` (0-based) in `M_n`.
pub fn matrix_unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m.set(i, j, Scalar::one());
    m
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    a.mul(b).expect("square matrices")
}

fn mat_add(a: &Matrix, b: &Matrix, sb: i64) -> Matrix {
    let s = Scalar::from_int(sb);
    Matrix::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j) + &(&s * b.get(i, j)))
}

fn trace(m: &Matrix) -> Scalar {
    (0..m.rows()).map(|i| m.get(i, i).clone()).sum()
}

/// An algebra together with a validated non-degenerate, symmetric,
/// associative bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricAlgebra {
    name: String,
    algebra: Algebra,
    gram: Matrix,
    gram_inv: Matrix,
    /// For `matrix:n`, the size `n`.
    matrix_size: Option<usize>,
}

impl MetricAlgebra {
    pub fn new(name: impl Into<String>, algebra: Algebra, gram: Matrix) -> Result<Self> {
        let d = algebra.dim();
        if gram.rows() != d || gram.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: gram.rows(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidMetric("Gram matrix is not symmetric".into()));
        }
        let gram_inv = gram
            .inverse()
            .ok_or_else(|| Error::InvalidMetric("Gram matrix is degenerate".into()))?;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    // β(b_i b_j, b_k) = β(b_i, b_j b_k)
                    let lhs: Scalar = algebra
                        .basis_product(i, j)
                        .iter()
                        .map(|(p, c)| c * gram.get(*p, k))
                        .sum();
                    let rhs: Scalar = algebra
                        .basis_product(j, k)
                        .iter()
                        .map(|(p, c)| c * gram.get(i, *p))
                        .sum();
                    if lhs != rhs {
                        return Err(Error::InvalidMetric(format!(
                            "not associative: β(b{}b{}, b{}) = {lhs} but β(b{}, b{}b{}) = {rhs}",
                            i + 1,
                            j + 1,
                            k + 1,
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(MetricAlgebra {
            name: name.into(),
            algebra,
            gram,
            gram_inv,
            matrix_size: None,
        })
    }

    /// Parse a name such as `matrix:2`, `lie:sl_2` or `jordan:sym_2`.
    pub fn named(spec: &str) -> Result<Self> {
        let unknown = || Error::UnknownAlgebra(spec.to_string());
        let (family, arg) = spec.split_once(':').ok_or_else(unknown)?;
        let parse_n = |s: &str| s.parse::<usize>().ok().filter(|&n| n >= 1).ok_or_else(unknown);
        match family {
            "matrix" => Self::matrix(parse_n(arg)?),
            "lie" => Self::sl(parse_n(arg.strip_prefix("sl_").ok_or_else(unknown)?)?),
            "jordan" => Self::sym(parse_n(arg.strip_prefix("sym_").ok_or_else(unknown)?)?),
            _ => Err(unknown()),
        }
    }

    /// `M_n` with basis `e_{ij}` (index `i*n + j`) and the trace form.
    pub fn matrix(n: usize) -> Result<Self> {
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            for j in 0..n {
                basis.push(matrix_unit(n, i, j));
                labels.push(format!("e{}{}", i + 1, j + 1));
            }
        }
        let alg = Algebra::from_matrices(n, &basis, labels, mat_mul)?;
        let gram = Matrix::from_fn(basis.len(), basis.len(), |a, b| trace(&mat_mul(&basis[a], &basis[b])));
        let mut m = Self::new(format!("matrix:{n}"), alg, gram)?;
        m.matrix_size = Some(n);
        Ok(m)
    }

    /// `sl_n` under the commutator with the Killing form. Basis: `e_{ij}` for
    /// `i<j`, then `h_i = e_ii − e_{i+1,i+1}`, then `e_{ij}` for `i>j`; for
    /// `n = 2` this is `e, h, f`.
    pub fn sl(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnknownAlgebra(format!("lie:sl_{n}")));
        }
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                basis.push(matrix_unit(n, i, j));
                labels.push(if n == 2 {
                    "e".into()
                } else {
                    format!("e{}{}", i + 1, j + 1)
                });
            }
        }
        for i in 0..n - 1 {
            basis.push(mat_add(&matrix_unit(n, i, i), &matrix_unit(n, i + 1, i + 1), -1));
            labels.push(if n == 2 { "h".into() } else { format!("h{}", i + 1) });
        }
        for i in 0..n {
            for j in 0..i {
                basis.push(matrix_unit(n, i, j));
                labels.push(if n == 2 {
                    "f".into()
                } else {
                    format!("e{}{}", i + 1, j + 1)
                });
            }
        }
        let bracket = |a: &Matrix, b: &Matrix| mat_add(&mat_mul(a, b), &mat_mul(b, a), -1);
        let alg = Algebra::from_matrices(n, &basis, labels, bracket)?;
        let d = alg.dim();
        let ad: Vec<Matrix> = (0..d).map(|i| alg.left_matrix(&Element::basis(d, i))).collect();
        let gram = Matrix::from_fn(d, d, |a, b| trace(&mat_mul(&ad[a], &ad[b])));
        Self::new(format!("lie:sl_{n}"), alg, gram)
    }

    /// Symmetric `n×n` matrices under `a∘b = (ab+ba)/2` with `β(a,b) = tr(ab)`.
    /// Basis: `e_ii`, then `e_ij + e_ji` for `i<j`.
    pub fn sym(n: usize) -> Result<Self> {
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            basis.push(matrix_unit(n, i, i));
            labels.push(format!("e{}{}", i + 1, i + 1));
        }
        for i in 0..n {
            for j in i + 1..n {
                basis.push(mat_add(&matrix_unit(n, i, j), &matrix_unit(n, j, i), 1));
                labels.push(format!("s{}{}", i + 1, j + 1));
            }
        }
        let half = Scalar::ratio(1, 2);
        let jordan = |a: &Matrix, b: &Matrix| {
            let s = mat_add(&mat_mul(a, b), &mat_mul(b, a), 1);
            Matrix::from_fn(n, n, |i, j| s.get(i, j) * &half)
        };
        let alg = Algebra::from_matrices(n, &basis, labels, jordan)?;
        let gram = Matrix::from_fn(basis.len(), basis.len(), |a, b| trace(&mat_mul(&basis[a], &basis[b])));
        Self::new(format!("jordan:sym_{n}"), alg, gram)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Matrix {
        &self.gram_inv
    }

    /// `Some(n)` when this is `matrix:n` with the matrix-unit basis.
    pub fn matrix_size(&self) -> Option<usize> {
        self.matrix_size
    }

    pub fn beta(&self, x: &Element, y: &Element) -> Scalar {
        let gy = self.gram.mul_vec(y.data());
        x.data()
            .iter()
            .zip(&gy)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// `β^{⊗2}(s, t) = Σ s^{ij} t^{kl} β(b_i,b_k) β(b_j,b_l)`.
    pub fn beta2(&self, s: &Tensor2, t: &Tensor2) -> Scalar {
        let mut acc = Scalar::zero();
        for ([i, j], a) in s.nonzeros() {
            for ([k, l], b) in t.nonzeros() {
                let g1 = self.gram.get(i, k);
                let g2 = self.gram.get(j, l);
                if !g1.is_zero() && !g2.is_zero() {
                    acc += &(&(a * b) * &(g1 * g2));
                }
            }
        }
        acc
    }

    /// `b_i*` with `β(b_i, b_j*) = δ_ij`.
    pub fn dual_basis(&self) -> Vec<Element> {
        let d = self.dim();
        (0..d)
            .map(|i| Element::from_vec((0..d).map(|j| self.gram_inv.get(j, i).clone()).collect()))
            .collect()
    }

    /// `γ = Σ b_i* ⊗ b_i`; its coefficient matrix is `G^{-1}`.
    pub fn gamma(&self) -> Tensor2 {
        let d = self.dim();
        let data = (0..d * d).map(|o| self.gram_inv.get(o / d, o % d).clone()).collect();
        Tensor2::from_data(d, data).expect("square")
    }

    /// Check `a^{(1)}t = t a^{(2)}` and `a^{(2)}t = t a^{(1)}` for every basis
    /// element; returns the first failing `(basis index, identity number)`.
    pub fn invariance_failure(&self, t: &Tensor2) -> Option<(usize, u8)> {
        self.algebra.invariance_failure(t)
    }

    pub fn check_gamma_invariance(&self) -> bool {
        self.invariance_failure(&self.gamma()).is_none()
    }

    /// The same algebra with the form rescaled by `s`.
    pub fn rescaled(&self, s: &Scalar) -> Result<Self> {
        let g = Matrix::from_fn(self.dim(), self.dim(), |i, j| self.gram.get(i, j) * s);
        let mut m = Self::new(self.name.clone(), self.algebra.clone(), g)?;
        m.matrix_size = self.matrix_size;
        Ok(m)
    }

    /// Index of the basis element labelled `label`.
    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.algebra.labels().iter().position(|l| l == label)
    }
}
