//! Exact graded linear algebra on parity-labelled orthonormal bases.

use std::collections::HashSet;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::Signature;
use crate::linalg::Matrix;
use crate::scalar::Cyclotomic8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("operator shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("operator is not parity-homogeneous")]
    NotHomogeneous,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed operator dump: {0}")]
    Dump(String),
}

/// Ordered basis labels with a parity bit each.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedBasis {
    labels: Vec<String>,
    parity: Vec<bool>,
}

impl GradedBasis {
    pub fn new(labels: Vec<String>, parity: Vec<bool>) -> Result<Self, OperatorError> {
        if labels.len() != parity.len() {
            return Err(OperatorError::ShapeMismatch("labels and parities differ in length".into()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(OperatorError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels, parity })
    }

    /// `even` even vectors then `odd` odd vectors, labelled `v0, v1, …`.
    pub fn split(even: usize, odd: usize) -> Self {
        let n = even + odd;
        Self { labels: (0..n).map(|i| format!("v{i}")).collect(), parity: (0..n).map(|i| i >= even).collect() }
    }

    /// The monomial basis of 𝕊_{p,q} = ℂl_{p,q} in ascending bitmask order.
    pub fn spinor(sig: Signature) -> Self {
        Self {
            labels: sig.monomials().map(|m| m.label()).collect(),
            parity: sig.monomials().map(|m| m.parity()).collect(),
        }
    }

    /// Product basis in lexicographic order (`self` most significant).
    pub fn tensor(&self, other: &Self) -> Self {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        let mut parity = Vec::with_capacity(self.dim() * other.dim());
        for (la, pa) in self.labels.iter().zip(&self.parity) {
            for (lb, pb) in other.labels.iter().zip(&other.parity) {
                labels.push(format!("{la}⊗{lb}"));
                parity.push(pa ^ pb);
            }
        }
        Self { labels, parity }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parity(&self, i: usize) -> bool {
        self.parity[i]
    }

    pub fn parities(&self) -> &[bool] {
        &self.parity
    }

    pub fn even_dim(&self) -> usize {
        self.parity.iter().filter(|p| !**p).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.parity.iter().filter(|p| **p).count()
    }
}

/// Parity class of an operator. The zero operator is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityClass {
    Even,
    Odd,
    Neither,
}

/// Graded kernel data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    /// `dim(ker ∩ V_even)`.
    pub even_dim: usize,
    /// `dim(ker ∩ V_odd)`.
    pub odd_dim: usize,
    /// An exact basis of the whole kernel; parity-homogeneous vectors first
    /// (even then odd) when the operator is homogeneous.
    pub basis: Vec<Vec<Cyclotomic8>>,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// True when the kernel is the direct sum of its parity parts.
    pub fn is_graded(&self) -> bool {
        self.even_dim + self.odd_dim == self.basis.len()
    }

    /// Parity convolution of dimensions, the graded dimension of `K₁ ⊗ K₂`.
    pub fn tensor_dims(&self, other: &Kernel) -> (usize, usize) {
        (
            self.even_dim * other.even_dim + self.odd_dim * other.odd_dim,
            self.even_dim * other.odd_dim + self.odd_dim * other.even_dim,
        )
    }
}

/// An exact endomorphism of a graded basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Operator {
    basis: Arc<GradedBasis>,
    matrix: Matrix,
}

impl Operator {
    pub fn new(basis: Arc<GradedBasis>, matrix: Matrix) -> Result<Self, OperatorError> {
        if matrix.rows() != basis.dim() || matrix.cols() != basis.dim() {
            return Err(OperatorError::ShapeMismatch(format!(
                "{}x{} matrix on a basis of dimension {}",
                matrix.rows(),
                matrix.cols(),
                basis.dim()
            )));
        }
        Ok(Self { basis, matrix })
    }

    pub fn identity(basis: Arc<GradedBasis>) -> Self {
        let n = basis.dim();
        Self { basis, matrix: Matrix::identity(n) }
    }

    pub fn zero(basis: Arc<GradedBasis>) -> Self {
        let n = basis.dim();
        Self { basis, matrix: Matrix::zeros(n, n) }
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn check_basis(&self, other: &Self) -> Result<(), OperatorError> {
        if self.basis == other.basis {
            Ok(())
        } else {
            Err(OperatorError::ShapeMismatch("operators on different bases".into()))
        }
    }

    pub fn adjoint(&self) -> Self {
        Self { basis: self.basis.clone(), matrix: self.matrix.conjugate_transpose() }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self, OperatorError> {
        self.check_basis(other)?;
        Ok(Self { basis: self.basis.clone(), matrix: self.matrix.mul(&other.matrix) })
    }

    pub fn add(&self, other: &Self) -> Result<Self, OperatorError> {
        self.check_basis(other)?;
        Ok(Self { basis: self.basis.clone(), matrix: self.matrix.add(&other.matrix) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, OperatorError> {
        self.check_basis(other)?;
        Ok(Self { basis: self.basis.clone(), matrix: self.matrix.sub(&other.matrix) })
    }

    pub fn scale(&self, c: &Cyclotomic8) -> Self {
        Self { basis: self.basis.clone(), matrix: self.matrix.scale(c) }
    }

    pub fn apply(&self, v: &[Cyclotomic8]) -> Vec<Cyclotomic8> {
        self.matrix.mul_vec(v)
    }

    pub fn parity_check(&self) -> ParityClass {
        let mut has_even = false;
        let mut has_odd = false;
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                if !self.matrix[(r, c)].is_zero() {
                    if self.basis.parity(r) == self.basis.parity(c) {
                        has_even = true;
                    } else {
                        has_odd = true;
                    }
                }
            }
        }
        match (has_even, has_odd) {
            (_, false) => ParityClass::Even,
            (false, true) => ParityClass::Odd,
            (true, true) => ParityClass::Neither,
        }
    }

    /// `Some(parity)` for homogeneous operators; zero reports even.
    pub fn parity(&self) -> Option<bool> {
        match self.parity_check() {
            ParityClass::Even => Some(false),
            ParityClass::Odd => Some(true),
            ParityClass::Neither => None,
        }
    }

    /// Odd in the sense of mapping each parity block to the other; zero qualifies.
    pub fn is_odd(&self) -> bool {
        self.matrix.is_zero() || self.parity_check() == ParityClass::Odd
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.matrix == self.matrix.conjugate_transpose()
    }

    pub fn is_skew_adjoint(&self) -> bool {
        self.matrix.conjugate_transpose() == self.matrix.scale(&Cyclotomic8::from_integer(-1))
    }

    pub fn is_unitary(&self) -> bool {
        self.matrix.conjugate_transpose().mul(&self.matrix) == Matrix::identity(self.dim())
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.rank() == self.dim()
    }

    /// True when `self = c · id`; returns `c`.
    pub fn as_scalar(&self) -> Option<Cyclotomic8> {
        let c = if self.dim() == 0 { Cyclotomic8::zero() } else { self.matrix[(0, 0)].clone() };
        (self.matrix == Matrix::identity(self.dim()).scale(&c)).then_some(c)
    }

    pub fn kernel(&self) -> Kernel {
        let even: Vec<usize> = (0..self.dim()).filter(|&i| !self.basis.parity(i)).collect();
        let odd: Vec<usize> = (0..self.dim()).filter(|&i| self.basis.parity(i)).collect();
        let restricted = |cols: &[usize]| -> Vec<Vec<Cyclotomic8>> {
            let sub = Matrix::from_fn(self.dim(), cols.len(), |r, c| self.matrix[(r, cols[c])].clone());
            sub.null_space()
                .into_iter()
                .map(|v| {
                    let mut full = vec![Cyclotomic8::zero(); self.dim()];
                    for (x, &c) in v.into_iter().zip(cols) {
                        full[c] = x;
                    }
                    full
                })
                .collect()
        };
        let even_part = restricted(&even);
        let odd_part = restricted(&odd);
        let (even_dim, odd_dim) = (even_part.len(), odd_part.len());
        let basis = if self.parity().is_some() {
            even_part.into_iter().chain(odd_part).collect()
        } else {
            self.matrix.null_space()
        };
        Kernel { even_dim, odd_dim, basis }
    }

    /// `(A ⊗ B)(v ⊗ w) = (−1)^{|B||v|} Av ⊗ Bw`.
    pub fn graded_tensor(&self, other: &Self) -> Result<Self, OperatorError> {
        let pb = other.parity().ok_or(OperatorError::NotHomogeneous)?;
        self.parity().ok_or(OperatorError::NotHomogeneous)?;
        let (na, nb) = (self.dim(), other.dim());
        let basis = Arc::new(self.basis.tensor(&other.basis));
        let mut matrix = Matrix::zeros(na * nb, na * nb);
        for i1 in 0..na {
            for j1 in 0..na {
                let a = &self.matrix[(i1, j1)];
                if a.is_zero() {
                    continue;
                }
                let a = a.clone().signed(pb && self.basis.parity(j1));
                for i2 in 0..nb {
                    for j2 in 0..nb {
                        let b = &other.matrix[(i2, j2)];
                        if !b.is_zero() {
                            matrix[(i1 * nb + i2, j1 * nb + j2)] = &a * b;
                        }
                    }
                }
            }
        }
        Ok(Self { basis, matrix })
    }

    /// `F ⊗ id + id ⊗ G` for odd self-adjoint `F`, `G`.
    pub fn tensor_sum(&self, other: &Self) -> Result<Self, OperatorError> {
        for (name, op) in [("left", self), ("right", other)] {
            if !op.is_odd() {
                return Err(OperatorError::Precondition(format!("{name} operand is not odd")));
            }
            if !op.is_self_adjoint() {
                return Err(OperatorError::Precondition(format!("{name} operand is not self-adjoint")));
            }
        }
        let left = self.graded_tensor(&Self::identity(other.basis.clone()))?;
        let right = Self::identity(self.basis.clone()).graded_tensor(other)?;
        left.add(&right)
    }

    pub fn to_dump(&self) -> OperatorDump {
        OperatorDump {
            basis: self
                .basis
                .labels
                .iter()
                .zip(&self.basis.parity)
                .map(|(l, p)| DumpLabel { label: l.clone(), parity: u8::from(*p) })
                .collect(),
            rows: (0..self.dim()).map(|r| self.matrix.row(r).iter().map(ToString::to_string).collect()).collect(),
        }
    }

    pub fn from_dump(dump: &OperatorDump) -> Result<Self, OperatorError> {
        let basis = GradedBasis::new(
            dump.basis.iter().map(|b| b.label.clone()).collect(),
            dump.basis.iter().map(|b| b.parity == 1).collect(),
        )?;
        let rows = dump
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.parse::<Cyclotomic8>().map_err(|e| OperatorError::Dump(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let matrix = if rows.is_empty() {
            Matrix::zeros(0, 0)
        } else {
            Matrix::from_rows(rows).ok_or_else(|| OperatorError::Dump("ragged rows".into()))?
        };
        Self::new(Arc::new(basis), matrix)
    }
}

impl std::fmt::Debug for Operator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Operator {:?} {:?}", self.basis.labels, self.matrix)
    }
}

/// Serialized operator: basis header and row-major entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorDump {
    pub basis: Vec<DumpLabel>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpLabel {
    pub label: String,
    pub parity: u8,
}

/// Random odd self-adjoint operator with Gaussian-integer entries in
/// `[−height, height]`: an arbitrary odd-to-even block `B` placed as
/// `offdiag(B, B*)`.
pub fn random_odd_self_adjoint<R: Rng>(basis: Arc<GradedBasis>, height: i64, rng: &mut R) -> Operator {
    let n = basis.dim();
    let mut matrix = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            if basis.parity(r) || !basis.parity(c) {
                continue;
            }
            let re = Cyclotomic8::from_integer(rng.random_range(-height..=height));
            let im = Cyclotomic8::from_integer(rng.random_range(-height..=height));
            let x = &re + &(&im * &Cyclotomic8::i());
            matrix[(c, r)] = x.conj();
            matrix[(r, c)] = x;
        }
    }
    Operator { basis, matrix }
}
