//! Real graded Clifford algebras ℂl_{p,q}.
//!
//! ℂl_{p,q} is the complex Clifford algebra on generators `e_1..e_{p+q}` with
//! `e_j e_k + e_k e_j = 2δ_{jk}`, so every generator squares to `+1`. The Real
//! structure is the antilinear algebra involution fixing `e_1..e_p` and
//! negating `e_{p+1}..e_{p+q}`.
//!
//! Basis monomials are bitmasks (bit `j` set means `e_{j+1}` is present),
//! always in increasing index order. Elements are sparse maps from monomials
//! to [`Cyclotomic8`] coefficients with no stored zeros, iterated in
//! ascending bitmask order.

mod morita;
mod parse;
mod tensor;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::{Cyclotomic8, ScalarError};

pub use morita::{morita_one_one, morita_one_one_with_cap, verify_morita, IsoWitness, MoritaCheck};
pub use tensor::{iso_phi, iso_phi_inv, TensorElement, TensorIso};

/// Default bound on `p + q`; the basis has `2^{p+q}` monomials.
pub const DEFAULT_CAP: usize = 12;
/// Hard bound imposed by the `u32` monomial bitmask.
pub const MAX_GENERATORS: usize = 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("p + q = {n} exceeds the dimension cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },
    #[error("tensor shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("element is not parity-homogeneous")]
    NotHomogeneous,
    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("cannot parse element {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The pair `(p, q)`: `p` conjugation-fixed generators followed by `q`
/// conjugation-negated ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self, CliffordError> {
        Self::with_cap(p, q, DEFAULT_CAP)
    }

    pub fn with_cap(p: usize, q: usize, cap: usize) -> Result<Self, CliffordError> {
        let n = p + q;
        let cap = cap.min(MAX_GENERATORS);
        if n > cap {
            return Err(CliffordError::CapExceeded { n, cap });
        }
        Ok(Self { p, q })
    }

    pub fn p(self) -> usize {
        self.p
    }

    pub fn q(self) -> usize {
        self.q
    }

    /// Number of generators.
    pub fn n(self) -> usize {
        self.p + self.q
    }

    /// Dimension `2^{p+q}` of the algebra.
    pub fn dim(self) -> usize {
        1 << self.n()
    }

    /// Bits of the conjugation-negated generators.
    pub fn negated_mask(self) -> u32 {
        (((1u64 << self.n()) - 1) as u32) & !(((1u64 << self.p) - 1) as u32)
    }

    pub fn monomials(self) -> impl Iterator<Item = Monomial> {
        (0..self.dim() as u32).map(Monomial)
    }

    fn check_same(self, other: Signature) -> Result<(), CliffordError> {
        if self == other {
            Ok(())
        } else {
            Err(CliffordError::SignatureMismatch { left: self, right: other })
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A basis monomial as a generator bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    /// `e_{index+1}` for a zero-based index.
    pub fn generator(index: usize) -> Self {
        Monomial(1 << index)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// `true` for odd monomials.
    pub fn parity(self) -> bool {
        self.0.count_ones() % 2 == 1
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    /// Zero-based generator indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                i
            })
        })
    }

    /// `self · other = ±(self ⊕ other)`; returns `(negative, product)`.
    ///
    /// The sign counts the transpositions needed to move each generator of
    /// `other` past the larger-index generators of `self`; repeated generators
    /// then cancel because `e_j² = +1`.
    pub fn product(self, other: Monomial) -> (bool, Monomial) {
        let mut swaps = 0u32;
        let mut bits = other.0;
        while bits != 0 {
            let j = bits.trailing_zeros();
            swaps += (self.0 >> j >> 1).count_ones();
            bits &= bits - 1;
        }
        (swaps % 2 == 1, Monomial(self.0 ^ other.0))
    }

    /// Sign of reversal `e_{i1}…e_{ir} ↦ e_{ir}…e_{i1}`.
    pub fn reversal_negative(self) -> bool {
        let r = self.grade();
        (r * r.saturating_sub(1) / 2) % 2 == 1
    }

    /// Sign of the Real involution: one factor `−1` per negated generator.
    pub fn involution_negative(self, sig: Signature) -> bool {
        (self.0 & sig.negated_mask()).count_ones() % 2 == 1
    }

    pub fn label(self) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        self.indices().map(|i| format!("e{}", i + 1)).collect()
    }
}

/// An element of ℂl_{p,q}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    sig: Signature,
    terms: BTreeMap<Monomial, Cyclotomic8>,
}

impl CliffordElement {
    pub fn zero(sig: Signature) -> Self {
        Self { sig, terms: BTreeMap::new() }
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, Cyclotomic8::one())
    }

    pub fn scalar(sig: Signature, c: Cyclotomic8) -> Self {
        Self::monomial(sig, Monomial::ONE, c)
    }

    pub fn monomial(sig: Signature, m: Monomial, c: Cyclotomic8) -> Self {
        let mut out = Self::zero(sig);
        out.add_term(m, c);
        out
    }

    /// `e_index` with 1-based `index`.
    pub fn generator(sig: Signature, index: usize) -> Result<Self, CliffordError> {
        if index == 0 || index > sig.n() {
            return Err(CliffordError::IndexOutOfRange { index, n: sig.n() });
        }
        Ok(Self::monomial(sig, Monomial::generator(index - 1), Cyclotomic8::one()))
    }

    /// `Σ x_i e_i`.
    pub fn vector(sig: Signature, coords: &[Cyclotomic8]) -> Result<Self, CliffordError> {
        if coords.len() != sig.n() {
            return Err(CliffordError::ShapeMismatch(format!(
                "vector has {} coordinates, signature {} needs {}",
                coords.len(),
                sig,
                sig.n()
            )));
        }
        let mut out = Self::zero(sig);
        for (i, c) in coords.iter().enumerate() {
            out.add_term(Monomial::generator(i), c.clone());
        }
        Ok(out)
    }

    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Monomial, Cyclotomic8)>) -> Self {
        let mut out = Self::zero(sig);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Cyclotomic8)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> Cyclotomic8 {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// Accumulates `c · m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Cyclotomic8) {
        debug_assert!(m.0 < self.sig.dim() as u32, "monomial outside signature");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The scalar value if the element is a multiple of `1`.
    pub fn as_scalar(&self) -> Option<Cyclotomic8> {
        match self.terms.len() {
            0 => Some(Cyclotomic8::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Coordinates if the element lies in the span of the generators.
    pub fn as_vector(&self) -> Option<Vec<Cyclotomic8>> {
        if self.terms.keys().any(|m| m.grade() != 1) {
            return None;
        }
        Some((0..self.sig.n()).map(|i| self.coefficient(Monomial::generator(i))).collect())
    }

    /// `Some(parity)` when all monomials share a parity; zero counts as even.
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let first = it.next().unwrap_or(false);
        it.all(|p| p == first).then_some(first)
    }

    pub fn scale(&self, c: &Cyclotomic8) -> Self {
        if c.is_zero() {
            return Self::zero(self.sig);
        }
        Self { sig: self.sig, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn map_terms(&self, f: impl Fn(Monomial, &Cyclotomic8) -> Cyclotomic8) -> Self {
        Self::from_terms(self.sig, self.terms.iter().map(|(m, c)| (*m, f(*m, c))))
    }

    /// Clifford product.
    pub fn multiply(&self, other: &Self) -> Result<Self, CliffordError> {
        self.sig.check_same(other.sig)?;
        let mut out = Self::zero(self.sig);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                let (neg, m) = ma.product(*mb);
                out.add_term(m, (a * b).signed(neg));
            }
        }
        Ok(out)
    }

    /// `self · m`, cheaper than a general product.
    pub fn right_mul_monomial(&self, m: Monomial) -> Self {
        let terms = self.terms.iter().map(|(ma, a)| {
            let (neg, p) = ma.product(m);
            (p, a.clone().signed(neg))
        });
        Self { sig: self.sig, terms: terms.collect() }
    }

    /// `m · self`.
    pub fn left_mul_monomial(&self, m: Monomial) -> Self {
        let terms = self.terms.iter().map(|(mb, b)| {
            let (neg, p) = m.product(*mb);
            (p, b.clone().signed(neg))
        });
        Self { sig: self.sig, terms: terms.collect() }
    }

    /// The Real involution: antilinear, fixes `e_j` for `j ≤ p`, negates the rest.
    pub fn real_involution(&self) -> Self {
        self.map_terms(|m, c| c.conj().signed(m.involution_negative(self.sig)))
    }

    /// The grading automorphism `a ↦ (−1)^{|a|} a`.
    pub fn grade_involution(&self) -> Self {
        self.map_terms(|m, c| c.clone().signed(m.parity()))
    }

    /// Linear anti-automorphism reversing generator order.
    pub fn reversal(&self) -> Self {
        self.map_terms(|m, c| c.clone().signed(m.reversal_negative()))
    }

    /// The adjoint for the monomial-orthonormal inner product: conjugate the
    /// coefficients and reverse. Generators are self-adjoint.
    pub fn star(&self) -> Self {
        self.map_terms(|m, c| c.conj().signed(m.reversal_negative()))
    }

    /// Two-sided inverse.
    ///
    /// Tries `a⁻¹ = a* / (a a*)` first, which covers every Pin^c element; falls
    /// back to solving with the left-regular matrix.
    pub fn inverse(&self) -> Result<Self, CliffordError> {
        if self.is_zero() {
            return Err(CliffordError::NotInvertible);
        }
        let star = self.star();
        let prod = self * &star;
        if let Some(s) = prod.as_scalar() {
            if !s.is_zero() {
                let left = (&star * self).as_scalar();
                if left.as_ref() == Some(&s) {
                    return Ok(star.scale(&s.inv()?));
                }
            }
        }
        let inv = self.left_regular_matrix().inverse().ok_or(CliffordError::NotInvertible)?;
        let column = inv.column(0);
        Ok(Self::from_terms(self.sig, self.sig.monomials().zip(column)))
    }

    /// Matrix of `v ↦ self · v` in the monomial basis (column `m` is `self · m`).
    pub fn left_regular_matrix(&self) -> Matrix {
        let dim = self.sig.dim();
        let mut out = Matrix::zeros(dim, dim);
        for col in self.sig.monomials() {
            for (ma, a) in &self.terms {
                let (neg, m) = ma.product(col);
                out[(m.0 as usize, col.0 as usize)] = a.clone().signed(neg);
            }
        }
        out
    }

    /// Product of the opposite algebra, `a ·op b = (−1)^{|a||b|} b · a`.
    pub fn opposite_multiply(&self, other: &Self) -> Result<Self, CliffordError> {
        self.sig.check_same(other.sig)?;
        let pa = self.parity().ok_or(CliffordError::NotHomogeneous)?;
        let pb = other.parity().ok_or(CliffordError::NotHomogeneous)?;
        let prod = other.multiply(self)?;
        Ok(if pa && pb { -prod } else { prod })
    }

    pub fn parse(sig: Signature, text: &str) -> Result<Self, CliffordError> {
        parse::parse_element(sig, text)
    }
}

/// Basis of the real fixed subalgebra `Cl_{p,q}`: all ordered products of
/// `e_1..e_p, i·e_{p+1}..i·e_{p+q}`, in ascending bitmask order.
pub fn fixed_subalgebra_basis(sig: Signature) -> Vec<CliffordElement> {
    let neg = sig.negated_mask();
    sig.monomials()
        .map(|m| {
            let r = (m.0 & neg).count_ones() as i64;
            CliffordElement::monomial(sig, m, Cyclotomic8::zeta_pow(2 * r))
        })
        .collect()
}

impl<'a> Mul<&'a CliffordElement> for &'a CliffordElement {
    type Output = CliffordElement;
    /// Panics on signature mismatch; use [`CliffordElement::multiply`] for a checked product.
    fn mul(self, rhs: &'a CliffordElement) -> CliffordElement {
        self.multiply(rhs).expect("Clifford product of mismatched signatures")
    }
}

impl<'a> Add<&'a CliffordElement> for &'a CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: &'a CliffordElement) -> CliffordElement {
        self.sig.check_same(rhs.sig).expect("Clifford sum of mismatched signatures");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a CliffordElement> for &'a CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: &'a CliffordElement) -> CliffordElement {
        self + &(-rhs)
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        CliffordElement { sig: self.sig, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        -&self
    }
}

/// Renders a coefficient and a basis label as one signed term.
pub(crate) fn render_term(first: bool, c: &Cyclotomic8, label: &str, out: &mut String) {
    let text = c.to_string();
    let compound = text[1..].contains(" + ") || text[1..].contains(" - ");
    let (negative, magnitude) = if compound {
        (false, format!("({text})"))
    } else if let Some(rest) = text.strip_prefix('-') {
        (true, rest.to_string())
    } else {
        (false, text)
    };
    if first {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    match (label, magnitude.as_str()) {
        ("1", _) => out.push_str(&magnitude),
        (_, "1") => out.push_str(label),
        _ => {
            out.push_str(&magnitude);
            out.push_str(" * ");
            out.push_str(label);
        }
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            render_term(i == 0, c, &m.label(), &mut out);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl{}[{}]", self.sig, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn e(s: Signature, i: usize) -> CliffordElement {
        CliffordElement::generator(s, i).unwrap()
    }

    #[test]
    fn generator_relations() {
        let s = sig(2, 0);
        let e12 = CliffordElement::monomial(s, Monomial(0b11), Cyclotomic8::one());
        assert_eq!(&e(s, 1) * &e(s, 2), e12);
        assert_eq!(&e(s, 2) * &e(s, 1), -&e12);
        assert_eq!(&e(s, 1) * &e(s, 1), CliffordElement::one(s));
        // e12 squares to -1.
        assert_eq!(&e12 * &e12, -CliffordElement::one(s));
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        let a = e(sig(1, 0), 1);
        let b = e(sig(0, 1), 1);
        assert!(matches!(a.multiply(&b), Err(CliffordError::SignatureMismatch { .. })));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(Signature::new(6, 6).is_ok());
        assert!(matches!(Signature::new(7, 6), Err(CliffordError::CapExceeded { n: 13, cap: 12 })));
        assert!(Signature::with_cap(7, 6, 14).is_ok());
    }

    #[test]
    fn involution_examples() {
        let s = sig(1, 1);
        assert_eq!(e(s, 2).real_involution(), -e(s, 2));
        assert_eq!(e(s, 1).real_involution(), e(s, 1));
        let i1 = CliffordElement::scalar(s, Cyclotomic8::i());
        assert_eq!(i1.real_involution(), CliffordElement::scalar(s, -Cyclotomic8::i()));
    }

    #[test]
    fn opposite_product_examples() {
        let s = sig(2, 0);
        let e12 = &e(s, 1) * &e(s, 2);
        assert_eq!(e(s, 1).opposite_multiply(&e(s, 2)).unwrap(), e12);
        assert_eq!(CliffordElement::one(s).opposite_multiply(&e(s, 1)).unwrap(), e(s, 1));
        assert_eq!(e(s, 1).opposite_multiply(&e(s, 1)).unwrap(), -CliffordElement::one(s));
        let mixed = &CliffordElement::one(s) + &e(s, 1);
        assert_eq!(mixed.opposite_multiply(&e(s, 1)), Err(CliffordError::NotHomogeneous));
    }

    #[test]
    fn fixed_subalgebra_examples() {
        let b01 = fixed_subalgebra_basis(sig(0, 1));
        assert_eq!(b01.len(), 2);
        assert_eq!(&b01[1] * &b01[1], -CliffordElement::one(sig(0, 1)));
        let b10 = fixed_subalgebra_basis(sig(1, 0));
        assert_eq!(b10, vec![CliffordElement::one(sig(1, 0)), e(sig(1, 0), 1)]);
        let s = sig(1, 1);
        let b11 = fixed_subalgebra_basis(s);
        let i = CliffordElement::scalar(s, Cyclotomic8::i());
        let expected = vec![CliffordElement::one(s), e(s, 1), &i * &e(s, 2), &i * &(&e(s, 1) * &e(s, 2))];
        assert_eq!(b11, expected);
        for b in &b11 {
            assert_eq!(&b.real_involution(), b);
        }
    }

    #[test]
    fn inverse_of_vector_and_non_unit() {
        let s = sig(2, 0);
        let v = CliffordElement::vector(s, &[Cyclotomic8::from_integer(3), Cyclotomic8::from_integer(4)]).unwrap();
        let inv = v.inverse().unwrap();
        assert_eq!(&v * &inv, CliffordElement::one(s));
        // 1 + e1 is a zero divisor: (1 + e1)(1 - e1) = 0.
        let zd = &CliffordElement::one(s) + &e(s, 1);
        assert_eq!(zd.inverse(), Err(CliffordError::NotInvertible));
        // 2 + e1 is invertible but not a scalar multiple of a unitary; exercises the fallback.
        let a = &CliffordElement::scalar(s, Cyclotomic8::from_integer(2)) + &(&e(s, 1) * &e(s, 2));
        let b = &a + &e(s, 1);
        let inv = b.inverse().unwrap();
        assert_eq!(&b * &inv, CliffordElement::one(s));
        assert_eq!(&inv * &b, CliffordElement::one(s));
    }

    #[test]
    fn rendering_and_parsing() {
        let s = sig(3, 0);
        let x = CliffordElement::parse(s, "1/2 * e1e3 - e2 + (1 + z) * e1 + 3").unwrap();
        assert_eq!(x.to_string(), "3 + (1 + z) * e1 - e2 + 1/2 * e1e3");
        assert_eq!(CliffordElement::parse(s, &x.to_string()).unwrap(), x);
        assert_eq!(CliffordElement::parse(s, "e2e1").unwrap(), -&(&e(s, 1) * &e(s, 2)));
        assert_eq!(CliffordElement::parse(s, "e1e1").unwrap(), CliffordElement::one(s));
        assert_eq!(CliffordElement::parse(s, "0").unwrap(), CliffordElement::zero(s));
        assert_eq!(CliffordElement::parse(s, "i*e2").unwrap().to_string(), "z^2 * e2");
        assert!(CliffordElement::parse(s, "e4").is_err());
        assert!(CliffordElement::parse(s, "e1 +").is_err());
    }
}
