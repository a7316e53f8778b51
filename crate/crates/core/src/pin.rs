//! Pin^c elements, the twisted adjoint representation, lifts of signed
//! permutations and the spinor representation on 𝕊_{p,q} = ℂl_{p,q}.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::{CliffordElement, CliffordError, Monomial, Signature};
use crate::linalg::Matrix;
use crate::operator::{GradedBasis, Operator};
use crate::scalar::Cyclotomic8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PinError {
    #[error("matrix is not orthogonal with real entries")]
    NotOrthogonal,
    #[error("matrix is not a signed permutation")]
    NotSignedPermutation,
    #[error("not in Pin^c: {0}")]
    NotInPinC(String),
    #[error("cannot parse signed permutation {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("internal lift error: {0}")]
    Internal(String),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

/// A real orthogonal matrix `MᵀM = I` acting on coordinates `e_1..e_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrthogonalMatrix {
    m: Matrix,
}

impl OrthogonalMatrix {
    pub fn new(m: Matrix) -> Result<Self, PinError> {
        if !m.is_square() || !m.entries().iter().all(Cyclotomic8::is_real) {
            return Err(PinError::NotOrthogonal);
        }
        if m.transpose().mul(&m) != Matrix::identity(m.rows()) {
            return Err(PinError::NotOrthogonal);
        }
        Ok(Self { m })
    }

    pub fn identity(n: usize) -> Self {
        Self { m: Matrix::identity(n) }
    }

    /// `M e_j = (−1)^{negate[j]} e_{perm[j]}` (zero-based).
    pub fn signed_permutation(perm: &[usize], negate: &[bool]) -> Result<Self, PinError> {
        let n = perm.len();
        let mut seen = vec![false; n];
        if negate.len() != n {
            return Err(PinError::NotSignedPermutation);
        }
        let mut m = Matrix::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(PinError::NotSignedPermutation);
            }
            m[(i, j)] = Cyclotomic8::one().signed(negate[j]);
        }
        Ok(Self { m })
    }

    /// Diagonal sign matrix flipping the listed zero-based coordinates.
    pub fn flip(n: usize, coords: &[usize]) -> Self {
        let negate: Vec<bool> = (0..n).map(|i| coords.contains(&i)).collect();
        Self::signed_permutation(&(0..n).collect::<Vec<_>>(), &negate).expect("identity permutation")
    }

    /// Transposition of zero-based coordinates `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(a, b);
        Self::signed_permutation(&perm, &vec![false; n]).expect("valid transposition")
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { m: self.m.mul(&other.m) }
    }

    pub fn transpose(&self) -> Self {
        Self { m: self.m.transpose() }
    }

    pub fn det(&self) -> Cyclotomic8 {
        self.m.determinant().expect("square")
    }

    /// True when `det = −1`.
    pub fn det_negative(&self) -> bool {
        self.det() == Cyclotomic8::from_integer(-1)
    }

    /// `(perm, negate)` with `M e_j = (−1)^{negate[j]} e_{perm[j]}`.
    pub fn as_signed_permutation(&self) -> Option<(Vec<usize>, Vec<bool>)> {
        let n = self.n();
        let one = Cyclotomic8::one();
        let minus = -&one;
        let mut perm = Vec::with_capacity(n);
        let mut negate = Vec::with_capacity(n);
        for j in 0..n {
            let nonzero: Vec<usize> = (0..n).filter(|&i| !self.m[(i, j)].is_zero()).collect();
            let [i] = nonzero[..] else { return None };
            let x = &self.m[(i, j)];
            if *x != one && *x != minus {
                return None;
            }
            perm.push(i);
            negate.push(*x == minus);
        }
        Some((perm, negate))
    }

    pub fn apply(&self, x: &[Cyclotomic8]) -> Vec<Cyclotomic8> {
        self.m.mul_vec(x)
    }

    /// The functorial algebra automorphism determined by `e_i ↦ Σ_r M_{ri} e_r`.
    pub fn act_on_clifford(&self, x: &CliffordElement) -> Result<CliffordElement, PinError> {
        let sig = x.signature();
        if sig.n() != self.n() {
            return Err(PinError::Clifford(CliffordError::ShapeMismatch(format!(
                "{}x{} matrix on signature {}",
                self.n(),
                self.n(),
                sig
            ))));
        }
        let columns: Vec<CliffordElement> =
            (0..self.n()).map(|i| CliffordElement::vector(sig, &self.m.column(i))).collect::<Result<_, _>>()?;
        let mut out = CliffordElement::zero(sig);
        for (m, c) in x.terms() {
            let image = m.indices().fold(CliffordElement::one(sig), |acc, i| &acc * &columns[i]);
            for (mi, ci) in image.terms() {
                out.add_term(mi, c * ci);
            }
        }
        Ok(out)
    }

    /// Cycle-plus-signs notation, e.g. `(1 2 3) -2`; `id` for the identity.
    pub fn to_notation(&self) -> Option<String> {
        let (perm, negate) = self.as_signed_permutation()?;
        let n = perm.len();
        let mut parts = Vec::new();
        let mut visited = vec![false; n];
        for start in 0..n {
            if visited[start] || perm[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !visited[j] {
                visited[j] = true;
                cycle.push((j + 1).to_string());
                j = perm[j];
            }
            parts.push(format!("({})", cycle.join(" ")));
        }
        let mut flipped: Vec<usize> = (0..n).filter(|&j| negate[j]).map(|j| perm[j]).collect();
        flipped.sort_unstable();
        parts.extend(flipped.into_iter().map(|i| format!("-{}", i + 1)));
        Some(if parts.is_empty() { "id".into() } else { parts.join(" ") })
    }

    /// Parses the notation of [`Self::to_notation`] for an `n × n` matrix.
    ///
    /// Cycles `(a b c)` send `e_a → e_b → e_c → e_a`; a token `-i` then
    /// negates output coordinate `i`.
    pub fn parse_notation(n: usize, text: &str) -> Result<Self, PinError> {
        let fail = |reason: &str| PinError::Parse { input: text.to_string(), reason: reason.to_string() };
        let mut perm: Vec<usize> = (0..n).collect();
        let mut flips = Vec::new();
        let spaced = text.replace('(', " ( ").replace(')', " ) ");
        let mut tokens = spaced.split_whitespace().peekable();
        let index = |s: &str| -> Result<usize, PinError> {
            let i: usize = s.parse().map_err(|_| fail("expected a coordinate index"))?;
            if i == 0 || i > n {
                return Err(fail("coordinate index out of range"));
            }
            Ok(i - 1)
        };
        let mut used = vec![false; n];
        while let Some(tok) = tokens.next() {
            match tok {
                "id" => {}
                "(" => {
                    let mut cycle = Vec::new();
                    loop {
                        match tokens.next() {
                            Some(")") => break,
                            Some(t) => cycle.push(index(t)?),
                            None => return Err(fail("unclosed cycle")),
                        }
                    }
                    for &c in &cycle {
                        if std::mem::replace(&mut used[c], true) {
                            return Err(fail("cycles are not disjoint"));
                        }
                    }
                    for (a, &c) in cycle.iter().enumerate() {
                        perm[c] = cycle[(a + 1) % cycle.len()];
                    }
                }
                t if t.starts_with('-') => flips.push(index(&t[1..])?),
                _ => return Err(fail("unexpected token")),
            }
        }
        let p = Self::signed_permutation(&perm, &vec![false; n])?;
        Ok(Self::flip(n, &flips).compose(&p))
    }
}

impl fmt::Debug for OrthogonalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_notation() {
            Some(s) => write!(f, "OrthogonalMatrix({s})"),
            None => write!(f, "OrthogonalMatrix {:?}", self.m),
        }
    }
}

/// A parity-homogeneous invertible Clifford element whose twisted adjoint
/// action preserves the span of the generators.
#[derive(Clone, PartialEq, Eq)]
pub struct PinElement {
    value: CliffordElement,
    inverse: CliffordElement,
    parity: bool,
    adjoint: OrthogonalMatrix,
}

/// Group membership flags of a [`PinElement`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    /// `ω* ω = 1`: a unit scalar times a product of unit vectors.
    pub pin_c: bool,
    pub pin: bool,
    pub spin_c: bool,
    pub spin: bool,
}

impl PinElement {
    pub fn new(value: CliffordElement) -> Result<Self, PinError> {
        let parity = value.parity().ok_or_else(|| PinError::NotInPinC("not parity-homogeneous".into()))?;
        let inverse = value.inverse().map_err(|_| PinError::NotInPinC("not invertible".into()))?;
        let adjoint = twisted_adjoint_raw(&value, &inverse, parity)?;
        Ok(Self { value, inverse, parity, adjoint })
    }

    pub fn one(sig: Signature) -> Self {
        Self::new(CliffordElement::one(sig)).expect("1 is a unit")
    }

    pub fn value(&self) -> &CliffordElement {
        &self.value
    }

    pub fn inverse(&self) -> &CliffordElement {
        &self.inverse
    }

    pub fn parity(&self) -> bool {
        self.parity
    }

    pub fn signature(&self) -> Signature {
        self.value.signature()
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, PinError> {
        let value = self.value.multiply(&other.value)?;
        let inverse = other.inverse.multiply(&self.inverse)?;
        let adjoint = self.adjoint.compose(&other.adjoint);
        Ok(Self { value, inverse, parity: self.parity ^ other.parity, adjoint })
    }

    pub fn scale(&self, c: &Cyclotomic8) -> Result<Self, PinError> {
        let cinv = c.inv().map_err(|_| PinError::NotInPinC("zero scalar".into()))?;
        Ok(Self { value: self.value.scale(c), inverse: self.inverse.scale(&cinv), ..self.clone() })
    }

    pub fn membership(&self) -> Membership {
        let unit = (&self.value.star() * &self.value) == CliffordElement::one(self.signature());
        let pin = self.value.real_involution() == self.value;
        let spin_c = !self.parity;
        Membership { pin_c: unit, pin, spin_c, spin: pin && spin_c }
    }
}

impl fmt::Debug for PinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PinElement({})", self.value)
    }
}

impl fmt::Display for PinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

fn twisted_adjoint_raw(
    value: &CliffordElement,
    inverse: &CliffordElement,
    parity: bool,
) -> Result<OrthogonalMatrix, PinError> {
    let sig = value.signature();
    let n = sig.n();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        let e = CliffordElement::monomial(sig, Monomial::generator(i), Cyclotomic8::one());
        let image = &(value * &e) * inverse;
        let coords = image.as_vector().ok_or_else(|| {
            PinError::NotInPinC(format!("twisted adjoint moves e{} out of the generator span", i + 1))
        })?;
        for (r, c) in coords.into_iter().enumerate() {
            m[(r, i)] = c.signed(parity);
        }
    }
    OrthogonalMatrix::new(m).map_err(|_| PinError::NotInPinC("twisted adjoint is not orthogonal".into()))
}

/// Matrix of `x ↦ (−1)^{|ω|} ω x ω⁻¹` on the span of the generators.
pub fn twisted_adjoint(omega: &PinElement) -> &OrthogonalMatrix {
    &omega.adjoint
}

/// Lift of a unit vector: `Ad(u)` is the reflection through `u^⊥`.
pub fn reflection_lift(sig: Signature, u: &[Cyclotomic8]) -> Result<PinElement, PinError> {
    let norm: Cyclotomic8 = u.iter().fold(Cyclotomic8::zero(), |acc, x| &acc + &(x * x));
    if !norm.is_one() || !u.iter().all(Cyclotomic8::is_real) {
        return Err(PinError::NotInPinC("reflection vector must be a real unit vector".into()));
    }
    PinElement::new(CliffordElement::vector(sig, u)?)
}

/// Canonical lift of a signed permutation matrix `M = F·P`.
///
/// `F` is the diagonal of output signs and lifts to the ascending product of
/// the flipped generators. `P` is sorted to the identity by adjacent column
/// swaps `P s_{j1} ⋯ s_{jm} = I`, so `P = s_{jm} ⋯ s_{j1}`, and each `s_j`
/// lifts to `(e_j − e_{j+1})/√2`.
pub fn lift_signed_permutation(sig: Signature, m: &OrthogonalMatrix) -> Result<PinElement, PinError> {
    if m.n() != sig.n() {
        return Err(PinError::NotSignedPermutation);
    }
    let (perm, negate) = m.as_signed_permutation().ok_or(PinError::NotSignedPermutation)?;
    let n = sig.n();
    let mut flipped: Vec<usize> = (0..n).filter(|&j| negate[j]).map(|j| perm[j]).collect();
    flipped.sort_unstable();
    let mut value = CliffordElement::one(sig);
    for i in flipped {
        value = value.right_mul_monomial(Monomial::generator(i));
    }
    let mut sigma = perm;
    let mut swaps = Vec::new();
    for pass in 0..n {
        for j in 0..n.saturating_sub(pass + 1) {
            if sigma[j] > sigma[j + 1] {
                sigma.swap(j, j + 1);
                swaps.push(j);
            }
        }
    }
    let h = Cyclotomic8::inv_sqrt2();
    for &j in swaps.iter().rev() {
        let mut t = CliffordElement::zero(sig);
        t.add_term(Monomial::generator(j), h.clone());
        t.add_term(Monomial::generator(j + 1), -&h);
        value = &value * &t;
    }
    let lifted = PinElement::new(value)?;
    if lifted.adjoint != *m {
        return Err(PinError::Internal(format!("lift of {:?} has adjoint {:?}", m, lifted.adjoint)));
    }
    Ok(lifted)
}

/// Basis of 𝕊_{p,q}, shared by spinor operators of one signature.
pub fn spinor_basis(sig: Signature) -> Arc<GradedBasis> {
    Arc::new(GradedBasis::spinor(sig))
}

/// Left multiplication by `ω` on 𝕊_{p,q} in the monomial basis.
pub fn spinor_rep(omega: &PinElement) -> Operator {
    left_multiplication(&omega.value)
}

/// Left multiplication by any Clifford element.
pub fn left_multiplication(x: &CliffordElement) -> Operator {
    Operator::new(spinor_basis(x.signature()), x.left_regular_matrix()).expect("square regular matrix")
}

/// `D = diag((−1)^{#negated generators})`; the Real structure of 𝕊_{p,q} is
/// `v ↦ D·conj(v)`, so `γ(bar ω) = D·conj(γ(ω))·D`.
pub fn spinor_real_structure(sig: Signature) -> Matrix {
    let mut d = Matrix::zeros(sig.dim(), sig.dim());
    for m in sig.monomials() {
        d[(m.0 as usize, m.0 as usize)] = Cyclotomic8::one().signed(m.involution_negative(sig));
    }
    d
}

/// Convention for the right Clifford action on 𝕊_{p,q}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RightAction {
    /// `v ↦ v·e`: strictly commutes with left multiplication, self-adjoint.
    Plain,
    /// `v ↦ (−1)^{|v|} v·e`: graded-commutes, skew-adjoint.
    Koszul,
}

impl FromStr for RightAction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" => Ok(Self::Plain),
            "koszul" => Ok(Self::Koszul),
            _ => Err(format!("unknown right-action variant {s:?}")),
        }
    }
}

/// Right action of the generator `e_index` (1-based).
pub fn right_action(index: usize, sig: Signature, variant: RightAction) -> Result<Operator, PinError> {
    if index == 0 || index > sig.n() {
        return Err(CliffordError::IndexOutOfRange { index, n: sig.n() }.into());
    }
    let e = Monomial::generator(index - 1);
    let mut m = Matrix::zeros(sig.dim(), sig.dim());
    for v in sig.monomials() {
        let (neg, out) = v.product(e);
        let koszul = variant == RightAction::Koszul && v.parity();
        m[(out.0 as usize, v.0 as usize)] = Cyclotomic8::one().signed(neg ^ koszul);
    }
    Ok(Operator::new(spinor_basis(sig), m).expect("square"))
}

/// A real unit vector with rational coordinates, by inverse stereographic
/// projection of an integer point with coordinates in `[−height, height]`.
pub fn random_unit_vector<R: Rng>(n: usize, height: i64, rng: &mut R) -> Vec<Cyclotomic8> {
    if n == 1 {
        return vec![Cyclotomic8::one().signed(rng.random())];
    }
    let t: Vec<i64> = (0..n - 1).map(|_| rng.random_range(-height..=height)).collect();
    let s: i64 = t.iter().map(|x| x * x).sum();
    let mut v: Vec<Cyclotomic8> = t.iter().map(|x| Cyclotomic8::from_ratio(2 * x, 1 + s)).collect();
    v.push(Cyclotomic8::from_ratio(s - 1, 1 + s));
    let pivot = rng.random_range(0..n);
    v.swap(pivot, n - 1);
    v
}

/// `ζ^k · u_1 ⋯ u_r` with `r ≤ max_factors` random unit vectors.
pub fn random_pin<R: Rng>(sig: Signature, max_factors: usize, rng: &mut R) -> Result<PinElement, PinError> {
    let mut out = PinElement::one(sig);
    if sig.n() > 0 {
        let r = rng.random_range(0..=max_factors);
        for _ in 0..r {
            out = out.multiply(&reflection_lift(sig, &random_unit_vector(sig.n(), 3, rng))?)?;
        }
    }
    out.scale(&Cyclotomic8::zeta_pow(rng.random_range(0..8)))
}

/// All signed permutation matrices of size `n`, in a fixed order.
pub fn signed_permutations(n: usize) -> Vec<OrthogonalMatrix> {
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for i in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for pos in 0..=i {
                let mut q = p.clone();
                q.insert(pos, i);
                next.push(q);
            }
        }
        perms = next;
    }
    perms.sort();
    let mut out = Vec::with_capacity(perms.len() << n);
    for p in &perms {
        for mask in 0..1u32 << n {
            let negate: Vec<bool> = (0..n).map(|j| mask >> j & 1 == 1).collect();
            out.push(OrthogonalMatrix::signed_permutation(p, &negate).expect("valid"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn gen(s: Signature, i: usize) -> CliffordElement {
        CliffordElement::generator(s, i).unwrap()
    }

    #[test]
    fn twisted_adjoint_examples() {
        let s = sig(2, 0);
        let e1 = PinElement::new(gen(s, 1)).unwrap();
        assert_eq!(*twisted_adjoint(&e1), OrthogonalMatrix::flip(2, &[0]));
        assert_eq!(*twisted_adjoint(&PinElement::one(s)), OrthogonalMatrix::identity(2));
        let z = PinElement::new(CliffordElement::scalar(s, Cyclotomic8::zeta())).unwrap();
        assert_eq!(*twisted_adjoint(&z), OrthogonalMatrix::identity(2));
    }

    #[test]
    fn lift_examples() {
        let s = sig(2, 0);
        let flip = OrthogonalMatrix::flip(2, &[0]);
        assert_eq!(lift_signed_permutation(s, &flip).unwrap().value(), &gen(s, 1));
        let swap = OrthogonalMatrix::transposition(2, 0, 1);
        let lifted = lift_signed_permutation(s, &swap).unwrap();
        let h = Cyclotomic8::inv_sqrt2();
        assert_eq!(lifted.value(), &(&gen(s, 1).scale(&h) - &gen(s, 2).scale(&h)));
        assert_eq!(*twisted_adjoint(&lifted), swap);
        assert_eq!(
            lift_signed_permutation(s, &OrthogonalMatrix::identity(2)).unwrap().value(),
            &CliffordElement::one(s)
        );
        let m = Matrix::from_rows(vec![
            vec![Cyclotomic8::from_ratio(3, 5), Cyclotomic8::from_ratio(-4, 5)],
            vec![Cyclotomic8::from_ratio(4, 5), Cyclotomic8::from_ratio(3, 5)],
        ])
        .unwrap();
        let rot = OrthogonalMatrix::new(m).unwrap();
        assert_eq!(lift_signed_permutation(s, &rot), Err(PinError::NotSignedPermutation));
    }

    #[test]
    fn lift_roundtrip_exhaustive_small() {
        for n in 1..=3 {
            let s = sig(n, 0);
            for m in signed_permutations(n) {
                assert_eq!(*twisted_adjoint(&lift_signed_permutation(s, &m).unwrap()), m);
            }
        }
    }

    #[test]
    fn spinor_examples() {
        let s = sig(1, 0);
        let e1 = PinElement::new(gen(s, 1)).unwrap();
        let rep = spinor_rep(&e1);
        let swap = Matrix::from_rows(vec![
            vec![Cyclotomic8::zero(), Cyclotomic8::one()],
            vec![Cyclotomic8::one(), Cyclotomic8::zero()],
        ])
        .unwrap();
        assert_eq!(rep.matrix(), &swap);
        assert!(rep.is_self_adjoint() && rep.is_unitary());
        assert_eq!(rep.compose(&rep).unwrap(), Operator::identity(spinor_basis(s)));
        let i1 = PinElement::new(CliffordElement::scalar(s, Cyclotomic8::i())).unwrap();
        assert_eq!(spinor_rep(&i1).as_scalar(), Some(Cyclotomic8::i()));
    }

    #[test]
    fn membership_examples() {
        let s = sig(2, 0);
        let e1 = PinElement::new(gen(s, 1)).unwrap().membership();
        assert!(e1.pin && !e1.spin_c && e1.pin_c);
        let e12 = PinElement::new(&gen(s, 1) * &gen(s, 2)).unwrap().membership();
        assert!(e12.spin);
        let z = PinElement::new(CliffordElement::scalar(s, Cyclotomic8::zeta())).unwrap().membership();
        assert!(!z.pin && z.spin_c);
        let big = PinElement::new(gen(s, 1).scale(&Cyclotomic8::from_integer(2))).unwrap().membership();
        assert!(!big.pin_c);
    }

    #[test]
    fn right_action_examples() {
        let s = sig(1, 0);
        let id = Operator::identity(spinor_basis(s));
        let plain = right_action(1, s, RightAction::Plain).unwrap();
        assert_eq!(plain.compose(&plain).unwrap(), id);
        assert!(plain.is_self_adjoint());
        let k = right_action(1, s, RightAction::Koszul).unwrap();
        assert_eq!(k.compose(&k).unwrap(), id.scale(&Cyclotomic8::from_integer(-1)));
        assert!(k.is_skew_adjoint());
        let left = spinor_rep(&PinElement::new(gen(s, 1)).unwrap());
        assert_eq!(plain.compose(&left).unwrap(), left.compose(&plain).unwrap());
        assert_eq!(k.compose(&left).unwrap(), left.compose(&k).unwrap().scale(&Cyclotomic8::from_integer(-1)));
    }

    #[test]
    fn not_in_pin_c() {
        let s = sig(4, 0);
        // 2 + e1e2e3e4 is an even unit; conjugation sends e1 outside the vectors.
        let pseudo = CliffordElement::monomial(s, Monomial(0b1111), Cyclotomic8::one());
        let x = &CliffordElement::scalar(s, Cyclotomic8::from_integer(2)) + &pseudo;
        assert!(matches!(PinElement::new(x), Err(PinError::NotInPinC(_))));
        let mixed = &CliffordElement::one(s) + &gen(s, 1);
        assert!(PinElement::new(mixed).is_err());
    }

    #[test]
    fn random_pin_grading_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = sig(2, 1);
        for _ in 0..50 {
            let w = random_pin(s, 5, &mut rng).unwrap();
            assert_eq!(twisted_adjoint(&w).det_negative(), w.parity());
            assert!(w.membership().pin_c);
        }
    }

    #[test]
    fn notation_roundtrip() {
        let m = OrthogonalMatrix::parse_notation(3, "(1 2 3) -2").unwrap();
        assert_eq!(
            m.apply(&[Cyclotomic8::one(), Cyclotomic8::zero(), Cyclotomic8::zero()])[1],
            Cyclotomic8::from_integer(-1)
        );
        assert_eq!(m.to_notation().unwrap(), "(1 2 3) -2");
        assert_eq!(OrthogonalMatrix::parse_notation(3, &m.to_notation().unwrap()).unwrap(), m);
        assert_eq!(OrthogonalMatrix::identity(2).to_notation().unwrap(), "id");
        assert!(OrthogonalMatrix::parse_notation(2, "(1 3)").is_err());
        assert!(OrthogonalMatrix::parse_notation(3, "(1 2)(2 3)").is_err());
        assert_eq!(signed_permutations(3).len(), 48);
    }
}
