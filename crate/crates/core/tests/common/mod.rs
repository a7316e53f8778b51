#![allow(dead_code)]

use proptest::prelude::*;
use realclif::clifford::{CliffordElement, Monomial, Signature};
use realclif::scalar::Cyclotomic8;

/// `Σ (a_j / d_j) ζ^j` with small numerators and denominators.
pub fn cyclotomic() -> impl Strategy<Value = Cyclotomic8> {
    prop::collection::vec((-4i64..=4, 1i64..=3), 4).prop_map(|cs| {
        cs.iter().enumerate().fold(Cyclotomic8::zero(), |acc, (j, &(a, d))| {
            &acc + &(&Cyclotomic8::from_ratio(a, d) * &Cyclotomic8::zeta_pow(j as i64))
        })
    })
}

pub fn nonzero_cyclotomic() -> impl Strategy<Value = Cyclotomic8> {
    cyclotomic().prop_filter("nonzero", |c| !c.is_zero())
}

/// Signatures with `p + q ≤ max_n`.
pub fn signature(max_n: usize) -> impl Strategy<Value = Signature> {
    (0..=max_n).prop_flat_map(|n| (0..=n).prop_map(move |p| Signature::new(p, n - p).unwrap()))
}

/// Sparse element with at most `max_terms` terms.
pub fn element(sig: Signature, max_terms: usize) -> impl Strategy<Value = CliffordElement> {
    let dim = sig.dim() as u32;
    prop::collection::vec((0..dim, cyclotomic()), 0..=max_terms)
        .prop_map(move |terms| CliffordElement::from_terms(sig, terms.into_iter().map(|(m, c)| (Monomial(m), c))))
}

pub fn sig_and_elements(max_n: usize, count: usize) -> impl Strategy<Value = (Signature, Vec<CliffordElement>)> {
    signature(max_n).prop_flat_map(move |sig| (Just(sig), prop::collection::vec(element(sig, 4), count)))
}

/// A random signed permutation `(perm, negate)` of size `n`.
pub fn signed_permutation(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<bool>)> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n))
}
