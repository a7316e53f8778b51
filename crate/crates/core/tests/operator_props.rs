mod common;

use std::sync::Arc;

use common::cyclotomic;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use realclif::linalg::Matrix;
use realclif::operator::{random_odd_self_adjoint, GradedBasis, Operator};
use realclif::scalar::Cyclotomic8;

fn basis() -> impl Strategy<Value = Arc<GradedBasis>> {
    (0usize..=2, 0usize..=2)
        .prop_filter("nonempty", |(e, o)| e + o > 0)
        .prop_map(|(e, o)| Arc::new(GradedBasis::split(e, o)))
}

/// Operator of parity `odd` (`None`: arbitrary) with random entries.
fn operator(basis: Arc<GradedBasis>, odd: Option<bool>) -> impl Strategy<Value = Operator> {
    let n = basis.dim();
    prop::collection::vec(cyclotomic(), n * n).prop_map(move |entries| {
        let m = Matrix::from_fn(n, n, |r, c| {
            let keep = odd.is_none_or(|odd| (basis.parity(r) != basis.parity(c)) == odd);
            if keep {
                entries[r * n + c].clone()
            } else {
                Cyclotomic8::zero()
            }
        });
        Operator::new(basis.clone(), m).unwrap()
    })
}

fn pair(odd: Option<bool>) -> impl Strategy<Value = (Operator, Operator)> {
    basis().prop_flat_map(move |b| (operator(b.clone(), odd), operator(b, odd)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_laws((a, b) in pair(None), c in cyclotomic()) {
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        prop_assert_eq!(a.compose(&b).unwrap().adjoint(), b.adjoint().compose(&a.adjoint()).unwrap());
        prop_assert_eq!(a.scale(&c).adjoint(), a.adjoint().scale(&c.conj()));
        prop_assert_eq!(a.add(&b).unwrap().adjoint(), a.adjoint().add(&b.adjoint()).unwrap());
    }

    #[test]
    fn graded_tensor_mixed_product((a, b, c, d, pb, pc) in mixed_product_operands()) {
        let lhs = a.graded_tensor(&b).unwrap().compose(&c.graded_tensor(&d).unwrap()).unwrap();
        let rhs = a.compose(&c).unwrap().graded_tensor(&b.compose(&d).unwrap()).unwrap();
        let sign = if pb && pc { -Cyclotomic8::one() } else { Cyclotomic8::one() };
        prop_assert_eq!(lhs, rhs.scale(&sign));
    }

    #[test]
    fn kernel_of_tensor_sum_is_tensor_of_kernels(
        (e1, o1, e2, o2) in (0usize..=2, 0usize..=2, 0usize..=2, 0usize..=2),
        seed in any::<u64>(),
        height in 1i64..=2,
    ) {
        let (n1, n2) = (e1 + o1, e2 + o2);
        prop_assume!(n1 > 0 && n2 > 0 && n1 * n2 <= 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_odd_self_adjoint(Arc::new(GradedBasis::split(e1, o1)), height, &mut rng);
        let g = random_odd_self_adjoint(Arc::new(GradedBasis::split(e2, o2)), height, &mut rng);
        let sum = f.tensor_sum(&g).unwrap();
        prop_assert!(sum.is_odd() && sum.is_self_adjoint());
        let k = sum.kernel();
        prop_assert!(k.is_graded());
        prop_assert_eq!((k.even_dim, k.odd_dim), f.kernel().tensor_dims(&g.kernel()));
        for v in &k.basis {
            prop_assert!(sum.apply(v).iter().all(Cyclotomic8::is_zero));
        }
    }

    #[test]
    fn square_of_odd_self_adjoint_sum(seed in any::<u64>()) {
        // (F ⊞ G)² = F² ⊗ 1 + 1 ⊗ G² because the cross terms anticommute.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = Arc::new(GradedBasis::split(1, 1));
        let f = random_odd_self_adjoint(b.clone(), 3, &mut rng);
        let g = random_odd_self_adjoint(b.clone(), 3, &mut rng);
        let sum = f.tensor_sum(&g).unwrap();
        let id = Operator::identity(b);
        let expected = f.compose(&f).unwrap().graded_tensor(&id).unwrap()
            .add(&id.graded_tensor(&g.compose(&g).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(sum.compose(&sum).unwrap(), expected);
    }

    #[test]
    fn dump_roundtrip((a, _) in pair(None)) {
        let json = serde_json::to_string(&a.to_dump()).unwrap();
        let back = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(Operator::from_dump(&back).unwrap(), a);
    }
}

/// Homogeneous `A, C` on one basis and `B, D` on another, with `|B|`, `|C|`.
fn mixed_product_operands() -> impl Strategy<Value = (Operator, Operator, Operator, Operator, bool, bool)> {
    (basis(), basis(), any::<[bool; 4]>()).prop_flat_map(|(b1, b2, [pa, pb, pc, pd])| {
        (
            operator(b1.clone(), Some(pa)),
            operator(b2.clone(), Some(pb)),
            operator(b1, Some(pc)),
            operator(b2, Some(pd)),
            Just(pb),
            Just(pc),
        )
    })
}
