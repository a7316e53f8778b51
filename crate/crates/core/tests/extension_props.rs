use proptest::prelude::*;
use realclif::clifford::Signature;
use realclif::extension::{verify_cocycle, FiniteGradedExtension};
use realclif::report::CaseKey;

fn key() -> CaseKey {
    CaseKey::new("extension", 0, 0, 0)
}

fn pin_extension() -> impl Strategy<Value = FiniteGradedExtension> {
    (1usize..=2).prop_flat_map(|n| {
        (0..=n)
            .prop_map(move |p| FiniteGradedExtension::from_pin_lifts(Signature::new(p, n - p).unwrap(), true).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tensors_are_extensions(a in pin_extension(), b in pin_extension()) {
        let r = verify_cocycle(&a.tensor_external(&b), key());
        prop_assert!(r.passed(), "{:?}", r.failures);
        if let Ok(t) = a.tensor_internal(&b) {
            prop_assert!(verify_cocycle(&t, key()).passed());
        }
        let sq = a.tensor_internal(&a).unwrap();
        prop_assert!(verify_cocycle(&sq, key()).passed());
        prop_assert_eq!(&a.tensor_internal(&a.trivial_like()).unwrap(), &a);
        prop_assert!(verify_cocycle(&a.trivial_like(), key()).passed());
    }

    #[test]
    fn single_faults_are_detected(
        ext in pin_extension().prop_filter("order ≥ 8", |e| e.order() >= 8),
        g in 0usize..8,
        h in 0usize..8,
        delta in 1i64..8,
    ) {
        let mut bad = ext.clone();
        bad.inject_fault(g, h, delta);
        let r = verify_cocycle(&bad, key());
        prop_assert!(!r.passed());
        prop_assert!(r.failures.iter().all(|f| !f.operands["elements"].as_array().unwrap().is_empty()));
    }
}
