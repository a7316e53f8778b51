mod common;

use common::{cyclotomic, nonzero_cyclotomic};
use proptest::prelude::*;
use realclif::scalar::{Cyclotomic8, Mu8};

proptest! {
    #[test]
    fn field_laws(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn inverse(a in nonzero_cyclotomic()) {
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in cyclotomic(), b in cyclotomic()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert!(a.norm_squared().is_real());
    }

    #[test]
    fn display_parses_back(a in cyclotomic()) {
        prop_assert_eq!(a.to_string().parse::<Cyclotomic8>().unwrap(), a);
    }

    #[test]
    fn mu8_is_a_subgroup(j in -20i64..20, k in -20i64..20) {
        let (x, y) = (Mu8::new(j), Mu8::new(k));
        let product = Cyclotomic8::from(x * y);
        prop_assert_eq!(&Cyclotomic8::from(x) * &Cyclotomic8::from(y), product.clone());
        prop_assert_eq!(Mu8::try_from(&product).unwrap(), x * y);
        prop_assert_eq!(Cyclotomic8::from(x.conj()), Cyclotomic8::from(x).conj());
        prop_assert!((&Cyclotomic8::from(x) * &Cyclotomic8::from(x.inv())).is_one());
    }
}
