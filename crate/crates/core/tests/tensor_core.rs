use liecoh_core::tensor_core::index::{permutations, sign_of_permutation};
use liecoh_core::tensor_core::{alt_contract, antisymmetrize};
use liecoh_core::{AltTensor, Rational, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn alt(dim: usize, degree: usize, seeds: &[(u64, i64)]) -> AltTensor {
    let mut t = AltTensor::zero(degree, dim);
    let masks = liecoh_core::tensor_core::index::subsets(dim, degree);
    for &(k, c) in seeds {
        if !masks.is_empty() {
            t.add_at(masks[k as usize % masks.len()], &Scalar::from_int(c));
        }
    }
    t
}

fn wide() -> impl Strategy<Value = i64> {
    prop_oneof![-20i64..20, Just(i64::MAX), Just(i64::MIN + 1), (i64::MAX / 3)..i64::MAX]
}

fn den() -> impl Strategy<Value = i64> {
    prop_oneof![1i64..30, (i64::MAX / 5)..i64::MAX]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rational_arithmetic_matches_bigrational(a in wide(), b in den(), c in wide(), d in den()) {
        let x = Rational::new(a, b).unwrap();
        let y = Rational::new(c, d).unwrap();
        let (bx, by) = (big(a, b), big(c, d));
        prop_assert_eq!((&x + &y).to_big(), &bx + &by);
        prop_assert_eq!((&x - &y).to_big(), &bx - &by);
        prop_assert_eq!((&x * &y).to_big(), &bx * &by);
        if c != 0 {
            prop_assert_eq!((&x / &y).to_big(), &bx / &by);
        }
        prop_assert_eq!(Rational::from_big(&bx + &by), &x + &y);
    }

    #[test]
    fn antisymmetrization_is_idempotent(seeds in prop::collection::vec((0u64..64, -5i64..6), 0..6), deg in 0usize..4) {
        let t = alt(4, deg, &seeds);
        prop_assert_eq!(antisymmetrize(&t.to_tensor()), t);
    }

    #[test]
    fn permuted_indices_pick_up_the_sign(seeds in prop::collection::vec((0u64..64, -5i64..6), 1..4), p in 0usize..24) {
        let t = alt(5, 4, &seeds);
        let (perm, s) = permutations(4)[p].clone();
        prop_assert_eq!(s, sign_of_permutation(&perm));
        for (m, v) in t.entries() {
            let idx = liecoh_core::tensor_core::index::indices(m);
            let moved: Vec<usize> = perm.iter().map(|&k| idx[k]).collect();
            prop_assert_eq!(t.get(&moved).unwrap(), v * &Scalar::from_int(s as i64));
        }
    }

    #[test]
    fn wedge_is_associative_and_graded_commutative(
        sa in prop::collection::vec((0u64..64, -3i64..4), 1..4), da in 0usize..3,
        sb in prop::collection::vec((0u64..64, -3i64..4), 1..4), db in 0usize..3,
        sc in prop::collection::vec((0u64..64, -3i64..4), 1..4), dc in 0usize..3,
    ) {
        let (a, b, c) = (alt(6, da, &sa), alt(6, db, &sb), alt(6, dc, &sc));
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let sign = Scalar::from_int(if (da * db) % 2 == 0 { 1 } else { -1 });
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&sign));
        prop_assert_eq!(alt_contract(&a, &b, 0, None).unwrap(), a.wedge(&b).unwrap());
    }
}
