use liecoh_core::brst::{
    anticommutator_residual, brst_rho, brst_trivial, complete_brst, dictionary_residual, higher_brst, leibniz_residual,
    square_residual, GhostElement, GhostOperator, Scope,
};
use liecoh_core::ce_cohomology::{Cochain, Representation};
use liecoh_core::lie_algebras::LieAlgebra;
use liecoh_core::multibrackets::extract_structure;
use liecoh_core::tensor_core::index::subsets;
use liecoh_core::{Error, Scalar};
use proptest::prelude::*;

#[test]
fn maurer_cartan_from_the_full_double_sum() {
    for label in ["A1", "A2", "B2"] {
        let g = LieAlgebra::from_label(label).unwrap();
        let d = g.dim();
        let s = brst_trivial(&g);
        let half = Scalar::frac(-1, 2).unwrap();
        for k in 0..d {
            let mut expect = GhostElement::zero(d, 1);
            for i in 0..d {
                for j in 0..d {
                    let c = g.structure().get(i, j, k);
                    if !c.is_zero() {
                        let cicj = GhostElement::generator(d, i).mul(&GhostElement::generator(d, j)).unwrap();
                        expect.axpy(&(&half * c), &cicj);
                    }
                }
            }
            assert_eq!(s.on_generator(k), &expect, "{label} c^{k}");
        }
    }
}

#[test]
fn trivial_representation_reduces_to_s() {
    let g = LieAlgebra::from_label("A2").unwrap();
    let s = brst_trivial(&g);
    let st = brst_rho(&g, &Representation::trivial(&g)).unwrap();
    for mask in subsets(8, 3) {
        assert_eq!(s.apply_monomial(mask, 0), st.apply_monomial(mask, 0));
    }
}

#[test]
fn ghost_dictionary_matches_coboundary() {
    for label in ["A1", "A2"] {
        let g = LieAlgebra::from_label(label).unwrap();
        let d = g.dim();
        let mut reps = vec![Representation::trivial(&g), Representation::adjoint(&g)];
        reps.push(Representation::defining(&g).unwrap());
        for rho in &reps {
            for n in 0..d {
                // a dense cochain touching every basis element of degree n
                let mut w = Cochain::zero(n, d, rho.dim_v());
                for (t, mask) in subsets(d, n).into_iter().enumerate() {
                    for a in 0..rho.dim_v() {
                        w.component_mut(a).add_at(mask, &Scalar::from_int((t * 7 + a * 3) as i64 % 5 - 2));
                    }
                }
                let r = dictionary_residual(&g, rho, &w).unwrap();
                assert!(r.is_zero(), "{label} {} degree {n}: {:?}", rho.name(), r.witness);
            }
        }
    }
}

#[test]
fn su2_s_tilde_on_every_basis_element() {
    let g = LieAlgebra::from_label("A1").unwrap();
    for rho in [Representation::defining(&g).unwrap(), Representation::adjoint(&g)] {
        let s = brst_rho(&g, &rho).unwrap();
        let r = square_residual(&s, Scope::All).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.checked, 8 * rho.dim_v());
    }
}

#[test]
fn su3_complete_operator() {
    let g = LieAlgebra::from_label("A2").unwrap();
    let m4 = extract_structure(&g, 4).unwrap().mixed().to_vec();
    let c = complete_brst(&g, &[m4], Scope::All).unwrap();
    assert_eq!(c.orders, vec![2, 4]);
    assert_eq!(c.anticommutators.len(), 3);
    for (_, r) in &c.anticommutators {
        assert!(r.is_zero());
        assert!(r.checked >= 256);
    }
    assert!(square_residual(&c.total(), Scope::All).unwrap().is_zero());
}

#[test]
fn su2_complete_operator_is_s() {
    let g = LieAlgebra::from_label("A1").unwrap();
    let c = complete_brst(&g, &[], Scope::All).unwrap();
    assert_eq!(c.orders, vec![2]);
    assert_eq!(c.total(), GhostOperator::sum("s", &[brst_trivial(&g)]).unwrap());
}

#[test]
fn su4_complete_operator() {
    let g = LieAlgebra::from_label("A3").unwrap();
    let m4 = extract_structure(&g, 4).unwrap().mixed().to_vec();
    let m6 = extract_structure(&g, 6).unwrap().mixed().to_vec();
    let c = complete_brst(&g, &[m4, m6], Scope::All).unwrap();
    assert_eq!(c.orders, vec![2, 4, 6]);
    assert_eq!(c.anticommutators.len(), 6);
    assert!(c.anticommutators.iter().all(|(_, r)| r.is_zero() && r.checked >= 1 << 15));
}

#[test]
fn broken_cocycle_is_reported() {
    let g = LieAlgebra::from_label("A2").unwrap();
    let mut m4 = extract_structure(&g, 4).unwrap().mixed().to_vec();
    m4[0].add_at(0b1111, &Scalar::ONE);
    match complete_brst(&g, &[m4.clone()], Scope::All) {
        Err(Error::NotNilpotent { monomial, .. }) => assert!(monomial.len() <= 8),
        other => panic!("expected a nilpotency failure, got {other:?}"),
    }
    let s4 = higher_brst(&m4).unwrap();
    assert!(!anticommutator_residual(&brst_trivial(&g), &s4, Scope::All).unwrap().is_zero());
}

fn element(dim: usize, terms: &[(u64, i64)]) -> GhostElement {
    let mut e = GhostElement::zero(dim, 1);
    for &(m, c) in terms {
        e.add_term(m & ((1 << dim) - 1), 0, &Scalar::from_int(c));
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operators_are_derivations(
        xm in 0u64..256, ym in prop::collection::vec((0u64..256, -3i64..4), 1..4), c in -3i64..4,
    ) {
        let g = LieAlgebra::from_label("A2").unwrap();
        let x = element(8, &[(xm, c)]);
        let y = element(8, &ym);
        let s4 = higher_brst(extract_structure(&g, 4).unwrap().mixed()).unwrap();
        for op in [brst_trivial(&g), s4] {
            prop_assert!(leibniz_residual(&op, &x, &y).unwrap().is_zero());
        }
    }

    #[test]
    fn s_tilde_is_a_derivation_over_the_ghosts(xm in 0u64..8, ym in 0u64..8, a in 0usize..2) {
        let g = LieAlgebra::from_label("A1").unwrap();
        let rho = Representation::defining(&g).unwrap();
        let s = brst_rho(&g, &rho).unwrap();
        let x = element(3, &[(xm, 1)]);
        let y = GhostElement::monomial(3, 2, ym, a);
        prop_assert!(leibniz_residual(&s, &x, &y).unwrap().is_zero());
    }
}
