use std::time::Instant;

use liecoh_core::ce_cohomology::{coboundary, Cochain, Representation};
use liecoh_core::lie_algebras::LieAlgebra;
use liecoh_core::multibrackets::extract_structure;
use liecoh_core::poisson_multivectors::{
    bracket_eval, coderivation, coderivation_splits, dual_derivation, fundamental_identity_residual, gpb_gji,
    gps_check, gps_coordinate_tensor, np_check, pairing, sample_point, snb, Multivector, PolyFunction,
};
use liecoh_core::tensor_core::index::{indices, subsets};
use liecoh_core::{AltTensor, Scalar};
use proptest::prelude::*;

fn structure(label: &str, order: usize) -> Vec<AltTensor> {
    let g = LieAlgebra::from_label(label).unwrap();
    if order == 2 {
        g.structure().as_cochain().into_components()
    } else {
        extract_structure(&g, order).unwrap().mixed().to_vec()
    }
}

fn nilpotent_on_all_basis_vectors(s: usize, om: &[AltTensor]) {
    let d = om.len();
    for n in s..=d {
        for k in subsets(d, n) {
            let once = coderivation(s, om, &AltTensor::basis(d, k)).unwrap();
            assert!(coderivation(s, om, &once).unwrap().is_zero(), "degree {n}, {:?}", indices(k));
        }
    }
}

#[test]
fn coderivation_squares_to_zero() {
    nilpotent_on_all_basis_vectors(2, &structure("A1", 2));
    nilpotent_on_all_basis_vectors(2, &structure("A2", 2));
    nilpotent_on_all_basis_vectors(4, &structure("A2", 4));
}

#[test]
fn su3_seven_vectors_expand_to_thirty_five_terms() {
    let om = structure("A2", 4);
    for k in subsets(8, 7) {
        assert_eq!(coderivation_splits(k, 4).len(), 35);
        let v = AltTensor::basis(8, k);
        assert!(coderivation(4, &om, &coderivation(4, &om, &v).unwrap()).unwrap().is_zero());
    }
}

#[test]
fn su4_four_coderivation_squares_to_zero() {
    let t = Instant::now();
    nilpotent_on_all_basis_vectors(4, &structure("A3", 4));
    eprintln!("su(4) d4 d4 on all basis multivectors in {:?}", t.elapsed());
}

#[test]
fn dual_derivation_of_order_two_is_minus_the_coboundary() {
    for label in ["A1", "A2"] {
        let g = LieAlgebra::from_label(label).unwrap();
        let c = structure(label, 2);
        let rho = Representation::trivial(&g);
        for n in 0..g.dim() {
            for k in subsets(g.dim(), n) {
                let a = AltTensor::basis(g.dim(), k);
                let s = coboundary(&g, &rho, &Cochain::scalar(a.clone())).unwrap();
                let lhs = dual_derivation(2, &c, &a).unwrap();
                assert_eq!(lhs, s.component(0).scale(&Scalar::from_int(-1)), "{label} {:?}", indices(k));
            }
        }
    }
}

#[test]
fn generalized_maurer_cartan() {
    let om = structure("A2", 4);
    for (s, o) in om.iter().enumerate() {
        let w = AltTensor::basis(8, 1 << s);
        let once = dual_derivation(4, &om, &w).unwrap();
        assert_eq!(&once, o);
        assert!(dual_derivation(4, &om, &once).unwrap().is_zero());
    }
    let c = structure("A2", 2);
    for s in 0..8 {
        let once = dual_derivation(2, &c, &AltTensor::basis(8, 1 << s)).unwrap();
        assert!(dual_derivation(2, &c, &once).unwrap().is_zero());
    }
}

#[test]
fn duality_with_the_coderivation() {
    let om = structure("A2", 4);
    // <d~ a, V> = ((n + 3)! / n!) <a, d4 V>
    for (n, factor) in [(1usize, 24i64), (2, 60)] {
        for a in subsets(8, n) {
            let alpha = AltTensor::basis(8, a);
            let da = dual_derivation(4, &om, &alpha).unwrap();
            for v in subsets(8, n + 3) {
                let vv = AltTensor::basis(8, v);
                let lhs = pairing(&da, &vv).unwrap();
                let rhs = pairing(&alpha, &coderivation(4, &om, &vv).unwrap()).unwrap();
                assert_eq!(lhs, rhs * Scalar::from_int(factor));
            }
        }
    }
}

#[test]
fn su3_higher_poisson_structure() {
    let om = structure("A2", 4);
    let l4 = Multivector::linear(&om).unwrap();
    let r = gps_check(&l4).unwrap();
    assert!(r.snb.is_zero() && r.coordinate.is_zero() && r.agree());
    // fundamental brackets reproduce the structure tensor
    let x = |i| PolyFunction::var(8, i);
    for k in subsets(8, 4) {
        let args: Vec<_> = indices(k).into_iter().map(x).collect();
        let expect = PolyFunction::linear(&(0..8).map(|s| om[s].get_mask(k).cloned().unwrap_or(Scalar::ZERO)).collect::<Vec<_>>());
        assert_eq!(bracket_eval(&l4, &args).unwrap(), expect);
    }
    // linear structures of different orders commute
    let l2 = Multivector::linear(&structure("A2", 2)).unwrap();
    assert!(snb(&l4, &l2).unwrap().is_zero());
}

#[test]
fn bracket_level_identity_matches_coordinates() {
    for (label, q) in [("A1", 2), ("A2", 2), ("A2", 4)] {
        let l = Multivector::linear(&structure(label, q)).unwrap();
        let d = l.vars();
        let g = gps_coordinate_tensor(&l);
        let w = Scalar::from_int([1, 2, 144][q / 2] as i64);
        for k in subsets(d, 2 * q - 1).into_iter().take(40) {
            let fs: Vec<_> = indices(k).into_iter().map(|i| PolyFunction::var(d, i)).collect();
            assert_eq!(gpb_gji(&l, &fs).unwrap(), g.coefficient(k).scale(&w));
        }
    }
    // a perturbed structure breaks both sides identically
    let mut om = structure("A2", 4);
    om[0].add_at(0b1111_0000, &Scalar::ONE);
    let l = Multivector::linear(&om).unwrap();
    let g = gps_coordinate_tensor(&l);
    assert!(!g.is_zero());
    let (k, _) = g.entries().next().unwrap();
    let fs: Vec<_> = indices(k).into_iter().map(|i| PolyFunction::var(8, i)).collect();
    assert_eq!(gpb_gji(&l, &fs).unwrap(), g.coefficient(k).scale(&Scalar::from_int(144)));
}

#[test]
fn snb_is_twice_the_coordinate_tensor() {
    // frozen normalization: [L, L] = 2 G for even L
    let x = |i| PolyFunction::var(3, i);
    let mut l = Multivector::zero(3, 2);
    l.set(&[0, 1], x(2).mul(&x(2))).unwrap();
    l.set(&[0, 2], x(0)).unwrap();
    l.set(&[1, 2], x(1).mul(&x(0)).add(&PolyFunction::constant(3, Scalar::ONE))).unwrap();
    let r = gps_check(&l).unwrap();
    assert!(!r.snb.is_zero() && !r.coordinate.is_zero() && r.agree());
    assert_eq!(r.ratio, Some(Scalar::from_int(2)));
    let mut om = structure("A2", 4);
    om[3].add_at(0b0000_1111, &Scalar::ONE);
    let r = gps_check(&Multivector::linear(&om).unwrap()).unwrap();
    assert_eq!(r.ratio, Some(Scalar::from_int(2)));
}

#[test]
fn nambu_poisson_conditions() {
    let om = structure("A2", 4);
    let l4 = Multivector::linear(&om).unwrap();
    let np = np_check(&l4, &[sample_point(8)], false).unwrap();
    assert!(!np.algebraic_at_points[0].is_zero());
    let np = np_check(&Multivector::linear(&structure("A1", 2)).unwrap(), &[sample_point(3)], true).unwrap();
    assert!(np.is_zero());
}

fn quad(vars: usize, seed: i64) -> PolyFunction {
    let mut p = PolyFunction::constant(vars, Scalar::from_int(seed % 3));
    for i in 0..vars {
        p = p.add(&PolyFunction::var(vars, i).scale(&Scalar::from_int((seed + i as i64) % 4 - 1)));
        p = p.add(&PolyFunction::var(vars, i).mul(&PolyFunction::var(vars, (i + 1) % vars)).scale(&Scalar::from_int((seed * (i as i64 + 2)) % 3)));
    }
    p
}

#[test]
fn fundamental_identity() {
    let mut t = AltTensor::zero(3, 4);
    t.set(&[0, 1, 3], Scalar::ONE).unwrap();
    let l = Multivector::constant(&t);
    let fs = vec![quad(4, 1), quad(4, 2)];
    let gs = vec![quad(4, 3), quad(4, 5), quad(4, 7)];
    assert!(fundamental_identity_residual(&l, &fs, &gs).unwrap().is_zero());
    let l4 = Multivector::linear(&structure("A2", 4)).unwrap();
    let x = |i| PolyFunction::var(8, i);
    // the algebraic part only sees second derivatives, so one argument is quadratic
    let fi = fundamental_identity_residual(&l4, &[x(0), x(1), x(2)], &[x(0).mul(&x(0)), x(1), x(3), x(4)]).unwrap();
    assert_eq!(fi, x(0).mul(&x(5)).scale(&Scalar::frac(3, 4).unwrap()));
}

#[test]
fn snb_of_vector_fields_is_the_commutator() {
    let a = {
        let mut m = Multivector::zero(3, 1);
        m.set(&[0], quad(3, 1)).unwrap();
        m.set(&[2], quad(3, 4)).unwrap();
        m
    };
    let b = {
        let mut m = Multivector::zero(3, 1);
        m.set(&[1], quad(3, 2)).unwrap();
        m.set(&[2], quad(3, 6)).unwrap();
        m
    };
    let ab = snb(&a, &b).unwrap();
    for j in 0..3 {
        let xj = PolyFunction::var(3, j);
        let apply = |v: &Multivector, f: &PolyFunction| bracket_eval(v, std::slice::from_ref(f)).unwrap();
        let comm = apply(&a, &apply(&b, &xj)).sub(&apply(&b, &apply(&a, &xj)));
        assert_eq!(apply(&ab, &xj), comm);
    }
}

fn multivector(vars: usize, degree: usize, seeds: &[(u64, i64)]) -> Multivector {
    let mut m = Multivector::zero(vars, degree);
    let masks = subsets(vars, degree);
    for &(k, c) in seeds {
        let mask = masks[(k as usize) % masks.len()];
        m.add(mask, &quad(vars, c));
    }
    m
}

fn sgn(e: usize) -> Scalar {
    Scalar::from_int(if e % 2 == 0 { 1 } else { -1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn gerstenhaber_properties(
        a in 0usize..4, b in 0usize..4, c in 0usize..4,
        su in prop::collection::vec((0u64..8, 0i64..9), 1..3),
        sv in prop::collection::vec((0u64..8, 0i64..9), 1..3),
        sw in prop::collection::vec((0u64..8, 0i64..9), 1..3),
    ) {
        let vars = 3;
        let (a, b, c) = (a.min(vars), b.min(vars), c.min(vars));
        let u = multivector(vars, a, &su);
        let v = multivector(vars, b, &sv);
        let w = multivector(vars, c, &sw);
        // graded antisymmetry
        let mut d = snb(&u, &v).unwrap();
        d.axpy(&sgn((a + 1) * (b + 1)), &snb(&v, &u).unwrap());
        prop_assert!(d.is_zero());
        // graded Jacobi
        if a + b + c >= 2 && a + b + c <= vars + 2 {
            let mut j = snb(&u, &snb(&v, &w).unwrap()).unwrap().clone();
            j = {
                let mut t = Multivector::zero(vars, j.degree());
                t.axpy(&sgn((a + 1) * (c + 1)), &j);
                t.axpy(&sgn((c + 1) * (b + 1)), &snb(&w, &snb(&u, &v).unwrap()).unwrap());
                t.axpy(&sgn((b + 1) * (a + 1)), &snb(&v, &snb(&w, &u).unwrap()).unwrap());
                t
            };
            prop_assert!(j.is_zero());
        }
        // Leibniz
        let lhs = snb(&u, &v.wedge(&w).unwrap()).unwrap();
        let mut rhs = snb(&u, &v).unwrap().wedge(&w).unwrap();
        rhs.axpy(&sgn((a + 1) * b), &v.wedge(&snb(&u, &w).unwrap()).unwrap());
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn dual_derivation_is_an_odd_derivation(a in 1u64..256, b in 1u64..256) {
        let om = structure("A2", 4);
        let x = AltTensor::basis(8, a);
        let y = AltTensor::basis(8, b);
        let lhs = dual_derivation(4, &om, &x.wedge(&y).unwrap()).unwrap();
        let mut rhs = dual_derivation(4, &om, &x).unwrap().wedge(&y).unwrap();
        rhs.axpy(&sgn(a.count_ones() as usize), &x.wedge(&dual_derivation(4, &om, &y).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

/// `Omega_J^r Omega_(I r)^s - sum_k Omega_(I j_k)^r Omega_(j_1..r..j_n)^s`
/// by direct contraction, independent of the multivector code.
fn filippov_failures(om: &[AltTensor]) -> usize {
    let d = om.len();
    let n = om[0].degree();
    let w = |idx: &[usize], s: usize| om[s].get(idx).unwrap_or(Scalar::ZERO);
    let mut bad = 0;
    for i in subsets(d, n - 1) {
        let ii = indices(i);
        for j in subsets(d, n) {
            let jj = indices(j);
            let fails = (0..d).any(|s| {
                let mut acc = Scalar::ZERO;
                for r in 0..d {
                    let mut ir = ii.clone();
                    ir.push(r);
                    acc.add_mul(&w(&jj, r), &w(&ir, s));
                    for k in 0..n {
                        let mut ik = ii.clone();
                        ik.push(jj[k]);
                        let mut jr = jj.clone();
                        jr[k] = r;
                        acc.add_mul(&-w(&ik, r), &w(&jr, s));
                    }
                }
                !acc.is_zero()
            });
            bad += usize::from(fails);
        }
    }
    bad
}

#[test]
fn differential_condition_of_a_linear_tensor_is_the_filippov_identity() {
    for (label, order) in [("A1", 2), ("A2", 2), ("A2", 4)] {
        let om = structure(label, order);
        let np = np_check(&Multivector::linear(&om).unwrap(), &[], false).unwrap();
        assert_eq!(np.differential.nonzero, filippov_failures(&om), "{label} order {order}");
    }
    let om = structure("A2", 4);
    let l4 = Multivector::linear(&om).unwrap();
    let x = |i| PolyFunction::var(8, i);
    let fi = fundamental_identity_residual(&l4, &[x(0), x(1), x(2)], &[x(2), x(4), x(5), x(6)]).unwrap();
    let expect = x(7).scale(&Scalar::frac(3, 4).unwrap()).add(&x(6).scale(&Scalar::frac(3, 8).unwrap()));
    assert_eq!(fi, expect);
    assert_eq!(filippov_failures(&om), 1372);
}
