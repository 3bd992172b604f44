use criterion::{black_box, criterion_group, criterion_main, Criterion};
use liecoh_core::brst::{complete_brst, Scope};
use liecoh_core::ce_cohomology::{cocycle_from_polynomial, cohomology, RankPolicy, Representation};
use liecoh_core::invariants::symmetrized_trace;
use liecoh_core::lie_algebras::LieAlgebra;
use liecoh_core::multibrackets::{extract_structure, gji_residual_lowered};
use liecoh_core::poisson_multivectors::{coderivation, gps_check, np_check, sample_point, Multivector};
use liecoh_core::tensor_core::index::subsets;
use liecoh_core::AltTensor;

fn su3() -> LieAlgebra {
    LieAlgebra::from_label("A2").unwrap()
}

fn algebras(c: &mut Criterion) {
    for label in ["A2", "C3"] {
        c.bench_function(&format!("build {label}"), |b| b.iter(|| LieAlgebra::from_label(black_box(label)).unwrap()));
    }
}

fn cohomology_ranks(c: &mut Criterion) {
    let g = su3();
    let rho = Representation::trivial(&g);
    let exact = RankPolicy { allow_modular: false, ..RankPolicy::default() };
    c.bench_function("su(3) betti numbers, exact", |b| b.iter(|| cohomology(&g, &rho, 8, &exact).unwrap()));
}

fn cocycles(c: &mut Criterion) {
    let g = su3();
    let k = symmetrized_trace(&g, 3).unwrap();
    c.bench_function("su(3) cocycle of sTr3", |b| b.iter(|| cocycle_from_polynomial(&g, &k).unwrap()));
}

fn multibrackets(c: &mut Criterion) {
    let g = su3();
    c.bench_function("su(3) 4-bracket structure", |b| b.iter(|| extract_structure(&g, 4).unwrap()));
    let s = extract_structure(&g, 4).unwrap();
    let lowered = s.lowered().unwrap().clone();
    c.bench_function("su(3) generalized jacobi", |b| b.iter(|| gji_residual_lowered(s.mixed(), &lowered).unwrap()));
}

fn brst(c: &mut Criterion) {
    let g = su3();
    let m4 = extract_structure(&g, 4).unwrap().mixed().to_vec();
    let mut group = c.benchmark_group("brst");
    group.sample_size(10);
    group.bench_function("su(3) complete operator, all monomials", |b| {
        b.iter(|| complete_brst(&g, std::slice::from_ref(&m4), Scope::All).unwrap())
    });
    group.finish();
}

fn poisson(c: &mut Criterion) {
    let om = extract_structure(&su3(), 4).unwrap().mixed().to_vec();
    c.bench_function("su(3) d4 d4 on all basis multivectors", |b| {
        b.iter(|| {
            for n in 4..=8 {
                for k in subsets(8, n) {
                    let once = coderivation(4, &om, &AltTensor::basis(8, k)).unwrap();
                    black_box(coderivation(4, &om, &once).unwrap());
                }
            }
        })
    });
    let l4 = Multivector::linear(&om).unwrap();
    c.bench_function("su(3) gps check, order 4", |b| b.iter(|| gps_check(&l4).unwrap()));
    let x = sample_point(8);
    c.bench_function("su(3) nambu-poisson at a point", |b| b.iter(|| np_check(&l4, std::slice::from_ref(&x), false).unwrap()));
}

criterion_group!(benches, algebras, cohomology_ranks, cocycles, multibrackets, brst, poisson);
criterion_main!(benches);
