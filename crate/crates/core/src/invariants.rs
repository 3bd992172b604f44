//! Invariant symmetric polynomials: symmetrized traces, ad-invariance,
//! primitivity, Casimir operators, and the polynomial attached to an odd
//! cocycle.

use rayon::prelude::*;

use crate::error::Error;
use crate::lie_algebras::LieAlgebra;
use crate::linalg::{solve, Matrix, SparseRow};
use crate::tensor_core::index::{back_sign, binomial, factorial};
use crate::tensor_core::{multisets, AltTensor, Rational, Scalar, SymTensor};
use crate::verdict::Residual;

/// Largest order accepted by [`symmetrized_trace`].
pub const MAX_TRACE_ORDER: usize = 6;
/// Largest number of independent components accepted by [`symmetrized_trace`].
pub const MAX_TRACE_COMPONENTS: u128 = 38_760;

/// `sum` over the distinct orderings of the multiset `key` of the matrix
/// products `M_(k_sigma(1)) .. M_(k_sigma(m))`.
fn sum_over_orderings(key: &[usize], mats: &[Matrix]) -> Matrix {
    let n = mats[key[0]].rows();
    let mut values: Vec<usize> = key.to_vec();
    values.dedup();
    let mut counts: Vec<usize> = values.iter().map(|v| key.iter().filter(|k| *k == v).count()).collect();
    let mut out = Matrix::zeros(n, n);
    fn walk(values: &[usize], counts: &mut [usize], left: usize, prefix: &Matrix, mats: &[Matrix], out: &mut Matrix) {
        if left == 0 {
            out.axpy(&Scalar::ONE, prefix);
            return;
        }
        for p in 0..values.len() {
            if counts[p] == 0 {
                continue;
            }
            counts[p] -= 1;
            let next = prefix.mul(&mats[values[p]]);
            walk(values, counts, left - 1, &next, mats, out);
            counts[p] += 1;
        }
    }
    walk(&values, &mut counts, key.len(), &Matrix::identity(n), mats, &mut out);
    out
}

/// `prod mult! / m!` for a sorted multiset.
fn ordering_weight(key: &[usize]) -> Scalar {
    let mut w = 1u128;
    let mut run = 1usize;
    for p in 1..=key.len() {
        if p < key.len() && key[p] == key[p - 1] {
            run += 1;
        } else {
            w *= factorial(run);
            run = 1;
        }
    }
    let total = factorial(key.len());
    let g = num_integer::gcd(w, total);
    Scalar::real(
        Rational::new((w / g) as i64, (total / g) as i64).expect("nonzero factorial"),
    )
}

/// `k_(i1..im) = sTr(X_i1 .. X_im)`, the trace of the symmetrized product
/// in the defining representation.
pub fn symmetrized_trace(g: &LieAlgebra, m: usize) -> Result<SymTensor, Error> {
    if m < 2 {
        return Err(Error::NotApplicable("symmetrized traces start at order 2".into()));
    }
    let count = binomial(g.dim() + m - 1, m);
    if m > MAX_TRACE_ORDER || count > MAX_TRACE_COMPONENTS {
        return Err(Error::ResourceGuard(format!(
            "order {m} on dim {} needs {count} components; use an order of at most {MAX_TRACE_ORDER} \
             with at most {MAX_TRACE_COMPONENTS} components",
            g.dim()
        )));
    }
    let gens = g.generators_or_err()?;
    let keys = multisets(g.dim(), m);
    let values: Vec<Scalar> = keys
        .par_iter()
        .map(|key| &sum_over_orderings(key, gens).trace() * &ordering_weight(key))
        .collect();
    let mut k = SymTensor::zero(m, g.dim());
    for (key, v) in keys.iter().zip(values) {
        k.set(key, v)?;
    }
    Ok(k)
}

/// The residual `R_(l; i1..im) = sum_r C^s_(l i_r) k_(i1..s..im)` of the
/// ad-invariance condition, over every `l` and every multiset `i1 <= .. <= im`.
pub fn check_invariance(k: &SymTensor, g: &LieAlgebra) -> Residual {
    let d = g.dim();
    if k.dim() != d {
        let mut r = Residual::new();
        r.observe("dimension mismatch", &[k.dim(), d], &Scalar::ONE);
        return r;
    }
    let m = k.order();
    let keys = multisets(d, m);
    let c = g.structure();
    let parts: Vec<Residual> = (0..d)
        .into_par_iter()
        .map(|l| {
            let mut res = Residual::new();
            let mut idx = vec![0usize; m];
            for key in &keys {
                let mut acc = Scalar::ZERO;
                for r in 0..m {
                    idx.copy_from_slice(key);
                    for s in 0..d {
                        let cv = c.get(l, key[r], s);
                        if cv.is_zero() {
                            continue;
                        }
                        idx[r] = s;
                        let kv = k.get(&idx);
                        if !kv.is_zero() {
                            acc.add_mul(cv, &kv);
                        }
                    }
                }
                let mut label = vec![l];
                label.extend_from_slice(key);
                res.observe("ad-invariance", &label, &acc);
            }
            res
        })
        .collect();
    parts.into_iter().fold(Residual::new(), |mut a, b| {
        a.merge(b);
        a
    })
}

/// Outcome of a primitivity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivityReport {
    pub order: usize,
    pub primitive: bool,
    /// When not primitive: `(factors, coefficient)` with `factors` indexing
    /// the `lower` family, so that `k = sum coefficient * sym(prod factors)`.
    pub decomposition: Vec<(Vec<usize>, Scalar)>,
}

/// Multisets of indices into `orders` (non-decreasing) with at least two
/// entries whose orders add up to `m`.
fn factorizations(orders: &[usize], m: usize) -> Vec<Vec<usize>> {
    fn go(orders: &[usize], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if cur.len() >= 2 {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..orders.len() {
            if orders[i] > 0 && orders[i] <= left {
                cur.push(i);
                go(orders, i, left - orders[i], cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(orders, 0, m, &mut Vec::new(), &mut out);
    out
}

/// Decides whether `k` lies outside the span of symmetrized products of
/// the `lower` invariants, by exact span membership.
///
/// A zero polynomial is reported as not primitive with an empty
/// decomposition.
pub fn is_primitive(k: &SymTensor, lower: &[SymTensor]) -> Result<PrimitivityReport, Error> {
    let m = k.order();
    if let Some(bad) = lower.iter().find(|p| p.dim() != k.dim() || p.order() >= m) {
        return Err(Error::DimensionMismatch(format!(
            "lower invariant of order {} dim {} against order {m} dim {}",
            bad.order(),
            bad.dim(),
            k.dim()
        )));
    }
    let orders: Vec<usize> = lower.iter().map(SymTensor::order).collect();
    let combos = factorizations(&orders, m);
    let products: Vec<SymTensor> = combos
        .par_iter()
        .map(|f| {
            let mut acc = lower[f[0]].clone();
            for &i in &f[1..] {
                acc = acc.sym_product(&lower[i]).expect("dims checked");
            }
            acc
        })
        .collect();
    let keys = multisets(k.dim(), m);
    let key_index: std::collections::HashMap<&Vec<usize>, usize> = keys.iter().enumerate().map(|(p, key)| (key, p)).collect();
    let mut rows: Vec<SparseRow> = vec![Vec::new(); keys.len()];
    for (col, p) in products.iter().enumerate() {
        for (key, v) in p.entries() {
            rows[key_index[key]].push((col, v.clone()));
        }
    }
    let mut rhs = vec![Scalar::ZERO; keys.len()];
    for (key, v) in k.entries() {
        rhs[key_index[key]] = v.clone();
    }
    Ok(match solve(&rows, &rhs, products.len()) {
        None => PrimitivityReport { order: m, primitive: true, decomposition: Vec::new() },
        Some(x) => PrimitivityReport {
            order: m,
            primitive: false,
            decomposition: combos.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect(),
        },
    })
}

/// `k^(i1..im) X_i1 .. X_im` in the defining representation, with indices
/// raised by the inverse Killing form.
pub fn casimir_matrix(k: &SymTensor, g: &LieAlgebra) -> Result<Matrix, Error> {
    if k.dim() != g.dim() {
        return Err(Error::DimensionMismatch(format!("polynomial on dim {} for algebra of dim {}", k.dim(), g.dim())));
    }
    let ginv = g.killing_inverse()?;
    let gens = g.generators_or_err()?;
    // Y^j = g^(ij) X_i, so that k^I X_I = k_J Y^J
    let raised: Vec<Matrix> = (0..g.dim())
        .map(|j| {
            let mut y = Matrix::zeros(gens[0].rows(), gens[0].cols());
            for (i, x) in gens.iter().enumerate() {
                y.axpy(ginv.get(i, j), x);
            }
            y
        })
        .collect();
    let n = gens[0].rows();
    let entries: Vec<(&Vec<usize>, &Scalar)> = k.entries().collect();
    let parts: Vec<Matrix> =
        entries.par_iter().map(|(key, v)| sum_over_orderings(key, &raised).scale(v)).collect();
    Ok(parts.into_iter().fold(Matrix::zeros(n, n), |mut a, b| {
        a.axpy(&Scalar::ONE, &b);
        a
    }))
}

/// `[M, X_i]` for every generator.
pub fn commutant_residual(m: &Matrix, g: &LieAlgebra) -> Result<Residual, Error> {
    let mut r = Residual::new();
    for (i, x) in g.generators_or_err()?.iter().enumerate() {
        let c = m.commutator(x);
        for row in 0..c.rows() {
            for col in 0..c.cols() {
                r.observe("commutator with generator", &[i, row, col], c.get(row, col));
            }
        }
    }
    Ok(r)
}

/// The order-`m` polynomial of a `(2m-1)`-cocycle,
///
/// `t^(i1..im) = W^(j1..j(2m-2) im) C^i1_(j1 j2) .. C^i(m-1)_(j(2m-3) j(2m-2))`,
///
/// returned with all indices lowered by the Killing form. Symmetry of the
/// result is verified.
pub fn polynomial_from_cocycle(omega: &AltTensor, g: &LieAlgebra) -> Result<SymTensor, Error> {
    let q = omega.degree();
    if q < 3 || q % 2 == 0 {
        return Err(Error::DegreeParity(format!("cocycle degree {q} is not odd and at least 3")));
    }
    let d = g.dim();
    if omega.dim() != d {
        return Err(Error::DimensionMismatch(format!("cocycle on dim {} for algebra of dim {d}", omega.dim())));
    }
    let m = q.div_ceil(2);
    let gl = g.killing_form();
    let ginv = g.killing_inverse()?;
    let c = g.structure();
    // D_k^(ab) = g_(ki) g^(aj) g^(bl) C^i_(jl), as 2-forms in (a, b)
    let dforms: Vec<AltTensor> = (0..d)
        .into_par_iter()
        .map(|k| {
            let mut low = vec![Scalar::ZERO; d * d];
            for i in 0..d {
                let gki = gl.get(k, i);
                if gki.is_zero() {
                    continue;
                }
                for &(j, l, ref v) in c.into_target(i) {
                    let x = gki * v;
                    low[j * d + l] = &low[j * d + l] + &x;
                    low[l * d + j] = &low[l * d + j] - &x;
                }
            }
            let mut form = AltTensor::zero(2, d);
            for a in 0..d {
                for b in a + 1..d {
                    let mut acc = Scalar::ZERO;
                    for j in 0..d {
                        let gaj = ginv.get(a, j);
                        if gaj.is_zero() {
                            continue;
                        }
                        for l in 0..d {
                            let lv = &low[j * d + l];
                            if !lv.is_zero() {
                                acc.add_mul(&(gaj * lv), ginv.get(b, l));
                            }
                        }
                    }
                    form.add_at(1 << a | 1 << b, &acc);
                }
            }
            form
        })
        .collect();

    // each antisymmetric pair contraction doubles the canonical sum
    let weight = Scalar::from_int(1i64 << (m - 1));
    let heads = multisets(d, m - 1);
    let rows: Vec<Vec<Scalar>> = heads
        .par_iter()
        .map(|head| {
            let mut w = dforms[head[0]].clone();
            for &k in &head[1..] {
                w = w.wedge(&dforms[k]).expect("same dim");
            }
            (0..d)
                .map(|last| {
                    let mut acc = Scalar::ZERO;
                    for (mask, v) in w.entries() {
                        if mask >> last & 1 == 1 {
                            continue;
                        }
                        if let Some(o) = omega.get_mask(mask | 1 << last) {
                            let x = v * o;
                            if back_sign(mask, last) > 0 {
                                acc += &x;
                            } else {
                                acc -= &x;
                            }
                        }
                    }
                    &acc * &weight
                })
                .collect()
        })
        .collect();
    let head_index: std::collections::HashMap<&Vec<usize>, usize> = heads.iter().enumerate().map(|(p, h)| (h, p)).collect();

    let mut out = SymTensor::zero(m, d);
    for key in multisets(d, m) {
        let mut value: Option<Scalar> = None;
        for r in 0..m {
            if r > 0 && key[r] == key[r - 1] {
                continue;
            }
            let mut head = key.clone();
            let last = head.remove(r);
            let v = &rows[head_index[&head]][last];
            match &value {
                None => value = Some(v.clone()),
                Some(prev) if prev != v => return Err(Error::NotSymmetric { index: key }),
                _ => {}
            }
        }
        out.set(&key, value.unwrap_or(Scalar::ZERO))?;
    }
    Ok(out)
}

/// The Killing form as an order-2 symmetric tensor.
pub fn killing_polynomial(g: &LieAlgebra) -> SymTensor {
    let kf = g.killing_form();
    let mut k = SymTensor::zero(2, g.dim());
    for i in 0..g.dim() {
        for j in i..g.dim() {
            k.set(&[i, j], kf.get(i, j).clone()).expect("in range");
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ce_cohomology::cocycle_from_polynomial;

    #[test]
    fn su2_traces() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let k2 = symmetrized_trace(&g, 2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { Scalar::frac(-1, 2).unwrap() } else { Scalar::ZERO };
                assert_eq!(k2.get(&[i, j]), expect);
            }
        }
        assert!(symmetrized_trace(&g, 3).unwrap().is_zero());
    }

    #[test]
    fn ordering_weights() {
        assert_eq!(ordering_weight(&[0, 0, 1]), Scalar::frac(1, 3).unwrap());
        assert_eq!(ordering_weight(&[2, 2, 2]), Scalar::ONE);
        assert_eq!(ordering_weight(&[0, 1, 2]), Scalar::frac(1, 6).unwrap());
    }

    #[test]
    fn guard_rejects_large_orders() {
        let g = LieAlgebra::from_label("A1").unwrap();
        assert!(matches!(symmetrized_trace(&g, 7), Err(Error::ResourceGuard(_))));
    }

    #[test]
    fn killing_form_is_invariant_and_perturbation_is_caught() {
        let g = LieAlgebra::from_label("A2").unwrap();
        let k = killing_polynomial(&g);
        assert!(check_invariance(&k, &g).is_zero());
        let mut bad = k.clone();
        bad.set(&[0, 1], &bad.get(&[0, 1]) + &Scalar::ONE).unwrap();
        let r = check_invariance(&bad, &g);
        assert!(!r.is_zero());
        assert!(r.witness.is_some());
    }

    #[test]
    fn primitivity_small_cases() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let k2 = killing_polynomial(&g);
        assert!(is_primitive(&k2, &[]).unwrap().primitive);
        let k4 = symmetrized_trace(&g, 4).unwrap();
        let r = is_primitive(&k4, &[k2]).unwrap();
        assert!(!r.primitive);
        assert_eq!(r.decomposition.len(), 1);
        assert_eq!(r.decomposition[0].0, vec![0, 0]);
    }

    #[test]
    fn su2_casimir_is_scalar() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let c = casimir_matrix(&killing_polynomial(&g), &g).unwrap();
        assert_eq!(c.is_scalar_multiple_of_identity(), Some(Scalar::frac(3, 8).unwrap()));
        assert!(commutant_residual(&c, &g).unwrap().is_zero());
    }

    #[test]
    fn su2_round_trip() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let k = killing_polynomial(&g);
        let w = cocycle_from_polynomial(&g, &k).unwrap();
        let back = polynomial_from_cocycle(&w, &g).unwrap();
        let ratio = back.ratio_to(&k).unwrap();
        assert!(!ratio.is_zero());
        assert!(polynomial_from_cocycle(&AltTensor::zero(3, 3), &g).unwrap().is_zero());
        assert!(matches!(polynomial_from_cocycle(&AltTensor::zero(2, 3), &g), Err(Error::DegreeParity(_))));
    }
}
