use rayon::prelude::*;

use crate::error::Error;
use crate::invariants::check_invariance;
use crate::lie_algebras::LieAlgebra;
use crate::tensor_core::index::{canonicalize, indices};
use crate::tensor_core::{AltTensor, Scalar, SymTensor};

/// The `(2m-1)`-cocycle of an invariant symmetric tensor `k` of order `m`:
///
/// `W_(r i2..i(2m-2) s) = C^l1_(j2 j3) .. C^l(m-1)_(j(2m-2) s) k_(r l1..l(m-1))
///                        eps^(j2..j(2m-2))_(i2..i(2m-2))`
///
/// with a unit-weight `eps`. Full antisymmetry of the result is verified
/// component by component.
pub fn cocycle_from_polynomial(g: &LieAlgebra, k: &SymTensor) -> Result<AltTensor, Error> {
    let m = k.order();
    let d = g.dim();
    if m < 2 {
        return Err(Error::NotApplicable("invariant polynomials of order below 2 give no cocycle".into()));
    }
    if k.dim() != d {
        return Err(Error::DimensionMismatch(format!("polynomial on dim {} for algebra of dim {d}", k.dim())));
    }
    let inv = check_invariance(k, g);
    if let Some(w) = inv.witness {
        return Err(Error::NotInvariant { index: w.index, value: w.value });
    }
    let cforms = g.structure().as_cochain().into_components();
    // the eps sum over products of 2-forms and one 1-form is 2^(m-2) times
    // their unweighted wedge
    let weight = Scalar::from_int(1i64 << (m - 2));

    let rows: Vec<Vec<AltTensor>> = (0..d)
        .into_par_iter()
        .map(|r| {
            (0..d)
                .map(|s| {
                    let mut prefix = vec![r];
                    nested(g, k, &cforms, m, s, &mut prefix).scale(&weight)
                })
                .collect()
        })
        .collect();

    let mut omega = AltTensor::zero(2 * m - 1, d);
    for (r, row) in rows.iter().enumerate() {
        for (s, f) in row.iter().enumerate().skip(r + 1) {
            for (mid, v) in f.entries() {
                if mid & ((1u64 << (r + 1)) - 1) == 0 && mid >> s == 0 {
                    omega.add_at(mid | 1 << r | 1 << s, v);
                }
            }
        }
    }

    let mut nonzero = 0usize;
    for (r, row) in rows.iter().enumerate() {
        for (s, f) in row.iter().enumerate() {
            for (mid, v) in f.entries() {
                nonzero += 1;
                let mut idx = vec![r];
                idx.extend(indices(mid));
                idx.push(s);
                let expect = match canonicalize(&idx) {
                    None => Scalar::ZERO,
                    Some((mask, sign)) => {
                        let x = omega.get_mask(mask).cloned().unwrap_or(Scalar::ZERO);
                        if sign > 0 {
                            x
                        } else {
                            -x
                        }
                    }
                };
                if expect != *v {
                    return Err(Error::NotAntisymmetric { index: idx });
                }
            }
        }
    }
    let n = 2 * m - 1;
    if nonzero != omega.nnz() * n * (n - 1) {
        let (idx, _) = omega.max_component().unwrap_or_default();
        return Err(Error::NotAntisymmetric { index: idx });
    }
    Ok(omega)
}

/// `sum_l C^l ^ nested(prefix + l)` down to the final one-form
/// `delta_j = sum_l k_(prefix, l) C^l_(j s)`.
fn nested(g: &LieAlgebra, k: &SymTensor, cforms: &[AltTensor], m: usize, s: usize, prefix: &mut Vec<usize>) -> AltTensor {
    let d = g.dim();
    if prefix.len() == m - 1 {
        let mut delta = AltTensor::zero(1, d);
        prefix.push(0);
        for l in 0..d {
            *prefix.last_mut().unwrap() = l;
            let kv = k.get(prefix);
            if kv.is_zero() {
                continue;
            }
            for j in 0..d {
                let c = g.structure().get(j, s, l);
                if !c.is_zero() {
                    delta.add_at(1 << j, &(&kv * c));
                }
            }
        }
        prefix.pop();
        return delta;
    }
    let depth_left = m - 1 - prefix.len();
    let mut acc = AltTensor::zero(2 * depth_left + 1, d);
    for (l, cl) in cforms.iter().enumerate() {
        if cl.is_zero() {
            continue;
        }
        prefix.push(l);
        let inner = nested(g, k, cforms, m, s, prefix);
        prefix.pop();
        if !inner.is_zero() {
            acc.axpy(&Scalar::ONE, &cl.wedge(&inner).expect("same dim"));
        }
    }
    acc
}
