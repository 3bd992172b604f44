use std::collections::HashMap;

use super::{Cochain, Representation};
use crate::error::Error;
use crate::lie_algebras::LieAlgebra;
use crate::linalg::{solve, SparseRow};
use crate::tensor_core::index::{front_sign, indices, position, subsets};
use crate::tensor_core::{Mask, Scalar};

fn check_shapes(g: &LieAlgebra, rho: &Representation, w: &Cochain) -> Result<(), Error> {
    if w.dim() != g.dim() || w.values_dim() != rho.dim_v() {
        return Err(Error::DimensionMismatch(format!(
            "cochain on dim {} with {} values vs algebra dim {} and representation dim {}",
            w.dim(),
            w.values_dim(),
            g.dim(),
            rho.dim_v()
        )));
    }
    Ok(())
}

/// Adds `s(value * e_(mask, b))` into `out`.
fn push(g: &LieAlgebra, rho: &Representation, mask: Mask, b: usize, value: &Scalar, out: &mut Cochain) {
    let dim = g.dim();
    if !rho.is_trivial() {
        for a in (0..dim).filter(|a| mask >> a & 1 == 0) {
            let k = mask | 1 << a;
            let sign = if position(k, a) % 2 == 0 { 1 } else { -1 };
            let m = rho.matrix(a);
            for target in 0..rho.dim_v() {
                let r = m.get(target, b);
                if !r.is_zero() {
                    out.component_mut(target).add_signed(k, sign, &(value * r));
                }
            }
        }
    }
    let c = g.structure();
    for l in indices(mask) {
        let rest = mask & !(1 << l);
        let sl = front_sign(rest, l);
        for (i, j, v) in c.into_target(l) {
            if (rest >> i) & 1 == 1 || (rest >> j) & 1 == 1 {
                continue;
            }
            let k = rest | 1 << i | 1 << j;
            let parity = position(k, *i) + position(k, *j);
            let sign = if parity % 2 == 0 { sl } else { -sl };
            out.component_mut(b).add_signed(k, sign, &(value * v));
        }
    }
}

/// The coboundary `s W` of a `V`-valued cochain.
pub fn coboundary(g: &LieAlgebra, rho: &Representation, w: &Cochain) -> Result<Cochain, Error> {
    check_shapes(g, rho, w)?;
    let mut out = Cochain::zero(w.degree() + 1, g.dim(), rho.dim_v());
    if w.degree() + 1 > g.dim() {
        return Ok(out);
    }
    for (b, comp) in w.components().iter().enumerate() {
        for (mask, v) in comp.entries() {
            push(g, rho, mask, b, v, &mut out);
        }
    }
    Ok(out)
}

/// `s` applied to the basis cochain at `(mask, b)`.
pub fn coboundary_of_basis(g: &LieAlgebra, rho: &Representation, mask: Mask, b: usize) -> Cochain {
    let q = mask.count_ones() as usize;
    let mut out = Cochain::zero(q + 1, g.dim(), rho.dim_v());
    if q < g.dim() {
        push(g, rho, mask, b, &Scalar::ONE, &mut out);
    }
    out
}

/// Coordinates of a cochain in the basis `(subset position, value index)`.
pub(crate) fn coordinates(w: &Cochain, index: &HashMap<Mask, usize>) -> SparseRow {
    let vd = w.values_dim();
    let mut row: SparseRow = Vec::with_capacity(w.nnz());
    for (a, comp) in w.components().iter().enumerate() {
        for (m, v) in comp.entries() {
            row.push((index[&m] * vd + a, v.clone()));
        }
    }
    row.sort_by_key(|e| e.0);
    row
}

pub(crate) fn subset_index(dim: usize, q: usize) -> (Vec<Mask>, HashMap<Mask, usize>) {
    let list = subsets(dim, q);
    let index = list.iter().enumerate().map(|(p, m)| (*m, p)).collect();
    (list, index)
}

/// A cochain `W` of one degree lower with `s W = target`, if one exists.
pub fn coboundary_preimage(g: &LieAlgebra, rho: &Representation, target: &Cochain) -> Result<Option<Cochain>, Error> {
    check_shapes(g, rho, target)?;
    let q = target.degree();
    if q == 0 {
        return Ok(target.is_zero().then(|| Cochain::zero(0, g.dim(), rho.dim_v())));
    }
    let vd = rho.dim_v();
    let (src, _) = subset_index(g.dim(), q - 1);
    let (_, dst_index) = subset_index(g.dim(), q);
    let ncols = src.len() * vd;
    let nrows = dst_index.len() * vd;
    let mut rows: Vec<SparseRow> = vec![Vec::new(); nrows];
    for (p, &m) in src.iter().enumerate() {
        for b in 0..vd {
            let img = coboundary_of_basis(g, rho, m, b);
            for (r, v) in coordinates(&img, &dst_index) {
                rows[r].push((p * vd + b, v));
            }
        }
    }
    let mut rhs = vec![Scalar::ZERO; nrows];
    for (r, v) in coordinates(target, &dst_index) {
        rhs[r] = v;
    }
    let Some(x) = solve(&rows, &rhs, ncols) else { return Ok(None) };
    let mut w = Cochain::zero(q - 1, g.dim(), vd);
    for (col, v) in x.iter().enumerate() {
        if !v.is_zero() {
            w.component_mut(col % vd).add_at(src[col / vd], v);
        }
    }
    Ok(Some(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor_core::AltTensor;

    #[test]
    fn maurer_cartan_on_su2() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let rho = Representation::trivial(&g);
        // s w^0 = -C_12^0 w^1 ^ w^2
        let w = Cochain::basis(3, 1, 0b001, 0);
        let s = coboundary(&g, &rho, &w).unwrap();
        assert_eq!(s.component(0).get(&[1, 2]).unwrap(), Scalar::from_int(-1));
        assert_eq!(s.nnz(), 1);
    }

    #[test]
    fn zero_cochain_in_adjoint() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let rho = Representation::adjoint(&g);
        // (s v)(X_i) = [X_i, v]
        let mut v = Cochain::zero(0, 3, 3);
        v.component_mut(2).add_at(0, &Scalar::ONE);
        let s = coboundary(&g, &rho, &v).unwrap();
        // [X_0, X_2] = -X_1
        assert_eq!(s.component(1).get(&[0]).unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn preimage_of_exact_two_cochain() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let rho = Representation::trivial(&g);
        let a = Cochain::scalar({
            let mut t = AltTensor::zero(1, 3);
            t.set(&[0], Scalar::from_int(2)).unwrap();
            t.set(&[2], Scalar::from_int(-1)).unwrap();
            t
        });
        let w = coboundary(&g, &rho, &a).unwrap();
        let pre = coboundary_preimage(&g, &rho, &w).unwrap().unwrap();
        assert_eq!(coboundary(&g, &rho, &pre).unwrap(), w);
        // the volume form is closed but not exact
        let vol = Cochain::basis(3, 1, 0b111, 0);
        assert!(coboundary_preimage(&g, &rho, &vol).unwrap().is_none());
    }
}
