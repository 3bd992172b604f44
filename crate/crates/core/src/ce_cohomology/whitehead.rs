use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coboundary::{coboundary, coboundary_of_basis, subset_index};
use super::{Cochain, Representation};
use crate::error::Error;
use crate::lie_algebras::LieAlgebra;
use crate::linalg::Matrix;
use crate::tensor_core::index::{front_sign, indices};
use crate::verdict::Residual;

/// `I_2(rho) = g^ij rho(X_i) rho(X_j)`.
pub fn casimir_operator(g: &LieAlgebra, rho: &Representation) -> Result<Matrix, Error> {
    let ginv = g.killing_inverse()?;
    let n = rho.dim_v();
    let mut out = Matrix::zeros(n, n);
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let c = ginv.get(i, j);
            if !c.is_zero() {
                out.axpy(c, &rho.matrix(i).mul(rho.matrix(j)));
            }
        }
    }
    Ok(out)
}

/// `P_j = g^ij rho(X_i)`.
fn raised_action(g: &LieAlgebra, rho: &Representation) -> Result<Vec<Matrix>, Error> {
    let ginv = g.killing_inverse()?;
    Ok((0..g.dim())
        .map(|j| {
            let mut p = Matrix::zeros(rho.dim_v(), rho.dim_v());
            for i in 0..g.dim() {
                p.axpy(ginv.get(i, j), rho.matrix(i));
            }
            p
        })
        .collect())
}

fn apply_homotopy(raised: &[Matrix], w: &Cochain) -> Cochain {
    let vd = w.values_dim();
    let mut out = Cochain::zero(w.degree() - 1, w.dim(), vd);
    for (b, comp) in w.components().iter().enumerate() {
        for (mask, v) in comp.entries() {
            for j in indices(mask) {
                let rest = mask & !(1 << j);
                let sign = front_sign(rest, j);
                let p = &raised[j];
                for a in 0..vd {
                    let f = p.get(a, b);
                    if !f.is_zero() {
                        out.component_mut(a).add_signed(rest, sign, &(v * f));
                    }
                }
            }
        }
    }
    out
}

/// `(tau W)^A_(i1..) = g^ij rho(X_i)^A_B W^B_(j i1..)`.
pub fn homotopy(g: &LieAlgebra, rho: &Representation, w: &Cochain) -> Result<Cochain, Error> {
    if w.degree() == 0 {
        return Err(Error::NotApplicable("the homotopy lowers degree; degree 0 has no image".into()));
    }
    Ok(apply_homotopy(&raised_action(g, rho)?, w))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhiteheadReport {
    pub degree: usize,
    /// The scalar `lambda` with `I_2(rho) = lambda * 1`.
    pub casimir: String,
    pub basis_checked: usize,
    /// `(s tau + tau s) e - lambda e` over every basis cochain `e`.
    pub residual: Residual,
}

/// Checks `s tau + tau s = I_2(rho)` on every basis cochain of degree `q`.
pub fn whitehead_homotopy_check(g: &LieAlgebra, rho: &Representation, q: usize) -> Result<WhiteheadReport, Error> {
    if rho.is_trivial() {
        return Err(Error::NotApplicable("the homotopy argument needs a nontrivial representation".into()));
    }
    let casimir = casimir_operator(g, rho)?;
    let lambda = casimir
        .is_scalar_multiple_of_identity()
        .ok_or_else(|| Error::NotApplicable("I_2(rho) is not a multiple of the identity".into()))?;
    if lambda.is_zero() {
        return Err(Error::NotApplicable("I_2(rho) vanishes".into()));
    }
    let raised = raised_action(g, rho)?;
    let vd = rho.dim_v();
    let jobs: Vec<(u64, usize)> =
        subset_index(g.dim(), q).0.into_iter().flat_map(|m| (0..vd).map(move |b| (m, b))).collect();
    let parts: Vec<Result<Residual, Error>> = jobs
        .par_iter()
        .map(|&(m, b)| {
            let e = Cochain::basis(g.dim(), vd, m, b);
            let mut lhs = Cochain::zero(q, g.dim(), vd);
            if q > 0 {
                lhs.axpy(&crate::tensor_core::Scalar::ONE, &coboundary(g, rho, &apply_homotopy(&raised, &e))?);
            }
            if q < g.dim() {
                lhs.axpy(&crate::tensor_core::Scalar::ONE, &apply_homotopy(&raised, &coboundary_of_basis(g, rho, m, b)));
            }
            lhs.axpy(&-&lambda, &e);
            Ok(lhs.residual("whitehead"))
        })
        .collect();
    let mut residual = Residual::new();
    for p in parts {
        residual.merge(p?);
    }
    Ok(WhiteheadReport { degree: q, casimir: lambda.to_string(), basis_checked: jobs.len(), residual })
}
