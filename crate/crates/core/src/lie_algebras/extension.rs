use super::{LieAlgebra, StructureConstants};
use crate::ce_cohomology::{coboundary, Cochain, Representation};
use crate::error::Error;
use crate::tensor_core::AltTensor;

/// The central extension by a 2-cocycle `w`: one extra basis element `Z`
/// (last index) with `[X_i, X_j] = C_ij^k X_k + w_ij Z` and `Z` central.
pub fn central_extend(g: &LieAlgebra, omega2: &AltTensor) -> Result<LieAlgebra, Error> {
    let d = g.dim();
    if omega2.degree() != 2 || omega2.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "extension needs a 2-form on dim {d}, got degree {} on dim {}",
            omega2.degree(),
            omega2.dim()
        )));
    }
    let s = coboundary(g, &Representation::trivial(g), &Cochain::scalar(omega2.clone()))?;
    if let Some((index, value)) = s.component(0).max_component() {
        return Err(Error::NotCocycle { index, value: value.to_string() });
    }
    let n = d + 1;
    let mut dense = vec![crate::tensor_core::Scalar::ZERO; n * n * n];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                dense[(i * n + j) * n + k] = g.structure().get(i, j, k).clone();
            }
        }
    }
    for (mask, v) in omega2.entries() {
        let idx = crate::tensor_core::index::indices(mask);
        let (i, j) = (idx[0], idx[1]);
        dense[(i * n + j) * n + d] = v.clone();
        dense[(j * n + i) * n + d] = -v;
    }
    Ok(LieAlgebra::from_structure(&format!("{} + central", g.label()), StructureConstants::from_dense(n, dense)?))
}
