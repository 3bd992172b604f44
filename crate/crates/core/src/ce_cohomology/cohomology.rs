use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coboundary::{coboundary, coboundary_of_basis, coordinates, subset_index};
use super::{Cochain, Representation};
use crate::error::Error;
use crate::lie_algebras::LieAlgebra;
use crate::linalg::{exact_rank, ModField, RankMethod, SparseRow};
use crate::verdict::Residual;

/// When to leave exact elimination for rank modulo a random prime.
#[derive(Clone, Copy, Debug)]
pub struct RankPolicy {
    /// Largest number of columns reduced exactly.
    pub exact_limit: usize,
    pub allow_modular: bool,
    /// Seed for the prime; fixed so reports are reproducible.
    pub seed: u64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        RankPolicy { exact_limit: 10_000, allow_modular: true, seed: 0x5eed_0001 }
    }
}

impl RankPolicy {
    pub fn exact_only() -> Self {
        RankPolicy { exact_limit: usize::MAX, allow_modular: false, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub representation: String,
    /// `dim C^q` for `q = 0..=max_degree`.
    pub cochain_dims: Vec<usize>,
    /// `rank (s: C^q -> C^(q+1))`.
    pub ranks: Vec<usize>,
    /// `dim H^q`.
    pub betti: Vec<usize>,
    /// Whether the alternating sums of `dim C^q` and `dim H^q` agree; only
    /// meaningful when the whole complex was computed.
    pub euler_consistent: Option<bool>,
    pub method: RankMethod,
}

/// Images of all basis cochains of degree `q`, as sparse rows.
pub(crate) fn coboundary_rows(g: &LieAlgebra, rho: &Representation, q: usize) -> (usize, usize, Vec<SparseRow>) {
    let vd = rho.dim_v();
    let (src, _) = subset_index(g.dim(), q);
    let (_, dst_index) = subset_index(g.dim(), q + 1);
    let jobs: Vec<(usize, usize)> = (0..src.len()).flat_map(|p| (0..vd).map(move |b| (p, b))).collect();
    let rows = jobs
        .par_iter()
        .map(|&(p, b)| coordinates(&coboundary_of_basis(g, rho, src[p], b), &dst_index))
        .collect();
    (src.len() * vd, dst_index.len() * vd, rows)
}

pub(crate) fn rank_of(rows: &[SparseRow], ncols: usize, policy: &RankPolicy) -> Result<(usize, RankMethod), Error> {
    if rows.len().min(ncols) <= policy.exact_limit {
        return Ok((exact_rank(rows, ncols), RankMethod::Exact));
    }
    if !policy.allow_modular {
        return Err(Error::ResourceGuard(format!(
            "{}x{} coboundary matrix exceeds the exact limit of {} and modular rank is disabled",
            rows.len(),
            ncols,
            policy.exact_limit
        )));
    }
    Ok((ModField::random(policy.seed).rank(rows, ncols)?, RankMethod::Modular))
}

/// `dim H^q(g, V)` for `q = 0..=max_degree`.
pub fn cohomology(
    g: &LieAlgebra,
    rho: &Representation,
    max_degree: usize,
    policy: &RankPolicy,
) -> Result<CohomologyReport, Error> {
    let top = max_degree.min(g.dim());
    let mut dims = Vec::with_capacity(top + 1);
    let mut ranks = Vec::with_capacity(top + 1);
    let mut method = RankMethod::Exact;
    for q in 0..=top {
        let (n_src, n_dst, rows) = coboundary_rows(g, rho, q);
        let (r, m) = if n_dst == 0 { (0, RankMethod::Exact) } else { rank_of(&rows, n_dst, policy)? };
        if m == RankMethod::Modular {
            method = m;
        }
        dims.push(n_src);
        ranks.push(r);
    }
    let betti = betti_numbers(&dims, &ranks)?;
    let euler_consistent = (top == g.dim()).then(|| {
        let alt = |v: &[usize]| v.iter().enumerate().map(|(q, &x)| if q % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>();
        alt(&dims) == alt(&betti)
    });
    Ok(CohomologyReport {
        algebra: g.label().to_string(),
        representation: rho.name().to_string(),
        cochain_dims: dims,
        ranks,
        betti,
        euler_consistent,
        method,
    })
}

/// `dim C^q - rank s_q - rank s_(q-1)`; fails when the ranks exceed the
/// cochain dimension, which happens only if `s^2 != 0`.
pub(crate) fn betti_numbers(dims: &[usize], ranks: &[usize]) -> Result<Vec<usize>, Error> {
    (0..dims.len())
        .map(|q| {
            let below = if q > 0 { ranks[q - 1] } else { 0 };
            dims[q].checked_sub(ranks[q] + below).ok_or_else(|| {
                Error::Construction(format!(
                    "ranks {below} and {} of s around degree {q} exceed dim C^{q} = {}, so s^2 != 0",
                    ranks[q], dims[q]
                ))
            })
        })
        .collect()
}

/// `s(s e)` for every basis cochain `e` of the given degrees.
pub fn check_nilpotent(g: &LieAlgebra, rho: &Representation, degrees: std::ops::RangeInclusive<usize>) -> Residual {
    let vd = rho.dim_v();
    let mut jobs = Vec::new();
    for q in degrees {
        if q + 2 > g.dim() {
            continue;
        }
        for m in subset_index(g.dim(), q).0 {
            for b in 0..vd {
                jobs.push((m, b));
            }
        }
    }
    let parts: Vec<Residual> = jobs
        .par_iter()
        .map(|&(m, b)| {
            let once = coboundary_of_basis(g, rho, m, b);
            let twice: Cochain = coboundary(g, rho, &once).expect("shapes agree");
            let mut r = twice.residual("s^2");
            if let Some(w) = &mut r.witness {
                w.label = format!("s^2 on basis cochain {:?} value {b}", crate::tensor_core::index::indices(m));
            }
            r
        })
        .collect();
    parts.into_iter().fold(Residual::new(), |mut a, b| {
        a.merge(b);
        a
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_betti() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let r = cohomology(&g, &Representation::trivial(&g), 3, &RankPolicy::default()).unwrap();
        assert_eq!(r.betti, vec![1, 0, 0, 1]);
        assert_eq!(r.euler_consistent, Some(true));
        assert_eq!(r.method, RankMethod::Exact);
    }

    #[test]
    fn abelian_cohomology_is_exterior_algebra() {
        let g = LieAlgebra::from_label("abelian:3").unwrap();
        let r = cohomology(&g, &Representation::trivial(&g), 3, &RankPolicy::default()).unwrap();
        assert_eq!(r.betti, vec![1, 3, 3, 1]);
    }

    #[test]
    fn heisenberg_betti() {
        let g = LieAlgebra::from_label("heisenberg").unwrap();
        let r = cohomology(&g, &Representation::trivial(&g), 3, &RankPolicy::default()).unwrap();
        assert_eq!(r.betti, vec![1, 2, 2, 1]);
    }

    #[test]
    fn modular_path_agrees() {
        let g = LieAlgebra::from_label("A2").unwrap();
        let rho = Representation::trivial(&g);
        let exact = cohomology(&g, &rho, 8, &RankPolicy::exact_only()).unwrap();
        let modular = cohomology(&g, &rho, 8, &RankPolicy { exact_limit: 0, ..RankPolicy::default() }).unwrap();
        assert_eq!(exact.betti, modular.betti);
        assert_eq!(modular.method, RankMethod::Modular);
    }

    #[test]
    fn nilpotent_and_mutation() {
        let g = LieAlgebra::from_label("A2").unwrap();
        let rho = Representation::trivial(&g);
        assert!(check_nilpotent(&g, &rho, 0..=6).is_zero());
        let bad = g.with_mutated_constant(0, 1, 2, &crate::tensor_core::Scalar::ONE).unwrap();
        let r = check_nilpotent(&bad, &Representation::trivial(&bad), 0..=6);
        assert!(!r.is_zero());
        assert!(r.witness.is_some());
    }
}
