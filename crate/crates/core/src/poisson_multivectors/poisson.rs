use super::{snb, Multivector, PolyFunction};
use crate::error::Error;
use crate::tensor_core::index::{concat_sign, factorial, front_sign, indices, sub_subsets, subsets};
use crate::tensor_core::Scalar;
use crate::verdict::Residual;

/// `{f_1, .., f_n} = Lambda(df_1, .., df_n)`.
pub fn bracket_eval(lambda: &Multivector, fs: &[PolyFunction]) -> Result<PolyFunction, Error> {
    if fs.len() != lambda.degree() {
        return Err(Error::DimensionMismatch(format!("{} arguments for a {}-vector", fs.len(), lambda.degree())));
    }
    if fs.iter().any(|f| f.vars() != lambda.vars()) {
        return Err(Error::DimensionMismatch("argument on a different number of variables".into()));
    }
    // contract the first slot with df repeatedly
    let mut cur = lambda.clone();
    for f in fs {
        let grads: Vec<PolyFunction> = (0..lambda.vars()).map(|i| f.derivative(i)).collect();
        let mut next = Multivector::zero(lambda.vars(), cur.degree() - 1);
        for (m, p) in cur.entries() {
            for i in indices(m) {
                if grads[i].is_zero() {
                    continue;
                }
                let rest = m & !(1 << i);
                let mut c = PolyFunction::zero(lambda.vars());
                c.add_product(&Scalar::from_int(front_sign(rest, i) as i64), p, &grads[i]);
                next.add(rest, &c);
            }
        }
        cur = next;
    }
    Ok(cur.coefficient(0))
}

/// `G_K = sum over splits K = A u B, |A| = q - 1, of sign(A, B) sum_s
/// omega_{A s} d_s omega_B`, the coordinate form of the generalized Jacobi
/// condition for a `q`-vector `omega`.
pub fn gps_coordinate_tensor(omega: &Multivector) -> Multivector {
    let q = omega.degree();
    let d = omega.vars();
    let mut out = Multivector::zero(d, 2 * q - 1);
    if 2 * q - 1 > d || q == 0 {
        return out;
    }
    let derivs: Vec<Multivector> = (0..d).map(|s| omega.derivative(s)).collect();
    for k in subsets(d, 2 * q - 1) {
        let mut acc = PolyFunction::zero(d);
        for a in sub_subsets(k, q - 1) {
            let b = k & !a;
            let sign = Scalar::from_int(concat_sign(a, b).expect("disjoint") as i64);
            let mut idx = indices(a);
            idx.push(0);
            for s in 0..d {
                *idx.last_mut().expect("nonempty") = s;
                let w = omega.component(&idx);
                if !w.is_zero() {
                    acc.add_product(&sign, &w, &derivs[s].coefficient(b));
                }
            }
        }
        out.add(k, &acc);
    }
    out
}

#[derive(Clone, Debug)]
pub struct GpsReport {
    /// `[Lambda, Lambda]`.
    pub snb: Residual,
    /// The coordinate condition.
    pub coordinate: Residual,
    /// `c` with `[Lambda, Lambda] = c G` when both are nonzero.
    pub ratio: Option<Scalar>,
}

impl GpsReport {
    /// Both verdicts coincide.
    pub fn agree(&self) -> bool {
        self.snb.is_zero() == self.coordinate.is_zero()
    }
}

/// Generalized Poisson condition for an even multivector, both as
/// `[Lambda, Lambda] = 0` and in coordinates.
pub fn gps_check(lambda: &Multivector) -> Result<GpsReport, Error> {
    if lambda.degree() % 2 == 1 {
        return Err(Error::DegreeParity(format!(
            "[Lambda, Lambda] vanishes identically for a {}-vector of odd degree",
            lambda.degree()
        )));
    }
    let sq = snb(lambda, lambda)?;
    let g = gps_coordinate_tensor(lambda);
    let ratio = proportionality(&sq, &g);
    Ok(GpsReport { snb: sq.residual("[Lambda, Lambda]"), coordinate: g.residual("generalized jacobi, coordinates"), ratio })
}

fn proportionality(a: &Multivector, b: &Multivector) -> Option<Scalar> {
    let (m, pb) = b.entries().next()?;
    let (e, cb) = pb.terms().next()?;
    let pa = a.coefficient(m);
    let ca = pa.terms().find(|(f, _)| *f == e).map(|(_, c)| c.clone())?;
    let r = ca.checked_div(cb).ok()?;
    (a.sub(&{
        let mut s = Multivector::zero(b.vars(), b.degree());
        s.axpy(&r, b);
        s
    })
    .is_zero())
    .then_some(r)
}

/// `sum_{s in S_{2q-1}} sign(s) {f_s1, .., f_s(q-1), {f_sq, .., f_s(2q-1)}}`,
/// summed over unshuffles and scaled by `(q-1)! q!`.
pub fn gpb_gji(lambda: &Multivector, fs: &[PolyFunction]) -> Result<PolyFunction, Error> {
    let q = lambda.degree();
    if q == 0 || fs.len() != 2 * q - 1 {
        return Err(Error::DimensionMismatch(format!("{} arguments for the identity of a {q}-vector", fs.len())));
    }
    let n = fs.len();
    let all = (1u64 << n) - 1;
    let mut acc = PolyFunction::zero(lambda.vars());
    for a in sub_subsets(all, q - 1) {
        let b = all & !a;
        let inner = bracket_eval(lambda, &indices(b).into_iter().map(|i| fs[i].clone()).collect::<Vec<_>>())?;
        let mut args: Vec<PolyFunction> = indices(a).into_iter().map(|i| fs[i].clone()).collect();
        args.push(inner);
        let outer = bracket_eval(lambda, &args)?;
        acc.axpy(&Scalar::from_int(concat_sign(a, b).expect("disjoint") as i64), &outer);
    }
    let w = factorial(q - 1) * factorial(q);
    Ok(acc.scale(&Scalar::from_int(w as i64)))
}

/// `{f_1..f_(n-1), {g_1..g_n}} - sum_k {g_1, .., {f_1..f_(n-1), g_k}, .., g_n}`.
pub fn fundamental_identity_residual(
    lambda: &Multivector,
    fs: &[PolyFunction],
    gs: &[PolyFunction],
) -> Result<PolyFunction, Error> {
    let n = lambda.degree();
    if n == 0 || fs.len() + 1 != n || gs.len() != n {
        return Err(Error::DimensionMismatch(format!("fundamental identity of a {n}-vector needs {} and {n} arguments", n.saturating_sub(1))));
    }
    let with = |last: &PolyFunction| -> Result<PolyFunction, Error> {
        let mut args = fs.to_vec();
        args.push(last.clone());
        bracket_eval(lambda, &args)
    };
    let mut out = with(&bracket_eval(lambda, gs)?)?;
    for k in 0..n {
        let mut args = gs.to_vec();
        args[k] = with(&gs[k])?;
        out = out.sub(&bracket_eval(lambda, &args)?);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct NpReport {
    /// `eta_{I r} d^r eta_J - (1/(n-1)!) eps (d^r eta_{I l1}) eta_{r l2..ln}`.
    pub differential: Residual,
    /// `Sigma + P(Sigma)` as polynomials, when requested.
    pub algebraic: Option<Residual>,
    /// `Sigma + P(Sigma)` at each sample point.
    pub algebraic_at_points: Vec<Residual>,
}

impl NpReport {
    pub fn is_zero(&self) -> bool {
        self.differential.is_zero()
            && self.algebraic.as_ref().map_or(true, Residual::is_zero)
            && self.algebraic_at_points.iter().all(Residual::is_zero)
    }
}

fn differential_condition(lambda: &Multivector) -> Residual {
    let n = lambda.degree();
    let d = lambda.vars();
    let derivs: Vec<Multivector> = (0..d).map(|r| lambda.derivative(r)).collect();
    let mut res = Residual::new();
    for i in subsets(d, n - 1) {
        let ii = indices(i);
        for j in subsets(d, n) {
            let mut acc = PolyFunction::zero(d);
            let mut idx = ii.clone();
            idx.push(0);
            for r in 0..d {
                *idx.last_mut().expect("nonempty") = r;
                acc.add_product(&Scalar::ONE, &lambda.component(&idx), &derivs[r].coefficient(j));
            }
            for l1 in indices(j) {
                let rest = j & !(1 << l1);
                *idx.last_mut().expect("nonempty") = l1;
                let sign = Scalar::from_int(-front_sign(rest, l1) as i64);
                for r in 0..d {
                    if rest >> r & 1 == 1 {
                        continue;
                    }
                    let tail = lambda.coefficient(rest | 1 << r).scale(&Scalar::from_int(front_sign(rest, r) as i64));
                    acc.add_product(&sign, &derivs[r].component(&idx), &tail);
                }
            }
            let mut key = ii.clone();
            key.extend(indices(j));
            match acc.max_term() {
                Some((e, c)) => {
                    key.extend(e.iter().map(|&k| k as usize));
                    res.observe("differential condition", &key, c);
                }
                None => res.observe_zeros(1),
            }
        }
    }
    res
}

/// `Sigma_{I J} = eta_I eta_J - sum_r eta_{i1..i(n-1) j_r} eta_{j1..i_n..jn}`
/// with `i_n` in slot `r`.
fn sigma(lambda: &Multivector, i: &[usize], j: &[usize]) -> PolyFunction {
    let n = i.len();
    let mut acc = lambda.component(i).mul(&lambda.component(j));
    let mut left = i.to_vec();
    for r in 0..n {
        left[n - 1] = j[r];
        let mut right = j.to_vec();
        right[r] = i[n - 1];
        acc = acc.sub(&lambda.component(&left).mul(&lambda.component(&right)));
    }
    acc
}

fn algebraic_condition(lambda: &Multivector) -> Residual {
    let n = lambda.degree();
    let d = lambda.vars();
    let blocks: Vec<Vec<usize>> = subsets(d, n - 1)
        .into_iter()
        .flat_map(|m| {
            (0..d).map(move |last| {
                let mut v = indices(m);
                v.push(last);
                v
            })
        })
        .collect();
    let mut res = Residual::new();
    for i in &blocks {
        for j in &blocks {
            let t = sigma(lambda, i, j).add(&sigma(lambda, j, i));
            let mut key = i.clone();
            key.extend(j);
            match t.max_term() {
                Some((e, c)) => {
                    key.extend(e.iter().map(|&k| k as usize));
                    res.observe("algebraic condition", &key, c);
                }
                None => res.observe_zeros(1),
            }
        }
    }
    res
}

fn at_point(lambda: &Multivector, x: &[Scalar]) -> Result<Multivector, Error> {
    let mut out = Multivector::zero(lambda.vars(), lambda.degree());
    for (m, p) in lambda.entries() {
        out.add(m, &PolyFunction::constant(lambda.vars(), p.eval(x)?));
    }
    Ok(out)
}

/// Nambu-Poisson conditions. The algebraic condition is `Sigma + P(Sigma)`
/// with `P` exchanging the two index blocks of `Sigma`.
pub fn np_check(lambda: &Multivector, points: &[Vec<Scalar>], symbolic: bool) -> Result<NpReport, Error> {
    if lambda.degree() < 2 {
        return Err(Error::NotApplicable("Nambu-Poisson conditions need at least two slots".into()));
    }
    let differential = differential_condition(lambda);
    let algebraic = symbolic.then(|| algebraic_condition(lambda));
    let algebraic_at_points = points
        .iter()
        .map(|x| at_point(lambda, x).map(|c| algebraic_condition(&c)))
        .collect::<Result<_, _>>()?;
    Ok(NpReport { differential, algebraic, algebraic_at_points })
}

/// The fixed sample point `x = (1, 2, .., dim)`.
pub fn sample_point(dim: usize) -> Vec<Scalar> {
    (1..=dim as i64).map(Scalar::from_int).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_algebras::LieAlgebra;

    fn lie_poisson(label: &str) -> Multivector {
        let g = LieAlgebra::from_label(label).unwrap();
        Multivector::linear(&g.structure().as_cochain().into_components()).unwrap()
    }

    #[test]
    fn su2_fundamental_brackets() {
        let l = lie_poisson("A1");
        let x = |i| PolyFunction::var(3, i);
        assert_eq!(bracket_eval(&l, &[x(0), x(1)]).unwrap(), x(2));
        assert!(bracket_eval(&l, &[x(0), x(0)]).unwrap().is_zero());
        assert!(bracket_eval(&l, &[x(0)]).is_err());
    }

    #[test]
    fn lie_poisson_is_poisson() {
        let r = gps_check(&lie_poisson("A1")).unwrap();
        assert!(r.snb.is_zero() && r.coordinate.is_zero());
        let np = np_check(&lie_poisson("A1"), &[sample_point(3)], true).unwrap();
        assert!(np.is_zero());
    }

    #[test]
    fn odd_degree_is_rejected() {
        let t = crate::tensor_core::AltTensor::basis(3, 0b111);
        assert!(matches!(gps_check(&Multivector::constant(&t)), Err(Error::DegreeParity(_))));
    }

    #[test]
    fn decomposable_constant_is_nambu_poisson() {
        let t = crate::tensor_core::AltTensor::basis(4, 0b0111);
        let np = np_check(&Multivector::constant(&t), &[sample_point(4)], true).unwrap();
        assert!(np.is_zero());
    }
}
