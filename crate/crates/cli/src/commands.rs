//! One function per subcommand. Each builds a [`Report`] whose verdicts are
//! the identities the input is claimed to satisfy.

use liecoh_core::brst::{anticommutator_residual, brst_rho, brst_trivial, higher_brst, GhostOperator, Scope, MAX_FULL_CHECK_DIM};
use liecoh_core::ce_cohomology::{
    check_nilpotent, coboundary, cocycle_from_polynomial, cohomology, relative_cohomology, whitehead_homotopy_check,
    Cochain, RankPolicy, Representation, Subalgebra,
};
use liecoh_core::invariants::{casimir_matrix, check_invariance, commutant_residual, is_primitive, killing_polynomial, symmetrized_trace};
use liecoh_core::lie_algebras::{catalog, poincare_polynomial, AlgebraLabel, LieAlgebra};
use liecoh_core::multibrackets::{
    cocycle_condition_residual, extract_structure, gji_residual_lowered, multibracket as matrix_bracket, odd_gji_witness,
};
use liecoh_core::poisson_multivectors::{
    coderivation, fundamental_identity_residual, gps_check, np_check, sample_point, Multivector, PolyFunction,
};
use liecoh_core::tensor_core::index::{indices, subsets};
use liecoh_core::{AltTensor, Error, Residual, Scalar, SymTensor};
use serde_json::{json, Value};

use crate::args::{
    AlgebraArgs, BracketCheck, BrstArgs, CatalogArgs, CocycleArgs, Coefficients, CohomologyArgs, Command,
    InvariantCheck, InvariantsArgs, MultibracketArgs, PoissonArgs, PoissonCheck,
};
use crate::mutate::{Mutation, Target};
use crate::report::{Report, Verdict};
use crate::CliError;

/// Generator tuples tried when looking for a nonzero odd bracket.
const ODD_WITNESS_SEARCH: usize = 5000;

pub fn dispatch(cmd: &Command, config: Value, m: Option<&Mutation>) -> Result<Report, CliError> {
    match cmd {
        Command::Algebra(a) => algebra(a, Report::new("algebra", config), m),
        Command::Invariants(a) => invariants(a, Report::new("invariants", config), m),
        Command::Cocycle(a) => cocycle(a, Report::new("cocycle", config), m),
        Command::Cohomology(a) => cohomology_cmd(a, Report::new("cohomology", config), m),
        Command::Multibracket(a) => multibracket(a, Report::new("multibracket", config), m),
        Command::Brst(a) => brst(a, Report::new("brst", config), m),
        Command::Poisson(a) => poisson(a, Report::new("poisson", config), m),
        Command::Catalog(a) => catalog_cmd(a, Report::new("catalog", config), m),
    }
}

fn parse_label(s: &str) -> Result<AlgebraLabel, CliError> {
    s.parse().map_err(|e: Error| CliError::Usage(e.to_string()))
}

/// Builds the algebra, applies a `C` mutation, and records the Jacobi
/// identity and, for a matrix basis, closure of the commutators.
fn build(label: &str, m: Option<&Mutation>, report: &mut Report) -> Result<LieAlgebra, CliError> {
    let g = LieAlgebra::build(&parse_label(label)?).map_err(|e| match e {
        Error::CatalogOnly(_) | Error::UnknownAlgebra(_) => CliError::Usage(e.to_string()),
        other => other.into(),
    })?;
    let g = match m {
        Some(Mutation { target: Target::Structure, index, delta }) => g
            .with_mutated_constant(index[0], index[1], index[2], delta)
            .map_err(|e| CliError::Usage(e.to_string()))?,
        _ => g,
    };
    report.residual("jacobi", &g.check_jacobi());
    if g.generators().is_some() {
        report.residual("closure", &g.check_closure());
    }
    Ok(g)
}

/// The `W` mutation, if the command was given one.
fn tensor_mutation<'a>(m: Option<&'a Mutation>, command: &str, supported: bool) -> Result<Option<&'a Mutation>, CliError> {
    match m {
        Some(m) if m.target == Target::Tensor => {
            if supported {
                Ok(Some(m))
            } else {
                Err(CliError::Usage(format!("`{command}` has no tensor to mutate; use C:i,j,k:delta")))
            }
        }
        _ => Ok(None),
    }
}

fn shift_alt(t: &mut AltTensor, m: &Mutation) -> Result<(), CliError> {
    let bad = |e: Error| CliError::Usage(format!("cannot mutate component {:?}: {e}", m.index));
    let v = t.get(&m.index).map_err(bad)?;
    t.set(&m.index, &v + &m.delta).map_err(bad)
}

/// Library errors that report a failed identity at a located component.
fn falsified(e: &Error) -> Option<Verdict> {
    Some(match e.clone() {
        Error::NotInvariant { index, value } => Verdict::failed("ad-invariance", index, value),
        Error::NotCocycle { index, value } => Verdict::failed("cocycle condition", index, value),
        Error::NotAntisymmetric { index } => Verdict::failed("total antisymmetry", index, "asymmetric".into()),
        Error::NotSymmetric { index } => Verdict::failed("total symmetry", index, "asymmetric".into()),
        Error::IdentityComponent { tuple, value } => Verdict::failed("identity component of the multibracket", tuple, value),
        Error::OutsideSpan { tuple } => Verdict::failed("multibracket inside the span of the basis", tuple, "outside".into()),
        Error::NotNilpotent { label, mut monomial, index, value } => {
            monomial.extend(index);
            Verdict::failed(&label, monomial, value)
        }
        Error::Construction(msg) => Verdict::failed(&msg, Vec::new(), "nonzero".into()),
        _ => return None,
    })
}

/// `Ok(Some(v))`, or `Ok(None)` after recording a falsified identity.
fn guard<T>(report: &mut Report, r: Result<T, Error>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) => match falsified(&e) {
            Some(v) => {
                report.push(v);
                Ok(None)
            }
            None => Err(e.into()),
        },
    }
}

fn representation(g: &LieAlgebra, c: Coefficients) -> Result<Representation, CliError> {
    Ok(match c {
        Coefficients::Trivial => Representation::trivial(g),
        Coefficients::Adjoint => Representation::adjoint(g),
        Coefficients::Defining => Representation::defining(g)?,
    })
}

fn finish(mut report: Report, result: Value) -> Result<Report, CliError> {
    report.result = result;
    Ok(report)
}

fn algebra(a: &AlgebraArgs, mut report: Report, m: Option<&Mutation>) -> Result<Report, CliError> {
    tensor_mutation(m, "algebra", false)?;
    let g = build(&a.algebra, m, &mut report)?;
    report.residual("killing invariance", &g.check_killing_invariance());
    let entry = catalog(&parse_label(&a.algebra)?).ok();
    if let Some(e) = &entry {
        let mut r = Residual::new();
        r.observe("dim minus catalog dim", &[], &Scalar::from_int(g.dim() as i64 - e.dim as i64));
        report.residual("dimension against the catalog", &r);
    }
    let result = json!({
        "label": g.label(),
        "dim": g.dim(),
        "catalog_dim": entry.map(|e| e.dim),
        "matrix_size": g.generators().map(|x| x[0].rows()),
        "killing_nondegenerate": g.killing_inverse().is_ok(),
        "algebra": a.dump.then(|| g.to_json()),
    });
    finish(report, result)
}

/// The polynomial named by `name` and its order.
fn polynomial(g: &LieAlgebra, name: &str, order: Option<usize>) -> Result<(SymTensor, usize), CliError> {
    let check = |m: usize| match order {
        Some(o) if o != m => Err(CliError::Usage(format!("--order {o} does not match polynomial {name:?} of order {m}"))),
        _ => Ok(m),
    };
    match name {
        "trace" => {
            let m = order.ok_or_else(|| CliError::Usage("--order is required for the trace polynomial".into()))?;
            if m < 2 {
                return Err(CliError::Usage("--order must be at least 2".into()));
            }
            Ok((symmetrized_trace(g, m)?, m))
        }
        "killing" => Ok((killing_polynomial(g), check(2)?)),
        _ => {
            let list = name
                .strip_prefix("product:")
                .ok_or_else(|| CliError::Usage(format!("unknown polynomial {name:?}; use trace, killing or product:a,b,..")))?;
            let orders = list
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Usage(format!("bad factor orders in {name:?}")))?;
            if orders.len() < 2 || orders.iter().any(|&o| o < 2) {
                return Err(CliError::Usage("a product needs at least two factors of order at least 2".into()));
            }
            let mut acc = symmetrized_trace(g, orders[0])?;
            for &o in &orders[1..] {
                acc = acc.sym_product(&symmetrized_trace(g, o)?)?;
            }
            let m = check(orders.iter().sum())?;
            Ok((acc, m))
        }
    }
}

fn invariants(a: &InvariantsArgs, mut report: Report, m: Option<&Mutation>) -> Result<Report, CliError> {
    let w = tensor_mutation(m, "invariants", true)?;
    let g = build(&a.algebra, m, &mut report)?;
    let (mut k, order) = polynomial(&g, &a.polynomial, a.order)?;
    if let Some(w) = w {
        let v = &k.get(&w.index) + &w.delta;
        k.set(&w.index, v).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let mut result = json!({ "order": order, "polynomial": a.polynomial, "nnz": k.nnz(), "zero": k.is_zero() });
    if a.check.contains(&InvariantCheck::Invariance) {
        let r = check_invariance(&k, &g);
        result["invariance_residual"] = json!(r.verdict());
        report.residual("ad-invariance", &r);
    }
    if a.check.contains(&InvariantCheck::Primitivity) {
        let lower = (2..order).map(|o| symmetrized_trace(&g, o)).collect::<Result<Vec<_>, _>>()?;
        let p = is_primitive(&k, &lower)?;
        result["primitive"] = json!(p.primitive);
        result["decomposition"] = Value::Array(
            p.decomposition
                .iter()
                .map(|(f, c)| json!({ "factor_orders": f.iter().map(|&i| lower[i].order()).collect::<Vec<_>>(), "coefficient": c.to_string() }))
                .collect(),
        );
    }
    if a.check.contains(&InvariantCheck::Casimir) {
        let c = casimir_matrix(&k, &g)?;
        let r = commutant_residual(&c, &g)?;
        result["casimir_scalar"] = json!(c.is_scalar_multiple_of_identity().map(|s| s.to_string()));
        report.residual("casimir commutes with the generators", &r);
    }
    finish(report, result)
}

fn cocycle(a: &CocycleArgs, mut report: Report, m: Option<&Mutation>) -> Result<Report, CliError> {
    let w = tensor_mutation(m, "cocycle", true)?;
    let g = build(&a.algebra, m, &mut report)?;
    let (k, order) = polynomial(&g, &a.polynomial, a.order)?;
    let Some(mut omega) = guard(&mut report, cocycle_from_polynomial(&g, &k))? else {
        return finish(report, json!({ "polynomial_order": order, "degree": 2 * order - 1 }));
    };
    if let Some(w) = w {
        shift_alt(&mut omega, w)?;
    }
    let s = coboundary(&g, &Representation::trivial(&g), &Cochain::scalar(omega.clone()))?;
    report.residual("coboundary of the cocycle", &s.residual("s W"));
    let result = json!({
        "polynomial_order": order,
        "degree": omega.degree(),
        "nnz": omega.nnz(),
        "identically_zero": omega.is_zero(),
        "cocycle": a.dump.then(|| omega.to_json()),
    });
    finish(report, result)
}

/// `X3` or `X1,X2` (1-based) as 0-based indices.
fn parse_subalgebra(s: &str, dim: usize) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("--relative {s:?}: expected generators like X3 or X1,X2 with 1 <= i <= {dim}"));
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let n: usize = t.strip_prefix('X').or_else(|| t.strip_prefix('x')).unwrap_or(t).parse().map_err(|_| bad())?;
            if n == 0 || n > dim {
                return Err(bad());
            }
            Ok(n - 1)
        })
        .collect()
}

fn cohomology_cmd(a: &CohomologyArgs, mut report: Report, m: Option<&Mutation>) -> Result<Report, CliError> {
    tensor_mutation(m, "cohomology", false)?;
    let g = build(&a.algebra, m, &mut report)?;
    let rho = representation(&g, a.coefficients)?;
    let top = a.max_degree.unwrap_or(g.dim()).min(g.dim());
    if !rho.is_trivial() {
        report.residual("representation homomorphism", &rho.check_homomorphism(&g));
    }
    let nil = check_nilpotent(&g, &rho, 0..=top);
    report.residual("s^2 = 0", &nil);
    if !nil.is_zero() {
        return finish(report, json!({ "note": "cohomology is undefined: s^2 != 0" }));
    }
    if let Some(rel) = &a.relative {
        if a.coefficients != Coefficients::Trivial {
            return Err(CliError::Usage("relative cohomology uses trivial coefficients".into()));
        }
        let idx = parse_subalgebra(rel, g.dim())?;
        let h = Subalgebra::from_indices(g.dim(), &idx)?;
        let Some(r) = guard(&mut report, relative_cohomology(&g, &h, top))? else {
            return finish(report, json!({ "subalgebra": idx }));
        };
        report.residual("relative subcomplex closed under s", &r.closure);
        return finish(report, json!({ "subalgebra": idx, "cochain_dims": r.cochain_dims, "betti": r.betti }));
    }
    let policy = if a.exact { RankPolicy::exact_only() } else { RankPolicy::default() };
    let rep = cohomology(&g, &rho, top, &policy)?;
    let mut result = serde_json::to_value(&rep).expect("report serializes");
    if let Value::String(method) = &result["method"] {
        report.provenance = method.clone();
    }
    if rho.is_trivial() {
        if let Ok(entry) = catalog(&parse_label(&a.algebra)?) {
            let p = poincare_polynomial(&entry);
            let mut r = Residual::new();
            for (q, &b) in rep.betti.iter().enumerate() {
                let expect = p.get(q).copied().unwrap_or(0) as i64;
                r.observe("betti minus catalog", &[q], &Scalar::from_int(b as i64 - expect));
            }
            result["catalog_betti"] = json!(p.iter().take(top + 1).collect::<Vec<_>>());
            report.residual("betti numbers against the catalog Poincare polynomial", &r);
        }
    }
    if a.whitehead {
        if rho.is_trivial() {
            return Err(CliError::Usage("--whitehead needs nontrivial coefficients".into()));
        }
        let mut r = Residual::new();
        let mut casimir = None;
        for q in 0..=top {
            let w = whitehead_homotopy_check(&g, &rho, q)?;
            casimir = Some(w.casimir);
            r.merge(w.residual);
        }
        result["casimir"] = json!(casimir);
        report.residual("s tau + tau s = I2(rho)", &r);
    }
    finish(report, result)
}

/// `a = r b` with `r` fixed by one component; the residual is `a - r b`.
fn proportionality(a: &AltTensor, b: &AltTensor) -> (Option<Scalar>, Residual) {
    let r = a.ratio_to(b).or_else(|| {
        let (idx, v) = b.max_component()?;
        a.get(&idx).ok()?.checked_div(&v).ok()
    });
    let mut res = Residual::new();
    let diff = match &r {
        Some(r) => a.sub(&b.scale(r)),
        None => Ok(a.clone()),
    };
    match diff {
        Ok(d) => res.observe_alt("proportionality", &[], &d, d.nnz().max(1)),
        Err(_) => res.observe("proportionality", &[], &Scalar::ONE),
    }
    (a.ratio_to(b), res)
}

fn multibracket(a: &MultibracketArgs, mut report: Report, m: Option<&Mutation>) -> Result<Report, CliError> {
    let n = a.order;
    let w = tensor_mutation(m, "multibracket", n % 2 == 0)?;
    let g = build(&a.algebra, m, &mut report)?;
    let d = g.dim();
    if n < 2 {
        return Err(CliError::Usage("--order must be at least 2".into()));
    }
    if n % 2 == 1 {
        let gens = g.generators_or_err()?;
        if gens.len() < 2 * n - 1 {
            return Err(CliError::Usage(format!("the odd case needs {} generators, {} has {}", 2 * n - 1, g.label(), d)));
        }
        // the first generator tuple whose full bracket is nonzero, so the
        // proportionality is not vacuous
        let tuple = subsets(d, 2 * n - 1)
            .into_iter()
            .take(ODD_WITNESS_SEARCH)
            .map(indices)
            .find(|t| matrix_bracket(&t.iter().map(|&i| gens[i].clone()).collect::<Vec<_>>()).is_ok_and(|b| !b.is_zero()))
            .unwrap_or_else(|| (0..2 * n - 1).collect());
        let args: Vec<_> = tuple.iter().map(|&i| gens[i].clone()).collect();
        let r = odd_gji_witness(&args, n)?;
        report.residual("nested bracket sum against the full bracket", &r.residual);
        return finish(
            report,
            json!({
                "order": n,
                "generators": tuple,
                "expected_constant": r.expected.to_string(),
                "ratio": r.ratio.map(|x| x.to_string()),
                "bracket_is_zero": r.bracket_is_zero,
            }),
        );
    }
    if n + 1 > d {
        let note = format!("empty structure: degree {} exceeds dim {d}", n + 1);
        return finish(report, json!({ "order": n, "empty": true, "note": note }));
    }
    let Some(s) = guard(&mut report, extract_structure(&g, n))? else {
        return finish(report, json!({ "order": n }));
    };
    let tuples = subsets(d, n).len();
    let mut id = Residual::new();
    id.observe_zeros(tuples);
    report.residual("identity component of the multibracket", &id);
    let mut lowered = s.lowered().cloned().ok_or_else(|| {
        CliError::Core(Error::SingularForm(format!("the Killing form of {} is degenerate", g.label())))
    })?;
    if let Some(w) = w {
        shift_alt(&mut lowered, w)?;
    }
    let mut result = json!({ "order": n, "dim": d, "tuples": tuples, "nnz": lowered.nnz(), "empty": false });
    if a.verify.contains(&BracketCheck::Gji) {
        let r = gji_residual_lowered(s.mixed(), &lowered)?;
        result["residual"] = json!(r.verdict());
        report.residual("generalized jacobi", &r);
    }
    if a.verify.contains(&BracketCheck::Mixed) {
        let c = g.structure().as_cochain().into_components();
        let r = gji_residual_lowered(&c, &lowered)?;
        result["mixed_residual"] = json!(r.verdict());
        report.residual("mixed jacobi with the structure constants", &r);
        report.residual("cocycle condition", &cocycle_condition_residual(&c, &lowered)?);
    }
    {
        let k = symmetrized_trace(&g, n / 2 + 1)?;
        if let Some(omega) = guard(&mut report, cocycle_from_polynomial(&g, &k))? {
            let (ratio, r) = proportionality(&lowered, &omega);
            result["scalar_vs_cocycle"] = json!(ratio.map(|x| x.to_string()));
            report.residual("proportional to the polynomial cocycle", &r);
        }
    }
    finish(report, result)
}

fn brst(a: &BrstArgs, mut report: Report, m: Option<&Mutation>) -> Result<Report, CliError> {
    let w = tensor_mutation(m, "brst", a.complete)?;
    let g = build(&a.algebra, m, &mut report)?;
    let d = g.dim();
    let scope = match a.max_ghost_degree {
        Some(k) => Scope::UpToDegree(k),
        None if a.verify && d > MAX_FULL_CHECK_DIM => {
            return Err(CliError::Usage(format!(
                "dim {d} has 2^{d} ghost monomials; pass --max-ghost-degree (full checks stop at dim {MAX_FULL_CHECK_DIM})"
            )))
        }
        None => Scope::All,
    };
    let rho = representation(&g, a.coefficients)?;
    if a.complete && !rho.is_trivial() {
        return Err(CliError::Usage("the complete operator uses trivial coefficients".into()));
    }
    let mut terms: Vec<GhostOperator> = Vec::new();
    let mut orders = vec![2usize];
    if rho.is_trivial() {
        terms.push(brst_trivial(&g));
    } else {
        let r = rho.check_homomorphism(&g);
        let ok = r.is_zero();
        report.residual("representation homomorphism", &r);
        if !ok {
            return finish(report, json!({ "terms": orders }));
        }
        terms.push(brst_rho(&g, &rho)?);
    }
    let mut skipped = Vec::new();
    if a.complete {
        if let Ok(entry) = catalog(&parse_label(&a.algebra)?) {
            for c in entry.cocycle_orders.iter().copied().filter(|&c| c >= 5) {
                let n = c - 1;
                if n + 1 > d {
                    skipped.push(n);
                    continue;
                }
                let Some(s) = guard(&mut report, extract_structure(&g, n))? else {
                    return finish(report, json!({ "terms": orders }));
                };
                if s.is_zero() {
                    skipped.push(n);
                    continue;
                }
                let mut mixed = s.mixed().to_vec();
                if let Some(w) = w.filter(|w| w.index.len() == n + 1) {
                    let (sigma, rest) = w.index.split_last().expect("nonempty");
                    let t = mixed.get_mut(*sigma).ok_or_else(|| CliError::Usage(format!("output index {sigma} out of range")))?;
                    shift_alt(t, &Mutation { target: Target::Tensor, index: rest.to_vec(), delta: w.delta.clone() })?;
                }
                terms.push(higher_brst(&mixed)?);
                orders.push(n);
            }
        }
        if let Some(w) = w {
            if !orders.contains(&(w.index.len() - 1)) {
                return Err(CliError::Usage(format!("no term with {} bracket arguments to mutate", w.index.len() - 1)));
            }
        }
    }
    let mut result = json!({
        "terms": orders,
        "skipped_orders": skipped,
        "generator_images_nnz": terms.iter().map(|t| (0..d).map(|k| t.on_generator(k).nnz()).sum::<usize>()).collect::<Vec<_>>(),
        "scope": match scope { Scope::All => "all monomials".to_string(), Scope::UpToDegree(k) => format!("monomials with at most {k} ghosts") },
    });
    if a.verify {
        let mut all_zero = true;
        let mut pairs = Vec::new();
        for i in 0..terms.len() {
            for j in i..terms.len() {
                let mut r = anticommutator_residual(&terms[i], &terms[j], scope)?;
                split_ghost_witness(&mut r);
                let name = if i == j { format!("s{}^2", orders[i]) } else { format!("{{s{}, s{}}}", orders[i], orders[j]) };
                all_zero &= r.is_zero();
                pairs.push(json!({ "pair": [orders[i], orders[j]], "residual": r.verdict(), "checked": r.checked }));
                report.residual(&name, &r);
            }
        }
        result["nilpotent"] = json!(all_zero);
        result["anticommutators"] = json!(if all_zero { "all zero" } else { "nonzero" });
        result["pairs"] = Value::Array(pairs);
    }
    finish(report, result)
}

/// Ghost witnesses come as `monomial ++ [usize::MAX] ++ component`; the
/// monomial moves into the label so indices stay small integers.
fn split_ghost_witness(r: &mut Residual) {
    if let Some(w) = &mut r.witness {
        if let Some(p) = w.index.iter().position(|&x| x == usize::MAX) {
            let component = w.index.split_off(p + 1);
            w.index.pop();
            w.label = format!("{} on the monomial c^{:?}", w.label, w.index);
            w.index = component;
        }
    }
}

enum Source {
    Linear(Vec<AltTensor>),
    Constant(AltTensor),
}

fn poisson(a: &PoissonArgs, mut report: Report, m: Option<&Mutation>) -> Result<Report, CliError> {
    let w = tensor_mutation(m, "poisson", true)?;
    let need_algebra = |report: &mut Report| -> Result<LieAlgebra, CliError> {
        let label = a.algebra.as_deref().ok_or_else(|| CliError::Usage(format!("--source {} needs --algebra", a.source)))?;
        build(label, m, report)
    };
    let mut source = if a.source == "lie" {
        Source::Linear(need_algebra(&mut report)?.structure().as_cochain().into_components())
    } else if let Some(deg) = a.source.strip_prefix("cocycle:") {
        let deg: usize = deg.parse().map_err(|_| CliError::Usage(format!("bad cocycle degree in {:?}", a.source)))?;
        if deg < 3 || deg % 2 == 0 {
            return Err(CliError::Usage("the cocycle degree must be odd and at least 3".into()));
        }
        let g = need_algebra(&mut report)?;
        if deg == 3 {
            Source::Linear(g.structure().as_cochain().into_components())
        } else {
            let Some(s) = guard(&mut report, extract_structure(&g, deg - 1))? else {
                return finish(report, json!({ "source": a.source }));
            };
            if s.is_zero() {
                return Err(CliError::Usage(format!("{} has no nonzero {}-bracket", g.label(), deg - 1)));
            }
            Source::Linear(s.mixed().to_vec())
        }
    } else if let Some(list) = a.source.strip_prefix("constant:") {
        if m.is_some_and(|m| m.target == Target::Structure) {
            return Err(CliError::Usage("a constant source has no structure constants to mutate".into()));
        }
        let idx = list
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CliError::Usage(format!("bad indices in {:?}", a.source)))?;
        let dim = a.dim.unwrap_or_else(|| idx.iter().max().map_or(0, |x| x + 1));
        let mut t = AltTensor::zero(idx.len(), dim);
        t.set(&idx, Scalar::ONE).map_err(|e| CliError::Usage(e.to_string()))?;
        Source::Constant(t)
    } else {
        return Err(CliError::Usage(format!("unknown source {:?}; use lie, cocycle:<degree> or constant:i,j,..", a.source)));
    };
    if let Some(w) = w {
        match &mut source {
            Source::Constant(t) => shift_alt(t, w)?,
            Source::Linear(mixed) => {
                let (sigma, rest) = w.index.split_last().expect("nonempty");
                let t = mixed.get_mut(*sigma).ok_or_else(|| CliError::Usage(format!("output index {sigma} out of range")))?;
                shift_alt(t, &Mutation { target: Target::Tensor, index: rest.to_vec(), delta: w.delta.clone() })?;
            }
        }
    }
    // linear sources claim the generalized Poisson property; a wedge of
    // coordinate fields claims the Nambu-Poisson conditions
    let squared = if a.check.contains(&PoissonCheck::Coderivation) {
        let Source::Linear(mixed) = &source else {
            return Err(CliError::Usage("the coderivation check needs a linear source".into()));
        };
        let (q, d) = (mixed.first().map_or(0, AltTensor::degree), mixed.len());
        let mut r = Residual::new();
        for k in (q..=d).flat_map(|n| subsets(d, n)) {
            let twice = coderivation(q, mixed, &coderivation(q, mixed, &AltTensor::basis(d, k))?)?;
            r.observe_alt("coderivation squared", &indices(k), &twice, twice.nnz().max(1));
        }
        Some(r)
    } else {
        None
    };
    let (lambda, linear) = match &source {
        Source::Linear(mixed) => (Multivector::linear(mixed)?, true),
        Source::Constant(t) => (Multivector::constant(t), false),
    };
    let n = lambda.degree();
    let d = lambda.vars();
    let mut result = json!({ "source": a.source, "degree": n, "vars": d, "nnz": lambda.nnz() });
    if let Some(r) = &squared {
        result["coderivation_residual"] = json!(r.verdict());
        report.residual("coderivation squares to zero", r);
    }
    if a.check.contains(&PoissonCheck::Gps) {
        if n % 2 == 1 {
            result["gps_note"] = json!(format!("[Lambda, Lambda] vanishes identically for odd degree {n}"));
        } else {
            let r = gps_check(&lambda)?;
            result["gps_residual"] = json!(r.snb.verdict());
            result["gps_coordinate_residual"] = json!(r.coordinate.verdict());
            result["snb_to_coordinate_ratio"] = json!(r.ratio.as_ref().map(ToString::to_string));
            let mut agree = Residual::new();
            agree.observe("verdicts differ", &[], &Scalar::from_int(i64::from(!r.agree())));
            report.record(linear, "[Lambda, Lambda] = 0", &r.snb);
            report.record(linear, "generalized jacobi, coordinates", &r.coordinate);
            report.residual("bracket and coordinate verdicts agree", &agree);
        }
    }
    if a.check.contains(&PoissonCheck::Np) {
        let x = sample_point(d);
        let r = np_check(&lambda, std::slice::from_ref(&x), a.symbolic)?;
        let at = &r.algebraic_at_points[0];
        result["np_differential"] = json!(r.differential.verdict());
        result["np_algebraic_at_sample"] = json!(at.verdict());
        result["np_algebraic_symbolic"] = json!(r.algebraic.as_ref().map(Residual::verdict));
        result["sample_point"] = json!(x.iter().map(ToString::to_string).collect::<Vec<_>>());
        result["decomposable_hint"] = json!(r.is_zero());
        report.record(!linear, "nambu-poisson differential condition", &r.differential);
        report.record(!linear, "nambu-poisson algebraic condition at the sample point", at);
        if let Some(s) = &r.algebraic {
            report.record(!linear, "nambu-poisson algebraic condition, symbolic", s);
        }
    }
    if a.check.contains(&PoissonCheck::Fi) {
        if d < n {
            return Err(CliError::Usage(format!("the fundamental identity check needs at least {n} coordinates")));
        }
        // {x_0..x_(n-2), {x_0^2, x_1, x_3, x_4, ..}}; the quadratic slot also
        // exercises the second-derivative part of the identity
        let fs: Vec<PolyFunction> = (0..n - 1).map(|i| PolyFunction::var(d, i)).collect();
        let mut gs = vec![PolyFunction::var(d, 0).mul(&PolyFunction::var(d, 0))];
        let others: Vec<usize> = (1..d).filter(|&i| i != 2).chain((d > 2).then_some(2)).collect();
        gs.extend(others.iter().take(n - 1).map(|&i| PolyFunction::var(d, i)));
        let fi = fundamental_identity_residual(&lambda, &fs, &gs)?;
        let mut r = Residual::new();
        r.observe_zeros(usize::from(fi.is_zero()));
        for (e, c) in fi.terms() {
            r.observe("fundamental identity", &e.iter().map(|&x| x as usize).collect::<Vec<_>>(), c);
        }
        result["fi_residual"] = json!(r.verdict());
        result["fi_value"] = json!(fi.to_string());
        result["fi_arguments"] = json!({
            "f": fs.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "g": gs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        });
        report.record(!linear, "fundamental identity", &r);
    }
    finish(report, result)
}

fn catalog_cmd(a: &CatalogArgs, report: Report, m: Option<&Mutation>) -> Result<Report, CliError> {
    if m.is_some() {
        return Err(CliError::Usage("`catalog` checks no identity to mutate".into()));
    }
    let entry = catalog(&parse_label(&a.label)?).map_err(|e| CliError::Usage(e.to_string()))?;
    let p = poincare_polynomial(&entry);
    let result = json!({
        "label": entry.label,
        "dim": entry.dim,
        "invariant_orders": entry.invariant_orders,
        "cocycle_orders": entry.cocycle_orders,
        "poincare_polynomial": p,
        "total_betti": p.iter().sum::<u64>(),
    });
    finish(report, result)
}
