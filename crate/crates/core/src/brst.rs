//! The ghost (Grassmann) algebra on `dim g` odd generators `c^i` and odd
//! derivations on it: the BRST operators `s`, `s~ = c^i rho(X_i) + s` and
//! the higher-order operators `s_{2m-2}` built from multibracket structure
//! constants.
//!
//! A ghost element with values in `V` is a sum of `c^I v_A`, stored as
//! `(mask of I, A) -> coefficient` with `I` sorted increasingly. Scalar
//! elements use `values_dim = 1`. The cochain with stored component
//! `W^A_I` corresponds to the ghost element with the same coefficients, so
//! the dictionary `(1/n!) W_{i1..in} c^{i1}..c^{in}` is the identity on
//! coordinates.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::ce_cohomology::{Cochain, Representation};
use crate::error::Error;
use crate::lie_algebras::LieAlgebra;
use crate::tensor_core::index::{concat_sign, indices, subsets};
use crate::tensor_core::{AltTensor, Mask, Scalar};
use crate::verdict::Residual;

/// Largest algebra for which checks over every basis monomial are allowed.
pub const MAX_FULL_CHECK_DIM: usize = 15;

type Key = (Mask, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhostElement {
    dim: usize,
    values_dim: usize,
    terms: BTreeMap<Key, Scalar>,
}

impl GhostElement {
    pub fn zero(dim: usize, values_dim: usize) -> Self {
        GhostElement { dim, values_dim, terms: BTreeMap::new() }
    }

    /// `c^I v_a` with `I` the set bits of `mask`.
    pub fn monomial(dim: usize, values_dim: usize, mask: Mask, a: usize) -> Self {
        let mut e = Self::zero(dim, values_dim);
        e.terms.insert((mask, a), Scalar::ONE);
        e
    }

    /// The scalar unit.
    pub fn one(dim: usize) -> Self {
        Self::monomial(dim, 1, 0, 0)
    }

    /// The scalar generator `c^k`.
    pub fn generator(dim: usize, k: usize) -> Self {
        Self::monomial(dim, 1, 1 << k, 0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values_dim(&self) -> usize {
        self.values_dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, usize, &Scalar)> + '_ {
        self.terms.iter().map(|(&(m, a), v)| (m, a, v))
    }

    pub fn coefficient(&self, mask: Mask, a: usize) -> Scalar {
        self.terms.get(&(mask, a)).cloned().unwrap_or(Scalar::ZERO)
    }

    /// The degree if every term has the same number of ghosts.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|(m, _)| m.count_ones() as usize);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn add_term(&mut self, mask: Mask, a: usize, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        match self.terms.entry((mask, a)) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += value;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(value.clone());
            }
        }
    }

    fn add_signed(&mut self, mask: Mask, a: usize, sign: i32, value: &Scalar) {
        if sign > 0 {
            self.add_term(mask, a, value);
        } else {
            self.add_term(mask, a, &-value);
        }
    }

    pub fn axpy(&mut self, s: &Scalar, other: &Self) {
        for (&(m, a), v) in &other.terms {
            self.add_term(m, a, &(s * v));
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&Scalar::from_int(-1), other);
        out
    }

    /// `self * other`, where `self` is scalar-valued.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        if self.values_dim != 1 || self.dim != other.dim {
            return Err(Error::DimensionMismatch("left factor must be a scalar ghost element of the same dim".into()));
        }
        let mut out = Self::zero(self.dim, other.values_dim);
        for (&(m1, _), x) in &self.terms {
            for (&(m2, a), y) in &other.terms {
                if let Some(s) = concat_sign(m1, m2) {
                    out.add_signed(m1 | m2, a, s, &(x * y));
                }
            }
        }
        Ok(out)
    }

    pub fn from_cochain(w: &Cochain) -> Self {
        let mut out = Self::zero(w.dim(), w.values_dim());
        for (a, comp) in w.components().iter().enumerate() {
            for (m, v) in comp.entries() {
                out.add_term(m, a, v);
            }
        }
        out
    }

    /// The degree-`degree` part, read back as a cochain.
    pub fn to_cochain(&self, degree: usize) -> Cochain {
        let mut comps = vec![AltTensor::zero(degree, self.dim); self.values_dim];
        for (&(m, a), v) in &self.terms {
            if m.count_ones() as usize == degree {
                comps[a].add_at(m, v);
            }
        }
        Cochain::from_components(degree, self.dim, comps).expect("consistent shapes")
    }

    fn observe_into(&self, r: &mut Residual, label: &str, monomial: Mask) {
        if self.is_zero() {
            r.observe_zeros(1);
        }
        for (&(m, a), v) in &self.terms {
            let mut idx = indices(monomial);
            idx.push(usize::MAX);
            idx.extend(indices(m));
            idx.push(a);
            r.observe(label, &idx, v);
        }
    }
}

/// An odd derivation of the ghost algebra, given by its values on the
/// generators `c^k` and, for `V`-valued elements, on the basis `v_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhostOperator {
    label: String,
    dim: usize,
    values_dim: usize,
    generators: Vec<GhostElement>,
    values: Option<Vec<GhostElement>>,
}

impl GhostOperator {
    pub fn new(label: &str, generators: Vec<GhostElement>, values: Option<Vec<GhostElement>>) -> Result<Self, Error> {
        let dim = generators.len();
        let values_dim = values.as_ref().map_or(1, Vec::len);
        for (k, g) in generators.iter().enumerate() {
            if g.dim != dim || g.values_dim != 1 {
                return Err(Error::DimensionMismatch(format!("image of c^{k} must be a scalar ghost element on {dim} ghosts")));
            }
            if !g.terms.keys().all(|(m, _)| m.count_ones() % 2 == 0) {
                return Err(Error::DegreeParity(format!("image of c^{k} has odd degree")));
            }
        }
        for (a, v) in values.iter().flatten().enumerate() {
            if v.dim != dim || v.values_dim != values_dim {
                return Err(Error::DimensionMismatch(format!("image of v_{a} has the wrong shape")));
            }
            if !v.terms.keys().all(|(m, _)| m.count_ones() % 2 == 1) {
                return Err(Error::DegreeParity(format!("image of v_{a} has even degree")));
            }
        }
        Ok(GhostOperator { label: label.to_string(), dim, values_dim, generators, values })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values_dim(&self) -> usize {
        self.values_dim
    }

    /// Image of `c^k`.
    pub fn on_generator(&self, k: usize) -> &GhostElement {
        &self.generators[k]
    }

    /// Image of `v_a`, zero when the operator ignores values.
    pub fn on_value(&self, a: usize) -> GhostElement {
        match &self.values {
            Some(v) => v[a].clone(),
            None => GhostElement::zero(self.dim, self.values_dim),
        }
    }

    /// Same action on ghosts, acting on `V`-valued elements with values
    /// untouched.
    pub fn with_values_dim(&self, values_dim: usize) -> Result<Self, Error> {
        if self.values.is_some() && values_dim != self.values_dim {
            return Err(Error::DimensionMismatch("operator already acts on a value space".into()));
        }
        Ok(GhostOperator { values_dim, ..self.clone() })
    }

    /// Sum of derivations.
    pub fn sum(label: &str, ops: &[GhostOperator]) -> Result<Self, Error> {
        let first = ops.first().ok_or_else(|| Error::Construction("empty operator sum".into()))?;
        let mut gens = vec![GhostElement::zero(first.dim, 1); first.dim];
        let mut values: Option<Vec<GhostElement>> = None;
        for op in ops {
            if op.dim != first.dim {
                return Err(Error::DimensionMismatch("operators on different ghost algebras".into()));
            }
            for (g, h) in gens.iter_mut().zip(&op.generators) {
                g.axpy(&Scalar::ONE, h);
            }
            if let Some(v) = &op.values {
                match &mut values {
                    Some(acc) if acc.len() == v.len() => {
                        for (x, y) in acc.iter_mut().zip(v) {
                            x.axpy(&Scalar::ONE, y);
                        }
                    }
                    Some(_) => return Err(Error::DimensionMismatch("value spaces differ".into())),
                    None => values = Some(v.clone()),
                }
            }
        }
        GhostOperator::new(label, gens, values)
    }

    /// `D(c^I v_a) = sum_r (-1)^(r-1) c^{i1}..D(c^{ir})..c^{in} v_a + (-1)^n c^I D(v_a)`.
    pub fn apply_monomial(&self, mask: Mask, a: usize) -> GhostElement {
        let mut out = GhostElement::zero(self.dim, self.values_dim);
        for (p, i) in indices(mask).into_iter().enumerate() {
            let lower = mask & ((1u64 << i) - 1);
            let upper = mask & !((1u64 << (i + 1)) - 1);
            for (&(m, _), x) in &self.generators[i].terms {
                let Some(s1) = concat_sign(lower, m) else { continue };
                let Some(s2) = concat_sign(lower | m, upper) else { continue };
                let sign = if p % 2 == 0 { s1 * s2 } else { -s1 * s2 };
                out.add_signed(lower | m | upper, a, sign, x);
            }
        }
        if let Some(vals) = &self.values {
            let base = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            for (&(m, b), x) in &vals[a].terms {
                if let Some(s) = concat_sign(mask, m) {
                    out.add_signed(mask | m, b, base * s, x);
                }
            }
        }
        out
    }

    pub fn apply(&self, e: &GhostElement) -> Result<GhostElement, Error> {
        self.check_element(e)?;
        let mut out = GhostElement::zero(self.dim, self.values_dim);
        for (&(m, a), x) in &e.terms {
            out.axpy(x, &self.apply_monomial(m, a));
        }
        Ok(out)
    }

    fn apply_cached(&self, e: &GhostElement, cache: &mut HashMap<Key, GhostElement>) -> GhostElement {
        let mut out = GhostElement::zero(self.dim, self.values_dim);
        for (&(m, a), x) in &e.terms {
            let img = cache.entry((m, a)).or_insert_with(|| self.apply_monomial(m, a));
            out.axpy(x, img);
        }
        out
    }

    fn check_element(&self, e: &GhostElement) -> Result<(), Error> {
        if e.dim != self.dim || e.values_dim != self.values_dim {
            return Err(Error::DimensionMismatch(format!(
                "element on {} ghosts with {} values vs operator on {} ghosts with {} values",
                e.dim, e.values_dim, self.dim, self.values_dim
            )));
        }
        Ok(())
    }
}

/// Which basis monomials an operator identity is checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Every `c^I v_a`; needs `dim <= MAX_FULL_CHECK_DIM`.
    All,
    /// Monomials with at most this many ghosts.
    UpToDegree(usize),
}

impl Scope {
    fn top(self, dim: usize) -> Result<usize, Error> {
        match self {
            Scope::All if dim > MAX_FULL_CHECK_DIM => Err(Error::ResourceGuard(format!(
                "checking all 2^{dim} ghost monomials exceeds the limit of dim {MAX_FULL_CHECK_DIM}"
            ))),
            Scope::All => Ok(dim),
            Scope::UpToDegree(d) => Ok(d.min(dim)),
        }
    }
}

/// `{A, B} = AB + BA` on every monomial in scope; `A = B` checks `2 A^2`.
pub fn anticommutator_residual(a: &GhostOperator, b: &GhostOperator, scope: Scope) -> Result<Residual, Error> {
    if a.dim != b.dim || a.values_dim != b.values_dim {
        return Err(Error::DimensionMismatch(format!("cannot compose {} with {}", a.label, b.label)));
    }
    let top = scope.top(a.dim)?;
    let label = if a == b { format!("{}^2", a.label) } else { format!("{{{}, {}}}", a.label, b.label) };
    let parts: Vec<Residual> = (0..=top)
        .into_par_iter()
        .map(|d| {
            let mut r = Residual::new();
            let (mut ca, mut cb) = (HashMap::new(), HashMap::new());
            for mask in subsets(a.dim, d) {
                for v in 0..a.values_dim {
                    let mut out = a.apply_cached(&b.apply_monomial(mask, v), &mut ca);
                    if a != b {
                        out.axpy(&Scalar::ONE, &b.apply_cached(&a.apply_monomial(mask, v), &mut cb));
                    }
                    out.observe_into(&mut r, &label, mask);
                }
            }
            r
        })
        .collect();
    let mut r = Residual::new();
    for p in parts {
        r.merge(p);
    }
    Ok(r)
}

/// `D^2` on every monomial in scope.
pub fn square_residual(op: &GhostOperator, scope: Scope) -> Result<Residual, Error> {
    anticommutator_residual(op, op, scope)
}

/// `D(xy) - D(x) y - (-1)^deg(x) x D(y)` for a homogeneous scalar `x`.
pub fn leibniz_residual(op: &GhostOperator, x: &GhostElement, y: &GhostElement) -> Result<Residual, Error> {
    let deg = x.degree().unwrap_or(0);
    if x.degree().is_none() && !x.is_zero() {
        return Err(Error::DegreeParity("left factor must be homogeneous".into()));
    }
    let scalar_op = GhostOperator { values: None, values_dim: 1, ..op.clone() };
    let lhs = op.apply(&x.mul(y)?)?;
    let mut rhs = scalar_op.apply(x)?.mul(y)?;
    let sign = Scalar::from_int(if deg % 2 == 0 { 1 } else { -1 });
    rhs.axpy(&sign, &x.mul(&op.apply(y)?)?);
    let mut r = Residual::new();
    lhs.sub(&rhs).observe_into(&mut r, &format!("leibniz for {}", op.label), 0);
    Ok(r)
}

/// `s c^k = -(1/2) C_ij^k c^i c^j`.
pub fn brst_trivial(g: &LieAlgebra) -> GhostOperator {
    let d = g.dim();
    let gens = (0..d)
        .map(|k| {
            let mut e = GhostElement::zero(d, 1);
            for (i, j, v) in g.structure().into_target(k) {
                e.add_term(1 << i | 1 << j, 0, &-v);
            }
            e
        })
        .collect();
    GhostOperator::new("s", gens, None).expect("even images")
}

/// `s~ = c^i rho(X_i) + s`, acting on `V`-valued ghost elements.
pub fn brst_rho(g: &LieAlgebra, rho: &Representation) -> Result<GhostOperator, Error> {
    let d = g.dim();
    if rho.dim_v() == 0 || (0..d).any(|i| rho.matrix(i).rows() != rho.dim_v()) {
        return Err(Error::DimensionMismatch("representation shape does not match the algebra".into()));
    }
    let hom = rho.check_homomorphism(g);
    if let Some(w) = hom.witness {
        return Err(Error::NotApplicable(format!(
            "{} is not a representation: component {:?} of rho([X,Y]) - [rho X, rho Y] is {}",
            rho.name(),
            w.index,
            w.value
        )));
    }
    let n = rho.dim_v();
    let values = (0..n)
        .map(|a| {
            let mut e = GhostElement::zero(d, n);
            for i in 0..d {
                for b in 0..n {
                    e.add_term(1 << i, b, rho.matrix(i).get(b, a));
                }
            }
            e
        })
        .collect();
    let s = brst_trivial(g);
    GhostOperator::new("s~", s.generators, Some(values))
}

/// `s_n c^s = -(1/n!) Omega_{i1..in}^s c^{i1}..c^{in}` from mixed structure
/// constants `Omega^s` (one antisymmetric `n`-tensor per output index).
pub fn higher_brst(mixed: &[AltTensor]) -> Result<GhostOperator, Error> {
    let d = mixed.len();
    let n = mixed.first().map_or(0, AltTensor::degree);
    if n % 2 == 1 || n == 0 {
        return Err(Error::DegreeParity(format!("s_n needs an even number of arguments, got {n}")));
    }
    if mixed.iter().any(|t| t.dim() != d || t.degree() != n) {
        return Err(Error::DimensionMismatch("mixed structure constants have inconsistent shapes".into()));
    }
    let gens = mixed
        .iter()
        .map(|t| {
            let mut e = GhostElement::zero(d, 1);
            for (m, v) in t.entries() {
                e.add_term(m, 0, &-v);
            }
            e
        })
        .collect();
    GhostOperator::new(&format!("s{n}"), gens, None)
}

/// The terms of the complete BRST operator and the checked pairwise
/// anticommutators.
#[derive(Clone, Debug)]
pub struct CompleteBrst {
    pub terms: Vec<GhostOperator>,
    /// Number of multibracket arguments of each term: `2, 4, ..`.
    pub orders: Vec<usize>,
    /// `((i, j), {s_i, s_j})` for `i <= j`, indexing into `terms`.
    pub anticommutators: Vec<((usize, usize), Residual)>,
    pub scope: Scope,
}

impl CompleteBrst {
    /// The sum `s_2 + s_4 + ..`.
    pub fn total(&self) -> GhostOperator {
        GhostOperator::sum("s", &self.terms).expect("terms share the ghost algebra")
    }
}

/// `s = s_2 + sum_i s_{n_i}`, with every `{s_i, s_j}` (including squares)
/// checked on the monomials in `scope`. A nonzero anticommutator is an
/// error naming the pair and a monomial.
pub fn complete_brst(g: &LieAlgebra, higher: &[Vec<AltTensor>], scope: Scope) -> Result<CompleteBrst, Error> {
    let mut terms = vec![brst_trivial(g)];
    for m in higher {
        if m.len() != g.dim() || m.is_empty() {
            return Err(Error::DimensionMismatch(format!("{} output components for dim {}", m.len(), g.dim())));
        }
        terms.push(higher_brst(m)?);
    }
    let orders: Vec<usize> = std::iter::once(2).chain(higher.iter().map(|m| m[0].degree())).collect();
    let mut anticommutators = Vec::new();
    for i in 0..terms.len() {
        for j in i..terms.len() {
            let r = anticommutator_residual(&terms[i], &terms[j], scope)?;
            if let Some(w) = &r.witness {
                let split = w.index.iter().position(|&x| x == usize::MAX).unwrap_or(0);
                return Err(Error::NotNilpotent {
                    label: w.label.clone(),
                    monomial: w.index[..split].to_vec(),
                    index: w.index[split + 1..].to_vec(),
                    value: w.value.clone(),
                });
            }
            anticommutators.push(((i, j), r));
        }
    }
    Ok(CompleteBrst { terms, orders, anticommutators, scope })
}

/// `s~(ghost(W)) - ghost(s W)` for a `V`-valued cochain `W`.
pub fn dictionary_residual(g: &LieAlgebra, rho: &Representation, w: &Cochain) -> Result<Residual, Error> {
    let op = if rho.is_trivial() { brst_trivial(g).with_values_dim(rho.dim_v())? } else { brst_rho(g, rho)? };
    let lhs = op.apply(&GhostElement::from_cochain(w))?;
    let rhs = GhostElement::from_cochain(&crate::ce_cohomology::coboundary(g, rho, w)?);
    let mut r = Residual::new();
    lhs.sub(&rhs).observe_into(&mut r, "ghost dictionary", 0);
    Ok(r)
}
