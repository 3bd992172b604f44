//! Lie algebras given by a matrix basis or by structure constants.
//!
//! Structure constants satisfy `[X_i, X_j] = C_ij^k X_k`. When a matrix
//! basis is present they are obtained by decomposing each commutator in
//! that basis, and closure is checked exactly.

pub mod bases;
pub mod catalog;
mod extension;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use catalog::{catalog, poincare_polynomial, AlgebraLabel, CatalogEntry, Exceptional, Series};
pub use extension::central_extend;

use crate::ce_cohomology::Cochain;
use crate::error::Error;
use crate::linalg::{Matrix, SpanDecomposer};
use crate::tensor_core::{AltTensor, Scalar};
use crate::verdict::Residual;

/// Structure constants `C_ij^k`, stored densely and as sparse lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    dense: Vec<Scalar>,
    /// For each `k`, the nonzero `(i, j, C_ij^k)` with `i < j`.
    by_target: Vec<Vec<(usize, usize, Scalar)>>,
}

impl StructureConstants {
    /// From a dense `dim^3` array indexed `[i][j][k]`; must be antisymmetric
    /// in `i, j`.
    pub fn from_dense(dim: usize, dense: Vec<Scalar>) -> Result<Self, Error> {
        if dense.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!("{} constants for dim {dim}", dense.len())));
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let a = &dense[(i * dim + j) * dim + k];
                    let b = &dense[(j * dim + i) * dim + k];
                    if *a != -b {
                        return Err(Error::Construction(format!("C_({i},{j})^{k} is not antisymmetric in i, j")));
                    }
                }
            }
        }
        let mut by_target = vec![Vec::new(); dim];
        for i in 0..dim {
            for j in i + 1..dim {
                for (k, list) in by_target.iter_mut().enumerate() {
                    let v = &dense[(i * dim + j) * dim + k];
                    if !v.is_zero() {
                        list.push((i, j, v.clone()));
                    }
                }
            }
        }
        Ok(StructureConstants { dim, dense, by_target })
    }

    pub fn zero(dim: usize) -> Self {
        StructureConstants { dim, dense: vec![Scalar::ZERO; dim * dim * dim], by_target: vec![Vec::new(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.dense[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero `(i, j, C_ij^k)` with `i < j`, for the given `k`.
    pub fn into_target(&self, k: usize) -> &[(usize, usize, Scalar)] {
        &self.by_target[k]
    }

    /// `ad(X_i)` as a matrix: `ad(X_i)[k][j] = C_ij^k`.
    pub fn adjoint(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for k in 0..self.dim {
                let v = self.get(i, j, k);
                if !v.is_zero() {
                    m.set(k, j, v.clone());
                }
            }
        }
        m
    }

    /// The algebra-valued 2-form with components `C_ij^k`.
    pub fn as_cochain(&self) -> Cochain {
        let comps = (0..self.dim)
            .map(|k| {
                let mut t = AltTensor::zero(2, self.dim);
                for (i, j, v) in &self.by_target[k] {
                    t.add_at((1 << i) | (1 << j), v);
                }
                t
            })
            .collect();
        Cochain::from_components(2, self.dim, comps).expect("consistent shapes")
    }

    /// Coordinates of `[u, v]` for coordinate vectors `u, v`.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::ZERO; self.dim];
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let uv = ui * vj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        o.add_mul(&uv, c);
                    }
                }
            }
        }
        out
    }

    /// `C_ij^k += delta` and `C_ji^k -= delta`.
    pub fn mutated(&self, i: usize, j: usize, k: usize, delta: &Scalar) -> Result<Self, Error> {
        if i == j || i >= self.dim || j >= self.dim || k >= self.dim {
            return Err(Error::DimensionMismatch(format!("cannot mutate C_({i},{j})^{k} in dim {}", self.dim)));
        }
        let mut dense = self.dense.clone();
        let d = self.dim;
        dense[(i * d + j) * d + k] = &dense[(i * d + j) * d + k] + delta;
        dense[(j * d + i) * d + k] = &dense[(j * d + i) * d + k] - delta;
        Self::from_dense(d, dense)
    }
}

/// Wire form of an algebra; scalars are exact strings such as `-1/2i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraJson {
    pub label: String,
    pub dim: usize,
    pub generators: Option<Vec<Vec<Vec<String>>>>,
    /// `(i, j, k, C_ij^k)` with `i < j`, nonzero entries only.
    pub structure_constants: Vec<(usize, usize, usize, String)>,
    pub killing_form: Vec<Vec<String>>,
    pub trace_form: Option<Vec<Vec<String>>>,
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(ToString::to_string).collect()).collect()
}

/// A finite-dimensional Lie algebra with a fixed ordered basis.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    label: String,
    generators: Option<Vec<Matrix>>,
    structure: StructureConstants,
    killing: Matrix,
    killing_inv: Option<Matrix>,
}

impl LieAlgebra {
    /// Builds a catalog algebra with its rational matrix basis.
    pub fn build(label: &AlgebraLabel) -> Result<Self, Error> {
        let gens = bases::generators(label)?;
        Self::from_matrices(&label.to_string(), gens)
    }

    pub fn from_label(s: &str) -> Result<Self, Error> {
        Self::build(&s.parse()?)
    }

    /// Decomposes every commutator in the span of `gens`; fails if a
    /// commutator leaves the span or the matrices are dependent.
    pub fn from_matrices(label: &str, gens: Vec<Matrix>) -> Result<Self, Error> {
        let dim = gens.len();
        if dim == 0 || dim > crate::tensor_core::MAX_DIM {
            return Err(Error::DimensionMismatch(format!("{dim} generators")));
        }
        let n = gens[0].rows();
        if gens.iter().any(|g| g.rows() != n || g.cols() != n) {
            return Err(Error::DimensionMismatch("generators of different sizes".into()));
        }
        let dec = SpanDecomposer::new(gens.iter().map(|g| g.data().to_vec()).collect())?;
        let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();
        let coords: Vec<Result<Vec<Scalar>, Error>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let c = gens[i].commutator(&gens[j]);
                dec.coords(c.data())
                    .ok_or_else(|| Error::Construction(format!("[X{i}, X{j}] is not in the span of the basis")))
            })
            .collect();
        let mut dense = vec![Scalar::ZERO; dim * dim * dim];
        for (&(i, j), c) in pairs.iter().zip(coords) {
            for (k, v) in c?.into_iter().enumerate() {
                dense[(j * dim + i) * dim + k] = -&v;
                dense[(i * dim + j) * dim + k] = v;
            }
        }
        let structure = StructureConstants::from_dense(dim, dense)?;
        Ok(Self::assemble(label, Some(gens), structure))
    }

    /// An algebra known only through its structure constants.
    pub fn from_structure(label: &str, structure: StructureConstants) -> Self {
        Self::assemble(label, None, structure)
    }

    fn assemble(label: &str, generators: Option<Vec<Matrix>>, structure: StructureConstants) -> Self {
        let killing = killing_of(&structure);
        let killing_inv = killing.inverse().ok();
        LieAlgebra { label: label.to_string(), generators, structure, killing, killing_inv }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn to_json(&self) -> LieAlgebraJson {
        let mut sc: Vec<(usize, usize, usize, String)> = (0..self.dim())
            .flat_map(|k| self.structure.into_target(k).iter().map(move |(i, j, v)| (*i, *j, k, v.to_string())))
            .collect();
        sc.sort();
        LieAlgebraJson {
            label: self.label.clone(),
            dim: self.dim(),
            generators: self.generators.as_ref().map(|g| g.iter().map(matrix_strings).collect()),
            structure_constants: sc,
            killing_form: matrix_strings(&self.killing),
            trace_form: self.trace_form().as_ref().map(matrix_strings),
        }
    }

    pub fn dim(&self) -> usize {
        self.structure.dim
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.structure
    }

    pub fn generators(&self) -> Option<&[Matrix]> {
        self.generators.as_deref()
    }

    pub fn generators_or_err(&self) -> Result<&[Matrix], Error> {
        self.generators()
            .ok_or_else(|| Error::NotApplicable(format!("{} has no matrix basis", self.label)))
    }

    /// `g_ij = Tr(ad X_i ad X_j)`.
    pub fn killing_form(&self) -> &Matrix {
        &self.killing
    }

    /// `g^ij`, the inverse Killing form.
    pub fn killing_inverse(&self) -> Result<&Matrix, Error> {
        self.killing_inv
            .as_ref()
            .ok_or_else(|| Error::SingularForm(format!("the Killing form of {} is degenerate", self.label)))
    }

    /// `B_ij = Tr(X_i X_j)` in the defining representation.
    pub fn trace_form(&self) -> Option<Matrix> {
        let gens = self.generators.as_ref()?;
        let d = gens.len();
        let mut b = Matrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let t = gens[i].trace_of_product(&gens[j]);
                b.set(j, i, t.clone());
                b.set(i, j, t);
            }
        }
        Some(b)
    }

    /// The same algebra with `C_ij^k` shifted by `delta` (antisymmetry kept).
    /// The matrix basis is kept, so closure now fails.
    pub fn with_mutated_constant(&self, i: usize, j: usize, k: usize, delta: &Scalar) -> Result<Self, Error> {
        let structure = self.structure.mutated(i, j, k, delta)?;
        Ok(Self::assemble(&format!("{} (mutated)", self.label), self.generators.clone(), structure))
    }

    /// `[X_i, X_j] - C_ij^k X_k` over all pairs and matrix entries.
    pub fn check_closure(&self) -> Residual {
        let mut r = Residual::new();
        let Some(gens) = &self.generators else { return r };
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                let mut m = gens[i].commutator(&gens[j]);
                for (k, g) in gens.iter().enumerate() {
                    m.axpy(&-self.structure.get(i, j, k), g);
                }
                for (e, v) in m.data().iter().enumerate() {
                    r.observe("closure", &[i, j, e / m.cols(), e % m.cols()], v);
                }
            }
        }
        r
    }

    /// The Jacobiator `C_ij^m C_mk^l + cyclic` for `i < j < k`.
    pub fn check_jacobi(&self) -> Residual {
        let d = self.dim();
        let c = &self.structure;
        let triples: Vec<(usize, usize, usize)> =
            (0..d).flat_map(|i| (i + 1..d).flat_map(move |j| (j + 1..d).map(move |k| (i, j, k)))).collect();
        let parts: Vec<Residual> = triples
            .par_iter()
            .map(|&(i, j, k)| {
                let mut r = Residual::new();
                for l in 0..d {
                    let mut acc = Scalar::ZERO;
                    for m in 0..d {
                        acc.add_mul(c.get(i, j, m), c.get(m, k, l));
                        acc.add_mul(c.get(j, k, m), c.get(m, i, l));
                        acc.add_mul(c.get(k, i, m), c.get(m, j, l));
                    }
                    r.observe("jacobi", &[i, j, k, l], &acc);
                }
                r
            })
            .collect();
        parts.into_iter().fold(Residual::new(), |mut a, b| {
            a.merge(b);
            a
        })
    }

    /// `g([X_l, X_i], X_j) + g(X_i, [X_l, X_j])`.
    pub fn check_killing_invariance(&self) -> Residual {
        let d = self.dim();
        let c = &self.structure;
        let g = &self.killing;
        let mut r = Residual::new();
        for l in 0..d {
            for i in 0..d {
                for j in i..d {
                    let mut acc = Scalar::ZERO;
                    for m in 0..d {
                        acc.add_mul(c.get(l, i, m), g.get(m, j));
                        acc.add_mul(c.get(l, j, m), g.get(i, m));
                    }
                    r.observe("killing invariance", &[l, i, j], &acc);
                }
            }
        }
        r
    }
}

fn killing_of(c: &StructureConstants) -> Matrix {
    let d = c.dim;
    let ads: Vec<Matrix> = (0..d).map(|i| c.adjoint(i)).collect();
    let mut g = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let t = ads[i].trace_of_product(&ads[j]);
            g.set(j, i, t.clone());
            g.set(i, j, t);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
        crate::tensor_core::index::canonicalize(&[i, j, k]).map_or(0, |(_, s)| s as i64)
    }

    #[test]
    fn su2_structure_and_forms() {
        let g = LieAlgebra::from_label("A1").unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(*g.structure().get(i, j, k), Scalar::from_int(levi_civita(i, j, k)));
                }
            }
        }
        assert_eq!(*g.killing_form(), Matrix::identity(3).scale(&Scalar::from_int(-2)));
        assert_eq!(g.trace_form().unwrap(), Matrix::identity(3).scale(&Scalar::frac(-1, 2).unwrap()));
    }

    #[test]
    fn built_algebras_close() {
        for (s, dim) in [("A1", 3), ("A2", 8), ("B2", 10), ("C2", 10), ("D3", 15)] {
            let g = LieAlgebra::from_label(s).unwrap();
            assert_eq!(g.dim(), dim);
            assert!(g.check_closure().is_zero(), "{s}");
            assert!(g.check_jacobi().is_zero(), "{s}");
            assert!(g.check_killing_invariance().is_zero(), "{s}");
            assert!(g.killing_inverse().is_ok(), "{s}");
        }
    }

    #[test]
    fn exceptional_is_catalog_only() {
        assert!(matches!(LieAlgebra::from_label("E8"), Err(Error::CatalogOnly(_))));
    }

    #[test]
    fn heisenberg_and_abelian() {
        let h = LieAlgebra::from_label("heisenberg").unwrap();
        assert_eq!(*h.structure().get(0, 1, 2), Scalar::ONE);
        assert!(h.killing_form().is_zero());
        assert!(matches!(h.killing_inverse(), Err(Error::SingularForm(_))));
        let a = LieAlgebra::from_label("abelian:4").unwrap();
        assert!(a.structure().as_cochain().is_zero());
    }

    #[test]
    fn mutation_breaks_closure_and_jacobi() {
        let g = LieAlgebra::from_label("A2").unwrap();
        let m = g.with_mutated_constant(0, 1, 2, &Scalar::ONE).unwrap();
        let w = m.check_closure();
        assert!(!w.is_zero());
        assert!(w.witness.is_some());
        assert!(!m.check_jacobi().is_zero());
    }

    #[test]
    fn non_closing_matrices_are_rejected() {
        let gens = vec![Matrix::unit(2, 0, 1), Matrix::unit(2, 1, 0)];
        assert!(matches!(LieAlgebra::from_matrices("x", gens), Err(Error::Construction(_))));
    }
}
