use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::tensor_core::Scalar;

/// Exponent vector of a monomial in `x_0 .. x_{dim-1}`.
pub type Exponents = Vec<u16>;

/// A polynomial in the coordinates `x_i` of `g*`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyFunction {
    vars: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl PolyFunction {
    pub fn zero(vars: usize) -> Self {
        PolyFunction { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], &c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, &Scalar::ONE);
        p
    }

    /// `sum_i c_i x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let mut p = Self::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; coeffs.len()];
            e[i] = 1;
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> + '_ {
        self.terms.iter()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&k| k as usize).sum()).max()
    }

    pub fn add_term(&mut self, e: Exponents, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn axpy(&mut self, s: &Scalar, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), &(s * c));
        }
    }

    /// `self += s * a * b`.
    pub fn add_product(&mut self, s: &Scalar, a: &Self, b: &Self) {
        for (ea, ca) in &a.terms {
            let sa = s * ca;
            for (eb, cb) in &b.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.add_term(e, &(&sa * cb));
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&Scalar::ONE, other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&Scalar::from_int(-1), other);
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(self.vars);
        out.axpy(s, self);
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.vars);
        out.add_product(&Scalar::ONE, self, other);
        out
    }

    /// `d/dx_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, &(c * &Scalar::from_int(e[i] as i64)));
            }
        }
        out
    }

    pub fn eval(&self, x: &[Scalar]) -> Result<Scalar, Error> {
        if x.len() != self.vars {
            return Err(Error::DimensionMismatch(format!("point of length {} for {} variables", x.len(), self.vars)));
        }
        let mut acc = Scalar::ZERO;
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= &xi.pow(k as u32);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// The coefficient of largest modulus with its exponents, if nonzero.
    pub fn max_term(&self) -> Option<(&Exponents, &Scalar)> {
        self.terms.iter().max_by(|a, b| a.1.norm_sqr().cmp(&b.1.norm_sqr()))
    }
}

impl fmt::Display for PolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
