//! Labels of simple Lie algebras and their primitive invariant data.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Exceptional {
    G2,
    F4,
    E6,
    E7,
    E8,
}

/// A parsed algebra name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraLabel {
    Classical(Series, usize),
    Exceptional(Exceptional),
    /// `abelian:N`
    Abelian(usize),
    /// The three-dimensional Heisenberg algebra `[X0, X1] = X2`.
    Heisenberg,
}

impl AlgebraLabel {
    /// Smallest rank accepted for each classical series. Low ranks overlap:
    /// `B1 = A1`, `C1 = A1`, `C2 = B2`, `D3 = A3`. `D2` is not simple and
    /// `D1` is abelian, so the D series starts at 3.
    pub fn min_rank(series: Series) -> usize {
        match series {
            Series::A | Series::B | Series::C => 1,
            Series::D => 3,
        }
    }

    pub fn is_simple(&self) -> bool {
        matches!(self, AlgebraLabel::Classical(..) | AlgebraLabel::Exceptional(_))
    }
}

impl FromStr for AlgebraLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let bad = || Error::UnknownAlgebra(s.to_string());
        if let Some(n) = t.strip_prefix("abelian:") {
            let n: usize = n.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(AlgebraLabel::Abelian(n));
        }
        if t.eq_ignore_ascii_case("heisenberg") {
            return Ok(AlgebraLabel::Heisenberg);
        }
        let ex = match t {
            "G2" => Some(Exceptional::G2),
            "F4" => Some(Exceptional::F4),
            "E6" => Some(Exceptional::E6),
            "E7" => Some(Exceptional::E7),
            "E8" => Some(Exceptional::E8),
            _ => None,
        };
        if let Some(e) = ex {
            return Ok(AlgebraLabel::Exceptional(e));
        }
        let mut chars = t.chars();
        let series = match chars.next() {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        if rank < Self::min_rank(series) {
            return Err(bad());
        }
        Ok(AlgebraLabel::Classical(series, rank))
    }
}

impl fmt::Display for AlgebraLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraLabel::Classical(s, l) => write!(f, "{s:?}{l}"),
            AlgebraLabel::Exceptional(e) => write!(f, "{e:?}"),
            AlgebraLabel::Abelian(n) => write!(f, "abelian:{n}"),
            AlgebraLabel::Heisenberg => write!(f, "heisenberg"),
        }
    }
}

/// Orders of the primitive invariant polynomials and of the matching
/// primitive cocycles of a simple algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub label: String,
    pub dim: usize,
    pub invariant_orders: Vec<usize>,
    pub cocycle_orders: Vec<usize>,
}

pub fn catalog(label: &AlgebraLabel) -> Result<CatalogEntry, Error> {
    let (dim, inv): (usize, Vec<usize>) = match *label {
        AlgebraLabel::Classical(Series::A, l) => ((l + 1) * (l + 1) - 1, (2..=l + 1).collect()),
        AlgebraLabel::Classical(Series::B | Series::C, l) => (l * (2 * l + 1), (1..=l).map(|k| 2 * k).collect()),
        AlgebraLabel::Classical(Series::D, l) => {
            let mut v: Vec<usize> = (1..l).map(|k| 2 * k).collect();
            v.push(l);
            (l * (2 * l - 1), v)
        }
        AlgebraLabel::Exceptional(e) => match e {
            Exceptional::G2 => (14, vec![2, 6]),
            Exceptional::F4 => (52, vec![2, 6, 8, 12]),
            Exceptional::E6 => (78, vec![2, 5, 6, 8, 9, 12]),
            Exceptional::E7 => (133, vec![2, 6, 8, 10, 12, 14, 18]),
            Exceptional::E8 => (248, vec![2, 8, 12, 14, 18, 20, 24, 30]),
        },
        _ => return Err(Error::NotApplicable(format!("{label} is not simple; it has no catalog entry"))),
    };
    Ok(CatalogEntry {
        label: label.to_string(),
        dim,
        cocycle_orders: inv.iter().map(|m| 2 * m - 1).collect(),
        invariant_orders: inv,
    })
}

/// Coefficients of `prod_j (1 + t^(c_j))`, lowest power first.
pub fn poincare_polynomial(entry: &CatalogEntry) -> Vec<u64> {
    let top: usize = entry.cocycle_orders.iter().sum();
    let mut poly = vec![0u64; top + 1];
    poly[0] = 1;
    let mut deg = 0;
    for &c in &entry.cocycle_orders {
        for p in (0..=deg).rev() {
            poly[p + c] += poly[p];
        }
        deg += c;
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(s: &str) -> CatalogEntry {
        catalog(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parses_labels() {
        assert_eq!("A2".parse::<AlgebraLabel>().unwrap(), AlgebraLabel::Classical(Series::A, 2));
        assert_eq!("abelian:4".parse::<AlgebraLabel>().unwrap(), AlgebraLabel::Abelian(4));
        assert!("D2".parse::<AlgebraLabel>().is_err());
        assert!("A0".parse::<AlgebraLabel>().is_err());
        assert!("Q3".parse::<AlgebraLabel>().is_err());
        assert!("abelian:0".parse::<AlgebraLabel>().is_err());
    }

    #[test]
    fn classical_rows() {
        let a2 = entry("A2");
        assert_eq!((a2.dim, a2.invariant_orders, a2.cocycle_orders), (8, vec![2, 3], vec![3, 5]));
        let d4 = entry("D4");
        assert_eq!((d4.dim, d4.invariant_orders, d4.cocycle_orders), (28, vec![2, 4, 6, 4], vec![3, 7, 11, 7]));
        let c3 = entry("C3");
        assert_eq!((c3.dim, c3.cocycle_orders), (21, vec![3, 7, 11]));
    }

    #[test]
    fn cocycle_orders_sum_to_dimension() {
        for s in ["A1", "A4", "B3", "C5", "D3", "D6", "G2", "F4", "E6", "E7", "E8"] {
            let e = entry(s);
            assert_eq!(e.cocycle_orders.iter().sum::<usize>(), e.dim, "{s}");
            let p = poincare_polynomial(&e);
            assert_eq!(p.iter().sum::<u64>(), 1u64 << e.cocycle_orders.len(), "{s}");
            assert_eq!(p.len(), e.dim + 1);
        }
    }

    #[test]
    fn su3_poincare() {
        let p = poincare_polynomial(&entry("A2"));
        assert_eq!(p, vec![1, 0, 0, 1, 0, 1, 0, 0, 1]);
    }
}
