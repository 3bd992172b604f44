//! Multi-indices and their bitmask encoding.
//!
//! A strictly increasing multi-index over a basis of size at most 64 is
//! stored as the set of its entries, one bit per basis element.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A strictly increasing multi-index encoded as a bit set.
pub type Mask = u64;

/// Largest basis size a [`Mask`] can address.
pub const MAX_DIM: usize = 64;

/// An ordered sequence of basis indices, possibly unsorted or repeating.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    /// Sorted form and the sign of the sorting permutation, or `None` when
    /// an index repeats (the antisymmetric component then vanishes).
    pub fn canonical(&self) -> Option<(Mask, i32)> {
        canonicalize(&self.0)
    }

    pub fn parity(&self) -> Option<i32> {
        self.canonical().map(|(_, s)| s)
    }
}

/// Sorts `idx`, returning the mask and the permutation sign.
pub fn canonicalize(idx: &[usize]) -> Option<(Mask, i32)> {
    let mut mask: Mask = 0;
    let mut sign = 1;
    for &i in idx {
        debug_assert!(i < MAX_DIM);
        let bit = 1u64 << i;
        if mask & bit != 0 {
            return None;
        }
        if (mask & !(bit | (bit - 1))).count_ones() % 2 == 1 {
            sign = -sign;
        }
        mask |= bit;
    }
    Some((mask, sign))
}

pub fn indices(mask: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

pub fn mask_of(idx: &[usize]) -> Result<Mask, Error> {
    canonicalize(idx)
        .map(|(m, _)| m)
        .ok_or_else(|| Error::Parse(format!("repeated index in {idx:?}")))
}

/// Sign of reordering the concatenation `a ++ b` (each sorted) into sorted
/// order, or `None` if they overlap.
#[inline]
pub fn concat_sign(a: Mask, b: Mask) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    let mut parity = 0u32;
    let mut m = b;
    while m != 0 {
        let x = m.trailing_zeros();
        // entries of `a` above x must be jumped over by x
        parity += (a >> x).count_ones();
        m &= m - 1;
    }
    Some(if parity % 2 == 0 { 1 } else { -1 })
}

/// Sign of moving index `k` from the front of `(k, mask...)` into place.
#[inline]
pub fn front_sign(mask: Mask, k: usize) -> i32 {
    if (mask & ((1u64 << k) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of moving index `k` from the back of `(mask..., k)` into place.
#[inline]
pub fn back_sign(mask: Mask, k: usize) -> i32 {
    if (mask >> k).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Position (0-based) of `k` within the sorted set `mask`.
#[inline]
pub fn position(mask: Mask, k: usize) -> usize {
    (mask & ((1u64 << k) - 1)).count_ones() as usize
}

/// All `k`-subsets of `{0, .., n-1}` in increasing numeric mask order.
pub fn subsets(n: usize, k: usize) -> Vec<Mask> {
    assert!(n <= MAX_DIM);
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let limit: u128 = 1u128 << n;
    let mut out = Vec::new();
    let mut m: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    loop {
        out.push(m);
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let r = m as u128 + c as u128;
        if r >= limit {
            break;
        }
        let r = r as u64;
        m = (((r ^ m) >> 2) / c) | r;
        if m as u128 >= limit {
            break;
        }
    }
    out
}

/// All subsets of `mask` with exactly `k` elements.
pub fn sub_subsets(mask: Mask, k: usize) -> Vec<Mask> {
    let idx = indices(mask);
    subsets(idx.len(), k)
        .into_iter()
        .map(|s| indices(s).into_iter().fold(0u64, |acc, p| acc | (1u64 << idx[p])))
        .collect()
}

pub fn sign_of_permutation(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// All permutations of `0..n` (Heap's algorithm order is not needed; this
/// is lexicographic), paired with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push((p.clone(), sign_of_permutation(&p)));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_sign() {
        assert_eq!(canonicalize(&[0, 1, 2]), Some((0b111, 1)));
        assert_eq!(canonicalize(&[1, 0, 2]), Some((0b111, -1)));
        assert_eq!(canonicalize(&[2, 0, 1]), Some((0b111, 1)));
        assert_eq!(canonicalize(&[1, 1]), None);
    }

    #[test]
    fn concat_matches_canonicalize() {
        for a in subsets(6, 2) {
            for b in subsets(6, 3) {
                let mut seq = indices(a);
                seq.extend(indices(b));
                assert_eq!(concat_sign(a, b), canonicalize(&seq).map(|(_, s)| s));
            }
        }
    }

    #[test]
    fn front_and_back() {
        let m = mask_of(&[1, 4, 6]).unwrap();
        assert_eq!(front_sign(m, 5), canonicalize(&[5, 1, 4, 6]).unwrap().1);
        assert_eq!(back_sign(m, 2), canonicalize(&[1, 4, 6, 2]).unwrap().1);
        assert_eq!(position(m, 6), 2);
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(8, 4).len(), 70);
        assert_eq!(subsets(64, 1).len(), 64);
        assert_eq!(subsets(64, 64), vec![u64::MAX]);
        assert_eq!(subsets(3, 0), vec![0]);
        assert_eq!(sub_subsets(0b10110, 2).len(), 3);
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations(4);
        assert_eq!(perms.len(), 24);
        assert_eq!(perms.iter().map(|(_, s)| s).sum::<i32>(), 0);
        assert_eq!(binomial(15, 7), 6435);
        assert_eq!(factorial(5), 120);
    }
}
