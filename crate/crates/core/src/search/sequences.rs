//! Finite sums, ratio sets and product sums over finite sequences.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

use crate::colouring::Colouring;

/// Longest sequence accepted by the subset enumerations.
pub const MAX_FS_LEN: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("chain needs at least two terms")]
    TooShort,
    #[error("chain terms must be positive")]
    NonPositive,
    #[error("z{i} = {zi} does not divide z{j} = {zj}")]
    NotDivisible { i: usize, j: usize, zi: u64, zj: u64 },
}

fn subset_sums(xs: &[u64]) -> Vec<u64> {
    assert!(xs.len() <= MAX_FS_LEN, "sequence longer than {MAX_FS_LEN}");
    let mut sums = vec![0u64; 1 << xs.len()];
    for mask in 1usize..sums.len() {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + xs[low];
    }
    sums
}

/// All sums over nonempty sets of positions.
///
/// ```
/// use partreg::search::fs_set;
/// assert_eq!(fs_set(&[2, 3]).into_iter().collect::<Vec<_>>(), vec![2, 3, 5]);
/// ```
pub fn fs_set(xs: &[u64]) -> BTreeSet<u64> {
    subset_sums(xs).into_iter().skip(1).collect()
}

/// Ratios `sum(G) / sum(F)` over nonempty index sets with `max F < min G`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatioSet {
    /// `(F, G, value)` with 1-based indices, for integral ratios.
    pub ratios: Vec<(Vec<usize>, Vec<usize>, u64)>,
    /// `(F, G)` pairs whose ratio is not an integer.
    pub violations: Vec<(Vec<usize>, Vec<usize>)>,
}

impl RatioSet {
    pub fn values(&self) -> BTreeSet<u64> {
        self.ratios.iter().map(|r| r.2).collect()
    }
}

fn indices(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

pub fn ratio_set(xs: &[u64]) -> RatioSet {
    let sums = subset_sums(xs);
    let len = xs.len();
    let mut out = RatioSet::default();
    for f in 1usize..1 << len {
        let top = usize::BITS - f.leading_zeros();
        for g in (1usize..1 << (len as u32 - top)).map(|g| g << top) {
            let (sf, sg) = (sums[f], sums[g]);
            if sg % sf == 0 {
                out.ratios.push((indices(f), indices(g), sg / sf));
            } else {
                out.violations.push((indices(f), indices(g)));
            }
        }
    }
    out
}

/// All `sum_{l in F} prod_{i=k..=l} ys_i` over nonempty `F` and `k <= min F`.
///
/// ```
/// use num_bigint::BigUint;
/// use partreg::search::product_sum_set;
///
/// let got: Vec<BigUint> = product_sum_set(&[2, 2]).into_iter().collect();
/// assert_eq!(got, vec![2u32.into(), 4u32.into(), 6u32.into()]);
/// ```
pub fn product_sum_set(ys: &[u64]) -> BTreeSet<BigUint> {
    assert!(ys.len() <= MAX_FS_LEN, "sequence longer than {MAX_FS_LEN}");
    let len = ys.len();
    let mut out = BTreeSet::new();
    for k in 0..len {
        // prods[l] = ys_k * ... * ys_l for l >= k.
        let mut prods = Vec::with_capacity(len - k);
        let mut acc = BigUint::from(1u32);
        for &y in &ys[k..] {
            acc *= y;
            prods.push(acc.clone());
        }
        // F ranges over nonempty subsets of k..len containing no index below k.
        for mask in 1usize..1 << (len - k) {
            let sum: BigUint = (0..len - k).filter(|i| mask >> i & 1 == 1).map(|i| &prods[i]).sum();
            out.insert(sum);
        }
    }
    out
}

/// `xs_n = z_{n+1} / z_1` and `ys_n = z_{n+1} / z_n` for a divisibility chain.
///
/// ```
/// use partreg::search::{derive_sequences, ChainError};
///
/// assert_eq!(derive_sequences(&[1, 2, 6]), Ok((vec![2, 6], vec![2, 3])));
/// assert!(matches!(derive_sequences(&[2, 3, 6]), Err(ChainError::NotDivisible { i: 1, j: 2, .. })));
/// ```
pub fn derive_sequences(zs: &[u64]) -> Result<(Vec<u64>, Vec<u64>), ChainError> {
    if zs.len() < 2 {
        return Err(ChainError::TooShort);
    }
    if zs.contains(&0) {
        return Err(ChainError::NonPositive);
    }
    let mut xs = Vec::with_capacity(zs.len() - 1);
    let mut ys = Vec::with_capacity(zs.len() - 1);
    for n in 1..zs.len() {
        for i in [n - 1, 0] {
            if !zs[n].is_multiple_of(zs[i]) {
                return Err(ChainError::NotDivisible {
                    i: i + 1,
                    j: n + 1,
                    zi: zs[i],
                    zj: zs[n],
                });
            }
        }
        ys.push(zs[n] / zs[n - 1]);
        xs.push(zs[n] / zs[0]);
    }
    Ok((xs, ys))
}

/// Searches for `xs` of length `len`, terms in `2..=bound`, such that every
/// finite sum and every ratio `sum(G)/sum(F)` with `max F < min G` is an
/// integer of one colour.
///
/// Each new term is a multiple of the lcm of the earlier finite sums, which
/// is exactly the condition for all new ratios to be integral.
///
/// ```
/// use partreg::colouring::Colouring;
/// use partreg::search::fs_ratio_search;
///
/// let parity = Colouring::residue(2).unwrap();
/// assert_eq!(fs_ratio_search(&parity, 2, 100), Some(vec![2, 4]));
/// ```
pub fn fs_ratio_search(colouring: &Colouring, len: usize, bound: u64) -> Option<Vec<u64>> {
    assert!((1..=MAX_FS_LEN).contains(&len));
    let mut xs = Vec::with_capacity(len);
    (2..=bound).find_map(|x1| {
        let target = colouring.try_colour(x1)?;
        xs.clear();
        xs.push(x1);
        extend(colouring, target, len, bound, &mut xs).then(|| xs.clone())
    })
}

/// Colours of the sums and ratios introduced by the last term all match.
fn last_term_ok(colouring: &Colouring, target: u64, xs: &[u64]) -> bool {
    let sums = subset_sums(xs);
    let len = xs.len();
    let last = 1usize << (len - 1);
    let same = |v: u64| colouring.try_colour(v) == Some(target);
    // New finite sums contain the last index.
    if !(last..1 << len).all(|m| same(sums[m])) {
        return false;
    }
    // New ratios have the last index in G.
    for f in 1usize..last {
        let top = usize::BITS - f.leading_zeros();
        for g in (0usize..1 << (len as u32 - 1 - top)).map(|g| (g << top) | last) {
            let (sf, sg) = (sums[f], sums[g]);
            if sg % sf != 0 || !same(sg / sf) {
                return false;
            }
        }
    }
    true
}

fn extend(colouring: &Colouring, target: u64, len: usize, bound: u64, xs: &mut Vec<u64>) -> bool {
    if !last_term_ok(colouring, target, xs) {
        return false;
    }
    if xs.len() == len {
        return true;
    }
    let step = fs_set(xs).into_iter().fold(1u64, |acc, s| acc.lcm(&s));
    let mut next = step;
    while next <= bound {
        xs.push(next);
        if extend(colouring, target, len, bound, xs) {
            return true;
        }
        xs.pop();
        next += step;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fs_examples() {
        assert_eq!(fs_set(&[1, 1]), BTreeSet::from([1, 2]));
        assert_eq!(fs_set(&[1, 2, 4]), (1..=7).collect());
    }

    #[test]
    fn ratio_examples() {
        let r = ratio_set(&[2, 4]);
        assert_eq!(r.ratios, vec![(vec![1], vec![2], 2)]);
        let r = ratio_set(&[2, 4, 12]);
        assert!(r.ratios.contains(&(vec![1, 2], vec![3], 2)));
        let r = ratio_set(&[2, 3]);
        assert!(r.ratios.is_empty());
        assert_eq!(r.violations, vec![(vec![1], vec![2])]);
    }

    #[test]
    fn product_sums() {
        assert_eq!(product_sum_set(&[7]), BTreeSet::from([BigUint::from(7u32)]));
        let (_, ys) = derive_sequences(&[2, 4, 8]).unwrap();
        assert_eq!(ys, vec![2, 2]);
        // {(sum_{l in F} z_{l+1}) / z_k}: k=1 gives 4/2, 8/2, 12/2; k=2 gives 8/4.
        let expected: BTreeSet<BigUint> = [2u32, 4, 6].into_iter().map(BigUint::from).collect();
        assert_eq!(product_sum_set(&ys), expected);
    }

    #[test]
    fn chain_examples() {
        assert_eq!(derive_sequences(&[2, 4, 8]), Ok((vec![2, 4], vec![2, 2])));
        assert_eq!(
            derive_sequences(&[2, 3, 6]),
            Err(ChainError::NotDivisible { i: 1, j: 2, zi: 2, zj: 3 })
        );
        assert_eq!(derive_sequences(&[5]), Err(ChainError::TooShort));
    }

    #[test]
    fn search_examples() {
        let parity = Colouring::residue(2).unwrap();
        assert_eq!(fs_ratio_search(&parity, 1, 10), Some(vec![2]));
        assert_eq!(fs_ratio_search(&parity, 2, 100), Some(vec![2, 4]));
        let one = Colouring::explicit(vec![0; 100], 1).unwrap();
        let xs = fs_ratio_search(&one, 2, 100).unwrap();
        assert_eq!(xs[1] % xs[0], 0);
        let found = fs_ratio_search(&parity, 3, 200).unwrap();
        assert!(ratio_set(&found).violations.is_empty());
        let c = parity.colour_of(found[0]).unwrap();
        assert!(fs_set(&found).iter().chain(ratio_set(&found).values().iter()).all(|&v| parity.colour_of(v).unwrap() == c));
    }
}
