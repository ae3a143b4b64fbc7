//! Closed-form and recursive counts for `K_n^{-K_m}` and the minimax family.
//!
//! `K_n^{-K_m}` is `K_n` with the edges among labels `1..=m` removed; it is the
//! join of `K_{n-m}` with `m` isolated vertices. Marking one vertex of the
//! complete part and summing over what its component leaves behind gives
//!
//! ```text
//! C(n, m) = sum_{i=0}^{n-m-1} binom(n-m-1, i) sum_{j=0}^{m} binom(m, j) C(i+j, j),   C(m, m) = 1.
//! ```
//!
//! Partitions of `1..=n+1` with minimax `m+1` are in bijection with the
//! compositions of `K_n^{-K_m}`, which yields the explicit form
//! `C(n, m) = sum_k S(n-m, k-1) k^m`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::numtheory::{bell, binomial, stirling2_row};
use crate::{BigNat, Error, Result};

/// Memoized values of `C(K_n^{-K_m})`, keyed by `(n, m)`.
///
/// Cells are written once. A writer that races to fill the same cell computes
/// the same value, so the first write wins without loss.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MemoStore {
    table: HashMap<(usize, usize), BigNat>,
}

impl MemoStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: usize, m: usize) -> Option<&BigNat> {
        self.table.get(&(n, m))
    }

    /// Records a cell; an existing value is kept.
    pub fn insert(&mut self, n: usize, m: usize, value: BigNat) {
        self.table.entry((n, m)).or_insert(value);
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn clear(&mut self) {
        self.table.clear();
    }

    /// Cells in ascending `(n, m)` order.
    pub fn cells(&self) -> Vec<((usize, usize), &BigNat)> {
        let mut cells: Vec<_> = self.table.iter().map(|(&k, v)| (k, v)).collect();
        cells.sort_by_key(|&(k, _)| k);
        cells
    }
}

fn check_clique(n: usize, m: usize) -> Result<()> {
    if m > n {
        Err(Error::params(format!(
            "clique size m = {m} exceeds n = {n}"
        )))
    } else {
        Ok(())
    }
}

fn check_label(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        Err(Error::params(format!("label m = {m} outside 1..={n}")))
    } else {
        Ok(())
    }
}

/// `C(K_n^{-K_m})` by the marked-vertex recursion.
pub fn comp_count_recursive(n: usize, m: usize, memo: &mut MemoStore) -> Result<BigNat> {
    check_clique(n, m)?;
    Ok(recurse(n, m, memo))
}

fn recurse(n: usize, m: usize, memo: &mut MemoStore) -> BigNat {
    if n == m {
        return BigNat::one();
    }
    if let Some(v) = memo.get(n, m) {
        return v.clone();
    }
    let rest = n - m - 1;
    let mut total = BigNat::zero();
    for i in 0..=rest {
        let mut inner = BigNat::zero();
        for j in 0..=m {
            inner += binomial(m, j) * recurse(i + j, j, memo);
        }
        total += binomial(rest, i) * inner;
    }
    memo.insert(n, m, total.clone());
    total
}

/// `sum_{k=1}^{top} S(row, k-1) * k^power`.
fn stirling_power_sum(row: usize, top: usize, power: usize) -> BigNat {
    let s = stirling2_row(row);
    (1..=top)
        .filter(|&k| k - 1 <= row)
        .map(|k| &s[k - 1] * Pow::pow(BigNat::from(k), power))
        .sum()
}

/// `C(K_n^{-K_m}) = sum_{k=1}^{n-m+1} S(n-m, k-1) k^m`.
pub fn comp_count_explicit(n: usize, m: usize) -> Result<BigNat> {
    check_clique(n, m)?;
    if n == m {
        return Ok(BigNat::one());
    }
    Ok(stirling_power_sum(n - m, n - m + 1, m))
}

/// The printed form `sum_{k=1}^{m+1} S(m, k-1) k^{n-m}`, evaluated verbatim.
///
/// It does not equal `C(K_n^{-K_m})` in general: at `(3, 1)` it gives 4
/// where the true count is 5. Kept for documenting that discrepancy.
pub fn comp_count_paper_literal(n: usize, m: usize) -> Result<BigNat> {
    check_clique(n, m)?;
    Ok(stirling_power_sum(m, m + 1, n - m))
}

/// `k(n, m)`, the number of partitions of `1..=n` with minimax `m`:
/// `sum_{k=1}^{n-m+1} S(n-m, k-1) k^{m-1}`.
pub fn minimax_count_formula(n: usize, m: usize) -> Result<BigNat> {
    check_label(n, m)?;
    Ok(stirling_power_sum(n - m, n - m + 1, m - 1))
}

/// `sum_{k=1}^{m} S(m-1, k-1) k^{n-m}`, evaluated literally.
///
/// This counts partitions of `1..=n` whose largest block minimum is `m`, the
/// mirror image of minimax under `i -> n + 1 - i`.
pub fn maximin_count_paper(n: usize, m: usize) -> Result<BigNat> {
    check_label(n, m)?;
    Ok(stirling_power_sum(m - 1, m, n - m))
}

/// `k_1(n, m)`: partitions of `1..=n` whose smallest singleton block is `{m}`.
///
/// For `m >= 1` this is the inclusion-exclusion sum
/// `sum_{j=1}^{m} (-1)^{j+1} binom(m-1, j-1) B(n-j)`. `m = 0` (no singleton
/// block at all) is the complement `B(n) - sum_{m'>=1} k_1(n, m')`.
pub fn k1_count_formula(n: usize, m: usize) -> Result<BigNat> {
    if n == 0 || m > n {
        return Err(Error::params(format!(
            "k_1 needs 1 <= n and 0 <= m <= n, got n = {n}, m = {m}"
        )));
    }
    if m == 0 {
        let covered: BigNat = (1..=n).map(|m| k1_alternating(n, m)).sum();
        return Ok(bell(n) - covered);
    }
    Ok(k1_alternating(n, m))
}

fn k1_alternating(n: usize, m: usize) -> BigNat {
    let mut total = BigInt::zero();
    for j in 1..=m {
        let term = BigInt::from(binomial(m - 1, j - 1) * bell(n - j));
        if j % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
        .to_biguint()
        .expect("inclusion-exclusion count is a cardinality")
}

/// `sum_{m=0}^{n} C(K_n^{-K_m})`, which equals `B(n+1)`.
pub fn row_sum(n: usize, memo: &mut MemoStore) -> BigNat {
    (0..=n).map(|m| recurse(n, m, memo)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{composition_count_brute, kj_count_brute, minimax_count_brute};
    use crate::graph::LabelledGraph;

    fn nat(v: u64) -> BigNat {
        BigNat::from(v)
    }

    /// Reference rows n = 0..=6 of `C(K_n^{-K_m})`.
    const COMP_TABLE: [&[u64]; 7] = [
        &[1],
        &[1, 1],
        &[2, 2, 1],
        &[5, 5, 4, 1],
        &[15, 15, 13, 8, 1],
        &[52, 52, 47, 35, 16, 1],
        &[203, 203, 188, 153, 97, 32, 1],
    ];

    #[test]
    fn recursive_examples() {
        let mut memo = MemoStore::new();
        assert_eq!(comp_count_recursive(3, 2, &mut memo).unwrap(), nat(4));
        assert_eq!(comp_count_recursive(5, 2, &mut memo).unwrap(), nat(47));
        assert_eq!(comp_count_recursive(4, 0, &mut memo).unwrap(), nat(15));
        for n in 0..10 {
            assert_eq!(comp_count_recursive(n, n, &mut memo).unwrap(), nat(1));
        }
        assert!(matches!(
            comp_count_recursive(2, 3, &mut memo),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn table_reproduced_by_every_route() {
        let mut memo = MemoStore::new();
        for (n, row) in COMP_TABLE.iter().enumerate() {
            for (m, &v) in row.iter().enumerate() {
                assert_eq!(
                    comp_count_recursive(n, m, &mut memo).unwrap(),
                    nat(v),
                    "({n},{m})"
                );
                assert_eq!(comp_count_explicit(n, m).unwrap(), nat(v), "({n},{m})");
                let g = LabelledGraph::complete_minus_clique(n, m).unwrap();
                assert_eq!(composition_count_brute(&g).unwrap(), nat(v), "({n},{m})");
            }
        }
    }

    #[test]
    fn explicit_examples() {
        assert_eq!(comp_count_explicit(3, 1).unwrap(), nat(5));
        assert_eq!(comp_count_explicit(4, 2).unwrap(), nat(13));
        assert_eq!(comp_count_explicit(5, 3).unwrap(), nat(35));
        assert!(matches!(
            comp_count_explicit(1, 2),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn literal_form_disagrees_at_three_one() {
        assert_eq!(comp_count_paper_literal(3, 1).unwrap(), nat(4));
        assert_ne!(
            comp_count_paper_literal(3, 1).unwrap(),
            comp_count_explicit(3, 1).unwrap()
        );
    }

    #[test]
    fn minimax_formula_examples() {
        assert_eq!(minimax_count_formula(3, 1).unwrap(), nat(2));
        assert_eq!(minimax_count_formula(4, 2).unwrap(), nat(5));
        for n in 1..12 {
            assert_eq!(minimax_count_formula(n, n).unwrap(), nat(1));
        }
        assert!(matches!(
            minimax_count_formula(3, 0),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            minimax_count_formula(3, 4),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn maximin_examples() {
        assert_eq!(maximin_count_paper(3, 1).unwrap(), nat(1));
        assert_eq!(maximin_count_paper(3, 3).unwrap(), nat(2));
        for n in 1..12 {
            assert_eq!(maximin_count_paper(n, 1).unwrap(), nat(1));
        }
        assert!(matches!(
            maximin_count_paper(0, 0),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn reflection_and_brute_agreement() {
        for n in 1..=9 {
            for m in 1..=n {
                let formula = minimax_count_formula(n, m).unwrap();
                assert_eq!(
                    maximin_count_paper(n, n + 1 - m).unwrap(),
                    formula,
                    "({n},{m})"
                );
                assert_eq!(minimax_count_brute(n, m).unwrap(), formula, "({n},{m})");
            }
        }
    }

    #[test]
    fn k1_examples() {
        assert_eq!(k1_count_formula(7, 4).unwrap(), nat(87));
        assert_eq!(k1_count_formula(2, 2).unwrap(), nat(0));
        assert_eq!(k1_count_formula(8, 8).unwrap(), nat(162));
        assert_eq!(k1_count_formula(6, 0).unwrap(), nat(41));
        let zero_column: Vec<_> = (1..=8).map(|n| k1_count_formula(n, 0).unwrap()).collect();
        let expect: Vec<_> = [0, 1, 1, 4, 11, 41, 162, 715]
            .into_iter()
            .map(nat)
            .collect();
        assert_eq!(zero_column, expect);
        assert!(matches!(
            k1_count_formula(0, 0),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            k1_count_formula(3, 4),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn k1_matches_brute() {
        for n in 1..=8 {
            for m in 0..=n {
                assert_eq!(
                    k1_count_formula(n, m).unwrap(),
                    kj_count_brute(n, m, 1).unwrap(),
                    "({n},{m})"
                );
            }
        }
    }

    #[test]
    fn row_sums_are_bell() {
        let mut memo = MemoStore::new();
        assert_eq!(row_sum(0, &mut memo), nat(1));
        assert_eq!(row_sum(3, &mut memo), nat(15));
        assert_eq!(row_sum(6, &mut memo), nat(877));
        for n in 0..=20 {
            assert_eq!(row_sum(n, &mut memo), bell(n + 1));
        }
    }

    #[test]
    fn columns_zero_and_one_are_bell() {
        let mut memo = MemoStore::new();
        for n in 1..=20 {
            assert_eq!(comp_count_recursive(n, 0, &mut memo).unwrap(), bell(n));
            assert_eq!(comp_count_recursive(n, 1, &mut memo).unwrap(), bell(n));
        }
    }

    #[test]
    fn recursive_equals_explicit_at_scale() {
        let mut memo = MemoStore::new();
        for n in 0..=30 {
            for m in 0..=n {
                assert_eq!(
                    comp_count_recursive(n, m, &mut memo).unwrap(),
                    comp_count_explicit(n, m).unwrap(),
                    "({n},{m})"
                );
            }
        }
    }

    #[test]
    fn memo_is_sound() {
        let mut warm = MemoStore::new();
        for n in 0..=15 {
            for m in 0..=n {
                comp_count_recursive(n, m, &mut warm).unwrap();
            }
        }
        assert!(!warm.is_empty());
        for ((n, m), v) in warm.cells() {
            let mut fresh = MemoStore::new();
            assert_eq!(&comp_count_recursive(n, m, &mut fresh).unwrap(), v);
        }
        let before = warm.get(15, 3).cloned().unwrap();
        warm.insert(15, 3, nat(0));
        assert_eq!(warm.get(15, 3), Some(&before));
        warm.clear();
        assert!(warm.is_empty());
        assert_eq!(comp_count_recursive(15, 3, &mut warm).unwrap(), before);
    }
}
