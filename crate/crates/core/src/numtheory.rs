//! Binomial coefficients, Stirling numbers of the second kind and Bell numbers.
//!
//! The Stirling triangle and the Bell row live in a process-wide table that
//! grows on demand and is never recomputed. Readers share the table; growth
//! takes the write lock, so concurrent callers always observe identical values.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Arbitrary-precision non-negative integer used for every count.
pub type BigNat = BigUint;

#[derive(Default)]
struct Tables {
    /// `stirling[n][k] = S(n, k)` for `0 <= k <= n`.
    stirling: Vec<Vec<BigNat>>,
    /// `bell[n] = B(n)`, kept in step with `stirling`.
    bell: Vec<BigNat>,
}

impl Tables {
    fn grow_to(&mut self, n: usize) {
        while self.stirling.len() <= n {
            let row = match self.stirling.last() {
                None => vec![BigNat::one()],
                Some(prev) => {
                    let len = prev.len() + 1;
                    let mut row = Vec::with_capacity(len);
                    row.push(BigNat::zero());
                    for k in 1..len {
                        let mut v = if k < prev.len() {
                            &prev[k] * k
                        } else {
                            BigNat::zero()
                        };
                        v += &prev[k - 1];
                        row.push(v);
                    }
                    row
                }
            };
            self.bell.push(row.iter().sum());
            self.stirling.push(row);
        }
    }
}

fn tables() -> &'static RwLock<Tables> {
    static TABLES: OnceLock<RwLock<Tables>> = OnceLock::new();
    TABLES.get_or_init(Default::default)
}

fn with_row<T>(n: usize, f: impl Fn(&Tables) -> T) -> T {
    {
        let t = tables().read().unwrap_or_else(|e| e.into_inner());
        if t.stirling.len() > n {
            return f(&t);
        }
    }
    let mut t = tables().write().unwrap_or_else(|e| e.into_inner());
    t.grow_to(n);
    f(&t)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigNat {
    if k > n {
        return BigNat::zero();
    }
    let k = k.min(n - k);
    // Each partial product c * (n - i) / (i + 1) is itself a binomial, so the
    // division is exact.
    (0..k).fold(BigNat::one(), |c, i| c * (n - i) / (i + 1))
}

/// Stirling number of the second kind `S(n, k)`, zero when `k > n`.
pub fn stirling2(n: usize, k: usize) -> BigNat {
    if k > n {
        return BigNat::zero();
    }
    with_row(n, |t| t.stirling[n][k].clone())
}

/// The full row `S(n, 0), ..., S(n, n)`.
pub fn stirling2_row(n: usize) -> Vec<BigNat> {
    with_row(n, |t| t.stirling[n].clone())
}

/// Bell number `B(n)`, the number of set partitions of an `n`-set.
pub fn bell(n: usize) -> BigNat {
    with_row(n, |t| t.bell[n].clone())
}

/// `B(0), ..., B(n)`.
pub fn bell_row(n: usize) -> Vec<BigNat> {
    with_row(n, |t| t.bell[..=n].to_vec())
}
