//! Ordinary Stirling numbers of the second kind, Bell numbers and binomials.
//!
//! Out-of-range indices follow the usual conventions: `S(n, k) = 0` for
//! `k < 0` or `k > n`, `C(n, k) = 0` for `k < 0` or `k > n`, and a Bell number
//! with negative index reads as zero through [`BellSequence::at`].

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Next row of the Stirling triangle: `S(n+1, k) = k S(n, k) + S(n, k-1)`.
fn next_stirling_row(row: &[BigUint]) -> Vec<BigUint> {
    let n = row.len() - 1;
    let mut next = Vec::with_capacity(n + 2);
    next.push(BigUint::zero());
    for k in 1..=n {
        next.push(&row[k] * k + &row[k - 1]);
    }
    next.push(BigUint::one());
    next
}

/// Iterator over the rows `(S(n, 0), ..., S(n, n))` for `n = 0, 1, 2, ...`,
/// holding only the current row in memory.
#[derive(Debug, Clone)]
pub struct StirlingRows {
    current: Option<Vec<BigUint>>,
}

impl StirlingRows {
    pub fn new() -> Self {
        Self { current: None }
    }
}

impl Default for StirlingRows {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for StirlingRows {
    type Item = Vec<BigUint>;

    fn next(&mut self) -> Option<Vec<BigUint>> {
        let next = match &self.current {
            None => vec![BigUint::one()],
            Some(row) => next_stirling_row(row),
        };
        self.current = Some(next.clone());
        Some(next)
    }
}

/// Append-only cache of Stirling triangle rows.
///
/// Extending the cache never changes rows already stored, so references
/// handed out before an extension remain valid values.
#[derive(Debug, Clone)]
pub struct StirlingTriangle {
    rows: Vec<Vec<BigUint>>,
}

impl Default for StirlingTriangle {
    fn default() -> Self {
        Self::new()
    }
}

impl StirlingTriangle {
    pub fn new() -> Self {
        Self {
            rows: vec![vec![BigUint::one()]],
        }
    }

    /// Number of cached rows (rows `0..len()` are available).
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Makes rows `0..=n` available.
    pub fn extend_to(&mut self, n: usize) {
        while self.rows.len() <= n {
            let next = next_stirling_row(self.rows.last().expect("row 0 always present"));
            self.rows.push(next);
        }
    }

    pub fn row(&mut self, n: usize) -> &[BigUint] {
        self.extend_to(n);
        &self.rows[n]
    }

    /// Cached row `n`, if already computed.
    pub fn cached_row(&self, n: usize) -> Option<&[BigUint]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn stirling(&mut self, n: usize, k: i64) -> BigUint {
        if k < 0 || k as usize > n {
            return BigUint::zero();
        }
        self.row(n)[k as usize].clone()
    }
}

/// `S(n, k)`, zero outside `0 <= k <= n`.
pub fn stirling(n: usize, k: i64) -> BigUint {
    if k < 0 || k as usize > n {
        return BigUint::zero();
    }
    stirling_row(n).swap_remove(k as usize)
}

/// `(S(n, 0), ..., S(n, n))`.
pub fn stirling_row(n: usize) -> Vec<BigUint> {
    StirlingRows::new().nth(n).expect("iterator is infinite")
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `(C(n, 0), ..., C(n, n))`.
pub fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n + 1);
    let mut current = BigUint::one();
    row.push(current.clone());
    for k in 0..n {
        current = current * (n - k) / (k + 1);
        row.push(current.clone());
    }
    row
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Append-only cache of Bell numbers `B_0, B_1, ...`.
///
/// Values are produced with Aitken's array (the Bell triangle), which needs
/// only additions. A sequence rebuilt from stored values has no triangle
/// frontier and extends through `B_{m+1} = sum_k C(m, k) B_k` instead.
#[derive(Debug, Clone)]
pub struct BellSequence {
    values: Vec<BigUint>,
    // Last row of Aitken's array; it starts with the last stored value.
    frontier: Option<Vec<BigUint>>,
}

impl Default for BellSequence {
    fn default() -> Self {
        Self::new()
    }
}

impl BellSequence {
    pub fn new() -> Self {
        Self {
            values: vec![BigUint::one()],
            frontier: Some(vec![BigUint::one()]),
        }
    }

    /// Sequence holding `B_0..=B_n`.
    pub fn with_max_index(n: usize) -> Self {
        let mut seq = Self::new();
        seq.extend_to(n);
        seq
    }

    /// Wraps previously computed values. The caller vouches for them; use
    /// [`BellSequence::check_recurrence`] to spot-check.
    pub fn from_values(values: Vec<BigUint>) -> Self {
        if values.is_empty() {
            return Self::new();
        }
        Self {
            values,
            frontier: None,
        }
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// Number of stored values; `B_0..B_{len-1}` are available.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn extend_to(&mut self, n: usize) {
        while self.values.len() <= n {
            match self.frontier.take() {
                Some(row) => {
                    let mut next = Vec::with_capacity(row.len() + 1);
                    let mut acc = row.last().expect("frontier is never empty").clone();
                    next.push(acc.clone());
                    for v in &row {
                        acc += v;
                        next.push(acc.clone());
                    }
                    self.values.push(next[0].clone());
                    // `next` now starts with the value just pushed.
                    self.frontier = Some(next);
                }
                None => {
                    let m = self.values.len() - 1;
                    let next = self.binomial_sum(m);
                    self.values.push(next);
                }
            }
        }
    }

    /// `sum_k C(m, k) B_k`, which equals `B_{m+1}`.
    fn binomial_sum(&self, m: usize) -> BigUint {
        binomial_row(m)
            .iter()
            .zip(&self.values[..=m])
            .map(|(c, b)| c * b)
            .sum()
    }

    pub fn bell(&mut self, n: usize) -> &BigUint {
        self.extend_to(n);
        &self.values[n]
    }

    /// Guarded accessor for open-ended sums: `B_m` for `m >= 0`, zero for
    /// negative `m`.
    ///
    /// # Panics
    /// If `m` lies beyond the stored range; call [`BellSequence::extend_to`]
    /// first.
    pub fn at(&self, m: i64) -> BigUint {
        if m < 0 {
            return BigUint::zero();
        }
        self.values
            .get(m as usize)
            .unwrap_or_else(|| panic!("B_{m} requested but only {} values cached", self.values.len()))
            .clone()
    }

    /// Checks `B_{m+1} = sum_k C(m, k) B_k` for each `m` in `indices` that has
    /// a successor stored. Returns the first failing `m + 1`.
    pub fn check_recurrence(&self, indices: impl IntoIterator<Item = usize>) -> Option<usize> {
        for m in indices {
            if m + 1 >= self.values.len() {
                continue;
            }
            if self.binomial_sum(m) != self.values[m + 1] {
                return Some(m + 1);
            }
        }
        None
    }
}

/// `B_n`.
pub fn bell(n: usize) -> BigUint {
    BellSequence::with_max_index(n).values.swap_remove(n)
}
