//! Hashed minors and the Orientation / Volume predicates built on them.
//!
//! Let `B` be a `k x N` integer matrix (for a Cayley system, `k = 2n` and the
//! columns are the Cayley points). All predicates are determinants of square
//! matrices formed by some columns of `B`, optionally extended by a row of
//! lifting values and a row of ones:
//!
//! ```text
//!   minor(c)        = det B[0..|c|, c]                         |c| <= k
//!   homogeneous(c)  = det [ B[.., c] ; 1 ]                     |c| = k + 1
//!   orientation(c)  = det [ B[.., c] ; lift(c) ; 1 ]           |c| = k + 2
//! ```
//!
//! Sign conventions: a `j x j` minor is expanded along its last row `j-1`,
//! the homogeneous determinant along the ones row (index `k`), orientation
//! along the lifting row (index `k`). Entry `(r, j)` carries `(-1)^(r+j)`,
//! where `j` is the position of the column inside the sorted tuple.
//!
//! Only the lifting-free determinants are stored: minors of sizes 2..=k and
//! the homogeneous ones. They do not depend on the lifting, so one table
//! serves every lifting direction.

use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::{det_bareiss_rows, sort_with_parity, Int, IntMatrix, Rat, Sign};

pub const DEFAULT_CLEAR_THRESHOLD: usize = 1_000_000;

type Cols = SmallVec<[u32; 8]>;

/// Plain counters. Two identical call sequences produce identical counters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub clears: u64,
    pub orientation_calls: u64,
    pub volume_calls: u64,
    /// `misses_by_size[s]` counts computed `s x s` minors.
    pub misses_by_size: Vec<u64>,
}

impl CacheStats {
    pub fn misses_of_size(&self, s: usize) -> u64 {
        self.misses_by_size.get(s).copied().unwrap_or(0)
    }

    fn record_miss(&mut self, s: usize) {
        self.misses += 1;
        if self.misses_by_size.len() <= s {
            self.misses_by_size.resize(s + 1, 0);
        }
        self.misses_by_size[s] += 1;
    }
}

#[derive(Debug, Clone)]
pub struct MinorCache {
    table: FxHashMap<(u64, Cols), Int>,
    enabled: bool,
    threshold: usize,
    stats: CacheStats,
    predicate_time: Duration,
}

impl Default for MinorCache {
    fn default() -> Self {
        Self::new()
    }
}

impl MinorCache {
    pub fn new() -> Self {
        Self::with_threshold(DEFAULT_CLEAR_THRESHOLD)
    }

    pub fn with_threshold(threshold: usize) -> Self {
        MinorCache {
            table: FxHashMap::default(),
            enabled: true,
            threshold,
            stats: CacheStats::default(),
            predicate_time: Duration::ZERO,
        }
    }

    /// No table: every predicate builds its square matrix and evaluates it by
    /// fraction-free elimination.
    pub fn disabled() -> Self {
        MinorCache {
            enabled: false,
            ..Self::new()
        }
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn stats(&self) -> &CacheStats {
        &self.stats
    }

    /// Wall time spent inside `orientation` and `volume`.
    pub fn predicate_time(&self) -> Duration {
        self.predicate_time
    }

    /// Clears the table once it holds more than `threshold` minors.
    pub fn maintain(&mut self) {
        if self.table.len() > self.threshold {
            self.table.clear();
            self.stats.clears += 1;
        }
    }

    /// Signed minor of `base` on the top `cols.len()` rows and the given
    /// columns, in the given column order.
    pub fn minor(&mut self, base: &IntMatrix, cols: &[usize]) -> Int {
        assert!(cols.len() <= base.rows(), "minor larger than the base matrix");
        let mut sorted: Cols = cols.iter().map(|&c| c as u32).collect();
        match sort_with_parity(&mut sorted) {
            None => Int::zero(),
            Some(odd) => {
                let v = self.minor_sorted(base, &sorted);
                if odd {
                    -v
                } else {
                    v
                }
            }
        }
    }

    fn minor_sorted(&mut self, base: &IntMatrix, cols: &[u32]) -> Int {
        let k = cols.len();
        match k {
            0 => return Int::one(),
            1 => return base.get(0, cols[0] as usize).clone(),
            _ => {}
        }
        if !self.enabled {
            self.stats.record_miss(k);
            return det_bareiss_rows(submatrix(base, cols, None));
        }
        let key = (base.generation(), Cols::from_slice(cols));
        if let Some(v) = self.table.get(&key) {
            self.stats.hits += 1;
            return v.clone();
        }
        self.stats.record_miss(k);
        let row = k - 1;
        let mut acc = Int::zero();
        let mut sub: Cols = SmallVec::with_capacity(k - 1);
        for j in 0..k {
            let entry = base.get(row, cols[j] as usize);
            if entry.is_zero() {
                continue;
            }
            sub.clear();
            sub.extend(cols.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &c)| c));
            let m = self.minor_sorted(base, &sub);
            if (row + j).is_multiple_of(2) {
                acc += entry * m;
            } else {
                acc -= entry * m;
            }
        }
        self.table.insert(key, acc.clone());
        self.maintain();
        acc
    }

    fn homogeneous_sorted(&mut self, base: &IntMatrix, cols: &[u32]) -> Int {
        let k = base.rows();
        debug_assert_eq!(cols.len(), k + 1);
        if !self.enabled {
            self.stats.record_miss(k + 1);
            return det_bareiss_rows(submatrix(base, cols, None));
        }
        let key = (base.generation(), Cols::from_slice(cols));
        if let Some(v) = self.table.get(&key) {
            self.stats.hits += 1;
            return v.clone();
        }
        self.stats.record_miss(k + 1);
        let mut acc = Int::zero();
        let mut sub: Cols = SmallVec::with_capacity(k);
        for j in 0..cols.len() {
            sub.clear();
            sub.extend(cols.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &c)| c));
            let m = self.minor_sorted(base, &sub);
            if (k + j).is_multiple_of(2) {
                acc += m;
            } else {
                acc -= m;
            }
        }
        self.table.insert(key, acc.clone());
        self.maintain();
        acc
    }

    /// `det [B[.., cols]; 1]` for `rows + 1` columns, with sign following the
    /// given column order.
    pub fn homogeneous_minor(&mut self, base: &IntMatrix, cols: &[usize]) -> Int {
        assert_eq!(cols.len(), base.rows() + 1, "homogeneous minor needs rows+1 columns");
        let mut sorted: Cols = cols.iter().map(|&c| c as u32).collect();
        match sort_with_parity(&mut sorted) {
            None => Int::zero(),
            Some(odd) => {
                let v = self.homogeneous_sorted(base, &sorted);
                if odd {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// Orientation predicate on `rows + 2` columns with integer lifting values
    /// indexed by column.
    pub fn orientation_int(&mut self, base: &IntMatrix, cols: &[usize], lifting: &[Int]) -> Sign {
        let start = Instant::now();
        self.stats.orientation_calls += 1;
        let k = base.rows();
        assert_eq!(cols.len(), k + 2, "orientation needs rows+2 columns");
        let mut sorted: Cols = cols.iter().map(|&c| c as u32).collect();
        let sign = match sort_with_parity(&mut sorted) {
            None => Sign::Zero,
            Some(odd) if !self.enabled => {
                self.stats.record_miss(k + 2);
                let s = Sign::of(&det_bareiss_rows(submatrix(base, &sorted, Some(lifting))));
                if odd {
                    -s
                } else {
                    s
                }
            }
            Some(odd) => {
                let mut acc = Int::zero();
                let mut sub: Cols = SmallVec::with_capacity(k + 1);
                for i in 0..sorted.len() {
                    sub.clear();
                    sub.extend(sorted.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &c)| c));
                    // Every cofactor is evaluated, also those with a zero
                    // lifting value, so that the minors it needs are cached
                    // for later liftings.
                    let h = self.homogeneous_sorted(base, &sub);
                    let l = &lifting[sorted[i] as usize];
                    if l.is_zero() {
                        continue;
                    }
                    if (k + i).is_multiple_of(2) {
                        acc += l * h;
                    } else {
                        acc -= l * h;
                    }
                }
                let s = Sign::of(&acc);
                if odd {
                    -s
                } else {
                    s
                }
            }
        };
        self.predicate_time += start.elapsed();
        sign
    }

    /// Orientation predicate with rational lifting values indexed by column.
    /// The values are scaled by the (positive) common denominator, which does
    /// not change the sign.
    pub fn orientation(&mut self, base: &IntMatrix, cols: &[usize], lifting: &[Rat]) -> Sign {
        let lcm = cols.iter().fold(Int::one(), |acc, &c| {
            num_integer::lcm(acc, lifting[c].denom().clone())
        });
        let mut scaled = vec![Int::zero(); lifting.len()];
        for &c in cols {
            scaled[c] = (&lifting[c] * Rat::from_integer(lcm.clone())).to_integer();
        }
        self.orientation_int(base, cols, &scaled)
    }

    /// Volume predicate: `|det [B[.., cols]; 1]|`, the normalized volume of the
    /// simplex spanned by `rows + 1` columns.
    pub fn volume(&mut self, base: &IntMatrix, cols: &[usize]) -> Int {
        let start = Instant::now();
        self.stats.volume_calls += 1;
        let v = self.homogeneous_minor(base, cols).abs();
        self.predicate_time += start.elapsed();
        v
    }
}

/// Columns `cols` of the top `cols.len()` rows of `base`; for `rows + 1`
/// or more columns all rows, then the lifting row if given, then ones.
fn submatrix(base: &IntMatrix, cols: &[u32], lifting: Option<&[Int]>) -> Vec<Vec<Int>> {
    let n = cols.len();
    let top = n.min(base.rows());
    let mut rows: Vec<Vec<Int>> = (0..top)
        .map(|r| cols.iter().map(|&c| base.get(r, c as usize).clone()).collect())
        .collect();
    if let Some(l) = lifting {
        rows.push(cols.iter().map(|&c| l[c as usize].clone()).collect());
    }
    if rows.len() < n {
        rows.push(vec![Int::one(); n]);
    }
    rows
}
