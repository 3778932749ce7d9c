//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision. The determinant predicates used by
//! the triangulation code live in [`minors`]; they reduce every Orientation and
//! Volume test to signed minors of one fixed integer matrix, and keep those
//! minors in a table so that related predicates share work.

mod minors;
pub mod rational;

use std::fmt;
use std::ops::{Mul, Neg};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use minors::{CacheStats, MinorCache, DEFAULT_CLEAR_THRESHOLD};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(x: &T) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

static NEXT_GENERATION: AtomicU64 = AtomicU64::new(1);

/// Dense row-major integer matrix.
///
/// Matrices are immutable once built. Each one carries a generation tag so
/// that minors cached for one matrix are never confused with another.
#[derive(Clone)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
    generation: u64,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Int>) -> Self {
        assert_eq!(rows * cols, entries.len(), "entry count must equal rows*cols");
        IntMatrix {
            rows,
            cols,
            entries,
            generation: NEXT_GENERATION.fetch_add(1, Ordering::Relaxed),
        }
    }

    pub fn from_rows<T: Into<Int> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            entries.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix::new(r, c, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut e = vec![Int::zero(); n * n];
        for i in 0..n {
            e[i * n + i] = Int::one();
        }
        IntMatrix::new(n, n, e)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Submatrix made of the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut e = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                e.push(self.get(r, c).clone());
            }
        }
        IntMatrix::new(rows.len(), cols.len(), e)
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

impl PartialEq for IntMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for IntMatrix {}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_bareiss(m: &IntMatrix) -> Int {
    assert!(m.is_square(), "determinant of a non-square matrix");
    det_bareiss_rows(m.to_rows())
}

pub(crate) fn det_bareiss_rows(mut a: Vec<Vec<Int>>) -> Int {
    let n = a.len();
    if n == 0 {
        return Int::one();
    }
    let mut sign_flip = false;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign_flip = !sign_flip;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

/// Sorts `cols` in place and returns the parity of the sorting permutation
/// (`true` for odd), or `None` when a column is repeated.
pub(crate) fn sort_with_parity<T: Ord + Copy>(cols: &mut [T]) -> Option<bool> {
    let mut odd = false;
    for i in 1..cols.len() {
        let mut j = i;
        while j > 0 && cols[j - 1] > cols[j] {
            cols.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if cols.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn bareiss_small_cases() {
        assert_eq!(det_bareiss(&IntMatrix::identity(3)), Int::from(1));
        assert_eq!(det_bareiss(&m(&[&[0, 1], &[1, 0]])), Int::from(-1));
        assert_eq!(det_bareiss(&m(&[&[1, 2], &[2, 4]])), Int::from(0));
        assert_eq!(det_bareiss(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), Int::from(6));
        assert_eq!(det_bareiss(&IntMatrix::new(0, 0, vec![])), Int::from(1));
    }

    #[test]
    fn parity_sort() {
        let mut c = [3, 1, 2];
        assert_eq!(sort_with_parity(&mut c), Some(false));
        assert_eq!(c, [1, 2, 3]);
        let mut c = [2, 1, 3];
        assert_eq!(sort_with_parity(&mut c), Some(true));
        let mut c = [2, 1, 2];
        assert_eq!(sort_with_parity(&mut c), None);
    }

    #[test]
    fn generations_are_distinct() {
        let a = IntMatrix::identity(2);
        let b = IntMatrix::identity(2);
        assert_ne!(a.generation(), b.generation());
        assert_eq!(a.clone().generation(), a.generation());
    }

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Positive * Sign::Negative, Sign::Negative);
        assert_eq!(-Sign::Negative, Sign::Positive);
        assert_eq!(Sign::of(&Int::from(-3)), Sign::Negative);
    }
}
