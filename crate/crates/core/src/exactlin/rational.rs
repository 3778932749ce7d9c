//! Small dense rational linear algebra: elimination, rank, kernels, solving.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Int, Rat};

pub fn rat(x: i64) -> Rat {
    Rat::from_integer(Int::from(x))
}

pub fn int_to_rat(x: &Int) -> Rat {
    Rat::from_integer(x.clone())
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Rat>>) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    rref(rows.to_vec()).1.len()
}

/// Basis of `{x : A x = 0}` where `A` has `ncols` columns.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let (red, pivots) = rref(rows.to_vec());
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Determinant by Gaussian elimination.
pub fn det(mut a: Vec<Vec<Rat>>) -> Rat {
    let n = a.len();
    let mut d = Rat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        d *= &a[k][k];
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            let (top, rest) = a.split_at_mut(i);
            for (x, p) in rest[0][k..].iter_mut().zip(&top[k][k..]) {
                *x -= &f * p;
            }
        }
    }
    d
}

/// The unique solution of `A x = b`, or `None` when the system is
/// inconsistent or underdetermined.
pub fn solve_unique(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.contains(&ncols) || pivots.len() != ncols {
        return None;
    }
    Some(red.iter().map(|r| r[ncols].clone()).collect())
}

/// Scales a nonzero rational vector to the primitive integer vector with the
/// same direction. The zero vector maps to zeros.
pub fn primitive(v: &[Rat]) -> Vec<Int> {
    let lcm = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Int> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    primitive_int(&ints)
}

pub fn primitive_int(v: &[Int]) -> Vec<Int> {
    let g = v.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| y * int_to_rat(x)).sum()
}

/// Incrementally maintained echelon basis of a linear subspace of `Q^d`.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// Remainder of `v` after eliminating the pivot columns.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` if it is independent. Returns whether it was added.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x -= &f * y;
                }
            }
        }
        // keep pivots sorted so projections use increasing axes
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        true
    }
}

/// `true` when every entry is an integer.
pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rank_of_collinear_differences() {
        assert_eq!(rank(&[rv(&[1, 2]), rv(&[2, 4])]), 1);
        assert_eq!(rank(&[rv(&[1, 0, 0]), rv(&[0, 1, 0]), rv(&[1, 1, 0])]), 2);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let a = [rv(&[1, 1, 1])];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(&a[0], v).is_zero());
        }
    }

    #[test]
    fn det_and_solve() {
        assert_eq!(det(vec![rv(&[2, 1]), rv(&[1, 1])]), rat(1));
        let x = solve_unique(&[rv(&[1, 0]), rv(&[0, 2]), rv(&[1, 1])], &rv(&[1, 4, 3])).unwrap();
        assert_eq!(x, rv(&[1, 2]));
        assert!(solve_unique(&[rv(&[1, 0]), rv(&[1, 0])], &rv(&[1, 2])).is_none());
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![Rat::new(Int::from(2), Int::from(3)), Rat::new(Int::from(-4), Int::from(3)), rat(0)];
        assert_eq!(primitive(&v), vec![Int::from(1), Int::from(-2), Int::from(0)]);
    }

    #[test]
    fn echelon_insert() {
        let mut e = EchelonBasis::new();
        assert!(e.insert(&rv(&[0, 2, 2])));
        assert!(!e.insert(&rv(&[0, 1, 1])));
        assert!(e.insert(&rv(&[1, 0, 1])));
        assert_eq!(e.pivots(), &[0, 1]);
        assert!(e.contains(&rv(&[1, 1, 2])));
        assert!(!e.contains(&rv(&[0, 0, 1])));
    }
}
