//! Regular subdivisions and triangulations of point sets given as the columns
//! of an integer matrix, with all predicates answered by a [`MinorCache`].

use num_integer::Integer;
use num_traits::{One, Zero};

use super::placing::{Placing, PointKernel};
use crate::error::{Error, Result};
use crate::exactlin::rational::{int_to_rat, solve_unique};
use crate::exactlin::{Int, IntMatrix, MinorCache, Rat, Sign};

/// Columns of `base` lifted by `lift`, as a kernel in dimension `rows + 1`.
///
/// Orientation tests on all base axes, or on all base axes plus the lift,
/// are the two shapes the placing engine asks for once a point set is full
/// dimensional; both are answered from cached minors of `base`.
pub struct LiftedColumns<'a> {
    pub base: &'a IntMatrix,
    pub lift: &'a [Int],
    pub cache: &'a mut MinorCache,
}

impl LiftedColumns<'_> {
    fn is_prefix(&self, axes: &[usize]) -> bool {
        axes.iter().enumerate().all(|(i, &a)| i == a)
    }
}

impl PointKernel for LiftedColumns<'_> {
    fn ambient_dim(&self) -> usize {
        self.base.rows() + 1
    }

    fn coord(&self, p: usize, axis: usize) -> Rat {
        if axis < self.base.rows() {
            int_to_rat(self.base.get(axis, p))
        } else {
            int_to_rat(&self.lift[p])
        }
    }

    fn orientation(&mut self, axes: &[usize], pts: &[usize]) -> Sign {
        let rows = self.base.rows();
        if self.is_prefix(axes) {
            if axes.len() == rows {
                return Sign::of(&self.cache.homogeneous_minor(self.base, pts));
            }
            if axes.len() == rows + 1 {
                return self.cache.orientation_int(self.base, pts, self.lift);
            }
        }
        Sign::of(&self.orientation_det(axes, pts))
    }
}

/// Places `order` into `start` (or an empty triangulation) with the given
/// integer lifting.
pub fn lifted_placing(
    base: &IntMatrix,
    lift: &[Int],
    order: &[usize],
    cache: &mut MinorCache,
    start: Option<Placing>,
) -> Placing {
    let mut t = start.unwrap_or_default();
    let mut kernel = LiftedColumns { base, lift, cache };
    for &p in order {
        t.insert(&mut kernel, p);
    }
    t
}

/// Simplices of the regular triangulation induced by a lifted placing
/// triangulation: its upper boundary facets, or all cells when the lifting
/// is affine.
pub fn upper_simplices(
    t: &Placing,
    base: &IntMatrix,
    lift: &[Int],
    cache: &mut MinorCache,
) -> Result<Vec<Vec<usize>>> {
    let rows = base.rows();
    let dim = t.dim().unwrap_or(0);
    if dim == rows {
        return Ok(t.cells().to_vec());
    }
    if dim != rows + 1 {
        return Err(Error::DegenerateInput(format!(
            "point configuration spans dimension {} < {rows}",
            dim.min(rows)
        )));
    }
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(rows + 2);
    for (f, q) in t.boundary() {
        let h = Sign::of(&cache.homogeneous_minor(base, f));
        if h.is_zero() {
            continue;
        }
        buf.clear();
        buf.extend_from_slice(f);
        buf.push(q);
        if cache.orientation_int(base, &buf, lift) == h {
            out.push(f.to_vec());
        }
    }
    out.sort();
    Ok(out)
}

/// Integer lifting with the same regular subdivision as a rational one.
pub fn integer_lifting(lift: &[Rat]) -> Vec<Int> {
    let l = lift.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    lift.iter().map(|x| (x * int_to_rat(&l)).to_integer()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSubdivision {
    /// Sorted column sets, one per maximal cell, sorted.
    pub cells: Vec<Vec<usize>>,
    /// Per cell, the affine function `(slope, constant)` agreeing with the
    /// lifting on the cell's columns.
    pub functionals: Vec<Vec<Rat>>,
}

/// Regular subdivision of the columns of `base` induced by `lift`, taking the
/// upper faces of the lifted point set.
pub fn regular_subdivision(base: &IntMatrix, lift: &[Rat], cache: &mut MinorCache) -> Result<RegularSubdivision> {
    let ilift = integer_lifting(lift);
    let order: Vec<usize> = (0..base.cols()).collect();
    let t = lifted_placing(base, &ilift, &order, cache, None);
    let simplices = upper_simplices(&t, base, &ilift, cache)?;
    let rows = base.rows();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut buf = Vec::with_capacity(rows + 2);
    for s in &simplices {
        let cell: Vec<usize> = if t.dim() == Some(rows) {
            order.clone()
        } else {
            order
                .iter()
                .copied()
                .filter(|&p| {
                    buf.clear();
                    buf.extend_from_slice(s);
                    buf.push(p);
                    s.contains(&p) || cache.orientation_int(base, &buf, &ilift).is_zero()
                })
                .collect()
        };
        if !cells.contains(&cell) {
            cells.push(cell);
        }
    }
    cells.sort();
    let functionals = cells
        .iter()
        .map(|c| affine_interpolant(base, lift, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(RegularSubdivision { cells, functionals })
}

fn affine_interpolant(base: &IntMatrix, lift: &[Rat], cell: &[usize]) -> Result<Vec<Rat>> {
    let rows = base.rows();
    let a: Vec<Vec<Rat>> = cell
        .iter()
        .map(|&p| {
            let mut r: Vec<Rat> = (0..rows).map(|i| int_to_rat(base.get(i, p))).collect();
            r.push(Rat::one());
            r
        })
        .collect();
    let b: Vec<Rat> = cell.iter().map(|&p| lift[p].clone()).collect();
    solve_unique(&a, &b).ok_or_else(|| Error::DegenerateInput("cell without a unique supporting function".into()))
}

/// Refines each cell by a placing triangulation in the given global order.
/// A global order makes the refinements of shared faces agree.
pub fn placing_refine(
    sub: &RegularSubdivision,
    base: &IntMatrix,
    order: &[usize],
    cache: &mut MinorCache,
) -> Vec<Vec<usize>> {
    let zero = vec![Int::zero(); base.cols()];
    let mut out = Vec::new();
    for cell in &sub.cells {
        let local: Vec<usize> = order.iter().copied().filter(|p| cell.contains(p)).collect();
        let t = lifted_placing(base, &zero, &local, cache, None);
        out.extend(t.cells().iter().cloned());
    }
    out.sort();
    out.dedup();
    out
}
