//! Placing triangulations (Beneath-and-Beyond) in any dimension.
//!
//! Points are inserted one by one. A point outside the current affine hull
//! raises the dimension and is coned over every cell; a point inside the
//! affine hull is joined to every boundary facet it strictly sees; a point that
//! sees no facet is already covered and is skipped.
//!
//! All sign tests go through a [`PointKernel`]; the triangulation itself stores
//! only point ids, so the same engine runs on Cayley points with cached minors
//! and on rational points of the reconstructed polytope.

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::exactlin::rational::{det, EchelonBasis};
use crate::exactlin::{Rat, Sign};

/// Access to point coordinates and the orientation test.
pub trait PointKernel {
    fn ambient_dim(&self) -> usize;

    fn coord(&self, p: usize, axis: usize) -> Rat;

    fn coords(&self, p: usize) -> Vec<Rat> {
        (0..self.ambient_dim()).map(|a| self.coord(p, a)).collect()
    }

    /// Sign of `det [ x_axes(pts) ; 1 ]` with one column per point, in order.
    /// `pts.len() == axes.len() + 1`.
    fn orientation(&mut self, axes: &[usize], pts: &[usize]) -> Sign {
        Sign::of(&self.orientation_det(axes, pts))
    }

    fn orientation_det(&mut self, axes: &[usize], pts: &[usize]) -> Rat {
        debug_assert_eq!(pts.len(), axes.len() + 1);
        let mut rows: Vec<Vec<Rat>> = axes
            .iter()
            .map(|&a| pts.iter().map(|&p| self.coord(p, a)).collect())
            .collect();
        rows.push(vec![Rat::one(); pts.len()]);
        det(rows)
    }
}

/// Rational points stored by value.
#[derive(Debug, Clone, Default)]
pub struct RatPoints {
    dim: usize,
    points: Vec<Vec<Rat>>,
}

impl RatPoints {
    pub fn new(dim: usize) -> Self {
        RatPoints {
            dim,
            points: Vec::new(),
        }
    }

    pub fn push(&mut self, p: Vec<Rat>) -> usize {
        assert_eq!(p.len(), self.dim, "point dimension mismatch");
        self.points.push(p);
        self.points.len() - 1
    }

    pub fn pop(&mut self) {
        self.points.pop();
    }

    pub fn get(&self, i: usize) -> &[Rat] {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, p: &[Rat]) -> Option<usize> {
        self.points.iter().position(|q| q.as_slice() == p)
    }
}

impl PointKernel for RatPoints {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn coord(&self, p: usize, axis: usize) -> Rat {
        self.points[p][axis].clone()
    }

    fn coords(&self, p: usize) -> Vec<Rat> {
        self.points[p].clone()
    }
}

#[derive(Debug, Clone)]
struct BoundaryFacet {
    opposite: usize,
    /// Orientation of the facet followed by `opposite`, filled lazily.
    inside: Option<Sign>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// Covered by the current triangulation (or a repeat); nothing changed.
    Skipped,
    /// Left the affine hull; every cell was coned to the new point.
    Raised,
    /// Joined to `new_cells` visible boundary facets.
    Placed { new_cells: usize },
}

/// A placing triangulation over point ids of some kernel.
#[derive(Debug, Clone, Default)]
pub struct Placing {
    order: Vec<usize>,
    origin: Option<(usize, Vec<Rat>)>,
    frame: EchelonBasis,
    cells: Vec<Vec<usize>>,
    boundary: FxHashMap<Vec<usize>, BoundaryFacet>,
}

impl Placing {
    pub fn new() -> Self {
        Self::default()
    }

    /// Intrinsic dimension of the triangulated point set; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.origin.as_ref().map(|_| self.frame.dim())
    }

    /// Coordinate axes on which the affine hull projects injectively.
    pub fn axes(&self) -> &[usize] {
        self.frame.pivots()
    }

    pub fn frame(&self) -> &EchelonBasis {
        &self.frame
    }

    pub fn origin(&self) -> Option<&[Rat]> {
        self.origin.as_ref().map(|(_, c)| c.as_slice())
    }

    /// Point ids used as vertices, in insertion order.
    pub fn vertices(&self) -> &[usize] {
        &self.order
    }

    /// Maximal simplices, each a sorted list of point ids.
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Boundary facets of the triangulation with the vertex opposite to each
    /// in its unique cell.
    pub fn boundary(&self) -> impl Iterator<Item = (&[usize], usize)> {
        self.boundary.iter().map(|(f, b)| (f.as_slice(), b.opposite))
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary.len()
    }

    /// `true` if `p` lies in the affine hull of the placed points.
    pub fn in_affine_hull<K: PointKernel>(&self, kernel: &K, p: usize) -> bool {
        match &self.origin {
            None => false,
            Some((_, o)) => {
                let diff: Vec<Rat> = kernel.coords(p).iter().zip(o).map(|(a, b)| a - b).collect();
                self.frame.contains(&diff)
            }
        }
    }

    pub fn insert<K: PointKernel>(&mut self, kernel: &mut K, p: usize) -> Placement {
        let Some((_, origin)) = &self.origin else {
            self.origin = Some((p, kernel.coords(p)));
            self.order.push(p);
            self.cells.push(vec![p]);
            self.boundary.insert(
                Vec::new(),
                BoundaryFacet {
                    opposite: p,
                    inside: None,
                },
            );
            return Placement::Raised;
        };
        let diff: Vec<Rat> = kernel.coords(p).iter().zip(origin).map(|(a, b)| a - b).collect();
        if self.frame.insert(&diff) {
            self.raise(p);
            return Placement::Raised;
        }
        if self.order.contains(&p) {
            return Placement::Skipped;
        }
        self.place(kernel, p)
    }

    fn raise(&mut self, p: usize) {
        let old_boundary = std::mem::take(&mut self.boundary);
        for cell in self.cells.iter_mut() {
            self.boundary.insert(
                cell.clone(),
                BoundaryFacet {
                    opposite: p,
                    inside: None,
                },
            );
            insert_sorted(cell, p);
        }
        for (mut f, b) in old_boundary {
            insert_sorted(&mut f, p);
            self.boundary.insert(
                f,
                BoundaryFacet {
                    opposite: b.opposite,
                    inside: None,
                },
            );
        }
        self.order.push(p);
    }

    fn place<K: PointKernel>(&mut self, kernel: &mut K, p: usize) -> Placement {
        let axes = self.frame.pivots().to_vec();
        let mut visible: Vec<Vec<usize>> = Vec::new();
        let mut buf: Vec<usize> = Vec::with_capacity(axes.len() + 1);
        for (f, b) in self.boundary.iter_mut() {
            buf.clear();
            buf.extend_from_slice(f);
            buf.push(p);
            let side = kernel.orientation(&axes, &buf);
            if side.is_zero() {
                continue;
            }
            let inside = match b.inside {
                Some(s) => s,
                None => {
                    buf.pop();
                    buf.push(b.opposite);
                    let s = kernel.orientation(&axes, &buf);
                    debug_assert!(!s.is_zero(), "flat cell in triangulation");
                    b.inside = Some(s);
                    s
                }
            };
            if side == -inside {
                visible.push(f.clone());
            }
        }
        if visible.is_empty() {
            return Placement::Skipped;
        }
        // deterministic regardless of hash order
        visible.sort();
        let mut candidates: FxHashMap<Vec<usize>, Option<usize>> = FxHashMap::default();
        for f in &visible {
            self.boundary.remove(f);
            let mut cell = f.clone();
            insert_sorted(&mut cell, p);
            self.cells.push(cell);
            for (i, &v) in f.iter().enumerate() {
                let mut ridge: Vec<usize> = f.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
                insert_sorted(&mut ridge, p);
                candidates
                    .entry(ridge)
                    .and_modify(|e| *e = None)
                    .or_insert(Some(v));
            }
        }
        let mut fresh: Vec<(Vec<usize>, usize)> = candidates
            .into_iter()
            .filter_map(|(f, v)| v.map(|v| (f, v)))
            .collect();
        fresh.sort();
        for (f, v) in fresh {
            self.boundary.insert(
                f,
                BoundaryFacet {
                    opposite: v,
                    inside: None,
                },
            );
        }
        self.order.push(p);
        Placement::Placed {
            new_cells: visible.len(),
        }
    }
}

fn insert_sorted(v: &mut Vec<usize>, x: usize) {
    let pos = v.partition_point(|&y| y < x);
    v.insert(pos, x);
}

/// Dimension of the affine hull of the given points.
pub fn affine_dim(points: &[Vec<Rat>]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let mut basis = EchelonBasis::new();
    for p in &points[1..] {
        let d: Vec<Rat> = p.iter().zip(first).map(|(a, b)| a - b).collect();
        basis.insert(&d);
    }
    basis.dim()
}

/// Sum of `|det|` over the cells, measured on the frame axes. This is
/// `dim!` times the volume of the projection onto those axes.
pub fn projected_volume_sum<K: PointKernel>(placing: &Placing, kernel: &mut K) -> Rat {
    let axes = placing.axes().to_vec();
    let mut total = Rat::zero();
    for cell in placing.cells() {
        let d = kernel.orientation_det(&axes, cell);
        total += if d < Rat::zero() { -d } else { d };
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::rat;

    fn pts(v: &[&[i64]]) -> RatPoints {
        let mut k = RatPoints::new(v[0].len());
        for p in v {
            k.push(p.iter().map(|&x| rat(x)).collect());
        }
        k
    }

    #[test]
    fn square_gets_two_triangles() {
        let mut k = pts(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let mut t = Placing::new();
        for i in 0..4 {
            t.insert(&mut k, i);
        }
        assert_eq!(t.dim(), Some(2));
        assert_eq!(t.cells().len(), 2);
        assert_eq!(t.boundary_len(), 4);
        assert_eq!(projected_volume_sum(&t, &mut k), rat(2));
    }

    #[test]
    fn interior_and_repeated_points_are_skipped() {
        let mut k = pts(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1], &[4, 0], &[2, 0]]);
        let mut t = Placing::new();
        for i in 0..3 {
            t.insert(&mut k, i);
        }
        assert_eq!(t.insert(&mut k, 3), Placement::Skipped);
        assert_eq!(t.insert(&mut k, 4), Placement::Skipped);
        // on the boundary: sees nothing strictly
        assert_eq!(t.insert(&mut k, 5), Placement::Skipped);
        assert_eq!(t.cells().len(), 1);
    }

    #[test]
    fn collinear_then_raise() {
        let mut k = pts(&[&[0, 0, 0], &[1, 1, 1], &[3, 3, 3], &[0, 1, 0]]);
        let mut t = Placing::new();
        assert_eq!(t.insert(&mut k, 0), Placement::Raised);
        assert_eq!(t.insert(&mut k, 1), Placement::Raised);
        assert_eq!(t.insert(&mut k, 2), Placement::Placed { new_cells: 1 });
        assert_eq!(t.dim(), Some(1));
        assert_eq!(t.insert(&mut k, 3), Placement::Raised);
        assert_eq!(t.cells().len(), 2);
        assert_eq!(t.boundary_len(), 4);
    }

    #[test]
    fn affine_dim_cases() {
        let v = |p: &[i64]| p.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        assert_eq!(affine_dim(&[v(&[3, 4])]), 0);
        assert_eq!(affine_dim(&[v(&[0, 0]), v(&[1, 2]), v(&[2, 4])]), 1);
        assert_eq!(affine_dim(&[v(&[0, 0]), v(&[1, 2]), v(&[2, 5])]), 2);
    }
}
