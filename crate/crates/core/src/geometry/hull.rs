//! Convex hulls kept as placing triangulations of their vertices.
//!
//! The hull may be lower dimensional than the ambient space. Facets are then
//! facets relative to the affine hull and their normals are chosen inside the
//! direction space of the affine hull, which makes them unique once scaled to
//! primitive integer form.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::placing::{projected_volume_sum, Placement, Placing, PointKernel, RatPoints};
use crate::error::{Error, Result};
use crate::exactlin::rational::{dot, dot_int_rat, int_to_rat, nullspace, primitive, rank};
use crate::exactlin::{Int, Rat, Sign};

/// Affine hyperplane `normal · x = offset` with `normal · x <= offset` on the
/// inner side. Stored with `gcd(normal, offset) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub normal: Vec<Int>,
    pub offset: Int,
}

impl Hyperplane {
    /// Canonical form of `normal · x = offset` for rational data; orientation
    /// is preserved.
    pub fn from_rational(normal: &[Rat], offset: &Rat) -> Hyperplane {
        let mut all = normal.to_vec();
        all.push(offset.clone());
        let mut ints = primitive(&all);
        let offset = ints.pop().expect("nonempty");
        Hyperplane { normal: ints, offset }
    }

    /// Sign of `normal · x - offset`: positive means strictly outside.
    pub fn side(&self, x: &[Rat]) -> Sign {
        Sign::of(&(dot_int_rat(&self.normal, x) - int_to_rat(&self.offset)))
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.side(x).is_zero()
    }

    pub fn flipped(&self) -> Hyperplane {
        Hyperplane {
            normal: self.normal.iter().map(|x| -x).collect(),
            offset: -&self.offset,
        }
    }
}

/// A facet with the hull vertices on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub hyperplane: Hyperplane,
    pub vertices: Vec<Vec<Rat>>,
}

/// Facets that disappeared and appeared during one insertion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HullDelta {
    pub changed: bool,
    pub removed: Vec<Hyperplane>,
    pub added: Vec<Hyperplane>,
}

#[derive(Debug, Clone)]
pub struct TriangulatedHull {
    points: RatPoints,
    placing: Placing,
    /// Boundary simplex to its supporting hyperplane.
    planes: BTreeMap<Vec<usize>, Hyperplane>,
    facets: BTreeSet<Hyperplane>,
}

impl TriangulatedHull {
    pub fn new(ambient_dim: usize) -> Self {
        TriangulatedHull {
            points: RatPoints::new(ambient_dim),
            placing: Placing::new(),
            planes: BTreeMap::new(),
            facets: BTreeSet::new(),
        }
    }

    pub fn from_points<I: IntoIterator<Item = Vec<Rat>>>(ambient_dim: usize, pts: I) -> Self {
        let mut h = TriangulatedHull::new(ambient_dim);
        for p in pts {
            h.insert(p);
        }
        h
    }

    pub fn ambient_dim(&self) -> usize {
        self.points.ambient_dim()
    }

    pub fn is_empty(&self) -> bool {
        self.placing.dim().is_none()
    }

    /// Dimension of the affine hull; 0 for an empty hull.
    pub fn dim(&self) -> usize {
        self.placing.dim().unwrap_or(0)
    }

    pub fn is_full_dimensional(&self) -> bool {
        !self.is_empty() && self.dim() == self.ambient_dim()
    }

    pub fn cells(&self) -> Vec<Vec<Vec<Rat>>> {
        self.placing
            .cells()
            .iter()
            .map(|c| c.iter().map(|&i| self.points.get(i).to_vec()).collect())
            .collect()
    }

    pub fn insert(&mut self, p: Vec<Rat>) -> HullDelta {
        if self.points.position(&p).is_some() {
            return HullDelta::default();
        }
        let id = self.points.push(p);
        let placed = self.placing.insert(&mut self.points, id);
        if placed == Placement::Skipped {
            self.points.pop();
            return HullDelta::default();
        }
        if placed == Placement::Raised {
            self.planes.clear();
        }
        let live: BTreeSet<Vec<usize>> = self.placing.boundary().map(|(f, _)| f.to_vec()).collect();
        self.planes.retain(|f, _| live.contains(f));
        let missing: Vec<(Vec<usize>, usize)> = self
            .placing
            .boundary()
            .filter(|(f, _)| !f.is_empty() && !self.planes.contains_key(*f))
            .map(|(f, q)| (f.to_vec(), q))
            .collect();
        for (f, q) in missing {
            let h = self.supporting_plane(&f, q);
            self.planes.insert(f, h);
        }
        let facets: BTreeSet<Hyperplane> = self.planes.values().cloned().collect();
        let removed = self.facets.difference(&facets).cloned().collect();
        let added = facets.difference(&self.facets).cloned().collect();
        self.facets = facets;
        HullDelta {
            changed: true,
            removed,
            added,
        }
    }

    /// Hyperplane through the boundary simplex `f`, normal inside the
    /// direction space and pointing away from `opposite`.
    fn supporting_plane(&self, f: &[usize], opposite: usize) -> Hyperplane {
        let dirs = self.placing.frame().rows();
        let k = dirs.len();
        let base = self.points.get(f[0]);
        let gram: Vec<Vec<Rat>> = f[1..]
            .iter()
            .map(|&i| {
                let e: Vec<Rat> = self.points.get(i).iter().zip(base).map(|(a, b)| a - b).collect();
                dirs.iter().map(|d| dot(&e, d)).collect()
            })
            .collect();
        let y = if gram.is_empty() {
            vec![Rat::one()]
        } else {
            nullspace(&gram, k).pop().expect("facet spans a hyperplane")
        };
        let mut normal = vec![Rat::zero(); self.ambient_dim()];
        for (yi, d) in y.iter().zip(dirs) {
            for (n, x) in normal.iter_mut().zip(d) {
                *n += yi * x;
            }
        }
        let mut offset = dot(&normal, base);
        if dot(&normal, self.points.get(opposite)) > offset {
            normal.iter_mut().for_each(|x| *x = -x.clone());
            offset = -offset;
        }
        Hyperplane::from_rational(&normal, &offset)
    }

    /// Facet hyperplanes (relative to the affine hull).
    pub fn facet_planes(&self) -> &BTreeSet<Hyperplane> {
        &self.facets
    }

    pub fn facets(&self) -> Vec<Facet> {
        let verts = self.vertices();
        self.facets
            .iter()
            .map(|h| Facet {
                hyperplane: h.clone(),
                vertices: verts.iter().filter(|v| h.contains(v)).cloned().collect(),
            })
            .collect()
    }

    /// Extreme points, sorted lexicographically.
    pub fn vertices(&self) -> Vec<Vec<Rat>> {
        let k = self.dim();
        let mut out: Vec<Vec<Rat>> = self
            .placing
            .vertices()
            .iter()
            .map(|&i| self.points.get(i))
            .filter(|p| {
                if k == 0 {
                    return true;
                }
                let normals: Vec<Vec<Rat>> = self
                    .facets
                    .iter()
                    .filter(|h| h.contains(p))
                    .map(|h| h.normal.iter().map(int_to_rat).collect())
                    .collect();
                normals.len() >= k && rank(&normals) == k
            })
            .map(<[Rat]>::to_vec)
            .collect();
        out.sort();
        out
    }

    /// Equations cutting out the affine hull (empty when full dimensional).
    pub fn affine_equations(&self) -> Vec<Hyperplane> {
        let Some(origin) = self.placing.origin() else {
            return Vec::new();
        };
        let dirs = self.placing.frame().rows();
        let comp = if dirs.is_empty() {
            (0..self.ambient_dim())
                .map(|i| {
                    let mut e = vec![Rat::zero(); self.ambient_dim()];
                    e[i] = Rat::one();
                    e
                })
                .collect()
        } else {
            nullspace(dirs, self.ambient_dim())
        };
        let mut eqs: Vec<Hyperplane> = comp
            .iter()
            .map(|c| {
                let n: Vec<Rat> = primitive(c).iter().map(int_to_rat).collect();
                let off = dot(&n, origin);
                Hyperplane::from_rational(&n, &off)
            })
            .collect();
        eqs.sort();
        eqs
    }

    /// Basis of the direction space of the affine hull.
    pub fn directions(&self) -> &[Vec<Rat>] {
        self.placing.frame().rows()
    }

    pub fn in_affine_hull(&self, x: &[Rat]) -> bool {
        match self.placing.origin() {
            None => false,
            Some(o) => {
                let d: Vec<Rat> = x.iter().zip(o).map(|(a, b)| a - b).collect();
                self.placing.frame().contains(&d)
            }
        }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.in_affine_hull(x) && self.facets.iter().all(|h| h.side(x) != Sign::Positive)
    }

    /// Volume normalized to the lattice of integer points in the affine hull,
    /// so a unimodular simplex has volume `1 / dim!`.
    pub fn volume(&self) -> Rat {
        if self.is_empty() {
            return Rat::zero();
        }
        let k = self.dim();
        let mut pts = self.points.clone();
        let sum = projected_volume_sum(&self.placing, &mut pts);
        sum / (int_to_rat(&factorial(k)) * self.lattice_scale())
    }

    /// `dim! * volume`; an integer for lattice polytopes.
    pub fn normalized_volume(&self) -> Rat {
        self.volume() * int_to_rat(&factorial(self.dim()))
    }

    /// Ratio between the determinant on the frame axes and the lattice
    /// determinant of the affine hull.
    fn lattice_scale(&self) -> Rat {
        let dirs = self.placing.frame().rows();
        if dirs.is_empty() {
            return Rat::one();
        }
        let ints: Vec<Vec<Int>> = dirs.iter().map(|d| primitive(d)).collect();
        let axes = self.placing.axes();
        let on_axes: Vec<Vec<Rat>> = ints
            .iter()
            .map(|r| axes.iter().map(|&a| int_to_rat(&r[a])).collect())
            .collect();
        let p = crate::exactlin::rational::det(on_axes).abs();
        p / int_to_rat(&gcd_of_maximal_minors(ints))
    }

    /// Intersection with the inner side of `h`.
    pub fn clip(&self, h: &Hyperplane) -> Result<TriangulatedHull> {
        let verts = self.vertices();
        let sides: Vec<Sign> = verts.iter().map(|v| h.side(v)).collect();
        if sides.iter().all(|&s| s == Sign::Positive) || verts.is_empty() {
            return Err(Error::EmptyIntersection);
        }
        if sides.iter().all(|&s| s != Sign::Positive) {
            return Ok(self.clone());
        }
        let nrm: Vec<Rat> = h.normal.iter().map(int_to_rat).collect();
        let off = int_to_rat(&h.offset);
        let facets: Vec<&Hyperplane> = self.facets.iter().collect();
        let incident: Vec<Vec<usize>> = verts
            .iter()
            .map(|v| (0..facets.len()).filter(|&i| facets[i].contains(v)).collect())
            .collect();
        let k = self.dim();
        // Two vertices span an edge when the facets through both meet in a line.
        let is_edge = |a: usize, b: usize| {
            let common: Vec<Vec<Rat>> = incident[a]
                .iter()
                .filter(|i| incident[b].contains(i))
                .map(|&i| facets[i].normal.iter().map(int_to_rat).collect())
                .collect();
            common.len() + 1 >= k && rank(&common) + 1 == k
        };
        let mut pts: Vec<Vec<Rat>> = Vec::new();
        for (ia, (a, sa)) in verts.iter().zip(&sides).enumerate() {
            if *sa != Sign::Positive {
                pts.push(a.clone());
            }
            if *sa != Sign::Negative {
                continue;
            }
            for (ib, (b, sb)) in verts.iter().zip(&sides).enumerate() {
                if *sb != Sign::Positive || !is_edge(ia, ib) {
                    continue;
                }
                let na = dot(&nrm, a);
                let t = (&off - &na) / (dot(&nrm, b) - &na);
                pts.push(a.iter().zip(b).map(|(x, y)| x + &t * (y - x)).collect());
            }
        }
        pts.sort();
        pts.dedup();
        Ok(TriangulatedHull::from_points(self.ambient_dim(), pts))
    }

    /// Number of faces of each dimension `0..dim`, proper faces only.
    pub fn f_vector(&self) -> Vec<usize> {
        let k = self.dim();
        if self.is_empty() || k == 0 {
            return Vec::new();
        }
        let verts = self.vertices();
        let facet_sets: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|h| (0..verts.len()).filter(|&i| h.contains(&verts[i])).collect())
            .collect();
        let mut faces: BTreeSet<BTreeSet<usize>> = facet_sets.iter().cloned().collect();
        let mut frontier: Vec<BTreeSet<usize>> = faces.iter().cloned().collect();
        while let Some(face) = frontier.pop() {
            for fs in &facet_sets {
                let meet: BTreeSet<usize> = face.intersection(fs).copied().collect();
                if !meet.is_empty() && meet != face && faces.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        let mut fv = vec![0usize; k];
        for face in &faces {
            let pts: Vec<Vec<Rat>> = face.iter().map(|&i| verts[i].clone()).collect();
            let d = super::placing::affine_dim(&pts);
            if d < k {
                fv[d] += 1;
            }
        }
        fv
    }

    /// Integer points of the hull, sorted lexicographically. Returns `None`
    /// when the bounding box holds more than `limit` points.
    pub fn lattice_points(&self, limit: usize) -> Option<Vec<Vec<Int>>> {
        let verts = self.vertices();
        if verts.is_empty() {
            return Some(Vec::new());
        }
        let m = self.ambient_dim();
        let mut lo = Vec::with_capacity(m);
        let mut hi = Vec::with_capacity(m);
        let mut count = Int::one();
        for a in 0..m {
            let min = verts.iter().map(|v| v[a].clone()).min().expect("nonempty");
            let max = verts.iter().map(|v| v[a].clone()).max().expect("nonempty");
            let (l, h) = (min.ceil().to_integer(), max.floor().to_integer());
            if h < l {
                return Some(Vec::new());
            }
            count *= &h - &l + Int::one();
            lo.push(l);
            hi.push(h);
        }
        if count > Int::from(limit) {
            return None;
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let x: Vec<Rat> = cur.iter().map(int_to_rat).collect();
            if self.contains(&x) {
                out.push(cur.clone());
            }
            let mut a = 0;
            loop {
                if a == m {
                    return Some(out);
                }
                if cur[a] < hi[a] {
                    cur[a] += 1;
                    break;
                }
                cur[a] = lo[a].clone();
                a += 1;
            }
        }
    }
}

fn factorial(k: usize) -> Int {
    (1..=k).fold(Int::one(), |acc, i| acc * Int::from(i))
}

/// gcd of all maximal minors of a full-row-rank integer matrix, via integer
/// column operations down to a lower triangular form.
pub fn gcd_of_maximal_minors(mut rows: Vec<Vec<Int>>) -> Int {
    let k = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    for i in 0..k {
        for j in i + 1..m {
            if rows[i][j].is_zero() {
                continue;
            }
            // unimodular combination of columns i and j zeroing entry (i, j)
            let a = rows[i][i].clone();
            let b = rows[i][j].clone();
            let e = a.extended_gcd(&b);
            let (x, y, g) = (e.x, e.y, e.gcd);
            let (u, v) = (&a / &g, &b / &g);
            for row in rows.iter_mut() {
                let ci = row[i].clone();
                let cj = row[j].clone();
                row[i] = &x * &ci + &y * &cj;
                row[j] = &u * &cj - &v * &ci;
            }
        }
    }
    (0..k).fold(Int::one(), |acc, i| acc * rows[i][i].abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::rat;

    fn v(p: &[i64]) -> Vec<Rat> {
        p.iter().map(|&x| rat(x)).collect()
    }

    fn hull(ps: &[&[i64]]) -> TriangulatedHull {
        TriangulatedHull::from_points(ps[0].len(), ps.iter().map(|p| v(p)))
    }

    #[test]
    fn unit_cube() {
        let mut ps = Vec::new();
        for i in 0..8i64 {
            ps.push(vec![i & 1, (i >> 1) & 1, (i >> 2) & 1]);
        }
        ps.push(vec![0, 0, 0]);
        let refs: Vec<&[i64]> = ps.iter().map(Vec::as_slice).collect();
        let h = hull(&refs);
        assert_eq!(h.dim(), 3);
        assert_eq!(h.vertices().len(), 8);
        assert_eq!(h.facet_planes().len(), 6);
        assert_eq!(h.volume(), rat(1));
        assert_eq!(h.f_vector(), vec![8, 12, 6]);
        assert!(h.affine_equations().is_empty());
    }

    #[test]
    fn lattice_triangle_in_space() {
        let h = hull(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 0]]);
        assert_eq!(h.dim(), 2);
        assert_eq!(h.vertices().len(), 3);
        assert_eq!(h.normalized_volume(), rat(4));
        assert_eq!(h.volume(), rat(2));
        let eq = h.affine_equations();
        assert_eq!(eq.len(), 1);
        assert_eq!(eq[0].normal, vec![Int::from(1), Int::from(1), Int::from(1)]);
        assert_eq!(eq[0].offset, Int::from(2));
        assert_eq!(h.lattice_points(1000).unwrap().len(), 6);
        assert_eq!(h.f_vector(), vec![3, 3]);
    }

    #[test]
    fn segment_volume_and_facets() {
        let h = hull(&[&[0, 0], &[3, 6]]);
        assert_eq!(h.dim(), 1);
        assert_eq!(h.volume(), rat(3));
        assert_eq!(h.facet_planes().len(), 2);
        for f in h.facet_planes() {
            assert_eq!(f.normal, [Int::from(1), Int::from(2)].iter().map(|x| if f.offset > Int::zero() { x.clone() } else { -x }).collect::<Vec<_>>());
        }
    }

    #[test]
    fn insertion_reports_facet_changes() {
        let mut h = hull(&[&[0, 0], &[4, 0], &[0, 4]]);
        let d = h.insert(v(&[1, 1]));
        assert!(!d.changed);
        let d = h.insert(v(&[4, 4]));
        assert!(d.changed);
        assert_eq!(d.removed.len(), 1);
        assert_eq!(d.added.len(), 2);
        assert_eq!(h.vertices().len(), 4);
    }

    #[test]
    fn clip_square() {
        let h = hull(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2]]);
        let cut = Hyperplane::from_rational(&v(&[1, 1]), &rat(2));
        let c = h.clip(&cut).unwrap();
        assert_eq!(c.vertices(), vec![v(&[0, 0]), v(&[0, 2]), v(&[2, 0])]);
        let far = Hyperplane::from_rational(&v(&[-1, 0]), &rat(-5));
        assert_eq!(h.clip(&far).unwrap_err(), Error::EmptyIntersection);
    }

    #[test]
    fn maximal_minor_gcd() {
        let r = |x: &[i64]| x.iter().map(|&a| Int::from(a)).collect::<Vec<_>>();
        assert_eq!(gcd_of_maximal_minors(vec![r(&[2, 4])]), Int::from(2));
        assert_eq!(gcd_of_maximal_minors(vec![r(&[1, 0, -1]), r(&[0, 1, -1])]), Int::from(1));
        assert_eq!(gcd_of_maximal_minors(vec![r(&[2, 0, 0]), r(&[0, 2, 0])]), Int::from(4));
    }
}
