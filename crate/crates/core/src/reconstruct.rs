//! Incremental reconstruction of the projected polytope from oracle calls.
//!
//! The inner polytope `Q` starts from the answers in the coordinate
//! directions, is raised to full dimension within the affine hull of the
//! target, and is then grown facet by facet: each facet not yet known to
//! support the target is queried along its outer normal. A facet is legal
//! when the oracle answer lies on it; otherwise the answer is a new vertex.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::exactlin::rational::{dot_int_rat, int_to_rat, rat, rref};
use crate::exactlin::{Int, Rat, Sign};
use crate::geometry::{Hyperplane, TriangulatedHull};
use crate::oracle::{Direction, Oracle};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub oracle_calls: u64,
    pub init_calls: u64,
    /// Facets whose normal had already been queried.
    pub parallel_skips: u64,
    pub legalized: u64,
    pub elapsed: Duration,
}

impl BuildStats {
    pub fn calls_after_init(&self) -> u64 {
        self.oracle_calls - self.init_calls
    }
}

/// Inner approximation and the bookkeeping of the incremental algorithm.
#[derive(Debug, Clone)]
pub struct BuildState {
    q: TriangulatedHull,
    illegal: VecDeque<Hyperplane>,
    pending: BTreeSet<Hyperplane>,
    /// Facets known to support the target, with an oracle point on each.
    legal: BTreeMap<Hyperplane, Vec<Rat>>,
    /// Every queried direction with its answer.
    answers: BTreeMap<Direction, Vec<Int>>,
    rho_ref: Option<Vec<Int>>,
    /// Answers to `±e_i`: a box containing the target.
    lower: Vec<Rat>,
    upper: Vec<Rat>,
    stats: BuildStats,
}

impl BuildState {
    pub fn hull(&self) -> &TriangulatedHull {
        &self.q
    }

    pub fn stats(&self) -> &BuildStats {
        &self.stats
    }

    /// One full exponent vector returned by the oracle.
    pub fn reference_rho(&self) -> Option<&[Int]> {
        self.rho_ref.as_deref()
    }

    /// Distinct oracle answers, sorted.
    pub fn oracle_points(&self) -> Vec<Vec<Int>> {
        let set: BTreeSet<&Vec<Int>> = self.answers.values().collect();
        set.into_iter().cloned().collect()
    }

    pub fn queried_directions(&self) -> impl Iterator<Item = &Direction> {
        self.answers.keys()
    }

    pub fn legal_facets(&self) -> &BTreeMap<Hyperplane, Vec<Rat>> {
        &self.legal
    }

    pub fn illegal_count(&self) -> usize {
        self.pending.len()
    }

    /// Vertices of `Q` as integer vectors, sorted.
    pub fn vertices(&self) -> Vec<Vec<Int>> {
        self.q.vertices().iter().map(|v| to_ints(v)).collect()
    }

    /// Halfspaces `w · x <= w · v` for every query `w` with answer `v`.
    pub fn outer_halfspaces(&self) -> Vec<Hyperplane> {
        self.answers
            .iter()
            .map(|(w, v)| {
                let normal: Vec<Rat> = w.as_slice().iter().map(int_to_rat).collect();
                let x: Vec<Rat> = v.iter().map(int_to_rat).collect();
                Hyperplane::from_rational(&normal, &w.dot(&x))
            })
            .collect()
    }

    fn query(&mut self, oracle: &mut Oracle, w: Direction) -> Result<Vec<Rat>> {
        let out = oracle.vtx(&w)?;
        self.stats.oracle_calls += 1;
        if self.rho_ref.is_none() {
            self.rho_ref = Some(out.rho.clone());
        }
        let v: Vec<Rat> = out.point.iter().map(int_to_rat).collect();
        self.answers.insert(w, out.point);
        Ok(v)
    }

    fn enqueue(&mut self, h: Hyperplane) {
        if !self.legal.contains_key(&h) && self.pending.insert(h.clone()) {
            self.illegal.push_back(h);
        }
    }

    fn insert(&mut self, v: Vec<Rat>) {
        let delta = self.q.insert(v);
        for h in delta.removed {
            self.pending.remove(&h);
            self.legal.remove(&h);
        }
        for h in delta.added {
            self.enqueue(h);
        }
    }
}

fn to_ints(v: &[Rat]) -> Vec<Int> {
    v.iter().map(|x| x.to_integer()).collect()
}

/// Queries `±e_i` for every coordinate, then normals of the affine hull of
/// `Q` until the dimension stops growing. On return `Q` spans the affine
/// hull of the target.
pub fn initialize(oracle: &mut Oracle) -> Result<BuildState> {
    let start = Instant::now();
    let m = oracle.system().m();
    let mut state = BuildState {
        q: TriangulatedHull::new(m),
        illegal: VecDeque::new(),
        pending: BTreeSet::new(),
        legal: BTreeMap::new(),
        answers: BTreeMap::new(),
        rho_ref: None,
        lower: vec![Rat::zero(); m],
        upper: vec![Rat::zero(); m],
        stats: BuildStats::default(),
    };
    for i in 0..m {
        for positive in [true, false] {
            let v = state.query(oracle, Direction::axis(m, i, positive))?;
            if positive {
                state.upper[i] = v[i].clone();
            } else {
                state.lower[i] = v[i].clone();
            }
            state.q.insert(v);
        }
    }
    while state.q.dim() < m {
        let mut grew = false;
        'eqs: for eq in state.q.affine_equations() {
            let c = Direction::from_ints(&eq.normal)?;
            for w in [c.negated(), c] {
                if state.answers.contains_key(&w) {
                    continue;
                }
                let v = state.query(oracle, w)?;
                if !state.q.in_affine_hull(&v) {
                    state.q.insert(v);
                    grew = true;
                    break 'eqs;
                }
                state.q.insert(v);
            }
        }
        if !grew {
            break;
        }
    }
    state.stats.init_calls = state.stats.oracle_calls;
    let facets: Vec<Hyperplane> = state.q.facet_planes().iter().cloned().collect();
    for h in facets {
        state.enqueue(h);
    }
    state.stats.elapsed += start.elapsed();
    Ok(state)
}

/// Processes one illegal facet. Returns `false` when none is left.
fn step(state: &mut BuildState, oracle: &mut Oracle) -> Result<bool> {
    let Some(h) = state.illegal.pop_front() else {
        return Ok(false);
    };
    if !state.pending.remove(&h) {
        return Ok(true);
    }
    let w = Direction::from_ints(&h.normal)?;
    if let Some(prev) = state.answers.get(&w) {
        // an earlier answer maximizing w lies in Q, so h already supports the target
        let p = prev.iter().map(int_to_rat).collect();
        state.legal.insert(h, p);
        state.stats.parallel_skips += 1;
        state.stats.legalized += 1;
        return Ok(true);
    }
    let v = state.query(oracle, w)?;
    if h.side(&v) == Sign::Positive {
        state.insert(v);
    } else {
        state.legal.insert(h, v.clone());
        state.stats.legalized += 1;
        if !state.q.contains(&v) {
            state.insert(v);
        }
    }
    Ok(true)
}

/// Runs the incremental algorithm to completion; afterwards `Q` is the
/// target polytope.
pub fn compute_pi(oracle: &mut Oracle, state: &mut BuildState) -> Result<()> {
    let start = Instant::now();
    while step(state, oracle)? {}
    state.stats.elapsed += start.elapsed();
    Ok(())
}

/// Initializes and runs the exact algorithm.
pub fn compute_pi_exact(oracle: &mut Oracle) -> Result<BuildState> {
    let mut state = initialize(oracle)?;
    compute_pi(oracle, &mut state)?;
    Ok(state)
}

/// Volumes of the inner and outer approximations at the stopping point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichReport {
    pub vol_q: Rat,
    pub vol_qo: Rat,
    pub ratio: Rat,
    pub threshold: Rat,
}

/// Runs the incremental algorithm until `vol(Q) / vol(Q_o) >= threshold`,
/// where `Q_o` is the intersection of the halfspaces bounded by hyperplanes
/// through each answer orthogonal to its query. Returns the state and the
/// final outer polytope.
pub fn compute_pi_approx(
    oracle: &mut Oracle,
    threshold: &Rat,
) -> Result<(BuildState, TriangulatedHull, SandwichReport)> {
    let mut state = initialize(oracle)?;
    let start = Instant::now();
    // After initialization Q spans the affine hull of the target, so the
    // outer body is kept in coordinates of that hull.
    let chart = Chart::new(&state.q);
    let mut outer = chart.initial_box(&state);
    let mut clipped: BTreeSet<Hyperplane> = BTreeSet::new();
    loop {
        for h in state.outer_halfspaces() {
            if clipped.insert(h.clone()) {
                if let Some(local) = chart.halfspace(&h) {
                    outer = outer.clip(&local)?;
                }
            }
        }
        let inner = TriangulatedHull::from_points(chart.dim(), state.q.vertices().iter().map(|v| chart.down(v)));
        let vol_qo = outer.volume();
        let ratio = if vol_qo.is_zero() { rat(1) } else { inner.volume() / &vol_qo };
        if &ratio >= threshold || !step(&mut state, oracle)? {
            state.stats.elapsed += start.elapsed();
            let outer = TriangulatedHull::from_points(state.q.ambient_dim(), outer.vertices().iter().map(|y| chart.up(y)));
            let report = SandwichReport {
                vol_q: state.q.volume(),
                vol_qo: outer.volume(),
                ratio,
                threshold: threshold.clone(),
            };
            return Ok((state, outer, report));
        }
    }
}

/// Coordinates on an affine subspace: the pivot coordinates of the reduced
/// echelon basis of its direction space.
struct Chart {
    origin: Vec<Rat>,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Chart {
    fn new(hull: &TriangulatedHull) -> Chart {
        let origin = hull.vertices().into_iter().next().unwrap_or_else(|| vec![Rat::zero(); hull.ambient_dim()]);
        let (basis, pivots) = rref(hull.directions().to_vec());
        Chart { origin, basis, pivots }
    }

    fn dim(&self) -> usize {
        self.pivots.len()
    }

    fn down(&self, x: &[Rat]) -> Vec<Rat> {
        self.pivots.iter().map(|&p| x[p].clone()).collect()
    }

    fn up(&self, y: &[Rat]) -> Vec<Rat> {
        let mut x = self.origin.clone();
        for ((yj, &p), d) in y.iter().zip(&self.pivots).zip(&self.basis) {
            let t = yj - &self.origin[p];
            for (xi, di) in x.iter_mut().zip(d) {
                *xi += &t * di;
            }
        }
        x
    }

    /// The halfspace in chart coordinates, or `None` when it is constant on
    /// the subspace.
    fn halfspace(&self, h: &Hyperplane) -> Option<Hyperplane> {
        let normal: Vec<Rat> = self.basis.iter().map(|d| dot_int_rat(&h.normal, d)).collect();
        if normal.iter().all(Zero::is_zero) {
            return None;
        }
        let shift: Rat = normal.iter().zip(&self.pivots).map(|(n, &p)| n * &self.origin[p]).sum();
        let offset = int_to_rat(&h.offset) - dot_int_rat(&h.normal, &self.origin) + shift;
        Some(Hyperplane::from_rational(&normal, &offset))
    }

    /// Box spanned by the coordinate answers of the initialization.
    fn initial_box(&self, state: &BuildState) -> TriangulatedHull {
        let mut corners: Vec<Vec<Rat>> = vec![Vec::new()];
        for &p in &self.pivots {
            corners = corners
                .into_iter()
                .flat_map(|c| {
                    [&state.lower[p], &state.upper[p]].map(|b| {
                        let mut c = c.clone();
                        c.push(b.clone());
                        c
                    })
                })
                .collect();
        }
        TriangulatedHull::from_points(self.dim(), corners)
    }
}

/// Inner approximation from `k` directions uniform on the sphere.
#[derive(Debug, Clone)]
pub struct RandomReport {
    pub hull: TriangulatedHull,
    pub volume: Rat,
    pub oracle_calls: u64,
}

/// Hull of the oracle answers in `k` seeded random directions. Directions
/// are rounded to integer vectors at scale `10^6`.
pub fn compute_pi_random(oracle: &mut Oracle, k: usize, seed: u64) -> Result<RandomReport> {
    let m = oracle.system().m();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hull = TriangulatedHull::new(m);
    let mut calls = 0;
    for _ in 0..k {
        let w = random_direction(m, &mut rng);
        let out = oracle.vtx(&w)?;
        calls += 1;
        hull.insert(out.point.iter().map(int_to_rat).collect());
    }
    Ok(RandomReport {
        volume: hull.volume(),
        hull,
        oracle_calls: calls,
    })
}

/// Uniform direction on the sphere in `R^m`, as a primitive integer vector.
pub fn random_direction<R: rand::Rng>(m: usize, rng: &mut R) -> Direction {
    loop {
        let x: Vec<f64> = (0..m).map(|_| StandardNormal.sample(rng)).collect();
        let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let ints: Vec<Int> = x
            .iter()
            .map(|a| Int::from((a / norm * 1e6).round().to_i64().unwrap_or(0)))
            .collect();
        if let Ok(d) = Direction::from_ints(&ints) {
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_cayley, ProjectionSpec, SupportFamily};

    fn pts(v: &[&[i64]]) -> Vec<Vec<Int>> {
        v.iter().map(|p| p.iter().map(|&x| Int::from(x)).collect()).collect()
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn oracle(n: usize, sup: Vec<Vec<Vec<Int>>>, spec: ProjectionSpec) -> Oracle {
        let f = SupportFamily::new(n, sup, &spec).unwrap();
        Oracle::new(build_cayley(&f).unwrap(), 5)
    }

    fn example4(spec: ProjectionSpec) -> Oracle {
        oracle(2, vec![pts(&[&[0, 0], &[1, 1]]), pts(&[&[0, 0], &[1, 2]]), pts(&[&[0, 0], &[2, 0]])], spec)
    }

    #[test]
    fn example4_implicit_is_a_segment() {
        let mut o = example4(ProjectionSpec::Implicit);
        let state = initialize(&mut o).unwrap();
        assert_eq!(state.hull().dim(), 1);
        assert_eq!(state.vertices(), vec![ints(&[0, 2, 1]), ints(&[4, 0, 0])]);
        let mut state = state;
        compute_pi(&mut o, &mut state).unwrap();
        assert_eq!(state.vertices(), vec![ints(&[0, 2, 1]), ints(&[4, 0, 0])]);
        assert_eq!(state.hull().affine_equations().len(), 2);
    }

    #[test]
    fn example3_triangle() {
        let mut o = oracle(
            2,
            vec![
                pts(&[&[0, 0], &[1, 0], &[0, 1]]),
                pts(&[&[2, 0], &[0, 2], &[0, 0]]),
                pts(&[&[1, 0], &[0, 1], &[0, 0]]),
            ],
            ProjectionSpec::UResultant,
        );
        let state = compute_pi_exact(&mut o).unwrap();
        assert_eq!(state.vertices(), vec![ints(&[0, 0, 2]), ints(&[0, 2, 0]), ints(&[2, 0, 0])]);
        let s = state.stats();
        assert!(s.calls_after_init() as usize <= 3 + state.hull().facet_planes().len());
    }

    #[test]
    fn binomials_give_a_segment() {
        let mut o = oracle(1, vec![pts(&[&[0], &[1]]), pts(&[&[0], &[2]])], ProjectionSpec::Full);
        let state = compute_pi_exact(&mut o).unwrap();
        assert_eq!(state.hull().dim(), 1);
        assert_eq!(state.vertices().len(), 2);
    }

    #[test]
    fn approximation_sandwich() {
        let mut o = oracle(
            1,
            vec![pts(&[&[0], &[1], &[2], &[4]]), pts(&[&[0], &[1], &[3]])],
            ProjectionSpec::Custom(vec![(0, 1), (0, 2), (1, 1)]),
        );
        let exact = compute_pi_exact(&mut o).unwrap();
        let mut o = oracle(
            1,
            vec![pts(&[&[0], &[1], &[2], &[4]]), pts(&[&[0], &[1], &[3]])],
            ProjectionSpec::Custom(vec![(0, 1), (0, 2), (1, 1)]),
        );
        let (state, outer, report) = compute_pi_approx(&mut o, &Rat::new(9.into(), 10.into())).unwrap();
        assert!(report.ratio >= report.threshold);
        for v in exact.hull().vertices() {
            assert!(outer.contains(&v));
        }
        for v in state.hull().vertices() {
            assert!(exact.hull().contains(&v));
        }
        let (_, _, full) = compute_pi_approx(&mut o, &rat(1)).unwrap();
        assert_eq!(full.ratio, rat(1));
    }

    #[test]
    fn random_directions_stay_inside() {
        let mut o = example4(ProjectionSpec::Full);
        let r = compute_pi_random(&mut o, 20, 9).unwrap();
        assert_eq!(r.oracle_calls, 20);
        for v in r.hull.vertices() {
            assert!(v.iter().all(|x| x.is_integer()));
        }
    }
}
