//! Input model: point supports, projections, the Cayley embedding and the
//! linear relations used to lift projected vertices back to full coordinates.

mod input;

pub use input::{parse_input, parse_json, parse_projection_spec, parse_text, ProblemInput};

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::rational::{int_to_rat, is_integral, rank, solve_unique};
use crate::exactlin::{Int, IntMatrix, Rat};
use crate::geometry::TriangulatedHull;

/// Which coefficients stay symbolic, i.e. which coordinates are projected on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionSpec {
    /// Every coefficient symbolic: the resultant polytope itself.
    #[default]
    Full,
    /// `A_0` is `{0, e_1, .., e_n}` and all of it is symbolic.
    UResultant,
    /// The origin of every support is symbolic.
    Implicit,
    /// Explicit `(block, point)` pairs.
    Custom(Vec<(usize, usize)>),
}

/// Supports `A_0 .. A_n` in `Z^n` with a symbolic flag per point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFamily {
    n: usize,
    supports: Vec<Vec<Vec<Int>>>,
    symbolic: Vec<Vec<bool>>,
    /// Index of each point in the family as it was first built.
    labels: Vec<Vec<usize>>,
}

impl SupportFamily {
    pub fn new(n: usize, supports: Vec<Vec<Vec<Int>>>, spec: &ProjectionSpec) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension n must be at least 1".into()));
        }
        if supports.len() != n + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} supports, found {}",
                n + 1,
                supports.len()
            )));
        }
        for (i, s) in supports.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidArgument(format!("support {i} is empty")));
            }
            if let Some(p) = s.iter().find(|p| p.len() != n) {
                return Err(Error::InvalidArgument(format!(
                    "support {i}: point of dimension {} in Z^{n}",
                    p.len()
                )));
            }
            let distinct: BTreeSet<&Vec<Int>> = s.iter().collect();
            if distinct.len() != s.len() {
                return Err(Error::InvalidArgument(format!("support {i} has a repeated point")));
            }
        }
        let symbolic = symbolic_flags(n, &supports, spec)?;
        let labels = supports.iter().map(|s| (0..s.len()).collect()).collect();
        Ok(SupportFamily {
            n,
            supports,
            symbolic,
            labels,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn supports(&self) -> &[Vec<Vec<Int>>] {
        &self.supports
    }

    pub fn symbolic(&self) -> &[Vec<bool>] {
        &self.symbolic
    }

    /// Original index of each remaining point within its support.
    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn total_points(&self) -> usize {
        self.supports.iter().map(Vec::len).sum()
    }

    pub fn symbolic_count(&self) -> usize {
        self.symbolic.iter().flatten().filter(|&&s| s).count()
    }
}

fn symbolic_flags(n: usize, supports: &[Vec<Vec<Int>>], spec: &ProjectionSpec) -> Result<Vec<Vec<bool>>> {
    let mut flags: Vec<Vec<bool>> = supports.iter().map(|s| vec![false; s.len()]).collect();
    match spec {
        ProjectionSpec::Full => flags.iter_mut().for_each(|f| f.fill(true)),
        ProjectionSpec::UResultant => {
            let mut simplex: BTreeSet<Vec<Int>> = BTreeSet::new();
            simplex.insert(vec![Int::zero(); n]);
            for i in 0..n {
                let mut e = vec![Int::zero(); n];
                e[i] = Int::one();
                simplex.insert(e);
            }
            let a0: BTreeSet<Vec<Int>> = supports[0].iter().cloned().collect();
            if a0 != simplex {
                return Err(Error::Projection(
                    "u-resultant mode needs A_0 = {0, e_1, .., e_n}".into(),
                ));
            }
            flags[0].fill(true);
        }
        ProjectionSpec::Implicit => {
            let origin = vec![Int::zero(); n];
            for (i, s) in supports.iter().enumerate() {
                let p = s.iter().position(|p| *p == origin).ok_or_else(|| {
                    Error::Projection(format!("implicit mode needs the origin in support {i}"))
                })?;
                flags[i][p] = true;
            }
        }
        ProjectionSpec::Custom(pairs) => {
            if pairs.is_empty() {
                return Err(Error::Projection("custom projection lists no points".into()));
            }
            for &(b, p) in pairs {
                if b >= supports.len() || p >= supports[b].len() {
                    return Err(Error::Projection(format!("no point {p} in support {b}")));
                }
                if flags[b][p] {
                    return Err(Error::Projection(format!("point {p} of support {b} listed twice")));
                }
                flags[b][p] = true;
            }
        }
    }
    Ok(flags)
}

/// Affine dimension of the Minkowski sum of the given supports.
fn minkowski_dim(f: &SupportFamily, blocks: &[usize]) -> usize {
    let mut edges: Vec<Vec<Rat>> = Vec::new();
    for &b in blocks {
        let s = &f.supports[b];
        for p in &s[1..] {
            edges.push(p.iter().zip(&s[0]).map(|(x, y)| int_to_rat(&(x - y))).collect());
        }
    }
    if edges.is_empty() {
        0
    } else {
        rank(&edges)
    }
}

/// Checks that the Minkowski sum of all supports is `n`-dimensional and that
/// every `j` of them (`1 <= j <= n`) have a Minkowski sum of dimension at
/// least `j`. The first violation by size, then lexicographically, is
/// reported.
pub fn check_essential(f: &SupportFamily) -> Result<()> {
    let n = f.n;
    let blocks = n + 1;
    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << blocks))
        .map(|mask| (0..blocks).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    for s in subsets {
        let needed = s.len().min(n);
        let dim = minkowski_dim(f, &s);
        if dim < needed {
            return Err(Error::NotEssential {
                subset: s,
                dim,
                needed,
            });
        }
    }
    Ok(())
}

/// Drops specialized points lying in the convex hull of the other
/// specialized points of the same support, until none is left. Such points
/// do not change the projected polytope.
pub fn preprocess(f: &SupportFamily) -> SupportFamily {
    let mut out = f.clone();
    for b in 0..out.supports.len() {
        loop {
            let fixed: Vec<usize> = (0..out.supports[b].len()).filter(|&j| !out.symbolic[b][j]).collect();
            let removable = fixed.iter().copied().find(|&j| {
                let others = fixed
                    .iter()
                    .filter(|&&k| k != j)
                    .map(|&k| out.supports[b][k].iter().map(int_to_rat).collect::<Vec<_>>());
                let hull = TriangulatedHull::from_points(out.n, others);
                let p: Vec<Rat> = out.supports[b][j].iter().map(int_to_rat).collect();
                !hull.is_empty() && hull.contains(&p)
            });
            let Some(j) = removable else { break };
            out.supports[b].remove(j);
            out.symbolic[b].remove(j);
            out.labels[b].remove(j);
        }
    }
    out
}

/// The Cayley point set of a support family together with its projection.
#[derive(Debug, Clone)]
pub struct CayleySystem {
    family: SupportFamily,
    block_of: Vec<usize>,
    /// Projection coordinates: symbolic columns in column order.
    symbolic: Vec<usize>,
    base: IntMatrix,
    m_matrix: IntMatrix,
}

/// Cayley embedding: point `a` of support `i` becomes `(a, e_i)` in `Z^{2n}`
/// with `e_0 = 0`. Columns are in support order, then input order.
pub fn build_cayley(f: &SupportFamily) -> Result<CayleySystem> {
    let n = f.n;
    let mut block_of = Vec::new();
    let mut symbolic = Vec::new();
    let mut cols: Vec<Vec<Int>> = Vec::new();
    for (i, s) in f.supports.iter().enumerate() {
        for (j, p) in s.iter().enumerate() {
            if f.symbolic[i][j] {
                symbolic.push(cols.len());
            }
            block_of.push(i);
            cols.push(p.clone());
        }
    }
    if symbolic.is_empty() {
        return Err(Error::Projection("no symbolic coefficients".into()));
    }
    let total = cols.len();
    let mut base = Vec::with_capacity(2 * n * total);
    let mut mm = Vec::with_capacity((2 * n + 1) * total);
    for r in 0..n {
        for c in &cols {
            base.push(c[r].clone());
            mm.push(c[r].clone());
        }
    }
    for r in 1..=n {
        for &b in &block_of {
            base.push(Int::from(u8::from(b == r)));
        }
    }
    for r in 0..=n {
        for &b in &block_of {
            mm.push(Int::from(u8::from(b == r)));
        }
    }
    Ok(CayleySystem {
        family: f.clone(),
        block_of,
        symbolic,
        base: IntMatrix::new(2 * n, total, base),
        m_matrix: IntMatrix::new(2 * n + 1, total, mm),
    })
}

impl CayleySystem {
    pub fn n(&self) -> usize {
        self.family.n
    }

    pub fn family(&self) -> &SupportFamily {
        &self.family
    }

    /// Number of Cayley points `|A|`.
    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    /// Dimension of the projection space.
    pub fn m(&self) -> usize {
        self.symbolic.len()
    }

    pub fn block_of(&self, col: usize) -> usize {
        self.block_of[col]
    }

    pub fn blocks(&self) -> &[usize] {
        &self.block_of
    }

    pub fn symbolic_columns(&self) -> &[usize] {
        &self.symbolic
    }

    pub fn specialized_columns(&self) -> Vec<usize> {
        (0..self.len()).filter(|c| !self.symbolic.contains(c)).collect()
    }

    /// Cayley coordinates, one column per point (`2n` rows).
    pub fn base(&self) -> &IntMatrix {
        &self.base
    }

    /// Point coordinates stacked on the support indicator rows
    /// (`2n + 1` rows). `M ρ` is the same for every vertex `ρ`.
    pub fn m_matrix(&self) -> &IntMatrix {
        &self.m_matrix
    }

    /// `(support, original point index)` for each column.
    pub fn column_label(&self, col: usize) -> (usize, usize) {
        let b = self.block_of[col];
        let first = self.block_of.iter().position(|&x| x == b).expect("block present");
        (b, self.family.labels[b][col - first])
    }

    /// Dimension of the full resultant polytope, `|A| - 2n - 1`.
    pub fn resultant_dim(&self) -> isize {
        self.len() as isize - 2 * self.n() as isize - 1
    }

    /// Coordinates of `rho` on the symbolic columns.
    pub fn project(&self, rho: &[Int]) -> Vec<Int> {
        self.symbolic.iter().map(|&c| rho[c].clone()).collect()
    }

    pub fn m_times(&self, rho: &[Int]) -> Vec<Int> {
        (0..self.m_matrix.rows())
            .map(|r| self.m_matrix.row(r).iter().zip(rho).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Recovers full coordinates of projected vertices from `M ρ = M ρ_ref`.
/// Requires the specialized columns of `M` to be linearly independent.
pub fn unproject(sys: &CayleySystem, projected: &[Vec<Int>], rho_ref: &[Int]) -> Result<Vec<Vec<Int>>> {
    let spec = sys.specialized_columns();
    let mm = sys.m_matrix();
    let rows = mm.rows();
    let spec_m: Vec<Vec<Rat>> = (0..rows)
        .map(|r| spec.iter().map(|&c| int_to_rat(mm.get(r, c))).collect())
        .collect();
    if !spec.is_empty() && rank(&spec_m) < spec.len() {
        return Err(Error::SingularM1);
    }
    let constants = sys.m_times(rho_ref);
    projected
        .iter()
        .map(|b| {
            let mut full = vec![Int::zero(); sys.len()];
            for (&c, x) in sys.symbolic_columns().iter().zip(b) {
                full[c] = x.clone();
            }
            if spec.is_empty() {
                return Ok(full);
            }
            let rhs: Vec<Rat> = (0..rows)
                .map(|r| {
                    let sym: Int = sys.symbolic_columns().iter().zip(b).map(|(&c, x)| mm.get(r, c) * x).sum();
                    int_to_rat(&(&constants[r] - sym))
                })
                .collect();
            let x = solve_unique(&spec_m, &rhs)
                .ok_or_else(|| Error::DegenerateInput("projected point has no preimage".into()))?;
            if !is_integral(&x) {
                return Err(Error::DegenerateInput("non-integral preimage".into()));
            }
            for (&c, v) in spec.iter().zip(&x) {
                full[c] = v.to_integer();
            }
            Ok(full)
        })
        .collect()
}
