//! Random support families.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cayley::{check_essential, ProblemInput, ProjectionSpec, SupportFamily};
use crate::error::{Error, Result};
use crate::exactlin::Int;

const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub delta: u32,
    /// Points from the `delta`-simplex when true, from the `delta/2`-cube
    /// otherwise.
    pub dense: bool,
    /// Points per support, the origin included.
    pub sizes: Vec<usize>,
    pub projection: ProjectionSpec,
}

/// Lattice points `x >= 0` with `sum(x) <= delta` (dense) or `x_i <= delta/2`
/// (sparse), origin first.
fn candidates(n: usize, delta: u32, dense: bool) -> Vec<Vec<i64>> {
    let bound = if dense { delta as i64 } else { (delta / 2) as i64 };
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    loop {
        if !dense || cur.iter().sum::<i64>() <= bound {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if cur[i] < bound {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Random family with the origin as first point of every support,
/// resampled until it is essential.
pub fn gen_random(params: &GenParams, seed: u64) -> Result<ProblemInput> {
    let n = params.n;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if params.sizes.len() != n + 1 {
        return Err(Error::InvalidArgument(format!("need {} sizes, got {}", n + 1, params.sizes.len())));
    }
    let pool = candidates(n, params.delta, params.dense);
    if let Some(&s) = params.sizes.iter().find(|&&s| s == 0 || s > pool.len()) {
        return Err(Error::InvalidArgument(format!(
            "support size {s} not in 1..={} for this lattice",
            pool.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let supports: Vec<Vec<Vec<Int>>> = params
            .sizes
            .iter()
            .map(|&s| {
                let mut rest = pool[1..].to_vec();
                rest.shuffle(&mut rng);
                std::iter::once(pool[0].clone())
                    .chain(rest.into_iter().take(s - 1))
                    .map(|p| p.into_iter().map(Int::from).collect())
                    .collect()
            })
            .collect();
        let family = SupportFamily::new(n, supports.clone(), &params.projection)?;
        if check_essential(&family).is_ok() {
            return Ok(ProblemInput {
                n,
                supports,
                projection: params.projection.clone(),
            });
        }
    }
    Err(Error::InvalidArgument("no essential family found for these parameters".into()))
}
