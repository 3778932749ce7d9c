//! The vertex oracle: given a direction in the projection space, returns the
//! projected vertex of the resultant polytope extremal in that direction.
//!
//! The direction lifts the symbolic Cayley columns. The upper faces of the
//! lifted point set form a regular subdivision; the oracle triangulates it by
//! placing, first the specialized columns (once per oracle, all at height 0)
//! and then the symbolic columns in a fresh random order. Mixed simplices of
//! the resulting triangulation give the extreme monomial exponent vector.

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cayley::CayleySystem;
use crate::error::{Error, Result};
use crate::exactlin::rational::primitive;
use crate::exactlin::{Int, MinorCache, Rat};
use crate::geometry::{lifted_placing, upper_simplices, Placing};

/// Nonzero integer direction with gcd 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Direction(Vec<Int>);

impl Direction {
    pub fn new(w: &[Rat]) -> Result<Direction> {
        if w.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("zero direction".into()));
        }
        Ok(Direction(primitive(w)))
    }

    pub fn from_ints(w: &[Int]) -> Result<Direction> {
        let r: Vec<Rat> = w.iter().map(|x| Rat::from_integer(x.clone())).collect();
        Direction::new(&r)
    }

    pub fn from_i64(w: &[i64]) -> Result<Direction> {
        Direction::from_ints(&w.iter().map(|&x| Int::from(x)).collect::<Vec<_>>())
    }

    /// `±e_i` in dimension `m`.
    pub fn axis(m: usize, i: usize, positive: bool) -> Direction {
        let mut w = vec![Int::zero(); m];
        w[i] = Int::from(if positive { 1 } else { -1 });
        Direction(w)
    }

    pub fn as_slice(&self) -> &[Int] {
        &self.0
    }

    pub fn negated(&self) -> Direction {
        Direction(self.0.iter().map(|x| -x).collect())
    }

    pub fn dot(&self, x: &[Rat]) -> Rat {
        self.0.iter().zip(x).map(|(a, b)| b * Rat::from_integer(a.clone())).sum()
    }
}

/// Lifting of all Cayley columns: `w_i` on the `i`-th symbolic column, zero
/// elsewhere.
pub fn lift_direction(sys: &CayleySystem, w: &Direction) -> Vec<Int> {
    assert_eq!(w.as_slice().len(), sys.m(), "direction length must equal the projection dimension");
    let mut lift = vec![Int::zero(); sys.len()];
    for (&c, x) in sys.symbolic_columns().iter().zip(w.as_slice()) {
        lift[c] = x.clone();
    }
    lift
}

/// For each simplex, `Some((i, a))` when it is `i`-mixed with `a` its only
/// column from support `i`, `None` otherwise.
pub fn mixed_cells(simplices: &[Vec<usize>], sys: &CayleySystem) -> Vec<Option<(usize, usize)>> {
    let blocks = sys.n() + 1;
    simplices
        .iter()
        .map(|s| {
            let mut count = vec![0usize; blocks];
            for &c in s {
                count[sys.block_of(c)] += 1;
            }
            let single: Vec<usize> = (0..blocks).filter(|&i| count[i] == 1).collect();
            if single.len() != 1 || (0..blocks).any(|i| i != single[0] && count[i] != 2) {
                return None;
            }
            let i = single[0];
            let a = *s.iter().find(|&&c| sys.block_of(c) == i).expect("one column");
            Some((i, a))
        })
        .collect()
}

/// Extreme monomial exponent: each mixed simplex adds its volume to its
/// single column from the distinguished support.
pub fn rho(simplices: &[Vec<usize>], sys: &CayleySystem, cache: &mut MinorCache) -> Vec<Int> {
    let mut out = vec![Int::zero(); sys.len()];
    for (s, mixed) in simplices.iter().zip(mixed_cells(simplices, sys)) {
        if let Some((_, a)) = mixed {
            out[a] += cache.volume(sys.base(), s);
        }
    }
    out
}

/// Secondary-polytope coordinates: each simplex adds its volume to all of
/// its columns.
pub fn phi(simplices: &[Vec<usize>], sys: &CayleySystem, cache: &mut MinorCache) -> Vec<Int> {
    let mut out = vec![Int::zero(); sys.len()];
    for s in simplices {
        let v = cache.volume(sys.base(), s);
        for &c in s {
            out[c] += &v;
        }
    }
    out
}

/// One oracle answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutput {
    /// Coordinates on the symbolic columns.
    pub point: Vec<Int>,
    /// Full vector over all Cayley columns.
    pub rho: Vec<Int>,
}

pub struct Oracle {
    sys: CayleySystem,
    cache: MinorCache,
    rng: ChaCha8Rng,
    specialized_order: Vec<usize>,
    /// Placing triangulation of the specialized columns, built on first use.
    base_triangulation: Option<Placing>,
    calls: u64,
}

impl Oracle {
    pub fn new(sys: CayleySystem, seed: u64) -> Oracle {
        Oracle::with_cache(sys, seed, MinorCache::new())
    }

    pub fn with_cache(sys: CayleySystem, seed: u64, cache: MinorCache) -> Oracle {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut specialized_order = sys.specialized_columns();
        specialized_order.shuffle(&mut rng);
        Oracle {
            sys,
            cache,
            rng,
            specialized_order,
            base_triangulation: None,
            calls: 0,
        }
    }

    pub fn system(&self) -> &CayleySystem {
        &self.sys
    }

    pub fn cache(&self) -> &MinorCache {
        &self.cache
    }

    pub fn cache_mut(&mut self) -> &mut MinorCache {
        &mut self.cache
    }

    /// Number of `vtx`/`vtx_secondary` calls so far.
    pub fn calls(&self) -> u64 {
        self.calls
    }

    /// Triangulation of the Cayley set refining the regular subdivision
    /// induced by `w`. Each simplex is a sorted list of `2n + 1` columns.
    pub fn triangulation(&mut self, w: &Direction) -> Result<Vec<Vec<usize>>> {
        self.cache.maintain();
        let lift = lift_direction(&self.sys, w);
        let base = self.sys.base();
        if self.base_triangulation.is_none() {
            let t = lifted_placing(base, &lift, &self.specialized_order, &mut self.cache, None);
            self.base_triangulation = Some(t);
        }
        let mut order = self.sys.symbolic_columns().to_vec();
        order.shuffle(&mut self.rng);
        let start = self.base_triangulation.clone();
        let t = lifted_placing(base, &lift, &order, &mut self.cache, start);
        upper_simplices(&t, base, &lift, &mut self.cache)
    }

    pub fn vtx(&mut self, w: &Direction) -> Result<OracleOutput> {
        self.calls += 1;
        let simplices = self.triangulation(w)?;
        let rho = rho(&simplices, &self.sys, &mut self.cache);
        debug_assert!(rho.iter().all(|x| !x.is_negative()));
        Ok(OracleOutput {
            point: self.sys.project(&rho),
            rho,
        })
    }

    /// Like [`Oracle::vtx`] but with secondary-polytope coordinates.
    pub fn vtx_secondary(&mut self, w: &Direction) -> Result<OracleOutput> {
        self.calls += 1;
        let simplices = self.triangulation(w)?;
        let phi = phi(&simplices, &self.sys, &mut self.cache);
        Ok(OracleOutput {
            point: self.sys.project(&phi),
            rho: phi,
        })
    }
}
