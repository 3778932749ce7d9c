use num_traits::Signed;
use proptest::prelude::*;

use respoly::exactlin::rational::{det, nullspace, primitive, rank};
use respoly::exactlin::{det_bareiss, Int, IntMatrix, MinorCache, Rat};
use respoly::geometry::{Hyperplane, TriangulatedHull};

fn to_rat(p: &[i64]) -> Vec<Rat> {
    p.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

fn point_sets(d: usize, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, d), d + 1..=max)
}

fn hull_of(d: usize, pts: &[Vec<i64>]) -> TriangulatedHull {
    TriangulatedHull::from_points(d, pts.iter().map(|p| to_rat(p)))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Facets of a full-dimensional point set: hyperplanes through `d` points
/// with all points on one side and a `(d-1)`-dimensional contact set.
fn brute_force_facets(d: usize, pts: &[Vec<Rat>]) -> Vec<Hyperplane> {
    let mut out = Vec::new();
    for s in subsets(pts.len(), d) {
        let diffs: Vec<Vec<Rat>> = s[1..]
            .iter()
            .map(|&i| pts[i].iter().zip(&pts[s[0]]).map(|(a, b)| a - b).collect())
            .collect();
        let ns = nullspace(&diffs, d);
        if ns.len() != 1 {
            continue;
        }
        let n = &ns[0];
        let dotp = |p: &[Rat]| -> Rat { n.iter().zip(p).map(|(a, b)| a * b).sum() };
        let off = dotp(&pts[s[0]]);
        let vals: Vec<Rat> = pts.iter().map(|p| dotp(p)).collect();
        let (normal, offset) = if vals.iter().all(|v| v <= &off) {
            (n.clone(), off)
        } else if vals.iter().all(|v| v >= &off) {
            (n.iter().map(|x| -x).collect(), -off)
        } else {
            continue;
        };
        out.push(Hyperplane::from_rational(&normal, &offset));
    }
    out.sort();
    out.dedup();
    out
}

fn simplex_volume(cell: &[Vec<Rat>]) -> Rat {
    let rows: Vec<Vec<Rat>> = cell[1..]
        .iter()
        .map(|p| p.iter().zip(&cell[0]).map(|(a, b)| a - b).collect())
        .collect();
    let k = rows.len();
    let fact: i64 = (1..=k as i64).product();
    det(rows).abs() / Rat::from_integer(Int::from(fact))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cached_minor_matches_elimination(
        k in 2usize..=6,
        entries in prop::collection::vec(-50i64..=50, 36),
        perm_seed in any::<u64>(),
    ) {
        let m = IntMatrix::new(k, k, entries[..k * k].iter().map(|&x| Int::from(x)).collect());
        let mut cols: Vec<usize> = (0..k).collect();
        // a fixed pseudo-random permutation; the minor picks up its sign
        let mut s = perm_seed;
        for i in (1..k).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            cols.swap(i, (s >> 33) as usize % (i + 1));
        }
        let permuted = IntMatrix::from_rows(
            &(0..k).map(|r| cols.iter().map(|&c| i64::try_from(m.get(r, c)).unwrap()).collect()).collect::<Vec<_>>(),
        );
        let mut cache = MinorCache::new();
        prop_assert_eq!(cache.minor(&m, &cols), det_bareiss(&permuted));
        prop_assert_eq!(MinorCache::disabled().minor(&m, &cols), det_bareiss(&permuted));
    }

    #[test]
    fn homogeneous_minor_matches_elimination(entries in prop::collection::vec(-9i64..=9, 15)) {
        let base = IntMatrix::new(3, 5, entries.iter().map(|&x| Int::from(x)).collect());
        let cols = [4usize, 0, 2, 1];
        let mut rows: Vec<Vec<i64>> = (0..3)
            .map(|r| cols.iter().map(|&c| entries[r * 5 + c]).collect())
            .collect();
        rows.push(vec![1; 4]);
        let expected = det_bareiss(&IntMatrix::from_rows(&rows));
        prop_assert_eq!(MinorCache::new().homogeneous_minor(&base, &cols), expected.clone());
        prop_assert_eq!(MinorCache::disabled().homogeneous_minor(&base, &cols), expected);
    }

    #[test]
    fn hull_facets_match_brute_force(d in 2usize..=3, pts in point_sets(3, 12)) {
        let pts: Vec<Vec<i64>> = pts.into_iter().map(|p| p[..d].to_vec()).collect();
        let h = hull_of(d, &pts);
        prop_assume!(h.is_full_dimensional());
        let rats: Vec<Vec<Rat>> = pts.iter().map(|p| to_rat(p)).collect();
        let got: Vec<Hyperplane> = h.facet_planes().iter().cloned().collect();
        prop_assert_eq!(got, brute_force_facets(d, &rats));
    }

    #[test]
    fn cells_add_up_to_volume(d in 1usize..=4, pts in point_sets(4, 10)) {
        let pts: Vec<Vec<i64>> = pts.into_iter().map(|p| p[..d].to_vec()).collect();
        let h = hull_of(d, &pts);
        prop_assume!(h.is_full_dimensional());
        let total: Rat = h.cells().iter().map(|c| simplex_volume(c)).sum();
        prop_assert_eq!(total, h.volume());
    }

    #[test]
    fn euler_relation(d in 1usize..=4, pts in point_sets(4, 10)) {
        let pts: Vec<Vec<i64>> = pts.into_iter().map(|p| p[..d].to_vec()).collect();
        let h = hull_of(d, &pts);
        let k = h.dim() as i64;
        prop_assume!(k >= 1);
        let alt: i64 = h
            .f_vector()
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum();
        prop_assert_eq!(alt, 1 - (-1i64).pow(k as u32));
    }

    #[test]
    fn clipping_never_grows(
        pts in point_sets(3, 10),
        normal in prop::collection::vec(-3i64..=3, 3),
        offset in -4i64..=4,
    ) {
        let h = hull_of(3, &pts);
        prop_assume!(h.is_full_dimensional() && normal.iter().any(|&x| x != 0));
        let cut = Hyperplane::from_rational(&to_rat(&normal), &Rat::from_integer(Int::from(offset)));
        if let Ok(c) = h.clip(&cut) {
            prop_assert!(c.volume() <= h.volume());
            for v in c.vertices() {
                prop_assert!(h.contains(&v));
                prop_assert!(cut.side(&v) != respoly::exactlin::Sign::Positive);
            }
        }
        for f in h.facet_planes() {
            let same = h.clip(f).unwrap();
            prop_assert_eq!(same.vertices(), h.vertices());
        }
    }

    #[test]
    fn lower_dimensional_hulls_keep_their_affine_hull(pts in point_sets(2, 8), lift in prop::collection::vec(-3i64..=3, 3)) {
        // embed planar points in R^3 on the plane z = lift . (x, y, 1)
        let emb: Vec<Vec<i64>> = pts.iter().map(|p| vec![p[0], p[1], lift[0] * p[0] + lift[1] * p[1] + lift[2]]).collect();
        let h = hull_of(3, &emb);
        let flat = hull_of(2, &pts);
        prop_assert_eq!(h.dim(), flat.dim());
        prop_assert_eq!(h.vertices().len(), flat.vertices().len());
        prop_assert_eq!(h.facet_planes().len(), flat.facet_planes().len());
        if flat.dim() == 2 {
            let eqs = h.affine_equations();
            prop_assert_eq!(eqs.len(), 1);
            let expected = primitive(&to_rat(&[lift[0], lift[1], -1]));
            let n = &eqs[0].normal;
            prop_assert!(*n == expected || n.iter().zip(&expected).all(|(a, b)| *a == -b));
            prop_assert_eq!(rank(h.directions()), 2);
        }
    }
}
