#![allow(dead_code)]

use respoly::cayley::{build_cayley, CayleySystem, ProjectionSpec, SupportFamily};
use respoly::exactlin::Int;

pub fn pts(v: &[&[i64]]) -> Vec<Vec<Int>> {
    v.iter().map(|p| p.iter().map(|&x| Int::from(x)).collect()).collect()
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn int_rows(v: &[&[i64]]) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = v.iter().map(|r| ints(r)).collect();
    out.sort();
    out
}

pub fn system(n: usize, supports: Vec<Vec<Vec<Int>>>, spec: ProjectionSpec) -> CayleySystem {
    let f = SupportFamily::new(n, supports, &spec).expect("valid family");
    build_cayley(&f).expect("cayley system")
}

/// Quadratic and binomial in one variable, all coefficients symbolic.
pub fn sylvester() -> CayleySystem {
    system(1, vec![pts(&[&[2], &[1], &[0]]), pts(&[&[2], &[0]])], ProjectionSpec::Full)
}

/// Linear form with symbolic coefficients plus a conic and a line.
pub fn u_resultant() -> CayleySystem {
    system(
        2,
        vec![
            pts(&[&[0, 0], &[1, 0], &[0, 1]]),
            pts(&[&[2, 0], &[0, 2], &[0, 0]]),
            pts(&[&[1, 0], &[0, 1], &[0, 0]]),
        ],
        ProjectionSpec::UResultant,
    )
}

pub fn three_binomials(spec: ProjectionSpec) -> CayleySystem {
    system(
        2,
        vec![pts(&[&[0, 0], &[1, 1]]), pts(&[&[0, 0], &[1, 2]]), pts(&[&[0, 0], &[2, 0]])],
        spec,
    )
}

/// Bicubic surface parametrization, implicit projection.
pub fn bicubic() -> CayleySystem {
    system(
        2,
        vec![
            pts(&[&[0, 0], &[0, 1], &[1, 0], &[0, 2], &[2, 0], &[0, 3], &[3, 0]]),
            pts(&[&[0, 0], &[0, 1], &[1, 0], &[2, 0], &[0, 3], &[3, 0]]),
            pts(&[
                &[0, 0],
                &[0, 1],
                &[1, 0],
                &[0, 2],
                &[1, 1],
                &[2, 0],
                &[1, 2],
                &[2, 1],
                &[1, 3],
                &[2, 2],
                &[3, 1],
                &[2, 3],
                &[3, 2],
                &[3, 3],
            ]),
        ],
        ProjectionSpec::Implicit,
    )
}
