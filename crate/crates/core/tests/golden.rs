mod common;

use std::time::Instant;

use common::*;
use respoly::cayley::{unproject, ProjectionSpec};
use respoly::oracle::Oracle;
use respoly::reconstruct::compute_pi_exact;

#[test]
fn sylvester_vertices_and_lattice_points() {
    let mut o = Oracle::new(sylvester(), 1);
    let s = compute_pi_exact(&mut o).unwrap();
    assert_eq!(s.vertices(), int_rows(&[&[0, 2, 0, 1, 1], &[0, 0, 2, 2, 0], &[2, 0, 0, 0, 2]]));
    let lp = s.hull().lattice_points(10_000).unwrap();
    assert_eq!(lp.len(), 4);
    assert!(lp.contains(&ints(&[1, 0, 1, 1, 1])));
}

#[test]
fn u_resultant_triangle() {
    let mut o = Oracle::new(u_resultant(), 2);
    let s = compute_pi_exact(&mut o).unwrap();
    assert_eq!(s.vertices(), int_rows(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]));
    assert_eq!(s.hull().dim(), 2);
}

#[test]
fn three_binomials_full_and_implicit() {
    let mut o = Oracle::new(three_binomials(ProjectionSpec::Full), 3);
    let s = compute_pi_exact(&mut o).unwrap();
    assert_eq!(s.vertices(), int_rows(&[&[4, 0, 0, 2, 0, 1], &[0, 4, 2, 0, 1, 0]]));

    let sys = three_binomials(ProjectionSpec::Implicit);
    let mut o = Oracle::new(sys.clone(), 3);
    let s = compute_pi_exact(&mut o).unwrap();
    assert_eq!(s.vertices(), int_rows(&[&[4, 0, 0], &[0, 2, 1]]));
    let full = unproject(&sys, &s.vertices(), s.reference_rho().unwrap()).unwrap();
    assert_eq!(full, vec![ints(&[0, 4, 2, 0, 1, 0]), ints(&[4, 0, 0, 2, 0, 1])]);
}

#[test]
fn bicubic_implicit_vertices() {
    let start = Instant::now();
    let mut o = Oracle::new(bicubic(), 4);
    let s = compute_pi_exact(&mut o).unwrap();
    let took = start.elapsed();
    assert_eq!(
        s.vertices(),
        int_rows(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0], &[0, 0, 9], &[0, 18, 0], &[18, 0, 0]])
    );
    eprintln!("bicubic: {took:?}, {} oracle calls", s.stats().oracle_calls);
}

#[test]
fn vertices_do_not_depend_on_seed() {
    let reference = {
        let mut o = Oracle::new(bicubic(), 0);
        compute_pi_exact(&mut o).unwrap().vertices()
    };
    for seed in 1..4 {
        let mut o = Oracle::new(bicubic(), seed);
        assert_eq!(compute_pi_exact(&mut o).unwrap().vertices(), reference);
    }
}
