mod common;

use clap::Parser;
use common::*;
use respoly::cayley::{build_cayley, preprocess, CayleySystem, ProjectionSpec};
use respoly::cli::{execute, Cli};
use respoly::exactlin::{Int, Rat};
use respoly::geometry::TriangulatedHull;
use respoly::oracle::{Direction, Oracle};
use respoly::reconstruct::compute_pi_exact;

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> respoly::cli::Outcome {
    let mut all = vec!["respoly"];
    all.extend_from_slice(args);
    execute(&Cli::try_parse_from(all).expect("valid arguments"))
}

fn rats(v: &[Int]) -> Vec<Rat> {
    v.iter().cloned().map(Rat::from_integer).collect()
}

fn vertices(sys: &CayleySystem) -> Vec<Vec<Int>> {
    compute_pi_exact(&mut Oracle::new(sys.clone(), 0)).unwrap().vertices()
}

#[test]
fn full_vertices_share_m_image() {
    for sys in [sylvester(), three_binomials(ProjectionSpec::Full)] {
        let vs = vertices(&sys);
        let first = sys.m_times(&vs[0]);
        for v in &vs[1..] {
            assert_eq!(sys.m_times(v), first);
        }
    }
}

#[test]
fn rebuilding_from_vertices_gives_same_facets() {
    let sys = bicubic();
    let s = compute_pi_exact(&mut Oracle::new(sys.clone(), 0)).unwrap();
    let again = TriangulatedHull::from_points(sys.m(), s.vertices().iter().map(|v| rats(v)));
    assert_eq!(again.facet_planes(), s.hull().facet_planes());
}

#[test]
fn preprocessing_keeps_the_polytope() {
    let raw = bicubic();
    let pre = build_cayley(&preprocess(raw.family())).unwrap();
    assert!(pre.len() < raw.len());
    assert_eq!(vertices(&pre), vertices(&raw));
}

#[test]
fn every_vertex_is_an_oracle_answer_inside_its_normal_cone() {
    let sys = bicubic();
    let s = compute_pi_exact(&mut Oracle::new(sys.clone(), 0)).unwrap();
    let mut o = Oracle::new(sys.clone(), 99);
    for v in s.vertices() {
        let x = rats(&v);
        let mut w = vec![Int::from(0); sys.m()];
        for h in s.hull().facet_planes().iter().filter(|h| h.contains(&x)) {
            for (a, b) in w.iter_mut().zip(&h.normal) {
                *a += b;
            }
        }
        assert_eq!(o.vtx(&Direction::from_ints(&w).unwrap()).unwrap().point, v);
    }
}

#[test]
fn cli_hash_flag_does_not_change_output() {
    let path = data("bicubic.txt");
    let a = cli(&["run", &path, "--f-vector"]);
    let b = cli(&["run", &path, "--f-vector", "--no-hash"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.contains("vertices 6"));
    assert!(a.stdout.contains("f-vector 6 9 5"));
}

#[test]
fn cli_preprocess_flag_does_not_change_vertices() {
    let path = data("bicubic.txt");
    let a = cli(&["run", &path, "--format", "json"]);
    let b = cli(&["run", &path, "--format", "json", "--no-preprocess"]);
    let va: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    let vb: serde_json::Value = serde_json::from_str(&b.stdout).unwrap();
    assert_eq!(va["vertices"], vb["vertices"]);
    assert_eq!(va["facets"], vb["facets"]);
    assert!(vb["removed"].as_array().unwrap().is_empty());
}

#[test]
fn cli_approx_and_random_modes() {
    let path = data("bicubic.txt");
    let approx = cli(&["run", &path, "--mode", "approx", "--threshold", "9/10", "--format", "json"]);
    assert_eq!(approx.code, 0, "{}", approx.stderr);
    let v: serde_json::Value = serde_json::from_str(&approx.stdout).unwrap();
    assert!(v["sandwich"].is_object());
    let random = cli(&["run", &path, "--mode", "random", "--directions", "50", "--seed", "3"]);
    assert_eq!(random.code, 0, "{}", random.stderr);
    assert_eq!(random.stdout, cli(&["run", &path, "--mode", "random", "--directions", "50", "--seed", "3"]).stdout);
}

#[test]
fn cli_unprojects_implicit_binomials() {
    let out = cli(&["run", &data("binomials.txt"), "--unproject"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("unprojected 2"));
    assert!(out.stdout.contains("  0 4 2 0 1 0"));
    assert!(out.stdout.contains("  4 0 0 2 0 1"));
}

#[test]
fn cli_error_codes() {
    let missing = cli(&["run", "/nonexistent/problem.txt"]);
    assert_eq!(missing.code, 1);
    assert!(missing.stderr.starts_with("error:"));

    let dir = std::env::temp_dir();
    let bad = dir.join("respoly_bad_input.txt");
    std::fs::write(&bad, "2\n0 0 ; x 1\n").unwrap();
    assert_eq!(cli(&["run", bad.to_str().unwrap()]).code, 2);

    // both supports on one line through the origin: not essential
    let flat = dir.join("respoly_flat_input.txt");
    std::fs::write(&flat, "2\n0 0 ; 1 0\n0 0 ; 2 0\n0 0 ; 3 0\n").unwrap();
    assert_eq!(cli(&["run", flat.to_str().unwrap()]).code, 3);
}

#[test]
fn cli_gen_output_runs() {
    let gen = cli(&["gen", "--n", "2", "--delta", "4", "--dense", "--sizes", "3", "--seed", "5", "--projection", "implicit"]);
    assert_eq!(gen.code, 0, "{}", gen.stderr);
    let out = respoly::cli::run(&Default::default(), &gen.stdout).unwrap();
    assert!(out.starts_with("mode exact"));
}
