mod common;

use fusionscope::solver::{
    self, SolverConfig, SolverError, DEFAULT_NODE_LIMIT,
};
use fusionscope::su2;
use nalgebra::Complex;

#[test]
fn finite_entries_recover_their_character_tables() {
    let facts = common::groupfacts();
    for (name, fact) in &facts {
        let ring = common::disk_ring(name);
        let solutions = solver::solve_character_system(&ring, &SolverConfig::default()).unwrap();
        let columns = common::table_columns(fact);
        assert_eq!(solutions.len(), columns.len(), "{name}");
        for column in &columns {
            let hits = solutions
                .iter()
                .filter(|s| common::vector_distance(&s.values, column) < 1e-6)
                .count();
            assert_eq!(hits, 1, "{name}: a class column was not matched exactly once");
        }
    }
}

#[test]
fn fp_dimensions_match_irrep_degrees_and_solve_exactly() {
    let facts = common::groupfacts();
    for (name, fact) in &facts {
        let ring = common::disk_ring(name);
        let fp = solver::fp_dimensions(&ring);
        assert_eq!(fp.len(), fact.irrep_degrees.len());
        for (got, &want) in fp.iter().zip(&fact.irrep_degrees) {
            assert!((got - want as f64).abs() < 1e-9, "{name}: fp {fp:?}");
        }
        let as_complex: Vec<Complex<f64>> =
            fp.iter().map(|&d| Complex::new(d, 0.0)).collect();
        assert!(solver::verify_solution(&ring, &as_complex) < 1e-9, "{name}");
        let solutions = solver::solve_character_system(&ring, &SolverConfig::default()).unwrap();
        let hits = solutions
            .iter()
            .filter(|s| common::vector_distance(&s.values, &as_complex) < 1e-6)
            .count();
        assert_eq!(hits, 1, "{name}: fp dimensions missing from the solution set");
    }
}

#[test]
fn solving_is_deterministic_for_a_fixed_seed() {
    let ring = common::disk_ring("a4");
    let config = SolverConfig { seed: 424242, ..SolverConfig::default() };
    let first = solver::solve_character_system(&ring, &config).unwrap();
    let second = solver::solve_character_system(&ring, &config).unwrap();
    assert_eq!(first.len(), second.len());
    for (a, b) in first.iter().zip(&second) {
        assert_eq!(a.values, b.values);
        assert_eq!(a.residual, b.residual);
    }
    let other = SolverConfig { seed: 77, ..SolverConfig::default() };
    let third = solver::solve_character_system(&ring, &other).unwrap();
    assert_eq!(first.len(), third.len());
    for (a, b) in first.iter().zip(&third) {
        assert!(common::vector_distance(&a.values, &b.values) < 1e-9);
    }
}

#[test]
fn truncated_rings_return_only_candidates_within_tolerance() {
    let ring = su2::export_truncated_ring(10).unwrap();
    let config = SolverConfig::default();
    let solutions = solver::solve_character_system(&ring, &config).unwrap();
    for solution in &solutions {
        assert!(solution.residual <= config.tol);
        assert!(solver::verify_solution(&ring, &solution.values) <= config.tol);
    }
}

#[test]
fn integer_solutions_for_group_rings_are_the_degree_vectors() {
    let expectations: &[(&str, &[i64])] = &[
        ("q8", &[1, 1, 1, 1, 2]),
        ("s3", &[1, 1, 2]),
        ("a4", &[1, 1, 1, 3]),
        ("z6", &[1, 1, 1, 1, 1, 1]),
    ];
    for (name, degrees) in expectations {
        let ring = common::disk_ring(name);
        let found = solver::integer_positive_solutions(&ring, 10, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(found, vec![degrees.to_vec()], "{name}");
    }
}

#[test]
fn truncated_integer_solutions_include_the_true_dimensions() {
    let ring = su2::export_truncated_ring(3).unwrap();
    let found = solver::integer_positive_solutions(&ring, 12, DEFAULT_NODE_LIMIT).unwrap();
    assert!(
        found.contains(&vec![1, 2, 3, 4]),
        "true SU(2) dimensions missing from {found:?}"
    );
}

#[test]
fn bad_bounds_are_rejected() {
    let ring = common::disk_ring("s3");
    match solver::integer_positive_solutions(&ring, 0, DEFAULT_NODE_LIMIT) {
        Err(SolverError::BadBound { bound: 0 }) => {}
        other => panic!("expected a bad bound error, got {other:?}"),
    }
}

#[test]
fn truncated_fp_dimensions_satisfy_the_perron_formula() {
    let ring = su2::export_truncated_ring(2).unwrap();
    let fp = solver::fp_dimensions(&ring);
    let d = fp[1];
    assert!((fp[0] - 1.0).abs() < 1e-9);
    assert!((fp[2] - (d * d - 1.0)).abs() < 1e-6, "fp {fp:?}");
}
