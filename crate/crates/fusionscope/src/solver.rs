//! Numeric and integer solutions of the character equations.
//!
//! A column of a finite group's character table, evaluated against the
//! fusion rules, satisfies `alpha_p * alpha_q = sum_r N^r_{p,q} alpha_r`.
//! Any solution vector of that system is a simultaneous eigenvector of the
//! transposed fusion matrices: writing `(M_p)_{r,q} = N^r_{p,q}`, the
//! system says exactly `M_p^T alpha = alpha_p alpha`, and conversely the
//! unit law forces every simultaneous eigenvector `v` to have
//! `v_p = lambda_p v_unit` with `v_unit != 0`, so normalizing the unit
//! component to one turns it into a solution. The solver therefore
//! diagonalizes a single random real combination of the transposed
//! matrices, reads each eigenvector off as a candidate solution, and
//! measures the residual of the full system.

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ring::FusionRing;

/// Default RNG seed for the random matrix combination.
pub const DEFAULT_SEED: u64 = 17;

/// Default residual tolerance accepted by the solver.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default cap on backtracking nodes in the integer search.
pub const DEFAULT_NODE_LIMIT: u64 = 2_000_000;

/// Failures of the numeric or integer solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("unit fusion matrix is not the identity; tensor is inconsistent")]
    UnitMatrixNotIdentity,
    #[error("fusion matrices {p} and {q} do not commute; tensor is inconsistent")]
    CommutationFailure { p: usize, q: usize },
    #[error("combination matrix spectrum stayed degenerate after {attempts} attempts")]
    DegenerateSpectrum { attempts: u32 },
    #[error("solver residual {residual:e} exceeds tolerance {tol:e}")]
    ConvergenceFailure { residual: f64, tol: f64 },
    #[error("integer search exceeded the node limit of {limit}")]
    ResourceLimit { limit: u64 },
    #[error("search bound must be at least 1, got {bound}")]
    BadBound { bound: i64 },
}

/// The left-multiplication matrices of a ring, kept in exact integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionMatrixSet {
    matrices: Vec<DMatrix<i64>>,
    truncated: bool,
}

impl FusionMatrixSet {
    /// Matrix of multiplication by basis element `p`, `(M_p)_{r,q} = N^r_{p,q}`.
    pub fn matrix(&self, p: usize) -> &DMatrix<i64> {
        &self.matrices[p]
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Whether rows beyond the truncation bound were zero-filled.
    pub fn truncated(&self) -> bool {
        self.truncated
    }
}

/// Builds the fusion matrices and cross-checks their algebra.
///
/// On a complete ring the matrices of a commutative associative tensor
/// must commute pairwise and the unit matrix must be the identity; both
/// are verified in integer arithmetic. A truncated ring zero-fills the
/// untrusted entries, which breaks those identities, so there the checks
/// are skipped and the set is only as good as its trusted rows.
pub fn fusion_matrices(ring: &FusionRing) -> Result<FusionMatrixSet, SolverError> {
    let rank = ring.rank();
    let mut matrices = Vec::with_capacity(rank);
    for p in 0..rank {
        let mut m = DMatrix::<i64>::zeros(rank, rank);
        for q in 0..rank {
            if !ring.pair_complete(p, q) {
                continue;
            }
            for &(r, value) in ring.product_support(p, q) {
                m[(r, q)] = value;
            }
        }
        matrices.push(m);
    }
    let truncated = ring.is_truncated();
    if !truncated {
        let identity = DMatrix::<i64>::identity(rank, rank);
        if matrices[ring.unit()] != identity {
            return Err(SolverError::UnitMatrixNotIdentity);
        }
        for p in 0..rank {
            for q in p + 1..rank {
                let pq = integer_product(&matrices[p], &matrices[q]);
                let qp = integer_product(&matrices[q], &matrices[p]);
                if pq != qp {
                    return Err(SolverError::CommutationFailure { p, q });
                }
            }
        }
    }
    Ok(FusionMatrixSet { matrices, truncated })
}

fn integer_product(a: &DMatrix<i64>, b: &DMatrix<i64>) -> DMatrix<i128> {
    let n = a.nrows();
    let mut out = DMatrix::<i128>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0i128;
            for k in 0..n {
                acc += i128::from(a[(i, k)]) * i128::from(b[(k, j)]);
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Eigenvalues of a real matrix, computed through a generic similarity.
///
/// The QR iteration behind `complex_eigenvalues` can stall on highly
/// structured inputs; an exact permutation matrix, which is what the
/// fusion matrix of an abelian ring is, can keep it from ever converging.
/// Conjugating by a fixed, well-conditioned random matrix leaves the
/// spectrum untouched while making the input generic, at a negligible
/// accuracy cost.
fn robust_complex_eigenvalues(matrix: &DMatrix<f64>) -> DVector<Complex<f64>> {
    let n = matrix.nrows();
    if n == 1 {
        return DVector::from_element(1, Complex::new(matrix[(0, 0)], 0.0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
    let perturbation = DMatrix::<f64>::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    let similarity = DMatrix::<f64>::identity(n, n) + perturbation * (0.5 / n as f64);
    let lu = similarity.clone().lu();
    let conjugated = lu
        .solve(&(matrix * similarity))
        .expect("similarity is a small perturbation of the identity");
    conjugated.complex_eigenvalues()
}

/// One solution of the character system with its measured residual.
#[derive(Debug, Clone)]
pub struct CharacterSolution {
    pub values: Vec<Complex<f64>>,
    pub residual: f64,
}

/// Tuning knobs for [`solve_character_system`].
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub seed: u64,
    pub tol: f64,
    pub max_retries: u32,
    pub polish: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            seed: DEFAULT_SEED,
            tol: DEFAULT_TOL,
            max_retries: 5,
            polish: true,
        }
    }
}

/// Solves the character system by simultaneous diagonalization.
///
/// A random real combination of the transposed fusion matrices is
/// diagonalized; when its spectrum has a clean gap structure each
/// eigenvector is refined by shifted inverse iteration, normalized at the
/// unit component, and optionally polished by a few Gauss-Newton steps on
/// the trusted equations. Degenerate combinations are retried with fresh
/// coefficients. A complete ring must yield exactly `rank` solutions
/// within tolerance; a truncated ring returns whichever candidates meet
/// the tolerance on its trusted equations, deduplicated, possibly none.
pub fn solve_character_system(
    ring: &FusionRing,
    config: &SolverConfig,
) -> Result<Vec<CharacterSolution>, SolverError> {
    let set = fusion_matrices(ring)?;
    let rank = ring.rank();
    let transposed: Vec<DMatrix<f64>> = (0..rank)
        .map(|p| set.matrix(p).map(|v| v as f64).transpose())
        .collect();

    let mut attempts = 0;
    let mut last_failure = SolverError::DegenerateSpectrum { attempts: 0 };
    while attempts <= config.max_retries {
        let stream = config.seed.wrapping_add(u64::from(attempts).wrapping_mul(0x9E3779B97F4A7C15));
        let mut rng = ChaCha8Rng::seed_from_u64(stream);
        let mut combo = DMatrix::<f64>::zeros(rank, rank);
        for matrix in &transposed {
            let c: f64 = rng.random_range(-1.0..1.0);
            combo += matrix * c;
        }
        attempts += 1;
        match candidates_from_combination(&combo, ring, &mut rng, config) {
            Ok(mut solutions) => {
                if ring.is_truncated() {
                    solutions.retain(|s| s.residual <= config.tol);
                    dedup_solutions(&mut solutions);
                    sort_solutions(&mut solutions);
                    return Ok(solutions);
                }
                let worst = solutions
                    .iter()
                    .map(|s| s.residual)
                    .fold(0.0f64, f64::max);
                if worst <= config.tol {
                    sort_solutions(&mut solutions);
                    return Ok(solutions);
                }
                last_failure = SolverError::ConvergenceFailure { residual: worst, tol: config.tol };
            }
            Err(failure) => last_failure = failure,
        }
    }
    Err(last_failure)
}

/// Extracts one candidate solution per eigenvalue of the combination.
fn candidates_from_combination(
    combo: &DMatrix<f64>,
    ring: &FusionRing,
    rng: &mut ChaCha8Rng,
    config: &SolverConfig,
) -> Result<Vec<CharacterSolution>, SolverError> {
    let rank = ring.rank();
    let eigenvalues = robust_complex_eigenvalues(combo);
    let scale = eigenvalues
        .iter()
        .map(|l| l.norm())
        .fold(1.0f64, f64::max);
    for i in 0..rank {
        for j in i + 1..rank {
            if (eigenvalues[i] - eigenvalues[j]).norm() < 1e-7 * scale {
                return Err(SolverError::DegenerateSpectrum { attempts: 1 });
            }
        }
    }
    let complex_combo = combo.map(|v| Complex::new(v, 0.0));
    let mut solutions = Vec::with_capacity(rank);
    for k in 0..rank {
        let vector = eigenvector_for(&complex_combo, eigenvalues[k], scale, rng)
            .ok_or(SolverError::DegenerateSpectrum { attempts: 1 })?;
        let unit_component = vector[ring.unit()];
        if unit_component.norm() < 1e-8 {
            return Err(SolverError::DegenerateSpectrum { attempts: 1 });
        }
        let mut values: Vec<Complex<f64>> =
            vector.iter().map(|v| v / unit_component).collect();
        if config.polish {
            let polished = gauss_newton_polish(ring, &values);
            if verify_solution(ring, &polished) < verify_solution(ring, &values) {
                values = polished;
            }
        }
        let residual = verify_solution(ring, &values);
        solutions.push(CharacterSolution { values, residual });
    }
    Ok(solutions)
}

/// Shifted inverse iteration for the eigenvector of an isolated eigenvalue.
fn eigenvector_for(
    matrix: &DMatrix<Complex<f64>>,
    eigenvalue: Complex<f64>,
    scale: f64,
    rng: &mut ChaCha8Rng,
) -> Option<DVector<Complex<f64>>> {
    let n = matrix.nrows();
    let mut jitter = 1e-11 * scale;
    for _ in 0..4 {
        let shift = eigenvalue + Complex::new(jitter, -0.5 * jitter);
        let shifted = matrix - DMatrix::<Complex<f64>>::identity(n, n) * shift;
        let lu = shifted.lu();
        let start = DVector::<Complex<f64>>::from_fn(n, |_, _| {
            Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        if let Some(once) = lu.solve(&start) {
            let once = once.scale(1.0 / once.norm());
            if let Some(twice) = lu.solve(&once) {
                return Some(twice.scale(1.0 / twice.norm()));
            }
        }
        // Exactly singular shift: back the jitter off by a decade.
        jitter *= 10.0;
    }
    None
}

/// A few Gauss-Newton steps on the trusted equations, unit pinned at one.
fn gauss_newton_polish(ring: &FusionRing, values: &[Complex<f64>]) -> Vec<Complex<f64>> {
    let rank = ring.rank();
    let unit = ring.unit();
    let unknowns: Vec<usize> = (0..rank).filter(|&p| p != unit).collect();
    if unknowns.is_empty() {
        return values.to_vec();
    }
    let pairs = ring.trusted_pairs();
    let mut current = values.to_vec();
    current[unit] = Complex::new(1.0, 0.0);
    for _ in 0..3 {
        let mut residual = DVector::<Complex<f64>>::zeros(pairs.len());
        let mut jacobian = DMatrix::<Complex<f64>>::zeros(pairs.len(), unknowns.len());
        for (row, &(p, q)) in pairs.iter().enumerate() {
            let mut f = current[p] * current[q];
            for &(r, m) in ring.product_support(p, q) {
                f -= Complex::new(m as f64, 0.0) * current[r];
            }
            residual[row] = f;
            for (col, &s) in unknowns.iter().enumerate() {
                let mut d = Complex::new(0.0, 0.0);
                if s == p {
                    d += current[q];
                }
                if s == q {
                    d += current[p];
                }
                d -= Complex::new(ring.multiplicity(p, q, s) as f64, 0.0);
                jacobian[(row, col)] = d;
            }
        }
        let svd = jacobian.svd(true, true);
        let Ok(step) = svd.solve(&residual, 1e-13) else {
            break;
        };
        for (col, &s) in unknowns.iter().enumerate() {
            current[s] -= step[col];
        }
    }
    current
}

/// Largest violation of the character equations over trusted pairs.
pub fn verify_solution(ring: &FusionRing, values: &[Complex<f64>]) -> f64 {
    let mut worst = 0.0f64;
    for (p, q) in ring.trusted_pairs() {
        let mut defect = values[p] * values[q];
        for &(r, m) in ring.product_support(p, q) {
            defect -= Complex::new(m as f64, 0.0) * values[r];
        }
        worst = worst.max(defect.norm());
    }
    worst
}

fn rounded_key(values: &[Complex<f64>]) -> Vec<(i64, i64)> {
    values
        .iter()
        .map(|v| ((v.re * 1e6).round() as i64, (v.im * 1e6).round() as i64))
        .collect()
}

fn sort_solutions(solutions: &mut [CharacterSolution]) {
    solutions.sort_by(|a, b| rounded_key(&a.values).cmp(&rounded_key(&b.values)));
}

fn dedup_solutions(solutions: &mut Vec<CharacterSolution>) {
    let mut seen = Vec::new();
    solutions.retain(|s| {
        let key = rounded_key(&s.values);
        if seen.contains(&key) {
            false
        } else {
            seen.push(key);
            true
        }
    });
}

/// All solutions of the character system in positive integers up to `bound`.
///
/// Depth-first search assigning the unit first (pinned at one) and the
/// remaining indices in order. Each partial assignment is pruned through
/// every trusted equation whose left side is known: the unassigned part of
/// the right side is bracketed by giving each missing constituent the
/// value 1 or `bound`. The node budget caps assignments tried; exceeding
/// it reports a resource error rather than a wrong answer.
pub fn integer_positive_solutions(
    ring: &FusionRing,
    bound: i64,
    node_limit: u64,
) -> Result<Vec<Vec<i64>>, SolverError> {
    if bound < 1 {
        return Err(SolverError::BadBound { bound });
    }
    let rank = ring.rank();
    let unit = ring.unit();
    let mut order = vec![unit];
    order.extend((0..rank).filter(|&p| p != unit));
    let pairs = ring.trusted_pairs();
    let mut values = vec![0i64; rank];
    let mut assigned = vec![false; rank];
    let mut nodes = 0u64;
    let mut found = Vec::new();
    search(
        ring,
        &pairs,
        &order,
        0,
        bound,
        node_limit,
        &mut values,
        &mut assigned,
        &mut nodes,
        &mut found,
    )?;
    found.sort();
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search(
    ring: &FusionRing,
    pairs: &[(usize, usize)],
    order: &[usize],
    depth: usize,
    bound: i64,
    node_limit: u64,
    values: &mut Vec<i64>,
    assigned: &mut Vec<bool>,
    nodes: &mut u64,
    found: &mut Vec<Vec<i64>>,
) -> Result<(), SolverError> {
    if depth == order.len() {
        found.push(values.clone());
        return Ok(());
    }
    let index = order[depth];
    let range: Vec<i64> = if index == ring.unit() {
        vec![1]
    } else {
        (1..=bound).collect()
    };
    for value in range {
        *nodes += 1;
        if *nodes > node_limit {
            return Err(SolverError::ResourceLimit { limit: node_limit });
        }
        values[index] = value;
        assigned[index] = true;
        if partial_feasible(ring, pairs, values, assigned, bound) {
            search(
                ring, pairs, order, depth + 1, bound, node_limit, values, assigned, nodes,
                found,
            )?;
        }
        assigned[index] = false;
        values[index] = 0;
    }
    Ok(())
}

fn partial_feasible(
    ring: &FusionRing,
    pairs: &[(usize, usize)],
    values: &[i64],
    assigned: &[bool],
    bound: i64,
) -> bool {
    for &(p, q) in pairs {
        if !assigned[p] || !assigned[q] {
            continue;
        }
        let mut left = i128::from(values[p]) * i128::from(values[q]);
        let mut min_rest = 0i128;
        let mut max_rest = 0i128;
        for &(r, m) in ring.product_support(p, q) {
            if assigned[r] {
                left -= i128::from(m) * i128::from(values[r]);
            } else {
                min_rest += i128::from(m);
                max_rest += i128::from(m) * i128::from(bound);
            }
        }
        if left < min_rest || left > max_rest {
            return false;
        }
    }
    true
}

/// Frobenius-Perron dimension of each basis element.
///
/// The spectral radius of a nonnegative matrix is itself an eigenvalue, so
/// the largest real part over the complex eigenvalues of `M_p` is exactly
/// the growth rate of powers of `p`. For the representation ring of a
/// compact group this recovers the ordinary dimension of the irreducible
/// representation. On truncated rings the zero-filled high rows drag the
/// values of high basis elements toward zero; those entries are artifacts
/// of the truncation, not dimensions.
pub fn fp_dimensions(ring: &FusionRing) -> Vec<f64> {
    let rank = ring.rank();
    (0..rank)
        .map(|p| {
            let mut m = DMatrix::<f64>::zeros(rank, rank);
            for q in 0..rank {
                if !ring.pair_complete(p, q) {
                    continue;
                }
                for &(r, value) in ring.product_support(p, q) {
                    m[(r, q)] = value as f64;
                }
            }
            robust_complex_eigenvalues(&m)
                .iter()
                .map(|l| l.re)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn cyclic_ring(n: usize) -> Arc<FusionRing> {
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        let dual = (0..n).map(|i| (n - i) % n).collect();
        let mut entries = Vec::new();
        for p in 0..n {
            for q in p..n {
                entries.push((p, q, (p + q) % n, 1));
            }
        }
        Arc::new(FusionRing::new(format!("z{n}"), labels, 0, dual, &entries, None).unwrap())
    }

    fn s3_ring() -> Arc<FusionRing> {
        Arc::new(
            FusionRing::new(
                "s3",
                vec!["triv".into(), "sgn".into(), "std".into()],
                0,
                vec![0, 1, 2],
                &[
                    (0, 0, 0, 1),
                    (0, 1, 1, 1),
                    (0, 2, 2, 1),
                    (1, 1, 0, 1),
                    (1, 2, 2, 1),
                    (2, 2, 0, 1),
                    (2, 2, 1, 1),
                    (2, 2, 2, 1),
                ],
                None,
            )
            .unwrap(),
        )
    }

    fn close_to(a: &[Complex<f64>], b: &[(f64, f64)], tol: f64) -> bool {
        a.len() == b.len()
            && a.iter()
                .zip(b)
                .all(|(x, &(re, im))| (x - Complex::new(re, im)).norm() < tol)
    }

    #[test]
    fn unit_matrix_must_be_identity() {
        let ring = s3_ring();
        let set = fusion_matrices(&ring).unwrap();
        assert_eq!(set.matrix(0), &DMatrix::<i64>::identity(3, 3));
    }

    #[test]
    fn matrices_of_broken_tensor_fail_commutation() {
        // x*y = x passes units and duality but is not associative.
        let ring = FusionRing::new(
            "bad",
            vec!["e".into(), "x".into(), "y".into()],
            0,
            vec![0, 1, 2],
            &[
                (0, 0, 0, 1),
                (0, 1, 1, 1),
                (0, 2, 2, 1),
                (1, 1, 0, 1),
                (1, 2, 1, 1),
                (2, 2, 0, 1),
            ],
            None,
        )
        .unwrap();
        let err = fusion_matrices(&ring).unwrap_err();
        assert!(matches!(err, SolverError::CommutationFailure { .. }));
    }

    #[test]
    fn z2_characters_are_the_sign_table() {
        let ring = cyclic_ring(2);
        let solutions = solve_character_system(&ring, &SolverConfig::default()).unwrap();
        assert_eq!(solutions.len(), 2);
        assert!(solutions.iter().all(|s| s.residual < 1e-9));
        assert!(solutions
            .iter()
            .any(|s| close_to(&s.values, &[(1.0, 0.0), (-1.0, 0.0)], 1e-6)));
        assert!(solutions
            .iter()
            .any(|s| close_to(&s.values, &[(1.0, 0.0), (1.0, 0.0)], 1e-6)));
    }

    #[test]
    fn z3_characters_are_cube_roots() {
        let ring = cyclic_ring(3);
        let solutions = solve_character_system(&ring, &SolverConfig::default()).unwrap();
        assert_eq!(solutions.len(), 3);
        let third = 2.0 * std::f64::consts::PI / 3.0;
        assert!(solutions.iter().any(|s| close_to(
            &s.values,
            &[(1.0, 0.0), (third.cos(), third.sin()), (third.cos(), -third.sin())],
            1e-6
        )));
    }

    #[test]
    fn s3_solutions_match_character_columns() {
        let ring = s3_ring();
        let solutions = solve_character_system(&ring, &SolverConfig::default()).unwrap();
        assert_eq!(solutions.len(), 3);
        let columns: [&[(f64, f64)]; 3] = [
            &[(1.0, 0.0), (1.0, 0.0), (2.0, 0.0)],
            &[(1.0, 0.0), (1.0, 0.0), (-1.0, 0.0)],
            &[(1.0, 0.0), (-1.0, 0.0), (0.0, 0.0)],
        ];
        for column in columns {
            assert!(
                solutions.iter().any(|s| close_to(&s.values, column, 1e-6)),
                "missing column {column:?}"
            );
        }
    }

    #[test]
    fn solver_is_deterministic_for_a_seed() {
        let ring = s3_ring();
        let config = SolverConfig::default();
        let a = solve_character_system(&ring, &config).unwrap();
        let b = solve_character_system(&ring, &config).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.values, y.values);
        }
    }

    #[test]
    fn verify_solution_flags_a_wrong_vector() {
        let ring = s3_ring();
        let all_ones = vec![Complex::new(1.0, 0.0); 3];
        // 1*1 = 1+1+1 fails by 2 in the std*std equation.
        assert!((verify_solution(&ring, &all_ones) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn s3_has_a_unique_integer_solution() {
        let ring = s3_ring();
        let solutions = integer_positive_solutions(&ring, 5, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(solutions, vec![vec![1, 1, 2]]);
    }

    #[test]
    fn cyclic_integer_solution_is_all_ones() {
        let ring = cyclic_ring(6);
        let solutions = integer_positive_solutions(&ring, 30, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(solutions, vec![vec![1; 6]]);
    }

    #[test]
    fn node_limit_is_enforced() {
        let ring = s3_ring();
        let err = integer_positive_solutions(&ring, 5, 1).unwrap_err();
        assert_eq!(err, SolverError::ResourceLimit { limit: 1 });
    }

    #[test]
    fn fp_dimensions_of_s3() {
        let dims = fp_dimensions(&s3_ring());
        assert!((dims[0] - 1.0).abs() < 1e-9);
        assert!((dims[1] - 1.0).abs() < 1e-9);
        assert!((dims[2] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn fp_dimensions_of_cyclic_rings_are_one() {
        for dim in fp_dimensions(&cyclic_ring(5)) {
            assert!((dim - 1.0).abs() < 1e-9);
        }
    }
}
