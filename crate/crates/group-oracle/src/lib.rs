//! Brute-force facts about small finite groups, computed straight from
//! multiplication tables.
//!
//! This crate exists to generate the catalog fixtures and the companion
//! `groupfacts.json` consumed by the fusionscope test suite. Everything
//! is derived from first principles: conjugacy classes by direct
//! conjugation, character tables by simultaneous diagonalization of the
//! class algebra, fusion multiplicities by orthogonality sums, subgroups
//! by closing small generating sets, and invariant factors by matching
//! element-order censuses against every candidate divisor chain. The
//! implementations deliberately share no code with the fusionscope
//! library so the two can check each other.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};

const TOL: f64 = 1e-8;
const SNAP: f64 = 1e-6;

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    fn checked(name: &str, elements: Vec<String>, table: Vec<Vec<usize>>) -> FiniteGroup {
        let n = elements.len();
        assert!(n >= 1, "{name}: empty element list");
        assert_eq!(table.len(), n, "{name}: table row count");
        for row in &table {
            assert_eq!(row.len(), n, "{name}: table column count");
            assert!(row.iter().all(|&x| x < n), "{name}: table entry out of range");
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .unwrap_or_else(|| panic!("{name}: no identity"));
        assert_eq!(identity, 0, "{name}: identity must be element 0");
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(
                        table[table[a][b]][c], table[a][table[b][c]],
                        "{name}: associativity fails at ({a},{b},{c})"
                    );
                }
            }
            assert!(
                (0..n).any(|b| table[a][b] == 0 && table[b][a] == 0),
                "{name}: {a} has no inverse"
            );
        }
        FiniteGroup { name: name.to_string(), elements, table }
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::checked("trivial", vec!["e".into()], vec![vec![0]])
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let elements = (0..n).map(|i| format!("g{i}")).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::checked(&format!("z{n}"), elements, table)
    }

    pub fn direct_product(name: &str, a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (a.order(), b.order());
        let mut elements = Vec::new();
        for i in 0..na {
            for j in 0..nb {
                elements.push(format!("{}|{}", a.elements[i], b.elements[j]));
            }
        }
        let idx = |i: usize, j: usize| i * nb + j;
        let mut table = vec![vec![0; na * nb]; na * nb];
        for i1 in 0..na {
            for j1 in 0..nb {
                for i2 in 0..na {
                    for j2 in 0..nb {
                        table[idx(i1, j1)][idx(i2, j2)] =
                            idx(a.table[i1][i2], b.table[j1][j2]);
                    }
                }
            }
        }
        FiniteGroup::checked(name, elements, table)
    }

    /// The dihedral group of order 2n: rotations `r0..` then reflections `s0..`.
    pub fn dihedral(n: usize) -> FiniteGroup {
        assert!(n >= 2);
        let mut elements: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
        elements.extend((0..n).map(|i| format!("s{i}")));
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for a in 0..2 * n {
            for b in 0..2 * n {
                let (i, flip_a) = (a % n, a >= n);
                let (j, flip_b) = (b % n, b >= n);
                // s_i = r^i s with s r = r^{-1} s.
                let k = if flip_a { (i + n - j) % n } else { (i + j) % n };
                table[a][b] = k + if flip_a != flip_b { n } else { 0 };
            }
        }
        FiniteGroup::checked(if n == 4 { "d4" } else { "dihedral" }, elements, table)
    }

    /// The quaternion group {±1, ±i, ±j, ±k}.
    pub fn quaternion() -> FiniteGroup {
        let elements: Vec<String> =
            ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
        // Encode q = (unit, sign) with units 1,i,j,k and multiply symbolically.
        let unit_mul = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) => (x, false),
                (x, 0) => (x, false),
                (1, 1) | (2, 2) | (3, 3) => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let n = 8;
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let (ua, sa) = (a / 2, a % 2 == 1);
                let (ub, sb) = (b / 2, b % 2 == 1);
                let (uc, flips) = unit_mul(ua, ub);
                let sc = sa ^ sb ^ flips;
                table[a][b] = uc * 2 + usize::from(sc);
            }
        }
        FiniteGroup::checked("q8", elements, table)
    }

    fn from_permutations(name: &str, perms: Vec<Vec<usize>>) -> FiniteGroup {
        let elements: Vec<String> = perms
            .iter()
            .map(|p| p.iter().map(usize::to_string).collect::<Vec<_>>().join(""))
            .collect();
        let n = perms.len();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                // Composition acting left to right: (a*b)(x) = a(b(x)).
                let prod: Vec<usize> = (0..perms[a].len()).map(|x| perms[a][perms[b][x]]).collect();
                table[a][b] = perms
                    .iter()
                    .position(|p| *p == prod)
                    .unwrap_or_else(|| panic!("{name}: not closed"));
            }
        }
        FiniteGroup::checked(name, elements, table)
    }

    pub fn symmetric3() -> FiniteGroup {
        let perms = permutations(3);
        FiniteGroup::from_permutations("s3", perms)
    }

    pub fn alternating4() -> FiniteGroup {
        let perms: Vec<Vec<usize>> =
            permutations(4).into_iter().filter(|p| is_even_permutation(p)).collect();
        FiniteGroup::from_permutations("a4", perms)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == 0).expect("checked at construction")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// How many elements have order exactly k.
    pub fn count_of_order(&self, k: usize) -> usize {
        (0..self.order()).filter(|&a| self.element_order(a) == k).count()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes; the identity's class first, then by size and
    /// smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let mut class = BTreeSet::new();
            for g in 0..n {
                class.insert(self.mul(self.mul(g, a), self.inv(g)));
            }
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class.into_iter().collect::<Vec<_>>());
        }
        classes.sort_by_key(|c| (c[0] != 0, c.len(), c[0]));
        classes
    }

    /// Closure of a seed set (with the identity) under multiplication.
    pub fn subgroup_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut members: BTreeSet<usize> = seed.iter().copied().collect();
        members.insert(0);
        loop {
            let snapshot: Vec<usize> = members.iter().copied().collect();
            let before = members.len();
            for &a in &snapshot {
                for &b in &snapshot {
                    members.insert(self.mul(a, b));
                }
            }
            if members.len() == before {
                return members.into_iter().collect();
            }
        }
    }

    pub fn center_elements(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let mut commutators = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(a, b), self.inv(self.mul(b, a)));
                commutators.push(c);
            }
        }
        self.subgroup_closure(&commutators)
    }

    /// Every subgroup, found by closing all generating sets of size <= 3.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(self.subgroup_closure(&[]));
        for a in 0..n {
            found.insert(self.subgroup_closure(&[a]));
            for b in a + 1..n {
                found.insert(self.subgroup_closure(&[a, b]));
                for c in b + 1..n {
                    found.insert(self.subgroup_closure(&[a, b, c]));
                }
            }
        }
        found.into_iter().collect()
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        let members: BTreeSet<usize> = subgroup.iter().copied().collect();
        (0..self.order()).all(|g| {
            subgroup.iter().all(|&h| members.contains(&self.mul(self.mul(g, h), self.inv(g))))
        })
    }

    pub fn normal_subgroup_count(&self) -> usize {
        self.all_subgroups().iter().filter(|s| self.is_normal(s)).count()
    }

    /// Multiplication table of the subgroup in its own indexing.
    pub fn subgroup_table(&self, subgroup: &[usize]) -> Vec<Vec<usize>> {
        let pos: BTreeMap<usize, usize> =
            subgroup.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        subgroup
            .iter()
            .map(|&a| subgroup.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect()
    }

    /// Multiplication table of G/N on cosets of a normal subgroup.
    pub fn quotient_table(&self, normal: &[usize]) -> Vec<Vec<usize>> {
        assert!(self.is_normal(normal), "{}: quotient by non-normal subgroup", self.name);
        let members: BTreeSet<usize> = normal.iter().copied().collect();
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &h in &members {
                coset_of[self.mul(g, h)] = id;
            }
        }
        reps.iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for partial in out {
            for x in 0..n {
                if !partial.contains(&x) {
                    let mut longer = partial.clone();
                    longer.push(x);
                    next.push(longer);
                }
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn is_even_permutation(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Invariant factors of an abelian group given by a multiplication table,
/// found by matching the element-order census against every divisor chain.
pub fn invariant_factors_by_census(table: &[Vec<usize>]) -> Vec<u64> {
    let group = FiniteGroup::checked("census", name_elements(table.len()), table.to_vec());
    assert!(group.is_abelian(), "census: non-abelian input");
    let census = order_census_of_group(&group);
    let order = table.len() as u64;
    let mut matches = Vec::new();
    for chain in divisor_chains(order) {
        if order_census_of_chain(&chain) == census {
            matches.push(chain);
        }
    }
    assert_eq!(matches.len(), 1, "census: ambiguous abelian type for order {order}");
    matches.pop().expect("one match")
}

fn name_elements(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn order_census_of_group(group: &FiniteGroup) -> BTreeMap<u64, usize> {
    let mut census = BTreeMap::new();
    for a in 0..group.order() {
        *census.entry(group.element_order(a) as u64).or_insert(0) += 1;
    }
    census
}

/// All chains d1 | d2 | ... | dk with product n and each di >= 2.
fn divisor_chains(n: u64) -> Vec<Vec<u64>> {
    fn extend(remaining: u64, min: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 1 {
            out.push(prefix.clone());
            return;
        }
        let mut d = min;
        while d <= remaining {
            if remaining % d == 0 && (prefix.is_empty() || d % prefix.last().unwrap() == 0) {
                prefix.push(d);
                extend(remaining / d, d, prefix, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(n, 2, &mut Vec::new(), &mut out);
    out
}

fn order_census_of_chain(chain: &[u64]) -> BTreeMap<u64, usize> {
    let mut census = BTreeMap::new();
    let total: u64 = chain.iter().product();
    let mut tuple = vec![0u64; chain.len()];
    for _ in 0..total.max(1) {
        let ord = tuple
            .iter()
            .zip(chain)
            .map(|(&x, &d)| d / gcd(d, x))
            .fold(1, lcm);
        *census.entry(ord).or_insert(0) += 1;
        for (x, &d) in tuple.iter_mut().zip(chain) {
            *x += 1;
            if *x < d {
                break;
            }
            *x = 0;
        }
    }
    census
}

/// A complex character table with its conjugacy class data.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub classes: Vec<Vec<usize>>,
    pub class_sizes: Vec<usize>,
    /// Rows are irreducible characters, columns follow `classes`.
    pub values: Vec<Vec<Complex<f64>>>,
    pub degrees: Vec<usize>,
}

struct Lcg(u64);

impl Lcg {
    fn next_unit(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mantissa = (self.0 >> 11) as f64 / (1u64 << 53) as f64;
        2.0 * mantissa - 1.0
    }
}

fn complexify(m: &DMatrix<f64>) -> DMatrix<Complex<f64>> {
    m.map(|x| Complex::new(x, 0.0))
}

/// A random combination of the commuting family whose eigenvalues are
/// pairwise separated, along with those eigenvalues. The eigenvalue
/// computation conjugates by a random similarity first so the QR
/// iteration converges on structured inputs.
fn separated_combination(
    mats: &[DMatrix<f64>],
    rng: &mut Lcg,
) -> Option<(DMatrix<f64>, Vec<Complex<f64>>)> {
    let c = mats[0].nrows();
    let mut combo = DMatrix::<f64>::zeros(c, c);
    for m in mats {
        combo += m * rng.next_unit();
    }
    let mut shear = DMatrix::<f64>::identity(c, c);
    for i in 0..c {
        for j in 0..c {
            shear[(i, j)] += 0.4 / c as f64 * rng.next_unit();
        }
    }
    let inverse = shear.clone().try_inverse()?;
    let eigenvalues = (inverse * &combo * &shear).complex_eigenvalues();
    let scale = 1.0 + eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for i in 0..c {
        for j in i + 1..c {
            if (eigenvalues[i] - eigenvalues[j]).norm() < 1e-6 * scale {
                return None;
            }
        }
    }
    Some((combo, (0..c).map(|i| eigenvalues[i]).collect()))
}

fn null_vector(shifted: DMatrix<Complex<f64>>) -> DVector<Complex<f64>> {
    let svd = shifted.svd(true, true);
    let sigma = &svd.singular_values;
    let mut smallest = 0;
    for i in 1..sigma.len() {
        if sigma[i] < sigma[smallest] {
            smallest = i;
        }
    }
    let largest = sigma.iter().fold(0.0f64, |a, &b| a.max(b));
    assert!(
        sigma[smallest] <= TOL * (1.0 + largest),
        "oracle: eigenvalue shift left no null direction"
    );
    let v_t = svd.v_t.expect("requested");
    v_t.row(smallest).adjoint()
}

/// Character table by simultaneous diagonalization of the class algebra.
///
/// The class sums K_i satisfy K_i K_j = sum_k a_ijk K_k; each irreducible
/// character gives a one-dimensional representation of this algebra, so
/// the vectors of central character values are the common eigenvectors of
/// the structure-constant matrices. Degrees are recovered from the norm
/// of each row and the finished table is checked against orthogonality.
pub fn character_table(group: &FiniteGroup) -> CharacterTable {
    let classes = group.conjugacy_classes();
    let c = classes.len();
    let n = group.order();
    let class_of = {
        let mut map = vec![0; n];
        for (k, class) in classes.iter().enumerate() {
            for &x in class {
                map[x] = k;
            }
        }
        map
    };
    let reps: Vec<usize> = classes.iter().map(|cl| cl[0]).collect();

    // With K_i K_j = sum_k a_ijk K_k, the matrix for class i holds a_ijk
    // at row j, column k; every central character vector w_j = omega(K_j)
    // is then a common eigenvector: m_i w = omega(K_i) w.
    let mut mats = Vec::with_capacity(c);
    for i in 0..c {
        let mut m = DMatrix::<f64>::zeros(c, c);
        for k in 0..c {
            for &x in &classes[i] {
                let j = class_of[group.mul(group.inv(x), reps[k])];
                m[(j, k)] += 1.0;
            }
        }
        mats.push(m);
    }

    let omegas: Vec<DVector<Complex<f64>>> = if c == 1 {
        vec![DVector::from_element(1, Complex::new(1.0, 0.0))]
    } else {
        let mut rng = Lcg(0x0A11_0B5E_55ED_F00D);
        let mut found = None;
        for _ in 0..12 {
            if let Some(pair) = separated_combination(&mats, &mut rng) {
                found = Some(pair);
                break;
            }
        }
        let (combo, vals) = found.expect("oracle: no separating combination found");
        let combo = complexify(&combo);
        vals.into_iter()
            .map(|lambda| {
                let shifted = &combo - DMatrix::from_diagonal_element(c, c, lambda);
                let v = null_vector(shifted);
                let head = v[0];
                assert!(head.norm() > TOL, "oracle: central character vanishes at identity");
                v.map(|z| z / head)
            })
            .collect()
    };
    assert_eq!(omegas.len(), c);

    let mut rows: Vec<(usize, Vec<Complex<f64>>)> = omegas
        .iter()
        .map(|w| {
            let inv_degree_sq: f64 = (0..c)
                .map(|i| w[i].norm_sqr() / classes[i].len() as f64)
                .sum();
            let degree_f = (n as f64 / inv_degree_sq).sqrt();
            let degree = degree_f.round() as usize;
            assert!((degree_f - degree as f64).abs() < SNAP, "oracle: non-integer degree");
            let values: Vec<Complex<f64>> = (0..c)
                .map(|i| w[i] * degree as f64 / classes[i].len() as f64)
                .collect();
            (degree, values)
        })
        .collect();

    let is_trivial =
        |row: &[Complex<f64>]| row.iter().all(|z| (z - Complex::new(1.0, 0.0)).norm() < SNAP);
    let sort_key = |values: &[Complex<f64>]| -> Vec<(i64, i64)> {
        values
            .iter()
            .map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64))
            .collect()
    };
    rows.sort_by_key(|(degree, values)| (!is_trivial(values), *degree, sort_key(values)));
    assert!(is_trivial(&rows[0].1), "oracle: trivial character missing");

    let table = CharacterTable {
        class_sizes: classes.iter().map(Vec::len).collect(),
        classes,
        degrees: rows.iter().map(|(d, _)| *d).collect(),
        values: rows.into_iter().map(|(_, v)| v).collect(),
    };
    check_orthogonality(group, &table);
    table
}

fn check_orthogonality(group: &FiniteGroup, table: &CharacterTable) {
    let n = group.order() as f64;
    let c = table.classes.len();
    for p in 0..c {
        for q in 0..c {
            let sum: Complex<f64> = (0..c)
                .map(|i| {
                    table.values[p][i] * table.values[q][i].conj() * table.class_sizes[i] as f64
                })
                .sum();
            let expected = if p == q { n } else { 0.0 };
            assert!(
                (sum - Complex::new(expected, 0.0)).norm() < 1e-6 * n,
                "oracle: row orthogonality fails at ({p},{q})"
            );
        }
    }
}

/// Fusion multiplicities and the dual permutation from a character table.
pub fn fusion_rules(table: &CharacterTable) -> (Vec<(usize, usize, usize, i64)>, Vec<usize>) {
    let c = table.classes.len();
    let weight: Vec<f64> = table.class_sizes.iter().map(|&s| s as f64).collect();
    let n: f64 = weight.iter().sum();
    let mut entries = Vec::new();
    for p in 0..c {
        for q in p..c {
            for r in 0..c {
                let sum: Complex<f64> = (0..c)
                    .map(|i| {
                        table.values[p][i] * table.values[q][i] * table.values[r][i].conj()
                            * weight[i]
                    })
                    .sum();
                let m = sum / n;
                assert!(m.im.abs() < SNAP, "oracle: complex multiplicity");
                let rounded = m.re.round() as i64;
                assert!((m.re - rounded as f64).abs() < SNAP, "oracle: non-integer multiplicity");
                assert!(rounded >= 0, "oracle: negative multiplicity");
                if rounded != 0 {
                    entries.push((p, q, r, rounded));
                }
            }
        }
    }
    let dual: Vec<usize> = (0..c)
        .map(|p| {
            let matches: Vec<usize> = (0..c)
                .filter(|&q| {
                    (0..c).all(|i| (table.values[q][i] - table.values[p][i].conj()).norm() < SNAP)
                })
                .collect();
            assert_eq!(matches.len(), 1, "oracle: dual of {p} not unique");
            matches[0]
        })
        .collect();
    (entries, dual)
}

/// Frobenius-Schur indicators, one word per irreducible character.
pub fn fs_indicator_words(group: &FiniteGroup, table: &CharacterTable) -> Vec<String> {
    let n = group.order();
    let class_of = {
        let mut map = vec![0; n];
        for (k, class) in table.classes.iter().enumerate() {
            for &x in class {
                map[x] = k;
            }
        }
        map
    };
    table
        .values
        .iter()
        .map(|row| {
            let sum: Complex<f64> =
                (0..n).map(|g| row[class_of[group.mul(g, g)]]).sum();
            let nu = sum / n as f64;
            assert!(nu.im.abs() < SNAP, "oracle: complex FS indicator");
            let rounded = nu.re.round() as i64;
            assert!((nu.re - rounded as f64).abs() < SNAP, "oracle: non-integer FS indicator");
            match rounded {
                1 => "real".to_string(),
                0 => "complex".to_string(),
                -1 => "pseudoreal".to_string(),
                other => panic!("oracle: FS indicator {other} out of range"),
            }
        })
        .collect()
}

/// Everything the test suite wants to know about one group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFacts {
    pub name: String,
    pub order: usize,
    pub abelian: bool,
    pub class_sizes: Vec<usize>,
    pub irrep_degrees: Vec<usize>,
    /// Rows follow the fixture labels, columns the class order; entries
    /// are [re, im] pairs.
    pub character_table: Vec<Vec<[f64; 2]>>,
    pub fs_indicators: Vec<String>,
    pub order2_count: usize,
    pub center_invariant_factors: Vec<u64>,
    pub abelianization_invariant_factors: Vec<u64>,
    pub normal_subgroup_count: usize,
}

fn snapped(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        if r == 0.0 { 0.0 } else { r }
    } else {
        x
    }
}

pub fn facts_for(group: &FiniteGroup) -> GroupFacts {
    let table = character_table(group);
    let center = group.center_elements();
    let commutator = group.commutator_subgroup();
    GroupFacts {
        name: group.name().to_string(),
        order: group.order(),
        abelian: group.is_abelian(),
        class_sizes: table.class_sizes.clone(),
        irrep_degrees: table.degrees.clone(),
        character_table: table
            .values
            .iter()
            .map(|row| row.iter().map(|z| [snapped(z.re), snapped(z.im)]).collect())
            .collect(),
        fs_indicators: fs_indicator_words(group, &table),
        order2_count: group.count_of_order(2),
        center_invariant_factors: invariant_factors_by_census(&group.subgroup_table(&center)),
        abelianization_invariant_factors: invariant_factors_by_census(
            &group.quotient_table(&commutator),
        ),
        normal_subgroup_count: group.normal_subgroup_count(),
    }
}

/// Canonical ring-document text for a group's fusion rules.
///
/// The layout must match the fusionscope serializer byte for byte; the
/// regeneration test in that crate holds the two emitters together.
pub fn ring_document_text(group: &FiniteGroup) -> String {
    let table = character_table(group);
    let (fusion, dual) = fusion_rules(&table);
    let rank = table.degrees.len();
    let labels: Vec<String> = (0..rank).map(|i| format!("chi{i}")).collect();
    let indicators = fs_indicator_words(group, &table);

    let quote = |s: &str| format!("\"{s}\"");
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"name\": {},\n", quote(group.name())));
    out.push_str(&format!("  \"rank\": {rank},\n"));
    out.push_str(&format!(
        "  \"labels\": [{}],\n",
        labels.iter().map(|l| quote(l)).collect::<Vec<_>>().join(", ")
    ));
    out.push_str("  \"unit\": 0,\n");
    out.push_str(&format!(
        "  \"dual\": [{}],\n",
        dual.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
    ));
    let mut rows = fusion.clone();
    rows.sort();
    out.push_str("  \"fusion\": [\n");
    let lines: Vec<String> =
        rows.iter().map(|(p, q, r, m)| format!("    [{p}, {q}, {r}, {m}]")).collect();
    out.push_str(&lines.join(",\n"));
    out.push_str("\n  ],\n");
    out.push_str("  \"metadata\": {\n    \"fs_indicators\": {\n");
    let pairs: Vec<String> = labels
        .iter()
        .zip(&indicators)
        .map(|(label, word)| format!("      {}: {}", quote(label), quote(word)))
        .collect();
    out.push_str(&pairs.join(",\n"));
    out.push_str("\n    }\n  }\n}\n");
    out
}

/// Facts for every catalog group, keyed by fixture name.
pub fn all_facts() -> BTreeMap<String, GroupFacts> {
    catalog_groups().iter().map(|g| (g.name().to_string(), facts_for(g))).collect()
}

/// The groups behind every finite catalog fixture, in fixture order.
pub fn catalog_groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::trivial(),
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::cyclic(5),
        FiniteGroup::cyclic(6),
        FiniteGroup::direct_product("z2xz2", &FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        FiniteGroup::symmetric3(),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion(),
        FiniteGroup::alternating4(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_class_counts_match_hand_values() {
        let expected = [
            ("trivial", 1, 1),
            ("z2", 2, 2),
            ("z3", 3, 3),
            ("z4", 4, 4),
            ("z5", 5, 5),
            ("z6", 6, 6),
            ("z2xz2", 4, 4),
            ("s3", 6, 3),
            ("d4", 8, 5),
            ("q8", 8, 5),
            ("a4", 12, 4),
        ];
        let groups = catalog_groups();
        assert_eq!(groups.len(), expected.len());
        for (group, (name, order, classes)) in groups.iter().zip(expected) {
            assert_eq!(group.name(), name);
            assert_eq!(group.order(), order);
            assert_eq!(group.conjugacy_classes().len(), classes, "{name}");
        }
    }

    #[test]
    fn s3_character_table_is_the_classic_one() {
        let table = character_table(&FiniteGroup::symmetric3());
        assert_eq!(table.degrees, vec![1, 1, 2]);
        assert_eq!(table.class_sizes, vec![1, 2, 3]);
        let real: Vec<Vec<i64>> = table
            .values
            .iter()
            .map(|row| row.iter().map(|z| z.re.round() as i64).collect())
            .collect();
        assert_eq!(real[0], vec![1, 1, 1]);
        assert_eq!(real[2], vec![2, -1, 0]);
    }

    #[test]
    fn q8_has_one_pseudoreal_character() {
        let group = FiniteGroup::quaternion();
        let words = fs_indicator_words(&group, &character_table(&group));
        assert_eq!(words.iter().filter(|w| *w == "pseudoreal").count(), 1);
        assert_eq!(group.count_of_order(2), 1);
    }

    #[test]
    fn d4_has_five_order_two_elements_and_no_pseudoreal() {
        let group = FiniteGroup::dihedral(4);
        assert_eq!(group.count_of_order(2), 5);
        let words = fs_indicator_words(&group, &character_table(&group));
        assert!(words.iter().all(|w| w == "real"));
    }

    #[test]
    fn census_separates_z4_from_klein() {
        let z4 = FiniteGroup::cyclic(4);
        let klein =
            FiniteGroup::direct_product("z2xz2", &FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let all: Vec<usize> = (0..4).collect();
        assert_eq!(invariant_factors_by_census(&z4.subgroup_table(&all)), vec![4]);
        assert_eq!(invariant_factors_by_census(&klein.subgroup_table(&all)), vec![2, 2]);
    }

    #[test]
    fn known_centers_and_abelianizations() {
        let facts: BTreeMap<String, GroupFacts> =
            catalog_groups().iter().map(|g| (g.name().to_string(), facts_for(g))).collect();
        assert_eq!(facts["d4"].center_invariant_factors, vec![2]);
        assert_eq!(facts["q8"].center_invariant_factors, vec![2]);
        assert_eq!(facts["s3"].center_invariant_factors, Vec::<u64>::new());
        assert_eq!(facts["a4"].center_invariant_factors, Vec::<u64>::new());
        assert_eq!(facts["z6"].center_invariant_factors, vec![6]);
        assert_eq!(facts["d4"].abelianization_invariant_factors, vec![2, 2]);
        assert_eq!(facts["q8"].abelianization_invariant_factors, vec![2, 2]);
        assert_eq!(facts["s3"].abelianization_invariant_factors, vec![2]);
        assert_eq!(facts["a4"].abelianization_invariant_factors, vec![3]);
        assert_eq!(facts["d4"].normal_subgroup_count, 6);
        assert_eq!(facts["q8"].normal_subgroup_count, 6);
        assert_eq!(facts["s3"].normal_subgroup_count, 3);
        assert_eq!(facts["z6"].normal_subgroup_count, 4);
        assert_eq!(facts["a4"].normal_subgroup_count, 3);
    }

    #[test]
    fn fusion_rules_of_s3_match_hand_calculation() {
        let table = character_table(&FiniteGroup::symmetric3());
        let (entries, dual) = fusion_rules(&table);
        assert_eq!(dual, vec![0, 1, 2]);
        let std_sq: Vec<(usize, i64)> = entries
            .iter()
            .filter(|&&(p, q, _, _)| p == 2 && q == 2)
            .map(|&(_, _, r, m)| (r, m))
            .collect();
        assert_eq!(std_sq, vec![(0, 1), (1, 1), (2, 1)]);
    }
}
