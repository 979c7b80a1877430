//! Representation subrings and their lattice.
//!
//! A representation subring is a subset of the basis containing the unit,
//! closed under duals, and closed under taking constituents of products.
//! For the representation ring of a compact group these subsets correspond
//! exactly, order-reversingly, to the closed normal subgroups: the subring
//! attached to a normal subgroup `H` consists of the irreducibles trivial
//! on `H` and is itself the full representation ring of `G/H`, which is
//! what [`quotient_ring`] extracts.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::ring::{FusionRing, RingError};

/// Default cap on the ambient rank for exhaustive lattice enumeration.
pub const DEFAULT_MAX_RANK: usize = 16;

/// Errors from subring construction and enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubringError {
    #[error("seed index {index} is out of range for rank {rank}")]
    SeedOutOfRange { index: usize, rank: usize },
    #[error("rank {rank} exceeds the enumeration cap {max_rank}")]
    RankOverBound { rank: usize, max_rank: usize },
    #[error("quotient is unusable: even the unit pair falls beyond the truncation bound")]
    QuotientClipped,
    #[error("quotient construction failed: {0}")]
    Malformed(#[from] RingError),
}

/// A basis subset closed under unit, duals, and trusted products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationSubring {
    ring: Arc<FusionRing>,
    basis: Vec<usize>,
}

impl RepresentationSubring {
    pub fn ring(&self) -> &Arc<FusionRing> {
        &self.ring
    }

    /// Member indices, sorted ascending.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.basis.binary_search(&p).is_ok()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ring.rank()
    }

    pub fn is_subset_of(&self, other: &RepresentationSubring) -> bool {
        self.basis.iter().all(|&p| other.contains(p))
    }

    /// Member labels in basis order.
    pub fn labels(&self) -> Vec<&str> {
        self.basis.iter().map(|&p| self.ring.label(p)).collect()
    }
}

/// Smallest representation subring containing the seed elements.
///
/// Closure adds the unit, duals of members, and all constituents of
/// trusted pairwise products, iterated to a fixpoint. Untrusted pairs of a
/// truncated ring impose no constraint.
pub fn close(
    ring: &Arc<FusionRing>,
    seed: impl IntoIterator<Item = usize>,
) -> Result<RepresentationSubring, SubringError> {
    let rank = ring.rank();
    let mut members = BTreeSet::new();
    members.insert(ring.unit());
    for index in seed {
        if index >= rank {
            return Err(SubringError::SeedOutOfRange { index, rank });
        }
        members.insert(index);
    }
    loop {
        let snapshot: Vec<usize> = members.iter().copied().collect();
        let before = members.len();
        for &p in &snapshot {
            members.insert(ring.dual_of(p));
        }
        for &p in &snapshot {
            for &q in &snapshot {
                if p <= q && ring.pair_complete(p, q) {
                    for &(r, _) in ring.product_support(p, q) {
                        members.insert(r);
                    }
                }
            }
        }
        if members.len() == before {
            break;
        }
    }
    Ok(RepresentationSubring {
        ring: Arc::clone(ring),
        basis: members.into_iter().collect(),
    })
}

/// The full lattice of representation subrings.
#[derive(Debug, Clone)]
pub struct SubringLattice {
    subrings: Vec<RepresentationSubring>,
}

impl SubringLattice {
    pub fn len(&self) -> usize {
        self.subrings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subrings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &RepresentationSubring> {
        self.subrings.iter()
    }

    pub fn get(&self, i: usize) -> &RepresentationSubring {
        &self.subrings[i]
    }

    /// Position of the subring with exactly this basis, if present.
    pub fn position_of(&self, basis: &[usize]) -> Option<usize> {
        self.subrings.iter().position(|s| s.basis() == basis)
    }

    /// All strict inclusions `(i, j)` with subring `i` contained in `j`.
    pub fn inclusions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.subrings.len() {
            for j in 0..self.subrings.len() {
                if i != j && self.subrings[i].is_subset_of(&self.subrings[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Enumerates every representation subring of a ring of rank at most
/// `max_rank`.
///
/// Every subring is the closure of its own member set, and closures are
/// monotone, so the lattice is generated by singleton closures under
/// pairwise joins (closure of the union). The enumeration saturates that
/// join semilattice, which therefore needs no subset enumeration of the
/// basis. Subrings are returned sorted by rank, then by basis.
pub fn enumerate_subrings(
    ring: &Arc<FusionRing>,
    max_rank: usize,
) -> Result<SubringLattice, SubringError> {
    let rank = ring.rank();
    if rank > max_rank {
        return Err(SubringError::RankOverBound { rank, max_rank });
    }
    let mut bases: Vec<Vec<usize>> = Vec::new();
    let mut queue: Vec<Vec<usize>> = Vec::new();
    let mut seeds: Vec<Vec<usize>> = vec![Vec::new()];
    seeds.extend((0..rank).map(|p| vec![p]));
    for seed in seeds {
        let basis = close(ring, seed)?.basis;
        if !bases.contains(&basis) {
            queue.push(basis.clone());
            bases.push(basis);
        }
    }
    while let Some(basis) = queue.pop() {
        let snapshot = bases.clone();
        for other in snapshot {
            let seed: Vec<usize> = basis.iter().chain(other.iter()).copied().collect();
            let joined = close(ring, seed)?.basis;
            if !bases.contains(&joined) {
                queue.push(joined.clone());
                bases.push(joined);
            }
        }
    }
    let mut subrings: Vec<RepresentationSubring> = bases
        .into_iter()
        .map(|basis| RepresentationSubring { ring: Arc::clone(ring), basis })
        .collect();
    subrings.sort_by(|a, b| {
        a.basis
            .len()
            .cmp(&b.basis.len())
            .then_with(|| a.basis.cmp(&b.basis))
    });
    Ok(SubringLattice { subrings })
}

/// Reinterprets a representation subring as a fusion ring in its own right.
///
/// The subring of irreducibles trivial on a closed normal subgroup is the
/// full representation ring of the quotient group, so the result is the
/// plain restriction of the tensor to the member set, reindexed. For a
/// truncated ambient ring the result keeps the largest index-sum bound
/// that is still covered by trusted ambient pairs.
pub fn quotient_ring(sub: &RepresentationSubring) -> Result<FusionRing, SubringError> {
    let ring = sub.ring();
    let members = sub.basis();
    let position = |p: usize| members.binary_search(&p).expect("closure keeps products inside");
    let labels: Vec<String> = members.iter().map(|&p| ring.label(p).to_string()).collect();
    let unit = position(ring.unit());
    let dual: Vec<usize> = members.iter().map(|&p| position(ring.dual_of(p))).collect();
    let mut entries = Vec::new();
    for (i, &p) in members.iter().enumerate() {
        for (j, &q) in members.iter().enumerate().skip(i) {
            if !ring.pair_complete(p, q) {
                continue;
            }
            for &(r, m) in ring.product_support(p, q) {
                entries.push((i, j, position(r), m));
            }
        }
    }
    let complete_below = if ring.is_truncated() {
        let trusted = |i: usize, j: usize| ring.pair_complete(members[i], members[j]);
        let count = members.len();
        let full = (0..count).all(|i| (i..count).all(|j| trusted(i, j)));
        if full {
            None
        } else {
            let covered = |bound: usize| {
                (0..count).all(|i| (i..count).all(|j| i + j > bound || trusted(i, j)))
            };
            if !covered(0) {
                return Err(SubringError::QuotientClipped);
            }
            let mut bound = 0;
            while bound + 1 <= 2 * (count - 1) && covered(bound + 1) {
                bound += 1;
            }
            Some(bound)
        }
    } else {
        None
    };
    let name = format!("{}/[{}]", ring.name(), sub.labels().join(" "));
    Ok(FusionRing::new(name, labels, unit, dual, &entries, complete_below)?)
}

/// The adjoint subring: the closure of all `p * dual(p)`.
///
/// For a group this is the subring attached to the center, so comparing it
/// with the chain group cross-checks both constructions.
pub fn adjoint_subring(ring: &Arc<FusionRing>) -> RepresentationSubring {
    let rank = ring.rank();
    let mut seed = Vec::new();
    for p in 0..rank {
        let q = ring.dual_of(p);
        if ring.pair_complete(p, q) {
            for &(r, _) in ring.product_support(p, q) {
                seed.push(r);
            }
        }
    }
    close(ring, seed).expect("constituent indices are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn closure_of_nothing_is_the_unit_subring() {
        let ring = cyclic_ring(6);
        let sub = close(&ring, []).unwrap();
        assert_eq!(sub.basis(), &[0]);
    }

    #[test]
    fn closure_adds_duals_and_products() {
        let ring = cyclic_ring(6);
        let sub = close(&ring, [2]).unwrap();
        assert_eq!(sub.basis(), &[0, 2, 4]);
        let generator = close(&ring, [1]).unwrap();
        assert!(generator.is_full());
    }

    #[test]
    fn cyclic_lattice_counts_divisors() {
        for n in 2..=12usize {
            let ring = cyclic_ring(n);
            let lattice = enumerate_subrings(&ring, DEFAULT_MAX_RANK).unwrap();
            let divisors = (1..=n).filter(|d| n % d == 0).count();
            assert_eq!(lattice.len(), divisors, "z{n}");
        }
    }

    #[test]
    fn s3_lattice_matches_normal_subgroups() {
        // S3 has three normal subgroups: 1, A3, S3.
        let ring = s3_ring();
        let lattice = enumerate_subrings(&ring, DEFAULT_MAX_RANK).unwrap();
        let bases: Vec<&[usize]> = lattice.iter().map(|s| s.basis()).collect();
        assert_eq!(bases, vec![&[0][..], &[0, 1][..], &[0, 1, 2][..]]);
    }

    #[test]
    fn rank_cap_is_enforced() {
        let ring = cyclic_ring(6);
        let err = enumerate_subrings(&ring, 5).unwrap_err();
        assert_eq!(err, SubringError::RankOverBound { rank: 6, max_rank: 5 });
    }

    #[test]
    fn quotient_of_index_two_subring_is_z3() {
        let ring = cyclic_ring(6);
        let sub = close(&ring, [2]).unwrap();
        let quotient = quotient_ring(&sub).unwrap();
        assert_eq!(quotient.rank(), 3);
        assert!(quotient.validate().is_valid());
        assert_eq!(quotient.multiplicity(1, 2, 0), 1);
        assert_eq!(quotient.labels(), &["g0", "g2", "g4"]);
    }

    #[test]
    fn s3_quotient_by_sign_subring_is_z2() {
        let ring = s3_ring();
        let sub = close(&ring, [1]).unwrap();
        let quotient = quotient_ring(&sub).unwrap();
        assert_eq!(quotient.rank(), 2);
        assert!(quotient.validate().is_valid());
        assert_eq!(quotient.multiplicity(1, 1, 0), 1);
    }

    #[test]
    fn adjoint_subring_of_s3_is_everything_but_sign_generated() {
        // std*std = triv + sgn + std pulls in the whole basis.
        let ring = s3_ring();
        let adjoint = adjoint_subring(&ring);
        assert!(adjoint.is_full());
        // For an abelian ring the adjoint subring is just the unit.
        let z5 = cyclic_ring(5);
        assert_eq!(adjoint_subring(&z5).basis(), &[0]);
    }

    #[test]
    fn inclusions_follow_divisibility() {
        let ring = cyclic_ring(4);
        let lattice = enumerate_subrings(&ring, DEFAULT_MAX_RANK).unwrap();
        assert_eq!(lattice.len(), 3);
        let inclusions = lattice.inclusions();
        assert_eq!(inclusions, vec![(0, 1), (0, 2), (1, 2)]);
    }
}
