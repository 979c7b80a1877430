//! Recovery of abelian group data hidden in a fusion ring.
//!
//! Two constructions are implemented. The invertible characters, those
//! basis elements `p` with `p * dual(p) = unit`, form a group under the
//! tensor product; for the representation ring of a compact group `G` this
//! is the character group of the abelianization `G/[G,G]`. The chain group
//! quotients the basis by connecting `p ~ r` whenever both occur in a
//! common product of basis elements; for a compact group this recovers the
//! character group of the center `Z(G)`, so its invariant factors identify
//! `Z(G)` itself without ever constructing the group.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{AbelianGroup, GroupTableError};
use crate::ring::FusionRing;

/// Failures while extracting group structure from a ring.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecoveryError {
    #[error("product of invertible elements {p} and {q} is not a single basis element")]
    InvertiblesNotClosed { p: usize, q: usize },
    #[error("product of invertible elements {p} and {q} lies beyond the truncation bound")]
    InvertibleProductClipped { p: usize, q: usize },
    #[error("no trusted product determines the product of chain classes {x} and {y}")]
    ChainProductUndetermined { x: usize, y: usize },
    #[error("recovered table is not an abelian group: {0}")]
    NotAGroup(#[from] GroupTableError),
    #[error("chain class of dual({p}) is not the inverse of the chain class of {p}")]
    DualInverseMismatch { p: usize },
    #[error("chain class of the unit is not the identity class")]
    UnitClassNotIdentity,
    #[error("indicator list has {got} entries, ring has rank {rank}")]
    IndicatorLength { rank: usize, got: usize },
    #[error("indicator for {p} is {found:?} but its dual is {dual}; {reason}")]
    IndicatorInconsistent { p: usize, dual: usize, found: FrobeniusSchur, reason: String },
}

/// The invertible basis elements of a ring as an abelian group.
///
/// An element is invertible when `p * dual(p)` is exactly the unit. On a
/// truncated ring only pairs below the bound are examined, so elements
/// whose self-pairing is clipped are conservatively excluded.
pub fn invertible_characters(ring: &FusionRing) -> Result<AbelianGroup, RecoveryError> {
    let rank = ring.rank();
    let mut members = Vec::new();
    for p in 0..rank {
        let q = ring.dual_of(p);
        if !ring.pair_complete(p, q) {
            continue;
        }
        if ring.product_support(p, q) == [(ring.unit(), 1)] {
            members.push(p);
        }
    }
    let position = |p: usize| members.iter().position(|&m| m == p);
    let mut table = vec![vec![0; members.len()]; members.len()];
    for (i, &p) in members.iter().enumerate() {
        for (j, &q) in members.iter().enumerate() {
            if !ring.pair_complete(p, q) {
                return Err(RecoveryError::InvertibleProductClipped { p, q });
            }
            let support = ring.product_support(p, q);
            let r = match support {
                [(r, 1)] => *r,
                _ => return Err(RecoveryError::InvertiblesNotClosed { p, q }),
            };
            table[i][j] =
                position(r).ok_or(RecoveryError::InvertiblesNotClosed { p, q })?;
        }
    }
    let names = members.iter().map(|&p| ring.label(p).to_string()).collect();
    Ok(AbelianGroup::from_table(names, table)?)
}

/// The chain group of a ring: basis classes under the product relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainGroupResult {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    group: AbelianGroup,
}

impl ChainGroupResult {
    /// Class index of basis element `p`.
    pub fn class_of(&self, p: usize) -> usize {
        self.class_of[p]
    }

    /// Basis elements of each class, sorted; classes ordered by least member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// The group structure on the classes.
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }
}

/// Computes the chain group by closing the product relation.
///
/// Basis elements are first merged whenever they occur together in some
/// trusted product `p * q`. The class product `[p] * [q] = [r]` for any
/// constituent `r` of `p * q` must then be well defined; whenever two
/// member pairs of the same class pair produce constituents in different
/// classes, those classes are chained through the very products that
/// witnessed them, so they are merged and the scan repeats to a fixpoint.
pub fn chain_group(ring: &FusionRing) -> Result<ChainGroupResult, RecoveryError> {
    let rank = ring.rank();
    let mut uf = UnionFind::new(rank);
    for p in 0..rank {
        for q in p..rank {
            if !ring.pair_complete(p, q) {
                continue;
            }
            let support = ring.product_support(p, q);
            for window in support.windows(2) {
                uf.union(window[0].0, window[1].0);
            }
        }
    }
    loop {
        let mut changed = false;
        for p in 0..rank {
            for q in p..rank {
                if !ring.pair_complete(p, q) {
                    continue;
                }
                let support = ring.product_support(p, q);
                if support.is_empty() {
                    continue;
                }
                let first = support[0].0;
                for p2 in 0..rank {
                    for q2 in p2..rank {
                        if !ring.pair_complete(p2, q2) {
                            continue;
                        }
                        let same_classes = (uf.find(p2) == uf.find(p)
                            && uf.find(q2) == uf.find(q))
                            || (uf.find(p2) == uf.find(q) && uf.find(q2) == uf.find(p));
                        if !same_classes {
                            continue;
                        }
                        for &(r, _) in ring.product_support(p2, q2) {
                            if uf.find(r) != uf.find(first) {
                                uf.union(r, first);
                                changed = true;
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut roots = BTreeSet::new();
    for p in 0..rank {
        roots.insert(uf.find(p));
    }
    let reps: Vec<usize> = roots.into_iter().collect();
    let class_index = |uf: &mut UnionFind, p: usize| -> usize {
        let root = uf.find(p);
        reps.iter().position(|&r| r == root).expect("root is listed")
    };
    let mut class_of = vec![0; rank];
    for p in 0..rank {
        class_of[p] = class_index(&mut uf, p);
    }
    let count = reps.len();
    let mut classes = vec![Vec::new(); count];
    for p in 0..rank {
        classes[class_of[p]].push(p);
    }

    let mut table = vec![vec![None; count]; count];
    for p in 0..rank {
        for q in p..rank {
            if !ring.pair_complete(p, q) {
                continue;
            }
            let support = ring.product_support(p, q);
            if let Some(&(r, _)) = support.first() {
                table[class_of[p]][class_of[q]] = Some(class_of[r]);
                table[class_of[q]][class_of[p]] = Some(class_of[r]);
            }
        }
    }
    let mut resolved = vec![vec![0; count]; count];
    for x in 0..count {
        for y in 0..count {
            resolved[x][y] =
                table[x][y].ok_or(RecoveryError::ChainProductUndetermined { x, y })?;
        }
    }
    let names = classes
        .iter()
        .map(|members| {
            let labels: Vec<&str> = members.iter().map(|&p| ring.label(p)).collect();
            format!("[{}]", labels.join(" "))
        })
        .collect();
    let group = AbelianGroup::from_table(names, resolved)?;
    if class_of[ring.unit()] != group.identity() {
        return Err(RecoveryError::UnitClassNotIdentity);
    }
    for p in 0..rank {
        let inverse = group.inverse_of(class_of[p]);
        if class_of[ring.dual_of(p)] != inverse {
            return Err(RecoveryError::DualInverseMismatch { p });
        }
    }
    Ok(ChainGroupResult { class_of, classes, group })
}

/// The chain group read as the character group of the center.
///
/// For the representation ring of a compact group `G` the chain group is
/// canonically the character group of `Z(G)`; since a finite abelian group
/// is isomorphic to its character group, the invariant factors returned
/// here identify `Z(G)` up to isomorphism.
pub fn center_dual(ring: &FusionRing) -> Result<AbelianGroup, RecoveryError> {
    Ok(chain_group(ring)?.group().clone())
}

/// Frobenius-Schur classification of one irreducible character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrobeniusSchur {
    Real,
    Complex,
    PseudoReal,
}

impl FrobeniusSchur {
    /// The indicator value, +1, 0, or -1.
    pub fn indicator(self) -> i64 {
        match self {
            FrobeniusSchur::Real => 1,
            FrobeniusSchur::Complex => 0,
            FrobeniusSchur::PseudoReal => -1,
        }
    }
}

impl fmt::Display for FrobeniusSchur {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = match self {
            FrobeniusSchur::Real => "real",
            FrobeniusSchur::Complex => "complex",
            FrobeniusSchur::PseudoReal => "pseudoreal",
        };
        f.write_str(word)
    }
}

/// Outcome of [`check_oddfusion_pseudoreal_center`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CenterCheck {
    /// No pseudo-real basis element, so the hypothesis is vacuous here.
    VacuousNoPseudoReal,
    /// An even multiplicity was found; the odd-fusion hypothesis fails.
    EvenMultiplicity { p: usize, q: usize, r: usize, multiplicity: i64 },
    /// Hypothesis holds and the recovered center is nontrivial.
    Pass { pseudo_real: usize, center: AbelianGroup },
    /// Hypothesis holds yet the recovered center is trivial.
    Fail { pseudo_real: usize },
}

/// Tests, on one ring, the claim that odd fusion multiplicities together
/// with a pseudo-real basis element force a nontrivial center.
///
/// The indicator list is caller-supplied side information (it is not
/// determined by the fusion data); it is first checked for consistency
/// with the dual map, since only self-dual elements can be real or
/// pseudo-real. The multiplicity scan covers trusted pairs only.
pub fn check_oddfusion_pseudoreal_center(
    ring: &FusionRing,
    indicators: &[FrobeniusSchur],
) -> Result<CenterCheck, RecoveryError> {
    let rank = ring.rank();
    if indicators.len() != rank {
        return Err(RecoveryError::IndicatorLength { rank, got: indicators.len() });
    }
    for p in 0..rank {
        let dual = ring.dual_of(p);
        let self_dual = dual == p;
        let found = indicators[p];
        if self_dual && found == FrobeniusSchur::Complex {
            return Err(RecoveryError::IndicatorInconsistent {
                p,
                dual,
                found,
                reason: "self-dual elements have indicator +1 or -1".into(),
            });
        }
        if !self_dual && found != FrobeniusSchur::Complex {
            return Err(RecoveryError::IndicatorInconsistent {
                p,
                dual,
                found,
                reason: "non-self-dual elements have indicator 0".into(),
            });
        }
    }
    let pseudo_real = match indicators.iter().position(|&i| i == FrobeniusSchur::PseudoReal) {
        Some(p) => p,
        None => return Ok(CenterCheck::VacuousNoPseudoReal),
    };
    for (p, q, r, m) in ring.entries() {
        if ring.pair_complete(p, q) && m % 2 == 0 {
            return Ok(CenterCheck::EvenMultiplicity { p, q, r, multiplicity: m });
        }
    }
    let center = center_dual(ring)?;
    if center.order() > 1 {
        Ok(CenterCheck::Pass { pseudo_real, center })
    } else {
        Ok(CenterCheck::Fail { pseudo_real })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller index as root so class numbering is stable.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
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

    /// The 5-element ring of S3: unit, sign, and the 2-dimensional irrep.
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
    fn cyclic_ring_is_all_invertible() {
        for n in [2, 3, 5] {
            let ring = cyclic_ring(n);
            let group = invertible_characters(&ring).unwrap();
            assert_eq!(group.order(), n);
            assert_eq!(group.invariant_factors(), &[n as u64]);
        }
    }

    #[test]
    fn s3_has_two_invertibles() {
        let group = invertible_characters(&s3_ring()).unwrap();
        assert_eq!(group.order(), 2);
        assert_eq!(group.invariant_factors(), &[2]);
        assert_eq!(group.names(), &["triv".to_string(), "sgn".to_string()]);
    }

    #[test]
    fn cyclic_chain_classes_are_singletons() {
        let ring = cyclic_ring(5);
        let chain = chain_group(&ring).unwrap();
        assert_eq!(chain.classes().len(), 5);
        assert_eq!(chain.group().invariant_factors(), &[5]);
    }

    #[test]
    fn s3_chain_group_is_trivial() {
        // std*std contains everything, so all classes merge.
        let chain = chain_group(&s3_ring()).unwrap();
        assert_eq!(chain.classes().len(), 1);
        assert!(chain.group().invariant_factors().is_empty());
    }

    #[test]
    fn center_dual_of_abelian_ring_is_whole_group() {
        let center = center_dual(&cyclic_ring(6)).unwrap();
        assert_eq!(center.invariant_factors(), &[6]);
    }

    #[test]
    fn indicator_consistency_is_enforced() {
        let ring = cyclic_ring(3);
        // g1 is not self-dual, so a Real indicator is inconsistent.
        let err = check_oddfusion_pseudoreal_center(
            &ring,
            &[FrobeniusSchur::Real, FrobeniusSchur::Real, FrobeniusSchur::Complex],
        )
        .unwrap_err();
        assert!(matches!(err, RecoveryError::IndicatorInconsistent { p: 1, .. }));
    }

    #[test]
    fn no_pseudoreal_means_vacuous() {
        let result = check_oddfusion_pseudoreal_center(
            &s3_ring(),
            &[FrobeniusSchur::Real, FrobeniusSchur::Real, FrobeniusSchur::Real],
        )
        .unwrap();
        assert_eq!(result, CenterCheck::VacuousNoPseudoReal);
    }
}
