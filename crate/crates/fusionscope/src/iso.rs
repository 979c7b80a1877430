//! Order isomorphisms between fusion rings.
//!
//! An order isomorphism is a basis bijection preserving unit, duals, and
//! every structure constant; it is exactly a ring isomorphism respecting
//! the positive cone. Famously these cannot see everything: the dihedral
//! and quaternion groups of order eight share one fusion ring. The search
//! here prunes by per-element invariants (Frobenius-Perron dimension,
//! self-duality, row profile) before backtracking, and forces the image of
//! a dual together with each assignment.

use std::sync::Arc;

use crate::ring::FusionRing;
use crate::solver;
use crate::subrings::{RepresentationSubring, SubringError};

/// A basis bijection `perm[p] = image of p` preserving the fusion data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderIsomorphism {
    perm: Vec<usize>,
}

impl OrderIsomorphism {
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, p: usize) -> usize {
        self.perm[p]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// The inverse bijection; an isomorphism from the target back.
    pub fn inverse(&self) -> OrderIsomorphism {
        let mut perm = vec![0; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            perm[j] = i;
        }
        OrderIsomorphism { perm }
    }

    /// `self` after `first`: applies `first`, then `self`.
    pub fn compose(&self, first: &OrderIsomorphism) -> OrderIsomorphism {
        let perm = first.perm.iter().map(|&p| self.perm[p]).collect();
        OrderIsomorphism { perm }
    }
}

/// Per-element invariant used to cut the search space.
///
/// Everything in here is preserved by any order isomorphism: the rounded
/// Frobenius-Perron dimension, self-duality, whether the element is the
/// unit, and the multiset of trusted row data of its fusion matrix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Fingerprint {
    is_unit: bool,
    self_dual: bool,
    fp_micro: i64,
    trusted_rows: usize,
    row_profile: Vec<(usize, Vec<i64>)>,
}

fn fingerprints(ring: &FusionRing) -> Vec<Fingerprint> {
    let dims = solver::fp_dimensions(ring);
    let rank = ring.rank();
    (0..rank)
        .map(|p| {
            let mut trusted_rows = 0;
            let mut row_profile = Vec::new();
            for q in 0..rank {
                if !ring.pair_complete(p, q) {
                    continue;
                }
                trusted_rows += 1;
                let mut multiplicities: Vec<i64> =
                    ring.product_support(p, q).iter().map(|&(_, m)| m).collect();
                multiplicities.sort_unstable();
                row_profile.push((ring.product_support(p, q).len(), multiplicities));
            }
            row_profile.sort();
            Fingerprint {
                is_unit: p == ring.unit(),
                self_dual: ring.dual_of(p) == p,
                fp_micro: (dims[p] * 1e6).round() as i64,
                trusted_rows,
                row_profile,
            }
        })
        .collect()
}

/// Shared backtracking over basis bijections from `a` to `b`.
///
/// `emit` receives each complete isomorphism; returning `false` stops the
/// search early.
fn search_isomorphisms(
    a: &FusionRing,
    b: &FusionRing,
    emit: &mut dyn FnMut(OrderIsomorphism) -> bool,
) {
    let rank = a.rank();
    if rank != b.rank() || a.complete_below() != b.complete_below() {
        return;
    }
    let fp_a = fingerprints(a);
    let fp_b = fingerprints(b);
    let candidates: Vec<Vec<usize>> = (0..rank)
        .map(|p| (0..rank).filter(|&q| fp_a[p] == fp_b[q]).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return;
    }
    // Assign scarcest elements first so contradictions surface early.
    let mut order: Vec<usize> = (0..rank).collect();
    order.sort_by_key(|&p| candidates[p].len());
    let mut perm = vec![usize::MAX; rank];
    let mut used = vec![false; rank];
    backtrack(a, b, &candidates, &order, 0, &mut perm, &mut used, emit);
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    a: &FusionRing,
    b: &FusionRing,
    candidates: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    emit: &mut dyn FnMut(OrderIsomorphism) -> bool,
) -> bool {
    if depth == order.len() {
        let iso = OrderIsomorphism { perm: perm.clone() };
        return emit(iso);
    }
    let p = order[depth];
    if perm[p] != usize::MAX {
        // Already forced as the dual image of an earlier assignment.
        return backtrack(a, b, candidates, order, depth + 1, perm, used, emit);
    }
    for &q in &candidates[p] {
        if used[q] {
            continue;
        }
        let dual_p = a.dual_of(p);
        let dual_q = b.dual_of(q);
        let forced_dual = perm[dual_p] == usize::MAX && dual_p != p;
        if perm[dual_p] != usize::MAX && perm[dual_p] != dual_q {
            continue;
        }
        if forced_dual && (used[dual_q] || !candidates[dual_p].contains(&dual_q)) {
            continue;
        }
        perm[p] = q;
        used[q] = true;
        if forced_dual {
            perm[dual_p] = dual_q;
            used[dual_q] = true;
        }
        if partial_consistent(a, b, perm) {
            if !backtrack(a, b, candidates, order, depth + 1, perm, used, emit) {
                return false;
            }
        }
        perm[p] = usize::MAX;
        used[q] = false;
        if forced_dual {
            perm[dual_p] = usize::MAX;
            used[dual_q] = false;
        }
    }
    true
}

/// Checks every fully assigned pair against the target tensor.
fn partial_consistent(a: &FusionRing, b: &FusionRing, perm: &[usize]) -> bool {
    let rank = a.rank();
    for p in 0..rank {
        if perm[p] == usize::MAX {
            continue;
        }
        for q in p..rank {
            if perm[q] == usize::MAX {
                continue;
            }
            let trusted_a = a.pair_complete(p, q);
            let trusted_b = b.pair_complete(perm[p], perm[q]);
            if trusted_a != trusted_b {
                return false;
            }
            if !trusted_a {
                continue;
            }
            let support_a = a.product_support(p, q);
            let support_b = b.product_support(perm[p], perm[q]);
            if support_a.len() != support_b.len() {
                return false;
            }
            let mass_a: i64 = support_a.iter().map(|&(_, m)| m).sum();
            let mass_b: i64 = support_b.iter().map(|&(_, m)| m).sum();
            if mass_a != mass_b {
                return false;
            }
            for &(r, m) in support_a {
                if perm[r] != usize::MAX && b.multiplicity(perm[p], perm[q], perm[r]) != m {
                    return false;
                }
            }
        }
    }
    true
}

fn fully_consistent(a: &FusionRing, b: &FusionRing, iso: &OrderIsomorphism) -> bool {
    if iso.apply(a.unit()) != b.unit() {
        return false;
    }
    let rank = a.rank();
    for p in 0..rank {
        if iso.apply(a.dual_of(p)) != b.dual_of(iso.apply(p)) {
            return false;
        }
        for q in 0..rank {
            if a.pair_complete(p, q) != b.pair_complete(iso.apply(p), iso.apply(q)) {
                return false;
            }
            if !a.pair_complete(p, q) {
                continue;
            }
            for r in 0..rank {
                if a.multiplicity(p, q, r)
                    != b.multiplicity(iso.apply(p), iso.apply(q), iso.apply(r))
                {
                    return false;
                }
            }
        }
    }
    true
}

/// All order automorphisms of a ring, identity included.
pub fn order_automorphisms(
    ring: &Arc<FusionRing>,
    max_rank: usize,
) -> Result<Vec<OrderIsomorphism>, SubringError> {
    let rank = ring.rank();
    if rank > max_rank {
        return Err(SubringError::RankOverBound { rank, max_rank });
    }
    let mut found = Vec::new();
    search_isomorphisms(ring, ring, &mut |iso| {
        if fully_consistent(ring, ring, &iso) {
            found.push(iso);
        }
        true
    });
    found.sort_by(|x, y| x.perm.cmp(&y.perm));
    Ok(found)
}

/// Some order isomorphism between two rings, if one exists.
pub fn find_order_isomorphism(
    a: &Arc<FusionRing>,
    b: &Arc<FusionRing>,
    max_rank: usize,
) -> Result<Option<OrderIsomorphism>, SubringError> {
    let rank = a.rank().max(b.rank());
    if rank > max_rank {
        return Err(SubringError::RankOverBound { rank, max_rank });
    }
    let mut found = None;
    search_isomorphisms(a, b, &mut |iso| {
        if fully_consistent(a, b, &iso) {
            found = Some(iso);
            false
        } else {
            true
        }
    });
    Ok(found)
}

/// Whether a subring is fixed setwise by every order automorphism.
///
/// For the representation ring of a connected compact group this is the
/// test for a subring being of the form `R(G/H)`; without connectedness it
/// is only a necessary condition, so callers should phrase conclusions
/// accordingly.
pub fn characteristic_check(
    sub: &RepresentationSubring,
    max_rank: usize,
) -> Result<bool, SubringError> {
    let automorphisms = order_automorphisms(sub.ring(), max_rank)?;
    Ok(automorphisms.iter().all(|iso| {
        sub.basis().iter().all(|&p| sub.contains(iso.apply(p)))
    }))
}
