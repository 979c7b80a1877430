//! Fusion rings and the nonnegative cone of generalized characters.
//!
//! A [`FusionRing`] stores the structure constants `N^r_{p,q}` of a based
//! ring with unit and dual involution. The constants are kept sparse and
//! exact; products of [`GeneralizedCharacter`]s use checked `i64` arithmetic
//! throughout. A ring may be truncated: when `complete_below` is set, only
//! pairs `(p, q)` with `p + q <= bound` carry trustworthy fusion data, and
//! every consumer of the tensor restricts itself to those pairs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest multiplicity accepted by [`FusionRing::new`].
///
/// Capping entries at `2^31` keeps every `i128` accumulation in `validate`
/// and `multiply` far from overflow while allowing any realistic tensor.
pub const MAX_MULTIPLICITY: i64 = 1 << 31;

/// Structural errors raised while building a ring or operating on it.
///
/// These are malformed-input conditions, distinct from the axiom violations
/// that [`FusionRing::validate`] reports on a structurally well-formed ring.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("a fusion ring needs at least one basis element")]
    EmptyBasis,
    #[error("expected {rank} labels, got {got}")]
    LabelCount { rank: usize, got: usize },
    #[error("label `{label}` appears more than once")]
    DuplicateLabel { label: String },
    #[error("unit index {unit} is out of range for rank {rank}")]
    UnitOutOfRange { unit: usize, rank: usize },
    #[error("dual map has length {got}, expected {rank}")]
    DualLength { rank: usize, got: usize },
    #[error("dual map is not a permutation of 0..{rank}")]
    DualNotPermutation { rank: usize },
    #[error("fusion entry ({p},{q},{r}) has an index out of range for rank {rank}")]
    EntryOutOfRange { p: usize, q: usize, r: usize, rank: usize },
    #[error("fusion entry ({p},{q},{r}) has multiplicity {value}; multiplicities must be >= 1")]
    NonPositiveMultiplicity { p: usize, q: usize, r: usize, value: i64 },
    #[error("fusion entry ({p},{q},{r}) has multiplicity {value} above the supported cap {cap}")]
    MultiplicityTooLarge { p: usize, q: usize, r: usize, value: i64, cap: i64 },
    #[error("fusion entry ({p},{q},{r}) appears more than once after commutative normalization")]
    DuplicateEntry { p: usize, q: usize, r: usize },
    #[error("truncation bound {bound} cannot cover any pair of rank {rank}")]
    BoundUnusable { bound: usize, rank: usize },
    #[error("operands belong to different fusion rings")]
    RingMismatch,
    #[error("product touches pair ({p},{q}) beyond the truncation bound")]
    Truncated { p: usize, q: usize },
    #[error("coefficient vector has {got} entries, ring has rank {rank}")]
    CoefficientLength { rank: usize, got: usize },
    #[error("basis index {index} is out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("coefficient at index {index} is negative; not in the positive cone")]
    NotInPositiveCone { index: usize },
    #[error("integer overflow in ring arithmetic")]
    Overflow,
}

/// One violated ring axiom together with a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `dual(dual(p)) != p`.
    DualNotInvolutive { p: usize, image: usize },
    /// The dual of the unit is not the unit.
    DualMovesUnit { image: usize },
    /// `N^r_{unit,q}` differs from the Kronecker delta.
    UnitLaw { q: usize, r: usize, expected: i64, found: i64 },
    /// `N^{unit}_{p,q}` differs from `delta_{q,dual(p)}`.
    Duality { p: usize, q: usize, expected: i64, found: i64 },
    /// The two bracketings of `p * q * r` disagree in the coefficient of `t`.
    Associativity { p: usize, q: usize, r: usize, t: usize, lhs: i64, rhs: i64 },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::DualNotInvolutive { p, image } => {
                write!(f, "dual is not an involution: dual(dual({p})) = {image} != {p}")
            }
            AxiomViolation::DualMovesUnit { image } => {
                write!(f, "dual moves the unit to {image}")
            }
            AxiomViolation::UnitLaw { q, r, expected, found } => {
                write!(
                    f,
                    "unit law fails: N^{r}_{{unit,{q}}} = {found}, expected {expected}"
                )
            }
            AxiomViolation::Duality { p, q, expected, found } => {
                write!(
                    f,
                    "duality fails: N^unit_{{{p},{q}}} = {found}, expected {expected}"
                )
            }
            AxiomViolation::Associativity { p, q, r, t, lhs, rhs } => {
                write!(
                    f,
                    "associativity fails: coefficient of {t} in ({p}*{q})*{r} is {lhs}, in {p}*({q}*{r}) is {rhs}"
                )
            }
        }
    }
}

/// Outcome of [`FusionRing::validate`]: empty means every checkable axiom holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[AxiomViolation] {
        &self.violations
    }
}

/// A based ring with unit, dual involution, and sparse nonnegative tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    name: String,
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    tensor: BTreeMap<(usize, usize), Vec<(usize, i64)>>,
    complete_below: Option<usize>,
}

impl FusionRing {
    /// Builds a ring from raw data, checking structure but not the axioms.
    ///
    /// Entries are quadruples `(p, q, r, m)` meaning `N^r_{p,q} = m`; the
    /// pair `(p, q)` is normalized to `p <= q` and the same `(p, q, r)` may
    /// not appear twice. Absent entries are zero. `complete_below` marks a
    /// truncated ring whose tensor is only meaningful on pairs with
    /// `p + q <= bound`.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        unit: usize,
        dual: Vec<usize>,
        entries: &[(usize, usize, usize, i64)],
        complete_below: Option<usize>,
    ) -> Result<Self, RingError> {
        let rank = labels.len();
        if rank == 0 {
            return Err(RingError::EmptyBasis);
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(RingError::DuplicateLabel { label: label.clone() });
            }
        }
        if unit >= rank {
            return Err(RingError::UnitOutOfRange { unit, rank });
        }
        if dual.len() != rank {
            return Err(RingError::DualLength { rank, got: dual.len() });
        }
        let mut hit = vec![false; rank];
        for &image in &dual {
            if image >= rank || hit[image] {
                return Err(RingError::DualNotPermutation { rank });
            }
            hit[image] = true;
        }
        if let Some(bound) = complete_below {
            // The unit pair must stay trusted or nothing can be computed.
            if unit + unit > bound {
                return Err(RingError::BoundUnusable { bound, rank });
            }
        }
        let mut tensor: BTreeMap<(usize, usize), BTreeMap<usize, i64>> = BTreeMap::new();
        for &(p, q, r, m) in entries {
            if p >= rank || q >= rank || r >= rank {
                return Err(RingError::EntryOutOfRange { p, q, r, rank });
            }
            if m < 1 {
                return Err(RingError::NonPositiveMultiplicity { p, q, r, value: m });
            }
            if m > MAX_MULTIPLICITY {
                return Err(RingError::MultiplicityTooLarge {
                    p,
                    q,
                    r,
                    value: m,
                    cap: MAX_MULTIPLICITY,
                });
            }
            let key = (p.min(q), p.max(q));
            if tensor.entry(key).or_default().insert(r, m).is_some() {
                return Err(RingError::DuplicateEntry { p: key.0, q: key.1, r });
            }
        }
        let tensor = tensor
            .into_iter()
            .map(|(key, row)| (key, row.into_iter().collect()))
            .collect();
        Ok(FusionRing {
            name: name.into(),
            labels,
            unit,
            dual,
            tensor,
            complete_below,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual_map(&self) -> &[usize] {
        &self.dual
    }

    pub fn dual_of(&self, p: usize) -> usize {
        self.dual[p]
    }

    pub fn complete_below(&self) -> Option<usize> {
        self.complete_below
    }

    pub fn is_truncated(&self) -> bool {
        self.complete_below.is_some()
    }

    /// Whether the tensor row for `(p, q)` is trustworthy.
    pub fn pair_complete(&self, p: usize, q: usize) -> bool {
        self.complete_below.map_or(true, |bound| p + q <= bound)
    }

    /// The structure constant `N^r_{p,q}`, zero when absent.
    ///
    /// Callers on truncated rings should gate on [`Self::pair_complete`];
    /// this accessor reports the stored value either way.
    pub fn multiplicity(&self, p: usize, q: usize, r: usize) -> i64 {
        let key = (p.min(q), p.max(q));
        self.tensor
            .get(&key)
            .and_then(|row| row.iter().find(|&&(s, _)| s == r))
            .map_or(0, |&(_, m)| m)
    }

    /// The nonzero part of the product `p * q`, sorted by basis index.
    pub fn product_support(&self, p: usize, q: usize) -> &[(usize, i64)] {
        let key = (p.min(q), p.max(q));
        self.tensor.get(&key).map_or(&[], |row| row.as_slice())
    }

    /// All stored tensor entries as `(p, q, r, m)` with `p <= q`, sorted.
    pub fn entries(&self) -> Vec<(usize, usize, usize, i64)> {
        let mut out = Vec::new();
        for (&(p, q), row) in &self.tensor {
            for &(r, m) in row {
                out.push((p, q, r, m));
            }
        }
        out
    }

    /// Pairs `(p, q)` with `p <= q` that carry trustworthy fusion data.
    pub fn trusted_pairs(&self) -> Vec<(usize, usize)> {
        let rank = self.rank();
        let mut out = Vec::new();
        for p in 0..rank {
            for q in p..rank {
                if self.pair_complete(p, q) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Checks the ring axioms and returns every violation with a witness.
    ///
    /// Five families are checked: the dual is an involution fixing the unit,
    /// the unit multiplies as identity, `N^{unit}_{p,q} = delta_{q,dual(p)}`,
    /// and associativity of the structure constants. On truncated rings each
    /// check runs only where every tensor row it touches is trusted.
    pub fn validate(&self) -> ValidationReport {
        let rank = self.rank();
        let mut violations = Vec::new();

        for p in 0..rank {
            let image = self.dual[self.dual[p]];
            if image != p {
                violations.push(AxiomViolation::DualNotInvolutive { p, image });
            }
        }
        if self.dual[self.unit] != self.unit {
            violations.push(AxiomViolation::DualMovesUnit { image: self.dual[self.unit] });
        }

        for q in 0..rank {
            if !self.pair_complete(self.unit, q) {
                continue;
            }
            for r in 0..rank {
                let expected = i64::from(r == q);
                let found = self.multiplicity(self.unit, q, r);
                if found != expected {
                    violations.push(AxiomViolation::UnitLaw { q, r, expected, found });
                }
            }
        }

        for p in 0..rank {
            for q in 0..rank {
                if !self.pair_complete(p, q) {
                    continue;
                }
                let expected = i64::from(q == self.dual[p]);
                let found = self.multiplicity(p, q, self.unit);
                if found != expected {
                    violations.push(AxiomViolation::Duality { p, q, expected, found });
                }
            }
        }

        for p in 0..rank {
            for q in 0..rank {
                for r in 0..rank {
                    if let Some((t, lhs, rhs)) = self.associativity_defect(p, q, r) {
                        violations.push(AxiomViolation::Associativity { p, q, r, t, lhs, rhs });
                    }
                }
            }
        }

        ValidationReport { violations }
    }

    /// First coefficient where `(p*q)*r` and `p*(q*r)` disagree, if any.
    ///
    /// Returns `None` when the triple associates or when truncation makes it
    /// uncheckable. Accumulation is in `i128`, which cannot overflow under
    /// the [`MAX_MULTIPLICITY`] cap.
    fn associativity_defect(&self, p: usize, q: usize, r: usize) -> Option<(usize, i64, i64)> {
        if !self.pair_complete(p, q) || !self.pair_complete(q, r) {
            return None;
        }
        for &(s, _) in self.product_support(p, q) {
            if !self.pair_complete(s, r) {
                return None;
            }
        }
        for &(s, _) in self.product_support(q, r) {
            if !self.pair_complete(p, s) {
                return None;
            }
        }
        let rank = self.rank();
        let mut lhs = vec![0i128; rank];
        for &(s, m) in self.product_support(p, q) {
            for &(t, n) in self.product_support(s, r) {
                lhs[t] += i128::from(m) * i128::from(n);
            }
        }
        let mut rhs = vec![0i128; rank];
        for &(s, m) in self.product_support(q, r) {
            for &(t, n) in self.product_support(p, s) {
                rhs[t] += i128::from(m) * i128::from(n);
            }
        }
        for t in 0..rank {
            if lhs[t] != rhs[t] {
                return Some((t, lhs[t] as i64, rhs[t] as i64));
            }
        }
        None
    }

    /// The basis character at index `p` as a generalized character.
    pub fn basis_char(self: &Arc<Self>, p: usize) -> Result<GeneralizedCharacter, RingError> {
        let rank = self.rank();
        if p >= rank {
            return Err(RingError::IndexOutOfRange { index: p, rank });
        }
        let mut coeffs = vec![0; rank];
        coeffs[p] = 1;
        Ok(GeneralizedCharacter { ring: Arc::clone(self), coeffs })
    }

    /// The unit of the ring as a generalized character.
    pub fn unit_char(self: &Arc<Self>) -> GeneralizedCharacter {
        self.basis_char(self.unit).expect("unit index is in range")
    }

    /// A generalized character with the given coefficient vector.
    pub fn character(
        self: &Arc<Self>,
        coeffs: Vec<i64>,
    ) -> Result<GeneralizedCharacter, RingError> {
        let rank = self.rank();
        if coeffs.len() != rank {
            return Err(RingError::CoefficientLength { rank, got: coeffs.len() });
        }
        Ok(GeneralizedCharacter { ring: Arc::clone(self), coeffs })
    }
}

/// An integer combination of basis characters of a fixed ring.
///
/// Coefficients may be negative; the positive cone (all coefficients
/// nonnegative) is what [`Self::decompose`] and the partial order
/// [`Self::leq`] single out.
#[derive(Debug, Clone)]
pub struct GeneralizedCharacter {
    ring: Arc<FusionRing>,
    coeffs: Vec<i64>,
}

impl PartialEq for GeneralizedCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.coeffs == other.coeffs
    }
}

impl Eq for GeneralizedCharacter {}

impl GeneralizedCharacter {
    pub fn ring(&self) -> &Arc<FusionRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, r: usize) -> i64 {
        self.coeffs[r]
    }

    fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Whether every coefficient is nonnegative.
    pub fn in_positive_cone(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// The product in the ring, expanded through the fusion tensor.
    ///
    /// Fails with [`RingError::Truncated`] if any pair of basis elements
    /// with nonzero coefficients falls beyond the truncation bound, and
    /// with [`RingError::Overflow`] if a coefficient leaves `i64`.
    pub fn multiply(&self, other: &Self) -> Result<Self, RingError> {
        if !self.same_ring(other) {
            return Err(RingError::RingMismatch);
        }
        let rank = self.ring.rank();
        let mut acc = vec![0i128; rank];
        for p in 0..rank {
            let a = self.coeffs[p];
            if a == 0 {
                continue;
            }
            for q in 0..rank {
                let b = other.coeffs[q];
                if b == 0 {
                    continue;
                }
                if !self.ring.pair_complete(p, q) {
                    return Err(RingError::Truncated { p: p.min(q), q: p.max(q) });
                }
                let weight = i128::from(a) * i128::from(b);
                for &(r, m) in self.ring.product_support(p, q) {
                    acc[r] += weight * i128::from(m);
                }
            }
        }
        let mut coeffs = Vec::with_capacity(rank);
        for value in acc {
            coeffs.push(i64::try_from(value).map_err(|_| RingError::Overflow)?);
        }
        Ok(GeneralizedCharacter { ring: Arc::clone(&self.ring), coeffs })
    }

    /// The partial order of the positive cone: `self <= other` iff the
    /// difference is a nonnegative combination.
    pub fn leq(&self, other: &Self) -> Result<bool, RingError> {
        if !self.same_ring(other) {
            return Err(RingError::RingMismatch);
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(&a, &b)| a <= b))
    }

    /// Splits a positive-cone element into `(basis index, multiplicity)`
    /// pairs; rejects characters with a negative coefficient.
    pub fn decompose(&self) -> Result<Vec<(usize, i64)>, RingError> {
        if let Some(index) = self.coeffs.iter().position(|&c| c < 0) {
            return Err(RingError::NotInPositiveCone { index });
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(r, &c)| (r, c))
            .collect())
    }

    /// The image under the dual involution.
    ///
    /// On rings of group representations this map is a ring homomorphism
    /// (conjugation of characters); the ring axioms alone only make it an
    /// involution on the basis.
    pub fn dual(&self) -> Self {
        let rank = self.ring.rank();
        let mut coeffs = vec![0; rank];
        for (r, &c) in self.coeffs.iter().enumerate() {
            coeffs[self.ring.dual_of(r)] = c;
        }
        GeneralizedCharacter { ring: Arc::clone(&self.ring), coeffs }
    }

    /// Checked sum of two characters of the same ring.
    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        if !self.same_ring(other) {
            return Err(RingError::RingMismatch);
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (&a, &b) in self.coeffs.iter().zip(&other.coeffs) {
            coeffs.push(a.checked_add(b).ok_or(RingError::Overflow)?);
        }
        Ok(GeneralizedCharacter { ring: Arc::clone(&self.ring), coeffs })
    }
}
