//! The SU(2) tensor product rules, re-derived from dimension data.
//!
//! Starting from nothing but the list of irreducible dimensions (one spin
//! per dimension) and the ring axioms, the decomposition of
//! `D_{1/2} (x) D_k` is forced uniquely for every `k`, by induction on
//! `k`: duality pins the trivial constituent, the previously derived rows
//! pin every constituent below `k`, and a dimension count leaves exactly
//! one way to fill the rest. Iterating the half-spin rule then expresses
//! every character as a polynomial in `chi_{1/2}`, and multiplying those
//! polynomials recovers the full Clebsch-Gordan series.
//!
//! Coefficients use checked `i128`; the binomials involved stay well
//! inside that range for `2j` up to around 120, and anything beyond
//! reports [`Su2Error::Overflow`] instead of wrapping.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::abelian::AbelianGroup;
use crate::recovery::FrobeniusSchur;
use crate::ring::FusionRing;

/// Errors from the derivation and the character arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Su2Error {
    #[error("dimension count admits {candidates} completions for 2k = {twice_k}; derivation is not forced")]
    DerivationAmbiguous { twice_k: u32, candidates: usize },
    #[error("derived decomposition for 2k = {twice_k} disagrees with the closed form")]
    DerivationMismatch { twice_k: u32 },
    #[error("power-series route and closed form disagree for 2j = {twice_j1}, 2j2 = {twice_j2}")]
    RouteMismatch { twice_j1: u32, twice_j2: u32 },
    #[error("coefficient arithmetic overflowed 128 bits")]
    Overflow,
}

/// A spin `j` stored as `2j`, so half-integers stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinIndex {
    twice_j: u32,
}

impl SpinIndex {
    pub fn from_twice(twice_j: u32) -> Self {
        SpinIndex { twice_j }
    }

    pub fn from_int(j: u32) -> Self {
        SpinIndex { twice_j: 2 * j }
    }

    pub fn twice(&self) -> u32 {
        self.twice_j
    }

    /// Dimension of the irreducible `D_j`, which is `2j + 1`.
    pub fn dim(&self) -> u32 {
        self.twice_j + 1
    }

    pub fn is_integer(&self) -> bool {
        self.twice_j % 2 == 0
    }
}

impl fmt::Display for SpinIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_j % 2 == 0 {
            write!(f, "{}", self.twice_j / 2)
        } else {
            write!(f, "{}/2", self.twice_j)
        }
    }
}

/// An integer combination of SU(2) characters, indexed by spin.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Su2Character {
    coeffs: BTreeMap<SpinIndex, i128>,
}

impl Su2Character {
    pub fn zero() -> Self {
        Su2Character::default()
    }

    pub fn basis(spin: SpinIndex) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(spin, 1);
        Su2Character { coeffs }
    }

    pub fn coeff(&self, spin: SpinIndex) -> i128 {
        self.coeffs.get(&spin).copied().unwrap_or(0)
    }

    /// Nonzero terms in increasing spin order.
    pub fn terms(&self) -> impl Iterator<Item = (SpinIndex, i128)> + '_ {
        self.coeffs.iter().map(|(&s, &c)| (s, c))
    }

    pub fn add_term(&mut self, spin: SpinIndex, coeff: i128) -> Result<(), Su2Error> {
        let entry = self.coeffs.entry(spin).or_insert(0);
        *entry = entry.checked_add(coeff).ok_or(Su2Error::Overflow)?;
        if *entry == 0 {
            self.coeffs.remove(&spin);
        }
        Ok(())
    }

    pub fn add(&self, other: &Su2Character) -> Result<Su2Character, Su2Error> {
        let mut out = self.clone();
        for (spin, coeff) in other.terms() {
            out.add_term(spin, coeff)?;
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: i128) -> Result<Su2Character, Su2Error> {
        let mut out = Su2Character::zero();
        for (spin, coeff) in self.terms() {
            out.add_term(spin, coeff.checked_mul(factor).ok_or(Su2Error::Overflow)?)?;
        }
        Ok(out)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.coeffs.values().all(|&c| c == 0 || c == 1)
    }

    /// Total dimension, the value of the character at the identity.
    pub fn dimension(&self) -> Result<i128, Su2Error> {
        let mut total = 0i128;
        for (spin, coeff) in self.terms() {
            let term = coeff
                .checked_mul(i128::from(spin.dim()))
                .ok_or(Su2Error::Overflow)?;
            total = total.checked_add(term).ok_or(Su2Error::Overflow)?;
        }
        Ok(total)
    }
}

/// The derived decompositions of `D_{1/2} (x) D_k` for `2k` up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfProductTable {
    rows: Vec<Su2Character>,
}

impl HalfProductTable {
    /// Decomposition of `D_{1/2} (x) D_k`; `twice_k` from 1 to the bound.
    pub fn row(&self, twice_k: u32) -> &Su2Character {
        &self.rows[twice_k as usize - 1]
    }

    pub fn max_twice(&self) -> u32 {
        self.rows.len() as u32
    }

    /// Multiplies a character by `chi_{1/2}` using only the derived rows.
    pub fn multiply_by_half(&self, character: &Su2Character) -> Result<Su2Character, Su2Error> {
        let mut out = Su2Character::zero();
        for (spin, coeff) in character.terms() {
            if spin.twice() == 0 {
                out.add_term(SpinIndex::from_twice(1), coeff)?;
            } else {
                let row = self.row(spin.twice());
                out = out.add(&row.scaled(coeff)?)?;
            }
        }
        Ok(out)
    }
}

/// Derives `D_{1/2} (x) D_k` for every `2k <= max_twice`, by induction.
///
/// For each `k` three constraints are assembled without assuming the
/// answer. Duality forces the trivial constituent: `D_0` occurs exactly
/// once when `k = 1/2` and never otherwise, since every spin is
/// self-dual. For `0 < j < k` the multiplicity of `D_j` equals the
/// multiplicity of `D_0` in `D_j (x) D_{1/2} (x) D_k`, and rewriting that
/// product through the already derived row for `j` reduces it to a count
/// of constituents equal to `k`. The remaining dimension budget is then
/// filled by enumerating all multisets of spins `>= k`; the enumeration
/// must produce exactly one candidate, and the assembled row must equal
/// `D_{k-1/2} + D_{k+1/2}`, or the derivation reports failure.
pub fn derive_half_tensor(max_twice: u32) -> Result<HalfProductTable, Su2Error> {
    let mut rows: Vec<Su2Character> = Vec::new();
    for t in 1..=max_twice {
        let target_dim = 2 * (t + 1);
        let mut forced = Su2Character::zero();
        // Trivial constituent from duality.
        if t == 1 {
            forced.add_term(SpinIndex::from_twice(0), 1)?;
        }
        // Constituents strictly between 0 and k from the earlier rows.
        for s in 1..t {
            let mut multiplicity = 0;
            for (constituent, coeff) in rows[s as usize - 1].terms() {
                if constituent.twice() == t {
                    multiplicity += coeff;
                }
            }
            if multiplicity > 0 {
                forced.add_term(SpinIndex::from_twice(s), multiplicity)?;
            }
        }
        let forced_dim = forced.dimension()?;
        let budget = i128::from(target_dim) - forced_dim;
        if budget < 0 {
            return Err(Su2Error::DerivationAmbiguous { twice_k: t, candidates: 0 });
        }
        let candidates = fill_multisets(t, budget as u32);
        if candidates.len() != 1 {
            return Err(Su2Error::DerivationAmbiguous { twice_k: t, candidates: candidates.len() });
        }
        let mut row = forced;
        for &twice in &candidates[0] {
            row.add_term(SpinIndex::from_twice(twice), 1)?;
        }
        let mut closed_form = Su2Character::zero();
        closed_form.add_term(SpinIndex::from_twice(t - 1), 1)?;
        closed_form.add_term(SpinIndex::from_twice(t + 1), 1)?;
        if row != closed_form {
            return Err(Su2Error::DerivationMismatch { twice_k: t });
        }
        rows.push(row);
    }
    Ok(HalfProductTable { rows })
}

/// All multisets of spins with `2j >= min_twice` whose dimensions sum to
/// `budget`, each returned as a sorted list of `2j` values.
fn fill_multisets(min_twice: u32, budget: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_recurse(min_twice, budget, &mut current, &mut out);
    out
}

fn fill_recurse(min_twice: u32, budget: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if budget == 0 {
        out.push(current.clone());
        return;
    }
    let mut twice = min_twice;
    while twice + 1 <= budget {
        current.push(twice);
        fill_recurse(twice, budget - (twice + 1), current, out);
        current.pop();
        twice += 1;
    }
}

fn binomial(n: u32, k: u32) -> Result<i128, Su2Error> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut result = 1i128;
    for i in 1..=k {
        result = result
            .checked_mul(i128::from(n - k + i))
            .ok_or(Su2Error::Overflow)?;
        result /= i128::from(i);
    }
    Ok(result)
}

/// Expands `chi_{1/2}^n` into irreducible characters.
///
/// The multiplicity of `chi_{(n-2i)/2}` is `C(n,i) - C(n,i-1)`, the
/// ballot number, for `i` from 0 through `floor(n/2)`. The summation must
/// run through `floor(n/2)` inclusive: a limit of `n/2 - 1`, which some
/// closed-form statements of this expansion use, drops the trivial
/// component of every even power (already at `n = 4`, where the correct
/// expansion is `chi_2 + 3 chi_1 + 2 chi_0`). The iterated-product route
/// in [`HalfProductTable::multiply_by_half`] confirms the inclusive
/// limit.
pub fn chi_half_power(n: u32) -> Result<Su2Character, Su2Error> {
    let mut out = Su2Character::zero();
    for i in 0..=n / 2 {
        let multiplicity = binomial(n, i)?
            .checked_sub(if i == 0 { 0 } else { binomial(n, i - 1)? })
            .ok_or(Su2Error::Overflow)?;
        if multiplicity != 0 {
            out.add_term(SpinIndex::from_twice(n - 2 * i), multiplicity)?;
        }
    }
    Ok(out)
}

/// Writes `chi_j` as a polynomial in `chi_{1/2}`: pairs `(power, coeff)`.
///
/// The coefficient of `chi_{1/2}^(2j-2i)` is `(-1)^i C(2j-i, i)` for `i`
/// from 0 through the integer part of `j`.
pub fn chi_in_half_powers(spin: SpinIndex) -> Result<Vec<(u32, i128)>, Su2Error> {
    let t = spin.twice();
    let mut out = Vec::new();
    for i in 0..=t / 2 {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let coeff = binomial(t - i, i)?.checked_mul(sign).ok_or(Su2Error::Overflow)?;
        out.push((t - 2 * i, coeff));
    }
    Ok(out)
}

/// The Clebsch-Gordan series `D_{j1} (x) D_{j2}`, computed two ways.
///
/// The power route expands both factors as polynomials in `chi_{1/2}`,
/// multiplies them, and converts each power back to irreducibles; the
/// closed form is the ladder from `|j1 - j2|` to `j1 + j2` in integer
/// steps. The two must agree exactly or an internal-consistency error is
/// returned.
pub fn cg_product(j1: SpinIndex, j2: SpinIndex) -> Result<Su2Character, Su2Error> {
    let expansion1 = chi_in_half_powers(j1)?;
    let expansion2 = chi_in_half_powers(j2)?;
    let mut power_cache: BTreeMap<u32, Su2Character> = BTreeMap::new();
    let mut via_powers = Su2Character::zero();
    for &(power1, coeff1) in &expansion1 {
        for &(power2, coeff2) in &expansion2 {
            let n = power1 + power2;
            if !power_cache.contains_key(&n) {
                power_cache.insert(n, chi_half_power(n)?);
            }
            let weight = coeff1.checked_mul(coeff2).ok_or(Su2Error::Overflow)?;
            let contribution = power_cache[&n].scaled(weight)?;
            via_powers = via_powers.add(&contribution)?;
        }
    }
    let mut closed = Su2Character::zero();
    let (t1, t2) = (j1.twice(), j2.twice());
    let mut t = t1.abs_diff(t2);
    while t <= t1 + t2 {
        closed.add_term(SpinIndex::from_twice(t), 1)?;
        t += 2;
    }
    if via_powers != closed {
        return Err(Su2Error::RouteMismatch { twice_j1: t1, twice_j2: t2 });
    }
    Ok(closed)
}

/// Frobenius-Schur indicator of `D_j`: real for integer spin, pseudo-real
/// for half-integer spin.
pub fn fs_indicator(spin: SpinIndex) -> FrobeniusSchur {
    if spin.is_integer() {
        FrobeniusSchur::Real
    } else {
        FrobeniusSchur::PseudoReal
    }
}

/// The grading of spins by parity of `2j`, as an abelian group.
///
/// Integer spins are exactly the representations trivial on the center
/// `{1, -1}` of SU(2), so this grading is the chain-group structure made
/// explicit: two classes forming Z2.
pub struct ParityGrading {
    group: AbelianGroup,
}

impl ParityGrading {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn class_of(&self, spin: SpinIndex) -> usize {
        (spin.twice() % 2) as usize
    }
}

pub fn parity_grading() -> ParityGrading {
    let table = vec![vec![0, 1], vec![1, 0]];
    let group = AbelianGroup::from_table(vec!["even".into(), "odd".into()], table)
        .expect("the two-element table is Z2");
    ParityGrading { group }
}

/// Exports the fusion rules for spins `2j <= max_twice` as a truncated
/// fusion ring.
///
/// Entries are stored only for pairs with `2j1 + 2j2 <= max_twice`, where
/// the full series fits inside the basis; `complete_below` records that
/// bound. Labels are the spin names, the unit is spin 0, and every
/// element is self-dual.
pub fn export_truncated_ring(max_twice: u32) -> Result<FusionRing, Su2Error> {
    let rank = max_twice as usize + 1;
    let labels: Vec<String> = (0..rank)
        .map(|t| SpinIndex::from_twice(t as u32).to_string())
        .collect();
    let dual: Vec<usize> = (0..rank).collect();
    let mut entries = Vec::new();
    for t1 in 0..=max_twice {
        for t2 in t1..=max_twice {
            if t1 + t2 > max_twice {
                continue;
            }
            let series = cg_product(SpinIndex::from_twice(t1), SpinIndex::from_twice(t2))?;
            for (spin, coeff) in series.terms() {
                entries.push((t1 as usize, t2 as usize, spin.twice() as usize, coeff as i64));
            }
        }
    }
    let name = format!("su2-trunc-jmax{}", SpinIndex::from_twice(max_twice));
    Ok(FusionRing::new(name, labels, 0, dual, &entries, Some(max_twice as usize))
        .expect("exported tensor data is structurally well-formed"))
}
