//! Finite abelian groups given by explicit multiplication tables.
//!
//! The recovery pipeline produces groups in this raw form (invertible
//! characters under tensor product, chain classes under class product).
//! [`AbelianGroup::from_table`] checks the group axioms and identifies the
//! isomorphism type as a divisor chain of invariant factors, so two
//! independently recovered groups can be compared structurally.

use thiserror::Error;

/// Reasons a square table fails to be an abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupTableError {
    #[error("group must have at least one element")]
    Empty,
    #[error("table row {row} has length {got}, expected {order}")]
    RowLength { row: usize, got: usize, order: usize },
    #[error("expected {order} element names, got {got}")]
    NameCount { order: usize, got: usize },
    #[error("table entry {a}*{b} = {value} is out of range for order {order}")]
    EntryOutOfRange { a: usize, b: usize, value: usize, order: usize },
    #[error("no identity element exists")]
    NoIdentity,
    #[error("commutativity fails: {a}*{b} != {b}*{a}")]
    NotCommutative { a: usize, b: usize },
    #[error("associativity fails at ({a},{b},{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {a} has no inverse")]
    NoInverse { a: usize },
}

/// A finite abelian group with a verified table and its invariant factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    invariant_factors: Vec<u64>,
}

impl AbelianGroup {
    /// Verifies the abelian group axioms on a multiplication table and
    /// computes the invariant factor decomposition.
    pub fn from_table(
        names: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, GroupTableError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupTableError::Empty);
        }
        if names.len() != order {
            return Err(GroupTableError::NameCount { order, got: names.len() });
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupTableError::RowLength { row, got: entries.len(), order });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(GroupTableError::EntryOutOfRange {
                        a: row,
                        b: col,
                        value,
                        order,
                    });
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(GroupTableError::NoIdentity)?;
        for a in 0..order {
            for b in a + 1..order {
                if table[a][b] != table[b][a] {
                    return Err(GroupTableError::NotCommutative { a, b });
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupTableError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        for a in 0..order {
            if !(0..order).any(|b| table[a][b] == identity) {
                return Err(GroupTableError::NoInverse { a });
            }
        }
        let invariant_factors = invariant_factors_from_orders(&element_orders(&table, identity));
        Ok(AbelianGroup { names, table, identity, invariant_factors })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_of(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse_of(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == self.identity)
            .expect("inverses were verified in from_table")
    }

    /// Order of a single element.
    pub fn element_order(&self, a: usize) -> u64 {
        let mut current = a;
        let mut n = 1;
        while current != self.identity {
            current = self.table[current][a];
            n += 1;
        }
        n
    }

    /// Invariant factors `d_1 | d_2 | ... | d_k`, ascending; empty for the
    /// trivial group.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// Groups are isomorphic iff their invariant factors agree.
    pub fn is_isomorphic_to(&self, other: &AbelianGroup) -> bool {
        self.invariant_factors == other.invariant_factors
    }

    /// Short structural description such as `Z2 x Z4` or `trivial`.
    pub fn describe(&self) -> String {
        if self.invariant_factors.is_empty() {
            "trivial".into()
        } else {
            self.invariant_factors
                .iter()
                .map(|d| format!("Z{d}"))
                .collect::<Vec<_>>()
                .join(" x ")
        }
    }
}

fn element_orders(table: &[Vec<usize>], identity: usize) -> Vec<u64> {
    (0..table.len())
        .map(|a| {
            let mut current = a;
            let mut n = 1u64;
            while current != identity {
                current = table[current][a];
                n += 1;
            }
            n
        })
        .collect()
}

/// Recovers the invariant factors of a finite abelian group from the
/// multiset of element orders.
///
/// For each prime `p` dividing the order, counting elements whose order
/// divides `p^k` gives `p^(m_k)` with `m_k = lambda'_1 + ... + lambda'_k`,
/// the partial sums of the conjugate of the partition `lambda` formed by
/// the exponents of `p` in the invariant factors. Conjugating back yields
/// the `p`-part of each factor; aligning all primes largest-first and
/// multiplying assembles the divisor chain.
fn invariant_factors_from_orders(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    if n == 1 {
        return Vec::new();
    }
    let mut exponents_per_prime: Vec<Vec<u32>> = Vec::new();
    for p in prime_divisors(n) {
        let mut column_sums = Vec::new();
        let mut pk = 1u64;
        loop {
            pk *= p;
            let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            let m = exact_log(count, p);
            column_sums.push(m);
            if count == orders.iter().filter(|&&o| is_power_of(o, p)).count() as u64 {
                break;
            }
        }
        // Differences of the partial sums give the conjugate partition;
        // conjugating recovers the exponent of p in each invariant factor.
        let mut conjugate = Vec::new();
        let mut prev = 0;
        for &m in &column_sums {
            conjugate.push(m - prev);
            prev = m;
        }
        let parts = conjugate_partition(&conjugate);
        if !parts.is_empty() {
            exponents_per_prime.push(parts);
        }
    }
    let count = exponents_per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors = Vec::new();
    for slot in 0..count {
        let mut d = 1u64;
        for (prime, parts) in prime_divisors(n).into_iter().zip(&exponents_per_prime) {
            if let Some(&e) = parts.get(slot) {
                d *= prime.pow(e);
            }
        }
        factors.push(d);
    }
    factors.reverse();
    factors
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

fn exact_log(count: u64, p: u64) -> u32 {
    let mut m = 0;
    let mut value = 1u64;
    while value < count {
        value *= p;
        m += 1;
    }
    debug_assert_eq!(value, count, "subgroup size {count} is not a power of {p}");
    m
}

fn is_power_of(mut o: u64, p: u64) -> bool {
    while o % p == 0 {
        o /= p;
    }
    o == 1
}

fn conjugate_partition(parts: &[u32]) -> Vec<u32> {
    let max = parts.iter().copied().max().unwrap_or(0);
    (1..=max)
        .map(|i| parts.iter().filter(|&&x| x >= i).count() as u32)
        .collect()
}
