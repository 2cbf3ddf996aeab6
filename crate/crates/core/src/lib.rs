//! Finite-group computations around nilpotent injectors, Carter subgroups and
//! Möbius-function sums over subgroup posets.
//!
//! Groups are materialized with full element tables and manipulated through
//! element ids; subgroups are bitsets over those ids. All arithmetic on
//! Möbius values is exact (arbitrary precision).

pub mod bitset;
pub mod carter;
pub mod constructions;
pub mod field;
pub mod group;
pub mod injectors;
pub mod lattice;
pub mod perm;
pub mod poset;
pub mod report;

pub use bitset::ElemSet;
pub use group::{FiniteGroup, Group, Homomorphism, Subgroup};
pub use lattice::SubgroupLattice;
pub use poset::Poset;
pub use report::{Status, VerificationReport};

use thiserror::Error;

/// Resource caps governing group materialization and lattice enumeration.
/// Exceeding a cap is always a clean error, never silent truncation.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Largest number of elements a group closure may reach.
    pub max_elements: usize,
    /// Largest group order for which a full subgroup lattice is built.
    pub max_lattice_order: usize,
    /// Largest number of subgroups a lattice may hold.
    pub max_subgroups: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_elements: 250_000,
            max_lattice_order: 5_000,
            max_subgroups: 200_000,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// gcd of a set of integers; the empty set yields 0 by convention.
pub fn gcd_all<I: IntoIterator<Item = u64>>(xs: I) -> u64 {
    xs.into_iter().fold(0, num_integer::gcd)
}

/// lcm with the convention lcm(a, 0) = a, matching the empty-gcd modulus.
pub fn lcm0(a: u64, b: u64) -> u64 {
    if a == 0 {
        b
    } else if b == 0 {
        a
    } else {
        num_integer::lcm(a, b)
    }
}

/// Congruence `a ≡ 1 (mod m)` with the convention that modulus 0 means `a = 1`.
pub fn cong1(a: u64, m: u64) -> bool {
    if m == 0 {
        a == 1
    } else {
        a % m == 1 % m
    }
}

/// Primes dividing n, in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut ps = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            ps.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

/// The p-part of n: the largest power of p dividing n.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut q = 1;
    while n % p == 0 {
        q *= p;
        n /= p;
    }
    q
}

/// The π-part of n for a set of primes π.
pub fn pi_part(n: u64, pi: &[u64]) -> u64 {
    pi.iter().map(|&p| p_part(n, p)).product()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
