use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Primes accepted by [`PrimeField::new`]. The cap exists because several
/// constructions downstream (power expansions, structural polynomial
/// recursions) grow super-polynomially in p.
pub const SUPPORTED_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("unsupported prime {0}: supported primes are 2, 3, 5, 7, 11, 13")]
    UnsupportedPrime(u64),
}

/// The prime field F_p for a small prime p.
///
/// Elements are canonical residues in `0..p` stored as `u64`. Because the
/// field is prime, `c^p = c` for every element; polynomial code relies on
/// this to push Frobenius entirely into exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if SUPPORTED_PRIMES.contains(&p) {
            Ok(PrimeField { p })
        } else {
            Err(FieldError::UnsupportedPrime(p))
        }
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u64 {
        v % self.p
    }

    #[inline]
    pub fn reduce_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        debug_assert!(a < self.p);
        (self.p - a) % self.p
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        (a * b) % self.p
    }

    pub fn pow(self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero: division by zero is a caller
    /// bug, not a data condition.
    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0, "division by zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn elements(self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_respects_prime_cap() {
        for p in SUPPORTED_PRIMES {
            assert_eq!(PrimeField::new(p).unwrap().p(), p);
        }
        for p in [0, 1, 4, 6, 9, 17, 101] {
            assert_eq!(PrimeField::new(p), Err(FieldError::UnsupportedPrime(p)));
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_primes() {
        for p in [2, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                    // Fermat: a^p = a.
                    assert_eq!(f.pow(a, p), a);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn reduce_i64_handles_negatives() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.reduce_i64(-1), 6);
        assert_eq!(f.reduce_i64(-14), 0);
        assert_eq!(f.reduce_i64(20), 6);
    }
}
