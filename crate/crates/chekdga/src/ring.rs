//! Coefficient rings for the Chekanov-Eliashberg algebra: the integers and
//! prime fields F_p for p <= 13.
//!
//! Coefficients are stored as `i64`. For `Fp(p)` every stored value is kept
//! normalized to `0..p`; for `Int` values are arbitrary (fixtures stay far
//! below overflow range, and arithmetic uses checked operations in debug
//! builds via the standard operators).

use serde::{Deserialize, Serialize};

/// Primes accepted for finite-field coefficients.
pub const SUPPORTED_PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

/// A coefficient ring: the integers, or a prime field of characteristic <= 13.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffRing {
    /// The ring of integers Z.
    Int,
    /// The prime field F_p.
    Fp(u32),
}

impl CoeffRing {
    /// Characteristic of the ring (0 for Z).
    pub fn characteristic(self) -> u32 {
        match self {
            CoeffRing::Int => 0,
            CoeffRing::Fp(p) => p,
        }
    }

    /// Returns an error message if the ring is not supported.
    pub fn validate(self) -> Result<(), String> {
        match self {
            CoeffRing::Int => Ok(()),
            CoeffRing::Fp(p) if SUPPORTED_PRIMES.contains(&p) => Ok(()),
            CoeffRing::Fp(p) => Err(format!(
                "unsupported field F_{p}: the coefficient field must be F_q for prime q <= 13"
            )),
        }
    }

    /// Normalize a raw integer into canonical form for this ring.
    pub fn normalize(self, v: i64) -> i64 {
        match self {
            CoeffRing::Int => v,
            CoeffRing::Fp(p) => v.rem_euclid(p as i64),
        }
    }

    pub fn add(self, a: i64, b: i64) -> i64 {
        self.normalize(a + b)
    }

    pub fn mul(self, a: i64, b: i64) -> i64 {
        self.normalize(a * b)
    }

    pub fn neg(self, a: i64) -> i64 {
        self.normalize(-a)
    }

    /// Multiplicative inverse; only defined over a field for nonzero values.
    pub fn inv(self, a: i64) -> Option<i64> {
        match self {
            CoeffRing::Int => match a {
                1 => Some(1),
                -1 => Some(-1),
                _ => None,
            },
            CoeffRing::Fp(p) => {
                let a = self.normalize(a);
                if a == 0 {
                    return None;
                }
                // p is tiny; brute force.
                (1..p as i64).find(|&x| (a * x) % (p as i64) == 1)
            }
        }
    }

    /// All nonzero elements (units) of a prime field; `None` for Z
    /// (whose units are just +-1).
    pub fn field_units(self) -> Option<Vec<i64>> {
        match self {
            CoeffRing::Int => None,
            CoeffRing::Fp(p) => Some((1..p as i64).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_and_inverse_in_f5() {
        let r = CoeffRing::Fp(5);
        assert_eq!(r.normalize(-3), 2);
        assert_eq!(r.inv(2), Some(3));
        assert_eq!(r.inv(0), None);
    }

    #[test]
    fn integer_units() {
        assert_eq!(CoeffRing::Int.inv(-1), Some(-1));
        assert_eq!(CoeffRing::Int.inv(2), None);
    }

    #[test]
    fn rejects_non_prime_or_large_field() {
        assert!(CoeffRing::Fp(4).validate().is_err());
        assert!(CoeffRing::Fp(17).validate().is_err());
        assert!(CoeffRing::Fp(13).validate().is_ok());
    }
}
