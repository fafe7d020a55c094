//! Local-field invariants: the prime p, residue degree s, ramification
//! index e, and the moduli p^s − 1, p^{2s} − 1 that all character exponents
//! live under.

use std::fmt;

/// Invariants of the completion at a place above p: an odd prime `p`, the
/// residue degree `s` (so q = p^s) and the ramification index `e`.
///
/// Everything downstream assumes desk scale; construction rejects parameter
/// combinations whose exponent moduli would not fit comfortably in `i64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalParams {
    p: i64,
    s: usize,
    e: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamError {
    NotAnOddPrime(i64),
    ZeroResidueDegree,
    ZeroRamification,
    TooLarge { p: i64, s: usize },
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::NotAnOddPrime(p) => write!(f, "p = {p} is not an odd prime >= 3"),
            ParamError::ZeroResidueDegree => write!(f, "residue degree s must be >= 1"),
            ParamError::ZeroRamification => write!(f, "ramification index e must be >= 1"),
            ParamError::TooLarge { p, s } => {
                write!(f, "p^(2s) overflows i64 for p = {p}, s = {s}")
            }
        }
    }
}

impl std::error::Error for ParamError {}

fn is_prime(n: i64) -> bool {
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

impl LocalParams {
    pub fn new(p: i64, s: usize, e: i64) -> Result<Self, ParamError> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(ParamError::NotAnOddPrime(p));
        }
        if s == 0 {
            return Err(ParamError::ZeroResidueDegree);
        }
        if e < 1 {
            return Err(ParamError::ZeroRamification);
        }
        // keep p^{2s} − 1 (and products of two residues) inside i64
        let bits = (64 - p.leading_zeros() as usize) * 2 * s;
        if bits > 30 {
            return Err(ParamError::TooLarge { p, s });
        }
        Ok(LocalParams { p, s, e })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    /// Residue field size q = p^s.
    pub fn q(&self) -> i64 {
        self.p.pow(self.s as u32)
    }

    /// p^n for small n.
    pub fn p_pow(&self, n: usize) -> i64 {
        self.p.pow(n as u32)
    }

    /// The same parameters with a different ramification index.
    pub fn with_e(&self, e: i64) -> Result<Self, ParamError> {
        LocalParams::new(self.p, self.s, e)
    }

    /// Exponent modulus p^n − 1 at level n.
    pub fn modulus(&self, n: usize) -> i64 {
        self.p_pow(n) - 1
    }
}

pub(crate) fn modular(value: i64, modulus: i64) -> i64 {
    value.rem_euclid(modulus)
}

/// p^k mod m without overflow (small helper shared across modules).
pub fn pow_mod(p: i64, k: usize, m: i64) -> i64 {
    let mut acc: i64 = 1_i64.rem_euclid(m);
    for _ in 0..k {
        acc = (acc as i128 * p as i128).rem_euclid(m as i128) as i64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_odd_primes() {
        assert!(LocalParams::new(3, 1, 1).is_ok());
        assert!(LocalParams::new(5, 2, 4).is_ok());
        assert!(LocalParams::new(7, 1, 6).is_ok());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            LocalParams::new(2, 1, 1),
            Err(ParamError::NotAnOddPrime(2))
        );
        assert_eq!(
            LocalParams::new(9, 1, 1),
            Err(ParamError::NotAnOddPrime(9))
        );
        assert_eq!(
            LocalParams::new(5, 0, 1),
            Err(ParamError::ZeroResidueDegree)
        );
        assert_eq!(LocalParams::new(5, 1, 0), Err(ParamError::ZeroRamification));
    }

    #[test]
    fn derived_quantities() {
        let params = LocalParams::new(5, 2, 2).unwrap();
        assert_eq!(params.q(), 25);
        assert_eq!(params.modulus(2), 24);
        assert_eq!(params.modulus(4), 624);
    }
}
