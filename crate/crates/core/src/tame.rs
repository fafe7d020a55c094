//! Exact arithmetic on characters of tame inertia.
//!
//! Characters of tame inertia of level n factor through F_{p^n}^* and are
//! written in the fundamental characters ψ_0, …, ψ_{n−1}, one per embedding
//! of F_{p^n} into an algebraic closure, labeled so that ψ_{i−1} = ψ_i^p.
//! (This is the opposite of Herzig's labeling ψ_{i+1} = ψ_i^p; no alternate
//! convention is supported anywhere in this crate.)  Consequently
//! ψ_i = ψ_0^{p^{n−i}}, and a product Π ψ_i^{m_i} is determined by the single
//! canonical exponent Σ m_i p^{n−i} mod p^n − 1.  Exponent vectors may carry
//! arbitrary signed integers; everything is reduced to canonical form on
//! construction and all comparisons go through it.
//!
//! Levels in play are n = s (characters λ_τ of the residue field) and
//! n = 2s (characters ψ of its quadratic extension).  Inflation from level
//! s to level 2s is λ_0 ↦ ψ_0^{q+1}, i.e. multiplication of the canonical
//! exponent by q + 1.

use crate::params::{modular, pow_mod, LocalParams};
use std::fmt;

/// Which of the two exponent moduli a character lives under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    /// Level s: characters of k^*, written in the λ_τ.
    S,
    /// Level 2s: characters of the quadratic extension, written in the ψ_i.
    TwoS,
}

impl Level {
    pub fn degree(self, params: &LocalParams) -> usize {
        match self {
            Level::S => params.s(),
            Level::TwoS => 2 * params.s(),
        }
    }

    pub fn modulus(self, params: &LocalParams) -> i64 {
        params.modulus(self.degree(params))
    }
}

/// A character of tame inertia of level s or 2s, stored in canonical form:
/// the exponent M ∈ [0, p^n − 2] of ψ_0 (resp. λ_0) with
/// Π ψ_i^{m_i} = ψ_0^M.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TameCharacter {
    level: Level,
    exponent: i64,
}

/// Canonical exponent of Π ψ_i^{m_i} at level n: Σ m_i p^{n−i} mod p^n − 1,
/// reduced into [0, p^n − 2].  Total on any signed exponent vector indexed
/// by Z/nZ.
pub fn canonical_exponent(exponents: &[i64], level: Level, params: &LocalParams) -> i64 {
    let n = level.degree(params);
    assert_eq!(exponents.len(), n, "exponent vector must have length n");
    let m = level.modulus(params);
    let mut acc: i64 = 0;
    for (i, &c) in exponents.iter().enumerate() {
        let w = pow_mod(params.p(), n - i, m);
        acc = modular(acc + modular(c, m) * w % m, m);
    }
    acc
}

impl TameCharacter {
    /// Character with the given canonical exponent (any integer; reduced).
    pub fn from_exponent(exponent: i64, level: Level, params: &LocalParams) -> Self {
        TameCharacter {
            level,
            exponent: modular(exponent, level.modulus(params)),
        }
    }

    /// Character Π ψ_i^{m_i} from a full exponent vector over Z/nZ.
    pub fn from_exponents(exponents: &[i64], level: Level, params: &LocalParams) -> Self {
        TameCharacter {
            level,
            exponent: canonical_exponent(exponents, level, params),
        }
    }

    pub fn trivial(level: Level, params: &LocalParams) -> Self {
        TameCharacter::from_exponent(0, level, params)
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    /// The p-power twist χ ↦ χ^p, an index shift of the ψ_i.
    pub fn frobenius_twist(&self, params: &LocalParams) -> Self {
        let m = self.level.modulus(params);
        TameCharacter {
            level: self.level,
            exponent: modular(self.exponent * params.p() % m, m),
        }
    }

    /// χ ↦ χ^{p^k}.
    pub fn frobenius_power(&self, k: usize, params: &LocalParams) -> Self {
        let m = self.level.modulus(params);
        let w = pow_mod(params.p(), k, m);
        TameCharacter {
            level: self.level,
            exponent: (self.exponent as i128 * w as i128).rem_euclid(m as i128) as i64,
        }
    }

    /// Smallest d dividing n with χ^{p^d} = χ; the character factors through
    /// F_{p^d}^* and through no smaller subfield.
    pub fn niveau(&self, params: &LocalParams) -> usize {
        let n = self.level.degree(params);
        for d in 1..=n {
            if n % d == 0 && self.frobenius_power(d, params) == *self {
                return d;
            }
        }
        unreachable!("p^n fixes every exponent mod p^n - 1")
    }

    /// Whether the character genuinely has its level, i.e. its niveau does
    /// not divide s.  Always false at level s.
    pub fn is_genuine_double(&self, params: &LocalParams) -> bool {
        self.level == Level::TwoS && params.s() % self.niveau(params) != 0
    }

    pub fn mul(&self, other: &TameCharacter, params: &LocalParams) -> Result<Self, LevelMismatch> {
        if self.level != other.level {
            return Err(LevelMismatch);
        }
        let m = self.level.modulus(params);
        Ok(TameCharacter {
            level: self.level,
            exponent: modular(self.exponent + other.exponent, m),
        })
    }

    pub fn inv(&self, params: &LocalParams) -> Self {
        let m = self.level.modulus(params);
        TameCharacter {
            level: self.level,
            exponent: modular(-self.exponent, m),
        }
    }

    /// Inflation of a level-s character to level 2s along the norm
    /// compatibility λ_0 = ψ_0^{q+1}.
    pub fn inflate_to_double(&self, params: &LocalParams) -> Self {
        assert_eq!(self.level, Level::S, "only level-s characters inflate");
        let m = params.modulus(2 * params.s());
        TameCharacter {
            level: Level::TwoS,
            exponent: (self.exponent as i128 * (params.q() + 1) as i128).rem_euclid(m as i128)
                as i64,
        }
    }

    /// For a level-2s character of niveau dividing s, the level-s character
    /// it is inflated from.  `None` for genuine level-2s characters.
    pub fn deflate_to_single(&self, params: &LocalParams) -> Option<Self> {
        assert_eq!(self.level, Level::TwoS);
        let q = params.q();
        if self.exponent % (q + 1) != 0 {
            return None;
        }
        let candidate = TameCharacter {
            level: Level::S,
            exponent: self.exponent / (q + 1),
        };
        if candidate.inflate_to_double(params) == *self {
            Some(candidate)
        } else {
            None
        }
    }

    /// The q-power conjugate χ^q.  At level 2s this is the other member of
    /// the unordered pair attached to a cuspidal type.
    pub fn conjugate(&self, params: &LocalParams) -> Self {
        self.frobenius_power(params.s(), params)
    }

    /// The level-s character λ_0^M with λ_0^M = χ^{q+1}.  For any level-2s
    /// character the (q+1)-st power has niveau dividing s, and its level-s
    /// exponent is the exponent of χ reduced mod q − 1.
    pub fn norm_to_single(&self, params: &LocalParams) -> Self {
        assert_eq!(self.level, Level::TwoS);
        TameCharacter {
            level: Level::S,
            exponent: modular(self.exponent, params.q() - 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelMismatch;

impl fmt::Display for LevelMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "characters have different levels")
    }
}

impl std::error::Error for LevelMismatch {}
