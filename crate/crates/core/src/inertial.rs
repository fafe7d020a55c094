//! Tame semisimple inertial types, the characteristic-zero representation
//! of GL2(k) attached to each, and the Jordan–Hölder constituents of its
//! mod-p reduction in the cuspidal case.
//!
//! A split type is an unordered pair of level-s characters; a cuspidal type
//! is the unordered pair {φ, φ^q} for a genuine level-2s character φ.  The
//! attached representation is the principal series I(χ1, χ2) in the split
//! case and the cuspidal representation Θ(φ) in the cuspidal case, with any
//! central twist absorbed into the level-2s exponent.
//!
//! A weight F with digits (k_τ, w_τ) is a constituent of the reduction of
//! Θ(φ) exactly when, for some choice of lift τ̃ of each embedding τ, the
//! unordered pair {φ, φ^q} equals
//! { Π λ_τ^{w_τ+k_τ−2} · Π ψ_{τ̃}^{p+1−k_τ},  its conjugate }.
//! The scan below tests this identity for every weight and every one of
//! the 2^s lift choices through canonical exponents; at desk scale this is
//! instantaneous and doubles as its own oracle.  Constituents of reductions
//! of principal series are deliberately not computed here: the split-type
//! prediction flows exclusively through the closed form in `matching`.

use crate::params::{pow_mod, LocalParams};
use crate::tame::{Level, TameCharacter};
use crate::weight::{enumerate_weights, SerreWeight};
use std::collections::BTreeSet;
use std::fmt;

/// A tame semisimple inertial type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InertialType {
    /// Unordered pair of level-s characters (stored sorted).
    Split(TameCharacter, TameCharacter),
    /// Genuine level-2s character, stored as the smaller exponent of the
    /// orbit {φ, φ^q}.
    Cuspidal(TameCharacter),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeError {
    WrongLevel,
    /// The proposed cuspidal character has niveau dividing s.
    NotGenuine { exponent: i64, niveau: usize },
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeError::WrongLevel => write!(f, "character has the wrong level for this type"),
            TypeError::NotGenuine { exponent, niveau } => write!(
                f,
                "cuspidal exponent {exponent} has niveau {niveau}, which divides s; \
                 the type is split, not cuspidal"
            ),
        }
    }
}

impl std::error::Error for TypeError {}

impl InertialType {
    pub fn split(
        chi1: TameCharacter,
        chi2: TameCharacter,
        _params: &LocalParams,
    ) -> Result<Self, TypeError> {
        if chi1.level() != Level::S || chi2.level() != Level::S {
            return Err(TypeError::WrongLevel);
        }
        let (a, b) = if chi1 <= chi2 {
            (chi1, chi2)
        } else {
            (chi2, chi1)
        };
        Ok(InertialType::Split(a, b))
    }

    pub fn cuspidal(phi: TameCharacter, params: &LocalParams) -> Result<Self, TypeError> {
        if phi.level() != Level::TwoS {
            return Err(TypeError::WrongLevel);
        }
        if !phi.is_genuine_double(params) {
            return Err(TypeError::NotGenuine {
                exponent: phi.exponent(),
                niveau: phi.niveau(params),
            });
        }
        let conj = phi.conjugate(params);
        Ok(InertialType::Cuspidal(phi.min(conj)))
    }

    /// Determinant of the type restricted to tame inertia, as a level-s
    /// character: χ1·χ2 for split, φ^{q+1} for cuspidal.
    pub fn det_character(&self, params: &LocalParams) -> TameCharacter {
        match self {
            InertialType::Split(chi1, chi2) => chi1.mul(chi2, params).expect("same level"),
            InertialType::Cuspidal(phi) => phi.norm_to_single(params),
        }
    }
}

impl fmt::Display for InertialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InertialType::Split(chi1, chi2) => {
                write!(f, "split({}, {})", chi1.exponent(), chi2.exponent())
            }
            InertialType::Cuspidal(phi) => write!(f, "cuspidal({})", phi.exponent()),
        }
    }
}

/// The characteristic-zero representation of GL2(k) attached to a type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenericFiberRep {
    PrincipalSeries(TameCharacter, TameCharacter),
    CuspidalRep(TameCharacter),
}

/// Split ↦ principal series with the same characters; cuspidal ↦ the
/// cuspidal representation with the twist absorbed into the exponent.
pub fn attach_v(t: &InertialType) -> GenericFiberRep {
    match t {
        InertialType::Split(chi1, chi2) => GenericFiberRep::PrincipalSeries(*chi1, *chi2),
        InertialType::Cuspidal(phi) => GenericFiberRep::CuspidalRep(*phi),
    }
}

/// Level-2s canonical exponent of Π λ_j^{w_j+k_j−2} · Π ψ_{lift(j)}^{p+1−k_j}
/// for the lift choice `eps` (lift(j) = j + eps_j·s).
fn constituent_exponent(weight: &SerreWeight, eps: usize, params: &LocalParams) -> i64 {
    let s = params.s();
    let m2 = params.modulus(2 * s);
    let twist: Vec<i64> = (0..s).map(|j| weight.k_at(j) - 2).collect();
    let mut acc = weight.twist_exponent_double(&twist, params);
    for j in 0..s {
        let lift = if eps & (1 << j) == 0 { j } else { j + s };
        let alpha = params.p() + 1 - weight.k_at(j);
        acc = (acc + alpha * pow_mod(params.p(), 2 * s - lift, m2)) % m2;
    }
    acc
}

/// Jordan–Hölder constituents of the mod-p reduction of a cuspidal
/// representation, by exhaustive scan of all weights and lift choices.
pub fn jh_constituents_cuspidal(
    phi: &TameCharacter,
    params: &LocalParams,
) -> BTreeSet<SerreWeight> {
    assert_eq!(phi.level(), Level::TwoS);
    let conj = phi.conjugate(params);
    let targets = [phi.exponent(), conj.exponent()];
    let mut out = BTreeSet::new();
    for weight in enumerate_weights(params) {
        for eps in 0..(1usize << params.s()) {
            let m = constituent_exponent(&weight, eps, params);
            if targets.contains(&m) {
                out.insert(weight.clone());
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: i64, s: usize, e: i64) -> LocalParams {
        LocalParams::new(p, s, e).unwrap()
    }

    fn names(set: &BTreeSet<SerreWeight>) -> Vec<String> {
        set.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn cuspidal_requires_genuine_character() {
        let pr = params(5, 1, 2);
        let fixed = TameCharacter::from_exponent(6, Level::TwoS, &pr);
        assert!(matches!(
            InertialType::cuspidal(fixed, &pr),
            Err(TypeError::NotGenuine { niveau: 1, .. })
        ));
        let genuine = TameCharacter::from_exponent(2, Level::TwoS, &pr);
        assert!(InertialType::cuspidal(genuine, &pr).is_ok());
    }

    #[test]
    fn unordered_pairs() {
        let pr = params(5, 1, 2);
        let phi = TameCharacter::from_exponent(2, Level::TwoS, &pr);
        let conj = TameCharacter::from_exponent(10, Level::TwoS, &pr);
        assert_eq!(
            InertialType::cuspidal(phi, &pr).unwrap(),
            InertialType::cuspidal(conj, &pr).unwrap()
        );
        let a = TameCharacter::from_exponent(1, Level::S, &pr);
        let b = TameCharacter::from_exponent(3, Level::S, &pr);
        assert_eq!(
            InertialType::split(a, b, &pr).unwrap(),
            InertialType::split(b, a, &pr).unwrap()
        );
    }

    #[test]
    fn attach_v_cases() {
        let pr = params(5, 1, 2);
        let lam = TameCharacter::from_exponent(1, Level::S, &pr);
        let t = InertialType::split(lam, lam, &pr).unwrap();
        assert_eq!(attach_v(&t), GenericFiberRep::PrincipalSeries(lam, lam));
        let phi = TameCharacter::from_exponent(2, Level::TwoS, &pr);
        let t = InertialType::cuspidal(phi, &pr).unwrap();
        assert_eq!(attach_v(&t), GenericFiberRep::CuspidalRep(phi));
    }

    #[test]
    fn jh_examples() {
        let pr = params(5, 1, 2);
        let phi2 = TameCharacter::from_exponent(2, Level::TwoS, &pr);
        assert_eq!(
            names(&jh_constituents_cuspidal(&phi2, &pr)),
            ["F(1,1)", "F(4,2)"]
        );
        let phi4 = TameCharacter::from_exponent(4, Level::TwoS, &pr);
        assert_eq!(
            names(&jh_constituents_cuspidal(&phi4, &pr)),
            ["F(0,0)", "F(3,1)"]
        );
        // swap invariance: φ^q of the first example
        let phi10 = TameCharacter::from_exponent(10, Level::TwoS, &pr);
        assert_eq!(
            jh_constituents_cuspidal(&phi10, &pr),
            jh_constituents_cuspidal(&phi2, &pr)
        );
    }

    #[test]
    fn jh_central_character_and_count() {
        for (p, s) in [(3, 1), (5, 1), (3, 2)] {
            let pr = params(p, s, 1);
            let m2 = pr.modulus(2 * s);
            for exp in 0..m2 {
                let phi = TameCharacter::from_exponent(exp, Level::TwoS, &pr);
                if !phi.is_genuine_double(&pr) {
                    continue;
                }
                let constituents = jh_constituents_cuspidal(&phi, &pr);
                assert!(!constituents.is_empty(), "no constituents for {exp}");
                assert!(constituents.len() <= 1 << s);
                // φ^{q+1} = Π ψ_i^{2w+k−2}, i.e. λ_0^{a+b} at level s
                let norm = phi.norm_to_single(&pr);
                for weight in &constituents {
                    let target = TameCharacter::from_exponent(
                        weight.a_value() + weight.b_value(),
                        Level::S,
                        &pr,
                    );
                    assert_eq!(
                        target, norm,
                        "central character mismatch for φ = {exp}, weight {weight}"
                    );
                }
            }
        }
    }
}
