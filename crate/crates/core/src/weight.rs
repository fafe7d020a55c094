//! Serre weights F(a,b): the irreducible mod-p representations of GL2 of
//! the residue field, parametrized by digit tuples.
//!
//! A weight is ⊗_{j ∈ Z/sZ} (det^{w_j} Sym^{k_j−2} k^2) ⊗_{τ_j} F̄_p with
//! 2 ≤ k_j ≤ p+1, 0 ≤ w_j ≤ p−1 and the w_j not all p−1.  The printed form
//! F(a,b) uses b ≡ Σ w_j p^{s−j} and a − b ≡ Σ (k_j − 2) p^{s−j} mod
//! p^s − 1, with b ∈ [0, p^s − 2] and a − b ∈ [0, p^s − 1]; a − b = 0 (all
//! k_j = 2) and a − b = p^s − 1 (all k_j = p+1) are distinct weights with
//! the same residues, and they are the only residue collision.

use crate::params::{modular, pow_mod, LocalParams};
use crate::tame::{Level, TameCharacter};
use std::cmp::Ordering;
use std::fmt;

/// An irreducible weight, stored by its digit tuples (k_j, w_j).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SerreWeight {
    p: i64,
    k: Vec<i64>,
    w: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightError {
    KOutOfRange { j: usize, k: i64 },
    WOutOfRange { j: usize, w: i64 },
    AllWTop,
    LengthMismatch,
    BadResidue(i64),
}

impl fmt::Display for WeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::KOutOfRange { j, k } => write!(f, "k_{j} = {k} outside [2, p+1]"),
            WeightError::WOutOfRange { j, w } => write!(f, "w_{j} = {w} outside [0, p-1]"),
            WeightError::AllWTop => write!(f, "the w_j may not all equal p-1"),
            WeightError::LengthMismatch => write!(f, "k and w must both have length s"),
            WeightError::BadResidue(r) => write!(f, "a - b = {r} outside [0, p^s - 1]"),
        }
    }
}

impl std::error::Error for WeightError {}

impl SerreWeight {
    pub fn new(k: Vec<i64>, w: Vec<i64>, params: &LocalParams) -> Result<Self, WeightError> {
        let p = params.p();
        if k.len() != params.s() || w.len() != params.s() {
            return Err(WeightError::LengthMismatch);
        }
        for (j, &kj) in k.iter().enumerate() {
            if kj < 2 || kj > p + 1 {
                return Err(WeightError::KOutOfRange { j, k: kj });
            }
        }
        for (j, &wj) in w.iter().enumerate() {
            if wj < 0 || wj > p - 1 {
                return Err(WeightError::WOutOfRange { j, w: wj });
            }
        }
        if w.iter().all(|&wj| wj == p - 1) {
            return Err(WeightError::AllWTop);
        }
        Ok(SerreWeight { p, k, w })
    }

    pub fn s(&self) -> usize {
        self.k.len()
    }

    pub fn k(&self) -> &[i64] {
        &self.k
    }

    pub fn w(&self) -> &[i64] {
        &self.w
    }

    pub fn k_at(&self, j: usize) -> i64 {
        self.k[j.rem_euclid(self.s())]
    }

    pub fn w_at(&self, j: usize) -> i64 {
        self.w[j.rem_euclid(self.s())]
    }

    /// α(j) = p + 1 − k_j ∈ [0, p−1].
    pub fn alpha_profile(&self) -> Vec<i64> {
        self.k.iter().map(|&kj| self.p + 1 - kj).collect()
    }

    /// b ∈ [0, p^s − 2], the canonical residue of Σ w_j p^{s−j}.
    pub fn b_value(&self) -> i64 {
        digit_residue(&self.w, self.p)
    }

    /// a − b ∈ [0, p^s − 1]; the top value p^s − 1 occurs exactly when all
    /// k_j = p + 1, the bottom 0 exactly when all k_j = 2.
    pub fn a_minus_b(&self) -> i64 {
        let s = self.k.len();
        let m = self.p.pow(s as u32) - 1;
        if self.k.iter().all(|&kj| kj == self.p + 1) {
            return m;
        }
        let diff: Vec<i64> = self.k.iter().map(|&kj| kj - 2).collect();
        digit_residue(&diff, self.p)
    }

    pub fn a_value(&self) -> i64 {
        self.b_value() + self.a_minus_b()
    }

    /// Sort key: (b, a − b) totally orders weights for a fixed (p, s).
    pub fn sort_key(&self) -> (i64, i64) {
        (self.b_value(), self.a_minus_b())
    }

    /// The level-s character λ_0^{a + b + e Σ_{j<s} p^j} that the
    /// determinant of any matching inertial type must restrict to.
    pub fn det_exponent(&self, params: &LocalParams) -> TameCharacter {
        let m = params.q() - 1;
        let mut exp = modular(self.a_value() + self.b_value(), m);
        for j in 0..params.s() {
            exp = modular(exp + params.e() * pow_mod(params.p(), j, m), m);
        }
        TameCharacter::from_exponent(exp, Level::S, params)
    }

    /// Exponent vector of the level-2s restriction of the central twist
    /// Π λ_j^{w_j + t_j}; helper for character matching.
    pub fn twist_exponent_double(&self, extra: &[i64], params: &LocalParams) -> i64 {
        let s = params.s();
        let m2 = params.modulus(2 * s);
        let mut acc: i64 = 0;
        for j in 0..s {
            let coeff = modular(self.w[j] + extra[j], m2);
            let lam_j = modular(
                pow_mod(params.p(), 2 * s - j, m2) + pow_mod(params.p(), s - j, m2),
                m2,
            );
            acc = modular(acc + coeff * lam_j % m2, m2);
        }
        acc
    }
}

impl fmt::Display for SerreWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({},{})", self.a_value(), self.b_value())
    }
}

impl PartialOrd for SerreWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SerreWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Canonical residue Σ digits_j p^{s−j} mod p^s − 1 in [0, p^s − 2].
fn digit_residue(digits: &[i64], p: i64) -> i64 {
    let s = digits.len();
    let m = p.pow(s as u32) - 1;
    let mut acc: i64 = 0;
    for (j, &d) in digits.iter().enumerate() {
        acc = modular(acc + modular(d, m) * pow_mod(p, s - j, m) % m, m);
    }
    acc
}

/// Digits d_j with Σ d_j p^{s−j} ≡ value mod p^s − 1, each in [0, p−1] and
/// not all p − 1; unique for value ∈ [0, p^s − 2].
fn digits_from_residue(value: i64, params: &LocalParams) -> Vec<i64> {
    let s = params.s();
    let p = params.p();
    debug_assert!((0..params.q() - 1).contains(&value));
    // Σ d_j p^{s−j} ≡ d_0 + Σ_{j≥1} d_j p^{s−j}: base-p digit at p^t is
    // d_0 for t = 0 and d_{s−t} for t ∈ [1, s−1].
    let mut digits = vec![0i64; s];
    let mut v = value;
    for t in 0..s {
        let d = v % p;
        v /= p;
        if t == 0 {
            digits[0] = d;
        } else {
            digits[s - t] = d;
        }
    }
    digits
}

/// The 1 or 2 weights whose residues match (c, d): w-digits from d, and
/// k-digits from c − d, with the pair F(b,b), F(b + p^s − 1, b) returned
/// when c ≡ d.
pub fn weights_from_residues(c: i64, d: i64, params: &LocalParams) -> Vec<SerreWeight> {
    let m = params.q() - 1;
    let d_can = modular(d, m);
    let r = modular(c - d, m);
    let w = digits_from_residue(d_can, params);
    let mut out = Vec::new();
    if r == 0 {
        let k_lo = vec![2i64; params.s()];
        let k_hi = vec![params.p() + 1; params.s()];
        out.push(SerreWeight::new(k_lo, w.clone(), params).expect("valid digits"));
        out.push(SerreWeight::new(k_hi, w, params).expect("valid digits"));
    } else {
        let k: Vec<i64> = digits_from_residue(r, params)
            .into_iter()
            .map(|d| d + 2)
            .collect();
        out.push(SerreWeight::new(k, w, params).expect("valid digits"));
    }
    out.sort();
    out
}

/// A weight from its printed parameters: any integers a, b with
/// a − b ∈ [0, p^s − 1].  Accepts non-canonical b (reduced mod p^s − 1), so
/// redundant labels such as F(6,4) at p = 5, s = 1 resolve to the weight
/// they denote (there F(2,0), since det^{p^s−1} is trivial).
pub fn weight_from_ab(a: i64, b: i64, params: &LocalParams) -> Result<SerreWeight, WeightError> {
    let m = params.q() - 1;
    let r = a - b;
    if !(0..=m).contains(&r) {
        return Err(WeightError::BadResidue(r));
    }
    let w = digits_from_residue(modular(b, m), params);
    let k: Vec<i64> = if r == m {
        vec![params.p() + 1; params.s()]
    } else {
        digits_from_residue(r, params)
            .into_iter()
            .map(|d| d + 2)
            .collect()
    };
    SerreWeight::new(k, w, params)
}

/// All (p^s − 1)·p^s weights, sorted by (b, a − b).
pub fn enumerate_weights(params: &LocalParams) -> Vec<SerreWeight> {
    let s = params.s();
    let p = params.p();
    let mut out = Vec::new();
    let mut k = vec![2i64; s];
    loop {
        let mut w = vec![0i64; s];
        loop {
            if let Ok(weight) = SerreWeight::new(k.clone(), w.clone(), params) {
                out.push(weight);
            }
            if !increment(&mut w, 0, p - 1) {
                break;
            }
        }
        if !increment(&mut k, 2, p + 1) {
            break;
        }
    }
    out.sort();
    out
}

/// Odometer increment over [lo, hi]^s; false once wrapped past the end.
pub(crate) fn increment(digits: &mut [i64], lo: i64, hi: i64) -> bool {
    for d in digits.iter_mut() {
        if *d < hi {
            *d += 1;
            return true;
        }
        *d = lo;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: i64, s: usize, e: i64) -> LocalParams {
        LocalParams::new(p, s, e).unwrap()
    }

    #[test]
    fn residue_pairs() {
        let pr = params(5, 1, 1);
        let pair = weights_from_residues(0, 0, &pr);
        let names: Vec<String> = pair.iter().map(|f| f.to_string()).collect();
        assert_eq!(names, ["F(0,0)", "F(4,0)"]);
        let single = weights_from_residues(3, 1, &pr);
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].to_string(), "F(3,1)");

        let pr3 = params(3, 1, 1);
        let pair3 = weights_from_residues(1, 1, &pr3);
        let names3: Vec<String> = pair3.iter().map(|f| f.to_string()).collect();
        assert_eq!(names3, ["F(1,1)", "F(3,1)"]);
    }

    #[test]
    fn alpha_profiles() {
        let pr = params(5, 1, 1);
        let f00 = weight_from_ab(0, 0, &pr).unwrap();
        assert_eq!(f00.alpha_profile(), [4]);
        let f31 = weight_from_ab(3, 1, &pr).unwrap();
        assert_eq!(f31.alpha_profile(), [2]);
        let pr2 = params(5, 2, 1);
        let w = SerreWeight::new(vec![6, 2], vec![0, 0], &pr2).unwrap();
        assert_eq!(w.alpha_profile(), [0, 4]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_weights(&params(5, 1, 1)).len(), 20);
        assert_eq!(enumerate_weights(&params(3, 1, 1)).len(), 6);
        assert_eq!(enumerate_weights(&params(3, 2, 1)).len(), 72);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let pr = params(3, 2, 1);
        let all = enumerate_weights(&pr);
        for pair in all.windows(2) {
            assert!(pair[0].sort_key() < pair[1].sort_key());
        }
    }

    #[test]
    fn det_exponents() {
        // all four k = 2 predictions at p = 5, s = 1, e = 2 share λ^2
        let pr = params(5, 1, 2);
        let f00 = weight_from_ab(0, 0, &pr).unwrap();
        assert_eq!(f00.det_exponent(&pr).exponent(), 2);
        let f31 = weight_from_ab(3, 1, &pr).unwrap();
        assert_eq!(f31.det_exponent(&pr).exponent(), 2);
        // e ≡ 0 mod p^s − 1 gives the trivial character on F(0,0)
        let pr4 = params(5, 1, 4);
        let f00 = weight_from_ab(0, 0, &pr4).unwrap();
        assert!(f00.det_exponent(&pr4).is_trivial());
    }

    #[test]
    fn distinguishes_top_and_bottom_twists() {
        let pr = params(5, 2, 1);
        let bottom = weight_from_ab(3, 3, &pr).unwrap();
        let top = weight_from_ab(3 + 24, 3, &pr).unwrap();
        assert_ne!(bottom, top);
        assert_eq!(bottom.to_string(), "F(3,3)");
        assert_eq!(top.to_string(), "F(27,3)");
        assert_eq!(bottom.a_minus_b(), 0);
        assert_eq!(top.a_minus_b(), 24);
    }

    #[test]
    fn digit_round_trip() {
        let pr = params(5, 2, 1);
        for weight in enumerate_weights(&pr) {
            let c = modular(weight.a_value(), 24);
            let d = modular(weight.b_value(), 24);
            let recovered = weights_from_residues(c, d, &pr);
            assert!(
                recovered.contains(&weight),
                "round trip lost {weight}: got {recovered:?}"
            );
        }
    }

    #[test]
    fn redundant_labels_resolve() {
        let pr = params(5, 1, 2);
        let canonical = weight_from_ab(2, 0, &pr).unwrap();
        let redundant = weight_from_ab(6, 4, &pr).unwrap();
        assert_eq!(canonical, redundant);
    }
}
