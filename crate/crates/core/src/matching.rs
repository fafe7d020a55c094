//! Closed-form weight sets by exhaustive character matching.
//!
//! For a cuspidal type {φ, φ^q}, a weight F with digits (k_τ, w_τ) belongs
//! to W? exactly when for some lift choice τ̃ of each τ and some
//! δ_τ ∈ [0, e−1] the unordered pair {φ, φ^q} equals
//! { Π λ_τ^{w_τ} · Π ψ_{τ̃}^{k_τ−1+δ_τ} ψ_{τ̃'}^{e−1−δ_τ},  its conjugate }.
//! For a split type {χ1, χ2} the analogue replaces lift choices by subsets
//! J of the embeddings, with λ-exponents k_τ−1+δ_τ on J and e−1−δ_τ off J.
//!
//! Matching is by exhaustive scan over all weights and all labelings, never
//! by symbolic solving: at p^s ≤ 25 the scan is the simplest trustworthy
//! oracle, and it arbitrates every subtlety in the `recipe` module.  When
//! e ≥ p the conjectural set degenerates to all weights whose central
//! character matches the determinant of the type, and both entry points
//! delegate to that determinant filter.

use crate::inertial::InertialType;
use crate::params::{pow_mod, LocalParams};
use crate::recipe::{enumerate_delta, DeltaVector};
use crate::tame::{Level, TameCharacter};
use crate::weight::{enumerate_weights, SerreWeight};
use std::collections::BTreeSet;

/// Level-2s canonical exponent of
/// Π λ_τ^{w_τ} Π ψ_{lift(τ)}^{k_τ−1+δ_τ} ψ_{other(τ)}^{e−1−δ_τ}.
fn double_exponent(
    weight: &SerreWeight,
    delta: &DeltaVector,
    eps: usize,
    params: &LocalParams,
) -> i64 {
    let s = params.s();
    let m2 = params.modulus(2 * s);
    let zero = vec![0i64; s];
    let mut acc = weight.twist_exponent_double(&zero, params);
    for j in 0..s {
        let (hi, lo) = if eps & (1 << j) == 0 {
            (j, j + s)
        } else {
            (j + s, j)
        };
        let top = weight.k_at(j) - 1 + delta.get(j);
        let bot = params.e() - 1 - delta.get(j);
        acc = (acc
            + top.rem_euclid(m2) * pow_mod(params.p(), 2 * s - hi, m2)
            + bot.rem_euclid(m2) * pow_mod(params.p(), 2 * s - lo, m2))
            % m2;
    }
    acc
}

/// Weights matching a genuine level-2s character for one fixed δ.
pub fn matching_set_double(
    phi: &TameCharacter,
    delta: &DeltaVector,
    params: &LocalParams,
) -> BTreeSet<SerreWeight> {
    assert_eq!(phi.level(), Level::TwoS);
    let targets = [
        phi.exponent(),
        phi.conjugate(params).exponent(),
    ];
    let mut out = BTreeSet::new();
    for weight in enumerate_weights(params) {
        for eps in 0..(1usize << params.s()) {
            if targets.contains(&double_exponent(&weight, delta, eps, params)) {
                out.insert(weight.clone());
                break;
            }
        }
    }
    out
}

/// Level-s canonical exponent of
/// Π λ_τ^{w_τ} Π_{τ∈J} λ_τ^{k_τ−1+δ_τ} Π_{τ∉J} λ_τ^{e−1−δ_τ}.
fn split_exponent(
    weight: &SerreWeight,
    delta: &DeltaVector,
    j_set: usize,
    params: &LocalParams,
) -> i64 {
    let s = params.s();
    let m = params.q() - 1;
    let mut acc: i64 = 0;
    for j in 0..s {
        let extra = if j_set & (1 << j) != 0 {
            weight.k_at(j) - 1 + delta.get(j)
        } else {
            params.e() - 1 - delta.get(j)
        };
        let coeff = (weight.w_at(j) + extra).rem_euclid(m);
        acc = (acc + coeff * pow_mod(params.p(), s - j, m)) % m;
    }
    acc
}

/// Weights matching an unordered pair of level-s characters for one fixed δ.
pub fn matching_set_split(
    chi1: &TameCharacter,
    chi2: &TameCharacter,
    delta: &DeltaVector,
    params: &LocalParams,
) -> BTreeSet<SerreWeight> {
    assert_eq!(chi1.level(), Level::S);
    assert_eq!(chi2.level(), Level::S);
    let s = params.s();
    let want = {
        let mut pair = [chi1.exponent(), chi2.exponent()];
        pair.sort();
        pair
    };
    let mut out = BTreeSet::new();
    for weight in enumerate_weights(params) {
        for j_set in 0..(1usize << s) {
            let complement = !j_set & ((1 << s) - 1);
            let mut got = [
                split_exponent(&weight, delta, j_set, params),
                split_exponent(&weight, delta, complement, params),
            ];
            got.sort();
            if got == want {
                out.insert(weight.clone());
                break;
            }
        }
    }
    out
}

/// All weights whose central character matches the determinant of the type;
/// the conjectural set for e ≥ p, and the "maximal" set that e = p − 1
/// already reaches.
pub fn det_filtered_weights(t: &InertialType, params: &LocalParams) -> BTreeSet<SerreWeight> {
    let det = t.det_character(params);
    enumerate_weights(params)
        .into_iter()
        .filter(|w| w.det_exponent(params) == det)
        .collect()
}

/// The closed-form weight set: union over δ ∈ [0, e−1]^s of the matching
/// sets (e ≤ p − 1), or the determinant filter (e ≥ p).
pub fn closed_form_weight_set(t: &InertialType, params: &LocalParams) -> BTreeSet<SerreWeight> {
    if params.e() >= params.p() {
        return det_filtered_weights(t, params);
    }
    let mut out = BTreeSet::new();
    for delta in enumerate_delta(params) {
        match t {
            InertialType::Split(chi1, chi2) => {
                out.append(&mut matching_set_split(chi1, chi2, &delta, params));
            }
            InertialType::Cuspidal(phi) => {
                out.append(&mut matching_set_double(phi, &delta, params));
            }
        }
    }
    out
}

/// Independent second route for split types: for each (J, δ), enumerate
/// k-digit vectors, solve the two congruences for the w-digits, and keep
/// consistent solutions.  Used to cross-check `matching_set_split`, which
/// scans weights instead.
pub fn split_set_by_solving(
    chi1: &TameCharacter,
    chi2: &TameCharacter,
    params: &LocalParams,
) -> BTreeSet<SerreWeight> {
    use crate::weight::{increment, weights_from_residues};
    if params.e() >= params.p() {
        let t = InertialType::split(*chi1, *chi2, params).expect("level checked by caller");
        return det_filtered_weights(&t, params);
    }
    let s = params.s();
    let m = params.q() - 1;
    let mut out = BTreeSet::new();
    for delta in enumerate_delta(params) {
        for j_set in 0..(1usize << s) {
            let mut k = vec![2i64; s];
            loop {
                // exponent totals forced by (J, δ, k) on each diagonal entry
                let mut a_sum: i64 = 0;
                let mut b_sum: i64 = 0;
                for j in 0..s {
                    let top = k[j] - 1 + delta.get(j);
                    let bot = params.e() - 1 - delta.get(j);
                    let (x, y) = if j_set & (1 << j) != 0 {
                        (top, bot)
                    } else {
                        (bot, top)
                    };
                    let w = pow_mod(params.p(), s - j, m);
                    a_sum = (a_sum + x.rem_euclid(m) * w) % m;
                    b_sum = (b_sum + y.rem_euclid(m) * w) % m;
                }
                // w-twist must move (a_sum, b_sum) onto (χ1, χ2) jointly
                for (t1, t2) in [
                    (chi1.exponent(), chi2.exponent()),
                    (chi2.exponent(), chi1.exponent()),
                ] {
                    let need = (t1 - a_sum).rem_euclid(m);
                    if (t2 - b_sum).rem_euclid(m) != need {
                        continue;
                    }
                    // candidate b-residue of the weight is `need`; recover
                    // digit tuples and keep those with the chosen k-digits
                    let c = (need + digit_residue_of(&k, params)).rem_euclid(m);
                    for weight in weights_from_residues(c, need, params) {
                        if weight.k() == k.as_slice() {
                            out.insert(weight);
                        }
                    }
                }
                if !increment(&mut k, 2, params.p() + 1) {
                    break;
                }
            }
        }
    }
    out
}

fn digit_residue_of(k: &[i64], params: &LocalParams) -> i64 {
    let m = params.q() - 1;
    let mut acc = 0i64;
    for (j, &kj) in k.iter().enumerate() {
        acc = (acc + (kj - 2).rem_euclid(m) * pow_mod(params.p(), k.len() - j, m)) % m;
    }
    acc
}
