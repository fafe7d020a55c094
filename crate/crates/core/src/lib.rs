//! Weight sets for tamely ramified two-dimensional mod-p local Galois data.
//!
//! Fix an odd prime p and a local field with residue degree s and
//! ramification index e, so the residue field has q = p^s elements.  A tame
//! semisimple inertial type is either a pair of level-s characters of tame
//! inertia (split) or a level-2s character together with its q-power
//! conjugate (cuspidal).  This crate computes the conjectural set W? of
//! modular Serre weights attached to such a type by two independent routes:
//!
//!   * the recipe route: Jordan–Hölder constituents of the reduction of the
//!     attached characteristic-zero representation, pushed through the
//!     multi-valued carry operator ℛ^δ and unioned over all δ ∈ [0, e−1]^s
//!     (`recipe::predicted_weight_set`);
//!   * the closed-form route: exhaustive solution of the diagonal character
//!     equations with exponents k_τ − 1 + δ_τ and e − 1 − δ_τ
//!     (`matching::closed_form_weight_set`).
//!
//! The two routes are provably equal; the `intervals` module carries the
//! signed-interval systems ℒ_δ, ℳ_δ and the bijection ξ underlying that
//! proof, and the `scheme` module carries the Borel-character solver
//! (Φ(θ) = Ω_e(θ) and the intersection over the family Θ(σ)) that pins the
//! cuspidal direction.  Everything is exact integer arithmetic; enumeration
//! scales are desk-sized (p^s ≤ 25 for predictions, s ≤ 4 for the interval
//! systems) and every cross-check is exhaustive rather than sampled.

pub mod intervals;
pub mod matching;
pub mod params;
pub mod recipe;
pub mod scheme;
pub mod tame;
pub mod weight;

pub mod inertial;

pub use inertial::{GenericFiberRep, InertialType, TypeError};
pub use params::{LocalParams, ParamError};
pub use recipe::{BranchRule, DeltaVector};
pub use scheme::NuConvention;
pub use tame::{Level, TameCharacter};
pub use weight::SerreWeight;
