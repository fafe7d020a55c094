//! Signed interval systems on Z/sZ and the carry-transfer bijection ξ.
//!
//! These are the combinatorial scaffolding behind the equivalence of the
//! recipe route and the closed-form route.  A pair (α, ℐ) consists of a
//! profile α: Z/sZ → [0, p−1] and a collection ℐ of pairwise disjoint
//! cyclic intervals [[j, n]] = {j, j+1, …, n}, each labeled with a sign.
//! The predecessor of [[j, n]] is j − 1 and its terminus is n.  The system
//! ℒ_δ constrains (α, ℐ) through the carries x_j of the profile; the
//! system ℳ_δ constrains pairs (β, ℐ) whose entries β(j) live directly in
//! the shifted windows [1 + 2δ_j − (e−1), p + 2δ_j − (e−1)].  The map ξ
//! adds the resolved carry of each interval to its entries ((p−1) on the
//! interior, p at the terminus, and a signed unit on the entry just before
//! the interval) and is a bijection ℒ_δ → ℳ_δ preserving ℐ.
//!
//! The branch families of the recipe are recovered here as the sets of
//! predecessors of positively-signed intervals (`positive_predecessors`,
//! `s_sets_via_intervals`); agreement with `recipe::branch_sets` is an
//! exhaustively tested invariant.  Enumeration is deliberately brute force
//! over all profiles and collections — this module exists to verify, not
//! to compute predictions — and is only intended for s ≤ 4.

use crate::params::LocalParams;
use crate::recipe::{carry_vector, window_low, DeltaVector};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

/// A cyclic interval [[start, …, terminus]] with a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedInterval {
    pub start: usize,
    pub len: usize,
    pub sign: Sign,
}

impl SignedInterval {
    pub fn terminus(&self, s: usize) -> usize {
        (self.start + self.len - 1) % s
    }

    pub fn predecessor(&self, s: usize) -> usize {
        (self.start + s - 1) % s
    }

    pub fn members(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.start;
        (0..self.len).map(move |t| (start + t) % s)
    }

    pub fn contains(&self, j: usize, s: usize) -> bool {
        let rel = (j + s - self.start) % s;
        rel < self.len
    }
}

/// Pairwise disjoint signed intervals, canonicalized by start index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalCollection {
    intervals: Vec<SignedInterval>,
}

impl IntervalCollection {
    pub fn new(mut intervals: Vec<SignedInterval>, s: usize) -> Option<Self> {
        intervals.sort();
        let mut seen = vec![false; s];
        for iv in &intervals {
            if iv.len == 0 || iv.len > s {
                return None;
            }
            for j in iv.members(s) {
                if seen[j] {
                    return None;
                }
                seen[j] = true;
            }
        }
        Some(IntervalCollection { intervals })
    }

    pub fn empty() -> Self {
        IntervalCollection { intervals: vec![] }
    }

    pub fn intervals(&self) -> &[SignedInterval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn covering(&self, j: usize, s: usize) -> Option<&SignedInterval> {
        self.intervals.iter().find(|iv| iv.contains(j, s))
    }

    pub fn covers(&self, j: usize, s: usize) -> bool {
        self.covering(j, s).is_some()
    }

    /// The interval whose first member is `start`, if any.
    pub fn starting_at(&self, start: usize) -> Option<&SignedInterval> {
        self.intervals.iter().find(|iv| iv.start == start)
    }

    pub fn is_terminus(&self, j: usize, s: usize) -> bool {
        self.intervals.iter().any(|iv| iv.terminus(s) == j)
    }

    /// Sign of the interval that j precedes (the one starting at j + 1).
    pub fn preceded_sign(&self, j: usize, s: usize) -> Option<Sign> {
        self.starting_at((j + 1) % s).map(|iv| iv.sign)
    }

    /// Like `preceded_sign`, but ignoring a full-circle interval whose
    /// predecessor is its own terminus: handing a carry to oneself is not
    /// a chain.
    pub fn preceded_sign_other(&self, j: usize, s: usize) -> Option<Sign> {
        self.starting_at((j + 1) % s)
            .filter(|iv| iv.len < s)
            .map(|iv| iv.sign)
    }

    /// Predecessors of positively signed intervals.
    pub fn positive_predecessors(&self, s: usize) -> BTreeSet<usize> {
        self.intervals
            .iter()
            .filter(|iv| iv.sign == Sign::Pos)
            .map(|iv| iv.predecessor(s))
            .collect()
    }

    /// Resolved carry z_j for a predecessor j of some interval: the first
    /// nonzero value of `carries` at a terminus reached by following the
    /// chain of adjacent intervals; `None` if the chain cycles without
    /// resolving or falls off the collection.
    pub fn resolve(&self, j: usize, carries: &[i64], s: usize) -> Option<i64> {
        let mut seen = BTreeSet::new();
        let mut pred = j;
        loop {
            if !seen.insert(pred) {
                return None;
            }
            let iv = self.starting_at((pred + 1) % s)?;
            let t = iv.terminus(s);
            if carries[t] != 0 {
                return Some(carries[t]);
            }
            pred = t;
        }
    }

    /// Window-side analogue of `resolve`: the chain continues through
    /// termini that sit on a window boundary and precede a negative
    /// interval (their carry is still in transit), and resolves at the
    /// first terminus without that shape.
    pub fn resolve_shaped(
        &self,
        j: usize,
        carries: &[i64],
        is_chaining: impl Fn(usize) -> bool,
        s: usize,
    ) -> Option<i64> {
        let mut seen = BTreeSet::new();
        let mut pred = j;
        loop {
            if !seen.insert(pred) {
                return None;
            }
            let iv = self.starting_at((pred + 1) % s)?;
            let t = iv.terminus(s);
            if !is_chaining(t) {
                return if carries[t] != 0 {
                    Some(carries[t])
                } else {
                    None
                };
            }
            pred = t;
        }
    }
}

/// All interval collections on Z/sZ (every disjoint set of signed cyclic
/// intervals, deduplicated by canonical order).
pub fn enumerate_collections(s: usize) -> Vec<IntervalCollection> {
    let mut singles = Vec::new();
    for start in 0..s {
        for len in 1..=s {
            for sign in [Sign::Pos, Sign::Neg] {
                singles.push(SignedInterval { start, len, sign });
            }
        }
    }
    let mut out = vec![IntervalCollection::empty()];
    let mut stack: Vec<Vec<SignedInterval>> = vec![vec![]];
    while let Some(chosen) = stack.pop() {
        let next_start = chosen.last().map(|iv| iv.start + 1).unwrap_or(0);
        for iv in &singles {
            if iv.start < next_start {
                continue;
            }
            let mut cand = chosen.clone();
            cand.push(*iv);
            if let Some(coll) = IntervalCollection::new(cand.clone(), s) {
                out.push(coll);
                stack.push(cand);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// A pair (α, ℐ) in ℒ_δ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LPair {
    pub alpha: Vec<i64>,
    pub coll: IntervalCollection,
}

/// A pair (β, ℐ) in ℳ_δ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MPair {
    pub beta: Vec<i64>,
    pub coll: IntervalCollection,
}

fn boundary_low(delta: &DeltaVector, j: usize, params: &LocalParams) -> i64 {
    window_low(delta, j, params)
}

fn boundary_high(delta: &DeltaVector, j: usize, params: &LocalParams) -> i64 {
    window_low(delta, j, params) + params.p() - 1
}

/// Membership test for ℒ_δ.
pub fn is_l_pair(pair: &LPair, delta: &DeltaVector, params: &LocalParams) -> bool {
    let s = params.s();
    let alpha = &pair.alpha;
    if alpha.len() != s || alpha.iter().any(|&a| a < 0 || a > params.p() - 1) {
        return false;
    }
    let x = carry_vector(alpha, delta, params);
    let coll = &pair.coll;

    // Axiom 1: each interval lies in C^+ ∪ {α = low boundary} or in
    // C^- ∪ {α = high boundary}.
    for iv in coll.intervals() {
        let plus = iv
            .members(s)
            .all(|j| x[j] == 1 || alpha[j] == boundary_low(delta, j, params));
        let minus = iv
            .members(s)
            .all(|j| x[j] == -1 || alpha[j] == boundary_high(delta, j, params));
        if !plus && !minus {
            return false;
        }
    }
    // Axiom 2: a covered position with α ≠ 0 is the terminus of its interval.
    for iv in coll.intervals() {
        for j in iv.members(s) {
            if alpha[j] != 0 && j != iv.terminus(s) {
                return false;
            }
        }
    }
    // Axiom 3: for covered j, α at a window boundary iff j is a terminus
    // that precedes a negative interval.
    for iv in coll.intervals() {
        for j in iv.members(s) {
            let at_boundary = alpha[j] == boundary_low(delta, j, params)
                || alpha[j] == boundary_high(delta, j, params);
            let term_before_neg =
                j == iv.terminus(s) && coll.preceded_sign_other(j, s) == Some(Sign::Neg);
            if at_boundary != term_before_neg {
                return false;
            }
        }
    }
    // Axiom 4: an uncovered carrying position forces the next one covered.
    for j in 0..s {
        if !coll.covers(j, s) && x[j] != 0 && !coll.covers((j + 1) % s, s) {
            return false;
        }
    }
    // Axioms 5 and 6: predecessor conditions, with z resolved through
    // chained intervals (cycling resolution invalidates the pair).
    for iv in coll.intervals() {
        let j = iv.predecessor(s);
        let z = match coll.resolve(j, &x, s) {
            Some(z) => z,
            None => return false,
        };
        let covered = coll.covers(j, s);
        let ok = match iv.sign {
            Sign::Pos => {
                if covered {
                    z != x[j]
                } else {
                    let lo = 1 - z + 2 * delta.get(j) - (params.e() - 1);
                    alpha[j] >= lo && alpha[j] <= lo + params.p() - 1
                }
            }
            Sign::Neg => {
                if covered {
                    z == x[j]
                        || alpha[j]
                            == if z == 1 {
                                boundary_low(delta, j, params)
                            } else {
                                boundary_high(delta, j, params)
                            }
                } else {
                    let lo = 1 + z + 2 * delta.get(j) - (params.e() - 1);
                    alpha[j] >= lo && alpha[j] <= lo + params.p() - 1
                }
            }
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Carries y_j of a window vector: β(j) − y_j p ∈ [0, p − 1].
pub fn window_carries(beta: &[i64], params: &LocalParams) -> Vec<i64> {
    beta.iter().map(|&b| b.div_euclid(params.p())).collect()
}

/// Membership test for ℳ_δ.
pub fn is_m_pair(pair: &MPair, delta: &DeltaVector, params: &LocalParams) -> bool {
    let s = params.s();
    let beta = &pair.beta;
    if beta.len() != s {
        return false;
    }
    for j in 0..s {
        if beta[j] < boundary_low(delta, j, params) || beta[j] > boundary_high(delta, j, params) {
            return false;
        }
    }
    let y = window_carries(beta, params);
    let coll = &pair.coll;
    // A terminus is "in transit" when its entry sits on a window boundary
    // and its carry chains into a following negative interval.  The entry
    // then records the boundary value shifted through the window: bottom
    // for a downward carry (needing the window top ≤ p − 1 so the original
    // entry was a digit), top for an upward carry (needing bottom ≥ 0).
    let chaining_ok = |j: usize| {
        coll.is_terminus(j, s)
            && coll.preceded_sign_other(j, s) == Some(Sign::Neg)
            && ((beta[j] == boundary_low(delta, j, params)
                && boundary_high(delta, j, params) <= params.p() - 1)
                || (beta[j] == boundary_high(delta, j, params)
                    && boundary_low(delta, j, params) >= 0))
    };

    // Axiom 1: each interval lies in D^+ ∪ {β = p − 1} or in D^-, apart
    // from termini in transit; an interior entry is p − 1 inside a window
    // that still reaches p.
    for iv in coll.intervals() {
        let plus = iv
            .members(s)
            .all(|j| y[j] == 1 || beta[j] == params.p() - 1 || chaining_ok(j));
        let minus = iv.members(s).all(|j| y[j] == -1 || chaining_ok(j));
        if !plus && !minus {
            return false;
        }
        for j in iv.members(s) {
            if j != iv.terminus(s)
                && (beta[j] != params.p() - 1 || boundary_high(delta, j, params) < params.p())
            {
                return false;
            }
        }
    }
    // Axiom 2: positions carrying in their window are the termini, except
    // that the entry just before an interval may be pushed into a carry by
    // its predecessor shift.  A terminus feeding a negative interval must
    // be in transit, and only a terminus in transit may be carry-free.
    for j in 0..s {
        let is_term = coll.is_terminus(j, s);
        let is_pred = coll.starting_at((j + 1) % s).is_some();
        if y[j] != 0 && !is_term && !is_pred && !chaining_ok(j) {
            return false;
        }
        if is_term && coll.preceded_sign_other(j, s) == Some(Sign::Neg) && !chaining_ok(j) {
            return false;
        }
        if is_term && y[j] == 0 && !chaining_ok(j) {
            return false;
        }
    }
    // Axioms 3 and 4: predecessor conditions with the chained carry u.
    for iv in coll.intervals() {
        let j = iv.predecessor(s);
        let u = match coll.resolve_shaped(j, &y, &chaining_ok, s) {
            Some(u) => u,
            None => return false,
        };
        let covered = coll.covers(j, s);
        let ok = match iv.sign {
            Sign::Pos => {
                if covered {
                    u != y[j]
                } else {
                    beta[j] >= u && beta[j] <= params.p() - 1 + u
                }
            }
            Sign::Neg => {
                if covered {
                    u == y[j]
                        || beta[j]
                            == if u == 1 {
                                boundary_high(delta, j, params)
                            } else {
                                boundary_low(delta, j, params)
                            }
                } else {
                    beta[j] >= -u && beta[j] <= params.p() - 1 - u
                }
            }
        };
        if !ok {
            return false;
        }
    }
    true
}

/// All ℒ_δ pairs.
pub fn enumerate_l_pairs(delta: &DeltaVector, params: &LocalParams) -> Vec<LPair> {
    let s = params.s();
    let collections = enumerate_collections(s);
    let mut out = Vec::new();
    let mut alpha = vec![0i64; s];
    loop {
        for coll in &collections {
            let pair = LPair {
                alpha: alpha.clone(),
                coll: coll.clone(),
            };
            if is_l_pair(&pair, delta, params) {
                out.push(pair);
            }
        }
        if !crate::weight::increment(&mut alpha, 0, params.p() - 1) {
            break;
        }
    }
    out
}

/// All ℳ_δ pairs.
pub fn enumerate_m_pairs(delta: &DeltaVector, params: &LocalParams) -> Vec<MPair> {
    let s = params.s();
    let collections = enumerate_collections(s);
    let mut out = Vec::new();
    let lows: Vec<i64> = (0..s).map(|j| boundary_low(delta, j, params)).collect();
    let mut offsets = vec![0i64; s];
    loop {
        let beta: Vec<i64> = (0..s).map(|j| lows[j] + offsets[j]).collect();
        for coll in &collections {
            let pair = MPair {
                beta: beta.clone(),
                coll: coll.clone(),
            };
            if is_m_pair(&pair, delta, params) {
                out.push(pair);
            }
        }
        if !crate::weight::increment(&mut offsets, 0, params.p() - 1) {
            break;
        }
    }
    out
}

/// ξ: add the resolved carry of each interval to its entries — (p−1) on
/// interior positions, p at the terminus, and a signed unit on the entry
/// just before the interval.  A terminus that itself precedes a chained
/// negative interval receives both its own p-shift and that interval's
/// predecessor shift, collapsing to the net (p−1).
pub fn xi_forward(pair: &LPair, delta: &DeltaVector, params: &LocalParams) -> Option<MPair> {
    let s = params.s();
    let x = carry_vector(&pair.alpha, delta, params);
    let coll = &pair.coll;
    let mut beta = pair.alpha.clone();
    for iv in coll.intervals() {
        let z = coll.resolve(iv.predecessor(s), &x, s)?;
        for j in iv.members(s) {
            beta[j] += if j == iv.terminus(s) {
                z * params.p()
            } else {
                z * (params.p() - 1)
            };
        }
        // The predecessor entry absorbs the borrow: a signed unit when it
        // sits outside the collection, the chaining −z when it is the
        // terminus feeding a negative interval, and nothing when it is a
        // terminus handing off to a positive interval (its own p-shift
        // already carries the exchange).
        let j = iv.predecessor(s);
        beta[j] += match iv.sign {
            Sign::Pos => {
                if coll.covers(j, s) {
                    0
                } else {
                    z
                }
            }
            // a full circle hands its carry to itself: no extra shift
            Sign::Neg => {
                if iv.len == s {
                    0
                } else {
                    -z
                }
            }
        };
    }
    Some(MPair {
        beta,
        coll: coll.clone(),
    })
}

/// ξ^{-1}: subtract the same shifts, resolving carries on the window side.
pub fn xi_inverse(pair: &MPair, delta: &DeltaVector, params: &LocalParams) -> Option<LPair> {
    let s = params.s();
    let y = window_carries(&pair.beta, params);
    let coll = &pair.coll;
    let beta = &pair.beta;
    let chaining = |t: usize| {
        coll.preceded_sign_other(t, s) == Some(Sign::Neg)
            && (beta[t] == boundary_low(delta, t, params)
                || beta[t] == boundary_high(delta, t, params))
    };
    let mut alpha = pair.beta.clone();
    for iv in coll.intervals() {
        let u = coll.resolve_shaped(iv.predecessor(s), &y, &chaining, s)?;
        for j in iv.members(s) {
            alpha[j] -= if j == iv.terminus(s) {
                u * params.p()
            } else {
                u * (params.p() - 1)
            };
        }
        let j = iv.predecessor(s);
        alpha[j] -= match iv.sign {
            Sign::Pos => {
                if coll.covers(j, s) {
                    0
                } else {
                    u
                }
            }
            Sign::Neg => {
                if iv.len == s {
                    0
                } else {
                    -u
                }
            }
        };
    }
    Some(LPair {
        alpha,
        coll: coll.clone(),
    })
}

/// Branch families by way of the interval systems: the sets of positive
/// predecessors over all ℒ_δ pairs with the given profile.
pub fn s_sets_via_intervals(
    alpha: &[i64],
    delta: &DeltaVector,
    params: &LocalParams,
) -> BTreeSet<BTreeSet<usize>> {
    let s = params.s();
    let mut out = BTreeSet::new();
    for coll in enumerate_collections(s) {
        let pair = LPair {
            alpha: alpha.to_vec(),
            coll,
        };
        if is_l_pair(&pair, delta, params) {
            out.insert(pair.coll.positive_predecessors(s));
        }
    }
    out
}

/// Underlined-string rendering for diagnostics: entries comma-separated,
/// each interval bracketed with its sign trailing.
pub fn render_pair(values: &[i64], coll: &IntervalCollection, s: usize) -> String {
    let mut parts = Vec::new();
    for j in 0..s {
        let mut piece = String::new();
        if coll.starting_at(j).is_some() {
            piece.push('[');
        }
        piece.push_str(&values[j].to_string());
        if let Some(iv) = coll.covering(j, s) {
            if iv.terminus(s) == j {
                piece.push(']');
                piece.push(match iv.sign {
                    Sign::Pos => '+',
                    Sign::Neg => '-',
                });
            }
        }
        parts.push(piece);
    }
    parts.join(",")
}

impl fmt::Display for LPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            render_pair(&self.alpha, &self.coll, self.alpha.len())
        )
    }
}

impl fmt::Display for MPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            render_pair(&self.beta, &self.coll, self.beta.len())
        )
    }
}
