//! Finitely-variable behaviors over dense and discrete time.
//!
//! A [`DenseBehavior`] maps every real instant to a set of true propositions
//! and is represented by its canonical interval sequence: finitely many
//! maximal constancy intervals partitioning the line, adjacent values
//! distinct, with unbounded first and last pieces. A [`DiscreteBehavior`]
//! maps every integer to a value and is eventually constant on both sides;
//! its canonical form stores the two limit values plus the shortest centered
//! core that explains everything else.
//!
//! The module also provides the bridge between the two: periodic
//! [`DenseBehavior::sample`]ing with period `delta` and anchor `z`, the
//! slow-variability check [`DenseBehavior::is_non_berkeley`] (every bounded
//! constancy interval lasts longer than `delta`, or exactly `delta` with both
//! ends closed), and [`dense_completions`] — randomized construction of dense
//! preimages of a discrete behavior, each re-validated against its sample and
//! the slow-variability requirement.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::formula::Letter;
use crate::interval::{Bound, TimeInterval};
use crate::rat::{self, Rat};
use num::Zero;

/// One maximal constancy interval of a dense behavior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub interval: TimeInterval,
    pub value: BTreeSet<Letter>,
}

/// Errors from behavior construction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BehaviorError {
    #[error("piece list must be nonempty")]
    NoPieces,
    #[error("piece {0} has an empty interval")]
    EmptyPiece(usize),
    #[error("first piece must extend to -inf and last piece to inf")]
    UnboundedTailsMissing,
    #[error("pieces {0} and {1} do not meet at a shared finite boundary owned by exactly one side")]
    NotContiguous(usize, usize),
    #[error("value uses letter `{0}` outside the declared alphabet")]
    ValueOutsideAlphabet(String),
    #[error("sampling period must be positive, got {0}")]
    NonPositivePeriod(String),
}

/// A finitely-variable behavior over the real line, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseBehavior {
    alphabet: BTreeSet<Letter>,
    pieces: Vec<Piece>,
}

/// Which one-sided limits disagree with which at a transition instant.
///
/// `Left`: the value jumps arriving at the instant (the instant itself agrees
/// with the right limit). `Right`: the value jumps leaving it. `Both`: an
/// isolated value at the instant, disagreeing with both limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransitionKind {
    Left,
    Right,
    Both,
}

impl DenseBehavior {
    /// Builds a behavior from maximal-interval pieces, validating that they
    /// partition the line, and merging adjacent pieces with equal values so
    /// the stored form is canonical.
    pub fn from_pieces(
        alphabet: BTreeSet<Letter>,
        pieces: Vec<Piece>,
    ) -> Result<Self, BehaviorError> {
        if pieces.is_empty() {
            return Err(BehaviorError::NoPieces);
        }
        for (i, p) in pieces.iter().enumerate() {
            if p.interval.is_empty() {
                return Err(BehaviorError::EmptyPiece(i));
            }
            for l in &p.value {
                if !alphabet.contains(l) {
                    return Err(BehaviorError::ValueOutsideAlphabet(l.name().to_string()));
                }
            }
        }
        if *pieces.first().unwrap().interval.lo() != Bound::NegInf
            || *pieces.last().unwrap().interval.hi() != Bound::PosInf
        {
            return Err(BehaviorError::UnboundedTailsMissing);
        }
        for i in 0..pieces.len() - 1 {
            let a = &pieces[i].interval;
            let b = &pieces[i + 1].interval;
            let contiguous = a.hi().is_finite()
                && a.hi() == b.lo()
                && (a.hi_closed() ^ b.lo_closed());
            if !contiguous {
                return Err(BehaviorError::NotContiguous(i, i + 1));
            }
        }
        // Canonicalize: merge runs of equal adjacent values.
        let mut merged: Vec<Piece> = Vec::with_capacity(pieces.len());
        for p in pieces {
            match merged.last_mut() {
                Some(prev) if prev.value == p.value => {
                    prev.interval = TimeInterval::new(
                        prev.interval.lo().clone(),
                        prev.interval.lo_closed(),
                        p.interval.hi().clone(),
                        p.interval.hi_closed(),
                    );
                }
                _ => merged.push(p),
            }
        }
        Ok(DenseBehavior {
            alphabet,
            pieces: merged,
        })
    }

    /// The behavior constantly equal to `value`.
    pub fn constant(
        alphabet: BTreeSet<Letter>,
        value: BTreeSet<Letter>,
    ) -> Result<Self, BehaviorError> {
        Self::from_pieces(
            alphabet,
            vec![Piece {
                interval: TimeInterval::full(),
                value,
            }],
        )
    }

    pub fn alphabet(&self) -> &BTreeSet<Letter> {
        &self.alphabet
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Value on the unbounded left tail.
    pub fn left_value(&self) -> &BTreeSet<Letter> {
        &self.pieces.first().unwrap().value
    }

    /// Value on the unbounded right tail.
    pub fn right_value(&self) -> &BTreeSet<Letter> {
        &self.pieces.last().unwrap().value
    }

    /// The value at instant `t` (pieces partition the line, so exactly one
    /// contains it).
    pub fn value_at(&self, t: &Rat) -> &BTreeSet<Letter> {
        for p in &self.pieces {
            if p.interval.contains(t) {
                return &p.value;
            }
        }
        unreachable!("pieces partition the line")
    }

    pub fn holds_at(&self, t: &Rat, l: &Letter) -> bool {
        self.value_at(t).contains(l)
    }

    /// Finite boundary instants between consecutive pieces, ascending
    /// (duplicates possible around a singular piece are collapsed).
    pub fn breakpoints(&self) -> Vec<Rat> {
        let mut out: Vec<Rat> = Vec::new();
        for i in 0..self.pieces.len().saturating_sub(1) {
            if let Bound::Fin(c) = self.pieces[i].interval.hi() {
                if out.last() != Some(c) {
                    out.push(c.clone());
                }
            }
        }
        out
    }

    /// Transition instants with the side(s) on which the value jumps,
    /// ascending. A step owning its switch instant on the left reports a
    /// `Right` transition there (the jump is seen leaving the instant), and
    /// symmetrically; an isolated point reports `Both`.
    pub fn tau(&self) -> Vec<(Rat, TransitionKind)> {
        let mut out: Vec<(Rat, TransitionKind)> = Vec::new();
        for i in 0..self.pieces.len().saturating_sub(1) {
            let iv = &self.pieces[i].interval;
            let c = match iv.hi() {
                Bound::Fin(c) => c.clone(),
                _ => continue,
            };
            let kind = if iv.hi_closed() {
                TransitionKind::Right
            } else {
                TransitionKind::Left
            };
            match out.last_mut() {
                Some((prev, prev_kind)) if *prev == c => {
                    *prev_kind = TransitionKind::Both;
                }
                _ => out.push((c, kind)),
            }
        }
        out
    }

    /// Slow variability with respect to a positive period `delta`: every
    /// bounded constancy interval is longer than `delta`, or exactly `delta`
    /// long with both endpoints closed. Nonpositive periods fit nothing.
    pub fn is_non_berkeley(&self, delta: &Rat) -> bool {
        if delta <= &Rat::zero() {
            return false;
        }
        let d = Bound::Fin(delta.clone());
        self.pieces.iter().all(|p| {
            let len = p.interval.length();
            match len.cmp(&d) {
                std::cmp::Ordering::Greater => true, // includes unbounded pieces
                std::cmp::Ordering::Equal => p.interval.lo_closed() && p.interval.hi_closed(),
                std::cmp::Ordering::Less => false,
            }
        })
    }

    /// Reads the behavior at `z + k*delta` for every integer `k`, producing
    /// the (eventually constant) discrete behavior of the samples.
    pub fn sample(&self, s: &SamplingParams) -> DiscreteBehavior {
        let bps = self.breakpoints();
        if bps.is_empty() {
            return DiscreteBehavior::constant(self.alphabet.clone(), self.left_value().clone());
        }
        let first = bps.first().unwrap();
        let last = bps.last().unwrap();
        let k_lo = rat::to_i64(&rat::floor(&((first - &s.z) / &s.delta)))
            .expect("sampling window fits machine integers")
            - 1;
        let k_hi = rat::to_i64(&rat::ceil(&((last - &s.z) / &s.delta)))
            .expect("sampling window fits machine integers")
            + 1;
        let mut core = Vec::with_capacity((k_hi - k_lo + 1) as usize);
        for k in k_lo..=k_hi {
            let t = &s.z + rat::rat_int(k) * &s.delta;
            core.push(self.value_at(&t).clone());
        }
        DiscreteBehavior::new(
            self.alphabet.clone(),
            self.left_value().clone(),
            k_lo,
            core,
            self.right_value().clone(),
        )
        .expect("sampled values stay within the alphabet")
    }
}

/// Period and anchor of a sampling grid `{ z + k*delta }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingParams {
    pub delta: Rat,
    pub z: Rat,
}

impl SamplingParams {
    pub fn new(delta: Rat, z: Rat) -> Result<Self, BehaviorError> {
        if delta <= Rat::zero() {
            return Err(BehaviorError::NonPositivePeriod(delta.to_string()));
        }
        Ok(SamplingParams { delta, z })
    }
}

/// An eventually-constant behavior over the integers, in canonical form:
/// the core is the shortest window outside of which the behavior equals its
/// limit values. A pure step keeps its switch index as `core_start` with an
/// empty core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteBehavior {
    alphabet: BTreeSet<Letter>,
    left: BTreeSet<Letter>,
    core_start: i64,
    core: Vec<BTreeSet<Letter>>,
    right: BTreeSet<Letter>,
}

impl DiscreteBehavior {
    /// Builds and canonicalizes: leading core values equal to the left limit
    /// and trailing ones equal to the right limit are absorbed into the
    /// tails; a fully constant behavior normalizes `core_start` to 0.
    pub fn new(
        alphabet: BTreeSet<Letter>,
        left: BTreeSet<Letter>,
        core_start: i64,
        core: Vec<BTreeSet<Letter>>,
        right: BTreeSet<Letter>,
    ) -> Result<Self, BehaviorError> {
        for v in core.iter().chain([&left, &right]) {
            for l in v {
                if !alphabet.contains(l) {
                    return Err(BehaviorError::ValueOutsideAlphabet(l.name().to_string()));
                }
            }
        }
        let mut core_start = core_start;
        let mut core: std::collections::VecDeque<_> = core.into();
        while core.front() == Some(&left) {
            core.pop_front();
            core_start += 1;
        }
        while core.back() == Some(&right) {
            core.pop_back();
        }
        if core.is_empty() && left == right {
            core_start = 0;
        }
        Ok(DiscreteBehavior {
            alphabet,
            left,
            core_start,
            core: core.into(),
            right,
        })
    }

    /// The behavior constantly equal to `value`.
    pub fn constant(alphabet: BTreeSet<Letter>, value: BTreeSet<Letter>) -> Self {
        Self::new(alphabet, value.clone(), 0, Vec::new(), value)
            .expect("constant value validated by caller-supplied alphabet")
    }

    /// A step: `left` strictly before index `at`, `right` from `at` on.
    pub fn step(
        alphabet: BTreeSet<Letter>,
        left: BTreeSet<Letter>,
        right: BTreeSet<Letter>,
        at: i64,
    ) -> Result<Self, BehaviorError> {
        Self::new(alphabet, left, at, Vec::new(), right)
    }

    pub fn alphabet(&self) -> &BTreeSet<Letter> {
        &self.alphabet
    }

    pub fn left_value(&self) -> &BTreeSet<Letter> {
        &self.left
    }

    pub fn right_value(&self) -> &BTreeSet<Letter> {
        &self.right
    }

    pub fn core_start(&self) -> i64 {
        self.core_start
    }

    pub fn core(&self) -> &[BTreeSet<Letter>] {
        &self.core
    }

    /// Smallest window `[lo, hi)` outside of which the behavior equals its
    /// limits; empty (lo == hi) for steps and constants.
    pub fn window(&self) -> (i64, i64) {
        (self.core_start, self.core_start + self.core.len() as i64)
    }

    pub fn value_at(&self, k: i64) -> &BTreeSet<Letter> {
        let (lo, hi) = self.window();
        if k < lo {
            &self.left
        } else if k >= hi {
            &self.right
        } else {
            &self.core[(k - lo) as usize]
        }
    }

    pub fn holds_at(&self, k: i64, l: &Letter) -> bool {
        self.value_at(k).contains(l)
    }

    /// Translates the behavior by `by` (the value at `k` becomes the old
    /// value at `k - by`).
    pub fn shift(&self, by: i64) -> Self {
        let mut out = self.clone();
        out.core_start += by;
        if out.core.is_empty() && out.left == out.right {
            out.core_start = 0;
        }
        out
    }

    /// Indices `k` with `value(k) != value(k-1)`, ascending (finite).
    pub fn change_points(&self) -> Vec<i64> {
        let (lo, hi) = self.window();
        let mut out = Vec::new();
        for k in lo..=hi {
            if self.value_at(k) != self.value_at(k - 1) {
                out.push(k);
            }
        }
        out
    }
}

/// How [`dense_completions`] places value changes between sampling instants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionStrategy {
    /// Changes happen exactly at sampling instants (the last instant of the
    /// old run or the first of the new one, per-change).
    Aligned,
    /// Changes happen a random rational fraction of a period after the old
    /// run's last instant.
    Jittered,
}

/// Constructs up to `count` distinct dense behaviors that sample back to `d`
/// under `s` and satisfy the slow-variability requirement for `s.delta`.
/// Every candidate is re-validated before being returned; impossible
/// configurations (e.g. single-instant runs under [`CompletionStrategy::Aligned`])
/// simply yield fewer results. Deterministic for a fixed `seed`.
pub fn dense_completions(
    d: &DiscreteBehavior,
    s: &SamplingParams,
    strategy: CompletionStrategy,
    count: usize,
    seed: u64,
) -> Vec<DenseBehavior> {
    let changes = d.change_points();
    let mut out: Vec<DenseBehavior> = Vec::new();
    if changes.is_empty() {
        if let Ok(b) = DenseBehavior::constant(d.alphabet().clone(), d.left_value().clone()) {
            if count > 0 && b.sample(s) == *d && b.is_non_berkeley(&s.delta) {
                out.push(b);
            }
        }
        return out;
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let attempts = count.saturating_mul(8).max(16);
    for attempt in 0..attempts {
        if out.len() >= count {
            break;
        }
        // Choose a transition instant and an owning side per change point.
        // A change at index k happens in the half-open gap (z+(k-1)d, z+kd].
        let mut boundaries: Vec<(Rat, bool)> = Vec::with_capacity(changes.len()); // (instant, owned_by_left)
        for (j, k) in changes.iter().enumerate() {
            let prev_instant = &s.z + rat::rat_int(k - 1) * &s.delta;
            let next_instant = &s.z + rat::rat_int(*k) * &s.delta;
            match strategy {
                CompletionStrategy::Aligned => {
                    // First two attempts are the deterministic pure variants.
                    let at_old = match attempt {
                        0 => true,
                        1 => false,
                        _ => rng.gen_bool(0.5),
                    };
                    if at_old {
                        boundaries.push((prev_instant, true));
                    } else {
                        boundaries.push((next_instant, false));
                    }
                }
                CompletionStrategy::Jittered => {
                    let num = rng.gen_range(1..=8i64);
                    let frac = rat::rat(num, 8);
                    let t = &prev_instant + frac * &s.delta;
                    let owned_by_left = if num == 8 {
                        // Landing on the next sampling instant: it must show
                        // the new value, so the right side owns it.
                        false
                    } else {
                        rng.gen_bool(0.5)
                    };
                    let _ = j;
                    boundaries.push((t, owned_by_left));
                }
            }
        }
        if let Some(b) = build_from_boundaries(d, &changes, &boundaries) {
            if b.sample(s) == *d && b.is_non_berkeley(&s.delta) && !out.contains(&b) {
                out.push(b);
            }
        }
    }
    out
}

/// Assembles a dense behavior from run values and chosen transition
/// boundaries; returns `None` when a piece would be empty (instants out of
/// order or incompatible ownership at a shared instant).
fn build_from_boundaries(
    d: &DiscreteBehavior,
    changes: &[i64],
    boundaries: &[(Rat, bool)],
) -> Option<DenseBehavior> {
    // Run j covers sample indices [changes[j-1], changes[j]) with value
    // value_at(changes[j] - 1); run 0 is the left tail, the last run the
    // right tail.
    let n = changes.len();
    let mut pieces: Vec<Piece> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let value = if j == 0 {
            d.left_value().clone()
        } else {
            d.value_at(changes[j - 1]).clone()
        };
        let (lo, lo_closed) = if j == 0 {
            (Bound::NegInf, false)
        } else {
            let (t, owned_by_left) = &boundaries[j - 1];
            (Bound::Fin(t.clone()), !owned_by_left)
        };
        let (hi, hi_closed) = if j == n {
            (Bound::PosInf, false)
        } else {
            let (t, owned_by_left) = &boundaries[j];
            (Bound::Fin(t.clone()), *owned_by_left)
        };
        let interval = TimeInterval::new(lo, lo_closed, hi, hi_closed);
        if interval.is_empty() {
            return None;
        }
        pieces.push(Piece { interval, value });
    }
    DenseBehavior::from_pieces(d.alphabet().clone(), pieces).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn letters(names: &[&str]) -> BTreeSet<Letter> {
        names.iter().map(|n| Letter::new(n).unwrap()).collect()
    }

    /// p on [1,2], nothing elsewhere.
    fn pulse() -> DenseBehavior {
        DenseBehavior::from_pieces(
            letters(&["p"]),
            vec![
                Piece {
                    interval: TimeInterval::new(Bound::NegInf, false, Bound::Fin(rat_int(1)), false),
                    value: letters(&[]),
                },
                Piece {
                    interval: TimeInterval::closed(rat_int(1), rat_int(2)),
                    value: letters(&["p"]),
                },
                Piece {
                    interval: TimeInterval::new(Bound::Fin(rat_int(2)), false, Bound::PosInf, false),
                    value: letters(&[]),
                },
            ],
        )
        .unwrap()
    }

    /// p from just after 0 on; nothing before or at 0.
    fn step() -> DenseBehavior {
        DenseBehavior::from_pieces(
            letters(&["p"]),
            vec![
                Piece {
                    interval: TimeInterval::new(Bound::NegInf, false, Bound::Fin(rat_int(0)), true),
                    value: letters(&[]),
                },
                Piece {
                    interval: TimeInterval::new(Bound::Fin(rat_int(0)), false, Bound::PosInf, false),
                    value: letters(&["p"]),
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn construction_validates_partition() {
        let bad = DenseBehavior::from_pieces(
            letters(&["p"]),
            vec![
                Piece {
                    interval: TimeInterval::new(Bound::NegInf, false, Bound::Fin(rat_int(0)), true),
                    value: letters(&[]),
                },
                Piece {
                    // Gap: starts at 1 instead of 0.
                    interval: TimeInterval::new(Bound::Fin(rat_int(1)), false, Bound::PosInf, false),
                    value: letters(&["p"]),
                },
            ],
        );
        assert!(matches!(bad, Err(BehaviorError::NotContiguous(0, 1))));

        let overlap = DenseBehavior::from_pieces(
            letters(&["p"]),
            vec![
                Piece {
                    interval: TimeInterval::new(Bound::NegInf, false, Bound::Fin(rat_int(0)), true),
                    value: letters(&[]),
                },
                Piece {
                    // Both sides own 0.
                    interval: TimeInterval::new(Bound::Fin(rat_int(0)), true, Bound::PosInf, false),
                    value: letters(&["p"]),
                },
            ],
        );
        assert!(matches!(overlap, Err(BehaviorError::NotContiguous(0, 1))));
    }

    #[test]
    fn construction_merges_equal_adjacent_values() {
        let b = DenseBehavior::from_pieces(
            letters(&["p"]),
            vec![
                Piece {
                    interval: TimeInterval::new(Bound::NegInf, false, Bound::Fin(rat_int(0)), true),
                    value: letters(&["p"]),
                },
                Piece {
                    interval: TimeInterval::new(Bound::Fin(rat_int(0)), false, Bound::PosInf, false),
                    value: letters(&["p"]),
                },
            ],
        )
        .unwrap();
        assert_eq!(b.pieces().len(), 1);
        assert_eq!(b, DenseBehavior::constant(letters(&["p"]), letters(&["p"])).unwrap());
    }

    #[test]
    fn value_lookup_respects_ownership() {
        let b = step();
        let p = Letter::new("p").unwrap();
        assert!(!b.holds_at(&rat_int(0), &p));
        assert!(b.holds_at(&rat(1, 1000), &p));
        assert!(!b.holds_at(&rat_int(-5), &p));
    }

    #[test]
    fn transition_instants_and_sides() {
        // Step owning 0 on the left: the jump is seen leaving 0.
        assert_eq!(step().tau(), vec![(rat_int(0), TransitionKind::Right)]);
        // Pulse [1,2]: value jumps arriving at 1 and leaving 2.
        assert_eq!(
            pulse().tau(),
            vec![
                (rat_int(1), TransitionKind::Left),
                (rat_int(2), TransitionKind::Right)
            ]
        );
        assert!(DenseBehavior::constant(letters(&["p"]), letters(&[]))
            .unwrap()
            .tau()
            .is_empty());
    }

    #[test]
    fn isolated_point_reports_both_sides() {
        let b = DenseBehavior::from_pieces(
            letters(&["p"]),
            vec![
                Piece {
                    interval: TimeInterval::new(Bound::NegInf, false, Bound::Fin(rat_int(0)), false),
                    value: letters(&[]),
                },
                Piece {
                    interval: TimeInterval::closed(rat_int(0), rat_int(0)),
                    value: letters(&["p"]),
                },
                Piece {
                    interval: TimeInterval::new(Bound::Fin(rat_int(0)), false, Bound::PosInf, false),
                    value: letters(&[]),
                },
            ],
        )
        .unwrap();
        assert_eq!(b.tau(), vec![(rat_int(0), TransitionKind::Both)]);
    }

    #[test]
    fn slow_variability_thresholds() {
        let b = pulse(); // bounded piece [1,2] of length 1, both ends closed
        assert!(b.is_non_berkeley(&rat(1, 2)));
        assert!(b.is_non_berkeley(&rat_int(1))); // length == delta, closed-closed
        assert!(!b.is_non_berkeley(&rat(3, 2)));
        assert!(!b.is_non_berkeley(&rat_int(0)));
        // Antitone in delta on a sample grid.
        let mut prev = true;
        for k in 1..=8 {
            let now = b.is_non_berkeley(&rat(k, 4));
            assert!(prev || !now, "slow variability not antitone");
            prev = now;
        }
        // A half-open piece of length exactly delta is too fast.
        let c = step();
        assert!(c.is_non_berkeley(&rat_int(5))); // only unbounded pieces
        let d = DenseBehavior::from_pieces(
            letters(&["p"]),
            vec![
                Piece {
                    interval: TimeInterval::new(Bound::NegInf, false, Bound::Fin(rat_int(0)), false),
                    value: letters(&[]),
                },
                Piece {
                    interval: TimeInterval::co(rat_int(0), rat_int(1)),
                    value: letters(&["p"]),
                },
                Piece {
                    interval: TimeInterval::new(Bound::Fin(rat_int(1)), true, Bound::PosInf, false),
                    value: letters(&[]),
                },
            ],
        )
        .unwrap();
        assert!(!d.is_non_berkeley(&rat_int(1)));
        assert!(d.is_non_berkeley(&rat(1, 2)));
    }

    #[test]
    fn sampling_reads_the_grid() {
        let b = pulse();
        let s = SamplingParams::new(rat(1, 2), rat_int(0)).unwrap();
        let d = b.sample(&s);
        let p = Letter::new("p").unwrap();
        // Samples at k/2: p exactly for k in {2,3,4}.
        for (k, expect) in [(0, false), (1, false), (2, true), (3, true), (4, true), (5, false)] {
            assert_eq!(d.holds_at(k, &p), expect, "k = {k}");
        }
        assert_eq!(d.left_value(), &letters(&[]));
        assert_eq!(d.right_value(), &letters(&[]));
        assert_eq!(d.window(), (2, 5));
    }

    #[test]
    fn sampling_anchor_shifts_the_grid() {
        let b = pulse();
        let s = SamplingParams::new(rat_int(1), rat(1, 2)).unwrap();
        let d = b.sample(&s);
        let p = Letter::new("p").unwrap();
        // Samples at 1/2 + k: p exactly at k=1 (3/2).
        assert!(d.holds_at(1, &p));
        assert!(!d.holds_at(0, &p));
        assert!(!d.holds_at(2, &p));
    }

    #[test]
    fn discrete_canonicalization_trims_to_limits() {
        let alph = letters(&["p"]);
        let on = letters(&["p"]);
        let off = letters(&[]);
        let d = DiscreteBehavior::new(
            alph.clone(),
            off.clone(),
            -3,
            vec![off.clone(), off.clone(), on.clone(), off.clone()],
            off.clone(),
        )
        .unwrap();
        assert_eq!(d.window(), (-1, 0));
        assert_eq!(d.core(), &[on.clone()]);
        let constant = DiscreteBehavior::new(alph.clone(), off.clone(), 7, vec![off.clone()], off.clone())
            .unwrap();
        assert_eq!(constant.window(), (0, 0));
        assert_eq!(constant, DiscreteBehavior::constant(alph.clone(), off.clone()));
        // A step keeps its boundary index.
        let st = DiscreteBehavior::step(alph.clone(), off.clone(), on.clone(), 4).unwrap();
        assert_eq!(st.window(), (4, 4));
        assert!(!st.holds_at(3, &Letter::new("p").unwrap()));
        assert!(st.holds_at(4, &Letter::new("p").unwrap()));
        assert_eq!(st.change_points(), vec![4]);
    }

    #[test]
    fn discrete_shift_moves_the_window() {
        let alph = letters(&["p"]);
        let d = DiscreteBehavior::step(alph.clone(), letters(&[]), letters(&["p"]), 0).unwrap();
        let e = d.shift(3);
        assert_eq!(e.window(), (3, 3));
        assert!(e.holds_at(3, &Letter::new("p").unwrap()));
        assert!(!e.holds_at(2, &Letter::new("p").unwrap()));
    }

    #[test]
    fn completions_sample_back_and_respect_slow_variability() {
        let alph = letters(&["p"]);
        let s = SamplingParams::new(rat_int(1), rat_int(0)).unwrap();
        // p exactly at samples {1,2}: runs of length >= 2 on both tails.
        let d = DiscreteBehavior::new(
            alph.clone(),
            letters(&[]),
            1,
            vec![letters(&["p"]), letters(&["p"])],
            letters(&[]),
        )
        .unwrap();
        for strategy in [CompletionStrategy::Aligned, CompletionStrategy::Jittered] {
            let cs = dense_completions(&d, &s, strategy, 5, 42);
            assert!(!cs.is_empty(), "no completions for {strategy:?}");
            for b in &cs {
                assert_eq!(b.sample(&s), d);
                assert!(b.is_non_berkeley(&s.delta));
            }
        }
    }

    #[test]
    fn completions_of_constants_and_steps() {
        let alph = letters(&["p"]);
        let s = SamplingParams::new(rat_int(1), rat_int(0)).unwrap();
        let constant = DiscreteBehavior::constant(alph.clone(), letters(&["p"]));
        let cs = dense_completions(&constant, &s, CompletionStrategy::Aligned, 3, 1);
        assert_eq!(cs.len(), 1);
        let st = DiscreteBehavior::step(alph.clone(), letters(&[]), letters(&["p"]), 1).unwrap();
        let cs = dense_completions(&st, &s, CompletionStrategy::Jittered, 4, 7);
        assert!(!cs.is_empty());
        for b in &cs {
            assert_eq!(b.sample(&s), st);
            assert!(b.is_non_berkeley(&s.delta));
        }
    }

    #[test]
    fn isolated_run_completes_aligned_by_borrowing_slack() {
        let alph = letters(&["p"]);
        let s = SamplingParams::new(rat_int(1), rat_int(0)).unwrap();
        // p exactly at sample 0. The only aligned completion places the
        // changes at -1 (owned left) and 1 (owned right), giving the open
        // piece (-1,1) of length two periods.
        let d = DiscreteBehavior::new(alph.clone(), letters(&[]), 0, vec![letters(&["p"])], letters(&[]))
            .unwrap();
        let cs = dense_completions(&d, &s, CompletionStrategy::Aligned, 8, 3);
        assert!(!cs.is_empty());
        for b in &cs {
            assert_eq!(b.sample(&s), d);
            assert!(b.is_non_berkeley(&s.delta));
        }
    }

    #[test]
    fn consecutive_single_instant_runs_have_no_aligned_completion() {
        let alph = letters(&["p"]);
        let s = SamplingParams::new(rat_int(1), rat_int(0)).unwrap();
        // p at 0, not-p at 1, p at 2 (tails not-p): three consecutive
        // one-sample runs. Aligned changes sit on grid instants, so each of
        // the four gaps would need length at least two periods inside a span
        // of at most four; the middle runs cannot all get one. Every aligned
        // candidate is rejected by re-validation.
        let d = DiscreteBehavior::new(
            alph.clone(),
            letters(&[]),
            0,
            vec![letters(&["p"]), letters(&[]), letters(&["p"])],
            letters(&[]),
        )
        .unwrap();
        let cs = dense_completions(&d, &s, CompletionStrategy::Aligned, 8, 3);
        assert!(cs.is_empty());
    }
}
