//! Satisfaction of formulas on behaviors, in both time domains.
//!
//! Dense side: [`sat_set`] computes the exact set of instants satisfying a
//! formula on a finitely-variable behavior, as a finite union of rational
//! intervals. `until` is solved directly by interval algebra; the other
//! modalities reduce to it by time reflection (past operators) and by the
//! exact duality `!R[w](a,b) == U[w](!a,!b)` (universal operators).
//!
//! Discrete side: [`sat_seq`] computes satisfaction over all integers as a
//! [`BoolSeq`] (constant tails around a finite core), bottom-up with range
//! queries. [`eval_discrete`] answers the same question top-down from the
//! defining quantifiers, with no shared machinery beyond the data types —
//! the two serve as cross-checks of one another.
//!
//! Evaluation is total over ℝ and ℤ: behaviors are two-sided, and temporal
//! windows may contain negative or infinite values.

use crate::behavior::{DenseBehavior, DiscreteBehavior, Piece};
use crate::denseset::DenseSet;
use crate::formula::{Formula, Letter};
use crate::interval::{Bound, TimeInterval};
use crate::rat::Rat;

// ---------------------------------------------------------------------------
// Dense time
// ---------------------------------------------------------------------------

/// The set of instants `t` with `behavior, t |= f`.
pub fn sat_set(f: &Formula, b: &DenseBehavior) -> DenseSet {
    match f {
        Formula::Prop(l) => prop_set(b, l, true),
        Formula::NegProp(l) => prop_set(b, l, false),
        Formula::And(x, y) => sat_set(x, b).intersect(&sat_set(y, b)),
        Formula::Or(x, y) => sat_set(x, b).union(&sat_set(y, b)),
        Formula::Until {
            win,
            matching,
            lhs,
            rhs,
        } => {
            let a = sat_set(lhs, b);
            let mut t = sat_set(rhs, b);
            if *matching {
                t = t.intersect(&a);
            }
            until_sets(win, &a, &t)
        }
        Formula::Since {
            win,
            matching,
            lhs,
            rhs,
        } => {
            let a = sat_set(lhs, b);
            let mut t = sat_set(rhs, b);
            if *matching {
                t = t.intersect(&a);
            }
            until_sets(win, &a.reflect(), &t.reflect()).reflect()
        }
        Formula::Release { win, lhs, rhs } => {
            let a = sat_set(lhs, b).complement();
            let t = sat_set(rhs, b).complement();
            until_sets(win, &a, &t).complement()
        }
        Formula::Trigger { win, lhs, rhs } => {
            let a = sat_set(lhs, b).complement();
            let t = sat_set(rhs, b).complement();
            until_sets(win, &a.reflect(), &t.reflect())
                .reflect()
                .complement()
        }
        Formula::Becf(g) => sat_set(&Formula::becf_expanded((**g).clone()), b),
        Formula::Becp(g) => sat_set(&Formula::becp_expanded((**g).clone()), b),
    }
}

fn prop_set(b: &DenseBehavior, l: &Letter, polarity: bool) -> DenseSet {
    DenseSet::from_intervals(
        b.pieces()
            .iter()
            .filter(|p| p.value.contains(l) == polarity)
            .map(|p| p.interval.clone())
            .collect(),
    )
}

/// Instants `t` with: some `d` in `win` has `t+d` in `target` and `source`
/// covering `[t, t+d)` (empty when `d <= 0`, so negative offsets constrain
/// the target alone).
fn until_sets(win: &TimeInterval, source: &DenseSet, target: &DenseSet) -> DenseSet {
    let mut out = DenseSet::empty();
    // Offsets d < 0: witness lies strictly in the past of t.
    let neg = win.negative_part();
    if !neg.is_empty() {
        out = out.union(&target.minkowski(&neg.reflect()));
    }
    // Offset d = 0: the target at t itself.
    if win.contains_zero() {
        out = out.union(target);
    }
    // Offsets d > 0: t and the run up to the witness sit in one maximal
    // source interval j, and the witness instant s satisfies s <= sup j
    // (equivalent to `[t,s)` inside j, given t in j).
    let pos = win.positive_part();
    if !pos.is_empty() {
        let back = pos.reflect();
        for j in source.intervals() {
            let upto = TimeInterval::new(Bound::NegInf, false, j.hi().clone(), true);
            let j_set = DenseSet::from_intervals(vec![j.clone()]);
            for k in target.intervals() {
                let witnesses = k.intersect(&upto);
                if witnesses.is_empty() {
                    continue;
                }
                let pulled = DenseSet::from_intervals(vec![witnesses.minkowski(&back)]);
                out = out.union(&pulled.intersect(&j_set));
            }
        }
    }
    out
}

/// Whether `behavior, t |= f`.
pub fn eval_dense(f: &Formula, b: &DenseBehavior, t: &Rat) -> bool {
    sat_set(f, b).contains(t)
}

/// Whether `f` holds at every instant of the behavior.
pub fn globally_sat_dense(f: &Formula, b: &DenseBehavior) -> bool {
    sat_set(f, b).is_full()
}

/// The behavior over one internal letter that holds exactly where `f` does.
pub fn truth_behavior(f: &Formula, b: &DenseBehavior) -> DenseBehavior {
    let sat = sat_set(f, b);
    let letter = Letter::internal("sat");
    let alphabet: std::collections::BTreeSet<Letter> = [letter.clone()].into();
    let yes: std::collections::BTreeSet<Letter> = [letter].into();
    let no = std::collections::BTreeSet::new();
    let mut pieces: Vec<Piece> = sat
        .intervals()
        .iter()
        .map(|iv| Piece {
            interval: iv.clone(),
            value: yes.clone(),
        })
        .chain(sat.complement().intervals().iter().map(|iv| Piece {
            interval: iv.clone(),
            value: no.clone(),
        }))
        .collect();
    pieces.sort_by(|p, q| {
        (p.interval.lo(), !p.interval.lo_closed()).cmp(&(q.interval.lo(), !q.interval.lo_closed()))
    });
    DenseBehavior::from_pieces(alphabet, pieces)
        .expect("a set and its complement partition the line")
}

/// Whether the truth behavior of `f` on `b` has no constancy interval
/// shorter than `delta` (nor a length-`delta` one missing an endpoint).
pub fn check_shiftable_on(f: &Formula, b: &DenseBehavior, delta: &Rat) -> bool {
    truth_behavior(f, b).is_non_berkeley(delta)
}

// ---------------------------------------------------------------------------
// Discrete time: boolean sequences
// ---------------------------------------------------------------------------

/// A total map ℤ -> bool: constant `left` strictly before `core_start`,
/// the explicit `core` values from `core_start`, constant `right` after.
/// Canonical: the first core value differs from `left`, the last from
/// `right`; a constant map has an empty core at `core_start` 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolSeq {
    left: bool,
    core_start: i64,
    core: Vec<bool>,
    right: bool,
}

impl BoolSeq {
    /// Builds and canonicalizes.
    pub fn new(left: bool, core_start: i64, core: Vec<bool>, right: bool) -> BoolSeq {
        let mut k0 = core_start;
        let mut core = core;
        while core.first() == Some(&left) {
            core.remove(0);
            k0 += 1;
        }
        while core.last() == Some(&right) {
            core.pop();
        }
        if core.is_empty() && left == right {
            k0 = 0;
        }
        BoolSeq {
            left,
            core_start: k0,
            core,
            right,
        }
    }

    pub fn constant(v: bool) -> BoolSeq {
        BoolSeq::new(v, 0, Vec::new(), v)
    }

    pub fn left(&self) -> bool {
        self.left
    }

    pub fn right(&self) -> bool {
        self.right
    }

    pub fn core_start(&self) -> i64 {
        self.core_start
    }

    pub fn core(&self) -> &[bool] {
        &self.core
    }

    /// First and last core index; `(core_start, core_start - 1)` when the
    /// core is empty (a constant map, or a pure step at `core_start`).
    pub fn window(&self) -> (i64, i64) {
        (self.core_start, self.core_start + self.core.len() as i64 - 1)
    }

    pub fn value_at(&self, k: i64) -> bool {
        let (lo, hi) = self.window();
        if k < lo {
            self.left
        } else if k > hi {
            self.right
        } else {
            self.core[(k - lo) as usize]
        }
    }

    /// True at every integer.
    pub fn holds_everywhere(&self) -> bool {
        self.left && self.right && self.core.iter().all(|v| *v)
    }

    /// Pointwise negation.
    pub fn not(&self) -> BoolSeq {
        BoolSeq {
            left: !self.left,
            core_start: self.core_start,
            core: self.core.iter().map(|v| !v).collect(),
            right: !self.right,
        }
    }

    fn zip_with(&self, other: &BoolSeq, op: impl Fn(bool, bool) -> bool) -> BoolSeq {
        let lo = self.window().0.min(other.window().0);
        let hi = self.window().1.max(other.window().1);
        let core: Vec<bool> = (lo..=hi)
            .map(|k| op(self.value_at(k), other.value_at(k)))
            .collect();
        BoolSeq::new(
            op(self.left, other.left),
            lo,
            core,
            op(self.right, other.right),
        )
    }

    pub fn and(&self, other: &BoolSeq) -> BoolSeq {
        self.zip_with(other, |x, y| x && y)
    }

    pub fn or(&self, other: &BoolSeq) -> BoolSeq {
        self.zip_with(other, |x, y| x || y)
    }

    /// The sequence `k -> self(-k)`.
    pub fn reflect(&self) -> BoolSeq {
        let (_, hi) = self.window();
        let core: Vec<bool> = self.core.iter().rev().copied().collect();
        // New core covers [-hi, -lo]; for an empty core (hi = lo - 1) the
        // step point `lo` maps to a step at `-lo + 1` exclusive boundary:
        // value at k >= lo was `right`, so reflected value at k <= -lo is
        // `right`, i.e. new core_start is -lo + 1 = -hi.
        BoolSeq::new(self.right, -hi, core, self.left)
    }

    /// Any true value at a position in `[lo, hi]`; `None` bounds mean the
    /// query extends into the matching infinite tail.
    pub fn any_true_in(&self, lo: Option<i64>, hi: Option<i64>) -> bool {
        if let (Some(l), Some(h)) = (lo, hi) {
            if l > h {
                return false;
            }
        }
        let (k0, kend) = self.window();
        // Positions strictly before the core.
        if self.left && lo.map_or(true, |l| l <= k0 - 1) {
            return true;
        }
        // Positions strictly after the core.
        if self.right && hi.map_or(true, |h| h >= kend + 1) {
            return true;
        }
        let a = lo.map_or(k0, |l| l.max(k0));
        let b = hi.map_or(kend, |h| h.min(kend));
        (a..=b).any(|k| self.core[(k - k0) as usize])
    }

    /// The first position `>= k` holding false, `None` if there is none.
    pub fn first_false_at_or_after(&self, k: i64) -> Option<i64> {
        let (k0, kend) = self.window();
        if k < k0 && !self.left {
            return Some(k);
        }
        for j in k.max(k0)..=kend {
            if !self.core[(j - k0) as usize] {
                return Some(j);
            }
        }
        if !self.right {
            return Some(k.max(kend + 1));
        }
        None
    }
}

impl std::fmt::Display for BoolSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let bit = |v: bool| if v { '1' } else { '0' };
        write!(f, "left {} | k0 {} | core", bit(self.left), self.core_start)?;
        for v in &self.core {
            write!(f, " {}", bit(*v))?;
        }
        write!(f, " | right {}", bit(self.right))
    }
}

// ---------------------------------------------------------------------------
// Discrete time: bottom-up engine
// ---------------------------------------------------------------------------

/// Integer offset window: `None` = the matching infinity. Produced from a
/// formula window by closed-integer normalization.
fn win_bounds_z(win: &TimeInterval) -> Option<(Option<i64>, Option<i64>)> {
    let wz = win.normalize_z();
    if wz.is_empty() {
        return None;
    }
    let conv = |b: &Bound| -> Option<i64> {
        b.as_rat().map(|r| {
            crate::rat::to_i64(r).expect("window endpoint too large for discrete evaluation")
        })
    };
    Some((conv(wz.lo()), conv(wz.hi())))
}

/// Largest absolute finite offset in the window (0 if none).
fn reach_z(lo: Option<i64>, hi: Option<i64>) -> i64 {
    lo.map_or(0, |l| l.abs()).max(hi.map_or(0, |h| h.abs()))
}

/// The set of integers `k` with `behavior, k |= f`.
pub fn sat_seq(f: &Formula, d: &DiscreteBehavior) -> BoolSeq {
    match f {
        Formula::Prop(l) => prop_seq(d, l, true),
        Formula::NegProp(l) => prop_seq(d, l, false),
        Formula::And(x, y) => sat_seq(x, d).and(&sat_seq(y, d)),
        Formula::Or(x, y) => sat_seq(x, d).or(&sat_seq(y, d)),
        Formula::Until {
            win,
            matching,
            lhs,
            rhs,
        } => {
            let a = sat_seq(lhs, d);
            let mut t = sat_seq(rhs, d);
            if *matching {
                t = t.and(&a);
            }
            until_seq(win, &a, &t)
        }
        Formula::Since {
            win,
            matching,
            lhs,
            rhs,
        } => {
            let a = sat_seq(lhs, d);
            let mut t = sat_seq(rhs, d);
            if *matching {
                t = t.and(&a);
            }
            until_seq(win, &a.reflect(), &t.reflect()).reflect()
        }
        Formula::Release { win, lhs, rhs } => {
            let a = sat_seq(lhs, d).not();
            let t = sat_seq(rhs, d).not();
            until_seq(win, &a, &t).not()
        }
        Formula::Trigger { win, lhs, rhs } => {
            let a = sat_seq(lhs, d).not();
            let t = sat_seq(rhs, d).not();
            until_seq(win, &a.reflect(), &t.reflect()).reflect().not()
        }
        Formula::Becf(g) => sat_seq(&Formula::becf_expanded((**g).clone()), d),
        Formula::Becp(g) => sat_seq(&Formula::becp_expanded((**g).clone()), d),
    }
}

fn prop_seq(d: &DiscreteBehavior, l: &Letter, polarity: bool) -> BoolSeq {
    let core: Vec<bool> = d
        .core()
        .iter()
        .map(|v| v.contains(l) == polarity)
        .collect();
    BoolSeq::new(
        d.left_value().contains(l) == polarity,
        d.core_start(),
        core,
        d.right_value().contains(l) == polarity,
    )
}

/// `until` over precomputed argument sequences.
fn until_seq(win: &TimeInterval, a: &BoolSeq, b: &BoolSeq) -> BoolSeq {
    let (lo, hi) = match win_bounds_z(win) {
        None => return BoolSeq::constant(false),
        Some(bounds) => bounds,
    };
    let reach = reach_z(lo, hi);
    let w_lo = a.window().0.min(b.window().0) - reach - 1;
    let w_hi = a.window().1.max(b.window().1) + reach + 1;
    let core: Vec<bool> = (w_lo..=w_hi).map(|k| until_at(lo, hi, a, b, k)).collect();
    // Values stabilize at or before the computed edges, so the edge values
    // are the tail constants.
    let left = core[0];
    let right = core[core.len() - 1];
    BoolSeq::new(left, w_lo, core, right)
}

/// `until` at one instant, by range queries on the argument sequences.
fn until_at(lo: Option<i64>, hi: Option<i64>, a: &BoolSeq, b: &BoolSeq, k: i64) -> bool {
    // Offsets d <= 0 ask only for the target at k+d.
    if lo.map_or(true, |l| l <= 0) {
        let cap = hi.map_or(0, |h| h.min(0));
        if b.any_true_in(lo.map(|l| k + l), Some(k + cap)) {
            return true;
        }
    }
    // Offsets d >= 1 additionally need the source on [k, k+d): equivalently
    // the witness position s = k+d is bounded by the first source failure.
    let pos_lo = lo.map_or(1, |l| l.max(1));
    if hi.map_or(false, |h| h < pos_lo) {
        return false;
    }
    let s_hi = match (hi.map(|h| k + h), a.first_false_at_or_after(k)) {
        (None, None) => None,
        (None, Some(f)) => Some(f),
        (Some(s), None) => Some(s),
        (Some(s), Some(f)) => Some(s.min(f)),
    };
    b.any_true_in(Some(k + pos_lo), s_hi)
}

/// Whether `f` holds at every integer instant.
pub fn globally_sat_discrete(f: &Formula, d: &DiscreteBehavior) -> bool {
    sat_seq(f, d).holds_everywhere()
}

// ---------------------------------------------------------------------------
// Discrete time: top-down evaluator
// ---------------------------------------------------------------------------

/// Instants outside `[lo, hi]` all give the same `eval_discrete` answer as
/// the nearest instant inside: the behavior is constant past its core, and
/// the margin accounts for every window the formula can look through.
fn stable_bounds(f: &Formula, d: &DiscreteBehavior) -> (i64, i64) {
    let (w0, w1) = d.window();
    let m = lookout(f);
    (w0.min(w1) - m - 1, w1.max(w0) + m + 1)
}

/// How far, in instants, the truth of `f` at `k` can depend on values away
/// from `k` — counting only finite window endpoints, plus one per nesting
/// level for the run-constraint of each modality.
fn lookout(f: &Formula) -> i64 {
    match f {
        Formula::Prop(_) | Formula::NegProp(_) => 0,
        Formula::And(a, b) | Formula::Or(a, b) => lookout(a).max(lookout(b)),
        Formula::Until { win, lhs, rhs, .. }
        | Formula::Since { win, lhs, rhs, .. }
        | Formula::Release { win, lhs, rhs }
        | Formula::Trigger { win, lhs, rhs } => {
            let r = match win_bounds_z(win) {
                None => 0,
                Some((lo, hi)) => reach_z(lo, hi),
            };
            lookout(lhs).max(lookout(rhs)) + r + 1
        }
        Formula::Becf(g) => lookout(&Formula::becf_expanded((**g).clone())),
        Formula::Becp(g) => lookout(&Formula::becp_expanded((**g).clone())),
    }
}

/// Whether `behavior, k |= f`, evaluated top-down from the defining
/// quantifier of each modality (no sequence algebra); the redundant
/// counterpart of [`sat_seq`] for cross-checking.
pub fn eval_discrete(f: &Formula, d: &DiscreteBehavior, k: i64) -> bool {
    match f {
        Formula::Prop(l) => d.holds_at(k, l),
        Formula::NegProp(l) => !d.holds_at(k, l),
        Formula::And(a, b) => eval_discrete(a, d, k) && eval_discrete(b, d, k),
        Formula::Or(a, b) => eval_discrete(a, d, k) || eval_discrete(b, d, k),
        Formula::Until {
            win,
            matching,
            lhs,
            rhs,
        } => {
            if *matching {
                let strict = Formula::until(
                    win.clone(),
                    (**lhs).clone(),
                    Formula::and((**rhs).clone(), (**lhs).clone()),
                );
                return eval_discrete(&strict, d, k);
            }
            eval_until_at(win, lhs, rhs, d, k, Dir::Future)
        }
        Formula::Since {
            win,
            matching,
            lhs,
            rhs,
        } => {
            if *matching {
                let strict = Formula::since(
                    win.clone(),
                    (**lhs).clone(),
                    Formula::and((**rhs).clone(), (**lhs).clone()),
                );
                return eval_discrete(&strict, d, k);
            }
            eval_until_at(win, lhs, rhs, d, k, Dir::Past)
        }
        Formula::Release { win, lhs, rhs } => eval_release_at(win, lhs, rhs, d, k, Dir::Future),
        Formula::Trigger { win, lhs, rhs } => eval_release_at(win, lhs, rhs, d, k, Dir::Past),
        Formula::Becf(g) => eval_discrete(&Formula::becf_expanded((**g).clone()), d, k),
        Formula::Becp(g) => eval_discrete(&Formula::becp_expanded((**g).clone()), d, k),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Future,
    Past,
}

impl Dir {
    /// The instant at signed offset `d` from `k` in this direction.
    fn at(self, k: i64, d: i64) -> i64 {
        match self {
            Dir::Future => k + d,
            Dir::Past => k - d,
        }
    }

    /// The run instants constrained by a positive offset `d`: offsets
    /// `0..d-1` forward, `1..d` backward (the far end is the witness there,
    /// the near end is `k` itself forward).
    fn run_instant(self, k: i64, j: i64) -> i64 {
        match self {
            Dir::Future => k + j,     // j in 0..d
            Dir::Past => k - j,       // j in 0..d, mirrored run (k-d, k]
        }
    }
}

/// Existential modality at `k`: some offset `d` in the window has the
/// target at the witness instant and the source along the run (empty for
/// `d <= 0`).
fn eval_until_at(
    win: &TimeInterval,
    src: &Formula,
    tgt: &Formula,
    d: &DiscreteBehavior,
    k: i64,
    dir: Dir,
) -> bool {
    let (lo, hi) = match win_bounds_z(win) {
        None => return false,
        Some(b) => b,
    };
    let (stable_lo, stable_hi) = {
        let (a, b) = stable_bounds(&Formula::or(src.clone(), tgt.clone()), d);
        (a, b)
    };
    // Non-positive offsets: scan each; once the instants to come are all in
    // a constant tail (they move away from dir's own direction), one failed
    // representative settles the rest.
    if lo.map_or(true, |l| l <= 0) {
        let d_hi = hi.map_or(0, |h| h.min(0));
        let mut dd = d_hi;
        loop {
            let inst = dir.at(k, dd);
            if eval_discrete(tgt, d, inst) {
                return true;
            }
            let remaining_constant = match dir {
                Dir::Future => inst <= stable_lo,
                Dir::Past => inst >= stable_hi,
            };
            if remaining_constant {
                break;
            }
            match lo {
                Some(l) if dd <= l => break,
                _ => dd -= 1,
            }
        }
    }
    // Positive offsets, in increasing order, tracking whether the source
    // run is still unbroken.
    let pos_lo = lo.map_or(1, |l| l.max(1));
    if hi.map_or(false, |h| h < pos_lo) {
        return false;
    }
    let mut dd = 1i64;
    loop {
        // The run for witness offset dd covers offsets 0..dd (exclusive on
        // the witness side); extend incrementally and stop on a break.
        if !eval_discrete(src, d, dir.run_instant(k, dd - 1)) {
            return false;
        }
        if dd >= pos_lo && hi.map_or(true, |h| dd <= h) && eval_discrete(tgt, d, dir.at(k, dd)) {
            return true;
        }
        if hi.map_or(false, |h| dd >= h) {
            return false;
        }
        let inst = dir.at(k, dd);
        let remaining_constant = match dir {
            Dir::Future => inst >= stable_hi,
            Dir::Past => inst <= stable_lo,
        };
        if remaining_constant && dd > pos_lo {
            // The witness at dd was just tested and failed, and every later
            // witness instant carries the same target value: no witness.
            return false;
        }
        dd += 1;
    }
}

/// Universal modality at `k`: every offset `d` in the window has the target
/// at the witness instant, unless the source granted an escape strictly
/// earlier in the run (impossible for `d <= 0`).
fn eval_release_at(
    win: &TimeInterval,
    src: &Formula,
    tgt: &Formula,
    d: &DiscreteBehavior,
    k: i64,
    dir: Dir,
) -> bool {
    let (lo, hi) = match win_bounds_z(win) {
        None => return true,
        Some(b) => b,
    };
    let (stable_lo, stable_hi) = {
        let (a, b) = stable_bounds(&Formula::or(src.clone(), tgt.clone()), d);
        (a, b)
    };
    // Non-positive offsets admit no escape: the target must hold at each.
    if lo.map_or(true, |l| l <= 0) {
        let d_hi = hi.map_or(0, |h| h.min(0));
        let mut dd = d_hi;
        loop {
            let inst = dir.at(k, dd);
            if !eval_discrete(tgt, d, inst) {
                return false;
            }
            let remaining_constant = match dir {
                Dir::Future => inst <= stable_lo,
                Dir::Past => inst >= stable_hi,
            };
            if remaining_constant {
                break;
            }
            match lo {
                Some(l) if dd <= l => break,
                _ => dd -= 1,
            }
        }
    }
    // Positive offsets in increasing order; once the source has held at any
    // run instant, every later offset is escaped.
    let pos_lo = lo.map_or(1, |l| l.max(1));
    if hi.map_or(false, |h| h < pos_lo) {
        return true;
    }
    let mut escaped = false;
    let mut dd = 1i64;
    loop {
        escaped = escaped || eval_discrete(src, d, dir.run_instant(k, dd - 1));
        if escaped {
            return true;
        }
        if dd >= pos_lo && hi.map_or(true, |h| dd <= h) && !eval_discrete(tgt, d, dir.at(k, dd)) {
            return false;
        }
        if hi.map_or(false, |h| dd >= h) {
            return true;
        }
        let inst = dir.at(k, dd);
        let remaining_constant = match dir {
            Dir::Future => inst >= stable_hi,
            Dir::Past => inst <= stable_lo,
        };
        if remaining_constant && dd > pos_lo {
            // The target held at dd and stays constant, and the source will
            // never grant an escape it has not already granted: satisfied.
            return true;
        }
        dd += 1;
    }
}
