//! Independent reference evaluator for formulas over dense behaviors.
//!
//! [`DenseOracle`] decides satisfaction by brute force rather than by
//! interval-set algebra, so it shares no nontrivial code path with
//! `mtl::semantics`. The idea: over a piecewise-constant behavior, the truth
//! of every subformula of nesting depth ≤ 1 is itself piecewise-constant,
//! with change points confined to the grid
//!
//! ```text
//!   pts = { breakpoint of b  +  s : s ∈ {0} ∪ {±e : e finite window endpoint} }
//! ```
//!
//! The grid splits the line into alternating open gaps and single points
//! ("regions"); the oracle tabulates each depth-≤1 subformula as one boolean
//! per region (evaluated at a representative), and answers temporal
//! operators at an exact instant `t` by quantifying over finitely many
//! candidate witness instants — the region representatives plus a few points
//! derived from `t` and the window — checking the stretch requirement via
//! the first position at or after `t` (or the last one at or before, for the
//! past operators) where the stretch argument changes truth.
//!
//! The top-level formula is always evaluated exactly at the query instant,
//! never through a representative, so nesting depth 2 is supported: only
//! arguments of temporal operators are tabulated.

use mtl::{DenseBehavior, Formula, Rat, TimeInterval};

use mtl::rat::rat_int;

/// Convenience wrapper: evaluate `f` on `b` at `t` with a fresh oracle.
pub fn grid_oracle_dense(f: &Formula, b: &DenseBehavior, t: &Rat) -> bool {
    DenseOracle::new(f, b).eval_at(t)
}

/// A reference evaluator for one formula over one behavior. Construction
/// precomputes the region grid; [`DenseOracle::eval_at`] may be called for
/// any number of query instants, reusing tabulated subformulas.
pub struct DenseOracle<'b> {
    f: Formula,
    b: &'b DenseBehavior,
    /// Sorted, deduplicated grid instants.
    pts: Vec<Rat>,
    /// One representative per region; region `2i` is the open gap below
    /// `pts[i]` (the last region is the gap above all grid instants), region
    /// `2i+1` is the single instant `pts[i]`.
    reps: Vec<Rat>,
    /// Tabulated truth-per-region for subformulas used as operator
    /// arguments.
    memo: Vec<(Formula, Vec<bool>)>,
}

impl<'b> DenseOracle<'b> {
    /// Panics if `f` nests temporal operators more than two deep; the
    /// tabulation argument above only covers depth ≤ 2.
    pub fn new(f: &Formula, b: &'b DenseBehavior) -> DenseOracle<'b> {
        assert!(
            f.temporal_depth() <= 2,
            "reference evaluator supports nesting depth at most 2"
        );
        let mut shifts: Vec<Rat> = vec![rat_int(0)];
        for w in f.windows() {
            for bound in [w.lo(), w.hi()] {
                if let Some(e) = bound.as_rat() {
                    shifts.push(e.clone());
                    shifts.push(-e.clone());
                }
            }
        }
        let mut pts: Vec<Rat> = Vec::new();
        for bp in b.breakpoints() {
            for s in &shifts {
                pts.push(&bp + s);
            }
        }
        pts.sort();
        pts.dedup();
        let reps = region_representatives(&pts);
        DenseOracle {
            f: f.clone(),
            b,
            pts,
            reps,
            memo: Vec::new(),
        }
    }

    /// Exact truth of the oracle's formula at `t`.
    pub fn eval_at(&mut self, t: &Rat) -> bool {
        let f = self.f.clone();
        self.value(&f, t)
    }

    // ----- regions --------------------------------------------------------

    fn region_of(&self, t: &Rat) -> usize {
        match self.pts.binary_search(t) {
            Ok(i) => 2 * i + 1,
            Err(i) => 2 * i,
        }
    }

    /// Left boundary of region `j ≥ 1` as an instant.
    fn region_left_boundary(&self, j: usize) -> Rat {
        if j % 2 == 1 {
            self.pts[(j - 1) / 2].clone()
        } else {
            self.pts[j / 2 - 1].clone()
        }
    }

    /// Right boundary of a region that has one.
    fn region_right_boundary(&self, j: usize) -> Rat {
        if j % 2 == 1 {
            self.pts[(j - 1) / 2].clone()
        } else {
            self.pts[j / 2].clone()
        }
    }

    // ----- subformula tabulation -----------------------------------------

    fn region_arr(&mut self, f: &Formula) -> Vec<bool> {
        if let Some((_, arr)) = self.memo.iter().find(|(g, _)| g == f) {
            return arr.clone();
        }
        let reps = self.reps.clone();
        let arr: Vec<bool> = reps.iter().map(|r| self.value(f, r)).collect();
        self.memo.push((f.clone(), arr.clone()));
        arr
    }

    // ----- exact evaluation ----------------------------------------------

    fn value(&mut self, f: &Formula, t: &Rat) -> bool {
        match f {
            Formula::Prop(l) => self.b.holds_at(t, l),
            Formula::NegProp(l) => !self.b.holds_at(t, l),
            Formula::And(a, b) => self.value(a, t) && self.value(b, t),
            Formula::Or(a, b) => self.value(a, t) || self.value(b, t),
            Formula::Until {
                win,
                matching,
                lhs,
                rhs,
            } => self.until_at(win, *matching, lhs, rhs, t),
            Formula::Since {
                win,
                matching,
                lhs,
                rhs,
            } => self.since_at(win, *matching, lhs, rhs, t),
            Formula::Release { win, lhs, rhs } => self.release_at(win, lhs, rhs, t),
            Formula::Trigger { win, lhs, rhs } => self.trigger_at(win, lhs, rhs, t),
            Formula::Becf(g) => {
                let arr = self.region_arr(g);
                let r = self.region_of(t);
                // Truth now, or throughout the open gap immediately to the
                // right: for an instant interior to a gap that is the gap
                // itself, for a grid instant the gap after it.
                let right = if r % 2 == 1 { r + 1 } else { r };
                arr[r] || arr[right]
            }
            Formula::Becp(g) => {
                let arr = self.region_arr(g);
                let r = self.region_of(t);
                let left = if r % 2 == 1 { r - 1 } else { r };
                arr[r] || arr[left]
            }
        }
    }

    // ----- quantification over witness candidates ------------------------

    /// Candidate witness instants for a quantifier anchored at `t` over the
    /// absolute window `abs_win`, paired with their region, restricted to
    /// the window. Includes every region representative, the anchor, the
    /// window's finite endpoints, the window midpoint, and midpoints between
    /// each of those special instants and their grid neighbors — enough that
    /// every maximal interval on which the quantified predicate is constant
    /// contains a candidate (or is value-matched by one, for intervals
    /// abutting the anchor).
    fn candidates(&self, t: &Rat, abs_win: &TimeInterval) -> Vec<(Rat, usize)> {
        let mut out: Vec<(Rat, usize)> = self
            .reps
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let mut specials: Vec<Rat> = vec![t.clone()];
        let lo = abs_win.lo().as_rat().cloned();
        let hi = abs_win.hi().as_rat().cloned();
        if let Some(l) = &lo {
            specials.push(l.clone());
        }
        if let Some(u) = &hi {
            specials.push(u.clone());
        }
        if let (Some(l), Some(u)) = (&lo, &hi) {
            if l < u {
                specials.push((l + u) / rat_int(2));
            }
        }
        for s in &specials {
            out.push((s.clone(), self.region_of(s)));
            if let Err(i) = self.pts.binary_search(s) {
                let left = if i == 0 {
                    s - rat_int(1)
                } else {
                    (&self.pts[i - 1] + s) / rat_int(2)
                };
                let right = if i == self.pts.len() {
                    s + rat_int(1)
                } else {
                    (s + &self.pts[i]) / rat_int(2)
                };
                out.push((left.clone(), self.region_of(&left)));
                out.push((right.clone(), self.region_of(&right)));
            }
        }
        out.retain(|(w, _)| abs_win.contains(w));
        out
    }

    /// The earliest instant at or after `t` where the tabulated truth is
    /// `target`, reported as the boundary at which it starts (which may be
    /// `t` itself); `None` if it never is.
    fn first_from(&self, arr: &[bool], t: &Rat, target: bool) -> Option<Rat> {
        let start = self.region_of(t);
        if arr[start] == target {
            return Some(t.clone());
        }
        for j in start + 1..arr.len() {
            if arr[j] == target {
                return Some(self.region_left_boundary(j));
            }
        }
        None
    }

    /// Past mirror of [`Self::first_from`].
    fn last_upto(&self, arr: &[bool], t: &Rat, target: bool) -> Option<Rat> {
        let start = self.region_of(t);
        if arr[start] == target {
            return Some(t.clone());
        }
        for j in (0..start).rev() {
            if arr[j] == target {
                return Some(self.region_right_boundary(j));
            }
        }
        None
    }

    fn witness_arr(&mut self, matching: bool, lhs: &Formula, rhs: &Formula) -> Vec<bool> {
        let rhs_arr = self.region_arr(rhs);
        if matching {
            let lhs_arr = self.region_arr(lhs);
            rhs_arr
                .iter()
                .zip(lhs_arr.iter())
                .map(|(a, b)| *a && *b)
                .collect()
        } else {
            rhs_arr
        }
    }

    fn until_at(
        &mut self,
        win: &TimeInterval,
        matching: bool,
        lhs: &Formula,
        rhs: &Formula,
        t: &Rat,
    ) -> bool {
        let lhs_arr = self.region_arr(lhs);
        let wit = self.witness_arr(matching, lhs, rhs);
        let abs_win = win.shift(t);
        // Supremum up to which lhs holds continuously from t: the witness w
        // is reachable iff the stretch [t, w) is empty (w ≤ t) or ends no
        // later than the first lhs failure.
        let first_fail = self.first_from(&lhs_arr, t, false);
        for (w, ri) in self.candidates(t, &abs_win) {
            if !wit[ri] {
                continue;
            }
            let stretch_ok = w <= *t
                || match &first_fail {
                    None => true,
                    Some(fb) => w <= *fb,
                };
            if stretch_ok {
                return true;
            }
        }
        false
    }

    fn since_at(
        &mut self,
        win: &TimeInterval,
        matching: bool,
        lhs: &Formula,
        rhs: &Formula,
        t: &Rat,
    ) -> bool {
        let lhs_arr = self.region_arr(lhs);
        let wit = self.witness_arr(matching, lhs, rhs);
        let abs_win = win.reflect().shift(t);
        let last_fail = self.last_upto(&lhs_arr, t, false);
        for (w, ri) in self.candidates(t, &abs_win) {
            if !wit[ri] {
                continue;
            }
            // The stretch is (w, t]: empty when w ≥ t, otherwise it must
            // start no earlier than the last lhs failure.
            let stretch_ok = w >= *t
                || match &last_fail {
                    None => true,
                    Some(bb) => w >= *bb,
                };
            if stretch_ok {
                return true;
            }
        }
        false
    }

    fn release_at(&mut self, win: &TimeInterval, lhs: &Formula, rhs: &Formula, t: &Rat) -> bool {
        let lhs_arr = self.region_arr(lhs);
        let rhs_arr = self.region_arr(rhs);
        let abs_win = win.shift(t);
        let first_release = self.first_from(&lhs_arr, t, true);
        for (w, ri) in self.candidates(t, &abs_win) {
            let escape = w > *t
                && match &first_release {
                    None => false,
                    Some(tb) => *tb < w,
                };
            if !rhs_arr[ri] && !escape {
                return false;
            }
        }
        true
    }

    fn trigger_at(&mut self, win: &TimeInterval, lhs: &Formula, rhs: &Formula, t: &Rat) -> bool {
        let lhs_arr = self.region_arr(lhs);
        let rhs_arr = self.region_arr(rhs);
        let abs_win = win.reflect().shift(t);
        let last_release = self.last_upto(&lhs_arr, t, true);
        for (w, ri) in self.candidates(t, &abs_win) {
            let escape = w < *t
                && match &last_release {
                    None => false,
                    Some(ub) => w < *ub,
                };
            if !rhs_arr[ri] && !escape {
                return false;
            }
        }
        true
    }
}

fn region_representatives(pts: &[Rat]) -> Vec<Rat> {
    if pts.is_empty() {
        return vec![rat_int(0)];
    }
    let n = pts.len();
    let mut reps = Vec::with_capacity(2 * n + 1);
    reps.push(&pts[0] - rat_int(1));
    for i in 0..n {
        reps.push(pts[i].clone());
        if i + 1 < n {
            reps.push((&pts[i] + &pts[i + 1]) / rat_int(2));
        }
    }
    reps.push(pts.last().unwrap() + rat_int(1));
    reps
}
