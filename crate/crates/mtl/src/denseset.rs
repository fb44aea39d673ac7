//! Canonical finite unions of time intervals.
//!
//! A [`DenseSet`] represents a subset of the rational line that is a finite
//! union of intervals, stored canonically: member intervals are nonempty,
//! sorted, pairwise disjoint, and never adjacent (touching intervals are
//! merged), so structural equality is extensional equality. This is the
//! value domain of the dense-time evaluator: satisfaction sets of formulas
//! over finitely-variable behaviors are exactly such sets.

use std::fmt;

use crate::interval::{Bound, TimeInterval};
use crate::rat::Rat;

/// A finite union of intervals in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseSet {
    ivs: Vec<TimeInterval>,
}

impl DenseSet {
    pub fn empty() -> Self {
        DenseSet { ivs: Vec::new() }
    }

    pub fn full() -> Self {
        DenseSet {
            ivs: vec![TimeInterval::full()],
        }
    }

    pub fn from_interval(iv: TimeInterval) -> Self {
        Self::from_intervals(vec![iv])
    }

    /// Builds the union of arbitrary intervals, canonicalizing.
    pub fn from_intervals(ivs: Vec<TimeInterval>) -> Self {
        DenseSet { ivs: canon(ivs) }
    }

    /// The member intervals, canonical.
    pub fn intervals(&self) -> &[TimeInterval] {
        &self.ivs
    }

    pub fn is_empty(&self) -> bool {
        self.ivs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.ivs.len() == 1 && self.ivs[0] == TimeInterval::full()
    }

    pub fn contains(&self, t: &Rat) -> bool {
        self.ivs.iter().any(|iv| iv.contains(t))
    }

    pub fn union(&self, other: &DenseSet) -> DenseSet {
        let mut ivs = self.ivs.clone();
        ivs.extend(other.ivs.iter().cloned());
        DenseSet { ivs: canon(ivs) }
    }

    pub fn intersect(&self, other: &DenseSet) -> DenseSet {
        let mut out = Vec::new();
        for a in &self.ivs {
            for b in &other.ivs {
                let c = a.intersect(b);
                if !c.is_empty() {
                    out.push(c);
                }
            }
        }
        DenseSet { ivs: canon(out) }
    }

    pub fn complement(&self) -> DenseSet {
        if self.ivs.is_empty() {
            return DenseSet::full();
        }
        let mut out = Vec::new();
        let first = &self.ivs[0];
        if *first.lo() != Bound::NegInf {
            out.push(TimeInterval::new(
                Bound::NegInf,
                false,
                first.lo().clone(),
                !first.lo_closed(),
            ));
        }
        for w in self.ivs.windows(2) {
            out.push(TimeInterval::new(
                w[0].hi().clone(),
                !w[0].hi_closed(),
                w[1].lo().clone(),
                !w[1].lo_closed(),
            ));
        }
        let last = self.ivs.last().unwrap();
        if *last.hi() != Bound::PosInf {
            out.push(TimeInterval::new(
                last.hi().clone(),
                !last.hi_closed(),
                Bound::PosInf,
                false,
            ));
        }
        // Gaps of a canonical set are nonempty, disjoint, and non-adjacent by
        // construction, but canonicalize defensively.
        DenseSet { ivs: canon(out) }
    }

    pub fn difference(&self, other: &DenseSet) -> DenseSet {
        self.intersect(&other.complement())
    }

    /// Pointwise sum with a single interval (translation-dilation); the sum
    /// with an empty interval is empty.
    pub fn minkowski(&self, iv: &TimeInterval) -> DenseSet {
        if iv.is_empty() {
            return DenseSet::empty();
        }
        DenseSet {
            ivs: canon(self.ivs.iter().map(|a| a.minkowski(iv)).collect()),
        }
    }

    /// Pointwise negation.
    pub fn reflect(&self) -> DenseSet {
        DenseSet {
            ivs: canon(self.ivs.iter().map(TimeInterval::reflect).collect()),
        }
    }

    /// Translation by `t`.
    pub fn shift(&self, t: &Rat) -> DenseSet {
        DenseSet {
            ivs: self.ivs.iter().map(|a| a.shift(t)).collect(),
        }
    }

    /// All finite endpoint values of member intervals, ascending, deduplicated.
    pub fn finite_endpoints(&self) -> Vec<Rat> {
        let mut out: Vec<Rat> = self
            .ivs
            .iter()
            .flat_map(|iv| iv.finite_endpoints())
            .cloned()
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for DenseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ivs.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, iv) in self.ivs.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{}", iv)?;
        }
        Ok(())
    }
}

/// Sort key for the low end: position, with a closed end strictly before an
/// open end at the same value.
fn lo_key(iv: &TimeInterval) -> (Bound, bool) {
    (iv.lo().clone(), !iv.lo_closed())
}

/// True when `b` starts inside or immediately adjacent to `a` (assuming
/// `lo_key(a) <= lo_key(b)`), so their union is one interval.
fn merges(a: &TimeInterval, b: &TimeInterval) -> bool {
    match b.lo().cmp(a.hi()) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Equal => a.hi_closed() || b.lo_closed(),
        std::cmp::Ordering::Greater => false,
    }
}

fn canon(ivs: Vec<TimeInterval>) -> Vec<TimeInterval> {
    let mut ivs: Vec<TimeInterval> = ivs.into_iter().filter(|iv| !iv.is_empty()).collect();
    ivs.sort_by(|a, b| lo_key(a).cmp(&lo_key(b)));
    let mut out: Vec<TimeInterval> = Vec::with_capacity(ivs.len());
    for iv in ivs {
        match out.last_mut() {
            Some(prev) if merges(prev, &iv) => {
                // Extend prev's high end if iv reaches further.
                let extend = match iv.hi().cmp(prev.hi()) {
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Equal => iv.hi_closed() && !prev.hi_closed(),
                    std::cmp::Ordering::Less => false,
                };
                if extend {
                    *prev = TimeInterval::new(
                        prev.lo().clone(),
                        prev.lo_closed(),
                        iv.hi().clone(),
                        iv.hi_closed(),
                    );
                }
            }
            _ => out.push(iv),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn ds(ivs: Vec<TimeInterval>) -> DenseSet {
        DenseSet::from_intervals(ivs)
    }

    #[test]
    fn canonicalization_merges_overlap_and_adjacency() {
        let s = ds(vec![
            TimeInterval::co(rat_int(0), rat_int(1)),
            TimeInterval::closed(rat_int(1), rat_int(2)),
        ]);
        assert_eq!(s.intervals(), &[TimeInterval::closed(rat_int(0), rat_int(2))]);

        // Touching open-open stays split: 1 is missing.
        let s = ds(vec![
            TimeInterval::co(rat_int(0), rat_int(1)),
            TimeInterval::oc(rat_int(1), rat_int(2)),
        ]);
        assert_eq!(s.intervals().len(), 2);
        assert!(!s.contains(&rat_int(1)));

        // Containment collapses.
        let s = ds(vec![
            TimeInterval::closed(rat_int(0), rat_int(10)),
            TimeInterval::open(rat_int(2), rat_int(3)),
        ]);
        assert_eq!(s.intervals(), &[TimeInterval::closed(rat_int(0), rat_int(10))]);

        // Empty members disappear.
        let s = ds(vec![TimeInterval::open(rat_int(1), rat_int(1))]);
        assert!(s.is_empty());
    }

    #[test]
    fn canonical_equality_is_extensional() {
        let a = ds(vec![
            TimeInterval::closed(rat_int(0), rat_int(1)),
            TimeInterval::oc(rat_int(1), rat_int(2)),
        ]);
        let b = ds(vec![TimeInterval::closed(rat_int(0), rat_int(2))]);
        assert_eq!(a, b);
    }

    #[test]
    fn complement_walks_the_gaps() {
        let s = ds(vec![
            TimeInterval::co(rat_int(0), rat_int(1)),
            TimeInterval::closed(rat_int(2), rat_int(3)),
        ]);
        let c = s.complement();
        assert_eq!(
            c.intervals(),
            &[
                TimeInterval::new(Bound::NegInf, false, Bound::Fin(rat_int(0)), false),
                TimeInterval::co(rat_int(1), rat_int(2)),
                TimeInterval::new(Bound::Fin(rat_int(3)), false, Bound::PosInf, false),
            ]
        );
        assert_eq!(c.complement(), s);
        assert!(DenseSet::empty().complement().is_full());
        assert!(DenseSet::full().complement().is_empty());
    }

    #[test]
    fn point_membership_after_boolean_ops() {
        let a = ds(vec![TimeInterval::closed(rat_int(0), rat_int(2))]);
        let b = ds(vec![TimeInterval::open(rat_int(1), rat_int(3))]);
        let probes: Vec<Rat> = (-2..=8).map(|k| rat(k, 2)).collect();
        for t in &probes {
            assert_eq!(a.union(&b).contains(t), a.contains(t) || b.contains(t));
            assert_eq!(
                a.intersect(&b).contains(t),
                a.contains(t) && b.contains(t)
            );
            assert_eq!(a.complement().contains(t), !a.contains(t));
            assert_eq!(
                a.difference(&b).contains(t),
                a.contains(t) && !b.contains(t)
            );
        }
    }

    #[test]
    fn minkowski_translates_and_dilates() {
        let a = ds(vec![TimeInterval::closed(rat_int(0), rat_int(1))]);
        let sum = a.minkowski(&TimeInterval::open(rat_int(1), rat_int(2)));
        assert_eq!(sum.intervals(), &[TimeInterval::open(rat_int(1), rat_int(3))]);
        assert!(a.minkowski(&TimeInterval::empty()).is_empty());
        // Unbounded dilation.
        let sum = a.minkowski(&TimeInterval::at_least(rat_int(0)));
        assert_eq!(sum.intervals(), &[TimeInterval::at_least(rat_int(0))]);
    }

    #[test]
    fn reflect_mirrors_membership() {
        let a = ds(vec![
            TimeInterval::oc(rat_int(0), rat_int(1)),
            TimeInterval::at_least(rat_int(5)),
        ]);
        let r = a.reflect();
        for t in (-12..=12).map(|k| rat(k, 2)) {
            assert_eq!(r.contains(&t), a.contains(&(-t.clone())), "t = {t}");
        }
        assert_eq!(r.reflect(), a);
    }

    #[test]
    fn display_is_readable() {
        let s = ds(vec![
            TimeInterval::co(rat_int(0), rat(1, 2)),
            TimeInterval::at_least(rat_int(3)),
        ]);
        assert_eq!(s.to_string(), "[0,1/2) u [3,inf)");
        assert_eq!(DenseSet::empty().to_string(), "{}");
    }
}
