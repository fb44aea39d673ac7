//! Time intervals with exact rational endpoints.
//!
//! A [`TimeInterval`] is a (possibly empty, possibly unbounded) convex subset
//! of the rational line, represented symbolically: two [`Bound`]s plus a
//! closure flag per side. Endpoints may be negative; infinite endpoints are
//! always open (the constructor enforces this). Emptiness is representable —
//! e.g. `[2,0]` or `(1,1)` — and queried with [`TimeInterval::is_empty`]
//! rather than collapsed away, because formulas carry intervals syntactically.

use std::fmt;

use crate::rat::{self, Rat};
use num::Zero;

/// An endpoint: a finite rational or one of the two infinities.
///
/// The derived order is the expected one: `-inf < every finite < inf`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    Fin(Rat),
    PosInf,
}

impl Bound {
    pub fn fin(r: Rat) -> Self {
        Bound::Fin(r)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Fin(_))
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Bound::Fin(r) => Some(r),
            _ => None,
        }
    }

    /// Additive negation; swaps the infinities.
    pub fn neg(&self) -> Bound {
        match self {
            Bound::NegInf => Bound::PosInf,
            Bound::Fin(r) => Bound::Fin(-r),
            Bound::PosInf => Bound::NegInf,
        }
    }

    /// Sum with infinite absorption. Adding opposite infinities is a logic
    /// error upstream (callers rule it out via emptiness checks) and panics.
    pub fn add(&self, other: &Bound) -> Bound {
        match (self, other) {
            (Bound::Fin(a), Bound::Fin(b)) => Bound::Fin(a + b),
            (Bound::NegInf, Bound::PosInf) | (Bound::PosInf, Bound::NegInf) => {
                panic!("adding opposite infinities")
            }
            (Bound::NegInf, _) | (_, Bound::NegInf) => Bound::NegInf,
            (Bound::PosInf, _) | (_, Bound::PosInf) => Bound::PosInf,
        }
    }

    pub fn sub(&self, other: &Bound) -> Bound {
        self.add(&other.neg())
    }

    pub fn add_rat(&self, r: &Rat) -> Bound {
        match self {
            Bound::Fin(a) => Bound::Fin(a + r),
            inf => inf.clone(),
        }
    }

    /// Adds a machine integer; infinities absorb.
    pub fn add_int(&self, n: i64) -> Bound {
        self.add_rat(&rat::rat_int(n))
    }

    /// Multiplies by a **positive** rational; infinities absorb.
    pub fn mul_pos(&self, r: &Rat) -> Bound {
        debug_assert!(r > &Rat::zero());
        match self {
            Bound::Fin(a) => Bound::Fin(a * r),
            inf => inf.clone(),
        }
    }

    /// Divides by a **positive** rational; infinities absorb.
    pub fn div_pos(&self, r: &Rat) -> Bound {
        debug_assert!(r > &Rat::zero());
        match self {
            Bound::Fin(a) => Bound::Fin(a / r),
            inf => inf.clone(),
        }
    }

    /// Rounds a finite bound down to an integer; infinities pass through.
    pub fn floor(&self) -> Bound {
        match self {
            Bound::Fin(a) => Bound::Fin(rat::floor(a)),
            inf => inf.clone(),
        }
    }

    /// Rounds a finite bound up to an integer; infinities pass through.
    pub fn ceil(&self) -> Bound {
        match self {
            Bound::Fin(a) => Bound::Fin(rat::ceil(a)),
            inf => inf.clone(),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::Fin(r) => write!(f, "{}", r),
            Bound::PosInf => write!(f, "inf"),
        }
    }
}

/// A convex subset of the rational line with symbolic closure flags.
///
/// Invariant: an infinite bound is never closed (enforced on construction).
/// Empty intervals are representable; see the module docs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TimeInterval {
    lo: Bound,
    lo_closed: bool,
    hi: Bound,
    hi_closed: bool,
}

impl TimeInterval {
    /// General constructor; demotes closure flags on infinite bounds.
    pub fn new(lo: Bound, lo_closed: bool, hi: Bound, hi_closed: bool) -> Self {
        let lo_closed = lo_closed && lo.is_finite();
        let hi_closed = hi_closed && hi.is_finite();
        TimeInterval {
            lo,
            lo_closed,
            hi,
            hi_closed,
        }
    }

    /// `[l, u]`
    pub fn closed(l: Rat, u: Rat) -> Self {
        Self::new(Bound::Fin(l), true, Bound::Fin(u), true)
    }

    /// `(l, u)`
    pub fn open(l: Rat, u: Rat) -> Self {
        Self::new(Bound::Fin(l), false, Bound::Fin(u), false)
    }

    /// `[l, u)`
    pub fn co(l: Rat, u: Rat) -> Self {
        Self::new(Bound::Fin(l), true, Bound::Fin(u), false)
    }

    /// `(l, u]`
    pub fn oc(l: Rat, u: Rat) -> Self {
        Self::new(Bound::Fin(l), false, Bound::Fin(u), true)
    }

    /// `[r, r]`
    pub fn singleton(r: Rat) -> Self {
        Self::closed(r.clone(), r)
    }

    /// `[r, inf)`
    pub fn at_least(r: Rat) -> Self {
        Self::new(Bound::Fin(r), true, Bound::PosInf, false)
    }

    /// `(r, inf)`
    pub fn greater_than(r: Rat) -> Self {
        Self::new(Bound::Fin(r), false, Bound::PosInf, false)
    }

    /// `(-inf, r]`
    pub fn at_most(r: Rat) -> Self {
        Self::new(Bound::NegInf, false, Bound::Fin(r), true)
    }

    /// `(-inf, r)`
    pub fn less_than(r: Rat) -> Self {
        Self::new(Bound::NegInf, false, Bound::Fin(r), false)
    }

    /// `(-inf, inf)`
    pub fn full() -> Self {
        Self::new(Bound::NegInf, false, Bound::PosInf, false)
    }

    /// `[0, inf)` — the default window of the unadorned temporal operators.
    pub fn zero_to_inf() -> Self {
        Self::at_least(Rat::zero())
    }

    /// A canonical empty interval, `(0, 0)`.
    pub fn empty() -> Self {
        Self::open(Rat::zero(), Rat::zero())
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => !(self.lo_closed && self.hi_closed),
            std::cmp::Ordering::Less => false,
        }
    }

    pub fn contains(&self, t: &Rat) -> bool {
        let above_lo = match &self.lo {
            Bound::NegInf => true,
            Bound::PosInf => false,
            Bound::Fin(l) => t > l || (self.lo_closed && t == l),
        };
        let below_hi = match &self.hi {
            Bound::PosInf => true,
            Bound::NegInf => false,
            Bound::Fin(u) => t < u || (self.hi_closed && t == u),
        };
        above_lo && below_hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rat::zero())
    }

    /// True iff the interval is a single point `[r, r]`.
    pub fn is_singleton(&self) -> bool {
        self.lo_closed && self.hi_closed && self.lo == self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Intersection; at a tied endpoint the stricter (open) flag wins.
    pub fn intersect(&self, other: &TimeInterval) -> TimeInterval {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Greater => (self.lo.clone(), self.lo_closed),
            std::cmp::Ordering::Less => (other.lo.clone(), other.lo_closed),
            std::cmp::Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.hi_closed),
            std::cmp::Ordering::Greater => (other.hi.clone(), other.hi_closed),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        TimeInterval::new(lo, lo_closed, hi, hi_closed)
    }

    /// Pointwise sum `{ a + b : a in self, b in other }`. An endpoint of the
    /// sum is closed only if both contributing endpoints are closed.
    pub fn minkowski(&self, other: &TimeInterval) -> TimeInterval {
        if self.is_empty() || other.is_empty() {
            return TimeInterval::empty();
        }
        TimeInterval::new(
            self.lo.add(&other.lo),
            self.lo_closed && other.lo_closed,
            self.hi.add(&other.hi),
            self.hi_closed && other.hi_closed,
        )
    }

    /// Pointwise negation `{ -a : a in self }`.
    pub fn reflect(&self) -> TimeInterval {
        TimeInterval::new(
            self.hi.neg(),
            self.hi_closed,
            self.lo.neg(),
            self.lo_closed,
        )
    }

    /// Translation by `t`.
    pub fn shift(&self, t: &Rat) -> TimeInterval {
        TimeInterval::new(
            self.lo.add_rat(t),
            self.lo_closed,
            self.hi.add_rat(t),
            self.hi_closed,
        )
    }

    /// Scales both endpoints by a **positive** rational.
    pub fn scale_pos(&self, r: &Rat) -> TimeInterval {
        TimeInterval::new(
            self.lo.mul_pos(r),
            self.lo_closed,
            self.hi.mul_pos(r),
            self.hi_closed,
        )
    }

    /// The part of the interval strictly above zero.
    pub fn positive_part(&self) -> TimeInterval {
        self.intersect(&TimeInterval::greater_than(Rat::zero()))
    }

    /// The part of the interval strictly below zero.
    pub fn negative_part(&self) -> TimeInterval {
        self.intersect(&TimeInterval::less_than(Rat::zero()))
    }

    /// `hi - lo`, or zero for an empty interval. Unbounded intervals have
    /// infinite length.
    pub fn length(&self) -> Bound {
        if self.is_empty() {
            Bound::Fin(Rat::zero())
        } else {
            self.hi.sub(&self.lo)
        }
    }

    /// Rewrites the interval to the closed normal form of its integer trace:
    /// the unique closed-or-unbounded interval `J` with integer finite
    /// endpoints such that `J` and `self` contain the same integers.
    /// `(0,3)` becomes `[1,2]`; `(0,1)` becomes the empty `[1,0]`.
    pub fn normalize_z(&self) -> TimeInterval {
        let one = rat::rat_int(1);
        let (lo, lo_closed) = match &self.lo {
            Bound::Fin(l) => {
                let l2 = if self.lo_closed {
                    rat::ceil(l)
                } else {
                    rat::floor(l) + &one
                };
                (Bound::Fin(l2), true)
            }
            inf => (inf.clone(), false),
        };
        let (hi, hi_closed) = match &self.hi {
            Bound::Fin(u) => {
                let u2 = if self.hi_closed {
                    rat::floor(u)
                } else {
                    rat::ceil(u) - &one
                };
                (Bound::Fin(u2), true)
            }
            inf => (inf.clone(), false),
        };
        TimeInterval::new(lo, lo_closed, hi, hi_closed)
    }

    /// Finite endpoint values (signed), low then high when present.
    pub fn finite_endpoints(&self) -> Vec<&Rat> {
        let mut v = Vec::new();
        if let Bound::Fin(l) = &self.lo {
            v.push(l);
        }
        if let Bound::Fin(u) = &self.hi {
            v.push(u);
        }
        v
    }

    /// True iff every finite endpoint is an integer.
    pub fn has_integer_endpoints(&self) -> bool {
        self.finite_endpoints().into_iter().all(rat::is_int)
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lb = if self.lo_closed { '[' } else { '(' };
        let rb = if self.hi_closed { ']' } else { ')' };
        write!(f, "{}{},{}{}", lb, self.lo, self.hi, rb)
    }
}
