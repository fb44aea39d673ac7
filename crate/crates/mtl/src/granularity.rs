//! Sampling-period divisibility: which periods fit a formula's constants.
//!
//! A period `delta` *fits* a formula when every finite nonzero window
//! endpoint is an integer multiple of `delta`; the admissible periods of a
//! formula form a downward-directed set `D` described exactly by a pair
//! `(num, den)` — the gcd of the endpoint numerators and the lcm of their
//! denominators once each endpoint magnitude is in lowest terms. `num/den`
//! is then the maximum admissible period and `D` is the set of `d/D` with
//! `d | num` and `den | D`. A formula with no finite nonzero endpoint admits
//! every positive period (and has no maximum one).

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::formula::Formula;
use crate::rat::{self, Rat};

/// The `(num, den)` description of a formula's admissible periods; both
/// components positive, coprime by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Granularity {
    pub num: BigInt,
    pub den: BigInt,
}

impl Granularity {
    /// The largest admissible period, `num/den`.
    pub fn max_delta(&self) -> Rat {
        Rat::new(self.num.clone(), self.den.clone())
    }

    /// True iff `delta` is admissible: `delta = d/D` in lowest terms with
    /// `d | num` and `den | D`. Equivalently `max_delta / delta` is a
    /// positive integer.
    pub fn admits(&self, delta: &Rat) -> bool {
        if delta <= &Rat::zero() {
            return false;
        }
        (self.max_delta() / delta).is_integer()
    }
}

/// Magnitudes of all finite nonzero window endpoints of `f`.
fn endpoint_magnitudes(f: &Formula) -> Vec<Rat> {
    f.windows()
        .iter()
        .flat_map(|w| w.finite_endpoints())
        .filter(|q| !q.is_zero())
        .map(|q| q.abs())
        .collect()
}

/// The admissible-period description of one formula, or `None` when it has
/// no finite nonzero endpoint (every positive period fits).
pub fn granularity(f: &Formula) -> Option<Granularity> {
    granularity_many([f])
}

/// The joint admissible-period description of a family of formulas (the
/// intersection of their period sets), or `None` when the family has no
/// finite nonzero endpoint at all.
pub fn granularity_many<'a>(
    fs: impl IntoIterator<Item = &'a Formula>,
) -> Option<Granularity> {
    let mut num: Option<BigInt> = None;
    let mut den = BigInt::one();
    for f in fs {
        for q in endpoint_magnitudes(f) {
            let n = q.numer().abs();
            let d = q.denom().abs();
            num = Some(match num {
                None => n,
                Some(acc) => rat::gcd_big(&acc, &n),
            });
            den = rat::lcm_big(&den, &d);
        }
    }
    num.map(|num| Granularity { num, den })
}

/// True iff every finite nonzero endpoint of `f` is an integer multiple of
/// `delta` (`delta` must be positive; nonpositive periods fit nothing).
pub fn in_d(f: &Formula, delta: &Rat) -> bool {
    in_d_all([f], delta)
}

/// [`in_d`] for a family of formulas at once.
pub fn in_d_all<'a>(fs: impl IntoIterator<Item = &'a Formula>, delta: &Rat) -> bool {
    if delta <= &Rat::zero() {
        return false;
    }
    fs.into_iter()
        .all(|f| endpoint_magnitudes(f).iter().all(|q| rat::divides(delta, q)))
}

/// The largest period fitting `f`, or `None` when every positive period fits.
pub fn max_d(f: &Formula) -> Option<Rat> {
    granularity(f).map(|g| g.max_delta())
}
