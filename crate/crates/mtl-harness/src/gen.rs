//! Seeded random generators for formulas, behaviors, and query instants.
//!
//! Everything here is a pure function of the supplied RNG, and every suite
//! derives one RNG per instance index via [`instance_rng`], so generated
//! instances are reproducible and independent of evaluation order.

use std::collections::BTreeSet;

use mtl::rat::{rat, rat_int};
use mtl::{DenseBehavior, DiscreteBehavior, Formula, Letter, Piece, Rat, TimeInterval};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::GenConfig;

/// Derives the RNG for instance `index` of the suite tagged `suite_tag`.
///
/// The three inputs are mixed with distinct odd constants so that nearby
/// seeds, tags, and indices produce unrelated streams.
pub fn instance_rng(seed: u64, suite_tag: u64, index: u64) -> ChaCha20Rng {
    let mixed = seed
        ^ suite_tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ index.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    ChaCha20Rng::seed_from_u64(mixed)
}

/// The first `n` letters of the fixed generator alphabet `p, q, r`.
pub fn letters(n: usize) -> Vec<Letter> {
    ["p", "q", "r"][..n.clamp(1, 3)]
        .iter()
        .map(|s| Letter::new(s).expect("fixed letter names are valid"))
        .collect()
}

/// Which number class generated window endpoints are drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndpointKind {
    /// Arbitrary rationals from the configured pool.
    Dense,
    /// Integer endpoints only (the pool's integer entries).
    Discrete,
}

/// A random subset of `letters`, as a behavior value.
pub fn random_subset<R: Rng>(rng: &mut R, letters: &[Letter]) -> BTreeSet<Letter> {
    letters
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .cloned()
        .collect()
}

/// A random propositional (temporal-operator-free) formula over `letters`,
/// with at most `budget` binary connectives.
pub fn gen_propositional<R: Rng>(rng: &mut R, letters: &[Letter], budget: usize) -> Formula {
    if budget == 0 || rng.gen_bool(0.4) {
        let l = letters[rng.gen_range(0..letters.len())].clone();
        if rng.gen_bool(0.5) {
            Formula::prop(l)
        } else {
            Formula::nprop(l)
        }
    } else {
        let a = gen_propositional(rng, letters, budget / 2);
        let b = gen_propositional(rng, letters, budget / 2);
        if rng.gen_bool(0.5) {
            Formula::and(a, b)
        } else {
            Formula::or(a, b)
        }
    }
}

/// A random window over the pool: bounded (occasionally inverted, i.e.
/// empty), half-bounded, full, or a singleton. Closure flags are random.
pub fn gen_window<R: Rng>(rng: &mut R, pool: &[Rat]) -> TimeInterval {
    let pick = |rng: &mut R| pool[rng.gen_range(0..pool.len())].clone();
    match rng.gen_range(0..10u32) {
        0..=4 => {
            let a = pick(rng);
            let b = pick(rng);
            // Mostly properly ordered; one draw in ten is left as-is, so
            // inverted (empty) windows stay represented.
            let (lo, hi) = if a <= b || rng.gen_bool(0.1) {
                (a, b)
            } else {
                (b, a)
            };
            TimeInterval::new(
                mtl::Bound::fin(lo),
                rng.gen_bool(0.5),
                mtl::Bound::fin(hi),
                rng.gen_bool(0.5),
            )
        }
        5 | 6 => {
            let lo = pick(rng);
            if rng.gen_bool(0.5) {
                TimeInterval::at_least(lo)
            } else {
                TimeInterval::greater_than(lo)
            }
        }
        7 => {
            let hi = pick(rng);
            if rng.gen_bool(0.5) {
                TimeInterval::at_most(hi)
            } else {
                TimeInterval::less_than(hi)
            }
        }
        8 => TimeInterval::full(),
        _ => TimeInterval::singleton(pick(rng)),
    }
}

fn endpoint_pool(cfg: &GenConfig, kind: EndpointKind) -> Vec<Rat> {
    match kind {
        EndpointKind::Dense => cfg.endpoint_pool.clone(),
        EndpointKind::Discrete => cfg.int_endpoint_pool(),
    }
}

/// One temporal operator applied to propositional arguments.
fn gen_temporal_atom<R: Rng>(rng: &mut R, pool: &[Rat], ls: &[Letter]) -> Formula {
    let a = gen_propositional(rng, ls, 2);
    let b = gen_propositional(rng, ls, 2);
    let win = gen_window(rng, pool);
    match rng.gen_range(0..10u32) {
        0 | 1 => Formula::until(win, a, b),
        2 => Formula::until_m(win, a, b),
        3 | 4 => Formula::since(win, a, b),
        5 => Formula::since_m(win, a, b),
        6 => Formula::release(win, a, b),
        7 => Formula::trigger(win, a, b),
        8 => Formula::becf(a),
        _ => Formula::becp(a),
    }
}

/// A random flat formula: a small boolean combination of temporal operators
/// over propositional arguments, plus an optional propositional conjunct.
/// All ten operator shapes (four modalities, matching variants, and the two
/// one-sided change operators) occur with positive probability, as do open,
/// closed, unbounded, and singleton windows.
pub fn gen_flat_formula<R: Rng>(rng: &mut R, cfg: &GenConfig, kind: EndpointKind) -> Formula {
    let ls = letters(cfg.alphabet_size);
    let pool = endpoint_pool(cfg, kind);
    let mut parts = vec![gen_temporal_atom(rng, &pool, &ls)];
    if rng.gen_bool(0.35) {
        parts.push(gen_temporal_atom(rng, &pool, &ls));
    }
    if rng.gen_bool(0.5) {
        parts.push(gen_propositional(rng, &ls, 2));
    }
    let mut f = parts.pop().expect("at least one part");
    for p in parts {
        f = if rng.gen_bool(0.5) {
            Formula::and(p, f)
        } else {
            Formula::or(p, f)
        };
    }
    f
}

/// A random formula of temporal nesting depth at most `depth` (arguments of
/// temporal operators may themselves be temporal).
pub fn gen_formula<R: Rng>(
    rng: &mut R,
    cfg: &GenConfig,
    kind: EndpointKind,
    depth: usize,
) -> Formula {
    let ls = letters(cfg.alphabet_size);
    let pool = endpoint_pool(cfg, kind);
    gen_formula_rec(rng, &pool, &ls, depth)
}

fn gen_formula_rec<R: Rng>(rng: &mut R, pool: &[Rat], ls: &[Letter], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return gen_propositional(rng, ls, 2);
    }
    let arg = |rng: &mut R| {
        if rng.gen_bool(0.55) {
            gen_formula_rec(rng, pool, ls, depth - 1)
        } else {
            gen_propositional(rng, ls, 2)
        }
    };
    let a = arg(rng);
    let b = arg(rng);
    let win = gen_window(rng, pool);
    match rng.gen_range(0..12u32) {
        0 | 1 => Formula::until(win, a, b),
        2 => Formula::until_m(win, a, b),
        3 | 4 => Formula::since(win, a, b),
        5 => Formula::since_m(win, a, b),
        6 => Formula::release(win, a, b),
        7 => Formula::trigger(win, a, b),
        8 => Formula::becf(a),
        9 => Formula::becp(a),
        _ => {
            if rng.gen_bool(0.5) {
                Formula::and(a, b)
            } else {
                Formula::or(a, b)
            }
        }
    }
}

/// A random windowless formula: every temporal window is `[0,inf)` and the
/// change operators are excluded, so the result lies in the
/// default-window fragment at any nesting depth up to `depth`.
pub fn gen_windowless<R: Rng>(rng: &mut R, ls: &[Letter], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        return gen_propositional(rng, ls, 2);
    }
    let a = gen_windowless(rng, ls, depth - 1);
    let b = gen_windowless(rng, ls, depth - 1);
    let win = TimeInterval::zero_to_inf();
    match rng.gen_range(0..5u32) {
        0 => Formula::until(win, a, b),
        1 => Formula::since(win, a, b),
        2 => Formula::release(win, a, b),
        3 => Formula::trigger(win, a, b),
        _ => {
            if rng.gen_bool(0.5) {
                Formula::and(a, b)
            } else {
                Formula::or(a, b)
            }
        }
    }
}

/// Returns `f` with every window's finite endpoints multiplied by `delta`
/// (closure flags unchanged). Applying this to a formula with integer
/// endpoints yields one whose endpoints are all integer multiples of
/// `delta`, i.e. a formula that admits `delta` as a sampling period.
pub fn scale_windows(f: &Formula, delta: &Rat) -> Formula {
    match f {
        Formula::Prop(_) | Formula::NegProp(_) => f.clone(),
        Formula::And(a, b) => Formula::and(scale_windows(a, delta), scale_windows(b, delta)),
        Formula::Or(a, b) => Formula::or(scale_windows(a, delta), scale_windows(b, delta)),
        Formula::Until {
            win,
            matching,
            lhs,
            rhs,
        } => Formula::Until {
            win: win.scale_pos(delta),
            matching: *matching,
            lhs: Box::new(scale_windows(lhs, delta)),
            rhs: Box::new(scale_windows(rhs, delta)),
        },
        Formula::Since {
            win,
            matching,
            lhs,
            rhs,
        } => Formula::Since {
            win: win.scale_pos(delta),
            matching: *matching,
            lhs: Box::new(scale_windows(lhs, delta)),
            rhs: Box::new(scale_windows(rhs, delta)),
        },
        Formula::Release { win, lhs, rhs } => Formula::release(
            win.scale_pos(delta),
            scale_windows(lhs, delta),
            scale_windows(rhs, delta),
        ),
        Formula::Trigger { win, lhs, rhs } => Formula::trigger(
            win.scale_pos(delta),
            scale_windows(lhs, delta),
            scale_windows(rhs, delta),
        ),
        Formula::Becf(g) => Formula::becf(scale_windows(g, delta)),
        Formula::Becp(g) => Formula::becp(scale_windows(g, delta)),
    }
}

/// Values for a piecewise behavior with all adjacent values distinct (so
/// each piece really is a maximal constancy interval).
fn distinct_values<R: Rng>(rng: &mut R, ls: &[Letter], n: usize) -> Vec<BTreeSet<Letter>> {
    let mut out: Vec<BTreeSet<Letter>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = random_subset(rng, ls);
        if i > 0 && v == out[i - 1] {
            // Flip one letter's membership to force a change.
            let l = ls[rng.gen_range(0..ls.len())].clone();
            if !v.remove(&l) {
                v.insert(l);
            }
        }
        out.push(v);
    }
    out
}

/// Assembles a dense behavior from boundary instants, per-boundary ownership
/// (`true` = the piece on the left contains the boundary instant), and
/// per-piece values. `boundaries.len() + 1 == values.len()`.
fn assemble_dense(
    alphabet: BTreeSet<Letter>,
    boundaries: &[Rat],
    own_left: &[bool],
    values: Vec<BTreeSet<Letter>>,
) -> DenseBehavior {
    use mtl::Bound;
    let n = values.len();
    assert_eq!(boundaries.len(), n - 1);
    assert_eq!(own_left.len(), n - 1);
    let mut pieces = Vec::with_capacity(n);
    for (i, value) in values.into_iter().enumerate() {
        let (lo, lo_closed) = if i == 0 {
            (Bound::NegInf, false)
        } else {
            (Bound::fin(boundaries[i - 1].clone()), !own_left[i - 1])
        };
        let (hi, hi_closed) = if i == n - 1 {
            (Bound::PosInf, false)
        } else {
            (Bound::fin(boundaries[i].clone()), own_left[i])
        };
        pieces.push(Piece {
            interval: TimeInterval::new(lo, lo_closed, hi, hi_closed),
            value,
        });
    }
    DenseBehavior::from_pieces(alphabet, pieces).expect("assembled pieces partition the line")
}

/// A random behavior whose every bounded constancy piece lasts longer than
/// `delta`, except for an occasional exactly-`delta` piece that is closed on
/// both ends — i.e. a behavior that varies slowly enough for period `delta`.
pub fn gen_non_berkeley<R: Rng>(
    rng: &mut R,
    alphabet: &BTreeSet<Letter>,
    delta: &Rat,
    max_segments: usize,
) -> DenseBehavior {
    let ls: Vec<Letter> = alphabet.iter().cloned().collect();
    let n = rng.gen_range(1..=max_segments.max(1));
    let values = distinct_values(rng, &ls, n);
    if n == 1 {
        return DenseBehavior::constant(alphabet.clone(), values.into_iter().next().unwrap())
            .expect("values drawn from the alphabet");
    }
    // Bounded pieces are indices 1..n-1. Each is either exactly delta long
    // (then it must contain both its endpoints) or strictly longer. Two
    // adjacent exact pieces would fight over their shared boundary, so an
    // exact piece is never followed by another.
    let mut exact = vec![false; n];
    for p in 1..n - 1 {
        exact[p] = !exact[p - 1] && rng.gen_bool(0.25);
    }
    let mut boundaries = Vec::with_capacity(n - 1);
    let mut cur = rat(rng.gen_range(-16..=16), 4);
    boundaries.push(cur.clone());
    for p in 1..n - 1 {
        let len = if exact[p] {
            delta.clone()
        } else {
            delta * rat(8 + rng.gen_range(1..=12), 8)
        };
        cur += len;
        boundaries.push(cur.clone());
    }
    let mut own_left: Vec<bool> = (0..n - 1).map(|_| rng.gen_bool(0.5)).collect();
    for p in 1..n - 1 {
        if exact[p] {
            own_left[p - 1] = false; // piece p contains its left endpoint
            own_left[p] = true; // and its right endpoint
        }
    }
    let b = assemble_dense(alphabet.clone(), &boundaries, &own_left, values);
    assert!(
        b.is_non_berkeley(delta),
        "generator contract: produced behavior must vary slowly for {}",
        delta
    );
    b
}

/// A random piecewise-constant behavior with no slow-variability constraint:
/// pieces may be arbitrarily short, including single instants.
pub fn gen_dense<R: Rng>(
    rng: &mut R,
    alphabet: &BTreeSet<Letter>,
    max_segments: usize,
) -> DenseBehavior {
    let ls: Vec<Letter> = alphabet.iter().cloned().collect();
    let n = rng.gen_range(1..=max_segments.max(1));
    let values = distinct_values(rng, &ls, n);
    if n == 1 {
        return DenseBehavior::constant(alphabet.clone(), values.into_iter().next().unwrap())
            .expect("values drawn from the alphabet");
    }
    // A zero-length piece is a single instant, which must be closed on both
    // ends; as above, two in a row would conflict.
    let mut point = vec![false; n];
    for p in 1..n - 1 {
        point[p] = !point[p - 1] && rng.gen_bool(0.2);
    }
    let lens = [rat(1, 4), rat(1, 3), rat(1, 2), rat_int(1), rat(3, 2)];
    let mut boundaries = Vec::with_capacity(n - 1);
    let mut cur = rat(rng.gen_range(-16..=16), 4);
    boundaries.push(cur.clone());
    for p in 1..n - 1 {
        if !point[p] {
            cur += lens[rng.gen_range(0..lens.len())].clone();
        }
        boundaries.push(cur.clone());
    }
    let mut own_left: Vec<bool> = (0..n - 1).map(|_| rng.gen_bool(0.5)).collect();
    for p in 1..n - 1 {
        if point[p] {
            own_left[p - 1] = false;
            own_left[p] = true;
        }
    }
    assemble_dense(alphabet.clone(), &boundaries, &own_left, values)
}

/// A random discrete behavior: random limit values plus a random explicit
/// window of up to `max_core` values.
pub fn gen_discrete<R: Rng>(
    rng: &mut R,
    alphabet: &BTreeSet<Letter>,
    max_core: usize,
) -> DiscreteBehavior {
    let ls: Vec<Letter> = alphabet.iter().cloned().collect();
    let left = random_subset(rng, &ls);
    let right = random_subset(rng, &ls);
    let core_start = rng.gen_range(-3..=3);
    let len = rng.gen_range(0..=max_core);
    let core: Vec<BTreeSet<Letter>> = (0..len).map(|_| random_subset(rng, &ls)).collect();
    DiscreteBehavior::new(alphabet.clone(), left, core_start, core, right)
        .expect("values drawn from the alphabet")
}

/// A random query instant for `b`: breakpoints, points close to them, points
/// between them, points far outside the variable range, and unrelated small
/// rationals are all represented.
pub fn gen_time<R: Rng>(rng: &mut R, b: &DenseBehavior, delta: &Rat) -> Rat {
    let bps = b.breakpoints();
    let fallback = rat(rng.gen_range(-40..=40), 4);
    if bps.is_empty() {
        return fallback;
    }
    let pick = |rng: &mut R, bps: &[Rat]| bps[rng.gen_range(0..bps.len())].clone();
    match rng.gen_range(0..6u32) {
        0 => pick(rng, &bps),
        1 => pick(rng, &bps) + delta * rat(1, 3),
        2 => pick(rng, &bps) - rat(1, 8),
        3 => {
            let a = pick(rng, &bps);
            let c = pick(rng, &bps);
            (a + c) / rat_int(2)
        }
        4 => {
            if rng.gen_bool(0.5) {
                bps.first().unwrap() - rat_int(3)
            } else {
                bps.last().unwrap() + rat_int(3)
            }
        }
        _ => fallback,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mtl::Bound;

    fn cfg() -> GenConfig {
        GenConfig::default()
    }

    #[test]
    fn flat_generator_covers_all_operator_and_window_shapes() {
        let cfg = cfg();
        let mut until = 0;
        let mut until_m = 0;
        let mut since = 0;
        let mut since_m = 0;
        let mut release = 0;
        let mut trigger = 0;
        let mut becf = 0;
        let mut becp = 0;
        let mut open_win = 0;
        let mut closed_win = 0;
        let mut unbounded_win = 0;
        let mut singleton_win = 0;
        let mut empty_win = 0;
        fn visit(
            f: &Formula,
            on_op: &mut impl FnMut(&Formula),
            on_win: &mut impl FnMut(&TimeInterval),
        ) {
            match f {
                Formula::Prop(_) | Formula::NegProp(_) => {}
                Formula::And(a, b) | Formula::Or(a, b) => {
                    visit(a, on_op, on_win);
                    visit(b, on_op, on_win);
                }
                Formula::Until { win, lhs, rhs, .. }
                | Formula::Since { win, lhs, rhs, .. }
                | Formula::Release { win, lhs, rhs }
                | Formula::Trigger { win, lhs, rhs } => {
                    on_op(f);
                    on_win(win);
                    visit(lhs, on_op, on_win);
                    visit(rhs, on_op, on_win);
                }
                Formula::Becf(g) | Formula::Becp(g) => {
                    on_op(f);
                    visit(g, on_op, on_win);
                }
            }
        }
        for i in 0..1000 {
            let mut rng = instance_rng(7, 1, i);
            let f = gen_flat_formula(&mut rng, &cfg, EndpointKind::Dense);
            assert!(f.is_flat(), "flat generator produced a nested formula");
            visit(
                &f,
                &mut |op| match op {
                    Formula::Until { matching: true, .. } => until_m += 1,
                    Formula::Until { .. } => until += 1,
                    Formula::Since { matching: true, .. } => since_m += 1,
                    Formula::Since { .. } => since += 1,
                    Formula::Release { .. } => release += 1,
                    Formula::Trigger { .. } => trigger += 1,
                    Formula::Becf(_) => becf += 1,
                    Formula::Becp(_) => becp += 1,
                    _ => {}
                },
                &mut |w| {
                    if w.is_empty() {
                        empty_win += 1;
                    } else if w.is_singleton() {
                        singleton_win += 1;
                    } else if !w.is_bounded() {
                        unbounded_win += 1;
                    } else if w.lo_closed() && w.hi_closed() {
                        closed_win += 1;
                    } else {
                        open_win += 1;
                    }
                },
            );
        }
        for (name, count) in [
            ("until", until),
            ("matching until", until_m),
            ("since", since),
            ("matching since", since_m),
            ("release", release),
            ("trigger", trigger),
            ("becf", becf),
            ("becp", becp),
            ("open or half-open window", open_win),
            ("closed window", closed_win),
            ("unbounded window", unbounded_win),
            ("singleton window", singleton_win),
            ("empty window", empty_win),
        ] {
            assert!(count > 0, "1000 draws never produced: {}", name);
        }
    }

    #[test]
    fn slow_behavior_generator_honors_its_contract() {
        let cfg = cfg();
        let alphabet: BTreeSet<Letter> = letters(2).into_iter().collect();
        let mut exact_closed_seen = false;
        for i in 0..300 {
            let mut rng = instance_rng(11, 2, i);
            let delta = cfg.delta_pool[rng.gen_range(0..cfg.delta_pool.len())].clone();
            let b = gen_non_berkeley(&mut rng, &alphabet, &delta, cfg.max_segments);
            assert!(b.is_non_berkeley(&delta));
            for p in b.pieces() {
                if p.interval.is_bounded() {
                    let lo = p.interval.lo().as_rat().unwrap();
                    let hi = p.interval.hi().as_rat().unwrap();
                    if hi - lo == delta {
                        assert!(p.interval.lo_closed() && p.interval.hi_closed());
                        exact_closed_seen = true;
                    }
                }
            }
        }
        assert!(
            exact_closed_seen,
            "exactly-delta closed pieces should occur in 300 draws"
        );
    }

    #[test]
    fn unconstrained_generator_produces_single_instant_pieces() {
        let cfg = cfg();
        let alphabet: BTreeSet<Letter> = letters(2).into_iter().collect();
        let mut point_seen = false;
        for i in 0..200 {
            let mut rng = instance_rng(13, 3, i);
            let b = gen_dense(&mut rng, &alphabet, cfg.max_segments);
            for p in b.pieces() {
                if p.interval.is_singleton() {
                    point_seen = true;
                }
                assert!(!p.interval.is_empty());
            }
        }
        assert!(point_seen, "single-instant pieces should occur in 200 draws");
    }

    #[test]
    fn windowless_generator_stays_in_the_default_window_fragment() {
        for i in 0..200 {
            let mut rng = instance_rng(17, 4, i);
            let f = gen_windowless(&mut rng, &letters(2), 2);
            assert!(f.temporal_depth() <= 2);
            for w in f.windows() {
                assert_eq!(*w.lo(), Bound::fin(rat_int(0)));
                assert!(w.lo_closed());
                assert_eq!(*w.hi(), Bound::PosInf);
            }
        }
    }

    #[test]
    fn instance_streams_are_reproducible_and_distinct() {
        let a1 = gen_flat_formula(&mut instance_rng(5, 9, 0), &cfg(), EndpointKind::Dense);
        let a2 = gen_flat_formula(&mut instance_rng(5, 9, 0), &cfg(), EndpointKind::Dense);
        assert_eq!(a1, a2);
        let distinct = (0..20)
            .map(|i| {
                gen_flat_formula(&mut instance_rng(5, 9, i), &cfg(), EndpointKind::Dense)
                    .to_string()
            })
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        assert!(distinct > 10, "instance streams look correlated");
    }

    #[test]
    fn window_scaling_multiplies_endpoints_and_keeps_closures() {
        let f = Formula::until_m(
            TimeInterval::oc(rat_int(-2), rat_int(4)),
            Formula::var("p"),
            Formula::var("q"),
        );
        let g = scale_windows(&f, &rat(1, 2));
        match g {
            Formula::Until { win, matching, .. } => {
                assert!(matching);
                assert_eq!(*win.lo(), Bound::fin(rat_int(-1)));
                assert_eq!(*win.hi(), Bound::fin(rat_int(2)));
                assert!(!win.lo_closed() && win.hi_closed());
            }
            other => panic!("scaling changed the operator: {:?}", other),
        }
    }
}
