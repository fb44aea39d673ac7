//! Randomized cross-cutting properties: sampling laws, closure of slow
//! variance under smaller periods, collapse of the becoming operators over
//! discrete time, flattening, granularity arithmetic, satisfaction-set
//! algebra, and printer/parser round-trips.

use std::collections::BTreeSet;

use mtl::behavior::{DiscreteBehavior, SamplingParams};
use mtl::formula::{Formula, Letter};
use mtl::granularity::{granularity, in_d};
use mtl::rat::{rat, rat_int};
use mtl::semantics::{eval_discrete, sat_seq, sat_set, BoolSeq};
use mtl::syntax::{
    parse_dense_behavior, parse_discrete_behavior, parse_formula, print_dense_behavior,
    print_discrete_behavior,
};
use mtl_harness::gen::{self, EndpointKind};
use mtl_harness::GenConfig;
use proptest::prelude::*;
use rand::Rng;

fn alphabet(n: usize) -> BTreeSet<Letter> {
    gen::letters(n).into_iter().collect()
}

/// Sampling reads values off a fixed grid, so shifting the origin by a
/// whole number of periods shifts the sampled sequence by the same number
/// of steps.
#[test]
fn samples_at_congruent_origins_are_shifts() {
    let alpha = alphabet(2);
    let deltas = [rat(1, 4), rat(1, 3), rat(1, 2), rat_int(1)];
    for i in 0..300u64 {
        let mut rng = gen::instance_rng(42, 21, i);
        let delta = deltas[rng.gen_range(0..deltas.len())].clone();
        let b = gen::gen_dense(&mut rng, &alpha, 6);
        let z = gen::gen_time(&mut rng, &b, &delta);
        let m = rng.gen_range(-3..=3i64);
        let base = SamplingParams::new(delta.clone(), z.clone()).unwrap();
        let moved =
            SamplingParams::new(delta.clone(), z + rat_int(m) * delta.clone()).unwrap();
        let s_base = b.sample(&base);
        let s_moved = b.sample(&moved);
        for k in -12..=12i64 {
            assert_eq!(
                s_moved.value_at(k),
                s_base.value_at(k + m),
                "instance {}: origin moved by {} periods must shift the sample",
                i,
                m
            );
        }
    }
}

/// A behavior slow enough for one period is slow enough for every smaller
/// one: a closed constancy subinterval of the larger length contains one of
/// any smaller length.
#[test]
fn slow_variance_survives_smaller_periods() {
    let alpha = alphabet(2);
    let deltas = [rat(1, 2), rat_int(1), rat(3, 2)];
    for i in 0..300u64 {
        let mut rng = gen::instance_rng(42, 22, i);
        let delta = deltas[rng.gen_range(0..deltas.len())].clone();
        let b = gen::gen_non_berkeley(&mut rng, &alpha, &delta, 6);
        assert!(b.is_non_berkeley(&delta), "instance {}: generator contract", i);
        for smaller in [
            delta.clone() / rat_int(2),
            delta.clone() / rat_int(3),
            delta.clone() * rat(2, 5),
            delta.clone() * rat(7, 11),
        ] {
            assert!(
                b.is_non_berkeley(&smaller),
                "instance {}: slow for {} but not for smaller {}",
                i,
                delta,
                smaller
            );
        }
    }
}

/// Over the integers there is no room strictly between an instant and its
/// successor, so "true now or about to become true" and "true now or just
/// ceased" both collapse to plain truth.
#[test]
fn becoming_operators_collapse_on_discrete_time() {
    let alpha = alphabet(2);
    let cfg = GenConfig::default();
    for i in 0..300u64 {
        let mut rng = gen::instance_rng(42, 23, i);
        let kind = if rng.gen_bool(0.5) {
            EndpointKind::Discrete
        } else {
            EndpointKind::Dense
        };
        let f = gen::gen_formula(&mut rng, &cfg, kind, 2);
        let d = gen::gen_discrete(&mut rng, &alpha, 5);
        let plain = sat_seq(&f, &d);
        assert_eq!(
            sat_seq(&Formula::becf(f.clone()), &d),
            plain,
            "instance {}: future becoming must collapse on {}",
            i,
            f
        );
        assert_eq!(
            sat_seq(&Formula::becp(f.clone()), &d),
            plain,
            "instance {}: past becoming must collapse on {}",
            i,
            f
        );
    }
}

/// The coarsest usable period is itself usable, every integer fraction of
/// it is usable, and nothing coarser is.
#[test]
fn top_period_is_admitted_and_nothing_coarser_is() {
    let cfg = GenConfig::default();
    let mut kept = 0usize;
    for i in 0..300u64 {
        let mut rng = gen::instance_rng(42, 24, i);
        let f = gen::gen_flat_formula(&mut rng, &cfg, EndpointKind::Dense);
        let Some(g) = granularity(&f) else { continue };
        kept += 1;
        let top = g.max_delta();
        assert!(in_d(&f, &top), "instance {}: top period rejected for {}", i, f);
        assert!(
            in_d(&f, &(top.clone() / rat_int(3))),
            "instance {}: integer fraction of the top period rejected for {}",
            i,
            f
        );
        assert!(
            !in_d(&f, &(top.clone() * rat_int(2))),
            "instance {}: period coarser than the top accepted for {}",
            i,
            f
        );
        assert!(
            !in_d(&f, &(top * rat(3, 2))),
            "instance {}: non-fraction above the top accepted for {}",
            i,
            f
        );
    }
    assert!(kept >= 100, "only {} of 300 formulas had finite endpoints", kept);
}

/// Extends `base` with one fresh letter per definition, true exactly where
/// the defining formula holds.
fn extend_with_defs(
    base: &DiscreteBehavior,
    defs: &[(Letter, Formula)],
) -> DiscreteBehavior {
    let seqs: Vec<(Letter, BoolSeq)> = defs
        .iter()
        .map(|(l, d)| (l.clone(), sat_seq(d, base)))
        .collect();
    let (mut lo, mut hi) = {
        let (w_lo, w_hi) = base.window();
        (w_lo, w_hi - 1)
    };
    for (_, s) in &seqs {
        let (s_lo, s_hi) = s.window();
        lo = lo.min(s_lo);
        hi = hi.max(s_hi);
    }
    let join = |k: i64| -> BTreeSet<Letter> {
        let mut v = base.value_at(k).clone();
        for (l, s) in &seqs {
            if s.value_at(k) {
                v.insert(l.clone());
            }
        }
        v
    };
    let mut alpha = base.alphabet().clone();
    alpha.extend(defs.iter().map(|(l, _)| l.clone()));
    let left = join(lo - 1);
    let right = join(hi + 1);
    let core: Vec<BTreeSet<Letter>> = (lo..=hi).map(join).collect();
    DiscreteBehavior::new(alpha, left, lo, core, right).unwrap()
}

/// Flattening hoists nested temporal arguments into fresh letters. The
/// result must be syntactically flat, use only fresh names, and agree with
/// the original wherever the fresh letters are given exactly their defining
/// truth values.
#[test]
fn flattening_is_flat_fresh_and_truth_preserving() {
    let alpha = alphabet(2);
    let cfg = GenConfig::default();
    for i in 0..200u64 {
        let mut rng = gen::instance_rng(42, 25, i);
        let f = gen::gen_formula(&mut rng, &cfg, EndpointKind::Dense, 2);
        let (flat, defs) = f.flatten("aux").unwrap();
        assert!(flat.classify().flat, "instance {}: {} not flat", i, flat);
        let original_letters = f.letters();
        for (l, d) in &defs {
            assert!(d.classify().flat, "instance {}: definition {} not flat", i, d);
            assert!(
                !original_letters.contains(l),
                "instance {}: auxiliary letter {} not fresh",
                i,
                l.name()
            );
        }
        if f.classify().flat {
            assert!(defs.is_empty(), "instance {}: flat input gained definitions", i);
            assert_eq!(flat, f, "instance {}: flat input rewritten", i);
        }
        let base = gen::gen_discrete(&mut rng, &alpha, 5);
        let ext = extend_with_defs(&base, &defs);
        let (w_lo, w_hi) = ext.window();
        for k in (w_lo - 3)..=(w_hi + 3) {
            assert_eq!(
                eval_discrete(&flat, &ext, k),
                eval_discrete(&f, &base, k),
                "instance {}: flattening changed the truth of {} at step {}",
                i,
                f,
                k
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// The canonical printer and the parser are mutually inverse on
    /// formulas of every supported shape.
    #[test]
    fn printed_formulas_reparse_to_themselves(
        seed in any::<u64>(),
        discrete in any::<bool>(),
        depth in 0usize..3,
    ) {
        let mut rng = gen::instance_rng(seed, 26, 0);
        let kind = if discrete { EndpointKind::Discrete } else { EndpointKind::Dense };
        let f = gen::gen_formula(&mut rng, &GenConfig::default(), kind, depth);
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    /// Behavior files round-trip through their printers in both time
    /// models.
    #[test]
    fn printed_behaviors_reparse_to_themselves(seed in any::<u64>()) {
        let mut rng = gen::instance_rng(seed, 27, 0);
        let alpha = alphabet(2);
        let b = gen::gen_dense(&mut rng, &alpha, 6);
        prop_assert_eq!(parse_dense_behavior(&print_dense_behavior(&b)).unwrap(), b);
        let d = gen::gen_discrete(&mut rng, &alpha, 5);
        prop_assert_eq!(parse_discrete_behavior(&print_discrete_behavior(&d)).unwrap(), d);
    }

    /// Satisfaction sets form a boolean algebra under the canonical
    /// interval representation.
    #[test]
    fn satisfaction_sets_respect_boolean_algebra(seed in any::<u64>()) {
        let mut rng = gen::instance_rng(seed, 28, 0);
        let alpha = alphabet(2);
        let cfg = GenConfig::default();
        let f = gen::gen_formula(&mut rng, &cfg, EndpointKind::Dense, 1);
        let g = gen::gen_formula(&mut rng, &cfg, EndpointKind::Dense, 1);
        let b = gen::gen_dense(&mut rng, &alpha, 6);
        let sf = sat_set(&f, &b);
        let sg = sat_set(&g, &b);
        let cf = sf.complement();
        prop_assert!(sf.union(&cf).is_full());
        prop_assert!(sf.intersect(&cf).is_empty());
        prop_assert_eq!(cf.complement(), sf.clone());
        prop_assert_eq!(sf.difference(&sg), sf.intersect(&sg.complement()));
        prop_assert_eq!(
            sf.union(&sg).complement(),
            sf.complement().intersect(&sg.complement())
        );
    }
}
