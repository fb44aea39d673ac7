//! Window rewriting between the dense and discrete readings of a formula.
//!
//! Four structure-preserving maps, all parameterized by a sampling period
//! `delta > 0`. None of them touches propositional structure; each rewrites
//! every temporal window in place:
//!
//! - [`adapt_r`]: dense-to-discrete. Existential windows round outward to
//!   closed integer multiples; universal windows round inward, honoring the
//!   side that an open endpoint already excludes. Universal operators also
//!   let their escape argument count as a witness at the quantified instant
//!   itself (the expanded matching-release shape): an escape run of a
//!   sampled behavior may end strictly between the last whole step and the
//!   witness instant, and the step landing on the witness instant is then
//!   the only one that still sees it.
//! - [`adapt_z`]: discrete-to-dense. Windows are first normalized to their
//!   closed integer form, then relaxed by whole steps and scaled by
//!   `delta`; existential targets are wrapped in `becf`/`becp` so a dense
//!   witness instant may fall anywhere inside the step that observes it.
//! - [`under_approx`]: the strengthening map used on the left of a
//!   verification query. Requires `delta` admitted by the formula's
//!   granularity, and then divides windows exactly (coinciding with
//!   [`adapt_r`]).
//! - [`over_approx`]: the weakening counterpart: existential operators
//!   become their matching variants on a window shrunk by one step each
//!   side, universal windows grow by one step each side.
//!
//! Windows that come out (or go in) empty are kept verbatim; simplifying
//! them away is a semantic fact, not this module's business.

use crate::formula::Formula;
use crate::granularity;
use crate::interval::TimeInterval;
use crate::rat::Rat;

/// A rejected transformation request.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("sampling period must be positive, got {0}")]
    NonPositivePeriod(String),
    #[error("period {delta} is not admitted by the formula's granularity (it must evenly divide {max})")]
    NotAdmitted { delta: String, max: String },
}

fn require_positive(delta: &Rat) -> Result<(), TransformError> {
    if delta <= &crate::rat::rat_int(0) {
        return Err(TransformError::NonPositivePeriod(delta.to_string()));
    }
    Ok(())
}

fn require_admitted(f: &Formula, delta: &Rat) -> Result<(), TransformError> {
    require_positive(delta)?;
    if !granularity::in_d(f, delta) {
        let max = granularity::max_d(f)
            .map(|m| m.to_string())
            .unwrap_or_else(|| "any period".to_string());
        return Err(TransformError::NotAdmitted {
            delta: delta.to_string(),
            max,
        });
    }
    Ok(())
}

/// Applies `wf` to every existential window and `wg` to every universal
/// window, recursing through the whole formula.
fn map_windows(
    f: &Formula,
    wf: &impl Fn(&TimeInterval, bool) -> TimeInterval,
    wg: &impl Fn(&TimeInterval) -> TimeInterval,
) -> Formula {
    match f {
        Formula::Prop(_) | Formula::NegProp(_) => f.clone(),
        Formula::And(a, b) => Formula::and(map_windows(a, wf, wg), map_windows(b, wf, wg)),
        Formula::Or(a, b) => Formula::or(map_windows(a, wf, wg), map_windows(b, wf, wg)),
        Formula::Until {
            win,
            matching,
            lhs,
            rhs,
        } => Formula::Until {
            win: wf(win, *matching),
            matching: *matching,
            lhs: Box::new(map_windows(lhs, wf, wg)),
            rhs: Box::new(map_windows(rhs, wf, wg)),
        },
        Formula::Since {
            win,
            matching,
            lhs,
            rhs,
        } => Formula::Since {
            win: wf(win, *matching),
            matching: *matching,
            lhs: Box::new(map_windows(lhs, wf, wg)),
            rhs: Box::new(map_windows(rhs, wf, wg)),
        },
        Formula::Release { win, lhs, rhs } => Formula::Release {
            win: wg(win),
            lhs: Box::new(map_windows(lhs, wf, wg)),
            rhs: Box::new(map_windows(rhs, wf, wg)),
        },
        Formula::Trigger { win, lhs, rhs } => Formula::Trigger {
            win: wg(win),
            lhs: Box::new(map_windows(lhs, wf, wg)),
            rhs: Box::new(map_windows(rhs, wf, wg)),
        },
        Formula::Becf(g) => Formula::Becf(Box::new(map_windows(g, wf, wg))),
        Formula::Becp(g) => Formula::Becp(Box::new(map_windows(g, wf, wg))),
    }
}

/// The rewrite shared by [`adapt_r`] and [`under_approx`]: existential
/// windows round outward to closed form; universal windows round each
/// endpoint toward the side an open endpoint excludes, then normalize to
/// the closed integer form. Universal operators additionally weaken their
/// witness argument by the escape argument (skipped when the escape
/// argument is the falsity constant, where it would change nothing).
fn adapt_r_windows(f: &Formula, delta: &Rat) -> Formula {
    let ex = |w: &TimeInterval| {
        TimeInterval::new(
            w.lo().div_pos(delta).floor(),
            true,
            w.hi().div_pos(delta).ceil(),
            true,
        )
        .normalize_z()
    };
    let un = |w: &TimeInterval| {
        let lo = if w.lo_closed() {
            w.lo().div_pos(delta).ceil()
        } else {
            w.lo().div_pos(delta).floor()
        };
        let hi = if w.hi_closed() {
            w.hi().div_pos(delta).floor()
        } else {
            w.hi().div_pos(delta).ceil()
        };
        TimeInterval::new(lo, w.lo_closed(), hi, w.hi_closed()).normalize_z()
    };
    let weaken = |lhs: Formula, rhs: Formula| {
        let rhs = if lhs.is_bot() {
            rhs
        } else {
            Formula::or(rhs, lhs.clone())
        };
        (Box::new(lhs), Box::new(rhs))
    };
    match f {
        Formula::Prop(_) | Formula::NegProp(_) => f.clone(),
        Formula::And(a, b) => Formula::and(
            adapt_r_windows(a, delta),
            adapt_r_windows(b, delta),
        ),
        Formula::Or(a, b) => Formula::or(
            adapt_r_windows(a, delta),
            adapt_r_windows(b, delta),
        ),
        Formula::Until {
            win,
            matching,
            lhs,
            rhs,
        } => Formula::Until {
            win: ex(win),
            matching: *matching,
            lhs: Box::new(adapt_r_windows(lhs, delta)),
            rhs: Box::new(adapt_r_windows(rhs, delta)),
        },
        Formula::Since {
            win,
            matching,
            lhs,
            rhs,
        } => Formula::Since {
            win: ex(win),
            matching: *matching,
            lhs: Box::new(adapt_r_windows(lhs, delta)),
            rhs: Box::new(adapt_r_windows(rhs, delta)),
        },
        Formula::Release { win, lhs, rhs } => {
            let (lhs, rhs) = weaken(
                adapt_r_windows(lhs, delta),
                adapt_r_windows(rhs, delta),
            );
            Formula::Release {
                win: un(win),
                lhs,
                rhs,
            }
        }
        Formula::Trigger { win, lhs, rhs } => {
            let (lhs, rhs) = weaken(
                adapt_r_windows(lhs, delta),
                adapt_r_windows(rhs, delta),
            );
            Formula::Trigger {
                win: un(win),
                lhs,
                rhs,
            }
        }
        Formula::Becf(g) => Formula::Becf(Box::new(adapt_r_windows(g, delta))),
        Formula::Becp(g) => Formula::Becp(Box::new(adapt_r_windows(g, delta))),
    }
}

/// Dense-to-discrete adaptation: rewrites every window so the formula
/// quantifies over whole sampling steps. Works for any positive period.
pub fn adapt_r(f: &Formula, delta: &Rat) -> Result<Formula, TransformError> {
    require_positive(delta)?;
    Ok(adapt_r_windows(f, delta))
}

/// Discrete-to-dense adaptation: normalizes each window to closed integer
/// form, relaxes it by whole steps (two down / one up existentially with a
/// becoming-wrapped target, one step inward relaxed... see module doc),
/// and scales by the period.
pub fn adapt_z(f: &Formula, delta: &Rat) -> Result<Formula, TransformError> {
    require_positive(delta)?;
    Ok(adapt_z_rec(f, delta))
}

fn adapt_z_rec(f: &Formula, delta: &Rat) -> Formula {
    match f {
        Formula::Prop(_) | Formula::NegProp(_) => f.clone(),
        Formula::And(a, b) => Formula::and(adapt_z_rec(a, delta), adapt_z_rec(b, delta)),
        Formula::Or(a, b) => Formula::or(adapt_z_rec(a, delta), adapt_z_rec(b, delta)),
        Formula::Until {
            win,
            matching,
            lhs,
            rhs,
        } => {
            let wz = win.normalize_z();
            let lhs = adapt_z_rec(lhs, delta);
            let rhs = adapt_z_rec(rhs, delta);
            if *matching {
                let w = TimeInterval::new(
                    wz.lo().add_int(-1).mul_pos(delta),
                    false,
                    wz.hi().add_int(1).mul_pos(delta),
                    false,
                );
                Formula::until_m(w, lhs, rhs)
            } else {
                let w = TimeInterval::new(
                    wz.lo().add_int(-2).mul_pos(delta),
                    false,
                    wz.hi().add_int(1).mul_pos(delta),
                    false,
                );
                Formula::until(w, lhs, Formula::becf(rhs))
            }
        }
        Formula::Since {
            win,
            matching,
            lhs,
            rhs,
        } => {
            let wz = win.normalize_z();
            let lhs = adapt_z_rec(lhs, delta);
            let rhs = adapt_z_rec(rhs, delta);
            if *matching {
                let w = TimeInterval::new(
                    wz.lo().add_int(-1).mul_pos(delta),
                    false,
                    wz.hi().add_int(1).mul_pos(delta),
                    false,
                );
                Formula::since_m(w, lhs, rhs)
            } else {
                let w = TimeInterval::new(
                    wz.lo().add_int(-2).mul_pos(delta),
                    false,
                    wz.hi().add_int(1).mul_pos(delta),
                    false,
                );
                Formula::since(w, lhs, Formula::becp(rhs))
            }
        }
        Formula::Release { win, lhs, rhs } => {
            let wz = win.normalize_z();
            let w = TimeInterval::new(
                wz.lo().add_int(1).mul_pos(delta),
                true,
                wz.hi().add_int(-1).mul_pos(delta),
                true,
            );
            Formula::release(w, adapt_z_rec(lhs, delta), adapt_z_rec(rhs, delta))
        }
        Formula::Trigger { win, lhs, rhs } => {
            let wz = win.normalize_z();
            let w = TimeInterval::new(
                wz.lo().add_int(1).mul_pos(delta),
                true,
                wz.hi().add_int(-1).mul_pos(delta),
                true,
            );
            Formula::trigger(w, adapt_z_rec(lhs, delta), adapt_z_rec(rhs, delta))
        }
        Formula::Becf(g) => Formula::Becf(Box::new(adapt_z_rec(g, delta))),
        Formula::Becp(g) => Formula::Becp(Box::new(adapt_z_rec(g, delta))),
    }
}

/// The strengthening approximation: defined exactly when the period is
/// admitted by the formula's granularity, where it divides every window
/// through by the period (agreeing with [`adapt_r`] on such periods).
pub fn under_approx(f: &Formula, delta: &Rat) -> Result<Formula, TransformError> {
    require_admitted(f, delta)?;
    Ok(adapt_r_windows(f, delta))
}

/// The weakening approximation: defined exactly when the period is
/// admitted. Existential operators become matching variants on a window
/// shrunk by one step per side; universal windows grow by one step per
/// side. Windows that come out empty are kept as written.
pub fn over_approx(f: &Formula, delta: &Rat) -> Result<Formula, TransformError> {
    require_admitted(f, delta)?;
    let ex = |w: &TimeInterval, _matching: bool| {
        TimeInterval::new(
            w.lo().div_pos(delta).add_int(1),
            true,
            w.hi().div_pos(delta).add_int(-1),
            true,
        )
    };
    let un = |w: &TimeInterval| {
        TimeInterval::new(
            w.lo().div_pos(delta).add_int(-1),
            true,
            w.hi().div_pos(delta).add_int(1),
            true,
        )
    };
    let mapped = map_windows(f, &ex, &un);
    Ok(force_matching(&mapped))
}

/// Turns every plain `until`/`since` into its matching variant (the
/// weakening map's output shape); matching operators stay as they are.
fn force_matching(f: &Formula) -> Formula {
    match f {
        Formula::Prop(_) | Formula::NegProp(_) => f.clone(),
        Formula::And(a, b) => Formula::and(force_matching(a), force_matching(b)),
        Formula::Or(a, b) => Formula::or(force_matching(a), force_matching(b)),
        Formula::Until { win, lhs, rhs, .. } => Formula::Until {
            win: win.clone(),
            matching: true,
            lhs: Box::new(force_matching(lhs)),
            rhs: Box::new(force_matching(rhs)),
        },
        Formula::Since { win, lhs, rhs, .. } => Formula::Since {
            win: win.clone(),
            matching: true,
            lhs: Box::new(force_matching(lhs)),
            rhs: Box::new(force_matching(rhs)),
        },
        Formula::Release { win, lhs, rhs } => Formula::release(
            win.clone(),
            force_matching(lhs),
            force_matching(rhs),
        ),
        Formula::Trigger { win, lhs, rhs } => Formula::trigger(
            win.clone(),
            force_matching(lhs),
            force_matching(rhs),
        ),
        Formula::Becf(g) => Formula::Becf(Box::new(force_matching(g))),
        Formula::Becp(g) => Formula::Becp(Box::new(force_matching(g))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use crate::syntax::parse_formula;

    fn pf(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn dense_to_discrete_universal_rounds_inward() {
        let f = pf("G[0,2](p)");
        let got = adapt_r(&f, &rat(3, 10)).unwrap();
        assert_eq!(got, pf("G[0,6](p)"));
        // Identity on already-integral windows at period 1.
        let b = pf("GP[1,inf)(!p) & G[1,inf)(p)");
        assert_eq!(adapt_r(&b, &rat_int(1)).unwrap(), b);
        // At period 1/2 the same windows double.
        assert_eq!(
            adapt_r(&b, &rat(1, 2)).unwrap(),
            pf("GP[2,inf)(!p) & G[2,inf)(p)")
        );
    }

    #[test]
    fn dense_to_discrete_open_universal_endpoints_exclude_their_step() {
        // (3,inf): the step at 3 is excluded, so the closed form starts at 4.
        let f = pf("G(3,inf)(p)");
        assert_eq!(adapt_r(&f, &rat_int(1)).unwrap(), pf("G[4,inf)(p)"));
        // (3.5, inf) at period 1: first whole step inside is 4.
        let g = Formula::alw_i(
            TimeInterval::new(
                crate::interval::Bound::fin(rat(7, 2)),
                false,
                crate::interval::Bound::PosInf,
                false,
            ),
            Formula::var("p"),
        );
        assert_eq!(adapt_r(&g, &rat_int(1)).unwrap(), pf("G[4,inf)(p)"));
    }

    #[test]
    fn dense_to_discrete_existential_rounds_outward() {
        let f = pf("F(0,2)(p)");
        // (0,2)/1 floors/ceils outward to [0,2].
        assert_eq!(adapt_r(&f, &rat_int(1)).unwrap(), pf("F[0,2](p)"));
        let g = pf("U[1/3,5/3](p,q)");
        assert_eq!(adapt_r(&g, &rat_int(1)).unwrap(), pf("U[0,2](p,q)"));
        // Negative endpoints floor toward minus infinity.
        let h = pf("U[-5/3,-1/3](p,q)");
        assert_eq!(adapt_r(&h, &rat_int(1)).unwrap(), pf("U[-2,0](p,q)"));
    }

    #[test]
    fn dense_to_discrete_universal_weakens_witness_by_escape() {
        // The escape argument also counts as a witness at the quantified
        // step itself.
        let f = pf("R(3/2,2](!p,q)");
        assert_eq!(adapt_r(&f, &rat(1, 4)).unwrap(), pf("R[7,8](!p,q | !p)"));
        let t = pf("T[1,2](p,q)");
        assert_eq!(adapt_r(&t, &rat_int(1)).unwrap(), pf("T[1,2](p,q | p)"));
        // A false escape argument adds nothing, keeping plain `always`
        // forms unchanged in shape.
        let g = pf("G[0,2](p)");
        assert_eq!(adapt_r(&g, &rat(1, 2)).unwrap(), pf("G[0,4](p)"));
    }

    #[test]
    fn dense_to_discrete_covers_escapes_ending_between_steps() {
        // A sampled behavior whose escape run ends strictly between two
        // steps, after the last step below the witness instant: the only
        // step that still sees the escape is the witness step itself, so
        // the plain-window rewrite alone would fail on the sampling while
        // the dense formula holds everywhere.
        use crate::behavior::SamplingParams;
        use crate::semantics::{globally_sat_dense, globally_sat_discrete};
        use crate::syntax::parse_dense_behavior;

        let b = parse_dense_behavior(
            "alphabet p q\n\
             lefttail {p}\n\
             seg (5/2,93/32] {q}\n\
             seg (93/32,105/32] {p}\n\
             seg (105/32,15/4] {p q}\n\
             righttail {q}\n",
        )
        .unwrap();
        let delta = rat(1, 4);
        assert!(b.is_non_berkeley(&delta));
        let f = pf("R(3/2,2](!p,p & !q) | q");
        assert!(globally_sat_dense(&f, &b));

        let adapted = adapt_r(&f, &delta).unwrap();
        let sample = b.sample(&SamplingParams::new(delta.clone(), rat_int(0)).unwrap());
        assert!(globally_sat_discrete(&adapted, &sample));

        // Dropping the weakening demonstrates why it is needed: the
        // witness-step escape at step 11 is invisible to a strict prefix.
        let unweakened = pf("R[7,8](!p,p & !q) | q");
        assert!(!globally_sat_discrete(&unweakened, &sample));
    }

    #[test]
    fn discrete_to_dense_universal_shrinks_and_scales() {
        let f = pf("q -> G[2,5](p)");
        assert_eq!(adapt_z(&f, &rat_int(1)).unwrap(), pf("q -> G[3,4](p)"));
        assert_eq!(
            adapt_z(&f, &rat(1, 2)).unwrap(),
            pf("q -> G[3/2,2](p)")
        );
        // Infinite ends absorb the shift.
        let g = pf("G(p)");
        assert_eq!(
            adapt_z(&g, &rat(1, 2)).unwrap(),
            pf("G[1/2,inf)(p)")
        );
    }

    #[test]
    fn discrete_to_dense_existential_relaxes_with_becoming() {
        let f = pf("U[0,3](p,q)");
        let got = adapt_z(&f, &rat(1, 2)).unwrap();
        assert_eq!(got, pf("U(-1,2)(p,becf(q))"));
        let s = pf("S[0,3](p,q)");
        assert_eq!(adapt_z(&s, &rat(1, 2)).unwrap(), pf("S(-1,2)(p,becp(q))"));
        // The matching variant keeps its target and shifts less on the low
        // side.
        let um = pf("UM[0,3](p,q)");
        assert_eq!(adapt_z(&um, &rat(1, 2)).unwrap(), pf("UM(-1/2,2)(p,q)"));
        // Input windows are normalized first: (0,2) over the integers is
        // [1,1].
        let open = pf("U(0,2)(p,q)");
        assert_eq!(
            adapt_z(&open, &rat_int(1)).unwrap(),
            pf("U(-1,2)(p,becf(q))")
        );
    }

    #[test]
    fn discrete_to_dense_applies_empty_windows_literally() {
        // (0,1) holds no integer; the rewrite still applies to its closed
        // form [1,0], producing a non-empty dense window.
        let f = pf("U(0,1)(p,q)");
        assert_eq!(
            adapt_z(&f, &rat_int(1)).unwrap(),
            pf("U(-1,1)(p,becf(q))")
        );
    }

    #[test]
    fn strengthening_requires_an_admitted_period() {
        let f = pf("G[0,2](p)");
        assert!(matches!(
            under_approx(&f, &rat(3, 10)),
            Err(TransformError::NotAdmitted { .. })
        ));
        assert_eq!(under_approx(&f, &rat(1, 2)).unwrap(), pf("G[0,4](p)"));
        assert_eq!(under_approx(&f, &rat_int(1)).unwrap(), pf("G[0,2](p)"));
        // A window-free formula admits every period.
        assert_eq!(under_approx(&pf("p & !q"), &rat(7, 3)).unwrap(), pf("p & !q"));
        assert!(matches!(
            under_approx(&f, &rat_int(0)),
            Err(TransformError::NonPositivePeriod(_))
        ));
    }

    #[test]
    fn weakening_shifts_windows_by_one_step() {
        let f = pf("G[1,1](p)");
        assert_eq!(over_approx(&f, &rat_int(1)).unwrap(), pf("G[0,2](p)"));
        let g = pf("F[0,2](p)");
        assert_eq!(over_approx(&g, &rat_int(1)).unwrap(), pf("UM[1,1](true,p)"));
        let u = pf("U[0,4](p,q)");
        assert_eq!(over_approx(&u, &rat(1, 2)).unwrap(), pf("UM[1,7](p,q)"));
        // Unbounded sides stay unbounded.
        let h = pf("F[1,inf)(p)");
        assert_eq!(over_approx(&h, &rat_int(1)).unwrap(), pf("UM[2,inf)(true,p)"));
    }

    #[test]
    fn weakening_keeps_empty_outputs_verbatim() {
        let f = pf("F[0,0](p)");
        let got = over_approx(&f, &rat_int(1)).unwrap();
        match &got {
            Formula::Until {
                win,
                matching: true,
                ..
            } => {
                assert!(win.is_empty());
            }
            other => panic!("unexpected shape {other:?}"),
        }
        // An empty existential window is unsatisfiable; the weakening of an
        // instantaneous obligation really is `false` on the integers.
        let d = crate::behavior::DiscreteBehavior::constant(
            [crate::formula::Letter::new("p").unwrap()].into(),
            [crate::formula::Letter::new("p").unwrap()].into(),
        );
        assert!(!crate::semantics::eval_discrete(&got, &d, 0));
    }

    #[test]
    fn propositional_structure_is_untouched() {
        let f = pf("p & (!q | r)");
        for delta in [rat_int(1), rat(1, 2), rat(7, 3)] {
            assert_eq!(adapt_r(&f, &delta).unwrap(), f);
            assert_eq!(adapt_z(&f, &delta).unwrap(), f);
            assert_eq!(under_approx(&f, &delta).unwrap(), f);
            assert_eq!(over_approx(&f, &delta).unwrap(), f);
        }
    }
}
