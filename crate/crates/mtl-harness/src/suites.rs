//! Named check suites over randomized instances.
//!
//! Each suite generates instances in parallel (deterministically: instance
//! `i` of a suite depends only on the configured seed, the suite, and `i`),
//! optionally filters them down to those where the property under test
//! applies, and records one violation string per failed check. A suite whose
//! filter keeps fewer than [`MIN_KEPT`] instances reports itself as
//! underpowered rather than passing vacuously.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use mtl::behavior::{dense_completions, CompletionStrategy};
use mtl::rat::{rat, rat_int};
use mtl::semantics::{
    check_shiftable_on, eval_dense, globally_sat_dense, globally_sat_discrete, sat_seq, sat_set,
};
use mtl::syntax::{parse_formula, print_dense_behavior, print_discrete_behavior};
use mtl::transform::{adapt_r, adapt_z, over_approx, under_approx};
use mtl::verify::{build_models, mtl_verify, z_valid, Outcome, Qualifier, SystemSpec, ZValidResult};
use mtl::{
    DenseBehavior, Formula, Letter, Piece, Rat, SamplingParams, TimeInterval,
};
use rand::Rng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::gen::{
    gen_dense, gen_discrete, gen_flat_formula, gen_formula, gen_non_berkeley, gen_propositional,
    gen_time, gen_windowless, instance_rng, letters, scale_windows, EndpointKind,
};
use crate::oracle::DenseOracle;
use crate::GenConfig;

/// Below this many kept instances a filtered suite is reported as
/// underpowered instead of passing.
pub const MIN_KEPT: usize = 50;

/// The available suites. `FromStr` accepts the lowercase name shown by
/// `as_str`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    /// Dense global models survive sampling: slow behaviors satisfying a
    /// flat formula everywhere also satisfy its window adaptation at every
    /// sampling origin.
    Cus,
    /// Discrete global models survive completion: discrete models of a flat
    /// integer-endpoint formula complete to dense models of its adaptation.
    Cuis,
    /// On slow behaviors, maximal runs of a propositional formula last at
    /// least one period, and at the end of a run the formula either stays
    /// false for a period or holds forever.
    Lemma28,
    /// Windowless formulas have slowly-varying truth on slow behaviors; a
    /// known windowed counterexample does not.
    Shiftability,
    /// The tight under-approximation agrees with the window adaptation on
    /// admitted periods and is satisfied by samples of dense models.
    Under,
    /// Discrete models of the over-approximation complete to dense models
    /// of the original formula.
    Over,
    /// Fixed relaxation identities: the over-approximated latch property
    /// collapses to constancy, and the over-approximated punctual response
    /// collapses to plain negation.
    Table3,
    /// The reference unverifiable instance: both search directions are
    /// inconclusive at every bound, deterministically.
    Example44,
    /// The repaired instance verifies at two different periods.
    Example45,
    /// Library evaluation agrees with the independent region-grid reference
    /// evaluator on random formula/behavior/instant triples.
    Oracle,
    /// Negation complements satisfaction sets exactly, in both time models.
    Complement,
}

impl SuiteName {
    pub fn all() -> [SuiteName; 11] {
        [
            SuiteName::Cus,
            SuiteName::Cuis,
            SuiteName::Lemma28,
            SuiteName::Shiftability,
            SuiteName::Under,
            SuiteName::Over,
            SuiteName::Table3,
            SuiteName::Example44,
            SuiteName::Example45,
            SuiteName::Oracle,
            SuiteName::Complement,
        ]
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Cus => "cus",
            SuiteName::Cuis => "cuis",
            SuiteName::Lemma28 => "lemma28",
            SuiteName::Shiftability => "shiftability",
            SuiteName::Under => "under",
            SuiteName::Over => "over",
            SuiteName::Table3 => "table3",
            SuiteName::Example44 => "example44",
            SuiteName::Example45 => "example45",
            SuiteName::Oracle => "oracle",
            SuiteName::Complement => "complement",
        }
    }

    fn tag(&self) -> u64 {
        match self {
            SuiteName::Cus => 1,
            SuiteName::Cuis => 2,
            SuiteName::Lemma28 => 3,
            SuiteName::Shiftability => 4,
            SuiteName::Under => 5,
            SuiteName::Over => 6,
            SuiteName::Table3 => 7,
            SuiteName::Example44 => 8,
            SuiteName::Example45 => 9,
            SuiteName::Oracle => 10,
            SuiteName::Complement => 11,
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> Result<SuiteName, String> {
        SuiteName::all()
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = SuiteName::all().iter().map(|n| n.as_str()).collect();
                format!("unknown suite `{}`; expected one of: {}", s, names.join(", "))
            })
    }
}

/// Result of one suite run. `violations` is empty on success; `notes` carry
/// informational output (verdicts, filter rates, exercised-case counts).
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    /// Instances generated.
    pub attempted: usize,
    /// Instances surviving the suite's applicability filter (equal to
    /// `attempted` for unfiltered suites).
    pub kept: usize,
    /// Individual assertions evaluated.
    pub checks: usize,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
    /// True when a filtered suite kept too few instances to be meaningful.
    pub underpowered: bool,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && !self.underpowered
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            out,
            "suite {}: seed {}, attempted {}, kept {}, checks {} — {}",
            self.name,
            self.seed,
            self.attempted,
            self.kept,
            self.checks,
            if self.passed() {
                "pass"
            } else if self.violations.is_empty() {
                "UNDERPOWERED"
            } else {
                "FAIL"
            }
        )?;
        for n in &self.notes {
            writeln!(out, "  note: {}", n)?;
        }
        for v in self.violations.iter().take(8) {
            writeln!(out, "  violation: {}", v)?;
        }
        if self.violations.len() > 8 {
            writeln!(out, "  … and {} more violations", self.violations.len() - 8)?;
        }
        Ok(())
    }
}

/// Per-instance outcome, merged deterministically by the driver.
#[derive(Clone, Debug, Default)]
struct InstanceResult {
    kept: bool,
    checks: usize,
    violations: Vec<String>,
    /// Suite-specific counters (e.g. completions exercised), summed.
    aux: [usize; 2],
}

impl InstanceResult {
    fn skipped() -> InstanceResult {
        InstanceResult::default()
    }

    fn kept() -> InstanceResult {
        InstanceResult {
            kept: true,
            ..InstanceResult::default()
        }
    }

    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(message());
        }
    }
}

/// Runs `per` for each instance index in parallel and merges the results in
/// index order. Returns the report plus the summed suite-specific counters.
fn drive<F>(cfg: &GenConfig, name: SuiteName, attempts: usize, per: F) -> (SuiteReport, [usize; 2])
where
    F: Fn(usize, &mut ChaCha20Rng) -> InstanceResult + Sync,
{
    let results: Vec<InstanceResult> = (0..attempts)
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(cfg.seed, name.tag(), i as u64);
            per(i, &mut rng)
        })
        .collect();
    let mut aux = [0usize; 2];
    let mut report = SuiteReport {
        name: name.to_string(),
        seed: cfg.seed,
        attempted: attempts,
        kept: 0,
        checks: 0,
        violations: Vec::new(),
        notes: Vec::new(),
        underpowered: false,
    };
    for r in results {
        report.kept += r.kept as usize;
        report.checks += r.checks;
        report.violations.extend(r.violations);
        aux[0] += r.aux[0];
        aux[1] += r.aux[1];
    }
    (report, aux)
}

fn mark_filtered(report: &mut SuiteReport) {
    report.notes.insert(
        0,
        format!(
            "filter kept {} of {} generated instances",
            report.kept, report.attempted
        ),
    );
    if report.kept < MIN_KEPT {
        report.underpowered = true;
        report.notes.push(format!(
            "fewer than {} instances survived the filter; the run is underpowered, not a pass",
            MIN_KEPT
        ));
    }
}

fn pick_delta(cfg: &GenConfig, rng: &mut ChaCha20Rng) -> Rat {
    cfg.delta_pool[rng.gen_range(0..cfg.delta_pool.len())].clone()
}

fn gen_alphabet(cfg: &GenConfig) -> BTreeSet<Letter> {
    letters(cfg.alphabet_size).into_iter().collect()
}

fn parse_fixed(src: &str) -> Formula {
    parse_formula(src).expect("fixed formula source is well-formed")
}

/// Runs the named suite under `cfg`.
pub fn run_suite(name: SuiteName, cfg: &GenConfig) -> SuiteReport {
    if let Err(e) = cfg.validate() {
        return SuiteReport {
            name: name.to_string(),
            seed: cfg.seed,
            attempted: 0,
            kept: 0,
            checks: 0,
            violations: vec![format!("invalid configuration: {}", e)],
            notes: Vec::new(),
            underpowered: false,
        };
    }
    match name {
        SuiteName::Cus => suite_cus(cfg),
        SuiteName::Cuis => suite_cuis(cfg),
        SuiteName::Lemma28 => suite_lemma28(cfg),
        SuiteName::Shiftability => suite_shiftability(cfg),
        SuiteName::Under => suite_under(cfg),
        SuiteName::Over => suite_over(cfg),
        SuiteName::Table3 => suite_table3(cfg),
        SuiteName::Example44 => suite_example44(cfg),
        SuiteName::Example45 => suite_example45(cfg),
        SuiteName::Oracle => suite_oracle(cfg),
        SuiteName::Complement => suite_complement(cfg),
    }
}

/// Runs every suite, in declaration order.
pub fn run_all(cfg: &GenConfig) -> Vec<SuiteReport> {
    SuiteName::all()
        .into_iter()
        .map(|n| run_suite(n, cfg))
        .collect()
}

// ---------------------------------------------------------------------------
// Sampling-direction suites
// ---------------------------------------------------------------------------

fn suite_cus(cfg: &GenConfig) -> SuiteReport {
    let (mut report, _) = drive(cfg, SuiteName::Cus, cfg.instances * 12, |i, rng| {
        let delta = pick_delta(cfg, rng);
        let f = gen_flat_formula(rng, cfg, EndpointKind::Dense);
        let b = gen_non_berkeley(rng, &gen_alphabet(cfg), &delta, cfg.max_segments);
        if !globally_sat_dense(&f, &b) {
            return InstanceResult::skipped();
        }
        let mut res = InstanceResult::kept();
        let g = match adapt_r(&f, &delta) {
            Ok(g) => g,
            Err(e) => {
                res.check(false, || format!("[{}] window adaptation failed: {}", i, e));
                return res;
            }
        };
        for _ in 0..3 {
            let z = &delta * rat(rng.gen_range(0..8), 8);
            let params = SamplingParams::new(delta.clone(), z.clone())
                .expect("periods from the pool are positive");
            let d = b.sample(&params);
            res.check(globally_sat_discrete(&g, &d), || {
                format!(
                    "[{}] {} holds globally on {} but {} fails on its sample (period {}, origin {}): {}",
                    i,
                    f,
                    print_dense_behavior(&b),
                    g,
                    delta,
                    z,
                    print_discrete_behavior(&d),
                )
            });
        }
        res
    });
    mark_filtered(&mut report);
    report
}

fn suite_cuis(cfg: &GenConfig) -> SuiteReport {
    let (mut report, aux) = drive(cfg, SuiteName::Cuis, cfg.instances * 12, |i, rng| {
        let delta = pick_delta(cfg, rng);
        let f = gen_flat_formula(rng, cfg, EndpointKind::Discrete);
        let d = gen_discrete(rng, &gen_alphabet(cfg), cfg.max_segments);
        if !globally_sat_discrete(&f, &d) {
            return InstanceResult::skipped();
        }
        let mut res = InstanceResult::kept();
        let g = match adapt_z(&f, &delta) {
            Ok(g) => g,
            Err(e) => {
                res.check(false, || format!("[{}] window adaptation failed: {}", i, e));
                return res;
            }
        };
        let params = SamplingParams::new(delta.clone(), rat_int(0)).expect("positive period");
        let mut comps = dense_completions(
            &d,
            &params,
            CompletionStrategy::Aligned,
            2,
            cfg.seed ^ i as u64,
        );
        comps.extend(dense_completions(
            &d,
            &params,
            CompletionStrategy::Jittered,
            2,
            cfg.seed ^ i as u64 ^ 0xA5A5,
        ));
        res.aux[0] = comps.len();
        res.aux[1] = comps.is_empty() as usize;
        for b in comps {
            res.check(b.sample(&params) == d, || {
                format!(
                    "[{}] completion {} does not sample back to {}",
                    i,
                    print_dense_behavior(&b),
                    print_discrete_behavior(&d)
                )
            });
            res.check(globally_sat_dense(&g, &b), || {
                format!(
                    "[{}] {} holds globally on {} but {} fails on its completion {} (period {})",
                    i,
                    f,
                    print_discrete_behavior(&d),
                    g,
                    print_dense_behavior(&b),
                    delta,
                )
            });
        }
        res
    });
    report.notes.push(format!(
        "{} completions exercised; {} kept instances admitted none",
        aux[0], aux[1]
    ));
    mark_filtered(&mut report);
    report
}

// ---------------------------------------------------------------------------
// Structural suites on slow behaviors
// ---------------------------------------------------------------------------

fn suite_lemma28(cfg: &GenConfig) -> SuiteReport {
    let (mut report, _) = drive(cfg, SuiteName::Lemma28, cfg.instances * 12, |i, rng| {
        let delta = pick_delta(cfg, rng);
        let ls = letters(cfg.alphabet_size);
        let b = gen_non_berkeley(rng, &gen_alphabet(cfg), &delta, cfg.max_segments);
        let pi = gen_propositional(rng, &ls, 3);
        let t = gen_time(rng, &b, &delta);
        if !eval_dense(&pi, &b, &t) {
            return InstanceResult::skipped();
        }
        let mut res = InstanceResult::kept();
        let sat = sat_set(&pi, &b);
        let run = sat.intervals().iter().find(|iv| iv.contains(&t)).cloned();
        let run = match run {
            Some(run) => run,
            None => {
                res.check(false, || {
                    format!(
                        "[{}] {} holds at {} on {} but no satisfaction interval contains it",
                        i,
                        pi,
                        t,
                        print_dense_behavior(&b)
                    )
                });
                return res;
            }
        };
        if let (Some(lo), Some(hi)) = (run.lo().as_rat(), run.hi().as_rat()) {
            let len = hi - lo;
            res.check(
                len > delta || (len == delta && run.lo_closed() && run.hi_closed()),
                || {
                    format!(
                        "[{}] maximal run {} of {} on {} is shorter than the period {}",
                        i,
                        run,
                        pi,
                        print_dense_behavior(&b),
                        delta
                    )
                },
            );
        }
        // At the right edge of the run (or anywhere inside an unbounded
        // one), the formula either stays false throughout the next period
        // or holds from here on out.
        let probe = match run.hi().as_rat() {
            Some(hi) => hi.clone(),
            None => t.clone(),
        };
        let edge = Formula::or(
            Formula::alw_i(
                TimeInterval::open(rat_int(0), delta.clone()),
                pi.negate(),
            ),
            Formula::alw_i(TimeInterval::zero_to_inf(), pi.clone()),
        );
        res.check(eval_dense(&edge, &b, &probe), || {
            format!(
                "[{}] at the edge {} of a maximal run of {} on {}, neither a period of falsity nor permanent truth follows",
                i,
                probe,
                pi,
                print_dense_behavior(&b)
            )
        });
        res
    });
    mark_filtered(&mut report);
    report
}

fn suite_shiftability(cfg: &GenConfig) -> SuiteReport {
    let (mut report, _) = drive(cfg, SuiteName::Shiftability, cfg.instances, |i, rng| {
        let delta = pick_delta(cfg, rng);
        let f = gen_windowless(rng, &letters(cfg.alphabet_size), cfg.max_depth);
        let b = gen_non_berkeley(rng, &gen_alphabet(cfg), &delta, cfg.max_segments);
        let mut res = InstanceResult::kept();
        res.check(check_shiftable_on(&f, &b, &delta), || {
            format!(
                "[{}] windowless formula {} has fast-varying truth on the slow behavior {} (period {})",
                i,
                f,
                print_dense_behavior(&b),
                delta
            )
        });
        res
    });
    // A fixed windowed formula that genuinely is not shiftable: truth of
    // "p now and p in exactly one time unit" on a one-unit pulse of p is a
    // single instant.
    let p = Letter::new("p").expect("valid letter");
    let yes: BTreeSet<Letter> = [p.clone()].into();
    let no: BTreeSet<Letter> = BTreeSet::new();
    let pulse = DenseBehavior::from_pieces(
        yes.clone(),
        vec![
            Piece {
                interval: TimeInterval::new(
                    mtl::Bound::NegInf,
                    false,
                    mtl::Bound::fin(rat_int(1)),
                    false,
                ),
                value: no.clone(),
            },
            Piece {
                interval: TimeInterval::closed(rat_int(1), rat_int(2)),
                value: yes,
            },
            Piece {
                interval: TimeInterval::new(
                    mtl::Bound::fin(rat_int(2)),
                    false,
                    mtl::Bound::PosInf,
                    false,
                ),
                value: no,
            },
        ],
    )
    .expect("pulse pieces partition the line");
    let spike = Formula::and(
        Formula::prop(p.clone()),
        Formula::ev(TimeInterval::singleton(rat_int(1)), Formula::prop(p)),
    );
    report.checks += 1;
    if check_shiftable_on(&spike, &pulse, &rat_int(1)) {
        report.violations.push(format!(
            "windowed formula {} should have fast-varying truth on a one-unit pulse, but reports as slow",
            spike
        ));
    } else {
        report.notes.push(format!(
            "windowed counterexample confirmed: {} varies faster than the period on a one-unit pulse",
            spike
        ));
    }
    report
}

// ---------------------------------------------------------------------------
// Approximation suites
// ---------------------------------------------------------------------------

fn suite_under(cfg: &GenConfig) -> SuiteReport {
    let (mut report, _) = drive(cfg, SuiteName::Under, cfg.instances * 12, |i, rng| {
        let delta = pick_delta(cfg, rng);
        // Integer endpoints scaled by the period: every endpoint is a
        // multiple of the period, so the period is admitted.
        let f = scale_windows(
            &gen_flat_formula(rng, cfg, EndpointKind::Discrete),
            &delta,
        );
        let b = gen_non_berkeley(rng, &gen_alphabet(cfg), &delta, cfg.max_segments);
        if !globally_sat_dense(&f, &b) {
            return InstanceResult::skipped();
        }
        let mut res = InstanceResult::kept();
        let u = match under_approx(&f, &delta) {
            Ok(u) => u,
            Err(e) => {
                res.check(false, || {
                    format!(
                        "[{}] period {} should be admitted by {} but the approximation failed: {}",
                        i, delta, f, e
                    )
                });
                return res;
            }
        };
        res.check(
            adapt_r(&f, &delta).as_ref() == Ok(&u),
            || {
                format!(
                    "[{}] on an admitted period the tight approximation of {} should equal the window adaptation, got {}",
                    i, f, u
                )
            },
        );
        for _ in 0..2 {
            let z = &delta * rat(rng.gen_range(0..8), 8);
            let params =
                SamplingParams::new(delta.clone(), z.clone()).expect("positive period");
            let d = b.sample(&params);
            res.check(globally_sat_discrete(&u, &d), || {
                format!(
                    "[{}] {} holds globally on {} but its tight approximation {} fails on the sample (period {}, origin {})",
                    i,
                    f,
                    print_dense_behavior(&b),
                    u,
                    delta,
                    z
                )
            });
        }
        res
    });
    mark_filtered(&mut report);
    report
}

fn suite_over(cfg: &GenConfig) -> SuiteReport {
    let (mut report, aux) = drive(cfg, SuiteName::Over, cfg.instances * 12, |i, rng| {
        let delta = pick_delta(cfg, rng);
        let f = scale_windows(
            &gen_flat_formula(rng, cfg, EndpointKind::Discrete),
            &delta,
        );
        let o = match over_approx(&f, &delta) {
            Ok(o) => o,
            Err(e) => {
                let mut res = InstanceResult::kept();
                res.check(false, || {
                    format!(
                        "[{}] period {} should be admitted by {} but the approximation failed: {}",
                        i, delta, f, e
                    )
                });
                return res;
            }
        };
        let d = gen_discrete(rng, &gen_alphabet(cfg), cfg.max_segments);
        if !globally_sat_discrete(&o, &d) {
            return InstanceResult::skipped();
        }
        let mut res = InstanceResult::kept();
        let params = SamplingParams::new(delta.clone(), rat_int(0)).expect("positive period");
        let mut comps = dense_completions(
            &d,
            &params,
            CompletionStrategy::Aligned,
            2,
            cfg.seed ^ i as u64,
        );
        comps.extend(dense_completions(
            &d,
            &params,
            CompletionStrategy::Jittered,
            2,
            cfg.seed ^ i as u64 ^ 0x5A5A,
        ));
        res.aux[0] = comps.len();
        res.aux[1] = comps.is_empty() as usize;
        for b in comps {
            res.check(b.sample(&params) == d, || {
                format!(
                    "[{}] completion {} does not sample back to {}",
                    i,
                    print_dense_behavior(&b),
                    print_discrete_behavior(&d)
                )
            });
            res.check(globally_sat_dense(&f, &b), || {
                format!(
                    "[{}] discrete model {} of the relaxation {} completes to {} falsifying {} (period {})",
                    i,
                    print_discrete_behavior(&d),
                    o,
                    print_dense_behavior(&b),
                    f,
                    delta
                )
            });
            if let Ok(bridge) = adapt_z(&o, &delta) {
                res.check(globally_sat_dense(&bridge, &b), || {
                    format!(
                        "[{}] completion {} of a global discrete model of {} should satisfy its adaptation {}",
                        i,
                        print_dense_behavior(&b),
                        o,
                        bridge
                    )
                });
            }
        }
        res
    });
    report.notes.push(format!(
        "{} completions exercised; {} kept instances admitted none",
        aux[0], aux[1]
    ));
    mark_filtered(&mut report);
    report
}

fn suite_table3(cfg: &GenConfig) -> SuiteReport {
    let latch = parse_fixed("p -> G[0,inf)(p)");
    let punct = parse_fixed("p -> F[1,1](p)");
    let p = Letter::new("p").expect("valid letter");
    let constant = Formula::or(
        Formula::alw(Formula::prop(p.clone())),
        Formula::alw(Formula::nprop(p.clone())),
    );
    let not_p = Formula::nprop(p.clone());
    // Precompute the relaxations at each period 1/k.
    let mut rows = Vec::new();
    for k in 1..=3i64 {
        let delta = rat(1, k);
        let o_latch = over_approx(&latch, &delta).expect("integer endpoints admit 1/k");
        let o_punct = over_approx(&punct, &delta).expect("integer endpoints admit 1/k");
        rows.push((delta, o_latch, o_punct));
    }
    let alphabet: BTreeSet<Letter> = [p].into();
    let (mut report, _) = drive(cfg, SuiteName::Table3, 300, |i, rng| {
        let (delta, o_latch, o_punct) = &rows[i % rows.len()];
        let d = gen_discrete(rng, &alphabet, cfg.max_segments);
        let mut res = InstanceResult::kept();
        res.check(
            globally_sat_discrete(o_latch, &d) == globally_sat_discrete(&constant, &d),
            || {
                format!(
                    "[{}] at period {}, the relaxed latch {} and the constancy formula disagree globally on {}",
                    i,
                    delta,
                    o_latch,
                    print_discrete_behavior(&d)
                )
            },
        );
        res.check(sat_seq(o_punct, &d) == sat_seq(&not_p, &d), || {
            format!(
                "[{}] at period {}, the relaxed punctual response {} and plain negation disagree pointwise on {}",
                i,
                delta,
                o_punct,
                print_discrete_behavior(&d)
            )
        });
        res
    });
    for (delta, o_latch, o_punct) in &rows {
        report.notes.push(format!(
            "period {}: relaxed latch is {}, relaxed punctual response is {}",
            delta, o_latch, o_punct
        ));
    }
    report
}

// ---------------------------------------------------------------------------
// End-to-end verification suites
// ---------------------------------------------------------------------------

fn verification_spec(latch_bound: &str) -> SystemSpec {
    let sys = vec![
        parse_fixed("Som(p) & Som(!p)"),
        parse_fixed(&format!("p -> G[{},inf)(p)", latch_bound)),
    ];
    SystemSpec::new(sys, parse_fixed("p -> F[1,1](p)"))
        .expect("fixed formulas are flat")
}

fn suite_example44(cfg: &GenConfig) -> SuiteReport {
    let mut report = SuiteReport {
        name: SuiteName::Example44.to_string(),
        seed: cfg.seed,
        attempted: 1,
        kept: 1,
        checks: 0,
        violations: Vec::new(),
        notes: Vec::new(),
        underpowered: false,
    };
    let spec = verification_spec("0");
    let delta = rat_int(1);
    let models = match build_models(&spec, &delta) {
        Ok(m) => m,
        Err(e) => {
            report.checks += 1;
            report
                .violations
                .push(format!("model construction failed: {}", e));
            return report;
        }
    };
    let mut witnesses = Vec::new();
    for bound in [3usize, 5] {
        match mtl_verify(&spec, &delta, Some(bound)) {
            Ok(v) => {
                report.checks += 1;
                if v.outcome != Outcome::Fail || v.qualifier != Qualifier::ExhaustiveAtBound {
                    report.violations.push(format!(
                        "expected an inconclusive exhaustive verdict at bound {}, got {}",
                        bound, v
                    ));
                } else {
                    report.notes.push(format!("bound {}: {}", bound, v));
                }
            }
            Err(e) => {
                report.checks += 1;
                report
                    .violations
                    .push(format!("verification failed at bound {}: {}", bound, e));
            }
        }
        report.checks += 1;
        match z_valid(&models.over_model, spec.alphabet(), bound) {
            Ok(ZValidResult::FalsifiedBy { witness, at }) => {
                report.notes.push(format!(
                    "bound {}: strengthened implication falsified by {} at instant {}",
                    bound,
                    print_discrete_behavior(&witness),
                    at
                ));
                witnesses.push((witness, at));
            }
            Ok(ZValidResult::Valid { .. }) => report.violations.push(format!(
                "the strengthened implication should be falsifiable at bound {}",
                bound
            )),
            Err(e) => report
                .violations
                .push(format!("validity search failed at bound {}: {}", bound, e)),
        }
        report.checks += 1;
        match z_valid(&models.under_model, spec.alphabet(), bound) {
            Ok(ZValidResult::Valid { .. }) => {}
            Ok(ZValidResult::FalsifiedBy { witness, .. }) => report.violations.push(format!(
                "the weakened implication should be valid at bound {} but {} falsifies it",
                bound,
                print_discrete_behavior(&witness)
            )),
            Err(e) => report
                .violations
                .push(format!("validity search failed at bound {}: {}", bound, e)),
        }
    }
    // The first falsifier is deterministic and stable as the bound grows.
    report.checks += 1;
    if witnesses.len() == 2 && witnesses[0] != witnesses[1] {
        report.violations.push(format!(
            "the first falsifier changed between bounds: {} at {} vs {} at {}",
            print_discrete_behavior(&witnesses[0].0),
            witnesses[0].1,
            print_discrete_behavior(&witnesses[1].0),
            witnesses[1].1
        ));
    }
    report.checks += 1;
    match z_valid(&models.over_model, spec.alphabet(), 3) {
        Ok(rerun) => {
            if witnesses.first().map(|(w, a)| ZValidResult::FalsifiedBy {
                witness: w.clone(),
                at: *a,
            }) != Some(rerun)
            {
                report
                    .violations
                    .push("rerunning the search changed its result".to_string());
            }
        }
        Err(e) => report.violations.push(format!("rerun failed: {}", e)),
    }
    // With no explicit bound the default is derived from the model windows;
    // the verdict stays inconclusive.
    report.checks += 1;
    match mtl_verify(&spec, &delta, None) {
        Ok(v) => {
            if v.outcome != Outcome::Fail {
                report
                    .violations
                    .push(format!("expected an inconclusive default-bound verdict, got {}", v));
            } else {
                report.notes.push(format!("default bound: {}", v));
            }
        }
        Err(e) => report
            .violations
            .push(format!("default-bound verification failed: {}", e)),
    }
    report
}

fn suite_example45(cfg: &GenConfig) -> SuiteReport {
    let mut report = SuiteReport {
        name: SuiteName::Example45.to_string(),
        seed: cfg.seed,
        attempted: 2,
        kept: 2,
        checks: 0,
        violations: Vec::new(),
        notes: Vec::new(),
        underpowered: false,
    };
    let prop = parse_fixed("p -> G[1,1](p)");
    for (di, delta_src) in ["1", "1/2"].iter().enumerate() {
        let delta = mtl::rat::parse_rat(delta_src).expect("valid rational");
        let sys = vec![
            parse_fixed("Som(p) & Som(!p)"),
            parse_fixed(&format!("p -> G[{},inf)(p)", delta_src)),
        ];
        let spec = SystemSpec::new(sys.clone(), prop.clone()).expect("fixed formulas are flat");
        report.checks += 1;
        match mtl_verify(&spec, &delta, Some(5)) {
            Ok(v) => {
                if v.outcome != Outcome::Verified {
                    report.violations.push(format!(
                        "expected a positive verdict at period {}, got {}",
                        delta, v
                    ));
                } else {
                    report.notes.push(format!("period {}: {}", delta, v));
                }
            }
            Err(e) => report
                .violations
                .push(format!("verification failed at period {}: {}", delta, e)),
        }
        // A verified instance admits no slow dense counterexample: spot-check
        // random completions of random discrete behaviors.
        let alphabet: BTreeSet<Letter> = [Letter::new("p").expect("valid letter")].into();
        let params = SamplingParams::new(delta.clone(), rat_int(0)).expect("positive period");
        let mut hits = 0usize;
        for k in 0..25u64 {
            let mut rng = instance_rng(cfg.seed, SuiteName::Example45.tag(), di as u64 * 1000 + k);
            let d = gen_discrete(&mut rng, &alphabet, 4);
            let mut comps =
                dense_completions(&d, &params, CompletionStrategy::Aligned, 1, cfg.seed ^ k);
            comps.extend(dense_completions(
                &d,
                &params,
                CompletionStrategy::Jittered,
                1,
                cfg.seed ^ k ^ 0x3C3C,
            ));
            for b in comps {
                report.checks += 1;
                let sys_holds = sys.iter().all(|f| globally_sat_dense(f, &b));
                if sys_holds {
                    hits += 1;
                    if !globally_sat_dense(&prop, &b) {
                        report.violations.push(format!(
                            "dense counterexample to a verified instance at period {}: {}",
                            delta,
                            print_dense_behavior(&b)
                        ));
                    }
                }
            }
        }
        report.notes.push(format!(
            "period {}: {} sampled completions satisfied the whole system; none falsified the property",
            delta, hits
        ));
    }
    report
}

// ---------------------------------------------------------------------------
// Cross-validation suites
// ---------------------------------------------------------------------------

fn suite_oracle(cfg: &GenConfig) -> SuiteReport {
    let queries_per_pair = 5usize;
    let (mut report, _) = drive(cfg, SuiteName::Oracle, cfg.instances * 10, |i, rng| {
        let delta = pick_delta(cfg, rng);
        let f = gen_formula(rng, cfg, EndpointKind::Dense, cfg.max_depth);
        let b = gen_dense(rng, &gen_alphabet(cfg), cfg.max_segments);
        let mut oracle = DenseOracle::new(&f, &b);
        let mut res = InstanceResult::kept();
        for _ in 0..queries_per_pair {
            let t = gen_time(rng, &b, &delta);
            let lib = eval_dense(&f, &b, &t);
            let reference = oracle.eval_at(&t);
            res.check(lib == reference, || {
                format!(
                    "[{}] {} on {} at {}: library says {}, reference evaluator says {}",
                    i,
                    f,
                    print_dense_behavior(&b),
                    t,
                    lib,
                    reference
                )
            });
        }
        res
    });
    report.notes.insert(
        0,
        format!(
            "{} formula/behavior pairs, {} queries each",
            report.attempted, queries_per_pair
        ),
    );
    report
}

fn suite_complement(cfg: &GenConfig) -> SuiteReport {
    let (mut report, aux) = drive(cfg, SuiteName::Complement, cfg.instances * 5, |i, rng| {
        let mut res = InstanceResult::kept();
        if i % 2 == 0 {
            let f = gen_formula(rng, cfg, EndpointKind::Dense, cfg.max_depth);
            let b = gen_dense(rng, &gen_alphabet(cfg), cfg.max_segments);
            let neg = f.negate();
            res.aux[0] = 1;
            res.check(sat_set(&neg, &b) == sat_set(&f, &b).complement(), || {
                format!(
                    "[{}] negation of {} does not complement its satisfaction set on {}",
                    i,
                    f,
                    print_dense_behavior(&b)
                )
            });
            res.check(sat_set(&neg.negate(), &b) == sat_set(&f, &b), || {
                format!(
                    "[{}] double negation of {} changes its satisfaction set on {}",
                    i,
                    f,
                    print_dense_behavior(&b)
                )
            });
        } else {
            let kind = if i % 4 == 1 {
                EndpointKind::Discrete
            } else {
                EndpointKind::Dense
            };
            let f = gen_formula(rng, cfg, kind, cfg.max_depth);
            let d = gen_discrete(rng, &gen_alphabet(cfg), cfg.max_segments);
            let neg = f.negate();
            res.aux[1] = 1;
            res.check(sat_seq(&neg, &d) == sat_seq(&f, &d).not(), || {
                format!(
                    "[{}] negation of {} does not complement its satisfaction sequence on {}",
                    i,
                    f,
                    print_discrete_behavior(&d)
                )
            });
            res.check(sat_seq(&neg.negate(), &d) == sat_seq(&f, &d), || {
                format!(
                    "[{}] double negation of {} changes its satisfaction sequence on {}",
                    i,
                    f,
                    print_discrete_behavior(&d)
                )
            });
        }
        res
    });
    report.notes.push(format!(
        "{} dense and {} discrete instances",
        aux[0], aux[1]
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> GenConfig {
        GenConfig {
            instances: 24,
            ..GenConfig::default()
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for n in SuiteName::all() {
            assert_eq!(n.as_str().parse::<SuiteName>(), Ok(n));
        }
        assert!("bogus".parse::<SuiteName>().is_err());
    }

    #[test]
    fn reports_render_their_verdict() {
        let mut r = SuiteReport {
            name: "demo".to_string(),
            seed: 1,
            attempted: 10,
            kept: 10,
            checks: 20,
            violations: Vec::new(),
            notes: vec!["something".to_string()],
            underpowered: false,
        };
        assert!(r.passed());
        assert!(r.to_string().contains("pass"));
        r.violations.push("broken".to_string());
        assert!(!r.passed());
        assert!(r.to_string().contains("FAIL"));
        r.violations.clear();
        r.underpowered = true;
        assert!(!r.passed());
        assert!(r.to_string().contains("UNDERPOWERED"));
    }

    #[test]
    fn invalid_configs_are_rejected_not_run() {
        let cfg = GenConfig {
            alphabet_size: 9,
            ..GenConfig::default()
        };
        let r = run_suite(SuiteName::Cus, &cfg);
        assert!(!r.passed());
        assert_eq!(r.attempted, 0);
        assert!(r.violations[0].contains("invalid configuration"));
    }

    #[test]
    fn fixed_instance_suites_pass() {
        let cfg = small_cfg();
        let r44 = run_suite(SuiteName::Example44, &cfg);
        assert!(r44.passed(), "{}", r44);
        let r45 = run_suite(SuiteName::Example45, &cfg);
        assert!(r45.passed(), "{}", r45);
    }

    #[test]
    fn fixed_relaxation_suite_passes() {
        let r = run_suite(SuiteName::Table3, &small_cfg());
        assert!(r.passed(), "{}", r);
    }

    #[test]
    fn small_randomized_suites_pass() {
        for name in [
            SuiteName::Cus,
            SuiteName::Cuis,
            SuiteName::Lemma28,
            SuiteName::Shiftability,
            SuiteName::Under,
            SuiteName::Over,
            SuiteName::Complement,
        ] {
            let r = run_suite(name, &small_cfg());
            assert!(r.violations.is_empty(), "{}", r);
        }
    }

    #[test]
    fn small_oracle_suite_agrees() {
        let cfg = GenConfig {
            instances: 10,
            ..GenConfig::default()
        };
        let r = run_suite(SuiteName::Oracle, &cfg);
        assert!(r.passed(), "{}", r);
    }

    #[test]
    fn suite_runs_are_deterministic() {
        let cfg = small_cfg();
        let a = run_suite(SuiteName::Cus, &cfg);
        let b = run_suite(SuiteName::Cus, &cfg);
        assert_eq!(a.kept, b.kept);
        assert_eq!(a.checks, b.checks);
        assert_eq!(a.violations, b.violations);
    }
}
