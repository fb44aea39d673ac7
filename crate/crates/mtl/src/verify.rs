//! Verification of dense-time systems through discrete-time approximations.
//!
//! A [`SystemSpec`] pairs a list of flat system formulas with a flat property
//! formula, all with rational window endpoints. For a sampling period `δ`
//! admitted by every formula's granularity, [`build_models`] produces two
//! integer-endpoint implications:
//!
//! * the *over-model*: conjunction of always-closed under-approximations of
//!   the system formulas implies the always-closed over-approximation of the
//!   property;
//! * the *under-model*: conjunction of always-closed over-approximations of
//!   the system formulas implies the always-closed under-approximation of the
//!   property.
//!
//! If the over-model is valid over discrete time, every sufficiently slow
//! (non-Berkeley for `δ`) dense behavior satisfying all system formulas at
//! every instant also satisfies the property at every instant. If the
//! under-model is falsified by a discrete behavior, that behavior is a
//! genuine counterexample at the discrete level and witnesses that the dense
//! verification attempt must fail for this `δ`. [`mtl_verify`] combines the
//! two directions into a three-valued [`Verdict`].
//!
//! Discrete validity is decided by [`z_valid`], a bounded exhaustive search
//! over eventually-constant discrete behaviors: both tails range over all
//! subsets of the alphabet and the core ranges over all value tuples up to a
//! length bound. A `Valid` answer is therefore relative to the bound, while
//! a `FalsifiedBy` answer is definitive; [`Verdict`] records which kind of
//! answer it relied on in its [`Qualifier`].

use std::collections::BTreeSet;

use crate::behavior::DiscreteBehavior;
use crate::formula::{Formula, Letter};
use crate::rat::Rat;
use crate::semantics::sat_seq;
use crate::syntax::{self, ProblemFile};
use crate::transform::{self, TransformError};

/// A rejected verification request.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    /// A system or property formula nests a temporal operator inside a
    /// temporal argument; the verification pipeline handles flat formulas
    /// only.
    #[error("formula is not flat: temporal operator applied to temporal argument `{0}`")]
    NotFlat(String),
    /// A formula handed to the discrete validity search mentions a
    /// proposition missing from the enumeration alphabet; the search could
    /// silently treat it as constantly false, so it is rejected instead.
    #[error("proposition `{0}` does not appear in the search alphabet")]
    LetterOutsideAlphabet(String),
    /// The sampling period was rejected by an approximation map.
    #[error(transparent)]
    Transform(#[from] TransformError),
}

fn require_flat(f: &Formula) -> Result<(), VerifyError> {
    if f.is_flat() {
        return Ok(());
    }
    let witness = syntax::first_nested_temporal(f)
        .map(|g| g.to_string())
        .unwrap_or_default();
    Err(VerifyError::NotFlat(witness))
}

/// A verification problem: system assumptions and the property to establish,
/// all flat formulas with rational window endpoints.
///
/// The system is understood conjunctively and globally: a behavior models the
/// system when it satisfies every formula in `sys` at every time instant, and
/// verification asks whether every such behavior also satisfies `prop` at
/// every instant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    sys: Vec<Formula>,
    prop: Formula,
    alphabet: BTreeSet<Letter>,
}

impl SystemSpec {
    /// Validates flatness of every formula and collects the joint alphabet.
    pub fn new(sys: Vec<Formula>, prop: Formula) -> Result<SystemSpec, VerifyError> {
        for f in sys.iter().chain([&prop]) {
            require_flat(f)?;
        }
        let truth = Letter::truth();
        let alphabet: BTreeSet<Letter> = sys
            .iter()
            .chain([&prop])
            .flat_map(|f| f.letters())
            .filter(|l| *l != truth)
            .collect();
        Ok(SystemSpec {
            sys,
            prop,
            alphabet,
        })
    }

    pub fn sys(&self) -> &[Formula] {
        &self.sys
    }

    pub fn prop(&self) -> &Formula {
        &self.prop
    }

    /// Union of the propositions of all formulas (internal truth-constant
    /// plumbing excluded). This is the alphabet the discrete search
    /// enumerates over.
    pub fn alphabet(&self) -> &BTreeSet<Letter> {
        &self.alphabet
    }

    /// All formulas, system first, then the property.
    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.sys.iter().chain([&self.prop])
    }
}

impl TryFrom<ProblemFile> for SystemSpec {
    type Error = VerifyError;

    fn try_from(pf: ProblemFile) -> Result<SystemSpec, VerifyError> {
        SystemSpec::new(pf.sys, pf.prop)
    }
}

/// The two integer-endpoint implications whose bounded discrete validity
/// drives verdicts. Both are closed under "always" and generally not flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Models {
    /// Valid over discrete time ⇒ the dense system is verified.
    pub over_model: Formula,
    /// Falsified over discrete time ⇒ the dense verification attempt is
    /// refuted, with the falsifying behavior as counterexample.
    pub under_model: Formula,
}

fn implication(antecedents: Vec<Formula>, consequent: Formula) -> Formula {
    match antecedents.into_iter().reduce(Formula::and) {
        Some(a) => Formula::implies(a, consequent),
        // An empty system constrains nothing: the model is the consequent
        // alone rather than a vacuous implication.
        None => consequent,
    }
}

/// Builds the over- and under-model of `spec` for sampling period `delta`.
///
/// Fails when `delta` is not positive or not admitted by some formula's
/// granularity (its finite nonzero endpoints must all be integer multiples
/// of `delta`).
pub fn build_models(spec: &SystemSpec, delta: &Rat) -> Result<Models, TransformError> {
    let under_sys: Vec<Formula> = spec
        .sys
        .iter()
        .map(|f| Ok(Formula::alw(transform::under_approx(f, delta)?)))
        .collect::<Result<_, TransformError>>()?;
    let over_sys: Vec<Formula> = spec
        .sys
        .iter()
        .map(|f| Ok(Formula::alw(transform::over_approx(f, delta)?)))
        .collect::<Result<_, TransformError>>()?;
    let over_prop = Formula::alw(transform::over_approx(&spec.prop, delta)?);
    let under_prop = Formula::alw(transform::under_approx(&spec.prop, delta)?);
    Ok(Models {
        over_model: implication(under_sys, over_prop),
        under_model: implication(over_sys, under_prop),
    })
}

/// Result of the bounded discrete-time validity search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZValidResult {
    /// No enumerated behavior falsified the formula. Relative to the bound:
    /// a behavior needing a longer core could still exist.
    Valid { bound: usize },
    /// `witness` falsifies the formula at instant `at`. Definitive. The
    /// witness is the first falsifying behavior in enumeration order and
    /// `at` is the earliest false position of its satisfaction sequence at
    /// or after one step before both cores, so identical inputs always
    /// yield the identical pair.
    FalsifiedBy { witness: DiscreteBehavior, at: i64 },
}

/// All subsets of `letters`, by binary counting: the empty set first, and a
/// letter earlier in the (sorted) slice toggles faster than a later one.
fn subsets_in_order(letters: &[Letter]) -> Vec<BTreeSet<Letter>> {
    let mut subsets = vec![BTreeSet::new()];
    for l in letters {
        let with_l: Vec<BTreeSet<Letter>> = subsets
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.insert(l.clone());
                t
            })
            .collect();
        subsets.extend(with_l);
    }
    subsets
}

/// Advances `idx` as an odometer over digits `0..base` with the last slot
/// fastest; false when the tuple space is exhausted.
fn next_tuple(idx: &mut [usize], base: usize) -> bool {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Bounded validity of `f` over eventually-constant discrete behaviors on
/// `alphabet`.
///
/// Enumerates every behavior whose core (the region where it differs from
/// its two constant tails) has length at most `bound` and starts at index 0,
/// with both tail values ranging over all subsets of the alphabet. Anchoring
/// the core at 0 loses nothing: satisfaction at every instant is invariant
/// under shifting the behavior. Enumeration order is deterministic — core
/// length ascending, then left tail, right tail, and core tuples, subsets
/// ordered by [`subsets_in_order`] and tuples with the leftmost core position
/// slowest — and the first falsifying behavior found is returned.
///
/// Fails when `f` mentions a proposition outside `alphabet`.
pub fn z_valid(
    f: &Formula,
    alphabet: &BTreeSet<Letter>,
    bound: usize,
) -> Result<ZValidResult, VerifyError> {
    let truth = Letter::truth();
    for l in f.letters() {
        if l != truth && !alphabet.contains(&l) {
            return Err(VerifyError::LetterOutsideAlphabet(l.name().to_string()));
        }
    }
    let letters: Vec<Letter> = alphabet.iter().cloned().collect();
    let subsets = subsets_in_order(&letters);
    for len in 0..=bound {
        for left in &subsets {
            for right in &subsets {
                let mut idx = vec![0usize; len];
                loop {
                    // A core starting with the left tail value or ending
                    // with the right one canonicalizes to a shorter core
                    // already covered at an earlier length; skip it.
                    let canonical = idx
                        .first()
                        .map_or(true, |i| subsets[*i] != *left)
                        && idx.last().map_or(true, |i| subsets[*i] != *right);
                    if canonical {
                        let core: Vec<BTreeSet<Letter>> =
                            idx.iter().map(|i| subsets[*i].clone()).collect();
                        let d = DiscreteBehavior::new(
                            alphabet.clone(),
                            left.clone(),
                            0,
                            core,
                            right.clone(),
                        )
                        .expect("enumerated values are subsets of the alphabet");
                        let s = sat_seq(f, &d);
                        if !s.holds_everywhere() {
                            let start = s.window().0.min(d.window().0) - 1;
                            let at = s.first_false_at_or_after(start).expect(
                                "a sequence that is false somewhere is false at or after \
                                 any position at or before its core",
                            );
                            return Ok(ZValidResult::FalsifiedBy { witness: d, at });
                        }
                    }
                    if !next_tuple(&mut idx, subsets.len()) {
                        break;
                    }
                }
            }
        }
    }
    Ok(ZValidResult::Valid { bound })
}

/// How far the conclusion of a [`Verdict`] reaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qualifier {
    /// The verdict relied on a `Valid` answer of the bounded search and so
    /// holds relative to the bound: a behavior with a longer core could in
    /// principle overturn it.
    Bounded,
    /// The enumeration up to the bound completed without the conclusion
    /// depending on what lies beyond it: a refutation carries a concrete
    /// witness and is definitive; a fail records that neither direction
    /// concluded within the bound.
    ExhaustiveAtBound,
}

impl std::fmt::Display for Qualifier {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Qualifier::Bounded => write!(out, "bounded"),
            Qualifier::ExhaustiveAtBound => write!(out, "exhaustive-at-bound"),
        }
    }
}

/// Conclusion of a verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Every sufficiently slow dense behavior modelling the system satisfies
    /// the property at every instant (up to the search bound).
    Verified,
    /// `counterexample` globally satisfies the over-approximation of every
    /// system formula yet falsifies the under-approximation of the property
    /// at instant `at`; the verification attempt is definitively refuted at
    /// this sampling period.
    Refuted {
        counterexample: DiscreteBehavior,
        at: i64,
    },
    /// Neither direction concluded: the over-model was falsified and the
    /// under-model survived the bounded search.
    Fail,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Outcome::Verified => write!(out, "verified"),
            Outcome::Refuted { .. } => write!(out, "refuted"),
            Outcome::Fail => write!(out, "fail"),
        }
    }
}

/// Outcome of [`mtl_verify`] together with the bound the search used and how
/// far the conclusion reaches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub bound_used: usize,
    pub qualifier: Qualifier,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            out,
            "{} [{}, bound {}]",
            self.outcome, self.qualifier, self.bound_used
        )
    }
}

/// Default search bound: three steps beyond the largest finite window
/// endpoint magnitude of the model formulas, and at least 3. Covers every
/// interaction of the windows of depth-one flat formulas with a behavior's
/// core.
pub fn default_bound(models: &Models) -> usize {
    let mag = [&models.over_model, &models.under_model]
        .into_iter()
        .filter_map(Formula::max_endpoint_magnitude)
        .max()
        .map_or(0, |m| {
            crate::rat::to_i64(&crate::rat::ceil(&m)).expect("ceiled endpoint magnitude fits i64")
        });
    3 * (1 + mag.max(0) as usize)
}

/// Verifies `spec` at sampling period `delta`, searching discrete behaviors
/// with core length up to `bound` (defaulting to [`default_bound`]).
///
/// Checks the over-model first: bounded validity yields `Verified`. Otherwise
/// the under-model is searched: a falsifying behavior yields `Refuted` with
/// that behavior attached, and validity of the under-model up to the bound
/// yields `Fail` — for this `delta`, the approximations are too coarse to
/// conclude either way.
pub fn mtl_verify(
    spec: &SystemSpec,
    delta: &Rat,
    bound: Option<usize>,
) -> Result<Verdict, VerifyError> {
    let models = build_models(spec, delta)?;
    let bound_used = bound.unwrap_or_else(|| default_bound(&models));
    match z_valid(&models.over_model, spec.alphabet(), bound_used)? {
        ZValidResult::Valid { .. } => Ok(Verdict {
            outcome: Outcome::Verified,
            bound_used,
            qualifier: Qualifier::Bounded,
        }),
        ZValidResult::FalsifiedBy { .. } => {
            match z_valid(&models.under_model, spec.alphabet(), bound_used)? {
                ZValidResult::FalsifiedBy { witness, at } => Ok(Verdict {
                    outcome: Outcome::Refuted {
                        counterexample: witness,
                        at,
                    },
                    bound_used,
                    qualifier: Qualifier::ExhaustiveAtBound,
                }),
                ZValidResult::Valid { .. } => Ok(Verdict {
                    outcome: Outcome::Fail,
                    bound_used,
                    qualifier: Qualifier::ExhaustiveAtBound,
                }),
            }
        }
    }
}
