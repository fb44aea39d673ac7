//! Formulas in negation normal form.
//!
//! The grammar has propositional literals, conjunction, disjunction, and four
//! interval-constrained temporal operators — strict-future `until`,
//! strict-past `since`, and their universal duals `release` and `trigger` —
//! each carrying a [`TimeInterval`] whose rational endpoints may be negative
//! or infinite. `until`/`since` additionally carry a *matching* flag
//! (the witness point must also satisfy the left argument); the matching
//! variants of `release`/`trigger` are represented expanded. Two extra node
//! kinds, [`Formula::Becf`] and [`Formula::Becp`] ("becomes true now or in
//! the future / now or in the past"), abbreviate fixed first-order
//! combinations of the core operators and are expanded by [`Formula::desugar`]
//! wherever the core grammar is required.
//!
//! Negation is not a node: [`Formula::negate`] rewrites to the dual in one
//! pass. Truth constants are encoded over a reserved letter that cannot occur
//! in any behavior, so `true` = `$t | !$t` and `false` = `$t & !$t`.

use std::collections::BTreeSet;
use std::fmt;

use crate::interval::TimeInterval;
use crate::rat::Rat;
use num::Zero;

/// A proposition name. User-visible letters match `[a-z][a-z0-9_]*`; names
/// starting with `$` are reserved for internal encodings (truth constants,
/// satisfaction tracks) and cannot collide with parsed input.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(String);

/// Error from [`Letter::new`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid proposition name `{0}`: must match [a-z][a-z0-9_]*")]
pub struct LetterError(pub String);

impl Letter {
    /// Validates and constructs a user-visible proposition name.
    pub fn new(name: &str) -> Result<Self, LetterError> {
        let mut chars = name.chars();
        let head_ok = matches!(chars.next(), Some(c) if c.is_ascii_lowercase());
        let tail_ok = chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_');
        if head_ok && tail_ok {
            Ok(Letter(name.to_string()))
        } else {
            Err(LetterError(name.to_string()))
        }
    }

    /// An internal letter (`$`-prefixed); not constructible from input.
    pub(crate) fn internal(tag: &str) -> Self {
        Letter(format!("${}", tag))
    }

    /// The reserved letter used to encode the truth constants.
    pub(crate) fn truth() -> Self {
        Self::internal("t")
    }

    /// True for `$`-prefixed internal letters.
    pub fn is_internal(&self) -> bool {
        self.0.starts_with('$')
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A formula in negation normal form. See the module docs for the reading of
/// each node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// Proposition holds now.
    Prop(Letter),
    /// Proposition does not hold now.
    NegProp(Letter),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// `until(win)(lhs, rhs)`: some offset `d` in `win` (negative offsets
    /// allowed) reaches a point where `rhs` holds, with `lhs` holding on the
    /// in-between stretch `[0,d)` shifted to now. With `matching`, the
    /// witness point must satisfy `lhs` as well.
    Until {
        win: TimeInterval,
        matching: bool,
        lhs: Box<Formula>,
        rhs: Box<Formula>,
    },
    /// Past mirror of `Until` (offsets run backwards).
    Since {
        win: TimeInterval,
        matching: bool,
        lhs: Box<Formula>,
        rhs: Box<Formula>,
    },
    /// Universal dual of `Until`: every offset in `win` satisfies `rhs`
    /// unless `lhs` released it strictly earlier in the stretch.
    Release {
        win: TimeInterval,
        lhs: Box<Formula>,
        rhs: Box<Formula>,
    },
    /// Past mirror of `Release`.
    Trigger {
        win: TimeInterval,
        lhs: Box<Formula>,
        rhs: Box<Formula>,
    },
    /// Argument holds now, or becomes true immediately after now.
    Becf(Box<Formula>),
    /// Argument holds now, or held immediately before now.
    Becp(Box<Formula>),
}

impl Formula {
    // ----- constructors ---------------------------------------------------

    pub fn prop(l: Letter) -> Formula {
        Formula::Prop(l)
    }

    pub fn nprop(l: Letter) -> Formula {
        Formula::NegProp(l)
    }

    /// Convenience constructor from a raw name; panics on an invalid name
    /// (intended for literals in code and tests).
    pub fn var(name: &str) -> Formula {
        Formula::Prop(Letter::new(name).expect("valid proposition name"))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// Conjunction of a list; `true` for the empty list.
    pub fn big_and(mut fs: Vec<Formula>) -> Formula {
        match fs.len() {
            0 => Formula::top(),
            _ => {
                let first = fs.remove(0);
                fs.into_iter().fold(first, Formula::and)
            }
        }
    }

    /// Disjunction of a list; `false` for the empty list.
    pub fn big_or(mut fs: Vec<Formula>) -> Formula {
        match fs.len() {
            0 => Formula::bot(),
            _ => {
                let first = fs.remove(0);
                fs.into_iter().fold(first, Formula::or)
            }
        }
    }

    /// The truth constant, encoded over the reserved letter.
    pub fn top() -> Formula {
        let t = Letter::truth();
        Formula::or(Formula::Prop(t.clone()), Formula::NegProp(t))
    }

    /// The falsity constant, encoded over the reserved letter.
    pub fn bot() -> Formula {
        let t = Letter::truth();
        Formula::and(Formula::Prop(t.clone()), Formula::NegProp(t))
    }

    /// True iff this is exactly the [`Formula::top`] encoding.
    pub fn is_top(&self) -> bool {
        self == &Formula::top()
    }

    /// True iff this is exactly the [`Formula::bot`] encoding.
    pub fn is_bot(&self) -> bool {
        self == &Formula::bot()
    }

    pub fn until(win: TimeInterval, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Until {
            win,
            matching: false,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn until_m(win: TimeInterval, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Until {
            win,
            matching: true,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn since(win: TimeInterval, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Since {
            win,
            matching: false,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn since_m(win: TimeInterval, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Since {
            win,
            matching: true,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn release(win: TimeInterval, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Release {
            win,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn trigger(win: TimeInterval, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Trigger {
            win,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    /// Matching release, stored expanded: `release(win)(lhs, rhs | lhs)`.
    pub fn release_m(win: TimeInterval, lhs: Formula, rhs: Formula) -> Formula {
        let escape = lhs.clone();
        Formula::release(win, lhs, Formula::or(rhs, escape))
    }

    /// Matching trigger, stored expanded: `trigger(win)(lhs, rhs | lhs)`.
    pub fn trigger_m(win: TimeInterval, lhs: Formula, rhs: Formula) -> Formula {
        let escape = lhs.clone();
        Formula::trigger(win, lhs, Formula::or(rhs, escape))
    }

    // ----- derived operators (exact standard expansions) ------------------

    /// Eventually within `win`: `until(win)(true, f)`.
    pub fn ev(win: TimeInterval, f: Formula) -> Formula {
        Formula::until(win, Formula::top(), f)
    }

    /// Eventually in the past within `win`: `since(win)(true, f)`.
    pub fn ev_p(win: TimeInterval, f: Formula) -> Formula {
        Formula::since(win, Formula::top(), f)
    }

    /// Always within `win`: `release(win)(false, f)`.
    pub fn alw_i(win: TimeInterval, f: Formula) -> Formula {
        Formula::release(win, Formula::bot(), f)
    }

    /// Always in the past within `win`: `trigger(win)(false, f)`.
    pub fn alw_p_i(win: TimeInterval, f: Formula) -> Formula {
        Formula::trigger(win, Formula::bot(), f)
    }

    /// At every time point, past and future (including now).
    pub fn alw(f: Formula) -> Formula {
        Formula::and(
            Formula::alw_p_i(TimeInterval::zero_to_inf(), f.clone()),
            Formula::alw_i(TimeInterval::zero_to_inf(), f),
        )
    }

    /// At some time point, past or future (including now).
    pub fn som(f: Formula) -> Formula {
        Formula::or(
            Formula::ev_p(TimeInterval::zero_to_inf(), f.clone()),
            Formula::ev(TimeInterval::zero_to_inf(), f),
        )
    }

    /// `f` holds on a right neighborhood of now (not necessarily at now):
    /// `until(>0)(f, true) | (!f & release(>0)(f, false))`.
    pub fn nowon(f: Formula) -> Formula {
        let gt0 = TimeInterval::greater_than(Rat::zero());
        Formula::or(
            Formula::until(gt0.clone(), f.clone(), Formula::top()),
            Formula::and(f.negate(), Formula::release(gt0, f, Formula::bot())),
        )
    }

    /// `f` holds on a left neighborhood of now (not necessarily at now).
    pub fn uptonow(f: Formula) -> Formula {
        let gt0 = TimeInterval::greater_than(Rat::zero());
        Formula::or(
            Formula::since(gt0.clone(), f.clone(), Formula::top()),
            Formula::and(f.negate(), Formula::trigger(gt0, f, Formula::bot())),
        )
    }

    /// The `Becf` node: `f` holds now or becomes true immediately after.
    pub fn becf(f: Formula) -> Formula {
        Formula::Becf(Box::new(f))
    }

    /// The `Becp` node: `f` holds now or held immediately before.
    pub fn becp(f: Formula) -> Formula {
        Formula::Becp(Box::new(f))
    }

    /// The expansion [`Formula::becf`] abbreviates: `f | nowon(f)`.
    pub fn becf_expanded(f: Formula) -> Formula {
        Formula::or(f.clone(), Formula::nowon(f))
    }

    /// The expansion [`Formula::becp`] abbreviates: `f | uptonow(f)`.
    pub fn becp_expanded(f: Formula) -> Formula {
        Formula::or(f.clone(), Formula::uptonow(f))
    }

    /// Material implication `!a | b` (negation pushed inward).
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(a.negate(), b)
    }

    /// Biconditional `(a & b) | (!a & !b)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::or(
            Formula::and(a.clone(), b.clone()),
            Formula::and(a.negate(), b.negate()),
        )
    }

    // ----- structural operations -----------------------------------------

    /// Logical negation, rewritten to stay in negation normal form. Matching
    /// `until`/`since` dualize to the expanded matching `release`/`trigger`
    /// (and `Becf`/`Becp` negate through their expansions), so double
    /// negation is a syntactic identity on formulas free of those
    /// abbreviations and a semantic identity in general.
    pub fn negate(&self) -> Formula {
        // Keep the truth constants canonical: a literal dualization of
        // `top()` would swap its conjunct order and no longer be
        // recognized as `bot()` by `is_bot` or the printer.
        if self.is_top() {
            return Formula::bot();
        }
        if self.is_bot() {
            return Formula::top();
        }
        match self {
            Formula::Prop(l) => Formula::NegProp(l.clone()),
            Formula::NegProp(l) => Formula::Prop(l.clone()),
            Formula::And(a, b) => Formula::or(a.negate(), b.negate()),
            Formula::Or(a, b) => Formula::and(a.negate(), b.negate()),
            Formula::Until {
                win,
                matching,
                lhs,
                rhs,
            } => {
                if *matching {
                    Formula::release_m(win.clone(), lhs.negate(), rhs.negate())
                } else {
                    Formula::release(win.clone(), lhs.negate(), rhs.negate())
                }
            }
            Formula::Since {
                win,
                matching,
                lhs,
                rhs,
            } => {
                if *matching {
                    Formula::trigger_m(win.clone(), lhs.negate(), rhs.negate())
                } else {
                    Formula::trigger(win.clone(), lhs.negate(), rhs.negate())
                }
            }
            Formula::Release { win, lhs, rhs } => {
                Formula::until(win.clone(), lhs.negate(), rhs.negate())
            }
            Formula::Trigger { win, lhs, rhs } => {
                Formula::since(win.clone(), lhs.negate(), rhs.negate())
            }
            Formula::Becf(f) => Formula::becf_expanded((**f).clone()).negate(),
            Formula::Becp(f) => Formula::becp_expanded((**f).clone()).negate(),
        }
    }

    /// Expands matching flags and `Becf`/`Becp` nodes into the six-kind core
    /// grammar (literals, and/or, plain until/since/release/trigger).
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::Prop(_) | Formula::NegProp(_) => self.clone(),
            Formula::And(a, b) => Formula::and(a.desugar(), b.desugar()),
            Formula::Or(a, b) => Formula::or(a.desugar(), b.desugar()),
            Formula::Until {
                win,
                matching,
                lhs,
                rhs,
            } => {
                let l = lhs.desugar();
                let r = rhs.desugar();
                if *matching {
                    let witness = Formula::and(r, l.clone());
                    Formula::until(win.clone(), l, witness)
                } else {
                    Formula::until(win.clone(), l, r)
                }
            }
            Formula::Since {
                win,
                matching,
                lhs,
                rhs,
            } => {
                let l = lhs.desugar();
                let r = rhs.desugar();
                if *matching {
                    let witness = Formula::and(r, l.clone());
                    Formula::since(win.clone(), l, witness)
                } else {
                    Formula::since(win.clone(), l, r)
                }
            }
            Formula::Release { win, lhs, rhs } => {
                Formula::release(win.clone(), lhs.desugar(), rhs.desugar())
            }
            Formula::Trigger { win, lhs, rhs } => {
                Formula::trigger(win.clone(), lhs.desugar(), rhs.desugar())
            }
            Formula::Becf(f) => Formula::becf_expanded(f.desugar()),
            Formula::Becp(f) => Formula::becp_expanded(f.desugar()),
        }
    }

    /// All user-visible proposition names in the formula (internal letters
    /// from the truth-constant encoding are excluded).
    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<Letter>) {
        match self {
            Formula::Prop(l) | Formula::NegProp(l) => {
                if !l.is_internal() {
                    out.insert(l.clone());
                }
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
            Formula::Until { lhs, rhs, .. }
            | Formula::Since { lhs, rhs, .. }
            | Formula::Release { lhs, rhs, .. }
            | Formula::Trigger { lhs, rhs, .. } => {
                lhs.collect_letters(out);
                rhs.collect_letters(out);
            }
            Formula::Becf(f) | Formula::Becp(f) => f.collect_letters(out),
        }
    }

    /// All interval windows syntactically present (recursing into arguments;
    /// the implicit strict-positive windows of `Becf`/`Becp` expansions
    /// contribute no finite nonzero endpoints and are not listed).
    pub fn windows(&self) -> Vec<&TimeInterval> {
        let mut out = Vec::new();
        self.collect_windows(&mut out);
        out
    }

    fn collect_windows<'a>(&'a self, out: &mut Vec<&'a TimeInterval>) {
        match self {
            Formula::Prop(_) | Formula::NegProp(_) => {}
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_windows(out);
                b.collect_windows(out);
            }
            Formula::Until { win, lhs, rhs, .. } | Formula::Since { win, lhs, rhs, .. } => {
                out.push(win);
                lhs.collect_windows(out);
                rhs.collect_windows(out);
            }
            Formula::Release { win, lhs, rhs } | Formula::Trigger { win, lhs, rhs } => {
                out.push(win);
                lhs.collect_windows(out);
                rhs.collect_windows(out);
            }
            Formula::Becf(f) | Formula::Becp(f) => f.collect_windows(out),
        }
    }

    /// Maximum nesting depth of temporal operators (`Becf`/`Becp` count as
    /// one level over their argument, matching their expansions).
    pub fn temporal_depth(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::NegProp(_) => 0,
            Formula::And(a, b) | Formula::Or(a, b) => a.temporal_depth().max(b.temporal_depth()),
            Formula::Until { lhs, rhs, .. }
            | Formula::Since { lhs, rhs, .. }
            | Formula::Release { lhs, rhs, .. }
            | Formula::Trigger { lhs, rhs, .. } => {
                1 + lhs.temporal_depth().max(rhs.temporal_depth())
            }
            Formula::Becf(f) | Formula::Becp(f) => 1 + f.temporal_depth(),
        }
    }

    /// True iff every temporal operator takes purely propositional arguments.
    pub fn is_flat(&self) -> bool {
        match self {
            Formula::Prop(_) | Formula::NegProp(_) => true,
            Formula::And(a, b) | Formula::Or(a, b) => a.is_flat() && b.is_flat(),
            Formula::Until { lhs, rhs, .. }
            | Formula::Since { lhs, rhs, .. }
            | Formula::Release { lhs, rhs, .. }
            | Formula::Trigger { lhs, rhs, .. } => {
                lhs.temporal_depth() == 0 && rhs.temporal_depth() == 0
            }
            Formula::Becf(f) | Formula::Becp(f) => f.temporal_depth() == 0,
        }
    }

    /// Structural classification flags; see [`Classification`].
    pub fn classify(&self) -> Classification {
        let ltl = self
            .desugar_windows_are_default()
            .unwrap_or(true);
        Classification {
            flat: self.is_flat(),
            ltl,
            dense_endpoint: true,
            discrete_endpoint: self.windows().iter().all(|w| w.has_integer_endpoints()),
            temporal_depth: self.temporal_depth(),
        }
    }

    /// `Some(all windows == [0,inf))` if any temporal node exists, else
    /// `None`. `Becf`/`Becp` expand to strict-positive windows and therefore
    /// make a formula non-default.
    fn desugar_windows_are_default(&self) -> Option<bool> {
        let d = self.desugar();
        let ws = d.windows();
        if ws.is_empty() && matches!(d.temporal_depth(), 0) {
            return None;
        }
        let default = TimeInterval::zero_to_inf();
        Some(ws.iter().all(|w| **w == default))
    }

    /// Largest absolute value among all finite window endpoints, if any.
    pub fn max_endpoint_magnitude(&self) -> Option<Rat> {
        self.windows()
            .iter()
            .flat_map(|w| w.finite_endpoints())
            .map(crate::rat::abs)
            .max()
    }
}

/// Structural classification of a formula.
///
/// `dense_endpoint` is true for every formula (endpoints are rationals by
/// construction); `discrete_endpoint` additionally requires every finite
/// endpoint to be an integer. `ltl` means every temporal window (after
/// expanding abbreviations) is the default `[0,inf)`; formulas with no
/// temporal operators count as both flat and `ltl`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub flat: bool,
    pub ltl: bool,
    pub dense_endpoint: bool,
    pub discrete_endpoint: bool,
    pub temporal_depth: usize,
}

/// Error from [`Formula::flatten`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlattenError {
    #[error("auxiliary letter `{0}` collides with a letter of the formula")]
    AlphabetCollision(String),
    #[error("invalid auxiliary letter prefix `{0}`")]
    BadPrefix(String),
}

impl Formula {
    /// Rewrites the formula into an equisatisfiable flat one by naming nested
    /// temporal subformulas with fresh letters. Returns the flat main formula
    /// conjoined with one biconditional definition per auxiliary letter, plus
    /// the map from auxiliary letters to the subformulas they name.
    ///
    /// The rewrite is performed innermost-first: each temporal argument that
    /// still contains a temporal operator after its own rewrite is replaced
    /// by a fresh letter `prefix1`, `prefix2`, … and defined alongside.
    /// Equisatisfiability is with respect to the global (every-time-point)
    /// semantics over behaviors extended with the auxiliary letters.
    pub fn flatten(&self, prefix: &str) -> Result<(Formula, Vec<(Letter, Formula)>), FlattenError> {
        Letter::new(prefix).map_err(|_| FlattenError::BadPrefix(prefix.to_string()))?;
        let used = self.letters();
        let mut state = FlattenState {
            prefix,
            used,
            counter: 0,
            defs: Vec::new(),
        };
        let main = flatten_rec(self, &mut state)?;
        let mut out = main;
        for (l, def) in &state.defs {
            out = Formula::and(
                out,
                Formula::iff(Formula::Prop(l.clone()), def.clone()),
            );
        }
        Ok((out, state.defs))
    }
}

struct FlattenState<'a> {
    prefix: &'a str,
    used: BTreeSet<Letter>,
    counter: usize,
    defs: Vec<(Letter, Formula)>,
}

impl FlattenState<'_> {
    fn fresh(&mut self) -> Result<Letter, FlattenError> {
        self.counter += 1;
        let name = format!("{}{}", self.prefix, self.counter);
        let l = Letter::new(&name).map_err(|_| FlattenError::BadPrefix(name.clone()))?;
        if self.used.contains(&l) {
            return Err(FlattenError::AlphabetCollision(name));
        }
        Ok(l)
    }

    /// Replaces a still-temporal argument with a fresh defined letter.
    fn name_if_temporal(&mut self, f: Formula) -> Result<Formula, FlattenError> {
        if f.temporal_depth() == 0 {
            Ok(f)
        } else {
            let a = self.fresh()?;
            self.defs.push((a.clone(), f));
            Ok(Formula::Prop(a))
        }
    }
}

fn flatten_rec(f: &Formula, st: &mut FlattenState<'_>) -> Result<Formula, FlattenError> {
    Ok(match f {
        Formula::Prop(_) | Formula::NegProp(_) => f.clone(),
        Formula::And(a, b) => Formula::and(flatten_rec(a, st)?, flatten_rec(b, st)?),
        Formula::Or(a, b) => Formula::or(flatten_rec(a, st)?, flatten_rec(b, st)?),
        Formula::Until {
            win,
            matching,
            lhs,
            rhs,
        } => {
            let l = flatten_rec(lhs, st)?;
            let l = st.name_if_temporal(l)?;
            let r = flatten_rec(rhs, st)?;
            let r = st.name_if_temporal(r)?;
            Formula::Until {
                win: win.clone(),
                matching: *matching,
                lhs: Box::new(l),
                rhs: Box::new(r),
            }
        }
        Formula::Since {
            win,
            matching,
            lhs,
            rhs,
        } => {
            let l = flatten_rec(lhs, st)?;
            let l = st.name_if_temporal(l)?;
            let r = flatten_rec(rhs, st)?;
            let r = st.name_if_temporal(r)?;
            Formula::Since {
                win: win.clone(),
                matching: *matching,
                lhs: Box::new(l),
                rhs: Box::new(r),
            }
        }
        Formula::Release { win, lhs, rhs } => {
            let l = flatten_rec(lhs, st)?;
            let l = st.name_if_temporal(l)?;
            let r = flatten_rec(rhs, st)?;
            let r = st.name_if_temporal(r)?;
            Formula::release(win.clone(), l, r)
        }
        Formula::Trigger { win, lhs, rhs } => {
            let l = flatten_rec(lhs, st)?;
            let l = st.name_if_temporal(l)?;
            let r = flatten_rec(rhs, st)?;
            let r = st.name_if_temporal(r)?;
            Formula::trigger(win.clone(), l, r)
        }
        Formula::Becf(g) => {
            let inner = flatten_rec(g, st)?;
            let inner = st.name_if_temporal(inner)?;
            Formula::becf(inner)
        }
        Formula::Becp(g) => {
            let inner = flatten_rec(g, st)?;
            let inner = st.name_if_temporal(inner)?;
            Formula::becp(inner)
        }
    })
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::syntax::format_formula(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn p() -> Formula {
        Formula::var("p")
    }

    fn q() -> Formula {
        Formula::var("q")
    }

    #[test]
    fn letter_validation() {
        assert!(Letter::new("p").is_ok());
        assert!(Letter::new("abc_1").is_ok());
        assert!(Letter::new("P").is_err());
        assert!(Letter::new("1a").is_err());
        assert!(Letter::new("$t").is_err());
        assert!(Letter::new("").is_err());
    }

    #[test]
    fn negate_is_involutive_on_core_formulas() {
        let cases = vec![
            p(),
            Formula::and(p(), q().negate()),
            Formula::until(TimeInterval::closed(rat_int(0), rat_int(2)), p(), q()),
            Formula::release(TimeInterval::open(rat_int(-1), rat_int(1)), p(), q()),
            Formula::since(TimeInterval::greater_than(rat_int(0)), p(), q()),
            Formula::trigger(TimeInterval::zero_to_inf(), p(), q()),
            Formula::alw(Formula::implies(p(), Formula::ev(TimeInterval::singleton(rat_int(1)), p()))),
        ];
        for f in cases {
            assert_eq!(f.negate().negate(), f, "double negation changed {f:?}");
        }
    }

    #[test]
    fn negate_dualizes_node_kinds() {
        let u = Formula::until(TimeInterval::closed(rat_int(0), rat_int(2)), p(), q());
        match u.negate() {
            Formula::Release { win, lhs, rhs } => {
                assert_eq!(win, TimeInterval::closed(rat_int(0), rat_int(2)));
                assert_eq!(*lhs, p().negate());
                assert_eq!(*rhs, q().negate());
            }
            other => panic!("expected release, got {other:?}"),
        }
        // Matching until dualizes to the expanded matching release.
        let um = Formula::until_m(TimeInterval::closed(rat_int(1), rat_int(2)), p(), q());
        let expected = Formula::release(
            TimeInterval::closed(rat_int(1), rat_int(2)),
            Formula::nprop(Letter::new("p").unwrap()),
            Formula::or(
                Formula::nprop(Letter::new("q").unwrap()),
                Formula::nprop(Letter::new("p").unwrap()),
            ),
        );
        assert_eq!(um.negate(), expected);
    }

    #[test]
    fn desugar_expands_matching_and_becomes() {
        let um = Formula::until_m(TimeInterval::closed(rat_int(1), rat_int(2)), p(), q());
        let expected = Formula::until(
            TimeInterval::closed(rat_int(1), rat_int(2)),
            p(),
            Formula::and(q(), p()),
        );
        assert_eq!(um.desugar(), expected);

        let b = Formula::becf(p());
        assert_eq!(b.desugar(), Formula::becf_expanded(p()));
        assert_eq!(b.desugar().temporal_depth(), 1);
    }

    #[test]
    fn truth_constants_use_no_visible_letters() {
        assert!(Formula::top().letters().is_empty());
        assert!(Formula::bot().letters().is_empty());
        assert!(Formula::top().is_top());
        assert!(!Formula::bot().is_top());
        let f = Formula::ev(TimeInterval::zero_to_inf(), p());
        assert_eq!(
            f.letters().into_iter().map(|l| l.name().to_string()).collect::<Vec<_>>(),
            vec!["p".to_string()]
        );
    }

    #[test]
    fn classification_flags() {
        let flat = Formula::implies(p(), Formula::ev(TimeInterval::singleton(rat_int(1)), p()));
        let c = flat.classify();
        assert!(c.flat);
        assert!(!c.ltl);
        assert!(c.discrete_endpoint);
        assert!(c.dense_endpoint);
        assert_eq!(c.temporal_depth, 1);

        let nested = Formula::ev(
            TimeInterval::less_than(rat_int(3)),
            Formula::alw_i(TimeInterval::singleton(rat_int(2)), q()),
        );
        let c = nested.classify();
        assert!(!c.flat);
        assert_eq!(c.temporal_depth, 2);

        let ltl = Formula::until(TimeInterval::zero_to_inf(), p(), q());
        assert!(ltl.classify().ltl);
        assert!(ltl.classify().flat);

        let frac = Formula::ev(TimeInterval::closed(rat_int(0), rat(3, 10)), p());
        assert!(!frac.classify().discrete_endpoint);

        let plain = Formula::and(p(), q());
        assert!(plain.classify().flat);
        assert!(plain.classify().ltl);
    }

    #[test]
    fn flatten_names_nested_arguments_innermost_first() {
        // p -> eventually(<3) becf(always(=2) q), following the nesting scheme
        // where each still-temporal argument is named innermost-first.
        let inner = Formula::alw_i(TimeInterval::singleton(rat_int(2)), q());
        let f = Formula::implies(
            p(),
            Formula::ev(
                TimeInterval::co(rat_int(0), rat_int(3)),
                Formula::becf(inner.clone()),
            ),
        );
        let (flat, defs) = f.flatten("a").unwrap();
        assert!(flat.is_flat());
        assert_eq!(defs.len(), 2);
        assert_eq!(defs[0].0.name(), "a1");
        assert_eq!(defs[0].1, inner);
        assert_eq!(defs[1].0.name(), "a2");
        assert_eq!(defs[1].1, Formula::becf(Formula::var("a1")));
        // The main part references a2 inside the eventually.
        let main_expected = Formula::implies(
            p(),
            Formula::ev(TimeInterval::co(rat_int(0), rat_int(3)), Formula::var("a2")),
        );
        let rebuilt = Formula::and(
            Formula::and(
                main_expected,
                Formula::iff(Formula::var("a1"), defs[0].1.clone()),
            ),
            Formula::iff(Formula::var("a2"), defs[1].1.clone()),
        );
        assert_eq!(flat, rebuilt);
    }

    #[test]
    fn flatten_keeps_flat_formulas_unchanged() {
        let f = Formula::implies(p(), Formula::ev(TimeInterval::singleton(rat_int(1)), p()));
        let (flat, defs) = f.flatten("a").unwrap();
        assert_eq!(flat, f);
        assert!(defs.is_empty());
    }

    #[test]
    fn flatten_detects_collisions() {
        let f = Formula::ev(
            TimeInterval::zero_to_inf(),
            Formula::alw_i(TimeInterval::singleton(rat_int(1)), Formula::var("a1")),
        );
        assert!(matches!(
            f.flatten("a"),
            Err(FlattenError::AlphabetCollision(_))
        ));
    }

    #[test]
    fn windows_and_magnitudes() {
        let f = Formula::and(
            Formula::ev(TimeInterval::closed(rat_int(0), rat(3, 10)), p()),
            Formula::alw_i(TimeInterval::closed(rat_int(-2), rat_int(5)), q()),
        );
        assert_eq!(f.windows().len(), 2);
        assert_eq!(f.max_endpoint_magnitude(), Some(rat_int(5)));
        assert_eq!(p().max_endpoint_magnitude(), None);
    }
}
