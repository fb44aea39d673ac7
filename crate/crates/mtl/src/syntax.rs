//! Concrete syntax: formulas, behavior files, verification problem files.
//!
//! Formula grammar (precedence low to high: `<->`, `->`, `|`, `&`, `!`):
//!
//! ```text
//! f    ::= 'true' | 'false' | prop | '!' f | f '&' f | f '|' f
//!        | f '->' f | f '<->' f | '(' f ')'
//!        | binop ivl? '(' f ',' f ')' | unop ivl? '(' f ')'
//!        | 'Alw' '(' f ')' | 'Som' '(' f ')' | 'now' '(' f ')'
//!        | 'upto' '(' f ')' | 'becf' '(' f ')' | 'becp' '(' f ')'
//! binop ::= 'U' | 'S' | 'R' | 'T' | 'UM' | 'SM'
//! unop  ::= 'F' | 'G' | 'FP' | 'GP'
//! ivl   ::= ('[' | '(') bound ',' bound (']' | ')')
//! bound ::= rational | 'inf' | '-inf'      rational ::= '-'? digits ('/' digits)?
//! prop  ::= [a-z][a-z0-9_]*                (not a lowercase keyword)
//! ```
//!
//! An omitted interval on `U S R T UM SM F G FP GP` means `[0,inf)`.
//! `->` and `<->` are sugar (negation is pushed inward on parse), so printed
//! output never contains them; printing otherwise inverts parsing exactly on
//! canonical forms, reconstructing `true`/`false`/`F`/`G`/`FP`/`GP`/`Alw`/
//! `Som` from their encodings.
//!
//! Behavior files are line-oriented; `#` starts a comment. Dense:
//!
//! ```text
//! alphabet p q
//! lefttail {p}
//! seg [0,3/2) {p q}
//! righttail {q}
//! ```
//!
//! The unbounded tails take their intervals from the outermost segments
//! (complementary closure), so a two-piece behavior prints with one helper
//! segment that merges back on load. Discrete files use `dlefttail`,
//! `core k0=<int> {..} {..} ...`, `drighttail`.
//!
//! Verification problem files have `sys: <formula>` lines (zero or more) and
//! exactly one `prop: <formula>` line; every formula must be flat.

use std::collections::BTreeSet;
use std::fmt;

use crate::behavior::{DenseBehavior, DiscreteBehavior, Piece};
use crate::formula::{Formula, Letter};
use crate::interval::{Bound, TimeInterval};
use crate::rat;

/// A parse failure with 1-based position information.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, col {col}: {msg}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl SyntaxError {
    fn at(col: usize, msg: impl Into<String>) -> Self {
        SyntaxError {
            line: 1,
            col,
            msg: msg.into(),
        }
    }

    fn on_line(mut self, line: usize) -> Self {
        self.line = line;
        self
    }
}

// ---------------------------------------------------------------------------
// Formula parsing
// ---------------------------------------------------------------------------

/// Parses a formula from its concrete syntax.
pub fn parse_formula(src: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(src);
    let f = p.parse_iff()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(SyntaxError::at(p.pos + 1, "unexpected trailing input"));
    }
    Ok(f)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        let cs: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&cs[..]) {
            self.pos += cs.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), SyntaxError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(SyntaxError::at(self.pos + 1, format!("expected `{s}`")))
        }
    }

    fn parse_iff(&mut self) -> Result<Formula, SyntaxError> {
        let mut a = self.parse_imp()?;
        while self.eat("<->") {
            let b = self.parse_imp()?;
            a = Formula::iff(a, b);
        }
        Ok(a)
    }

    fn parse_imp(&mut self) -> Result<Formula, SyntaxError> {
        let a = self.parse_or()?;
        self.skip_ws();
        // Careful: `->` must not be confused with the `-` of a number (cannot
        // appear here) nor `<->` (handled a level up, and `<` never starts
        // this token).
        if self.eat("->") {
            let b = self.parse_imp()?;
            return Ok(Formula::implies(a, b));
        }
        Ok(a)
    }

    fn parse_or(&mut self) -> Result<Formula, SyntaxError> {
        let mut a = self.parse_and()?;
        loop {
            self.skip_ws();
            // `|` but not `|something-weird`; single char suffices.
            if self.peek() == Some('|') {
                self.pos += 1;
                let b = self.parse_and()?;
                a = Formula::or(a, b);
            } else {
                return Ok(a);
            }
        }
    }

    fn parse_and(&mut self) -> Result<Formula, SyntaxError> {
        let mut a = self.parse_unary()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('&') {
                self.pos += 1;
                let b = self.parse_unary()?;
                a = Formula::and(a, b);
            } else {
                return Ok(a);
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Formula, SyntaxError> {
        self.skip_ws();
        if self.peek() == Some('!') {
            self.pos += 1;
            let f = self.parse_unary()?;
            return Ok(f.negate());
        }
        self.parse_atom()
    }

    fn parse_atom(&mut self) -> Result<Formula, SyntaxError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let f = self.parse_iff()?;
                self.expect(")")?;
                Ok(f)
            }
            Some(c) if c.is_ascii_alphabetic() => self.parse_word(),
            Some(c) => Err(SyntaxError::at(
                self.pos + 1,
                format!("unexpected character `{c}`"),
            )),
            None => Err(SyntaxError::at(self.pos + 1, "unexpected end of input")),
        }
    }

    fn parse_word(&mut self) -> Result<Formula, SyntaxError> {
        let start = self.pos;
        let mut word = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            word.push(self.bump().unwrap());
        }
        match word.as_str() {
            "true" => Ok(Formula::top()),
            "false" => Ok(Formula::bot()),
            "U" | "UM" | "S" | "SM" | "R" | "T" => {
                let win = self.parse_optional_interval()?;
                self.expect("(")?;
                let a = self.parse_iff()?;
                self.expect(",")?;
                let b = self.parse_iff()?;
                self.expect(")")?;
                Ok(match word.as_str() {
                    "U" => Formula::until(win, a, b),
                    "UM" => Formula::until_m(win, a, b),
                    "S" => Formula::since(win, a, b),
                    "SM" => Formula::since_m(win, a, b),
                    "R" => Formula::release(win, a, b),
                    _ => Formula::trigger(win, a, b),
                })
            }
            "F" | "G" | "FP" | "GP" => {
                let win = self.parse_optional_interval()?;
                self.expect("(")?;
                let f = self.parse_iff()?;
                self.expect(")")?;
                Ok(match word.as_str() {
                    "F" => Formula::ev(win, f),
                    "G" => Formula::alw_i(win, f),
                    "FP" => Formula::ev_p(win, f),
                    _ => Formula::alw_p_i(win, f),
                })
            }
            "Alw" | "Som" | "now" | "upto" | "becf" | "becp" => {
                self.expect("(")?;
                let f = self.parse_iff()?;
                self.expect(")")?;
                Ok(match word.as_str() {
                    "Alw" => Formula::alw(f),
                    "Som" => Formula::som(f),
                    "now" => Formula::nowon(f),
                    "upto" => Formula::uptonow(f),
                    "becf" => Formula::becf(f),
                    _ => Formula::becp(f),
                })
            }
            _ => match Letter::new(&word) {
                Ok(l) => Ok(Formula::Prop(l)),
                Err(_) => Err(SyntaxError::at(
                    start + 1,
                    format!("unknown operator or invalid proposition `{word}`"),
                )),
            },
        }
    }

    /// Interval after an operator name, or the default `[0,inf)`. A `(` may
    /// open either an interval or the argument list; resolved by lookahead.
    fn parse_optional_interval(&mut self) -> Result<TimeInterval, SyntaxError> {
        self.skip_ws();
        match self.peek() {
            Some('[') => self.parse_interval().map(Some),
            Some('(') => {
                let save = self.pos;
                match self.parse_interval() {
                    Ok(iv) => Ok(Some(iv)),
                    Err(_) => {
                        self.pos = save;
                        Ok(None)
                    }
                }
            }
            _ => Ok(None),
        }
        .map(|o| o.unwrap_or_else(TimeInterval::zero_to_inf))
    }

    fn parse_interval(&mut self) -> Result<TimeInterval, SyntaxError> {
        self.skip_ws();
        let lo_closed = match self.bump() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(SyntaxError::at(self.pos, "expected `[` or `(`")),
        };
        let lo = self.parse_bound()?;
        self.expect(",")?;
        let hi = self.parse_bound()?;
        self.skip_ws();
        let hi_closed = match self.bump() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(SyntaxError::at(self.pos, "expected `]` or `)`")),
        };
        Ok(TimeInterval::new(lo, lo_closed, hi, hi_closed))
    }

    fn parse_bound(&mut self) -> Result<Bound, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        if self.eat("inf") {
            return Ok(if negative { Bound::NegInf } else { Bound::PosInf });
        }
        let mut digits = String::new();
        if negative {
            digits.push('-');
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        if digits.is_empty() || digits == "-" {
            return Err(SyntaxError::at(start + 1, "expected a bound"));
        }
        if self.peek() == Some('/') {
            digits.push(self.bump().unwrap());
            let before = digits.len();
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                digits.push(self.bump().unwrap());
            }
            if digits.len() == before {
                return Err(SyntaxError::at(self.pos + 1, "expected a denominator"));
            }
        }
        rat::parse_rat(&digits)
            .map(Bound::Fin)
            .map_err(|e| SyntaxError::at(start + 1, e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Formula printing
// ---------------------------------------------------------------------------

/// Writes `f` in the input grammar; used by `Display for Formula`.
pub fn format_formula(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    write_fm(f, 1, out)
}

/// Precedence level of a node for printing: `|` = 1, `&` = 2, atoms = 3.
fn level(f: &Formula) -> u8 {
    if recognize(f).is_some() {
        return 3;
    }
    match f {
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        _ => 3,
    }
}

/// A derived form the printer reconstructs.
enum Recognized<'a> {
    Top,
    Bot,
    Ev(&'a TimeInterval, &'a Formula),
    EvP(&'a TimeInterval, &'a Formula),
    AlwI(&'a TimeInterval, &'a Formula),
    AlwPI(&'a TimeInterval, &'a Formula),
    Alw(&'a Formula),
    Som(&'a Formula),
}

fn recognize(f: &Formula) -> Option<Recognized<'_>> {
    if f.is_top() {
        return Some(Recognized::Top);
    }
    if f.is_bot() {
        return Some(Recognized::Bot);
    }
    let zi = TimeInterval::zero_to_inf();
    match f {
        Formula::And(a, b) => {
            // Alw(g) = trigger[0,inf)(false, g) & release[0,inf)(false, g)
            if let (
                Formula::Trigger {
                    win: w1,
                    lhs: l1,
                    rhs: g1,
                },
                Formula::Release {
                    win: w2,
                    lhs: l2,
                    rhs: g2,
                },
            ) = (&**a, &**b)
            {
                if *w1 == zi && *w2 == zi && l1.is_bot() && l2.is_bot() && g1 == g2 {
                    return Some(Recognized::Alw(g1));
                }
            }
            None
        }
        Formula::Or(a, b) => {
            // Som(g) = since[0,inf)(true, g) | until[0,inf)(true, g)
            if let (
                Formula::Since {
                    win: w1,
                    matching: false,
                    lhs: l1,
                    rhs: g1,
                },
                Formula::Until {
                    win: w2,
                    matching: false,
                    lhs: l2,
                    rhs: g2,
                },
            ) = (&**a, &**b)
            {
                if *w1 == zi && *w2 == zi && l1.is_top() && l2.is_top() && g1 == g2 {
                    return Some(Recognized::Som(g1));
                }
            }
            None
        }
        Formula::Until {
            win,
            matching: false,
            lhs,
            rhs,
        } if lhs.is_top() => Some(Recognized::Ev(win, rhs)),
        Formula::Since {
            win,
            matching: false,
            lhs,
            rhs,
        } if lhs.is_top() => Some(Recognized::EvP(win, rhs)),
        Formula::Release { win, lhs, rhs } if lhs.is_bot() => Some(Recognized::AlwI(win, rhs)),
        Formula::Trigger { win, lhs, rhs } if lhs.is_bot() => Some(Recognized::AlwPI(win, rhs)),
        _ => None,
    }
}

fn write_ivl(win: &TimeInterval, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if *win == TimeInterval::zero_to_inf() {
        return Ok(());
    }
    write!(out, "{}", win)
}

fn write_fm(f: &Formula, need: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(f) < need {
        write!(out, "(")?;
        write_fm(f, 1, out)?;
        return write!(out, ")");
    }
    if let Some(r) = recognize(f) {
        return match r {
            Recognized::Top => write!(out, "true"),
            Recognized::Bot => write!(out, "false"),
            Recognized::Ev(w, g) => {
                write!(out, "F")?;
                write_ivl(w, out)?;
                write!(out, "(")?;
                write_fm(g, 1, out)?;
                write!(out, ")")
            }
            Recognized::EvP(w, g) => {
                write!(out, "FP")?;
                write_ivl(w, out)?;
                write!(out, "(")?;
                write_fm(g, 1, out)?;
                write!(out, ")")
            }
            Recognized::AlwI(w, g) => {
                write!(out, "G")?;
                write_ivl(w, out)?;
                write!(out, "(")?;
                write_fm(g, 1, out)?;
                write!(out, ")")
            }
            Recognized::AlwPI(w, g) => {
                write!(out, "GP")?;
                write_ivl(w, out)?;
                write!(out, "(")?;
                write_fm(g, 1, out)?;
                write!(out, ")")
            }
            Recognized::Alw(g) => {
                write!(out, "Alw(")?;
                write_fm(g, 1, out)?;
                write!(out, ")")
            }
            Recognized::Som(g) => {
                write!(out, "Som(")?;
                write_fm(g, 1, out)?;
                write!(out, ")")
            }
        };
    }
    match f {
        Formula::Prop(l) => write!(out, "{}", l),
        Formula::NegProp(l) => write!(out, "!{}", l),
        Formula::And(a, b) => {
            write_fm(a, 2, out)?;
            write!(out, " & ")?;
            write_fm(b, 3, out)
        }
        Formula::Or(a, b) => {
            write_fm(a, 1, out)?;
            write!(out, " | ")?;
            write_fm(b, 2, out)
        }
        Formula::Until {
            win,
            matching,
            lhs,
            rhs,
        } => {
            write!(out, "{}", if *matching { "UM" } else { "U" })?;
            write_ivl(win, out)?;
            write!(out, "(")?;
            write_fm(lhs, 1, out)?;
            write!(out, ",")?;
            write_fm(rhs, 1, out)?;
            write!(out, ")")
        }
        Formula::Since {
            win,
            matching,
            lhs,
            rhs,
        } => {
            write!(out, "{}", if *matching { "SM" } else { "S" })?;
            write_ivl(win, out)?;
            write!(out, "(")?;
            write_fm(lhs, 1, out)?;
            write!(out, ",")?;
            write_fm(rhs, 1, out)?;
            write!(out, ")")
        }
        Formula::Release { win, lhs, rhs } => {
            write!(out, "R")?;
            write_ivl(win, out)?;
            write!(out, "(")?;
            write_fm(lhs, 1, out)?;
            write!(out, ",")?;
            write_fm(rhs, 1, out)?;
            write!(out, ")")
        }
        Formula::Trigger { win, lhs, rhs } => {
            write!(out, "T")?;
            write_ivl(win, out)?;
            write!(out, "(")?;
            write_fm(lhs, 1, out)?;
            write!(out, ",")?;
            write_fm(rhs, 1, out)?;
            write!(out, ")")
        }
        Formula::Becf(g) => {
            write!(out, "becf(")?;
            write_fm(g, 1, out)?;
            write!(out, ")")
        }
        Formula::Becp(g) => {
            write!(out, "becp(")?;
            write_fm(g, 1, out)?;
            write!(out, ")")
        }
    }
}

// ---------------------------------------------------------------------------
// Behavior files
// ---------------------------------------------------------------------------

/// A parsed behavior of either time domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyBehavior {
    Dense(DenseBehavior),
    Discrete(DiscreteBehavior),
}

/// Parses a behavior file of either kind (detected by `lefttail` vs
/// `dlefttail` after the alphabet line).
pub fn parse_behavior(src: &str) -> Result<AnyBehavior, SyntaxError> {
    let lines = content_lines(src);
    for (_, line) in &lines {
        let word = line.split_whitespace().next().unwrap_or("");
        match word {
            "lefttail" => return parse_dense_behavior(src).map(AnyBehavior::Dense),
            "dlefttail" => return parse_discrete_behavior(src).map(AnyBehavior::Discrete),
            _ => continue,
        }
    }
    Err(SyntaxError::at(1, "no `lefttail` or `dlefttail` line found"))
}

/// Non-comment, non-blank lines with their 1-based numbers.
fn content_lines(src: &str) -> Vec<(usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn parse_alphabet(line: &str, lineno: usize) -> Result<BTreeSet<Letter>, SyntaxError> {
    let mut it = line.split_whitespace();
    match it.next() {
        Some("alphabet") => {}
        _ => {
            return Err(SyntaxError::at(1, "expected `alphabet` line").on_line(lineno));
        }
    }
    let mut out = BTreeSet::new();
    for w in it {
        let l = Letter::new(w)
            .map_err(|e| SyntaxError::at(1, e.to_string()).on_line(lineno))?;
        out.insert(l);
    }
    Ok(out)
}

/// Parses `{p q}` against the declared alphabet.
fn parse_value(
    s: &str,
    alphabet: &BTreeSet<Letter>,
    lineno: usize,
) -> Result<BTreeSet<Letter>, SyntaxError> {
    let s = s.trim();
    let inner = s
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| SyntaxError::at(1, format!("expected `{{..}}` value, got `{s}`")).on_line(lineno))?;
    let mut out = BTreeSet::new();
    for w in inner.split_whitespace() {
        let l = Letter::new(w)
            .map_err(|e| SyntaxError::at(1, e.to_string()).on_line(lineno))?;
        if !alphabet.contains(&l) {
            return Err(
                SyntaxError::at(1, format!("letter `{w}` not in the alphabet")).on_line(lineno),
            );
        }
        out.insert(l);
    }
    Ok(out)
}

fn value_to_string(v: &BTreeSet<Letter>) -> String {
    let names: Vec<&str> = v.iter().map(|l| l.name()).collect();
    format!("{{{}}}", names.join(" "))
}

/// Parses the dense behavior file format.
pub fn parse_dense_behavior(src: &str) -> Result<DenseBehavior, SyntaxError> {
    let lines = content_lines(src);
    let mut i = 0;
    let take = |i: &mut usize| -> Option<(usize, &str)> {
        let r = lines.get(*i).copied();
        *i += 1;
        r
    };
    let (ln, first) =
        take(&mut i).ok_or_else(|| SyntaxError::at(1, "empty behavior file"))?;
    let alphabet = parse_alphabet(first, ln)?;

    let (ln, ltline) = take(&mut i)
        .ok_or_else(|| SyntaxError::at(1, "missing `lefttail` line"))?;
    let left = ltline
        .strip_prefix("lefttail")
        .ok_or_else(|| SyntaxError::at(1, "expected `lefttail`").on_line(ln))
        .and_then(|rest| parse_value(rest, &alphabet, ln))?;

    let mut segs: Vec<(usize, TimeInterval, BTreeSet<Letter>)> = Vec::new();
    let mut right: Option<BTreeSet<Letter>> = None;
    while let Some((ln, line)) = take(&mut i) {
        if let Some(rest) = line.strip_prefix("seg ") {
            let rest = rest.trim();
            // The interval token ends at the first `{`.
            let brace = rest.find('{').ok_or_else(|| {
                SyntaxError::at(1, "seg line needs a `{..}` value").on_line(ln)
            })?;
            let (ivl_str, val_str) = rest.split_at(brace);
            let mut p = Parser::new(ivl_str.trim());
            let iv = p
                .parse_interval()
                .map_err(|e| e.on_line(ln))?;
            p.skip_ws();
            if !p.at_end() {
                return Err(SyntaxError::at(1, "trailing input after interval").on_line(ln));
            }
            if !iv.is_bounded() {
                return Err(
                    SyntaxError::at(1, "seg intervals must have finite endpoints").on_line(ln),
                );
            }
            if iv.is_empty() {
                return Err(SyntaxError::at(1, "seg interval is empty").on_line(ln));
            }
            let val = parse_value(val_str, &alphabet, ln)?;
            segs.push((ln, iv, val));
        } else if let Some(rest) = line.strip_prefix("righttail") {
            right = Some(parse_value(rest, &alphabet, ln)?);
            if i < lines.len() {
                let (ln2, _) = lines[i];
                return Err(
                    SyntaxError::at(1, "content after `righttail` line").on_line(ln2)
                );
            }
            break;
        } else {
            return Err(
                SyntaxError::at(1, format!("unexpected line `{line}`")).on_line(ln)
            );
        }
    }
    let right = right.ok_or_else(|| SyntaxError::at(1, "missing `righttail` line"))?;

    if segs.is_empty() {
        if left != right {
            return Err(SyntaxError::at(
                1,
                "a behavior with different tail values needs at least one seg",
            ));
        }
        return DenseBehavior::constant(alphabet, left)
            .map_err(|e| SyntaxError::at(1, e.to_string()));
    }

    let first_iv = &segs[0].1;
    let last_iv = &segs[segs.len() - 1].1;
    let mut pieces = Vec::with_capacity(segs.len() + 2);
    pieces.push(Piece {
        interval: TimeInterval::new(
            Bound::NegInf,
            false,
            first_iv.lo().clone(),
            !first_iv.lo_closed(),
        ),
        value: left,
    });
    let seg_lines: Vec<usize> = segs.iter().map(|(ln, _, _)| *ln).collect();
    for (_, iv, val) in segs.iter().cloned() {
        pieces.push(Piece {
            interval: iv,
            value: val,
        });
    }
    pieces.push(Piece {
        interval: TimeInterval::new(
            last_iv.hi().clone(),
            !last_iv.hi_closed(),
            Bound::PosInf,
            false,
        ),
        value: right,
    });
    DenseBehavior::from_pieces(alphabet, pieces).map_err(|e| {
        let line = match e {
            crate::behavior::BehaviorError::NotContiguous(_, b) if b >= 1 => {
                seg_lines.get(b - 1).copied().unwrap_or(1)
            }
            _ => 1,
        };
        SyntaxError::at(1, e.to_string()).on_line(line)
    })
}

/// Prints the dense behavior file format (inverse of
/// [`parse_dense_behavior`] on canonical forms).
pub fn print_dense_behavior(b: &DenseBehavior) -> String {
    let mut out = String::new();
    let names: Vec<&str> = b.alphabet().iter().map(|l| l.name()).collect();
    out.push_str(&format!("alphabet {}\n", names.join(" ")).replace("alphabet \n", "alphabet\n"));
    let pieces = b.pieces();
    let n = pieces.len();
    out.push_str(&format!("lefttail {}\n", value_to_string(&pieces[0].value)));
    if n == 2 {
        // No interior piece: print a helper segment covering the first unit
        // of the right piece; it merges back on load.
        let boundary = pieces[0].interval.hi().clone();
        let b_rat = boundary.as_rat().expect("finite boundary").clone();
        let helper = TimeInterval::new(
            boundary,
            pieces[1].interval.lo_closed(),
            Bound::Fin(&b_rat + rat::rat_int(1)),
            true,
        );
        out.push_str(&format!(
            "seg {} {}\n",
            helper,
            value_to_string(&pieces[1].value)
        ));
    } else if n >= 3 {
        for p in &pieces[1..n - 1] {
            out.push_str(&format!(
                "seg {} {}\n",
                p.interval,
                value_to_string(&p.value)
            ));
        }
    }
    out.push_str(&format!(
        "righttail {}\n",
        value_to_string(&pieces[n - 1].value)
    ));
    out
}

/// Parses the discrete behavior file format.
pub fn parse_discrete_behavior(src: &str) -> Result<DiscreteBehavior, SyntaxError> {
    let lines = content_lines(src);
    let mut i = 0;
    let take = |i: &mut usize| -> Option<(usize, &str)> {
        let r = lines.get(*i).copied();
        *i += 1;
        r
    };
    let (ln, first) =
        take(&mut i).ok_or_else(|| SyntaxError::at(1, "empty behavior file"))?;
    let alphabet = parse_alphabet(first, ln)?;

    let (ln, ltline) = take(&mut i)
        .ok_or_else(|| SyntaxError::at(1, "missing `dlefttail` line"))?;
    let left = ltline
        .strip_prefix("dlefttail")
        .ok_or_else(|| SyntaxError::at(1, "expected `dlefttail`").on_line(ln))
        .and_then(|rest| parse_value(rest, &alphabet, ln))?;

    let (ln, core_line) =
        take(&mut i).ok_or_else(|| SyntaxError::at(1, "missing `core` line"))?;
    let rest = core_line
        .strip_prefix("core")
        .ok_or_else(|| SyntaxError::at(1, "expected `core`").on_line(ln))?
        .trim();
    let (k0_part, values_part) = match rest.find(|c: char| c == '{') {
        Some(idx) => rest.split_at(idx),
        None => (rest, ""),
    };
    let k0_part = k0_part.trim();
    let k0: i64 = k0_part
        .strip_prefix("k0=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| {
            SyntaxError::at(1, format!("expected `k0=<integer>`, got `{k0_part}`")).on_line(ln)
        })?;
    let mut core = Vec::new();
    let mut remaining = values_part.trim();
    while !remaining.is_empty() {
        let close = remaining.find('}').ok_or_else(|| {
            SyntaxError::at(1, "unterminated `{..}` value").on_line(ln)
        })?;
        let (v, rest2) = remaining.split_at(close + 1);
        core.push(parse_value(v, &alphabet, ln)?);
        remaining = rest2.trim();
    }

    let (ln, rtline) = take(&mut i)
        .ok_or_else(|| SyntaxError::at(1, "missing `drighttail` line"))?;
    let right = rtline
        .strip_prefix("drighttail")
        .ok_or_else(|| SyntaxError::at(1, "expected `drighttail`").on_line(ln))
        .and_then(|rest| parse_value(rest, &alphabet, ln))?;
    if i < lines.len() {
        let (ln2, _) = lines[i];
        return Err(SyntaxError::at(1, "content after `drighttail` line").on_line(ln2));
    }

    DiscreteBehavior::new(alphabet, left, k0, core, right)
        .map_err(|e| SyntaxError::at(1, e.to_string()))
}

/// Prints the discrete behavior file format.
pub fn print_discrete_behavior(d: &DiscreteBehavior) -> String {
    let names: Vec<&str> = d.alphabet().iter().map(|l| l.name()).collect();
    let mut out = String::new();
    out.push_str(&format!("alphabet {}\n", names.join(" ")).replace("alphabet \n", "alphabet\n"));
    out.push_str(&format!("dlefttail {}\n", value_to_string(d.left_value())));
    let mut core_line = format!("core k0={}", d.core_start());
    for v in d.core() {
        core_line.push(' ');
        core_line.push_str(&value_to_string(v));
    }
    out.push_str(&core_line);
    out.push('\n');
    out.push_str(&format!("drighttail {}\n", value_to_string(d.right_value())));
    out
}

impl fmt::Display for DenseBehavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_dense_behavior(self))
    }
}

impl fmt::Display for DiscreteBehavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_discrete_behavior(self))
    }
}

// ---------------------------------------------------------------------------
// Verification problem files
// ---------------------------------------------------------------------------

/// The parsed content of a verification problem file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub sys: Vec<Formula>,
    pub prop: Formula,
}

/// Finds a nested temporal subformula, if any (witness for flatness errors).
pub(crate) fn first_nested_temporal(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Prop(_) | Formula::NegProp(_) => None,
        Formula::And(a, b) | Formula::Or(a, b) => {
            first_nested_temporal(a).or_else(|| first_nested_temporal(b))
        }
        Formula::Until { lhs, rhs, .. }
        | Formula::Since { lhs, rhs, .. }
        | Formula::Release { lhs, rhs, .. }
        | Formula::Trigger { lhs, rhs, .. } => [lhs, rhs]
            .into_iter()
            .find(|g| g.temporal_depth() > 0)
            .map(|g| &**g),
        Formula::Becf(g) | Formula::Becp(g) => {
            if g.temporal_depth() > 0 {
                Some(g)
            } else {
                None
            }
        }
    }
}

/// Parses a problem file: `sys:` lines (zero or more), one `prop:` line,
/// every formula flat.
pub fn parse_problem(src: &str) -> Result<ProblemFile, SyntaxError> {
    let mut sys = Vec::new();
    let mut prop: Option<Formula> = None;
    for (ln, line) in content_lines(src) {
        let (kind, body) = if let Some(rest) = line.strip_prefix("sys:") {
            ("sys", rest)
        } else if let Some(rest) = line.strip_prefix("prop:") {
            ("prop", rest)
        } else {
            return Err(SyntaxError::at(
                1,
                format!("expected `sys:` or `prop:`, got `{line}`"),
            )
            .on_line(ln));
        };
        let f = parse_formula(body).map_err(|e| {
            // Column offset: account for the prefix and any indentation lost
            // to trimming is not tracked; report within the formula text.
            SyntaxError::at(e.col + kind.len() + 1, e.msg).on_line(ln)
        })?;
        if !f.is_flat() {
            let witness = first_nested_temporal(&f)
                .map(|g| g.to_string())
                .unwrap_or_default();
            return Err(SyntaxError::at(
                1,
                format!("formula is not flat: temporal operator applied to temporal argument `{witness}`"),
            )
            .on_line(ln));
        }
        match kind {
            "sys" => sys.push(f),
            _ => {
                if prop.replace(f).is_some() {
                    return Err(
                        SyntaxError::at(1, "more than one `prop:` line").on_line(ln)
                    );
                }
            }
        }
    }
    let prop = prop.ok_or_else(|| SyntaxError::at(1, "missing `prop:` line"))?;
    Ok(ProblemFile { sys, prop })
}
