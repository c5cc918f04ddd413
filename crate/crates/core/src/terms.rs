//! Loop words: syntax tree, parser, printer and evaluation over a table.
//!
//! Concrete syntax, tightest binding first:
//!
//! | form      | meaning                         | associativity |
//! |-----------|---------------------------------|---------------|
//! | `t'`      | two-sided inverse               | postfix       |
//! | `s t`     | product by juxtaposition        | left          |
//! | `s\t s/t` | left and right division         | left          |
//! | `s * t`   | product, loosest                | left          |
//!
//! Variables are single lowercase letters other than `e`, which names the
//! identity. `·` is accepted as a synonym for `*`. So `x y \ z * w` reads
//! `((xy)\z) * w`, and `x * y/z` reads `x * (y/z)`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::par::{self, Exec};
use crate::report::{CheckReport, Counterexample, Failure};
use crate::table::LoopTable;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(char),
    Identity,
    Mul(Box<Term>, Box<Term>),
    LDiv(Box<Term>, Box<Term>),
    RDiv(Box<Term>, Box<Term>),
    Inv(Box<Term>),
}

impl Term {
    pub fn var(c: char) -> Term {
        Term::Var(c)
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn ldiv(a: Term, b: Term) -> Term {
        Term::LDiv(Box::new(a), Box::new(b))
    }

    pub fn rdiv(a: Term, b: Term) -> Term {
        Term::RDiv(Box::new(a), Box::new(b))
    }

    pub fn inv(a: Term) -> Term {
        Term::Inv(Box::new(a))
    }

    /// Parses a single term (no `=`).
    pub fn parse(src: &str) -> Result<Term, ParseError> {
        let mut p = Parser::new(src)?;
        let t = p.expr()?;
        p.expect_end()?;
        Ok(t)
    }

    /// Distinct variables, sorted.
    pub fn vars(&self) -> Vec<char> {
        let mut counts = BTreeMap::new();
        self.count_vars(&mut counts);
        counts.into_keys().collect()
    }

    fn count_vars(&self, counts: &mut BTreeMap<char, usize>) {
        match self {
            Term::Var(c) => *counts.entry(*c).or_default() += 1,
            Term::Identity => {}
            Term::Inv(a) => a.count_vars(counts),
            Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => {
                a.count_vars(counts);
                b.count_vars(counts);
            }
        }
    }

    /// Occurrences of each variable.
    pub fn occurrences(&self) -> BTreeMap<char, usize> {
        let mut counts = BTreeMap::new();
        self.count_vars(&mut counts);
        counts
    }

    /// Number of variable and identity leaves.
    pub fn length(&self) -> usize {
        match self {
            Term::Var(_) | Term::Identity => 1,
            Term::Inv(a) => a.length(),
            Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => a.length() + b.length(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Identity => 1,
            Term::Inv(a) => 1 + a.depth(),
            Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// True when the term uses only `·`, variables and `e`.
    pub fn is_multiplicative(&self) -> bool {
        match self {
            Term::Var(_) | Term::Identity => true,
            Term::Mul(a, b) => a.is_multiplicative() && b.is_multiplicative(),
            _ => false,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Var(_) | Term::Identity | Term::Inv(_) => 3,
            Term::Mul(..) => 2,
            Term::LDiv(..) | Term::RDiv(..) => 1,
        }
    }

    /// Evaluates under `env`.
    pub fn eval(&self, table: &LoopTable, env: &BTreeMap<char, usize>) -> Result<usize, EvalError> {
        Ok(match self {
            Term::Var(c) => {
                let v = *env.get(c).ok_or(EvalError::UnboundVar(*c))?;
                if v >= table.order() {
                    return Err(EvalError::ElementOutOfRange(v));
                }
                v
            }
            Term::Identity => table.identity(),
            Term::Mul(a, b) => table.mul(a.eval(table, env)?, b.eval(table, env)?),
            Term::LDiv(a, b) => table.ldiv(a.eval(table, env)?, b.eval(table, env)?),
            Term::RDiv(a, b) => table.rdiv(a.eval(table, env)?, b.eval(table, env)?),
            Term::Inv(a) => {
                let v = a.eval(table, env)?;
                table.inverse(v).ok_or(EvalError::InvUndefined(v))?
            }
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(f: &mut fmt::Formatter<'_>, t: &Term, paren: bool) -> fmt::Result {
            if paren {
                write!(f, "({t})")
            } else {
                write!(f, "{t}")
            }
        }
        match self {
            Term::Var(c) => write!(f, "{c}"),
            Term::Identity => write!(f, "e"),
            Term::Inv(a) => {
                wrap(f, a, a.precedence() < 3)?;
                write!(f, "'")
            }
            Term::Mul(a, b) => {
                wrap(f, a, a.precedence() < 2)?;
                wrap(f, b, b.precedence() < 3)
            }
            Term::LDiv(a, b) | Term::RDiv(a, b) => {
                wrap(f, a, false)?;
                write!(f, "{}", if matches!(self, Term::LDiv(..)) { '\\' } else { '/' })?;
                wrap(f, b, b.precedence() < 2)
            }
        }
    }
}

/// An equation `lhs = rhs` between two loop words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    vars: Vec<char>,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Identity {
        let mut vars = lhs.vars();
        vars.extend(rhs.vars());
        vars.sort_unstable();
        vars.dedup();
        Identity { lhs, rhs, vars }
    }

    pub fn parse(src: &str) -> Result<Identity, ParseError> {
        let mut p = Parser::new(src)?;
        let lhs = p.expr()?;
        p.expect(Tok::Eq)?;
        let rhs = p.expr()?;
        p.expect_end()?;
        Ok(Identity::new(lhs, rhs))
    }

    /// Variables in evaluation order (alphabetical).
    pub fn vars(&self) -> &[char] {
        &self.vars
    }

    pub fn is_multiplicative(&self) -> bool {
        self.lhs.is_multiplicative() && self.rhs.is_multiplicative()
    }

    /// Whether both sides have the same length and each variable occurs
    /// equally often on both sides. Reported as metadata only.
    pub fn is_balanced(&self) -> bool {
        self.lhs.length() == self.rhs.length() && self.lhs.occurrences() == self.rhs.occurrences()
    }

    pub fn check(&self, table: &LoopTable) -> CheckReport {
        check_identity(self, table)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable {0} is unbound")]
    UnboundVar(char),
    #[error("element {0} has distinct left and right inverses")]
    InvUndefined(usize),
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Var(char),
    E,
    LParen,
    RParen,
    Star,
    Backslash,
    Slash,
    Prime,
    Eq,
    End,
}

impl Tok {
    fn describe(self) -> String {
        match self {
            Tok::Var(c) => format!("variable '{c}'"),
            Tok::E => "'e'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Star => "'*'".into(),
            Tok::Backslash => "'\\'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Prime => "'''".into(),
            Tok::Eq => "'='".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_atom(self) -> bool {
        matches!(self, Tok::Var(_) | Tok::E | Tok::LParen)
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        let mut toks = Vec::new();
        for (pos, ch) in src.char_indices() {
            let tok = match ch {
                c if c.is_whitespace() => continue,
                'e' => Tok::E,
                c @ 'a'..='z' => Tok::Var(c),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '*' | '·' => Tok::Star,
                '\\' => Tok::Backslash,
                '/' => Tok::Slash,
                '\'' => Tok::Prime,
                '=' => Tok::Eq,
                other => {
                    return Err(ParseError { pos, msg: format!("unexpected character '{other}'") })
                }
            };
            toks.push((tok, pos));
        }
        toks.push((Tok::End, src.len()));
        Ok(Parser { toks, at: 0 })
    }

    fn peek(&self) -> (Tok, usize) {
        self.toks[self.at]
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at];
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        let (tok, pos) = self.peek();
        Err(ParseError { pos, msg: format!("expected {expected}, found {}", tok.describe()) })
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if self.peek().0 == want {
            self.bump();
            Ok(())
        } else {
            self.error(&want.describe())
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        self.expect(Tok::End)
    }

    fn expr(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.division()?;
        while self.peek().0 == Tok::Star {
            self.bump();
            let rhs = self.division()?;
            lhs = Term::mul(lhs, rhs);
        }
        Ok(lhs)
    }

    fn division(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.juxtaposition()?;
        loop {
            match self.peek().0 {
                Tok::Backslash => {
                    self.bump();
                    lhs = Term::ldiv(lhs, self.juxtaposition()?);
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Term::rdiv(lhs, self.juxtaposition()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn juxtaposition(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.postfix()?;
        while self.peek().0.starts_atom() {
            lhs = Term::mul(lhs, self.postfix()?);
        }
        Ok(lhs)
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while self.peek().0 == Tok::Prime {
            self.bump();
            t = Term::inv(t);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().0 {
            Tok::Var(c) => {
                self.bump();
                Ok(Term::Var(c))
            }
            Tok::E => {
                self.bump();
                Ok(Term::Identity)
            }
            Tok::LParen => {
                self.bump();
                let t = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => self.error("a variable, 'e' or '('"),
        }
    }
}

/// Parsed text: either a bare term or an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Term(Term),
    Identity(Identity),
}

/// Parses an identity when the text contains `=`, else a term.
pub fn parse(src: &str) -> Result<Parsed, ParseError> {
    if src.contains('=') {
        Identity::parse(src).map(Parsed::Identity)
    } else {
        Term::parse(src).map(Parsed::Term)
    }
}

/// Free-function form of [`Term::eval`].
pub fn eval(term: &Term, table: &LoopTable, env: &BTreeMap<char, usize>) -> Result<usize, EvalError> {
    term.eval(table, env)
}

/// Postfix program for fast repeated evaluation.
#[derive(Debug, Clone)]
pub(crate) struct Program {
    ops: Vec<Op>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Op {
    Slot(usize),
    E,
    Mul,
    LDiv,
    RDiv,
    Inv,
}

impl Program {
    pub(crate) fn compile(term: &Term, vars: &[char]) -> Program {
        fn go(t: &Term, vars: &[char], out: &mut Vec<Op>) {
            match t {
                Term::Var(c) => {
                    let slot = vars.iter().position(|v| v == c).expect("variable listed");
                    out.push(Op::Slot(slot));
                }
                Term::Identity => out.push(Op::E),
                Term::Inv(a) => {
                    go(a, vars, out);
                    out.push(Op::Inv);
                }
                Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => {
                    go(a, vars, out);
                    go(b, vars, out);
                    out.push(match t {
                        Term::Mul(..) => Op::Mul,
                        Term::LDiv(..) => Op::LDiv,
                        _ => Op::RDiv,
                    });
                }
            }
        }
        let mut ops = Vec::new();
        go(term, vars, &mut ops);
        Program { ops }
    }

    #[inline]
    pub(crate) fn run(&self, table: &LoopTable, slots: &[usize], stack: &mut Vec<usize>) -> Result<usize, usize> {
        stack.clear();
        for op in &self.ops {
            match *op {
                Op::Slot(i) => stack.push(slots[i]),
                Op::E => stack.push(0),
                Op::Inv => {
                    let a = stack.pop().unwrap();
                    stack.push(table.inverse(a).ok_or(a)?);
                }
                Op::Mul | Op::LDiv | Op::RDiv => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    stack.push(match op {
                        Op::Mul => table.mul(a, b),
                        Op::LDiv => table.ldiv(a, b),
                        _ => table.rdiv(a, b),
                    });
                }
            }
        }
        Ok(stack[0])
    }
}

/// Exhaustively checks `id` on `table`, reporting the lexicographically least
/// failing assignment (variables in alphabetical order, elements ascending).
pub fn check_identity(id: &Identity, table: &LoopTable) -> CheckReport {
    check_identity_with(id, table, Exec::default())
}

pub fn check_identity_with(id: &Identity, table: &LoopTable, exec: Exec) -> CheckReport {
    let n = table.order();
    let k = id.vars().len();
    let lhs = Program::compile(&id.lhs, id.vars());
    let rhs = Program::compile(&id.rhs, id.vars());

    // Each worker owns one value of the first variable and scans the rest in
    // lexicographic order; the least block with a failure wins.
    let blocks: Vec<usize> = if k == 0 { vec![0] } else { (0..n).collect() };
    let block_size = if k == 0 { 1 } else { (n as u64).pow(k as u32 - 1) };
    let results = par::map_ordered(exec, blocks, |first| {
        let mut slots = vec![0usize; k];
        if k > 0 {
            slots[0] = first;
        }
        let mut stack = Vec::with_capacity(16);
        let mut checked = 0u64;
        loop {
            checked += 1;
            let failure = match (lhs.run(table, &slots, &mut stack), rhs.run(table, &slots, &mut stack)) {
                (Ok(a), Ok(b)) if a == b => None,
                (Ok(a), Ok(b)) => Some(Failure::Mismatch { lhs: a, rhs: b }),
                (Err(el), _) | (_, Err(el)) => Some(Failure::InverseUndefined { element: el }),
            };
            if let Some(failure) = failure {
                return (checked, Some((slots.clone(), failure)));
            }
            if !advance(&mut slots[k.min(1)..], n) {
                return (checked, None);
            }
        }
    });

    let mut checked = 0u64;
    for (block_checked, failure) in results {
        if let Some((slots, failure)) = failure {
            checked += block_checked;
            let assignment = id.vars().iter().map(|c| c.to_string()).zip(slots).collect();
            return CheckReport::fail(Counterexample::new(assignment, failure), checked);
        }
        checked += block_checked;
    }
    debug_assert_eq!(checked, block_size * if k == 0 { 1 } else { n as u64 });
    CheckReport::pass(checked)
}

/// Odometer increment, last position fastest. Returns false on wrap-around.
pub(crate) fn advance(slots: &mut [usize], n: usize) -> bool {
    for s in slots.iter_mut().rev() {
        *s += 1;
        if *s < n {
            return true;
        }
        *s = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> Identity {
        Identity::parse(s).unwrap()
    }

    #[test]
    fn middle_bol_parses() {
        let mb = id("x(yz\\x) = (x/z)(y\\x)");
        assert_eq!(mb.vars(), &['x', 'y', 'z']);
        let expect_lhs = Term::mul(
            Term::var('x'),
            Term::ldiv(Term::mul(Term::var('y'), Term::var('z')), Term::var('x')),
        );
        assert_eq!(mb.lhs, expect_lhs);
        let expect_rhs = Term::mul(
            Term::rdiv(Term::var('x'), Term::var('z')),
            Term::ldiv(Term::var('y'), Term::var('x')),
        );
        assert_eq!(mb.rhs, expect_rhs);
    }

    #[test]
    fn star_is_loosest() {
        let i = id("x * y/z = x(y/z)");
        assert_eq!(i.lhs, i.rhs);
        let t = Term::parse("x y \\ z * w").unwrap();
        let want = Term::mul(
            Term::ldiv(Term::mul(Term::var('x'), Term::var('y')), Term::var('z')),
            Term::var('w'),
        );
        assert_eq!(t, want);
        assert_eq!(Term::parse("x·y z").unwrap(), Term::parse("x * (yz)").unwrap());
    }

    #[test]
    fn divisions_left_associate_and_prime_binds_tightest() {
        assert_eq!(Term::parse("x/y/z").unwrap(), Term::parse("(x/y)/z").unwrap());
        assert_eq!(Term::parse("xy'").unwrap(), Term::mul(Term::var('x'), Term::inv(Term::var('y'))));
        assert_eq!(Term::parse("(yx)''").unwrap().depth(), 4);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = Term::parse("x(").unwrap_err();
        assert_eq!(err.pos, 2);
        assert_eq!(Identity::parse("x = ").unwrap_err().pos, 4);
        assert_eq!(Term::parse("x # y").unwrap_err().pos, 2);
        assert_eq!(Term::parse("x)").unwrap_err().pos, 1);
        assert!(Identity::parse("xy").is_err());
    }

    #[test]
    fn printing_reparses() {
        for s in ["x(yz\\x)", "(x/z)(y\\x)", "x\\(y\\z)", "(x/y)/z", "((xy)z)'", "x'y'", "(x\\y)z", "e x"] {
            let t = Term::parse(s).unwrap();
            assert_eq!(Term::parse(&t.to_string()).unwrap(), t, "{s} printed as {t}");
        }
    }

    #[test]
    fn eval_examples() {
        let z3 = LoopTable::cyclic(3);
        let env: BTreeMap<char, usize> = [('x', 1), ('y', 1)].into();
        assert_eq!(Term::parse("x y'").unwrap().eval(&z3, &env), Ok(0));
        let env: BTreeMap<char, usize> = [('x', 2)].into();
        assert_eq!(Term::parse("e x").unwrap().eval(&z3, &env), Ok(2));
        assert_eq!(Term::parse("z").unwrap().eval(&z3, &env), Err(EvalError::UnboundVar('z')));
    }

    #[test]
    fn check_identity_on_groups() {
        let z4 = LoopTable::cyclic(4);
        let r = check_identity(&id("x(yz\\x) = (x/z)(y\\x)"), &z4);
        assert!(r.holds);
        assert_eq!(r.checked_assignments, 64);
        assert!(check_identity(&id("x y * x = x * y x"), &z4).holds);
    }

    #[test]
    fn least_counterexample_is_reported() {
        let z4 = LoopTable::cyclic(4);
        let r = check_identity(&id("xx = x"), &z4);
        assert!(!r.holds);
        let cx = r.counterexample.unwrap();
        assert_eq!(cx.assignment, vec![("x".to_string(), 1)]);
        assert_eq!(cx.failure, Failure::Mismatch { lhs: 2, rhs: 1 });
        // x - y = y - x first fails at x=0, y=1
        let r = check_identity(&id("x/y = y/x"), &z4);
        assert_eq!(r.counterexample.unwrap().assignment, vec![("x".into(), 0), ("y".into(), 1)]);
    }

    #[test]
    fn closed_identities_have_one_assignment() {
        let z2 = LoopTable::cyclic(2);
        let r = check_identity(&id("e e = e"), &z2);
        assert!(r.holds);
        assert_eq!(r.checked_assignments, 1);
    }

    #[test]
    fn balance_metadata() {
        assert!(id("(xy)x = x(yx)").is_balanced());
        assert!(!id("x(x\\y) = y").is_balanced());
    }
}
