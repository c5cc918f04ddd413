//! Executable claims: one universally quantified statement evaluated on one
//! table, with its verdict and witness.

use serde::Serialize;

use crate::mappings;
use crate::table::LoopTable;
use crate::terms::advance;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    /// An identity held for every assignment.
    Holds,
    /// An identity failed.
    Fails,
    /// Every side of a biconditional or equivalence cluster has the same value.
    Agree { sides: Vec<bool> },
    Disagree { sides: Vec<bool> },
    /// Not evaluated; the code says why.
    Skipped { code: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub lemma_id: String,
    pub item: String,
    pub statement: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// How an ambiguous or misprinted statement was read, if at all.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reading: Option<String>,
    /// Set on claims that evaluate a corrected reading of a misprinted
    /// statement; the statement as printed is always reported separately.
    pub erratum: bool,
}

impl Claim {
    pub fn new(lemma_id: &str, item: impl Into<String>, statement: impl Into<String>, verdict: Verdict) -> Self {
        Claim {
            lemma_id: lemma_id.to_string(),
            item: item.into(),
            statement: statement.into(),
            verdict,
            witness: None,
            reading: None,
            erratum: false,
        }
    }

    pub fn skipped(lemma_id: &str, item: impl Into<String>, statement: impl Into<String>, code: &str) -> Self {
        Claim::new(lemma_id, item, statement, Verdict::Skipped { code: code.to_string() })
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Self {
        self.witness = witness;
        self
    }

    pub fn with_reading(mut self, reading: &str) -> Self {
        self.reading = Some(reading.to_string());
        self
    }

    pub fn as_erratum(mut self, note: &str) -> Self {
        self.erratum = true;
        self.reading = Some(note.to_string());
        self
    }

    pub fn label(&self) -> String {
        format!("{}:{}", self.lemma_id, self.item)
    }

    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Holds | Verdict::Agree { .. })
    }

    pub fn failed(&self) -> bool {
        matches!(self.verdict, Verdict::Fails | Verdict::Disagree { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.verdict, Verdict::Skipped { .. })
    }

    /// The two sides of a biconditional, when it has them.
    pub fn sides(&self) -> Option<&[bool]> {
        match &self.verdict {
            Verdict::Agree { sides } | Verdict::Disagree { sides } => Some(sides),
            _ => None,
        }
    }
}

/// Loop operations with short names, for writing claims compactly.
#[derive(Clone, Copy)]
pub struct Ops<'a> {
    pub t: &'a LoopTable,
}

impl<'a> Ops<'a> {
    pub fn new(t: &'a LoopTable) -> Self {
        Ops { t }
    }

    pub fn n(&self) -> usize {
        self.t.order()
    }

    pub fn m(&self, a: usize, b: usize) -> usize {
        self.t.mul(a, b)
    }

    pub fn ld(&self, a: usize, b: usize) -> usize {
        self.t.ldiv(a, b)
    }

    pub fn rd(&self, a: usize, b: usize) -> usize {
        self.t.rdiv(a, b)
    }

    /// `x^ρ`; equals `x^λ` on the loops the suites target.
    pub fn inv(&self, a: usize) -> usize {
        self.t.right_inverse(a)
    }

    pub fn lam(&self, a: usize) -> usize {
        self.t.left_inverse(a)
    }

    pub fn sq(&self, a: usize) -> usize {
        self.t.mul(a, a)
    }

    /// `x^k`, meaningful when `<x>` is associative.
    pub fn pow(&self, a: usize, k: usize) -> usize {
        self.t.left_power(a, k)
    }

    pub fn f1(&self, x: usize, y: usize) -> usize {
        mappings::f1(self.t, x, y)
    }

    pub fn g1(&self, x: usize, y: usize) -> usize {
        mappings::g1(self.t, x, y)
    }

    pub fn f2(&self, x: usize, y: usize) -> usize {
        mappings::f2(self.t, x, y)
    }

    pub fn g2(&self, x: usize, y: usize) -> usize {
        mappings::g2(self.t, x, y)
    }

    pub fn alpha(&self, args: &[usize]) -> usize {
        mappings::VariadicMap::Alpha.eval(self.t, args).expect("valid arguments")
    }

    pub fn beta(&self, args: &[usize]) -> usize {
        mappings::VariadicMap::Beta.eval(self.t, args).expect("valid arguments")
    }

    pub fn phi(&self, args: &[usize]) -> usize {
        mappings::VariadicMap::Phi.eval(self.t, args).expect("valid arguments")
    }

    pub fn psi(&self, args: &[usize]) -> usize {
        mappings::VariadicMap::Psi.eval(self.t, args).expect("valid arguments")
    }
}

/// First assignment over `vars` (lexicographic) where `pred` is false.
pub fn first_failure(n: usize, arity: usize, mut pred: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    let mut slots = vec![0usize; arity];
    loop {
        if !pred(&slots) {
            return Some(slots);
        }
        if !advance(&mut slots, n) {
            return None;
        }
    }
}

pub fn describe(vars: &str, values: &[usize]) -> String {
    vars.chars().zip(values).map(|(c, v)| format!("{c}={v}")).collect::<Vec<_>>().join(", ")
}

/// A universally quantified boolean side, with the first failing assignment.
#[derive(Debug, Clone)]
pub struct Side {
    pub value: bool,
    pub witness: Option<String>,
}

impl Side {
    pub fn of(value: bool) -> Side {
        Side { value, witness: None }
    }

    pub fn from_report(r: &crate::report::CheckReport) -> Side {
        Side { value: r.holds, witness: r.counterexample.as_ref().map(|c| c.to_string()) }
    }
}

/// `∀ vars: pred`.
pub fn forall(ops: Ops, vars: &str, mut pred: impl FnMut(&[usize]) -> bool) -> Side {
    match first_failure(ops.n(), vars.len(), |a| pred(a)) {
        None => Side::of(true),
        Some(a) => Side { value: false, witness: Some(describe(vars, &a)) },
    }
}

/// `∀ vars: lhs == rhs`.
pub fn forall_eq(ops: Ops, vars: &str, mut sides: impl FnMut(&[usize]) -> (usize, usize)) -> Side {
    let mut last = (0, 0);
    match first_failure(ops.n(), vars.len(), |a| {
        last = sides(a);
        last.0 == last.1
    }) {
        None => Side::of(true),
        Some(a) => Side {
            value: false,
            witness: Some(format!("{} (lhs={}, rhs={})", describe(vars, &a), last.0, last.1)),
        },
    }
}

/// `∀ vars: a = b = c = …`, for chains of equal expressions.
pub fn forall_chain(ops: Ops, vars: &str, mut values: impl FnMut(&[usize]) -> Vec<usize>) -> Side {
    let mut last = Vec::new();
    match first_failure(ops.n(), vars.len(), |a| {
        last = values(a);
        last.windows(2).all(|w| w[0] == w[1])
    }) {
        None => Side::of(true),
        Some(a) => Side { value: false, witness: Some(format!("{} (values {:?})", describe(vars, &a), last)) },
    }
}

/// Identity-type claim: holds when the side holds.
pub fn identity_claim(lemma: &str, item: &str, statement: &str, side: Side) -> Claim {
    let verdict = if side.value { Verdict::Holds } else { Verdict::Fails };
    Claim::new(lemma, item, statement, verdict).with_witness(side.witness)
}

/// Biconditional or cluster claim: agrees when all sides match.
pub fn cluster_claim(lemma: &str, item: &str, statement: &str, sides: Vec<Side>) -> Claim {
    let values: Vec<bool> = sides.iter().map(|s| s.value).collect();
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    let witness = if agree {
        None
    } else {
        let parts: Vec<String> = sides
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.witness.as_ref().map(|w| format!("side {}: {w}", i + 1)))
            .collect();
        (!parts.is_empty()).then(|| parts.join("; "))
    };
    let verdict = if agree { Verdict::Agree { sides: values } } else { Verdict::Disagree { sides: values } };
    Claim::new(lemma, item, statement, verdict).with_witness(witness)
}

/// Pointwise equivalence: for every assignment the listed conditions are all
/// true or all false.
pub fn pointwise_claim(
    lemma: &str,
    item: &str,
    statement: &str,
    ops: Ops,
    vars: &str,
    mut conds: impl FnMut(&[usize]) -> Vec<bool>,
) -> Claim {
    let mut last = Vec::new();
    let side = match first_failure(ops.n(), vars.len(), |a| {
        last = conds(a);
        last.windows(2).all(|w| w[0] == w[1])
    }) {
        None => Side::of(true),
        Some(a) => Side { value: false, witness: Some(format!("{} (conditions {:?})", describe(vars, &a), last)) },
    };
    identity_claim(lemma, item, statement, side)
}
