//! Backtracking enumeration of loops satisfying catalog properties or raw
//! identities, and the on-disk corpus built from it.
//!
//! Tables are filled cell by cell in row-major order with the identity row
//! and column fixed. Required properties whose identities use only
//! multiplication are propagated on the partial table: an instance whose
//! sides are both known must agree, and an instance with one side known and
//! the other one table lookup short forces that cell. Everything else is
//! checked on completed tables, and every emitted loop is re-verified by the
//! properties engine regardless.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::construct::{self, ElementSignature, CANONICAL_BOUND};
use crate::io::{self, IoError};
use crate::par::{self, Exec};
use crate::properties::{Catalog, CatalogError, PropertyDef};
use crate::table::LoopTable;
use crate::terms::{Identity, Term};

/// Largest order the search accepts.
pub const MAX_SEARCH_ORDER: usize = 10;

/// Unconstrained deduplicated search is refused from this order on.
pub const UNCONSTRAINED_DEDUP_LIMIT: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub order: usize,
    /// Property names or raw identities (anything containing `=`).
    pub require: Vec<String>,
    pub forbid: Vec<String>,
    pub dedup: bool,
    pub limit: Option<usize>,
    /// Maximum number of search nodes.
    pub budget: Option<u64>,
}

impl SearchSpec {
    pub fn new(order: usize) -> Self {
        SearchSpec { order, require: Vec::new(), forbid: Vec::new(), dedup: false, limit: None, budget: None }
    }

    pub fn require(mut self, c: &str) -> Self {
        self.require.push(c.to_string());
        self
    }

    pub fn forbid(mut self, c: &str) -> Self {
        self.forbid.push(c.to_string());
        self
    }

    pub fn dedup(mut self) -> Self {
        self.dedup = true;
        self
    }

    pub fn limit(mut self, k: usize) -> Self {
        self.limit = Some(k);
        self
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.budget = Some(nodes);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub loops: Vec<LoopTable>,
    pub nodes_explored: u64,
    /// The whole space was explored: no budget exhaustion and no early stop
    /// at `limit`.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("order {order} exceeds the search cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("unconstrained search with dedup at order {order} would enumerate too many tables; add a requirement")]
    EmptyRequireWithDedupOverflow { order: usize },
    #[error("{0}")]
    Catalog(#[from] CatalogError),
    #[error("cannot parse identity `{src}`: {msg}")]
    Identity { src: String, msg: String },
    #[error("`{0}` is both required and forbidden")]
    Overlap(String),
}

fn resolve(c: &str) -> Result<PropertyDef, SearchError> {
    if c.contains('=') {
        Identity::parse(c).map_err(|e| SearchError::Identity { src: c.to_string(), msg: e.to_string() })?;
        Ok(PropertyDef::from_identities(c, &[c]))
    } else {
        Ok(Catalog::builtin().get(c.trim())?)
    }
}

/// Multiplication-only program used for propagation.
#[derive(Debug, Clone, Copy)]
enum POp {
    Slot(usize),
    E,
    Mul,
}

fn compile_mul(t: &Term, vars: &[char], out: &mut Vec<POp>) -> bool {
    match t {
        Term::Var(c) => {
            out.push(POp::Slot(vars.iter().position(|v| v == c).unwrap()));
            true
        }
        Term::Identity => {
            out.push(POp::E);
            true
        }
        Term::Mul(a, b) => {
            let ok = compile_mul(a, vars, out) && compile_mul(b, vars, out);
            out.push(POp::Mul);
            ok
        }
        _ => false,
    }
}

#[derive(Debug, Clone)]
struct Rule {
    arity: usize,
    lhs: Vec<POp>,
    rhs: Vec<POp>,
}

impl Rule {
    fn from_identity(id: &Identity) -> Option<Rule> {
        let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
        let ok = compile_mul(&id.lhs, id.vars(), &mut lhs) && compile_mul(&id.rhs, id.vars(), &mut rhs);
        ok.then(|| Rule { arity: id.vars().len(), lhs, rhs })
    }
}

const UNDEF: u8 = u8::MAX;

enum Val {
    Known(u8),
    /// Top-level product of two known operands, cell still empty.
    Pending(u8, u8),
    Unknown,
}

/// A rule instance: rule index in the high half, slot code in the low half.
type Inst = u64;

#[derive(Debug, Clone)]
struct Partial {
    n: usize,
    cells: Vec<u8>,
    row: Vec<u16>,
    col: Vec<u16>,
    trail: Vec<usize>,
    /// Instances to re-check when a cell is filled: each blocked instance
    /// waits on the first empty cell its evaluation reached, per side.
    watch: Vec<Vec<Inst>>,
    /// Cells whose watch list grew, for undo.
    wlog: Vec<usize>,
}

#[derive(Clone, Copy)]
struct Mark(usize, usize);

impl Partial {
    fn new(n: usize) -> Partial {
        let mut p = Partial {
            n,
            cells: vec![UNDEF; n * n],
            row: vec![0; n],
            col: vec![0; n],
            trail: Vec::new(),
            watch: vec![Vec::new(); n * n],
            wlog: Vec::new(),
        };
        for i in 0..n {
            p.put(i, i);
            if i > 0 {
                p.put(i * n, i);
            }
        }
        p.trail.clear();
        p
    }

    fn can(&self, a: usize, b: usize, v: u8) -> bool {
        self.cells[a * self.n + b] == UNDEF && (self.row[a] | self.col[b]) & (1 << v) == 0
    }

    fn put(&mut self, idx: usize, v: usize) {
        let (a, b) = (idx / self.n, idx % self.n);
        self.cells[idx] = v as u8;
        self.row[a] |= 1 << v;
        self.col[b] |= 1 << v;
        self.trail.push(idx);
    }

    fn mark(&self) -> Mark {
        Mark(self.trail.len(), self.wlog.len())
    }

    fn undo_to(&mut self, mark: Mark) {
        while self.trail.len() > mark.0 {
            let idx = self.trail.pop().unwrap();
            let (a, b) = (idx / self.n, idx % self.n);
            let v = self.cells[idx];
            self.row[a] &= !(1 << v);
            self.col[b] &= !(1 << v);
            self.cells[idx] = UNDEF;
        }
        while self.wlog.len() > mark.1 {
            let c = self.wlog.pop().unwrap();
            self.watch[c].pop();
        }
    }

    fn candidates(&self, idx: usize) -> u16 {
        let (a, b) = (idx / self.n, idx % self.n);
        !(self.row[a] | self.col[b]) & ((1u16 << self.n) - 1)
    }

    /// Evaluates one side; also reports the first empty cell reached.
    fn eval(&self, ops: &[POp], slots: &[usize], stack: &mut Vec<u8>) -> (Val, Option<usize>) {
        stack.clear();
        let mut pending = None;
        let mut blocker = None;
        for op in ops {
            match *op {
                POp::Slot(i) => stack.push(slots[i] as u8),
                POp::E => stack.push(0),
                POp::Mul => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    pending = None;
                    let v = if a == UNDEF || b == UNDEF {
                        UNDEF
                    } else {
                        let idx = a as usize * self.n + b as usize;
                        let v = self.cells[idx];
                        if v == UNDEF {
                            pending = Some((a, b));
                            blocker.get_or_insert(idx);
                        }
                        v
                    };
                    stack.push(v);
                }
            }
        }
        let val = match (stack[0], pending, ops.last()) {
            (v, _, _) if v != UNDEF => Val::Known(v),
            (_, Some((a, b)), Some(POp::Mul)) => Val::Pending(a, b),
            _ => Val::Unknown,
        };
        (val, blocker)
    }

    fn watch_on(&mut self, cell: usize, inst: Inst) {
        if self.watch[cell].last() != Some(&inst) {
            self.watch[cell].push(inst);
            self.wlog.push(cell);
        }
    }

    /// Checks one instance: forces a cell, registers watches, or reports a
    /// contradiction with `false`.
    fn check(&mut self, rules: &[Rule], inst: Inst, slots: &mut Vec<usize>, stack: &mut Vec<u8>) -> bool {
        let n = self.n;
        let rule = &rules[(inst >> 32) as usize];
        let mut code = (inst & 0xffff_ffff) as usize;
        slots.clear();
        slots.resize(rule.arity, 0);
        for s in slots.iter_mut().rev() {
            *s = code % n;
            code /= n;
        }
        let (l, lb) = self.eval(&rule.lhs, slots, stack);
        let (r, rb) = self.eval(&rule.rhs, slots, stack);
        match (l, r) {
            (Val::Known(a), Val::Known(b)) => a == b,
            (Val::Known(v), Val::Pending(a, b)) | (Val::Pending(a, b), Val::Known(v)) => {
                if !self.can(a as usize, b as usize, v) {
                    return false;
                }
                self.put(a as usize * n + b as usize, v as usize);
                true
            }
            _ => {
                for c in [lb, rb].into_iter().flatten() {
                    self.watch_on(c, inst);
                }
                true
            }
        }
    }

    /// Checks every instance once, seeding the watch lists.
    fn init(&mut self, rules: &[Rule]) -> bool {
        let (mut slots, mut stack) = (Vec::new(), Vec::new());
        for (r, rule) in rules.iter().enumerate() {
            for code in 0..self.n.pow(rule.arity as u32) {
                if !self.check(rules, ((r as u64) << 32) | code as u64, &mut slots, &mut stack) {
                    return false;
                }
            }
        }
        true
    }

    /// Re-checks the instances waiting on cells filled since trail position
    /// `from`, to a fixpoint; `false` on contradiction.
    fn propagate(&mut self, rules: &[Rule], from: usize, stack: &mut Vec<u8>) -> bool {
        let mut slots = Vec::new();
        let mut q = from;
        while q < self.trail.len() {
            let cell = self.trail[q];
            q += 1;
            // checking never appends to a filled cell's list
            let mut k = 0;
            while k < self.watch[cell].len() {
                let inst = self.watch[cell][k];
                k += 1;
                if !self.check(rules, inst, &mut slots, stack) {
                    return false;
                }
            }
        }
        true
    }

    fn dead_cell(&self) -> bool {
        (0..self.n * self.n).any(|i| self.cells[i] == UNDEF && self.candidates(i) == 0)
    }

    fn first_open(&self) -> Option<usize> {
        self.cells.iter().position(|&v| v == UNDEF)
    }

    fn to_table(&self) -> Option<LoopTable> {
        let flat: Vec<usize> = self.cells.iter().map(|&v| v as usize).collect();
        LoopTable::from_flat(self.n, &flat).ok()
    }
}

struct Plan {
    n: usize,
    rules: Vec<Rule>,
    require: Vec<PropertyDef>,
    forbid: Vec<PropertyDef>,
    dedup: bool,
}

impl Plan {
    fn accepts(&self, l: &LoopTable) -> bool {
        self.require.iter().all(|d| d.check(l).holds) && self.forbid.iter().all(|d| !d.check(l).holds)
    }
}

/// Isomorphism classes seen so far, bucketed by invariant.
#[derive(Default)]
struct Dedup {
    buckets: HashMap<Vec<ElementSignature>, Vec<usize>>,
    loops: Vec<LoopTable>,
}

impl Dedup {
    /// Adds `l` unless it is isomorphic to a kept loop; true when kept.
    fn offer(&mut self, l: LoopTable) -> bool {
        let bucket = self.buckets.entry(construct::invariant(&l)).or_default();
        if bucket.iter().any(|&i| construct::are_isomorphic(&self.loops[i], &l).is_some()) {
            return false;
        }
        bucket.push(self.loops.len());
        self.loops.push(l);
        true
    }
}

struct Worker<'a> {
    plan: &'a Plan,
    nodes: u64,
    budget: Option<u64>,
    limit: Option<usize>,
    stopped: bool,
    found: Vec<LoopTable>,
    dedup: Dedup,
    stack: Vec<u8>,
}

impl<'a> Worker<'a> {
    fn new(plan: &'a Plan, budget: Option<u64>, limit: Option<usize>) -> Self {
        Worker { plan, nodes: 0, budget, limit, stopped: false, found: Vec::new(), dedup: Dedup::default(), stack: Vec::new() }
    }

    fn count(&self) -> usize {
        if self.plan.dedup {
            self.dedup.loops.len()
        } else {
            self.found.len()
        }
    }

    /// Propagates at a node; returns the next open cell, or `None` when the
    /// node is closed (contradiction or leaf handled).
    fn enter(&mut self, p: &mut Partial, from: usize) -> Option<usize> {
        self.nodes += 1;
        if !p.propagate(&self.plan.rules, from, &mut self.stack) || p.dead_cell() {
            return None;
        }
        match p.first_open() {
            Some(idx) => Some(idx),
            None => {
                self.leaf(p);
                None
            }
        }
    }

    fn leaf(&mut self, p: &Partial) {
        let Some(l) = p.to_table() else { return };
        if !self.plan.accepts(&l) {
            return;
        }
        if self.plan.dedup {
            self.dedup.offer(l);
        } else {
            self.found.push(l);
        }
        if self.limit.is_some_and(|k| self.count() >= k) {
            self.stopped = true;
        }
    }

    fn dfs(&mut self, p: &mut Partial, from: usize) {
        if self.budget.is_some_and(|b| self.nodes >= b) {
            self.stopped = true;
            return;
        }
        let mark = p.mark();
        if let Some(idx) = self.enter(p, from) {
            let mut cand = p.candidates(idx);
            while cand != 0 && !self.stopped {
                let v = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                let inner = p.mark();
                p.put(idx, v);
                self.dfs(p, inner.0);
                p.undo_to(inner);
            }
        }
        p.undo_to(mark);
    }

    fn results(self) -> Vec<LoopTable> {
        if self.plan.dedup {
            self.dedup.loops
        } else {
            self.found
        }
    }
}

fn plan(spec: &SearchSpec) -> Result<Plan, SearchError> {
    let n = spec.order;
    if n == 0 {
        return Err(SearchError::ZeroOrder);
    }
    if n > MAX_SEARCH_ORDER {
        return Err(SearchError::OrderTooLarge { order: n, cap: MAX_SEARCH_ORDER });
    }
    if let Some(c) = spec.require.iter().find(|c| spec.forbid.iter().any(|f| f.trim() == c.trim())) {
        return Err(SearchError::Overlap(c.clone()));
    }
    if spec.require.is_empty() && spec.dedup && n >= UNCONSTRAINED_DEDUP_LIMIT {
        return Err(SearchError::EmptyRequireWithDedupOverflow { order: n });
    }
    let require: Vec<PropertyDef> = spec.require.iter().map(|c| resolve(c)).collect::<Result<_, _>>()?;
    let forbid: Vec<PropertyDef> = spec.forbid.iter().map(|c| resolve(c)).collect::<Result<_, _>>()?;
    let rules = require
        .iter()
        .flat_map(|d| d.identities().iter().filter_map(|(_, id)| Rule::from_identity(id)))
        .collect();
    Ok(Plan { n, rules, require, forbid, dedup: spec.dedup })
}

pub fn enumerate(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    enumerate_with(spec, Exec::default())
}

/// Parallel execution splits on the candidates of the first open cell; it is
/// used only without `budget` and `limit`, which are inherently sequential.
pub fn enumerate_with(spec: &SearchSpec, exec: Exec) -> Result<SearchResult, SearchError> {
    let plan = plan(spec)?;
    let mut root = Partial::new(plan.n);
    let sequential = !exec.is_parallel() || spec.budget.is_some() || spec.limit.is_some();

    let (loops, nodes, complete) = if !root.init(&plan.rules) {
        (Vec::new(), 1, true)
    } else if sequential {
        let mut w = Worker::new(&plan, spec.budget, spec.limit);
        w.dfs(&mut root, 0);
        let (nodes, stopped) = (w.nodes, w.stopped);
        (w.results(), nodes, !stopped)
    } else {
        let mut w = Worker::new(&plan, None, None);
        match w.enter(&mut root, 0) {
            None => {
                let nodes = w.nodes;
                (w.results(), nodes, true)
            }
            Some(idx) => {
                let mut cand = root.candidates(idx);
                let mut branches = Vec::new();
                while cand != 0 {
                    branches.push(cand.trailing_zeros() as usize);
                    cand &= cand - 1;
                }
                let parts = par::map_ordered(exec, branches, |v| {
                    let mut p = root.clone();
                    let from = p.trail.len();
                    p.put(idx, v);
                    let mut w = Worker::new(&plan, None, None);
                    w.dfs(&mut p, from);
                    (w.nodes, w.results())
                });
                let mut nodes = 1;
                let mut merged = Dedup::default();
                let mut all = Vec::new();
                for (k, ls) in parts {
                    nodes += k;
                    for l in ls {
                        if plan.dedup {
                            merged.offer(l);
                        } else {
                            all.push(l);
                        }
                    }
                }
                (if plan.dedup { merged.loops } else { all }, nodes, true)
            }
        }
    };

    let loops = if plan.dedup && plan.n <= CANONICAL_BOUND {
        loops.iter().map(|l| construct::canonical_form(l).expect("order within bound")).collect()
    } else {
        loops
    };
    Ok(SearchResult { loops, nodes_explored: nodes, complete })
}

/// Keeps the first loop of each isomorphism class, in input order.
pub fn dedup_loops(loops: impl IntoIterator<Item = LoopTable>) -> Vec<LoopTable> {
    let mut d = Dedup::default();
    for l in loops {
        d.offer(l);
    }
    d.loops
}

// ---- corpus ----

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{0}")]
    Search(#[from] SearchError),
    #[error("{0}")]
    Io(#[from] IoError),
    #[error("{path}: {msg}")]
    Manifest { path: PathBuf, msg: String },
}

impl From<std::io::Error> for CorpusError {
    fn from(e: std::io::Error) -> Self {
        CorpusError::Io(IoError::Io(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub class: String,
    pub order: usize,
    pub complete: bool,
    pub count: usize,
    pub method: String,
    pub spec_hash: String,
}

/// Bounded direct search run alongside the constructed route at orders ≥ 7.
pub const DIRECT_SEARCH_BUDGET: u64 = 200_000;

fn spec_hash(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// All loops of `class` and order `n` up to isomorphism, with a completeness
/// flag and a description of how they were obtained.
///
/// Middle Bol loops of order ≥ 7 come from `middle_from_right_bol` applied to
/// the right Bol loops of that order (every middle Bol loop arises this way),
/// merged with a bounded direct search.
pub fn corpus_class(class: &str, n: usize) -> Result<(Vec<LoopTable>, bool, String), SearchError> {
    if class == "MIDDLE_BOL" && n >= UNCONSTRAINED_DEDUP_LIMIT {
        let right = enumerate(&SearchSpec::new(n).require("RIGHT_BOL").dedup())?;
        let built = right
            .loops
            .iter()
            .map(|l| construct::middle_from_right_bol(l).expect("right Bol input yields a middle Bol loop"));
        let direct = enumerate(&SearchSpec::new(n).require("MIDDLE_BOL").dedup().budget(DIRECT_SEARCH_BUDGET))?;
        let loops = dedup_loops(built.chain(direct.loops));
        let loops = canonicalize(loops);
        let method = format!("middle_from_right_bol over RIGHT_BOL search + direct search (budget {DIRECT_SEARCH_BUDGET})");
        return Ok((loops, right.complete, method));
    }
    let r = enumerate(&SearchSpec::new(n).require(class).dedup())?;
    Ok((r.loops, r.complete, "exhaustive search".to_string()))
}

fn canonicalize(loops: Vec<LoopTable>) -> Vec<LoopTable> {
    loops
        .into_iter()
        .map(|l| if l.order() <= CANONICAL_BOUND { construct::canonical_form(&l).unwrap() } else { l })
        .collect()
}

/// Writes `<dir>/<class>/n<order>/<index>.json` plus a `manifest.json` per
/// class and order.
pub fn build_corpus(dir: &Path, orders: &[usize], classes: &[&str]) -> Result<Vec<Manifest>, CorpusError> {
    let mut manifests = Vec::new();
    for &class in classes {
        for &n in orders {
            let (loops, complete, method) = corpus_class(class, n)?;
            let sub = dir.join(class).join(format!("n{n}"));
            if sub.exists() {
                fs::remove_dir_all(&sub)?;
            }
            fs::create_dir_all(&sub)?;
            for (i, l) in loops.iter().enumerate() {
                io::write_json(&sub.join(format!("{i}.json")), l)?;
            }
            let m = Manifest {
                class: class.to_string(),
                order: n,
                complete,
                count: loops.len(),
                spec_hash: spec_hash(&[class, &n.to_string(), &method]),
                method,
            };
            let text = serde_json::to_string_pretty(&m).expect("manifest serializes");
            fs::write(sub.join("manifest.json"), text + "\n")?;
            manifests.push(m);
        }
    }
    Ok(manifests)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub class: String,
    pub order: usize,
    pub index: usize,
    pub table: LoopTable,
}

impl CorpusEntry {
    pub fn id(&self) -> String {
        format!("{}/n{}/{}", self.class, self.order, self.index)
    }
}

#[derive(Debug, Default)]
pub struct Corpus {
    /// Sorted by class, order, index.
    pub entries: Vec<CorpusEntry>,
    pub manifests: Vec<Manifest>,
    /// Files that failed to load, with the reason.
    pub invalid: Vec<(String, String)>,
}

/// Reads a corpus directory. Entries that fail to parse or validate are
/// collected in `invalid` rather than aborting the load.
pub fn load_corpus(dir: &Path) -> Result<Corpus, CorpusError> {
    let mut corpus = Corpus::default();
    let mut classes: Vec<PathBuf> = fs::read_dir(dir)?.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.is_dir()).collect();
    classes.sort();
    for class_dir in classes {
        let class = class_dir.file_name().unwrap().to_string_lossy().to_string();
        let mut orders = Vec::new();
        for e in fs::read_dir(&class_dir)? {
            let p = e?.path();
            let order = p.file_name().and_then(|s| s.to_str()).and_then(|s| s.strip_prefix('n')).and_then(|s| s.parse().ok());
            if let (true, Some(order)) = (p.is_dir(), order) {
                orders.push((order, p));
            }
        }
        orders.sort();
        for (order, sub) in orders {
            let manifest_path = sub.join("manifest.json");
            if manifest_path.exists() {
                let text = fs::read_to_string(&manifest_path)?;
                let m: Manifest = serde_json::from_str(&text)
                    .map_err(|e| CorpusError::Manifest { path: manifest_path.clone(), msg: e.to_string() })?;
                corpus.manifests.push(m);
            }
            let mut files = Vec::new();
            for e in fs::read_dir(&sub)? {
                let p = e?.path();
                if let Some(i) = p.file_stem().and_then(|s| s.to_str()).and_then(|s| s.parse::<usize>().ok()) {
                    files.push((i, p));
                }
            }
            files.sort();
            for (index, p) in files {
                let id = format!("{class}/n{order}/{index}");
                match io::read_table(&p) {
                    Ok(table) if table.order() == order => {
                        corpus.entries.push(CorpusEntry { class: class.clone(), order, index, table })
                    }
                    Ok(table) => corpus.invalid.push((id, format!("order {} in directory n{order}", table.order()))),
                    Err(e) => corpus.invalid.push((id, e.to_string())),
                }
            }
        }
    }
    Ok(corpus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_orders() {
        for n in 1..=3 {
            let r = enumerate(&SearchSpec::new(n)).unwrap();
            assert_eq!(r.loops.len(), 1, "n={n}");
            assert!(r.complete);
        }
        assert_eq!(enumerate(&SearchSpec::new(4)).unwrap().loops.len(), 4);
        assert_eq!(enumerate(&SearchSpec::new(4).dedup()).unwrap().loops.len(), 2);
        assert_eq!(enumerate(&SearchSpec::new(5)).unwrap().loops.len(), 56);
        assert_eq!(enumerate(&SearchSpec::new(5).dedup()).unwrap().loops.len(), 6);
    }

    #[test]
    fn groups_of_order_four() {
        let r = enumerate(&SearchSpec::new(4).require("ASSOCIATIVE").dedup()).unwrap();
        assert_eq!(r.loops.len(), 2);
        assert!(r.complete);
    }

    #[test]
    fn propagation_matches_post_hoc_filtering() {
        let pruned = enumerate(&SearchSpec::new(5).require("LEFT_BOL")).unwrap();
        let all = enumerate(&SearchSpec::new(5)).unwrap();
        let filtered: Vec<_> = all.loops.into_iter().filter(|l| crate::properties::holds(l, "LEFT_BOL")).collect();
        assert_eq!(pruned.loops, filtered);
        assert!(pruned.nodes_explored < all.nodes_explored);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let spec = SearchSpec::new(6).require("RIGHT_BOL").dedup();
        let a = enumerate_with(&spec, Exec::Sequential).unwrap();
        let b = enumerate_with(&spec, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_and_limit_stop_early() {
        let r = enumerate(&SearchSpec::new(5).budget(10)).unwrap();
        assert!(!r.complete);
        assert!(r.nodes_explored <= 10);
        let r = enumerate(&SearchSpec::new(5).limit(3)).unwrap();
        assert_eq!(r.loops.len(), 3);
        assert!(!r.complete);
    }

    #[test]
    fn errors() {
        assert_eq!(enumerate(&SearchSpec::new(11)), Err(SearchError::OrderTooLarge { order: 11, cap: 10 }));
        assert_eq!(enumerate(&SearchSpec::new(0)), Err(SearchError::ZeroOrder));
        assert_eq!(enumerate(&SearchSpec::new(7).dedup()), Err(SearchError::EmptyRequireWithDedupOverflow { order: 7 }));
        assert!(matches!(enumerate(&SearchSpec::new(3).require("NOPE")), Err(SearchError::Catalog(_))));
        assert!(matches!(
            enumerate(&SearchSpec::new(3).require("FLEXIBLE").forbid("FLEXIBLE")),
            Err(SearchError::Overlap(_))
        ));
        assert!(matches!(enumerate(&SearchSpec::new(3).require("x = (y")), Err(SearchError::Identity { .. })));
    }

    #[test]
    fn raw_identities_and_forbid() {
        let r = enumerate(&SearchSpec::new(4).require("xy = yx").forbid("ASSOCIATIVE").dedup()).unwrap();
        assert!(r.loops.iter().all(|l| !crate::properties::holds(l, "ASSOCIATIVE")));
        assert!(r.loops.iter().all(|l| crate::properties::holds(l, "COMMUTATIVE")));
        assert!(r.complete);
    }

    #[test]
    fn corpus_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let ms = build_corpus(dir.path(), &[2, 3, 4], &["MIDDLE_BOL"]).unwrap();
        assert_eq!(ms.iter().map(|m| m.count).collect::<Vec<_>>(), [1, 1, 2]);
        let c = load_corpus(dir.path()).unwrap();
        assert!(c.invalid.is_empty());
        assert_eq!(c.manifests, ms);
        assert_eq!(c.entries.len(), 4);
        assert_eq!(c.entries[3].id(), "MIDDLE_BOL/n4/1");
        let (again, _, _) = corpus_class("MIDDLE_BOL", 4).unwrap();
        assert_eq!(c.entries[2..].iter().map(|e| e.table.clone()).collect::<Vec<_>>(), again);
    }
}
