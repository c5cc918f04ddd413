//! Cayley-table representation of finite loops.
//!
//! A [`LoopTable`] is validated once (Latin rows and columns, a two-sided
//! identity) and then treated as immutable. Both division tables and the
//! one-sided inverses are materialised at construction so every operation
//! afterwards is a single lookup.

use serde::Serialize;
use thiserror::Error;

use crate::report::{CheckReport, Counterexample, Failure};

/// Largest order a table may have; elements are stored as `u8`.
pub const MAX_ORDER: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table is empty")]
    Empty,
    #[error("order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(usize),
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is out of range for order {n}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, n: usize },
    #[error("not a Latin square: value {value} repeats in {line} {index}")]
    NotLatin { line: Line, index: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} is out of range for order {1}")]
    ElementOutOfRange(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row,
    Column,
}

impl std::fmt::Display for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Line::Row => f.write_str("row"),
            Line::Column => f.write_str("column"),
        }
    }
}

/// Inverse and order data for one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ElementInfo {
    pub idx: usize,
    /// `x^λ`, with `x^λ · x = e`.
    pub lambda_inv: usize,
    /// `x^ρ`, with `x · x^ρ = e`.
    pub rho_inv: usize,
    /// Order of `x`; `None` when `<x>` is not an associative subloop.
    pub order: Option<usize>,
}

/// A finite loop with identity normalised to element 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LoopTable {
    n: usize,
    mul: Vec<u8>,
    ldiv: Vec<u8>,
    rdiv: Vec<u8>,
    lambda: Vec<u8>,
    rho: Vec<u8>,
}

impl std::fmt::Debug for LoopTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "LoopTable(n={})", self.n)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl LoopTable {
    /// Validates a raw square array and relabels its identity to 0.
    pub fn validate(raw: &[Vec<usize>]) -> Result<LoopTable, TableError> {
        let n = raw.len();
        if n == 0 {
            return Err(TableError::Empty);
        }
        if n > MAX_ORDER {
            return Err(TableError::TooLarge(n));
        }
        for (row, r) in raw.iter().enumerate() {
            if r.len() != n {
                return Err(TableError::NotSquare { row, len: r.len(), expected: n });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(TableError::EntryOutOfRange { row, col, value, n });
                }
            }
        }
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let v = raw[i][j];
                if std::mem::replace(&mut seen_row[v], true) {
                    return Err(TableError::NotLatin { line: Line::Row, index: i, value: v });
                }
                let w = raw[j][i];
                if std::mem::replace(&mut seen_col[w], true) {
                    return Err(TableError::NotLatin { line: Line::Column, index: i, value: w });
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| raw[e][x] == x && raw[x][e] == x))
            .ok_or(TableError::NoIdentity)?;

        // Swap labels `identity` and 0 simultaneously on rows, columns and values.
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut mul = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[relabel(i) * n + relabel(j)] = relabel(raw[i][j]) as u8;
            }
        }
        Ok(Self::from_latin_unchecked(n, mul))
    }

    /// Builds a table from a flat row-major product array already known to be
    /// a Latin square with identity 0.
    pub(crate) fn from_latin_unchecked(n: usize, mul: Vec<u8>) -> LoopTable {
        debug_assert_eq!(mul.len(), n * n);
        let mut ldiv = vec![0u8; n * n];
        let mut rdiv = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                let p = mul[x * n + y] as usize;
                // x·y = p  =>  x\p = y  and  p/y = x
                ldiv[x * n + p] = y as u8;
                rdiv[p * n + y] = x as u8;
            }
        }
        let lambda = (0..n).map(|x| rdiv[x]).collect(); // e/x
        let rho = (0..n).map(|x| ldiv[x * n]).collect(); // x\e
        LoopTable { n, mul, ldiv, rdiv, lambda, rho }
    }

    /// Builds a table from a flat product array, running full validation.
    pub fn from_flat(n: usize, flat: &[usize]) -> Result<LoopTable, TableError> {
        if flat.len() != n * n {
            return Err(TableError::NotSquare { row: 0, len: flat.len(), expected: n * n });
        }
        let raw: Vec<Vec<usize>> = flat.chunks(n.max(1)).map(|c| c.to_vec()).collect();
        Self::validate(&raw)
    }

    /// Builds the loop whose product is `op(x, y)` on `0..n`.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<LoopTable, TableError> {
        let raw: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| op(x, y)).collect()).collect();
        Self::validate(&raw)
    }

    /// The cyclic group `Z_n` under addition.
    pub fn cyclic(n: usize) -> LoopTable {
        Self::from_fn(n, |x, y| (x + y) % n).expect("Z_n is a loop")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y] as usize
    }

    /// `x \ y`: the unique `z` with `x·z = y`.
    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.n + y] as usize
    }

    /// `x / y`: the unique `z` with `z·y = x`.
    #[inline]
    pub fn rdiv(&self, x: usize, y: usize) -> usize {
        self.rdiv[x * self.n + y] as usize
    }

    pub fn try_mul(&self, x: usize, y: usize) -> Result<usize, TableError> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        Ok(self.mul(x, y))
    }

    pub fn try_ldiv(&self, x: usize, y: usize) -> Result<usize, TableError> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        Ok(self.ldiv(x, y))
    }

    pub fn try_rdiv(&self, x: usize, y: usize) -> Result<usize, TableError> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        Ok(self.rdiv(x, y))
    }

    fn check_elem(&self, x: usize) -> Result<(), TableError> {
        if x < self.n {
            Ok(())
        } else {
            Err(TableError::ElementOutOfRange(x, self.n))
        }
    }

    /// `x^λ`.
    #[inline]
    pub fn left_inverse(&self, x: usize) -> usize {
        self.lambda[x] as usize
    }

    /// `x^ρ`.
    #[inline]
    pub fn right_inverse(&self, x: usize) -> usize {
        self.rho[x] as usize
    }

    /// The two-sided inverse, if `x^λ = x^ρ`.
    #[inline]
    pub fn inverse(&self, x: usize) -> Option<usize> {
        let l = self.lambda[x];
        (l == self.rho[x]).then_some(l as usize)
    }

    pub fn inverses(&self, x: usize) -> Result<ElementInfo, TableError> {
        self.check_elem(x)?;
        Ok(ElementInfo {
            idx: x,
            lambda_inv: self.left_inverse(x),
            rho_inv: self.right_inverse(x),
            order: self.element_order(x),
        })
    }

    /// `x(…(x(x·x))…)` with `k` factors. `k = 0` yields the identity.
    pub fn left_power(&self, x: usize, k: usize) -> usize {
        if k == 0 {
            return 0;
        }
        let mut acc = x;
        for _ in 1..k {
            acc = self.mul(x, acc);
        }
        acc
    }

    /// `((x·x)x…)x` with `k` factors. `k = 0` yields the identity.
    pub fn right_power(&self, x: usize, k: usize) -> usize {
        if k == 0 {
            return 0;
        }
        let mut acc = x;
        for _ in 1..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Closure of `{x}` under multiplication, in discovery order.
    pub fn cyclic_closure(&self, x: usize) -> Vec<usize> {
        let mut members = vec![x];
        let mut seen = vec![false; self.n];
        seen[x] = true;
        let mut i = 0;
        while i < members.len() {
            for j in 0..=i {
                for (a, b) in [(members[i], members[j]), (members[j], members[i])] {
                    let p = self.mul(a, b);
                    if !seen[p] {
                        seen[p] = true;
                        members.push(p);
                    }
                }
            }
            i += 1;
        }
        members
    }

    /// First triple in `<x>` violating associativity.
    fn cyclic_assoc_failure(&self, x: usize) -> Option<(usize, usize, usize)> {
        let mut members = self.cyclic_closure(x);
        members.sort_unstable();
        for &a in &members {
            for &b in &members {
                for &c in &members {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Order of `x` when `<x>` is a group.
    pub fn element_order(&self, x: usize) -> Option<usize> {
        if self.cyclic_assoc_failure(x).is_some() {
            return None;
        }
        (1..=self.n).find(|&k| self.left_power(x, k) == 0)
    }

    /// Every `<x>` is an associative subloop.
    pub fn is_power_associative(&self) -> CheckReport {
        let mut checked = 0u64;
        for x in self.elements() {
            checked += 1;
            if let Some((a, b, c)) = self.cyclic_assoc_failure(x) {
                let cx = Counterexample::new(
                    vec![("x".into(), x), ("a".into(), a), ("b".into(), b), ("c".into(), c)],
                    Failure::Mismatch {
                        lhs: self.mul(self.mul(a, b), c),
                        rhs: self.mul(a, self.mul(b, c)),
                    },
                );
                return CheckReport::fail(cx, checked);
            }
        }
        CheckReport::pass(checked)
    }

    /// Least `k ≥ 1` with `x^k = e` for every `x`, in a power-associative loop.
    pub fn exponent(&self) -> Option<usize> {
        let orders: Option<Vec<usize>> = self.elements().map(|x| self.element_order(x)).collect();
        orders.map(|os| os.into_iter().fold(1, lcm))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    /// Product table with operands swapped.
    pub fn transpose(&self) -> LoopTable {
        let n = self.n;
        let mut mul = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                mul[x * n + y] = self.mul[y * n + x];
            }
        }
        Self::from_latin_unchecked(n, mul)
    }

    /// Applies a relabelling `perm` (old → new) that fixes the identity.
    pub fn relabel(&self, perm: &[usize]) -> Result<LoopTable, TableError> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(TableError::NotSquare { row: 0, len: perm.len(), expected: n });
        }
        let mut raw = vec![vec![0usize; n]; n];
        for x in 0..n {
            for y in 0..n {
                raw[perm[x]][perm[y]] = perm[self.mul(x, y)];
            }
        }
        Self::validate(&raw)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
