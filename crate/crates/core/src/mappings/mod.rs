//! The bivariate maps `f1, g1, f2, g2`, the variadic folds `α, β, φ, ψ`,
//! and the characterization suites phrased through them.

mod suites;

pub use suites::*;

use std::fmt;

use thiserror::Error;

use crate::table::LoopTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("{map} expects {expected} arguments, got {got}")]
    Arity { map: String, expected: String, got: usize },
    #[error("argument {0} is out of range")]
    ElementOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BivariateMap {
    F1,
    G1,
    F2,
    G2,
}

impl BivariateMap {
    pub const ALL: [BivariateMap; 4] = [BivariateMap::F1, BivariateMap::G1, BivariateMap::F2, BivariateMap::G2];

    /// Primary defining form.
    pub fn eval(self, l: &LoopTable, x: usize, y: usize) -> usize {
        match self {
            BivariateMap::F1 => f1(l, x, y),
            BivariateMap::G1 => g1(l, x, y),
            BivariateMap::F2 => f2(l, x, y),
            BivariateMap::G2 => g2(l, x, y),
        }
    }

    /// Equivalent defining form; agrees with [`eval`](Self::eval) on middle
    /// Bol loops.
    pub fn eval_alt(self, l: &LoopTable, x: usize, y: usize) -> usize {
        match self {
            BivariateMap::F1 => l.ldiv(x, l.ldiv(y, x)),
            BivariateMap::G1 => l.ldiv(x, l.rdiv(x, y)),
            BivariateMap::F2 => l.rdiv(l.rdiv(x, y), x),
            BivariateMap::G2 => l.rdiv(l.ldiv(y, x), x),
        }
    }

    pub fn forms(self) -> (&'static str, &'static str) {
        match self {
            BivariateMap::F1 => ("yx\\x", "x\\(y\\x)"),
            BivariateMap::G1 => ("xy\\x", "x\\(x/y)"),
            BivariateMap::F2 => ("x/(xy)", "(x/y)/x"),
            BivariateMap::G2 => ("x/(yx)", "(y\\x)/x"),
        }
    }
}

impl fmt::Display for BivariateMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BivariateMap::F1 => "f1",
            BivariateMap::G1 => "g1",
            BivariateMap::F2 => "f2",
            BivariateMap::G2 => "g2",
        })
    }
}

/// `f1(x, y) = yx\x`.
pub fn f1(l: &LoopTable, x: usize, y: usize) -> usize {
    l.ldiv(l.mul(y, x), x)
}

/// `g1(x, y) = xy\x`.
pub fn g1(l: &LoopTable, x: usize, y: usize) -> usize {
    l.ldiv(l.mul(x, y), x)
}

/// `f2(x, y) = x/(xy)`.
pub fn f2(l: &LoopTable, x: usize, y: usize) -> usize {
    l.rdiv(x, l.mul(x, y))
}

/// `g2(x, y) = x/(yx)`.
pub fn g2(l: &LoopTable, x: usize, y: usize) -> usize {
    l.rdiv(x, l.mul(y, x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariadicMap {
    /// `(…((x1 x2) x3)…) xi`
    Alpha,
    /// `x1\(x2\(…(x(i-1)\xi)…))`
    Beta,
    /// `xi(x(i-1)(…(x2 x1)…))`
    Phi,
    /// `((…(x1/x2)…)/x(i-1))/xi`
    Psi,
}

impl VariadicMap {
    /// Folds the arguments; arity 1 is the identity map.
    pub fn eval(self, l: &LoopTable, args: &[usize]) -> Result<usize, MapError> {
        let (&first, rest) = args.split_first().ok_or_else(|| MapError::Arity {
            map: self.to_string(),
            expected: "at least 1".into(),
            got: 0,
        })?;
        if let Some(&bad) = args.iter().find(|&&a| a >= l.order()) {
            return Err(MapError::ElementOutOfRange(bad));
        }
        Ok(match self {
            VariadicMap::Alpha => rest.iter().fold(first, |acc, &a| l.mul(acc, a)),
            VariadicMap::Phi => rest.iter().fold(first, |acc, &a| l.mul(a, acc)),
            VariadicMap::Psi => rest.iter().fold(first, |acc, &a| l.rdiv(acc, a)),
            VariadicMap::Beta => {
                let (&last, init) = args.split_last().unwrap();
                init.iter().rev().fold(last, |acc, &a| l.ldiv(a, acc))
            }
        })
    }
}

impl fmt::Display for VariadicMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VariadicMap::Alpha => "alpha",
            VariadicMap::Beta => "beta",
            VariadicMap::Phi => "phi",
            VariadicMap::Psi => "psi",
        })
    }
}

/// Any of the eight maps, for uniform evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Map {
    Bivariate(BivariateMap),
    Variadic(VariadicMap),
}

impl std::str::FromStr for Map {
    type Err = String;

    fn from_str(s: &str) -> Result<Map, String> {
        Ok(match s {
            "f1" => Map::Bivariate(BivariateMap::F1),
            "g1" => Map::Bivariate(BivariateMap::G1),
            "f2" => Map::Bivariate(BivariateMap::F2),
            "g2" => Map::Bivariate(BivariateMap::G2),
            "alpha" => Map::Variadic(VariadicMap::Alpha),
            "beta" => Map::Variadic(VariadicMap::Beta),
            "phi" => Map::Variadic(VariadicMap::Phi),
            "psi" => Map::Variadic(VariadicMap::Psi),
            other => return Err(format!("unknown map {other}")),
        })
    }
}

pub fn eval_map(map: Map, l: &LoopTable, args: &[usize]) -> Result<usize, MapError> {
    match map {
        Map::Bivariate(m) => match *args {
            [x, y] if x < l.order() && y < l.order() => Ok(m.eval(l, x, y)),
            [x, y] => Err(MapError::ElementOutOfRange(x.max(y))),
            _ => Err(MapError::Arity { map: m.to_string(), expected: "2".into(), got: args.len() }),
        },
        Map::Variadic(m) => m.eval(l, args),
    }
}
