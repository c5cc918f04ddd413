#![allow(dead_code)]

use std::sync::OnceLock;

use loopkit::construct;
use loopkit::search::{self, SearchSpec};
use loopkit::LoopTable;
use rand::seq::SliceRandom;
use rand::Rng;

/// Middle Bol loops of orders 1–8 up to isomorphism, as `(id, table)`.
pub fn middle_bol_corpus() -> &'static [(String, LoopTable)] {
    static C: OnceLock<Vec<(String, LoopTable)>> = OnceLock::new();
    C.get_or_init(|| {
        let mut out = Vec::new();
        for n in 1..=8 {
            let (loops, complete, _) = search::corpus_class("MIDDLE_BOL", n).unwrap();
            assert!(complete, "order {n}");
            out.extend(loops.into_iter().enumerate().map(|(i, l)| (format!("MIDDLE_BOL/n{n}/{i}"), l)));
        }
        out
    })
}

pub fn middle_bol_up_to(n: usize) -> Vec<&'static LoopTable> {
    middle_bol_corpus().iter().map(|(_, l)| l).filter(|l| l.order() <= n).collect()
}

/// Right Bol loops of order 8 up to isomorphism.
pub fn right_bol_8() -> &'static [LoopTable] {
    static C: OnceLock<Vec<LoopTable>> = OnceLock::new();
    C.get_or_init(|| search::enumerate(&SearchSpec::new(8).require("RIGHT_BOL").dedup()).unwrap().loops)
}

/// Every loop of order `n` with identity 0 (labelled, not deduplicated).
pub fn all_loops(n: usize) -> Vec<LoopTable> {
    search::enumerate(&SearchSpec::new(n)).unwrap().loops
}

/// A uniformly shuffled Latin square with identity row and column 0, found
/// by randomized backtracking. Independent of the crate's search.
pub fn random_loop_rows<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<usize>> {
    fn fill<R: Rng>(rng: &mut R, t: &mut Vec<Vec<usize>>, n: usize, cell: usize) -> bool {
        if cell == n * n {
            return true;
        }
        let (r, c) = (cell / n, cell % n);
        if r == 0 || c == 0 {
            return fill(rng, t, n, cell + 1);
        }
        let mut vals: Vec<usize> = (0..n).filter(|&v| (0..c).all(|j| t[r][j] != v) && (0..r).all(|i| t[i][c] != v)).collect();
        vals.shuffle(rng);
        for v in vals {
            t[r][c] = v;
            if fill(rng, t, n, cell + 1) {
                return true;
            }
        }
        t[r][c] = usize::MAX;
        false
    }
    let mut t = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        t[0][i] = i;
        t[i][0] = i;
    }
    assert!(fill(rng, &mut t, n, 0));
    t
}

pub fn random_loop<R: Rng>(rng: &mut R, n: usize) -> LoopTable {
    LoopTable::validate(&random_loop_rows(rng, n)).unwrap()
}

/// Random relabelling fixing 0.
pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut rest: Vec<usize> = (1..n).collect();
    rest.shuffle(rng);
    std::iter::once(0).chain(rest).collect()
}

/// A random term, fully parenthesised, over `vars`.
pub fn random_term<R: Rng>(rng: &mut R, vars: &[char], depth: usize) -> String {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.08) { "e".into() } else { vars[rng.gen_range(0..vars.len())].to_string() };
    }
    let a = random_term(rng, vars, depth - 1);
    match rng.gen_range(0..9) {
        0 => format!("({a})'"),
        k => {
            let b = random_term(rng, vars, depth - 1);
            let op = match k {
                1 | 2 => "",
                3 | 4 => "*",
                5 | 6 => "\\",
                _ => "/",
            };
            format!("({a}){op}({b})")
        }
    }
}

pub fn random_identity<R: Rng>(rng: &mut R) -> String {
    let vars = &['x', 'y', 'z'][..rng.gen_range(1..=3)];
    format!("{} = {}", random_term(rng, vars, 3), random_term(rng, vars, 3))
}

pub fn klein() -> LoopTable {
    LoopTable::from_fn(4, |x, y| x ^ y).unwrap()
}

pub fn s3() -> LoopTable {
    // permutations of {0,1,2} in lexicographic order, composed as maps
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    LoopTable::from_fn(6, |a, b| {
        let (p, q) = (perms[a], perms[b]);
        idx([p[q[0]], p[q[1]], p[q[2]]])
    })
    .unwrap()
}

pub fn is_isomorphic(a: &LoopTable, b: &LoopTable) -> bool {
    construct::are_isomorphic(a, b).is_some()
}
