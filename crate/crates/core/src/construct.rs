//! Isostrophe constructions between one-sided and middle Bol loops,
//! principal isotopes, isomorphism testing and canonical forms.

use serde::Serialize;
use thiserror::Error;

use crate::properties;
use crate::table::{LoopTable, TableError};

/// Canonical forms are brute force over identity-fixing relabelings.
pub const CANONICAL_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("input is not a right Bol loop")]
    NotRightBol,
    #[error("input is not a left Bol loop")]
    NotLeftBol,
    #[error("constructed table failed validation: {0}")]
    ValidationFailed(TableError),
    #[error("constructed loop is not middle Bol")]
    NotMiddleBol,
    #[error("order {order} exceeds the canonical form bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),
}

fn build(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<LoopTable, ConstructError> {
    let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| op(x, y)).collect()).collect();
    LoopTable::validate(&rows).map_err(ConstructError::ValidationFailed)
}

fn ensure_middle_bol(l: LoopTable) -> Result<LoopTable, ConstructError> {
    if properties::is_middle_bol(&l) {
        Ok(l)
    } else {
        Err(ConstructError::NotMiddleBol)
    }
}

/// `x∘y = (y·(x·y^ρ))·y` on a right Bol loop.
pub fn middle_from_right_bol(l: &LoopTable) -> Result<LoopTable, ConstructError> {
    if !properties::holds(l, "RIGHT_BOL") {
        return Err(ConstructError::NotRightBol);
    }
    ensure_middle_bol(middle_from_right_bol_unchecked(l)?)
}

/// The same construction without the input check or the middle Bol
/// postcondition; the result is only validated as a loop.
pub fn middle_from_right_bol_unchecked(l: &LoopTable) -> Result<LoopTable, ConstructError> {
    build(l.order(), |x, y| l.mul(l.mul(y, l.mul(x, l.right_inverse(y))), y))
}

/// `x∘y = y·((y^λ·x)·y)` on a left Bol loop.
pub fn middle_from_left_bol(l: &LoopTable) -> Result<LoopTable, ConstructError> {
    if !properties::holds(l, "LEFT_BOL") {
        return Err(ConstructError::NotLeftBol);
    }
    let m = build(l.order(), |x, y| l.mul(y, l.mul(l.mul(l.left_inverse(y), x), y)))?;
    ensure_middle_bol(m)
}

/// `x∗y = y·x`.
pub fn opposite(l: &LoopTable) -> LoopTable {
    l.transpose()
}

/// Parameters of a principal isotope `x∘y = (x/b)·(a\y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isotope {
    pub base: LoopTable,
    pub a: usize,
    pub b: usize,
}

impl Isotope {
    pub fn new(base: LoopTable, a: usize, b: usize) -> Result<Isotope, ConstructError> {
        for v in [a, b] {
            if v >= base.order() {
                return Err(ConstructError::ElementOutOfRange(v));
            }
        }
        Ok(Isotope { base, a, b })
    }

    /// Identity of the isotope, in the base labelling.
    pub fn identity(&self) -> usize {
        self.base.mul(self.a, self.b)
    }

    /// The isotope with its identity relabelled to 0.
    pub fn table(&self) -> LoopTable {
        let (l, a, b) = (&self.base, self.a, self.b);
        build(l.order(), |x, y| l.mul(l.rdiv(x, b), l.ldiv(a, y))).expect("principal isotopes of loops are loops")
    }
}

pub fn principal_isotope(l: &LoopTable, a: usize, b: usize) -> Result<LoopTable, ConstructError> {
    Ok(Isotope::new(l.clone(), a, b)?.table())
}

/// Per-element invariant: element order (when defined) and the cycle
/// types of the left and right translations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ElementSignature {
    pub order: Option<usize>,
    pub square_is_identity: bool,
    pub left_cycles: Vec<usize>,
    pub right_cycles: Vec<usize>,
}

fn cycle_type(n: usize, f: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut lens = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let (mut t, mut len) = (s, 0);
        while !seen[t] {
            seen[t] = true;
            t = f(t);
            len += 1;
        }
        lens.push(len);
    }
    lens.sort_unstable();
    lens
}

pub fn signatures(l: &LoopTable) -> Vec<ElementSignature> {
    let n = l.order();
    l.elements()
        .map(|x| ElementSignature {
            order: l.element_order(x),
            square_is_identity: l.mul(x, x) == 0,
            left_cycles: cycle_type(n, |y| l.mul(x, y)),
            right_cycles: cycle_type(n, |y| l.mul(y, x)),
        })
        .collect()
}

/// Sorted multiset of element signatures; equal for isomorphic loops.
pub fn invariant(l: &LoopTable) -> Vec<ElementSignature> {
    let mut s = signatures(l);
    s.sort();
    s
}

/// Generators of `l`, preferring elements whose signature is rare.
fn generators(l: &LoopTable, sigs: &[ElementSignature]) -> Vec<usize> {
    let n = l.order();
    let mut freq = std::collections::HashMap::new();
    for s in sigs {
        *freq.entry(s).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by_key(|&x| (freq[&sigs[x]], x));
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut gens = Vec::new();
    for x in order {
        if inside[x] {
            continue;
        }
        gens.push(x);
        inside[x] = true;
        // close under multiplication
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..n {
                for b in 0..n {
                    if inside[a] && inside[b] && !inside[l.mul(a, b)] {
                        inside[l.mul(a, b)] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    gens
}

/// Extends a partial map to the closure of its domain; `false` on conflict.
fn propagate(l1: &LoopTable, l2: &LoopTable, map: &mut [Option<usize>], used: &mut [bool]) -> bool {
    let n = l1.order();
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..n {
            let Some(fa) = map[a] else { continue };
            for b in 0..n {
                let Some(fb) = map[b] else { continue };
                let c = l1.mul(a, b);
                let d = l2.mul(fa, fb);
                match map[c] {
                    Some(fc) if fc != d => return false,
                    Some(_) => {}
                    None => {
                        if used[d] {
                            return false;
                        }
                        map[c] = Some(d);
                        used[d] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    true
}

/// An isomorphism `φ: l1 → l2` as a permutation (`φ[x]`), if one exists.
pub fn are_isomorphic(l1: &LoopTable, l2: &LoopTable) -> Option<Vec<usize>> {
    let n = l1.order();
    if n != l2.order() {
        return None;
    }
    let (s1, s2) = (signatures(l1), signatures(l2));
    let (mut a, mut b) = (s1.clone(), s2.clone());
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let gens = generators(l1, &s1);
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    map[0] = Some(0);
    used[0] = true;
    if !propagate(l1, l2, &mut map, &mut used) {
        return None;
    }
    extend(l1, l2, &s1, &s2, &gens, map, used)
}

fn extend(
    l1: &LoopTable,
    l2: &LoopTable,
    s1: &[ElementSignature],
    s2: &[ElementSignature],
    gens: &[usize],
    map: Vec<Option<usize>>,
    used: Vec<bool>,
) -> Option<Vec<usize>> {
    let Some((&g, rest)) = gens.split_first() else {
        let perm: Vec<usize> = map.into_iter().map(|v| v.expect("generators cover the loop")).collect();
        return is_isomorphism(l1, l2, &perm).then_some(perm);
    };
    if let Some(fg) = map[g] {
        // already determined by earlier generators
        if s1[g] != s2[fg] {
            return None;
        }
        return extend(l1, l2, s1, s2, rest, map, used);
    }
    for cand in 0..l2.order() {
        if used[cand] || s1[g] != s2[cand] {
            continue;
        }
        let (mut m, mut u) = (map.clone(), used.clone());
        m[g] = Some(cand);
        u[cand] = true;
        if propagate(l1, l2, &mut m, &mut u) {
            if let Some(p) = extend(l1, l2, s1, s2, rest, m, u) {
                return Some(p);
            }
        }
    }
    None
}

pub fn is_isomorphism(l1: &LoopTable, l2: &LoopTable, perm: &[usize]) -> bool {
    let n = l1.order();
    perm.len() == n
        && l2.order() == n
        && (0..n).all(|x| (0..n).all(|y| perm[l1.mul(x, y)] == l2.mul(perm[x], perm[y])))
}

/// Lexicographically least row-major table over all relabelings fixing
/// the identity, for orders up to [`CANONICAL_BOUND`].
pub fn canonical_form(l: &LoopTable) -> Result<LoopTable, ConstructError> {
    canonical_form_bounded(l, CANONICAL_BOUND)
}

pub fn canonical_form_bounded(l: &LoopTable, bound: usize) -> Result<LoopTable, ConstructError> {
    let n = l.order();
    if n > bound {
        return Err(ConstructError::OrderTooLarge { order: n, bound });
    }
    // `sigma[i]` is the old label shown at new position i; `pi` is its inverse.
    let mut best: Option<Vec<usize>> = None;
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut pi: Vec<usize> = (0..n).collect();
    let mut candidate = vec![0usize; n * n];
    permute(l, 1, &mut sigma, &mut pi, &mut candidate, &mut best);
    let flat = best.unwrap_or_else(|| l.rows().concat());
    Ok(LoopTable::from_flat(n, &flat).expect("relabeling preserves the loop axioms"))
}

fn permute(
    l: &LoopTable,
    k: usize,
    sigma: &mut Vec<usize>,
    pi: &mut Vec<usize>,
    candidate: &mut [usize],
    best: &mut Option<Vec<usize>>,
) {
    let n = l.order();
    if k + 1 >= n {
        for s in 0..n {
            pi[sigma[s]] = s;
        }
        compare_and_keep(l, sigma, pi, candidate, best);
        return;
    }
    for i in k..n {
        sigma.swap(k, i);
        permute(l, k + 1, sigma, pi, candidate, best);
        sigma.swap(k, i);
    }
}

fn compare_and_keep(l: &LoopTable, sigma: &[usize], pi: &[usize], candidate: &mut [usize], best: &mut Option<Vec<usize>>) {
    let n = l.order();
    let mut less = best.is_none();
    for i in 0..n {
        for j in 0..n {
            let v = pi[l.mul(sigma[i], sigma[j])];
            let idx = i * n + j;
            if !less {
                let b = best.as_ref().unwrap()[idx];
                if v > b {
                    return;
                }
                if v < b {
                    less = true;
                }
            }
            candidate[idx] = v;
        }
    }
    if less {
        *best = Some(candidate.to_vec());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties::tests::s3;

    fn klein() -> LoopTable {
        LoopTable::from_fn(4, |x, y| x ^ y).unwrap()
    }

    #[test]
    fn constructions_on_groups() {
        // (y·xy⁻¹)y = yx and y(y⁻¹x·y) = xy
        for l in [LoopTable::cyclic(4), s3()] {
            assert_eq!(middle_from_right_bol(&l).unwrap(), opposite(&l));
            assert_eq!(middle_from_left_bol(&l).unwrap(), l);
        }
        assert_eq!(middle_from_right_bol(&LoopTable::cyclic(2)).unwrap(), LoopTable::cyclic(2));
    }

    #[test]
    fn identity_isotope_is_exact() {
        let l = s3();
        assert_eq!(principal_isotope(&l, 0, 0).unwrap(), l);
        assert!(principal_isotope(&l, 6, 0).is_err());
    }

    #[test]
    fn isotopes_of_a_group_are_isomorphic_to_it() {
        let l = s3();
        for a in l.elements() {
            for b in l.elements() {
                let iso = principal_isotope(&l, a, b).unwrap();
                assert!(are_isomorphic(&l, &iso).is_some(), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn z4_is_not_klein() {
        assert!(are_isomorphic(&LoopTable::cyclic(4), &klein()).is_none());
        assert_ne!(canonical_form(&LoopTable::cyclic(4)).unwrap(), canonical_form(&klein()).unwrap());
    }

    #[test]
    fn relabeling_is_recovered() {
        let l = s3();
        let perm = [0, 3, 5, 1, 2, 4];
        let r = l.relabel(&perm).unwrap();
        let found = are_isomorphic(&l, &r).unwrap();
        assert!(is_isomorphism(&l, &r, &found));
        assert_eq!(canonical_form(&l).unwrap(), canonical_form(&r).unwrap());
    }

    #[test]
    fn canonical_form_bound() {
        assert_eq!(
            canonical_form(&LoopTable::cyclic(9)),
            Err(ConstructError::OrderTooLarge { order: 9, bound: 8 })
        );
        let c = canonical_form(&LoopTable::cyclic(5)).unwrap();
        assert_eq!(canonical_form(&c).unwrap(), c);
    }

    #[test]
    fn non_bol_inputs_are_rejected() {
        let l = LoopTable::validate(&[
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ])
        .unwrap();
        assert_eq!(middle_from_right_bol(&l), Err(ConstructError::NotRightBol));
        assert_eq!(middle_from_left_bol(&l), Err(ConstructError::NotLeftBol));
    }
}
