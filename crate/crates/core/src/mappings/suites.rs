//! Characterization suites over the f/g maps. Each suite evaluates every
//! listed statement on one table and returns the claims; the `check_*`
//! wrappers fold them into a single report.

use std::collections::BTreeMap;

use crate::claims::{
    cluster_claim, forall, forall_chain, forall_eq, identity_claim, pointwise_claim, Claim, Ops, Side,
};
use crate::properties;
use crate::report::{CheckReport, Counterexample, Failure};
use crate::table::LoopTable;
use crate::terms::{check_identity, Identity};

use super::BivariateMap;

pub const HYPOTHESIS_FALSE: &str = "hypothesis-false";
pub const EXPONENT_MISMATCH: &str = "exponent-mismatch";
pub const UNPARSEABLE: &str = "unparseable-statement";

/// Default bound for the variadic suites.
pub fn default_n_max(order: usize) -> usize {
    (2 * order).min(8)
}

fn rep(x: usize, k: usize) -> Vec<usize> {
    vec![x; k]
}

fn with(mut head: Vec<usize>, tail: &[usize]) -> Vec<usize> {
    head.extend_from_slice(tail);
    head
}

fn prop_side(l: &LoopTable, name: &str) -> Result<Side, String> {
    let r = properties::check(l, name).expect("built-in property");
    match &r.skipped {
        Some(code) => Err(code.clone()),
        None => Ok(Side::from_report(&r)),
    }
}

fn hypothesis_skip(lemma: &str, item: &str, statement: &str, hyp: &str) -> Claim {
    Claim::skipped(lemma, item, statement, &format!("{HYPOTHESIS_FALSE}:{hyp}"))
}

/// Folds claims into one report: fails on the first failed claim, skipped
/// items are counted but never treated as passes or failures.
pub fn summarize(claims: &[Claim]) -> CheckReport {
    let checked = claims.iter().filter(|c| !c.is_skipped()).count() as u64;
    match claims.iter().find(|c| c.failed()) {
        None => CheckReport::pass(checked),
        Some(c) => {
            let msg = match &c.witness {
                Some(w) => format!("{}: {} [{w}]", c.label(), c.statement),
                None => format!("{}: {}", c.label(), c.statement),
            };
            CheckReport::fail(Counterexample::new(vec![], Failure::Note { message: msg }).with_source(c.label()), checked)
        }
    }
}

fn forms_claim(lemma: &str, item: &str, l: &LoopTable, m: BivariateMap) -> Claim {
    let (a, b) = m.forms();
    let side = forall_eq(Ops::new(l), "xy", |v| (m.eval(l, v[0], v[1]), m.eval_alt(l, v[0], v[1])));
    identity_claim(lemma, item, &format!("{m}(x,y) = {a} <=> {m}(x,y) = {b}"), side)
}

/// The value tables of f1, g1 and the triples of f2, g2.
pub fn f_lemma_claims(l: &LoopTable) -> Vec<Claim> {
    let o = Ops::new(l);
    let mut out = vec![forms_claim("LF1", "1", l, BivariateMap::F1)];
    type Val = fn(&Ops, usize) -> (usize, usize);
    let f1_items: [(&str, &str, Val); 8] = [
        ("1a", "f1(x,e) = e", |o, x| (o.f1(x, 0), 0)),
        ("1b", "f1(x^-1,e) = e", |o, x| (o.f1(o.inv(x), 0), 0)),
        ("1c", "f1(e,e) = e", |o, _| (o.f1(0, 0), 0)),
        ("1d", "f1(e,x) = x^-1", |o, x| (o.f1(0, x), o.inv(x))),
        ("1e", "f1(x,x) = x^-1", |o, x| (o.f1(x, x), o.inv(x))),
        ("1f", "f1(x^-1,x) = x^-1", |o, x| (o.f1(o.inv(x), x), o.inv(x))),
        ("1g", "f1(e,x^-1) = x", |o, x| (o.f1(0, o.inv(x)), x)),
        ("1h", "f1(x,x^-1) = x", |o, x| (o.f1(x, o.inv(x)), x)),
    ];
    for (item, stmt, f) in f1_items {
        out.push(identity_claim("LF1", item, stmt, forall_eq(o, "x", |v| f(&o, v[0]))));
    }
    out.push(forms_claim("LF1", "2", l, BivariateMap::G1));
    let g1_items: [(&str, &str, Val); 8] = [
        ("2a", "g1(x,e) = e", |o, x| (o.g1(x, 0), 0)),
        ("2b", "g1(x^-1,e) = e", |o, x| (o.g1(o.inv(x), 0), 0)),
        ("2c", "g1(e,e) = e", |o, _| (o.g1(0, 0), 0)),
        ("2d", "g1(e,x) = x^-1", |o, x| (o.g1(0, x), o.inv(x))),
        ("2e", "g1(x,x) = x^-1", |o, x| (o.g1(x, x), o.inv(x))),
        ("2f", "g1(x^-1,x) = x^-1", |o, x| (o.g1(o.inv(x), x), o.inv(x))),
        ("2g", "g1(e,x^-1) = x", |o, x| (o.g1(0, o.inv(x)), x)),
        ("2h", "g1(x,x^-1) = x", |o, x| (o.g1(x, o.inv(x)), x)),
    ];
    for (item, stmt, f) in g1_items {
        out.push(identity_claim("LF1", item, stmt, forall_eq(o, "x", |v| f(&o, v[0]))));
    }

    type Chain = fn(&Ops, usize) -> Vec<usize>;
    for (m, n, chains) in [
        (
            BivariateMap::F2,
            "1",
            [
                ("a", "f2(x,x) = f2(e,x) = f2(x^-1,x) = x^-1", (|o: &Ops, x| {
                    vec![o.f2(x, x), o.f2(0, x), o.f2(o.inv(x), x), o.inv(x)]
                }) as Chain),
                ("b", "f2(x,x^-1) = f2(e,x^-1) = x", |o, x| vec![o.f2(x, o.inv(x)), o.f2(0, o.inv(x)), x]),
                ("c", "f2(x,e) = f2(x^-1,e) = f2(e,e) = e", |o, x| vec![o.f2(x, 0), o.f2(o.inv(x), 0), o.f2(0, 0), 0]),
            ],
        ),
        (
            BivariateMap::G2,
            "2",
            [
                ("a", "g2(x,x) = g2(e,x) = g2(x^-1,x) = x^-1", (|o: &Ops, x| {
                    vec![o.g2(x, x), o.g2(0, x), o.g2(o.inv(x), x), o.inv(x)]
                }) as Chain),
                ("b", "g2(x,x^-1) = g2(e,x^-1) = x", |o, x| vec![o.g2(x, o.inv(x)), o.g2(0, o.inv(x)), x]),
                ("c", "g2(x,e) = g2(x^-1,e) = g2(e,e) = e", |o, x| vec![o.g2(x, 0), o.g2(o.inv(x), 0), o.g2(0, 0), 0]),
            ],
        ),
    ] {
        out.push(forms_claim("LF2", n, l, m));
        for (sub, stmt, f) in chains {
            out.push(identity_claim("LF2", &format!("{n}{sub}"), stmt, forall_chain(o, "x", |v| f(&o, v[0]))));
        }
    }
    out
}

pub fn check_f_lemma_table(l: &LoopTable) -> CheckReport {
    summarize(&f_lemma_claims(l))
}

/// Commutativity criteria phrased through the f/g maps.
pub fn commutativity_claims(l: &LoopTable) -> Vec<Claim> {
    let o = Ops::new(l);
    let f1g1 = || forall(o, "xy", |v| o.f1(v[0], v[1]) == o.g1(v[0], v[1]));
    let comm = prop_side(l, "COMMUTATIVE").expect("identity property");
    let star_ld = || forall(o, "xy", |v| o.ld(v[1], v[0]) == o.rd(v[0], v[1]));
    let star_rd = || forall(o, "xy", |v| o.ld(v[0], v[1]) == o.rd(v[1], v[0]));
    vec![
        cluster_claim("LF1", "3", "f1(x,y) = g1(x,y) <=> (Q,.) is commutative", vec![f1g1(), comm.clone()]),
        cluster_claim(
            "LF1",
            "4",
            "f1(x,y) = g1(x,y) <=> (Q,(\\)*) = (Q,/) <=> (Q,\\) = (Q,(/)*)",
            vec![f1g1(), star_ld(), star_rd()],
        ),
        cluster_claim(
            "LF1",
            "5",
            "f1(x,y) = g1(x,y) <=> yx\\x = x\\(x/y) <=> xy\\x = x\\(y\\x)",
            vec![
                f1g1(),
                forall(o, "xy", |v| {
                    let (x, y) = (v[0], v[1]);
                    o.ld(o.m(y, x), x) == o.ld(x, o.rd(x, y))
                }),
                forall(o, "xy", |v| {
                    let (x, y) = (v[0], v[1]);
                    o.ld(o.m(x, y), x) == o.ld(x, o.ld(y, x))
                }),
            ],
        ),
        pointwise_claim("LF1", "6", "x = y(x/y) <=> (y\\x)y = x", o, "xy", |v| {
            let (x, y) = (v[0], v[1]);
            vec![x == o.m(y, o.rd(x, y)), o.m(o.ld(y, x), y) == x]
        }),
        cluster_claim(
            "LF2",
            "3",
            "f2(x,y) = g2(x,y) <=> commutative <=> (Q,(\\)*) = (Q,/) <=> (Q,\\) = (Q,(/)*) <=> x/xy = (y\\x)/x <=> x/yx = (x/y)/x",
            vec![
                forall(o, "xy", |v| o.f2(v[0], v[1]) == o.g2(v[0], v[1])),
                comm,
                star_ld(),
                star_rd(),
                forall(o, "xy", |v| {
                    let (x, y) = (v[0], v[1]);
                    o.rd(x, o.m(x, y)) == o.rd(o.ld(y, x), x)
                }),
                forall(o, "xy", |v| {
                    let (x, y) = (v[0], v[1]);
                    o.rd(x, o.m(y, x)) == o.rd(o.rd(x, y), x)
                }),
            ],
        ),
    ]
}

pub fn check_commutativity_criteria(l: &LoopTable) -> CheckReport {
    summarize(&commutativity_claims(l))
}

/// The α/β theorem for `2 ≤ n ≤ n_max`.
pub fn alpha_beta_claims(l: &LoopTable, n_max: usize) -> Vec<Claim> {
    let o = Ops::new(l);
    let exponent = l.exponent();
    let mut out = Vec::new();
    for n in 2..=n_max {
        let side = forall_eq(o, "xy", |v| {
            let (x, y) = (v[0], v[1]);
            (o.f1(x, o.alpha(&with(vec![y], &rep(x, n - 1)))), o.beta(&with(rep(x, n - 1), &[o.f1(x, y)])))
        });
        out.push(identity_claim("T-AB", &format!("1[n={n}]"), "f1(x,alpha_n(y,x,...,x)) = beta_n(x,...,x,f1(x,y))", side));
        let side = forall_eq(o, "xy", |v| {
            let (x, y) = (v[0], v[1]);
            (o.f1(x, o.alpha(&with(vec![x, y], &rep(x, n - 1)))), o.beta(&with(rep(x, n), &[o.g1(x, y)])))
        });
        out.push(identity_claim(
            "T-AB",
            &format!("2[n={n}]"),
            "f1(x,alpha_{n+1}(x,y,x,...,x)) = beta_{n+1}(x,...,x,g1(x,y))",
            side,
        ));
    }

    let rap = prop_side(l, "RAP").expect("identity property");
    let eq3 = forall(o, "xy", |v| {
        let (x, y) = (v[0], v[1]);
        o.f1(x, y) == o.m(x, o.ld(o.m(y, o.sq(x)), x))
    });
    out.push(cluster_claim("T-AB", "3", "RAP <=> f1(x,y) = x[(yx^2)\\x]", vec![rap.clone(), eq3]));

    let beta_f1 = |x: usize, y: usize, n: usize| o.beta(&with(rep(x, n - 1), &[o.f1(x, y)]));
    for n in 2..=n_max {
        let stmt = "PRAP <=> yx^n . beta_n(x,...,x,f1(x,y)) = x";
        let item = format!("4[n={n}]");
        match prop_side(l, &format!("PRAP({n})")) {
            Err(code) => out.push(Claim::skipped("T-AB", item, stmt, &code)),
            Ok(prap) => {
                let eq = forall(o, "xy", |v| {
                    let (x, y) = (v[0], v[1]);
                    o.m(o.m(y, o.pow(x, n)), beta_f1(x, y, n)) == x
                });
                out.push(cluster_claim("T-AB", &item, stmt, vec![prap, eq]));
            }
        }
    }

    let stmt5 = "RAP => (exponent 2 <=> f1(x,y) = x(y\\x))";
    if !rap.value {
        out.push(hypothesis_skip("T-AB", "5", stmt5, "RAP"));
    } else if exponent != Some(2) {
        out.push(Claim::skipped("T-AB", "5", stmt5, EXPONENT_MISMATCH));
    } else {
        let eq = forall(o, "xy", |v| o.f1(v[0], v[1]) == o.m(v[0], o.ld(v[1], v[0])));
        out.push(cluster_claim("T-AB", "5", stmt5, vec![Side::of(true), eq]));
    }
    for n in 2..=n_max {
        let stmt = "PRAP => (exponent n <=> y . beta_n(x,...,x,f1(x,y)) = x)";
        let item = format!("6[n={n}]");
        let hyp = prop_side(l, &format!("PRAP({n})")).map(|s| s.value).unwrap_or(false);
        if !hyp {
            out.push(hypothesis_skip("T-AB", &item, stmt, &format!("PRAP({n})")));
        } else if exponent != Some(n) {
            out.push(Claim::skipped("T-AB", item, stmt, EXPONENT_MISMATCH));
        } else {
            let eq = forall(o, "xy", |v| o.m(v[1], beta_f1(v[0], v[1], n)) == v[0]);
            out.push(cluster_claim("T-AB", &item, stmt, vec![Side::of(true), eq]));
        }
    }
    out
}

pub fn check_alpha_beta_theorem(l: &LoopTable, n_max: usize) -> CheckReport {
    summarize(&alpha_beta_claims(l, n_max))
}

/// The φ/ψ theorem for `2 ≤ n ≤ n_max`.
pub fn phi_psi_claims(l: &LoopTable, n_max: usize) -> Vec<Claim> {
    let o = Ops::new(l);
    let exponent = l.exponent();
    let mut out = Vec::new();
    for n in 2..=n_max {
        let side = forall_eq(o, "xy", |v| {
            let (x, y) = (v[0], v[1]);
            (o.f2(x, o.phi(&with(vec![y], &rep(x, n - 1)))), o.psi(&with(vec![o.f2(x, y)], &rep(x, n - 1))))
        });
        out.push(identity_claim("T-PQ", &format!("1[n={n}]"), "f2(x,phi_n(y,x,...,x)) = psi_n(f2(x,y),x,...,x)", side));
        let side = forall_eq(o, "xy", |v| {
            let (x, y) = (v[0], v[1]);
            (o.f2(x, o.phi(&with(vec![x, y], &rep(x, n - 1)))), o.psi(&with(vec![o.g2(x, y)], &rep(x, n))))
        });
        out.push(identity_claim(
            "T-PQ",
            &format!("2[n={n}]"),
            "f2(x,phi_{n+1}(x,y,x,...,x)) = psi_{n+1}(g2(x,y),x,...,x)",
            side,
        ));
    }

    let lap = prop_side(l, "LAP").expect("identity property");
    let eq3 = forall(o, "xy", |v| {
        let (x, y) = (v[0], v[1]);
        o.f2(x, y) == o.m(o.rd(x, o.m(o.sq(x), y)), x)
    });
    out.push(cluster_claim("T-PQ", "3", "LAP <=> f2(x,y) = [x/(x^2y)]x", vec![lap.clone(), eq3]));

    let psi_f2 = |x: usize, y: usize, n: usize| o.psi(&with(vec![o.f2(x, y)], &rep(x, n - 1)));
    for n in 2..=n_max {
        let stmt = "PLAP <=> psi_n(f2(x,y),x,...,x) . x^n y = x";
        let item = format!("4[n={n}]");
        match prop_side(l, &format!("PLAP({n})")) {
            Err(code) => out.push(Claim::skipped("T-PQ", item, stmt, &code)),
            Ok(plap) => {
                let eq = forall(o, "xy", |v| {
                    let (x, y) = (v[0], v[1]);
                    o.m(psi_f2(x, y, n), o.m(o.pow(x, n), y)) == x
                });
                out.push(cluster_claim("T-PQ", &item, stmt, vec![plap, eq]));
            }
        }
    }

    let stmt5 = "LAP => (exponent 2 <=> f2(x,y) = (x/y)x)";
    if !lap.value {
        out.push(hypothesis_skip("T-PQ", "5", stmt5, "LAP"));
    } else if exponent != Some(2) {
        out.push(Claim::skipped("T-PQ", "5", stmt5, EXPONENT_MISMATCH));
    } else {
        let eq = forall(o, "xy", |v| o.f2(v[0], v[1]) == o.m(o.rd(v[0], v[1]), v[0]));
        out.push(cluster_claim("T-PQ", "5", stmt5, vec![Side::of(true), eq]));
    }
    for n in 2..=n_max {
        let stmt = "PLAP => (exponent n <=> psi_n(f2(x,y),x,...,x) . y = x)";
        let item = format!("6[n={n}]");
        let hyp = prop_side(l, &format!("PLAP({n})")).map(|s| s.value).unwrap_or(false);
        if !hyp {
            out.push(hypothesis_skip("T-PQ", &item, stmt, &format!("PLAP({n})")));
        } else if exponent != Some(n) {
            out.push(Claim::skipped("T-PQ", item, stmt, EXPONENT_MISMATCH));
        } else {
            let eq = forall(o, "xy", |v| o.m(psi_f2(v[0], v[1], n), v[1]) == v[0]);
            out.push(cluster_claim("T-PQ", &item, stmt, vec![Side::of(true), eq]));
        }
    }
    out
}

pub fn check_phi_psi_theorem(l: &LoopTable, n_max: usize) -> CheckReport {
    summarize(&phi_psi_claims(l, n_max))
}

/// Items (a)–(x): unconditional identities and pointwise equivalences, and
/// the CIP/LIP/RIP biconditionals.
pub fn cip_lip_rip_claims(l: &LoopTable) -> Vec<Claim> {
    let o = Ops::new(l);
    let mut out = Vec::new();
    let id = |item: &str, stmt: &str, vars: &str, f: &dyn Fn(&[usize]) -> (usize, usize)| {
        identity_claim("T-AX", item, stmt, forall_eq(o, vars, f))
    };
    let pw = |item: &str, stmt: &str, vars: &str, f: &dyn Fn(&[usize]) -> Vec<bool>| {
        pointwise_claim("T-AX", item, stmt, o, vars, f)
    };
    let all_t = |f: &dyn Fn(usize) -> bool| (0..o.n()).all(f);

    out.push(id("a", "x/yx = (y\\x)/x", "xy", &|v| (o.rd(v[0], o.m(v[1], v[0])), o.rd(o.ld(v[1], v[0]), v[0]))));
    out.push(pw("b", "z(yx) = x <=> y(zx) = x", "xyz", &|v| {
        let (x, y, z) = (v[0], v[1], v[2]);
        vec![o.m(z, o.m(y, x)) == x, o.m(y, o.m(z, x)) == x]
    }));
    out.push(pw("b-maps", "L_yL_z = I <=> L_zL_y = I", "yz", &|v| {
        let (y, z) = (v[0], v[1]);
        vec![all_t(&|t| o.m(z, o.m(y, t)) == t), all_t(&|t| o.m(y, o.m(z, t)) == t)]
    }));
    out.push(id("c", "x/(xz) = (x/z)/x", "xz", &|v| (o.rd(v[0], o.m(v[0], v[1])), o.rd(o.rd(v[0], v[1]), v[0]))));
    out.push(pw("d", "(yx)u = x <=> y(xu) = x", "uxy", &|v| {
        let (u, x, y) = (v[0], v[1], v[2]);
        vec![o.m(o.m(y, x), u) == x, o.m(y, o.m(x, u)) == x]
    }));
    out.push(pw("d-maps", "R_uL_y = I <=> L_yR_u = I", "uy", &|v| {
        let (u, y) = (v[0], v[1]);
        vec![all_t(&|t| o.m(y, o.m(t, u)) == t), all_t(&|t| o.m(o.m(y, t), u) == t)]
    }));
    out.push(forms_claim("T-AX", "e", l, BivariateMap::F2));
    out.push(forms_claim("T-AX", "f", l, BivariateMap::G2));

    let slash_is_backslash = forall(o, "xy", |v| o.rd(v[0], v[1]) == o.ld(v[0], v[1]));
    let p = |x: usize, y: usize| o.m(o.rd(x, o.m(x, y)), x); // [x/(xy)]x
    let q = |x: usize, y: usize| o.m(o.rd(y, o.m(x, y)), y); // [y/(xy)]y
    let r = |x: usize, y: usize| o.m(x, o.ld(o.m(x, y), x)); // x[(xy)\x]
    let s = |x: usize, y: usize| o.m(y, o.ld(o.m(x, y), y)); // y[(xy)\y]
    out.push(cluster_claim(
        "T-AX",
        "g",
        "(Q,/) = (Q,\\) <=> [x/(xy)]x = [y/(xy)]y <=> x[(xy)\\x] = [y/(xy)]y <=> [x/(xy)]x = y[(xy)\\y] <=> x[(xy)\\x] = y[(xy)\\y]",
        vec![
            slash_is_backslash,
            forall(o, "xy", |v| p(v[0], v[1]) == q(v[0], v[1])),
            forall(o, "xy", |v| r(v[0], v[1]) == q(v[0], v[1])),
            forall(o, "xy", |v| p(v[0], v[1]) == s(v[0], v[1])),
            forall(o, "xy", |v| r(v[0], v[1]) == s(v[0], v[1])),
        ],
    ));

    let cip = prop_side(l, "CIP").expect("identity property");
    let lip = prop_side(l, "LIP").expect("identity property");
    let rip = prop_side(l, "RIP").expect("identity property");
    let bi = |item: &str, stmt: &str, prop: &Side, f: &dyn Fn(usize, usize) -> bool| {
        cluster_claim("T-AX", item, stmt, vec![prop.clone(), forall(o, "xy", |v| f(v[0], v[1]))])
    };

    out.push(pw("i", "yx.z = x <=> xz = [x/(yx)]x <=> y.xz = x", "xyz", &|v| {
        let (x, y, z) = (v[0], v[1], v[2]);
        vec![o.m(o.m(y, x), z) == x, o.m(x, z) == o.m(o.rd(x, o.m(y, x)), x), o.m(y, o.m(x, z)) == x]
    }));
    out.push(bi("j", "CIP <=> xy^-1 = [x/(yx)]x", &cip, &|x, y| o.m(x, o.inv(y)) == o.m(o.rd(x, o.m(y, x)), x)));
    out.push(pw("k", "yx.z = x <=> xz = g2(x,y).x <=> y.xz = x", "xyz", &|v| {
        let (x, y, z) = (v[0], v[1], v[2]);
        vec![o.m(o.m(y, x), z) == x, o.m(x, z) == o.m(o.g2(x, y), x), o.m(y, o.m(x, z)) == x]
    }));
    out.push(bi("l", "CIP <=> xy^-1 = g2(x,y).x", &cip, &|x, y| o.m(x, o.inv(y)) == o.m(o.g2(x, y), x)));
    out.push(pw("m", "z.xy = x <=> zx = x[(xy)\\x] <=> zx.y = x", "xyz", &|v| {
        let (x, y, z) = (v[0], v[1], v[2]);
        vec![o.m(z, o.m(x, y)) == x, o.m(z, x) == r(x, y), o.m(o.m(z, x), y) == x]
    }));
    out.push(bi("n", "CIP <=> y^-1x = x[(xy)\\x]", &cip, &|x, y| o.m(o.inv(y), x) == r(x, y)));
    out.push(pw("o", "z.xy = x <=> zx = x.g1(x,y)", "xyz", &|v| {
        let (x, y, z) = (v[0], v[1], v[2]);
        vec![o.m(z, o.m(x, y)) == x, o.m(z, x) == o.m(x, o.g1(x, y))]
    }));
    out.push(bi("p", "CIP <=> y^-1x = x.g1(x,y)", &cip, &|x, y| o.m(o.inv(y), x) == o.m(x, o.g1(x, y))));
    out.push(pw("q", "z.yx = x <=> zx = x[(yx)\\x] <=> y.zx = x", "xyz", &|v| {
        let (x, y, z) = (v[0], v[1], v[2]);
        vec![o.m(z, o.m(y, x)) == x, o.m(z, x) == o.m(x, o.ld(o.m(y, x), x)), o.m(y, o.m(z, x)) == x]
    }));
    out.push(bi("r", "LIP <=> y^-1x = x[(yx)\\x]", &lip, &|x, y| o.m(o.inv(y), x) == o.m(x, o.ld(o.m(y, x), x))));
    out.push(pw("s", "z.yx = x <=> zx = x.f1(x,y)", "xyz", &|v| {
        let (x, y, z) = (v[0], v[1], v[2]);
        vec![o.m(z, o.m(y, x)) == x, o.m(z, x) == o.m(x, o.f1(x, y))]
    }));
    out.push(bi("t", "LIP <=> y^-1x = x.f1(x,y)", &lip, &|x, y| o.m(o.inv(y), x) == o.m(x, o.f1(x, y))));
    out.push(pw("u", "xy.z = x <=> xz = [x/(xy)]x", "xyz", &|v| {
        let (x, y, z) = (v[0], v[1], v[2]);
        vec![o.m(o.m(x, y), z) == x, o.m(x, z) == p(x, y)]
    }));
    out.push(bi("v", "RIP <=> xy^-1 = [x/(xy)]x", &rip, &|x, y| o.m(x, o.inv(y)) == p(x, y)));
    out.push(pw("w", "xy.z = x <=> xz = f2(x,y).x", "xyz", &|v| {
        let (x, y, z) = (v[0], v[1], v[2]);
        vec![o.m(o.m(x, y), z) == x, o.m(x, z) == o.m(o.f2(x, y), x)]
    }));
    out.push(bi("x", "RIP <=> xy^-1 = f2(x,y).x", &rip, &|x, y| o.m(x, o.inv(y)) == o.m(o.f2(x, y), x)));
    out
}

pub fn check_cip_lip_rip_conditions(l: &LoopTable) -> CheckReport {
    summarize(&cip_lip_rip_claims(l))
}

/// Equivalence clusters and product identities mixing f1, g1, f2, g2.
pub fn fg_cross_claims(l: &LoopTable) -> Vec<Claim> {
    let o = Ops::new(l);
    let mut out = Vec::new();
    let fa = |f: &dyn Fn(usize, usize) -> bool| forall(o, "xy", |v| f(v[0], v[1]));

    out.push(cluster_claim(
        "LF2",
        "4",
        "f1(x,y) = f2(x,y) <=> (yx\\x)(xy) = x <=> (yx)(x/xy) = x <=> x\\(y\\x) = (x/y)/x",
        vec![
            fa(&|x, y| o.f1(x, y) == o.f2(x, y)),
            fa(&|x, y| o.m(o.ld(o.m(y, x), x), o.m(x, y)) == x),
            fa(&|x, y| o.m(o.m(y, x), o.rd(x, o.m(x, y))) == x),
            fa(&|x, y| o.ld(x, o.ld(y, x)) == o.rd(o.rd(x, y), x)),
        ],
    ));
    out.push(cluster_claim(
        "LF2",
        "5",
        "g1(x,y) = g2(x,y) <=> (xy\\x)(yx) = x <=> (xy)(x/yx) = x <=> x\\(x/y) = (y\\x)/x",
        vec![
            fa(&|x, y| o.g1(x, y) == o.g2(x, y)),
            fa(&|x, y| o.m(o.ld(o.m(x, y), x), o.m(y, x)) == x),
            fa(&|x, y| o.m(o.m(x, y), o.rd(x, o.m(y, x))) == x),
            fa(&|x, y| o.ld(x, o.rd(x, y)) == o.rd(o.ld(y, x), x)),
        ],
    ));
    let six = |last: Side| {
        vec![
            fa(&|x, y| o.f1(x, y) == o.g2(x, y)),
            fa(&|x, y| o.m(o.m(y, x), o.rd(x, o.m(y, x))) == x),
            fa(&|x, y| o.m(o.ld(o.m(y, x), x), o.m(y, x)) == x),
            fa(&|x, y| o.m(x, o.rd(o.ld(y, x), x)) == o.ld(y, x)),
            last,
        ]
    };
    let stmt6 = "f1(x,y) = g2(x,y) <=> (yx)(x/yx) = x <=> (yx\\x)(yx) = x <=> x[(y\\x)/x] = y\\x <=> [(y\\x)/x]x = y\\x";
    out.push(cluster_claim("LF2", "6", stmt6, six(fa(&|x, y| o.m(o.rd(o.ld(y, x), x), x) == o.ld(y, x)))));
    out.push(
        cluster_claim(
            "LF2",
            "6*",
            "f1(x,y) = g2(x,y) <=> (yx)(x/yx) = x <=> (yx\\x)(yx) = x <=> x[(y\\x)/x] = y\\x <=> [x\\(y\\x)]x = y\\x",
            six(fa(&|x, y| o.m(o.ld(x, o.ld(y, x)), x) == o.ld(y, x))),
        )
        .as_erratum("last form [(y\\x)/x]x = y\\x holds in every loop; read as [x\\(y\\x)]x = y\\x"),
    );
    out.push(cluster_claim(
        "LF2",
        "7",
        "f2(x,y) = g1(x,y) <=> (xy\\x)(xy) = x <=> (yx\\x)(yx) = x <=> x[(x/y)/x] = x/y <=> [x\\(x/y)]x = x/y",
        vec![
            fa(&|x, y| o.f2(x, y) == o.g1(x, y)),
            fa(&|x, y| o.m(o.ld(o.m(x, y), x), o.m(x, y)) == x),
            fa(&|x, y| o.m(o.ld(o.m(y, x), x), o.m(y, x)) == x),
            fa(&|x, y| o.m(x, o.rd(o.rd(x, y), x)) == o.rd(x, y)),
            fa(&|x, y| o.m(o.ld(x, o.rd(x, y)), x) == o.rd(x, y)),
        ],
    ));

    // lhs, and the product uv inside x[(uv)\x] = [x/(uv)]x
    type Prod<'a> = &'a dyn Fn(usize, usize, usize) -> usize;
    let products: [(&str, &str, Prod, Prod); 8] = [
        ("8", "f2(x,y)f1(x,z) = x[(zx)(xy)\\x] = [x/(zx)(xy)]x", &|x, y, z| o.m(o.f2(x, y), o.f1(x, z)), &|x, y, z| {
            o.m(o.m(z, x), o.m(x, y))
        }),
        ("9", "[(x/y)/x][x\\(z\\x)] = x[(zx)(xy)\\x] = [x/(zx)(xy)]x", &|x, y, z| {
            o.m(o.rd(o.rd(x, y), x), o.ld(x, o.ld(z, x)))
        }, &|x, y, z| o.m(o.m(z, x), o.m(x, y))),
        ("10", "g2(x,y)g1(x,z) = x[(xz)(yx)\\x] = [x/(xz)(yx)]x", &|x, y, z| o.m(o.g2(x, y), o.g1(x, z)), &|x, y, z| {
            o.m(o.m(x, z), o.m(y, x))
        }),
        ("11", "[(y\\x)/x][x\\(x/z)] = x[(xz)(yx)\\x] = [x/(xz)(yx)]x", &|x, y, z| {
            o.m(o.rd(o.ld(y, x), x), o.ld(x, o.rd(x, z)))
        }, &|x, y, z| o.m(o.m(x, z), o.m(y, x))),
        ("12", "f2(x,y)g1(x,z) = x[(xz)(xy)\\x] = [x/(xz)(xy)]x", &|x, y, z| o.m(o.f2(x, y), o.g1(x, z)), &|x, y, z| {
            o.m(o.m(x, z), o.m(x, y))
        }),
        ("13", "[(x/y)/x][x\\(x/z)] = x[(xz)(xy)\\x] = [x/(xz)(xy)]x", &|x, y, z| {
            o.m(o.rd(o.rd(x, y), x), o.ld(x, o.rd(x, z)))
        }, &|x, y, z| o.m(o.m(x, z), o.m(x, y))),
        ("14", "g2(x,y)f1(x,z) = x[(xz)(yx)\\x] = [x/(xz)(yx)]x", &|x, y, z| o.m(o.g2(x, y), o.f1(x, z)), &|x, y, z| {
            o.m(o.m(x, z), o.m(y, x))
        }),
        ("15", "[(y\\x)/x][x\\(z\\x)] = x[(xz)(yx)\\x] = [x/(xz)(yx)]x", &|x, y, z| {
            o.m(o.rd(o.ld(y, x), x), o.ld(x, o.ld(z, x)))
        }, &|x, y, z| o.m(o.m(x, z), o.m(y, x))),
    ];
    for (item, stmt, lhs, w) in products {
        let side = forall_chain(o, "xyz", |v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let w = w(x, y, z);
            vec![lhs(x, y, z), o.m(x, o.ld(w, x)), o.m(o.rd(x, w), x)]
        });
        out.push(identity_claim("LF2", item, stmt, side));
    }
    // 14 and 15 as printed use (xz)(yx); the derivation supports (zx)(yx).
    for (item, stmt, lhs) in [
        ("14*", "g2(x,y)f1(x,z) = x[(zx)(yx)\\x] = [x/(zx)(yx)]x", &(|x, y, z| o.m(o.g2(x, y), o.f1(x, z))) as Prod),
        ("15*", "[(y\\x)/x][x\\(z\\x)] = x[(zx)(yx)\\x] = [x/(zx)(yx)]x", &|x, y, z| {
            o.m(o.rd(o.ld(y, x), x), o.ld(x, o.ld(z, x)))
        }),
    ] {
        let side = forall_chain(o, "xyz", |v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let w = o.m(o.m(z, x), o.m(y, x));
            vec![lhs(x, y, z), o.m(x, o.ld(w, x)), o.m(o.rd(x, w), x)]
        });
        out.push(identity_claim("LF2", item, stmt, side).as_erratum("(xz)(yx) read as (zx)(yx)"));
    }
    out
}

pub fn check_fg_cross_lemma(l: &LoopTable) -> CheckReport {
    summarize(&fg_cross_claims(l))
}

/// Group, Moufang and extra characterizations.
pub fn characterization_claims(l: &LoopTable) -> Vec<Claim> {
    let o = Ops::new(l);
    let group = prop_side(l, "ASSOCIATIVE").expect("identity property");
    let moufang = prop_side(l, "MOUFANG").expect("identity property");
    let extra = prop_side(l, "EXTRA").expect("identity property");
    let f2f1 = |x, y, z| o.m(o.f2(x, y), o.f1(x, z));
    let g2g1 = |x, y, z| o.m(o.g2(x, y), o.g1(x, z));
    let f2g1 = |x, y, z| o.m(o.f2(x, y), o.g1(x, z));
    let g2f1 = |x, y, z| o.m(o.g2(x, y), o.f1(x, z));
    let eq = |f: &dyn Fn(usize, usize, usize) -> bool| forall(o, "xyz", |v| f(v[0], v[1], v[2]));
    let mut out = Vec::new();
    let mut bi = |item: &str, stmt: &str, class: &Side, f: &dyn Fn(usize, usize, usize) -> bool| {
        let c = cluster_claim("T-CHAR", item, stmt, vec![class.clone(), eq(f)]);
        out.push(c);
        out.len() - 1
    };

    bi("1b", "group <=> x/y = [f2(x,y)f1(x,z)]/beta_4(x,x,z,x)", &group, &|x, y, z| {
        o.rd(x, y) == o.rd(f2f1(x, y, z), o.beta(&[x, x, z, x]))
    });
    bi("1c", "group <=> x/y = [f2(x,y)f1(x,z)]/beta_2(phi_3(x,x,z),x)", &group, &|x, y, z| {
        o.rd(x, y) == o.rd(f2f1(x, y, z), o.beta(&[o.phi(&[x, x, z]), x]))
    });
    bi("1d", "group <=> z\\x = psi_2(x,alpha_3(x,x,y))\\[f2(x,y)f1(x,z)]", &group, &|x, y, z| {
        o.ld(z, x) == o.ld(o.psi(&[x, o.alpha(&[x, x, y])]), f2f1(x, y, z))
    });
    bi("1e", "group <=> z\\x = psi_4(x,y,x,x)\\[f2(x,y)f1(x,z)]", &group, &|x, y, z| {
        o.ld(z, x) == o.ld(o.psi(&[x, y, x, x]), f2f1(x, y, z))
    });
    bi("1f", "group <=> alpha_3(x,z,y) . g2(x,y)g1(x,z) = x", &group, &|x, y, z| {
        o.m(o.alpha(&[x, z, y]), g2g1(x, y, z)) == x
    });
    bi("1g", "group <=> g2(x,y)g1(x,z) . phi_3(x,z,y) = x", &group, &|x, y, z| {
        o.m(g2g1(x, y, z), o.phi(&[x, z, y])) == x
    });
    let i = bi("1g*", "group <=> g2(x,y)g1(x,z) . phi_3(x,y,z) = x", &group, &|x, y, z| {
        o.m(g2g1(x, y, z), o.phi(&[x, y, z])) == x
    });
    out[i] = out[i].clone().as_erratum("phi_3(x,z,y) read as phi_3(x,y,z), matching the F3 step of the derivation");
    let mut bi = |item: &str, stmt: &str, class: &Side, f: &dyn Fn(usize, usize, usize) -> bool| {
        out.push(cluster_claim("T-CHAR", item, stmt, vec![class.clone(), eq(f)]));
        out.len() - 1
    };
    bi("1h", "group <=> f2(x,y)g1(x,z) = alpha_2(f2(x,y),x) beta_2(x,g1(x,z))", &group, &|x, y, z| {
        f2g1(x, y, z) == o.m(o.alpha(&[o.f2(x, y), x]), o.beta(&[x, o.g1(x, z)]))
    });
    bi("1i", "group <=> f2(x,y)g1(x,z) . phi_3(x,y,z) = x", &group, &|x, y, z| {
        o.m(f2g1(x, y, z), o.phi(&[x, y, z])) == x
    });
    let i = bi("1i*", "group <=> f2(x,y)g1(x,z) . phi_3(y,x,z) = x", &group, &|x, y, z| {
        o.m(f2g1(x, y, z), o.phi(&[y, x, z])) == x
    });
    bi("1j", "group <=> alpha_3(z,x,y) . g2(x,y)f1(x,z) = x", &group, &|x, y, z| {
        o.m(o.alpha(&[z, x, y]), g2f1(x, y, z)) == x
    });
    out[i] = out[i].clone().as_erratum("phi_3(x,y,z) read as phi_3(y,x,z), matching the F14 step of the derivation");
    let mut bi = |item: &str, stmt: &str, class: &Side, f: &dyn Fn(usize, usize, usize) -> bool| {
        out.push(cluster_claim("T-CHAR", item, stmt, vec![class.clone(), eq(f)]));
        out.len() - 1
    };
    let k_form = |x, y, z| g2f1(x, y, z) == o.m(o.psi(&[o.g2(x, y), x]), o.phi(&[o.f1(x, z), x]));
    bi("1k", "group <=> g2(x,y)f1(x,z) = psi_2(g2(x,y),x) phi_2(f1(x,z),x)", &group, &k_form);

    let stmt2 = "exponent 2 => (group <=> (x/y)(z\\x) = f2(x,y)f1(x,z))";
    if l.exponent() == Some(2) {
        bi("2", stmt2, &group, &|x, y, z| o.m(o.rd(x, y), o.ld(z, x)) == f2f1(x, y, z));
    } else {
        out.push(Claim::skipped("T-CHAR", "2", stmt2, EXPONENT_MISMATCH));
    }

    let flexible = prop_side(l, "FLEXIBLE").expect("identity property");
    out.push(Claim::skipped(
        "T-CHAR",
        "3",
        "flexible => (group <=> f2(x,y)g1(x,z) = phi_2(x,f2(x,y)) psi_2(g2(x,z),))",
        UNPARSEABLE,
    ));
    let stmt3 = "flexible => (group <=> g2(x,y)f1(x,z) = psi_2(g2(x,y),x) phi_2(f1(x,z),x))";
    let c3 = if flexible.value {
        cluster_claim("T-CHAR", "3*", stmt3, vec![group.clone(), eq(&k_form)])
    } else {
        hypothesis_skip("T-CHAR", "3*", stmt3, "FLEXIBLE")
    };
    out.push(c3.as_erratum("second argument of psi_2 is missing; read as the final form of its derivation"));

    let mut bi = |item: &str, stmt: &str, class: &Side, f: &dyn Fn(usize, usize, usize) -> bool| {
        out.push(cluster_claim("T-CHAR", item, stmt, vec![class.clone(), eq(f)]));
        out.len() - 1
    };
    bi("4b", "Moufang <=> phi_3(z,y,x) . g2(x,y)g1(x,z) = x", &moufang, &|x, y, z| {
        o.m(o.phi(&[z, y, x]), g2g1(x, y, z)) == x
    });
    bi("4c", "Moufang <=> g2(x,y)g1(x,z) . alpha_3(y,z,x) = x", &moufang, &|x, y, z| {
        o.m(g2g1(x, y, z), o.alpha(&[y, z, x])) == x
    });
    let b = bi("4b*", "Moufang <=> phi_3(y,z,x) . g2(x,y)g1(x,z) = x", &moufang, &|x, y, z| {
        o.m(o.phi(&[y, z, x]), g2g1(x, y, z)) == x
    });
    let c = bi("4c*", "Moufang <=> g2(x,y)g1(x,z) . alpha_3(z,y,x) = x", &moufang, &|x, y, z| {
        o.m(g2g1(x, y, z), o.alpha(&[z, y, x])) == x
    });
    bi("5b", "extra <=> f2(x,y)g1(x,z) . alpha_3(z,x,y) = x", &extra, &|x, y, z| {
        o.m(f2g1(x, y, z), o.alpha(&[z, x, y])) == x
    });
    bi("5c", "extra <=> phi_3(y,x,z) . g2(x,y)f1(x,z) = x", &extra, &|x, y, z| {
        o.m(o.phi(&[y, x, z]), g2f1(x, y, z)) == x
    });
    out[b] = out[b].clone().as_erratum("y and z swapped, matching the F2 step of the derivation");
    out[c] = out[c].clone().as_erratum("y and z swapped, matching the F4 step of the derivation");
    out
}

/// Per item, the (class, equation) sides; skipped items are omitted.
pub fn characterize_group_moufang_extra(l: &LoopTable) -> BTreeMap<String, (bool, bool)> {
    characterization_claims(l)
        .into_iter()
        .filter_map(|c| match c.sides() {
            Some(&[a, b]) => Some((c.item.clone(), (a, b))),
            _ => None,
        })
        .collect()
}

/// Translates the digit notation (`1` for x, `2` for y, square brackets)
/// into a parseable identity.
pub fn n_notation(src: &str) -> String {
    src.chars()
        .map(|c| match c {
            '1' => 'x',
            '2' => 'y',
            '[' => '(',
            ']' => ')',
            c => c,
        })
        .collect()
}

fn n_side(l: &LoopTable, src: &str) -> Side {
    let id = Identity::parse(&n_notation(src)).expect("well-formed digit identity");
    Side::from_report(&check_identity(&id, l))
}

struct NItem {
    lemma: &'static str,
    item: &'static str,
    n_form: &'static str,
    g_form: &'static str,
    g: fn(&Ops, usize, usize) -> (usize, usize),
}

struct NCluster {
    lemma: &'static str,
    item: &'static str,
    hypotheses: &'static [&'static str],
    members: &'static [&'static str],
}

const T_N1: &str = "T-N1";
const T_N2: &str = "T-N2";
const T_N3: &str = "T-N3";
const T_N4: &str = "T-N4";

fn g1_nest(o: &Ops, k: usize, x: usize, w: usize) -> usize {
    (0..k).fold(o.g1(x, w), |acc, _| o.m(x, acc))
}

fn g2_nest(o: &Ops, k: usize, x: usize, w: usize, g2: fn(&Ops, usize, usize) -> usize) -> usize {
    (0..k).fold(g2(o, x, w), |acc, _| o.m(acc, x))
}

fn g2c(o: &Ops, x: usize, y: usize) -> usize {
    o.g2(x, y)
}

/// `x\(yx)`, the alternative reading of g2 in one header.
fn g2_alt(o: &Ops, x: usize, y: usize) -> usize {
    o.ld(x, o.m(y, x))
}

const N_ITEMS: &[NItem] = &[
    NItem { lemma: T_N1, item: "1", n_form: "12·1 = 1·21", g_form: "g1(x,y) = x.g1(x,yx)", g: |o, x, y| {
        (o.g1(x, y), g1_nest(o, 1, x, o.m(y, x)))
    } },
    NItem { lemma: T_N1, item: "2", n_form: "(12·1)1 = 1·(21·1)", g_form: "g1(x,y) = x(x.g1(x,yx.x))", g: |o, x, y| {
        (o.g1(x, y), g1_nest(o, 2, x, o.m(o.m(y, x), x)))
    } },
    NItem { lemma: T_N1, item: "3", n_form: "(12·1)1 = 1·(2·11)", g_form: "g1(x,y) = x(x.g1(x,y.xx))", g: |o, x, y| {
        (o.g1(x, y), g1_nest(o, 2, x, o.m(y, o.sq(x))))
    } },
    NItem { lemma: T_N2, item: "1", n_form: "(12·1)1·1 = 1·(21·1)1", g_form: "g1(x,y) = x[x(x.g1(x,(yx.x)x))]", g: |o, x, y| {
        (o.g1(x, y), g1_nest(o, 3, x, o.m(o.m(o.m(y, x), x), x)))
    } },
    NItem { lemma: T_N2, item: "2", n_form: "(12·1)1·1 = 1·(21·11)", g_form: "g1(x,y) = x[x(x.g1(x,yx.xx))]", g: |o, x, y| {
        (o.g1(x, y), g1_nest(o, 3, x, o.m(o.m(y, x), o.sq(x))))
    } },
    NItem { lemma: T_N2, item: "3", n_form: "(12·1)1·1 = 1·(2·11)1", g_form: "g1(x,y) = x[x(x.g1(x,(y.xx)x))]", g: |o, x, y| {
        (o.g1(x, y), g1_nest(o, 3, x, o.m(o.m(y, o.sq(x)), x)))
    } },
    NItem { lemma: T_N2, item: "9", n_form: "[(12·1)1·1]1 = 1·[(21·1)1]1", g_form: "g1(x,y) = x.x[x(x.g1(x,(yx.x)x.x))]", g: |o, x, y| {
        (o.g1(x, y), g1_nest(o, 4, x, o.m(o.m(o.m(o.m(y, x), x), x), x)))
    } },
    NItem { lemma: T_N3, item: "1", n_form: "12·1 = 1·21", g_form: "g2(x,y) = g2(x,xy).x", g: |o, x, y| {
        (o.g2(x, y), g2_nest(o, 1, x, o.m(x, y), g2c))
    } },
    NItem { lemma: T_N3, item: "2", n_form: "1·(1·21) = (1·12)1", g_form: "g2(x,y) = g2(x,x.xy)x.x", g: |o, x, y| {
        (o.g2(x, y), g2_nest(o, 2, x, o.m(x, o.m(x, y)), g2c))
    } },
    NItem { lemma: T_N3, item: "3", n_form: "1·(1·21) = (11·2)1", g_form: "g2(x,y) = g2(x,xx.y)x.x", g: |o, x, y| {
        (o.g2(x, y), g2_nest(o, 2, x, o.m(o.sq(x), y), g2c))
    } },
    NItem { lemma: T_N3, item: "1~", n_form: "12·1 = 1·21", g_form: "g2(x,y) = g2(x,xy).x with g2(x,y) = x\\yx", g: |o, x, y| {
        (g2_alt(o, x, y), g2_nest(o, 1, x, o.m(x, y), g2_alt))
    } },
    NItem { lemma: T_N3, item: "2~", n_form: "1·(1·21) = (1·12)1", g_form: "g2(x,y) = g2(x,x.xy)x.x with g2(x,y) = x\\yx", g: |o, x, y| {
        (g2_alt(o, x, y), g2_nest(o, 2, x, o.m(x, o.m(x, y)), g2_alt))
    } },
    NItem { lemma: T_N3, item: "3~", n_form: "1·(1·21) = (11·2)1", g_form: "g2(x,y) = g2(x,xx.y)x.x with g2(x,y) = x\\yx", g: |o, x, y| {
        (g2_alt(o, x, y), g2_nest(o, 2, x, o.m(o.sq(x), y), g2_alt))
    } },
    NItem { lemma: T_N4, item: "1", n_form: "1·1(1·21) = 1(1·12)·1", g_form: "g2(x,y) = (g2(x,x(x.xy))x.x)x", g: |o, x, y| {
        (o.g2(x, y), g2_nest(o, 3, x, o.m(x, o.m(x, o.m(x, y))), g2c))
    } },
    NItem { lemma: T_N4, item: "2", n_form: "1·1(1·21) = (11·12)1", g_form: "g2(x,y) = (g2(x,xx.xy)x.x)x", g: |o, x, y| {
        (o.g2(x, y), g2_nest(o, 3, x, o.m(o.sq(x), o.m(x, y)), g2c))
    } },
    NItem { lemma: T_N4, item: "3", n_form: "1·1(1·21) = 1(11·12)·1", g_form: "g2(x,y) = (g2(x,x(xx.y))x.x)x", g: |o, x, y| {
        (o.g2(x, y), g2_nest(o, 3, x, o.m(x, o.m(o.sq(x), y)), g2c))
    } },
    NItem { lemma: T_N4, item: "3*", n_form: "1·1(1·21) = 1(11·2)·1", g_form: "g2(x,y) = (g2(x,x(xx.y))x.x)x", g: |o, x, y| {
        (o.g2(x, y), g2_nest(o, 3, x, o.m(x, o.m(o.sq(x), y)), g2c))
    } },
    NItem { lemma: T_N4, item: "9*", n_form: "1[1·1(1·21)] = 1[1(1·12)]·1", g_form: "g2(x,y) = (((g2(x,x(x(x.xy)))x)x)x)x", g: |o, x, y| {
        (o.g2(x, y), g2_nest(o, 4, x, o.m(x, o.m(x, o.m(x, o.m(x, y)))), g2c))
    } },
];

const N_CLUSTERS: &[NCluster] = &[
    NCluster {
        lemma: T_N1,
        item: "4",
        hypotheses: &["12·2 = 1·22"],
        members: &["(12·1)1 = 1·(21·1)", "(12·1)1 = 1·(2·11)", "12·11 = 1·(2·11)"],
    },
    NCluster {
        lemma: T_N2,
        item: "5",
        hypotheses: &["12·2 = 1·22"],
        members: &["(12·1)1·1 = 1·(21·1)1", "(12·1)1·1 = 1·(21·11)", "(12·1)1·1 = 1·(2·11)1"],
    },
    NCluster {
        lemma: T_N2,
        item: "6",
        hypotheses: &["(1·22)2 = 1·(22·2)"],
        members: &["(12·1)1·1 = 1·(2·11)1", "(12·1)1·1 = 1·2(11·1)", "(12·1)1·1 = 1·2(1·11)"],
    },
    NCluster {
        lemma: T_N2,
        item: "7",
        hypotheses: &["12·22 = 1·(2·22)"],
        members: &["(12·1)1·1 = 1·(21·11)", "(12·1)1·1 = 1·(2·11)1", "(12·1)1·1 = 1·2(11·1)"],
    },
    NCluster {
        lemma: T_N2,
        item: "8",
        hypotheses: &["12·2 = 1·22", "(1·22)2 = 1·(22·2)", "12·22 = 1·(2·22)"],
        members: &[
            "(12·1)1·1 = 1·(21·1)1",
            "(12·1)1·1 = 1·(21·11)",
            "(12·1)1·1 = 1·(2·11)1",
            "(12·1)1·1 = 1·2(11·1)",
            "(12·1)1·1 = 1·2(1·11)",
            "12·111 = 1·2(111)",
        ],
    },
    NCluster {
        lemma: T_N3,
        item: "4",
        hypotheses: &["11·2 = 1·12"],
        members: &["(1·12)1 = 1·(1·21)", "(11·2)1 = 1·(1·21)", "11·21 = (11·2)1"],
    },
    NCluster {
        lemma: T_N4,
        item: "5",
        hypotheses: &["1·12 = 11·2"],
        members: &["1·1(1·21) = 1(1·12)·1", "1·1(1·21) = (11·12)1", "1·1(1·21) = 1(11·12)·1"],
    },
    NCluster {
        lemma: T_N4,
        item: "5*",
        hypotheses: &["1·12 = 11·2"],
        members: &["1·1(1·21) = 1(1·12)·1", "1·1(1·21) = (11·12)1", "1·1(1·21) = 1(11·2)·1"],
    },
    NCluster {
        lemma: T_N4,
        item: "6",
        hypotheses: &["1(11·2)2 = (1·11)2"],
        members: &["1·1(1·21) = 1(11·2)·1", "1·1(1·21) = (1·11)2·1", "1·1(1·21) = (11·1)2·1"],
    },
    NCluster {
        lemma: T_N4,
        item: "6*",
        hypotheses: &["1(11·2) = (1·11)2"],
        members: &["1·1(1·21) = 1(11·2)·1", "1·1(1·21) = (1·11)2·1", "1·1(1·21) = (11·1)2·1"],
    },
    NCluster {
        lemma: T_N4,
        item: "7",
        hypotheses: &["11·12 = (11·1)2"],
        members: &["1·1(1·21) = (11·12)1", "1·1(1·21) = 1(11·2)·1", "1·1(1·21) = (1·11)2·1"],
    },
    NCluster {
        lemma: T_N4,
        item: "8",
        hypotheses: &["1·12 = 11·2", "1(11·2)2 = (1·11)2", "11·12 = (11·1)2"],
        members: &[
            "1·1(1·21) = 1(1·12)·1",
            "1·1(1·21) = (11·12)1",
            "1·1(1·21) = 1(11·2)·1",
            "1·1(1·21) = (1·11)2·1",
            "1·1(1·21) = (11·1)2·1",
            "111·21 = (111)2·1",
        ],
    },
    NCluster {
        lemma: T_N4,
        item: "8*",
        hypotheses: &["1·12 = 11·2", "1(11·2) = (1·11)2", "11·12 = (11·1)2"],
        members: &[
            "1·1(1·21) = 1(1·12)·1",
            "1·1(1·21) = (11·12)1",
            "1·1(1·21) = 1(11·2)·1",
            "1·1(1·21) = (1·11)2·1",
            "1·1(1·21) = (11·1)2·1",
            "111·21 = (111)2·1",
        ],
    },
];

fn n_erratum(lemma: &str, item: &str) -> Option<&'static str> {
    match (lemma, item) {
        (T_N4, "3*") | (T_N4, "5*") => Some("1(11·12)·1 has one x too many; read as 1(11·2)·1, matching its g2 form"),
        (T_N4, "6*") | (T_N4, "8*") => Some("hypothesis 1(11·2)2 has an extra y; read as 1(11·2) = (1·11)2"),
        (T_N4, "9*") => Some("g2 form is garbled; read by the pattern of the other items"),
        _ => None,
    }
}

/// The four N-identity theorems: digit-notation identities evaluated by the
/// generic engine, against g1/g2 forms evaluated directly.
pub fn n_identity_claims(l: &LoopTable) -> Vec<Claim> {
    let o = Ops::new(l);
    let mut out = Vec::new();
    for it in N_ITEMS {
        let stmt = format!("{} <=> {}", it.n_form, it.g_form);
        let g = forall_eq(o, "xy", |v| (it.g)(&o, v[0], v[1]));
        let mut c = cluster_claim(it.lemma, it.item, &stmt, vec![n_side(l, it.n_form), g]);
        if it.item.ends_with('~') {
            c = c.with_reading("g2(x,y) = x\\(yx), the alternative header reading");
        }
        if let Some(note) = n_erratum(it.lemma, it.item) {
            c = c.as_erratum(note);
        }
        out.push(c);
    }
    // cluster 4 of T-N2 has no hypothesis and includes a g1 form
    let x3 = |x| o.pow(x, 3);
    let mut sides: Vec<Side> =
        ["(12·1)1·1 = 1·2(11·1)", "(12·1)1·1 = 1·2(1·11)", "(12·1)1·1 = 1·2(111)"].iter().map(|s| n_side(l, s)).collect();
    sides.push(forall_eq(o, "xy", |v| (o.g1(v[0], v[1]), g1_nest(&o, 3, v[0], o.m(v[1], x3(v[0]))))));
    out.push(cluster_claim(
        T_N2,
        "4",
        "(12·1)1·1 = 1·2(11·1) <=> (12·1)1·1 = 1·2(1·11) <=> (12·1)1·1 = 1·2(111) <=> g1(x,y) = x[x(x.g1(x,yx^3))]",
        sides,
    ));
    let mut sides: Vec<Side> =
        ["1·1(1·21) = (1·11)2·1", "1·1(1·21) = (11·1)2·1", "1·1(1·21) = (111)2·1"].iter().map(|s| n_side(l, s)).collect();
    sides.push(forall_eq(o, "xy", |v| (o.g2(v[0], v[1]), g2_nest(&o, 3, v[0], o.m(x3(v[0]), v[1]), g2c))));
    out.push(cluster_claim(
        T_N4,
        "4",
        "1·1(1·21) = (1·11)2·1 <=> 1·1(1·21) = (11·1)2·1 <=> 1·1(1·21) = (111)2·1 <=> g2(x,y) = (g2(x,x^3y)x.x)x",
        sides,
    ));
    out.push(Claim::skipped(
        T_N4,
        "9",
        "1[1·1(1·21)] = 1[1(1·12)]·1 <=> g2(x,y) = [[[g2(x,(yx·x(x(x·xy))))x·]x]x]x",
        UNPARSEABLE,
    ));

    for cl in N_CLUSTERS {
        let stmt = format!("{} => ({})", cl.hypotheses.join(" & "), cl.members.join(" <=> "));
        let failed = cl.hypotheses.iter().find(|h| !n_side(l, h).value);
        let mut c = match failed {
            Some(h) => hypothesis_skip(cl.lemma, cl.item, &stmt, h),
            None => cluster_claim(cl.lemma, cl.item, &stmt, cl.members.iter().map(|m| n_side(l, m)).collect()),
        };
        if let Some(note) = n_erratum(cl.lemma, cl.item) {
            c = c.as_erratum(note);
        }
        out.push(c);
    }
    out.sort_by(|a, b| (a.lemma_id.as_str(), item_key(&a.item)).cmp(&(b.lemma_id.as_str(), item_key(&b.item))));
    out
}

pub fn check_n_identity_theorems(l: &LoopTable) -> CheckReport {
    summarize(&n_identity_claims(l))
}

/// Sort key that orders `2[n=10]` after `2[n=9]` and `14*` after `14`.
pub fn item_key(item: &str) -> (u32, String) {
    let digits: String = item.chars().take_while(|c| c.is_ascii_digit()).collect();
    let rest = &item[digits.len()..];
    let rest = match (rest.find("[n="), rest.strip_suffix(']')) {
        (Some(i), Some(_)) => {
            let n: u32 = rest[i + 3..rest.len() - 1].parse().unwrap_or(0);
            format!("{}[n={n:03}]", &rest[..i])
        }
        _ => rest.to_string(),
    };
    (digits.parse().unwrap_or(0), rest)
}

/// Corrected or alternative readings, as opposed to statements as printed.
pub fn is_alternative_reading(c: &Claim) -> bool {
    c.erratum || c.item.ends_with('~')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties::tests::s3;

    fn all_claims(l: &LoopTable) -> Vec<Claim> {
        let n = default_n_max(l.order());
        let mut v = f_lemma_claims(l);
        v.extend(commutativity_claims(l));
        v.extend(alpha_beta_claims(l, n));
        v.extend(phi_psi_claims(l, n));
        v.extend(cip_lip_rip_claims(l));
        v.extend(fg_cross_claims(l));
        v.extend(characterization_claims(l));
        v.extend(n_identity_claims(l));
        v
    }

    fn failures(l: &LoopTable) -> Vec<String> {
        all_claims(l).iter().filter(|c| c.failed()).map(|c| c.label()).collect()
    }

    #[test]
    fn abelian_groups_refute_only_the_miscounted_identity() {
        for l in [LoopTable::cyclic(4), LoopTable::from_fn(4, |x, y| x ^ y).unwrap(), LoopTable::cyclic(5)] {
            let f: Vec<String> = failures(&l).into_iter().filter(|s| !s.ends_with('~')).collect();
            assert_eq!(f, ["T-N4:3", "T-N4:5"]);
        }
    }

    #[test]
    fn s3_refutes_exactly_the_misprinted_statements() {
        let f = failures(&s3());
        assert_eq!(
            f,
            ["LF2:6", "LF2:14", "LF2:15", "T-CHAR:1g",
                "T-CHAR:1i",
                "T-CHAR:4b",
                "T-CHAR:4c",
                "T-N3:1~",
                "T-N3:2~",
                "T-N3:3~",
                "T-N4:3",
                "T-N4:5",
            ],
            "{f:?}"
        );
    }

    #[test]
    fn corrected_readings_hold_on_s3() {
        for c in all_claims(&s3()).iter().filter(|c| c.erratum) {
            assert!(!c.failed(), "{}", c.label());
        }
    }

    #[test]
    fn characterization_map_on_z4() {
        let m = characterize_group_moufang_extra(&LoopTable::cyclic(4));
        assert_eq!(m["1b"], (true, true));
        assert_eq!(m["5c"], (true, true));
    }

    #[test]
    fn n_notation_parses() {
        assert_eq!(n_notation("[(12·1)1·1]1"), "((xy·x)x·x)x");
        let id = Identity::parse(&n_notation("(12·1)1 = 1·(21·1)")).unwrap();
        assert_eq!(id.to_string(), Identity::parse("((xy)x)x = x((yx)x)").unwrap().to_string());
    }

    #[test]
    fn item_keys_order_numerically() {
        let mut items = vec!["2[n=10]", "14*", "2[n=9]", "14", "1b"];
        items.sort_by_key(|s| item_key(s));
        assert_eq!(items, ["1b", "2[n=9]", "2[n=10]", "14", "14*"]);
    }
}
