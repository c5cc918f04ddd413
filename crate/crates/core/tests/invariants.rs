mod common;

use loopkit::construct;
use loopkit::mappings::BivariateMap;
use loopkit::properties::{self, Catalog, FENYVES};
use loopkit::search::{self, SearchSpec};
use loopkit::terms::{check_identity, Identity, Term};
use loopkit::LoopTable;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn arb_loop(max: usize) -> impl Strategy<Value = LoopTable> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| common::random_loop(&mut StdRng::seed_from_u64(seed), n))
}

fn arb_identity() -> impl Strategy<Value = String> {
    any::<u64>().prop_map(|seed| common::random_identity(&mut StdRng::seed_from_u64(seed)))
}

fn arb_group() -> impl Strategy<Value = LoopTable> {
    prop_oneof![
        (1usize..=9).prop_map(LoopTable::cyclic),
        Just(common::klein()),
        Just(common::s3()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_undoes_multiplication(l in arb_loop(7)) {
        for x in l.elements() {
            for y in l.elements() {
                prop_assert_eq!(l.ldiv(x, l.mul(x, y)), y);
                prop_assert_eq!(l.rdiv(l.mul(y, x), x), y);
            }
        }
    }

    #[test]
    fn validation_is_idempotent(l in arb_loop(7), seed in any::<u64>()) {
        prop_assert_eq!(LoopTable::validate(&l.rows()).unwrap(), l.clone());
        let perm = common::random_perm(&mut StdRng::seed_from_u64(seed), l.order());
        let r = l.relabel(&perm).unwrap();
        prop_assert_eq!(r.identity(), 0);
        prop_assert_eq!(LoopTable::validate(&r.rows()).unwrap(), r);
    }

    #[test]
    fn printed_terms_reparse(src in arb_identity()) {
        let id = Identity::parse(&src).unwrap();
        for t in [&id.lhs, &id.rhs] {
            let again = Term::parse(&t.to_string()).unwrap();
            prop_assert_eq!(&again, t);
        }
    }

    #[test]
    fn counterexamples_are_least(src in arb_identity(), l in arb_loop(4)) {
        let id = Identity::parse(&src).unwrap();
        let r = check_identity(&id, &l);
        prop_assert_eq!(r.holds, r.counterexample.is_none());
        if let Some(cx) = r.counterexample {
            let vals: Vec<usize> = cx.assignment.iter().map(|(_, v)| *v).collect();
            // nothing lexicographically smaller fails
            let n = l.order();
            let k = vals.len();
            for code in 0..n.pow(k as u32) {
                let mut a = vec![0; k];
                let mut c = code;
                for s in a.iter_mut().rev() {
                    *s = c % n;
                    c /= n;
                }
                if a >= vals {
                    break;
                }
                let env = id.vars().iter().copied().zip(a.iter().copied()).collect();
                let (x, y) = (id.lhs.eval(&l, &env), id.rhs.eval(&l, &env));
                prop_assert!(matches!((x, y), (Ok(p), Ok(q)) if p == q), "{a:?} fails before {vals:?}");
            }
        }
    }

    #[test]
    fn classification_respects_implications(l in arb_loop(6)) {
        prop_assert!(properties::classify(&l).violations.is_empty());
    }

    #[test]
    fn groups_satisfy_every_fenyves_identity(g in arb_group()) {
        for f in FENYVES {
            prop_assert!(properties::check(&g, f).unwrap().holds, "{f}");
        }
    }

    #[test]
    fn opposite_swaps_the_bol_sides(l in arb_loop(6)) {
        let o = construct::opposite(&l);
        prop_assert_eq!(construct::opposite(&o), l.clone());
        prop_assert_eq!(
            properties::check(&l, "RIGHT_BOL").unwrap().holds,
            properties::check(&o, "LEFT_BOL").unwrap().holds
        );
        prop_assert_eq!(construct::principal_isotope(&l, 0, 0).unwrap(), l);
    }

    #[test]
    fn relabelled_loops_are_isomorphic(l in arb_loop(7), seed in any::<u64>()) {
        let perm = common::random_perm(&mut StdRng::seed_from_u64(seed), l.order());
        let r = l.relabel(&perm).unwrap();
        let phi = construct::are_isomorphic(&l, &r).unwrap();
        prop_assert!(construct::is_isomorphism(&l, &r, &phi));
        prop_assert_eq!(construct::canonical_form(&l).unwrap(), construct::canonical_form(&r).unwrap());
    }

    #[test]
    fn isotopes_are_loops_with_the_same_middle_bol_status(l in arb_loop(6), a in 0usize..6, b in 0usize..6) {
        let (a, b) = (a % l.order(), b % l.order());
        let iso = construct::principal_isotope(&l, a, b).unwrap();
        prop_assert!(LoopTable::validate(&iso.rows()).is_ok());
        prop_assert_eq!(properties::is_middle_bol(&iso), properties::is_middle_bol(&l));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn stricter_searches_find_subsets(n in 2usize..=5, extra in prop::sample::select(vec!["FLEXIBLE", "COMMUTATIVE", "LAP", "IP", "MOUFANG"])) {
        let base = search::enumerate(&SearchSpec::new(n).require("POWER_ASSOCIATIVE")).unwrap();
        let strict = search::enumerate(&SearchSpec::new(n).require("POWER_ASSOCIATIVE").require(extra)).unwrap();
        for l in &strict.loops {
            prop_assert!(base.loops.contains(l));
        }
        let again = search::enumerate(&SearchSpec::new(n).require("POWER_ASSOCIATIVE").require(extra)).unwrap();
        prop_assert_eq!(again, strict);
    }
}

#[test]
fn middle_bol_inverses_coincide() {
    for l in common::middle_bol_up_to(8) {
        for x in l.elements() {
            let info = l.inverses(x).unwrap();
            assert_eq!(info.lambda_inv, info.rho_inv);
        }
    }
}

#[test]
fn catalog_relations_on_the_corpus() {
    for l in common::middle_bol_up_to(8) {
        let (a, b) = properties::is_middle_bol_equivalent_forms(l);
        assert!(a.holds && b.holds);
        let v = |name: &str| properties::check(l, name).unwrap().holds;
        let comm = v("COMMUTATIVE");
        assert_eq!(v("CIP"), comm && v("WIP"));
        assert_eq!(v("CIP"), comm && v("IP"));
        assert_eq!(v("SAIP"), v("FLEXIBLE"));
        assert_eq!(v("AIP"), comm);
        assert!(v("AAIP"));
        assert!(v("POWER_ASSOCIATIVE"));
    }
    assert!(Catalog::builtin().names().any(|n| n == "MIDDLE_BOL"));
}

#[test]
fn bivariate_forms_agree_on_the_corpus() {
    for l in common::middle_bol_up_to(8) {
        for m in BivariateMap::ALL {
            for x in l.elements() {
                for y in l.elements() {
                    assert_eq!(m.eval(l, x, y), m.eval_alt(l, x, y), "{m}");
                }
            }
        }
    }
}

#[test]
fn alpha_beta_relation_on_the_corpus() {
    use loopkit::mappings::VariadicMap::{Alpha, Beta};
    for l in common::middle_bol_up_to(8) {
        for n in 2..=8 {
            for x in l.elements() {
                for y in l.elements() {
                    // (…((yx)x)…x)\x = x\(…(x\(y\x))…) with n-1 copies of x
                    let mut args = vec![y];
                    args.extend(std::iter::repeat_n(x, n - 1));
                    let lhs = l.ldiv(Alpha.eval(l, &args).unwrap(), x);
                    let mut bargs = vec![x; n - 1];
                    bargs.push(l.ldiv(y, x));
                    let rhs = Beta.eval(l, &bargs).unwrap();
                    assert_eq!(lhs, rhs, "n={n} x={x} y={y}");
                }
            }
        }
    }
}
