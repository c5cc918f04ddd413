mod common;

use loopkit::construct;
use loopkit::properties;
use loopkit::search::{self, SearchSpec};
use loopkit::LoopTable;

/// Brute-force isomorphism classes, via every relabelling fixing 0.
fn naive_classes(loops: &[LoopTable]) -> usize {
    fn perms(rest: Vec<usize>) -> Vec<Vec<usize>> {
        if rest.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (i, &x) in rest.iter().enumerate() {
            let mut r = rest.clone();
            r.remove(i);
            for mut p in perms(r) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    let mut seen = std::collections::HashSet::new();
    let mut classes = 0;
    for l in loops {
        if seen.contains(&l.rows()) {
            continue;
        }
        classes += 1;
        for p in perms((1..l.order()).collect()) {
            let full: Vec<usize> = std::iter::once(0).chain(p).collect();
            seen.insert(l.relabel(&full).unwrap().rows());
        }
    }
    classes
}

#[test]
fn dedup_matches_brute_force_on_small_orders() {
    for n in 1..=5 {
        let all = common::all_loops(n);
        let classes = search::enumerate(&SearchSpec::new(n).dedup()).unwrap().loops;
        assert_eq!(classes.len(), naive_classes(&all), "order {n}");
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                assert!(!common::is_isomorphic(a, b));
            }
        }
    }
    let six = search::enumerate(&SearchSpec::new(6).dedup()).unwrap().loops;
    assert_eq!(six.len(), 109);
    let forms: std::collections::HashSet<_> = six.iter().map(|l| construct::canonical_form(l).unwrap()).collect();
    assert_eq!(forms.len(), 109);
}

#[test]
fn right_bol_of_order_8_yields_middle_bol_loops() {
    let rb = common::right_bol_8();
    assert_eq!(rb.len(), 11);
    let non_groups: Vec<_> = rb.iter().filter(|l| !properties::check(l, "ASSOCIATIVE").unwrap().holds).collect();
    assert!(!non_groups.is_empty());
    for l in rb {
        let m = construct::middle_from_right_bol(l).unwrap();
        assert!(properties::is_middle_bol(&m));
        // the left Bol transpose gives the same middle Bol loop up to isomorphism
        let t = construct::middle_from_left_bol(&construct::opposite(l)).unwrap();
        assert!(properties::is_middle_bol(&t));
    }
}

#[test]
fn order_8_corpus_is_closed_under_isotopy() {
    let eight: Vec<&LoopTable> = common::middle_bol_up_to(8).into_iter().filter(|l| l.order() == 8).collect();
    assert_eq!(eight.len(), 11);
    for l in &eight {
        for a in l.elements() {
            for b in l.elements() {
                let iso = construct::principal_isotope(l, a, b).unwrap();
                assert!(properties::is_middle_bol(&iso));
                assert!(eight.iter().any(|k| common::is_isomorphic(k, &iso)), "isotope ({a},{b}) escapes");
            }
        }
    }
}

#[test]
fn build_and_reload_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let ms = search::build_corpus(dir.path(), &[2, 4, 6], &["MIDDLE_BOL", "RIGHT_BOL"]).unwrap();
    assert_eq!(ms.len(), 6);
    assert!(ms.iter().all(|m| m.complete));
    let c = search::load_corpus(dir.path()).unwrap();
    assert!(c.invalid.is_empty());
    assert_eq!(c.entries.len(), ms.iter().map(|m| m.count).sum::<usize>());
    for m in &ms {
        let (loops, _, _) = search::corpus_class(&m.class, m.order).unwrap();
        let stored: Vec<&LoopTable> =
            c.entries.iter().filter(|e| e.class == m.class && e.order == m.order).map(|e| &e.table).collect();
        assert_eq!(stored, loops.iter().collect::<Vec<_>>(), "{}/n{}", m.class, m.order);
    }
    // rebuilding is byte-for-byte deterministic
    let again = tempfile::tempdir().unwrap();
    search::build_corpus(again.path(), &[2, 4, 6], &["MIDDLE_BOL", "RIGHT_BOL"]).unwrap();
    let read = |d: &std::path::Path| std::fs::read(d.join("RIGHT_BOL/n6/manifest.json")).unwrap();
    assert_eq!(read(dir.path()), read(again.path()));
}
