//! Named loop classes.
//!
//! Most classes are a conjunction of identities in the term language. One-sided
//! inverses are written with divisions (`x^ρ = x\e`, `x^λ = e/x`) so those
//! classes stay checkable on loops where `x^λ != x^ρ`. Power-alternative laws
//! are procedural because they need powers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::report::{CheckReport, Counterexample, Failure};
use crate::table::LoopTable;
use crate::terms::{check_identity, Identity, ParseError};

/// Skip code for power-alternative checks on non-power-associative loops.
pub const NOT_POWER_ASSOCIATIVE: &str = "not-power-associative";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Procedure {
    PowerAssociative,
    /// `x(…(x(xy))…) = x^k y` with `k` factors of `x`.
    PowerLeftAlternative(usize),
    /// `(…((yx)x)…)x = y x^k` with `k` factors of `x`.
    PowerRightAlternative(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definition {
    Identities(Vec<(String, Identity)>),
    Procedural(Procedure),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyDef {
    pub name: String,
    pub definition: Definition,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("line {line}: expected `name: lhs = rhs`")]
    Malformed { line: usize },
    #[error("unknown property {0}")]
    Unknown(String),
}

impl PropertyDef {
    pub fn from_identities(name: &str, sources: &[&str]) -> PropertyDef {
        let ids = sources
            .iter()
            .map(|s| (s.to_string(), Identity::parse(s).unwrap_or_else(|e| panic!("{name}: {e}"))))
            .collect();
        PropertyDef { name: name.to_string(), definition: Definition::Identities(ids) }
    }

    pub fn procedural(name: &str, proc_: Procedure) -> PropertyDef {
        PropertyDef { name: name.to_string(), definition: Definition::Procedural(proc_) }
    }

    pub fn identities(&self) -> &[(String, Identity)] {
        match &self.definition {
            Definition::Identities(ids) => ids,
            Definition::Procedural(_) => &[],
        }
    }

    /// Checks every defining identity; the first failure is reported.
    pub fn check(&self, table: &LoopTable) -> CheckReport {
        match &self.definition {
            Definition::Identities(ids) => {
                let mut checked = 0;
                for (src, id) in ids {
                    let r = check_identity(id, table);
                    checked += r.checked_assignments;
                    if let Some(cx) = r.counterexample {
                        let cx = if ids.len() > 1 { cx.with_source(src.clone()) } else { cx };
                        return CheckReport::fail(cx, checked);
                    }
                }
                CheckReport::pass(checked)
            }
            Definition::Procedural(p) => check_procedure(p, table),
        }
    }
}

fn check_procedure(p: &Procedure, table: &LoopTable) -> CheckReport {
    if *p == Procedure::PowerAssociative {
        return table.is_power_associative();
    }
    if !table.is_power_associative().holds {
        return CheckReport::skip(NOT_POWER_ASSOCIATIVE);
    }
    let mut checked = 0;
    for x in table.elements() {
        for y in table.elements() {
            checked += 1;
            let (k, lhs, rhs) = match *p {
                Procedure::PowerLeftAlternative(k) => {
                    let mut acc = y;
                    for _ in 0..k {
                        acc = table.mul(x, acc);
                    }
                    (k, acc, table.mul(table.left_power(x, k), y))
                }
                Procedure::PowerRightAlternative(k) => {
                    let mut acc = y;
                    for _ in 0..k {
                        acc = table.mul(acc, x);
                    }
                    (k, acc, table.mul(y, table.left_power(x, k)))
                }
                Procedure::PowerAssociative => unreachable!(),
            };
            if lhs != rhs {
                let cx = Counterexample::new(
                    vec![("x".into(), x), ("y".into(), y), ("k".into(), k)],
                    Failure::Mismatch { lhs, rhs },
                );
                return CheckReport::fail(cx, checked);
            }
        }
    }
    CheckReport::pass(checked)
}

/// A set of named properties with unique names, in insertion order.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: Vec<PropertyDef>,
}

const BUILTIN: &[(&str, &[&str])] = &[
    ("ASSOCIATIVE", &["(xy)z = x(yz)"]),
    ("COMMUTATIVE", &["xy = yx"]),
    ("FLEXIBLE", &["(xy)x = x(yx)"]),
    ("LAP", &["x(xy) = (xx)y"]),
    ("RAP", &["(yx)x = y(xx)"]),
    ("LIP", &["(e/x)(xy) = y"]),
    ("RIP", &["(yx)(x\\e) = y"]),
    ("IP", &["(e/x)(xy) = y", "(yx)(x\\e) = y"]),
    ("WIP", &["x((yx)\\e) = y\\e"]),
    ("CIP", &["(xy)(x\\e) = y"]),
    ("AIP", &["(xy)\\e = (x\\e)(y\\e)"]),
    ("AAIP", &["(xy)\\e = (y\\e)(x\\e)"]),
    ("SAIP", &["((xy)x)\\e = ((x\\e)(y\\e))(x\\e)"]),
    ("RIGHT_BOL", &["((xy)z)y = x((yz)y)"]),
    ("LEFT_BOL", &["(x(yx))z = x(y(xz))"]),
    ("MIDDLE_BOL", &["x(yz\\x) = (x/z)(y\\x)"]),
    ("MOUFANG", &["(xy)(zx) = (x(yz))x"]),
    ("EXTRA", &["(xy)(xz) = x((yx)z)"]),
    ("F1", &["(xy)(zx) = ((xy)z)x"]),
    ("F2", &["(xy)(zx) = (x(yz))x"]),
    ("F3", &["(xy)(zx) = x(y(zx))"]),
    ("F4", &["(xy)(zx) = x((yz)x)"]),
    ("F11", &["(xy)(xz) = ((xy)x)z"]),
    ("F12", &["(xy)(xz) = (x(yx))z"]),
    ("F13", &["(xy)(xz) = x((yx)z)"]),
    ("F14", &["(xy)(xz) = x(y(xz))"]),
    ("F21", &["(yx)(zx) = ((yx)z)x"]),
    ("F22", &["(yx)(zx) = (y(xz))x"]),
    ("F23", &["(yx)(zx) = y((xz)x)"]),
    ("F24", &["(yx)(zx) = y(x(zx))"]),
    ("F31", &["(yx)(xz) = ((yx)x)z"]),
    ("F32", &["(yx)(xz) = (y(xx))z"]),
    ("F33", &["(yx)(xz) = y((xx)z)"]),
    ("F34", &["(yx)(xz) = y(x(xz))"]),
];

/// Exponents for which `PLAP(k)`/`PRAP(k)` appear in the built-in catalog.
pub const BUILTIN_POWER_EXPONENTS: [usize; 3] = [2, 3, 4];

/// Fenyves identities listed alongside the Bol and Moufang laws.
pub const FENYVES: [&str; 16] = [
    "F1", "F2", "F3", "F4", "F11", "F12", "F13", "F14", "F21", "F22", "F23", "F24", "F31", "F32",
    "F33", "F34",
];

impl Catalog {
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| {
            let mut c = Catalog::default();
            for (name, ids) in BUILTIN {
                c.insert(PropertyDef::from_identities(name, ids));
            }
            c.insert(PropertyDef::procedural("POWER_ASSOCIATIVE", Procedure::PowerAssociative));
            for k in BUILTIN_POWER_EXPONENTS {
                c.insert(PropertyDef::procedural(&format!("PLAP({k})"), Procedure::PowerLeftAlternative(k)));
                c.insert(PropertyDef::procedural(&format!("PRAP({k})"), Procedure::PowerRightAlternative(k)));
            }
            c
        })
    }

    /// Adds or replaces the entry with the same name.
    pub fn insert(&mut self, def: PropertyDef) {
        match self.entries.iter_mut().find(|d| d.name == def.name) {
            Some(slot) => *slot = def,
            None => self.entries.push(def),
        }
    }

    pub fn entries(&self) -> &[PropertyDef] {
        &self.entries
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|d| d.name.as_str())
    }

    /// Looks up a name; `PLAP(k)`/`PRAP(k)` resolve for any `k ≥ 1`.
    pub fn get(&self, name: &str) -> Result<PropertyDef, CatalogError> {
        if let Some(d) = self.entries.iter().find(|d| d.name == name) {
            return Ok(d.clone());
        }
        let power = |prefix: &str| {
            name.strip_prefix(prefix)
                .and_then(|rest| rest.strip_suffix(')'))
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
        };
        if let Some(k) = power("PLAP(") {
            return Ok(PropertyDef::procedural(name, Procedure::PowerLeftAlternative(k)));
        }
        if let Some(k) = power("PRAP(") {
            return Ok(PropertyDef::procedural(name, Procedure::PowerRightAlternative(k)));
        }
        Err(CatalogError::Unknown(name.to_string()))
    }

    /// Parses the catalog file format: `name: lhs = rhs` per line, `#`
    /// comments. Repeating a name adds a further identity to that entry.
    pub fn from_text(text: &str) -> Result<Catalog, CatalogError> {
        let mut grouped: Vec<(String, Vec<(String, Identity)>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, body) = line.split_once(':').ok_or(CatalogError::Malformed { line: i + 1 })?;
            let name = name.trim();
            if name.is_empty() {
                return Err(CatalogError::Malformed { line: i + 1 });
            }
            let body = body.trim();
            let id = Identity::parse(body).map_err(|source| CatalogError::Parse { line: i + 1, source })?;
            match grouped.iter_mut().find(|(n, _)| n == name) {
                Some((_, ids)) => ids.push((body.to_string(), id)),
                None => grouped.push((name.to_string(), vec![(body.to_string(), id)])),
            }
        }
        let mut c = Catalog::default();
        for (name, ids) in grouped {
            c.insert(PropertyDef { name, definition: Definition::Identities(ids) });
        }
        Ok(c)
    }
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.entries {
            match &d.definition {
                Definition::Identities(ids) => {
                    for (src, _) in ids {
                        writeln!(f, "{}: {}", d.name, src)?;
                    }
                }
                Definition::Procedural(p) => writeln!(f, "# {}: procedural ({p:?})", d.name)?,
            }
        }
        Ok(())
    }
}

/// Checks a built-in property by name.
pub fn check(table: &LoopTable, name: &str) -> Result<CheckReport, CatalogError> {
    Ok(Catalog::builtin().get(name)?.check(table))
}

pub(crate) fn holds(table: &LoopTable, name: &str) -> bool {
    check(table, name).expect("built-in property").holds
}

pub const MIDDLE_BOL_FORM_2: &str = "x(yz\\x) = (x/z)(y\\x)";
pub const MIDDLE_BOL_FORM_3: &str = "(x/yz)x = (x/z)(y\\x)";

/// Checks both equivalent forms of the middle Bol law.
pub fn is_middle_bol_equivalent_forms(table: &LoopTable) -> (CheckReport, CheckReport) {
    static FORMS: OnceLock<(Identity, Identity)> = OnceLock::new();
    let (f2, f3) = FORMS.get_or_init(|| {
        (Identity::parse(MIDDLE_BOL_FORM_2).unwrap(), Identity::parse(MIDDLE_BOL_FORM_3).unwrap())
    });
    (check_identity(f2, table), check_identity(f3, table))
}

pub fn is_middle_bol(table: &LoopTable) -> bool {
    holds(table, "MIDDLE_BOL")
}

/// Hard-coded implications `(premise, consequence)` that any correct
/// classification satisfies.
pub const IMPLICATIONS: &[(&str, &str)] = &[
    ("EXTRA", "MOUFANG"),
    ("MOUFANG", "FLEXIBLE"),
    ("MOUFANG", "IP"),
    ("MOUFANG", "RIGHT_BOL"),
    ("MOUFANG", "LEFT_BOL"),
    ("RIGHT_BOL", "RIP"),
    ("LEFT_BOL", "LIP"),
    ("RIGHT_BOL", "POWER_ASSOCIATIVE"),
    ("MIDDLE_BOL", "AAIP"),
    ("MIDDLE_BOL", "POWER_ASSOCIATIVE"),
    ("IP", "WIP"),
    ("IP", "AAIP"),
    ("CIP", "WIP"),
    ("ASSOCIATIVE", "EXTRA"),
    ("ASSOCIATIVE", "MOUFANG"),
    ("ASSOCIATIVE", "MIDDLE_BOL"),
    ("ASSOCIATIVE", "RIGHT_BOL"),
    ("ASSOCIATIVE", "LEFT_BOL"),
    ("ASSOCIATIVE", "FLEXIBLE"),
    ("ASSOCIATIVE", "LAP"),
    ("ASSOCIATIVE", "RAP"),
    ("ASSOCIATIVE", "IP"),
    ("ASSOCIATIVE", "WIP"),
    ("ASSOCIATIVE", "AAIP"),
    ("ASSOCIATIVE", "SAIP"),
    ("ASSOCIATIVE", "POWER_ASSOCIATIVE"),
    ("ASSOCIATIVE", "PLAP(2)"),
    ("ASSOCIATIVE", "PLAP(3)"),
    ("ASSOCIATIVE", "PLAP(4)"),
    ("ASSOCIATIVE", "PRAP(2)"),
    ("ASSOCIATIVE", "PRAP(3)"),
    ("ASSOCIATIVE", "PRAP(4)"),
    ("ASSOCIATIVE", "F1"),
    ("ASSOCIATIVE", "F2"),
    ("ASSOCIATIVE", "F3"),
    ("ASSOCIATIVE", "F4"),
    ("ASSOCIATIVE", "F11"),
    ("ASSOCIATIVE", "F12"),
    ("ASSOCIATIVE", "F13"),
    ("ASSOCIATIVE", "F14"),
    ("ASSOCIATIVE", "F21"),
    ("ASSOCIATIVE", "F22"),
    ("ASSOCIATIVE", "F23"),
    ("ASSOCIATIVE", "F24"),
    ("ASSOCIATIVE", "F31"),
    ("ASSOCIATIVE", "F32"),
    ("ASSOCIATIVE", "F33"),
    ("ASSOCIATIVE", "F34"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub values: BTreeMap<String, bool>,
    /// Implications from [`IMPLICATIONS`] that the values violate.
    pub violations: Vec<(String, String)>,
}

impl Classification {
    pub fn get(&self, name: &str) -> Option<bool> {
        self.values.get(name).copied()
    }
}

/// Evaluates the whole built-in catalog and audits the implication list.
pub fn classify(table: &LoopTable) -> Classification {
    let values: BTreeMap<String, bool> =
        Catalog::builtin().entries().iter().map(|d| (d.name.clone(), d.check(table).holds)).collect();
    let violations = audit(&values);
    Classification { values, violations }
}

pub fn audit(values: &BTreeMap<String, bool>) -> Vec<(String, String)> {
    IMPLICATIONS
        .iter()
        .filter(|(p, q)| values.get(*p) == Some(&true) && values.get(*q) == Some(&false))
        .map(|(p, q)| (p.to_string(), q.to_string()))
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn klein() -> LoopTable {
        LoopTable::from_fn(4, |x, y| x ^ y).unwrap()
    }

    /// S3 as permutations of {0,1,2}, elements indexed in lexicographic order.
    pub(crate) fn s3() -> LoopTable {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        LoopTable::from_fn(6, |a, b| {
            let (p, q) = (perms[a], perms[b]);
            let c = [p[q[0]], p[q[1]], p[q[2]]];
            perms.iter().position(|r| *r == c).unwrap()
        })
        .unwrap()
    }

    #[test]
    fn groups_satisfy_group_implied_classes() {
        for l in [LoopTable::cyclic(4), klein(), s3(), LoopTable::cyclic(2)] {
            let c = classify(&l);
            assert!(c.violations.is_empty(), "{:?}", c.violations);
            for (_, q) in IMPLICATIONS.iter().filter(|(p, _)| *p == "ASSOCIATIVE") {
                assert_eq!(c.get(q), Some(true), "{q}");
            }
        }
    }

    #[test]
    fn z4_examples() {
        let z4 = LoopTable::cyclic(4);
        assert!(check(&z4, "MIDDLE_BOL").unwrap().holds);
        assert!(check(&z4, "F2").unwrap().holds);
        assert!(check(&z4, "CIP").unwrap().holds);
        let (a, b) = is_middle_bol_equivalent_forms(&z4);
        assert!(a.holds && b.holds);
    }

    #[test]
    fn nonabelian_group_fails_commutative_classes() {
        let s3 = s3();
        let c = classify(&s3);
        assert_eq!(c.get("COMMUTATIVE"), Some(false));
        assert_eq!(c.get("CIP"), Some(false));
        assert_eq!(c.get("AIP"), Some(false));
        assert_eq!(c.get("MIDDLE_BOL"), Some(true));
    }

    #[test]
    fn power_alternative_needs_power_associativity() {
        let raw = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ];
        let l = LoopTable::validate(&raw).unwrap();
        let r = check(&l, "PLAP(3)").unwrap();
        assert_eq!(r.skipped.as_deref(), Some(NOT_POWER_ASSOCIATIVE));
        assert!(!r.holds);
        assert!(check(&LoopTable::cyclic(5), "PRAP(7)").unwrap().holds);
    }

    #[test]
    fn catalog_round_trips_through_text() {
        let text = Catalog::builtin().to_string();
        let reparsed = Catalog::from_text(&text).unwrap();
        let identity_entries: Vec<_> = Catalog::builtin()
            .entries()
            .iter()
            .filter(|d| matches!(d.definition, Definition::Identities(_)))
            .cloned()
            .collect();
        assert_eq!(reparsed.entries(), identity_entries.as_slice());
    }

    #[test]
    fn catalog_text_errors() {
        assert!(matches!(Catalog::from_text("oops"), Err(CatalogError::Malformed { line: 1 })));
        assert!(matches!(
            Catalog::from_text("# c\nA: x = (y"),
            Err(CatalogError::Parse { line: 2, .. })
        ));
        let c = Catalog::from_text("IPX: (e/x)(xy) = y\nIPX: (yx)(x\\e) = y # rip").unwrap();
        assert_eq!(c.get("IPX").unwrap().identities().len(), 2);
        assert!(matches!(Catalog::builtin().get("NOPE"), Err(CatalogError::Unknown(_))));
    }

    #[test]
    fn audit_flags_violations() {
        let mut v = BTreeMap::new();
        v.insert("EXTRA".to_string(), true);
        v.insert("MOUFANG".to_string(), false);
        assert_eq!(audit(&v), vec![("EXTRA".to_string(), "MOUFANG".to_string())]);
    }
}
