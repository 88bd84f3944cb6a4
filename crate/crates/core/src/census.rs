//! Exhaustive sweeps over every axiom of a small all-functions domain.
//!
//! An axiom on an enumerable domain is a subset of its decisions, so a domain
//! with `|D|` decisions has `2^|D|` axioms. The sweep classifies each one,
//! reduces it, and checks the implications below against the result.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::axiom::Axiom;
use crate::bitset::BitSet;
use crate::calculus::{extensionally_equivalent, procedural_extension, reduce_table, reduce_to_blackbox, BlackboxList};
use crate::domain::{numbered_domain, DecisionDomain};
use crate::error::{Cardinality, Error, Result};
use crate::taxonomy::{AxiomClass, DecisionIndex};

/// Identifier and description of each census check.
pub const CHECKS: [(&str, &str); 8] = [
    ("a", "every axiom with an impasse is arrovian"),
    ("b", "a blackbox axiom is arrovian iff it has an impasse"),
    ("c", "every arrovian procedural axiom is negatively trivial"),
    ("d", "a forcing axiom's implied rule is the only member of its procedural extension"),
    ("e", "extensional equivalence is reflexive, symmetric and transitive"),
    ("f", "reducing the procedural extension of an implementable blackbox list returns the list"),
    ("g", "distinct implementable blackbox lists have distinct procedural extensions"),
    ("h", "every forcing axiom exhibiting the paradox is caudal or exigent and neither blackbox nor procedural"),
];

/// Above this many axioms the pairwise equivalence check (e) is skipped.
pub const EQUIVALENCE_CHECK_LIMIT: u64 = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub id: String,
    pub description: String,
    /// Whether the check ran at this size.
    pub ran: bool,
    /// Number of cases the implication applied to.
    pub cases: u64,
    pub failures: u64,
    /// Smallest failing axiom index (or list index for f and g).
    pub first_failure: Option<u64>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.ran && self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub profiles: usize,
    pub outcomes: usize,
    pub rules: usize,
    pub decisions: usize,
    pub axioms: u64,
    /// Number of axioms for which each class holds.
    pub class_counts: BTreeMap<String, u64>,
    /// Number of axioms whose most specific class is each class.
    pub most_specific: BTreeMap<String, u64>,
    pub with_impasse: u64,
    pub arrovian: u64,
    pub arrovian_without_impasse: u64,
    pub forcing: u64,
    pub paradox: u64,
    pub implementable_arrovian: u64,
    pub general_paradox: u64,
    pub checks: Vec<CheckOutcome>,
}

impl CensusReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().filter(|c| c.ran).all(CheckOutcome::passed)
    }

    pub fn check(&self, id: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.id == id)
    }
}

#[derive(Clone, Debug, Default)]
struct Tally {
    classes: [u64; 8],
    specific: [u64; 8],
    with_impasse: u64,
    arrovian: u64,
    arrovian_without_impasse: u64,
    forcing: u64,
    paradox: u64,
    implementable_arrovian: u64,
    general_paradox: u64,
    cases: [u64; 4],
    failures: [u64; 4],
    first_failure: [Option<u64>; 4],
    paradox_cases: u64,
    paradox_failures: u64,
    paradox_first: Option<u64>,
}

fn min_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        for i in 0..8 {
            self.classes[i] += o.classes[i];
            self.specific[i] += o.specific[i];
        }
        for i in 0..4 {
            self.cases[i] += o.cases[i];
            self.failures[i] += o.failures[i];
            self.first_failure[i] = min_opt(self.first_failure[i], o.first_failure[i]);
        }
        self.with_impasse += o.with_impasse;
        self.arrovian += o.arrovian;
        self.arrovian_without_impasse += o.arrovian_without_impasse;
        self.forcing += o.forcing;
        self.paradox += o.paradox;
        self.implementable_arrovian += o.implementable_arrovian;
        self.general_paradox += o.general_paradox;
        self.paradox_cases += o.paradox_cases;
        self.paradox_failures += o.paradox_failures;
        self.paradox_first = min_opt(self.paradox_first, o.paradox_first);
        self
    }

    fn record(&mut self, check: usize, applies: bool, holds: bool, axiom: u64) {
        if applies {
            self.cases[check] += 1;
            if !holds {
                self.failures[check] += 1;
                self.first_failure[check] = min_opt(self.first_failure[check], Some(axiom));
            }
        }
    }
}

struct Sweep<'a> {
    domain: &'a Arc<DecisionDomain>,
    index: DecisionIndex,
    profiles: usize,
    rules: usize,
    /// Outcome of each rule at each profile, rule-major.
    maps: Vec<Vec<usize>>,
}

impl Sweep<'_> {
    fn bits_of(&self, a: u64) -> BitSet {
        let n = self.index.len();
        let mut bits = BitSet::new(n);
        for d in 0..n {
            if a >> d & 1 == 1 {
                bits.set(d, true);
            }
        }
        bits
    }

    fn visit(&self, a: u64, t: &mut Tally) {
        let bits = self.bits_of(a);
        let (holds, _) = self.index.classes(&bits);
        let holds: Vec<AxiomClass> =
            if holds.is_empty() { vec![AxiomClass::Exigent] } else { holds.into_iter().collect() };
        let has = |c: AxiomClass| holds.contains(&c);
        for &c in &holds {
            t.classes[c as usize] += 1;
        }
        t.specific[holds[0] as usize] += 1;

        let b = reduce_table(self.domain, &self.index, &bits);
        let slices: Vec<Vec<usize>> =
            self.domain.profile_ids().map(|x| b.slice(x).into_iter().map(|y| y.0).collect()).collect();
        let impasse = slices.iter().any(Vec::is_empty);
        let obeying_rules: Vec<usize> =
            (0..self.rules).filter(|&r| (0..self.profiles).all(|x| bits.get(r * self.profiles + x))).collect();
        let arrovian = obeying_rules.is_empty();
        let forcing = slices.iter().all(|s| s.len() == 1);

        t.with_impasse += impasse as u64;
        t.arrovian += arrovian as u64;
        t.arrovian_without_impasse += (arrovian && !impasse) as u64;
        t.forcing += forcing as u64;
        if !impasse && arrovian {
            t.implementable_arrovian += 1;
        }

        let extension: Vec<usize> = (0..self.rules)
            .filter(|&r| (0..self.profiles).all(|x| slices[x].contains(&self.maps[r][x])))
            .collect();
        if !impasse && !extension.is_empty() {
            let every_member_violates =
                extension.iter().all(|&r| (0..self.profiles).any(|x| !bits.get(r * self.profiles + x)));
            t.general_paradox += every_member_violates as u64;
        }

        t.record(0, impasse, arrovian, a);
        t.record(1, has(AxiomClass::Blackbox), arrovian == impasse, a);
        t.record(2, has(AxiomClass::Procedural) && arrovian, has(AxiomClass::NegativelyTrivial), a);
        if forcing {
            let implied: Vec<usize> = slices.iter().map(|s| s[0]).collect();
            let implied_index = self.maps.iter().position(|m| *m == implied);
            t.record(3, true, implied_index.is_some() && extension == [implied_index.unwrap()], a);
            if let Some(r) = implied_index {
                let paradox = (0..self.profiles).any(|x| !bits.get(r * self.profiles + x));
                if paradox {
                    t.paradox += 1;
                    t.paradox_cases += 1;
                    let ok = (has(AxiomClass::Caudal) || has(AxiomClass::Exigent))
                        && !has(AxiomClass::Blackbox)
                        && !has(AxiomClass::Procedural);
                    if !ok {
                        t.paradox_failures += 1;
                        t.paradox_first = min_opt(t.paradox_first, Some(a));
                    }
                }
            }
        }
    }
}

fn outcome(id: &str, ran: bool, cases: u64, failures: u64, first_failure: Option<u64>) -> CheckOutcome {
    let description = CHECKS.iter().find(|(c, _)| *c == id).map(|(_, d)| *d).unwrap_or_default();
    CheckOutcome { id: id.to_owned(), description: description.to_owned(), ran, cases, failures, first_failure }
}

/// Axiom `a` as an extensional axiom: bit `d` of `a` is decision `d`.
pub fn census_axiom(domain: &Arc<DecisionDomain>, a: u64) -> Result<Axiom> {
    let n = domain.decisions_within(u64::MAX)?;
    if n > 63 {
        return Err(Error::InvalidParameter(format!("census axioms need at most 63 decisions, domain has {n}")));
    }
    let mut bits = BitSet::new(n);
    for d in 0..n {
        bits.set(d, a >> d & 1 == 1);
    }
    Axiom::extensional(format!("census-{a}"), Arc::clone(domain), bits)
}

/// Runs the census of the `profiles x outcomes` all-functions domain.
///
/// Fails with `CapExceeded` when `2^|D|` exceeds `cap`.
pub fn run_census(profiles: usize, outcomes: usize, cap: u64) -> Result<CensusReport> {
    let domain = Arc::new(numbered_domain(profiles, outcomes)?);
    let decisions = domain.decisions_within(cap)?;
    let axioms = if decisions < 64 { Cardinality::Finite(1u128 << decisions) } else { Cardinality::of_power(2, decisions) };
    let axiom_count = axioms.within(cap).ok_or(Error::CapExceeded { what: "axiom census", count: axioms, cap })? as u64;
    let index = DecisionIndex::new(&domain, cap)?;
    let maps: Vec<Vec<usize>> = domain
        .enumerate_rules(cap)?
        .map(|r| r.outcomes().iter().map(|y| y.0).collect())
        .collect();
    let sweep = Sweep { domain: &domain, index, profiles, rules: maps.len(), maps };

    let tally = (0..axiom_count)
        .into_par_iter()
        .fold(Tally::default, |mut t, a| {
            sweep.visit(a, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge);

    let mut checks = Vec::new();
    for (i, id) in ["a", "b", "c", "d"].into_iter().enumerate() {
        checks.push(outcome(id, true, tally.cases[i], tally.failures[i], tally.first_failure[i]));
    }
    checks.push(equivalence_check(&domain, axiom_count, cap)?);
    let (f, g) = extension_checks(&domain, cap)?;
    checks.push(f);
    checks.push(g);
    checks.push(outcome("h", true, tally.paradox_cases, tally.paradox_failures, tally.paradox_first));

    let names = |counts: &[u64; 8]| -> BTreeMap<String, u64> {
        AxiomClass::ALL.iter().map(|c| (c.as_str().to_owned(), counts[*c as usize])).collect()
    };
    Ok(CensusReport {
        profiles,
        outcomes,
        rules: sweep.rules,
        decisions,
        axioms: axiom_count,
        class_counts: names(&tally.classes),
        most_specific: names(&tally.specific),
        with_impasse: tally.with_impasse,
        arrovian: tally.arrovian,
        arrovian_without_impasse: tally.arrovian_without_impasse,
        forcing: tally.forcing,
        paradox: tally.paradox,
        implementable_arrovian: tally.implementable_arrovian,
        general_paradox: tally.general_paradox,
        checks,
    })
}

/// Check (e) over every pair and every chained triple, through the public
/// equivalence predicate.
fn equivalence_check(domain: &Arc<DecisionDomain>, axioms: u64, cap: u64) -> Result<CheckOutcome> {
    if axioms > EQUIVALENCE_CHECK_LIMIT {
        return Ok(outcome("e", false, 0, 0, None));
    }
    let all: Vec<Axiom> = (0..axioms).map(|a| census_axiom(domain, a)).collect::<Result<_>>()?;
    let n = all.len();
    let rows: Vec<Vec<bool>> = all
        .par_iter()
        .map(|a| all.iter().map(|b| extensionally_equivalent(a, b, cap)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let (mut cases, mut failures, mut first) = (0u64, 0u64, None);
    let mut fail = |a: usize, failures: &mut u64| {
        *failures += 1;
        first = min_opt(first, Some(a as u64));
    };
    for a in 0..n {
        cases += 1;
        if !rows[a][a] {
            fail(a, &mut failures);
        }
        for b in 0..n {
            if rows[a][b] != rows[b][a] {
                fail(a, &mut failures);
            }
            if !rows[a][b] {
                continue;
            }
            for (c, &bc) in rows[b].iter().enumerate() {
                if bc {
                    cases += 1;
                    if !rows[a][c] {
                        fail(a, &mut failures);
                    }
                }
            }
        }
    }
    Ok(outcome("e", true, cases, failures, first))
}

/// Checks (f) and (g) over every blackbox list of the domain, through the
/// public extension and reduction operations.
fn extension_checks(domain: &Arc<DecisionDomain>, cap: u64) -> Result<(CheckOutcome, CheckOutcome)> {
    let pairs = domain.profile_count() * domain.outcome_count();
    if pairs > 20 {
        return Ok((outcome("f", false, 0, 0, None), outcome("g", false, 0, 0, None)));
    }
    let lists: Vec<(u64, BlackboxList)> = (0..1u64 << pairs)
        .map(|m| {
            let mut bits = BitSet::new(pairs);
            for i in 0..pairs {
                bits.set(i, m >> i & 1 == 1);
            }
            BlackboxList::from_bits(Arc::clone(domain), bits).map(|b| (m, b))
        })
        .filter(|r| r.as_ref().map_or(true, |(_, b)| b.is_implementable()))
        .collect::<Result<_>>()?;

    let results: Vec<(u64, bool, Vec<Vec<usize>>)> = lists
        .par_iter()
        .map(|(m, b)| {
            let ext = procedural_extension(b);
            let back = reduce_to_blackbox(&ext.as_axiom(), cap)?;
            let members = ext.rules(cap)?.iter().map(|r| r.outcomes().iter().map(|y| y.0).collect()).collect();
            Ok((*m, back == *b, members))
        })
        .collect::<Result<_>>()?;

    let f_fail: Vec<u64> = results.iter().filter(|(_, ok, _)| !ok).map(|(m, _, _)| *m).collect();
    let f = outcome("f", true, results.len() as u64, f_fail.len() as u64, f_fail.first().copied());

    let mut seen: BTreeMap<&Vec<Vec<usize>>, u64> = BTreeMap::new();
    let (mut g_fail, mut g_first) = (0u64, None);
    for (m, _, members) in &results {
        if seen.insert(members, *m).is_some() {
            g_fail += 1;
            g_first = min_opt(g_first, Some(*m));
        }
    }
    let g = outcome("g", true, results.len() as u64, g_fail, g_first);
    Ok((f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::DEFAULT_CAP;

    #[test]
    fn census_2x2_passes_every_check() {
        let r = run_census(2, 2, DEFAULT_CAP).unwrap();
        assert_eq!(r.axioms, 256);
        assert_eq!(r.checks.len(), 8);
        for c in &r.checks {
            assert!(c.passed(), "{c:?}");
        }
        assert!(r.arrovian_without_impasse > 0);
    }

    #[test]
    fn census_axiom_indexing_matches_decisions() {
        let d = Arc::new(numbered_domain(2, 2).unwrap());
        let a = census_axiom(&d, 0b1000_0001).unwrap();
        let list = a.characterizing_list(DEFAULT_CAP).unwrap();
        assert_eq!(list.indices().collect::<Vec<_>>(), vec![0, 7]);
    }

    #[test]
    fn census_respects_cap() {
        let err = run_census(3, 2, DEFAULT_CAP).unwrap_err();
        assert_eq!(err.code(), "cap-exceeded");
        assert_eq!(run_census(2, 2, 100).unwrap_err().code(), "cap-exceeded");
    }

    #[test]
    fn one_profile_census() {
        let r = run_census(1, 2, DEFAULT_CAP).unwrap();
        assert_eq!((r.rules, r.decisions, r.axioms), (2, 2, 4));
        assert!(r.all_passed());
    }
}
