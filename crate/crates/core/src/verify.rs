//! Checks of the production system against the brute-force oracle.
//!
//! Parent sets are always drawn from [`Oracle`] enumeration, never from the
//! forest, so a bug in the rules cannot hide itself.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use serde::Serialize;

use crate::composition::{Composition, PpcType};
use crate::error::{Error, Result};
use crate::forest::{build_forest, Parity};
use crate::oracle::{count_ppcs_formula, Oracle};
use crate::production::{apply_rule, parent_of, produce};

/// Result of one assertion. A failure carries a human-readable counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "counterexample", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail(String),
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    fn fail_at(c: &Composition, why: impl fmt::Display) -> Outcome {
        Outcome::Fail(format!("{c} ({why})"))
    }

    /// Keeps the first failure.
    fn and(self, other: impl FnOnce() -> Outcome) -> Outcome {
        match self {
            Outcome::Pass => other(),
            fail => fail,
        }
    }
}

fn outcome_of(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Outcome::Fail(format!("error: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub total: u64,
    pub children: usize,
    /// No ppc is produced twice.
    pub no_duplicates: Outcome,
    /// Children as a set equal the brute-force ppcs of `total + 2`.
    pub matches_oracle: Outcome,
    /// `parent_of` recovers each child's actual producer and rule.
    pub inverse_consistent: Outcome,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.no_duplicates.passed()
            && self.matches_oracle.passed()
            && self.inverse_consistent.passed()
    }

    pub fn outcome(&self) -> Outcome {
        self.no_duplicates
            .clone()
            .and(|| self.matches_oracle.clone())
            .and(|| self.inverse_consistent.clone())
    }
}

/// Produces from every ppc of `total` and compares with the ppcs of `total + 2`.
pub fn verify_bijection(oracle: &Oracle, total: u64) -> Result<BijectionReport> {
    if total < 2 || total + 2 > oracle.cap() {
        return Err(Error::NOutOfRange {
            n: total,
            cap: oracle.cap().saturating_sub(2),
        });
    }
    let mut productions = Vec::new();
    for p in oracle.ppcs(total)? {
        productions.extend(produce(&p)?);
    }

    let mut keys: Vec<String> = productions.iter().map(|p| p.child.canonical()).collect();
    keys.sort();
    let no_duplicates = match keys.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Outcome::Fail(format!("{} (produced more than once)", w[0])),
        None => Outcome::Pass,
    };

    let produced: BTreeSet<&String> = keys.iter().collect();
    let expected: BTreeSet<String> = oracle.ppcs(total + 2)?.map(|c| c.canonical()).collect();
    let matches_oracle = if let Some(extra) = produced.iter().find(|k| !expected.contains(**k)) {
        Outcome::Fail(format!("{extra} (produced but not a brute-force ppc)"))
    } else if let Some(missing) = expected.iter().find(|k| !produced.contains(k)) {
        Outcome::Fail(format!("{missing} (brute-force ppc never produced)"))
    } else {
        Outcome::Pass
    };

    let mut inverse_consistent = Outcome::Pass;
    for p in &productions {
        let back = parent_of(&p.child);
        let ok = matches!(&back, Ok(b) if b.parent == p.parent && b.rule == p.rule);
        if !ok {
            inverse_consistent = Outcome::fail_at(
                &p.child,
                format_args!("produced from {} by {}", p.parent, p.rule),
            );
            break;
        }
    }

    Ok(BijectionReport {
        total,
        children: productions.len(),
        no_duplicates,
        matches_oracle,
        inverse_consistent,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TypeCensus {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl TypeCensus {
    pub fn get(&self, ty: PpcType) -> u64 {
        match ty {
            PpcType::A => self.a,
            PpcType::B => self.b,
            PpcType::C => self.c,
        }
    }

    pub fn total(&self) -> u64 {
        self.a + self.b + self.c
    }

    fn bump(&mut self, ty: PpcType) {
        match ty {
            PpcType::A => self.a += 1,
            PpcType::B => self.b += 1,
            PpcType::C => self.c += 1,
        }
    }
}

pub fn type_census(oracle: &Oracle, total: u64) -> Result<TypeCensus> {
    if total < 2 {
        return Err(Error::NOutOfRange {
            n: total,
            cap: oracle.cap(),
        });
    }
    let mut census = TypeCensus::default();
    for c in oracle.ppcs(total)? {
        census.bump(c.classify()?);
    }
    Ok(census)
}

/// Child type multiset, sorted, for each producer type.
pub fn expected_child_types(ty: PpcType) -> &'static [PpcType] {
    use PpcType::*;
    match ty {
        A => &[A, B, C, C],
        B => &[A, B],
        C => &[A, B, C],
    }
}

/// Brute-force count equals the closed form.
pub fn check_count(oracle: &Oracle, total: u64) -> Result<Outcome> {
    let brute = oracle.count_ppcs_brute(total)?;
    let formula = count_ppcs_formula(total)?;
    Ok(if brute == formula {
        Outcome::Pass
    } else {
        Outcome::Fail(format!(
            "total {total}: brute force {brute}, formula {formula}"
        ))
    })
}

/// Each type holds exactly a third of the ppcs of `total`.
pub fn check_thirds(oracle: &Oracle, total: u64) -> Result<Outcome> {
    let census = type_census(oracle, total)?;
    let all = oracle.count_ppcs_brute(total)?;
    let even_split = all % 3 == 0 && PpcType::ALL.iter().all(|&t| census.get(t) == all / 3);
    Ok(if census.total() == all && even_split {
        Outcome::Pass
    } else {
        // Name a ppc of the over-represented type.
        let heavy = PpcType::ALL
            .into_iter()
            .max_by_key(|&t| census.get(t))
            .expect("three types");
        let witness = oracle
            .ppcs(total)?
            .find(|c| c.classify().ok() == Some(heavy))
            .map(|c| c.canonical())
            .unwrap_or_default();
        Outcome::Fail(format!(
            "{witness} (total {total}: A={} B={} C={} of {all})",
            census.a, census.b, census.c
        ))
    })
}

/// Every ppc of `total` yields the child types its own type predicts.
pub fn check_fan_out(oracle: &Oracle, total: u64) -> Result<Outcome> {
    for p in oracle.ppcs(total)? {
        let ty = p.classify()?;
        let mut got = produce(&p)?
            .iter()
            .map(|pr| pr.child.classify())
            .collect::<Result<Vec<_>>>()?;
        got.sort();
        if got != expected_child_types(ty) {
            return Ok(Outcome::fail_at(
                &p,
                format_args!("type {ty} produced {got:?}"),
            ));
        }
    }
    Ok(Outcome::Pass)
}

/// For each ppc of `total`, its recovered parent regenerates it, and every
/// sibling produced by that parent maps back to the same parent.
pub fn check_round_trip(oracle: &Oracle, total: u64) -> Result<Outcome> {
    for c in oracle.ppcs(total)? {
        let up = parent_of(&c)?;
        if !up.parent.is_ppc() || apply_rule(&up.parent, up.rule)? != c {
            return Ok(Outcome::fail_at(
                &c,
                format_args!("parent {} by {}", up.parent, up.rule),
            ));
        }
        for sib in produce(&up.parent)? {
            let back = parent_of(&sib.child)?;
            if back.parent != up.parent || back.rule != sib.rule {
                return Ok(Outcome::fail_at(
                    &sib.child,
                    format_args!("sibling of {c} maps to {} by {}", back.parent, back.rule),
                ));
            }
        }
    }
    Ok(Outcome::Pass)
}

/// Forest levels equal the brute-force ppc sets and triple in size each step.
pub fn check_forest(oracle: &Oracle, parity: Parity, max_total: u64) -> Result<Outcome> {
    let levels = build_forest(parity, max_total)?;
    let mut prev_len = None;
    for level in &levels {
        let expected: BTreeSet<String> = oracle.ppcs(level.total)?.map(|c| c.canonical()).collect();
        let members: Vec<String> = level.members.iter().map(Composition::canonical).collect();
        if let Some(m) = members.iter().find(|m| !expected.contains(*m)) {
            return Ok(Outcome::Fail(format!(
                "{m} (in forest at total {}, not a brute-force ppc)",
                level.total
            )));
        }
        let have: BTreeSet<&String> = members.iter().collect();
        if let Some(m) = expected.iter().find(|m| !have.contains(m)) {
            return Ok(Outcome::Fail(format!(
                "{m} (brute-force ppc missing from forest at total {})",
                level.total
            )));
        }
        if have.len() != members.len() {
            return Ok(Outcome::Fail(format!(
                "total {}: repeated forest member",
                level.total
            )));
        }
        if let Some(p) = prev_len {
            if members.len() != 3 * p {
                let first = members.first().cloned().unwrap_or_default();
                return Ok(Outcome::Fail(format!(
                    "{first} (total {}: {} members, expected 3 x {p})",
                    level.total,
                    members.len()
                )));
            }
        }
        prev_len = Some(members.len());
    }
    Ok(Outcome::Pass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// The ppc of total 1, outside the theorem's range.
    #[serde(rename = "count-total-1")]
    CountTotalOne,
    Count,
    Bijection,
    Thirds,
    FanOut,
    RoundTrip,
    Forest,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::CountTotalOne => "count-total-1",
            CheckKind::Count => "count",
            CheckKind::Bijection => "bijection",
            CheckKind::Thirds => "thirds",
            CheckKind::FanOut => "fan-out",
            CheckKind::RoundTrip => "round-trip",
            CheckKind::Forest => "forest",
        }
    }

    /// Totals of `parity` this check covers when verifying up to `max_total`.
    fn totals(self, parity: Parity, max_total: u64) -> Option<(u64, u64)> {
        let seed = parity.seed_total();
        let top = if Parity::of(max_total) == parity {
            max_total
        } else {
            max_total - 1
        };
        let (lo, hi) = match self {
            CheckKind::CountTotalOne => return None,
            CheckKind::Count | CheckKind::Forest => (seed, top),
            CheckKind::Bijection | CheckKind::FanOut => (seed, top.saturating_sub(2)),
            CheckKind::Thirds | CheckKind::RoundTrip => (seed + 2, top),
        };
        (lo <= hi).then_some((lo, hi))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: CheckKind,
    pub parity: Option<Parity>,
    pub first_total: u64,
    pub last_total: u64,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_total: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome.passed())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.outcome.passed() { "PASS" } else { "FAIL" };
            let parity = c.parity.map_or("-", Parity::as_str);
            write!(
                f,
                "{status}  {:<14}{parity:<5} totals {}..={}",
                c.name.as_str(),
                c.first_total,
                c.last_total
            )?;
            if let Outcome::Fail(why) = &c.outcome {
                write!(f, "  counterexample: {why}")?;
            }
            writeln!(f)?;
        }
        let passed = self.checks.iter().filter(|c| c.outcome.passed()).count();
        writeln!(
            f,
            "overall: {} ({passed}/{} checks passed)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len()
        )
    }
}

#[derive(Debug, Clone, Copy)]
struct Task {
    kind: CheckKind,
    parity: Parity,
    total: u64,
}

fn run_task(oracle: &Oracle, t: Task) -> Outcome {
    outcome_of(match t.kind {
        CheckKind::CountTotalOne => Ok(Outcome::Pass),
        CheckKind::Count => check_count(oracle, t.total),
        CheckKind::Bijection => verify_bijection(oracle, t.total).map(|r| r.outcome()),
        CheckKind::Thirds => check_thirds(oracle, t.total),
        CheckKind::FanOut => check_fan_out(oracle, t.total),
        CheckKind::RoundTrip => check_round_trip(oracle, t.total),
        CheckKind::Forest => check_forest(oracle, t.parity, t.total),
    })
}

/// Maps `f` over `items` on up to `jobs` threads; results keep input order.
pub fn par_map<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let jobs = jobs.clamp(1, items.len().max(1));
    if jobs == 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let r = f(item);
                slots.lock().expect("result slots poisoned")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("result slots poisoned")
        .into_iter()
        .map(|r| r.expect("every task ran"))
        .collect()
}

const SUITE: [CheckKind; 6] = [
    CheckKind::Count,
    CheckKind::Bijection,
    CheckKind::Thirds,
    CheckKind::FanOut,
    CheckKind::RoundTrip,
    CheckKind::Forest,
];

/// Runs every check for both parities up to `max_total` (at least 4, at most the cap).
/// The report is identical for every `jobs`.
pub fn run_suite(oracle: &Oracle, max_total: u64, jobs: usize) -> Result<VerifyReport> {
    if max_total < 4 || max_total > oracle.cap() {
        return Err(Error::NOutOfRange {
            n: max_total,
            cap: oracle.cap(),
        });
    }

    let mut groups: Vec<(CheckKind, Parity, u64, u64)> = Vec::new();
    let mut tasks = Vec::new();
    for kind in SUITE {
        for parity in [Parity::Even, Parity::Odd] {
            let Some((lo, hi)) = kind.totals(parity, max_total) else {
                continue;
            };
            groups.push((kind, parity, lo, hi));
            if kind == CheckKind::Forest {
                tasks.push(Task {
                    kind,
                    parity,
                    total: hi,
                });
            } else {
                tasks.extend((lo..=hi).step_by(2).map(|total| Task {
                    kind,
                    parity,
                    total,
                }));
            }
        }
    }

    // Heaviest totals first so the pool drains evenly.
    let mut order: Vec<usize> = (0..tasks.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(tasks[i].total));
    let scheduled: Vec<Task> = order.iter().map(|&i| tasks[i]).collect();
    let outcomes = par_map(&scheduled, jobs, |&t| run_task(oracle, t));

    let mut by_group: BTreeMap<(CheckKind, Parity), Vec<(u64, Outcome)>> = BTreeMap::new();
    for (t, o) in scheduled.iter().zip(outcomes) {
        by_group
            .entry((t.kind, t.parity))
            .or_default()
            .push((t.total, o));
    }

    let total_one = outcome_of(
        oracle
            .count_ppcs_brute(1)
            .and_then(|b| Ok((b, count_ppcs_formula(1)?)))
            .map(|(b, f)| {
                if b == 1 && f == 1 {
                    Outcome::Pass
                } else {
                    Outcome::Fail(format!("total 1: brute force {b}, formula {f}"))
                }
            }),
    );
    let mut checks = vec![Check {
        name: CheckKind::CountTotalOne,
        parity: None,
        first_total: 1,
        last_total: 1,
        outcome: total_one,
    }];
    for (kind, parity, lo, hi) in groups {
        let mut results = by_group.remove(&(kind, parity)).unwrap_or_default();
        results.sort_by_key(|(total, _)| *total);
        let outcome = results
            .into_iter()
            .map(|(_, o)| o)
            .find(|o| !o.passed())
            .unwrap_or(Outcome::Pass);
        checks.push(Check {
            name: kind,
            parity: Some(parity),
            first_total: lo,
            last_total: hi,
            outcome,
        });
    }
    Ok(VerifyReport { max_total, checks })
}
