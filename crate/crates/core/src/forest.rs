//! The production forest: seed ppcs of 2 or 3, expanded level by level.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::production::{produce, Production, ProductionRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(total: u64) -> Parity {
        if total.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Smallest total in this chain: 2 or 3.
    pub fn seed_total(self) -> u64 {
        match self {
            Parity::Even => 2,
            Parity::Odd => 3,
        }
    }

    pub fn seeds(self) -> Vec<Composition> {
        let seeds: &[&[u64]] = match self {
            Parity::Even => &[&[1, 1], &[2]],
            Parity::Odd => &[&[1, 1, 1], &[3]],
        };
        let mut out: Vec<_> = seeds
            .iter()
            .map(|p| Composition::new(p.to_vec()).expect("seed is a valid composition"))
            .collect();
        out.sort_by_cached_key(Composition::canonical);
        out
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Parity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(format!("expected `even` or `odd`, got {s:?}")),
        }
    }
}

/// All ppcs of one total. Members are sorted by canonical text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestLevel {
    pub total: u64,
    pub members: Vec<Composition>,
    /// Child canonical text to (parent, rule). Empty on the seed level.
    pub provenance: BTreeMap<String, (Composition, ProductionRule)>,
}

impl ForestLevel {
    pub fn is_seed(&self) -> bool {
        self.provenance.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn origin(&self, c: &Composition) -> Option<&(Composition, ProductionRule)> {
        self.provenance.get(&c.canonical())
    }

    /// Productions into this level, in member order.
    pub fn productions(&self) -> impl Iterator<Item = Production> + '_ {
        self.members.iter().filter_map(move |c| {
            self.origin(c).map(|(parent, rule)| Production {
                parent: parent.clone(),
                rule: *rule,
                child: c.clone(),
            })
        })
    }

    fn seed(parity: Parity) -> Self {
        ForestLevel {
            total: parity.seed_total(),
            members: parity.seeds(),
            provenance: BTreeMap::new(),
        }
    }

    fn expand(&self) -> Result<ForestLevel> {
        let total = self.total + 2;
        let mut provenance = BTreeMap::new();
        let mut by_key = BTreeMap::new();
        for parent in &self.members {
            for p in produce(parent)? {
                let key = p.child.canonical();
                if provenance.contains_key(&key) {
                    return Err(Error::DuplicateProduction { child: key, total });
                }
                provenance.insert(key.clone(), (p.parent, p.rule));
                by_key.insert(key, p.child);
            }
        }
        Ok(ForestLevel {
            total,
            members: by_key.into_values().collect(),
            provenance,
        })
    }
}

/// Levels from the seed total up to `max_total` in steps of 2.
pub fn build_forest(parity: Parity, max_total: u64) -> Result<Vec<ForestLevel>> {
    if max_total < parity.seed_total() {
        return Err(Error::TotalTooSmall {
            total: max_total,
            min: parity.seed_total(),
        });
    }
    if Parity::of(max_total) != parity {
        return Err(Error::ParityMismatch {
            max_total,
            expected: parity,
        });
    }
    let mut levels = vec![ForestLevel::seed(parity)];
    while levels.last().expect("nonempty").total < max_total {
        let next = levels.last().expect("nonempty").expand()?;
        levels.push(next);
    }
    Ok(levels)
}
