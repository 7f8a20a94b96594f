//! The four production rules taking a ppc of total `m` to ppcs of total `m + 2`,
//! and their inverse.
//!
//! | rule | applies when    | effect                                    |
//! |------|-----------------|-------------------------------------------|
//! | A    | always          | new part 1 on each side                   |
//! | B    | always          | +1 to first and last (single part: +2)    |
//! | C1   | first part is 1 | +2 to the last part                       |
//! | C2   | last part is 1  | +2 to the first part                      |
//!
//! A child's type determines which rule produced it, which is what makes
//! `parent_of` a function.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::composition::{classify, Composition, PpcType};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ProductionRule {
    A,
    B,
    C1,
    C2,
}

impl ProductionRule {
    /// Order in which [`produce`] tries the rules.
    pub const ALL: [ProductionRule; 4] = [
        ProductionRule::A,
        ProductionRule::B,
        ProductionRule::C1,
        ProductionRule::C2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProductionRule::A => "A",
            ProductionRule::B => "B",
            ProductionRule::C1 => "C1",
            ProductionRule::C2 => "C2",
        }
    }

    pub fn applies_to(self, p: &Composition) -> bool {
        match self {
            ProductionRule::A | ProductionRule::B => true,
            ProductionRule::C1 => p.first() == 1,
            ProductionRule::C2 => p.last() == 1,
        }
    }
}

impl fmt::Display for ProductionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProductionRule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" => Ok(ProductionRule::A),
            "B" => Ok(ProductionRule::B),
            "C1" => Ok(ProductionRule::C1),
            "C2" => Ok(ProductionRule::C2),
            _ => Err(format!("unknown rule {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Production {
    pub parent: Composition,
    pub rule: ProductionRule,
    pub child: Composition,
}

fn require_producer(p: &Composition) -> Result<()> {
    if !p.is_ppc() {
        return Err(Error::NotAPpc(p.canonical()));
    }
    if p.total() < 2 {
        return Err(Error::TotalTooSmall {
            total: p.total(),
            min: 2,
        });
    }
    Ok(())
}

pub fn apply_rule(p: &Composition, rule: ProductionRule) -> Result<Composition> {
    require_producer(p)?;
    if !rule.applies_to(p) {
        return Err(Error::RuleNotApplicable {
            rule,
            composition: p.canonical(),
        });
    }
    Ok(apply_unchecked(p, rule))
}

fn apply_unchecked(p: &Composition, rule: ProductionRule) -> Composition {
    let mut parts = p.parts().to_vec();
    let last = parts.len() - 1;
    match rule {
        ProductionRule::A => {
            parts.insert(0, 1);
            parts.push(1);
        }
        ProductionRule::B if last == 0 => parts[0] += 2,
        ProductionRule::B => {
            parts[0] += 1;
            parts[last] += 1;
        }
        ProductionRule::C1 => parts[last] += 2,
        ProductionRule::C2 => parts[0] += 2,
    }
    Composition::from_parts_unchecked(parts, p.total() + 2)
}

/// Every production from `p`, in rule order A, B, C1, C2.
pub fn produce(p: &Composition) -> Result<Vec<Production>> {
    require_producer(p)?;
    Ok(ProductionRule::ALL
        .into_iter()
        .filter(|r| r.applies_to(p))
        .map(|rule| Production {
            parent: p.clone(),
            rule,
            child: apply_unchecked(p, rule),
        })
        .collect())
}

/// Recovers the unique producer of `c` and the rule used.
pub fn parent_of(c: &Composition) -> Result<Production> {
    let ty = classify(c)?;
    if c.total() < 4 {
        return Err(Error::TotalTooSmall {
            total: c.total(),
            min: 4,
        });
    }
    let mut parts = c.parts().to_vec();
    let last = parts.len() - 1;
    let rule = match ty {
        PpcType::A => {
            parts.pop();
            parts.remove(0);
            ProductionRule::A
        }
        PpcType::B if last == 0 => {
            parts[0] -= 2;
            ProductionRule::B
        }
        PpcType::B => {
            parts[0] -= 1;
            parts[last] -= 1;
            ProductionRule::B
        }
        // The other end is odd by the palindrome condition, hence at least 3.
        PpcType::C if parts[0] == 1 => {
            parts[last] -= 2;
            ProductionRule::C1
        }
        PpcType::C => {
            parts[0] -= 2;
            ProductionRule::C2
        }
    };
    Ok(Production {
        parent: Composition::from_parts_unchecked(parts, c.total() - 2),
        rule,
        child: c.clone(),
    })
}
