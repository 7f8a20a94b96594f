use thiserror::Error;

use crate::production::ProductionRule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a composition needs at least one part")]
    EmptyComposition,
    #[error("parts must be positive, found 0 at index {index}")]
    ZeroPart { index: usize },
    #[error("sum of parts overflows u64")]
    TotalOverflow,
    #[error("cannot parse composition {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("not a ppc: {0}")]
    NotAPpc(String),
    #[error("rule {rule} does not apply to {composition}")]
    RuleNotApplicable {
        rule: ProductionRule,
        composition: String,
    },
    #[error("total {total} is below the minimum of {min}")]
    TotalTooSmall { total: u64, min: u64 },
    #[error("n = {n} is outside 1..={cap}")]
    NOutOfRange { n: u64, cap: u64 },
    #[error("2*3^(k-1) for n = {0} does not fit in u64")]
    Overflow(u64),
    #[error("max total {max_total} is not {expected}")]
    ParityMismatch {
        max_total: u64,
        expected: crate::forest::Parity,
    },
    #[error("{child} was produced twice at total {total}")]
    DuplicateProduction { child: String, total: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
