//! Parity palindrome compositions.
//!
//! A composition of `n` is a parity palindrome composition (ppc) when its
//! parts read the same forwards and backwards mod 2. There are
//! `2 * 3^(k-1)` ppcs of both `2k` and `2k+1`, and four production rules
//! map the ppcs of `m` bijectively onto the ppcs of `m + 2`.
//!
//! - [`composition`]: the composition type, parity words, ppc test, A/B/C types
//! - [`oracle`]: brute-force enumeration and the closed-form count
//! - [`production`]: the rules A, B, C1, C2 and their inverse
//! - [`forest`]: levels of ppcs grown from the seeds of 2 and 3
//! - [`verify`]: the checks tying the rules to the oracle
//! - [`cli`]: the `ppc` command

pub mod cli;
pub mod composition;
pub mod error;
pub mod forest;
pub mod oracle;
pub mod production;
pub mod verify;

pub use composition::{classify, is_ppc, parity_word, Composition, ParityWord, PpcType};
pub use error::{Error, Result};
pub use forest::{build_forest, ForestLevel, Parity};
pub use oracle::{
    count_ppcs_brute, count_ppcs_formula, enumerate_compositions, enumerate_ppcs, Compositions,
    Oracle, DEFAULT_CAP,
};
pub use production::{apply_rule, parent_of, produce, Production, ProductionRule};
pub use verify::{
    run_suite, type_census, verify_bijection, BijectionReport, TypeCensus, VerifyReport,
};
