//! Compositions, their parity words, and the A/B/C type split of ppcs.
//!
//! A composition of `n` is a nonempty ordered sequence of positive parts
//! summing to `n`. It is a *parity palindrome composition* (ppc) when its
//! parts reduced mod 2 read the same in both directions.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u64>,
    total: u64,
}

impl Composition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        let mut total: u64 = 0;
        for (index, &p) in parts.iter().enumerate() {
            if p == 0 {
                return Err(Error::ZeroPart { index });
            }
            total = total.checked_add(p).ok_or(Error::TotalOverflow)?;
        }
        Ok(Composition { parts, total })
    }

    /// Caller guarantees `parts` is nonempty, positive, and sums to `total`.
    pub(crate) fn from_parts_unchecked(parts: Vec<u64>, total: u64) -> Self {
        debug_assert!(!parts.is_empty());
        debug_assert!(parts.iter().all(|&p| p > 0));
        debug_assert_eq!(parts.iter().sum::<u64>(), total);
        Composition { parts, total }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> u64 {
        self.parts[0]
    }

    pub fn last(&self) -> u64 {
        self.parts[self.parts.len() - 1]
    }

    pub fn into_parts(self) -> Vec<u64> {
        self.parts
    }

    pub fn reversed(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition {
            parts,
            total: self.total,
        }
    }

    pub fn parity_word(&self) -> ParityWord {
        parity_word(self)
    }

    pub fn is_ppc(&self) -> bool {
        is_ppc(self)
    }

    pub fn classify(&self) -> Result<PpcType> {
        classify(self)
    }

    /// Comma-separated base-10 parts, e.g. `3,2,1,4,1`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }

    /// Digit string form such as `32141`, available only when every part is at most 9.
    pub fn compact(&self) -> Option<String> {
        if self.parts.iter().all(|&p| p <= 9) {
            Some(
                self.parts
                    .iter()
                    .map(|p| char::from(b'0' + *p as u8))
                    .collect(),
            )
        } else {
            None
        }
    }

    /// Compact form when `prefer_compact` is set and possible, canonical otherwise.
    pub fn render(&self, prefer_compact: bool) -> String {
        if prefer_compact {
            if let Some(s) = self.compact() {
                return s;
            }
        }
        self.canonical()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Accepts the canonical form (`3,2,1,4,1`) and the compact form (`32141`).
///
/// A comma-free string made only of the digits 1-9 is read as compact, one
/// part per digit. A comma-free string containing a `0` (such as `10`) is a
/// single part. A trailing comma forces the canonical reading, so `12,` is
/// the single part 12 while `12` is `[1, 2]`.
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(parse_err("empty input"));
        }
        let parts = if s.contains(',') {
            let body = s.strip_suffix(',').unwrap_or(s);
            body.split(',')
                .map(|tok| {
                    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(parse_err("parts must be base-10 integers"));
                    }
                    tok.parse::<u64>()
                        .map_err(|_| parse_err("part does not fit in u64"))
                })
                .collect::<Result<Vec<_>>>()?
        } else if s.bytes().all(|b| (b'1'..=b'9').contains(&b)) {
            s.bytes().map(|b| u64::from(b - b'0')).collect()
        } else if s.bytes().all(|b| b.is_ascii_digit()) {
            vec![s
                .parse::<u64>()
                .map_err(|_| parse_err("part does not fit in u64"))?]
        } else {
            return Err(parse_err("expected digits and commas"));
        };
        Composition::new(parts).map_err(|e| parse_err(&e.to_string()))
    }
}

/// Parts of a composition reduced mod 2, in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityWord(Vec<u8>);

impl ParityWord {
    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Reducing an already reduced word is the identity.
    pub fn reduce(&self) -> ParityWord {
        ParityWord(self.0.iter().map(|b| b % 2).collect())
    }

    pub fn reversed(&self) -> ParityWord {
        ParityWord(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for ParityWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PpcType {
    /// First and last parts are both 1.
    A,
    /// First and last parts are both at least 2.
    B,
    /// Exactly one end is 1.
    C,
}

impl PpcType {
    pub const ALL: [PpcType; 3] = [PpcType::A, PpcType::B, PpcType::C];

    pub fn as_str(self) -> &'static str {
        match self {
            PpcType::A => "A",
            PpcType::B => "B",
            PpcType::C => "C",
        }
    }
}

impl fmt::Display for PpcType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn parity_word(c: &Composition) -> ParityWord {
    ParityWord(c.parts.iter().map(|&p| (p % 2) as u8).collect())
}

pub fn is_ppc(c: &Composition) -> bool {
    parts_are_parity_palindrome(&c.parts)
}

/// The ppc test on a raw part slice; shared with the oracle's allocation-free counter.
pub(crate) fn parts_are_parity_palindrome(parts: &[u64]) -> bool {
    let n = parts.len();
    (0..n / 2).all(|i| (parts[i] ^ parts[n - 1 - i]) & 1 == 0)
}

/// Type of a ppc by its end parts. A single part counts as both first and last.
pub fn classify(c: &Composition) -> Result<PpcType> {
    if !is_ppc(c) {
        return Err(Error::NotAPpc(c.canonical()));
    }
    Ok(match (c.first() == 1, c.last() == 1) {
        (true, true) => PpcType::A,
        (false, false) => PpcType::B,
        _ => PpcType::C,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[u64]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rejects_empty_and_zero_parts() {
        assert_eq!(Composition::new(vec![]), Err(Error::EmptyComposition));
        assert_eq!(
            Composition::new(vec![1, 0, 2]),
            Err(Error::ZeroPart { index: 1 })
        );
        assert_eq!(
            Composition::new(vec![u64::MAX, 1]),
            Err(Error::TotalOverflow)
        );
    }

    #[test]
    fn parity_word_examples() {
        assert_eq!(
            comp(&[3, 2, 1, 4, 1]).parity_word().bits(),
            &[1, 0, 1, 0, 1]
        );
        assert_eq!(comp(&[1]).parity_word().bits(), &[1]);
        assert_eq!(comp(&[2, 2]).parity_word().bits(), &[0, 0]);
        assert_eq!(comp(&[3, 2, 1, 4, 1]).parity_word().to_string(), "10101");
    }

    #[test]
    fn is_ppc_examples() {
        assert!(comp(&[3, 2, 1, 4, 1]).is_ppc());
        assert!(!comp(&[1, 2]).is_ppc());
        assert!(comp(&[5]).is_ppc());
        assert_eq!(comp(&[3, 2, 1, 4, 1]).total(), 11);
    }

    #[test]
    fn classify_examples() {
        let cases: &[(&[u64], PpcType)] = &[
            (&[1, 1, 1, 1], PpcType::A),
            (&[2, 2], PpcType::B),
            (&[1, 3], PpcType::C),
            (&[3, 1], PpcType::C),
            (&[1, 2, 1], PpcType::A),
            (&[4], PpcType::B),
            (&[1], PpcType::A),
            (&[2, 1, 2], PpcType::B),
            (&[3, 2, 1, 4, 1], PpcType::C),
        ];
        for (parts, want) in cases {
            assert_eq!(comp(parts).classify().unwrap(), *want, "{parts:?}");
        }
        assert_eq!(
            comp(&[1, 2]).classify(),
            Err(Error::NotAPpc("1,2".to_string()))
        );
    }

    #[test]
    fn parse_canonical_and_compact() {
        let want = comp(&[3, 2, 1, 4, 1]);
        assert_eq!("3,2,1,4,1".parse::<Composition>().unwrap(), want);
        assert_eq!("32141".parse::<Composition>().unwrap(), want);
        assert_eq!("10".parse::<Composition>().unwrap(), comp(&[10]));
        assert_eq!("12,".parse::<Composition>().unwrap(), comp(&[12]));
        assert_eq!("12".parse::<Composition>().unwrap(), comp(&[1, 2]));
        assert_eq!("11,1".parse::<Composition>().unwrap(), comp(&[11, 1]));
        for bad in ["", ",", "1,,2", "1, 2", "a", "0", "1,0", "-1", "1,2,,"] {
            assert!(bad.parse::<Composition>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn render_forms() {
        assert_eq!(comp(&[3, 2, 1, 4, 1]).canonical(), "3,2,1,4,1");
        assert_eq!(comp(&[3, 2, 1, 4, 1]).compact().as_deref(), Some("32141"));
        assert_eq!(comp(&[1, 10]).compact(), None);
        assert_eq!(comp(&[1, 10]).render(true), "1,10");
        assert_eq!(comp(&[1, 3]).render(true), "13");
        assert_eq!(comp(&[1, 3]).render(false), "1,3");
    }

    #[test]
    fn parity_word_reduce_is_idempotent() {
        let w = comp(&[7, 4, 4, 7]).parity_word();
        assert_eq!(w.reduce(), w);
        assert_eq!(w.len(), 4);
        assert!(w.is_palindrome());
    }
}
