//! Brute-force ground truth: every composition of `n`, filtered by the ppc test.
//!
//! Compositions of `n` correspond to subsets of the `n - 1` gaps between
//! `n` unit cells; a set bit marks a cut. Masks are visited in increasing
//! numeric order with bit 0 standing for the leftmost gap, so for `n = 4`
//! the order is `4, 1+3, 2+2, 1+1+2, 3+1, 1+2+1, 2+1+1, 1+1+1+1`.
//!
//! Nothing here consults the production rules.

use std::ops::Range;
use std::thread;

use crate::composition::{parts_are_parity_palindrome, Composition};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: u64 = 30;

/// Gap masks are `u64`, which limits `n` to 64.
pub const MAX_CAP: u64 = 64;

/// Brute-force enumerator bounded by a maximum total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    cap: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    /// Caps above [`MAX_CAP`] are clamped.
    pub fn with_cap(cap: u64) -> Self {
        Oracle {
            cap: cap.min(MAX_CAP),
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn check_range(&self, n: u64) -> Result<()> {
        if n == 0 || n > self.cap {
            Err(Error::NOutOfRange { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    pub fn compositions(&self, n: u64) -> Result<Compositions> {
        self.check_range(n)?;
        Ok(Compositions::new(n))
    }

    pub fn ppcs(&self, n: u64) -> Result<impl Iterator<Item = Composition>> {
        Ok(self.compositions(n)?.filter(Composition::is_ppc))
    }

    pub fn count_compositions(&self, n: u64) -> Result<u64> {
        self.check_range(n)?;
        Ok(Compositions::new(n).count() as u64)
    }

    pub fn count_ppcs_brute(&self, n: u64) -> Result<u64> {
        self.check_range(n)?;
        Ok(count_ppcs_in(n, 0..mask_count(n)))
    }

    /// Splits the mask range into `jobs` disjoint intervals counted on separate
    /// threads. The result does not depend on `jobs`.
    pub fn count_ppcs_brute_parallel(&self, n: u64, jobs: usize) -> Result<u64> {
        self.check_range(n)?;
        let end = mask_count(n);
        let jobs = (jobs.max(1) as u128).min(end) as usize;
        if jobs <= 1 {
            return Ok(count_ppcs_in(n, 0..end));
        }
        let chunk = end.div_ceil(jobs as u128);
        let total = thread::scope(|s| {
            let handles: Vec<_> = (0..jobs as u128)
                .map(|j| {
                    let lo = j * chunk;
                    let hi = ((j + 1) * chunk).min(end);
                    s.spawn(move || count_ppcs_in(n, lo..hi))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("counting thread panicked"))
                .sum()
        });
        Ok(total)
    }
}

/// Number of gap masks for total `n`, i.e. `2^(n-1)`.
fn mask_count(n: u64) -> u128 {
    1u128 << (n - 1)
}

/// Writes the parts for `mask` into `buf`, reusing its allocation.
fn fill_parts(n: u64, mask: u64, buf: &mut Vec<u64>) {
    buf.clear();
    let mut run = 1u64;
    for gap in 0..n - 1 {
        if mask >> gap & 1 == 1 {
            buf.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    buf.push(run);
}

fn count_ppcs_in(n: u64, masks: Range<u128>) -> u64 {
    let mut buf = Vec::with_capacity(n as usize);
    let mut count = 0;
    for mask in masks {
        fill_parts(n, mask as u64, &mut buf);
        if parts_are_parity_palindrome(&buf) {
            count += 1;
        }
    }
    count
}

/// Streaming iterator over every composition of `n` in gap-mask order.
#[derive(Debug, Clone)]
pub struct Compositions {
    n: u64,
    next: u128,
    end: u128,
}

impl Compositions {
    fn new(n: u64) -> Self {
        Compositions {
            n,
            next: 0,
            end: mask_count(n),
        }
    }

    /// Restricts to masks in `range`, clamped to the valid interval.
    pub fn mask_range(mut self, range: Range<u128>) -> Self {
        self.next = range.start.min(self.end);
        self.end = range.end.min(self.end).max(self.next);
        self
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.next >= self.end {
            return None;
        }
        let mut parts = Vec::new();
        fill_parts(self.n, self.next as u64, &mut parts);
        self.next += 1;
        Some(Composition::from_parts_unchecked(parts, self.n))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.end - self.next;
        match usize::try_from(left) {
            Ok(l) => (l, Some(l)),
            Err(_) => (usize::MAX, None),
        }
    }
}

pub fn enumerate_compositions(n: u64) -> Result<Compositions> {
    Oracle::default().compositions(n)
}

pub fn enumerate_ppcs(n: u64) -> Result<impl Iterator<Item = Composition>> {
    Oracle::default().ppcs(n)
}

pub fn count_ppcs_brute(n: u64) -> Result<u64> {
    Oracle::default().count_ppcs_brute(n)
}

/// Closed form: 1 for `n = 1`, otherwise `2 * 3^(floor(n/2) - 1)`.
pub fn count_ppcs_formula(n: u64) -> Result<u64> {
    match n {
        0 => Err(Error::NOutOfRange { n, cap: u64::MAX }),
        1 => Ok(1),
        _ => {
            let exp = u32::try_from(n / 2 - 1).map_err(|_| Error::Overflow(n))?;
            3u64.checked_pow(exp)
                .and_then(|p| p.checked_mul(2))
                .ok_or(Error::Overflow(n))
        }
    }
}
