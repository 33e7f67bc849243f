//! Exact counts of the functions below and above a given function.

use rustc_hash::FxHashMap;

use crate::error::{input_err, Error, Result};
use crate::mbf::{dual_u64, enumerate_dn, is_monotone_u64, low_mask, Mbf};

/// Lazily memoized `downCount(f) = |{g in D_n : g <= f}|` and
/// `upCount(f) = |{g in D_n : f <= g}|` for `n <= 6`.
///
/// Counts come from the half-split recurrence
/// `down(f0 | f1) = sum over a1 in D_{n-1}, a1 <= f1 of down_{n-1}(a1 & f0)`,
/// memoized per level by function value. Query through `&mut self`, or call
/// [`IntervalCounter::populate`] once and share the counter for read-only
/// [`IntervalCounter::get_down`] lookups.
#[derive(Debug, Clone)]
pub struct IntervalCounter {
    n: u8,
    /// `lower[k]` is `D_k` for `k < n`.
    lower: Vec<Vec<u64>>,
    memo: Vec<FxHashMap<u64, u128>>,
}

impl IntervalCounter {
    pub fn new(n: u8) -> Result<Self> {
        if n > 6 {
            return Err(Error::Resource(format!(
                "interval counting is limited to n <= 6 (got {n})"
            )));
        }
        let lower = (0..n)
            .map(|k| Ok(enumerate_dn(k)?.as_u64s().expect("n <= 6").to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntervalCounter {
            n,
            lower,
            memo: vec![FxHashMap::default(); n as usize + 1],
        })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    fn key(&self, f: &Mbf) -> Result<u64> {
        if f.n() != self.n {
            return Err(input_err!(
                "counter is for {} variables, function has {}",
                self.n,
                f.n()
            ));
        }
        let x = f.as_u64().expect("n <= 6");
        if !is_monotone_u64(x, self.n) {
            return Err(input_err!("{x} is not monotone"));
        }
        Ok(x)
    }

    pub fn down_count(&mut self, f: &Mbf) -> Result<u128> {
        let x = self.key(f)?;
        Ok(self.down(self.n, x))
    }

    pub fn up_count(&mut self, f: &Mbf) -> Result<u128> {
        let x = self.key(f)?;
        Ok(self.down(self.n, dual_u64(x, self.n)))
    }

    /// Fills the memo for every element of `D_n`.
    pub fn populate(&mut self) -> Result<()> {
        for x in enumerate_dn(self.n)?.as_u64s().expect("n <= 6").to_vec() {
            self.down(self.n, x);
        }
        Ok(())
    }

    /// Read-only lookup; `None` if the value was never computed.
    pub fn get_down(&self, f: &Mbf) -> Option<u128> {
        let x = f.as_u64()?;
        self.memo.get(self.n as usize)?.get(&x).copied()
    }

    pub fn get_up(&self, f: &Mbf) -> Option<u128> {
        self.get_down(&f.dual())
    }

    fn down(&mut self, k: u8, x: u64) -> u128 {
        if k == 0 {
            return 1 + x as u128;
        }
        if let Some(&c) = self.memo[k as usize].get(&x) {
            return c;
        }
        let half = 1u32 << (k - 1);
        let f0 = x >> half;
        let f1 = x & low_mask(k - 1);
        let below: Vec<u64> = self.lower[k as usize - 1]
            .iter()
            .copied()
            .filter(|a1| a1 & !f1 == 0)
            .collect();
        let total = below.iter().map(|a1| self.down(k - 1, a1 & f0)).sum();
        self.memo[k as usize].insert(x, total);
        total
    }
}
