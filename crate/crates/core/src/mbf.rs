//! Monotone Boolean functions as truth-table bit vectors.
//!
//! A function of `n` variables is a string of `2^n` bits; position `i` holds
//! the value on the subset whose index is `i`, where variable `x_j` carries
//! weight `2^(j-1)`. Read left to right (index 0 first) the string is the
//! big-endian binary form of the function's integer rendering, so for `n = 3`
//! the string `00001111` is the function `x3` and renders as `15`.
//!
//! Storage is a fixed 256-bit little-endian word array holding that integer.
//! Index `i` therefore lives at integer bit `2^n - 1 - i`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{input_err, Error, Result};

/// Largest supported variable count.
pub const MAX_VARS: u8 = 8;

/// Default cap for [`enumerate_dn`].
pub const DEFAULT_ENUM_CAP: u8 = 6;

/// Integer bits of `x` whose position has bit `j` set, for `j < 6`.
const POS_MASK: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Number of truth-table positions, `2^n`.
#[inline]
pub fn table_len(n: u8) -> usize {
    1usize << n
}

/// Number of 64-bit words an element of `D_n` occupies in an [`MbfSet`].
#[inline]
pub fn words_for(n: u8) -> usize {
    (table_len(n) / 64).max(1)
}

/// All-ones mask for the low `2^n` bits when `n <= 6`.
#[inline]
pub(crate) fn low_mask(n: u8) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

fn check_n(n: u8) -> Result<()> {
    if n > MAX_VARS {
        return Err(input_err!(
            "variable count {n} exceeds the maximum of {MAX_VARS}"
        ));
    }
    Ok(())
}

/// Monotonicity of a single-word truth table (`n <= 6`).
#[inline]
pub(crate) fn is_monotone_u64(x: u64, n: u8) -> bool {
    (0..n.min(6)).all(|j| ((x & POS_MASK[j as usize]) >> (1u32 << j)) & !x == 0)
}

fn is_monotone_words(n: u8, w: &[u64; 4]) -> bool {
    let k = words_for(n);
    if n <= 6 {
        return is_monotone_u64(w[0], n);
    }
    if !(0..k).all(|i| is_monotone_u64(w[i], 6)) {
        return false;
    }
    // Variables x7, x8 move between whole words.
    (6..n).all(|j| {
        let step = 1usize << (j - 6);
        (0..k)
            .filter(|i| i & step != 0)
            .all(|i| w[i] & !w[i - step] == 0)
    })
}

/// Reverse and complement a single-word truth table (`n <= 6`).
#[inline]
pub(crate) fn dual_u64(x: u64, n: u8) -> u64 {
    let len = 1u32 << n.min(6);
    let rev = x.reverse_bits() >> (64 - len);
    !rev & low_mask(n)
}

/// A monotone Boolean function of at most eight variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mbf {
    n: u8,
    words: [u64; 4],
}

impl Mbf {
    pub(crate) fn from_words_unchecked(n: u8, words: [u64; 4]) -> Self {
        Mbf { n, words }
    }

    pub(crate) fn from_u64_unchecked(n: u8, x: u64) -> Self {
        Mbf {
            n,
            words: [x, 0, 0, 0],
        }
    }

    /// The constant-false function.
    pub fn zero(n: u8) -> Result<Self> {
        check_n(n)?;
        Ok(Mbf { n, words: [0; 4] })
    }

    /// The constant-true function.
    pub fn one(n: u8) -> Result<Self> {
        check_n(n)?;
        let mut words = [0; 4];
        for w in words.iter_mut().take(words_for(n)) {
            *w = low_mask(n);
        }
        Ok(Mbf { n, words })
    }

    /// Builds a function from its 256-bit integer rendering (little-endian words).
    pub fn from_words(n: u8, words: [u64; 4]) -> Result<Self> {
        check_n(n)?;
        let k = words_for(n);
        if words[0] & !low_mask(n) != 0 || words[k..].iter().any(|&w| w != 0) {
            return Err(input_err!("value does not fit in 2^{n} bits"));
        }
        if !is_monotone_words(n, &words) {
            return Err(input_err!("function is not monotone"));
        }
        Ok(Mbf { n, words })
    }

    pub fn from_u64(n: u8, x: u64) -> Result<Self> {
        Self::from_words(n, [x, 0, 0, 0])
    }

    /// Builds a function from a truth table indexed by subset index.
    pub fn from_truth_table(n: u8, bits: &[bool]) -> Result<Self> {
        check_n(n)?;
        if bits.len() != table_len(n) {
            return Err(input_err!(
                "truth table has {} entries, expected {}",
                bits.len(),
                table_len(n)
            ));
        }
        let mut words = [0u64; 4];
        let top = table_len(n) - 1;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                let p = top - i;
                words[p / 64] |= 1 << (p % 64);
            }
        }
        Self::from_words(n, words)
    }

    /// Parses a string of `0`/`1` characters, index 0 first.
    pub fn from_truth_string(n: u8, s: &str) -> Result<Self> {
        let bits: Vec<bool> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(input_err!("unexpected character {other:?} in truth table")),
            })
            .collect::<Result<_>>()?;
        Self::from_truth_table(n, &bits)
    }

    /// Parses the decimal integer rendering.
    pub fn from_decimal(n: u8, s: &str) -> Result<Self> {
        check_n(n)?;
        let v: BigUint = s
            .trim()
            .parse()
            .map_err(|_| input_err!("{s:?} is not a decimal integer"))?;
        let digits = v.to_u64_digits();
        if digits.len() > 4 {
            return Err(input_err!("value does not fit in 2^{n} bits"));
        }
        let mut words = [0u64; 4];
        words[..digits.len()].copy_from_slice(&digits);
        Self::from_words(n, words)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn words(&self) -> [u64; 4] {
        self.words
    }

    /// The rendering as a single word, available when `n <= 6`.
    pub fn as_u64(&self) -> Option<u64> {
        (self.n <= 6).then_some(self.words[0])
    }

    /// Value on the subset with index `i`.
    pub fn bit(&self, i: usize) -> bool {
        let p = table_len(self.n) - 1 - i;
        self.words[p / 64] >> (p % 64) & 1 == 1
    }

    pub fn truth_table(&self) -> Vec<bool> {
        (0..table_len(self.n)).map(|i| self.bit(i)).collect()
    }

    pub fn truth_string(&self) -> String {
        (0..table_len(self.n))
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }

    pub fn to_biguint(&self) -> BigUint {
        let digits: Vec<u32> = self
            .words
            .iter()
            .flat_map(|w| [*w as u32, (*w >> 32) as u32])
            .collect();
        BigUint::new(digits)
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Pointwise minimum (bitwise AND).
    pub fn meet(&self, other: &Mbf) -> Mbf {
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(other.words) {
            *w &= o;
        }
        Mbf { n: self.n, words }
    }

    /// Pointwise maximum (bitwise OR).
    pub fn join(&self, other: &Mbf) -> Mbf {
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(other.words) {
            *w |= o;
        }
        Mbf { n: self.n, words }
    }

    /// The dual function `x -> !f(!x)`: the bit vector reversed and complemented.
    pub fn dual(&self) -> Mbf {
        let n = self.n;
        if n <= 6 {
            return Mbf::from_u64_unchecked(n, dual_u64(self.words[0], n));
        }
        let k = words_for(n);
        let mut words = [0u64; 4];
        for (w, src) in words[..k].iter_mut().zip(self.words[..k].iter().rev()) {
            *w = !src.reverse_bits();
        }
        Mbf { n, words }
    }

    /// Unchecked order test on equal-`n` operands.
    #[inline]
    pub(crate) fn leq_raw(&self, other: &Mbf) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }
}

impl Ord for Mbf {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Mbf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mbf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_u64() {
            Some(x) => write!(f, "{x}"),
            None => write!(f, "{}", self.to_biguint()),
        }
    }
}

impl fmt::Debug for Mbf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mbf(n={}, {})", self.n, self)
    }
}

/// True iff the truth table is monotone: every covering pair `i`, `i + {x_j}`
/// has `bit(i) <= bit(i + {x_j})`.
pub fn is_monotone(bits: &[bool], n: u8) -> Result<bool> {
    check_n(n)?;
    if bits.len() != table_len(n) {
        return Err(input_err!(
            "truth table has {} entries, expected {}",
            bits.len(),
            table_len(n)
        ));
    }
    Ok((0..table_len(n)).all(|i| {
        (0..n)
            .map(|j| 1usize << j)
            .filter(|w| i & w == 0)
            .all(|w| !bits[i] || bits[i | w])
    }))
}

fn same_n(a: &Mbf, b: &Mbf) -> Result<()> {
    if a.n != b.n {
        return Err(input_err!(
            "operands have different variable counts ({} and {})",
            a.n,
            b.n
        ));
    }
    Ok(())
}

/// The pointwise order `a <= b`, i.e. `(a | b) == b`.
pub fn leq(a: &Mbf, b: &Mbf) -> Result<bool> {
    same_n(a, b)?;
    Ok(a.leq_raw(b))
}

/// Joins two `n`-variable functions into one of `n + 1` variables: `a` is the
/// half where `x_{n+1}` is false, `b` the half where it is true.
pub fn concat(a: &Mbf, b: &Mbf) -> Result<Mbf> {
    same_n(a, b)?;
    let n = a.n;
    if n >= MAX_VARS {
        return Err(input_err!("cannot extend beyond {MAX_VARS} variables"));
    }
    if !a.leq_raw(b) {
        return Err(Error::Precondition(format!(
            "concat requires {a} <= {b} pointwise"
        )));
    }
    Ok(concat_unchecked(a, b))
}

pub(crate) fn concat_unchecked(a: &Mbf, b: &Mbf) -> Mbf {
    let n = a.n;
    let mut words = [0u64; 4];
    if n < 6 {
        words[0] = (a.words[0] << (1u32 << n)) | b.words[0];
    } else {
        let k = words_for(n);
        words[..k].copy_from_slice(&b.words[..k]);
        words[k..2 * k].copy_from_slice(&a.words[..k]);
    }
    Mbf { n: n + 1, words }
}

/// Inverse of [`concat`].
pub fn split(f: &Mbf) -> Result<(Mbf, Mbf)> {
    let m = f.n;
    if m == 0 {
        return Err(input_err!("a function of zero variables has no halves"));
    }
    let n = m - 1;
    let (mut a, mut b) = ([0u64; 4], [0u64; 4]);
    if n < 6 {
        let half = 1u32 << n;
        a[0] = f.words[0] >> half;
        b[0] = f.words[0] & low_mask(n);
    } else {
        let k = words_for(n);
        b[..k].copy_from_slice(&f.words[..k]);
        a[..k].copy_from_slice(&f.words[k..2 * k]);
    }
    Ok((Mbf { n, words: a }, Mbf { n, words: b }))
}

/// A sorted, duplicate-free collection of monotone functions of one arity,
/// packed as `words_for(n)` little-endian words per element.
#[derive(Clone, PartialEq, Eq)]
pub struct MbfSet {
    n: u8,
    words: Vec<u64>,
}

impl MbfSet {
    /// Sorts and deduplicates `items`, rejecting mixed arities.
    pub fn new(n: u8, mut items: Vec<Mbf>) -> Result<Self> {
        check_n(n)?;
        if let Some(bad) = items.iter().find(|f| f.n != n) {
            return Err(input_err!("element {bad:?} does not have {n} variables"));
        }
        items.sort();
        items.dedup();
        let k = words_for(n);
        let mut words = Vec::with_capacity(items.len() * k);
        for f in &items {
            words.extend_from_slice(&f.words[..k]);
        }
        Ok(MbfSet { n, words })
    }

    /// Wraps already sorted, deduplicated, monotone single-word elements.
    pub(crate) fn from_sorted_u64(n: u8, words: Vec<u64>) -> Self {
        debug_assert!(n <= 6);
        debug_assert!(words.windows(2).all(|w| w[0] < w[1]));
        MbfSet { n, words }
    }

    pub(crate) fn from_sorted_words(n: u8, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len() % words_for(n), 0);
        MbfSet { n, words }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len() / words_for(self.n)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn get(&self, i: usize) -> Mbf {
        let k = words_for(self.n);
        let mut words = [0u64; 4];
        words[..k].copy_from_slice(&self.words[i * k..(i + 1) * k]);
        Mbf { n: self.n, words }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = Mbf> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Elements as plain words, when each fits in one (`n <= 6`).
    pub fn as_u64s(&self) -> Option<&[u64]> {
        (self.n <= 6).then_some(&self.words[..])
    }

    pub(crate) fn raw_words(&self) -> &[u64] {
        &self.words
    }

    pub fn position(&self, f: &Mbf) -> Option<usize> {
        if f.n != self.n {
            return None;
        }
        if let Some(xs) = self.as_u64s() {
            return xs.binary_search(&f.words[0]).ok();
        }
        let k = words_for(self.n);
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            let chunk = &self.words[mid * k..(mid + 1) * k];
            match chunk.iter().rev().cmp(f.words[..k].iter().rev()) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, f: &Mbf) -> bool {
        self.position(f).is_some()
    }

    pub fn to_vec(&self) -> Vec<Mbf> {
        self.iter().collect()
    }

    /// `{ concat(a, b) : a, b in self, a <= b }`, the lift to `n + 1`
    /// variables in which the new variable is left unconstrained.
    pub fn extend_by_free_variable(&self) -> Result<MbfSet> {
        self.extend_capped(usize::MAX)
    }

    /// As [`MbfSet::extend_by_free_variable`], giving up with a resource
    /// error once more than `cap` elements have been produced.
    pub(crate) fn extend_capped(&self, cap: usize) -> Result<MbfSet> {
        let n = self.n;
        if n >= MAX_VARS {
            return Err(input_err!("cannot extend beyond {MAX_VARS} variables"));
        }
        let over = || {
            Error::Resource(format!(
                "extending to {} variables produces more than {cap} functions",
                n + 1
            ))
        };
        let k = words_for(n);
        let mut out = Vec::new();
        if n < 6 {
            let xs = &self.words;
            let shift = 1u32 << n;
            for &a in xs {
                for &b in xs {
                    if a & !b == 0 {
                        out.push((a << shift) | b);
                    }
                }
                if out.len() > cap {
                    return Err(over());
                }
            }
            return Ok(MbfSet::from_sorted_u64(n + 1, out));
        }
        for i in 0..self.len() {
            let a = &self.words[i * k..(i + 1) * k];
            for j in 0..self.len() {
                let b = &self.words[j * k..(j + 1) * k];
                if a.iter().zip(b).all(|(x, y)| x & !y == 0) {
                    out.extend_from_slice(b);
                    out.extend_from_slice(a);
                }
            }
            if out.len() / (2 * k) > cap {
                return Err(over());
            }
        }
        Ok(MbfSet::from_sorted_words(n + 1, out))
    }
}

impl fmt::Debug for MbfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MbfSet")
            .field("n", &self.n)
            .field("len", &self.len())
            .finish()
    }
}

/// `D_n`, built by repeated doubling from `D_0 = {0, 1}`; `n` may not exceed
/// [`DEFAULT_ENUM_CAP`].
pub fn enumerate_dn(n: u8) -> Result<MbfSet> {
    enumerate_dn_capped(n, DEFAULT_ENUM_CAP)
}

/// As [`enumerate_dn`] with an explicit cap. Raising the cap to 7 is
/// accepted but needs memory for 2.4e12 elements.
pub fn enumerate_dn_capped(n: u8, cap: u8) -> Result<MbfSet> {
    check_n(n)?;
    if n > cap {
        return Err(Error::Resource(format!(
            "enumerating D_{n} exceeds the enumeration cap of {cap}; \
             raise it with --enum-cap (library: enumerate_dn_capped) or use a counting strategy"
        )));
    }
    let mut set = MbfSet::from_sorted_u64(0, vec![0, 1]);
    for _ in 0..n {
        set = set.extend_by_free_variable()?;
    }
    Ok(set)
}
