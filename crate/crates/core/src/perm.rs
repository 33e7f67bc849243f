//! Cycle types, variable permutations, and their action on truth tables.

use std::fmt;

use crate::error::{input_err, Result};
use crate::mbf::{table_len, Mbf, MAX_VARS};

/// A partition of `n` into cycle lengths.
///
/// Stored padded with 1-cycles and sorted descending. The written form
/// lists only the non-trivial cycles shortest first on consecutive
/// variables, e.g. `(12)(345)` for `3+2+1+1+1` at `n = 8`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    n: u8,
    lengths: Vec<u8>,
}

impl CycleType {
    /// Builds a type from cycle lengths; 1-cycles may be omitted and are
    /// padded up to `n`.
    pub fn new(n: u8, lengths: &[u8]) -> Result<Self> {
        if n > MAX_VARS {
            return Err(input_err!("n = {n} exceeds the maximum of {MAX_VARS}"));
        }
        if lengths.contains(&0) {
            return Err(input_err!("cycle lengths must be positive"));
        }
        let sum: u32 = lengths.iter().map(|&l| l as u32).sum();
        if sum > n as u32 {
            return Err(input_err!(
                "cycle lengths {lengths:?} need {sum} variables but n = {n}"
            ));
        }
        let mut lengths = lengths.to_vec();
        lengths.resize(lengths.len() + (n as u32 - sum) as usize, 1);
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { n, lengths })
    }

    pub fn identity(n: u8) -> Result<Self> {
        Self::new(n, &[])
    }

    /// Parses `3+2` (1-cycles implied), the table notation `(12)(345)`,
    /// or `1` / `id` / `(1)` for the identity.
    pub fn parse(n: u8, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" || s == "id" || s == "(1)" {
            return Self::identity(n);
        }
        if s.starts_with('(') {
            let mut lengths = Vec::new();
            for group in s.split(')').filter(|g| !g.is_empty()) {
                let body = group
                    .strip_prefix('(')
                    .ok_or_else(|| input_err!("malformed cycle notation {s:?}"))?;
                if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit() || c == ' ') {
                    return Err(input_err!("malformed cycle notation {s:?}"));
                }
                let len = body.chars().filter(|c| c.is_ascii_digit()).count();
                lengths.push(len as u8);
            }
            return Self::new(n, &lengths);
        }
        let lengths = s
            .split('+')
            .map(|part| {
                part.trim()
                    .parse::<u8>()
                    .map_err(|_| input_err!("cannot parse cycle type {s:?}"))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, &lengths)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// All cycle lengths including 1-cycles, descending.
    pub fn lengths(&self) -> &[u8] {
        &self.lengths
    }

    /// Non-trivial cycle lengths in written (ascending) order.
    pub fn cycles(&self) -> Vec<u8> {
        let mut c: Vec<u8> = self.lengths.iter().copied().filter(|&l| l > 1).collect();
        c.reverse();
        c
    }

    /// Number of variables moved, i.e. the total length of the written cycles.
    pub fn written_total(&self) -> u8 {
        self.cycles().iter().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.lengths.iter().all(|&l| l == 1)
    }

    pub fn is_involution(&self) -> bool {
        self.lengths.iter().all(|&l| l <= 2)
    }

    pub fn has_two_cycle(&self) -> bool {
        self.lengths.contains(&2)
    }

    /// The same cycles over `m` variables.
    pub fn with_n(&self, m: u8) -> Result<Self> {
        Self::new(m, &self.cycles())
    }

    /// The type left after dropping one 2-cycle, over `n - 2` variables.
    pub fn without_two_cycle(&self) -> Option<Self> {
        let mut c = self.cycles();
        let pos = c.iter().position(|&l| l == 2)?;
        c.remove(pos);
        Self::new(self.n - 2, &c).ok()
    }

    /// Number of permutations with this cycle type:
    /// `n! / (prod l_j^k_j * prod k_j!)`.
    pub fn mu(&self) -> u128 {
        let mut denom: u128 = 1;
        let mut i = 0;
        while i < self.lengths.len() {
            let l = self.lengths[i];
            let k = self.lengths[i..].iter().take_while(|&&x| x == l).count();
            denom *= (l as u128).pow(k as u32) * factorial(k as u8);
            i += k;
        }
        factorial(self.n) / denom
    }

    /// `3+2` style; `1` for the identity.
    pub fn plus_form(&self) -> String {
        let c: Vec<String> = self
            .lengths
            .iter()
            .filter(|&&l| l > 1)
            .map(|l| l.to_string())
            .collect();
        if c.is_empty() {
            "1".to_string()
        } else {
            c.join("+")
        }
    }

    /// `(12)(345)` style; `(1)` for the identity.
    pub fn notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "(1)".to_string();
        }
        let mut next = 1u8;
        let mut out = String::new();
        for l in cycles {
            out.push('(');
            for v in next..next + l {
                out.push_str(&v.to_string());
            }
            out.push(')');
            next += l;
        }
        out
    }

    /// Sort key reproducing the row order of the published tables: by number
    /// of non-trivial cycles, then by the written lengths.
    pub fn table_order_key(&self) -> (usize, Vec<u8>) {
        let c = self.cycles();
        (c.len(), c)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

pub fn factorial(n: u8) -> u128 {
    (1..=n as u128).product()
}

/// Every cycle type of `n`, each once, in canonical order (lexicographic on
/// the descending length lists).
pub fn partitions(n: u8) -> Result<Vec<CycleType>> {
    if n > MAX_VARS {
        return Err(input_err!("n = {n} is outside 0..={MAX_VARS}"));
    }
    fn go(rest: u8, max: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for l in (1..=rest.min(max)).rev() {
            cur.push(l);
            go(rest - l, l, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    go(n, n, &mut Vec::new(), &mut raw);
    raw.sort();
    Ok(raw
        .into_iter()
        .map(|lengths| CycleType { n, lengths })
        .collect())
}

/// Cycle types ordered as in the published result tables.
pub fn partitions_table_order(n: u8) -> Result<Vec<CycleType>> {
    let mut p = partitions(n)?;
    p.sort_by_key(|t| t.table_order_key());
    Ok(p)
}

/// A permutation of the input variables; `image(j)` is where `x_{j+1}` goes
/// (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarPerm {
    mapping: Vec<u8>,
}

impl VarPerm {
    pub fn identity(n: u8) -> Self {
        VarPerm {
            mapping: (0..n).collect(),
        }
    }

    /// From 0-based images.
    pub fn new(mapping: Vec<u8>) -> Result<Self> {
        let n = mapping.len();
        if n > MAX_VARS as usize {
            return Err(input_err!("permutation of {n} variables is too large"));
        }
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m as usize >= n || std::mem::replace(&mut seen[m as usize], true) {
                return Err(input_err!("{mapping:?} is not a bijection"));
            }
        }
        Ok(VarPerm { mapping })
    }

    /// From 1-based disjoint cycles, e.g. `&[&[1, 2], &[3, 4]]`.
    pub fn from_cycles(n: u8, cycles: &[&[u8]]) -> Result<Self> {
        let mut mapping: Vec<u8> = (0..n).collect();
        let mut touched = vec![false; n as usize];
        for c in cycles {
            for (i, &v) in c.iter().enumerate() {
                if v == 0 || v > n || std::mem::replace(&mut touched[v as usize - 1], true) {
                    return Err(input_err!("bad cycle {c:?} for n = {n}"));
                }
                mapping[v as usize - 1] = c[(i + 1) % c.len()] - 1;
            }
        }
        Self::new(mapping)
    }

    pub fn n(&self) -> u8 {
        self.mapping.len() as u8
    }

    pub fn image(&self, j: u8) -> u8 {
        self.mapping[j as usize]
    }

    pub fn mapping(&self) -> &[u8] {
        &self.mapping
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &VarPerm) -> VarPerm {
        VarPerm {
            mapping: other
                .mapping
                .iter()
                .map(|&j| self.mapping[j as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> VarPerm {
        let mut mapping = vec![0; self.mapping.len()];
        for (j, &m) in self.mapping.iter().enumerate() {
            mapping[m as usize] = j as u8;
        }
        VarPerm { mapping }
    }

    /// One more than the highest moved variable (0 for the identity).
    pub fn support_len(&self) -> u8 {
        self.mapping
            .iter()
            .enumerate()
            .filter(|(j, &m)| *j as u8 != m)
            .map(|(j, _)| j as u8 + 1)
            .max()
            .unwrap_or(0)
    }

    /// The restriction to the first `m` variables; they must be closed
    /// under the permutation.
    pub fn truncate(&self, m: u8) -> Result<VarPerm> {
        let head = self.mapping[..m as usize].to_vec();
        Self::new(head)
    }

    /// The same permutation acting on `m >= n` variables, fixing the new ones.
    pub fn widen(&self, m: u8) -> VarPerm {
        let mut mapping = self.mapping.clone();
        mapping.extend(self.n()..m);
        VarPerm { mapping }
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.n();
        let mut seen = vec![false; n as usize];
        let mut lengths = Vec::new();
        for start in 0..n as usize {
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.mapping[j] as usize;
                len += 1;
            }
            if len > 0 {
                lengths.push(len);
            }
        }
        CycleType::new(n, &lengths).expect("cycle lengths sum to n")
    }
}

impl fmt::Display for VarPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.mapping.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.mapping[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut j = start;
            let mut first = true;
            while !seen[j] {
                seen[j] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "x{}", j + 1)?;
                first = false;
                j = self.mapping[j] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// The smallest representative permutation of a cycle type: the written
/// cycles, shortest first, on consecutive variables from `x1`; remaining
/// variables are fixed.
pub fn canonical_perm(t: &CycleType) -> VarPerm {
    let mut mapping: Vec<u8> = (0..t.n()).collect();
    let mut start = 0u8;
    for l in t.cycles() {
        for k in 0..l {
            mapping[(start + k) as usize] = start + (k + 1) % l;
        }
        start += l;
    }
    VarPerm { mapping }
}

/// A permutation of the `2^n` subset indices of `B^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitPerm {
    n: u8,
    mapping: Vec<u16>,
}

impl BitPerm {
    pub fn identity(n: u8) -> Self {
        BitPerm {
            n,
            mapping: (0..table_len(n) as u16).collect(),
        }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn image(&self, i: usize) -> usize {
        self.mapping[i] as usize
    }

    pub fn mapping(&self) -> &[u16] {
        &self.mapping
    }

    pub fn inverse(&self) -> BitPerm {
        let mut mapping = vec![0u16; self.mapping.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            mapping[m as usize] = i as u16;
        }
        BitPerm { n: self.n, mapping }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &BitPerm) -> BitPerm {
        BitPerm {
            n: self.n,
            mapping: other
                .mapping
                .iter()
                .map(|&i| self.mapping[i as usize])
                .collect(),
        }
    }

    /// Cycles, each starting at its minimum and following the mapping,
    /// ordered by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.mapping.len()];
        let mut out = Vec::new();
        for start in 0..self.mapping.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.mapping[i] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for BitPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            let body: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// The induced permutation of subsets: `i ↦ Σ_{x_j ∈ i} 2^{π(j)}`.
pub fn lift(p: &VarPerm) -> BitPerm {
    let n = p.n();
    let mapping = (0..table_len(n))
        .map(|i| {
            (0..n)
                .filter(|&j| i >> j & 1 == 1)
                .map(|j| 1u16 << p.image(j))
                .sum()
        })
        .collect();
    BitPerm { n, mapping }
}

/// The regrouped function `g` with `g(bp(i)) = f(i)`.
pub fn apply(bp: &BitPerm, f: &Mbf) -> Result<Mbf> {
    if bp.n != f.n() {
        return Err(input_err!(
            "permutation acts on {} variables, function has {}",
            bp.n,
            f.n()
        ));
    }
    Ok(apply_unchecked(bp, f))
}

pub(crate) fn apply_unchecked(bp: &BitPerm, f: &Mbf) -> Mbf {
    let top = table_len(bp.n) - 1;
    let src = f.words();
    let mut words = [0u64; 4];
    for i in 0..=top {
        let p = top - i;
        if src[p / 64] >> (p % 64) & 1 == 1 {
            let q = top - bp.image(i);
            words[q / 64] |= 1 << (q % 64);
        }
    }
    Mbf::from_words_unchecked(bp.n, words)
}

/// Orbits of the subset indices, each sorted, ordered by minimum.
pub fn orbits(bp: &BitPerm) -> Vec<Vec<usize>> {
    let mut out = bp.cycles();
    for o in &mut out {
        o.sort_unstable();
    }
    out
}

/// True iff `f` is constant on every orbit of `bp`.
pub fn is_fixed(f: &Mbf, bp: &BitPerm) -> Result<bool> {
    Ok(apply(bp, f)? == *f)
}

/// Byte-table evaluation of a [`BitPerm`] on single-word truth tables.
#[derive(Clone)]
pub(crate) struct WordPermuter {
    tables: Vec<[u64; 256]>,
}

impl WordPermuter {
    pub(crate) fn new(bp: &BitPerm) -> Self {
        assert!(bp.n <= 6);
        let len = table_len(bp.n);
        let top = len - 1;
        let bytes = len.div_ceil(8);
        let mut tables = vec![[0u64; 256]; bytes];
        for (k, table) in tables.iter_mut().enumerate() {
            for (byte, slot) in table.iter_mut().enumerate() {
                let mut out = 0u64;
                for t in 0..8 {
                    let p = 8 * k + t;
                    if p < len && byte >> t & 1 == 1 {
                        out |= 1 << (top - bp.image(top - p));
                    }
                }
                *slot = out;
            }
        }
        WordPermuter { tables }
    }

    #[inline]
    pub(crate) fn apply(&self, x: u64) -> u64 {
        self.tables
            .iter()
            .enumerate()
            .fold(0, |acc, (k, t)| acc | t[(x >> (8 * k)) as usize & 0xff])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mbf::enumerate_dn;

    fn all_perms(n: u8) -> Vec<VarPerm> {
        fn go(cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<VarPerm>) {
            if cur.len() == used.len() {
                out.push(VarPerm::new(cur.clone()).unwrap());
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    cur.push(v as u8);
                    go(cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; n as usize], &mut out);
        out
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(1).unwrap().len(), 1);
        assert_eq!(partitions(7).unwrap().len(), 15);
        assert_eq!(partitions(8).unwrap().len(), 22);
        assert_eq!(partitions(0).unwrap().len(), 1);
        assert!(partitions(9).is_err());
    }

    #[test]
    fn mu_examples_and_sums() {
        assert_eq!(CycleType::parse(7, "3").unwrap().mu(), 70);
        assert_eq!(CycleType::parse(8, "2+2+2+2").unwrap().mu(), 105);
        assert_eq!(CycleType::identity(6).unwrap().mu(), 1);
        for (n, fact) in [(7u8, 5040u128), (8, 40320)] {
            let s: u128 = partitions(n).unwrap().iter().map(|t| t.mu()).sum();
            assert_eq!(s, fact);
        }
    }

    #[test]
    fn parsing_and_notation() {
        let t = CycleType::parse(8, "3+2").unwrap();
        assert_eq!(t.notation(), "(12)(345)");
        assert_eq!(t.plus_form(), "3+2");
        assert_eq!(t.written_total(), 5);
        assert_eq!(CycleType::parse(8, "(12)(345)").unwrap(), t);
        assert_eq!(CycleType::parse(8, "2+3+1").unwrap(), t);
        assert!(CycleType::parse(8, "1").unwrap().is_identity());
        assert!(CycleType::parse(4, "3+2").is_err());
        assert!(CycleType::parse(4, "x").is_err());
        assert!(CycleType::parse(4, "0+2").is_err());
        assert_eq!(
            t.without_two_cycle().unwrap(),
            CycleType::parse(6, "3").unwrap()
        );
    }

    #[test]
    fn table_order_matches_published_layout() {
        let rows: Vec<String> = partitions_table_order(7)
            .unwrap()
            .iter()
            .map(|t| t.notation())
            .collect();
        assert_eq!(
            rows,
            [
                "(1)",
                "(12)",
                "(123)",
                "(1234)",
                "(12345)",
                "(123456)",
                "(1234567)",
                "(12)(34)",
                "(12)(345)",
                "(12)(3456)",
                "(12)(34567)",
                "(123)(456)",
                "(123)(4567)",
                "(12)(34)(56)",
                "(12)(34)(567)"
            ]
        );
    }

    #[test]
    fn canonical_perms() {
        let p = canonical_perm(&CycleType::parse(3, "3").unwrap());
        assert_eq!(p, VarPerm::from_cycles(3, &[&[1, 2, 3]]).unwrap());
        assert_eq!(
            canonical_perm(&CycleType::identity(4).unwrap()),
            VarPerm::identity(4)
        );
        let p = canonical_perm(&CycleType::parse(4, "2+2").unwrap());
        assert_eq!(p, VarPerm::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap());
        let p = canonical_perm(&CycleType::parse(7, "3+2").unwrap());
        assert_eq!(p.to_string(), "(x1 x2)(x3 x4 x5)");
        for t in partitions(6).unwrap() {
            assert_eq!(canonical_perm(&t).cycle_type(), t);
        }
    }

    #[test]
    fn lift_examples() {
        let p = VarPerm::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(lift(&p).to_string().replace(' ', ""), "(0)(124)(365)(7)");
        let p = VarPerm::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(
            lift(&p).to_string(),
            "(0)(1 2)(3)(4 8)(5 10)(6 9)(7 11)(12)(13 14)(15)"
        );
        assert_eq!(lift(&VarPerm::identity(3)), BitPerm::identity(3));
    }

    #[test]
    fn orbit_examples() {
        let bp = lift(&VarPerm::from_cycles(3, &[&[1, 2, 3]]).unwrap());
        assert_eq!(
            orbits(&bp),
            vec![vec![0], vec![1, 2, 4], vec![3, 5, 6], vec![7]]
        );
        assert_eq!(orbits(&BitPerm::identity(2)).len(), 4);
        let bp = lift(&VarPerm::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap());
        let mins: Vec<usize> = orbits(&bp).iter().map(|o| o[0]).collect();
        assert_eq!(mins, vec![0, 1, 3, 4, 5, 6, 7, 12, 13, 15]);
    }

    #[test]
    fn fixed_point_examples() {
        let bp = lift(&VarPerm::from_cycles(3, &[&[1, 2, 3]]).unwrap());
        let fixed: Vec<u64> = enumerate_dn(3)
            .unwrap()
            .iter()
            .filter(|f| is_fixed(f, &bp).unwrap())
            .map(|f| f.as_u64().unwrap())
            .collect();
        assert_eq!(fixed, vec![0, 1, 23, 127, 255]);
        let f15 = Mbf::from_u64(3, 15).unwrap();
        assert!(!is_fixed(&f15, &bp).unwrap());
        assert_ne!(apply(&bp, &f15).unwrap(), f15);
        assert!(is_fixed(&f15, &BitPerm::identity(3)).unwrap());
        assert!(apply(&bp, &Mbf::zero(2).unwrap()).is_err());
    }

    #[test]
    fn lift_is_a_homomorphism_on_s3() {
        let perms = all_perms(3);
        for p in &perms {
            for q in &perms {
                assert_eq!(lift(&p.compose(q)), lift(p).compose(&lift(q)));
            }
        }
    }

    #[test]
    fn lift_preserves_inclusion_and_popcount() {
        for n in 0..=4u8 {
            for p in all_perms(n) {
                let bp = lift(&p);
                for i in 0..table_len(n) {
                    assert_eq!(i.count_ones(), bp.image(i).count_ones());
                    for j in 0..table_len(n) {
                        if i & !j == 0 {
                            assert_eq!(bp.image(i) & !bp.image(j), 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn apply_preserves_monotonicity_and_inverts() {
        let d3 = enumerate_dn(3).unwrap();
        for p in all_perms(3) {
            let bp = lift(&p);
            for f in d3.iter() {
                let g = apply(&bp, &f).unwrap();
                assert!(d3.contains(&g));
                assert_eq!(apply(&bp, &apply(&bp.inverse(), &f).unwrap()).unwrap(), f);
            }
        }
    }

    #[test]
    fn fixed_count_depends_only_on_cycle_type() {
        for n in [3u8, 4] {
            let d = enumerate_dn(n).unwrap();
            let mut by_type = std::collections::HashMap::new();
            for p in all_perms(n) {
                let bp = lift(&p);
                let c = d.iter().filter(|f| is_fixed(f, &bp).unwrap()).count();
                let prev = by_type.insert(p.cycle_type(), c);
                assert!(prev.is_none() || prev == Some(c));
            }
        }
    }

    #[test]
    fn word_permuter_matches_generic_apply() {
        for n in 0..=6u8 {
            let d = enumerate_dn(n.min(5)).unwrap();
            let t = partitions(n).unwrap();
            for ty in t {
                let bp = lift(&canonical_perm(&ty));
                let wp = WordPermuter::new(&bp);
                if n <= 5 {
                    for f in d.iter() {
                        assert_eq!(
                            wp.apply(f.as_u64().unwrap()),
                            apply_unchecked(&bp, &f).as_u64().unwrap()
                        );
                    }
                } else {
                    for x in [1u64, 0x8000_0000_0000_0001, 0x0123_4567_89ab_cdef, u64::MAX] {
                        let f = Mbf::from_u64_unchecked(6, x);
                        assert_eq!(wp.apply(x), apply_unchecked(&bp, &f).as_u64().unwrap());
                    }
                }
            }
        }
    }
}
