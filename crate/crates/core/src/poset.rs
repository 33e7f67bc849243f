//! The poset of orbits of `B^n` under a lifted variable permutation.
//!
//! Orbit `A` lies below orbit `B` when some subset in `A` is contained in
//! some subset in `B`. Because orbits are translates under one permutation,
//! it is enough to test the minimum of `A` against every member of `B`.
//! Downsets of this poset are exactly the zero-regions of the monotone
//! functions fixed by the permutation.

use std::fmt::Write as _;

use rustc_hash::FxHashMap;

use crate::error::{input_err, Error, Result};
use crate::mbf::{table_len, Mbf};
use crate::perm::{orbits, BitPerm};
use crate::progress::Progress;

/// Bit set over at most 256 poset elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct OrbitSet([u64; 4]);

impl OrbitSet {
    pub const CAPACITY: usize = 256;

    pub fn empty() -> Self {
        OrbitSet([0; 4])
    }

    /// `{0, .., k-1}`.
    pub fn prefix(k: usize) -> Self {
        let mut s = OrbitSet::empty();
        for i in 0..k {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    #[inline]
    pub fn union(&self, o: &Self) -> Self {
        OrbitSet(std::array::from_fn(|k| self.0[k] | o.0[k]))
    }

    #[inline]
    pub fn intersect(&self, o: &Self) -> Self {
        OrbitSet(std::array::from_fn(|k| self.0[k] & o.0[k]))
    }

    #[inline]
    pub fn minus(&self, o: &Self) -> Self {
        OrbitSet(std::array::from_fn(|k| self.0[k] & !o.0[k]))
    }

    #[inline]
    pub fn is_subset(&self, o: &Self) -> bool {
        (0..4).all(|k| self.0[k] & !o.0[k] == 0)
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0 == [0; 4]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| 64 * k + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..4).flat_map(move |k| {
            let mut w = self.0[k];
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    64 * k + t
                })
            })
        })
    }
}

/// A downward-closed set of orbits, as membership over the orbit list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Downset(pub OrbitSet);

impl Downset {
    pub fn contains(&self, orbit: usize) -> bool {
        self.0.contains(orbit)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct OrbitPoset {
    n: u8,
    orbits: Vec<Vec<usize>>,
    /// Truth-table bits covered by each orbit, in the `Mbf` word layout.
    masks: Vec<[u64; 4]>,
    below: Vec<OrbitSet>,
    above: Vec<OrbitSet>,
    cover_preds: Vec<OrbitSet>,
    covers: Vec<(usize, usize)>,
    linext: Vec<usize>,
}

/// Orders the orbits of `bp` by inclusion and verifies that listing them by
/// minimum representative is a linear extension.
pub fn build_poset(bp: &BitPerm) -> Result<OrbitPoset> {
    let n = bp.n();
    let orbits = orbits(bp);
    let top = table_len(n) - 1;
    let masks = orbits
        .iter()
        .map(|o| {
            let mut w = [0u64; 4];
            for &i in o {
                w[(top - i) / 64] |= 1 << ((top - i) % 64);
            }
            w
        })
        .collect();
    let less = |a: usize, b: usize| {
        a != b && {
            let lo = orbits[a][0];
            orbits[b].iter().any(|&t| lo & !t == 0)
        }
    };
    let k = orbits.len();
    let relation: Vec<Vec<bool>> = (0..k)
        .map(|a| (0..k).map(|b| less(a, b)).collect())
        .collect();
    OrbitPoset::assemble(n, orbits, masks, &relation)
}

impl OrbitPoset {
    /// An abstract poset on `k` elements given its strict order relation
    /// (which must be transitive). Elements have no truth-table meaning.
    pub fn from_order(k: usize, less: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if k > OrbitSet::CAPACITY {
            return Err(input_err!(
                "at most {} elements supported",
                OrbitSet::CAPACITY
            ));
        }
        let relation: Vec<Vec<bool>> = (0..k)
            .map(|a| (0..k).map(|b| a != b && less(a, b)).collect())
            .collect();
        for a in 0..k {
            for b in 0..k {
                if relation[a][b] && relation[b][a] {
                    return Err(input_err!("relation is not antisymmetric at ({a}, {b})"));
                }
                for c in 0..k {
                    if relation[a][b] && relation[b][c] && !relation[a][c] {
                        return Err(input_err!("relation is not transitive at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        let orbits = (0..k).map(|i| vec![i]).collect();
        Self::assemble(0, orbits, vec![[0; 4]; k], &relation)
    }

    fn assemble(
        n: u8,
        orbits: Vec<Vec<usize>>,
        masks: Vec<[u64; 4]>,
        relation: &[Vec<bool>],
    ) -> Result<Self> {
        let k = orbits.len();
        let mut below = vec![OrbitSet::empty(); k];
        let mut above = vec![OrbitSet::empty(); k];
        for a in 0..k {
            for b in 0..k {
                if relation[a][b] {
                    above[a].insert(b);
                    below[b].insert(a);
                }
            }
        }
        let mut covers = Vec::new();
        let mut cover_preds = vec![OrbitSet::empty(); k];
        for (a, up) in above.iter().enumerate() {
            for b in up.iter() {
                if up.intersect(&below[b]).is_empty() {
                    covers.push((a, b));
                    cover_preds[b].insert(a);
                }
            }
        }
        let linext: Vec<usize> = (0..k).collect();
        let mut pos = vec![0; k];
        for (p, &o) in linext.iter().enumerate() {
            pos[o] = p;
        }
        if let Some(&(a, b)) = covers.iter().find(|&&(a, b)| pos[a] >= pos[b]) {
            return Err(Error::Internal(format!(
                "orbit order is not a linear extension: {a} < {b} but listed later"
            )));
        }
        Ok(OrbitPoset {
            n,
            orbits,
            masks,
            below,
            above,
            cover_preds,
            covers,
            linext,
        })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Minimum subset index of each orbit.
    pub fn representatives(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o[0]).collect()
    }

    /// Strict order between orbits `a < b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b)
    }

    pub fn strictly_below(&self, a: usize) -> &OrbitSet {
        &self.below[a]
    }

    pub fn strictly_above(&self, a: usize) -> &OrbitSet {
        &self.above[a]
    }

    /// Hasse diagram edges `(lower, upper)`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.linext
    }

    pub fn is_downset(&self, s: &OrbitSet) -> bool {
        s.iter().all(|o| self.below[o].is_subset(s))
    }

    /// The fixed function whose zero-region is `d`.
    pub fn function_of(&self, d: &Downset) -> Mbf {
        let mut words = [0u64; 4];
        for (o, mask) in self.masks.iter().enumerate() {
            if !d.contains(o) {
                for k in 0..4 {
                    words[k] |= mask[k];
                }
            }
        }
        Mbf::from_words_unchecked(self.n, words)
    }

    /// Graphviz rendering of the Hasse diagram, nodes labelled by minimum
    /// representative.
    pub fn to_dot(&self) -> String {
        let reps = self.representatives();
        let mut out = String::from("digraph orbits {\n  rankdir=BT;\n");
        for r in &reps {
            let _ = writeln!(out, "  \"{r}\";");
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", reps[a], reps[b]);
        }
        out.push_str("}\n");
        out
    }
}

/// Every downset exactly once. Orbits are added in linear-extension order;
/// `b ∪ {a}` is created from an existing downset `b` only when all covers
/// below `a` are already in `b`, so each downset arises from its last
/// element and no duplicates occur.
pub fn enumerate_downsets(p: &OrbitPoset, budget: u64) -> Result<Vec<Downset>> {
    let mut sets = vec![OrbitSet::empty()];
    for &a in &p.linext {
        let preds = p.cover_preds[a];
        let existing = sets.len();
        for i in 0..existing {
            if preds.is_subset(&sets[i]) {
                let next = sets[i].with(a);
                sets.push(next);
            }
        }
        if sets.len() as u64 > budget {
            return Err(Error::Resource(format!(
                "more than {budget} downsets; use count_downsets or a counting strategy"
            )));
        }
    }
    Ok(sets.into_iter().map(Downset).collect())
}

/// Number of downsets, without materializing them.
///
/// Splits on a pivot `p`: downsets avoiding `p` avoid everything above it,
/// downsets containing `p` contain everything below it. Incomparable
/// components multiply, and subproblems are memoized by their remaining
/// element set.
pub fn count_downsets(p: &OrbitPoset) -> u128 {
    let mut counter = DownsetCounter {
        p,
        memo: FxHashMap::default(),
        progress: Progress::new("count_downsets states", None),
    };
    counter.count(OrbitSet::prefix(p.len()))
}

struct DownsetCounter<'a> {
    p: &'a OrbitPoset,
    memo: FxHashMap<OrbitSet, u128>,
    progress: Progress,
}

impl DownsetCounter<'_> {
    fn component(&self, s: &OrbitSet) -> OrbitSet {
        let start = s.first().expect("non-empty");
        let mut comp = OrbitSet::empty().with(start);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut reach = OrbitSet::empty();
            for x in frontier.iter() {
                reach = reach.union(&self.p.below[x]).union(&self.p.above[x]);
            }
            frontier = reach.intersect(s).minus(&comp);
            comp = comp.union(&frontier);
        }
        comp
    }

    fn count(&mut self, s: OrbitSet) -> u128 {
        match s.len() {
            0 => return 1,
            1 => return 2,
            _ => {}
        }
        if let Some(&c) = self.memo.get(&s) {
            return c;
        }
        let comp = self.component(&s);
        let total = if comp != s {
            self.count(comp) * self.count(s.minus(&comp))
        } else {
            let pivot = s
                .iter()
                .max_by_key(|&x| {
                    let lo = self.p.below[x].intersect(&s).len() + 1;
                    let hi = self.p.above[x].intersect(&s).len() + 1;
                    lo * hi
                })
                .expect("non-empty");
            let without = s
                .minus(&self.p.above[pivot])
                .minus(&OrbitSet::empty().with(pivot));
            let with = s
                .minus(&self.p.below[pivot])
                .minus(&OrbitSet::empty().with(pivot));
            self.count(without) + self.count(with)
        };
        self.memo.insert(s, total);
        if self.memo.len().is_multiple_of(10_000_000) {
            self.progress
                .note(&format!("{} memoized states", self.memo.len()));
        }
        total
    }
}

/// Size of the largest antichain, via Dilworth: the number of elements minus
/// a maximum matching in the strict comparability graph.
pub fn width(p: &OrbitPoset) -> usize {
    let k = p.len();
    let mut match_right: Vec<Option<usize>> = vec![None; k];
    fn augment(
        p: &OrbitPoset,
        a: usize,
        seen: &mut [bool],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for b in p.above[a].iter() {
            if seen[b] {
                continue;
            }
            seen[b] = true;
            if match_right[b].is_none_or(|a2| augment(p, a2, seen, match_right)) {
                match_right[b] = Some(a);
                return true;
            }
        }
        false
    }
    let mut matched = 0;
    for a in 0..k {
        let mut seen = vec![false; k];
        if augment(p, a, &mut seen, &mut match_right) {
            matched += 1;
        }
    }
    k - matched
}
