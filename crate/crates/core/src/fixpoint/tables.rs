use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::FixSet;
use crate::error::{Error, Result};
use crate::mbf::{dual_u64, table_len, Mbf};
use crate::perm::{lift, orbits};

/// For every `x` in a fixed-point set `F`, how many members of `F` lie below
/// `x` and how many lie above it.
///
/// `F` is closed under meet, join and duality, so both tables are indexed by
/// position in `F` and `up(x) = down(dual x)`.
#[derive(Clone, Debug)]
pub struct LatticeCounts {
    n: u8,
    elements: Vec<u64>,
    index: FxHashMap<u64, u32>,
    down: Vec<u64>,
    up: Vec<u64>,
}

fn index_of(xs: &[u64]) -> FxHashMap<u64, u32> {
    let mut m = FxHashMap::default();
    m.reserve(xs.len());
    for (i, &x) in xs.iter().enumerate() {
        m.insert(x, i as u32);
    }
    m
}

fn words(fs: &FixSet) -> Result<&[u64]> {
    fs.elements().as_u64s().ok_or_else(|| {
        Error::Resource(format!(
            "interval tables need at most 6 variables, set has {}",
            fs.n()
        ))
    })
}

/// Pairs `(i, j)` with `F[j] = F[i]` minus one whole orbit, grouped by orbit
/// from the top orbit down. Summing `z[i] += z[j]` over them in this order
/// turns `z` into its sum over everything below.
fn removal_pairs(fs: &FixSet, xs: &[u64], index: &FxHashMap<u64, u32>) -> Vec<(u32, u32)> {
    let n = fs.n();
    let top = table_len(n) - 1;
    let masks: Vec<u64> = orbits(&lift(fs.perm()))
        .iter()
        .map(|o| o.iter().fold(0u64, |m, &i| m | 1 << (top - i)))
        .collect();
    let mut pairs = Vec::new();
    for &mask in masks.iter().rev() {
        for (i, &x) in xs.iter().enumerate() {
            if x & mask == mask {
                if let Some(&j) = index.get(&(x & !mask)) {
                    pairs.push((i as u32, j));
                }
            }
        }
    }
    pairs
}

fn down_table(fs: &FixSet) -> Result<Vec<u64>> {
    let xs = words(fs)?;
    let Some(parent) = fs.parent() else {
        let index = index_of(xs);
        let mut z = vec![1u64; xs.len()];
        for (i, j) in removal_pairs(fs, xs, &index) {
            z[i as usize] += z[j as usize];
        }
        return Ok(z);
    };
    // F = {(a, b) : a <= b in F'}, so
    // down(a, b) = sum over d <= b in F' of down'(a & d).
    let pdown = down_table(parent)?;
    let pxs = words(parent)?;
    let pindex = index_of(pxs);
    let pairs = removal_pairs(parent, pxs, &pindex);
    let rows: Vec<Vec<u64>> = pxs
        .par_iter()
        .map(|&a| {
            let mut g: Vec<u64> = pxs
                .iter()
                .map(|&d| pdown[pindex[&(a & d)] as usize])
                .collect();
            for &(i, j) in &pairs {
                g[i as usize] += g[j as usize];
            }
            pxs.iter()
                .zip(&g)
                .filter(|(&b, _)| a & !b == 0)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect();
    let down: Vec<u64> = rows.concat();
    if down.len() != xs.len() {
        return Err(Error::Internal(format!(
            "lineage table has {} rows for a set of {}",
            down.len(),
            xs.len()
        )));
    }
    Ok(down)
}

impl LatticeCounts {
    pub fn new(fs: &FixSet) -> Result<Self> {
        let n = fs.n();
        let elements = words(fs)?.to_vec();
        let down = down_table(fs)?;
        let index = index_of(&elements);
        let up = elements
            .iter()
            .map(|&x| {
                index
                    .get(&dual_u64(x, n))
                    .map(|&j| down[j as usize])
                    .ok_or_else(|| Error::Internal(format!("dual of {x} missing from the set")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticeCounts {
            n,
            elements,
            index,
            down,
            up,
        })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub(crate) fn elements(&self) -> &[u64] {
        &self.elements
    }

    #[inline]
    pub(crate) fn position(&self, x: u64) -> Option<usize> {
        self.index.get(&x).map(|&i| i as usize)
    }

    #[inline]
    pub(crate) fn down_at(&self, i: usize) -> u64 {
        self.down[i]
    }

    #[inline]
    pub(crate) fn up_at(&self, i: usize) -> u64 {
        self.up[i]
    }

    /// Members of the set at or below `f`; `None` if `f` is not a member.
    pub fn down_of(&self, f: &Mbf) -> Option<u64> {
        (f.n() == self.n)
            .then(|| f.as_u64())
            .flatten()
            .and_then(|x| self.position(x))
            .map(|i| self.down[i])
    }

    /// Members of the set at or above `f`; `None` if `f` is not a member.
    pub fn up_of(&self, f: &Mbf) -> Option<u64> {
        (f.n() == self.n)
            .then(|| f.as_u64())
            .flatten()
            .and_then(|x| self.position(x))
            .map(|i| self.up[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixpoint::{alg2_extend, fix_set, fix_set_of_perm, Budgets};
    use crate::perm::{canonical_perm, partitions, CycleType};

    fn brute(fs: &FixSet) -> (Vec<u64>, Vec<u64>) {
        let xs = fs.elements().as_u64s().unwrap();
        let down = xs
            .iter()
            .map(|&x| xs.iter().filter(|&&y| y & !x == 0).count() as u64)
            .collect();
        let up = xs
            .iter()
            .map(|&x| xs.iter().filter(|&&y| x & !y == 0).count() as u64)
            .collect();
        (down, up)
    }

    fn check(fs: &FixSet) {
        let t = LatticeCounts::new(fs).unwrap();
        let (down, up) = brute(fs);
        assert_eq!(t.down, down, "{}", fs.perm());
        assert_eq!(t.up, up, "{}", fs.perm());
    }

    #[test]
    fn tables_match_brute_force() {
        let b = Budgets::default();
        for n in 0..=5u8 {
            for ty in partitions(n).unwrap() {
                check(&fix_set(&ty, &b).unwrap());
            }
        }
    }

    #[test]
    fn direct_and_lineage_tables_agree() {
        let b = Budgets::default();
        for s in ["1", "2", "3", "2+2"] {
            let ty = CycleType::parse(5, s).unwrap();
            let perm = canonical_perm(&ty);
            let lineage = fix_set_of_perm(&perm, &b).unwrap();
            assert!(s == "1" || lineage.parent().is_some());
            let direct = super::super::alg1_of_perm(&perm, &b).unwrap();
            assert!(direct.parent().is_none());
            assert_eq!(lineage.elements(), direct.elements());
            let a = LatticeCounts::new(&lineage).unwrap();
            let c = LatticeCounts::new(&direct).unwrap();
            assert_eq!(a.down, c.down);
            assert_eq!(a.up, c.up);
        }
        let d = fix_set(&CycleType::identity(4).unwrap(), &b).unwrap();
        check(&alg2_extend(&d, &b).unwrap());
    }

    #[test]
    fn lookups_by_function() {
        let b = Budgets::default();
        let d2 = fix_set(&CycleType::identity(2).unwrap(), &b).unwrap();
        let t = LatticeCounts::new(&d2).unwrap();
        let f = Mbf::from_u64(2, 3).unwrap();
        assert_eq!(t.down_of(&f), Some(3));
        assert_eq!(t.up_of(&f), Some(3));
        assert_eq!(t.down_of(&Mbf::from_u64(3, 3).unwrap()), None);
    }
}
