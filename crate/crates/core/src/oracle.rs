//! Slow, direct reference implementations for small `n`.
//!
//! Everything here works from truth tables and explicit subset loops so that
//! it shares as little as possible with the fast paths.

use crate::error::{input_err, Result};
use crate::mbf::{enumerate_dn, is_monotone, Mbf, MbfSet};
use crate::perm::VarPerm;
use crate::poset::OrbitPoset;

/// Size limits for the reference scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `n` for a scan over all `2^(2^n)` truth tables.
    pub max_n_full: u8,
    /// Largest `n` for a scan that filters `D_n`.
    pub max_n_filter: u8,
    /// Largest poset scanned subset by subset.
    pub max_poset: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_n_full: 4,
            max_n_filter: 5,
            max_poset: 20,
        }
    }
}

fn truth_table(x: u64, n: u8) -> Vec<bool> {
    let len = 1usize << n;
    (0..len).map(|i| x >> (len - 1 - i) & 1 == 1).collect()
}

/// `D_n` by testing every Boolean function.
pub fn oracle_enum_dn(n: u8) -> Result<MbfSet> {
    let cfg = OracleConfig::default();
    if n > cfg.max_n_full {
        return Err(input_err!("full scan limited to n <= {}", cfg.max_n_full));
    }
    let count = 1u64 << (1u32 << n);
    let mut out = Vec::new();
    for x in 0..count {
        let bits = truth_table(x, n);
        if is_monotone(&bits, n)? {
            out.push(Mbf::from_truth_table(n, &bits)?);
        }
    }
    MbfSet::new(n, out)
}

fn image_subset(p: &VarPerm, s: usize) -> usize {
    let mut t = 0;
    for j in 0..p.n() {
        if s >> j & 1 == 1 {
            t |= 1 << p.image(j);
        }
    }
    t
}

fn fixed_by(f: &[bool], p: &VarPerm) -> bool {
    (0..f.len()).all(|s| f[s] == f[image_subset(p, s)])
}

fn dn_for_filter(n: u8) -> Result<Vec<Vec<bool>>> {
    let cfg = OracleConfig::default();
    if n > cfg.max_n_filter {
        return Err(input_err!(
            "filter scan limited to n <= {}",
            cfg.max_n_filter
        ));
    }
    let set = if n <= cfg.max_n_full {
        oracle_enum_dn(n)?
    } else {
        enumerate_dn(n)?
    };
    Ok(set.iter().map(|f| f.truth_table()).collect())
}

/// Number of `f` in `D_n` with `f(p(S)) = f(S)` for every subset `S`.
pub fn oracle_phi(p: &VarPerm) -> Result<u128> {
    let dn = dn_for_filter(p.n())?;
    Ok(dn.iter().filter(|f| fixed_by(f, p)).count() as u128)
}

/// Every permutation of `n` variables, in lexicographic order.
pub fn all_perms(n: u8) -> Vec<VarPerm> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n).collect();
    loop {
        out.push(VarPerm::new(cur.clone()).expect("a permutation"));
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Number of classes of `D_n` under renaming variables, by mapping each
/// function to its smallest image.
pub fn oracle_r(n: u8) -> Result<u128> {
    let cfg = OracleConfig::default();
    if n > cfg.max_n_full {
        return Err(input_err!("class count limited to n <= {}", cfg.max_n_full));
    }
    let perms = all_perms(n);
    let dn = dn_for_filter(n)?;
    let mut reps: Vec<Vec<bool>> = dn
        .iter()
        .map(|f| {
            perms
                .iter()
                .map(|p| {
                    let mut g = vec![false; f.len()];
                    for s in 0..f.len() {
                        g[image_subset(p, s)] = f[s];
                    }
                    g
                })
                .min()
                .unwrap()
        })
        .collect();
    reps.sort();
    reps.dedup();
    Ok(reps.len() as u128)
}

/// Downsets of a small poset by checking every subset.
pub fn oracle_downsets(p: &OrbitPoset) -> Result<u64> {
    let cfg = OracleConfig::default();
    let k = p.len();
    if k > cfg.max_poset {
        return Err(input_err!("{k} elements is more than {}", cfg.max_poset));
    }
    let mut count = 0;
    for mask in 0u32..1 << k {
        let closed = (0..k)
            .filter(|&a| mask >> a & 1 == 1)
            .all(|a| (0..k).all(|b| !p.less(b, a) || mask >> b & 1 == 1));
        if closed {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::lift;
    use crate::poset::build_poset;

    #[test]
    fn full_scan_sizes() {
        let sizes: Vec<usize> = (0..=4).map(|n| oracle_enum_dn(n).unwrap().len()).collect();
        assert_eq!(sizes, vec![2, 3, 6, 20, 168]);
        let d0: Vec<u64> = oracle_enum_dn(0).unwrap().as_u64s().unwrap().to_vec();
        assert_eq!(d0, vec![0, 1]);
        assert!(oracle_enum_dn(5).is_err());
    }

    #[test]
    fn full_scan_matches_doubling() {
        for n in 0..=4 {
            assert_eq!(oracle_enum_dn(n).unwrap(), enumerate_dn(n).unwrap());
        }
    }

    #[test]
    fn phi_examples() {
        let c3 = VarPerm::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(oracle_phi(&c3).unwrap(), 5);
        assert_eq!(oracle_phi(&VarPerm::identity(4)).unwrap(), 168);
        let v = VarPerm::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(oracle_phi(&v).unwrap(), 28);
        assert!(oracle_phi(&VarPerm::identity(6)).is_err());
    }

    #[test]
    fn class_counts() {
        let r: Vec<u128> = (0..=4).map(|n| oracle_r(n).unwrap()).collect();
        assert_eq!(r, vec![2, 3, 5, 10, 30]);
    }

    #[test]
    fn burnside_by_brute_force() {
        for n in 0..=4u8 {
            let perms = all_perms(n);
            let total: u128 = perms.iter().map(|p| oracle_phi(p).unwrap()).sum();
            assert_eq!(total % perms.len() as u128, 0);
            assert_eq!(total / perms.len() as u128, oracle_r(n).unwrap());
        }
    }

    #[test]
    fn permutation_listing() {
        assert_eq!(all_perms(0).len(), 1);
        assert_eq!(all_perms(4).len(), 24);
        let mut seen: Vec<Vec<u8>> = all_perms(4).iter().map(|p| p.mapping().to_vec()).collect();
        seen.dedup();
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn poset_scans() {
        let fig = lift(&VarPerm::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap());
        assert_eq!(oracle_downsets(&build_poset(&fig).unwrap()).unwrap(), 28);
        let chain = OrbitPoset::from_order(4, |a, b| a < b).unwrap();
        assert_eq!(oracle_downsets(&chain).unwrap(), 5);
        for k in 0..=10 {
            let anti = OrbitPoset::from_order(k, |_, _| false).unwrap();
            assert_eq!(oracle_downsets(&anti).unwrap(), 1 << k);
        }
        let big = build_poset(&lift(&VarPerm::identity(5))).unwrap();
        assert!(oracle_downsets(&big).is_err());
    }
}
