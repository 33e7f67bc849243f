use rayon::prelude::*;

use super::{FixSet, LatticeCounts};
use crate::error::{input_err, Error, Result};
use crate::mbf::{words_for, MbfSet};
use crate::perm::{lift, VarPerm, WordPermuter};
use crate::progress::Progress;

/// `|{(a, b) in F^2 : a <= b}|`, which is the fixed-point count one variable
/// up. Since `a <= b` implies `a` is numerically no larger, only `j >= i`
/// is scanned.
pub fn alg2_count_pairs(fs: &FixSet) -> u128 {
    let progress = Progress::new("alg2-pairs", Some(fs.len() as u64));
    let n = fs.n();
    if let Some(xs) = fs.elements().as_u64s() {
        return (0..xs.len())
            .into_par_iter()
            .map(|i| {
                progress.tick(1);
                let a = xs[i];
                xs[i..].iter().filter(|&&b| a & !b == 0).count() as u128
            })
            .sum();
    }
    let k = words_for(n);
    let raw = fs.elements().raw_words();
    let len = fs.len();
    (0..len)
        .into_par_iter()
        .map(|i| {
            progress.tick(1);
            let a = &raw[i * k..(i + 1) * k];
            (i..len)
                .filter(|&j| {
                    let b = &raw[j * k..(j + 1) * k];
                    a.iter().zip(b).all(|(x, y)| x & !y == 0)
                })
                .count() as u128
        })
        .sum()
}

/// Fixed points at `n + 2` variables of `inner` extended by a swap of the
/// two new variables.
///
/// Split such a function into quarters `alpha, beta, gamma, delta` by the
/// values of the two new variables. Fixedness forces `alpha, delta` into
/// `F = Fix(inner)` and `gamma = inner(beta)`, which in turn needs
/// `inner^2(beta) = beta`; monotonicity needs `alpha <= beta & gamma` and
/// `beta | gamma <= delta`. So the count is the sum over admissible `beta`
/// of `down_F(beta & gamma) * up_F(beta | gamma)`.
///
/// `base` must hold exactly the functions fixed by `inner^2` (all of `D_n`
/// when `inner` is an involution).
pub fn alg3_count(inner: &VarPerm, f: &FixSet, base: &MbfSet) -> Result<u128> {
    let n = inner.n();
    if f.n() != n || base.n() != n {
        return Err(input_err!(
            "permutation on {n} variables, fixed-point set on {}, base set on {}",
            f.n(),
            base.n()
        ));
    }
    if f.perm() != inner {
        return Err(input_err!(
            "fixed-point set belongs to {}, not {inner}",
            f.perm()
        ));
    }
    let table = LatticeCounts::new(f)?;
    let xs = base
        .as_u64s()
        .ok_or_else(|| Error::Resource(format!("base set on {n} variables is too wide")))?;
    let step = WordPermuter::new(&lift(inner));
    let square = WordPermuter::new(&lift(&inner.compose(inner)));
    if let Some(&bad) = xs.iter().find(|&&b| square.apply(b) != b) {
        return Err(Error::Precondition(format!(
            "base element {bad} is not fixed by the square of {inner}"
        )));
    }
    let progress = Progress::new("alg3-split", Some(xs.len() as u64));
    xs.par_iter()
        .map(|&beta| {
            progress.tick(1);
            let gamma = step.apply(beta);
            let lo = table.position(beta & gamma)?;
            let hi = table.position(beta | gamma)?;
            Some(table.down_at(lo) as u128 * table.up_at(hi) as u128)
        })
        .sum::<Option<u128>>()
        .ok_or_else(|| Error::Internal("meet or join left the fixed-point set".into()))
}

/// `sum over (beta, gamma) in F^2 of down_F(beta & gamma) * up_F(beta | gamma)`,
/// the fixed points of the same permutation with two extra fixed variables.
/// With `F = D_n` this is `d_{n+2}`.
pub fn quadrant_count_two_fixed(f: &FixSet) -> Result<u128> {
    let table = LatticeCounts::new(f)?;
    let xs = table.elements();
    let progress = Progress::new("quadrant-two-fixed", Some(xs.len() as u64));
    (0..xs.len())
        .into_par_iter()
        .map(|i| {
            progress.tick(1);
            let b = xs[i];
            let mut off: u128 = 0;
            for &g in &xs[i + 1..] {
                let lo = table.position(b & g)?;
                let hi = table.position(b | g)?;
                off += table.down_at(lo) as u128 * table.up_at(hi) as u128;
            }
            Some(table.down_at(i) as u128 * table.up_at(i) as u128 + 2 * off)
        })
        .sum::<Option<u128>>()
        .ok_or_else(|| Error::Internal("meet or join left the fixed-point set".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixpoint::{fix_set, fix_set_of_perm, Budgets};
    use crate::mbf::enumerate_dn;
    use crate::perm::{canonical_perm, CycleType};

    fn b() -> Budgets {
        Budgets::default()
    }

    fn d(n: u8) -> FixSet {
        fix_set(&CycleType::identity(n).unwrap(), &b()).unwrap()
    }

    #[test]
    fn quadrant_gives_dedekind_numbers() {
        let expect = [6u128, 20, 168, 7581, 7828354];
        for (n, &v) in expect.iter().enumerate() {
            assert_eq!(quadrant_count_two_fixed(&d(n as u8)).unwrap(), v);
        }
    }

    #[test]
    fn pair_counts() {
        let seven = fix_set(&CycleType::parse(7, "7").unwrap(), &b()).unwrap();
        assert_eq!(seven.len(), 101);
        assert_eq!(alg2_count_pairs(&seven), 3858);
        for n in 0..=4 {
            assert_eq!(
                alg2_count_pairs(&d(n)),
                enumerate_dn(n + 1).unwrap().len() as u128
            );
        }
    }

    #[test]
    fn split_around_a_swap() {
        let id2 = VarPerm::identity(2);
        let d2 = d(2);
        assert_eq!(alg3_count(&id2, &d2, d2.elements()).unwrap(), 50);
        let swap = VarPerm::from_cycles(2, &[&[1, 2]]).unwrap();
        let f = fix_set_of_perm(&swap, &b()).unwrap();
        assert_eq!(alg3_count(&swap, &f, d2.elements()).unwrap(), 28);
    }

    #[test]
    fn split_rejects_bad_inputs() {
        let three = canonical_perm(&CycleType::parse(3, "3").unwrap());
        let f = fix_set_of_perm(&three, &b()).unwrap();
        assert!(matches!(
            alg3_count(&three, &f, d(3).elements()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            alg3_count(&three, &f, d(2).elements()),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            alg3_count(&VarPerm::identity(3), &f, d(3).elements()),
            Err(Error::Input(_))
        ));
    }
}
