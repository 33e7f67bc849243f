//! Monotone Boolean functions of up to eight variables: Dedekind numbers,
//! fixed points under variable permutations, and the number of inequivalent
//! functions via Burnside's lemma.
//!
//! A function of `n` variables is a truth table of `2^n` bits indexed by
//! subsets of `{x1, .., xn}`, where `x_j` contributes `2^(j-1)` to the index.
//! Rendered as an integer, subset 0 is the most significant bit, so `x3` on
//! three variables is `0b00001111 = 15`.
//!
//! ```
//! use imbf_core::{phi, Budgets, CycleType, Strategy};
//!
//! let t = CycleType::parse(7, "3").unwrap();
//! let res = phi(&t, Strategy::Auto, &Budgets::default()).unwrap();
//! assert_eq!(res.phi, 2_068_224);
//! ```

pub mod burnside;
pub mod error;
pub mod fixpoint;
pub mod interval;
pub mod mbf;
pub mod oracle;
pub mod perm;
pub mod poset;
pub mod progress;

pub use burnside::{
    compute_r, compute_r_with, verify_report, BurnsideReport, BurnsideRow, Discrepancy,
    KnownConstants, ReferenceTable, DEDEKIND, INEQUIVALENT,
};
pub use error::{Error, Result};
pub use fixpoint::{
    alg1_fixset, alg2_count_pairs, alg2_extend, alg3_count, fix_set, fix_set_of_perm, phi,
    quadrant_count_two_fixed, Budgets, FixSet, LatticeCounts, PhiResult, Strategy,
};
pub use interval::IntervalCounter;
pub use mbf::{concat, enumerate_dn, enumerate_dn_capped, is_monotone, leq, split, Mbf, MbfSet};
pub use oracle::{oracle_downsets, oracle_enum_dn, oracle_phi, oracle_r, OracleConfig};
pub use perm::{
    apply, canonical_perm, factorial, is_fixed, lift, orbits, partitions, partitions_table_order,
    BitPerm, CycleType, VarPerm,
};
pub use poset::{
    build_poset, count_downsets, enumerate_downsets, width, Downset, OrbitPoset, OrbitSet,
};
