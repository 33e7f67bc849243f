//! Counting the monotone functions fixed by a variable permutation, and the
//! dispatcher that picks a method per cycle type.

mod counting;
mod tables;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::json;

pub use counting::{alg2_count_pairs, alg3_count, quadrant_count_two_fixed};
pub use tables::LatticeCounts;

use crate::error::{input_err, Error, Result};
use crate::mbf::{Mbf, MbfSet};
use crate::oracle::oracle_phi;
use crate::perm::{canonical_perm, lift, CycleType, VarPerm};
use crate::poset::{build_poset, count_downsets, enumerate_downsets, width};

/// Limits that decide which methods may run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Largest `|F|^2` allowed for pairwise scans over a fixed-point set.
    pub pair_comparisons: u128,
    /// Largest number of downsets or functions materialized at once.
    pub downsets: u64,
    /// Largest `n` for which all of `D_n` is materialized.
    pub enum_cap: u8,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            pair_comparisons: 10_000_000_000_000,
            downsets: 100_000_000,
            enum_cap: crate::mbf::DEFAULT_ENUM_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Auto,
    Alg1Enumerate,
    Alg1Count,
    Alg2Pairs,
    Alg3Split,
    QuadrantTwoFixed,
    Oracle,
    /// Value taken from a known-constants file rather than computed.
    KnownConstant,
}

impl Strategy {
    pub fn label(&self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Alg1Enumerate => "alg1-enumerate",
            Strategy::Alg1Count => "alg1-count",
            Strategy::Alg2Pairs => "alg2-pairs",
            Strategy::Alg3Split => "alg3-split",
            Strategy::QuadrantTwoFixed => "quadrant-two-fixed",
            Strategy::Oracle => "oracle",
            Strategy::KnownConstant => "known-constant",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Strategy::Auto,
            "alg1" | "alg1-count" => Strategy::Alg1Count,
            "alg1-enumerate" => Strategy::Alg1Enumerate,
            "alg2" | "alg2-pairs" => Strategy::Alg2Pairs,
            "alg3" | "alg3-split" => Strategy::Alg3Split,
            "quadrant" | "quadrant-two-fixed" => Strategy::QuadrantTwoFixed,
            "oracle" => Strategy::Oracle,
            _ => return Err(input_err!("unknown strategy {s:?}")),
        })
    }
}

/// All functions of `D_n` fixed by one permutation, sorted.
///
/// A set produced by [`alg2_extend`] remembers the set it was extended from;
/// the interval tables use that to avoid hashing every element.
#[derive(Clone, Debug)]
pub struct FixSet {
    perm: VarPerm,
    elements: Arc<MbfSet>,
    parent: Option<Arc<FixSet>>,
}

impl FixSet {
    pub fn n(&self) -> u8 {
        self.perm.n()
    }

    pub fn perm(&self) -> &VarPerm {
        &self.perm
    }

    pub fn cycle_type(&self) -> CycleType {
        self.perm.cycle_type()
    }

    pub fn elements(&self) -> &MbfSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn parent(&self) -> Option<&FixSet> {
        self.parent.as_deref()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = Mbf> + '_ {
        self.elements.iter()
    }
}

/// The fixed points of the canonical permutation of `t`, whose cycles must
/// cover all `n` variables, read off the downsets of its orbit poset.
pub fn alg1_fixset(t: &CycleType, budgets: &Budgets) -> Result<FixSet> {
    if t.written_total() != t.n() {
        return Err(Error::Precondition(format!(
            "{t} moves {} of {} variables; downset enumeration needs all of them moved \
             (use fix_set for types with fixed variables)",
            t.written_total(),
            t.n()
        )));
    }
    alg1_of_perm(&canonical_perm(t), budgets)
}

/// Downset enumeration on the orbit poset of any permutation.
fn alg1_of_perm(perm: &VarPerm, budgets: &Budgets) -> Result<FixSet> {
    let n = perm.n();
    let poset = build_poset(&lift(perm))?;
    let downsets = enumerate_downsets(&poset, budgets.downsets).map_err(|e| match e {
        Error::Resource(m) => Error::Resource(format!(
            "{m} (fixed points of {perm}); try alg3 or a counting strategy"
        )),
        e => e,
    })?;
    let fns: Vec<Mbf> = downsets.iter().map(|d| poset.function_of(d)).collect();
    Ok(FixSet {
        perm: perm.clone(),
        elements: Arc::new(MbfSet::new(n, fns)?),
        parent: None,
    })
}

/// Fixed points at `n + 1` variables of the same permutation with the new
/// variable fixed: all `concat(a, b)` with `a <= b` from `fs`.
pub fn alg2_extend(fs: &FixSet, budgets: &Budgets) -> Result<FixSet> {
    let len = fs.len() as u128;
    if len * len > budgets.pair_comparisons {
        return Err(Error::Resource(format!(
            "extending {} fixed points needs {} comparisons (budget {}); use alg2_count_pairs",
            len,
            len * len,
            budgets.pair_comparisons
        )));
    }
    let cap = usize::try_from(budgets.downsets).unwrap_or(usize::MAX);
    let elements = fs.elements.extend_capped(cap)?;
    Ok(FixSet {
        perm: fs.perm.widen(fs.n() + 1),
        elements: Arc::new(elements),
        parent: Some(Arc::new(fs.clone())),
    })
}

/// Fixed points of an arbitrary permutation: downset enumeration on the
/// moved variables, then one extension per fixed trailing variable.
pub fn fix_set_of_perm(perm: &VarPerm, budgets: &Budgets) -> Result<FixSet> {
    let m = perm.support_len();
    if m == 0 && perm.n() > budgets.enum_cap {
        return Err(Error::Resource(format!(
            "materializing D_{} exceeds the enumeration cap of {} (--enum-cap)",
            perm.n(),
            budgets.enum_cap
        )));
    }
    let mut fs = alg1_of_perm(&perm.truncate(m)?, budgets)?;
    while fs.n() < perm.n() {
        fs = alg2_extend(&fs, budgets)?;
    }
    Ok(fs)
}

/// [`fix_set_of_perm`] for the canonical permutation of `t`.
pub fn fix_set(t: &CycleType, budgets: &Budgets) -> Result<FixSet> {
    fix_set_of_perm(&canonical_perm(t), budgets)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiResult {
    pub cycle_type: CycleType,
    pub n: u8,
    pub phi: u128,
    pub strategy: Strategy,
    pub elapsed: Duration,
}

impl PhiResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "type": self.cycle_type.notation(),
            "n": self.n,
            "phi": self.phi.to_string(),
            "strategy": self.strategy.label(),
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }
}

/// `phi(t)`: the number of functions in `D_n` fixed by a permutation of
/// cycle type `t`.
pub fn phi(t: &CycleType, strategy: Strategy, budgets: &Budgets) -> Result<PhiResult> {
    let start = Instant::now();
    let (value, used) = match strategy {
        Strategy::Auto => auto(t, budgets)?,
        Strategy::KnownConstant => {
            return Err(input_err!("known-constant is not a counting strategy"))
        }
        s => (run(t, s, budgets)?, s),
    };
    Ok(PhiResult {
        cycle_type: t.clone(),
        n: t.n(),
        phi: value,
        strategy: used,
        elapsed: start.elapsed(),
    })
}

fn pair_check(what: &str, len: usize, budgets: &Budgets) -> Result<()> {
    let pairs = (len as u128) * (len as u128);
    if pairs > budgets.pair_comparisons {
        return Err(Error::Resource(format!(
            "{what} needs {pairs} pair comparisons (budget {})",
            budgets.pair_comparisons
        )));
    }
    Ok(())
}

fn run(t: &CycleType, s: Strategy, budgets: &Budgets) -> Result<u128> {
    let n = t.n();
    let total = t.written_total();
    match s {
        Strategy::Alg1Enumerate => Ok(alg1_of_perm(&canonical_perm(t), budgets)?.len() as u128),
        Strategy::Alg1Count => Ok(count_downsets(&build_poset(&lift(&canonical_perm(t)))?)),
        Strategy::Alg2Pairs => {
            if n == 0 || total > n - 1 {
                return Err(Error::Precondition(format!(
                    "alg2-pairs needs a fixed variable; {t} moves {total} of {n}"
                )));
            }
            let fs = fix_set(&t.with_n(n - 1)?, budgets)?;
            pair_check("alg2-pairs", fs.len(), budgets)?;
            Ok(alg2_count_pairs(&fs))
        }
        Strategy::Alg3Split => {
            let inner_t = t.without_two_cycle().ok_or_else(|| {
                Error::Precondition(format!("alg3-split needs a 2-cycle; {t} has none"))
            })?;
            let inner = canonical_perm(&inner_t);
            let f = fix_set_of_perm(&inner, budgets)?;
            let base = if inner_t.is_involution() {
                fix_set(&CycleType::identity(inner_t.n())?, budgets)?
            } else {
                fix_set_of_perm(&inner.compose(&inner), budgets)?
            };
            alg3_count(&inner, &f, base.elements())
        }
        Strategy::QuadrantTwoFixed => {
            if n < 2 || total > n - 2 {
                return Err(Error::Precondition(format!(
                    "quadrant-two-fixed needs two fixed variables; {t} moves {total} of {n}"
                )));
            }
            let f = fix_set(&t.with_n(n - 2)?, budgets)?;
            pair_check("quadrant-two-fixed", f.len(), budgets)?;
            quadrant_count_two_fixed(&f)
        }
        Strategy::Oracle => oracle_phi(&canonical_perm(t)),
        Strategy::Auto | Strategy::KnownConstant => unreachable!("handled by phi"),
    }
}

/// Tries, in order: orbit-poset counting when every variable is moved,
/// pair counting when one variable is fixed, the quadrant split around a
/// 2-cycle, and the two-fixed-variable quadrant count. Budget failures fall
/// through to the next option.
fn auto(t: &CycleType, budgets: &Budgets) -> Result<(u128, Strategy)> {
    let n = t.n();
    let total = t.written_total();
    let mut failures: Vec<(f64, String)> = Vec::new();

    if total == n {
        let poset = build_poset(&lift(&canonical_perm(t)))?;
        let w = width(&poset);
        if w < 64 && (1u64 << w) <= budgets.downsets {
            return Ok((count_downsets(&poset), Strategy::Alg1Count));
        }
        failures.push((
            2f64.powi(w as i32),
            format!(
                "alg1-count: at least 2^{w} downsets, over the budget of {}",
                budgets.downsets
            ),
        ));
    }

    let attempt = |s: Strategy, failures: &mut Vec<(f64, String)>| match run(t, s, budgets) {
        Ok(v) => Ok(Some(v)),
        Err(Error::Resource(msg)) => {
            let cost = estimate(&msg);
            failures.push((cost, format!("{}: {msg}", s.label())));
            Ok(None)
        }
        Err(e) => Err(e),
    };

    if n >= 1 && total == n - 1 {
        if let Some(v) = attempt(Strategy::Alg2Pairs, &mut failures)? {
            return Ok((v, Strategy::Alg2Pairs));
        }
    }
    if t.has_two_cycle() {
        if let Some(v) = attempt(Strategy::Alg3Split, &mut failures)? {
            return Ok((v, Strategy::Alg3Split));
        }
    }
    if n >= 2 && total <= n - 2 {
        if let Some(v) = attempt(Strategy::QuadrantTwoFixed, &mut failures)? {
            return Ok((v, Strategy::QuadrantTwoFixed));
        }
    }
    let cheapest = failures
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, m)| m)
        .unwrap_or_else(|| "no method applies".to_string());
    Err(Error::Resource(format!(
        "no strategy for {t} at n = {n} fits the budgets; cheapest failed option: {cheapest}"
    )))
}

/// First number in a resource message, used to rank failed options.
fn estimate(msg: &str) -> f64 {
    msg.split(|c: char| !c.is_ascii_digit())
        .find(|s| !s.is_empty())
        .and_then(|s| s.parse().ok())
        .unwrap_or(f64::INFINITY)
}
