//! Inequivalent monotone functions by averaging fixed-point counts over
//! cycle types: `r_n = (1/n!) * sum of mu(t) * phi(t)`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::time::Duration;

use serde_json::json;

use crate::error::{Error, Result};
use crate::fixpoint::{phi, Budgets, Strategy};
use crate::mbf::enumerate_dn;
use crate::perm::{factorial, partitions_table_order, CycleType};

/// Published Dedekind numbers `d_0..d_8`.
pub const DEDEKIND: [u128; 9] = [
    2,
    3,
    6,
    20,
    168,
    7581,
    7828354,
    2414682040998,
    56130437228687557907788,
];

/// Published counts of inequivalent monotone functions `r_0..r_8`.
pub const INEQUIVALENT: [u128; 9] = [2, 3, 5, 10, 30, 210, 16353, 490013148, 1392195548889993358];

/// Largest `n` whose identity row is re-derived when loading constants.
const REDERIVE_UP_TO: u8 = 5;

/// Externally supplied values such as `d8`, loaded from a JSON object of
/// decimal strings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnownConstants {
    values: BTreeMap<String, u128>,
}

fn dedekind_label(label: &str) -> Option<u8> {
    let n: u8 = label.strip_prefix('d')?.parse().ok()?;
    (n <= 8).then_some(n)
}

impl KnownConstants {
    pub fn empty() -> Self {
        KnownConstants::default()
    }

    /// Parses and validates: each `dN` must be a decimal string and agree
    /// with the published value; `d0..d5` are also recomputed.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s)
            .map_err(|e| Error::Config(format!("constants file is not valid JSON: {e}")))?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Config("constants file must hold a JSON object".into()))?;
        let mut values = BTreeMap::new();
        for (label, raw) in obj {
            let n = dedekind_label(label)
                .ok_or_else(|| Error::Config(format!("unknown constant {label:?}")))?;
            let text = raw.as_str().ok_or_else(|| {
                Error::Config(format!("{label} must be a decimal string, got {raw}"))
            })?;
            let value: u128 = text.parse().map_err(|_| {
                Error::Config(format!("{label} = {text:?} is not a decimal integer"))
            })?;
            let expected = if n <= REDERIVE_UP_TO {
                enumerate_dn(n)?.len() as u128
            } else {
                DEDEKIND[n as usize]
            };
            if value != expected {
                return Err(Error::Config(format!(
                    "{label} = {value} contradicts the known value {expected}"
                )));
            }
            values.insert(label.clone(), value);
        }
        Ok(KnownConstants { values })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn get(&self, label: &str) -> Option<u128> {
        self.values.get(label).copied()
    }

    pub fn dedekind(&self, n: u8) -> Option<u128> {
        self.get(&format!("d{n}"))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideRow {
    pub cycle_type: CycleType,
    pub mu: u128,
    pub phi: u128,
    pub strategy: Strategy,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideReport {
    pub n: u8,
    pub rows: Vec<BurnsideRow>,
    /// `sum of mu * phi`.
    pub total: u128,
    pub r: u128,
}

/// `r_n` with one row per cycle type, in the published table order.
///
/// The identity row is `d_n`: computed for `n <= 7` (and checked against
/// `constants` when present), read from `constants` for `n = 8`.
pub fn compute_r(n: u8, constants: &KnownConstants, budgets: &Budgets) -> Result<BurnsideReport> {
    compute_r_with(n, constants, budgets, |_| {})
}

/// As [`compute_r`], calling `on_row` after each row.
pub fn compute_r_with(
    n: u8,
    constants: &KnownConstants,
    budgets: &Budgets,
    mut on_row: impl FnMut(&BurnsideRow),
) -> Result<BurnsideReport> {
    let mut rows = Vec::new();
    for t in partitions_table_order(n)? {
        let row = if t.is_identity() && n == 8 {
            let d = constants.dedekind(8).ok_or_else(|| {
                Error::Config("r_8 needs d8 from a constants file (--constants)".into())
            })?;
            BurnsideRow {
                mu: t.mu(),
                cycle_type: t,
                phi: d,
                strategy: Strategy::KnownConstant,
                elapsed: Duration::ZERO,
            }
        } else {
            let res = phi(&t, Strategy::Auto, budgets)?;
            if t.is_identity() {
                if let Some(d) = constants.dedekind(n) {
                    if d != res.phi {
                        return Err(Error::Integrity(format!(
                            "computed d{n} = {} but the constants file says {d}",
                            res.phi
                        )));
                    }
                }
            }
            BurnsideRow {
                mu: t.mu(),
                cycle_type: t,
                phi: res.phi,
                strategy: res.strategy,
                elapsed: res.elapsed,
            }
        };
        on_row(&row);
        rows.push(row);
    }
    let mu_sum: u128 = rows.iter().map(|r| r.mu).sum();
    if mu_sum != factorial(n) {
        return Err(Error::Internal(format!(
            "mu values sum to {mu_sum}, not {n}!"
        )));
    }
    let total: u128 = rows.iter().map(|r| r.mu * r.phi).sum();
    let order = factorial(n);
    if !total.is_multiple_of(order) {
        return Err(Error::Integrity(format!(
            "weighted sum {total} is not divisible by {n}! = {order}"
        )));
    }
    Ok(BurnsideReport {
        n,
        rows,
        total,
        r: total / order,
    })
}

impl BurnsideReport {
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                json!({
                    "i": i + 1,
                    "type": r.cycle_type.notation(),
                    "mu": r.mu.to_string(),
                    "phi": r.phi.to_string(),
                    "strategy": r.strategy.label(),
                    "elapsed_ms": r.elapsed.as_millis() as u64,
                })
            })
            .collect();
        json!({
            "n": self.n,
            "rows": rows,
            "total": self.total.to_string(),
            "r": self.r.to_string(),
        })
    }

    /// Columns `i`, `π_i`, `μ_i`, `φ(π_i)`, followed by the sum and `r_n`.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| i | π_i | μ_i | φ(π_i) |\n|---:|:---|---:|---:|\n");
        for (i, r) in self.rows.iter().enumerate() {
            out += &format!("| {} | {} | {} | {} |\n", i + 1, r.cycle_type, r.mu, r.phi);
        }
        out += &format!(
            "\nΣ μ_i φ(π_i) = {}\n\nr_{} = {}\n",
            self.total, self.n, self.r
        );
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,type,mu,phi,strategy,elapsed_ms\n");
        for (i, r) in self.rows.iter().enumerate() {
            out += &format!(
                "{},{},{},{},{},{}\n",
                i + 1,
                r.cycle_type,
                r.mu,
                r.phi,
                r.strategy,
                r.elapsed.as_millis()
            );
        }
        out += &format!("total,,,{},,\nr,,,{},,\n", self.total, self.r);
        out
    }
}

/// Expected `(type, mu, phi)` rows and `r_n` to compare a report against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceTable {
    pub n: u8,
    pub rows: Vec<(String, u128, u128)>,
    pub r: u128,
}

impl ReferenceTable {
    pub fn from_report(report: &BurnsideReport) -> Self {
        ReferenceTable {
            n: report.n,
            rows: report
                .rows
                .iter()
                .map(|r| (r.cycle_type.notation(), r.mu, r.phi))
                .collect(),
            r: report.r,
        }
    }

    /// Bundled table for `n = 7` or `n = 8`.
    pub fn bundled(n: u8) -> Option<Self> {
        let (rows, r): (&[(&str, u128, u128)], u128) = match n {
            7 => (&TABLE_N7, INEQUIVALENT[7]),
            8 => (&TABLE_N8, INEQUIVALENT[8]),
            _ => return None,
        };
        Some(ReferenceTable {
            n,
            rows: rows
                .iter()
                .map(|&(t, m, p)| (t.to_string(), m, p))
                .collect(),
            r,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    /// Cycle type in table notation, or `total`.
    pub row: String,
    pub field: &'static str,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: expected {}, found {}",
            self.row, self.field, self.expected, self.found
        )
    }
}

/// Every row, `mu`, `phi` and total on which `report` and `reference` differ.
pub fn verify_report(report: &BurnsideReport, reference: &ReferenceTable) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    let computed: BTreeMap<String, &BurnsideRow> = report
        .rows
        .iter()
        .map(|r| (r.cycle_type.notation(), r))
        .collect();
    for (ty, mu, phi) in &reference.rows {
        let Some(row) = computed.get(ty) else {
            out.push(Discrepancy {
                row: ty.clone(),
                field: "row",
                expected: "present".into(),
                found: "missing".into(),
            });
            continue;
        };
        if row.mu != *mu {
            out.push(Discrepancy {
                row: ty.clone(),
                field: "mu",
                expected: mu.to_string(),
                found: row.mu.to_string(),
            });
        }
        if row.phi != *phi {
            out.push(Discrepancy {
                row: ty.clone(),
                field: "phi",
                expected: phi.to_string(),
                found: row.phi.to_string(),
            });
        }
    }
    for ty in computed.keys() {
        if !reference.rows.iter().any(|(t, _, _)| t == ty) {
            out.push(Discrepancy {
                row: ty.clone(),
                field: "row",
                expected: "absent".into(),
                found: "present".into(),
            });
        }
    }
    let expected_total = reference.r * factorial(reference.n);
    if report.total != expected_total || report.r != reference.r {
        out.push(Discrepancy {
            row: "total".into(),
            field: "r",
            expected: format!("{} (sum {expected_total})", reference.r),
            found: format!("{} (sum {})", report.r, report.total),
        });
    }
    out
}

const TABLE_N7: [(&str, u128, u128); 15] = [
    ("(1)", 1, 2414682040998),
    ("(12)", 21, 2208001624),
    ("(123)", 70, 2068224),
    ("(1234)", 210, 60312),
    ("(12345)", 504, 1548),
    ("(123456)", 840, 766),
    ("(1234567)", 720, 101),
    ("(12)(34)", 105, 67922470),
    ("(12)(345)", 420, 59542),
    ("(12)(3456)", 630, 26878),
    ("(12)(34567)", 504, 264),
    ("(123)(456)", 280, 69264),
    ("(123)(4567)", 420, 294),
    ("(12)(34)(56)", 105, 12015832),
    ("(12)(34)(567)", 210, 10192),
];

const TABLE_N8: [(&str, u128, u128); 22] = [
    ("(1)", 1, 56130437228687557907788),
    ("(12)", 28, 101627867809333596),
    ("(123)", 112, 262808891710),
    ("(1234)", 420, 424234996),
    ("(12345)", 1344, 531708),
    ("(123456)", 3360, 144320),
    ("(1234567)", 5760, 3858),
    ("(12345678)", 5040, 2364),
    ("(12)(34)", 210, 182755441509724),
    ("(12)(345)", 1120, 401622018),
    ("(12)(3456)", 2520, 93994196),
    ("(12)(34567)", 4032, 21216),
    ("(12)(345678)", 3360, 70096),
    ("(123)(456)", 1120, 535426780),
    ("(123)(4567)", 3360, 25168),
    ("(123)(45678)", 2688, 870),
    ("(1234)(5678)", 1260, 3211276),
    ("(12)(34)(56)", 420, 7377670895900),
    ("(12)(34)(567)", 1680, 16380370),
    ("(12)(34)(5678)", 1260, 37834164),
    ("(12)(345)(678)", 1120, 3607596),
    ("(12)(34)(56)(78)", 105, 2038188253420),
];
