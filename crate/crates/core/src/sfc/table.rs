//! Groups with a known cancellation status, read from a small text file.

use std::path::Path;

use once_cell::sync::{Lazy, OnceCell};
use serde::{Deserialize, Serialize};

use super::SfcStatus;
use crate::catalog::{recognize_binary_polyhedral, BinaryPolyhedralId};
use crate::error::{Error, Result};
use crate::groupspec::{parse, GroupExpr};
use crate::permgroup::{PermutationGroup, DEFAULT_ORDER_CAP};

const DEFAULT_TABLE: &str = include_str!("../../data/known_status.txt");

/// Source tag of the built-in rule for dicyclic groups `Q4n`, `n ≥ 6`.
pub const DICYCLIC_FAMILY_SOURCE: &str = "bpg-classification";

#[derive(Debug)]
pub struct TableEntry {
    pub spec: String,
    pub status: SfcStatus,
    pub source: String,
    pub unit_rep: bool,
    expr: GroupExpr,
    group: OnceCell<PermutationGroup>,
}

impl TableEntry {
    pub fn expr(&self) -> &GroupExpr {
        &self.expr
    }

    pub fn group(&self) -> Result<&PermutationGroup> {
        self.group.get_or_try_init(|| {
            let cap = self
                .expr
                .order_hint()
                .map_or(DEFAULT_ORDER_CAP, |o| (o as usize).max(DEFAULT_ORDER_CAP));
            self.expr.build(cap)
        })
    }
}

/// A table match for a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableHit {
    pub label: String,
    pub status: SfcStatus,
    pub source: String,
    pub unit_rep: bool,
}

#[derive(Debug)]
pub struct KnownStatusTable {
    entries: Vec<TableEntry>,
}

static BUILTIN: Lazy<KnownStatusTable> =
    Lazy::new(|| KnownStatusTable::parse(DEFAULT_TABLE).expect("embedded table is well formed"));

impl KnownStatusTable {
    /// The table shipped with the crate.
    pub fn builtin() -> &'static KnownStatusTable {
        &BUILTIN
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Table {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        Self::parse(&text)
    }

    /// Parses lines `spec, yes|no, source, 0|1`; blank lines and `#`
    /// comments are skipped. The spec may itself contain commas, so fields
    /// are split from the right.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Table {
                line: i + 1,
                message,
            };
            let fields: Vec<&str> = line.rsplitn(4, ',').map(str::trim).collect();
            let [unit_rep, source, status, spec] = fields[..] else {
                return Err(err("expected 4 comma-separated fields".into()));
            };
            let status = match status {
                "yes" => SfcStatus::HasSfc,
                "no" => SfcStatus::FailsSfc,
                other => return Err(err(format!("status must be yes or no, got {other:?}"))),
            };
            let unit_rep = match unit_rep {
                "1" => true,
                "0" => false,
                other => return Err(err(format!("unit_rep must be 0 or 1, got {other:?}"))),
            };
            if source.is_empty() {
                return Err(err("empty source tag".into()));
            }
            let expr = parse(spec).map_err(|e| err(e.to_string()))?;
            entries.push(TableEntry {
                spec: spec.to_string(),
                status,
                source: source.to_string(),
                unit_rep,
                expr,
                group: OnceCell::new(),
            });
        }
        Ok(KnownStatusTable { entries })
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    /// Does any explicit entry describe an abelian group? The dicyclic
    /// family rule never matches one.
    pub fn has_abelian_entry(&self) -> Result<bool> {
        for e in &self.entries {
            if e.group()?.is_abelian()? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Cheap pre-filter: could a group of this order have a table entry?
    pub fn may_match_order(&self, order: usize) -> bool {
        (order >= 24 && order.is_multiple_of(4))
            || self
                .entries
                .iter()
                .any(|e| e.expr.order_hint().is_none_or(|o| o == order as u128))
    }

    /// Looks `g` up by isomorphism against the entries, then against the
    /// built-in dicyclic family rule.
    pub fn lookup(&self, g: &PermutationGroup) -> Result<Option<TableHit>> {
        let order = g.order()?;
        for e in &self.entries {
            if e.expr.order_hint().is_some_and(|o| o != order as u128) {
                continue;
            }
            let h = e.group()?;
            if h.order()? == order && g.is_isomorphic(h)? {
                return Ok(Some(TableHit {
                    label: e.spec.clone(),
                    status: e.status,
                    source: e.source.clone(),
                    unit_rep: e.unit_rep,
                }));
            }
        }
        if order >= 24 && order % 4 == 0 {
            if let Some(id @ BinaryPolyhedralId::Dicyclic { n }) = recognize_binary_polyhedral(g)? {
                if n >= 6 {
                    return Ok(Some(TableHit {
                        label: id.to_string(),
                        status: SfcStatus::FailsSfc,
                        source: DICYCLIC_FAMILY_SOURCE.to_string(),
                        unit_rep: false,
                    }));
                }
            }
        }
        Ok(None)
    }
}
