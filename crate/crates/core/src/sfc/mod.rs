//! Deciding whether `Z[G]` has stably free cancellation.
//!
//! The decision is a ladder of rules, each a known sufficient condition for
//! the property or for its failure:
//!
//! | id | hypothesis | verdict |
//! |----|------------|---------|
//! | `R0-known-table` | `G` is in the known-status table | table status |
//! | `R1-eichler` | `G` has no binary polyhedral quotient | has |
//! | `R2-quotient-failure` | some quotient of `G` is listed as failing | fails |
//! | `R3-core-star` | `G` modulo its binary polyhedral core is one of the seven groups | has |
//! | `R4-h-multiplicity` | `m_H(G) ≤ 1` | has |
//! | `R5-core-unit-rep` | the core quotient is a table entry with the unit-representation flag | its status |
//! | `R6-star-product` | `G = H × K` as written, `H` one of the seven, `K` with no binary polyhedral quotient and no subgroup of index 2 | has |
//! | `R7-tt-it-product` | `G` is written as a product of copies of `Ttilde` and `Itilde` | has |
//!
//! Otherwise the status is unknown. Rules R6 and R7 look only at how the
//! group was written down, never at the abstract group.

pub mod checks;
pub mod quotients;
pub mod table;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use checks::{faithful_quaternionic_count, invariant_checks, quotient_sum};
pub use quotients::{binary_polyhedral_quotients, bp_core, qn_max, BpCore, BpQuotient, QnWitness};
pub use table::{KnownStatusTable, TableEntry, TableHit};

use crate::catalog::recognize_binary_polyhedral;
use crate::error::{Error, Result};
use crate::groupspec::GroupExpr;
use crate::permgroup::PermutationGroup;
use crate::repclass::h_multiplicity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SfcStatus {
    HasSfc,
    FailsSfc,
    Unknown,
}

impl SfcStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SfcStatus::HasSfc => "has_sfc",
            SfcStatus::FailsSfc => "fails_sfc",
            SfcStatus::Unknown => "unknown",
        }
    }
}

impl fmt::Display for SfcStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    #[serde(rename = "R0-known-table")]
    KnownTable,
    #[serde(rename = "R1-eichler")]
    Eichler,
    #[serde(rename = "R2-quotient-failure")]
    QuotientFailure,
    #[serde(rename = "R3-core-star")]
    CoreStar,
    #[serde(rename = "R4-h-multiplicity")]
    HMultiplicity,
    #[serde(rename = "R5-core-unit-rep")]
    CoreUnitRep,
    #[serde(rename = "R6-star-product")]
    StarProduct,
    #[serde(rename = "R7-tt-it-product")]
    TtItProduct,
}

impl RuleId {
    pub const ALL: [RuleId; 8] = [
        RuleId::KnownTable,
        RuleId::Eichler,
        RuleId::QuotientFailure,
        RuleId::CoreStar,
        RuleId::HMultiplicity,
        RuleId::CoreUnitRep,
        RuleId::StarProduct,
        RuleId::TtItProduct,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RuleId::KnownTable => "R0-known-table",
            RuleId::Eichler => "R1-eichler",
            RuleId::QuotientFailure => "R2-quotient-failure",
            RuleId::CoreStar => "R3-core-star",
            RuleId::HMultiplicity => "R4-h-multiplicity",
            RuleId::CoreUnitRep => "R5-core-unit-rep",
            RuleId::StarProduct => "R6-star-product",
            RuleId::TtItProduct => "R7-tt-it-product",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    /// Evaluate every rule and check that the applicable ones agree,
    /// instead of stopping at the first one that applies. On by default in
    /// builds with debug assertions.
    pub exhaustive: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            exhaustive: cfg!(debug_assertions),
        }
    }
}

/// One evaluated rule: whether its hypothesis holds and why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleTrace {
    pub rule: RuleId,
    pub applies: bool,
    pub status: Option<SfcStatus>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailingQuotient {
    pub kernel_order: usize,
    pub label: String,
    pub source: String,
}

/// Data that lets the deciding rule be replayed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub m_h: usize,
    pub table_entry: Option<TableHit>,
    pub failing_quotient: Option<FailingQuotient>,
    pub core_order: Option<usize>,
    pub core_quotient: Option<String>,
    pub core_m_h: Option<usize>,
    pub qn_witness_kernel_orders: Vec<usize>,
    pub product_factors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SfcVerdict {
    pub status: SfcStatus,
    /// The first rule of the ladder that applies.
    pub rule: Option<RuleId>,
    pub certificate: Certificate,
    pub consistency_checks: Vec<String>,
    pub trace: Vec<RuleTrace>,
}

impl SfcVerdict {
    pub fn rule_name(&self) -> &'static str {
        self.rule.map_or("none", |r| r.as_str())
    }
}

/// Everything the rules look at, plus the verdict.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub order: usize,
    pub m_h: usize,
    pub bp_quotients: Vec<BpQuotient>,
    pub core: Option<BpCore>,
    /// Name of the core quotient: a binary polyhedral id, a table label, or
    /// "not recognized".
    pub core_id: Option<String>,
    pub qn: QnWitness,
    pub verdict: SfcVerdict,
}

/// Top-level factors of a product expression, with nested products
/// flattened.
pub fn flatten_product(expr: &GroupExpr) -> Vec<&GroupExpr> {
    match expr {
        GroupExpr::Product(parts) => parts.iter().flat_map(flatten_product).collect(),
        other => vec![other],
    }
}

struct Engine<'a> {
    g: &'a PermutationGroup,
    expr: Option<&'a GroupExpr>,
    table: &'a KnownStatusTable,
    m_h: usize,
    bps: Vec<BpQuotient>,
    core: Option<BpCore>,
    core_table: Option<TableHit>,
    certificate: Certificate,
}

struct Outcome {
    applies: bool,
    status: Option<SfcStatus>,
    detail: String,
}

impl Outcome {
    fn no(detail: impl Into<String>) -> Self {
        Outcome {
            applies: false,
            status: None,
            detail: detail.into(),
        }
    }

    fn yes(status: SfcStatus, detail: impl Into<String>) -> Self {
        Outcome {
            applies: true,
            status: Some(status),
            detail: detail.into(),
        }
    }
}

impl<'a> Engine<'a> {
    fn evaluate(&mut self, rule: RuleId) -> Result<Outcome> {
        match rule {
            RuleId::KnownTable => self.known_table(),
            RuleId::Eichler => Ok(self.eichler()),
            RuleId::QuotientFailure => self.quotient_failure(),
            RuleId::CoreStar => self.core_star(),
            RuleId::HMultiplicity => Ok(self.h_multiplicity()),
            RuleId::CoreUnitRep => Ok(self.core_unit_rep()),
            RuleId::StarProduct => self.star_product(),
            RuleId::TtItProduct => Ok(self.tt_it_product()),
        }
    }

    fn known_table(&mut self) -> Result<Outcome> {
        Ok(match self.table.lookup(self.g)? {
            Some(hit) => {
                let detail = format!("G is the table entry {} ({})", hit.label, hit.source);
                let status = hit.status;
                self.certificate.table_entry = Some(hit);
                Outcome::yes(status, detail)
            }
            None => Outcome::no("G matches no table entry"),
        })
    }

    fn eichler(&self) -> Outcome {
        if self.bps.is_empty() {
            Outcome::yes(SfcStatus::HasSfc, "no binary polyhedral quotient (m_H = 0)")
        } else {
            Outcome::no(format!("{} binary polyhedral quotient(s)", self.bps.len()))
        }
    }

    fn quotient_failure(&mut self) -> Result<Outcome> {
        let g = self.g;
        let order = g.order()?;
        // Quotients of an abelian group are abelian; skip the lattice when no
        // entry could match one.
        if g.is_abelian()? && !self.table.has_abelian_entry()? {
            return Ok(Outcome::no(
                "G is abelian and the table lists no abelian group",
            ));
        }
        for n in g.normal_subgroups()? {
            if n.order() == order || !self.table.may_match_order(order / n.order()) {
                continue;
            }
            if let Some(hit) = self.table.lookup(&g.quotient(n)?)? {
                if hit.status == SfcStatus::FailsSfc {
                    let detail = format!(
                        "G/N is the failing entry {} for a normal N of order {}",
                        hit.label,
                        n.order()
                    );
                    self.certificate.failing_quotient = Some(FailingQuotient {
                        kernel_order: n.order(),
                        label: hit.label,
                        source: hit.source,
                    });
                    return Ok(Outcome::yes(SfcStatus::FailsSfc, detail));
                }
            }
        }
        Ok(Outcome::no("no quotient is listed as failing"))
    }

    fn core_star(&self) -> Result<Outcome> {
        let Some(core) = &self.core else {
            return Ok(Outcome::no("no binary polyhedral quotient, so no core"));
        };
        Ok(match recognize_binary_polyhedral(&core.quotient)? {
            Some(id) if id.is_star() => Outcome::yes(
                SfcStatus::HasSfc,
                format!(
                    "G/core is {id}, one of the seven groups (core order {})",
                    core.core.order()
                ),
            ),
            Some(id) => Outcome::no(format!("G/core is {id}, not one of the seven groups")),
            None => Outcome::no(format!(
                "G/core (order {}) is not binary polyhedral",
                core.quotient.order()?
            )),
        })
    }

    fn h_multiplicity(&self) -> Outcome {
        if self.m_h <= 1 {
            Outcome::yes(SfcStatus::HasSfc, format!("m_H(G) = {} <= 1", self.m_h))
        } else {
            Outcome::no(format!("m_H(G) = {} > 1", self.m_h))
        }
    }

    fn core_unit_rep(&self) -> Outcome {
        match &self.core_table {
            Some(hit) if hit.unit_rep => Outcome::yes(
                hit.status,
                format!(
                    "G/core is the entry {} with the unit-representation flag",
                    hit.label
                ),
            ),
            Some(hit) => Outcome::no(format!(
                "G/core is the entry {} without the unit-representation flag",
                hit.label
            )),
            None => Outcome::no("G/core is not a table entry"),
        }
    }

    fn star_product(&self) -> Result<Outcome> {
        let Some(expr) = self.expr else {
            return Ok(Outcome::no("no construction provenance"));
        };
        let factors = flatten_product(expr);
        if factors.len() < 2 {
            return Ok(Outcome::no("not written as a direct product"));
        }
        let cap = self.g.cap();
        for (i, f) in factors.iter().enumerate() {
            let h = f.build(cap)?;
            let Some(id) = recognize_binary_polyhedral(&h)? else {
                continue;
            };
            if !id.is_star() {
                continue;
            }
            let rest: Vec<GroupExpr> = factors
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, e)| (*e).clone())
                .collect();
            let k_expr = if rest.len() == 1 {
                rest.into_iter().next().unwrap()
            } else {
                GroupExpr::Product(rest)
            };
            let k = k_expr.build(cap)?;
            let k_bp = binary_polyhedral_quotients(&k)?;
            let k_index_two = k.derived_data()?.has_index_two_normal;
            if k_bp.is_empty() && !k_index_two {
                return Ok(Outcome::yes(
                    SfcStatus::HasSfc,
                    format!(
                        "G = {id} x ({k_expr}); the cofactor has no binary polyhedral quotient and no index-2 subgroup"
                    ),
                ));
            }
        }
        Ok(Outcome::no(
            "no factor split H x K with H one of the seven groups and K admissible",
        ))
    }

    fn tt_it_product(&self) -> Outcome {
        let Some(expr) = self.expr else {
            return Outcome::no("no construction provenance");
        };
        let factors = flatten_product(expr);
        let all = factors.len() >= 2
            && factors.iter().all(|f| {
                matches!(
                    f,
                    GroupExpr::Ttilde | GroupExpr::Itilde | GroupExpr::Sl2(3) | GroupExpr::Sl2(5)
                )
            });
        if all {
            Outcome::yes(
                SfcStatus::HasSfc,
                format!(
                    "written as a product of {} copies of Ttilde and Itilde",
                    factors.len()
                ),
            )
        } else {
            Outcome::no("not a product of copies of Ttilde and Itilde")
        }
    }
}

/// Runs the rule ladder on `g`. `expr` is the expression `g` was built
/// from, if any; only rules R6 and R7 use it.
pub fn analyze(
    g: &PermutationGroup,
    expr: Option<&GroupExpr>,
    table: &KnownStatusTable,
    options: ClassifyOptions,
) -> Result<Analysis> {
    let order = g.order()?;
    let m_h = h_multiplicity(g)?;
    let bps = binary_polyhedral_quotients(g)?;
    let mut consistency_checks = Vec::new();
    if bps.is_empty() != (m_h == 0) {
        return Err(Error::internal(format!(
            "{} binary polyhedral quotients but m_H = {m_h}",
            bps.len()
        )));
    }
    consistency_checks.push(format!(
        "binary polyhedral quotients: {}, m_H = {m_h}; Eichler condition {}",
        bps.len(),
        if m_h == 0 { "holds" } else { "fails" }
    ));
    let core = if bps.is_empty() {
        None
    } else {
        let c = bp_core(g, &bps)?;
        consistency_checks.push(format!("m_H(G/core) = m_H(G) = {}", c.m_h));
        Some(c)
    };
    let qn = qn_max(g, &bps)?;
    let (core_id, core_table) = match &core {
        Some(c) => {
            let hit = table.lookup(&c.quotient)?;
            let id = match recognize_binary_polyhedral(&c.quotient)? {
                Some(id) => id.to_string(),
                None => hit
                    .as_ref()
                    .map_or_else(|| "not recognized".to_string(), |h| h.label.clone()),
            };
            (Some(id), hit)
        }
        None => (None, None),
    };

    let mut certificate = Certificate {
        m_h,
        core_order: core.as_ref().map(|c| c.core.order()),
        core_quotient: core_id.clone(),
        core_m_h: core.as_ref().map(|c| c.m_h),
        qn_witness_kernel_orders: qn.members.iter().map(|&i| bps[i].kernel.order()).collect(),
        ..Certificate::default()
    };
    if let Some(e) = expr {
        let factors = flatten_product(e);
        if factors.len() > 1 {
            certificate.product_factors = factors.iter().map(|f| f.to_string()).collect();
        }
    }

    let mut engine = Engine {
        g,
        expr,
        table,
        m_h,
        bps,
        core,
        core_table,
        certificate,
    };
    let mut trace = Vec::new();
    let mut decided: Option<(RuleId, SfcStatus)> = None;
    for rule in RuleId::ALL {
        if decided.is_some() && !options.exhaustive {
            break;
        }
        let out = engine.evaluate(rule)?;
        if let Some(status) = out.status.filter(|_| out.applies) {
            match decided {
                None => decided = Some((rule, status)),
                Some((first, s)) if s != status => {
                    return Err(Error::RuleConflict(format!(
                        "{first} gives {s} but {rule} gives {status}"
                    )))
                }
                Some(_) => {}
            }
        }
        trace.push(RuleTrace {
            rule,
            applies: out.applies,
            status: out.status,
            detail: out.detail,
        });
    }
    let applying: Vec<&str> = trace
        .iter()
        .filter(|t| t.applies)
        .map(|t| t.rule.as_str())
        .collect();
    if options.exhaustive && applying.len() > 1 {
        consistency_checks.push(format!("rules {} agree", applying.join(", ")));
    }

    let (rule, status) = match decided {
        Some((r, s)) => (Some(r), s),
        None => (None, SfcStatus::Unknown),
    };
    let Engine {
        bps,
        core,
        certificate,
        ..
    } = engine;
    Ok(Analysis {
        order,
        m_h,
        bp_quotients: bps,
        core,
        core_id,
        qn,
        verdict: SfcVerdict {
            status,
            rule,
            certificate,
            consistency_checks,
            trace,
        },
    })
}

/// Verdict only; see [`analyze`].
pub fn classify(
    g: &PermutationGroup,
    expr: Option<&GroupExpr>,
    table: &KnownStatusTable,
    options: ClassifyOptions,
) -> Result<SfcVerdict> {
    Ok(analyze(g, expr, table, options)?.verdict)
}

#[cfg(test)]
mod tests;
