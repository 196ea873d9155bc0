use std::fmt::Write as _;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sfcgroup::catalog::recognize_binary_polyhedral;
use sfcgroup::chartab::{self, CharacterTable};
use sfcgroup::groupspec::{parse, GroupExpr};
use sfcgroup::repclass::{rationality_counts, real_signature};
use sfcgroup::sfc::{
    analyze, invariant_checks, Certificate, ClassifyOptions, KnownStatusTable, RuleId, RuleTrace,
    SfcStatus,
};
use sfcgroup::{PermutationGroup, DEFAULT_ORDER_CAP};

use crate::cache::TableCache;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientRow {
    pub kernel_order: usize,
    pub quotient_id: String,
    pub in_star: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreRow {
    pub order: usize,
    pub quotient_id: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SfcSection {
    pub status: SfcStatus,
    pub rule: Option<RuleId>,
    pub certificate: Certificate,
    pub consistency_checks: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<RuleTrace>>,
}

/// Result of `classify` for one group. The field order is the JSON order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub spec: String,
    pub order: usize,
    pub class_count: usize,
    pub m_h: usize,
    pub eichler: bool,
    pub bp_quotients: Vec<QuotientRow>,
    pub core: Option<CoreRow>,
    pub qn_max: usize,
    pub whitehead_rank: usize,
    pub sfc: SfcSection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoReport {
    pub spec: String,
    pub canonical: String,
    pub degree: usize,
    pub order: usize,
    pub exponent: u64,
    pub class_count: usize,
    pub abelian: bool,
    pub center_order: usize,
    pub abelianization_order: usize,
    pub binary_polyhedral: Option<String>,
    pub real_signature: String,
    pub m_h: usize,
    pub eichler: bool,
    pub r_real: usize,
    pub r_rational: usize,
    pub whitehead_rank: usize,
}

/// Shared settings for building and analysing groups.
pub struct Analyzer {
    pub cap: usize,
    pub explain: bool,
    pub verify: bool,
    pub cache: Option<TableCache>,
    table: Option<KnownStatusTable>,
}

impl Default for Analyzer {
    fn default() -> Self {
        Analyzer {
            cap: DEFAULT_ORDER_CAP,
            explain: false,
            verify: false,
            cache: None,
            table: None,
        }
    }
}

impl Analyzer {
    pub fn with_table(mut self, table: KnownStatusTable) -> Self {
        self.table = Some(table);
        self
    }

    pub fn table(&self) -> &KnownStatusTable {
        self.table
            .as_ref()
            .unwrap_or_else(|| KnownStatusTable::builtin())
    }

    /// Parses and builds `spec`, attaching a cached character table if a
    /// cache is configured.
    pub fn build(&self, spec: &str) -> Result<(GroupExpr, PermutationGroup)> {
        let expr = parse(spec)?;
        let g = expr
            .build(self.cap)
            .with_context(|| format!("building {spec:?}"))?;
        if let Some(cache) = &self.cache {
            cache
                .attach(&expr.to_string(), &g)
                .with_context(|| format!("character table cache for {spec:?}"))?;
        }
        Ok((expr, g))
    }

    pub fn classify(&self, spec: &str) -> Result<Report> {
        let (expr, g) = self.build(spec)?;
        self.report(spec, &expr, &g)
            .with_context(|| format!("analysing {spec:?}"))
    }

    fn report(&self, spec: &str, expr: &GroupExpr, g: &PermutationGroup) -> Result<Report> {
        let options = ClassifyOptions {
            exhaustive: self.verify || ClassifyOptions::default().exhaustive,
        };
        let a = analyze(g, Some(expr), self.table(), options)?;
        let mut checks = a.verdict.consistency_checks.clone();
        if self.verify {
            for c in invariant_checks(g, &a)? {
                if !checks.contains(&c) {
                    checks.push(c);
                }
            }
        }
        let bp_quotients = a
            .bp_quotients
            .iter()
            .map(|q| QuotientRow {
                kernel_order: q.kernel.order(),
                quotient_id: q.id.to_string(),
                in_star: q.in_star,
            })
            .collect();
        let core = a.core.as_ref().map(|c| CoreRow {
            order: c.core.order(),
            quotient_id: a.core_id.clone().unwrap_or_else(|| "not recognized".into()),
        });
        Ok(Report {
            spec: spec.trim().to_string(),
            order: a.order,
            class_count: g.class_count()?,
            m_h: a.m_h,
            eichler: a.m_h == 0,
            bp_quotients,
            core,
            qn_max: a.qn.n,
            whitehead_rank: rationality_counts(g)?.whitehead_rank,
            sfc: SfcSection {
                status: a.verdict.status,
                rule: a.verdict.rule,
                certificate: a.verdict.certificate,
                consistency_checks: checks,
                trace: self.explain.then_some(a.verdict.trace),
            },
        })
    }

    pub fn info(&self, spec: &str) -> Result<InfoReport> {
        let (expr, g) = self.build(spec)?;
        let inner = || -> sfcgroup::Result<InfoReport> {
            let sig = real_signature(&g)?;
            let rc = rationality_counts(&g)?;
            Ok(InfoReport {
                spec: spec.trim().to_string(),
                canonical: expr.to_string(),
                degree: g.degree(),
                order: g.order()?,
                exponent: g.exponent()?,
                class_count: g.class_count()?,
                abelian: g.is_abelian()?,
                center_order: g.center()?.order(),
                abelianization_order: g.derived_data()?.abelianization_order,
                binary_polyhedral: recognize_binary_polyhedral(&g)?.map(|id| id.to_string()),
                real_signature: sig.to_string(),
                m_h: sig.m_h(),
                eichler: sig.m_h() == 0,
                r_real: rc.r_real,
                r_rational: rc.r_rational,
                whitehead_rank: rc.whitehead_rank,
            })
        };
        inner().with_context(|| format!("analysing {spec:?}"))
    }

    pub fn chartab(
        &self,
        spec: &str,
    ) -> Result<(PermutationGroup, std::sync::Arc<CharacterTable>)> {
        let (_, g) = self.build(spec)?;
        let t =
            chartab::character_table(&g).with_context(|| format!("character table of {spec:?}"))?;
        Ok((g, t))
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn rule_text(rule: Option<RuleId>) -> &'static str {
    rule.map_or("none", |r| r.as_str())
}

pub fn render_report(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "group            {}", r.spec);
    let _ = writeln!(s, "order            {}", r.order);
    let _ = writeln!(s, "classes          {}", r.class_count);
    let _ = writeln!(
        s,
        "m_H              {} (Eichler condition {})",
        r.m_h,
        if r.eichler { "holds" } else { "fails" }
    );
    let _ = writeln!(s, "whitehead rank   {}", r.whitehead_rank);
    let _ = writeln!(s, "bp quotients     {}", r.bp_quotients.len());
    for q in &r.bp_quotients {
        let star = if q.in_star {
            "  (one of the seven)"
        } else {
            ""
        };
        let _ = writeln!(
            s,
            "  kernel of order {:<5} -> {}{star}",
            q.kernel_order, q.quotient_id
        );
    }
    match &r.core {
        Some(c) => {
            let _ = writeln!(
                s,
                "core             order {}, quotient {}",
                c.order, c.quotient_id
            );
        }
        None => {
            let _ = writeln!(s, "core             none");
        }
    }
    let _ = writeln!(s, "qn_max           {}", r.qn_max);
    let _ = writeln!(
        s,
        "verdict          {} ({})",
        r.sfc.status,
        rule_text(r.sfc.rule)
    );

    let c = &r.sfc.certificate;
    let _ = writeln!(s, "certificate");
    let _ = writeln!(s, "  m_H = {}", c.m_h);
    if let Some(hit) = &c.table_entry {
        let _ = writeln!(
            s,
            "  table entry {} ({}, source {})",
            hit.label, hit.status, hit.source
        );
    }
    if let Some(fq) = &c.failing_quotient {
        let _ = writeln!(
            s,
            "  failing quotient {} by a kernel of order {} (source {})",
            fq.label, fq.kernel_order, fq.source
        );
    }
    if let (Some(order), Some(q), Some(m)) = (c.core_order, &c.core_quotient, c.core_m_h) {
        let _ = writeln!(
            s,
            "  core of order {order}, G/core = {q}, m_H(G/core) = {m}"
        );
    }
    if !c.qn_witness_kernel_orders.is_empty() {
        let orders: Vec<String> = c
            .qn_witness_kernel_orders
            .iter()
            .map(|o| o.to_string())
            .collect();
        let _ = writeln!(s, "  disjoint family kernel orders: {}", orders.join(", "));
    }
    if !c.product_factors.is_empty() {
        let _ = writeln!(s, "  product factors: {}", c.product_factors.join(" | "));
    }
    if !r.sfc.consistency_checks.is_empty() {
        let _ = writeln!(s, "checks");
        for check in &r.sfc.consistency_checks {
            let _ = writeln!(s, "  {check}");
        }
    }
    if let Some(trace) = &r.sfc.trace {
        let _ = writeln!(s, "rules");
        for t in trace {
            let mark = match (t.applies, t.status) {
                (true, Some(st)) => st.to_string(),
                _ => "-".to_string(),
            };
            let _ = writeln!(s, "  {:<20} {:<10} {}", t.rule.as_str(), mark, t.detail);
        }
    }
    s
}

pub fn render_info(i: &InfoReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "group            {}", i.spec);
    let _ = writeln!(s, "canonical        {}", i.canonical);
    let _ = writeln!(s, "degree           {}", i.degree);
    let _ = writeln!(s, "order            {}", i.order);
    let _ = writeln!(s, "exponent         {}", i.exponent);
    let _ = writeln!(s, "classes          {}", i.class_count);
    let _ = writeln!(s, "abelian          {}", i.abelian);
    let _ = writeln!(s, "center order     {}", i.center_order);
    let _ = writeln!(s, "abelianization   {}", i.abelianization_order);
    if let Some(id) = &i.binary_polyhedral {
        let _ = writeln!(s, "binary polyhedral {id}");
    }
    let _ = writeln!(s, "R[G]             {}", i.real_signature);
    let _ = writeln!(s, "m_H              {}", i.m_h);
    let _ = writeln!(
        s,
        "Eichler          {}",
        if i.eichler { "holds" } else { "fails" }
    );
    let _ = writeln!(s, "real irreps      {}", i.r_real);
    let _ = writeln!(s, "rational irreps  {}", i.r_rational);
    let _ = writeln!(s, "whitehead rank   {}", i.whitehead_rank);
    s
}

/// Plain-text character table: one column per class, then the indicator.
pub fn render_table(t: &CharacterTable) -> String {
    let field = t.field();
    let k = t.class_count();
    let mut cells: Vec<Vec<String>> = Vec::with_capacity(k + 2);
    let mut head = vec!["order".to_string()];
    head.extend(t.class_element_orders.iter().map(|o| o.to_string()));
    head.push("FS".into());
    cells.push(head);
    let mut sizes = vec!["size".to_string()];
    sizes.extend(t.class_sizes.iter().map(|o| o.to_string()));
    sizes.push(String::new());
    cells.push(sizes);
    for (r, row) in t.values.iter().enumerate() {
        let mut line = vec![format!("X.{}", r + 1)];
        line.extend(row.iter().map(|v| v.render(&field)));
        line.push(match t.indicators[r] {
            1 => "+".into(),
            -1 => "-".into(),
            _ => "o".into(),
        });
        cells.push(line);
    }
    let widths: Vec<usize> = (0..k + 2)
        .map(|c| {
            cells
                .iter()
                .map(|l| l[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut s = String::new();
    for line in &cells {
        let parts: Vec<String> = line
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:>w$}"))
            .collect();
        let _ = writeln!(s, "{}", parts.join("  ").trim_end());
    }
    s
}
