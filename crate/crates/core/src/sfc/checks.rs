//! Invariants that tie the rule engine back to the character theory. Each
//! check either passes with a short description or fails the whole run with
//! an internal error.

use crate::catalog::recognize_binary_polyhedral;
use crate::chartab::{self, verify_table, MAX_TABLE_CLASSES};
use crate::error::{Error, Result};
use crate::permgroup::PermutationGroup;

use super::{Analysis, SfcStatus};

/// Number of faithful degree-2 characters with indicator −1.
pub fn faithful_quaternionic_count(g: &PermutationGroup) -> Result<usize> {
    let t = chartab::character_table(g)?;
    Ok((0..t.class_count())
        .filter(|&r| t.degrees[r] == 2 && t.indicators[r] == -1 && t.is_faithful_row(r))
        .count())
}

/// `m_H(G)` rebuilt from the quotient list: every quaternionic character
/// of degree 2 factors faithfully through exactly one binary polyhedral
/// quotient.
pub fn quotient_sum(g: &PermutationGroup, analysis: &Analysis) -> Result<usize> {
    let mut sum = 0;
    for q in &analysis.bp_quotients {
        sum += faithful_quaternionic_count(&g.quotient(&q.kernel)?)?;
    }
    Ok(sum)
}

/// Runs every check that applies to `g` and returns their descriptions.
pub fn invariant_checks(g: &PermutationGroup, analysis: &Analysis) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let fail = |msg: String| Err(Error::internal(msg));

    if g.class_count()? <= MAX_TABLE_CLASSES {
        let t = chartab::character_table(g)?;
        let v = verify_table(&t, g)?;
        if !v.ok {
            return fail(format!("character table: {}", v.failures.join("; ")));
        }
        out.push("character table passes exact orthogonality and counting checks".into());
    }

    if analysis.bp_quotients.is_empty() != (analysis.m_h == 0) {
        return fail(format!(
            "{} binary polyhedral quotients but m_H = {}",
            analysis.bp_quotients.len(),
            analysis.m_h
        ));
    }
    out.push("no binary polyhedral quotient iff m_H = 0".into());

    let sum = quotient_sum(g, analysis)?;
    if sum != analysis.m_h {
        return fail(format!(
            "quotient sum {sum} differs from m_H = {}",
            analysis.m_h
        ));
    }
    out.push(format!(
        "m_H = {sum} = sum of faithful quaternionic degree-2 characters over the quotients"
    ));

    if let Some(core) = &analysis.core {
        if core.m_h != analysis.m_h {
            return fail(format!(
                "m_H(G/core) = {} but m_H(G) = {}",
                core.m_h, analysis.m_h
            ));
        }
        out.push(format!("m_H(G/core) = m_H(G) = {}", core.m_h));
    }

    if let Some(id) = recognize_binary_polyhedral(g)? {
        let small = analysis.m_h <= 2;
        if id.is_star() != small {
            return fail(format!(
                "{id}: membership in the seven groups vs m_H = {}",
                analysis.m_h
            ));
        }
        let status = analysis.verdict.status;
        if status != SfcStatus::Unknown && (status == SfcStatus::HasSfc) != small {
            return fail(format!("{id} gets {status} with m_H = {}", analysis.m_h));
        }
        out.push(format!(
            "{id} is binary polyhedral: verdict matches m_H = {} <= 2 test",
            analysis.m_h
        ));
    }
    Ok(out)
}
