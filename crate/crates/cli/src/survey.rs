//! Batch classification of a file of group specs.

use std::io::Write;

use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;

use crate::exit::{exit_code, OK};
use crate::report::{Analyzer, Report};

/// A non-empty, non-comment line of the input, with its 1-based number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyLine {
    pub line: usize,
    pub spec: String,
}

pub fn read_lines(text: &str) -> Vec<SurveyLine> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let spec = raw.split('#').next().unwrap_or("").trim();
            (!spec.is_empty()).then(|| SurveyLine {
                line: i + 1,
                spec: spec.to_string(),
            })
        })
        .collect()
}

pub struct Outcome {
    pub line: SurveyLine,
    pub result: Result<Report>,
}

/// Classifies every line, `jobs` at a time. Results come back in input
/// order whatever the scheduling.
pub fn run(analyzer: &Analyzer, lines: Vec<SurveyLine>, jobs: usize) -> Result<Vec<Outcome>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(pool.install(|| {
        lines
            .into_par_iter()
            .map(|line| {
                let result = analyzer.classify(&line.spec);
                Outcome { line, result }
            })
            .collect()
    }))
}

#[derive(Serialize)]
struct CsvRow<'a> {
    spec: &'a str,
    order: usize,
    m_h: usize,
    qn_max: usize,
    status: &'a str,
    rule: &'a str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Writes the successful rows and reports failures on `err`. Returns the
/// worst exit code seen.
pub fn emit(
    outcomes: &[Outcome],
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let mut code = OK;
    let mut csv = (format == Format::Csv).then(|| csv::Writer::from_writer(Vec::new()));
    for o in outcomes {
        let r = match &o.result {
            Ok(r) => r,
            Err(e) => {
                writeln!(err, "line {}: {}: {e:#}", o.line.line, o.line.spec)?;
                code = code.max(exit_code(e));
                continue;
            }
        };
        let rule = r.sfc.rule.map_or("none", |r| r.as_str());
        match format {
            Format::Json => writeln!(out, "{}", serde_json::to_string(r)?)?,
            Format::Csv => csv.as_mut().expect("csv writer").serialize(CsvRow {
                spec: &r.spec,
                order: r.order,
                m_h: r.m_h,
                qn_max: r.qn_max,
                status: r.sfc.status.as_str(),
                rule,
            })?,
            Format::Text => writeln!(
                out,
                "{:<36} {:>6} m_H={:<3} qn={:<3} {:<10} {}",
                r.spec,
                r.order,
                r.m_h,
                r.qn_max,
                r.sfc.status.as_str(),
                rule
            )?,
        }
    }
    if let Some(w) = csv {
        if outcomes.iter().all(|o| o.result.is_err()) {
            // serde only writes the header with the first record
            out.write_all(b"spec,order,m_h,qn_max,status,rule\n")?;
        } else {
            out.write_all(&w.into_inner()?)?;
        }
    }
    Ok(code)
}
