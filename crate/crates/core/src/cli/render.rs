//! Output rows and their text, JSON and CSV renderings.
//!
//! Every machine format parses back into the same rows, and re-rendering a
//! parsed document reproduces it byte for byte.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::inequality_constants::CWConstantSet;
use crate::lp::{BoundResult, Method};
use crate::rational::format_ratio;
use crate::report::{CheckEntry, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Flat view of a [`BoundResult`] used for tables and CSV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub q: u64,
    pub n: u64,
    pub d: u64,
    pub w: Option<u64>,
    pub method: Method,
    pub bound: u64,
    pub real_optimum: Option<String>,
}

impl From<&BoundResult> for BoundRow {
    fn from(r: &BoundResult) -> Self {
        BoundRow {
            q: r.q,
            n: r.n,
            d: r.d,
            w: r.w,
            method: r.method,
            bound: r.bound,
            real_optimum: r.real_optimum.as_ref().map(format_ratio),
        }
    }
}

/// One row of the constant-weight constants table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsRow {
    pub q: u64,
    pub n: u64,
    pub w: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub k: u64,
    pub q_k: String,
    pub r_k: String,
    pub s_k: String,
    pub t_k: String,
    pub s_prime_k: String,
    pub t_prime_k: String,
    pub t1: String,
    pub t2: String,
    pub t3: String,
    pub t: String,
}

impl ConstantsRow {
    pub fn new(q: u64, n: u64, w: u64, m: u64, k: u64, c: &CWConstantSet) -> Self {
        ConstantsRow {
            q,
            n,
            w,
            m,
            k,
            q_k: c.q_k.to_string(),
            r_k: c.r_k.to_string(),
            s_k: c.s_k.to_string(),
            t_k: c.t_k.to_string(),
            s_prime_k: c.s_prime_k.to_string(),
            t_prime_k: c.t_prime_k.to_string(),
            t1: c.t1.to_string(),
            t2: c.t2.to_string(),
            t3: c.t3.to_string(),
            t: c.t.to_string(),
        }
    }
}

/// One Krawtchouk table entry with its split halves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KrawRow {
    pub q: u64,
    pub n: u64,
    pub k: u64,
    pub x: u64,
    pub krawtchouk: String,
    pub pk_minus: String,
    pub pk_plus: String,
}

/// A [`CheckEntry`] with its parameters packed as `key=value;...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub params: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl From<&CheckEntry> for CheckRow {
    fn from(e: &CheckEntry) -> Self {
        CheckRow {
            check: e.check.clone(),
            params: pack_params(&e.params),
            expected: e.expected.clone(),
            actual: e.actual.clone(),
            pass: e.pass,
        }
    }
}

impl TryFrom<CheckRow> for CheckEntry {
    type Error = crate::Error;

    fn try_from(r: CheckRow) -> Result<Self> {
        Ok(CheckEntry {
            check: r.check,
            params: unpack_params(&r.params)?,
            expected: r.expected,
            actual: r.actual,
            pass: r.pass,
        })
    }
}

pub fn pack_params(params: &BTreeMap<String, i64>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn unpack_params(s: &str) -> Result<BTreeMap<String, i64>> {
    if s.is_empty() {
        return Ok(BTreeMap::new());
    }
    s.split(';')
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| invalid(format!("malformed parameter '{kv}'")))?;
            let v = v
                .parse()
                .map_err(|_| invalid(format!("malformed parameter value '{kv}'")))?;
            Ok((k.to_string(), v))
        })
        .collect()
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable rows");
    s.push('\n');
    s
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| invalid(format!("bad JSON: {e}")))
}

/// CSV with a header row. An empty table still gets its header.
pub fn to_csv<T: Serialize>(header: &[&str], rows: &[T]) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.serialize(r).expect("flat rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn from_csv<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e| invalid(format!("bad CSV: {e}"))))
        .collect()
}

/// Left-aligned columns separated by two spaces, trailing spaces trimmed.
pub fn to_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

pub const BOUND_HEADER: [&str; 7] = ["q", "n", "d", "w", "method", "bound", "real_optimum"];

pub fn render_bounds(results: &[BoundResult], format: Format) -> String {
    let rows: Vec<BoundRow> = results.iter().map(BoundRow::from).collect();
    match format {
        Format::Json => to_json(results),
        Format::Csv => to_csv(&BOUND_HEADER, &rows),
        Format::Text => {
            let cells = rows
                .iter()
                .map(|r| {
                    vec![
                        r.q.to_string(),
                        r.n.to_string(),
                        r.d.to_string(),
                        r.w.map_or("-".into(), |w| w.to_string()),
                        r.method.to_string(),
                        r.bound.to_string(),
                        r.real_optimum.clone().unwrap_or_else(|| "-".into()),
                    ]
                })
                .collect::<Vec<_>>();
            to_table(&BOUND_HEADER, &cells)
        }
    }
}

pub const CONSTANTS_HEADER: [&str; 15] = [
    "q",
    "n",
    "w",
    "M",
    "k",
    "q_k",
    "r_k",
    "s_k",
    "t_k",
    "s_prime_k",
    "t_prime_k",
    "t1",
    "t2",
    "t3",
    "t",
];

pub fn render_constants(rows: &[ConstantsRow], format: Format) -> String {
    match format {
        Format::Json => to_json(rows),
        Format::Csv => to_csv(&CONSTANTS_HEADER, rows),
        Format::Text => {
            let cells = rows
                .iter()
                .map(|r| {
                    vec![
                        r.q.to_string(),
                        r.n.to_string(),
                        r.w.to_string(),
                        r.m.to_string(),
                        r.k.to_string(),
                        r.q_k.clone(),
                        r.r_k.clone(),
                        r.s_k.clone(),
                        r.t_k.clone(),
                        r.s_prime_k.clone(),
                        r.t_prime_k.clone(),
                        r.t1.clone(),
                        r.t2.clone(),
                        r.t3.clone(),
                        r.t.clone(),
                    ]
                })
                .collect::<Vec<_>>();
            to_table(&CONSTANTS_HEADER, &cells)
        }
    }
}

pub const KRAW_HEADER: [&str; 7] = ["q", "n", "k", "x", "krawtchouk", "pk_minus", "pk_plus"];

pub fn render_kraw(rows: &[KrawRow], format: Format) -> String {
    match format {
        Format::Json => to_json(rows),
        Format::Csv => to_csv(&KRAW_HEADER, rows),
        Format::Text => {
            let cells = rows
                .iter()
                .map(|r| {
                    vec![
                        r.q.to_string(),
                        r.n.to_string(),
                        r.k.to_string(),
                        r.x.to_string(),
                        r.krawtchouk.clone(),
                        r.pk_minus.clone(),
                        r.pk_plus.clone(),
                    ]
                })
                .collect::<Vec<_>>();
            to_table(&KRAW_HEADER, &cells)
        }
    }
}

pub const REPORT_HEADER: [&str; 5] = ["check", "params", "expected", "actual", "pass"];

/// Text reports list per-check tallies followed by every failing entry.
pub fn render_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let rows: Vec<CheckRow> = report.entries.iter().map(CheckRow::from).collect();
            to_csv(&REPORT_HEADER, &rows)
        }
        Format::Text => {
            let tallies = report
                .summary()
                .into_iter()
                .map(|(check, (passed, total))| vec![check, passed.to_string(), total.to_string()])
                .collect::<Vec<_>>();
            let mut out = to_table(&["check", "passed", "total"], &tallies);
            for e in report.failures() {
                out.push_str(&format!(
                    "FAIL {} [{}] expected {} actual {}\n",
                    e.check,
                    pack_params(&e.params),
                    e.expected,
                    e.actual
                ));
            }
            let failed = report.failures().count();
            if failed == 0 {
                out.push_str(&format!("all {} checks passed\n", report.entries.len()));
            } else {
                out.push_str(&format!(
                    "{failed} of {} checks failed\n",
                    report.entries.len()
                ));
            }
            out
        }
    }
}

pub fn parse_report_csv(text: &str) -> Result<VerificationReport> {
    let entries = from_csv::<CheckRow>(text)?
        .into_iter()
        .map(CheckEntry::try_from)
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{classical_lp_bound, cw_bound, BoundOptions};
    use crate::rational::int;
    use crate::report::Params;

    fn sample_bounds() -> Vec<BoundResult> {
        let o = BoundOptions::default();
        vec![
            classical_lp_bound(2, 4, 3, &o).unwrap(),
            cw_bound(2, 4, 4, 2, &o).unwrap(),
        ]
    }

    #[test]
    fn bound_csv_shape_and_round_trip() {
        let csv = render_bounds(&sample_bounds(), Format::Csv);
        assert_eq!(
            csv,
            "q,n,d,w,method,bound,real_optimum\n2,4,3,,classical,2,8/3\n2,4,4,2,constant-weight,2,\n"
        );
        let rows: Vec<BoundRow> = from_csv(&csv).unwrap();
        assert_eq!(to_csv(&BOUND_HEADER, &rows), csv);
    }

    #[test]
    fn bound_json_round_trip() {
        let json = render_bounds(&sample_bounds(), Format::Json);
        let back: Vec<BoundResult> = from_json(&json).unwrap();
        assert_eq!(render_bounds(&back, Format::Json), json);
    }

    #[test]
    fn text_table_alignment() {
        let t = to_table(&["a", "bb"], &[vec!["100".into(), "x".into()]]);
        assert_eq!(t, "a    bb\n100  x\n");
    }

    #[test]
    fn report_round_trips() {
        let mut report = VerificationReport::new();
        let p = Params::new().with("q", 2).with("M", 3);
        report.push(CheckEntry::equality("same", &p, &int(1), &int(1)));
        report.push(CheckEntry::at_most(
            "below",
            &Params::new(),
            &int(1),
            &int(2),
        ));
        let csv = render_report(&report, Format::Csv);
        assert_eq!(
            csv,
            "check,params,expected,actual,pass\nsame,M=3;q=2,1/1,1/1,true\nbelow,,1/1,2/1,false\n"
        );
        assert_eq!(parse_report_csv(&csv).unwrap(), report);
        let json = render_report(&report, Format::Json);
        let back: VerificationReport = from_json(&json).unwrap();
        assert_eq!(back, report);
        let text = render_report(&report, Format::Text);
        assert!(text.contains("FAIL below [] expected 1/1 actual 2/1"));
        assert!(text.ends_with("1 of 2 checks failed\n"));
    }

    #[test]
    fn params_packing() {
        let m = unpack_params("M=3;q=2").unwrap();
        assert_eq!(pack_params(&m), "M=3;q=2");
        assert!(unpack_params("q").is_err());
        assert!(unpack_params("q=x").is_err());
    }
}
