//! Byte-stable rendering of reports to JSON and CSV.
//!
//! Field order is fixed by struct declaration order, reals are printed with
//! 12 significant digits (trailing zeros trimmed), and every output is
//! newline-terminated, so identical runs produce identical bytes.

use std::io;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::explorer::{OptimizeResult, Record, ThresholdRecord};

/// Output encoding for rendered runs.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::InvalidConfig {
                reason: format!("unknown format `{other}` (expected json or csv)"),
            }),
        }
    }
}

/// Format a real with 12 significant digits, `%.12g`-style: fixed notation
/// for moderate exponents, scientific otherwise, trailing zeros trimmed.
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp_str) = sci.split_once('e').expect("{:e} always has an exponent");
    let exp: i32 = exp_str.parse().expect("exponent is an integer");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_trailing_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_trailing_zeros(mantissa.to_string()))
    }
}

fn trim_trailing_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Compact serde_json formatter that routes all f64 output through
/// [`fmt_sig12`]. Non-finite values render as null, as serde_json does.
struct Sig12Formatter;

impl serde_json::ser::Formatter for Sig12Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value.is_finite() {
            writer.write_all(fmt_sig12(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }
}

/// Serialize one value as a single JSON line, newline-terminated.
pub fn to_json_line<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig12Formatter);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("JSON output is UTF-8"))
}

/// Fixed CSV column schema for report records.
pub const CSV_HEADER: &str = "d,scenario,family,param,sum_ab,sum_ac,total,bound,\
i_ab_1,i_ab_2,i_ac_1,i_ac_2,holevo_ac_1,holevo_ac_2,steerable_ab,steerable_ac";

fn csv_row(record: &Record) -> String {
    let r = &record.report;
    let param = record.param.map(fmt_sig12).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.d,
        r.scenario,
        record.family,
        param,
        fmt_sig12(r.sum_ab),
        fmt_sig12(r.sum_ac),
        fmt_sig12(r.total),
        fmt_sig12(r.bound_total),
        fmt_sig12(r.i_ab[0]),
        fmt_sig12(r.i_ab[1]),
        fmt_sig12(r.i_ac[0]),
        fmt_sig12(r.i_ac[1]),
        fmt_sig12(r.holevo_ac[0]),
        fmt_sig12(r.holevo_ac[1]),
        r.steerable_ab,
        r.steerable_ac
    )
}

/// Render records as JSON lines or as a CSV table with the fixed header.
pub fn render_records(records: &[Record], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => {
            let mut out = String::new();
            for record in records {
                out.push_str(&to_json_line(record)?);
            }
            Ok(out)
        }
        OutputFormat::Csv => {
            let mut out = String::with_capacity(64 * (records.len() + 1));
            out.push_str(CSV_HEADER);
            out.push('\n');
            for record in records {
                out.push_str(&csv_row(record));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

pub fn render_optimize(result: &OptimizeResult) -> Result<String> {
    to_json_line(result)
}

pub fn render_threshold(record: &ThresholdRecord) -> Result<String> {
    to_json_line(record)
}
