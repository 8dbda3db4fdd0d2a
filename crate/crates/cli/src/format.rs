//! Text and JSON encodings of supports.
//!
//! The text formats are line based. Each record is a header
//!
//! ```text
//! m=<m> poly=<hex> d=<d> extended=<0|1>
//! ```
//!
//! followed by one line of comma-separated elements: ascending decimal
//! exponents `k` of `α^k` (the log format, with `-1` standing for 0), or
//! hexadecimal element bit patterns (the bits format). Blank lines and lines
//! starting with `#` are skipped.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use mwbch::construct::CodewordSupport;
use mwbch::gf2m::parse_poly;
use mwbch::{Elem, Field};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

/// Version of the JSON layout written by `generate`.
pub const SPEC_VERSION: &str = "1.0";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    LogSupport,
    Bits,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "logsupport" => Ok(OutputFormat::LogSupport),
            "bits" => Ok(OutputFormat::Bits),
            _ => Err(format!("unknown format {s:?} (json, logsupport, bits)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::LogSupport => "logsupport",
            OutputFormat::Bits => "bits",
        })
    }
}

/// A parsed support together with the field it lives in.
#[derive(Clone, Debug)]
pub struct Record {
    pub field: Field,
    pub support: CodewordSupport,
}

/// What `generate` writes in JSON mode, and what `verify` reads back.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SupportJson {
    pub spec_version: String,
    pub m: u32,
    pub poly: String,
    pub i: Option<u32>,
    pub s: Option<u32>,
    pub d: u64,
    pub extended: bool,
    pub method: Option<String>,
    pub seed: Option<u64>,
    /// `"log"`: exponents with -1 for zero; `"hex"`: bit patterns.
    pub encoding: String,
    #[serde(rename = "X")]
    pub x: Option<Vec<Value>>,
    #[serde(rename = "B")]
    pub b: Option<Vec<Value>>,
    pub punctured_at: Option<Value>,
    pub support: Vec<Value>,
    pub verified: bool,
}

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

/// JSON uses exponents while the field has log tables, hex otherwise.
pub fn uses_logs(field: &Field) -> bool {
    field.has_log_tables()
}

pub fn encode_elem(field: &Field, x: Elem) -> Value {
    if uses_logs(field) {
        match field.discrete_log(x) {
            Ok(k) => Value::from(k),
            Err(_) => Value::from(-1),
        }
    } else {
        Value::from(format!("{:#x}", x.bits()))
    }
}

fn decode_value(field: &Field, v: &Value) -> Result<Elem, CliError> {
    if let Some(k) = v.as_i64() {
        return exponent_elem(field, k);
    }
    if let Some(s) = v.as_str() {
        return hex_elem(field, s);
    }
    Err(parse_err(format!("bad element {v}")))
}

fn exponent_elem(field: &Field, k: i64) -> Result<Elem, CliError> {
    if k == -1 {
        return Ok(Elem::ZERO);
    }
    if k < 0 || k as u64 >= field.order() {
        return Err(parse_err(format!(
            "exponent {k} out of range for m = {}",
            field.m()
        )));
    }
    Ok(field.exp(k as u64))
}

fn hex_elem(field: &Field, s: &str) -> Result<Elem, CliError> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .unwrap_or(s);
    let bits =
        u32::from_str_radix(digits, 16).map_err(|_| parse_err(format!("bad hex element {s:?}")))?;
    if !field.contains(Elem(bits)) {
        return Err(parse_err(format!(
            "element {s} out of range for m = {}",
            field.m()
        )));
    }
    Ok(Elem(bits))
}

fn insert_unique(set: &mut BTreeSet<Elem>, x: Elem, token: &str) -> Result<(), CliError> {
    if !set.insert(x) {
        return Err(parse_err(format!("repeated element {token}")));
    }
    Ok(())
}

fn header_line(field: &Field, cw: &CodewordSupport) -> String {
    format!(
        "m={} poly={:#x} d={} extended={}",
        field.m(),
        field.poly(),
        cw.claimed_distance,
        u8::from(cw.extended)
    )
}

pub fn write_logsupport(field: &Field, cw: &CodewordSupport) -> Result<String, CliError> {
    let mut logs = Vec::with_capacity(cw.elems.len());
    for &x in &cw.elems {
        logs.push(if x.is_zero() {
            -1
        } else {
            field.discrete_log(x)? as i64
        });
    }
    logs.sort_unstable();
    let body: Vec<String> = logs.iter().map(|k| k.to_string()).collect();
    Ok(format!("{}\n{}\n", header_line(field, cw), body.join(",")))
}

pub fn write_bits(field: &Field, cw: &CodewordSupport) -> String {
    let body: Vec<String> = cw
        .elems
        .iter()
        .map(|x| format!("{:#x}", x.bits()))
        .collect();
    format!("{}\n{}\n", header_line(field, cw), body.join(","))
}

struct Header {
    m: u32,
    poly: u64,
    d: u64,
    extended: bool,
}

fn parse_header(line: &str) -> Result<Header, CliError> {
    let (mut m, mut poly, mut d, mut extended) = (None, None, None, None);
    for tok in line.split_whitespace() {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(format!("bad header field {tok:?}")))?;
        let bad = || parse_err(format!("bad value in {tok:?}"));
        match key {
            "m" => m = Some(value.parse::<u32>().map_err(|_| bad())?),
            "poly" => poly = Some(parse_poly(value).map_err(|_| bad())?),
            "d" => d = Some(value.parse::<u64>().map_err(|_| bad())?),
            "extended" => {
                extended = Some(match value {
                    "0" => false,
                    "1" => true,
                    _ => return Err(bad()),
                })
            }
            _ => return Err(parse_err(format!("unknown header field {key:?}"))),
        }
    }
    let missing = |k: &str| parse_err(format!("header lacks {k}="));
    Ok(Header {
        m: m.ok_or_else(|| missing("m"))?,
        poly: poly.ok_or_else(|| missing("poly"))?,
        d: d.ok_or_else(|| missing("d"))?,
        extended: extended.ok_or_else(|| missing("extended"))?,
    })
}

fn make_field(m: u32, poly: u64) -> Result<Field, CliError> {
    Field::new(m, poly).map_err(|e| parse_err(format!("m={m} poly={poly:#x}: {e}")))
}

fn parse_body(field: &Field, line: &str) -> Result<BTreeSet<Elem>, CliError> {
    let mut elems = BTreeSet::new();
    let tokens: Vec<&str> = line
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    let hex = !tokens.is_empty()
        && tokens
            .iter()
            .all(|t| t.starts_with("0x") || t.starts_with("0X"));
    for tok in tokens {
        let x = if hex {
            hex_elem(field, tok)?
        } else {
            let k = tok
                .parse::<i64>()
                .map_err(|_| parse_err(format!("bad exponent {tok:?}")))?;
            exponent_elem(field, k)?
        };
        insert_unique(&mut elems, x, tok)?;
    }
    Ok(elems)
}

fn parse_text(text: &str) -> Result<Vec<Record>, CliError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let mut out = Vec::new();
    while let Some(head) = lines.next() {
        let h = parse_header(head)?;
        let body = lines
            .next()
            .ok_or_else(|| parse_err("header without a support line"))?;
        let field = make_field(h.m, h.poly)?;
        let elems = parse_body(&field, body)?;
        out.push(Record {
            field,
            support: CodewordSupport {
                elems,
                claimed_distance: h.d,
                extended: h.extended,
            },
        });
    }
    if out.is_empty() {
        return Err(parse_err("no records found"));
    }
    Ok(out)
}

fn parse_json(text: &str) -> Result<Vec<Record>, CliError> {
    let doc: SupportJson = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let poly = parse_poly(&doc.poly).map_err(|e| parse_err(e.to_string()))?;
    let field = make_field(doc.m, poly)?;
    let mut elems = BTreeSet::new();
    for v in &doc.support {
        insert_unique(&mut elems, decode_value(&field, v)?, &v.to_string())?;
    }
    Ok(vec![Record {
        field,
        support: CodewordSupport {
            elems,
            claimed_distance: doc.d,
            extended: doc.extended,
        },
    }])
}

/// Reads every record of a support file, in either text format or the
/// JSON written by `generate`.
pub fn parse_records(text: &str) -> Result<Vec<Record>, CliError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let field = Field::with_default(6).unwrap();
        let elems: BTreeSet<Elem> = [0, 1, 5, 9, 33, 62].into_iter().map(Elem).collect();
        let cw = CodewordSupport {
            elems,
            claimed_distance: 6,
            extended: true,
        };
        for text in [
            write_logsupport(&field, &cw).unwrap(),
            write_bits(&field, &cw),
        ] {
            let recs = parse_records(&text).unwrap();
            assert_eq!(recs.len(), 1);
            assert_eq!(recs[0].support, cw);
            assert_eq!(recs[0].field, field);
        }
        let log = write_logsupport(&field, &cw).unwrap();
        assert!(log.starts_with("m=6 poly=0x43 d=6 extended=1\n-1,0,"));
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "",
            "m=6 poly=0x43 d=6\n1,2",
            "m=6 poly=0x43 d=6 extended=1",
            "m=6 poly=0x43 d=6 extended=1\n1,1",
            "m=6 poly=0x43 d=6 extended=1\n1,63",
            "m=6 poly=0x41 d=6 extended=1\n1,2",
            "m=6 poly=0x43 d=6 extended=1\n0x1,0x40",
            "m=6 poly=0x43 d=six extended=1\n1,2",
            "{\"m\": 6}",
        ] {
            assert!(
                matches!(parse_records(text), Err(CliError::Parse(_))),
                "{text:?}"
            );
        }
    }
}
