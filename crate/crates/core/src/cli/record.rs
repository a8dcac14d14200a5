//! Flat key/value records and their JSON-lines and CSV renderings.
//!
//! Polynomials are ascending coefficient lists: `X^4 + 2X^3 + X^2 + 2X + 1`
//! is `[1,2,1,2,1]`. In CSV, list-valued cells hold the same JSON text.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value as Json};

use crate::error::{Error, Result};
use crate::ffpoly::ModPoly;
use crate::hminus::{HMinusResult, ValuationResult};
use crate::scanner::{HuntReport, ScanRecord};
use crate::stickelberger::DxResult;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Null,
    Bool(bool),
    Int(BigInt),
    Str(String),
    List(Vec<Value>),
}

impl Value {
    pub fn int(x: impl Into<BigInt>) -> Self {
        Value::Int(x.into())
    }

    pub fn ints<T: Copy + Into<BigInt>>(xs: &[T]) -> Self {
        Value::List(xs.iter().map(|&x| Value::int(x)).collect())
    }

    pub fn opt<T: Into<Value>>(x: Option<T>) -> Self {
        x.map_or(Value::Null, Into::into)
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Null => Json::Null,
            Value::Bool(b) => Json::Bool(*b),
            Value::Int(n) => {
                Json::Number(Number::from_str(&n.to_string()).expect("integer literal"))
            }
            Value::Str(s) => Json::String(s.clone()),
            Value::List(xs) => Json::Array(xs.iter().map(Value::to_json).collect()),
        }
    }

    fn from_json(j: &Json) -> Result<Self> {
        Ok(match j {
            Json::Null => Value::Null,
            Json::Bool(b) => Value::Bool(*b),
            Json::Number(n) => Value::Int(
                BigInt::from_str(&n.to_string())
                    .map_err(|_| Error::param(format!("non-integer number {n}")))?,
            ),
            Json::String(s) => Value::Str(s.clone()),
            Json::Array(xs) => Value::List(xs.iter().map(Value::from_json).collect::<Result<_>>()?),
            Json::Object(_) => {
                return Err(Error::param("nested objects are not part of the format"))
            }
        })
    }

    fn to_cell(&self) -> String {
        match self {
            Value::Null => String::new(),
            Value::Bool(b) => b.to_string(),
            Value::Int(n) => n.to_string(),
            Value::Str(s) => s.clone(),
            Value::List(_) => self.to_json().to_string(),
        }
    }

    fn from_cell(cell: &str) -> Result<Self> {
        if cell.is_empty() {
            return Ok(Value::Null);
        }
        if cell == "true" || cell == "false" {
            return Ok(Value::Bool(cell == "true"));
        }
        if let Ok(n) = BigInt::from_str(cell) {
            return Ok(Value::Int(n));
        }
        if cell.starts_with('[') {
            let j: Json = serde_json::from_str(cell)
                .map_err(|e| Error::param(format!("bad list cell `{cell}`: {e}")))?;
            return Value::from_json(&j);
        }
        Ok(Value::Str(cell.to_string()))
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<u32> for Value {
    fn from(x: u32) -> Self {
        Value::int(x)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::int(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::int(x as u64)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Str(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Str(s)
    }
}

impl From<BigInt> for Value {
    fn from(n: BigInt) -> Self {
        Value::Int(n)
    }
}

/// Ordered fields; the order is part of the output format.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OutputRecord {
    pub fields: Vec<(String, Value)>,
}

impl OutputRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn keys(&self) -> Vec<&str> {
        self.fields.iter().map(|(k, _)| k.as_str()).collect()
    }

    pub fn to_json_line(&self) -> String {
        let mut map = Map::new();
        for (k, v) in &self.fields {
            map.insert(k.clone(), v.to_json());
        }
        Json::Object(map).to_string()
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        let j: Json = serde_json::from_str(line)
            .map_err(|e| Error::param(format!("bad JSON record: {e}")))?;
        let Json::Object(map) = j else {
            return Err(Error::param("record is not a JSON object"));
        };
        Ok(OutputRecord {
            fields: map
                .iter()
                .map(|(k, v)| Ok((k.clone(), Value::from_json(v)?)))
                .collect::<Result<_>>()?,
        })
    }

    pub fn csv_cells(&self) -> Vec<String> {
        self.fields.iter().map(|(_, v)| v.to_cell()).collect()
    }
}

/// Renders records sharing one key set as CSV with a header row.
pub fn render_csv(records: &[OutputRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = records.first() {
        w.write_record(first.keys()).map_err(csv_err)?;
    }
    for r in records {
        w.write_record(r.csv_cells()).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8 output"))
}

/// Parses one CSV block (header plus rows).
pub fn parse_csv(text: &str) -> Result<Vec<OutputRecord>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers: Vec<String> = r
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(String::from)
        .collect();
    let mut out = Vec::new();
    for row in r.records() {
        let row = row.map_err(csv_err)?;
        let fields = headers
            .iter()
            .zip(row.iter())
            .map(|(k, cell)| Ok((k.clone(), Value::from_cell(cell)?)))
            .collect::<Result<_>>()?;
        out.push(OutputRecord { fields });
    }
    Ok(out)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn poly_value(f: &ModPoly) -> Value {
    Value::ints(f.coeffs())
}

pub fn dee_record(d: &DxResult) -> OutputRecord {
    let factors = d
        .factorization
        .factors
        .iter()
        .map(|(f, m)| Value::List(vec![poly_value(f), Value::from(*m)]))
        .collect();
    OutputRecord::new()
        .with("p", d.p)
        .with("h", d.h)
        .with("v", d.v)
        .with("operand", d.operand.as_str())
        .with("degree", d.degree)
        .with("dee", poly_value(&d.dee))
        .with("unit", d.factorization.unit)
        .with("factors", Value::List(factors))
        .with("squarefree", d.factorization.is_squarefree())
}

pub fn hminus_record(r: &HMinusResult) -> OutputRecord {
    OutputRecord::new()
        .with("p", r.p)
        .with("value", r.value.clone())
        .with("det", r.det.clone())
        .with("p_exponent", (r.p - 3) / 2)
        .with("exponent_check", r.exponent_check)
}

pub fn valuation_record(r: &ValuationResult) -> OutputRecord {
    OutputRecord::new()
        .with("p", r.p)
        .with("h", r.h)
        .with("valuation", r.valuation)
        .with("precision_used", r.precision_used)
}

pub fn scan_record(r: &ScanRecord) -> OutputRecord {
    let summary = r
        .factor_summary
        .iter()
        .map(|&(d, m)| Value::List(vec![Value::from(d), Value::from(m)]))
        .collect();
    OutputRecord::new()
        .with("p", r.p)
        .with("h", r.h)
        .with("v", r.v)
        .with("operand", r.operand.as_str())
        .with("degree", r.degree)
        .with("factor_summary", Value::List(summary))
        .with("oracle", r.oracle.label())
        .with("h_divides_hminus", Value::opt(r.h_divides_hminus))
        .with("valuation", Value::opt(r.valuation))
        .with("consistent", Value::opt(r.consistent))
        .with("reference_rank", Value::opt(r.reference_rank))
        .with("rank_match", Value::opt(r.rank_match))
}

pub fn hunt_summary_record(rep: &HuntReport) -> OutputRecord {
    let pair = |p: u64, h: u64, v: u64| Value::ints(&[p, h, v]);
    let violations = rep
        .violations
        .iter()
        .map(|&(p, h, v)| pair(p, h, v))
        .collect();
    let mismatches = rep
        .rank_mismatches
        .iter()
        .map(|m| {
            Value::List(vec![
                Value::from(m.p),
                Value::from(m.h),
                Value::from(m.v),
                Value::from(m.degree),
                Value::from(m.reference_rank),
            ])
        })
        .collect();
    let flags = rep
        .multiplicity_flags
        .iter()
        .map(|f| {
            Value::List(vec![
                Value::from(f.p),
                Value::from(f.h),
                Value::from(f.v),
                Value::List(
                    f.profile
                        .iter()
                        .map(|&(d, m)| Value::List(vec![Value::from(d), Value::from(m)]))
                        .collect(),
                ),
            ])
        })
        .collect();
    OutputRecord::new()
        .with("summary", "hunt")
        .with("records", rep.totals.records)
        .with("consistent", rep.totals.consistent)
        .with("inconsistent", rep.totals.inconsistent)
        .with("skipped", rep.totals.skipped)
        .with("violations", Value::List(violations))
        .with("rank_mismatches", Value::List(mismatches))
        .with("multiplicity_flags", Value::List(flags))
}
