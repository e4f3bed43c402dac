//! JSON and CSV rendering. Rationals go out as `"p/q"` next to a
//! 17-significant-digit decimal.

use busyq_core::rational::{decimal17, to_decimal17, to_pq};
use busyq_core::{BusyPeriodDistribution, ExactRational};
use serde_json::{json, Value};

use crate::failure::Failure;

pub fn json_text(value: &Value) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::BadInput(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn exact_json(d: &BusyPeriodDistribution) -> Value {
    let s: Vec<Value> = d
        .values()
        .iter()
        .enumerate()
        .map(|(idx, q)| json!({"i": idx + 1, "exact": to_pq(q), "decimal": to_decimal17(q)}))
        .collect();
    json!({
        "n": d.n(),
        "method": d.method().name(),
        "s": s,
        "sum_check": to_pq(&d.total()),
    })
}

pub fn float_json(d: &BusyPeriodDistribution<f64>) -> Value {
    let s: Vec<Value> = d
        .values()
        .iter()
        .enumerate()
        .map(|(idx, x)| json!({"i": idx + 1, "decimal": decimal17(*x)}))
        .collect();
    json!({
        "n": d.n(),
        "method": d.method().name(),
        "mode": "float",
        "s": s,
        "sum_check": decimal17(d.total()),
    })
}

/// CSV writer over an in-memory buffer.
pub struct Csv(csv::Writer<Vec<u8>>);

impl Csv {
    pub fn new<I, S>(header: I) -> Result<Self, Failure>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).map_err(csv_err)?;
        Ok(Csv(w))
    }

    pub fn row<I, S>(&mut self, fields: I) -> Result<(), Failure>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.0.write_record(fields).map_err(csv_err)
    }

    pub fn finish(self) -> Result<String, Failure> {
        let bytes = self.0.into_inner().map_err(|e| Failure::BadInput(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Failure::BadInput(e.to_string()))
    }
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::BadInput(e.to_string())
}

pub fn exact_cells(q: &ExactRational) -> [String; 2] {
    [to_pq(q), to_decimal17(q)]
}
