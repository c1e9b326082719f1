//! Report rendering. JSON keys follow struct field order; every float goes
//! out with 17 significant digits so it reads back to the same double.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use super::OutputFormat;

/// A float serialised as `d.dddddddddddddddde±x`, or `null` if not finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F(pub f64);

impl F {
    pub fn render(self) -> String {
        if self.0.is_finite() {
            format!("{:.16e}", self.0)
        } else {
            "null".into()
        }
    }
}

impl Serialize for F {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawValue::from_string(self.render()).map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

pub fn floats(xs: &[f64]) -> Vec<F> {
    xs.iter().copied().map(F).collect()
}

/// Flat view of a record, shared by the CSV and text renderings.
pub trait Tabular {
    fn header() -> Vec<&'static str>;
    fn row(&self) -> Vec<String>;
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

pub fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(String::new, ToString::to_string)
}

/// Top-level JSON document: `{"command": …, "records": […], …extra}`.
#[derive(Serialize)]
struct Document<'a, R: Serialize, X: Serialize> {
    command: &'a str,
    records: &'a [R],
    #[serde(flatten)]
    extra: X,
}

/// Renders `records` in the requested format. `extra` holds additional
/// top-level JSON fields; in CSV and text it is rendered by `extra_rows`
/// if given.
pub fn render<R: Serialize + Tabular, X: Serialize>(
    format: OutputFormat,
    command: &str,
    records: &[R],
    extra: X,
    extra_lines: &[String],
) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string(&Document { command, records, extra }).expect("serialisable report");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(R::header()).expect("in-memory write");
            for r in records {
                w.write_record(r.row()).expect("in-memory write");
            }
            let mut s = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
            for line in extra_lines {
                s.push_str("# ");
                s.push_str(line);
                s.push('\n');
            }
            s
        }
        OutputFormat::Text => {
            let header = R::header();
            let mut s = String::new();
            for r in records {
                let fields: Vec<String> = header.iter().zip(r.row()).map(|(h, v)| format!("{h}={v}")).collect();
                s.push_str(&fields.join(" "));
                s.push('\n');
            }
            for line in extra_lines {
                s.push_str(line);
                s.push('\n');
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 12345.678, -2.5, 0.0] {
            let s = F(x).render();
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let json = serde_json::to_string(&F(x)).unwrap();
            assert_eq!(json, s);
        }
        assert_eq!(F(f64::NAN).render(), "null");
    }
}
