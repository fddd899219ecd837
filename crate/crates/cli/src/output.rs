//! CSV and JSON emitters.

use std::io::{self, Write};

use clap::ValueEnum;
use gft_core::Complex64;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Rows of `coordinates…, re, im`.
///
/// CSV rows are written as they arrive; JSON is an array of objects emitted
/// by [`Table::finish`].
pub struct Table<W: Write> {
    out: W,
    format: Format,
    columns: Vec<&'static str>,
    rows: Vec<Value>,
}

impl<W: Write> Table<W> {
    pub fn new(out: W, format: Format, coords: &[&'static str]) -> io::Result<Self> {
        let mut columns = coords.to_vec();
        columns.extend(["re", "im"]);
        let mut table = Table {
            out,
            format,
            columns,
            rows: Vec::new(),
        };
        if format == Format::Csv {
            writeln!(table.out, "{}", table.columns.join(","))?;
        }
        Ok(table)
    }

    pub fn row(&mut self, coords: &[f64], value: Complex64) -> io::Result<()> {
        debug_assert_eq!(coords.len() + 2, self.columns.len());
        let value = clean(value);
        match self.format {
            Format::Csv => {
                let mut line: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                line.push(format!("{:?}", value.re));
                line.push(format!("{:?}", value.im));
                writeln!(self.out, "{}", line.join(","))?;
                self.out.flush()
            }
            Format::Json => {
                let mut obj = Map::new();
                let cells = coords.iter().chain([&value.re, &value.im]);
                for (name, v) in self.columns.iter().zip(cells) {
                    obj.insert(name.to_string(), number(*v));
                }
                self.rows.push(Value::Object(obj));
                Ok(())
            }
        }
    }

    pub fn finish(mut self) -> io::Result<()> {
        if self.format == Format::Json {
            let text = serde_json::to_string_pretty(&self.rows).map_err(io::Error::other)?;
            writeln!(self.out, "{text}")?;
        }
        self.out.flush()
    }
}

/// `re,im` line for a single value.
pub fn pair(value: Complex64) -> String {
    let v = clean(value);
    format!("{:?},{:?}", v.re, v.im)
}

/// Folds `−0.0` into `0.0`.
fn clean(v: Complex64) -> Complex64 {
    Complex64::new(v.re + 0.0, v.im + 0.0)
}

fn number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        let mut t = Table::new(&mut buf, Format::Csv, &["sigma", "omega"]).unwrap();
        t.row(&[1.0, 0.0], Complex64::new(2.0, -0.0)).unwrap();
        t.row(&[0.5, -1.25], Complex64::new(0.1, 3.0)).unwrap();
        t.finish().unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "sigma,omega,re,im\n1,0,2.0,0.0\n0.5,-1.25,0.1,3.0\n"
        );
    }

    #[test]
    fn json_layout() {
        let mut buf = Vec::new();
        let mut t = Table::new(&mut buf, Format::Json, &["sigma", "Omega"]).unwrap();
        t.row(&[1.0, 0.0], Complex64::new(2.0, 0.0)).unwrap();
        t.finish().unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v[0]["Omega"], 0.0);
        assert_eq!(v[0]["re"], 2.0);
    }
}
