//! Shared formatting for CSV and JSON output.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

/// Shortest decimal that parses back to the same `f64`.
pub fn float(x: f64) -> String {
    format!("{x:?}")
}

/// `a+bi` literal accepted by the `--w`/`--z` parser.
#[cfg(test)]
pub fn complex_literal(z: sincbinom::Complex) -> String {
    let sign = if z.im.is_sign_negative() { "-" } else { "+" };
    format!("{}{sign}{}i", float(z.re), float(z.im.abs()))
}

pub fn sink(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_json<T: Serialize + ?Sized>(w: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)?;
    w.flush()
}

/// Writes plain numeric CSV. Fields never contain separators, so no quoting.
pub fn write_csv(w: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    writeln!(w, "{}", header.join(","))?;
    for r in rows {
        writeln!(w, "{}", r.join(","))?;
    }
    w.flush()
}
