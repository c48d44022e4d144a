//! Fourier transform given as samples on a uniform grid over `[-1/2, 1/2]`.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::Complex;

pub const MIN_POINTS: usize = 64;

const GRID_TOL: f64 = 1e-9;

/// Uniformly sampled `f̂`, interpolated by local cubics through four
/// neighbouring samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedSpectrum {
    step: f64,
    values: Vec<Complex>,
}

impl TabulatedSpectrum {
    /// Samples at `ξ_j = -1/2 + j/(n-1)`, `j = 0..n`.
    pub fn from_samples(values: Vec<Complex>) -> Result<Self> {
        if values.len() < MIN_POINTS {
            return Err(Error::Input(format!(
                "tabulated spectrum needs at least {MIN_POINTS} points, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Input("tabulated spectrum contains a non-finite value".into()));
        }
        Ok(TabulatedSpectrum {
            step: 1.0 / (values.len() - 1) as f64,
            values,
        })
    }

    /// Samples `f̂` on an `n`-point grid.
    pub fn sample<F: Fn(f64) -> Complex>(f: F, n: usize) -> Result<Self> {
        let n = n.max(2);
        let step = 1.0 / (n - 1) as f64;
        Self::from_samples((0..n).map(|j| f(-0.5 + j as f64 * step)).collect())
    }

    /// Reads CSV with header `xi,re,im`.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers().map_err(csv_error)?.clone();
        let names: Vec<&str> = headers.iter().collect();
        if names != ["xi", "re", "im"] {
            return Err(Error::Input(format!(
                "tabulated spectrum header must be xi,re,im, got {}",
                names.join(",")
            )));
        }
        let mut xi = Vec::new();
        let mut values = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record.map_err(csv_error)?;
            let field = |i: usize| -> Result<f64> {
                let s = record.get(i).unwrap_or("");
                s.parse::<f64>()
                    .map_err(|_| Error::Input(format!("row {}: cannot parse {s:?} as a number", line + 2)))
            };
            xi.push(field(0)?);
            values.push(Complex::new(field(1)?, field(2)?));
        }
        check_grid(&xi)?;
        Self::from_samples(values)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)
            .map_err(|e| Error::Input(format!("cannot open {}: {e}", path.display())))?;
        Self::from_csv(file)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Interpolated `f̂(ξ)`; zero outside `[-1/2, 1/2]`.
    pub fn eval(&self, xi: f64) -> Complex {
        if !(-0.5..=0.5).contains(&xi) {
            return Complex::new(0.0, 0.0);
        }
        let n = self.values.len();
        let t = (xi + 0.5) / self.step;
        let i = (t.floor() as usize).min(n - 2);
        // stencil i-1..=i+2, shifted inward at the ends
        let start = i.saturating_sub(1).min(n - 4);
        let s = t - start as f64;
        let p = &self.values[start..start + 4];
        let l0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
        let l1 = s * (s - 2.0) * (s - 3.0) / 2.0;
        let l2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
        let l3 = s * (s - 1.0) * (s - 2.0) / 6.0;
        p[0] * l0 + p[1] * l1 + p[2] * l2 + p[3] * l3
    }
}

fn check_grid(xi: &[f64]) -> Result<()> {
    if xi.len() < MIN_POINTS {
        return Err(Error::Input(format!(
            "tabulated spectrum needs at least {MIN_POINTS} points, got {}",
            xi.len()
        )));
    }
    let first = xi[0];
    let last = xi[xi.len() - 1];
    if (first + 0.5).abs() > GRID_TOL || (last - 0.5).abs() > GRID_TOL {
        return Err(Error::Input(format!(
            "tabulated grid must run from -0.5 to 0.5, got [{first}, {last}]"
        )));
    }
    let step = 1.0 / (xi.len() - 1) as f64;
    for (j, pair) in xi.windows(2).enumerate() {
        if !(pair[1] > pair[0]) {
            return Err(Error::Input(format!("xi is not strictly increasing at row {}", j + 3)));
        }
        if ((pair[1] - pair[0]) - step).abs() > GRID_TOL {
            return Err(Error::Input(format!("xi grid is not uniform at row {}", j + 3)));
        }
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Input(format!("tabulated spectrum: {e}"))
}
