use serde::Serialize;

use crate::error::{Error, Result};
use crate::Complex;

/// Evaluation route for `C(w, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    GammaRatio,
    FiniteSincSum,
    InfiniteSincSeries,
    Auto,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::GammaRatio => "gamma-ratio",
            Method::FiniteSincSum => "finite-sum",
            Method::InfiniteSincSeries => "sinc-series",
            Method::Auto => "auto",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Method::GammaRatio, Method::FiniteSincSum, Method::InfiniteSincSeries, Method::Auto]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::Input(format!(
                    "unknown method {s:?}; expected gamma-ratio, finite-sum, sinc-series or auto"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub method: Method,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            method: Method::Auto,
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_terms: 1_000_000,
        }
    }
}

impl EvalOptions {
    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    /// Same absolute and relative tolerance.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self.rel_tol = tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::Input(format!(
                "tolerances must be positive (abs {}, rel {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_terms == 0 {
            return Err(Error::Input("max_terms must be at least 1".into()));
        }
        Ok(())
    }

    /// Error target for a result of the given magnitude: the looser of the
    /// absolute and the relative tolerance.
    pub fn target(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude)
    }
}

/// A computed value together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    #[serde(with = "crate::json::complex")]
    pub value: Complex,
    pub abs_error_estimate: f64,
    pub terms_used: usize,
    pub converged: bool,
}

impl Evaluation {
    pub fn exact(value: Complex, terms_used: usize) -> Self {
        Evaluation {
            value,
            abs_error_estimate: 0.0,
            terms_used,
            converged: true,
        }
    }

    pub(crate) fn into_result(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NoConvergence {
                best: Box::new(self),
            })
        }
    }
}
