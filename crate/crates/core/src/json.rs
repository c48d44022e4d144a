//! Serde helpers for the machine-readable output formats.

/// Serializes a complex number as `{"re": .., "im": ..}`.
pub mod complex {
    use serde::ser::SerializeStruct;
    use serde::Serializer;

    use crate::Complex;

    pub fn serialize<S: Serializer>(z: &Complex, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Complex", 2)?;
        st.serialize_field("re", &z.re)?;
        st.serialize_field("im", &z.im)?;
        st.end()
    }
}

/// Plain `{re, im}` wrapper for places where a field attribute is awkward.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<crate::Complex> for ComplexJson {
    fn from(z: crate::Complex) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}
