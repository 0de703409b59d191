//! Dense value tables for arithmetic functions and certified growth bounds.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ValueKind {
    ExactInt,
    Real,
    Complex,
}

impl ValueKind {
    /// Smallest kind that can represent both operands.
    pub fn join(self, other: ValueKind) -> ValueKind {
        use ValueKind::*;
        match (self, other) {
            (ExactInt, ExactInt) => ExactInt,
            (Complex, _) | (_, Complex) => Complex,
            _ => Real,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Values {
    Int(Vec<i64>),
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// Values f(1..=N) of an arithmetic function. Index is 1-based; tables are
/// immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionTable {
    label: String,
    values: Values,
}

impl FunctionTable {
    pub fn from_int(label: impl Into<String>, values: Vec<i64>) -> FunctionTable {
        FunctionTable {
            label: label.into(),
            values: Values::Int(values),
        }
    }

    pub fn from_real(label: impl Into<String>, values: Vec<f64>) -> Result<FunctionTable> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite value at n = {}", i + 1)));
        }
        Ok(FunctionTable {
            label: label.into(),
            values: Values::Real(values),
        })
    }

    pub fn from_complex(label: impl Into<String>, values: Vec<Complex64>) -> Result<FunctionTable> {
        if let Some(i) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite value at n = {}", i + 1)));
        }
        Ok(FunctionTable {
            label: label.into(),
            values: Values::Complex(values),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        match &self.values {
            Values::Int(v) => v.len(),
            Values::Real(v) => v.len(),
            Values::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> ValueKind {
        match &self.values {
            Values::Int(_) => ValueKind::ExactInt,
            Values::Real(_) => ValueKind::Real,
            Values::Complex(_) => ValueKind::Complex,
        }
    }

    pub fn values(&self) -> &Values {
        &self.values
    }

    /// f(n) as a complex number; n is 1-based and must be within the table.
    #[inline]
    pub fn get(&self, n: usize) -> Complex64 {
        match &self.values {
            Values::Int(v) => Complex64::new(v[n - 1] as f64, 0.0),
            Values::Real(v) => Complex64::new(v[n - 1], 0.0),
            Values::Complex(v) => v[n - 1],
        }
    }

    /// |f(n)|.
    #[inline]
    pub fn abs(&self, n: usize) -> f64 {
        match &self.values {
            Values::Int(v) => (v[n - 1] as f64).abs(),
            Values::Real(v) => v[n - 1].abs(),
            Values::Complex(v) => v[n - 1].norm(),
        }
    }

    pub fn as_int(&self) -> Option<&[i64]> {
        match &self.values {
            Values::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_real(&self) -> Option<&[f64]> {
        match &self.values {
            Values::Real(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_complex(&self) -> Option<&[Complex64]> {
        match &self.values {
            Values::Complex(v) => Some(v),
            _ => None,
        }
    }

    /// Largest n with f(n) != 0, or 0 for the zero table.
    pub fn support(&self) -> usize {
        match &self.values {
            Values::Int(v) => v.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1),
            Values::Real(v) => v.iter().rposition(|&x| x != 0.0).map_or(0, |i| i + 1),
            Values::Complex(v) => v
                .iter()
                .rposition(|&z| z != Complex64::new(0.0, 0.0))
                .map_or(0, |i| i + 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.support() == 0
    }

    /// Copy of this table widened to `kind` (never narrows).
    pub fn promote(&self, kind: ValueKind) -> FunctionTable {
        let kind = self.kind().join(kind);
        let values = match (kind, &self.values) {
            (ValueKind::ExactInt, Values::Int(v)) => Values::Int(v.clone()),
            (ValueKind::Real, Values::Int(v)) => {
                Values::Real(v.iter().map(|&x| x as f64).collect())
            }
            (ValueKind::Real, Values::Real(v)) => Values::Real(v.clone()),
            (ValueKind::Complex, _) => Values::Complex(
                (1..=self.len()).map(|n| self.get(n)).collect(),
            ),
            _ => unreachable!("join never narrows"),
        };
        FunctionTable {
            label: self.label.clone(),
            values,
        }
    }

    /// Same values up to `len`, zero-padded beyond the original table.
    pub fn zero_extend(&self, len: usize) -> FunctionTable {
        let mut t = self.clone();
        match &mut t.values {
            Values::Int(v) => v.resize(len, 0),
            Values::Real(v) => v.resize(len, 0.0),
            Values::Complex(v) => v.resize(len, Complex64::new(0.0, 0.0)),
        }
        t
    }

    pub fn with_label(mut self, label: impl Into<String>) -> FunctionTable {
        self.label = label.into();
        self
    }
}

/// Certified majorant |f(n)| <= C * n^alpha * log(2+n)^k.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthBound {
    pub c: f64,
    pub alpha: f64,
    pub k: u32,
}

impl GrowthBound {
    pub fn new(c: f64, alpha: f64, k: u32) -> GrowthBound {
        GrowthBound { c, alpha, k }
    }

    #[inline]
    pub fn majorant(&self, n: usize) -> f64 {
        let n = n as f64;
        self.c * n.powf(self.alpha) * (2.0 + n).ln().powi(self.k as i32)
    }

    /// Check the bound against every tabulated value. A relative slack of
    /// 1e-12 absorbs rounding in the majorant itself.
    pub fn verify(&self, f: &FunctionTable) -> Result<()> {
        for n in 1..=f.len() {
            let allowed = self.majorant(n);
            let actual = f.abs(n);
            if actual > allowed * (1.0 + 1e-12) {
                return Err(Error::BoundViolation { n, actual, allowed });
            }
        }
        Ok(())
    }
}
