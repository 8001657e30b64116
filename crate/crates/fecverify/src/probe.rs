//! Measurement recording for checks.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Real(f64),
    Text(String),
    List(Vec<Value>),
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

macro_rules! int_value {
    ($($t:ty),*) => {$(
        impl From<$t> for Value {
            fn from(v: $t) -> Self {
                Value::Int(v as i64)
            }
        }
    )*};
}
int_value!(i32, i64, u32, u64, usize);

impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(v: Vec<T>) -> Self {
        Value::List(v.into_iter().map(Into::into).collect())
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Text("none".into()), Into::into)
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(i) => write!(f, "{i}"),
            Value::Real(x) => write!(f, "{x:.6e}"),
            Value::Text(s) => f.write_str(s),
            Value::List(v) => {
                f.write_str("[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measurement {
    pub label: String,
    /// `None` for informational values.
    pub expected: Option<Value>,
    pub actual: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub ok: bool,
}

/// Collects measurements; the check passes iff every one is ok.
#[derive(Debug, Default, Clone)]
pub struct Probe {
    measurements: Vec<Measurement>,
}

impl Probe {
    pub fn new() -> Self {
        Self::default()
    }

    /// `|actual - expected| <= tol`.
    pub fn close(&mut self, label: impl Into<String>, expected: f64, actual: f64, tol: f64) -> bool {
        let ok = (actual - expected).abs() <= tol;
        self.push(label, Some(expected.into()), actual.into(), Some(tol), ok)
    }

    /// Worst-case deviation over a sweep, required to stay within `tol`.
    pub fn max_error(&mut self, label: impl Into<String>, errors: impl IntoIterator<Item = f64>, tol: f64) -> bool {
        let mut worst = 0.0f64;
        for e in errors {
            if e.is_nan() {
                worst = e;
                break;
            }
            worst = worst.max(e);
        }
        let ok = worst <= tol;
        self.push(label, Some(0.0.into()), worst.into(), Some(tol), ok)
    }

    pub fn equal<T: Into<Value> + PartialEq>(&mut self, label: impl Into<String>, expected: T, actual: T) -> bool {
        let ok = expected == actual;
        self.push(label, Some(expected.into()), actual.into(), None, ok)
    }

    pub fn holds(&mut self, label: impl Into<String>, cond: bool) -> bool {
        self.push(label, Some(true.into()), cond.into(), None, cond)
    }

    pub fn note(&mut self, label: impl Into<String>, value: impl Into<Value>) {
        self.push(label, None, value.into(), None, true);
    }

    fn push(&mut self, label: impl Into<String>, expected: Option<Value>, actual: Value, tolerance: Option<f64>, ok: bool) -> bool {
        self.measurements.push(Measurement {
            label: label.into(),
            expected,
            actual,
            tolerance,
            ok,
        });
        ok
    }

    pub fn passed(&self) -> bool {
        self.measurements.iter().all(|m| m.ok)
    }

    pub fn measurements(&self) -> &[Measurement] {
        &self.measurements
    }

    pub fn into_measurements(self) -> Vec<Measurement> {
        self.measurements
    }
}
