use qrr_core::corpus::{Status, VerificationReport};
use qrr_core::Rational;
use serde::Serialize;

/// Exact `p/q` form, denominator always present.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct MismatchJson {
    pub exponent: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ReportJson {
    pub id: String,
    pub order: usize,
    pub status: &'static str,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<MismatchJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        ReportJson {
            id: r.id.clone(),
            order: r.order,
            status: match r.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Error => "error",
            },
            elapsed_ms: u64::try_from(r.elapsed_ms).unwrap_or(u64::MAX),
            mismatch: r.mismatch.as_ref().map(|m| MismatchJson {
                exponent: m.exponent,
                lhs: rational_string(&m.lhs),
                rhs: rational_string(&m.rhs),
            }),
            note: r.note.clone(),
        }
    }
}

pub fn to_json(r: &VerificationReport) -> String {
    serde_json::to_string(&ReportJson::from(r)).expect("report serializes")
}

pub fn to_line(r: &VerificationReport) -> String {
    let mut line = format!("{:<16} {:>5} {:<5} {:>7} ms", r.id, r.order, r.status, r.elapsed_ms);
    if let Some(m) = &r.mismatch {
        line.push_str(&format!("  {m}"));
    }
    if let Some(n) = &r.note {
        line.push_str(&format!("  ({n})"));
    }
    line
}
