//! Structured pass/fail outcomes for verification checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::fps::TruncatedSeries;

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Location and shape of the first failing coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    /// Power of `q` where the two sides first disagree. For symbolic checks
    /// this is the `q`-exponent of the witness monomial (its `X`/`Y`
    /// exponents go into the report params).
    pub power: usize,
    pub expected: BigInt,
    pub got: BigInt,
}

impl Serialize for Discrepancy {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // Coefficients as decimal strings: they are unbounded integers.
        let mut st = serializer.serialize_struct("Discrepancy", 3)?;
        st.serialize_field("power", &self.power)?;
        st.serialize_field("expected", &self.expected.to_string())?;
        st.serialize_field("got", &self.got.to_string())?;
        st.end()
    }
}

/// Structured result of one verification check.
///
/// Invariant: `status == Fail` iff `first_discrepancy` is present.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub status: Status,
    pub checked_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_discrepancy: Option<Discrepancy>,
    /// Named integer parameters of the check (`n`, `k`, `N`, ...).
    pub params: BTreeMap<String, i64>,
}

impl VerificationReport {
    pub fn pass(subject: impl Into<String>, checked_order: usize, params: &[(&str, i64)]) -> Self {
        VerificationReport {
            subject: subject.into(),
            status: Status::Pass,
            checked_order,
            first_discrepancy: None,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    pub fn fail(
        subject: impl Into<String>,
        checked_order: usize,
        params: &[(&str, i64)],
        discrepancy: Discrepancy,
    ) -> Self {
        VerificationReport {
            subject: subject.into(),
            status: Status::Fail,
            checked_order,
            first_discrepancy: Some(discrepancy),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    /// Compare two series coefficientwise on their common prefix and build a
    /// report; `got` is the computed side, `expected` the reference side.
    pub fn compare_series(
        subject: impl Into<String>,
        got: &TruncatedSeries,
        expected: &TruncatedSeries,
        params: &[(&str, i64)],
    ) -> Self {
        let order = got.order().min(expected.order());
        match got.first_difference(expected) {
            None => Self::pass(subject, order, params),
            Some((power, expected, got)) => Self::fail(
                subject,
                order,
                params,
                Discrepancy {
                    power,
                    expected,
                    got,
                },
            ),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One-line human-readable rendering (the plain CLI format).
    pub fn render_plain(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        let mut line = match self.status {
            Status::Pass => format!("PASS  {}", self.subject),
            Status::Fail => format!("FAIL  {}", self.subject),
        };
        if !params.is_empty() {
            line.push_str(&format!(" [{params}]"));
        }
        line.push_str(&format!(" (order {})", self.checked_order));
        if let Some(d) = &self.first_discrepancy {
            line.push_str(&format!(
                " first discrepancy at q^{}: expected {}, got {}",
                d.power, d.expected, d.got
            ));
        }
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fps::TruncatedSeries;

    #[test]
    fn fail_iff_discrepancy_present() {
        let a = TruncatedSeries::from_i64(&[1, 2, 3]);
        let b = TruncatedSeries::from_i64(&[1, 2, 4]);
        let ok = VerificationReport::compare_series("same", &a, &a, &[("n", 1)]);
        assert!(ok.passed());
        assert!(ok.first_discrepancy.is_none());

        let bad = VerificationReport::compare_series("diff", &a, &b, &[]);
        assert!(!bad.passed());
        let d = bad.first_discrepancy.as_ref().unwrap();
        assert_eq!(d.power, 2);
        assert_eq!(d.expected, BigInt::from(4));
        assert_eq!(d.got, BigInt::from(3));
    }

    #[test]
    fn json_shape_is_stable() {
        let a = TruncatedSeries::from_i64(&[1, 2]);
        let b = TruncatedSeries::from_i64(&[1, 3]);
        let rep = VerificationReport::compare_series("subject", &a, &b, &[("n", 5)]);
        let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["subject"], "subject");
        assert_eq!(v["status"], "fail");
        assert_eq!(v["checked_order"], 2);
        assert_eq!(v["params"]["n"], 5);
        assert_eq!(v["first_discrepancy"]["power"], 1);
        assert_eq!(v["first_discrepancy"]["expected"], "3");
        assert_eq!(v["first_discrepancy"]["got"], "2");

        let ok = VerificationReport::pass("subject", 2, &[]);
        let v: serde_json::Value = serde_json::to_value(&ok).unwrap();
        assert!(v.get("first_discrepancy").is_none());
    }
}
