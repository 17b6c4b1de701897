//! The verification driver: expand both sides, compare, report.

use serde::Serialize;
use std::sync::Arc;
use std::time::Instant;

use crate::cyclotomic::CycloField;
use crate::dsl;
use crate::error::{Error, Result};
use crate::registry::{builtin_registry, IdentitySpec};
use crate::series::QSeries;

/// Outcome of one identity verification.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "ERROR")]
    Error,
}

/// Full verification record. A `Pass` means the residual is exactly zero on
/// the reported half-open window.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub name: String,
    pub status: Status,
    /// Effective comparison window [low, high), when both sides evaluated.
    pub window: Option<(i64, i64)>,
    /// On FAIL: smallest exponent whose coefficients differ.
    pub first_mismatch: Option<i64>,
    /// On FAIL: the two differing coefficients, rendered.
    pub mismatch_detail: Option<(String, String)>,
    /// On ERROR: engine error detail.
    pub error: Option<String>,
    pub elapsed_ms: u128,
}

/// Aggregate of a batch run, in registry order.
#[derive(Clone, Debug)]
pub struct BatchReport {
    pub reports: Vec<VerificationReport>,
}

impl BatchReport {
    pub fn passed(&self) -> usize {
        self.count(Status::Pass)
    }
    pub fn failed(&self) -> usize {
        self.count(Status::Fail)
    }
    pub fn errored(&self) -> usize {
        self.count(Status::Error)
    }
    fn count(&self, s: Status) -> usize {
        self.reports.iter().filter(|r| r.status == s).count()
    }
    pub fn all_passed(&self) -> bool {
        self.passed() == self.reports.len()
    }
}

// JSON mirrors of the reports. Wall time is deliberately excluded so that
// repeated runs serialize byte-identically.
#[derive(Serialize)]
struct ReportJson<'a> {
    name: &'a str,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    window: Option<[i64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_mismatch: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

#[derive(Serialize)]
struct BatchJson<'a> {
    pass: usize,
    fail: usize,
    error: usize,
    reports: Vec<ReportJson<'a>>,
}

impl VerificationReport {
    fn to_json_struct(&self) -> ReportJson<'_> {
        ReportJson {
            name: &self.name,
            status: self.status,
            window: self.window.map(|(lo, hi)| [lo, hi]),
            first_mismatch: self.first_mismatch,
            error: self.error.as_deref(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_struct()).expect("report serialization")
    }

    /// One human-readable line.
    pub fn text_line(&self) -> String {
        match self.status {
            Status::Pass => {
                let (lo, hi) = self.window.expect("pass has a window");
                format!(
                    "PASS  {:<16} window=[{}, {})  {} ms",
                    self.name, lo, hi, self.elapsed_ms
                )
            }
            Status::Fail => {
                let at = self.first_mismatch.expect("fail has a mismatch");
                let detail = self
                    .mismatch_detail
                    .as_ref()
                    .map(|(l, r)| format!("  lhs={} rhs={}", l, r))
                    .unwrap_or_default();
                format!(
                    "FAIL  {:<16} first mismatch at q^{}{}  {} ms",
                    self.name, at, detail, self.elapsed_ms
                )
            }
            Status::Error => format!(
                "ERROR {:<16} {}",
                self.name,
                self.error.as_deref().unwrap_or("unknown")
            ),
        }
    }
}

impl BatchReport {
    pub fn to_json(&self) -> String {
        let batch = BatchJson {
            pass: self.passed(),
            fail: self.failed(),
            error: self.errored(),
            reports: self.reports.iter().map(|r| r.to_json_struct()).collect(),
        };
        serde_json::to_string_pretty(&batch).expect("batch serialization")
    }
}

/// The verifier holds the coefficient field and the identity set.
pub struct Verifier {
    field: Arc<CycloField>,
    registry: Vec<IdentitySpec>,
}

impl Verifier {
    /// Built-in registry over Q(zeta_K); the default K is 12.
    pub fn new(k: u32) -> Result<Verifier> {
        Ok(Verifier {
            field: CycloField::new(k)?,
            registry: builtin_registry(),
        })
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn registry(&self) -> &[IdentitySpec] {
        &self.registry
    }

    /// Append ingested identities; duplicate names are rejected.
    pub fn add_identities(&mut self, extra: Vec<IdentitySpec>) -> Result<()> {
        for spec in extra {
            if self.registry.iter().any(|s| s.name == spec.name) {
                return Err(Error::Ingest(format!(
                    "duplicate identity name `{}`",
                    spec.name
                )));
            }
            self.registry.push(spec);
        }
        Ok(())
    }

    pub fn find(&self, name: &str) -> Option<&IdentitySpec> {
        self.registry.iter().find(|s| s.name == name)
    }

    /// Verify one registry identity by name.
    pub fn verify(&self, name: &str, order: Option<i64>) -> Result<VerificationReport> {
        let spec = self.find(name).ok_or_else(|| Error::UnknownIdentity {
            name: name.to_string(),
        })?;
        Ok(self.verify_spec(spec, order))
    }

    /// Verify every identity carrying all of the given tags (no tags: the
    /// whole registry). Individual failures and errors never stop the batch.
    pub fn verify_all(&self, tags: &[String], order: Option<i64>) -> BatchReport {
        let reports = self
            .registry
            .iter()
            .filter(|s| tags.iter().all(|t| s.tags.contains(t)))
            .map(|s| self.verify_spec(s, order))
            .collect();
        BatchReport { reports }
    }

    /// Evaluate an expression, widening the internal order until the output
    /// window covers the requested order (division shifts windows).
    pub fn evaluate_to_order(&self, expr: &dsl::Expr, order: i64) -> Result<QSeries> {
        let mut internal = order;
        let mut out = dsl::evaluate(expr, &self.field, internal)?;
        for _ in 0..4 {
            if out.prec() >= order {
                break;
            }
            internal += order - out.prec();
            out = dsl::evaluate(expr, &self.field, internal)?;
        }
        Ok(out)
    }

    /// Verify one identity at the given order (default: the spec's own).
    pub fn verify_spec(&self, spec: &IdentitySpec, order: Option<i64>) -> VerificationReport {
        let start = Instant::now();
        let order = order.unwrap_or(spec.default_order);
        let mut report = VerificationReport {
            name: spec.name.clone(),
            status: Status::Error,
            window: None,
            first_mismatch: None,
            mismatch_detail: None,
            error: None,
            elapsed_ms: 0,
        };

        let outcome = (|| -> Result<()> {
            if self.field.k() % spec.cyclotomic_order != 0 {
                return Err(Error::FieldTooSmall {
                    name: spec.name.clone(),
                    needed: spec.cyclotomic_order,
                    k: self.field.k(),
                });
            }
            let lhs_expr = dsl::parse(&spec.lhs)?;
            let rhs_expr = dsl::parse(&spec.rhs)?;
            let lhs = self.evaluate_to_order(&lhs_expr, order)?;
            let rhs = self.evaluate_to_order(&rhs_expr, order)?;
            let lhs = lhs.truncate(order);
            let rhs = rhs.truncate(order);
            let residual = lhs.residual(&rhs)?;
            report.window = Some(residual.window);
            match residual.first_mismatch {
                None => report.status = Status::Pass,
                Some(e) => {
                    report.status = Status::Fail;
                    report.first_mismatch = Some(e);
                    report.mismatch_detail =
                        Some((lhs.coeff(e).to_string(), rhs.coeff(e).to_string()));
                }
            }
            Ok(())
        })();

        if let Err(e) = outcome {
            report.status = Status::Error;
            report.error = Some(e.to_string());
        }
        report.elapsed_ms = start.elapsed().as_millis();
        report
    }
}

/// A copy of `spec` with `+ q^k` added to the right-hand side; used by the
/// mutation-sensitivity controls.
pub fn mutated_spec(spec: &IdentitySpec, k: i64) -> IdentitySpec {
    let mut out = spec.clone();
    out.name = format!("{}-mutated", spec.name);
    out.rhs = format!("({}) + q^{}", spec.rhs, k);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_identity_is_an_error() {
        let v = Verifier::new(12).unwrap();
        assert!(matches!(
            v.verify("no-such-identity", None),
            Err(Error::UnknownIdentity { .. })
        ));
    }

    #[test]
    fn shorthand_identity_passes_quickly() {
        let v = Verifier::new(12).unwrap();
        let spec = IdentitySpec {
            name: "test-tb01".into(),
            lhs: "Tb(0,1)".into(),
            rhs: "2*Tb(1,4)".into(),
            default_order: 60,
            cyclotomic_order: 2,
            tags: vec![],
            valence_group: None,
        };
        let report = v.verify_spec(&spec, None);
        assert_eq!(report.status, Status::Pass);
        let (lo, hi) = report.window.unwrap();
        assert!(lo <= 0 && hi >= 60);
    }

    #[test]
    fn mutation_flips_to_fail_with_exponent() {
        let v = Verifier::new(12).unwrap();
        let spec = IdentitySpec {
            name: "test-tb01".into(),
            lhs: "Tb(0,1)".into(),
            rhs: "2*Tb(1,4)".into(),
            default_order: 40,
            cyclotomic_order: 2,
            tags: vec![],
            valence_group: None,
        };
        let bad = mutated_spec(&spec, 7);
        let report = v.verify_spec(&bad, None);
        assert_eq!(report.status, Status::Fail);
        assert_eq!(report.first_mismatch, Some(7));
    }

    #[test]
    fn field_too_small_reports_error() {
        let v = Verifier::new(2).unwrap();
        let report = v.verify("tenth-1", Some(10)).unwrap();
        assert_eq!(report.status, Status::Error);
        assert!(report.error.unwrap().contains("cyclotomic order"));
    }

    #[test]
    fn json_shape_is_stable() {
        let v = Verifier::new(12).unwrap();
        let spec = IdentitySpec {
            name: "j".into(),
            lhs: "q".into(),
            rhs: "q".into(),
            default_order: 5,
            cyclotomic_order: 2,
            tags: vec![],
            valence_group: None,
        };
        let r1 = v.verify_spec(&spec, None).to_json();
        let r2 = v.verify_spec(&spec, None).to_json();
        assert_eq!(r1, r2);
        assert!(r1.contains("\"status\": \"PASS\""));
        assert!(!r1.contains("elapsed"));
    }
}
