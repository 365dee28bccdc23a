//! Structured verification reports.
//!
//! A report is emitted either as a diff-friendly key-value text document or
//! as JSON. Both renderings are deterministic: rerunning with the same model,
//! configuration and seed reproduces the bytes exactly (field order is fixed
//! by the struct, collections are pre-sorted, and no timing data is stored).

use serde::Serialize;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct SampleRecord {
    /// "sample 3" for randomized samples, "check <name>" for fixed checks.
    pub label: String,
    /// Parameter values drawn for this record, in declaration order.
    pub params: Vec<(String, u64)>,
    /// Coordinate evaluation point, when the comparison happened over the
    /// field; empty when the comparison stayed symbolic.
    pub point: Vec<(String, u64)>,
    /// Number of points rejected (poles) before this one was accepted.
    pub resamples: u32,
    /// "pass", "fail", or "soft-fail" (failure at a prime below the model's
    /// pinned range, logged as a potentially excluded prime).
    pub verdict: String,
    /// "symbolic", "sampled", or "exact".
    pub mode: String,
    /// u-samples used by the sampled pencil comparison (0 when symbolic).
    pub u_samples: u32,
    /// -log2 of the Schwartz-Zippel failure bound (0 when exact).
    pub log2_bound: u32,
    /// Witnessing characteristic-polynomial pair on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl SampleRecord {
    pub fn check(name: &str) -> SampleRecord {
        SampleRecord {
            label: format!("check {name}"),
            params: Vec::new(),
            point: Vec::new(),
            resamples: 0,
            verdict: "pass".into(),
            mode: "exact".into(),
            u_samples: 0,
            log2_bound: 0,
            detail: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub tool_version: String,
    pub model: String,
    pub prime: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u64>,
    pub seed: u64,
    pub samples: u32,
    pub strategy: String,
    pub notes: Vec<String>,
    pub records: Vec<SampleRecord>,
    pub passed: u32,
    pub failed: u32,
    pub soft_failed: u32,
    pub result: String,
}

impl VerificationReport {
    pub fn new(model: &str, prime: u64, ell: Option<u64>, seed: u64, strategy: &str) -> Self {
        VerificationReport {
            schema: REPORT_SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            model: model.to_string(),
            prime,
            ell,
            seed,
            samples: 0,
            strategy: strategy.to_string(),
            notes: Vec::new(),
            records: Vec::new(),
            passed: 0,
            failed: 0,
            soft_failed: 0,
            result: "PASS".into(),
        }
    }

    pub fn push(&mut self, record: SampleRecord) {
        match record.verdict.as_str() {
            "pass" => self.passed += 1,
            "soft-fail" => self.soft_failed += 1,
            _ => self.failed += 1,
        }
        self.records.push(record);
        self.result = if self.failed == 0 { "PASS" } else { "FAIL" }.to_string();
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("report-schema: {}\n", self.schema));
        out.push_str(&format!("tool-version: {}\n", self.tool_version));
        out.push_str(&format!("model: {}\n", self.model));
        out.push_str(&format!("prime: {}\n", self.prime));
        if let Some(ell) = self.ell {
            out.push_str(&format!("ell: {ell}\n"));
        }
        out.push_str(&format!("seed: {}\n", self.seed));
        out.push_str(&format!("samples: {}\n", self.samples));
        out.push_str(&format!("strategy: {}\n", self.strategy));
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        for r in &self.records {
            out.push_str(&format!("{}:\n", r.label));
            if !r.params.is_empty() {
                let params: Vec<String> =
                    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out.push_str(&format!("  params: {}\n", params.join(" ")));
            }
            if !r.point.is_empty() {
                let point: Vec<String> = r.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out.push_str(&format!("  point: {}\n", point.join(" ")));
            }
            if r.resamples > 0 {
                out.push_str(&format!("  resamples: {}\n", r.resamples));
            }
            out.push_str(&format!("  mode: {}", r.mode));
            if r.u_samples > 0 {
                out.push_str(&format!(
                    " (u-samples: {}, bound: 2^-{})",
                    r.u_samples, r.log2_bound
                ));
            }
            out.push('\n');
            out.push_str(&format!("  verdict: {}\n", r.verdict));
            if let Some(detail) = &r.detail {
                for line in detail.lines() {
                    out.push_str(&format!("  | {line}\n"));
                }
            }
        }
        out.push_str(&format!(
            "summary: pass={} fail={} soft-fail={}\n",
            self.passed, self.failed, self.soft_failed
        ));
        out.push_str(&format!("result: {}\n", self.result));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
