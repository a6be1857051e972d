use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckEntry {
    pub check_name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

/// Outcome of a verification run; serialized as JSON by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub model: String,
    pub grid: String,
    pub entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn new(model: impl Into<String>, grid: impl Into<String>) -> Self {
        VerificationReport { model: model.into(), grid: grid.into(), entries: Vec::new() }
    }

    /// Records `measured ≤ tolerance`; NaN never passes.
    pub fn record(&mut self, name: impl Into<String>, measured: f64, tolerance: f64, notes: impl Into<String>) -> bool {
        let pass = measured <= tolerance;
        self.entries.push(CheckEntry { check_name: name.into(), measured, tolerance, pass, notes: notes.into() });
        pass
    }

    /// Records a check that could not be measured.
    pub fn record_failure(&mut self, name: impl Into<String>, tolerance: f64, notes: impl Into<String>) {
        self.entries.push(CheckEntry { check_name: name.into(), measured: f64::NAN, tolerance, pass: false, notes: notes.into() });
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    /// Pretty JSON; non-finite measurements become `null`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rules() {
        let mut r = VerificationReport::new("m", "g");
        assert!(r.record("a", 1e-7, 1e-6, ""));
        assert!(r.record("b", 1e-6, 1e-6, ""));
        assert!(r.all_pass());
        assert!(!r.record("c", f64::NAN, 1.0, "nan"));
        assert!(!r.all_pass());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(v["entries"][2]["measured"].is_null());
        assert_eq!(v["entries"][0]["check_name"], "a");
    }
}
