//! Run reports: aligned text followed by a `key=value` block.

use std::fmt;
use std::time::Duration;

use gvc_core::{evaluate, VertexSet};
use sha2::{Digest, Sha256};

use crate::format::{format_number, serialize, InstanceFile, Problem};

/// Hex SHA-256 of the canonical serialization.
pub fn digest(file: &InstanceFile) -> String {
    hex::encode(Sha256::digest(serialize(file).as_bytes()))
}

/// Objective of `set` on whatever problem the file holds.
pub fn objective(file: &InstanceFile, set: &VertexSet) -> gvc_core::Result<f64> {
    match &file.problem {
        Problem::Gvc { instance, kind, .. } => Ok(evaluate(instance, *kind, set)?.value),
        Problem::Ubqp(q) => Ok(q.objective(set)),
        Problem::Bqp01(q) => Ok(q.objective(set)),
    }
}

pub fn kind_label(file: &InstanceFile) -> &'static str {
    match &file.problem {
        Problem::Gvc { kind, .. } => kind.tag(),
        Problem::Ubqp(_) => "UBQP",
        Problem::Bqp01(_) => "BQP01",
    }
}

/// `{1, 3}` style, 1-based.
pub fn format_subset(set: &VertexSet) -> String {
    let items: Vec<String> = set.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub method: String,
    pub kind: String,
    pub digest: String,
    pub value: f64,
    pub subset: Option<VertexSet>,
    pub wall: Duration,
    pub oracle: Option<f64>,
    pub ratio: Option<f64>,
    /// Method-specific lines, in order.
    pub extra: Vec<(String, String)>,
}

impl RunReport {
    /// Re-evaluates `subset` and refuses a report whose claimed value differs.
    pub fn for_subset(
        method: &str,
        file: &InstanceFile,
        subset: VertexSet,
        claimed: f64,
        wall: Duration,
    ) -> Result<Self, String> {
        let value = objective(file, &subset).map_err(|e| format!("solution does not evaluate: {e}"))?;
        let tol = 1e-9 * (1.0 + value.abs());
        if !(value == claimed || (value - claimed).abs() <= tol) {
            return Err(format!(
                "{method} claimed {claimed} but the subset evaluates to {value}"
            ));
        }
        Ok(RunReport {
            method: method.to_owned(),
            kind: kind_label(file).to_owned(),
            digest: digest(file),
            value,
            subset: Some(subset),
            wall,
            oracle: None,
            ratio: None,
            extra: Vec::new(),
        })
    }

    /// A report without a subset (LP bounds).
    pub fn for_value(method: &str, file: &InstanceFile, value: f64, wall: Duration) -> Self {
        RunReport {
            method: method.to_owned(),
            kind: kind_label(file).to_owned(),
            digest: digest(file),
            value,
            subset: None,
            wall,
            oracle: None,
            ratio: None,
            extra: Vec::new(),
        }
    }

    /// Records the oracle value; the ratio only for a positive optimum.
    pub fn with_oracle(mut self, oracle: f64) -> Self {
        self.oracle = Some(oracle);
        self.ratio = (oracle > 0.0).then(|| self.value / oracle);
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<String>) {
        self.extra.push((key.to_owned(), value.into()));
    }

    fn lines(&self) -> Vec<(String, String, String)> {
        let mut rows = vec![
            ("method", self.method.clone(), self.method.clone()),
            ("kind", self.kind.clone(), self.kind.clone()),
            ("digest", self.digest[..16.min(self.digest.len())].to_owned(), self.digest.clone()),
            ("value", format_number(self.value), format_number(self.value)),
        ];
        if let Some(s) = &self.subset {
            let kv: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
            rows.push(("subset", format_subset(s), kv.join(",")));
        }
        let ms = self.wall.as_secs_f64() * 1e3;
        rows.push(("time_ms", format!("{ms:.3}"), format!("{ms:.3}")));
        if let Some(o) = self.oracle {
            rows.push(("oracle", format_number(o), format_number(o)));
            let r = self.ratio.map_or("n/a".to_owned(), format_number);
            rows.push(("ratio", r.clone(), r));
        }
        let mut out: Vec<(String, String, String)> = rows
            .into_iter()
            .map(|(k, t, v)| (k.to_owned(), t, v))
            .collect();
        for (k, v) in &self.extra {
            out.push((k.clone(), v.clone(), v.clone()));
        }
        out
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines = self.lines();
        let width = lines.iter().map(|l| l.0.len()).max().unwrap_or(0);
        for (k, text, _) in &lines {
            writeln!(f, "{k:<width$}  {text}")?;
        }
        writeln!(f, "---")?;
        for (k, _, v) in &lines {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Reads the `key=value` block of a report.
pub fn parse_block(text: &str) -> Vec<(String, String)> {
    text.split("---\n")
        .nth(1)
        .unwrap_or("")
        .lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_owned(), v.to_owned()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use gvc_core::{EdgeWeights, GvcInstance, ProblemKind};

    fn file() -> InstanceFile {
        let g = GvcInstance::new(vec![1.0, -2.0], [(0, 1, EdgeWeights::new(0.0, 1.0, 3.0))]).unwrap();
        InstanceFile::gvc(g, ProblemKind::Gvc)
    }

    #[test]
    fn value_is_revalidated() {
        let f = file();
        let set = VertexSet::from_members(2, [1]);
        let r = RunReport::for_subset("brute", &f, set.clone(), -1.0, Duration::ZERO).unwrap();
        assert_eq!(r.value, -1.0);
        assert!(RunReport::for_subset("brute", &f, set, -2.0, Duration::ZERO).is_err());
    }

    #[test]
    fn block_is_machine_readable() {
        let f = file();
        let r = RunReport::for_subset("brute", &f, VertexSet::from_members(2, [1]), -1.0, Duration::ZERO)
            .unwrap()
            .with_oracle(-1.0);
        let text = r.to_string();
        let kv = parse_block(&text);
        let get = |k: &str| kv.iter().find(|p| p.0 == k).map(|p| p.1.as_str());
        assert_eq!(get("value"), Some("-1"));
        assert_eq!(get("subset"), Some("2"));
        assert_eq!(get("ratio"), Some("n/a"));
        assert_eq!(get("digest").unwrap().len(), 64);
        assert!(text.starts_with("method   brute\n"), "{text}");
    }
}
