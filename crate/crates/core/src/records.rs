//! Line-oriented `key=value` output.
//!
//! Fields appear in a fixed order per record kind. Values that are empty
//! or contain whitespace, `"` or `\` are double-quoted with backslash
//! escapes. Timing fields are only written on request, so records are
//! byte-identical across runs by default.

use std::fmt;

use crate::suite::{CheckRecord, SuiteReport};
use crate::verdict::Verdict;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Record {
    fields: Vec<(String, String)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn field(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Appends `verdict`, `witness_r`, `witness_points` and `scale`.
    pub fn verdict(self, v: &Verdict) -> Self {
        let r = v.witness_scale().map_or_else(|| "-".to_string(), |r| r.to_string());
        let points = if v.witness_points().is_empty() {
            "-".to_string()
        } else {
            join(v.witness_points())
        };
        self.field("verdict", v.label())
            .field("witness_r", r)
            .field("witness_points", points)
            .field("scale", v.decided_at)
    }
}

pub fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn needs_quotes(v: &str) -> bool {
    v.is_empty() || v.chars().any(|c| c.is_whitespace() || c == '"' || c == '\\')
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if needs_quotes(v) {
                write!(f, "{k}=\"")?;
                for c in v.chars() {
                    if c == '"' || c == '\\' {
                        f.write_str("\\")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("\"")?;
            } else {
                write!(f, "{k}={v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed record at byte {0}")]
pub struct ParseRecordError(pub usize);

/// Inverse of the `Display` impl.
pub fn parse_record(line: &str) -> Result<Record, ParseRecordError> {
    let bytes: Vec<char> = line.chars().collect();
    let mut record = Record::new();
    let mut i = 0;
    while i < bytes.len() {
        while i < bytes.len() && bytes[i] == ' ' {
            i += 1;
        }
        if i == bytes.len() {
            break;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != '=' && bytes[i] != ' ' {
            i += 1;
        }
        if i == bytes.len() || bytes[i] != '=' || i == start {
            return Err(ParseRecordError(start));
        }
        let key: String = bytes[start..i].iter().collect();
        i += 1;
        let mut value = String::new();
        if i < bytes.len() && bytes[i] == '"' {
            i += 1;
            loop {
                match bytes.get(i) {
                    None => return Err(ParseRecordError(i)),
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some('\\') => {
                        value.push(*bytes.get(i + 1).ok_or(ParseRecordError(i))?);
                        i += 2;
                    }
                    Some(&c) => {
                        value.push(c);
                        i += 1;
                    }
                }
            }
        } else {
            while i < bytes.len() && bytes[i] != ' ' {
                value.push(bytes[i]);
                i += 1;
            }
        }
        record.fields.push((key, value));
    }
    Ok(record)
}

pub fn check_record(suite: &str, c: &CheckRecord, timings: bool) -> Record {
    let mut r = Record::new()
        .field("suite", suite)
        .field("id", &c.id)
        .field("anchor", &c.anchor)
        .field("outcome", c.outcome)
        .field("detail", &c.detail)
        .field("witness", c.witness.as_deref().unwrap_or("-"));
    if timings {
        r = r.field("runtime_ms", format!("{:.3}", c.runtime.as_secs_f64() * 1e3));
    }
    r
}

pub fn summary_record(report: &SuiteReport) -> Record {
    let s = report.summary();
    Record::new()
        .field("suite", &report.suite_name)
        .field("summary", "total")
        .field("scale", report.scale)
        .field("pass", s.pass)
        .field("fail", s.fail)
        .field("unknown", s.unknown)
        .field("noted", s.noted)
}

pub fn suite_records(report: &SuiteReport, timings: bool) -> Vec<Record> {
    let mut out: Vec<Record> = report.checks.iter().map(|c| check_record(&report.suite_name, c, timings)).collect();
    out.push(summary_record(report));
    out
}

/// Human-readable rendering carrying the same content as [`suite_records`].
pub fn suite_text(report: &SuiteReport, timings: bool) -> String {
    let mut out = format!("== {} [{}]\n", report.suite_name, report.scale);
    for c in &report.checks {
        out.push_str(&format!("  {:<7} {} ({}): {}", c.outcome.as_str().to_uppercase(), c.id, c.anchor, c.detail));
        if let Some(w) = &c.witness {
            out.push_str(&format!("; witness: {w}"));
        }
        if timings {
            out.push_str(&format!(" [{:.3} ms]", c.runtime.as_secs_f64() * 1e3));
        }
        out.push('\n');
    }
    let s = report.summary();
    out.push_str(&format!(
        "  summary: pass={} fail={} unknown={} noted={}\n",
        s.pass, s.fail, s.unknown, s.noted
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::ScaleWindow;
    use proptest::prelude::*;

    #[test]
    fn quoting() {
        let r = Record::new().field("op", "close").field("args", "a:list(1, 2)").field("empty", "");
        assert_eq!(r.to_string(), r#"op=close args="a:list(1, 2)" empty="""#);
    }

    #[test]
    fn verdict_fields_in_order() {
        let sw = ScaleWindow::new(16, 4096).unwrap();
        let r = Record::new().field("op", "close").verdict(&Verdict::yes(&sw).at(1).with_points([0, 1]));
        assert_eq!(r.to_string(), "op=close verdict=yes witness_r=1 witness_points=0,1 scale=rmax:16,window:4096,cutoff:1024");
        let r = Record::new().verdict(&Verdict::unknown(&sw));
        assert_eq!(r.get("witness_r"), Some("-"));
        assert_eq!(r.get("witness_points"), Some("-"));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_record("novalue").is_err());
        assert!(parse_record("k=\"open").is_err());
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(pairs in proptest::collection::vec(("[a-z_]{1,8}", "[ -~]{0,12}"), 0..6)) {
            let mut r = Record::new();
            for (k, v) in &pairs {
                r = r.field(k, v);
            }
            prop_assert_eq!(parse_record(&r.to_string()).unwrap(), r);
        }
    }
}
