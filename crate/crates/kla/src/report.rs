//! Command reports: one JSON object per run, or a plain-text rendering.

use kla_core::cohomology::{BettiTable, Verdict};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

/// Bumped whenever a field name or shape changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default)]
pub struct Report {
    command: String,
    fields: Map<String, Value>,
    lines: Vec<String>,
    checks: Vec<(String, bool)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Records a named verdict; any failed check makes the run exit with 1.
    pub fn check(&mut self, name: &str, passed: bool) {
        self.checks.push((name.to_string(), passed));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }

    pub fn to_json(&self) -> String {
        let mut obj = self.fields.clone();
        obj.insert("version".into(), json!(SCHEMA_VERSION));
        obj.insert("command".into(), json!(self.command));
        let checks: Map<String, Value> = self
            .checks
            .iter()
            .map(|(n, ok)| (n.clone(), json!(if *ok { "pass" } else { "fail" })))
            .collect();
        obj.insert("checks".into(), Value::Object(checks));
        obj.insert("status".into(), json!(if self.passed() { "pass" } else { "fail" }));
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        s
    }
}

pub fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

/// Integers as numbers, other fractions as `"p/q"` strings.
pub fn rat_json(q: &BigRational) -> Value {
    if q.is_integer() {
        int_json(q.numer())
    } else {
        json!(q.to_string())
    }
}

pub fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Pass { up_to } => json!({ "status": "pass", "up_to": up_to }),
        Verdict::Fail { i, j, value } => json!({
            "status": "fail",
            "witness": { "i": i, "j": j, "value": value },
        }),
    }
}

pub fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Pass { up_to } => format!("PASS through degree {up_to}"),
        Verdict::Fail { i, j, value } => format!("FAIL: b_{{{i},{j}}} = {value}"),
    }
}

/// Nonzero `b_{i,j}` with `i >= 1` as `[i, j, b]` triples.
pub fn betti_json(b: &BettiTable) -> Value {
    let nonzero: Vec<Value> = b.nonzero().into_iter().filter(|e| e.0 > 0).map(|(i, j, x)| json!([i, j, x])).collect();
    let table: Vec<Vec<usize>> = (0..=b.rows()).map(|i| (0..=b.max_degree()).map(|j| b.get(i, j)).collect()).collect();
    json!({
        "max_degree": b.max_degree(),
        "rows": b.rows(),
        "nonzero": nonzero,
        "table": table,
    })
}

/// `1 + 4t + t^2`, dropping zero terms.
pub fn poly_text<T: ToString>(coeffs: &[T]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        let c = c.to_string();
        if c == "0" {
            continue;
        }
        let (neg, abs) = match c.strip_prefix('-') {
            Some(a) => (true, a.to_string()),
            None => (false, c),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match i {
            0 => out.push_str(&abs),
            _ => {
                if abs != "1" {
                    out.push_str(&abs);
                }
                out.push('t');
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// The Betti grid with `i` down and `j` across; zero entries are blank.
pub fn betti_grid(b: &BettiTable) -> String {
    let n = b.max_degree() as usize;
    let cell = |i: usize, j: usize| {
        let x = b.get(i, j as u32);
        if x == 0 {
            String::new()
        } else {
            x.to_string()
        }
    };
    let mut width = vec![0usize; n + 1];
    for (j, w) in width.iter_mut().enumerate() {
        *w = j.to_string().len();
        for i in 0..=b.rows() {
            *w = (*w).max(cell(i, j).len());
        }
    }
    let label = b.rows().to_string().len().max(3);
    let mut out = format!("{:>label$}", "i\\j");
    for (j, w) in width.iter().enumerate() {
        out.push_str(&format!(" {j:>w$}"));
    }
    out.push('\n');
    for i in 0..=b.rows() {
        let mut row = format!("{i:>label$}");
        for (j, w) in width.iter().enumerate() {
            row.push_str(&format!(" {:>w$}", cell(i, j)));
        }
        out.push_str(row.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_sorted_and_versioned() {
        let mut r = Report::new("dims");
        r.set("dims", json!([4, 5]));
        r.set("alpha", json!(1));
        r.check("ok", true);
        let s = r.to_json();
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["version"], json!(SCHEMA_VERSION));
        assert_eq!(v["status"], json!("pass"));
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"dims\"").unwrap());
    }

    #[test]
    fn big_and_fractional_numbers() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int_json(&big), json!("123456789012345678901234567890"));
        let q = BigRational::new(3.into(), 6.into());
        assert_eq!(rat_json(&q), json!("1/2"));
        assert_eq!(rat_json(&BigRational::from_integer(4.into())), json!(4));
    }

    #[test]
    fn polynomial_text() {
        assert_eq!(poly_text(&[1, 4, 1]), "1 + 4t + t^2");
        assert_eq!(poly_text(&[1, 0, -3, 1]), "1 - 3t^2 + t^3");
        assert_eq!(poly_text::<i32>(&[]), "0");
    }

    #[test]
    fn failed_check_fails_report() {
        let mut r = Report::new("x");
        r.check("a", true);
        r.check("b", false);
        assert!(!r.passed());
    }
}
