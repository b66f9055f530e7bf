//! Study output: one statistic per row, plus the pass/fail checks.

use serde::{Deserialize, Serialize};

pub const CSV_HEADER: &str = "study,alpha,delta,T,reps,seed,stat,value,std_err";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub study: String,
    pub alpha: f64,
    pub delta: f64,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub reps: u64,
    pub seed: u64,
    pub stat: String,
    pub value: f64,
    pub std_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<Row>,
    pub checks: Vec<Check>,
}

/// Shared row coordinates for one parameter point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Point<'a> {
    pub study: &'a str,
    pub alpha: f64,
    pub delta: f64,
    pub horizon: f64,
    pub reps: u64,
    pub seed: u64,
}

impl Point<'_> {
    pub fn row(&self, stat: impl Into<String>, value: f64, std_err: f64) -> Row {
        Row {
            study: self.study.to_string(),
            alpha: self.alpha,
            delta: self.delta,
            horizon: self.horizon,
            reps: self.reps,
            seed: self.seed,
            stat: stat.into(),
            value,
            std_err,
        }
    }
}

impl Report {
    pub fn new() -> Self {
        Self { rows: Vec::new(), checks: Vec::new() }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn extend(&mut self, other: Report) {
        self.rows.extend(other.rows);
        self.checks.extend(other.checks);
    }

    /// Rows whose `stat` equals `stat`.
    pub fn stat<'a>(&'a self, stat: &'a str) -> impl Iterator<Item = &'a Row> + 'a {
        self.rows.iter().filter(move |r| r.stat == stat)
    }

    pub fn find_check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                r.study,
                format_g17(r.alpha),
                format_g17(r.delta),
                format_g17(r.horizon),
                r.reps,
                r.seed,
                r.stat,
                format_g17(r.value),
                format_g17(r.std_err)
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

impl Default for Report {
    fn default() -> Self {
        Self::new()
    }
}

/// Parses the CSV produced by [`Report::to_csv`] back into rows.
pub fn parse_csv(text: &str) -> Result<Vec<Row>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err("missing or unexpected header".into());
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 9 {
                return Err(format!("line {}: expected 9 fields, got {}", i + 2, f.len()));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|e| format!("line {}: {e}", i + 2));
            let int = |s: &str| s.parse::<u64>().map_err(|e| format!("line {}: {e}", i + 2));
            Ok(Row {
                study: f[0].to_string(),
                alpha: num(f[1])?,
                delta: num(f[2])?,
                horizon: num(f[3])?,
                reps: int(f[4])?,
                seed: int(f[5])?,
                stat: f[6].to_string(),
                value: num(f[7])?,
                std_err: num(f[8])?,
            })
        })
        .collect()
}

/// Formats like C's `%.17g`.
pub fn format_g17(x: f64) -> String {
    const P: i32 = 17;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (P - 1 - exp) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
