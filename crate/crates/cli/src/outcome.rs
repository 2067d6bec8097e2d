//! Command results and their text and CSV renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use diamfree::johnson::JohnsonReport;
use diamfree::verify::SuiteReport;

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Gen(GenResult),
    Solve(SolveResult),
    Canon(CanonResult),
    Verify(VerifyResult),
    JohnsonVerify(JohnsonResult),
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GenResult {
    pub signature: [usize; 3],
    pub count: usize,
    pub points: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassSummary {
    pub size: usize,
    pub orbit_length: Option<u128>,
    pub form: Vec<String>,
    pub representative: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SolveResult {
    pub signature: [usize; 3],
    pub threshold_sq: u32,
    pub vertices: usize,
    pub edges: usize,
    pub alpha: usize,
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub enumerated: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub classes: Option<Vec<ClassSummary>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CanonResult {
    pub signature: [usize; 3],
    pub size: usize,
    pub form: Vec<String>,
    pub permutation: Vec<usize>,
    pub cycles: String,
    pub stabilizer_order: Option<u128>,
    pub orbit_length: Option<u128>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyResult {
    pub k_min: usize,
    pub k_max: usize,
    pub slow: bool,
    pub passed: bool,
    pub report: SuiteReport,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct JohnsonVariant {
    pub variant: String,
    pub passed: bool,
    #[serde(flatten)]
    pub report: JohnsonReport,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct JohnsonResult {
    pub passed: bool,
    pub variants: Vec<JohnsonVariant>,
}

impl Outcome {
    /// False when a verification inside the outcome failed.
    pub fn passed(&self) -> bool {
        match self {
            Outcome::Verify(v) => v.passed,
            Outcome::JohnsonVerify(j) => j.passed,
            _ => true,
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        match self {
            Outcome::Gen(g) => {
                for p in &g.points {
                    out.push_str(p);
                    out.push('\n');
                }
            }
            Outcome::Solve(s) => {
                let [m, k, l] = s.signature;
                let _ = writeln!(out, "L({m},{k},{l}): {} vertices, {} edges at squared distance >= {}", s.vertices, s.edges, s.threshold_sq);
                let _ = writeln!(out, "alpha {}", s.alpha);
                let _ = writeln!(out, "witness:");
                for p in &s.witness {
                    let _ = writeln!(out, "  {p}");
                }
                if let Some(sets) = &s.enumerated {
                    let _ = writeln!(out, "maximum sets: {}", sets.len());
                }
                if let Some(classes) = &s.classes {
                    let _ = writeln!(out, "classes: {}", classes.len());
                    for (i, c) in classes.iter().enumerate() {
                        let orbit = c.orbit_length.map_or_else(|| "?".to_owned(), |o| o.to_string());
                        let _ = writeln!(out, "class {i}: {} sets (orbit length {orbit})", c.size);
                        for row in &c.representative {
                            let _ = writeln!(out, "  {row}");
                        }
                    }
                }
            }
            Outcome::Canon(c) => {
                let _ = writeln!(out, "canonical form ({} rows):", c.size);
                for row in &c.form {
                    let _ = writeln!(out, "  {row}");
                }
                let _ = writeln!(out, "permutation {:?}", c.permutation);
                let _ = writeln!(out, "cycles {}", c.cycles);
                if let Some(s) = c.stabilizer_order {
                    let _ = writeln!(out, "stabilizer order {s}");
                }
                if let Some(o) = c.orbit_length {
                    let _ = writeln!(out, "orbit length {o}");
                }
            }
            Outcome::Verify(v) => {
                for c in &v.report.checks {
                    let mark = if c.passed { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "{mark} {}: expected {}, observed {}", c.name, c.expected, c.observed);
                }
                let failed = v.report.failures().count();
                let _ = writeln!(out, "{}: {} checks, {failed} failed", v.report.suite, v.report.checks.len());
            }
            Outcome::JohnsonVerify(j) => {
                for v in &j.variants {
                    let mark = if v.passed { "PASS" } else { "FAIL" };
                    let _ = writeln!(
                        out,
                        "{mark} {}: size {}, squared distances {{{}}}, maximal {}, violations {}",
                        v.variant,
                        v.report.size,
                        v.report.distance_set.join(", "),
                        v.report.maximal,
                        v.report.violations.len()
                    );
                }
            }
        }
        out
    }

    pub fn csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match self {
            Outcome::Gen(g) => {
                for p in &g.points {
                    w.write_record(p.chars().map(|c| match c {
                        '+' => "1",
                        '-' => "-1",
                        _ => "0",
                    }))?;
                }
            }
            Outcome::Solve(s) => {
                w.write_record(["set", "vector"])?;
                let sets: Vec<&Vec<String>> = match &s.enumerated {
                    Some(sets) => sets.iter().collect(),
                    None => vec![&s.witness],
                };
                for (i, set) in sets.iter().enumerate() {
                    for p in set.iter() {
                        w.write_record([i.to_string().as_str(), p])?;
                    }
                }
            }
            Outcome::Canon(c) => {
                w.write_record(["row", "vector"])?;
                for (i, row) in c.form.iter().enumerate() {
                    w.write_record([i.to_string().as_str(), row])?;
                }
            }
            Outcome::Verify(v) => {
                w.write_record(["name", "expected", "observed", "passed"])?;
                for c in &v.report.checks {
                    w.write_record([&c.name, &c.expected, &c.observed, &c.passed.to_string()])?;
                }
            }
            Outcome::JohnsonVerify(j) => {
                w.write_record(["variant", "size", "distance_set", "maximal", "violations", "passed"])?;
                for v in &j.variants {
                    w.write_record([
                        v.variant.clone(),
                        v.report.size.to_string(),
                        v.report.distance_set.join(" "),
                        v.report.maximal.to_string(),
                        v.report.violations.len().to_string(),
                        v.passed.to_string(),
                    ])?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv of ASCII fields"))
    }
}
