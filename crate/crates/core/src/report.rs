//! Report rendering: JSON (`acbm-report/1`, fixed key order), Markdown and CSV.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::acbm::class_label;
use crate::crosscheck::CrosscheckReport;
use crate::evaluate::TensorBundle;
use crate::verify::VerificationReport;

pub const SCHEMA: &str = "acbm-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    #[default]
    Markdown,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected json, md or csv)")),
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values are finite or null");
    s.push('\n');
    s
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

pub fn eval_json(manifold: &str, radius: f64, u: [f64; 3], b: &TensorBundle) -> Value {
    let mut quantities = Map::new();
    for (name, v) in b.quantities.named() {
        quantities.insert(name, json!(v));
    }
    json!({
        "schema": SCHEMA,
        "command": "eval",
        "manifold": manifold,
        "radius": radius,
        "point": u,
        "frame": {
            "signs": b.frame.signs,
            "vectors": b.frame.vectors,
        },
        "classes": class_label(&b.decomposition.membership),
        "quantities": Value::Object(quantities),
    })
}

pub fn render_eval(manifold: &str, radius: f64, u: [f64; 3], b: &TensorBundle, format: Format) -> String {
    match format {
        Format::Json => pretty(&eval_json(manifold, radius, u, b)),
        Format::Csv => {
            let mut s = String::from("name,value\n");
            for (name, v) in b.quantities.named() {
                let _ = writeln!(s, "{name},{v:e}");
            }
            s
        }
        Format::Markdown => {
            let mut s = String::new();
            let _ = writeln!(s, "# {manifold}, r = {radius}, u = ({}, {}, {})\n", u[0], u[1], u[2]);
            let _ = writeln!(s, "Class: {}\n", class_label(&b.decomposition.membership));
            let _ = writeln!(s, "Frame signs: {:?}\n", b.frame.signs);
            s.push_str("| quantity | value |\n|---|---|\n");
            for (name, v) in b.quantities.named() {
                let _ = writeln!(s, "| {name} | {v:.12e} |");
            }
            s
        }
    }
}

pub fn verify_json(reports: &[VerificationReport]) -> Value {
    json!({
        "schema": SCHEMA,
        "command": "verify",
        "overall": verdict(reports.iter().all(|r| r.overall)),
        "reports": reports,
    })
}

pub fn render_verify(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => pretty(&verify_json(reports)),
        Format::Csv => {
            let mut s =
                String::from("manifold,radius,name,max_abs_error,max_rel_error,worst_u1,worst_u2,worst_u3,pass\n");
            for r in reports {
                for q in &r.per_quantity {
                    let [a, b, c] = q.worst_point;
                    let _ = writeln!(
                        s,
                        "{},{},{},{:e},{:e},{a},{b},{c},{}",
                        r.manifold,
                        r.radius,
                        q.name,
                        q.max_abs_error,
                        q.max_rel_error,
                        verdict(q.pass)
                    );
                }
            }
            s
        }
        Format::Markdown => {
            let mut s = String::new();
            for r in reports {
                let _ = writeln!(
                    s,
                    "# verify {} r = {} — {}\n",
                    r.manifold,
                    r.radius,
                    verdict(r.overall).to_uppercase()
                );
                let _ = writeln!(
                    s,
                    "{} grid points, tolerance {:e}, {:.1} ms\n",
                    r.grid.len(),
                    r.tolerance,
                    r.runtime_ms
                );
                s.push_str("| item | verdict | evidence |\n|---|---|---|\n");
                for t in &r.theorem_items {
                    let _ = writeln!(s, "| ({}) | {} | {} |", t.item, verdict(t.pass), t.evidence);
                }
                let worst = r
                    .per_quantity
                    .iter()
                    .max_by(|a, b| a.max_abs_error.total_cmp(&b.max_abs_error));
                let failed: Vec<_> = r.failures().collect();
                let _ = writeln!(
                    s,
                    "\n{} quantities compared, {} outside tolerance.",
                    r.per_quantity.len(),
                    failed.len()
                );
                if let Some(w) = worst {
                    let _ = writeln!(s, "Largest absolute error: {} = {:.3e}.", w.name, w.max_abs_error);
                }
                if !failed.is_empty() {
                    s.push_str("\n| quantity | max abs | max rel | worst point |\n|---|---|---|---|\n");
                    for q in failed {
                        let _ = writeln!(
                            s,
                            "| {} | {:.3e} | {:.3e} | {:?} |",
                            q.name, q.max_abs_error, q.max_rel_error, q.worst_point
                        );
                    }
                }
                s.push('\n');
            }
            s
        }
    }
}

pub fn crosscheck_json(r: &CrosscheckReport) -> Value {
    let mut checks = Map::new();
    for (name, v, bound) in r.rows() {
        checks.insert(
            name.to_string(),
            json!({ "max": v, "bound": bound, "verdict": verdict(v < bound) }),
        );
    }
    json!({
        "schema": SCHEMA,
        "command": "crosscheck",
        "manifold": r.manifold,
        "radius": r.radius,
        "samples": r.samples,
        "seed": r.seed,
        "checks": Value::Object(checks),
        "overall": verdict(r.pass()),
    })
}

pub fn render_crosscheck(r: &CrosscheckReport, format: Format) -> String {
    match format {
        Format::Json => pretty(&crosscheck_json(r)),
        Format::Csv => {
            let mut s = String::from("check,max,bound,pass\n");
            for (name, v, bound) in r.rows() {
                let _ = writeln!(s, "{name},{v:e},{bound:e},{}", verdict(v < bound));
            }
            s
        }
        Format::Markdown => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "# crosscheck {} r = {} ({} samples, seed {}) — {}\n",
                r.manifold,
                r.radius,
                r.samples,
                r.seed,
                verdict(r.pass()).to_uppercase()
            );
            s.push_str("| check | max deviation | bound | verdict |\n|---|---|---|---|\n");
            for (name, v, bound) in r.rows() {
                let _ = writeln!(s, "| {name} | {v:.3e} | {bound:.0e} | {} |", verdict(v < bound));
            }
            s
        }
    }
}
