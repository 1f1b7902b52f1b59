use std::fmt::Write as _;

use rainbow_core::{CheckReport, DualityAudit, Evidence, FieldSpec, HypothesisVerdict, VertexId};
use serde::{Deserialize, Serialize};

/// Bumped on any incompatible change to the JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

/// What `check --json` writes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub report: CheckReport,
    /// Wall-clock time of the check. Kept out of the text output so that
    /// stays reproducible.
    pub elapsed_ms: u64,
}

impl ReportFile {
    pub fn new(instance: Option<String>, report: CheckReport, elapsed_ms: u64) -> Self {
        ReportFile { schema_version: SCHEMA_VERSION, instance, report, elapsed_ms }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let file: ReportFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(format!("unsupported schema version {}", file.schema_version));
        }
        Ok(file)
    }
}

pub fn simplex_text(vs: &[VertexId]) -> String {
    vs.iter().map(VertexId::as_str).collect::<Vec<_>>().join(" ")
}

fn evidence_text(e: &Evidence, verdict_field: Option<FieldSpec>) -> String {
    let mut parts = Vec::new();
    if let (Some(d), Some(b)) = (e.degree, e.betti) {
        let space = match &e.subset {
            Some(s) => format!("K_{{{}}}", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
            None => "K".to_string(),
        };
        let field = e.field.filter(|f| Some(*f) != verdict_field).map(|f| format!(" over {f}")).unwrap_or_default();
        parts.push(format!("β̃_{d}({space}) = {b}{field}"));
    }
    if let Some(n) = &e.note {
        parts.push(n.clone());
    }
    parts.join(", ")
}

fn verdict_line(v: &HypothesisVerdict) -> String {
    let field = v.field.map(|f| format!(" [{f}]")).unwrap_or_default();
    let evidence: Vec<String> = v.evidence.iter().map(|e| evidence_text(e, v.field)).filter(|s| !s.is_empty()).collect();
    let tail = if evidence.is_empty() { String::new() } else { format!(": {}", evidence.join("; ")) };
    format!("  {:<10} {}{field}{tail}", v.status.to_string(), v.id)
}

pub fn render_check(r: &CheckReport) -> String {
    let mut out = String::new();
    let fields: Vec<String> = r.fields.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "theorem: {}", r.theorem);
    let _ = writeln!(out, "fields: {}", fields.join(", "));
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(out, "hypotheses:");
    for v in &r.verdicts {
        let _ = writeln!(out, "{}", verdict_line(v));
    }
    let passing: Vec<String> = r.passing_fields.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "passing fields: {}", if passing.is_empty() { "none".into() } else { passing.join(", ") });
    let _ = writeln!(out, "all hypotheses hold: {}", if r.all_hold { "yes" } else { "no" });
    let _ = writeln!(out, "rainbow simplices: {}", r.rainbow_witnesses.len());
    for w in &r.rainbow_witnesses {
        let _ = writeln!(out, "  {}", simplex_text(w));
    }
    if !r.consistent {
        let _ = writeln!(out, "SOUNDNESS ALARM: hypotheses hold but no rainbow simplex exists");
    }
    out
}

pub fn render_audit(a: &DualityAudit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "duality audit over {} on a homology {}-sphere", a.field, a.dim);
    for e in &a.entries {
        let set = |s: &[usize]| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(
            out,
            "  {} S={{{}}}: β̃_{}(K_S) = {}, β̃_{}(K_Sᶜ) = {} (Sᶜ={{{}}})",
            if e.equal { "ok  " } else { "FAIL" },
            set(&e.subset),
            e.degree,
            e.betti,
            e.complement_degree,
            e.complement_betti,
            set(&e.complement),
        );
    }
    let _ = writeln!(out, "result: {}", if a.pass { "pass" } else { "fail" });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rainbow_core::{check_meshulam, Coloring, SimplicialComplex};

    #[test]
    fn report_round_trips() {
        let k = SimplicialComplex::from_facets([["a", "b", "c"], ["a", "b", "d"], ["a", "c", "d"], ["b", "c", "d"]])
            .unwrap();
        let c = Coloring::new([vec!["a"], vec!["b"], vec!["c", "d"]]);
        let r = check_meshulam(&k, &c, FieldSpec::Q).unwrap();
        let file = ReportFile::new(Some("tetra".into()), r, 3);
        assert_eq!(ReportFile::from_json(&file.to_json()).unwrap(), file);
    }

    #[test]
    fn future_schema_is_rejected() {
        let k = SimplicialComplex::from_facets([["a", "b"]]).unwrap();
        let r = check_meshulam(&k, &Coloring::new([["a"], ["b"]]), FieldSpec::GF2).unwrap();
        let mut file = ReportFile::new(None, r, 0);
        file.schema_version = 99;
        assert!(ReportFile::from_json(&file.to_json()).is_err());
    }
}
