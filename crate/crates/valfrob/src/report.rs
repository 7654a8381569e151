//! Rendering of classification reports as JSON and as text.

use serde_json::{json, Value};
use valfrob_core::ClassificationReport;

/// Version tag carried by every JSON report.
pub const REPORT_SCHEMA: &str = "valfrob.report/1";

/// The report as a JSON value. Object keys are kept sorted by
/// `serde_json`, so equal reports serialize to identical bytes.
pub fn report_json(r: &ClassificationReport) -> Value {
    let center = r.center.as_ref().map(|c| {
        json!({
            "dimension": c.dimension,
            "residue_field": field_label(&c.residue_field),
            "canonical": c.canonical,
            "description": c.description,
        })
    });
    let abhyankar = r.abhyankar.as_ref().map(|a| {
        json!({
            "rational_rank": a.rational_rank,
            "residue_trdeg": a.residue_trdeg,
            "center_dimension": a.center_dimension,
            "holds": a.holds,
        })
    });
    let center_degree = r.center_degree.as_ref().map(|c| {
        json!({
            "field_degree": c.field_degree.to_string(),
            "center_side": c.center_side.to_string(),
            "holds": c.holds,
        })
    });
    let witness = r.split.witness.as_ref().map(|w| {
        json!({
            "descriptor": w.descriptor,
            "basis": w.basis,
            "iteration": w.iteration,
            "checks": w.log.iter().map(|p| json!({"name": p.name, "samples": p.samples})).collect::<Vec<_>>(),
        })
    });
    json!({
        "schema": REPORT_SCHEMA,
        "kind": r.kind,
        "field": r.field,
        "p": r.p,
        "value_group": r.group,
        "residue_field": r.residue_field,
        "degrees": {
            "field": r.defect.field_degree.to_string(),
            "group_index": r.defect.group_index.to_string(),
            "residue": r.defect.residue_degree.to_string(),
            "fibre": r.fibre.dimension.to_string(),
        },
        "maximal_ideal_finitely_generated": r.fibre.maximal_ideal_finitely_generated,
        "defect_identity": {
            "holds": r.defect.holds,
            "lhs": r.defect.product().to_string(),
            "rhs": r.defect.field_degree.to_string(),
        },
        "center": center,
        "abhyankar": abhyankar,
        "center_degree": center_degree,
        "verdicts": {
            "f_finite": {"answer": r.f_finite.answer.as_str(), "citation": r.f_finite.citation},
            "dvr": {"answer": r.dvr.answer.as_str(), "citation": r.dvr.citation},
            "split": {
                "answer": r.split.answer.as_str(),
                "rule": r.split.rule.name(),
                "rule_number": r.split.rule.number(),
                "citation": r.split.citation,
                "witness": witness,
            },
        },
        "notes": r.notes,
        "run": {
            "seed": r.budget.seed,
            "samples": r.budget.samples,
            "series_seed": r.series_seed,
            "series_cap": r.series_cap,
        },
    })
}

fn field_label(f: &valfrob_core::FieldDescriptor) -> String {
    let q = f.base.order();
    if f.variables.is_empty() {
        format!("F_{q}")
    } else {
        format!("F_{q}({})", f.variables.join(", "))
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Human-readable report: the numbers, then the chain of reasons behind
/// each verdict.
pub fn report_text(r: &ClassificationReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("valuation      {} on {}", r.kind, r.field));
    line(format!("value group    {}", r.group));
    line(format!("residue field  {}", r.residue_field));
    line(format!(
        "[Γ:pΓ] = {}, [κ:κ^p] = {}, [K:K^p] = {}",
        r.defect.group_index, r.defect.residue_degree, r.defect.field_degree
    ));
    line(format!(
        "defect identity {} ({} {} {})",
        if r.defect.holds { "holds" } else { "fails" },
        r.defect.product(),
        if r.defect.holds { "=" } else { "!=" },
        r.defect.field_degree
    ));
    line(format!(
        "dim_(κ^p) V/m^[p] = {}, maximal ideal {}",
        r.fibre.dimension,
        if r.fibre.maximal_ideal_finitely_generated { "principal" } else { "not finitely generated" }
    ));
    match (&r.center, &r.abhyankar, &r.center_degree) {
        (Some(c), Some(a), Some(d)) => {
            line(format!("center         {} (dim {}, residue field {})", c.description, c.dimension, field_label(&c.residue_field)));
            line(format!(
                "abhyankar      {} + {} {} {}: {}",
                a.rational_rank,
                a.residue_trdeg,
                if a.holds { "=" } else { "<" },
                a.center_dimension,
                if a.holds { "Abhyankar center" } else { "not an Abhyankar center" }
            ));
            line(format!(
                "p^dim R [κ_R:κ_R^p] = {} vs [K:K^p] = {}",
                d.center_side, d.field_degree
            ));
        }
        _ => line("center         none".to_string()),
    }
    line(String::new());
    line(format!("F-finite: {}", r.f_finite.answer.as_str()));
    line(format!("  because {}", r.f_finite.citation));
    line(format!("DVR: {}", r.dvr.answer.as_str()));
    line(format!("  because {}", r.dvr.citation));
    line(format!(
        "Frobenius split: {} (rule {}, {})",
        r.split.answer.as_str(),
        r.split.rule.number(),
        r.split.rule.name()
    ));
    line(format!("  because {}", r.split.citation));
    if let Some(w) = &r.split.witness {
        line(format!("  witness: {}", w.basis));
        for p in &w.log {
            line(format!("    {} checked on {} samples", p.name, p.samples));
        }
    }
    for n in &r.notes {
        line(format!("note: {n}"));
    }
    let mut run = format!("run: seed {}, samples {}", r.budget.seed, r.budget.samples);
    if let (Some(seed), Some(cap)) = (r.series_seed, r.series_cap) {
        run.push_str(&format!(", series seed {seed}, series cap {cap}"));
    }
    line(run);
    out
}
