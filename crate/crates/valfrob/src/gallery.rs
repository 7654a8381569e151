//! The example gallery: descriptors with expected report fields, values and
//! splitting images. Each expectation is tagged `published` (a value stated
//! for the example in the literature) or `computed` (derived here), and
//! carries its own citation.

use serde_json::Value;
use valfrob_core::{classify, SplitBudget};

use crate::descriptor::{load_value, LoadOptions, Loaded};
use crate::error::CliError;
use crate::ops::{evaluate, split_expression};
use crate::report::report_json;
use crate::verify::VerifyBudget;

/// Gallery files, compiled in.
pub const GALLERY: &[(&str, &str)] = &[
    ("lex2", include_str!("../gallery/lex2.json")),
    ("lex3", include_str!("../gallery/lex3.json")),
    ("curve", include_str!("../gallery/curve.json")),
    ("blow_up", include_str!("../gallery/blow_up.json")),
    ("series_embedding_p2", include_str!("../gallery/series_embedding_p2.json")),
    ("series_embedding_p3", include_str!("../gallery/series_embedding_p3.json")),
    ("series_embedding_own_ring", include_str!("../gallery/series_embedding_own_ring.json")),
    ("gauss_group_first", include_str!("../gallery/gauss_group_first.json")),
    ("gauss_z_first", include_str!("../gallery/gauss_z_first.json")),
    ("hahn_p2", include_str!("../gallery/hahn_p2.json")),
    ("hahn_p3", include_str!("../gallery/hahn_p3.json")),
    ("laurent", include_str!("../gallery/laurent.json")),
];

/// One parsed gallery file.
#[derive(Clone, Debug)]
pub struct GalleryEntry {
    pub name: String,
    pub citation: String,
    pub raw: Value,
}

impl GalleryEntry {
    pub fn load(&self, options: LoadOptions) -> Result<Loaded, CliError> {
        load_value(&self.raw, options)
    }
}

pub fn entries() -> Vec<GalleryEntry> {
    GALLERY
        .iter()
        .map(|(name, text)| {
            let raw: Value = serde_json::from_str(text).expect("gallery files are valid JSON");
            let citation = raw["citation"].as_str().unwrap_or_default().to_string();
            GalleryEntry {
                name: (*name).to_string(),
                citation,
                raw,
            }
        })
        .collect()
}

pub fn find(name: &str) -> Option<GalleryEntry> {
    entries().into_iter().find(|e| e.name == name)
}

/// Outcome of one entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryResult {
    pub name: String,
    pub checked: usize,
    /// One line per diverging field: the entry, the field and the citation.
    pub failures: Vec<String>,
}

impl EntryResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn list<'a>(raw: &'a Value, key: &str) -> &'a [Value] {
    raw.get(key).and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[])
}

fn tag(item: &Value) -> String {
    format!(
        "[{}] {}",
        item["origin"].as_str().unwrap_or("computed"),
        item["citation"].as_str().unwrap_or("")
    )
}

fn text(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

/// Classifies the entry and compares every expectation.
pub fn run_entry(entry: &GalleryEntry, budget: &VerifyBudget, options: LoadOptions) -> Result<EntryResult, CliError> {
    let loaded = entry.load(options)?;
    let center = loaded.default_center();
    let split_budget = SplitBudget {
        seed: budget.seed,
        samples: budget.samples,
    };
    let report = report_json(&classify(&loaded.descriptor, center.as_ref(), split_budget)?);
    let name = &entry.name;
    let mut failures = Vec::new();
    let mut checked = 0;
    for item in list(&entry.raw, "expect") {
        checked += 1;
        let at = item["at"].as_str().unwrap_or("");
        let want = &item["equals"];
        match report.pointer(at) {
            Some(got) if got == want => {}
            got => failures.push(format!(
                "{name}: {at} expected {}, got {} {}",
                text(want),
                got.map_or("nothing".to_string(), text),
                tag(item)
            )),
        }
    }
    for item in list(&entry.raw, "values") {
        checked += 1;
        let expr = item["expr"].as_str().unwrap_or("");
        let want = item["equals"].as_str().unwrap_or("");
        let got = evaluate(&loaded, expr, &budget.hahn_bound)?;
        if got != want {
            failures.push(format!("{name}: value of {expr} expected {want}, got {got} {}", tag(item)));
        }
    }
    for item in list(&entry.raw, "splits") {
        checked += 1;
        let expr = item["expr"].as_str().unwrap_or("");
        let want = item["image"].as_str().unwrap_or("");
        let got = split_expression(&loaded, expr, 1)?;
        if got.image != want || !got.claim_holds {
            failures.push(format!(
                "{name}: split of {expr} expected {want}, got {} (value bound {}) {}",
                got.image,
                if got.claim_holds { "holds" } else { "fails" },
                tag(item)
            ));
        }
    }
    Ok(EntryResult {
        name: name.clone(),
        checked,
        failures,
    })
}
