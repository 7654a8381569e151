//! JSON descriptor files: valuations, value groups and centers.
//!
//! A file holds either a bare valuation object or a gallery entry whose
//! `valuation` key holds one. Weights are coordinate lists whose entries are
//! integers or `"a/b"` strings.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{Map, Value};
use valfrob_core::series::DEFAULT_SEED;
use valfrob_core::{
    rf_parse, CenterDescriptor, Chart, FieldDescriptor, GaussValuation, GaussVariant, GroundField, GroupElement,
    Irrational, MonomialValuation, RationalFunction, SeriesEmbedding, ValuationDescriptor, ValueGroup,
};

use crate::error::CliError;

/// A descriptor as loaded from disk.
#[derive(Clone, Debug)]
pub struct Loaded {
    /// The valuation the classifier and the splitting work with; chart
    /// coordinates when a chart is declared.
    pub descriptor: ValuationDescriptor,
    /// The valuation in the declared coordinates when a chart is present.
    pub original: Option<MonomialValuation>,
    pub chart: Option<Chart>,
    /// A center declared inline in the file.
    pub center: Option<CenterDescriptor>,
}

impl Loaded {
    /// The valuation in the coordinates expressions are written in, when it
    /// is monomial.
    pub fn input_valuation(&self) -> Option<MonomialValuation> {
        match &self.original {
            Some(orig) => Some(orig.clone()),
            None => self.split_valuation(),
        }
    }

    /// The monomial valuation the splitting runs on: the chart valuation
    /// when a chart is declared, and the `t`-adic valuation on
    /// `κ[t]`'s fraction field for Laurent descriptors.
    pub fn split_valuation(&self) -> Option<MonomialValuation> {
        match &self.descriptor {
            ValuationDescriptor::Monomial(nu) => Some(nu.clone()),
            ValuationDescriptor::Laurent { residue } => Some(laurent_model(residue)),
            _ => None,
        }
    }

    /// Rewrites an input expression in the coordinates of
    /// [`Loaded::split_valuation`].
    pub fn to_split_coordinates(&self, f: &RationalFunction) -> Result<RationalFunction, CliError> {
        match &self.chart {
            Some(chart) => Ok(chart.apply(f)?),
            None => Ok(f.clone()),
        }
    }

    /// Center used when none is given on the command line: the inline one,
    /// else the canonical center of the declared coordinates.
    pub fn default_center(&self) -> Option<CenterDescriptor> {
        if let Some(c) = &self.center {
            return Some(c.clone());
        }
        match &self.original {
            Some(orig) => ValuationDescriptor::Monomial(orig.clone()).canonical_center(),
            None => self.descriptor.canonical_center(),
        }
    }
}

/// The `t`-adic valuation restricted to `κ(t)`, `κ = F_q(residue vars)`:
/// weight 1 on `t`, 0 on the residue variables.
pub fn laurent_model(residue: &FieldDescriptor) -> MonomialValuation {
    let mut names = residue.variables.clone();
    names.push("t".to_string());
    let n = names.len();
    let field = FieldDescriptor::new(residue.base, names);
    let weights = (0..n).map(|i| GroupElement::from_integers([i64::from(i + 1 == n)])).collect();
    MonomialValuation::from_weights(field, ValueGroup::integers(), weights).expect("t-adic weights are valid")
}

/// Settings that come from the command line rather than the file.
#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    /// Initial series precision cap.
    pub series_cap: Option<usize>,
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::descriptor(format!("{}: {e}", path.display())))
}

pub fn load_file(path: &Path, options: LoadOptions) -> Result<Loaded, CliError> {
    load_value(&read_json(path)?, options)
}

/// Accepts a bare valuation or an object with a `valuation` key (and an
/// optional `center`).
pub fn load_value(value: &Value, options: LoadOptions) -> Result<Loaded, CliError> {
    let obj = as_object(value, "descriptor")?;
    let (valuation, center) = match obj.get("valuation") {
        Some(v) => (v, obj.get("center")),
        None => (value, None),
    };
    let mut loaded = parse_valuation(valuation, options)?;
    if let Some(c) = center {
        let base = descriptor_base(&loaded.descriptor)?;
        loaded.center = Some(parse_center(c, base)?);
    }
    Ok(loaded)
}

fn descriptor_base(d: &ValuationDescriptor) -> Result<GroundField, CliError> {
    match d {
        ValuationDescriptor::Monomial(nu) => Ok(nu.field().base),
        ValuationDescriptor::Laurent { residue } => Ok(residue.base),
        other => Ok(GroundField::prime(other.p())?),
    }
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| CliError::descriptor(format!("{what} must be a JSON object")))
}

fn get_str<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str, CliError> {
    obj.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::descriptor(format!("missing string field `{key}`")))
}

fn get_u64(obj: &Map<String, Value>, key: &str) -> Result<Option<u64>, CliError> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_u64()
            .map(Some)
            .ok_or_else(|| CliError::descriptor(format!("field `{key}` must be a nonnegative integer"))),
    }
}

fn get_u32(obj: &Map<String, Value>, key: &str) -> Result<Option<u32>, CliError> {
    get_u64(obj, key)?
        .map(|n| u32::try_from(n).map_err(|_| CliError::descriptor(format!("field `{key}` is too large"))))
        .transpose()
}

fn require_p(obj: &Map<String, Value>) -> Result<u32, CliError> {
    get_u32(obj, "p")?.ok_or_else(|| CliError::descriptor("missing prime `p`"))
}

fn string_list(obj: &Map<String, Value>, key: &str) -> Result<Option<Vec<String>>, CliError> {
    match obj.get(key) {
        None => Ok(None),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| CliError::descriptor(format!("`{key}` must be a list of strings")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some),
        Some(_) => Err(CliError::descriptor(format!("`{key}` must be a list of strings"))),
    }
}

fn check_names(names: &[String]) -> Result<(), CliError> {
    for (i, name) in names.iter().enumerate() {
        let mut chars = name.chars();
        let ok = chars.next().is_some_and(|c| c.is_ascii_lowercase())
            && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit());
        if !ok {
            return Err(CliError::descriptor(format!("`{name}` is not a valid variable name")));
        }
        if names[..i].contains(name) {
            return Err(CliError::descriptor(format!("variable `{name}` declared twice")));
        }
    }
    Ok(())
}

fn indices(field: &FieldDescriptor, names: &[String]) -> Result<Vec<usize>, CliError> {
    names
        .iter()
        .map(|n| {
            field
                .var_index(n)
                .ok_or_else(|| CliError::descriptor(format!("unknown variable `{n}`")))
        })
        .collect()
}

fn parse_rational(v: &Value) -> Result<BigRational, CliError> {
    let bad = || CliError::descriptor(format!("`{v}` is not an integer or \"a/b\" string"));
    match v {
        Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(BigInt::from(i))).ok_or_else(bad),
        Value::String(s) => {
            let s = s.trim();
            match s.split_once('/') {
                Some((a, b)) => {
                    let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
                    let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
                    if b == BigInt::from(0) {
                        return Err(bad());
                    }
                    Ok(BigRational::new(a, b))
                }
                None => BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad()),
            }
        }
        _ => Err(bad()),
    }
}

fn parse_element(v: &Value, group: &ValueGroup) -> Result<GroupElement, CliError> {
    let coords = match v {
        Value::Array(items) => items.iter().map(parse_rational).collect::<Result<Vec<_>, _>>()?,
        scalar => vec![parse_rational(scalar)?],
    };
    if coords.len() != group.arity() {
        return Err(CliError::descriptor(format!(
            "value {v} has {} coordinates, the group {group} needs {}",
            coords.len(),
            group.arity()
        )));
    }
    let el = GroupElement(coords);
    group.contains(&el)?;
    Ok(el)
}

/// `{"kind":"lex","rank":d}`, `{"kind":"embedded","rank":r,"irrational":..}`,
/// `{"kind":"p_divisible","p"?}`, `{"kind":"lex_sum","components":[..]}`.
pub fn parse_group(v: &Value, default_p: u32) -> Result<ValueGroup, CliError> {
    let obj = as_object(v, "group")?;
    match get_str(obj, "kind")? {
        "lex" => {
            let rank = get_u64(obj, "rank")?.ok_or_else(|| CliError::descriptor("lex group needs `rank`"))?;
            if rank == 0 {
                return Err(CliError::descriptor("lex group rank must be positive"));
            }
            Ok(ValueGroup::lex(rank as usize))
        }
        "embedded" => {
            let rank = get_u64(obj, "rank")?.unwrap_or(1) as usize;
            let irrational = match obj.get("irrational") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) => Some(Irrational::from_name(s)?),
                Some(_) => return Err(CliError::descriptor("`irrational` must be a string")),
            };
            Ok(ValueGroup::embedded_with_rank(rank, irrational)?)
        }
        "p_divisible" => Ok(ValueGroup::p_divisible(get_u32(obj, "p")?.unwrap_or(default_p))),
        "lex_sum" => {
            let comps = obj
                .get("components")
                .and_then(Value::as_array)
                .ok_or_else(|| CliError::descriptor("lex_sum group needs a `components` list"))?;
            if comps.is_empty() {
                return Err(CliError::descriptor("lex_sum group needs at least one component"));
            }
            let parts = comps.iter().map(|c| parse_group(c, default_p)).collect::<Result<Vec<_>, _>>()?;
            Ok(ValueGroup::lex_sum(parts))
        }
        other => Err(CliError::descriptor(format!("unknown group kind `{other}`"))),
    }
}

fn field_for(p: u32, k: u32, names: Vec<String>) -> Result<FieldDescriptor, CliError> {
    check_names(&names)?;
    Ok(FieldDescriptor::new(GroundField::new(p, k)?, names))
}

fn weights_in(
    obj: &Map<String, Value>,
    field: &FieldDescriptor,
    group: &ValueGroup,
) -> Result<Vec<GroupElement>, CliError> {
    let map = obj
        .get("weights")
        .and_then(Value::as_object)
        .ok_or_else(|| CliError::descriptor("monomial valuation needs a `weights` object"))?;
    if let Some(extra) = map.keys().find(|k| field.var_index(k).is_none()) {
        return Err(CliError::descriptor(format!("weight given for unknown variable `{extra}`")));
    }
    field
        .variables
        .iter()
        .map(|name| {
            let w = map
                .get(name)
                .ok_or_else(|| CliError::descriptor(format!("no weight for variable `{name}`")))?;
            parse_element(w, group)
        })
        .collect()
}

fn monomial_in(
    obj: &Map<String, Value>,
    field: FieldDescriptor,
    group: ValueGroup,
) -> Result<MonomialValuation, CliError> {
    let weights = weights_in(obj, &field, &group)?;
    let params = string_list(obj, "parameters")?;
    let residue = string_list(obj, "residue_vars")?;
    Ok(match (params, residue) {
        (None, None) => MonomialValuation::from_weights(field, group, weights)?,
        (params, residue) => {
            let params = indices(&field, &params.unwrap_or_default())?;
            let residue = indices(&field, &residue.unwrap_or_default())?;
            MonomialValuation::new(field, group, weights, params, residue)?
        }
    })
}

fn parse_monomial(obj: &Map<String, Value>) -> Result<Loaded, CliError> {
    let p = require_p(obj)?;
    let k = get_u32(obj, "k")?.unwrap_or(1);
    let names =
        string_list(obj, "variables")?.ok_or_else(|| CliError::descriptor("monomial valuation needs `variables`"))?;
    let field = field_for(p, k, names)?;
    let group = parse_group(
        obj.get("group").ok_or_else(|| CliError::descriptor("monomial valuation needs a `group`"))?,
        p,
    )?;
    let nu = monomial_in(obj, field.clone(), group.clone())?;
    let Some(chart) = obj.get("chart") else {
        return Ok(Loaded {
            descriptor: ValuationDescriptor::Monomial(nu),
            original: None,
            chart: None,
            center: None,
        });
    };
    let cobj = as_object(chart, "chart")?;
    let target_names =
        string_list(cobj, "variables")?.ok_or_else(|| CliError::descriptor("chart needs `variables`"))?;
    let target = field_for(p, k, target_names)?;
    let images_obj = cobj
        .get("images")
        .and_then(Value::as_object)
        .ok_or_else(|| CliError::descriptor("chart needs an `images` object"))?;
    let images = field
        .variables
        .iter()
        .map(|name| {
            let text = images_obj
                .get(name)
                .and_then(Value::as_str)
                .ok_or_else(|| CliError::descriptor(format!("chart gives no image for `{name}`")))?;
            Ok(rf_parse(text, &target)?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let map = Chart::from_images(field, target.clone(), &images)?;
    let on_chart = monomial_in(cobj, target, group)?;
    let pulled = map.pull_back(&on_chart)?;
    if pulled.weights() != nu.weights() {
        return Err(CliError::descriptor(
            "chart weights do not pull back to the declared weights".to_string(),
        ));
    }
    Ok(Loaded {
        descriptor: ValuationDescriptor::Monomial(on_chart),
        original: Some(nu),
        chart: Some(map),
        center: None,
    })
}

fn parse_valuation(value: &Value, options: LoadOptions) -> Result<Loaded, CliError> {
    let obj = as_object(value, "valuation")?;
    let plain = |descriptor| Loaded {
        descriptor,
        original: None,
        chart: None,
        center: None,
    };
    match get_str(obj, "kind")? {
        "monomial" => parse_monomial(obj),
        "lex" => {
            let p = require_p(obj)?;
            let n = get_u64(obj, "n")?.ok_or_else(|| CliError::descriptor("lex valuation needs `n`"))?;
            if n == 0 {
                return Err(CliError::descriptor("lex valuation needs n >= 1"));
            }
            let names = (1..=n).map(|i| format!("x{i}")).collect();
            let field = field_for(p, get_u32(obj, "k")?.unwrap_or(1), names)?;
            Ok(plain(ValuationDescriptor::Monomial(MonomialValuation::lex(field))))
        }
        "gauss" => {
            let variant = match get_str(obj, "variant")? {
                "group_first" => GaussVariant::GroupFirst,
                "z_first" => GaussVariant::ZFirst,
                other => return Err(CliError::descriptor(format!("unknown Gauss variant `{other}`"))),
            };
            Ok(plain(ValuationDescriptor::Gauss(GaussValuation::new(require_p(obj)?, variant)?)))
        }
        "series_embedding" => {
            let seed = get_u64(obj, "seed")?.unwrap_or(DEFAULT_SEED);
            let mut e = SeriesEmbedding::new(require_p(obj)?, seed)?;
            if let Some(cap) = options.series_cap {
                e = e.with_cap(cap.max(1));
            }
            Ok(plain(ValuationDescriptor::SeriesEmbedding(e)))
        }
        "hahn" => {
            let p = require_p(obj)?;
            GroundField::prime(p)?;
            Ok(plain(ValuationDescriptor::Hahn { p }))
        }
        "laurent" => {
            let p = require_p(obj)?;
            let k = get_u32(obj, "k")?.unwrap_or(1);
            let names = string_list(obj, "residue_vars")?.unwrap_or_default();
            if names.iter().any(|n| n == "t") {
                return Err(CliError::descriptor("`t` is reserved for the uniformizer"));
            }
            Ok(plain(ValuationDescriptor::Laurent {
                residue: field_for(p, k, names)?,
            }))
        }
        other => Err(CliError::descriptor(format!("unknown valuation kind `{other}`"))),
    }
}

/// `{"dimension": d, "residue_vars": [..], "description": ".."}`; the
/// residue field is `F_q(residue_vars)`.
pub fn parse_center(v: &Value, base: GroundField) -> Result<CenterDescriptor, CliError> {
    let obj = as_object(v, "center")?;
    let dimension = get_u64(obj, "dimension")?.ok_or_else(|| CliError::descriptor("center needs `dimension`"))?;
    let names = string_list(obj, "residue_vars")?.unwrap_or_default();
    check_names(&names)?;
    let description = obj
        .get("description")
        .and_then(Value::as_str)
        .unwrap_or("declared center")
        .to_string();
    Ok(CenterDescriptor::new(
        dimension as usize,
        FieldDescriptor::new(base, names),
        description,
    ))
}

pub fn load_center(path: &Path, loaded: &Loaded) -> Result<CenterDescriptor, CliError> {
    let v = read_json(path)?;
    let obj = as_object(&v, "center file")?;
    let c = obj.get("center").unwrap_or(&v);
    parse_center(c, descriptor_base(&loaded.descriptor)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn load(v: Value) -> Result<Loaded, CliError> {
        load_value(&v, LoadOptions::default())
    }

    #[test]
    fn lex_shorthand_matches_explicit_weights() {
        let short = load(json!({"kind": "lex", "p": 2, "n": 2})).unwrap();
        let long = load(json!({
            "kind": "monomial", "p": 2, "variables": ["x1", "x2"],
            "group": {"kind": "lex", "rank": 2},
            "weights": {"x1": [1, 0], "x2": [0, 1]}
        }))
        .unwrap();
        assert_eq!(short.split_valuation(), long.split_valuation());
        assert!(short.split_valuation().is_some());
    }

    #[test]
    fn rational_coordinates() {
        let l = load(json!({
            "kind": "monomial", "p": 3, "variables": ["a"],
            "group": {"kind": "p_divisible"}, "weights": {"a": ["2/9"]}
        }))
        .unwrap();
        let nu = l.split_valuation().unwrap();
        assert_eq!(nu.weights()[0].0[0], BigRational::new(2.into(), 9.into()));
        let bad = load(json!({
            "kind": "monomial", "p": 3, "variables": ["a"],
            "group": {"kind": "p_divisible"}, "weights": {"a": ["1/2"]}
        }));
        assert!(bad.is_err());
    }

    #[test]
    fn chart_pulls_back_to_declared_weights() {
        let blow_up = json!({
            "kind": "monomial", "p": 2, "variables": ["x", "y", "z"],
            "group": {"kind": "embedded", "rank": 2, "irrational": "pi"},
            "weights": {"x": [1, 0], "y": [1, 0], "z": [0, 1]},
            "chart": {
                "variables": ["x", "u", "w"],
                "images": {"x": "x", "y": "u*x", "z": "w*x"},
                "weights": {"x": [1, 0], "u": [0, 0], "w": [-1, 1]},
                "parameters": ["x", "w"], "residue_vars": ["u"]
            }
        });
        let l = load(blow_up.clone()).unwrap();
        assert!(l.original.is_some());
        assert_eq!(l.default_center().unwrap().dimension, 3);
        let mut wrong = blow_up;
        wrong["chart"]["weights"]["w"] = json!([0, 1]);
        assert!(matches!(load(wrong), Err(CliError::Descriptor(_))));
    }

    #[test]
    fn gallery_wrapper_and_center() {
        let l = load(json!({
            "valuation": {"kind": "series_embedding", "p": 3},
            "center": {"dimension": 1, "description": "its own valuation ring"}
        }))
        .unwrap();
        assert_eq!(l.center.unwrap().dimension, 1);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(load(json!({"kind": "nope", "p": 2})).is_err());
        assert!(load(json!({"kind": "lex", "p": 4, "n": 1})).is_err());
        assert!(load(json!({"kind": "gauss", "p": 2, "variant": "sideways"})).is_err());
        assert!(load(json!({
            "kind": "monomial", "p": 2, "variables": ["X"],
            "group": {"kind": "lex", "rank": 1}, "weights": {"X": [1]}
        }))
        .is_err());
    }
}
