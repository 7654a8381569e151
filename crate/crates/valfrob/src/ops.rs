//! Expression evaluation and splitting application on loaded descriptors.

use std::cmp::Ordering;

use num_rational::BigRational;
use serde_json::{json, Value};
use valfrob_core::{extend_split, render, rf_parse, ValuationDescriptor};

use crate::descriptor::Loaded;
use crate::error::CliError;
use crate::verify::hahn_value;

/// `ν(expr)` rendered in the descriptor's value group.
pub fn evaluate(loaded: &Loaded, expr: &str, hahn_bound: &BigRational) -> Result<String, CliError> {
    if let Some(nu) = loaded.input_valuation() {
        let f = rf_parse(expr, nu.field())?;
        return Ok(nu.render_value(&nu.value(&f)?));
    }
    match &loaded.descriptor {
        ValuationDescriptor::Gauss(w) => {
            let f = rf_parse(expr, w.field())?;
            Ok(w.group().render(&w.value(&f)?))
        }
        ValuationDescriptor::SeriesEmbedding(e) => {
            let f = rf_parse(expr, e.field())?;
            Ok(e.embed_value(&f)?.to_string())
        }
        ValuationDescriptor::Hahn { p } => {
            let v = hahn_value(*p, expr, hahn_bound)?;
            Ok(ValuationDescriptor::Hahn { p: *p }.group().render(&v))
        }
        ValuationDescriptor::Monomial(_) | ValuationDescriptor::Laurent { .. } => unreachable!("handled above"),
    }
}

/// Result of applying the splitting to one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitOutcome {
    pub input: String,
    pub image: String,
    pub value_in: Option<String>,
    pub value_out: Option<String>,
    /// The image is zero or its value is at least the input's value.
    pub claim_holds: bool,
}

impl SplitOutcome {
    pub fn to_json(&self) -> Value {
        json!({
            "input": self.input,
            "image": self.image,
            "value_in": self.value_in,
            "value_out": self.value_out,
            "claim_holds": self.claim_holds,
        })
    }
}

/// The `iteration`-th iterate of the monomial splitting applied to `expr`,
/// in the coordinates the splitting is defined in.
pub fn split_expression(loaded: &Loaded, expr: &str, iteration: u32) -> Result<SplitOutcome, CliError> {
    let (Some(input_nu), Some(nu)) = (loaded.input_valuation(), loaded.split_valuation()) else {
        return Err(CliError::Usage(format!(
            "splitting is available for monomial descriptors only, not for {}",
            loaded.descriptor.kind_name()
        )));
    };
    let f = rf_parse(expr, input_nu.field())?;
    let r = loaded.to_split_coordinates(&f)?;
    let image = extend_split(&r, &nu, iteration)?;
    let value = |g: &valfrob_core::RationalFunction| -> Result<Option<_>, CliError> {
        if g.is_zero() {
            Ok(None)
        } else {
            Ok(Some(nu.value(g)?))
        }
    };
    let (vin, vout) = (value(&r)?, value(&image)?);
    let claim_holds = match (&vin, &vout) {
        (_, None) => true,
        (Some(a), Some(b)) => nu.group().cmp(b, a)? != Ordering::Less,
        (None, Some(_)) => false,
    };
    Ok(SplitOutcome {
        input: render(&r, nu.field()),
        image: render(&image, nu.field()),
        value_in: vin.map(|v| nu.render_value(&v)),
        value_out: vout.map(|v| nu.render_value(&v)),
        claim_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::{load_value, LoadOptions};
    use num_bigint::BigInt;

    fn bound() -> BigRational {
        BigRational::from_integer(BigInt::from(16))
    }

    fn lex2() -> Loaded {
        load_value(&json!({"kind": "lex", "p": 2, "n": 2}), LoadOptions::default()).unwrap()
    }

    #[test]
    fn lex_values_and_splits() {
        let l = lex2();
        assert_eq!(evaluate(&l, "x1 + x2", &bound()).unwrap(), "(0, 1)");
        let s = split_expression(&l, "x1", 1).unwrap();
        assert_eq!((s.image.as_str(), s.value_out, s.claim_holds), ("0", None, true));
        let s = split_expression(&l, "x1^2*x2^4 + x1*x2", 1).unwrap();
        assert_eq!(s.image, "x1^2*x2^4");
        assert!(s.claim_holds);
        assert!(matches!(split_expression(&l, "1/x1", 1), Err(CliError::Split(_))));
    }

    #[test]
    fn other_kinds_evaluate() {
        let opts = LoadOptions::default();
        let g = load_value(&json!({"kind": "gauss", "p": 3, "variant": "z_first"}), opts).unwrap();
        assert_eq!(evaluate(&g, "x*s", &bound()).unwrap(), "(1, 1)");
        let h = load_value(&json!({"kind": "hahn", "p": 3}), opts).unwrap();
        assert_eq!(evaluate(&h, "y", &bound()).unwrap(), "2/3");
        let e = load_value(&json!({"kind": "series_embedding", "p": 2}), opts).unwrap();
        assert_eq!(evaluate(&e, "x^3", &bound()).unwrap(), "3");
        assert!(matches!(split_expression(&e, "x", 1), Err(CliError::Usage(_))));
        let t = load_value(&json!({"kind": "laurent", "p": 2, "residue_vars": ["a"]}), opts).unwrap();
        assert_eq!(evaluate(&t, "a*t^2 + t^3", &bound()).unwrap(), "2");
    }
}
