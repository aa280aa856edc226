use bimop_core::{BiPoly, Scalar};
use serde_json::{json, Value};

pub fn render(value: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("JSON values always serialise")
    } else {
        value.to_string()
    }
}

/// Term list, or the monomial string in pretty mode.
pub fn poly<S: Scalar>(p: &BiPoly<S>, pretty: bool) -> Value {
    if pretty {
        Value::String(p.to_string())
    } else {
        json!(p.to_json())
    }
}
