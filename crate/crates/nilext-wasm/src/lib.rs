//! Browser bindings. Every export takes algebra text or a catalog id and
//! returns a JSON string; failures come back as `{"error": "..."}`.

use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

use nilext::catalog::{catalog_ids, catalog_lookup};
use nilext::format::{parse_algebra_text, serialize_algebra};
use nilext::levi::{levi_screen, FactorChoice, ScreenOptions};
use nilext::report::{build_report, render_report, Format};
use nilext::scalar::Scalar;
use nilext::table::StructureTable;

/// Text starting with `dim` is parsed as a file, anything else is a catalog id.
fn load(input: &str) -> Result<(String, StructureTable<Scalar>), String> {
    let trimmed = input.trim();
    let is_file = trimmed
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("dim"));
    if is_file {
        let table = parse_algebra_text(trimmed).map_err(|e| e.to_string())?;
        Ok(("input".to_string(), table))
    } else {
        let entry = catalog_lookup(trimmed).map_err(|e| e.to_string())?;
        Ok((entry.id, entry.table))
    }
}

fn error(message: String) -> String {
    json!({ "error": message }).to_string()
}

/// Built-in ids as a JSON array.
#[wasm_bindgen]
pub fn catalog() -> String {
    json!(catalog_ids()).to_string()
}

/// Canonical file text of a catalog entry.
#[wasm_bindgen]
pub fn catalog_text(id: &str) -> String {
    match catalog_lookup(id) {
        Ok(e) => json!({ "id": e.id, "text": serialize_algebra(&e.table) }).to_string(),
        Err(e) => error(e.to_string()),
    }
}

/// Dimensions, extension bound and characteristic flag.
#[wasm_bindgen]
pub fn analyze(input: &str) -> String {
    match load(input) {
        Ok((name, table)) => render_report(&build_report(&name, &table, None), Format::Json),
        Err(e) => error(e),
    }
}

/// Levi screens for `factor` in `sl2`, `so3`, `all`.
#[wasm_bindgen]
pub fn screen(input: &str, factor: &str) -> String {
    let run = || -> Result<String, String> {
        let (name, table) = load(input)?;
        let choice: FactorChoice = factor
            .parse()
            .map_err(|e: nilext::error::Error| e.to_string())?;
        let report = levi_screen(&name, &table, choice, &ScreenOptions::default())
            .map_err(|e| e.to_string())?;
        Ok(render_report(
            &build_report(&name, &table, Some(&report)),
            Format::Json,
        ))
    };
    run().unwrap_or_else(error)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn analyze_catalog_id_and_text() {
        let by_id = parse(&analyze("A_4_1"));
        assert_eq!(by_id["flag"]["complete"], Value::Bool(true));
        let by_text = parse(&analyze("dim 3\nbracket 2 3 : 1 1\n"));
        assert_eq!(by_text["dims"]["layers"], json!([2, 1]));
    }

    #[test]
    fn screen_reports_overall_verdict() {
        assert_eq!(
            parse(&screen("A_5_3", "sl2"))["overall"],
            json!("not-excluded")
        );
        assert_eq!(
            parse(&screen("A_6_13", "all"))["overall"],
            json!("excluded")
        );
    }

    #[test]
    fn failures_are_json_errors() {
        assert!(parse(&screen("A_5_3", "g2"))["error"].is_string());
        assert!(parse(&analyze("dim 3\nbracket 3 2 : 1 1"))["error"]
            .as_str()
            .unwrap()
            .contains("line 2"));
        assert!(parse(&catalog_text("nope"))["error"].is_string());
        assert!(parse(&catalog()).as_array().unwrap().len() >= 14);
    }
}
