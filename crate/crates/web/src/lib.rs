//! Browser bindings: compare the two enumerations, plot the secondary fan,
//! and explore the deformation family.

use fanforge::fan_search::enumerate_sf;
use fanforge::plot::section_svg;
use fanforge::report::{analyze, Input, Options};
use fanforge::secondary::family_matrices;
use wasm_bindgen::prelude::*;

const OPTIONS: Options = Options {
    sf: true,
    psf: true,
    verify_overlap: true,
    fiber_bound: 4,
};

fn render(rep: &fanforge::report::FanReport, json: bool) -> String {
    if json {
        rep.to_json()
    } else {
        rep.to_text()
    }
}

/// Report comparing all fans with the projective ones.
pub fn compare_report(input: &str, json: bool) -> Result<String, String> {
    let input = Input::parse(input).map_err(|e| e.to_string())?;
    let rep = analyze("compare", &input, OPTIONS).map_err(|e| e.to_string())?;
    Ok(render(&rep, json))
}

/// SVG section of the secondary fan.
pub fn plot_svg(input: &str) -> Result<String, String> {
    let input = Input::parse(input).map_err(|e| e.to_string())?;
    let fans = enumerate_sf(&input.v, true).map_err(|e| e.to_string())?;
    section_svg(&input.q, &fans).map_err(|e| e.to_string())
}

/// Matrices of the family member `(p, q)` as input JSON.
pub fn family_input(p: u32, q: u32) -> Result<String, String> {
    let (qm, _) = family_matrices(p.into(), q.into()).map_err(|e| e.to_string())?;
    let rows = qm.matrix().to_i64_rows().ok_or("entries too large")?;
    Ok(format!("{{\"Q\": {}}}", serde_json_rows(&rows)))
}

fn serde_json_rows(rows: &[Vec<i64>]) -> String {
    let inner: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    format!("[{}]", inner.join(","))
}

#[wasm_bindgen]
pub fn compare(input: &str, json: bool) -> Result<String, JsError> {
    compare_report(input, json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn plot(input: &str) -> Result<String, JsError> {
    plot_svg(input).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn family(p: u32, q: u32) -> Result<String, JsError> {
    family_input(p, q).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_one_one_is_bh() {
        let input = family_input(1, 1).unwrap();
        assert_eq!(
            input,
            "{\"Q\": [[1,1,0,0,1,0],[0,1,1,1,0,0],[0,0,0,1,1,1]]}"
        );
        let text = compare_report(&input, false).unwrap();
        assert!(text.contains("SF: 8 fans"));
        assert!(text.contains("PSF: 6 fans"));
    }

    #[test]
    fn plot_and_errors() {
        let svg = plot_svg(&family_input(2, 1).unwrap()).unwrap();
        assert_eq!(svg.matches("class=\"chamber\"").count(), 7);
        assert!(family_input(2, 2).is_err());
        assert!(compare_report("{", true).is_err());
    }
}
