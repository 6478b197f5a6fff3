//! Three operations for the static demo page in `www/`. Each takes plain
//! strings and returns a JSON document, so the functions run natively too.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use hjplumb::cfrac::{cf_dual, cf_eval, CfString, PointDiagram};
use hjplumb::lisca::{fillings, min_filling_euler, LensSpace};
use hjplumb::plumbing::PlumbingTree;

const MAX_P: i64 = 5000;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Dual string of an expansion such as `3,2,5,2,2,6`, with its point diagram.
#[wasm_bindgen]
pub fn dual_diagram(input: &str) -> Result<String, String> {
    let s: CfString = input.parse().map_err(err)?;
    let d = cf_dual(&s).map_err(err)?;
    let diagram = PointDiagram::new(&s).map_err(err)?;
    let grid: Vec<String> = (0..diagram.rows)
        .map(|r| {
            (0..diagram.columns)
                .map(|c| {
                    if diagram.dots.contains(&(r, c)) {
                        '•'
                    } else {
                        ' '
                    }
                })
                .collect::<String>()
                .trim_end()
                .to_string()
        })
        .collect();
    let v = cf_eval(&s).map_err(err)?;
    let w = cf_eval(&d).map_err(err)?;
    Ok(json!({
        "string": s.entries(),
        "value": v.to_string(),
        "dual": d.entries(),
        "dual_value": w.to_string(),
        "diagram": grid,
    })
    .to_string())
}

/// Minimal symplectic fillings of `L(p,q)`.
#[wasm_bindgen]
pub fn lens_fillings(p: u32, q: u32) -> Result<String, String> {
    let (p, q) = (i64::from(p), i64::from(q));
    if p > MAX_P {
        return Err(format!("p is limited to {MAX_P} in the demo"));
    }
    let lens = LensSpace::new(p, q).map_err(err)?;
    let rows: Vec<Value> = fillings(&lens)
        .iter()
        .map(|f| json!({ "euler": f.euler, "zero_string": f.zero_string.entries() }))
        .collect();
    Ok(json!({
        "lens": lens.to_string(),
        "plumbing": lens.plumbing_string().entries(),
        "dual": lens.dual_string().entries(),
        "min_euler": min_filling_euler(&lens),
        "fillings": rows,
    })
    .to_string())
}

/// Invariants of a plumbing tree, given as JSON or as a comma-separated chain of framings.
#[wasm_bindgen]
pub fn classify_tree(input: &str) -> Result<String, String> {
    let tree: PlumbingTree = if input.trim_start().starts_with('{') {
        serde_json::from_str(input).map_err(err)?
    } else {
        let s: CfString = input.parse().map_err(err)?;
        PlumbingTree::chain(s.entries()).map_err(err)?
    };
    let inv = tree.invariants();
    let m = tree.intersection_matrix();
    let negative_definite = inv.sigma == -(tree.vertices().len() as i64);
    Ok(json!({
        "summary": inv.to_string(),
        "invariants": inv,
        "negative_definite": negative_definite,
        "matrix": m.to_string(),
    })
    .to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: Result<String, String>) -> Value {
        serde_json::from_str(&s.unwrap()).unwrap()
    }

    #[test]
    fn dual_example() {
        let v = parse(dual_diagram("3,2,5,2,2,6"));
        assert_eq!(v["dual"], json!([2, 4, 2, 2, 5, 2, 2, 2, 2]));
        assert_eq!(v["dual_value"], "297/175");
        assert_eq!(v["diagram"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn dual_rejects_small_entries() {
        assert!(dual_diagram("2,1,2").is_err());
    }

    #[test]
    fn seed_fillings() {
        let v = parse(lens_fillings(45, 26));
        assert_eq!(v["dual"], json!([3, 2, 3, 2, 3]));
        assert_eq!(v["min_euler"], 2);
        assert!(v["fillings"]
            .as_array()
            .unwrap()
            .iter()
            .any(|f| f["zero_string"] == json!([3, 1, 3, 1, 3])));
    }

    #[test]
    fn chain_tree() {
        let v = parse(classify_tree("-2,-4,-4,-2"));
        assert_eq!(v["summary"], "chi=5 sigma=-4 det=45 H1=Z45");
        assert_eq!(v["negative_definite"], true);
        let json_tree =
            r#"{"vertices":[{"id":1,"framing":-2},{"id":2,"framing":-2}],"edges":[[1,2]]}"#;
        assert_eq!(parse(classify_tree(json_tree))["invariants"]["det"], "3");
    }
}
