//! JSON interchange for states.
//!
//! Two payload shapes are accepted:
//!
//! * An explicit matrix:
//!   `{"d1": 2, "d2": 2, "matrix": [[[re, im], ...], ...]}` — row-major,
//!   entries as two-element `[re, im]` arrays; the matrix must be square of
//!   size d1*d2 and pass density-matrix validation.
//! * A family shortcut:
//!   `{"family": "rho1", "a": 0.05, "b": 0.45, "f": [0.4, 0.1]}` or
//!   `{"family": "rho2", "alpha": 0.5}`. For "rho1" both diagonal weights
//!   must be supplied and satisfy a + b = 1/2 exactly (to 1e-12); nothing is
//!   silently renormalized.

use serde_json::Value;

use crate::bipartite::{BipartiteDims, DensityMatrix};
use crate::cmatrix::{CMatrix, C64};
use crate::error::{CoreError, Result};
use crate::states::{build_family1, build_family2, Family1Params, Family2Params};

/// Which family shortcut a payload used, if any; lets callers pick the
/// matching family witness automatically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyTag {
    Family1(Family1Params),
    Family2(Family2Params),
}

/// A parsed state plus a human-readable description of where it came from.
#[derive(Debug, Clone)]
pub struct ParsedState {
    pub state: DensityMatrix,
    pub description: String,
    pub family: Option<FamilyTag>,
}

fn bad(msg: impl Into<String>) -> CoreError {
    CoreError::Malformed(msg.into())
}

fn get_f64(obj: &serde_json::Map<String, Value>, key: &str) -> Result<f64> {
    let v = obj
        .get(key)
        .ok_or_else(|| bad(format!("missing field \"{key}\"")))?;
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| bad(format!("field \"{key}\" must be a finite number")))
}

fn get_usize(obj: &serde_json::Map<String, Value>, key: &str) -> Result<usize> {
    let v = obj
        .get(key)
        .ok_or_else(|| bad(format!("missing field \"{key}\"")))?;
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("field \"{key}\" must be a nonnegative integer")))
}

fn complex_pair(v: &Value, what: &str) -> Result<C64> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| bad(format!("{what} must be a two-element [re, im] array")))?;
    let re = arr[0]
        .as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| bad(format!("{what}: real part must be a finite number")))?;
    let im = arr[1]
        .as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| bad(format!("{what}: imaginary part must be a finite number")))?;
    Ok(C64::new(re, im))
}

fn parse_family(obj: &serde_json::Map<String, Value>, name: &str) -> Result<ParsedState> {
    match name {
        "rho1" => {
            let a = get_f64(obj, "a")?;
            let b = get_f64(obj, "b")?;
            if (a + b - 0.5).abs() > 1e-12 {
                return Err(CoreError::TraceNotOne {
                    trace: 2.0 * (a + b),
                    imag: 0.0,
                });
            }
            let f = complex_pair(
                obj.get("f").ok_or_else(|| bad("missing field \"f\""))?,
                "field \"f\"",
            )?;
            let params = Family1Params { a, f };
            Ok(ParsedState {
                state: build_family1(&params)?,
                description: format!("family rho1 (a={a}, b={b}, f={}{:+}i)", f.re, f.im),
                family: Some(FamilyTag::Family1(params)),
            })
        }
        "rho2" => {
            let alpha = get_f64(obj, "alpha")?;
            let params = Family2Params { alpha };
            Ok(ParsedState {
                state: build_family2(&params)?,
                description: format!("family rho2 (alpha={alpha})"),
                family: Some(FamilyTag::Family2(params)),
            })
        }
        other => Err(bad(format!(
            "unknown family \"{other}\" (expected \"rho1\" or \"rho2\")"
        ))),
    }
}

fn parse_matrix(obj: &serde_json::Map<String, Value>) -> Result<ParsedState> {
    let d1 = get_usize(obj, "d1")?;
    let d2 = get_usize(obj, "d2")?;
    let dims = BipartiteDims::new(d1, d2)?;
    let n = dims.total();
    let rows = obj
        .get("matrix")
        .and_then(|v| v.as_array())
        .ok_or_else(|| bad("missing or non-array field \"matrix\""))?;
    if rows.len() != n {
        return Err(bad(format!(
            "matrix has {} rows, expected {n} for dimensions {d1}x{d2}",
            rows.len()
        )));
    }
    let mut m = CMatrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        let cols = row
            .as_array()
            .ok_or_else(|| bad(format!("matrix row {i} is not an array")))?;
        if cols.len() != n {
            return Err(bad(format!(
                "matrix row {i} has {} entries, expected {n} (matrix must be square)",
                cols.len()
            )));
        }
        for (j, cell) in cols.iter().enumerate() {
            m[(i, j)] = complex_pair(cell, &format!("matrix entry ({i},{j})"))?;
        }
    }
    Ok(ParsedState {
        state: DensityMatrix::new(m, dims)?,
        description: format!("{n}x{n} matrix ({d1}x{d2} bipartition) from JSON"),
        family: None,
    })
}

/// Parse a state payload (either shape) from JSON text.
pub fn parse_state_json(text: &str) -> Result<ParsedState> {
    let value: Value = serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| bad("top-level JSON value must be an object"))?;
    match obj.get("family") {
        Some(fam) => {
            let name = fam
                .as_str()
                .ok_or_else(|| bad("field \"family\" must be a string"))?;
            parse_family(obj, name)
        }
        None => parse_matrix(obj),
    }
}

/// Serialize a state to the explicit-matrix JSON shape (the inverse of the
/// matrix branch of [`parse_state_json`]).
pub fn state_to_json(rho: &DensityMatrix) -> String {
    let dims = rho.dims();
    let n = dims.total();
    let m = rho.matrix();
    let rows: Vec<Value> = (0..n)
        .map(|i| {
            Value::Array(
                (0..n)
                    .map(|j| {
                        let z = m[(i, j)];
                        Value::Array(vec![serde_json::json!(z.re), serde_json::json!(z.im)])
                    })
                    .collect(),
            )
        })
        .collect();
    serde_json::json!({
        "d1": dims.d1,
        "d2": dims.d2,
        "matrix": rows,
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::StateSampler;

    #[test]
    fn family1_payload_parses() {
        let p = parse_state_json(r#"{"family": "rho1", "a": 0.05, "b": 0.45, "f": [0.4, 0.1]}"#)
            .unwrap();
        assert!(matches!(p.family, Some(FamilyTag::Family1(_))));
        let m = p.state.matrix();
        assert!((m[(0, 0)].re - 0.05).abs() < 1e-15);
        assert!((m[(1, 2)] - C64::new(0.4, 0.1)).norm() < 1e-15);
    }

    #[test]
    fn family1_payload_rejects_inconsistent_weights() {
        let e = parse_state_json(r#"{"family": "rho1", "a": 0.1, "b": 0.3, "f": [0.1, 0.0]}"#)
            .unwrap_err();
        assert!(matches!(e, CoreError::TraceNotOne { .. }));
    }

    #[test]
    fn family2_payload_parses_and_validates() {
        let p = parse_state_json(r#"{"family": "rho2", "alpha": 0.5}"#).unwrap();
        assert!(matches!(p.family, Some(FamilyTag::Family2(_))));
        assert!(parse_state_json(r#"{"family": "rho2", "alpha": 1.5}"#).is_err());
        assert!(parse_state_json(r#"{"family": "werner", "alpha": 0.5}"#).is_err());
    }

    #[test]
    fn matrix_payload_round_trips() {
        let mut s = StateSampler::with_seed(7);
        for dims in [
            BipartiteDims::new(2, 2).unwrap(),
            BipartiteDims::new(3, 2).unwrap(),
        ] {
            let rho = s.density_matrix(dims);
            let text = state_to_json(&rho);
            let back = parse_state_json(&text).unwrap();
            assert!(back.family.is_none());
            assert!(back.state.matrix().max_abs_diff(rho.matrix()) < 1e-15);
            assert_eq!(back.state.dims(), dims);
        }
    }

    #[test]
    fn matrix_payload_shape_errors() {
        // Not JSON at all.
        assert!(matches!(
            parse_state_json("not json"),
            Err(CoreError::Malformed(_))
        ));
        // Wrong row count.
        let e = parse_state_json(r#"{"d1": 2, "d2": 2, "matrix": [[[1.0, 0.0]]]}"#).unwrap_err();
        assert!(matches!(e, CoreError::Malformed(_)));
        // Ragged row.
        let e2 = parse_state_json(
            r#"{"d1": 2, "d2": 2, "matrix": [
                [[0.25,0],[0,0],[0,0],[0,0]],
                [[0,0],[0.25,0],[0,0]],
                [[0,0],[0,0],[0.25,0],[0,0]],
                [[0,0],[0,0],[0,0],[0.25,0]]
            ]}"#,
        )
        .unwrap_err();
        assert!(matches!(e2, CoreError::Malformed(_)));
        // Dimensions below the bipartite minimum.
        assert!(parse_state_json(r#"{"d1": 1, "d2": 4, "matrix": []}"#).is_err());
    }

    #[test]
    fn matrix_payload_validation_errors_surface() {
        // Valid shape, but not Hermitian.
        let e = parse_state_json(
            r#"{"d1": 2, "d2": 2, "matrix": [
                [[0.25,0],[0.3,0],[0,0],[0,0]],
                [[0,0],[0.25,0],[0,0],[0,0]],
                [[0,0],[0,0],[0.25,0],[0,0]],
                [[0,0],[0,0],[0,0],[0.25,0]]
            ]}"#,
        )
        .unwrap_err();
        assert!(matches!(e, CoreError::NotHermitian { .. }));
    }
}
