//! Reference data shipped with the crate: the two tabulated S-matrices, the
//! explicit invariant forms, Φ_w, the real-form trivectors and their
//! quadratic forms, and the tabulated adjoint matrix in (α, β, γ) form.
//!
//! Everything here is transcribed data used as a test oracle. The library
//! computes every one of these objects independently.

use std::sync::OnceLock;

use serde_json::Value;

use crate::invariants::DualTrivector;
use crate::polyexact::{MultiPoly, Rational};
use crate::trivector::{parse_covector, SMatrix, Trivector, DIM};

const S_W: &str = include_str!("../golden/s_matrix_w.json");
const S_W_PRIME: &str = include_str!("../golden/s_matrix_wprime.json");
const FORMS: &str = include_str!("../golden/forms.json");

fn forms() -> &'static Value {
    static CELL: OnceLock<Value> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(FORMS).expect("forms.json parses"))
}

fn load_s(src: &str) -> SMatrix {
    let v: Value = serde_json::from_str(src).expect("golden S-matrix parses");
    let cells: Vec<Vec<Rational>> = v["rows"]
        .as_array()
        .expect("rows")
        .iter()
        .flat_map(|r| r.as_array().expect("row").iter())
        .map(|c| parse_covector(c.as_str().expect("entry string")).expect("covector"))
        .collect();
    SMatrix::from_entries(cells)
}

fn poly(key: &str) -> MultiPoly {
    let text = forms()[key]
        .as_str()
        .unwrap_or_else(|| panic!("forms.json lacks {key}"));
    MultiPoly::parse(DIM, text).expect("reference polynomial parses")
}

fn trivector(key: &str) -> Trivector {
    Trivector::from_json(&forms()[key]).expect("reference trivector parses")
}

/// Tabulated S-matrix of [`crate::trivector::w`].
pub fn s_w() -> SMatrix {
    load_s(S_W)
}

/// Tabulated S-matrix of [`crate::trivector::w_prime`].
pub fn s_w_prime() -> SMatrix {
    load_s(S_W_PRIME)
}

/// Tabulated quadratic invariant of w.
pub fn q_w() -> MultiPoly {
    poly("q_w")
}

/// Tabulated cubic invariant of w.
pub fn f_w() -> MultiPoly {
    poly("f_w")
}

/// Tabulated quadratic invariant of w′.
pub fn q_w_prime() -> MultiPoly {
    poly("q_wprime")
}

/// Tabulated cubic invariant of w′.
pub fn f_w_prime() -> MultiPoly {
    poly("f_wprime")
}

/// Tabulated dual trivector Φ_w.
pub fn phi_w() -> DualTrivector {
    DualTrivector::from_json(&forms()["phi_w"]).expect("reference dual trivector parses")
}

/// Tabulated real-form representatives, `i ∈ {1, 2}`.
pub fn w_real(i: u8) -> Trivector {
    trivector(if i == 1 { "w1" } else { "w2" })
}

/// Quadratic forms of the real-form representatives exactly as tabulated,
/// including the repeated `v7*v7` factor in the cross term.
pub fn q_w_real_as_printed(i: u8) -> MultiPoly {
    poly(if i == 1 {
        "q_w1_as_printed"
    } else {
        "q_w2_as_printed"
    })
}

/// The same forms with the cross term read as `v7*v8`.
pub fn q_w_real_cross_term(i: u8) -> MultiPoly {
    poly(if i == 1 {
        "q_w1_cross_term_read"
    } else {
        "q_w2_cross_term_read"
    })
}

/// Tabulated adjoint matrix: each entry a linear form in
/// `(α₁, α₂, α₃, β₁, β₂, β₃, γ₁, γ₂, γ₃)`, i.e. a polynomial in 9 variables.
pub fn ad_table() -> Vec<Vec<MultiPoly>> {
    let table = &forms()["ad_table"];
    let names: Vec<&str> = table["variables"]
        .as_array()
        .expect("variables")
        .iter()
        .map(|v| v.as_str().expect("variable name"))
        .collect();
    table["rows"]
        .as_array()
        .expect("rows")
        .iter()
        .map(|row| {
            row.as_array()
                .expect("row")
                .iter()
                .map(|cell| {
                    let mut text = cell.as_str().expect("cell").to_string();
                    // the polynomial parser only knows the names v1..vN
                    for (k, name) in names.iter().enumerate() {
                        text = text.replace(name, &format!("v{}", k + 1));
                    }
                    MultiPoly::parse(names.len(), &text).expect("table entry parses")
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_shapes() {
        assert!(s_w().is_symmetric());
        assert!(s_w_prime().is_symmetric());
        assert!(q_w().is_homogeneous(2) && f_w().is_homogeneous(3));
        assert_eq!(f_w().num_terms(), 8);
        assert_eq!(phi_w().len(), 8);
        assert_eq!(w_real(1).len(), 8);
        let table = ad_table();
        assert_eq!(table.len(), 8);
        assert!(table.iter().all(|r| r.len() == 8));
        // the repeated factor collapses the v7 terms in the literal reading
        assert!(
            q_w_real_as_printed(1)
                .coeff_of(&[0, 0, 0, 0, 0, 0, 2, 0])
                .numer()
                == &0.into()
        );
    }
}
