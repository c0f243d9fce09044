//! JSON file formats and command-line value syntax.
//!
//! Algebras are stored as `{"dim": n, "structure": [[i, j, k, scalar], ...]}`
//! listing nonzero constants with 1-based indices. Specifications of the
//! extended construction are `{"dim", "f", "g", "h", "c"}`.

use std::collections::HashSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, LieAlgebra};
use crate::construct::ExtendedSpec;
use crate::error::{Error, Result};
use crate::form::{LinearFunctional, SymBilinearForm};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    dim: usize,
    structure: Vec<(usize, usize, usize, Scalar)>,
}

/// JSON value of an algebra file.
pub fn algebra_to_value(a: &Algebra) -> serde_json::Value {
    let n = a.dim();
    let mut structure = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = a.coeff(i, j, k);
                if !c.is_zero() {
                    structure.push((i + 1, j + 1, k + 1, c.clone()));
                }
            }
        }
    }
    serde_json::to_value(AlgebraFile { dim: n, structure }).expect("plain data serializes")
}

pub fn algebra_to_json(a: &Algebra) -> String {
    serde_json::to_string_pretty(&algebra_to_value(a)).expect("plain data serializes")
}

/// Reads an algebra file, rejecting repeated or out-of-range index triples.
pub fn algebra_from_json(text: &str) -> Result<Algebra> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    tensor_from_entries(file.dim, &file.structure).and_then(|t| Algebra::new(file.dim, t))
}

/// Reads an algebra file as a Lie bracket table, validating the Lie axioms.
pub fn lie_from_json(text: &str) -> Result<LieAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    LieAlgebra::new(file.dim, tensor_from_entries(file.dim, &file.structure)?)
}

fn tensor_from_entries(n: usize, entries: &[(usize, usize, usize, Scalar)]) -> Result<Vec<Scalar>> {
    if n == 0 || n > crate::algebra::MAX_DIM {
        return Err(Error::InvalidDimension(format!("dim must be in 1..={}, got {n}", crate::algebra::MAX_DIM)));
    }
    let mut tensor = vec![Scalar::zero(); n * n * n];
    let mut seen = HashSet::new();
    for (i, j, k, c) in entries {
        if [i, j, k].iter().any(|&&x| x == 0 || x > n) {
            return Err(Error::Parse(format!("structure entry ({i}, {j}, {k}) is out of range 1..={n}")));
        }
        if !seen.insert((*i, *j, *k)) {
            return Err(Error::Parse(format!("structure entry ({i}, {j}, {k}) is repeated")));
        }
        tensor[((i - 1) * n + (j - 1)) * n + (k - 1)] = c.clone();
    }
    Ok(tensor)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    dim: usize,
    f: Vec<Scalar>,
    g: Vec<Scalar>,
    h: Vec<Vec<Scalar>>,
    c: Vec<Scalar>,
}

pub fn spec_to_json(spec: &ExtendedSpec) -> String {
    let file = SpecFile {
        dim: spec.dim(),
        f: spec.f().coeffs().coords().to_vec(),
        g: spec.g().coeffs().coords().to_vec(),
        h: (0..spec.dim()).map(|i| spec.h().gram().row(i).into_coords()).collect(),
        c: spec.c().coords().to_vec(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

pub fn spec_from_json(text: &str) -> Result<ExtendedSpec> {
    let file: SpecFile = serde_json::from_str(text)?;
    let n = file.dim;
    for (name, len) in [("f", file.f.len()), ("g", file.g.len()), ("c", file.c.len()), ("h", file.h.len())] {
        if len != n {
            return Err(Error::Parse(format!("'{name}' has length {len}, expected {n}")));
        }
    }
    let gram = Matrix::from_rows(file.h)?;
    if gram.cols() != n {
        return Err(Error::Parse(format!("'h' must be {n} x {n}")));
    }
    ExtendedSpec::new(
        LinearFunctional::new(Vector::new(file.f)),
        LinearFunctional::new(Vector::new(file.g)),
        SymBilinearForm::new(gram)?,
        Vector::new(file.c),
    )
}

/// Comma-separated scalars, e.g. `1,0,-1/2,2+i`.
pub fn parse_vector(text: &str) -> Result<Vector> {
    let coords = text.split(',').map(|t| t.trim().parse::<Scalar>()).collect::<Result<Vec<_>>>()?;
    if coords.is_empty() {
        return Err(Error::Parse("empty vector".into()));
    }
    Ok(Vector::new(coords))
}

/// Rows separated by `;`, entries by `,`, e.g. `1,0;0,0`.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let rows = text
        .split(';')
        .map(|r| parse_vector(r).map(Vector::into_coords))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, CatalogId};

    #[test]
    fn algebra_round_trip() {
        let a = generate(&CatalogId::A4(Scalar::ratio(-3, 2)), 3).unwrap();
        assert_eq!(algebra_from_json(&algebra_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn file_layout() {
        let a = generate(&CatalogId::A2, 2).unwrap();
        let v = algebra_to_value(&a);
        assert_eq!(v, serde_json::json!({"dim": 2, "structure": [[1, 1, 1, {"re": "1", "im": "0"}]]}));
    }

    #[test]
    fn rejects_bad_entries() {
        let dup = r#"{"dim": 2, "structure": [[1,1,1,"1"],[1,1,1,"2"]]}"#;
        assert!(matches!(algebra_from_json(dup), Err(Error::Parse(_))));
        let range = r#"{"dim": 2, "structure": [[1,3,1,"1"]]}"#;
        assert!(matches!(algebra_from_json(range), Err(Error::Parse(_))));
        let zero = r#"{"dim": 2, "structure": [[0,1,1,"1"]]}"#;
        assert!(algebra_from_json(zero).is_err());
        assert!(algebra_from_json(r#"{"dim": 2}"#).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let text = r#"{"dim": 2, "f": ["1","0"], "g": ["2","0"], "h": [["-1","0"],["0","0"]], "c": ["1","0"]}"#;
        let spec = spec_from_json(text).unwrap();
        assert_eq!(spec_from_json(&spec_to_json(&spec)).unwrap(), spec);
        let asym = r#"{"dim": 2, "f": ["1","0"], "g": ["2","0"], "h": [["0","1"],["0","0"]], "c": ["1","0"]}"#;
        assert!(matches!(spec_from_json(asym), Err(Error::AsymmetricForm)));
    }

    #[test]
    fn command_line_values() {
        assert_eq!(parse_vector("1, -1/2").unwrap(), Vector::new(vec![Scalar::from_int(1), Scalar::ratio(-1, 2)]));
        assert_eq!(parse_matrix("1,0;0,1").unwrap(), Matrix::identity(2));
        assert!(parse_matrix("1,0;1").is_err());
        assert!(parse_vector("x").is_err());
    }
}
