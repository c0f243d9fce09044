use num_complex::Complex64;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::{fingerprint, generate, match_catalog, CatalogId};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::form::Column;
use crate::linalg::{CMatrix, Matrix};
use crate::scalar::Scalar;

/// Largest residual accepted for an approximate witness.
pub const WITNESS_TOLERANCE: f64 = 1e-9;

/// A linear map given by the images of the basis vectors (its columns).
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Exact(Matrix),
    /// Needed when a normalization involves an irrational square root.
    Approx(CMatrix),
}

impl Witness {
    pub fn identity(n: usize) -> Self {
        Witness::Exact(Matrix::identity(n))
    }

    /// Exact when every column is exact.
    pub fn from_columns(cols: Vec<Column>) -> Self {
        if cols.iter().all(|c| matches!(c, Column::Exact(_))) {
            let exact: Vec<_> = cols
                .into_iter()
                .map(|c| match c {
                    Column::Exact(v) => v,
                    Column::Approx(_) => unreachable!(),
                })
                .collect();
            Witness::Exact(Matrix::from_columns(&exact))
        } else {
            let cs: Vec<Vec<Complex64>> = cols.iter().map(Column::to_complex).collect();
            let n = cs.first().map_or(0, Vec::len);
            Witness::Approx(CMatrix::from_fn(n, cs.len(), |i, j| cs[j][i]))
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Witness::Exact(_))
    }

    pub fn dim(&self) -> usize {
        match self {
            Witness::Exact(m) => m.rows(),
            Witness::Approx(m) => m.rows(),
        }
    }

    pub fn to_complex(&self) -> CMatrix {
        match self {
            Witness::Exact(m) => m.to_complex(),
            Witness::Approx(m) => m.clone(),
        }
    }

    pub fn inverse(&self) -> Option<Witness> {
        match self {
            Witness::Exact(m) => m.inverse().map(Witness::Exact),
            Witness::Approx(m) => m.inverse().map(Witness::Approx),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Witness) -> Witness {
        match (self, other) {
            (Witness::Exact(a), Witness::Exact(b)) => Witness::Exact(a.mul(b)),
            _ => Witness::Approx(self.to_complex().mul(&other.to_complex())),
        }
    }
}

impl From<Matrix> for Witness {
    fn from(m: Matrix) -> Self {
        Witness::Exact(m)
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a, T: Serialize> {
            exact: bool,
            columns_are_images: bool,
            matrix: &'a T,
        }
        match self {
            Witness::Exact(m) => Repr { exact: true, columns_are_images: true, matrix: m }.serialize(s),
            Witness::Approx(m) => Repr { exact: false, columns_are_images: true, matrix: m }.serialize(s),
        }
    }
}

/// `T(x *_A y) = T(x) *_B T(y)` on basis pairs, with `T` invertible. Exact
/// for exact witnesses; approximate ones must agree within `1e-9`.
pub fn check_homomorphism(a: &Algebra, b: &Algebra, t: &Witness) -> Result<bool> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.dim() });
    }
    if t.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: t.dim() });
    }
    match t {
        Witness::Exact(m) => {
            if m.cols() != n || !m.is_invertible() {
                return Ok(false);
            }
            let cols = m.columns();
            for i in 0..n {
                for j in 0..n {
                    if m.mul_vec(&a.basis_product(i, j)) != b.mul(&cols[i], &cols[j]) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Witness::Approx(m) => Ok(m.cols() == n && m.inverse().is_some() && homomorphism_residual(a, b, m) <= WITNESS_TOLERANCE),
    }
}

/// Largest entry of `T(e_i e_j) - T(e_i) T(e_j)` over basis pairs.
pub fn homomorphism_residual(a: &Algebra, b: &Algebra, t: &CMatrix) -> f64 {
    let n = a.dim();
    let tb: Vec<Complex64> = b.tensor().iter().map(Scalar::to_complex).collect();
    let cols: Vec<Vec<Complex64>> = (0..n).map(|j| t.column(j)).collect();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let lhs = t.mul_vec(&a.basis_product(i, j).iter().map(Scalar::to_complex).collect::<Vec<_>>());
            let mut rhs = vec![Complex64::zero(); n];
            for p in 0..n {
                for q in 0..n {
                    let w = cols[i][p] * cols[j][q];
                    if w == Complex64::zero() {
                        continue;
                    }
                    for (k, r) in rhs.iter_mut().enumerate() {
                        *r += w * tb[(p * n + q) * n + k];
                    }
                }
            }
            for k in 0..n {
                worst = worst.max((lhs[k] - rhs[k]).norm());
            }
        }
    }
    worst
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IsoVerdict {
    /// The witness maps the first algebra onto the second.
    Isomorphic { witness: Witness },
    NonIsomorphic { invariant: String },
    Unknown,
}

/// The two exceptional isomorphisms between distinct normal forms in
/// dimension 2, each with its map `e_1 ↦ T e_1, e_2 ↦ T e_2`.
pub fn exceptional_pairs() -> Vec<(CatalogId, CatalogId, Matrix)> {
    vec![
        (CatalogId::A33(0), CatalogId::A7(Scalar::ratio(1, 2)), Matrix::from_int_rows(&[&[0, 2], &[1, 0]])),
        (CatalogId::A5(0), CatalogId::A4(Scalar::from_int(-1)), Matrix::from_int_rows(&[&[0, -1], &[1, 0]])),
    ]
}

/// Three-valued isomorphism test. Never reports an isomorphism without a
/// verified witness, nor a non-isomorphism without a differing invariant.
pub fn are_isomorphic(a: &Algebra, b: &Algebra) -> IsoVerdict {
    if a.dim() != b.dim() {
        return IsoVerdict::NonIsomorphic { invariant: "dim".into() };
    }
    let n = a.dim();
    if let Some(field) = fingerprint(a).differing_field(&fingerprint(b)) {
        return IsoVerdict::NonIsomorphic { invariant: field.into() };
    }
    let verified = |w: Witness| -> Option<IsoVerdict> {
        check_homomorphism(a, b, &w).ok()?.then_some(IsoVerdict::Isomorphic { witness: w })
    };
    if a == b {
        return IsoVerdict::Isomorphic { witness: Witness::identity(n) };
    }
    if n == 2 {
        for (x, y, t) in exceptional_pairs() {
            let (gx, gy) = (generate(&x, 2).expect("valid"), generate(&y, 2).expect("valid"));
            if *a == gx && *b == gy {
                if let Some(v) = verified(Witness::Exact(t.clone())) {
                    return v;
                }
            }
            if *a == gy && *b == gx {
                if let Some(v) = verified(Witness::Exact(t.inverse().expect("invertible"))) {
                    return v;
                }
            }
        }
    }
    let (Some((ida, pa)), Some((idb, pb))) = (match_catalog(a), match_catalog(b)) else {
        return IsoVerdict::Unknown;
    };
    let Some(pa_inv) = pa.inverse() else { return IsoVerdict::Unknown };
    let bridge = if ida == idb {
        Some(Witness::identity(n))
    } else if n == 2 {
        exceptional_pairs().into_iter().find_map(|(x, y, t)| {
            if x == ida && y == idb {
                Some(Witness::Exact(t))
            } else if y == ida && x == idb {
                t.inverse().map(Witness::Exact)
            } else {
                None
            }
        })
    } else {
        None
    };
    bridge.and_then(|t| verified(pb.compose(&t).compose(&pa_inv))).unwrap_or(IsoVerdict::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exceptional_witnesses_verify() {
        for (x, y, t) in exceptional_pairs() {
            let (a, b) = (generate(&x, 2).unwrap(), generate(&y, 2).unwrap());
            assert!(check_homomorphism(&a, &b, &Witness::Exact(t.clone())).unwrap());
            match are_isomorphic(&a, &b) {
                IsoVerdict::Isomorphic { witness } => assert_eq!(witness, Witness::Exact(t)),
                other => panic!("{x} vs {y}: {other:?}"),
            }
        }
    }

    #[test]
    fn zero_map_is_not_a_homomorphism() {
        let a = generate(&CatalogId::Trivial, 2).unwrap();
        assert!(!check_homomorphism(&a, &a, &Witness::Exact(Matrix::zeros(2, 2))).unwrap());
        assert!(check_homomorphism(&a, &a, &Witness::identity(2)).unwrap());
    }

    #[test]
    fn associativity_separates() {
        let a = generate(&CatalogId::A31, 2).unwrap();
        let b = generate(&CatalogId::A2, 2).unwrap();
        assert_eq!(are_isomorphic(&a, &b), IsoVerdict::NonIsomorphic { invariant: "associative".into() });
    }
}
