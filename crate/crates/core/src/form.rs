//! Linear functionals and symmetric bilinear forms.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Matrix, Vector};
use crate::scalar::{cmp_magnitude, Scalar};

/// `x ↦ Σ_i coeffs[i] x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearFunctional {
    coeffs: Vector,
}

impl LinearFunctional {
    pub fn new(coeffs: Vector) -> Self {
        LinearFunctional { coeffs }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        LinearFunctional::new(Vector::from_ints(xs))
    }

    pub fn zero(dim: usize) -> Self {
        LinearFunctional::new(Vector::zeros(dim))
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    pub fn coeffs(&self) -> &Vector {
        &self.coeffs
    }

    /// Value on `e_{i+1}`.
    pub fn at(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn eval(&self, x: &Vector) -> Scalar {
        self.coeffs.dot(x)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        LinearFunctional::new(self.coeffs.scale(s))
    }

    pub fn add(&self, other: &Self) -> Self {
        LinearFunctional::new(self.coeffs.add(&other.coeffs))
    }

    pub fn sub(&self, other: &Self) -> Self {
        LinearFunctional::new(self.coeffs.sub(&other.coeffs))
    }

    /// Basis of the kernel.
    pub fn kernel(&self) -> Vec<Vector> {
        Matrix::from_rows(vec![self.coeffs.coords().to_vec()]).expect("single row").kernel()
    }
}

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SymBilinearForm {
    gram: Matrix,
}

impl SymBilinearForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::InvalidDimension("Gram matrix must be square".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::AsymmetricForm);
        }
        Ok(SymBilinearForm { gram })
    }

    pub fn zero(dim: usize) -> Self {
        SymBilinearForm { gram: Matrix::zeros(dim, dim) }
    }

    /// `h(x, y) = u(x) u(y)`.
    pub fn outer(u: &LinearFunctional) -> Self {
        let n = u.dim();
        SymBilinearForm { gram: Matrix::from_fn(n, n, |i, j| u.at(i) * u.at(j)) }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.gram[(i, j)]
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> Scalar {
        x.dot(&self.gram.mul_vec(y))
    }

    /// The functional `h(·, y)`.
    pub fn partial(&self, y: &Vector) -> LinearFunctional {
        LinearFunctional::new(self.gram.mul_vec(y))
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        SymBilinearForm { gram: self.gram.scale(s) }
    }

    /// Gram matrix of the restriction to `span(basis)`.
    pub fn restrict(&self, basis: &[Vector]) -> Self {
        let k = basis.len();
        SymBilinearForm { gram: Matrix::from_fn(k, k, |a, b| self.eval(&basis[a], &basis[b])) }
    }

    /// `Pᵀ G P`.
    pub fn congruent(&self, p: &Matrix) -> Self {
        SymBilinearForm { gram: p.transpose().mul(&self.gram).mul(p) }
    }
}

impl<'de> Deserialize<'de> for SymBilinearForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        SymBilinearForm::new(Matrix::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Exact rank of a symmetric form.
pub fn form_rank(h: &SymBilinearForm) -> usize {
    h.rank()
}

/// Exact congruence `Tᵀ G T = diag(d)` with the nonzero entries of `d` first.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub basis: Matrix,
    pub diag: Vec<Scalar>,
}

impl Diagonalization {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Symmetric Gaussian elimination. The pivot is the largest diagonal entry;
/// a zero diagonal over a nonzero block is repaired by `e_i ← e_i + e_j`.
pub fn diagonalize(gram: &Matrix) -> Diagonalization {
    let n = gram.rows();
    let mut g = gram.clone();
    let mut t = Matrix::identity(n);
    let mut s = 0;
    while s < n {
        let best = (s..n).max_by(|&a, &b| cmp_magnitude(&g[(a, a)], &g[(b, b)]).then(b.cmp(&a))).unwrap();
        if g[(best, best)].is_zero() {
            let off = (s..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !g[(i, j)].is_zero());
            let Some((i, j)) = off else { break };
            add_to(&mut g, &mut t, i, j);
            continue;
        }
        g.swap_rows(best, s);
        g.swap_cols(best, s);
        t.swap_cols(best, s);
        let piv = g[(s, s)].clone();
        for j in s + 1..n {
            if g[(s, j)].is_zero() {
                continue;
            }
            let factor = &g[(s, j)] / &piv;
            for r in 0..n {
                let d = &factor * &t[(r, s)];
                t[(r, j)] -= &d;
            }
            for r in 0..n {
                let d = &factor * &g[(s, r)];
                g[(j, r)] -= &d;
            }
            for r in 0..n {
                let d = &factor * &g[(r, s)];
                g[(r, j)] -= &d;
            }
        }
        s += 1;
    }
    Diagonalization { basis: t, diag: (0..n).map(|i| g[(i, i)].clone()).collect() }
}

fn add_to(g: &mut Matrix, t: &mut Matrix, i: usize, j: usize) {
    let n = g.rows();
    for r in 0..n {
        let v = t[(r, j)].clone();
        t[(r, i)] += &v;
    }
    for r in 0..n {
        let v = g[(j, r)].clone();
        g[(i, r)] += &v;
    }
    for r in 0..n {
        let v = g[(r, j)].clone();
        g[(r, i)] += &v;
    }
}

/// A column that may have needed an irrational scaling.
#[derive(Clone, Debug)]
pub enum Column {
    Exact(Vector),
    Approx(Vec<Complex64>),
}

impl Column {
    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            Column::Exact(v) => v.iter().map(Scalar::to_complex).collect(),
            Column::Approx(v) => v.clone(),
        }
    }

    /// `v / sqrt(d)`, exact when `d` is a square in the field.
    pub fn scaled_by_inv_sqrt(v: &Vector, d: &Scalar) -> Column {
        match d.exact_sqrt().and_then(|r| r.inv()) {
            Some(s) => Column::Exact(v.scale(&s)),
            None => {
                let s = Complex64::new(1.0, 0.0) / d.to_complex().sqrt();
                Column::Approx(v.iter().map(|x| x.to_complex() * s).collect())
            }
        }
    }
}

/// Congruence normal form `diag(1,…,1,0,…,0)`: exact rank and an
/// approximate basis `T` with `Tᵀ G T` equal to it up to rounding.
pub fn congruence_diagonalize(h: &SymBilinearForm) -> (usize, CMatrix) {
    let d = diagonalize(h.gram());
    let rank = d.rank();
    let cols = normalized_columns(&d, &Scalar::one());
    let n = h.dim();
    let cols: Vec<Vec<Complex64>> = cols.iter().map(Column::to_complex).collect();
    (rank, CMatrix::from_fn(n, n, |i, j| cols[j][i]))
}

/// Columns of `T` scaled so that `κ·Tᵀ G T = diag(1,…,1,0,…,0)`.
pub fn normalized_columns(d: &Diagonalization, kappa: &Scalar) -> Vec<Column> {
    d.basis
        .columns()
        .into_iter()
        .zip(&d.diag)
        .map(|(col, di)| if di.is_zero() { Column::Exact(col) } else { Column::scaled_by_inv_sqrt(&col, &(kappa * di)) })
        .collect()
}
