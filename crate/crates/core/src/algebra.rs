//! Finite-dimensional algebras given by structure constants.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// Largest dimension accepted by the exact routines.
pub const MAX_DIM: usize = 16;

fn check_size(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::InvalidDimension(format!("dimension must be in 1..={MAX_DIM}, got {dim}")));
    }
    Ok(())
}

/// An algebra with `e_i * e_j = Σ_k C[i][j][k] e_k` (0-based internally).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    dim: usize,
    tensor: Vec<Scalar>,
}

impl Algebra {
    /// Builds an algebra from a flat tensor indexed `(i*n + j)*n + k`.
    pub fn new(dim: usize, tensor: Vec<Scalar>) -> Result<Self> {
        check_size(dim)?;
        if tensor.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, found: tensor.len() });
        }
        Ok(Algebra { dim, tensor })
    }

    pub fn trivial(dim: usize) -> Result<Self> {
        Algebra::new(dim, vec![Scalar::zero(); dim * dim * dim])
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Result<Self> {
        check_size(dim)?;
        let mut tensor = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    tensor.push(f(i, j, k));
                }
            }
        }
        Ok(Algebra { dim, tensor })
    }

    /// Builds an algebra from the products `e_i * e_j` listed in `table`;
    /// unlisted products vanish. Indices are 0-based.
    pub fn from_products(dim: usize, table: &[(usize, usize, Vector)]) -> Result<Self> {
        let mut a = Algebra::trivial(dim)?;
        for (i, j, v) in table {
            if *i >= dim || *j >= dim {
                return Err(Error::InvalidDimension(format!("product index ({i}, {j}) out of range")));
            }
            v.check_dim(dim)?;
            for k in 0..dim {
                a.tensor[(i * dim + j) * dim + k] = v[k].clone();
            }
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `C[i][j][k]`, 0-based.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.tensor[(i * self.dim + j) * self.dim + k]
    }

    pub fn tensor(&self) -> &[Scalar] {
        &self.tensor
    }

    pub fn is_trivial(&self) -> bool {
        self.tensor.iter().all(Zero::is_zero)
    }

    /// `e_i * e_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let start = (i * self.dim + j) * self.dim;
        Vector::new(self.tensor[start..start + self.dim].to_vec())
    }

    pub fn multiply(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        x.check_dim(self.dim)?;
        y.check_dim(self.dim)?;
        Ok(self.mul(x, y))
    }

    /// Unchecked product; panics on dimension mismatch.
    pub(crate) fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.dim;
        let mut out = Vector::zeros(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let w = &x[i] * &y[j];
                for k in 0..n {
                    let c = self.coeff(i, j, k);
                    if !c.is_zero() {
                        out[k] += &(&w * c);
                    }
                }
            }
        }
        out
    }

    /// `(x*y)*z - x*(y*z)`.
    pub fn associator(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
        x.check_dim(self.dim)?;
        y.check_dim(self.dim)?;
        z.check_dim(self.dim)?;
        Ok(self.mul(&self.mul(x, y), z).sub(&self.mul(x, &self.mul(y, z))))
    }

    /// All basis associators: entry `((i*n + j)*n + k)` is `(e_i, e_j, e_k)`.
    pub fn associator_table(&self) -> Vec<Vector> {
        let n = self.dim;
        let products: Vec<Vector> = (0..n * n).map(|p| self.basis_product(p / n, p % n)).collect();
        let right: Vec<Matrix> = (0..n).map(|k| self.right_basis(k)).collect();
        let left: Vec<Matrix> = (0..n).map(|i| self.left_basis(i)).collect();
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = right[k].mul_vec(&products[i * n + j]);
                    let b = left[i].mul_vec(&products[j * n + k]);
                    out.push(a.sub(&b));
                }
            }
        }
        out
    }

    /// `(x,y,z) = (y,x,z)` on every basis triple.
    pub fn is_left_symmetric(&self) -> bool {
        let n = self.dim;
        let t = self.associator_table();
        (0..n).all(|i| (i + 1..n).all(|j| (0..n).all(|k| t[(i * n + j) * n + k] == t[(j * n + i) * n + k])))
    }

    pub fn is_associative(&self) -> bool {
        self.associator_table().iter().all(Vector::is_zero)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (i + 1..n).all(|j| (0..n).all(|k| self.coeff(i, j, k) == self.coeff(j, i, k))))
    }

    /// Matrix of `L_{e_i}`: column `j` is `e_i * e_j`.
    pub fn left_basis(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.coeff(i, j, k).clone())
    }

    /// Matrix of `R_{e_j}`: column `i` is `e_i * e_j`.
    pub fn right_basis(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, i| self.coeff(i, j, k).clone())
    }

    pub fn left_mult(&self, x: &Vector) -> Result<Matrix> {
        x.check_dim(self.dim)?;
        Ok(self.combine(x, |i| self.left_basis(i)))
    }

    pub fn right_mult(&self, x: &Vector) -> Result<Matrix> {
        x.check_dim(self.dim)?;
        Ok(self.combine(x, |i| self.right_basis(i)))
    }

    fn combine(&self, x: &Vector, basis: impl Fn(usize) -> Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            if !x[i].is_zero() {
                m = m.add(&basis(i).scale(&x[i]));
            }
        }
        m
    }

    /// The commutator algebra `[x,y] = xy - yx`; fails unless Jacobi holds.
    pub fn sub_adjacent_lie(&self) -> Result<LieAlgebra> {
        let n = self.dim;
        LieAlgebra::new(n, (0..n * n * n).map(|p| {
            let (i, j, k) = (p / (n * n), (p / n) % n, p % n);
            self.coeff(i, j, k) - self.coeff(j, i, k)
        })
        .collect())
    }

    /// The same algebra written in the basis `e'_a = Σ_i P[i][a] e_i`.
    pub fn transform(&self, p: &Matrix) -> Result<Algebra> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.rows().max(p.cols()) });
        }
        let inv = p.inverse().ok_or_else(|| Error::InvalidSpec("change of basis is singular".into()))?;
        let cols = p.columns();
        let mut tensor = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                let prod = inv.mul_vec(&self.mul(&cols[a], &cols[b]));
                tensor.extend(prod.into_coords());
            }
        }
        Algebra::new(n, tensor)
    }

    /// Nonzero entries as `(i, j, k, C)`, 0-based, in lexicographic order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        let n = self.dim;
        self.tensor
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(p, c)| (p / (n * n), (p / n) % n, p % n, c))
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim={}; ", self.dim)?;
        write_products(f, self.dim, |i, j| self.basis_product(i, j))?;
        write!(f, ")")
    }
}

impl fmt::Display for Algebra {
    /// Lists nonzero basis products, 1-based: `e1e2 = e2; ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_products(f, self.dim, |i, j| self.basis_product(i, j))
    }
}

fn write_products(f: &mut fmt::Formatter<'_>, n: usize, prod: impl Fn(usize, usize) -> Vector) -> fmt::Result {
    let mut first = true;
    for i in 0..n {
        for j in 0..n {
            let v = prod(i, j);
            if v.is_zero() {
                continue;
            }
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "e{}e{} = {}", i + 1, j + 1, format_combination(&v))?;
        }
    }
    if first {
        write!(f, "all products zero")?;
    }
    Ok(())
}

/// Renders `Σ v_k e_k` compactly, e.g. `2e1 + e2`.
pub fn format_combination(v: &Vector) -> String {
    let mut terms = Vec::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let coef = match s.as_str() {
            "1" => String::new(),
            "-1" => "-".to_string(),
            _ if c.is_real() => s,
            _ => format!("({s})"),
        };
        terms.push(format!("{coef}e{}", k + 1));
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

/// A Lie algebra whose axioms were checked at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    dim: usize,
    tensor: Vec<Scalar>,
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity exactly.
    pub fn new(dim: usize, tensor: Vec<Scalar>) -> Result<Self> {
        check_size(dim)?;
        if tensor.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, found: tensor.len() });
        }
        let lie = LieAlgebra { dim, tensor };
        lie.validate()?;
        Ok(lie)
    }

    pub fn abelian(dim: usize) -> Result<Self> {
        LieAlgebra::new(dim, vec![Scalar::zero(); dim * dim * dim])
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if *self.coeff(i, j, k) != -self.coeff(j, i, k) {
                        return Err(Error::NotALieAlgebra(format!(
                            "[e{0},e{1}] != -[e{1},e{0}]",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        let basis: Vec<Vector> = (0..n).map(|i| Vector::basis(n, i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.basis_bracket(i, j);
                for k in j + 1..n {
                    let jk = self.basis_bracket(j, k);
                    let ki = self.basis_bracket(k, i);
                    let s = self
                        .br(&ij, &basis[k])
                        .add(&self.br(&jk, &basis[i]))
                        .add(&self.br(&ki, &basis[j]));
                    if !s.is_zero() {
                        return Err(Error::NotALieAlgebra(format!(
                            "Jacobi identity fails on (e{}, e{}, e{})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.tensor[(i * self.dim + j) * self.dim + k]
    }

    pub fn tensor(&self) -> &[Scalar] {
        &self.tensor
    }

    pub fn is_abelian(&self) -> bool {
        self.tensor.iter().all(Zero::is_zero)
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        let start = (i * self.dim + j) * self.dim;
        Vector::new(self.tensor[start..start + self.dim].to_vec())
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        x.check_dim(self.dim)?;
        y.check_dim(self.dim)?;
        Ok(self.br(x, y))
    }

    pub(crate) fn br(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.dim;
        let mut out = Vector::zeros(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let w = &x[i] * &y[j];
                for k in 0..n {
                    let c = self.coeff(i, j, k);
                    if !c.is_zero() {
                        out[k] += &(&w * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(e_i) = [e_i, ·]`.
    pub fn ad_basis(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.coeff(i, j, k).clone())
    }

    pub fn ad(&self, x: &Vector) -> Result<Matrix> {
        x.check_dim(self.dim)?;
        let mut m = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            if !x[i].is_zero() {
                m = m.add(&self.ad_basis(i).scale(&x[i]));
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim={}; ", self.dim)?;
        let mut first = true;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.basis_bracket(i, j);
                if v.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, "; ")?;
                }
                first = false;
                write!(f, "[e{},e{}] = {}", i + 1, j + 1, format_combination(&v))?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        Vector::from_ints(xs)
    }

    /// `e1e1 = 2e1, e1e2 = e2, e2e2 = e1`.
    fn simple2() -> Algebra {
        Algebra::from_products(2, &[(0, 0, v(&[2, 0])), (0, 1, v(&[0, 1])), (1, 1, v(&[1, 0]))]).unwrap()
    }

    #[test]
    fn products_and_associator() {
        let a = simple2();
        assert_eq!(a.multiply(&v(&[0, 1]), &v(&[0, 1])).unwrap(), v(&[1, 0]));
        assert_eq!(a.associator(&v(&[0, 1]), &v(&[0, 1]), &v(&[0, 1])).unwrap(), v(&[0, 1]));
        assert!(a.is_left_symmetric());
        assert!(!a.is_associative());
        assert!(a.multiply(&v(&[1]), &v(&[0, 1])).is_err());
    }

    #[test]
    fn multiplication_operators() {
        let a = simple2();
        let r = a.right_mult(&v(&[0, 1])).unwrap();
        assert_eq!(r, Matrix::from_int_rows(&[&[0, 1], &[1, 0]]));
        let l = a.left_mult(&v(&[1, 0])).unwrap();
        assert_eq!(l, Matrix::from_int_rows(&[&[2, 0], &[0, 1]]));
    }

    #[test]
    fn transform_round_trip() {
        let a = simple2();
        let p = Matrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        let b = a.transform(&p).unwrap();
        let back = b.transform(&p.inverse().unwrap()).unwrap();
        assert_eq!(back, a);
        assert!(b.is_left_symmetric());
    }

    #[test]
    fn lie_validation() {
        let a = simple2();
        let lie = a.sub_adjacent_lie().unwrap();
        assert_eq!(lie.basis_bracket(0, 1), v(&[0, 1]));
        let mut bad = vec![Scalar::zero(); 8];
        bad[1] = Scalar::from_int(1);
        assert!(LieAlgebra::new(2, bad).is_err());
    }

    #[test]
    fn display_lists_products() {
        assert_eq!(simple2().to_string(), "e1e1 = 2e1; e1e2 = e2; e2e2 = e1");
        assert_eq!(Algebra::trivial(2).unwrap().to_string(), "all products zero");
    }
}
