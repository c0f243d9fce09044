use crate::algebra::{Algebra, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

fn check_shape(lie: &LieAlgebra, r: &Matrix) -> Result<()> {
    let n = lie.dim();
    if r.rows() != n || r.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: if r.rows() != n { r.rows() } else { r.cols() } });
    }
    Ok(())
}

/// `[R(x), R(y)] = R([R(x), y] + [x, R(y)])` on every basis pair. Column `i`
/// of `r` is `R(e_i)`.
pub fn is_r_matrix(lie: &LieAlgebra, r: &Matrix) -> Result<bool> {
    check_shape(lie, r)?;
    let n = lie.dim();
    let images = r.columns();
    for i in 0..n {
        let ei = Vector::basis(n, i);
        for j in 0..n {
            let ej = Vector::basis(n, j);
            let lhs = lie.br(&images[i], &images[j]);
            let inner = lie.br(&images[i], &ej).add(&lie.br(&ei, &images[j]));
            if lhs != r.mul_vec(&inner) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The product `x*y = [R(x), y]`.
pub fn lsa_from_r_matrix(lie: &LieAlgebra, r: &Matrix) -> Result<Algebra> {
    if !is_r_matrix(lie, r)? {
        return Err(Error::NotAnRMatrix);
    }
    let n = lie.dim();
    Algebra::from_fn(n, |i, j, k| (0..n).map(|a| &r[(a, i)] * lie.coeff(a, j, k)).sum::<Scalar>())
}

/// `R(e_1) = t·e_1`, `R(e_j) = 0` otherwise.
pub fn scaled_projection(n: usize, t: Scalar) -> Matrix {
    let mut r = Matrix::zeros(n, n);
    r[(0, 0)] = t;
    r
}
