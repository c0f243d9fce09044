//! Normalization of each admissible case to its catalog representative.
//!
//! Every routine returns the new basis as columns in the coordinates of the
//! specification, so the witness maps the catalog algebra into the
//! constructed one.

use num_traits::{One, Zero};

use super::{check_homomorphism, generate, CatalogId, Witness};
use crate::construct::{algebra_from_extended, classify_extended, CaseVerdict, ExtendedSpec};
use crate::error::{Error, Result};
use crate::form::{diagonalize, normalized_columns, Column, LinearFunctional, SymBilinearForm};
use crate::linalg::{extend_basis, Matrix, Vector};
use crate::scalar::Scalar;

/// Catalog representative of a left-symmetric construction and a verified
/// map from it into the constructed algebra.
pub fn identify(spec: &ExtendedSpec) -> Result<(CatalogId, Witness)> {
    let verdict = classify_extended(spec);
    let n = spec.dim();
    let (id, cols) = match verdict {
        CaseVerdict::NotLeftSymmetric => return Err(Error::NotLeftSymmetric),
        CaseVerdict::Case1 { rank } => (CatalogId::A1(rank), case1(spec)),
        CaseVerdict::Case2 => (CatalogId::A2, case2(spec)),
        CaseVerdict::Case3 { rank } => case3(spec, rank),
        CaseVerdict::Case4(params) => match params.lambda() {
            None => (CatalogId::A41, case4_nilpotent(spec, &params.alpha_sq)),
            Some(lambda) => {
                let d = &params.a1_sq - &params.a1_alpha;
                (CatalogId::A4(lambda), case4(spec, &d))
            }
        },
        CaseVerdict::Case5 { rank } => (CatalogId::A5(rank - 2), isotropic_pair(spec, true)),
        CaseVerdict::Case6 => (CatalogId::A6, case6(spec)),
        CaseVerdict::Case7 { alpha } => (CatalogId::A7(alpha), case7(spec)),
    };
    let witness = Witness::from_columns(cols);
    let target = generate(&id, n)?;
    if !check_homomorphism(&target, &algebra_from_extended(spec), &witness)? {
        return Err(Error::Internal(format!("normalizing basis for {id} failed verification")));
    }
    Ok((id, witness))
}

fn exact(vs: impl IntoIterator<Item = Vector>) -> Vec<Column> {
    vs.into_iter().map(Column::Exact).collect()
}

fn standard_basis(n: usize) -> Vec<Vector> {
    (0..n).map(|i| Vector::basis(n, i)).collect()
}

/// Basis of `{x : u_k(x) = 0 for all k}`.
fn common_kernel(n: usize, us: &[&LinearFunctional]) -> Vec<Vector> {
    let rows: Vec<Vec<Scalar>> = us.iter().map(|u| u.coeffs().coords().to_vec()).collect();
    if rows.is_empty() {
        return standard_basis(n);
    }
    Matrix::from_rows(rows).expect("rectangular").kernel()
}

/// Columns spanning `w` on which `κ·h` becomes `diag(1,…,1,0,…,0)`,
/// returned as (unit columns, null columns).
fn diagonal_block(h: &SymBilinearForm, w: &[Vector], kappa: &Scalar) -> (Vec<Column>, Vec<Column>) {
    if w.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let d = diagonalize(h.restrict(w).gram());
    let rank = d.rank();
    let wmat = Matrix::from_columns(w);
    let lifted = crate::form::Diagonalization { basis: wmat.mul(&d.basis), diag: d.diag };
    let mut cols = normalized_columns(&lifted, kappa);
    let zeros = cols.split_off(rank);
    (cols, zeros)
}

/// `h(·,c) = 0`: basis `c`, then a diagonalizing basis of a complement.
fn case1(spec: &ExtendedSpec) -> Vec<Column> {
    let n = spec.dim();
    let c = spec.c();
    let p = c.pivot().expect("c is nonzero");
    let w: Vec<Vector> = (0..n).filter(|&i| i != p).map(|i| Vector::basis(n, i)).collect();
    let (ones, zeros) = diagonal_block(spec.h(), &w, &Scalar::one());
    let mut cols = exact([c.clone()]);
    cols.extend(ones);
    cols.extend(zeros);
    cols
}

/// Rank-one `h` with `h(c,c) ≠ 0`: `c/h(c,c)` and the radical.
fn case2(spec: &ExtendedSpec) -> Vec<Column> {
    let c = spec.c();
    let hcc = spec.h().eval(c, c);
    let mut cols = vec![c.scale(&hcc.inv().expect("h(c,c) nonzero"))];
    cols.extend(spec.h().gram().kernel());
    exact(cols)
}

fn case3(spec: &ExtendedSpec, rank: usize) -> (CatalogId, Vec<Column>) {
    let n = spec.dim();
    let (h, c) = (spec.h(), spec.c());
    let kappa = h.eval(c, c);
    if kappa.is_zero() {
        return (CatalogId::A33(rank - 2), isotropic_pair(spec, false));
    }
    let w = common_kernel(n, &[&spec.hc()]);
    let (ones, mut zeros) = diagonal_block(h, &w, &kappa);
    let mut cols = exact([c.scale(&kappa.inv().unwrap())]);
    if rank == n {
        cols.extend(ones);
        (CatalogId::A31, cols)
    } else {
        let first_zero = zeros.remove(0);
        cols.push(first_zero);
        cols.extend(ones);
        cols.extend(zeros);
        (CatalogId::A32(rank - 1), cols)
    }
}

/// `h(c,c) = 0`: `e'_1 = c`, `e'_2 = ±(u/s - h(u,u)/(2s²)·c)` with
/// `s = h(u,c) ≠ 0`, then a diagonalizing basis of the common
/// `h`-orthogonal complement. The sign is negative for the `g = -h(·,c)` case.
fn isotropic_pair(spec: &ExtendedSpec, negate: bool) -> Vec<Column> {
    let n = spec.dim();
    let (h, c) = (spec.h(), spec.c());
    let hc = spec.hc();
    let p = hc.coeffs().pivot().expect("h(·,c) nonzero");
    let u = Vector::basis(n, p);
    let s = hc.at(p).clone();
    let s_inv = s.inv().unwrap();
    let coef = &(&h.eval(&u, &u) * &s_inv) * &(&s_inv / &Scalar::from_int(2));
    let mut e2 = u.scale(&s_inv).sub(&c.scale(&coef));
    if negate {
        e2 = e2.scale(&-Scalar::one());
    }
    let h_e2 = h.partial(&e2);
    let w = common_kernel(n, &[&hc, &h_e2]);
    let (ones, zeros) = diagonal_block(h, &w, &Scalar::one());
    let mut cols = exact([c.clone(), e2]);
    cols.extend(ones);
    cols.extend(zeros);
    cols
}

/// `g = 0`, rank-one `h`, `h(c,c) ≠ 0`: `c/(h(c,c) - a₁α)` and `ker f`.
fn case4(spec: &ExtendedSpec, d: &Scalar) -> Vec<Column> {
    let mut cols = vec![spec.c().scale(&d.inv().expect("a1(a1 - alpha) nonzero"))];
    cols.extend(spec.f().kernel());
    exact(cols)
}

/// `g = 0`, rank-one `h`, `h(c,c) = 0`: `-w` with `ψ(w) = 1` for
/// `ψ = h(·,c) - f`, then `c/α²`, then a completion inside `ker ψ`.
fn case4_nilpotent(spec: &ExtendedSpec, alpha_sq: &Scalar) -> Vec<Column> {
    let psi = spec.hc().sub(spec.f());
    let w = unit_preimage(&psi);
    let c2 = spec.c().scale(&alpha_sq.inv().expect("alpha nonzero"));
    let rest = extend_basis(std::slice::from_ref(&c2), &psi.kernel(), spec.dim() - 1);
    let mut cols = vec![w.scale(&-Scalar::one())];
    cols.extend(rest);
    exact(cols)
}

/// `f = 0`, `h(·,c) = 0`, `g = αℓ` with `h = ℓ⊗ℓ`: `w` with `g(w) = 1`,
/// then `c/α²`, then a completion inside `ker g`.
fn case6(spec: &ExtendedSpec) -> Vec<Column> {
    let g = spec.g();
    let h = spec.h();
    let p = (0..spec.dim()).find(|&i| !h.at(i, i).is_zero()).expect("rank-one form has a nonzero diagonal");
    let alpha_sq = &(g.at(p) * g.at(p)) / h.at(p, p);
    let c2 = spec.c().scale(&alpha_sq.inv().expect("alpha nonzero"));
    let rest = extend_basis(std::slice::from_ref(&c2), &g.kernel(), spec.dim() - 1);
    let mut cols = vec![unit_preimage(g)];
    cols.extend(rest);
    exact(cols)
}

/// `g = αf`, `h = -f⊗f/f(c)`: `c/f(c)` and `ker f`.
fn case7(spec: &ExtendedSpec) -> Vec<Column> {
    let fc = spec.f().eval(spec.c());
    let mut cols = vec![spec.c().scale(&fc.inv().expect("f(c) nonzero"))];
    cols.extend(spec.f().kernel());
    exact(cols)
}

/// `e_p / u_p` for the first nonzero coefficient, so `u(w) = 1`.
fn unit_preimage(u: &LinearFunctional) -> Vector {
    let p = u.coeffs().pivot().expect("functional nonzero");
    Vector::basis(u.dim(), p).scale(&u.at(p).inv().unwrap())
}
