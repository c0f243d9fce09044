//! Algebras built from linear functions and the case analysis of the
//! extended construction `x*y = f(x)y + g(y)x + h(x,y)c`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, LieAlgebra};
use crate::error::{Error, Result};
use crate::form::{LinearFunctional, SymBilinearForm};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// Data of the product `x*y = f(y)x + g(x)y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSpec {
    pub f: LinearFunctional,
    pub g: LinearFunctional,
}

impl PairSpec {
    pub fn new(f: LinearFunctional, g: LinearFunctional) -> Result<Self> {
        if f.dim() != g.dim() {
            return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
        }
        if f.dim() < 2 {
            return Err(Error::InvalidDimension("pair construction needs dim >= 2".into()));
        }
        Ok(PairSpec { f, g })
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairVerdict {
    LeftSymmetricAssociative,
    NotLeftSymmetric,
}

/// `C[i][j][k] = f(e_j)δ_ik + g(e_i)δ_jk`. The verdict is associative exactly
/// when one functional vanishes, and this is confirmed on the tensor.
pub fn algebra_from_pair(spec: &PairSpec) -> (Algebra, PairVerdict) {
    let n = spec.dim();
    let a = Algebra::from_fn(n, |i, j, k| {
        let mut v = Scalar::zero();
        if i == k {
            v += spec.f.at(j);
        }
        if j == k {
            v += spec.g.at(i);
        }
        v
    })
    .expect("dimension validated by PairSpec");
    let verdict = if (spec.f.is_zero() || spec.g.is_zero()) && a.is_associative() {
        PairVerdict::LeftSymmetricAssociative
    } else {
        PairVerdict::NotLeftSymmetric
    };
    (a, verdict)
}

/// Change of basis `T` with `g(T e_1) = 1` and `g(T e_i) = 0` for `i ≥ 2`.
///
/// The first column is `e_p / g_p` for the first index with `g_p ≠ 0`; the
/// others are `e_i - (g_i/g_p) e_p`.
pub fn normalized_basis_for_functional(g: &LinearFunctional) -> Result<Matrix> {
    let n = g.dim();
    let p = g.coeffs().pivot().ok_or_else(|| Error::InvalidSpec("functional is zero".into()))?;
    let gp_inv = g.at(p).inv().expect("pivot is nonzero");
    let mut cols = vec![Vector::basis(n, p).scale(&gp_inv)];
    for i in (0..n).filter(|&i| i != p) {
        let mut v = Vector::basis(n, i);
        v[p] = -(g.at(i) * &gp_inv);
        cols.push(v);
    }
    Ok(Matrix::from_columns(&cols))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Matrix units realizing the one-sided associative algebras:
/// `e_i = E_{1i}` (left) or `e_i = E_{i1}` (right).
pub fn matrix_representation(n: usize, side: Side) -> Result<Vec<Matrix>> {
    if n < 2 {
        return Err(Error::InvalidDimension("matrix representation needs n >= 2".into()));
    }
    let unit = |r: usize, c: usize| Matrix::from_fn(n, n, |i, j| if i == r && j == c { Scalar::one() } else { Scalar::zero() });
    let mats: Vec<Matrix> = (0..n).map(|i| if side == Side::Left { unit(0, i) } else { unit(i, 0) }).collect();
    let e1 = LinearFunctional::new(Vector::basis(n, 0));
    let spec = match side {
        Side::Left => PairSpec::new(LinearFunctional::zero(n), e1)?,
        Side::Right => PairSpec::new(e1, LinearFunctional::zero(n))?,
    };
    let (alg, _) = algebra_from_pair(&spec);
    for i in 0..n {
        for j in 0..n {
            let expected = (0..n).fold(Matrix::zeros(n, n), |acc, k| acc.add(&mats[k].scale(alg.coeff(i, j, k))));
            if mats[i].mul(&mats[j]) != expected {
                return Err(Error::Internal(format!("matrix units disagree with e{}e{}", i + 1, j + 1)));
            }
        }
    }
    Ok(mats)
}

/// The bracket `[x,y] = f(x)y + g(y)x`; a Lie algebra only when `f = -g`.
pub fn lie_bracket_from_pair(f: &LinearFunctional, g: &LinearFunctional) -> Result<LieAlgebra> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    let n = f.dim();
    let mut t = vec![Scalar::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            t[(i * n + j) * n + j] += f.at(i);
            t[(i * n + j) * n + i] += g.at(j);
        }
    }
    LieAlgebra::new(n, t)
}

/// Data of `x*y = f(x)y + g(y)x + h(x,y)c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedSpec {
    f: LinearFunctional,
    g: LinearFunctional,
    h: SymBilinearForm,
    c: Vector,
}

impl ExtendedSpec {
    pub fn new(f: LinearFunctional, g: LinearFunctional, h: SymBilinearForm, c: Vector) -> Result<Self> {
        let n = f.dim();
        for d in [g.dim(), h.dim(), c.dim()] {
            if d != n {
                return Err(Error::DimensionMismatch { expected: n, found: d });
            }
        }
        if n < 2 {
            return Err(Error::InvalidDimension("extended construction needs dim >= 2".into()));
        }
        if c.is_zero() {
            return Err(Error::InvalidSpec("c must be nonzero".into()));
        }
        if h.is_zero() {
            return Err(Error::InvalidSpec("h must be nonzero".into()));
        }
        Ok(ExtendedSpec { f, g, h, c })
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    pub fn f(&self) -> &LinearFunctional {
        &self.f
    }

    pub fn g(&self) -> &LinearFunctional {
        &self.g
    }

    pub fn h(&self) -> &SymBilinearForm {
        &self.h
    }

    pub fn c(&self) -> &Vector {
        &self.c
    }

    /// `h(·, c)`.
    pub fn hc(&self) -> LinearFunctional {
        self.h.partial(&self.c)
    }

    /// The same construction written in the basis given by the columns of `p`.
    pub fn transform(&self, p: &Matrix) -> Result<ExtendedSpec> {
        let inv = p.inverse().ok_or_else(|| Error::InvalidSpec("change of basis is singular".into()))?;
        let pull = |u: &LinearFunctional| LinearFunctional::new(p.transpose().mul_vec(u.coeffs()));
        ExtendedSpec::new(pull(&self.f), pull(&self.g), self.h.congruent(p), inv.mul_vec(&self.c))
    }
}

/// `C[i][j][k] = f(e_i)δ_jk + g(e_j)δ_ik + h(e_i,e_j)c_k`.
pub fn algebra_from_extended(spec: &ExtendedSpec) -> Algebra {
    let n = spec.dim();
    Algebra::from_fn(n, |i, j, k| {
        let mut v = spec.h.at(i, j) * &spec.c[k];
        if j == k {
            v += spec.f.at(i);
        }
        if i == k {
            v += spec.g.at(j);
        }
        v
    })
    .expect("dimension validated by ExtendedSpec")
}

/// Exact invariants of the rank-one case with `g = 0`, `f ≠ 0`.
///
/// Writing `h = ℓ⊗ℓ`, the parameters are `α` with `h(·,c) - f = αℓ` and
/// `a₁ = ℓ(c)`. Both are fixed only up to a common sign, so the squares and
/// the product are carried exactly; `α` and `a₁` themselves are present when
/// the needed square root is rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankOneParams {
    pub alpha_sq: Scalar,
    pub a1_alpha: Scalar,
    pub a1_sq: Scalar,
    pub alpha: Option<Scalar>,
    pub a1: Option<Scalar>,
}

impl RankOneParams {
    /// `(2a₁ - α)/(a₁ - α)`, or `None` when `a₁ = 0`.
    pub fn lambda(&self) -> Option<Scalar> {
        if self.a1_sq.is_zero() {
            return None;
        }
        let num = &(&Scalar::from_int(2) * &self.a1_alpha) - &self.alpha_sq;
        let den = &self.a1_alpha - &self.alpha_sq;
        Some(&num / &den)
    }
}

/// Which of the seven admissible families a specification falls into.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case")]
pub enum CaseVerdict {
    Case1 { rank: usize },
    Case2,
    Case3 { rank: usize },
    Case4(Box<RankOneParams>),
    Case5 { rank: usize },
    Case6,
    Case7 { alpha: Scalar },
    NotLeftSymmetric,
}

impl CaseVerdict {
    /// Case number 1–7, or `None` when not left-symmetric.
    pub fn number(&self) -> Option<u8> {
        Some(match self {
            CaseVerdict::Case1 { .. } => 1,
            CaseVerdict::Case2 => 2,
            CaseVerdict::Case3 { .. } => 3,
            CaseVerdict::Case4(_) => 4,
            CaseVerdict::Case5 { .. } => 5,
            CaseVerdict::Case6 => 6,
            CaseVerdict::Case7 { .. } => 7,
            CaseVerdict::NotLeftSymmetric => return None,
        })
    }

    pub fn is_left_symmetric(&self) -> bool {
        self.number().is_some()
    }
}

/// Which of the three necessary identities fail for `spec`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub proportional: bool,
    pub product: bool,
    pub rank_one: bool,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.proportional && self.product && self.rank_one
    }
}

/// Checks `f(y)g(x) = g(y)f(x)`, `f(y)g(z) + g(c)h(y,z) = 0` and
/// `[(g-f)(y) + h(y,c)]h(x,z) = [(g-f)(x) + h(x,c)]h(y,z)` on basis tuples.
pub fn check_conditions(spec: &ExtendedSpec) -> ConditionReport {
    let n = spec.dim();
    let (f, g, h) = (&spec.f, &spec.g, &spec.h);
    let proportional = (0..n).all(|i| (0..n).all(|j| f.at(j) * g.at(i) == g.at(j) * f.at(i)));
    let gc = g.eval(&spec.c);
    let product = (0..n).all(|j| (0..n).all(|k| (&(f.at(j) * g.at(k)) + &(&gc * h.at(j, k))).is_zero()));
    let hc = spec.hc();
    let w: Vec<Scalar> = (0..n).map(|i| &(g.at(i) - f.at(i)) + hc.at(i)).collect();
    let rank_one =
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| &w[j] * h.at(i, k) == &w[i] * h.at(j, k))));
    ConditionReport { proportional, product, rank_one }
}

/// Sorts a specification into one of the seven admissible families.
///
/// The three identities are necessary in the generic situation but can fail
/// for some left-symmetric algebras of dimension 2, where `x`, `y` and `c`
/// are never independent. Such specifications are reported as
/// `NotLeftSymmetric` here although their product is left-symmetric.
pub fn classify_extended(spec: &ExtendedSpec) -> CaseVerdict {
    let (f, g, h, c) = (&spec.f, &spec.g, &spec.h, &spec.c);
    let (f0, g0) = (f.is_zero(), g.is_zero());
    if !check_conditions(spec).all_hold() {
        return CaseVerdict::NotLeftSymmetric;
    }
    let hc = spec.hc();
    let rank = h.rank();
    let hcc = h.eval(c, c);
    let in_row_space = |u: &LinearFunctional| {
        let mut rows: Vec<Vec<Scalar>> = (0..h.dim()).map(|i| h.gram().row(i).into_coords()).collect();
        rows.push(u.coeffs().coords().to_vec());
        Matrix::from_rows(rows).expect("rectangular").rank() == rank
    };

    if f0 && g0 && hc.is_zero() {
        return CaseVerdict::Case1 { rank };
    }
    if f0 && g0 && rank == 1 && !hcc.is_zero() {
        return CaseVerdict::Case2;
    }
    if g0 && !f0 && *f == hc {
        return CaseVerdict::Case3 { rank };
    }
    if g0 && !f0 && rank == 1 {
        let psi = hc.sub(f);
        if !psi.is_zero() && in_row_space(&psi) {
            return CaseVerdict::Case4(Box::new(rank_one_params(h, &hc, &psi, c)));
        }
    }
    if f0 && !g0 && *g == hc.scale(&-Scalar::one()) && hcc.is_zero() {
        return CaseVerdict::Case5 { rank };
    }
    if f0 && !g0 && hc.is_zero() && rank == 1 && in_row_space(g) {
        return CaseVerdict::Case6;
    }
    if !f0 && !g0 {
        let fc = f.eval(c);
        let p = f.coeffs().pivot().expect("f nonzero");
        let alpha = g.at(p) / f.at(p);
        if !fc.is_zero() && *g == f.scale(&alpha) {
            let expected = SymBilinearForm::outer(f).scale(&-fc.inv().unwrap());
            if *h == expected {
                return CaseVerdict::Case7 { alpha };
            }
        }
    }
    CaseVerdict::NotLeftSymmetric
}

fn rank_one_params(h: &SymBilinearForm, hc: &LinearFunctional, psi: &LinearFunctional, c: &Vector) -> RankOneParams {
    let n = h.dim();
    let p = (0..n).find(|&i| !h.at(i, i).is_zero()).expect("rank-one symmetric form has a nonzero diagonal");
    let hpp = h.at(p, p);
    let alpha_sq = &(psi.at(p) * psi.at(p)) / hpp;
    let a1_alpha = &(hc.at(p) * psi.at(p)) / hpp;
    let a1_sq = h.eval(c, c);
    let root = hpp.exact_sqrt();
    let alpha = root.as_ref().map(|r| psi.at(p) / r);
    let a1 = root.as_ref().map(|r| hc.at(p) / r);
    RankOneParams { alpha_sq, a1_alpha, a1_sq, alpha, a1 }
}

/// The specification `f = (·,a)`, `g = 0`, `h = (·,·)`, `c = a` behind
/// `u*v = (u,v)a + (u,a)v` with the coordinate scalar product.
pub fn inner_product_spec(a: &Vector) -> Result<ExtendedSpec> {
    let n = a.dim();
    if n < 2 {
        return Err(Error::InvalidDimension("inner-product construction needs dim >= 2".into()));
    }
    if a.is_zero() {
        return Err(Error::InvalidSpec("a must be nonzero".into()));
    }
    ExtendedSpec::new(
        LinearFunctional::new(a.clone()),
        LinearFunctional::zero(n),
        SymBilinearForm::new(Matrix::identity(n))?,
        a.clone(),
    )
}

/// `u*v = (u,v)a + (u,a)v`, i.e. `C[i][j][k] = δ_ij a_k + a_i δ_jk`.
pub fn algebra_from_inner_product(a: &Vector) -> Result<Algebra> {
    inner_product_spec(a).map(|s| algebra_from_extended(&s))
}
