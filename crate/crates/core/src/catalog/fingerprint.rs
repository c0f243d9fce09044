use num_traits::Zero;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::analysis::{self, burnside_dimension};
use crate::linalg::{Matrix, Vector};
use crate::poly::{exact_roots, spectrum, Eigenvalue, Poly};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FingerprintFlags {
    pub commutative: bool,
    pub associative: bool,
    pub left_symmetric: bool,
    pub novikov: bool,
    pub bisymmetric: bool,
    pub transitive: bool,
    pub interior_derivation: bool,
}

/// Spectra of `L_e` and `R_e` for one idempotent `e`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IdempotentSpectrum {
    pub left: Vec<(Eigenvalue, usize)>,
    pub right: Vec<(Eigenvalue, usize)>,
}

/// Isomorphism invariants. Every field except `idempotent_spectra` is exact
/// and basis-independent; the idempotent search is a heuristic and is not
/// used to separate algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub flags: FingerprintFlags,
    pub dim_product_span: usize,
    pub dim_commutator_span: usize,
    pub dim_left_annihilator: usize,
    pub dim_right_annihilator: usize,
    pub mult_algebra_dim: usize,
    /// Ranks of `tr(L_xL_y)`, `tr(R_xR_y)`, `tr(L_xR_y)`, `tr(R_{x*y})`.
    pub trace_form_ranks: [usize; 4],
    /// Reduced basis of the linear relations among the four trace forms and
    /// the products `τ⊗τ, τ⊗σ, σ⊗τ, σ⊗σ` with `τ = tr L`, `σ = tr R`.
    pub form_relations: Vec<Vec<Scalar>>,
    /// Reduced basis of the linear relations between `τ` and `σ`.
    pub trace_relations: Vec<Vec<Scalar>>,
    pub idempotent_spectra: Vec<IdempotentSpectrum>,
}

impl Fingerprint {
    /// Name of the first exact field that differs, if any.
    pub fn differing_field(&self, other: &Fingerprint) -> Option<&'static str> {
        let (a, b) = (&self.flags, &other.flags);
        let checks: [(&'static str, bool); 17] = [
            ("dim", self.dim == other.dim),
            ("left_symmetric", a.left_symmetric == b.left_symmetric),
            ("associative", a.associative == b.associative),
            ("commutative", a.commutative == b.commutative),
            ("novikov", a.novikov == b.novikov),
            ("bisymmetric", a.bisymmetric == b.bisymmetric),
            ("transitive", a.transitive == b.transitive),
            ("interior_derivation", a.interior_derivation == b.interior_derivation),
            ("dim_product_span", self.dim_product_span == other.dim_product_span),
            ("dim_commutator_span", self.dim_commutator_span == other.dim_commutator_span),
            ("dim_left_annihilator", self.dim_left_annihilator == other.dim_left_annihilator),
            ("dim_right_annihilator", self.dim_right_annihilator == other.dim_right_annihilator),
            ("mult_algebra_dim", self.mult_algebra_dim == other.mult_algebra_dim),
            ("trace_form_ranks", self.trace_form_ranks == other.trace_form_ranks),
            ("trace_relations", self.trace_relations == other.trace_relations),
            ("form_relations", self.form_relations == other.form_relations),
            ("idempotent_spectra", true),
        ];
        checks.into_iter().find(|(_, same)| !same).map(|(name, _)| name)
    }
}

pub fn fingerprint(a: &Algebra) -> Fingerprint {
    let n = a.dim();
    let left_symmetric = a.is_left_symmetric();
    let (commutative, associative) = analysis::identity_flags(a);
    let flags = FingerprintFlags {
        commutative,
        associative,
        left_symmetric,
        novikov: analysis::is_novikov(a),
        bisymmetric: analysis::is_bisymmetric(a),
        transitive: left_symmetric && analysis::is_transitive(a).is_ok_and(|t| t.value),
        interior_derivation: left_symmetric && analysis::is_interior_derivation(a).unwrap_or(false),
    };

    let products: Vec<Vector> = (0..n * n).map(|p| a.basis_product(p / n, p % n)).collect();
    let commutators: Vec<Vector> =
        (0..n * n).map(|p| products[p].sub(&products[(p % n) * n + p / n])).collect();
    let lefts: Vec<Matrix> = (0..n).map(|i| a.left_basis(i)).collect();
    let rights: Vec<Matrix> = (0..n).map(|i| a.right_basis(i)).collect();

    let tau: Vec<Scalar> = lefts.iter().map(Matrix::trace).collect();
    let sigma: Vec<Scalar> = rights.iter().map(Matrix::trace).collect();
    let gram = |f: &dyn Fn(usize, usize) -> Scalar| Matrix::from_fn(n, n, f);
    let forms = [
        gram(&|i, j| lefts[i].mul(&lefts[j]).trace()),
        gram(&|i, j| rights[i].mul(&rights[j]).trace()),
        gram(&|i, j| lefts[i].mul(&rights[j]).trace()),
        gram(&|i, j| Vector::new(sigma.clone()).dot(&products[i * n + j])),
        gram(&|i, j| &tau[i] * &tau[j]),
        gram(&|i, j| &tau[i] * &sigma[j]),
        gram(&|i, j| &sigma[i] * &tau[j]),
        gram(&|i, j| &sigma[i] * &sigma[j]),
    ];

    Fingerprint {
        dim: n,
        flags,
        dim_product_span: Matrix::from_columns(&products).rank(),
        dim_commutator_span: Matrix::from_columns(&commutators).rank(),
        dim_left_annihilator: annihilator_dim(&lefts),
        dim_right_annihilator: annihilator_dim(&rights),
        mult_algebra_dim: burnside_dimension(a),
        trace_form_ranks: [forms[0].rank(), forms[1].rank(), forms[2].rank(), forms[3].rank()],
        form_relations: relations(&forms.iter().map(|m| m.as_slice().to_vec()).collect::<Vec<_>>()),
        trace_relations: relations(&[tau, sigma]),
        idempotent_spectra: idempotent_spectra(a),
    }
}

/// `dim {x : Σ x_i M_i = 0}`.
fn annihilator_dim(ops: &[Matrix]) -> usize {
    let cols: Vec<Vector> = ops.iter().map(|m| Vector::new(m.as_slice().to_vec())).collect();
    ops.len() - Matrix::from_columns(&cols).rank()
}

/// Reduced basis of `{c : Σ c_k v_k = 0}`.
fn relations(vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let cols: Vec<Vector> = vectors.iter().map(|v| Vector::new(v.clone())).collect();
    let kernel = Matrix::from_columns(&cols).kernel();
    if kernel.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Matrix::from_rows(kernel.into_iter().map(Vector::into_coords).collect())
        .expect("rectangular")
        .rref();
    (0..pivots.len()).map(|i| r.row(i).into_coords()).collect()
}

/// Idempotents inside every span of one or two basis vectors, found by
/// exact elimination, with the spectra of their multiplication operators.
fn idempotent_spectra(a: &Algebra) -> Vec<IdempotentSpectrum> {
    let found = idempotents(a);
    let mut out: Vec<IdempotentSpectrum> = found
        .iter()
        .map(|e| IdempotentSpectrum {
            left: spectrum(&a.left_mult(e).expect("dimension matches")),
            right: spectrum(&a.right_mult(e).expect("dimension matches")),
        })
        .collect();
    out.sort();
    out
}

pub(crate) fn idempotents(a: &Algebra) -> Vec<Vector> {
    let n = a.dim();
    let mut found: Vec<Vector> = Vec::new();
    let mut push = |v: Vector| {
        if !v.is_zero() && !found.contains(&v) {
            found.push(v);
        }
    };
    for i in 0..n {
        let sq = a.basis_product(i, i);
        let others_zero = (0..n).all(|k| k == i || sq[k].is_zero());
        if others_zero && !sq[i].is_zero() {
            push(Vector::basis(n, i).scale(&sq[i].inv().unwrap()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            // x = b(t e_i + e_j): b·Q_m(t) = t δ_im + δ_jm.
            let q = |m: usize| {
                Poly::new(vec![
                    a.coeff(j, j, m).clone(),
                    a.coeff(i, j, m) + a.coeff(j, i, m),
                    a.coeff(i, i, m).clone(),
                ])
            };
            let t = Poly::new(vec![Scalar::zero(), Scalar::from_int(1)]);
            let mut g = q(i).sub(&t.mul(&q(j)));
            for m in (0..n).filter(|&m| m != i && m != j) {
                g = g.gcd(&q(m));
            }
            if g.degree().unwrap_or(0) == 0 {
                continue;
            }
            for (factor, _) in g.square_free() {
                for root in exact_roots(&factor).0 {
                    let qj = q(j).eval(&root);
                    let Some(b) = qj.inv() else { continue };
                    let mut v = Vector::zeros(n);
                    v[i] = &root * &b;
                    v[j] = b;
                    push(v);
                }
            }
        }
    }
    found.retain(|e| a.mul(e, e) == *e);
    found
}
