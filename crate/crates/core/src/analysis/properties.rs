use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::construct::{algebra_from_extended, classify_extended, ExtendedSpec};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// Largest dimension for which transitivity is decided on a lattice.
pub const EXACT_TRANSITIVITY_MAX_DIM: usize = 6;
const RANDOM_TRIALS: usize = 64;
const RANDOM_SEED: u64 = 0x05ee_d1a7;

/// `(commutative, associative)`.
pub fn identity_flags(a: &Algebra) -> (bool, bool) {
    (a.is_commutative(), a.is_associative())
}

/// Left-symmetric with pairwise commuting right multiplications.
pub fn is_novikov(a: &Algebra) -> bool {
    if !a.is_left_symmetric() {
        return false;
    }
    let r: Vec<Matrix> = (0..a.dim()).map(|i| a.right_basis(i)).collect();
    (0..r.len()).all(|i| (i + 1..r.len()).all(|j| r[i].mul(&r[j]) == r[j].mul(&r[i])))
}

/// Left-symmetric with `(x,y,z) = (x,z,y)`.
pub fn is_bisymmetric(a: &Algebra) -> bool {
    if !a.is_left_symmetric() {
        return false;
    }
    let n = a.dim();
    let t = a.associator_table();
    (0..n).all(|i| (0..n).all(|j| (j + 1..n).all(|k| t[(i * n + j) * n + k] == t[(i * n + k) * n + j])))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransitivityMode {
    /// Decided exactly on the lattice `{x ∈ ℕⁿ : Σx_i ≤ m}` per degree `m`.
    ExactGrid,
    /// Random integer points; a `true` answer may be wrong.
    Randomized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Transitivity {
    pub value: bool,
    pub mode: TransitivityMode,
}

/// Whether every `R_x` is nilpotent, via `tr(R_x^m) = 0` for `m = 1..n`.
///
/// `x ↦ tr(R_x^m)` is homogeneous of degree `m`, and a polynomial of total
/// degree at most `m` vanishing on the lattice simplex `Σx_i ≤ m` is zero.
pub fn is_transitive(a: &Algebra) -> Result<Transitivity> {
    if !a.is_left_symmetric() {
        return Err(Error::NotLeftSymmetric);
    }
    let n = a.dim();
    let right: Vec<Matrix> = (0..n).map(|i| a.right_basis(i)).collect();
    let r_at = |x: &[i64]| {
        x.iter().enumerate().filter(|(_, &c)| c != 0).fold(Matrix::zeros(n, n), |acc, (i, &c)| {
            acc.add(&right[i].scale(&Scalar::from_int(c)))
        })
    };
    if n <= EXACT_TRANSITIVITY_MAX_DIM {
        let mut ok = true;
        for_each_simplex_point(n, n, &mut |x| {
            if !ok {
                return;
            }
            let total: i64 = x.iter().sum();
            if total == 0 {
                return;
            }
            let r = r_at(x);
            let mut power = r.clone();
            for m in 1..=n {
                if m as i64 >= total && !power.trace().is_zero() {
                    ok = false;
                    return;
                }
                power = power.mul(&r);
            }
        });
        return Ok(Transitivity { value: ok, mode: TransitivityMode::ExactGrid });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let value = (0..RANDOM_TRIALS).all(|_| {
        let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-1000..=1000)).collect();
        let r = r_at(&x);
        let mut power = r.clone();
        (1..=n).all(|_| {
            let z = power.trace().is_zero();
            power = power.mul(&r);
            z
        })
    });
    Ok(Transitivity { value, mode: TransitivityMode::Randomized })
}

/// Visits every `x ∈ ℕⁿ` with `Σx_i ≤ bound`.
fn for_each_simplex_point(n: usize, bound: usize, visit: &mut dyn FnMut(&[i64])) {
    fn rec(x: &mut Vec<i64>, n: usize, left: i64, visit: &mut dyn FnMut(&[i64])) {
        if x.len() == n {
            visit(x);
            return;
        }
        for v in 0..=left {
            x.push(v);
            rec(x, n, left - v, visit);
            x.pop();
        }
    }
    rec(&mut Vec::with_capacity(n), n, bound as i64, visit);
}

/// Whether every `L_{e_i}` equals `ad(z)` in the commutator Lie algebra.
pub fn is_interior_derivation(a: &Algebra) -> Result<bool> {
    if !a.is_left_symmetric() {
        return Err(Error::NotLeftSymmetric);
    }
    let lie = a.sub_adjacent_lie()?;
    let n = a.dim();
    let ads: Vec<Matrix> = (0..n).map(|i| lie.ad_basis(i)).collect();
    let system = Matrix::from_fn(n * n, n, |p, col| ads[col].as_slice()[p].clone());
    Ok((0..n).all(|i| system.solve(&Vector::new(a.left_basis(i).as_slice().to_vec())).is_some()))
}

/// Dimension of the unital associative algebra generated by all `L_{e_i}`
/// and `R_{e_i}`.
pub fn burnside_dimension(a: &Algebra) -> usize {
    let n = a.dim();
    let gens: Vec<Matrix> = (0..n).flat_map(|i| [a.left_basis(i), a.right_basis(i)]).collect();
    let mut span = EchelonSpan::new(n * n);
    let mut queue = vec![Matrix::identity(n)];
    span.insert(Matrix::identity(n).as_slice());
    while let Some(m) = queue.pop() {
        for g in &gens {
            let p = g.mul(&m);
            if span.insert(p.as_slice()) {
                queue.push(p);
            }
            if span.dim() == n * n {
                return n * n;
            }
        }
    }
    span.dim()
}

/// No ideals besides `0` and `A`: the envelope of all multiplication
/// operators is the full matrix algebra.
pub fn is_simple(a: &Algebra) -> bool {
    burnside_dimension(a) == a.dim() * a.dim()
}

/// Incrementally reduced row space.
pub(crate) struct EchelonSpan {
    width: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonSpan {
    pub(crate) fn new(width: usize) -> Self {
        EchelonSpan { width, rows: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is outside the span; returns whether it was added.
    pub(crate) fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.width);
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let factor = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&factor * r);
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].inv().unwrap();
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        self.rows.push((p, v));
        true
    }
}

/// Results of the three bilinear-form identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HInvariance {
    /// `h(x*y,z) = h(y*x,z) = h(x*z,y)`.
    pub eq29: bool,
    /// `h(x*y,z) = h(x,z*y)`.
    pub eq210: bool,
    /// `h(x*y,z) + h(y,x*z) = 0`.
    pub eq211: bool,
}

pub fn h_invariance(spec: &ExtendedSpec) -> Result<HInvariance> {
    if !classify_extended(spec).is_left_symmetric() {
        return Err(Error::InvalidSpec("specification is not one of the admissible cases".into()));
    }
    let a = algebra_from_extended(spec);
    let n = a.dim();
    let h = spec.h();
    let prod: Vec<Vector> = (0..n * n).map(|p| a.basis_product(p / n, p % n)).collect();
    let hv = |v: &Vector, k: usize| h.partial(&Vector::basis(n, k)).eval(v);
    let (mut eq29, mut eq210, mut eq211) = (true, true, true);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let xy_z = hv(&prod[x * n + y], z);
                eq29 &= xy_z == hv(&prod[y * n + x], z) && xy_z == hv(&prod[x * n + z], y);
                eq210 &= xy_z == hv(&prod[z * n + y], x);
                eq211 &= (&xy_z + &hv(&prod[x * n + z], y)).is_zero();
            }
        }
    }
    Ok(HInvariance { eq29, eq210, eq211 })
}

/// `Rᵀ G = G R` for every right multiplication, i.e. each `R_x` is
/// self-adjoint for `h`.
pub fn right_mult_self_adjoint(spec: &ExtendedSpec) -> bool {
    let a = algebra_from_extended(spec);
    let g = spec.h().gram();
    (0..a.dim()).all(|i| {
        let r = a.right_basis(i);
        r.transpose().mul(g) == g.mul(&r)
    })
}

/// Every detector at once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub commutative: bool,
    pub associative: bool,
    pub left_symmetric: bool,
    pub novikov: bool,
    pub bisymmetric: bool,
    pub transitive: bool,
    pub transitive_mode: Option<TransitivityMode>,
    pub interior_derivation: bool,
    pub simple: bool,
}

pub fn property_report(a: &Algebra) -> PropertyReport {
    let ((commutative, associative), (left_symmetric, simple)) =
        rayon::join(|| identity_flags(a), || (a.is_left_symmetric(), is_simple(a)));
    let (novikov, bisymmetric) = rayon::join(|| is_novikov(a), || is_bisymmetric(a));
    let (transitivity, interior) = if left_symmetric {
        rayon::join(|| is_transitive(a).ok(), || is_interior_derivation(a).unwrap_or(false))
    } else {
        (None, false)
    };
    assert!(!associative || left_symmetric, "associative algebras are left-symmetric");
    assert!(!(commutative && left_symmetric) || associative, "commutative left-symmetric algebras are associative");
    PropertyReport {
        commutative,
        associative,
        left_symmetric,
        novikov,
        bisymmetric,
        transitive: transitivity.is_some_and(|t| t.value),
        transitive_mode: transitivity.map(|t| t.mode),
        interior_derivation: interior,
        simple,
    }
}

/// Whether `v` spans an ideal smaller than the whole algebra; used to
/// cross-check the envelope test.
pub fn generated_ideal_dim(a: &Algebra, v: &Vector) -> usize {
    let n = a.dim();
    let ops: Vec<Matrix> = (0..n).flat_map(|i| [a.left_basis(i), a.right_basis(i)]).collect();
    let mut span = EchelonSpan::new(n);
    let mut queue = Vec::new();
    if span.insert(v.coords()) {
        queue.push(v.clone());
    }
    while let Some(w) = queue.pop() {
        for op in &ops {
            let u = op.mul_vec(&w);
            if span.insert(u.coords()) {
                queue.push(u);
            }
        }
    }
    span.dim()
}
