//! Recovering a construction from structure constants.
//!
//! The commutator of `x*y = f(x)y + g(y)x + h(x,y)c` is `d(x)y - d(y)x` with
//! `d = f - g`, and its symmetric part is `s(x)y + s(y)x + h(x,y)c` with
//! `s = (f+g)/2`. Both are read off the tensor, `c` is located from the
//! planes `span(x, x*x)`, and the remaining data solve a linear system.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{exceptional_pairs, generate, identify, CatalogId, Witness};
use crate::algebra::Algebra;
use crate::construct::{algebra_from_extended, algebra_from_pair, classify_extended, normalized_basis_for_functional, CaseVerdict, ExtendedSpec, PairSpec};
use crate::form::{LinearFunctional, SymBilinearForm};
use crate::linalg::{Matrix, Vector};
use crate::poly::{exact_roots, Poly};
use crate::scalar::Scalar;

/// A construction reproducing a given algebra exactly.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum Reconstruction {
    /// `x*y = f(y)x + g(x)y`.
    Pair(PairSpec),
    Extended(ExtendedSpec),
}

impl Reconstruction {
    pub fn algebra(&self) -> Algebra {
        match self {
            Reconstruction::Pair(p) => algebra_from_pair(p).0,
            Reconstruction::Extended(e) => algebra_from_extended(e),
        }
    }
}

/// A construction whose product is exactly `a`, if one exists. For the
/// extended form only admissible specifications are returned when several
/// choices of `c` fit.
pub fn reconstruct_spec(a: &Algebra) -> Option<Reconstruction> {
    let n = a.dim();
    if n < 2 {
        return None;
    }
    let d = commutator_functional(a)?;
    let sym = |i: usize, j: usize| a.basis_product(i, j).add(&a.basis_product(j, i)).scale(&Scalar::ratio(1, 2));
    let half = Scalar::ratio(1, 2);

    let s = LinearFunctional::new(Vector::new((0..n).map(|i| &sym(i, i)[i] * &half).collect()));
    let pair_fits = (0..n).all(|i| {
        (0..n).all(|j| sym(i, j) == Vector::basis(n, j).scale(s.at(i)).add(&Vector::basis(n, i).scale(s.at(j))))
    });
    if pair_fits {
        let dh = d.scale(&half);
        // x*y = f(x)y + g(y)x is the pair form with the roles swapped.
        let spec = PairSpec::new(s.sub(&dh), s.add(&dh)).ok()?;
        let r = Reconstruction::Pair(spec);
        return (r.algebra() == *a).then_some(r);
    }

    let mut fallback = None;
    for c in c_candidates(a, &sym) {
        let Some(spec) = solve_for_spec(a, &d, &c, &sym) else { continue };
        if classify_extended(&spec) != CaseVerdict::NotLeftSymmetric {
            return Some(Reconstruction::Extended(spec));
        }
        fallback.get_or_insert(spec);
    }
    fallback.map(Reconstruction::Extended)
}

/// `d` with `x*y - y*x = d(x)y - d(y)x`, from `tr ad(e_i) = (n-1) d_i`.
fn commutator_functional(a: &Algebra) -> Option<LinearFunctional> {
    let n = a.dim();
    let scale = Scalar::from_int(n as i64 - 1).inv()?;
    let comm = |i: usize, j: usize| a.basis_product(i, j).sub(&a.basis_product(j, i));
    let d: Vec<Scalar> = (0..n).map(|i| &(0..n).map(|k| comm(i, k)[k].clone()).sum::<Scalar>() * &scale).collect();
    let d = Vector::new(d);
    let fits = (0..n).all(|i| {
        (0..n).all(|j| comm(i, j) == Vector::basis(n, j).scale(&d[i]).sub(&Vector::basis(n, i).scale(&d[j])))
    });
    fits.then(|| LinearFunctional::new(d))
}

/// Test vectors `e_i`, `e_i ± e_j`, `e_i + 2e_j` and the all-ones vector.
fn test_vectors(n: usize) -> Vec<Vector> {
    let e = |i| Vector::basis(n, i);
    let mut out: Vec<Vector> = (0..n).map(e).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push(e(i).add(&e(j)));
            out.push(e(i).sub(&e(j)));
            out.push(e(i).add(&e(j).scale(&Scalar::from_int(2))));
        }
    }
    out.push(Vector::new(vec![Scalar::one(); n]));
    out
}

/// `S(x,x)` from the symmetrized basis products.
fn sym_square(n: usize, x: &Vector, sym: &dyn Fn(usize, usize) -> Vector) -> Vector {
    let mut out = Vector::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let w = &x[i] * &x[j];
            if !w.is_zero() {
                out = out.add(&sym(i, j).scale(&w));
            }
        }
    }
    out
}

/// Directions that may carry `c`. Since `S(x,x) = 2s(x)x + h(x,x)c`, every
/// plane `span(x, S(x,x))` of dimension two contains `c`.
fn c_candidates(a: &Algebra, sym: &dyn Fn(usize, usize) -> Vector) -> Vec<Vector> {
    let n = a.dim();
    let mut out: Vec<Vector> = Vec::new();
    if n >= 3 {
        let mut space: Option<Vec<Vector>> = None;
        for x in test_vectors(n) {
            let plane = [x.clone(), sym_square(n, &x, sym)];
            if Matrix::from_columns(&plane).rank() < 2 {
                continue;
            }
            space = Some(match space {
                None => plane.to_vec(),
                Some(s) => intersect(&s, &plane),
            });
        }
        if let Some(s) = space {
            out.extend(s.iter().cloned());
            if s.len() > 1 {
                out.push(s.iter().fold(Vector::zeros(n), |acc, v| acc.add(v)));
            }
        }
    } else {
        // det[x, S(x,x)] = h(x,x)·det[x, c] along x = (1, τ).
        let t = Poly::new(vec![Scalar::zero(), Scalar::one()]);
        let one = Poly::constant(Scalar::one());
        let entry = |k: usize| -> Poly {
            let (s00, s01, s11) = (sym(0, 0)[k].clone(), sym(0, 1)[k].clone(), sym(1, 1)[k].clone());
            Poly::new(vec![s00, &s01 * &Scalar::from_int(2), s11])
        };
        let det = one.mul(&entry(1)).sub(&t.mul(&entry(0)));
        if !det.coeffs().iter().all(Zero::is_zero) {
            for (factor, _) in det.square_free() {
                for tau in exact_roots(&factor).0 {
                    out.push(Vector::new(vec![Scalar::one(), tau]));
                }
            }
        }
        out.push(Vector::basis(2, 1));
        out.extend([Vector::basis(2, 0), Vector::from_ints(&[1, 1]), Vector::from_ints(&[1, -1])]);
    }
    out.retain(|v| !v.is_zero());
    out
}

/// Basis of `span(u) ∩ span(v)` for independent families `u`, `v`.
fn intersect(u: &[Vector], v: &[Vector]) -> Vec<Vector> {
    let mut cols: Vec<Vector> = u.to_vec();
    cols.extend(v.iter().map(|x| x.scale(&-Scalar::one())));
    let um = Matrix::from_columns(u);
    Matrix::from_columns(&cols)
        .kernel()
        .into_iter()
        .map(|k| um.mul_vec(&Vector::new(k.coords()[..u.len()].to_vec())))
        .filter(|x| !x.is_zero())
        .collect()
}

/// Solves `S(e_i,e_j) = s_i e_j + s_j e_i + h_ij c` for `(s, h)` and checks
/// the resulting construction against `a`.
fn solve_for_spec(a: &Algebra, d: &LinearFunctional, c: &Vector, sym: &dyn Fn(usize, usize) -> Vector) -> Option<ExtendedSpec> {
    let n = a.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let unknowns = n + pairs.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for (pidx, &(i, j)) in pairs.iter().enumerate() {
        let target = sym(i, j);
        for k in 0..n {
            let mut row = vec![Scalar::zero(); unknowns];
            if j == k {
                row[i] += &Scalar::one();
            }
            if i == k {
                row[j] += &Scalar::one();
            }
            row[n + pidx] = c[k].clone();
            rows.push(row);
            rhs.push(target[k].clone());
        }
    }
    let sol = Matrix::from_rows(rows).ok()?.solve(&Vector::new(rhs))?;
    let s = LinearFunctional::new(Vector::new(sol.coords()[..n].to_vec()));
    let mut gram = Matrix::zeros(n, n);
    for (pidx, &(i, j)) in pairs.iter().enumerate() {
        gram[(i, j)] = sol[n + pidx].clone();
        gram[(j, i)] = sol[n + pidx].clone();
    }
    let h = SymBilinearForm::new(gram).ok()?;
    let dh = d.scale(&Scalar::ratio(1, 2));
    let spec = ExtendedSpec::new(s.add(&dh), s.sub(&dh), h, c.clone()).ok()?;
    (algebra_from_extended(&spec) == *a).then_some(spec)
}

/// Catalog member isomorphic to `a` with a verified map from it onto `a`,
/// found through an exact reconstruction. `None` when no construction fits
/// or the fitted one is not admissible.
pub fn match_catalog(a: &Algebra) -> Option<(CatalogId, Witness)> {
    let n = a.dim();
    let (id, w) = match reconstruct_spec(a)? {
        Reconstruction::Pair(p) => {
            // Pair form: x*y = g(x)y + f(y)x.
            let (left, right) = (&p.g, &p.f);
            match (left.is_zero(), right.is_zero()) {
                (true, true) => (CatalogId::Trivial, Witness::identity(n)),
                (false, true) => (CatalogId::AssocL, Witness::Exact(normalized_basis_for_functional(left).ok()?)),
                (true, false) => (CatalogId::AssocR, Witness::Exact(normalized_basis_for_functional(right).ok()?)),
                (false, false) if *right == left.scale(&-Scalar::one()) => {
                    (CatalogId::Lie24, Witness::Exact(normalized_basis_for_functional(left).ok()?))
                }
                _ => return None,
            }
        }
        Reconstruction::Extended(spec) => {
            let (id, w) = identify(&spec).ok()?;
            (id.canonical(), w)
        }
    };
    if !super::check_homomorphism(&generate(&id, n).ok()?, a, &w).ok()? {
        return None;
    }
    if generate(&id, n).ok()? == *a {
        return Some((id, Witness::identity(n)));
    }
    if n == 2 {
        for (x, y, _) in exceptional_pairs() {
            for (from, to) in [(&x, &y), (&y, &x)] {
                if *from == id && generate(to, 2).ok()? == *a {
                    return Some((to.clone(), Witness::identity(2)));
                }
            }
        }
    }
    Some((id, w))
}
