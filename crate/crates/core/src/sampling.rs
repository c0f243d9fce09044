//! Seeded random specifications for each admissible case, with the catalog
//! member each one must normalize to.
//!
//! A sample is written down in coordinates where the case conditions are
//! visible, then moved to a random basis. The expected member follows from
//! the chosen ranks and parameters alone.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::catalog::CatalogId;
use crate::construct::{check_conditions, ExtendedSpec};
use crate::form::{LinearFunctional, SymBilinearForm};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// A random specification of a known case.
#[derive(Clone, Debug)]
pub struct Sample {
    pub case: u8,
    pub spec: ExtendedSpec,
    pub expected: CatalogId,
}

fn int(rng: &mut impl Rng, lo: i64, hi: i64) -> Scalar {
    Scalar::from_int(rng.gen_range(lo..=hi))
}

fn nonzero(rng: &mut impl Rng, bound: i64) -> Scalar {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return Scalar::from_int(v);
        }
    }
}

fn random_vector(rng: &mut impl Rng, n: usize) -> Vector {
    Vector::new((0..n).map(|_| int(rng, -3, 3)).collect())
}

fn nonzero_vector(rng: &mut impl Rng, n: usize) -> Vector {
    loop {
        let v = random_vector(rng, n);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Random invertible integer matrix: a signed permutation with entries
/// `±1, ±2` followed by elementary row operations.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        m[(i, j)] = Scalar::from_int([1, -1, 2, -2][rng.gen_range(0..4)]);
    }
    for _ in 0..2 * n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            continue;
        }
        let t = int(rng, -2, 2);
        for j in 0..n {
            let add = &t * &m[(b, j)];
            m[(a, j)] += &add;
        }
    }
    m
}

fn diagonal_form(entries: &[Scalar]) -> SymBilinearForm {
    SymBilinearForm::new(Matrix::diagonal(entries)).expect("diagonal is symmetric")
}

/// `h` with `h_11 = 0`, `h_12 = h_21 ≠ 0`, random `h_22` and a random
/// diagonal on the remaining coordinates, so `e_1` is isotropic and
/// `h(·, e_1) ≠ 0`.
fn isotropic_form(rng: &mut impl Rng, n: usize) -> SymBilinearForm {
    let mut m = Matrix::zeros(n, n);
    let d = nonzero(rng, 3);
    m[(0, 1)] = d.clone();
    m[(1, 0)] = d;
    m[(1, 1)] = int(rng, -2, 2);
    for i in 2..n {
        if rng.gen_bool(0.6) {
            m[(i, i)] = nonzero(rng, 3);
        }
    }
    SymBilinearForm::new(m).expect("symmetric by construction")
}

fn rank_one(s: &Scalar, n: usize) -> SymBilinearForm {
    let mut m = Matrix::zeros(n, n);
    m[(0, 0)] = s.clone();
    SymBilinearForm::new(m).expect("symmetric")
}

/// A random specification of `case` (1..=7) in dimension `n ≥ 2`.
pub fn sample_case(rng: &mut impl Rng, case: u8, n: usize) -> Sample {
    assert!((1..=7).contains(&case) && n >= 2, "case 1..=7 and n >= 2");
    let zero = LinearFunctional::zero(n);
    let e1 = Vector::basis(n, 0);
    let (spec, expected) = match case {
        1 => {
            let r = rng.gen_range(1..n);
            let mut d = vec![Scalar::zero(); n];
            for x in d.iter_mut().skip(1).take(r) {
                *x = nonzero(rng, 3);
            }
            let spec = ExtendedSpec::new(zero.clone(), zero, diagonal_form(&d), e1);
            (spec, CatalogId::A1(r))
        }
        2 => {
            let mut c = random_vector(rng, n);
            c[0] = nonzero(rng, 3);
            let spec = ExtendedSpec::new(zero.clone(), zero, rank_one(&nonzero(rng, 3), n), c);
            (spec, CatalogId::A2)
        }
        3 => {
            let kind = rng.gen_range(0..3);
            if kind == 2 {
                let h = isotropic_form(rng, n);
                let rank = h.rank();
                let f = h.partial(&e1);
                (ExtendedSpec::new(f, zero, h, e1), CatalogId::A33(rank - 2))
            } else {
                let r = if kind == 0 { n } else { rng.gen_range(1..n) };
                let d: Vec<Scalar> = (0..n).map(|i| if i < r { nonzero(rng, 3) } else { Scalar::zero() }).collect();
                let h = diagonal_form(&d);
                let c = loop {
                    let c = nonzero_vector(rng, n);
                    if !h.eval(&c, &c).is_zero() {
                        break c;
                    }
                };
                let f = h.partial(&c);
                let id = if r == n { CatalogId::A31 } else { CatalogId::A32(r - 1) };
                (ExtendedSpec::new(f, zero, h, c), id)
            }
        }
        4 => {
            let s = nonzero(rng, 3);
            let mut c = nonzero_vector(rng, n);
            if rng.gen_bool(0.3) {
                c[0] = Scalar::zero();
                if c.is_zero() {
                    c[1] = Scalar::one();
                }
            }
            let lc = c[0].clone();
            let slc = &s * &lc;
            let beta = loop {
                let b = nonzero(rng, 3);
                if b != slc {
                    break b;
                }
            };
            // h(·,c) - f = β e_1*, so f = (s ℓ(c) - β) e_1*.
            let f = LinearFunctional::new(Vector::basis(n, 0).scale(&(&slc - &beta)));
            let id = if lc.is_zero() {
                CatalogId::A41
            } else {
                let two = Scalar::from_int(2);
                CatalogId::A4(&(&(&two * &slc) - &beta) / &(&slc - &beta))
            };
            (ExtendedSpec::new(f, zero, rank_one(&s, n), c), id)
        }
        5 => {
            let h = isotropic_form(rng, n);
            let rank = h.rank();
            let g = h.partial(&e1).scale(&-Scalar::one());
            (ExtendedSpec::new(zero, g, h, e1), CatalogId::A5(rank - 2))
        }
        6 => {
            let mut c = random_vector(rng, n);
            c[0] = Scalar::zero();
            c[rng.gen_range(1..n)] = nonzero(rng, 3);
            let g = LinearFunctional::new(Vector::basis(n, 0).scale(&nonzero(rng, 3)));
            (ExtendedSpec::new(zero, g, rank_one(&nonzero(rng, 3), n), c), CatalogId::A6)
        }
        _ => {
            let f = LinearFunctional::new(nonzero_vector(rng, n));
            let c = loop {
                let c = nonzero_vector(rng, n);
                if !f.eval(&c).is_zero() {
                    break c;
                }
            };
            let alpha = [Scalar::ratio(1, 2), Scalar::one(), Scalar::from_int(2), Scalar::from_int(-3), Scalar::ratio(-2, 3)]
                [rng.gen_range(0..5)]
            .clone();
            let fc_inv = f.eval(&c).inv().expect("f(c) nonzero");
            let h = SymBilinearForm::outer(&f).scale(&-fc_inv);
            let g = f.scale(&alpha);
            (ExtendedSpec::new(f, g, h, c), CatalogId::A7(alpha))
        }
    };
    let spec = spec.expect("sample data satisfies the ExtendedSpec invariants");
    let p = random_invertible(rng, n);
    let spec = spec.transform(&p).expect("random basis is invertible");
    Sample { case, spec, expected }
}

/// Perturbs one entry of `f`, `g`, `h` or `c` until at least one of the
/// three case conditions fails. `None` if no such perturbation was found.
pub fn mutate(rng: &mut impl Rng, spec: &ExtendedSpec) -> Option<ExtendedSpec> {
    let n = spec.dim();
    for _ in 0..64 {
        let (mut f, mut g, mut h, mut c) =
            (spec.f().clone(), spec.g().clone(), spec.h().gram().clone(), spec.c().clone());
        let i = rng.gen_range(0..n);
        let delta = nonzero(rng, 2);
        match rng.gen_range(0..4) {
            0 => f = f.add(&LinearFunctional::new(Vector::basis(n, i).scale(&delta))),
            1 => g = g.add(&LinearFunctional::new(Vector::basis(n, i).scale(&delta))),
            2 => {
                let j = rng.gen_range(0..n);
                h[(i, j)] += &delta;
                if i != j {
                    h[(j, i)] += &delta;
                }
            }
            _ => c[i] += &delta,
        }
        let Ok(h) = SymBilinearForm::new(h) else { continue };
        let Ok(m) = ExtendedSpec::new(f, g, h, c) else { continue };
        if !check_conditions(&m).all_hold() {
            return Some(m);
        }
    }
    None
}
