//! Univariate polynomials over exact scalars, characteristic polynomials,
//! and spectra.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &Scalar) -> Self {
        Poly::new(vec![-r, Scalar::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.to_complex())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.get(i) + other.get(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.get(i) - other.get(i)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    fn get(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => Poly::zero(),
        }
    }

    /// Quotient and remainder; panics when dividing by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    r[k + i] -= &t;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &Scalar::from_int(i as i64)).collect())
    }

    /// Yun's algorithm: `self = lc · Π_i f_i^i` with each `f_i` square-free;
    /// returns the nonconstant `(f_i, i)`.
    pub fn square_free(&self) -> Vec<(Poly, usize)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Numerical roots by the Aberth iteration (with multiplicity).
    pub fn approx_roots(&self) -> Vec<Complex64> {
        let Some(deg) = self.degree() else { return Vec::new() };
        if deg == 0 {
            return Vec::new();
        }
        let m = self.monic();
        let c: Vec<Complex64> = m.coeffs.iter().map(Scalar::to_complex).collect();
        let dc: Vec<Complex64> = (1..c.len()).map(|i| c[i] * i as f64).collect();
        let radius = 1.0 + c[..deg].iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut z: Vec<Complex64> = (0..deg)
            .map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / deg as f64))
            .collect();
        let horner = |cs: &[Complex64], x: Complex64| cs.iter().rev().fold(Complex64::new(0.0, 0.0), |a, b| a * x + b);
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for k in 0..deg {
                let p = horner(&c, z[k]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / horner(&dc, z[k]);
                let repulsion: Complex64 =
                    (0..deg).filter(|&j| j != k).map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j])).sum();
                let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if w.is_finite() {
                    z[k] -= w;
                    moved = moved.max(w.norm() / (1.0 + z[k].norm()));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
        z
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Characteristic polynomial `det(xI - M)` by Faddeev–LeVerrier.
pub fn charpoly(m: &Matrix) -> Poly {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        let shifted = m.mul(&mk).add(&Matrix::identity(n).scale(&coeffs[n + 1 - k]));
        let t = m.mul(&shifted).trace();
        coeffs[n - k] = -(&t / &Scalar::from_int(k as i64));
        mk = shifted;
    }
    Poly::new(coeffs)
}

/// Roots of a square-free factor that lie in the exact field, and the
/// cofactor that remains.
pub fn exact_roots(p: &Poly) -> (Vec<Scalar>, Poly) {
    let mut rest = p.clone();
    let mut found = Vec::new();
    loop {
        match rest.degree() {
            None | Some(0) => break,
            Some(1) => {
                let c = rest.coeffs();
                found.push(-(&c[0] / &c[1]));
                rest = Poly::constant(Scalar::one());
                break;
            }
            Some(2) => {
                let m = rest.monic();
                let (b, c) = (&m.coeffs()[1], &m.coeffs()[0]);
                let disc = &(b * b) - &(&Scalar::from_int(4) * c);
                if let Some(s) = disc.exact_sqrt() {
                    let two = Scalar::from_int(2);
                    found.push(&(&(-b) + &s) / &two);
                    found.push(&(&(-b) - &s) / &two);
                    rest = Poly::constant(Scalar::one());
                }
                break;
            }
            Some(_) => {
                let hit = rest
                    .approx_roots()
                    .into_iter()
                    .filter_map(|z| Scalar::approximate(z, 1 << 20))
                    .find(|r| rest.eval(r).is_zero());
                match hit {
                    Some(r) => {
                        rest = rest.div_rem(&Poly::linear_root(&r)).0;
                        found.push(r);
                    }
                    None => break,
                }
            }
        }
    }
    (found, rest)
}

/// An eigenvalue, exact when it lies in the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Eigenvalue {
    Exact(Scalar),
    /// Real and imaginary parts rounded to 12 significant digits.
    Approx(String),
}

impl Eigenvalue {
    fn from_complex(z: Complex64) -> Self {
        let fmt = |x: f64| {
            let x = if x.abs() < 1e-12 { 0.0 } else { x };
            format!("{x:.11e}")
        };
        Eigenvalue::Approx(format!("{}{}{}i", fmt(z.re), if z.im < 0.0 { "" } else { "+" }, fmt(z.im)))
    }

    fn sort_key(&self) -> String {
        match self {
            Eigenvalue::Exact(s) => format!("0{s}"),
            Eigenvalue::Approx(s) => format!("1{s}"),
        }
    }
}

impl Ord for Eigenvalue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Eigenvalue::Exact(a), Eigenvalue::Exact(b)) => {
                a.re().cmp(b.re()).then_with(|| a.im().cmp(b.im()))
            }
            _ => self.sort_key().cmp(&other.sort_key()),
        }
    }
}

impl PartialOrd for Eigenvalue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Exact(s) => write!(f, "{s}"),
            Eigenvalue::Approx(s) => write!(f, "~{s}"),
        }
    }
}

/// Eigenvalues with algebraic multiplicities, sorted.
pub fn spectrum(m: &Matrix) -> Vec<(Eigenvalue, usize)> {
    let mut out = Vec::new();
    for (factor, mult) in charpoly(m).square_free() {
        let (roots, rest) = exact_roots(&factor);
        out.extend(roots.into_iter().map(|r| (Eigenvalue::Exact(r), mult)));
        out.extend(rest.approx_roots().into_iter().map(|z| (Eigenvalue::from_complex(z), mult)));
    }
    out.sort();
    out
}
