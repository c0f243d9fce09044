//! Normal forms, identification of constructions, invariants and isomorphism.

mod fingerprint;
mod identify;
mod iso;
mod reconstruct;

pub use fingerprint::{fingerprint, Fingerprint, FingerprintFlags, IdempotentSpectrum};
pub use identify::identify;
pub use iso::{are_isomorphic, check_homomorphism, exceptional_pairs, homomorphism_residual, IsoVerdict, Witness, WITNESS_TOLERANCE};
pub use reconstruct::{match_catalog, reconstruct_spec, Reconstruction};

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{Algebra, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::Scalar;

/// One normal-form family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CatalogId {
    /// `e_j e_j = e_1` for `j = 2..k+1`.
    A1(usize),
    /// `e_1 e_1 = e_1`.
    A2,
    /// `e_1e_1 = 2e_1, e_1e_j = e_j, e_je_j = e_1`.
    A31,
    /// As `A31` but `e_le_l = e_1` only for `l = 3..k+2`.
    A32(usize),
    /// `e_1e_2 = e_1, e_2e_1 = 2e_1, e_2e_2 = e_2, e_2e_j = e_j, e_le_l = e_1`.
    A33(usize),
    /// `e_1e_1 = e_1 + e_2, e_1e_j = e_j`.
    A41,
    /// `e_1e_1 = λe_1, e_1e_j = e_j` with `λ ∉ {1, 2}`.
    A4(Scalar),
    /// `e_2e_1 = -e_1, e_2e_2 = e_2, e_je_2 = e_j, e_le_l = e_1`.
    A5(usize),
    /// `e_1e_1 = e_1 + e_2, e_je_1 = e_j`.
    A6,
    /// `e_1e_1 = αe_1, e_1e_j = e_j, e_je_1 = αe_j` with `α ≠ 0`.
    A7(Scalar),
    /// `L_{e_1} = Id`, other left multiplications zero.
    AssocL,
    /// `R_{e_1} = Id`, other right multiplications zero.
    AssocR,
    Trivial,
    /// The Lie algebra `[e_1, e_i] = e_i`, stored as its bracket.
    Lie24,
}

impl CatalogId {
    /// Checks parameter ranges for dimension `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::InvalidDimension(format!("catalog families need n >= 2, got {n}")));
        }
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self {
            CatalogId::A1(k) if *k > n - 1 => bad(format!("a1 needs 0 <= k <= {}, got {k}", n - 1)),
            CatalogId::A32(k) | CatalogId::A33(k) | CatalogId::A5(k) if *k > n - 2 => {
                bad(format!("{} needs 0 <= k <= {}, got {k}", self.family(), n - 2))
            }
            CatalogId::A4(l) if *l == Scalar::one() || *l == Scalar::from_int(2) => {
                bad(format!("a4 needs lambda not in {{1, 2}}, got {l}"))
            }
            CatalogId::A7(a) if a.is_zero() => bad("a7 needs alpha != 0".into()),
            _ => Ok(()),
        }
    }

    /// Family name without parameters.
    pub fn family(&self) -> &'static str {
        match self {
            CatalogId::A1(_) => "a1",
            CatalogId::A2 => "a2",
            CatalogId::A31 => "a3.1",
            CatalogId::A32(_) => "a3.2",
            CatalogId::A33(_) => "a3.3",
            CatalogId::A41 => "a4.1",
            CatalogId::A4(_) => "a4",
            CatalogId::A5(_) => "a5",
            CatalogId::A6 => "a6",
            CatalogId::A7(_) => "a7",
            CatalogId::AssocL => "assocL",
            CatalogId::AssocR => "assocR",
            CatalogId::Trivial => "trivial",
            CatalogId::Lie24 => "lie24",
        }
    }

    /// Whether the family consists of left-symmetric algebras.
    pub fn is_left_symmetric_family(&self) -> bool {
        !matches!(self, CatalogId::Lie24)
    }

    /// The zero-form member of the first family is the trivial algebra.
    pub fn canonical(self) -> CatalogId {
        match self {
            CatalogId::A1(0) => CatalogId::Trivial,
            other => other,
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogId::A1(k) | CatalogId::A32(k) | CatalogId::A33(k) | CatalogId::A5(k) => {
                write!(f, "{}:{k}", self.family())
            }
            CatalogId::A4(x) | CatalogId::A7(x) => write!(f, "{}:{x}", self.family()),
            _ => write!(f, "{}", self.family()),
        }
    }
}

impl FromStr for CatalogId {
    type Err = Error;

    /// Parses `a1:k`, `a2`, `a3.1`, `a3.2:k`, `a3.3:k`, `a4.1`, `a4:lambda`,
    /// `a5:k`, `a6`, `a7:alpha`, `assocL`, `assocR`, `trivial`, `lie24`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p.trim())),
            None => (s, None),
        };
        let int = |p: Option<&str>| -> Result<usize> {
            let p = p.ok_or_else(|| Error::Parse(format!("family '{name}' needs an integer parameter")))?;
            p.parse().map_err(|_| Error::Parse(format!("bad integer parameter '{p}'")))
        };
        let scalar = |p: Option<&str>| -> Result<Scalar> {
            p.ok_or_else(|| Error::Parse(format!("family '{name}' needs a scalar parameter")))?.parse()
        };
        let none = |id: CatalogId| -> Result<CatalogId> {
            match param {
                None => Ok(id),
                Some(_) => Err(Error::Parse(format!("family '{name}' takes no parameter"))),
            }
        };
        match name {
            "a1" => Ok(CatalogId::A1(int(param)?)),
            "a2" => none(CatalogId::A2),
            "a3.1" => none(CatalogId::A31),
            "a3.2" => Ok(CatalogId::A32(int(param)?)),
            "a3.3" => Ok(CatalogId::A33(int(param)?)),
            "a4.1" => none(CatalogId::A41),
            "a4" => Ok(CatalogId::A4(scalar(param)?)),
            "a5" => Ok(CatalogId::A5(int(param)?)),
            "a6" => none(CatalogId::A6),
            "a7" => Ok(CatalogId::A7(scalar(param)?)),
            "assocL" => none(CatalogId::AssocL),
            "assocR" => none(CatalogId::AssocR),
            "trivial" => none(CatalogId::Trivial),
            "lie24" => none(CatalogId::Lie24),
            _ => Err(Error::Parse(format!("unknown catalog family '{s}'"))),
        }
    }
}

impl Serialize for CatalogId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Structure constants of the normal form `id` in dimension `n`.
pub fn generate(id: &CatalogId, n: usize) -> Result<Algebra> {
    id.validate(n)?;
    let e = |i: usize| Vector::basis(n, i);
    let s = |x: i64| Scalar::from_int(x);
    let mut t: Vec<(usize, usize, Vector)> = Vec::new();
    match id {
        CatalogId::A1(k) => t.extend((1..=*k).map(|j| (j, j, e(0)))),
        CatalogId::A2 => t.push((0, 0, e(0))),
        CatalogId::A31 | CatalogId::A32(_) => {
            t.push((0, 0, e(0).scale(&s(2))));
            t.extend((1..n).map(|j| (0, j, e(j))));
            let squares: Vec<usize> = match id {
                CatalogId::A31 => (1..n).collect(),
                CatalogId::A32(k) => (2..k + 2).collect(),
                _ => unreachable!(),
            };
            t.extend(squares.into_iter().map(|l| (l, l, e(0))));
        }
        CatalogId::A33(k) => {
            t.push((0, 1, e(0)));
            t.push((1, 0, e(0).scale(&s(2))));
            t.push((1, 1, e(1)));
            t.extend((2..n).map(|j| (1, j, e(j))));
            t.extend((2..k + 2).map(|l| (l, l, e(0))));
        }
        CatalogId::A41 => {
            t.push((0, 0, e(0).add(&e(1))));
            t.extend((1..n).map(|j| (0, j, e(j))));
        }
        CatalogId::A4(lambda) => {
            t.push((0, 0, e(0).scale(lambda)));
            t.extend((1..n).map(|j| (0, j, e(j))));
        }
        CatalogId::A5(k) => {
            t.push((1, 0, e(0).scale(&s(-1))));
            t.push((1, 1, e(1)));
            t.extend((2..n).map(|j| (j, 1, e(j))));
            t.extend((2..k + 2).map(|l| (l, l, e(0))));
        }
        CatalogId::A6 => {
            t.push((0, 0, e(0).add(&e(1))));
            t.extend((1..n).map(|j| (j, 0, e(j))));
        }
        CatalogId::A7(alpha) => {
            t.push((0, 0, e(0).scale(alpha)));
            t.extend((1..n).map(|j| (0, j, e(j))));
            t.extend((1..n).map(|j| (j, 0, e(j).scale(alpha))));
        }
        CatalogId::AssocL => t.extend((0..n).map(|j| (0, j, e(j)))),
        CatalogId::AssocR => t.extend((0..n).map(|j| (j, 0, e(j)))),
        CatalogId::Trivial => {}
        CatalogId::Lie24 => {
            t.extend((1..n).map(|j| (0, j, e(j))));
            t.extend((1..n).map(|j| (j, 0, e(j).scale(&s(-1)))));
        }
    }
    Algebra::from_products(n, &t)
}

/// `[e_1, e_i] = e_i` as a validated Lie algebra.
pub fn lie24(n: usize) -> Result<LieAlgebra> {
    let a = generate(&CatalogId::Lie24, n)?;
    LieAlgebra::new(n, a.tensor().to_vec())
}

/// Every family in dimension `n` with the given sample parameters. The
/// zero-rank member of the first family is listed as `Trivial` only.
pub fn members(n: usize, lambdas: &[Scalar], alphas: &[Scalar], include_lie: bool) -> Vec<CatalogId> {
    let mut out = Vec::new();
    out.extend((1..n).map(CatalogId::A1));
    out.push(CatalogId::A2);
    out.push(CatalogId::A31);
    out.extend((0..=n - 2).map(CatalogId::A32));
    out.extend((0..=n - 2).map(CatalogId::A33));
    out.push(CatalogId::A41);
    out.extend(lambdas.iter().cloned().map(CatalogId::A4));
    out.extend((0..=n - 2).map(CatalogId::A5));
    out.push(CatalogId::A6);
    out.extend(alphas.iter().cloned().map(CatalogId::A7));
    out.push(CatalogId::AssocL);
    out.push(CatalogId::AssocR);
    out.push(CatalogId::Trivial);
    if include_lie {
        out.push(CatalogId::Lie24);
    }
    out.retain(|id| id.validate(n).is_ok());
    out
}

/// Default sample values for the continuous parameters.
pub fn sample_lambdas() -> Vec<Scalar> {
    vec![Scalar::zero(), Scalar::from_int(-1), Scalar::from_int(3), Scalar::ratio(5, 2)]
}

pub fn sample_alphas() -> Vec<Scalar> {
    vec![Scalar::ratio(1, 2), Scalar::one(), Scalar::from_int(2)]
}
