//! Method-of-lines integration of `U_t = U_xx + 2U*U_x + U*(U*U) - (U*U)*U`
//! on a periodic grid, for `U` valued in an arbitrary finite-dimensional
//! algebra.
//!
//! Space is discretized by second-order central differences and time by the
//! classical fourth-order Runge-Kutta scheme with a fixed step.

use std::f64::consts::PI;
use std::fmt::Debug;
use std::io::Write;

use num_complex::Complex64;
use num_traits::NumAssign;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};

/// Largest `|u|` tolerated before a run is declared unstable.
pub const BLOWUP_THRESHOLD: f64 = 1e12;

/// Scalars the integrator can work with.
pub trait FieldValue: NumAssign + Copy + Send + Sync + Debug + 'static {
    fn from_real(x: f64) -> Self;
    /// Exact-to-float conversion; `None` if the value does not fit this type.
    fn from_exact(s: &crate::Scalar) -> Option<Self>;
    fn magnitude(&self) -> f64;
}

impl FieldValue for f64 {
    fn from_real(x: f64) -> Self {
        x
    }

    fn from_exact(s: &crate::Scalar) -> Option<Self> {
        s.is_real().then(|| s.to_complex().re)
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl FieldValue for Complex64 {
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }

    fn from_exact(s: &crate::Scalar) -> Option<Self> {
        Some(s.to_complex())
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Structure constants in floating point, `c[(i*n + j)*n + k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatAlgebra<T> {
    dim: usize,
    tensor: Vec<T>,
}

impl<T: FieldValue> FloatAlgebra<T> {
    pub fn from_exact(a: &Algebra) -> Result<Self> {
        let tensor = a
            .tensor()
            .iter()
            .map(|s| T::from_exact(s).ok_or_else(|| Error::InvalidParameter(format!("constant {s} is not real"))))
            .collect::<Result<Vec<T>>>()?;
        Ok(FloatAlgebra { dim: a.dim(), tensor })
    }

    pub fn from_tensor(dim: usize, tensor: Vec<T>) -> Result<Self> {
        if tensor.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, found: tensor.len() });
        }
        Ok(FloatAlgebra { dim, tensor })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> T {
        self.tensor[(i * self.dim + j) * self.dim + k]
    }

    /// `x*y` written into `out`.
    #[allow(clippy::needless_range_loop)]
    fn mul_into(&self, x: &[T], y: &[T], out: &mut [T]) {
        let n = self.dim;
        out.iter_mut().for_each(|o| *o = T::zero());
        for i in 0..n {
            if x[i] == T::zero() {
                continue;
            }
            for j in 0..n {
                let w = x[i] * y[j];
                if w == T::zero() {
                    continue;
                }
                let row = &self.tensor[(i * n + j) * n..(i * n + j + 1) * n];
                for (o, c) in out.iter_mut().zip(row) {
                    *o += w * *c;
                }
            }
        }
    }

    pub fn mul(&self, x: &[T], y: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        self.mul_into(x, y, &mut out);
        out
    }
}

/// Grid values `u^i(x_j)`, stored point by point.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldState<T> {
    grid: usize,
    length: f64,
    dim: usize,
    values: Vec<T>,
}

impl<T: FieldValue> FieldState<T> {
    pub fn new(grid: usize, length: f64, dim: usize, values: Vec<T>) -> Result<Self> {
        if grid < 8 {
            return Err(Error::InvalidConfig(format!("grid needs at least 8 points, got {grid}")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidConfig(format!("domain length must be positive, got {length}")));
        }
        if dim == 0 || values.len() != grid * dim {
            return Err(Error::DimensionMismatch { expected: grid * dim, found: values.len() });
        }
        Ok(FieldState { grid, length, dim, values })
    }

    pub fn zeros(grid: usize, length: f64, dim: usize) -> Result<Self> {
        Self::new(grid, length, dim, vec![T::zero(); grid * dim])
    }

    /// Samples `u(x)` at `x_j = j·L/N`.
    pub fn from_fn(grid: usize, length: f64, dim: usize, mut u: impl FnMut(f64) -> Vec<T>) -> Result<Self> {
        let dx = length / grid as f64;
        let mut values = Vec::with_capacity(grid * dim);
        for j in 0..grid {
            let v = u(j as f64 * dx);
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
            values.extend(v);
        }
        Self::new(grid, length, dim, values)
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dx(&self) -> f64 {
        self.length / self.grid as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.dx()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `U(x_j)` with periodic wrap-around.
    pub fn point(&self, j: isize) -> &[T] {
        let j = j.rem_euclid(self.grid as isize) as usize;
        &self.values[j * self.dim..(j + 1) * self.dim]
    }

    /// Component `i` over the whole grid.
    pub fn component(&self, i: usize) -> Vec<T> {
        (0..self.grid).map(|j| self.values[j * self.dim + i]).collect()
    }

    pub fn max_magnitude(&self) -> (usize, f64) {
        self.values
            .iter()
            .enumerate()
            .map(|(k, v)| (k / self.dim, v.magnitude()))
            .fold((0, 0.0), |best, cur| if cur.1 > best.1 || cur.1.is_nan() { cur } else { best })
    }

    fn with_values(&self, values: Vec<T>) -> Self {
        FieldState { grid: self.grid, length: self.length, dim: self.dim, values }
    }
}

/// Central differences `(U_x, U_xx)` at grid point `j`.
fn derivatives<T: FieldValue>(s: &FieldState<T>, j: usize) -> (Vec<T>, Vec<T>) {
    let dx = s.dx();
    let (inv2dx, invdx2) = (T::from_real(0.5 / dx), T::from_real(1.0 / (dx * dx)));
    let two = T::from_real(2.0);
    let (l, c, r) = (s.point(j as isize - 1), s.point(j as isize), s.point(j as isize + 1));
    let ux = (0..s.dim).map(|i| (r[i] - l[i]) * inv2dx).collect();
    let uxx = (0..s.dim).map(|i| (r[i] - two * c[i] + l[i]) * invdx2).collect();
    (ux, uxx)
}

fn check_dims<T: FieldValue>(a: &FloatAlgebra<T>, s: &FieldState<T>) -> Result<()> {
    if a.dim != s.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, found: s.dim });
    }
    Ok(())
}

/// `U_xx + 2U*U_x + U*(U*U) - (U*U)*U` at every grid point.
pub fn rhs_general<T: FieldValue>(a: &FloatAlgebra<T>, s: &FieldState<T>) -> Result<Vec<T>> {
    check_dims(a, s)?;
    let n = s.dim;
    let two = T::from_real(2.0);
    let mut out = vec![T::zero(); s.values.len()];
    out.par_chunks_mut(n).enumerate().for_each(|(j, o)| {
        let u = s.point(j as isize);
        let (ux, uxx) = derivatives(s, j);
        let uu = a.mul(u, u);
        let adv = a.mul(u, &ux);
        let left = a.mul(u, &uu);
        let right = a.mul(&uu, u);
        for i in 0..n {
            o[i] = uxx[i] + two * adv[i] + left[i] - right[i];
        }
    });
    Ok(out)
}

/// The same right-hand side expanded in components:
/// `u^i_xx + 2 Σ C_jk^i u^j u^k_x + Σ (C_kl^m C_jm^i - C_jk^m C_ml^i) u^j u^k u^l`.
#[allow(clippy::needless_range_loop)] // indices follow the tensor formula
pub fn rhs_components<T: FieldValue>(a: &FloatAlgebra<T>, s: &FieldState<T>) -> Result<Vec<T>> {
    check_dims(a, s)?;
    let n = s.dim;
    let two = T::from_real(2.0);
    let c = |j: usize, k: usize, i: usize| a.coeff(j, k, i);
    let mut out = Vec::with_capacity(s.values.len());
    for p in 0..s.grid {
        let u = s.point(p as isize);
        let (ux, uxx) = derivatives(s, p);
        for i in 0..n {
            let mut quad = T::zero();
            for j in 0..n {
                for k in 0..n {
                    quad += c(j, k, i) * u[j] * ux[k];
                }
            }
            let mut cubic = T::zero();
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut coef = T::zero();
                        for m in 0..n {
                            coef += c(k, l, m) * c(j, m, i) - c(j, k, m) * c(m, l, i);
                        }
                        cubic += coef * u[j] * u[k] * u[l];
                    }
                }
            }
            out.push(uxx[i] + two * quad + cubic);
        }
    }
    Ok(out)
}

/// The two-component system for the simple algebra
/// `e_1e_1 = 2e_1, e_1e_2 = e_2, e_2e_2 = e_1`:
/// `u1_t = u1_xx + 4u1 u1_x + 2u2 u2_x`,
/// `u2_t = u2_xx + 2u1 u2_x - u1² u2 - u2³`.
pub fn rhs_a31<T: FieldValue>(s: &FieldState<T>) -> Result<Vec<T>> {
    if s.dim != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: s.dim });
    }
    let (two, four) = (T::from_real(2.0), T::from_real(4.0));
    let mut out = Vec::with_capacity(s.values.len());
    for p in 0..s.grid {
        let u = s.point(p as isize);
        let (ux, uxx) = derivatives(s, p);
        let (u1, u2) = (u[0], u[1]);
        out.push(uxx[0] + four * u1 * ux[0] + two * u2 * ux[1]);
        out.push(uxx[1] + two * u1 * ux[1] - u1 * u1 * u2 - u2 * u2 * u2);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub dt: f64,
    pub t_max: f64,
    #[serde(default = "default_stride")]
    pub output_stride: usize,
}

fn default_stride() -> usize {
    1
}

impl SimConfig {
    /// Checks `dt ≤ 0.2·dx²`, `t_max > 0` and a positive stride.
    pub fn validate(&self, dx: f64) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidConfig(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(Error::InvalidConfig(format!("t_max must be positive, got {}", self.t_max)));
        }
        if self.output_stride == 0 {
            return Err(Error::InvalidConfig("output_stride must be at least 1".into()));
        }
        let limit = 0.2 * dx * dx;
        if self.dt > limit * (1.0 + 1e-12) {
            return Err(Error::InvalidConfig(format!("dt = {} exceeds the stability bound 0.2*dx^2 = {limit}", self.dt)));
        }
        Ok(())
    }

    /// Number of steps; the step is shortened so the run ends at `t_max`.
    pub fn steps(&self) -> usize {
        ((self.t_max / self.dt) - 1e-9).ceil().max(1.0) as usize
    }
}

/// Sampled solution.
#[derive(Clone, Debug)]
pub struct Trajectory<T> {
    pub samples: Vec<(f64, FieldState<T>)>,
}

impl<T: FieldValue> Trajectory<T> {
    pub fn last(&self) -> &FieldState<T> {
        &self.samples.last().expect("trajectory holds the initial state").1
    }
}

fn axpy<T: FieldValue>(base: &[T], k: &[T], h: T) -> Vec<T> {
    base.iter().zip(k).map(|(b, k)| *b + h * *k).collect()
}

/// Fixed-step RK4 from `s0` to `cfg.t_max`, keeping the initial state,
/// every `output_stride`-th step and the final state.
pub fn integrate<T: FieldValue>(a: &FloatAlgebra<T>, s0: &FieldState<T>, cfg: &SimConfig) -> Result<Trajectory<T>> {
    check_dims(a, s0)?;
    cfg.validate(s0.dx())?;
    let steps = cfg.steps();
    let h = cfg.t_max / steps as f64;
    let (half, sixth, two) = (T::from_real(0.5 * h), T::from_real(h / 6.0), T::from_real(2.0));
    let hh = T::from_real(h);
    let mut state = s0.clone();
    let mut samples = vec![(0.0, s0.clone())];
    for step in 1..=steps {
        let u = &state.values;
        let k1 = rhs_general(a, &state)?;
        let k2 = rhs_general(a, &state.with_values(axpy(u, &k1, half)))?;
        let k3 = rhs_general(a, &state.with_values(axpy(u, &k2, half)))?;
        let k4 = rhs_general(a, &state.with_values(axpy(u, &k3, hh)))?;
        let next: Vec<T> = (0..u.len()).map(|q| u[q] + sixth * (k1[q] + two * (k2[q] + k3[q]) + k4[q])).collect();
        state = state.with_values(next);
        let t = step as f64 * h;
        let (point, magnitude) = state.max_magnitude();
        if !magnitude.is_finite() || magnitude > BLOWUP_THRESHOLD {
            return Err(Error::Unstable { t, point, magnitude });
        }
        if step % cfg.output_stride == 0 || step == steps {
            samples.push((t, state.clone()));
        }
    }
    Ok(Trajectory { samples })
}

/// One term of an initial profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    #[serde(rename = "type")]
    pub kind: ModeKind,
    pub amplitude: f64,
    #[serde(default)]
    pub wavenumber: f64,
    #[serde(default)]
    pub phase: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    Sin,
    Cos,
    Const,
}

impl Mode {
    /// `A·sin(2πkx/L + φ)`, `A·cos(2πkx/L + φ)` or `A`.
    pub fn eval(&self, x: f64, length: f64) -> f64 {
        let arg = 2.0 * PI * self.wavenumber * x / length + self.phase;
        match self.kind {
            ModeKind::Sin => self.amplitude * arg.sin(),
            ModeKind::Cos => self.amplitude * arg.cos(),
            ModeKind::Const => self.amplitude,
        }
    }
}

/// Per component, a sum of modes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InitialCondition {
    pub components: Vec<Vec<Mode>>,
}

impl InitialCondition {
    pub fn sample<T: FieldValue>(&self, grid: usize, length: f64) -> Result<FieldState<T>> {
        let dim = self.components.len();
        FieldState::from_fn(grid, length, dim, |x| {
            self.components.iter().map(|modes| T::from_real(modes.iter().fold(0.0, |acc, m| acc + m.eval(x, length)))).collect()
        })
    }
}

/// Values printable in the CSV output.
pub trait CsvValue {
    /// Column names for component `i` (1-based).
    fn headers(i: usize) -> Vec<String>;
    fn cells(&self) -> Vec<f64>;
}

impl CsvValue for f64 {
    fn headers(i: usize) -> Vec<String> {
        vec![format!("u{i}")]
    }

    fn cells(&self) -> Vec<f64> {
        vec![*self]
    }
}

impl CsvValue for Complex64 {
    fn headers(i: usize) -> Vec<String> {
        vec![format!("u{i}_re"), format!("u{i}_im")]
    }

    fn cells(&self) -> Vec<f64> {
        vec![self.re, self.im]
    }
}

/// Header `t,x,u1,...,un`, one row per sample time and grid point, numbers
/// with 17 significant digits. Complex fields get a real and an imaginary
/// column per component.
pub fn write_csv<T: FieldValue + CsvValue, W: Write>(traj: &Trajectory<T>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let dim = traj.samples.first().map_or(0, |(_, s)| s.dim);
    let mut header = vec!["t".to_string(), "x".to_string()];
    header.extend((1..=dim).flat_map(T::headers));
    w.write_record(&header).map_err(csv_err)?;
    let fmt = |v: f64| format!("{v:.16e}");
    for (t, s) in &traj.samples {
        for j in 0..s.grid {
            let mut row = vec![fmt(*t), fmt(s.x(j))];
            row.extend(s.point(j as isize).iter().flat_map(|v| v.cells()).map(fmt));
            w.write_record(&row).map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, CatalogId};

    #[test]
    fn zero_state_stays_zero() {
        let a = FloatAlgebra::<f64>::from_exact(&generate(&CatalogId::A31, 2).unwrap()).unwrap();
        let s = FieldState::zeros(16, 1.0, 2).unwrap();
        let cfg = SimConfig { dt: 1e-4, t_max: 1e-2, output_stride: 10 };
        let traj = integrate(&a, &s, &cfg).unwrap();
        assert!(traj.last().values().iter().all(|v| *v == 0.0));
        assert_eq!(traj.samples.len(), 11);
    }

    #[test]
    fn stability_guard() {
        let cfg = SimConfig { dt: 0.1, t_max: 1.0, output_stride: 1 };
        assert!(matches!(cfg.validate(0.1), Err(Error::InvalidConfig(_))));
        assert!(SimConfig { dt: 0.002, ..cfg }.validate(0.1).is_ok());
    }

    #[test]
    fn blowup_is_reported() {
        // Scaling the simple algebra by i flips the cubic term, so a constant
        // u2 = 1 follows u' = u³ and blows up at t = 1/2.
        let exact = generate(&CatalogId::A31, 2).unwrap();
        let tensor = exact.tensor().iter().map(|c| c.to_complex() * Complex64::i()).collect();
        let a = FloatAlgebra::from_tensor(2, tensor).unwrap();
        let s = FieldState::from_fn(16, 1.0, 2, |_| vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        let cfg = SimConfig { dt: 1e-4, t_max: 1.0, output_stride: 100 };
        match integrate(&a, &s, &cfg) {
            Err(Error::Unstable { t, .. }) => assert!((0.45..0.55).contains(&t), "t = {t}"),
            other => panic!("expected blow-up, got {other:?}"),
        }
    }

    #[test]
    fn csv_layout() {
        let s = FieldState::from_fn(8, 1.0, 2, |x| vec![x, -x]).unwrap();
        let traj = Trajectory { samples: vec![(0.0, s)] };
        let mut buf = Vec::new();
        write_csv(&traj, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,x,u1,u2"));
        assert_eq!(lines.nth(1), Some("0.0000000000000000e0,1.2500000000000000e-1,1.2500000000000000e-1,-1.2500000000000000e-1"));
    }
}
