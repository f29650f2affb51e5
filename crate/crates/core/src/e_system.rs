//! Functions on `Z/dZ`, convolution and Fourier transform, and the complete
//! family of E-system solutions `x_S = (1/|S|) sum_{s in S} e_s`.
//!
//! A vector `x` with `x(0) = 1` solves the E-system iff `x * x = (x * x)(0) x`.
//! Its Fourier transform `f^(v) = sum_u f(u) e_v(-u)` must then be constant on
//! its support, which gives exactly one solution per nonempty support.

use std::f64::consts::PI;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coeff_ring::ComplexVal;
use crate::error::{Error, Result};

/// Largest order accepted by [`solve_all`].
pub const MAX_SOLVE_ORDER: usize = 20;

/// Tolerance used when a construction is checked.
pub const CONSTRUCTION_TOL: f64 = 1e-12;

fn root(d: usize, k: i64) -> ComplexVal {
    let angle = 2.0 * PI * (k.rem_euclid(d as i64) as f64) / d as f64;
    ComplexVal::new(angle.cos(), angle.sin())
}

/// A complex-valued function on `Z/dZ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicFn {
    values: Vec<ComplexVal>,
}

impl CyclicFn {
    pub fn new(values: Vec<ComplexVal>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DegenerateOrder(0));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Invalid("non-finite entry".into()));
        }
        Ok(CyclicFn { values })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| ComplexVal::new(v, 0.0)).collect())
    }

    /// The character `e_a(k) = exp(2 pi i a k / d)`.
    pub fn character(d: usize, a: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::DegenerateOrder(0));
        }
        Ok(CyclicFn { values: (0..d as i64).map(|k| root(d, a * k)).collect() })
    }

    /// Indicator of the residue `a`.
    pub fn delta(d: usize, a: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::DegenerateOrder(0));
        }
        let mut values = vec![ComplexVal::new(0.0, 0.0); d];
        values[a.rem_euclid(d as i64) as usize] = ComplexVal::new(1.0, 0.0);
        Ok(CyclicFn { values })
    }

    pub fn d(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[ComplexVal] {
        &self.values
    }

    /// Value at `k mod d`.
    pub fn at(&self, k: i64) -> ComplexVal {
        self.values[k.rem_euclid(self.d() as i64) as usize]
    }

    fn same_order(&self, other: &CyclicFn) -> Result<()> {
        if self.d() != other.d() {
            return Err(Error::MismatchedOrder(self.d(), other.d()));
        }
        Ok(())
    }

    /// `(f * g)(m) = sum_{u+v=m} f(u) g(v)`.
    pub fn convolve(&self, other: &CyclicFn) -> Result<CyclicFn> {
        self.same_order(other)?;
        let d = self.d();
        let mut out = vec![ComplexVal::new(0.0, 0.0); d];
        for (u, &fu) in self.values.iter().enumerate() {
            for (v, &gv) in other.values.iter().enumerate() {
                out[(u + v) % d] += fu * gv;
            }
        }
        Ok(CyclicFn { values: out })
    }

    pub fn pointwise(&self, other: &CyclicFn) -> Result<CyclicFn> {
        self.same_order(other)?;
        Ok(CyclicFn { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() })
    }

    /// `f^(v) = sum_u f(u) e_v(-u)`, by direct summation.
    pub fn dft(&self) -> CyclicFn {
        let d = self.d();
        let values = (0..d as i64)
            .map(|v| self.values.iter().enumerate().map(|(u, &fu)| fu * root(d, -v * u as i64)).sum())
            .collect();
        CyclicFn { values }
    }

    pub fn max_abs_diff(&self, other: &CyclicFn) -> Result<f64> {
        self.same_order(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}

/// `max_m |(x*x)(m) - (x*x)(0) x(m)|`.
pub fn e_residual(x: &CyclicFn) -> f64 {
    let xx = x.convolve(x).expect("same order");
    let c = xx.values[0];
    xx.values.iter().zip(&x.values).map(|(a, b)| (a - c * b).norm()).fold(0.0, f64::max)
}

/// `(1/d) sum_s x_{m+s} x_{-s}`: the value of `E^{(m)}` at `x`.
pub fn e_value(x: &CyclicFn, m: i64) -> ComplexVal {
    let d = x.d() as i64;
    (0..d).map(|s| x.at(m + s) * x.at(-s)).sum::<ComplexVal>() / d as f64
}

/// The solution attached to a nonempty support `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct ESolution {
    support: Vec<usize>,
    values: CyclicFn,
}

impl ESolution {
    /// `x_S(k) = (1/|S|) sum_{s in S} exp(2 pi i s k / d)`.
    pub fn from_support(d: usize, support: &[usize]) -> Result<Self> {
        if d == 0 {
            return Err(Error::DegenerateOrder(0));
        }
        let mut s: Vec<usize> = support.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() {
            return Err(Error::Invalid("support must be nonempty".into()));
        }
        if let Some(&bad) = s.iter().find(|&&a| a >= d) {
            return Err(Error::Index { index: bad as i64, context: format!("residue mod {d}") });
        }
        let scale = 1.0 / s.len() as f64;
        let values =
            (0..d as i64).map(|k| s.iter().map(|&a| root(d, a as i64 * k)).sum::<ComplexVal>() * scale).collect();
        Ok(ESolution { support: s, values: CyclicFn { values } })
    }

    /// Support from a bitmask, bit `k` meaning residue `k`.
    pub fn from_mask(d: usize, mask: u64) -> Result<Self> {
        if d > 64 || (d < 64 && mask >> d != 0) {
            return Err(Error::Invalid(format!("mask {mask:#b} has bits beyond order {d}")));
        }
        let support: Vec<usize> = (0..d).filter(|&k| mask >> k & 1 == 1).collect();
        Self::from_support(d, &support)
    }

    pub fn d(&self) -> usize {
        self.values.d()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn values(&self) -> &CyclicFn {
        &self.values
    }

    /// `x_1 .. x_{d-1}`, the layout expected by polynomial evaluation.
    pub fn x_values(&self) -> &[ComplexVal] {
        &self.values.values[1..]
    }

    pub fn mask(&self) -> u64 {
        self.support.iter().fold(0, |m, &k| m | 1 << k)
    }

    /// `S = Z/dZ`, the solution `x_k = 0` for `k != 0`.
    pub fn is_trivial(&self) -> bool {
        self.support.len() == self.d()
    }

    pub fn residual(&self) -> f64 {
        e_residual(&self.values)
    }

    /// `E_d` at this solution; equals `1/|S|`.
    pub fn e_d(&self) -> ComplexVal {
        e_value(&self.values, 0)
    }

    pub fn complement(&self) -> Result<ESolution> {
        let rest: Vec<usize> = (0..self.d()).filter(|k| !self.support.contains(k)).collect();
        ESolution::from_support(self.d(), &rest)
    }
}

impl Serialize for ESolution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ESolution", 4)?;
        st.serialize_field("d", &self.d())?;
        st.serialize_field("support", &self.support)?;
        let vals: Vec<[f64; 2]> = self.values.values.iter().map(|v| [v.re, v.im]).collect();
        st.serialize_field("values", &vals)?;
        st.serialize_field("residual", &self.residual())?;
        st.end()
    }
}

/// Every solution for order `d`, in increasing bitmask order of the support.
pub fn solve_all(d: usize) -> Result<Vec<ESolution>> {
    if d == 0 {
        return Err(Error::DegenerateOrder(0));
    }
    if d > MAX_SOLVE_ORDER {
        return Err(Error::BoundExceeded(format!("order {d} > {MAX_SOLVE_ORDER}")));
    }
    (1..1u64 << d).map(|mask| ESolution::from_mask(d, mask)).collect()
}

/// The real solution `delta_i = -(-1)^{i(d-1)}/(d-1)`, support `Z/dZ` minus one point.
pub fn delta_solution(d: usize) -> Result<ESolution> {
    if d < 2 {
        return Err(Error::DegenerateOrder(d));
    }
    let missing = if d.is_multiple_of(2) { d / 2 } else { 0 };
    let support: Vec<usize> = (0..d).filter(|&k| k != missing).collect();
    ESolution::from_support(d, &support)
}

/// `x_k = zeta^{ak}`, support `{a}`.
pub fn cyclic_solution(d: usize, a: i64) -> Result<ESolution> {
    if d == 0 {
        return Err(Error::DegenerateOrder(0));
    }
    ESolution::from_support(d, &[a.rem_euclid(d as i64) as usize])
}

/// Periodic extension `x'_j = x_{j mod d}` to order `target`, a multiple of `d`.
pub fn lift_solution(x: &ESolution, target: usize) -> Result<ESolution> {
    let d = x.d();
    if target == 0 || !target.is_multiple_of(d) {
        return Err(Error::IncompatibleOrders { from: d, to: target });
    }
    let factor = target / d;
    let support: Vec<usize> = x.support.iter().map(|&s| s * factor).collect();
    let lifted = ESolution::from_support(target, &support)?;
    let periodic = CyclicFn { values: (0..target as i64).map(|j| x.values.at(j)).collect() };
    let gap = lifted.values.max_abs_diff(&periodic)?;
    debug_assert!(gap < 1e-9, "lift disagrees with periodic extension by {gap}");
    Ok(ESolution { support: lifted.support, values: periodic })
}
