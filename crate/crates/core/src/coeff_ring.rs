//! Sparse exact polynomials in `u` (Laurent), `z` and `x_1, x_2, ...` over the
//! rationals, plus complex evaluation.
//!
//! Every symbolic quantity in the crate lives in [`Poly`]. The `x_k` carry an
//! index only; the ambient modulus `d` is tracked by whoever builds them, and
//! `x_0` is never stored (it is the constant 1).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Double-precision complex number used for all numeric evaluation.
pub type ComplexVal = Complex64;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `u^a z^b x_{k1}^{e1} x_{k2}^{e2} ...` with the `x` part sorted by index.
///
/// Field order gives the canonical ordering: `u` exponent, then `z`, then the
/// `x` exponent list lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    u: i32,
    z: u32,
    x: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a monomial, merging repeated indices and dropping `x_0` and zero
    /// exponents.
    pub fn new(u: i32, z: u32, x: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (k, e) in x {
            if k != 0 && e != 0 {
                *map.entry(k).or_insert(0) += e;
            }
        }
        Monomial { u, z, x: map.into_iter().collect() }
    }

    pub fn u_exp(&self) -> i32 {
        self.u
    }

    pub fn z_exp(&self) -> u32 {
        self.z
    }

    pub fn x_exps(&self) -> &[(u32, u32)] {
        &self.x
    }

    pub fn is_one(&self) -> bool {
        self.u == 0 && self.z == 0 && self.x.is_empty()
    }

    /// True when only `u` occurs.
    pub fn is_u_only(&self) -> bool {
        self.z == 0 && self.x.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut x = Vec::with_capacity(self.x.len() + other.x.len());
        let (mut i, mut j) = (0, 0);
        while i < self.x.len() && j < other.x.len() {
            let (a, b) = (self.x[i], other.x[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    x.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    x.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    x.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        x.extend_from_slice(&self.x[i..]);
        x.extend_from_slice(&other.x[j..]);
        Monomial { u: self.u + other.u, z: self.z + other.z, x }
    }

    fn fmt_factors(&self, out: &mut Vec<String>) {
        match self.u {
            0 => {}
            1 => out.push("u".into()),
            e => out.push(format!("u^{e}")),
        }
        match self.z {
            0 => {}
            1 => out.push("z".into()),
            e => out.push(format!("z^{e}")),
        }
        for &(k, e) in &self.x {
            if e == 1 {
                out.push(format!("x{k}"));
            } else {
                out.push(format!("x{k}^{e}"));
            }
        }
    }
}

/// Finite sum of rational multiples of monomials. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat_int(n))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn u() -> Self {
        Self::u_pow(1)
    }

    pub fn u_pow(e: i32) -> Self {
        Self::term(Monomial::new(e, 0, []), Rational::one())
    }

    pub fn z() -> Self {
        Self::term(Monomial::new(0, 1, []), Rational::one())
    }

    /// The trace parameter `x_k`; `x_0` is the constant 1.
    pub fn x(k: u32) -> Self {
        Self::term(Monomial::new(0, 0, [(k, 1)]), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// True when no `z` or `x` variable occurs.
    pub fn is_u_only(&self) -> bool {
        self.terms.keys().all(Monomial::is_u_only)
    }

    pub fn max_x_index(&self) -> u32 {
        self.terms.keys().flat_map(|m| m.x.iter().map(|&(k, _)| k)).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        let mut out = Poly::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Renames `x_k` to `x_{f(k)}`; a target index of 0 turns the factor into 1.
    pub fn map_x(&self, f: impl Fn(u32) -> u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mono = Monomial::new(m.u, m.z, m.x.iter().map(|&(k, e)| (f(k), e)));
            out.add_term(mono, c.clone());
        }
        out
    }

    /// Substitutes numeric values; `x[k-1]` is the value of `x_k`.
    pub fn eval(&self, u: ComplexVal, z: ComplexVal, x: &[ComplexVal]) -> Result<ComplexVal> {
        let mut total = ComplexVal::new(0.0, 0.0);
        for (m, c) in &self.terms {
            if m.u < 0 && u == ComplexVal::new(0.0, 0.0) {
                return Err(Error::DivisionByZero("negative power of u at u = 0".into()));
            }
            let mut v = ComplexVal::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            if m.u != 0 {
                v *= u.powi(m.u);
            }
            if m.z != 0 {
                v *= z.powu(m.z);
            }
            for &(k, e) in &m.x {
                let xk = x.get(k as usize - 1).ok_or_else(|| Error::Index {
                    index: k as i64,
                    context: format!("x-variable with only {} values supplied", x.len()),
                })?;
                v *= xk.powu(e);
            }
            total += v;
        }
        Ok(total)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(fmt_rational(&abs));
            }
            m.fmt_factors(&mut factors);
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    u: i32,
    z: u32,
    x: BTreeMap<String, u32>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(m, c)| TermRepr {
            coeff: format!("{}/{}", c.numer(), c.denom()),
            u: m.u,
            z: m.z,
            x: m.x.iter().map(|&(k, e)| (k.to_string(), e)).collect(),
        }))
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<TermRepr> = Vec::deserialize(de)?;
        let mut out = Poly::zero();
        for t in raw {
            let c = parse_rational(&t.coeff).map_err(D::Error::custom)?;
            let mut x = Vec::with_capacity(t.x.len());
            for (k, e) in t.x {
                let k: u32 = k.parse().map_err(|_| D::Error::custom(format!("bad x index {k:?}")))?;
                x.push((k, e));
            }
            out.add_term(Monomial::new(t.u, t.z, x), c);
        }
        Ok(out)
    }
}

/// Parses `"num/den"` or `"num"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Invalid(format!("not a rational: {text:?}"));
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero(format!("rational {text:?}")));
        }
        Ok(Rational::new(n, d))
    } else {
        Ok(Rational::from_integer(BigInt::from_str(text).map_err(|_| bad())?))
    }
}

/// Parses a complex literal `"re,im"` or `"re"`.
pub fn parse_complex(text: &str) -> Result<ComplexVal> {
    let bad = || Error::Invalid(format!("not a complex literal: {text:?}"));
    let num = |s: &str| -> Result<f64> {
        let v: f64 = s.trim().parse().map_err(|_| bad())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    match text.split_once(',') {
        Some((re, im)) => Ok(ComplexVal::new(num(re)?, num(im)?)),
        None => Ok(ComplexVal::new(num(text)?, 0.0)),
    }
}

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn close(a: ComplexVal, b: ComplexVal, tol: f64) -> bool {
    (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexVal {
        ComplexVal::new(re, im)
    }

    #[test]
    fn add_examples() {
        let p = &Poly::x(1) + &Poly::z();
        assert_eq!(&Poly::zero() + &p, p);
        let a = &Poly::u() - &Poly::one();
        let b = &Poly::one() - &Poly::u();
        assert!((&a + &b).is_zero());
        assert_eq!(&Poly::x(1) + &Poly::x(1), Poly::x(1).scale(&rat_int(2)));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&Poly::u() * &Poly::u_pow(-1), Poly::one());
        let lhs = &(&Poly::u() - &Poly::one()) * &(&Poly::u() + &Poly::one());
        assert_eq!(lhs, &Poly::u_pow(2) - &Poly::one());
        let lhs = &(&Poly::z() * &Poly::x(2)) * &Poly::z();
        assert_eq!(lhs, &Poly::z().pow(2) * &Poly::x(2));
    }

    #[test]
    fn x_zero_is_one() {
        assert_eq!(Poly::x(0), Poly::one());
    }

    #[test]
    fn eval_examples() {
        let half = c(-0.5, 0.0);
        assert_eq!(Poly::x(1).eval(c(2.0, 0.0), c(1.0, 0.0), &[half, half]).unwrap(), half);
        assert_eq!(Poly::u_pow(-1).eval(c(2.0, 0.0), c(1.0, 0.0), &[]).unwrap(), c(0.5, 0.0));
        assert!(matches!(Poly::u_pow(-1).eval(c(0.0, 0.0), c(1.0, 0.0), &[]), Err(Error::DivisionByZero(_))));
        assert!(matches!(Poly::x(3).eval(c(1.0, 0.0), c(1.0, 0.0), &[half]), Err(Error::Index { .. })));
    }

    #[test]
    fn display_is_readable() {
        let p = &(&Poly::one() - &(&(&Poly::u() - &Poly::one()) * &Poly::z())) + &Poly::x(2).scale(&rat(2, 3));
        assert_eq!(p.to_string(), "1 + 2/3*x2 + z - u*z");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::int(-3).to_string(), "-3");
    }

    #[test]
    fn json_round_trip() {
        let p = &(&Poly::u_pow(-2) * &Poly::x(3).pow(2)) - &Poly::z().scale(&rat(5, 7));
        let text = serde_json::to_string(&p).unwrap();
        let back: Poly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        assert!(text.contains("\"coeff\":\"-5/7\""));
    }

    #[test]
    fn rational_and_complex_literals() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat_int(-7));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(parse_complex("1.5,-2").unwrap(), c(1.5, -2.0));
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert!(parse_complex("a,b").is_err());
    }
}
