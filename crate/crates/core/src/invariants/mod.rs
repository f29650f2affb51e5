//! The framed link invariant
//! `Gamma(alpha) = Delta^{n-1} sqrt(omega)^{eps(alpha)} tr_d(alpha)` evaluated
//! at an E-system solution, with
//! `omega = (z + (u-1) E_d) / (u z)` and `Delta = 1 / (z sqrt(omega))`.
//!
//! The trace is computed symbolically and only then evaluated numerically.

mod oracle;

use rand::Rng;
use serde::Serialize;

use crate::coeff_ring::{close, ComplexVal, Poly};
use crate::e_system::{e_value, ESolution};
use crate::error::{Error, Result};
use crate::framed_braids::{random_word, BraidLetter, FramedBraidWord};
use crate::markov_trace::Tracer;
use crate::report::Report;
use crate::yokonuma::embed_braid;

pub use oracle::{homflypt_oracle, SkeinCoefficients, ORACLE_CROSSING_LIMIT};

/// Default relative tolerance for verifications.
pub const VERIFY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SqrtBranch {
    Principal,
    Negated,
}

impl SqrtBranch {
    pub fn other(self) -> SqrtBranch {
        match self {
            SqrtBranch::Principal => SqrtBranch::Negated,
            SqrtBranch::Negated => SqrtBranch::Principal,
        }
    }
}

impl std::str::FromStr for SqrtBranch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "principal" | "+" => Ok(SqrtBranch::Principal),
            "negated" | "-" => Ok(SqrtBranch::Negated),
            _ => Err(Error::Invalid(format!("branch must be 'principal' or 'negated', got {s:?}"))),
        }
    }
}

impl std::fmt::Display for SqrtBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SqrtBranch::Principal => "principal",
            SqrtBranch::Negated => "negated",
        })
    }
}

/// A solution together with numeric `u`, `z` and a choice of `sqrt(omega)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantParams {
    solution: ESolution,
    u: ComplexVal,
    z: ComplexVal,
    branch: SqrtBranch,
    e_d: ComplexVal,
    omega: ComplexVal,
    sqrt_omega: ComplexVal,
    delta: ComplexVal,
}

const DOMAIN_EPS: f64 = 1e-14;

impl InvariantParams {
    pub fn new(solution: ESolution, u: ComplexVal, z: ComplexVal, branch: SqrtBranch) -> Result<Self> {
        let one = ComplexVal::new(1.0, 0.0);
        if u.norm() < DOMAIN_EPS || (u - one).norm() < DOMAIN_EPS {
            return Err(Error::ParamDomain(format!("u = {u} must avoid 0 and 1")));
        }
        if z.norm() < DOMAIN_EPS {
            return Err(Error::ParamDomain("z must be nonzero".into()));
        }
        let e_d = e_value(solution.values(), 0);
        if e_d.norm() < DOMAIN_EPS {
            return Err(Error::ParamDomain("E_d vanishes at this solution".into()));
        }
        let omega = (z + (u - one) * e_d) / (u * z);
        if omega.norm() < DOMAIN_EPS {
            return Err(Error::ParamDomain(format!("omega vanishes at u = {u}, z = {z}")));
        }
        let mut sqrt_omega = omega.sqrt();
        if branch == SqrtBranch::Negated {
            sqrt_omega = -sqrt_omega;
        }
        let delta = (one - omega * u) / (sqrt_omega * (one - u) * e_d);
        Ok(InvariantParams { solution, u, z, branch, e_d, omega, sqrt_omega, delta })
    }

    pub fn d(&self) -> u32 {
        self.solution.d() as u32
    }

    pub fn solution(&self) -> &ESolution {
        &self.solution
    }

    pub fn u(&self) -> ComplexVal {
        self.u
    }

    pub fn z(&self) -> ComplexVal {
        self.z
    }

    pub fn branch(&self) -> SqrtBranch {
        self.branch
    }

    pub fn e_d(&self) -> ComplexVal {
        self.e_d
    }

    pub fn omega(&self) -> ComplexVal {
        self.omega
    }

    pub fn sqrt_omega(&self) -> ComplexVal {
        self.sqrt_omega
    }

    pub fn delta(&self) -> ComplexVal {
        self.delta
    }

    /// Same parameters with the other square root.
    pub fn flipped(&self) -> InvariantParams {
        InvariantParams {
            branch: self.branch.other(),
            sqrt_omega: -self.sqrt_omega,
            delta: -self.delta,
            ..self.clone()
        }
    }

    /// `x_k` at the solution, index mod `d`.
    pub fn x(&self, k: i64) -> ComplexVal {
        self.solution.values().at(k)
    }

    /// `E^{(k)}` at the solution.
    pub fn e_shift(&self, k: i64) -> ComplexVal {
        e_value(self.solution.values(), k)
    }

    /// Substitutes `u`, `z` and the solution into a trace polynomial.
    pub fn eval(&self, p: &Poly) -> Result<ComplexVal> {
        p.eval(self.u, self.z, self.solution.x_values())
    }
}

/// Symbolic trace of the image of a braid word in `Y_{d,n}`.
pub fn braid_trace(w: &FramedBraidWord, tracer: &mut Tracer) -> Result<Poly> {
    let image = embed_braid(&w.split_form(), tracer.d())?;
    tracer.trace(&image)
}

/// `Delta^{n-1} sqrt(omega)^eps` times the evaluated trace.
pub fn gamma_from_trace(trace: &Poly, n: usize, exponent: i64, params: &InvariantParams) -> Result<ComplexVal> {
    let value = params.eval(trace)?;
    let scale = params.delta.powi(n as i32 - 1) * params.sqrt_omega.powi(exponent as i32);
    Ok(scale * value)
}

pub fn gamma_with(w: &FramedBraidWord, params: &InvariantParams, tracer: &mut Tracer) -> Result<ComplexVal> {
    if tracer.d() != params.d() {
        return Err(Error::Invalid(format!("tracer for d = {} used with d = {}", tracer.d(), params.d())));
    }
    let t = braid_trace(w, tracer)?;
    gamma_from_trace(&t, w.n(), w.exponent(), params)
}

/// `Gamma_d` of the closure of `w`.
pub fn gamma(w: &FramedBraidWord, params: &InvariantParams) -> Result<ComplexVal> {
    gamma_with(w, params, &mut Tracer::with_memo(params.d()))
}

/// Links with known closed forms, by framing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnownLink {
    Unknot(i64),
    Hopf(i64, i64),
    TrefoilR(i64),
    TrefoilL(i64),
}

impl KnownLink {
    /// Standard braid representative.
    pub fn braid(&self) -> FramedBraidWord {
        let s = |sign| BraidLetter::Sigma { i: 1, sign };
        let t = |j, exp| BraidLetter::Frame { j, exp };
        let (n, letters) = match *self {
            KnownLink::Unknot(k) => (1, vec![t(1, k)]),
            KnownLink::Hopf(k, l) => (2, vec![s(1), s(1), t(1, k), t(2, l)]),
            KnownLink::TrefoilR(k) => (2, vec![s(1), s(1), s(1), t(1, k)]),
            KnownLink::TrefoilL(k) => (2, vec![s(-1), s(-1), s(-1), t(1, k)]),
        };
        FramedBraidWord::new(n, letters).expect("valid letters")
    }
}

/// Hand-derived values of `Gamma` for the links in [`KnownLink`].
pub fn closed_form(link: KnownLink, p: &InvariantParams) -> ComplexVal {
    let one = ComplexVal::new(1.0, 0.0);
    let (u, z) = (p.u, p.z);
    match link {
        KnownLink::Unknot(k) => p.x(k),
        KnownLink::Hopf(k, l) => {
            p.delta * p.omega * (p.x(l) * p.x(k) + (u - one) * p.e_shift(k + l) - (u - one) * z * p.x(k + l))
        }
        KnownLink::TrefoilR(k) => {
            p.delta * p.sqrt_omega.powi(3) * ((u * u - u + one) * z * p.x(k) - u * (u - one) * p.e_shift(k))
        }
        KnownLink::TrefoilL(k) => {
            let c = u.powi(-3) - u.powi(-2) + u.powi(-1);
            p.delta * p.sqrt_omega.powi(-3) * (c * z * p.x(k) - (c - one) * p.e_shift(k))
        }
    }
}

/// Compares `Gamma` across conjugations by random words and both stabilizations.
pub fn markov_check<R: Rng + ?Sized>(
    w: &FramedBraidWord,
    params: &InvariantParams,
    trials: usize,
    tol: f64,
    rng: &mut R,
) -> Result<Report> {
    let mut tracer = Tracer::with_memo(params.d());
    let mut r = Report::new(format!("markov moves on [{w}]"));
    let base = gamma_with(w, params, &mut tracer)?;
    for _ in 0..trials {
        let len = rng.random_range(1..=4);
        let beta = random_word(w.n(), len, 3, rng);
        let left = gamma_with(&beta.concat(w)?, params, &mut tracer)?;
        let right = gamma_with(&w.concat(&beta)?, params, &mut tracer)?;
        r.push(format!("conjugate by [{beta}]"), close(left, right, tol), format!("{left} vs {right}"));
    }
    for sign in [1i8, -1] {
        let st = w.stabilized(sign)?;
        let v = gamma_with(&st, params, &mut tracer)?;
        let label = if sign > 0 { "" } else { "^-1" };
        r.push(format!("stabilize with s{}{label}", w.n()), close(base, v, tol), format!("{base} vs {v}"));
    }
    Ok(r)
}

/// Residual of the skein relation at crossing site `i` after `beta`.
///
/// With `c = u^{-1} - 1` the relation reads
/// `Gamma(b s_i)/sqrt(w) - sqrt(w) Gamma(b s_i^-1)
///   = (c/d) sum_m Gamma(b t_i^m t_{i+1}^-m) - (c/(d sqrt(w))) sum_m Gamma(b t_i^m t_{i+1}^-m s_i)`,
/// obtained by substituting the inverse formula for `g_i^{-1}`. The returned
/// value is `|lhs - rhs| / max(1, |lhs|, |rhs|)`.
pub fn skein_residual(beta: &FramedBraidWord, i: usize, params: &InvariantParams) -> Result<f64> {
    let n = beta.n();
    if i == 0 || i >= n {
        return Err(Error::Index { index: i as i64, context: format!("crossing site on {n} strands") });
    }
    let mut tracer = Tracer::with_memo(params.d());
    let mut g = |letters: &[BraidLetter]| -> Result<ComplexVal> {
        let extra = FramedBraidWord::new(n, letters.to_vec())?;
        gamma_with(&beta.concat(&extra)?, params, &mut tracer)
    };
    let d = params.d() as i64;
    let sw = params.sqrt_omega;
    let c = params.u.inv() - 1.0;
    let plus = g(&[BraidLetter::Sigma { i, sign: 1 }])?;
    let minus = g(&[BraidLetter::Sigma { i, sign: -1 }])?;
    let mut smooth = ComplexVal::new(0.0, 0.0);
    let mut crossed = ComplexVal::new(0.0, 0.0);
    for m in 0..d {
        let frames = [BraidLetter::Frame { j: i, exp: m }, BraidLetter::Frame { j: i + 1, exp: -m }];
        smooth += g(&frames)?;
        crossed += g(&[frames[0], frames[1], BraidLetter::Sigma { i, sign: 1 }])?;
    }
    let lhs = plus / sw - sw * minus;
    let rhs = c / d as f64 * smooth - c / (d as f64 * sw) * crossed;
    Ok((lhs - rhs).norm() / 1f64.max(lhs.norm()).max(rhs.norm()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck {
    pub gamma: [f64; 2],
    pub oracle: [f64; 2],
    pub agree: bool,
}

/// Compares `Gamma_1` with the skein-recursion oracle on a zero-framed word.
pub fn homflypt_crosscheck(w: &FramedBraidWord, params: &InvariantParams, tol: f64) -> Result<CrossCheck> {
    if params.d() != 1 {
        return Err(Error::ParamDomain(format!("cross-check needs d = 1, got {}", params.d())));
    }
    if w.letters().iter().any(|l| matches!(l, BraidLetter::Frame { exp, .. } if *exp != 0)) {
        return Err(Error::Invalid("cross-check expects a zero-framed word".into()));
    }
    let crossings: Vec<(usize, i8)> = w
        .letters()
        .iter()
        .filter_map(|l| match *l {
            BraidLetter::Sigma { i, sign } => Some((i, sign)),
            BraidLetter::Frame { .. } => None,
        })
        .collect();
    let coeffs = SkeinCoefficients::from_params(params.u, params.sqrt_omega);
    let expected = homflypt_oracle(&crossings, w.n(), &coeffs)?;
    let got = gamma(w, params)?;
    Ok(CrossCheck { gamma: [got.re, got.im], oracle: [expected.re, expected.im], agree: close(got, expected, tol) })
}
