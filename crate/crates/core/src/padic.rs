//! Finite-depth models of p-adic objects: coherent residue towers, towers of
//! algebra elements over `Y_{p^r,n}`, towers of trace polynomials, and the
//! maps between levels.
//!
//! Level `r` means modulus `p^r`; entry vectors are indexed from level 1.
//! Moving an element between levels keeps its formal expression (its reduced
//! framing exponents) and only reinterprets the generators:
//! * [`truncate`] carries `y_s` up to level `r >= s` (the exponents are already
//!   below `p^s <= p^r`);
//! * [`expand`] carries `y_r` down to level `s <= r`, reducing exponents mod
//!   `p^s`, which is the connecting map [`phi`].

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coeff_ring::{close, rat, ComplexVal, Poly};
use crate::e_system::{lift_solution, ESolution};
use crate::error::{Error, Result};
use crate::framed_braids::FramedBraidWord;
use crate::invariants::{gamma_with, InvariantParams, SqrtBranch};
use crate::markov_trace::Tracer;
use crate::report::Report;
use crate::yokonuma::{embed_braid, enumerate_basis, random_element, AlgebraElement, BasisWord};

/// Largest modulus `p^depth` accepted when algebra towers are built.
pub const MAX_LEVEL_ORDER: u64 = 1024;

/// Default tower depth.
pub const DEFAULT_DEPTH: usize = 4;

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    Ok(())
}

/// `p^r`, or `BoundExceeded` when it overflows `limit`.
pub fn level_order(p: u64, r: usize, limit: u64) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..r {
        acc = acc
            .checked_mul(p)
            .filter(|&v| v <= limit)
            .ok_or_else(|| Error::BoundExceeded(format!("{p}^{r} exceeds {limit}")))?;
    }
    Ok(acc)
}

/// The `r` with `d = p^r`.
pub fn level_of(p: u64, d: u64) -> Result<usize> {
    let mut acc = 1;
    for r in 0..64 {
        if acc == d {
            return Ok(r);
        }
        acc = match acc.checked_mul(p) {
            Some(v) if v <= d => v,
            _ => break,
        };
    }
    Err(Error::Level(format!("{d} is not a power of {p}")))
}

/// Coherent residues `a_r in Z/p^r Z`, `r = 1..R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PAdicIntApprox {
    p: u64,
    residues: Vec<u64>,
}

impl PAdicIntApprox {
    pub fn from_integer(p: u64, depth: usize, x: i64) -> Result<Self> {
        check_prime(p)?;
        let top = level_order(p, depth, u64::MAX / 2)? as i128;
        let a = (x as i128).rem_euclid(top) as u64;
        Self::from_residues(p, (1..=depth).map(|r| a % p.pow(r as u32)).collect())
    }

    /// Residues are normalized into `0..p^r`; they must agree under reduction.
    pub fn from_residues(p: u64, residues: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        if residues.is_empty() {
            return Err(Error::Level("depth must be at least 1".into()));
        }
        level_order(p, residues.len(), u64::MAX / 2)?;
        let residues: Vec<u64> = residues.iter().enumerate().map(|(k, a)| a % p.pow(k as u32 + 1)).collect();
        for r in 1..residues.len() {
            let m = p.pow(r as u32);
            if residues[r] % m != residues[r - 1] {
                return Err(Error::NotCoherent(format!(
                    "a_{} = {} but a_{} = {}",
                    r + 1,
                    residues[r],
                    r,
                    residues[r - 1]
                )));
            }
        }
        Ok(PAdicIntApprox { p, residues })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.residues.len()
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// `a_r`, 1-based level.
    pub fn residue(&self, r: usize) -> Result<u64> {
        self.residues.get(r.wrapping_sub(1)).copied().ok_or_else(|| Error::Level(format!("level {r}")))
    }

    /// Digits `k_0, k_1, ...` of `a_R = sum k_j p^j`.
    pub fn digits(&self) -> Vec<u64> {
        let mut a = *self.residues.last().expect("depth >= 1");
        (0..self.depth())
            .map(|_| {
                let k = a % self.p;
                a /= self.p;
                k
            })
            .collect()
    }

    /// `a_{rs} = k_0 + ... + k_{s-1} p^{s-1}`, read in `Z/p^r Z`.
    pub fn truncation(&self, r: usize, s: usize) -> Result<u64> {
        if s > r || r > self.depth() || s == 0 {
            return Err(Error::Level(format!("truncation needs 1 <= s <= r <= {}, got r={r}, s={s}", self.depth())));
        }
        self.residue(s)
    }

    pub fn add(&self, other: &PAdicIntApprox) -> Result<PAdicIntApprox> {
        if self.p != other.p || self.depth() != other.depth() {
            return Err(Error::Level("towers differ in prime or depth".into()));
        }
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .enumerate()
            .map(|(k, (a, b))| (a + b) % self.p.pow(k as u32 + 1))
            .collect();
        Ok(PAdicIntApprox { p: self.p, residues })
    }

    pub fn is_coherent(&self) -> bool {
        Self::from_residues(self.p, self.residues.clone()).is_ok()
    }
}

fn check_level(p: u64, y: &AlgebraElement, r: usize) -> Result<()> {
    let have = level_of(p, y.d() as u64)?;
    if have != r {
        return Err(Error::Level(format!("element lives at level {have}, expected {r}")));
    }
    Ok(())
}

fn reindex(y: &AlgebraElement, target: u32) -> Result<AlgebraElement> {
    let mut terms: Vec<(BasisWord, Poly)> = Vec::with_capacity(y.len());
    for (w, c) in y.terms() {
        let framing = w.framing().iter().map(|a| a % target).collect();
        terms.push((BasisWord::from_parts(target, framing, w.perm().to_vec())?, c.clone()));
    }
    AlgebraElement::from_terms(target, y.n(), terms)
}

/// Connecting map `Y_{p^r,n} -> Y_{p^s,n}`: framings reduced mod `p^s`.
pub fn phi(p: u64, r: usize, s: usize, y: &AlgebraElement) -> Result<AlgebraElement> {
    check_level(p, y, r)?;
    if s == 0 || s > r {
        return Err(Error::Level(format!("phi needs 1 <= s <= r, got r={r}, s={s}")));
    }
    reindex(y, p.pow(s as u32) as u32)
}

/// Formal expression of `y` (at level `s`) read at level `r >= s`. Framing
/// exponents are carried as their reduced digits, so `t^{-1}` at level 1
/// becomes `t^{1}` at every higher level; see [`e_truncation`] for the
/// signed-exponent version of `e`.
pub fn truncate(p: u64, y: &AlgebraElement, r: usize) -> Result<AlgebraElement> {
    let s = level_of(p, y.d() as u64)?;
    if r < s {
        return Err(Error::Level(format!("cannot carry level {s} up to level {r}")));
    }
    let d = level_order(p, r, MAX_LEVEL_ORDER)? as u32;
    reindex(y, d)
}

/// Formal expression of `y` (at level `r`) read at level `s <= r`.
pub fn expand(p: u64, y: &AlgebraElement, s: usize) -> Result<AlgebraElement> {
    let r = level_of(p, y.d() as u64)?;
    phi(p, r, s, y)
}

/// Packet `j` of `e_{p^r,i}`: `(1/p^s) sum_{m = j p^s}^{(j+1) p^s - 1} t_i^m t_{i+1}^{-m}` at level `r`.
pub fn packet(p: u64, r: usize, s: usize, n: usize, i: usize, j: u64) -> Result<AlgebraElement> {
    if s == 0 || s > r {
        return Err(Error::Level(format!("packets need 1 <= s <= r, got r={r}, s={s}")));
    }
    let d = level_order(p, r, MAX_LEVEL_ORDER)? as u32;
    let width = p.pow(s as u32);
    if j >= p.pow((r - s) as u32) {
        return Err(Error::Index { index: j as i64, context: "packet number".into() });
    }
    let one = AlgebraElement::one(d, n)?;
    let mut acc = AlgebraElement::zero(d, n)?;
    for m in j * width..(j + 1) * width {
        acc += &one.mul_t(i, m as i64)?.mul_t(i + 1, -(m as i64))?;
    }
    Ok(acc.scale_rational(&rat(1, width as i64)))
}

/// `zeta_{r,s,i}`: `e_{p^s,i}` with its signed exponents read at level `r`,
/// which is packet 0.
pub fn e_truncation(p: u64, r: usize, s: usize, n: usize, i: usize) -> Result<AlgebraElement> {
    packet(p, r, s, n, i, 0)
}

/// `(y_1, ..., y_R)` with `y_r` in `Y_{p^r,n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PAdicAlgebraApprox {
    p: u64,
    n: usize,
    entries: Vec<AlgebraElement>,
}

impl PAdicAlgebraApprox {
    /// Checks levels and coherency.
    pub fn new(p: u64, entries: Vec<AlgebraElement>) -> Result<Self> {
        check_prime(p)?;
        let n = entries.first().ok_or_else(|| Error::Level("depth must be at least 1".into()))?.n();
        for (k, y) in entries.iter().enumerate() {
            check_level(p, y, k + 1)?;
            if y.n() != n {
                return Err(Error::MismatchedStrands { left: n, right: y.n() });
            }
        }
        let seq = PAdicAlgebraApprox { p, n, entries };
        if let Some((r, s)) = seq.first_incoherence()? {
            return Err(Error::NotCoherent(format!("phi from level {r} to {s} disagrees")));
        }
        Ok(seq)
    }

    /// Builds entry `r` from `f(p^r)`.
    pub fn from_fn(p: u64, depth: usize, f: impl Fn(u32) -> Result<AlgebraElement>) -> Result<Self> {
        check_prime(p)?;
        level_order(p, depth, MAX_LEVEL_ORDER)?;
        let entries = (1..=depth).map(|r| f(p.pow(r as u32) as u32)).collect::<Result<Vec<_>>>()?;
        Self::new(p, entries)
    }

    /// Image of a framed braid at every level.
    pub fn from_braid(p: u64, depth: usize, w: &FramedBraidWord) -> Result<Self> {
        let split = w.split_form();
        Self::from_fn(p, depth, |d| embed_braid(&split, d))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[AlgebraElement] {
        &self.entries
    }

    /// `y_r`, 1-based level.
    pub fn entry(&self, r: usize) -> Result<&AlgebraElement> {
        self.entries.get(r.wrapping_sub(1)).ok_or_else(|| Error::Level(format!("level {r} of {}", self.depth())))
    }

    fn first_incoherence(&self) -> Result<Option<(usize, usize)>> {
        for r in 2..=self.depth() {
            if phi(self.p, r, r - 1, &self.entries[r - 1])? != self.entries[r - 2] {
                return Ok(Some((r, r - 1)));
            }
        }
        Ok(None)
    }

    pub fn is_coherent(&self) -> bool {
        matches!(self.first_incoherence(), Ok(None))
    }

    /// `y_{r,s}`: the formal expression of `y_s` read at level `r >= s`.
    pub fn truncation(&self, r: usize, s: usize) -> Result<AlgebraElement> {
        let ys = self.entry(s)?;
        truncate(self.p, ys, r)
    }

    /// `y_{s,r}`: the formal expression of `y_r` read at level `s <= r`.
    pub fn expansion(&self, s: usize, r: usize) -> Result<AlgebraElement> {
        expand(self.p, self.entry(r)?, s)
    }

    /// The constant tower carrying the formal expression of `y_r` at every level.
    pub fn constant_approximant(&self, r: usize) -> Result<PAdicAlgebraApprox> {
        let yr = self.entry(r)?;
        let entries = (1..=self.depth())
            .map(|k| if k <= r { expand(self.p, yr, k) } else { truncate(self.p, yr, k) })
            .collect::<Result<Vec<_>>>()?;
        Ok(PAdicAlgebraApprox { p: self.p, n: self.n, entries })
    }

    pub fn sub(&self, other: &PAdicAlgebraApprox) -> Result<PAdicAlgebraApprox> {
        self.zip(other, |a, b| Ok(a - b))
    }

    pub fn mul(&self, other: &PAdicAlgebraApprox) -> Result<PAdicAlgebraApprox> {
        self.zip(other, |a, b| a.mul(b))
    }

    fn zip(
        &self,
        other: &PAdicAlgebraApprox,
        f: impl Fn(&AlgebraElement, &AlgebraElement) -> Result<AlgebraElement>,
    ) -> Result<PAdicAlgebraApprox> {
        if self.p != other.p || self.depth() != other.depth() {
            return Err(Error::Level("towers differ in prime or depth".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect::<Result<_>>()?;
        Ok(PAdicAlgebraApprox { p: self.p, n: self.n, entries })
    }
}

impl Serialize for PAdicAlgebraApprox {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TowerRepr { p: self.p, depth: self.depth(), entries: &self.entries }.serialize(s)
    }
}

#[derive(Serialize)]
struct TowerRepr<'a, T> {
    p: u64,
    depth: usize,
    entries: &'a [T],
}

/// `e_{p^r,i}` for `r = 1..depth`.
pub fn e_padic(p: u64, depth: usize, n: usize, i: usize) -> Result<PAdicAlgebraApprox> {
    PAdicAlgebraApprox::from_fn(p, depth, |d| crate::yokonuma::e_idempotent(d, n, i))
}

/// `x_a -> x_{a mod p^s}` on trace polynomials of level `r`.
pub fn delta_map(p: u64, s: usize, poly: &Poly) -> Poly {
    let m = p.pow(s as u32) as u32;
    poly.map_x(|k| k % m)
}

/// `(P_1, ..., P_R)` with `P_r` over `x_a`, `a in Z/p^r Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySeqApprox {
    p: u64,
    entries: Vec<Poly>,
}

impl PolySeqApprox {
    pub fn new(p: u64, entries: Vec<Poly>) -> Result<Self> {
        check_prime(p)?;
        for (k, e) in entries.iter().enumerate() {
            let order = level_order(p, k + 1, u64::MAX / 2)?;
            if e.max_x_index() as u64 >= order {
                return Err(Error::Level(format!("x_{} at level {}", e.max_x_index(), k + 1)));
            }
        }
        Ok(PolySeqApprox { p, entries })
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    /// `delta(P_r) = P_{r-1}` for every level.
    pub fn is_coherent(&self) -> bool {
        (1..self.entries.len()).all(|k| delta_map(self.p, k, &self.entries[k]) == self.entries[k - 1])
    }
}

impl Serialize for PolySeqApprox {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TowerRepr { p: self.p, depth: self.depth(), entries: &self.entries }.serialize(s)
    }
}

/// Entrywise trace `tr_{p^r}(y_r)`.
pub fn tau_prefix(y: &PAdicAlgebraApprox) -> Result<PolySeqApprox> {
    let entries = y.entries.iter().map(|e| Tracer::with_memo(e.d()).trace(e)).collect::<Result<Vec<_>>>()?;
    PolySeqApprox::new(y.p, entries)
}

/// Checks `delta(tr_{p^r}(y)) = tr_{p^s}(phi(y))` for all `s <= r <= depth`,
/// on the full basis when `p^r <= 4` and on `sample` random elements otherwise.
pub fn commute_check(p: u64, depth: usize, n: usize, sample: usize, seed: u64) -> Result<Report> {
    check_prime(p)?;
    level_order(p, depth, MAX_LEVEL_ORDER)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tracers: BTreeMap<usize, Tracer> =
        (1..=depth).map(|r| (r, Tracer::with_memo(p.pow(r as u32) as u32))).collect();
    let mut report = Report::new(format!("trace commutes with level maps, p={p}, n={n}"));
    for r in 1..=depth {
        let d = p.pow(r as u32) as u32;
        let (elements, label) = if d <= 4 {
            let basis = enumerate_basis(d, n)?;
            let count = basis.len();
            let elems =
                basis.into_iter().map(|w| AlgebraElement::from_word(d, w, Poly::one())).collect::<Result<Vec<_>>>()?;
            (elems, format!("full basis ({count})"))
        } else {
            let elems = (0..sample).map(|_| random_element(d, n, 3, &mut rng)).collect::<Result<Vec<_>>>()?;
            (elems, format!("{sample} random elements"))
        };
        for s in 1..=r {
            let mut bad = None;
            for y in &elements {
                let top = tracers.get_mut(&r).expect("tracer").trace(y)?;
                let down = tracers.get_mut(&s).expect("tracer").trace(&phi(p, r, s, y)?)?;
                if delta_map(p, s, &top) != down {
                    bad = Some(y.to_string());
                    break;
                }
            }
            let ok = bad.is_none();
            report.push(format!("level {r} -> {s}, {label}"), ok, bad.unwrap_or_default());
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilizationReport {
    pub p: u64,
    pub depth: usize,
    pub braid: String,
    /// `Gamma_{p^r}` for `r = 1..depth`, as `[re, im]`.
    pub entries: Vec<[f64; 2]>,
    /// Least level whose modulus exceeds every framing.
    pub r0: usize,
    /// True when `r0 <= depth`, so at least one level past `r0` was computed.
    pub verified: bool,
    pub stable: bool,
    pub max_deviation: f64,
}

/// Evaluates `Gamma_{p^r}` at the lifts of `base` and checks constancy from `r0` on.
#[allow(clippy::too_many_arguments)]
pub fn gamma_stabilization(
    w: &FramedBraidWord,
    p: u64,
    depth: usize,
    base: &ESolution,
    u: ComplexVal,
    z: ComplexVal,
    branch: SqrtBranch,
    tol: f64,
) -> Result<StabilizationReport> {
    check_prime(p)?;
    if base.d() as u64 != p {
        return Err(Error::IncompatibleOrders { from: base.d(), to: p as usize });
    }
    level_order(p, depth, MAX_LEVEL_ORDER)?;
    let biggest = w.split_form().framings.iter().map(|a| a.unsigned_abs()).max().unwrap_or(0);
    let mut r0 = 1;
    while p.pow(r0 as u32) <= biggest {
        r0 += 1;
    }
    let mut values = Vec::with_capacity(depth);
    for r in 1..=depth {
        let d = p.pow(r as u32) as usize;
        let params = InvariantParams::new(lift_solution(base, d)?, u, z, branch)?;
        values.push(gamma_with(w, &params, &mut Tracer::with_memo(d as u32))?);
    }
    let verified = r0 <= depth;
    let (mut stable, mut max_deviation) = (verified, 0.0f64);
    if verified {
        let anchor = values[r0 - 1];
        for v in &values[r0 - 1..] {
            max_deviation = max_deviation.max((v - anchor).norm());
            stable &= close(*v, anchor, tol);
        }
    }
    Ok(StabilizationReport {
        p,
        depth,
        braid: w.to_string(),
        entries: values.iter().map(|v| [v.re, v.im]).collect(),
        r0,
        verified,
        stable,
        max_deviation,
    })
}
