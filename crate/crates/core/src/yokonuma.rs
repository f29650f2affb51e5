//! The Yokonuma–Hecke algebra `Y_{d,n}(u)` with its inductive basis.
//!
//! A basis word is stored as a framing vector `a` and a permutation `w`,
//! standing for `t_1^{a_1}...t_n^{a_n} g_w` where `g_w` is the product along
//! the descending-chain reduced word of `w`. This is the same set as the
//! level-by-level basis
//! `L_1 L_2 ... L_n`, `L_k = t_k^m` or `L_k = g_{k-1}...g_i t_i^m`,
//! because each `L_k` equals `t_k^m g_{k-1}...g_i` and `t_k` commutes with
//! every lower level. [`BasisWord::levels`] and [`BasisWord::from_levels`]
//! convert between the two.
//!
//! Right multiplication by generators:
//! * `t^a g_w t_j^m = t^a t_{w(j)}^m g_w`;
//! * `t^a g_w g_j = t^a g_{w s_j}` when `w(j) < w(j+1)`;
//! * otherwise `g_w = g_{w'} g_j` with `w' = w s_j` and the quadratic relation
//!   gives `g_{w'} + (u-1) e' g_{w'} - (u-1) e' g_w`, where
//!   `e' = (1/d) sum_m t_{w'(j)}^m t_{w'(j+1)}^{-m}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff_ring::{rat, rat_int, Poly, Rational};
use crate::error::{Error, Result};
use crate::framed_braids::{BraidLetter, FramedBraidWord, SplitFramedBraid};
use crate::report::Report;

/// Level descriptor of the inductive basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Level {
    /// `t_k^m` at level `k`.
    #[serde(rename = "F")]
    Frame(u32),
    /// `g_{k-1} ... g_i t_i^m` at level `k`, stored as `(i, m)`.
    #[serde(rename = "G")]
    Tail(usize, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisWord {
    framing: Vec<u32>,
    perm: Vec<u8>,
}

impl BasisWord {
    pub fn identity(n: usize) -> Self {
        BasisWord { framing: vec![0; n], perm: (0..n as u8).collect() }
    }

    pub fn n(&self) -> usize {
        self.framing.len()
    }

    /// Exponents `a_1..a_n` of `t_1^{a_1}...t_n^{a_n} g_w`.
    pub fn framing(&self) -> &[u32] {
        &self.framing
    }

    /// `w` as 0-based images: `perm[j] = w(j)`.
    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    /// Builds `t^a g_w`; `perm[j] = w(j)`, 0-based.
    pub fn from_parts(d: u32, framing: Vec<u32>, perm: Vec<u8>) -> Result<Self> {
        let n = framing.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| (p as usize) >= n || std::mem::replace(&mut seen[p as usize], true))
        {
            return Err(Error::Invalid(format!("{perm:?} is not a permutation of {n} points")));
        }
        if let Some(&m) = framing.iter().find(|&&m| m >= d) {
            return Err(Error::Invalid(format!("framing {m} not reduced mod {d}")));
        }
        Ok(BasisWord { framing, perm })
    }

    pub fn from_levels(d: u32, levels: &[Level]) -> Result<Self> {
        let n = levels.len();
        let mut framing = Vec::with_capacity(n);
        let mut perm: Vec<u8> = (0..n as u8).collect();
        for (k, level) in levels.iter().enumerate() {
            let m = match *level {
                Level::Frame(m) => m,
                Level::Tail(i, m) => {
                    if i == 0 || i > k {
                        return Err(Error::Invalid(format!("Tail({i}, {m}) at level {}", k + 1)));
                    }
                    for j in (i - 1..k).rev() {
                        perm.swap(j, j + 1);
                    }
                    m
                }
            };
            if m >= d {
                return Err(Error::Invalid(format!("exponent {m} not reduced mod {d}")));
            }
            framing.push(m);
        }
        Ok(BasisWord { framing, perm })
    }

    pub fn levels(&self) -> Vec<Level> {
        let n = self.n();
        let mut cur = self.perm.clone();
        let mut levels = vec![Level::Frame(0); n];
        for k in (0..n).rev() {
            let i = cur.iter().position(|&v| v as usize == k).expect("permutation");
            levels[k] = if i == k { Level::Frame(self.framing[k]) } else { Level::Tail(i + 1, self.framing[k]) };
            for j in i..k {
                cur.swap(j, j + 1);
            }
        }
        levels
    }

    /// Top level and the word formed by the levels below it.
    pub fn split_top(&self) -> (Level, BasisWord) {
        let n = self.n();
        let k = n - 1;
        let mut cur = self.perm.clone();
        let i = cur.iter().position(|&v| v as usize == k).expect("permutation");
        for j in i..k {
            cur.swap(j, j + 1);
        }
        cur.truncate(k);
        let top = if i == k { Level::Frame(self.framing[k]) } else { Level::Tail(i + 1, self.framing[k]) };
        (top, BasisWord { framing: self.framing[..k].to_vec(), perm: cur })
    }

    /// 1-based generator indices of the reduced word of `g_w`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, level) in self.levels().into_iter().enumerate() {
            if let Level::Tail(i, _) = level {
                out.extend((i..=k).rev());
            }
        }
        out
    }

    /// Same word on `m >= n` strands.
    pub fn widen(&self, m: usize) -> BasisWord {
        let mut w = self.clone();
        for k in self.n()..m {
            w.framing.push(0);
            w.perm.push(k as u8);
        }
        w
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, &a) in self.framing.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("t{}", j + 1)),
                _ => parts.push(format!("t{}^{a}", j + 1)),
            }
        }
        parts.extend(self.reduced_word().into_iter().map(|i| format!("g{i}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Finite linear combination of basis words with `u`-Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    d: u32,
    n: usize,
    terms: BTreeMap<BasisWord, Poly>,
}

fn add_into(terms: &mut BTreeMap<BasisWord, Poly>, word: BasisWord, c: &Poly) {
    if c.is_zero() {
        return;
    }
    match terms.entry(word) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn check_params(d: u32, n: usize) -> Result<()> {
    if d == 0 || n == 0 {
        return Err(Error::Invalid(format!("Y({d},{n}) needs d >= 1 and n >= 1")));
    }
    if n > 255 {
        return Err(Error::BoundExceeded(format!("{n} strands")));
    }
    Ok(())
}

/// `(u - 1) / d`.
fn quad_coeff(d: u32) -> Poly {
    (&Poly::u() - &Poly::one()).scale(&rat(1, d as i64))
}

impl AlgebraElement {
    pub fn zero(d: u32, n: usize) -> Result<Self> {
        check_params(d, n)?;
        Ok(AlgebraElement { d, n, terms: BTreeMap::new() })
    }

    pub fn one(d: u32, n: usize) -> Result<Self> {
        Self::from_word(d, BasisWord::identity(n), Poly::one())
    }

    pub fn from_word(d: u32, word: BasisWord, coeff: Poly) -> Result<Self> {
        let mut out = Self::zero(d, word.n())?;
        if word.framing.iter().any(|&m| m >= d) {
            return Err(Error::Invalid(format!("framing not reduced mod {d}")));
        }
        if !coeff.is_u_only() {
            return Err(Error::Invalid("algebra coefficients may only involve u".into()));
        }
        add_into(&mut out.terms, word, &coeff);
        Ok(out)
    }

    /// Builds an element from raw terms, merging duplicates.
    pub fn from_terms(d: u32, n: usize, terms: impl IntoIterator<Item = (BasisWord, Poly)>) -> Result<Self> {
        let mut out = Self::zero(d, n)?;
        for (w, c) in terms {
            if w.n() != n {
                return Err(Error::MismatchedStrands { left: n, right: w.n() });
            }
            out += &Self::from_word(d, w, c)?;
        }
        Ok(out)
    }

    /// `t_j^m`.
    pub fn t(d: u32, n: usize, j: usize, m: i64) -> Result<Self> {
        Self::one(d, n)?.mul_t(j, m)
    }

    /// `g_i`.
    pub fn g(d: u32, n: usize, i: usize) -> Result<Self> {
        Self::one(d, n)?.mul_g(i)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisWord, &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &BasisWord) -> Poly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    fn same_algebra(&self, other: &AlgebraElement) -> Result<()> {
        if self.d != other.d || self.n != other.n {
            return Err(Error::MismatchedAlgebra { d1: self.d, n1: self.n, d2: other.d, n2: other.n });
        }
        Ok(())
    }

    fn check_generator(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n {
            return Err(Error::Index { index: i as i64, context: format!("g{i} in Y({},{})", self.d, self.n) });
        }
        Ok(())
    }

    fn check_strand(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.n {
            return Err(Error::Index { index: j as i64, context: format!("t{j} in Y({},{})", self.d, self.n) });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Poly) -> AlgebraElement {
        let mut out = AlgebraElement { d: self.d, n: self.n, terms: BTreeMap::new() };
        for (w, a) in &self.terms {
            add_into(&mut out.terms, w.clone(), &(a * c));
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> AlgebraElement {
        self.scale(&Poly::constant(c.clone()))
    }

    /// The image in `Y_{d,m}` for `m >= n`.
    pub fn widen(&self, m: usize) -> Result<AlgebraElement> {
        if m < self.n {
            return Err(Error::MismatchedStrands { left: self.n, right: m });
        }
        check_params(self.d, m)?;
        let terms = self.terms.iter().map(|(w, c)| (w.widen(m), c.clone())).collect();
        Ok(AlgebraElement { d: self.d, n: m, terms })
    }

    /// `self * t_j^m`.
    pub fn mul_t(&self, j: usize, m: i64) -> Result<AlgebraElement> {
        self.check_strand(j)?;
        let step = m.rem_euclid(self.d as i64) as u32;
        let mut out = AlgebraElement { d: self.d, n: self.n, terms: BTreeMap::new() };
        for (w, c) in &self.terms {
            let mut w = w.clone();
            let target = w.perm[j - 1] as usize;
            w.framing[target] = (w.framing[target] + step) % self.d;
            out.terms.insert(w, c.clone());
        }
        Ok(out)
    }

    /// `self * g_i`.
    pub fn mul_g(&self, i: usize) -> Result<AlgebraElement> {
        self.check_generator(i)?;
        let d = self.d;
        let j = i - 1;
        let q = quad_coeff(d);
        let mut out = AlgebraElement { d, n: self.n, terms: BTreeMap::new() };
        for (w, c) in &self.terms {
            let mut shorter = w.clone();
            shorter.perm.swap(j, j + 1);
            if w.perm[j] < w.perm[j + 1] {
                add_into(&mut out.terms, shorter, c);
                continue;
            }
            let p = shorter.perm[j] as usize;
            let r = shorter.perm[j + 1] as usize;
            let cq = c * &q;
            let neg_cq = -&cq;
            add_into(&mut out.terms, shorter.clone(), c);
            for m in 0..d {
                let mut a = shorter.clone();
                a.framing[p] = (a.framing[p] + m) % d;
                a.framing[r] = (a.framing[r] + d - m) % d;
                let mut b = w.clone();
                b.framing = a.framing.clone();
                add_into(&mut out.terms, a, &cq);
                add_into(&mut out.terms, b, &neg_cq);
            }
        }
        Ok(out)
    }

    /// `self * e_{d,i}`.
    pub fn mul_e(&self, i: usize) -> Result<AlgebraElement> {
        self.mul_e_pair(i, i + 1)
    }

    /// `self * e_{d,i,k}`.
    pub fn mul_e_pair(&self, i: usize, k: usize) -> Result<AlgebraElement> {
        self.check_strand(i)?;
        self.check_strand(k)?;
        if i == k {
            return Err(Error::Index { index: k as i64, context: "e_{i,k} needs i != k".into() });
        }
        let mut out = AlgebraElement { d: self.d, n: self.n, terms: BTreeMap::new() };
        for m in 0..self.d as i64 {
            out += &self.mul_t(i, m)?.mul_t(k, -m)?;
        }
        Ok(out.scale_rational(&rat(1, self.d as i64)))
    }

    /// `self * g_i^{-1}`, using `g^{-1} = g - (u^{-1}-1) e + (u^{-1}-1) e g`.
    pub fn mul_g_inv(&self, i: usize) -> Result<AlgebraElement> {
        self.check_generator(i)?;
        let c = &Poly::u_pow(-1) - &Poly::one();
        let ae = self.mul_e(i)?;
        let mut out = self.mul_g(i)?;
        out += &(&ae.mul_g(i)? - &ae).scale(&c);
        Ok(out)
    }

    /// `self * b`, folding the generator factorization of each basis word of `b`.
    pub fn mul(&self, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_algebra(b)?;
        let mut out = AlgebraElement { d: self.d, n: self.n, terms: BTreeMap::new() };
        for (w, c) in &b.terms {
            let mut acc = self.clone();
            for (j, &a) in w.framing.iter().enumerate() {
                if a != 0 {
                    acc = acc.mul_t(j + 1, a as i64)?;
                }
            }
            for i in w.reduced_word() {
                acc = acc.mul_g(i)?;
            }
            out += &acc.scale(c);
        }
        Ok(out)
    }
}

impl std::ops::AddAssign<&AlgebraElement> for AlgebraElement {
    fn add_assign(&mut self, rhs: &AlgebraElement) {
        assert!(self.d == rhs.d && self.n == rhs.n, "adding elements of different algebras");
        for (w, c) in &rhs.terms {
            add_into(&mut self.terms, w.clone(), c);
        }
    }
}

impl std::ops::Add<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Sub<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out += &rhs.scale(&Poly::int(-1));
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*[{w}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    levels: Vec<Level>,
    coeff: Poly,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    d: u32,
    n: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = ElementRepr {
            d: self.d,
            n: self.n,
            terms: self.terms.iter().map(|(w, c)| TermRepr { levels: w.levels(), coeff: c.clone() }).collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(de)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            if t.levels.len() != repr.n {
                return Err(D::Error::custom(format!("{} levels for n = {}", t.levels.len(), repr.n)));
            }
            terms.push((BasisWord::from_levels(repr.d, &t.levels).map_err(D::Error::custom)?, t.coeff));
        }
        AlgebraElement::from_terms(repr.d, repr.n, terms).map_err(D::Error::custom)
    }
}

/// Image of a split framed braid: `t^{a mod d}` followed by `g_i^{+-1}` per crossing.
pub fn embed_braid(w: &SplitFramedBraid, d: u32) -> Result<AlgebraElement> {
    let mut acc = AlgebraElement::one(d, w.n)?;
    for (j, &a) in w.framings.iter().enumerate() {
        if a.rem_euclid(d as i64) != 0 {
            acc = acc.mul_t(j + 1, a)?;
        }
    }
    for &(i, sign) in &w.crossings {
        acc = if sign > 0 { acc.mul_g(i)? } else { acc.mul_g_inv(i)? };
    }
    Ok(acc)
}

/// Image of a word, multiplying letter by letter without splitting first.
pub fn embed_word(w: &FramedBraidWord, d: u32) -> Result<AlgebraElement> {
    let mut acc = AlgebraElement::one(d, w.n())?;
    for l in w.letters() {
        acc = match *l {
            BraidLetter::Sigma { i, sign } if sign > 0 => acc.mul_g(i)?,
            BraidLetter::Sigma { i, .. } => acc.mul_g_inv(i)?,
            BraidLetter::Frame { j, exp } => acc.mul_t(j, exp)?,
        };
    }
    Ok(acc)
}

pub fn alg_mul(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    a.mul(b)
}

/// `e_{d,i} = (1/d) sum_m t_i^m t_{i+1}^{-m}`.
pub fn e_idempotent(d: u32, n: usize, i: usize) -> Result<AlgebraElement> {
    let one = AlgebraElement::one(d, n)?;
    one.check_generator(i)?;
    one.mul_e(i)
}

/// `e_{d,i,k} = (1/d) sum_s t_i^s t_k^{-s}`.
pub fn e_pair(d: u32, n: usize, i: usize, k: usize) -> Result<AlgebraElement> {
    AlgebraElement::one(d, n)?.mul_e_pair(i, k)
}

/// `e_{d,i}^{(k)} = (1/d) sum_s t_i^{k+s} t_{i+1}^{d-s}`.
pub fn e_shift(d: u32, n: usize, i: usize, k: i64) -> Result<AlgebraElement> {
    let one = AlgebraElement::one(d, n)?;
    one.check_generator(i)?;
    let mut out = AlgebraElement::zero(d, n)?;
    for s in 0..d as i64 {
        out += &one.mul_t(i, k + s)?.mul_t(i + 1, d as i64 - s)?;
    }
    Ok(out.scale_rational(&rat(1, d as i64)))
}

/// `sum_{l<k} u^{step*l}`.
fn geometric(step: i32, k: i64) -> Poly {
    let mut acc = Poly::zero();
    for l in 0..k {
        acc += &Poly::u_pow(step * l as i32);
    }
    acc
}

/// Closed form of `g_i^m` as `1 + c (e - e g)` for even `m` or `g + c (e g - e)`
/// for odd `m`.
pub fn g_power(d: u32, n: usize, i: usize, m: i64) -> Result<AlgebraElement> {
    let one = AlgebraElement::one(d, n)?;
    one.check_generator(i)?;
    let um1 = &Poly::u() - &Poly::one();
    let uinv_m1 = &Poly::u_pow(-1) - &Poly::one();
    let e = one.mul_e(i)?;
    let eg = e.mul_g(i)?;
    let g = one.mul_g(i)?;
    let even = m % 2 == 0;
    let c = match (m >= 0, even) {
        (true, true) => &um1 * &geometric(2, m / 2),
        (true, false) => &(&Poly::u() * &um1) * &geometric(2, (m - 1) / 2),
        (false, true) => &(&Poly::u_pow(-1) * &uinv_m1) * &geometric(-2, -m / 2),
        (false, false) => &uinv_m1 * &geometric(-2, (1 - m) / 2),
    };
    let tail = (&e - &eg).scale(&c);
    Ok(if even { &one + &tail } else { &g - &tail })
}

/// All `d^n n!` basis words, level by level.
pub fn enumerate_basis(d: u32, n: usize) -> Result<Vec<BasisWord>> {
    check_params(d, n)?;
    let mut level_sets: Vec<Vec<Level>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut opts: Vec<Level> = (0..d).map(Level::Frame).collect();
        for i in 1..=k {
            opts.extend((0..d).map(|m| Level::Tail(i, m)));
        }
        level_sets.push(opts);
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(sets: &[Vec<Level>], d: u32, current: &mut Vec<Level>, out: &mut Vec<BasisWord>) {
        if current.len() == sets.len() {
            out.push(BasisWord::from_levels(d, current).expect("valid levels"));
            return;
        }
        for l in &sets[current.len()] {
            current.push(*l);
            rec(sets, d, current, out);
            current.pop();
        }
    }
    rec(&level_sets, d, &mut current, &mut out);
    Ok(out)
}

pub fn basis_size(d: u32, n: usize) -> u128 {
    (1..=n as u128).product::<u128>() * (d as u128).pow(n as u32)
}

pub fn random_basis_word<R: Rng + ?Sized>(d: u32, n: usize, rng: &mut R) -> BasisWord {
    let framing = (0..n).map(|_| rng.random_range(0..d)).collect();
    let mut perm: Vec<u8> = (0..n as u8).collect();
    perm.shuffle(rng);
    BasisWord { framing, perm }
}

/// Sparse random element with small integer coefficients times `u^{-1}, 1` or `u`.
pub fn random_element<R: Rng + ?Sized>(d: u32, n: usize, max_terms: usize, rng: &mut R) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero(d, n)?;
    let count = rng.random_range(1..=max_terms.max(1));
    for _ in 0..count {
        let w = random_basis_word(d, n, rng);
        let mut c = rat_int(rng.random_range(-3..=3));
        if c.is_zero() {
            c = Rational::one();
        }
        let coeff = Poly::term(crate::coeff_ring::Monomial::new(rng.random_range(-1..=1), 0, []), c);
        add_into(&mut out.terms, w, &coeff);
    }
    Ok(out)
}

fn identity_check(report: &mut Report, name: String, lhs: Result<AlgebraElement>, rhs: Result<AlgebraElement>) {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            let ok = l == r;
            let detail = if ok { String::new() } else { format!("lhs - rhs = {}", &l - &r) };
            report.push(name, ok, detail);
        }
        (Err(e), _) | (_, Err(e)) => report.push(name, false, e.to_string()),
    }
}

/// Default guard on `d^n n!` for [`relation_suite`].
pub const RELATION_SUITE_BOUND: u128 = 100_000;

/// Checks the defining relations and the derived `e`-relations as exact identities.
pub fn relation_suite(d: u32, n: usize, bound: u128) -> Result<Report> {
    check_params(d, n)?;
    let size = basis_size(d, n);
    if size > bound {
        return Err(Error::BoundExceeded(format!("Y({d},{n}) has {size} basis words, bound {bound}")));
    }
    let one = AlgebraElement::one(d, n)?;
    let t = |j: usize, m: i64| AlgebraElement::t(d, n, j, m);
    let g = |i: usize| AlgebraElement::g(d, n, i);
    let ginv = |i: usize| g_power(d, n, i, -1);
    let e = |i: usize| e_idempotent(d, n, i);
    let ep = |i: usize, k: usize| e_pair(d, n, i, k);
    let mul = |a: Result<AlgebraElement>, b: Result<AlgebraElement>| -> Result<AlgebraElement> { a?.mul(&b?) };
    let mut r = Report::new(format!("relations Y({d},{n})"));

    let count = enumerate_basis(d, n)?.len() as u128;
    r.push(format!("basis count {count} = d^n n!"), count == size, String::new());

    for j in 1..=n {
        identity_check(&mut r, format!("t{j}^{d} = 1"), one.mul_t(j, d as i64), Ok(one.clone()));
        for k in j + 1..=n {
            identity_check(&mut r, format!("t{j} t{k} = t{k} t{j}"), mul(t(j, 1), t(k, 1)), mul(t(k, 1), t(j, 1)));
        }
    }
    for i in 1..n {
        for j in 1..=n {
            let image = if j == i {
                i + 1
            } else if j == i + 1 {
                i
            } else {
                j
            };
            identity_check(&mut r, format!("g{i} t{j} = t{image} g{i}"), mul(g(i), t(j, 1)), mul(t(image, 1), g(i)));
        }
        let quad = || -> Result<AlgebraElement> {
            let um1 = &Poly::u() - &Poly::one();
            let ei = e(i)?;
            Ok(&one + &(&ei - &ei.mul(&g(i)?)?).scale(&um1))
        };
        identity_check(&mut r, format!("g{i}^2 quadratic"), mul(g(i), g(i)), quad());
        identity_check(&mut r, format!("g{i} g{i}^-1 = 1"), mul(g(i), ginv(i)), Ok(one.clone()));
        identity_check(&mut r, format!("g{i}^-1 g{i} = 1"), mul(ginv(i), g(i)), Ok(one.clone()));
        identity_check(&mut r, format!("g{i}^-1 = g{i}^-1 formula"), one.mul_g_inv(i), ginv(i));
        identity_check(&mut r, format!("e{i}^2 = e{i}"), mul(e(i), e(i)), e(i));
        for k in 1..=n {
            if k != i {
                identity_check(&mut r, format!("e({i},{k})^2 = e({i},{k})"), mul(ep(i, k), ep(i, k)), ep(i, k));
                identity_check(&mut r, format!("e({i},{k}) = e({k},{i})"), ep(i, k), ep(k, i));
            }
        }
        for j in 1..=n {
            identity_check(&mut r, format!("t{j} e{i} = e{i} t{j}"), mul(t(j, 1), e(i)), mul(e(i), t(j, 1)));
        }
        for j in 1..n {
            identity_check(&mut r, format!("e{j} e{i} = e{i} e{j}"), mul(e(j), e(i)), mul(e(i), e(j)));
            if j + 1 != i && i + 1 != j {
                identity_check(&mut r, format!("g{j} g{i} = g{i} g{j}"), mul(g(j), g(i)), mul(g(i), g(j)));
                for (label, gj) in [("", g(j)), ("^-1", ginv(j))] {
                    identity_check(
                        &mut r,
                        format!("g{j}{label} e{i} = e{i} g{j}{label}"),
                        mul(gj.clone(), e(i)),
                        mul(e(i), gj),
                    );
                }
            }
        }
        if i + 1 < n {
            let b = i + 1;
            identity_check(
                &mut r,
                format!("g{i} g{b} g{i} = g{b} g{i} g{b}"),
                mul(mul(g(i), g(b)), g(i)),
                mul(mul(g(b), g(i)), g(b)),
            );
            for (label, gb) in [("", g(b)), ("^-1", ginv(b))] {
                identity_check(
                    &mut r,
                    format!("g{b}{label} e{i} = e({i},{}) g{b}{label}", i + 2),
                    mul(gb.clone(), e(i)),
                    mul(ep(i, i + 2), gb.clone()),
                );
                identity_check(
                    &mut r,
                    format!("e{i} g{b}{label} = g{b}{label} e({i},{})", i + 2),
                    mul(e(i), gb.clone()),
                    mul(gb, ep(i, i + 2)),
                );
            }
        }
        if i > 1 {
            let a = i - 1;
            for (label, ga) in [("", g(a)), ("^-1", ginv(a))] {
                identity_check(
                    &mut r,
                    format!("g{a}{label} e{i} = e({a},{}) g{a}{label}", i + 1),
                    mul(ga.clone(), e(i)),
                    mul(ep(a, i + 1), ga.clone()),
                );
                identity_check(
                    &mut r,
                    format!("e{i} g{a}{label} = g{a}{label} e({a},{})", i + 1),
                    mul(e(i), ga.clone()),
                    mul(ga, ep(a, i + 1)),
                );
            }
        }
    }
    Ok(r)
}
