//! The Markov trace `tr_d : Y_{d,n}(u) -> C[u^{+-1}, z, x_1, ..., x_{d-1}]`.
//!
//! Computed by stripping the top strand of each basis word:
//! * top level `t_n^k` contributes `x_k` and leaves the lower word;
//! * top level `g_{n-1}...g_i t_i^k` contributes `z` and, by conjugation,
//!   leaves `(g_{n-2}...g_i t_i^k) * lower` in `Y_{d,n-1}`.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff_ring::{rat, Poly};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::yokonuma::{basis_size, e_idempotent, e_shift, random_element, AlgebraElement, BasisWord, Level};

pub type TracePoly = Poly;

/// `x_{k mod d}`, with `x_0 = 1`.
pub fn x_poly(d: u32, k: i64) -> Poly {
    Poly::x(k.rem_euclid(d as i64) as u32)
}

/// `E_d^{(m)} = (1/d) sum_s x_{m+s} x_{d-s}`, indices mod `d`.
pub fn e_poly(d: u32, m: i64) -> TracePoly {
    let mut acc = Poly::zero();
    for s in 0..d as i64 {
        acc += &(&x_poly(d, m + s) * &x_poly(d, -s));
    }
    acc.scale(&rat(1, d as i64))
}

/// Evaluates traces, optionally caching the trace of every basis word seen.
pub struct Tracer {
    d: u32,
    memo: Option<HashMap<BasisWord, Poly>>,
}

impl Tracer {
    pub fn new(d: u32) -> Self {
        Tracer { d, memo: None }
    }

    pub fn with_memo(d: u32) -> Self {
        Tracer { d, memo: Some(HashMap::new()) }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn trace(&mut self, a: &AlgebraElement) -> Result<TracePoly> {
        if a.d() != self.d {
            return Err(Error::MismatchedAlgebra { d1: self.d, n1: a.n(), d2: a.d(), n2: a.n() });
        }
        let mut acc = Poly::zero();
        for (w, c) in a.terms() {
            acc += &(c * &self.trace_word(w)?);
        }
        Ok(acc)
    }

    pub fn trace_word(&mut self, w: &BasisWord) -> Result<TracePoly> {
        if let Some(hit) = self.memo.as_ref().and_then(|m| m.get(w)) {
            return Ok(hit.clone());
        }
        let value = self.strip_top(w)?;
        if let Some(m) = self.memo.as_mut() {
            m.insert(w.clone(), value.clone());
        }
        Ok(value)
    }

    fn strip_top(&mut self, w: &BasisWord) -> Result<TracePoly> {
        let n = w.n();
        let (top, lower) = w.split_top();
        match top {
            Level::Frame(k) => {
                let xk = Poly::x(k);
                if n == 1 {
                    Ok(xk)
                } else {
                    Ok(&xk * &self.trace_word(&lower)?)
                }
            }
            Level::Tail(i, k) => {
                let m = n - 1;
                let mut levels = vec![Level::Frame(0); m];
                levels[m - 1] = if i == m { Level::Frame(k) } else { Level::Tail(i, k) };
                let remnant = BasisWord::from_levels(self.d, &levels)?;
                let remnant = AlgebraElement::from_word(self.d, remnant, Poly::one())?;
                let lower = AlgebraElement::from_word(self.d, lower, Poly::one())?;
                let product = remnant.mul(&lower)?;
                Ok(&Poly::z() * &self.trace(&product)?)
            }
        }
    }
}

/// `tr_d(a)` without memoization.
pub fn trace(a: &AlgebraElement) -> Result<TracePoly> {
    Tracer::new(a.d()).trace(a)
}

fn poly_check(r: &mut Report, name: String, lhs: Result<Poly>, rhs: Result<Poly>) {
    match (lhs, rhs) {
        (Ok(l), Ok(rr)) => {
            let ok = l == rr;
            let detail = if ok { String::new() } else { format!("lhs - rhs = {}", &l - &rr) };
            r.push(name, ok, detail);
        }
        (Err(e), _) | (_, Err(e)) => r.push(name, false, e.to_string()),
    }
}

/// Default guard on `d^{n+1} (n+1)!` for [`trace_properties_suite`].
pub const TRACE_SUITE_BOUND: u128 = 200_000;

/// Checks the trace rules and the derived identities on `sample` random elements.
pub fn trace_properties_suite(d: u32, n: usize, sample: usize, seed: u64) -> Result<Report> {
    let size = basis_size(d, n + 1);
    if size > TRACE_SUITE_BOUND {
        return Err(Error::BoundExceeded(format!("Y({d},{}) has {size} basis words", n + 1)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tr = Tracer::with_memo(d);
    let mut r = Report::new(format!("trace properties Y({d},{n})"));
    let one = AlgebraElement::one(d, n)?;

    poly_check(&mut r, "tr(1) = 1".into(), tr.trace(&one), Ok(Poly::one()));

    let mut ok_lin = true;
    let mut ok_conj = true;
    let mut ok_markov = true;
    let mut ok_frame = true;
    let mut ok_eg = true;
    let mut first_failure = String::new();
    let mut note = |ok: &mut bool, what: &str, msg: String| {
        if *ok && first_failure.is_empty() {
            first_failure = format!("{what}: {msg}");
        }
        *ok = false;
    };
    for _ in 0..sample {
        let a = random_element(d, n, 3, &mut rng)?;
        let b = random_element(d, n, 3, &mut rng)?;
        let ta = tr.trace(&a)?;
        let tb = tr.trace(&b)?;

        let lam = &Poly::u() + &Poly::int(2);
        let mu = Poly::u_pow(-1);
        let lhs = tr.trace(&(&a.scale(&lam) + &b.scale(&mu)))?;
        if lhs != &(&lam * &ta) + &(&mu * &tb) {
            note(&mut ok_lin, "linearity", format!("a = {a}"));
        }

        if tr.trace(&a.mul(&b)?)? != tr.trace(&b.mul(&a)?)? {
            note(&mut ok_conj, "conjugation", format!("a = {a}, b = {b}"));
        }

        let wide = a.widen(n + 1)?;
        if tr.trace(&wide.mul_g(n)?)? != &Poly::z() * &ta {
            note(&mut ok_markov, "markov", format!("a = {a}"));
        }
        for m in 0..d as i64 {
            if tr.trace(&wide.mul_t(n + 1, m)?)? != &x_poly(d, m) * &ta {
                note(&mut ok_frame, "framing", format!("a = {a}, m = {m}"));
            }
        }
        if tr.trace(&wide.mul_e(n)?.mul_g(n)?)? != &Poly::z() * &ta {
            note(&mut ok_eg, "tr(y e g) = z tr(y)", format!("y = {a}"));
        }
    }
    let detail = |ok: bool| if ok { String::new() } else { first_failure.clone() };
    r.push(format!("linearity ({sample} samples)"), ok_lin, detail(ok_lin));
    r.push(format!("tr(ab) = tr(ba) ({sample} pairs)"), ok_conj, detail(ok_conj));
    r.push(format!("tr(a g{n}) = z tr(a)"), ok_markov, detail(ok_markov));
    r.push(format!("tr(a t{}^m) = x_m tr(a)", n + 1), ok_frame, detail(ok_frame));
    r.push(format!("tr(y e{n} g{n}) = z tr(y)"), ok_eg, detail(ok_eg));

    // x_k tr(alpha e^{(m)}) = E^{(m+k)} tr(alpha) for alpha = w t_n^k
    let mut ok_shift = true;
    let mut shift_detail = String::new();
    for _ in 0..sample.div_ceil(4).max(1) {
        let k = rand::Rng::random_range(&mut rng, 0..d as i64);
        let w = if n > 1 { random_element(d, n - 1, 3, &mut rng)?.widen(n)? } else { one.clone() };
        let alpha = w.mul_t(n, k)?;
        let t_alpha = tr.trace(&alpha)?;
        for m in 0..d as i64 {
            let lhs = &x_poly(d, k) * &tr.trace(&alpha.widen(n + 1)?.mul(&e_shift(d, n + 1, n, m)?)?)?;
            let rhs = &e_poly(d, m + k) * &t_alpha;
            if lhs != rhs && ok_shift {
                ok_shift = false;
                shift_detail = format!("alpha = {alpha}, m = {m}");
            }
        }
    }
    r.push("x_k tr(alpha e^(m)) = E^(m+k) tr(alpha)", ok_shift, shift_detail);

    for i in 1..n {
        poly_check(&mut r, format!("tr(e{i}) = E_d"), tr.trace(&e_idempotent(d, n, i)?), Ok(e_poly(d, 0)));
    }

    // shifted sums of t's and of x's collapse to a single shift
    let mut ok_alg = true;
    let mut ok_poly = true;
    let ni = n.max(2);
    for k in 0..d as i64 {
        for l in 0..d as i64 {
            let base = AlgebraElement::one(d, ni)?;
            let mut sum = AlgebraElement::zero(d, ni)?;
            let mut psum = Poly::zero();
            for s in 0..d as i64 {
                sum += &base.mul_t(1, k + s)?.mul_t(2, l - s)?;
                psum += &(&x_poly(d, k + s) * &x_poly(d, l - s));
            }
            let sum = sum.scale_rational(&rat(1, d as i64));
            ok_alg &= sum == e_shift(d, ni, 1, k + l)?;
            ok_poly &= psum.scale(&rat(1, d as i64)) == e_poly(d, k + l);
        }
    }
    r.push("(1/d) sum_s t1^(k+s) t2^(l-s) = e^(k+l)", ok_alg, "");
    r.push("(1/d) sum_s x_(k+s) x_(l-s) = E^(k+l)", ok_poly, "");

    if d == 1 {
        let a = random_element(1, n, 4, &mut rng)?;
        let t = tr.trace(&a)?;
        r.push("d = 1 traces carry no x variables", t.max_x_index() == 0, format!("{t}"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_ring::rat_int;
    use crate::framed_braids::parse_braid;
    use crate::yokonuma::embed_word;

    fn tr_of(text: &str, n: usize, d: u32) -> Poly {
        trace(&embed_word(&parse_braid(text, n).unwrap(), d).unwrap()).unwrap()
    }

    #[test]
    fn e3_shift_two() {
        let expected = &Poly::x(2).scale(&rat(2, 3)) + &Poly::x(1).pow(2).scale(&rat(1, 3));
        assert_eq!(e_poly(3, 2), expected);
        assert_eq!(e_poly(1, 0), Poly::one());
    }

    #[test]
    fn single_strand() {
        for d in 1..=4u32 {
            for k in 0..d as i64 {
                assert_eq!(tr_of(&format!("t1^{k}"), 1, d), x_poly(d, k));
            }
        }
    }

    #[test]
    fn g_squared() {
        for d in 1..=3 {
            let um1 = &Poly::u() - &Poly::one();
            let expected = &(&Poly::one() - &(&um1 * &Poly::z())) + &(&um1 * &e_poly(d, 0));
            assert_eq!(tr_of("s1 s1", 2, d), expected);
        }
    }

    #[test]
    fn memo_agrees_with_plain() {
        let a = embed_word(&parse_braid("s1 t2 s2^-1 s1 t3^2 s2", 3).unwrap(), 3).unwrap();
        assert_eq!(Tracer::with_memo(3).trace(&a).unwrap(), trace(&a).unwrap());
    }

    #[test]
    fn shift_case_two_strands() {
        // tr(t1^{k1} t2^k e_{d,2}) = x_{k1} E^{(k)}
        for d in 1..=3u32 {
            for k1 in 0..d as i64 {
                for k in 0..d as i64 {
                    let a = AlgebraElement::t(d, 3, 1, k1).unwrap().mul_t(2, k).unwrap().mul_e(2).unwrap();
                    assert_eq!(trace(&a).unwrap(), &x_poly(d, k1) * &e_poly(d, k));
                }
            }
        }
    }

    #[test]
    fn suite_small() {
        let r = trace_properties_suite(2, 2, 10, 1).unwrap();
        assert!(r.all_passed(), "{r}");
        let r = trace_properties_suite(1, 3, 5, 2).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn linear_over_rationals() {
        let a = AlgebraElement::g(2, 2, 1).unwrap();
        let t = trace(&a.scale_rational(&rat_int(5))).unwrap();
        assert_eq!(t, Poly::z().scale(&rat_int(5)));
    }
}
