//! Independent evaluation of the `d = 1` invariant on small braid closures,
//! using nothing but a skein relation, Markov moves, the unknot value 1 and
//! the split-union rule. No algebra or trace code is involved.
//!
//! At `d = 1` every `e_i` is 1 and `g^{-1} = u^{-1} g - (u^{-1} - 1)`, so the
//! normalized invariant obeys
//! `a P(L+) - b P(L-) = c P(L0)` with `a = u^{-1}/sqrt(w)`, `b = sqrt(w)` and
//! `c = u^{-1} - 1`. Taking `L+`, `L-` to be the two one-crossing unknots on
//! two strands gives the unlink factor `mu = (a - b) / c`.

use crate::coeff_ring::ComplexVal;
use crate::error::{Error, Result};

pub const ORACLE_CROSSING_LIMIT: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SkeinCoefficients {
    pub a: ComplexVal,
    pub b: ComplexVal,
    pub c: ComplexVal,
}

impl SkeinCoefficients {
    pub fn from_params(u: ComplexVal, sqrt_omega: ComplexVal) -> Self {
        let uinv = u.inv();
        SkeinCoefficients { a: uinv / sqrt_omega, b: sqrt_omega, c: uinv - 1.0 }
    }

    /// Value of a split unknot component.
    pub fn mu(&self) -> ComplexVal {
        (self.a - self.b) / self.c
    }
}

type Word = Vec<(usize, i8)>;

fn free_reduce(mut w: Word) -> Word {
    loop {
        let len = w.len();
        if len >= 2 {
            if let Some(p) = (0..len - 1).find(|&p| w[p].0 == w[p + 1].0 && w[p].1 == -w[p + 1].1) {
                w.drain(p..p + 2);
                continue;
            }
            // cyclic: last letter against first
            if w[0].0 == w[len - 1].0 && w[0].1 == -w[len - 1].1 {
                w.pop();
                w.remove(0);
                continue;
            }
        }
        return w;
    }
}

fn eval(word: Word, n: usize, k: &SkeinCoefficients) -> Result<ComplexVal> {
    let w = free_reduce(word);
    if n == 1 {
        return Ok(ComplexVal::new(1.0, 0.0));
    }
    // split along an unused generator
    if let Some(j) = (1..n).find(|&j| w.iter().all(|&(i, _)| i != j)) {
        let left: Word = w.iter().copied().filter(|&(i, _)| i < j).collect();
        let right: Word = w.iter().filter(|&&(i, _)| i > j).map(|&(i, s)| (i - j, s)).collect();
        return Ok(k.mu() * eval(left, j, k)? * eval(right, n - j, k)?);
    }
    // Markov destabilization, using the top generator or (after flipping) the bottom one
    for flip in [false, true] {
        let w: Word = if flip { w.iter().map(|&(i, s)| (n - i, s)).collect() } else { w.clone() };
        let hits: Vec<usize> = (0..w.len()).filter(|&p| w[p].0 == n - 1).collect();
        if hits.len() == 1 {
            let p = hits[0];
            let mut rest: Word = w[p + 1..].to_vec();
            rest.extend_from_slice(&w[..p]);
            return eval(rest, n - 1, k);
        }
    }
    // switch a crossing that then cancels against its cyclic successor
    let len = w.len();
    let p = (0..len)
        .find(|&p| {
            let q = (p + 1) % len;
            q != p && w[q] == w[p]
        })
        .ok_or(Error::OracleBoundExceeded { limit: ORACLE_CROSSING_LIMIT, got: len })?;
    let (i, sign) = w[p];
    let mut switched = w.clone();
    switched[p] = (i, -sign);
    let mut smoothed = w.clone();
    smoothed.remove(p);
    let other = eval(switched, n, k)?;
    let zero = eval(smoothed, n, k)?;
    Ok(if sign > 0 { (k.b * other + k.c * zero) / k.a } else { (k.a * other - k.c * zero) / k.b })
}

/// Value of the closure of a crossing word with at most three crossings.
pub fn homflypt_oracle(crossings: &[(usize, i8)], n: usize, k: &SkeinCoefficients) -> Result<ComplexVal> {
    if crossings.len() > ORACLE_CROSSING_LIMIT {
        return Err(Error::OracleBoundExceeded { limit: ORACLE_CROSSING_LIMIT, got: crossings.len() });
    }
    if n == 0 || crossings.iter().any(|&(i, _)| i == 0 || i >= n) {
        return Err(Error::Invalid(format!("crossing word does not fit on {n} strands")));
    }
    eval(crossings.to_vec(), n, k)
}
