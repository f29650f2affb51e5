//! Framed braid words, the split form `t_1^{a_1}...t_n^{a_n} sigma` and the
//! group law of the framed braid group.
//!
//! Strand indices are 1-based throughout. Permutations are 0-based vectors
//! `perm[p] = q` meaning the strand entering at position `p` leaves at
//! position `q` when the letters are read left to right.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BraidLetter {
    /// `sigma_i^{sign}` with `sign = +1` or `-1`.
    Sigma { i: usize, sign: i8 },
    /// `t_j^{exp}`.
    Frame { j: usize, exp: i64 },
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BraidLetter::Sigma { i, sign } if sign < 0 => write!(f, "s{i}^-1"),
            BraidLetter::Sigma { i, .. } => write!(f, "s{i}"),
            BraidLetter::Frame { j, exp: 1 } => write!(f, "t{j}"),
            BraidLetter::Frame { j, exp } => write!(f, "t{j}^{exp}"),
        }
    }
}

fn check_letter(letter: &BraidLetter, n: usize) -> Result<()> {
    match *letter {
        BraidLetter::Sigma { i, sign } => {
            if i == 0 || i >= n {
                return Err(Error::Index { index: i as i64, context: format!("s{i} on {n} strands") });
            }
            if sign != 1 && sign != -1 {
                return Err(Error::Invalid(format!("crossing sign {sign}")));
            }
        }
        BraidLetter::Frame { j, .. } => {
            if j == 0 || j > n {
                return Err(Error::Index { index: j as i64, context: format!("t{j} on {n} strands") });
            }
        }
    }
    Ok(())
}

/// Follows the strands through a list of crossings.
fn crossing_permutation(n: usize, crossings: impl IntoIterator<Item = usize>) -> Vec<usize> {
    // at[q] = strand now at position q
    let mut at: Vec<usize> = (0..n).collect();
    for i in crossings {
        at.swap(i - 1, i);
    }
    let mut perm = vec![0; n];
    for (q, &s) in at.iter().enumerate() {
        perm[s] = q;
    }
    perm
}

fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if !seen[start] {
            cycles += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
    }
    cycles
}

/// A word in `sigma_i^{+-1}` and `t_j^m` on `n` strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FramedBraidWord {
    n: usize,
    letters: Vec<BraidLetter>,
}

impl FramedBraidWord {
    pub fn new(n: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("a braid needs at least one strand".into()));
        }
        for l in &letters {
            check_letter(l, n)?;
        }
        Ok(FramedBraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.letters.iter().filter(|l| matches!(l, BraidLetter::Sigma { .. })).count()
    }

    pub fn concat(&self, other: &FramedBraidWord) -> Result<FramedBraidWord> {
        if self.n != other.n {
            return Err(Error::MismatchedStrands { left: self.n, right: other.n });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(FramedBraidWord { n: self.n, letters })
    }

    pub fn push(&mut self, letter: BraidLetter) -> Result<()> {
        check_letter(&letter, self.n)?;
        self.letters.push(letter);
        Ok(())
    }

    /// The same word seen on `m >= n` strands.
    pub fn widen(&self, m: usize) -> Result<FramedBraidWord> {
        if m < self.n {
            return Err(Error::MismatchedStrands { left: self.n, right: m });
        }
        Ok(FramedBraidWord { n: m, letters: self.letters.clone() })
    }

    /// Markov stabilization: one more strand and `sigma_n^{sign}` appended.
    pub fn stabilized(&self, sign: i8) -> Result<FramedBraidWord> {
        let mut w = self.widen(self.n + 1)?;
        w.push(BraidLetter::Sigma { i: self.n, sign })?;
        Ok(w)
    }

    /// Exponent sum of the crossings.
    pub fn exponent(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| match l {
                BraidLetter::Sigma { sign, .. } => *sign as i64,
                BraidLetter::Frame { .. } => 0,
            })
            .sum()
    }

    pub fn permutation(&self) -> Vec<usize> {
        crossing_permutation(
            self.n,
            self.letters.iter().filter_map(|l| match l {
                BraidLetter::Sigma { i, .. } => Some(*i),
                BraidLetter::Frame { .. } => None,
            }),
        )
    }

    /// Number of components of the closure.
    pub fn component_count(&self) -> usize {
        cycle_count(&self.permutation())
    }

    /// Collects all framings at the top.
    pub fn split_form(&self) -> SplitFramedBraid {
        let mut framings = vec![0i64; self.n];
        let mut crossings = Vec::new();
        // at[q] = top position of the strand currently at position q
        let mut at: Vec<usize> = (0..self.n).collect();
        for l in &self.letters {
            match *l {
                BraidLetter::Sigma { i, sign } => {
                    crossings.push((i, sign));
                    at.swap(i - 1, i);
                }
                BraidLetter::Frame { j, exp } => framings[at[j - 1]] += exp,
            }
        }
        SplitFramedBraid { n: self.n, framings, crossings }
    }
}

impl fmt::Display for FramedBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `t_1^{a_1} ... t_n^{a_n}` followed by a crossing word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitFramedBraid {
    pub n: usize,
    pub framings: Vec<i64>,
    pub crossings: Vec<(usize, i8)>,
}

impl SplitFramedBraid {
    pub fn identity(n: usize) -> Self {
        SplitFramedBraid { n, framings: vec![0; n], crossings: Vec::new() }
    }

    pub fn permutation(&self) -> Vec<usize> {
        crossing_permutation(self.n, self.crossings.iter().map(|c| c.0))
    }

    pub fn exponent(&self) -> i64 {
        self.crossings.iter().map(|c| c.1 as i64).sum()
    }

    /// Group law: `(a, sigma)(b, tau) = (a_i + b_{pi_sigma(i)}, sigma tau)`.
    pub fn braid_mul(&self, other: &SplitFramedBraid) -> Result<SplitFramedBraid> {
        if self.n != other.n {
            return Err(Error::MismatchedStrands { left: self.n, right: other.n });
        }
        let perm = self.permutation();
        let framings = (0..self.n).map(|i| self.framings[i] + other.framings[perm[i]]).collect();
        let mut crossings = self.crossings.clone();
        crossings.extend_from_slice(&other.crossings);
        Ok(SplitFramedBraid { n: self.n, framings, crossings })
    }

    /// Framings reduced into `0..d`.
    pub fn mod_reduce(&self, d: u32) -> Result<SplitFramedBraid> {
        if d == 0 {
            return Err(Error::Invalid("modulus must be at least 1".into()));
        }
        let framings = self.framings.iter().map(|a| a.rem_euclid(d as i64)).collect();
        Ok(SplitFramedBraid { n: self.n, framings, crossings: self.crossings.clone() })
    }

    pub fn to_word(&self) -> FramedBraidWord {
        let mut letters: Vec<BraidLetter> = self
            .framings
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(j, &exp)| BraidLetter::Frame { j: j + 1, exp })
            .collect();
        letters.extend(self.crossings.iter().map(|&(i, sign)| BraidLetter::Sigma { i, sign }));
        FramedBraidWord { n: self.n, letters }
    }
}

fn parse_token(tok: &str, offset: usize, n: usize) -> Result<BraidLetter> {
    let perr = |at: usize, message: &str| Error::Parse { offset: offset + at, message: message.into() };
    let bytes = tok.as_bytes();
    let kind = bytes[0];
    if kind != b's' && kind != b't' {
        return Err(perr(0, "expected 's' or 't'"));
    }
    let digits = bytes[1..].iter().take_while(|b| b.is_ascii_digit()).count();
    if digits == 0 {
        return Err(perr(1, "expected a strand index"));
    }
    let index: usize = tok[1..1 + digits].parse().map_err(|_| perr(1, "strand index too large"))?;
    let rest = &tok[1 + digits..];
    let power_at = 1 + digits;
    let exp: Option<i64> = if rest.is_empty() {
        None
    } else if let Some(p) = rest.strip_prefix('^') {
        if p.is_empty() {
            return Err(perr(power_at + 1, "expected an exponent after '^'"));
        }
        Some(p.parse().map_err(|_| perr(power_at + 1, "expected an integer exponent"))?)
    } else {
        return Err(perr(power_at, "expected '^' or whitespace"));
    };
    let letter = if kind == b's' {
        match exp {
            None => BraidLetter::Sigma { i: index, sign: 1 },
            Some(-1) => BraidLetter::Sigma { i: index, sign: -1 },
            Some(_) => return Err(perr(power_at + 1, "crossing exponent must be -1")),
        }
    } else {
        BraidLetter::Frame { j: index, exp: exp.unwrap_or(1) }
    };
    check_letter(&letter, n)?;
    Ok(letter)
}

/// Parses whitespace-separated tokens `s<i>`, `s<i>^-1`, `t<j>`, `t<j>^<m>`.
pub fn parse_braid(text: &str, n: usize) -> Result<FramedBraidWord> {
    if n == 0 {
        return Err(Error::Invalid("a braid needs at least one strand".into()));
    }
    let mut letters = Vec::new();
    let mut pos = 0;
    for tok in text.split_ascii_whitespace() {
        let offset = pos + text[pos..].find(tok).unwrap_or(0);
        letters.push(parse_token(tok, offset, n)?);
        pos = offset + tok.len();
    }
    Ok(FramedBraidWord { n, letters })
}

/// Random word of `len` letters; about a third are framings with `|exp| <= max_frame`.
pub fn random_word<R: Rng + ?Sized>(n: usize, len: usize, max_frame: i64, rng: &mut R) -> FramedBraidWord {
    let mut letters = Vec::with_capacity(len);
    for _ in 0..len {
        let frame = n == 1 || (max_frame > 0 && rng.random_range(0..3) == 0);
        letters.push(if frame {
            BraidLetter::Frame { j: rng.random_range(1..=n), exp: rng.random_range(-max_frame..=max_frame) }
        } else {
            BraidLetter::Sigma { i: rng.random_range(1..n), sign: if rng.random_bool(0.5) { 1 } else { -1 } }
        });
    }
    FramedBraidWord { n, letters }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, n: usize) -> FramedBraidWord {
        parse_braid(text, n).unwrap()
    }

    #[test]
    fn parse_examples() {
        let word = w("s1 s1 t1^3 t2^-1", 2);
        assert_eq!(
            word.letters(),
            &[
                BraidLetter::Sigma { i: 1, sign: 1 },
                BraidLetter::Sigma { i: 1, sign: 1 },
                BraidLetter::Frame { j: 1, exp: 3 },
                BraidLetter::Frame { j: 2, exp: -1 },
            ]
        );
        assert_eq!(w("s1^-1", 2).letters(), &[BraidLetter::Sigma { i: 1, sign: -1 }]);
        assert!(matches!(parse_braid("s3", 2), Err(Error::Index { .. })));
        assert!(matches!(parse_braid("t0", 2), Err(Error::Index { .. })));
        assert!(w("", 3).is_empty());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert_eq!(parse_braid("s1 x2", 3), Err(Error::Parse { offset: 3, message: "expected 's' or 't'".into() }));
        assert!(matches!(parse_braid("s1  s2^2", 3), Err(Error::Parse { offset: 7, .. })));
        assert!(matches!(parse_braid("t", 3), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse_braid("t1^", 3), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(parse_braid("t1x", 3), Err(Error::Parse { offset: 2, .. })));
    }

    #[test]
    fn display_round_trips() {
        let word = w("s2 t1 s1^-1 t3^-4 t2^0", 3);
        assert_eq!(w(&word.to_string(), 3), word);
    }

    #[test]
    fn split_form_examples() {
        let s = w("t1^2", 3).split_form();
        assert_eq!(s.framings, vec![2, 0, 0]);
        assert!(s.crossings.is_empty());
        let s = w("s1 t1", 2).split_form();
        assert_eq!(s.framings, vec![0, 1]);
        assert_eq!(s.crossings, vec![(1, 1)]);
    }

    #[test]
    fn braid_mul_examples() {
        let e = SplitFramedBraid::identity(2);
        let a = w("s1 t2^3", 2).split_form();
        assert_eq!(e.braid_mul(&a).unwrap(), a);
        let t1 = w("t1", 2).split_form();
        assert_eq!(t1.braid_mul(&t1).unwrap().framings, vec![2, 0]);
        let prod = w("s1", 2).split_form().braid_mul(&t1).unwrap();
        assert_eq!(prod, w("t2 s1", 2).split_form());
    }

    #[test]
    fn exponent_and_reduction() {
        assert_eq!(w("s1 s1 s1 t1^4", 2).exponent(), 3);
        assert_eq!(w("s1^-1 s1^-1 s1^-1 t1", 2).exponent(), -3);
        assert_eq!(w("t1^5", 1).exponent(), 0);
        let s = SplitFramedBraid { n: 2, framings: vec![5, -1], crossings: vec![] };
        assert_eq!(s.mod_reduce(3).unwrap().framings, vec![2, 2]);
        assert_eq!(s.mod_reduce(1).unwrap().framings, vec![0, 0]);
        let r = s.mod_reduce(3).unwrap();
        assert_eq!(r.mod_reduce(3).unwrap(), r);
    }

    #[test]
    fn components() {
        assert_eq!(w("s1 s1", 2).component_count(), 2);
        assert_eq!(w("s1 s1 s1", 2).component_count(), 1);
        assert_eq!(w("", 3).component_count(), 3);
        assert_eq!(w("s1 s2", 3).component_count(), 1);
    }
}
