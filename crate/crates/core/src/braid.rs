//! Braid words in the Artin generators and the generator families built
//! from them: pure generators `α_ij`, the half twist `Δ_n`, the full twist
//! `Δ_n²`, index shift and `Δ`-conjugation.
//!
//! All rewrites here are syntactic. Deciding equality of braids is the job
//! of [`crate::garside`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("invalid strand count {0}")]
    InvalidStrandCount(usize),
    #[error("letter {letter} is not a generator of B_{strands}")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("words live on different strand counts ({0} vs {1})")]
    StrandMismatch(usize, usize),
    #[error("shifting letter {letter} leaves B_{strands}")]
    ShiftOutOfRange { letter: i32, strands: usize },
    #[error("alpha_{i},{j} is not a pure generator of PB_{strands}")]
    InvalidPureGenerator { i: usize, j: usize, strands: usize },
    #[error("malformed braid word: {0}")]
    Parse(String),
}

/// A word in `σ_1^{±1}, …, σ_{n-1}^{±1}` on a fixed number of strands.
///
/// Letter `e` stands for `σ_{|e|}^{sign(e)}`. Words are never reduced
/// implicitly, so `[1, -1]` and `[]` are different words representing the
/// same braid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::InvalidStrandCount(strands));
        }
        for &letter in &letters {
            if letter == 0 || letter.unsigned_abs() as usize >= strands {
                return Err(BraidError::LetterOutOfRange { letter, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        BraidWord::new(strands, Vec::new())
    }

    pub(crate) fn from_trusted(strands: usize, letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&e| e != 0 && (e.unsigned_abs() as usize) < strands));
        BraidWord { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Cancels adjacent `e, -e` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &e in &self.letters {
            if out.last() == Some(&-e) {
                out.pop();
            } else {
                out.push(e);
            }
        }
        BraidWord::from_trusted(self.strands, out)
    }

    /// Image in the symmetric group; letter `e` maps to `(|e| |e|+1)`.
    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for &e in &self.letters {
            p.swap_positions(e.unsigned_abs() as usize - 1);
        }
        p
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().is_identity()
    }

    /// Sum of the letter signs: the image under `B_n -> Z`.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|e| i64::from(e.signum())).sum()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord::from_trusted(self.strands, self.letters.iter().rev().map(|e| -e).collect())
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord::from_trusted(self.strands, letters))
    }

    /// Concatenation of `count` copies; negative counts repeat the inverse.
    pub fn pow(&self, count: i64) -> BraidWord {
        let base = if count < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * count.unsigned_abs() as usize);
        for _ in 0..count.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord::from_trusted(self.strands, letters)
    }

    /// Raises every index by one, `σ_i -> σ_{i+1}`.
    pub fn shift(&self) -> Result<BraidWord, BraidError> {
        let mut letters = Vec::with_capacity(self.letters.len());
        for &e in &self.letters {
            if e.unsigned_abs() as usize + 1 >= self.strands {
                return Err(BraidError::ShiftOutOfRange {
                    letter: e,
                    strands: self.strands,
                });
            }
            letters.push(e + e.signum());
        }
        Ok(BraidWord::from_trusted(self.strands, letters))
    }

    /// The word for `Δ w Δ^{-1}`, obtained letterwise from `σ_i -> σ_{n-i}`.
    pub fn conjugate_by_delta(&self) -> BraidWord {
        let n = self.strands as i32;
        BraidWord::from_trusted(
            self.strands,
            self.letters.iter().map(|&e| e.signum() * (n - e.abs())).collect(),
        )
    }

    /// Same letters read in `B_m` for `m >= strands`.
    pub fn embed(&self, strands: usize) -> Result<BraidWord, BraidError> {
        if strands < self.strands {
            return Err(BraidError::StrandMismatch(self.strands, strands));
        }
        Ok(BraidWord::from_trusted(strands, self.letters.clone()))
    }
}

impl fmt::Display for BraidWord {
    /// Two-line text format: `n=<strands>` then the letters.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.strands)?;
        let body: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "{}", body.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines();
        let header = lines
            .next()
            .ok_or_else(|| BraidError::Parse("missing `n=<strands>` header".into()))?;
        let strands = header
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| BraidError::Parse(format!("bad header {header:?}")))?;
        let letters = match lines.next() {
            None => Vec::new(),
            Some(body) => body
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i32>()
                        .map_err(|_| BraidError::Parse(format!("bad letter {tok:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(BraidError::Parse("trailing content after letters".into()));
        }
        BraidWord::new(strands, letters)
    }
}

/// The pure braid generator `α_ij` of `PB_n`, `1 <= i < j <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PureGenerator {
    i: usize,
    j: usize,
    strands: usize,
}

impl PureGenerator {
    pub fn new(i: usize, j: usize, strands: usize) -> Result<Self, BraidError> {
        if i == 0 || i >= j || j > strands {
            return Err(BraidError::InvalidPureGenerator { i, j, strands });
        }
        Ok(PureGenerator { i, j, strands })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    /// `σ_{j-1} … σ_{i+1} σ_i² σ_{i+1}^{-1} … σ_{j-1}^{-1}`.
    pub fn expand(&self) -> BraidWord {
        let (i, j) = (self.i as i32, self.j as i32);
        let mut letters: Vec<i32> = (i + 1..j).rev().collect();
        letters.push(i);
        letters.push(i);
        letters.extend((i + 1..j).map(|e| -e));
        BraidWord::from_trusted(self.strands, letters)
    }
}

/// The four positive words for the half twist `Δ_n`, in display order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaVariant {
    /// `σ_1(σ_2σ_1)…(σ_{n-1}…σ_1)`
    AscendingStacks,
    /// `(σ_1…σ_{n-1})…(σ_1σ_2)σ_1`
    DescendingStacks,
    /// `(σ_{n-1}…σ_1)(σ_{n-1}…σ_2)…σ_{n-1}`
    ReverseStacks,
    /// `σ_{n-1}(σ_{n-2}σ_{n-1})…(σ_1…σ_{n-1})`
    TailStacks,
}

impl DeltaVariant {
    pub const ALL: [DeltaVariant; 4] = [
        DeltaVariant::AscendingStacks,
        DeltaVariant::DescendingStacks,
        DeltaVariant::ReverseStacks,
        DeltaVariant::TailStacks,
    ];

    /// 1-based position in display order.
    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index.checked_sub(1)?).copied()
    }
}

/// The seven words for the full twist `Δ_n²`, in display order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FullTwistVariant {
    A,
    B,
    C,
    D,
    DPrime,
    E,
    F,
}

impl FullTwistVariant {
    pub const ALL: [FullTwistVariant; 7] = [
        FullTwistVariant::A,
        FullTwistVariant::B,
        FullTwistVariant::C,
        FullTwistVariant::D,
        FullTwistVariant::DPrime,
        FullTwistVariant::E,
        FullTwistVariant::F,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FullTwistVariant::A => "A",
            FullTwistVariant::B => "B",
            FullTwistVariant::C => "C",
            FullTwistVariant::D => "D",
            FullTwistVariant::DPrime => "D'",
            FullTwistVariant::E => "E",
            FullTwistVariant::F => "F",
        }
    }
}

impl FromStr for FullTwistVariant {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(FullTwistVariant::A),
            "B" | "b" => Ok(FullTwistVariant::B),
            "C" | "c" => Ok(FullTwistVariant::C),
            "D" | "d" => Ok(FullTwistVariant::D),
            "D'" | "d'" | "Dp" | "dp" => Ok(FullTwistVariant::DPrime),
            "E" | "e" => Ok(FullTwistVariant::E),
            "F" | "f" => Ok(FullTwistVariant::F),
            other => Err(BraidError::Parse(format!("unknown full-twist variant {other:?}"))),
        }
    }
}

fn ascending(lo: i32, hi: i32) -> impl Iterator<Item = i32> {
    lo..=hi
}

fn descending(hi: i32, lo: i32) -> impl Iterator<Item = i32> {
    (lo..=hi).rev()
}

pub fn delta_word(n: usize, variant: DeltaVariant) -> Result<BraidWord, BraidError> {
    if n < 2 {
        return Err(BraidError::InvalidStrandCount(n));
    }
    let top = n as i32 - 1;
    let mut letters = Vec::with_capacity(n * (n - 1) / 2);
    match variant {
        DeltaVariant::AscendingStacks => {
            for m in 1..=top {
                letters.extend(descending(m, 1));
            }
        }
        DeltaVariant::DescendingStacks => {
            for m in (1..=top).rev() {
                letters.extend(ascending(1, m));
            }
        }
        DeltaVariant::ReverseStacks => {
            for m in 1..=top {
                letters.extend(descending(top, m));
            }
        }
        DeltaVariant::TailStacks => {
            for m in (1..=top).rev() {
                letters.extend(ascending(m, top));
            }
        }
    }
    Ok(BraidWord::from_trusted(n, letters))
}

/// `σ_m σ_{m-1} … σ_2 σ_1² σ_2 … σ_m`
fn hook(m: i32) -> Vec<i32> {
    let mut block: Vec<i32> = descending(m, 1).collect();
    block.extend(ascending(1, m));
    block
}

/// `α_1j α_2j … α_{j-1,j}` expanded into Artin letters.
fn alpha_column(j: usize, strands: usize) -> Vec<i32> {
    (1..j)
        .flat_map(|i| PureGenerator { i, j, strands }.expand().letters)
        .collect()
}

pub fn full_twist_word(n: usize, variant: FullTwistVariant) -> Result<BraidWord, BraidError> {
    if n < 2 {
        return Err(BraidError::InvalidStrandCount(n));
    }
    let top = n as i32 - 1;
    let mut letters = Vec::new();
    match variant {
        FullTwistVariant::A => {
            for m in 1..=top {
                letters.extend(hook(m));
            }
        }
        FullTwistVariant::B => {
            for m in (1..=top).rev() {
                letters.extend(hook(m));
            }
        }
        FullTwistVariant::C => {
            for m in (2..=top).rev() {
                letters.extend(ascending(1, m));
            }
            letters.extend([1, 1]);
            for m in 2..=top {
                letters.extend(descending(m, 1));
            }
        }
        FullTwistVariant::D => {
            for _ in 0..n {
                letters.extend(ascending(1, top));
            }
        }
        FullTwistVariant::DPrime => {
            for _ in 0..n {
                letters.extend(descending(top, 1));
            }
        }
        FullTwistVariant::E => {
            for j in (2..=n).rev() {
                letters.extend(alpha_column(j, n));
            }
        }
        FullTwistVariant::F => {
            for j in 2..=n {
                letters.extend(alpha_column(j, n));
            }
        }
    }
    Ok(BraidWord::from_trusted(n, letters))
}

/// `σ_1 σ_2 … σ_k` on `strands` strands.
pub fn ascending_run(strands: usize, k: usize) -> Result<BraidWord, BraidError> {
    BraidWord::new(strands, ascending(1, k as i32).collect())
}

/// `σ_k … σ_2 σ_1` on `strands` strands.
pub fn descending_run(strands: usize, k: usize) -> Result<BraidWord, BraidError> {
    BraidWord::new(strands, descending(k as i32, 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn validates_letters() {
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(0, vec![]).is_err());
        assert!(BraidWord::new(1, vec![]).is_ok());
        assert!(BraidWord::new(3, vec![-2, 1]).is_ok());
    }

    #[test]
    fn free_reduction_examples() {
        assert_eq!(w(3, &[1, -1]).free_reduce(), w(3, &[]));
        assert_eq!(w(3, &[1, 2, -2, -1, 1]).free_reduce(), w(3, &[1]));
        assert_eq!(w(4, &[1, 3]).free_reduce(), w(4, &[1, 3]));
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(w(3, &[1]).permutation().images(), vec![2, 1, 3]);
        assert_eq!(w(3, &[1, 2]).permutation().images(), vec![2, 3, 1]);
        assert!(w(3, &[1, 1]).permutation().is_identity());
    }

    #[test]
    fn pure_generator_expansion() {
        let a = |i, j, n| PureGenerator::new(i, j, n).unwrap().expand();
        assert_eq!(a(1, 2, 3), w(3, &[1, 1]));
        assert_eq!(a(1, 3, 3), w(3, &[2, 1, 1, -2]));
        assert_eq!(a(2, 3, 3), w(3, &[2, 2]));
        assert!(PureGenerator::new(2, 2, 3).is_err());
        assert!(PureGenerator::new(1, 4, 3).is_err());
        assert!(PureGenerator::new(0, 1, 3).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_word(3, DeltaVariant::AscendingStacks).unwrap(), w(3, &[1, 2, 1]));
        assert_eq!(delta_word(3, DeltaVariant::TailStacks).unwrap(), w(3, &[2, 1, 2]));
        for v in DeltaVariant::ALL {
            assert_eq!(delta_word(2, v).unwrap(), w(2, &[1]));
        }
        assert_eq!(
            delta_word(1, DeltaVariant::AscendingStacks),
            Err(BraidError::InvalidStrandCount(1))
        );
        assert_eq!(DeltaVariant::from_index(3), Some(DeltaVariant::ReverseStacks));
        assert_eq!(DeltaVariant::from_index(0), None);
        assert_eq!(DeltaVariant::from_index(5), None);
    }

    #[test]
    fn full_twist_examples() {
        use FullTwistVariant::*;
        assert_eq!(full_twist_word(2, A).unwrap(), w(2, &[1, 1]));
        assert_eq!(full_twist_word(3, D).unwrap(), w(3, &[1, 2, 1, 2, 1, 2]));
        assert_eq!(full_twist_word(3, F).unwrap(), w(3, &[1, 1, 2, 1, 1, -2, 2, 2]));
        assert!(full_twist_word(1, E).is_err());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(w(4, &[1, 2, -1]).shift().unwrap(), w(4, &[2, 3, -2]));
        assert_eq!(w(6, &[1, 2, 4, 3]).shift().unwrap(), w(6, &[2, 3, 5, 4]));
        assert!(w(5, &[1, 2, 4, 3]).shift().is_err());
        assert!(matches!(
            w(3, &[2]).shift(),
            Err(BraidError::ShiftOutOfRange { letter: 2, strands: 3 })
        ));
    }

    #[test]
    fn delta_conjugation_examples() {
        assert_eq!(w(4, &[1]).conjugate_by_delta(), w(4, &[3]));
        assert_eq!(w(3, &[1, 2]).conjugate_by_delta(), w(3, &[2, 1]));
        assert_eq!(w(2, &[1, 1]).conjugate_by_delta(), w(2, &[1, 1]));
    }

    #[test]
    fn exponent_sum_examples() {
        // n(n-1)/2 and n(n-1), counted from the letters
        let delta = delta_word(4, DeltaVariant::AscendingStacks).unwrap();
        assert_eq!(delta.letters().iter().filter(|&&e| e > 0).count(), 6);
        assert_eq!(delta.exponent_sum(), 6);
        assert_eq!(full_twist_word(4, FullTwistVariant::D).unwrap().exponent_sum(), 12);
        assert_eq!(w(3, &[1, -2]).exponent_sum(), 0);
    }

    #[test]
    fn mismatched_strands_are_rejected() {
        assert_eq!(w(3, &[1]).concat(&w(4, &[1])), Err(BraidError::StrandMismatch(3, 4)));
    }

    #[test]
    fn text_format() {
        let word = w(3, &[1, 2, -1]);
        assert_eq!(word.to_string(), "n=3\n1 2 -1");
        assert_eq!("n=3\n1 2 -1\n".parse::<BraidWord>().unwrap(), word);
        assert_eq!("n=3\n\n".parse::<BraidWord>().unwrap(), w(3, &[]));
        assert_eq!("n=3".parse::<BraidWord>().unwrap(), w(3, &[]));
        assert!("n=3\n1 x".parse::<BraidWord>().is_err());
        assert!("m=3\n1".parse::<BraidWord>().is_err());
        assert!("n=3\n3".parse::<BraidWord>().is_err());
    }
}
