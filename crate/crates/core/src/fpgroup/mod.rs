//! Finitely presented groups.
//!
//! A [`Presentation`] is a list of generator names and a list of relators,
//! each a [`FreeWord`] over signed 1-based generator indices. Relators are
//! stored cyclically reduced and deduplicated up to rotation and inversion.

mod coset;
mod homomorphism;
mod snf;
mod table;
mod tietze;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use coset::{coset_enumerate, CosetTable, DEFAULT_MAX_COSETS};
pub use homomorphism::check_homomorphism;
pub use snf::{abelianization, smith_normal_form, smith_normal_form_big, AbelianInvariants, SmithForm};
pub use table::{isomorphic_small_groups, multiplication_table, GroupTable, MAX_ISOMORPHISM_ORDER};
pub use tietze::{
    eliminate_generator, is_free_of_rank, prove_by_commuting, verify_consequence, CertificateTerm,
    ConsequenceCertificate, Derivation, Lemma,
};

use crate::perm::PermutationError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid generator name {0:?}")]
    InvalidGeneratorName(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("letter {letter} references a missing generator (have {generators})")]
    LetterOutOfRange { letter: i32, generators: usize },
    #[error("relator index {index} out of range (have {count})")]
    RelatorOutOfRange { index: usize, count: usize },
    #[error("generator {generator:?} occurs {occurrences} times in relator {relator}; need exactly one")]
    NotEliminable {
        generator: String,
        relator: usize,
        occurrences: usize,
    },
    #[error("coset enumeration exceeded {0} cosets")]
    EnumerationOverflow(usize),
    #[error("coset table is not the regular representation")]
    NotRegular,
    #[error("group order {0} exceeds the isomorphism limit")]
    TooLarge(usize),
    #[error("missing image for generator {0:?}")]
    MissingImage(String),
    #[error(transparent)]
    Permutation(#[from] PermutationError),
    #[error("no relator equal to {0} up to rotation and inversion")]
    MissingRelator(String),
    #[error("could not certify relator {0} as a consequence")]
    Uncertified(String),
    #[error("malformed presentation: {0}")]
    Parse(String),
}

/// A word in a free group; letter `e` is generator `|e|` (1-based) raised
/// to `sign(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn new(letters: Vec<i32>) -> Self {
        debug_assert!(!letters.contains(&0));
        FreeWord { letters }
    }

    pub fn empty() -> Self {
        FreeWord::default()
    }

    pub fn generator(index: usize) -> Self {
        FreeWord::new(vec![index as i32])
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

    pub fn free_reduce(&self) -> FreeWord {
        FreeWord::new(free_reduce_letters(&self.letters))
    }

    /// Free reduction followed by stripping inverse pairs from the two ends.
    pub fn cyclic_reduce(&self) -> FreeWord {
        let reduced = free_reduce_letters(&self.letters);
        let (mut lo, mut hi) = (0, reduced.len());
        while hi - lo >= 2 && reduced[lo] == -reduced[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        FreeWord::new(reduced[lo..hi].to_vec())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord::new(self.letters.iter().rev().map(|e| -e).collect())
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FreeWord::new(letters)
    }

    /// Product of the given words, freely reduced.
    pub fn product<'a>(words: impl IntoIterator<Item = &'a FreeWord>) -> FreeWord {
        let mut letters = Vec::new();
        for w in words {
            letters.extend_from_slice(&w.letters);
        }
        FreeWord::new(free_reduce_letters(&letters))
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
        FreeWord::product([a, b, &a.inverse(), &b.inverse()])
    }

    pub fn pow(&self, count: usize) -> FreeWord {
        FreeWord::new(self.letters.repeat(count))
    }

    /// Rotation starting at `offset`.
    pub fn rotate(&self, offset: usize) -> FreeWord {
        let mut letters = self.letters[offset..].to_vec();
        letters.extend_from_slice(&self.letters[..offset]);
        FreeWord::new(letters)
    }

    /// Number of occurrences of generator `index` (either sign).
    pub fn occurrences(&self, index: usize) -> usize {
        self.letters
            .iter()
            .filter(|e| e.unsigned_abs() as usize == index)
            .count()
    }

    pub fn max_generator(&self) -> usize {
        self.letters
            .iter()
            .map(|e| e.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Exponent sum of each generator, indexed 0-based.
    pub fn exponent_vector(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0; generators];
        for &e in &self.letters {
            v[e.unsigned_abs() as usize - 1] += i64::from(e.signum());
        }
        v
    }

    /// Replaces every occurrence of generator `index` with `image` (and its
    /// inverse with `image⁻¹`).
    pub fn substitute(&self, index: usize, image: &FreeWord) -> FreeWord {
        let inv = image.inverse();
        let mut letters = Vec::with_capacity(self.letters.len());
        for &e in &self.letters {
            if e.unsigned_abs() as usize == index {
                letters.extend_from_slice(if e > 0 { &image.letters } else { &inv.letters });
            } else {
                letters.push(e);
            }
        }
        FreeWord::new(letters)
    }

    /// Representative of the word's class under rotation and inversion,
    /// used to deduplicate relators. Assumes the word is cyclically reduced.
    pub(crate) fn cyclic_key(&self) -> Vec<i32> {
        let mut best: Option<Vec<i32>> = None;
        for w in [self.clone(), self.inverse()] {
            for o in 0..w.len().max(1) {
                let r = if w.is_empty() { Vec::new() } else { w.rotate(o).letters };
                if best.as_ref().is_none_or(|b| r < *b) {
                    best = Some(r);
                }
            }
        }
        best.unwrap_or_default()
    }
}

pub(crate) fn free_reduce_letters(letters: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &e in letters {
        if out.last() == Some(&-e) {
            out.pop();
        } else {
            out.push(e);
        }
    }
    out
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// `⟨ generators | relators ⟩`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<FreeWord>,
    keys: HashSet<Vec<i32>>,
}

impl Presentation {
    pub fn new<S: Into<String>>(generators: impl IntoIterator<Item = S>) -> Result<Self, GroupError> {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for g in &generators {
            if !valid_name(g) {
                return Err(GroupError::InvalidGeneratorName(g.clone()));
            }
            if !seen.insert(g.as_str()) {
                return Err(GroupError::DuplicateGenerator(g.clone()));
            }
        }
        Ok(Presentation {
            generators,
            relators: Vec::new(),
            keys: HashSet::new(),
        })
    }

    /// Presentation of the trivial group with no generators.
    pub fn trivial() -> Self {
        Presentation {
            generators: Vec::new(),
            relators: Vec::new(),
            keys: HashSet::new(),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn relator(&self, index: usize) -> Result<&FreeWord, GroupError> {
        self.relators.get(index).ok_or(GroupError::RelatorOutOfRange {
            index,
            count: self.relators.len(),
        })
    }

    /// 1-based index of a named generator.
    pub fn generator_index(&self, name: &str) -> Result<usize, GroupError> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(|i| i + 1)
            .ok_or_else(|| GroupError::UnknownGenerator(name.to_string()))
    }

    pub fn generator_word(&self, name: &str) -> Result<FreeWord, GroupError> {
        Ok(FreeWord::generator(self.generator_index(name)?))
    }

    fn check_word(&self, w: &FreeWord) -> Result<(), GroupError> {
        if let Some(&letter) = w
            .letters()
            .iter()
            .find(|e| e.unsigned_abs() as usize > self.generators.len())
        {
            return Err(GroupError::LetterOutOfRange {
                letter,
                generators: self.generators.len(),
            });
        }
        Ok(())
    }

    /// Adds `w` as a relator after cyclic reduction. Returns `false` when
    /// the reduced word is empty or already present up to rotation and
    /// inversion.
    pub fn add_relator(&mut self, w: &FreeWord) -> Result<bool, GroupError> {
        self.check_word(w)?;
        let reduced = w.cyclic_reduce();
        if reduced.is_empty() {
            return Ok(false);
        }
        if !self.keys.insert(reduced.cyclic_key()) {
            return Ok(false);
        }
        self.relators.push(reduced);
        Ok(true)
    }

    /// Adds the relation `lhs = rhs` as the relator `lhs·rhs⁻¹`.
    pub fn add_relation(&mut self, lhs: &FreeWord, rhs: &FreeWord) -> Result<bool, GroupError> {
        self.add_relator(&lhs.concat(&rhs.inverse()))
    }

    /// Compiles `w_1 = w_2 = … = w_m` to `w_1 w_2⁻¹, w_2 w_3⁻¹, …`.
    pub fn add_equality_chain(&mut self, words: &[FreeWord]) -> Result<(), GroupError> {
        for pair in words.windows(2) {
            self.add_relation(&pair[0], &pair[1])?;
        }
        Ok(())
    }

    /// Same generators, keeping only the relators at `indices` (in the
    /// given order).
    pub fn with_relators(&self, indices: &[usize]) -> Result<Presentation, GroupError> {
        let mut out = Presentation::new(self.generators.clone())?;
        for &i in indices {
            out.add_relator(self.relator(i)?)?;
        }
        Ok(out)
    }

    /// Index of a relator equal to `w` up to rotation and inversion.
    pub fn find_relator(&self, w: &FreeWord) -> Option<usize> {
        let key = w.cyclic_reduce().cyclic_key();
        self.relators.iter().position(|r| r.cyclic_key() == key)
    }

    /// Parses a word of space-separated generator names, `'` marking an
    /// inverse.
    pub fn parse_word(&self, text: &str) -> Result<FreeWord, GroupError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, sign) = match token.strip_suffix('\'') {
                Some(name) => (name, -1),
                None => (token, 1),
            };
            letters.push(sign * self.generator_index(name)? as i32);
        }
        Ok(FreeWord::new(letters))
    }

    pub fn format_word(&self, w: &FreeWord) -> String {
        w.letters()
            .iter()
            .map(|&e| {
                let name = &self.generators[e.unsigned_abs() as usize - 1];
                if e < 0 {
                    format!("{name}'")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens:")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        for r in &self.relators {
            write!(f, "\nrel: {}", self.format_word(r))?;
        }
        Ok(())
    }
}

impl FromStr for Presentation {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| GroupError::Parse("missing `gens:` line".into()))?;
        let gens = header
            .strip_prefix("gens:")
            .ok_or_else(|| GroupError::Parse(format!("expected `gens:`, got {header:?}")))?;
        let mut p = Presentation::new(gens.split_whitespace())?;
        for line in lines {
            let body = line
                .strip_prefix("rel:")
                .ok_or_else(|| GroupError::Parse(format!("expected `rel:`, got {line:?}")))?;
            let w = p.parse_word(body)?;
            p.add_relator(&w)?;
        }
        Ok(p)
    }
}
