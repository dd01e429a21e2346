//! Left-greedy Garside normal form in `B_n`.
//!
//! Every braid is written uniquely as `Δ^p · A_1 ⋯ A_ℓ` where each `A_t`
//! is a proper simple element (a permutation braid other than `1` and
//! `Δ`) and each consecutive pair is left-weighted: the starting set of
//! `A_{t+1}` lies inside the finishing set of `A_t`.
//!
//! Simple elements are handled entirely through their permutations. For a
//! simple element with permutation `π` (in the composition convention of
//! [`Permutation`]), `σ_i` is a prefix iff `π⁻¹(i) > π⁻¹(i+1)` and a
//! suffix iff `π(i) > π(i+1)`.

use std::fmt;

use thiserror::Error;

use crate::braid::{delta_word, BraidError, BraidWord, DeltaVariant};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GarsideError {
    #[error("the identity permutation is not a proper simple element")]
    NotProperSimple,
    #[error("incompatible words: {0} vs {1} strands")]
    IncompatibleWords(usize, usize),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// A positive braid in which every pair of strands crosses at most once,
/// identified with its (non-identity) permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleElement {
    perm: Permutation,
}

impl SimpleElement {
    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn strands(&self) -> usize {
        self.perm.degree()
    }

    pub fn is_delta(&self) -> bool {
        self.perm == Permutation::longest(self.perm.degree())
    }

    /// Canonical positive word of minimal length, built by peeling off the
    /// smallest available starting letter.
    pub fn word(&self) -> BraidWord {
        let mut p = self.perm.clone();
        let mut letters = Vec::with_capacity(p.inversions());
        while let Some(i) = first_starting_letter(&p) {
            letters.push(i as i32 + 1);
            p.swap_values(i);
        }
        BraidWord::from_trusted(self.strands(), letters)
    }

    /// Letters `i` (1-based) such that the element starts with `σ_i`.
    pub fn starting_set(&self) -> Vec<usize> {
        let inv = self.perm.inverse();
        descents(inv.raw())
    }

    /// Letters `i` (1-based) such that the element ends with `σ_i`.
    pub fn finishing_set(&self) -> Vec<usize> {
        descents(self.perm.raw())
    }
}

fn descents(images: &[usize]) -> Vec<usize> {
    images
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
        .collect()
}

fn first_starting_letter(p: &Permutation) -> Option<usize> {
    let inv = p.inverse();
    inv.raw().windows(2).position(|w| w[0] > w[1])
}

pub fn permutation_to_simple(p: &Permutation) -> Result<SimpleElement, GarsideError> {
    if p.is_identity() {
        return Err(GarsideError::NotProperSimple);
    }
    Ok(SimpleElement { perm: p.clone() })
}

/// `Δ^p · A_1 ⋯ A_ℓ` in left-greedy form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    strands: usize,
    delta_power: i64,
    factors: Vec<SimpleElement>,
}

impl NormalForm {
    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn delta_power(&self) -> i64 {
        self.delta_power
    }

    pub fn factors(&self) -> &[SimpleElement] {
        &self.factors
    }

    /// Canonical length `ℓ`.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    /// A word for the represented braid: `Δ^p` followed by the canonical
    /// words of the factors.
    pub fn to_word(&self) -> BraidWord {
        let mut letters = Vec::new();
        if self.strands >= 2 && self.delta_power != 0 {
            let delta = delta_word(self.strands, DeltaVariant::AscendingStacks).expect("strand count checked");
            letters.extend_from_slice(delta.pow(self.delta_power).letters());
        }
        for f in &self.factors {
            letters.extend_from_slice(f.word().letters());
        }
        BraidWord::from_trusted(self.strands, letters)
    }

    /// Whether each consecutive factor pair satisfies the left-greedy
    /// condition.
    pub fn is_left_weighted(&self) -> bool {
        self.factors.windows(2).all(|pair| {
            let finish = pair[0].finishing_set();
            pair[1].starting_set().iter().all(|i| finish.contains(i))
        })
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}; factors=", self.delta_power)?;
        for (t, factor) in self.factors.iter().enumerate() {
            if t > 0 {
                write!(f, ";")?;
            }
            write!(f, "{}", factor.perm)?;
        }
        Ok(())
    }
}

/// Moves letters from the front of `b` to the back of `a` until the pair
/// is left-weighted. Returns whether anything moved.
fn left_weight_pair(a: &mut Permutation, b: &mut Permutation) -> bool {
    let n = a.degree();
    let mut moved = false;
    loop {
        let b_inv = b.inverse();
        let (ar, br) = (a.raw(), b_inv.raw());
        let candidate = (0..n.saturating_sub(1)).find(|&i| br[i] > br[i + 1] && ar[i] < ar[i + 1]);
        match candidate {
            Some(i) => {
                a.swap_positions(i);
                b.swap_values(i);
                moved = true;
            }
            None => return moved,
        }
    }
}

struct Normalizer {
    strands: usize,
    delta: Permutation,
    power: i64,
    factors: Vec<Permutation>,
}

impl Normalizer {
    fn new(strands: usize) -> Self {
        Normalizer {
            strands,
            delta: Permutation::longest(strands),
            power: 0,
            factors: Vec::new(),
        }
    }

    fn tau(&self, p: &Permutation) -> Permutation {
        let d = self.delta.raw();
        let mut images = vec![0; self.strands];
        for (i, &v) in p.raw().iter().enumerate() {
            images[d[i]] = d[v];
        }
        Permutation::from_zero_based(images)
    }

    /// Appends a simple factor and restores left-weightedness.
    fn push(&mut self, factor: Permutation) {
        self.factors.push(factor);
        let mut t = self.factors.len() - 1;
        while t > 0 {
            let (head, tail) = self.factors.split_at_mut(t);
            if !left_weight_pair(&mut head[t - 1], &mut tail[0]) {
                break;
            }
            t -= 1;
        }
        if self.factors.last().is_some_and(Permutation::is_identity) {
            self.factors.pop();
        }
    }

    fn push_letter(&mut self, e: i32) {
        let i = e.unsigned_abs() as usize - 1;
        if e > 0 {
            let mut s = Permutation::identity(self.strands);
            s.swap_positions(i);
            self.push(s);
        } else {
            // σ_i^{-1} = Δ^{-1}·(Δσ_i^{-1}); move Δ^{-1} left through the
            // factors with τ.
            self.power -= 1;
            let conjugated: Vec<Permutation> = self.factors.iter().map(|f| self.tau(f)).collect();
            self.factors = conjugated;
            let mut complement = self.delta.clone();
            complement.swap_positions(i);
            self.push(complement);
        }
    }

    fn finish(mut self) -> NormalForm {
        let leading = self.factors.iter().take_while(|f| **f == self.delta).count();
        self.power += leading as i64;
        let factors = self
            .factors
            .drain(leading..)
            .filter(|f| !f.is_identity())
            .map(|perm| SimpleElement { perm })
            .collect();
        NormalForm {
            strands: self.strands,
            delta_power: self.power,
            factors,
        }
    }
}

pub fn normal_form(w: &BraidWord) -> NormalForm {
    let mut nz = Normalizer::new(w.strands());
    for &e in w.letters() {
        nz.push_letter(e);
    }
    nz.finish()
}

pub fn braids_equal(u: &BraidWord, v: &BraidWord) -> Result<bool, GarsideError> {
    if u.strands() != v.strands() {
        return Err(GarsideError::IncompatibleWords(u.strands(), v.strands()));
    }
    if u.exponent_sum() != v.exponent_sum() || u.permutation() != v.permutation() {
        return Ok(false);
    }
    Ok(normal_form(u) == normal_form(v))
}

pub fn is_pure(w: &BraidWord) -> bool {
    w.is_pure()
}
