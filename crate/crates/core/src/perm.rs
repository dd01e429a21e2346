//! Permutations of `{1..n}` as images of braid words.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("not a permutation of 1..{0}: {1:?}")]
    NotBijective(usize, Vec<usize>),
    #[error("permutations act on different sets ({0} vs {1} points)")]
    SizeMismatch(usize, usize),
    #[error("transposition ({0} {1}) is outside 1..{2}")]
    OutOfRange(usize, usize, usize),
}

/// A bijection of `{1..n}`, stored 0-based.
///
/// Composition follows function notation: `p.compose(q)` maps `i` to
/// `p(q(i))`. Under this convention the image of a braid word is the
/// composite of its letters' transpositions, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self, PermutationError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(PermutationError::NotBijective(n, images.to_vec()));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|v| v - 1).collect(),
        })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        });
        Permutation { images }
    }

    /// The transposition exchanging `a` and `b` (1-based).
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, PermutationError> {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(PermutationError::OutOfRange(a, b, n));
        }
        let mut p = Permutation::identity(n);
        p.images.swap(a - 1, b - 1);
        Ok(p)
    }

    /// The order-reversing permutation `i -> n + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (0..n).rev().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 1-based image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// 1-based images in one-line notation.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermutationError> {
        if self.degree() != other.degree() {
            return Err(PermutationError::SizeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// In-place right multiplication by the adjacent transposition `s_i`
    /// (0-based `i`), giving `self ∘ s_i`.
    pub(crate) fn swap_positions(&mut self, i: usize) {
        self.images.swap(i, i + 1);
    }

    /// In-place left multiplication by `s_i` (0-based), giving `s_i ∘ self`.
    pub(crate) fn swap_values(&mut self, i: usize) {
        for v in self.images.iter_mut() {
            if *v == i {
                *v = i + 1;
            } else if *v == i + 1 {
                *v = i;
            }
        }
    }

    /// Number of pairs `i < j` with `p(i) > p(j)`.
    pub fn inversions(&self) -> usize {
        let n = self.degree();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lcm = 1usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lcm = num_integer::lcm(lcm, len);
        }
        lcm
    }
}

impl fmt::Display for Permutation {
    /// One-line image notation, e.g. `[2,3,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}
