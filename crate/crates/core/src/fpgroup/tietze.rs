//! Tietze generator elimination and relator-consequence certificates.

use std::collections::HashMap;

use super::{free_reduce_letters, FreeWord, GroupError, Presentation};

/// Removes generator `gen` using relator `defining` (0-based), which must
/// contain exactly one occurrence of `gen^{±1}`. The relator is solved for
/// `gen`, the solution substituted into every other relator, and the
/// results freely and cyclically reduced.
pub fn eliminate_generator(p: &Presentation, gen: &str, defining: usize) -> Result<Presentation, GroupError> {
    let g = p.generator_index(gen)?;
    let r = p.relator(defining)?;
    let occurrences = r.occurrences(g);
    if occurrences != 1 {
        return Err(GroupError::NotEliminable {
            generator: gen.to_string(),
            relator: defining,
            occurrences,
        });
    }
    let k = r
        .letters()
        .iter()
        .position(|e| e.unsigned_abs() as usize == g)
        .expect("one occurrence");
    let rotated = r.rotate(k);
    let rest = FreeWord::new(rotated.letters()[1..].to_vec());
    // g^ε · rest = 1
    let image = if rotated.letters()[0] > 0 { rest.inverse() } else { rest };

    let gi = g as i32;
    let renumber = |w: &FreeWord| {
        FreeWord::new(
            w.letters()
                .iter()
                .map(|&e| if e.abs() > gi { e - e.signum() } else { e })
                .collect(),
        )
    };
    let mut out = Presentation::new(p.generators().iter().filter(|name| *name != gen).cloned())?;
    for (i, rel) in p.relators().iter().enumerate() {
        if i != defining {
            out.add_relator(&renumber(&rel.substitute(g, &image)))?;
        }
    }
    Ok(out)
}

/// Repeatedly eliminates a generator occurring exactly once in some
/// relator. Returns the number of remaining generators if no relators
/// survive; `None` means freeness could not be shown this way.
pub fn is_free_of_rank(p: &Presentation) -> Option<usize> {
    let mut current = p.clone();
    loop {
        if current.relators().is_empty() {
            return Some(current.generator_count());
        }
        let step = current.relators().iter().enumerate().find_map(|(i, r)| {
            (1..=current.generator_count())
                .find(|&g| r.occurrences(g) == 1)
                .map(|g| (i, g))
        });
        let (i, g) = step?;
        let name = current.generators()[g - 1].clone();
        current = eliminate_generator(&current, &name, i).ok()?;
    }
}

/// One factor `u · r_j^{sign} · u⁻¹` of a certificate; `relator` is 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateTerm {
    pub conjugator: FreeWord,
    pub relator: usize,
    pub sign: i8,
}

/// A witness that a word lies in the normal closure of the relators: the
/// product of its terms freely reduces to that word.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConsequenceCertificate {
    pub terms: Vec<CertificateTerm>,
}

impl ConsequenceCertificate {
    pub fn new(terms: Vec<CertificateTerm>) -> Self {
        ConsequenceCertificate { terms }
    }

    /// Freely reduced product of the terms, or `None` if a relator index is
    /// out of range.
    pub fn evaluate(&self, p: &Presentation) -> Option<FreeWord> {
        let mut letters = Vec::new();
        for t in &self.terms {
            let r = p.relators().get(t.relator)?;
            letters.extend_from_slice(t.conjugator.letters());
            if t.sign > 0 {
                letters.extend_from_slice(r.letters());
            } else {
                letters.extend(r.letters().iter().rev().map(|e| -e));
            }
            letters.extend(t.conjugator.letters().iter().rev().map(|e| -e));
        }
        Some(FreeWord::new(free_reduce_letters(&letters)))
    }

    /// Certificate for `w⁻¹` given one for `w`.
    pub fn inverse(&self) -> Self {
        ConsequenceCertificate {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|t| CertificateTerm {
                    sign: -t.sign,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Certificate for `h w h⁻¹` given one for `w`.
    pub fn conjugate(&self, h: &FreeWord) -> Self {
        ConsequenceCertificate {
            terms: self
                .terms
                .iter()
                .map(|t| CertificateTerm {
                    conjugator: FreeWord::product([h, &t.conjugator]),
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Certificate for `w v` given certificates for `w` and `v`.
    pub fn then(&self, other: &ConsequenceCertificate) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        ConsequenceCertificate { terms }
    }
}

/// Checks a certificate by free reduction alone.
pub fn verify_consequence(p: &Presentation, w: &FreeWord, cert: &ConsequenceCertificate) -> bool {
    cert.evaluate(p) == Some(w.free_reduce())
}

/// A word known to be trivial, together with its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma {
    pub word: FreeWord,
    pub certificate: ConsequenceCertificate,
}

impl Lemma {
    pub fn relator(p: &Presentation, index: usize) -> Result<Self, GroupError> {
        Ok(Lemma {
            word: p.relator(index)?.clone(),
            certificate: ConsequenceCertificate::new(vec![CertificateTerm {
                conjugator: FreeWord::empty(),
                relator: index,
                sign: 1,
            }]),
        })
    }

    pub fn product(&self, other: &Lemma) -> Lemma {
        Lemma {
            word: FreeWord::product([&self.word, &other.word]),
            certificate: self.certificate.then(&other.certificate),
        }
    }

    pub fn inverse(&self) -> Lemma {
        Lemma {
            word: self.word.inverse(),
            certificate: self.certificate.inverse(),
        }
    }

    pub fn verify(&self, p: &Presentation) -> bool {
        verify_consequence(p, &self.word, &self.certificate)
    }
}

/// Rewrites a target word towards the empty word while recording a
/// certificate.
///
/// Invariant: `target = P · g · current · g⁻¹` in the free group, where
/// `P` is the product of the recorded terms and `g` the accumulated outer
/// conjugator.
#[derive(Debug, Clone)]
pub struct Derivation {
    target: FreeWord,
    current: Vec<i32>,
    outer: Vec<i32>,
    certificate: ConsequenceCertificate,
}

impl Derivation {
    pub fn new(target: &FreeWord) -> Self {
        Derivation {
            target: target.free_reduce(),
            current: free_reduce_letters(target.letters()),
            outer: Vec::new(),
            certificate: ConsequenceCertificate::default(),
        }
    }

    pub fn current(&self) -> &[i32] {
        &self.current
    }

    pub fn target(&self) -> &FreeWord {
        &self.target
    }

    /// Inserts `ρ⁻¹` at `position`, where `ρ` is the rotation by
    /// `rotation` letters of `lemma^{sign}`, then freely reduces.
    pub fn insert(&mut self, position: usize, lemma: &Lemma, sign: i8, rotation: usize) {
        let word = if sign > 0 {
            lemma.word.clone()
        } else {
            lemma.word.inverse()
        };
        let cert = if sign > 0 {
            lemma.certificate.clone()
        } else {
            lemma.certificate.inverse()
        };
        let rho = word.rotate(rotation);
        // ρ = c⁻¹ · word · c with c the first `rotation` letters
        let mut h = self.outer.clone();
        h.extend_from_slice(&self.current[..position]);
        h.extend(word.letters()[..rotation].iter().rev().map(|e| -e));
        let h = FreeWord::new(free_reduce_letters(&h));
        self.certificate = self.certificate.then(&cert.conjugate(&h));

        let mut next = self.current[..position].to_vec();
        next.extend(rho.letters().iter().rev().map(|e| -e));
        next.extend_from_slice(&self.current[position..]);
        self.current = free_reduce_letters(&next);
    }

    /// Cyclically moves the first `k` letters of the current word to its
    /// end, conjugating accordingly.
    pub fn rotate(&mut self, k: usize) {
        self.outer.extend_from_slice(&self.current[..k]);
        self.outer = free_reduce_letters(&self.outer);
        self.current.rotate_left(k);
        self.current = free_reduce_letters(&self.current);
    }

    /// The certificate, once the current word has been reduced to empty.
    pub fn finish(self) -> Option<ConsequenceCertificate> {
        self.current.is_empty().then_some(self.certificate)
    }
}

/// Searches for a certificate that `w` is trivial.
///
/// First, letters of generators in `left` are moved in front of letters
/// of generators in `right`, each exchange justified by a commutator
/// relator of `p`. Then the word is shortened by replacing any subword
/// longer than half of a (rotated, possibly inverted) relator or lemma by
/// the inverse of the complementary part. The two phases alternate until
/// the word is empty or no rule applies.
pub fn prove_by_commuting(
    p: &Presentation,
    w: &FreeWord,
    left: &[usize],
    right: &[usize],
    lemmas: &[Lemma],
) -> Option<ConsequenceCertificate> {
    let mut bank: Vec<Lemma> = (0..p.relators().len())
        .map(|i| Lemma::relator(p, i).expect("index in range"))
        .collect();
    bank.extend_from_slice(lemmas);
    let commutators = commutator_index(&bank);

    let mut d = Derivation::new(w);
    loop {
        sort_letters(&mut d, left, right, &commutators, &bank)?;
        if d.current().is_empty() {
            return d.finish();
        }
        if !shorten(&mut d, &bank) {
            return None;
        }
    }
}

/// Maps `[a, b, a⁻¹, b⁻¹]` to a bank entry, sign and rotation producing it.
fn commutator_index(bank: &[Lemma]) -> HashMap<(i32, i32), (usize, i8, usize)> {
    let mut out = HashMap::new();
    for (i, lemma) in bank.iter().enumerate() {
        if lemma.word.len() != 4 {
            continue;
        }
        for sign in [1i8, -1] {
            let w = if sign > 0 {
                lemma.word.clone()
            } else {
                lemma.word.inverse()
            };
            for rot in 0..4 {
                let l = w.rotate(rot);
                let l = l.letters();
                if l[2] == -l[0] && l[3] == -l[1] && l[0].abs() != l[1].abs() {
                    out.entry((l[0], l[1])).or_insert((i, sign, rot));
                }
            }
        }
    }
    out
}

fn sort_letters(
    d: &mut Derivation,
    left: &[usize],
    right: &[usize],
    commutators: &HashMap<(i32, i32), (usize, i8, usize)>,
    bank: &[Lemma],
) -> Option<()> {
    let is = |set: &[usize], e: i32| set.contains(&(e.unsigned_abs() as usize));
    loop {
        let cur = d.current();
        let Some(k) = (0..cur.len().saturating_sub(1)).find(|&k| is(right, cur[k]) && is(left, cur[k + 1])) else {
            return Some(());
        };
        let (a, b) = (cur[k], cur[k + 1]);
        // x a b y  ->  x (b a b⁻¹ a⁻¹) a b y  =  x b a y
        let &(i, sign, rot) = commutators.get(&(a, b))?;
        d.insert(k, &bank[i], sign, rot);
    }
}

/// One shortening step, trying rotations of the current word if needed.
fn shorten(d: &mut Derivation, bank: &[Lemma]) -> bool {
    let n = d.current().len();
    for shift in 0..n {
        let mut word = d.current().to_vec();
        word.rotate_left(shift);
        let word = free_reduce_letters(&word);
        if let Some((end, i, sign, rot)) = find_long_piece(&word, bank) {
            if shift > 0 {
                d.rotate(shift);
            }
            d.insert(end, &bank[i], sign, rot);
            return true;
        }
    }
    false
}

/// Finds `u` ending at `end` with `u` a prefix of some rotation `u v` of a
/// bank word (or its inverse) and `|u| > |v|`. Returns the insertion
/// point together with the bank entry, sign and rotation of `v u`.
fn find_long_piece(word: &[i32], bank: &[Lemma]) -> Option<(usize, usize, i8, usize)> {
    for (i, lemma) in bank.iter().enumerate() {
        let m = lemma.word.len();
        if m == 0 {
            continue;
        }
        for sign in [1i8, -1] {
            let w = if sign > 0 {
                lemma.word.clone()
            } else {
                lemma.word.inverse()
            };
            for rot in 0..m {
                let rho = w.rotate(rot);
                let rho = rho.letters();
                for start in 0..word.len() {
                    let len = word[start..].iter().zip(rho).take_while(|(a, b)| a == b).count();
                    if 2 * len > m {
                        // v u is the rotation of w by rot + len.
                        return Some((start + len, i, sign, (rot + len) % m));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::abelianization;
    use super::*;

    fn fw(letters: &[i32]) -> FreeWord {
        FreeWord::new(letters.to_vec())
    }

    #[test]
    fn eliminates_by_solving_the_relator() {
        let mut p = Presentation::new(["a", "b", "c"]).unwrap();
        p.add_relator(&fw(&[1, 2, 3])).unwrap();
        p.add_relator(&fw(&[1, 2, -1, -2])).unwrap();
        let q = eliminate_generator(&p, "c", 0).unwrap();
        assert_eq!(q.generators(), &["a", "b"]);
        assert_eq!(q.relators(), &[fw(&[1, 2, -1, -2])]);
        assert_eq!(abelianization(&p), abelianization(&q));
    }

    #[test]
    fn elimination_substitutes_and_renumbers() {
        let mut p = Presentation::new(["a", "b", "c"]).unwrap();
        p.add_relator(&fw(&[-2, 1, 3])).unwrap(); // b = a c
        p.add_relator(&fw(&[2, 3, -2, -3])).unwrap();
        let q = eliminate_generator(&p, "b", 0).unwrap();
        assert_eq!(q.generators(), &["a", "c"]);
        // a c c c' a' c' -> a c a' c'
        assert_eq!(q.relators(), &[fw(&[1, 2, -1, -2])]);
    }

    #[test]
    fn elimination_needs_a_single_occurrence() {
        let p: Presentation = "gens: a b\nrel: a a b".parse().unwrap();
        assert!(matches!(
            eliminate_generator(&p, "a", 0),
            Err(GroupError::NotEliminable { occurrences: 2, .. })
        ));
        assert!(eliminate_generator(&p, "b", 0).is_ok());
        assert!(eliminate_generator(&p, "b", 1).is_err());
        assert!(eliminate_generator(&p, "z", 0).is_err());
    }

    #[test]
    fn freeness_by_elimination() {
        assert_eq!(is_free_of_rank(&"gens: a b".parse().unwrap()), Some(2));
        assert_eq!(is_free_of_rank(&"gens: a\nrel: a a".parse().unwrap()), None);
        assert_eq!(is_free_of_rank(&"gens: a b c\nrel: a b c".parse().unwrap()), Some(2));
        assert_eq!(is_free_of_rank(&"gens: a b\nrel: a b a' b'".parse().unwrap()), None);
    }

    #[test]
    fn certificate_basics() {
        let p: Presentation = "gens: a b\nrel: a b a' b'\nrel: a a".parse().unwrap();
        let r0 = p.relators()[0].clone();
        let single = ConsequenceCertificate::new(vec![CertificateTerm {
            conjugator: FreeWord::empty(),
            relator: 0,
            sign: 1,
        }]);
        assert!(verify_consequence(&p, &r0, &single));
        let g = fw(&[2, 1]);
        let conj = FreeWord::product([&g, &r0, &g.inverse()]);
        assert!(verify_consequence(&p, &conj, &single.conjugate(&g)));
        assert!(verify_consequence(&p, &r0.inverse(), &single.inverse()));
        assert!(!verify_consequence(&p, &fw(&[1]), &single));
        let bad = ConsequenceCertificate::new(vec![CertificateTerm {
            conjugator: FreeWord::empty(),
            relator: 5,
            sign: 1,
        }]);
        assert!(!verify_consequence(&p, &r0, &bad));
    }

    #[test]
    fn derivation_tracks_rotations_and_inversions() {
        let p: Presentation = "gens: a b c\nrel: a b c\nrel: a a".parse().unwrap();
        let r = Lemma::relator(&p, 0).unwrap();
        // target: b c a, a rotation of r, inserted with rotation 1
        let mut d = Derivation::new(&fw(&[2, 3, 1]));
        d.insert(0, &r, 1, 1);
        let cert = d.finish().unwrap();
        assert!(verify_consequence(&p, &fw(&[2, 3, 1]), &cert));
        // target: c' b' a' a a = (a b c)⁻¹ a²
        let target = fw(&[-3, -2, -1, 1, 1]);
        let mut d = Derivation::new(&target);
        d.insert(0, &r, -1, 0);
        d.insert(0, &Lemma::relator(&p, 1).unwrap(), 1, 0);
        assert!(verify_consequence(&p, &target, &d.finish().unwrap()));
    }

    #[test]
    fn commuting_prover_handles_conjugated_commutators() {
        let p: Presentation = "gens: a b c\nrel: a c a' c'\nrel: b c b' c'".parse().unwrap();
        // c a b c' b' a' is trivial since c commutes with a and b
        let w = fw(&[3, 1, 2, -3, -2, -1]);
        let cert = prove_by_commuting(&p, &w, &[1, 2], &[3], &[]).unwrap();
        assert!(verify_consequence(&p, &w, &cert));
        // a b a' b' is not a consequence
        assert!(prove_by_commuting(&p, &fw(&[1, 2, -1, -2]), &[1, 2], &[3], &[]).is_none());
    }

    #[test]
    fn shortening_uses_lemmas() {
        // x y z = y z x = z x y
        let mut p = Presentation::new(["x", "y", "z"]).unwrap();
        p.add_relator(&fw(&[1, 2, 3, -1, -3, -2])).unwrap();
        p.add_relator(&fw(&[2, 3, 1, -2, -1, -3])).unwrap();
        let derived = Lemma::relator(&p, 0).unwrap().product(&Lemma::relator(&p, 1).unwrap());
        assert!(derived.verify(&p));
        // y (x y z) y⁻¹ (x y z)⁻¹
        let w = fw(&[2, 1, 2, 3, -2, -3, -2, -1]);
        let cert = prove_by_commuting(&p, &w, &[], &[], &[derived]).unwrap();
        assert!(verify_consequence(&p, &w, &cert));
    }
}
