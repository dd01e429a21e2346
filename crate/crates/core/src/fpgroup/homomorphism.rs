//! Homomorphisms from finitely presented groups to symmetric groups.

use std::collections::HashMap;

use crate::perm::Permutation;

use super::{FreeWord, GroupError, Presentation};

/// Evaluates `w` with generator `i` sent to `images[i - 1]`.
pub(crate) fn evaluate(w: &FreeWord, images: &[Permutation], degree: usize) -> Result<Permutation, GroupError> {
    let mut acc = Permutation::identity(degree);
    for &e in w.letters() {
        let g = &images[e.unsigned_abs() as usize - 1];
        let step = if e > 0 { g.clone() } else { g.inverse() };
        acc = acc.compose(&step)?;
    }
    Ok(acc)
}

/// Whether sending each generator to the given permutation kills every
/// relator. All images must have the same degree.
pub fn check_homomorphism(p: &Presentation, images: &HashMap<String, Permutation>) -> Result<bool, GroupError> {
    let ordered: Vec<Permutation> = p
        .generators()
        .iter()
        .map(|g| {
            images
                .get(g)
                .cloned()
                .ok_or_else(|| GroupError::MissingImage(g.clone()))
        })
        .collect::<Result<_, _>>()?;
    let degree = ordered.first().map_or(0, Permutation::degree);
    for r in p.relators() {
        if !evaluate(r, &ordered, degree)?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}
