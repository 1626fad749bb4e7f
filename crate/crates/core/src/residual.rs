//! Finite permutation representations separating nontrivial words from the identity.

use crate::action::PermRep;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::words::{Alphabet, Word};

/// A representation of degree `len(w) + 1` in which `w` sends point 0 to point `len(w)`.
///
/// The letters of `w` lay out a path `0 -> 1 -> ... -> m`, giving each generator a
/// partial injection; each one is then completed by pairing its unused domain points
/// with its unused codomain points in increasing order.
pub fn witness(alphabet: &Alphabet, w: &Word) -> Result<PermRep> {
    alphabet.check(w)?;
    if w.is_identity() {
        return Err(Error::IdentityWitness);
    }
    if !w.is_reduced() {
        return Err(Error::Malformed("witness word must be freely reduced".into()));
    }
    let m = w.len();
    let n = m + 1;
    let mut forward: Vec<Vec<Option<usize>>> = vec![vec![None; n]; alphabet.len()];
    let mut backward: Vec<Vec<Option<usize>>> = vec![vec![None; n]; alphabet.len()];
    for (i, l) in w.letters().iter().enumerate() {
        let (from, to) = if l.inverse { (i + 1, i) } else { (i, i + 1) };
        let (fwd, bwd) = (&mut forward[l.generator], &mut backward[l.generator]);
        // Reducedness keeps the path edges of one generator compatible.
        assert!(
            fwd[from].is_none() && bwd[to].is_none(),
            "conflicting path edge for generator {} at position {i}",
            l.generator
        );
        fwd[from] = Some(to);
        bwd[to] = Some(from);
    }
    let images = forward
        .into_iter()
        .zip(backward)
        .map(|(mut fwd, bwd)| {
            let free_codomain: Vec<usize> = (0..n).filter(|&q| bwd[q].is_none()).collect();
            let free_domain = (0..n).filter(|&p| fwd[p].is_none()).collect::<Vec<_>>();
            for (p, q) in free_domain.into_iter().zip(free_codomain) {
                fwd[p] = Some(q);
            }
            Permutation::new(fwd.into_iter().map(|q| q.expect("completed")).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    PermRep::new(alphabet.clone(), images, 0)
}

/// Block-diagonal sum of the witnesses of every word, on the disjoint union of their
/// point sets. Each word moves the first point of its own block.
pub fn separate_all(alphabet: &Alphabet, words: &[Word]) -> Result<PermRep> {
    if words.is_empty() {
        return Ok(PermRep::trivial(alphabet.clone()));
    }
    let blocks = words.iter().map(|w| witness(alphabet, w)).collect::<Result<Vec<_>>>()?;
    let degree: usize = blocks.iter().map(PermRep::degree).sum();
    let mut images = vec![Vec::with_capacity(degree); alphabet.len()];
    let mut offset = 0;
    for block in &blocks {
        for (g, image) in images.iter_mut().enumerate() {
            image.extend(block.image(g).images().iter().map(|&q| q + offset));
        }
        offset += block.degree();
    }
    let images = images.into_iter().map(Permutation::new).collect::<Result<Vec<_>>>()?;
    PermRep::new(alphabet.clone(), images, 0)
}

/// Start of each word's block in [`separate_all`].
pub fn block_offsets(words: &[Word]) -> Vec<usize> {
    words
        .iter()
        .scan(0, |acc, w| {
            let start = *acc;
            *acc += w.len() + 1;
            Some(start)
        })
        .collect()
}
