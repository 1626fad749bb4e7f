//! Random and exhaustive generators used by the verification suite.

use rand::distributions::{Distribution, Uniform};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::action::PermRep;
use crate::groups::{Elem, FiniteGroup};
use crate::perm::Permutation;
use crate::schreier::Transversal;
use crate::words::{Alphabet, Letter, Word};

/// Reduced word of exactly `len` letters over `generators` generators.
pub fn word_of_length<R: Rng + ?Sized>(rng: &mut R, generators: usize, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    if len == 0 {
        return Word::identity();
    }
    let first = Uniform::new(0, 2 * generators);
    let rest = Uniform::new(0, (2 * generators - 1).max(1));
    for _ in 0..len {
        // Code 2g + s is generator g with sign s; after the first letter the code of the
        // letter that would cancel is skipped.
        let code = match letters.last() {
            None => first.sample(rng),
            Some(top) => {
                let banned = 2 * top.generator + usize::from(!top.inverse);
                let c = rest.sample(rng);
                if c >= banned { c + 1 } else { c }
            }
        };
        letters.push(Letter { generator: code / 2, inverse: code % 2 == 1 });
    }
    Word::reduce(letters)
}

/// Reduced word with length uniform in `0..=max_len`.
pub fn word<R: Rng + ?Sized>(rng: &mut R, generators: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    word_of_length(rng, generators, len)
}

/// Reduced word with length uniform in `1..=max_len`.
pub fn nontrivial_word<R: Rng + ?Sized>(rng: &mut R, generators: usize, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len.max(1));
    word_of_length(rng, generators, len)
}

/// A subgroup element of length at most `max_len`: a random word followed by the
/// inverse of its coset representative.
pub fn subgroup_element<R: Rng + ?Sized>(rng: &mut R, transversal: &Transversal, max_len: usize) -> Word {
    let depth = transversal.words().iter().map(Word::len).max().unwrap_or(0);
    let generators = transversal.rep().alphabet().len();
    let w = word(rng, generators, max_len.saturating_sub(depth));
    let mu = transversal.mu(&w).expect("word over the rep alphabet");
    Word::reduce(w.letters().iter().copied().chain(mu.letters().iter().rev().map(|l| l.inverted())))
}

pub fn permutation<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("shuffle of 0..n")
}

/// Uniformly random transitive representation of the given degree (rejection sampling).
pub fn transitive_rep<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, degree: usize) -> PermRep {
    loop {
        let images = (0..alphabet.len()).map(|_| permutation(rng, degree)).collect();
        let rep = PermRep::new(alphabet.clone(), images, 0).expect("valid images");
        if rep.is_transitive() {
            return rep;
        }
    }
}

pub fn element<R: Rng + ?Sized>(rng: &mut R, group: &FiniteGroup) -> Elem {
    group.get(rng.gen_range(0..group.order())).expect("index in range")
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if prefix.len() == used.len() {
            out.push(Permutation::new(prefix.clone()).expect("distinct points"));
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                extend(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Every transitive representation of the free group on `alphabet` of the given degree,
/// basepoint 0.
pub fn all_transitive_reps(alphabet: &Alphabet, degree: usize) -> Vec<PermRep> {
    let perms = all_permutations(degree);
    let mut tuples: Vec<Vec<Permutation>> = vec![Vec::new()];
    for _ in 0..alphabet.len() {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                perms.iter().map(move |p| {
                    let mut t = t.clone();
                    t.push(p.clone());
                    t
                })
            })
            .collect();
    }
    tuples
        .into_iter()
        .map(|images| PermRep::new(alphabet.clone(), images, 0).expect("valid images"))
        .filter(PermRep::is_transitive)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn permutation_counts() {
        assert_eq!(all_permutations(0).len(), 1);
        assert_eq!(all_permutations(4).len(), 24);
    }

    #[test]
    fn transitive_rep_counts() {
        // Transitive pairs in Sym(n): 1, 3, 26, 426 (counted by orbit enumeration).
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let counts: Vec<usize> = (1..=4).map(|n| all_transitive_reps(&ab, n).len()).collect();
        assert_eq!(counts, vec![1, 3, 26, 426]);
    }

    #[test]
    fn sampled_words_are_reduced_with_requested_length() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for len in 0..30 {
            let w = word_of_length(&mut rng, 2, len);
            assert_eq!(w.len(), len);
        }
    }

    #[test]
    fn subgroup_elements_land_in_subgroup() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ab = Alphabet::new(["a", "b", "c"]).unwrap();
        for _ in 0..50 {
            let rep = transitive_rep(&mut rng, &ab, 5);
            let t = Transversal::new(&rep).unwrap();
            let h = subgroup_element(&mut rng, &t, 30);
            assert!(h.len() <= 30);
            assert!(rep.contains(&h).unwrap());
        }
    }
}
