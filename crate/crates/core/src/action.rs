//! Finite-index subgroups of a free group, given by a transitive right action on
//! cosets with a distinguished basepoint (the trivial coset).

use std::collections::VecDeque;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, DEFAULT_ELEMENT_CAP};
use crate::perm::Permutation;
use crate::words::{Alphabet, Letter, Word};

/// A homomorphism from the free group on `alphabet` to `Sym(degree)`, one image per
/// generator. The subgroup it encodes is the stabilizer of `basepoint`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermRep {
    alphabet: Alphabet,
    degree: usize,
    images: Vec<Permutation>,
    inverses: Vec<Permutation>,
    basepoint: usize,
}

impl PermRep {
    pub fn new(alphabet: Alphabet, images: Vec<Permutation>, basepoint: usize) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::Malformed(format!(
                "{} generator images for an alphabet of size {}",
                images.len(),
                alphabet.len()
            )));
        }
        let degree = match images.first() {
            Some(p) => p.degree(),
            None => return Err(Error::Malformed("no generator images".into())),
        };
        if degree == 0 {
            return Err(Error::Malformed("degree must be positive".into()));
        }
        if let Some(p) = images.iter().find(|p| p.degree() != degree) {
            return Err(Error::Malformed(format!("image {p:?} does not have degree {degree}")));
        }
        if basepoint >= degree {
            return Err(Error::PointOutOfRange { point: basepoint, degree });
        }
        let inverses = images.iter().map(Permutation::inverse).collect();
        Ok(PermRep { alphabet, degree, images, inverses, basepoint })
    }

    /// The action on a single point, with every generator acting trivially.
    pub fn trivial(alphabet: Alphabet) -> Self {
        let images = vec![Permutation::identity(1); alphabet.len()];
        PermRep::new(alphabet, images, 0).expect("trivial rep is valid")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Permutation {
        &self.images[generator]
    }

    #[inline]
    pub fn act_letter(&self, letter: Letter, point: usize) -> usize {
        if letter.inverse {
            self.inverses[letter.generator].apply(point)
        } else {
            self.images[letter.generator].apply(point)
        }
    }

    /// Right action of `word` on `point`: letters apply left to right.
    pub fn act(&self, word: &Word, point: usize) -> Result<usize> {
        self.alphabet.check(word)?;
        if point >= self.degree {
            return Err(Error::PointOutOfRange { point, degree: self.degree });
        }
        Ok(word.letters().iter().fold(point, |p, &l| self.act_letter(l, p)))
    }

    /// The coset of `word`, i.e. the image of the basepoint.
    pub fn coset(&self, word: &Word) -> Result<usize> {
        self.act(word, self.basepoint)
    }

    pub fn contains(&self, word: &Word) -> Result<bool> {
        Ok(self.coset(word)? == self.basepoint)
    }

    /// The image of a word as a permutation of the points.
    pub fn permutation(&self, word: &Word) -> Result<Permutation> {
        self.alphabet.check(word)?;
        let mut p = Permutation::identity(self.degree);
        for l in word.letters() {
            p = if l.inverse { p.then(&self.inverses[l.generator]) } else { p.then(&self.images[l.generator]) };
        }
        Ok(p)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut queue = VecDeque::from([point]);
        while let Some(p) = queue.pop_front() {
            for perm in self.images.iter().chain(&self.inverses) {
                let q = perm.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                    queue.push_back(q);
                }
            }
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(self.basepoint).len() == self.degree
    }

    /// Index of the encoded subgroup; only defined for transitive actions.
    pub fn index(&self) -> Result<usize> {
        if self.is_transitive() {
            Ok(self.degree)
        } else {
            Err(Error::NotTransitive)
        }
    }

    /// The finite quotient of the free group by the kernel of the action (the normal
    /// core of the subgroup), as the permutation group generated by the images.
    pub fn normal_core_image(&self) -> Result<FiniteGroup> {
        self.normal_core_image_with_cap(DEFAULT_ELEMENT_CAP)
    }

    pub fn normal_core_image_with_cap(&self, cap: usize) -> Result<FiniteGroup> {
        FiniteGroup::closure_with_cap(self.degree, self.images.clone(), cap)
    }

    pub fn to_spec(&self) -> RepSpec {
        RepSpec {
            alphabet: self.alphabet.names().to_vec(),
            degree: self.degree,
            images: self
                .alphabet
                .names()
                .iter()
                .zip(&self.images)
                .map(|(name, p)| (name.clone(), p.images().to_vec()))
                .collect(),
            basepoint: self.basepoint,
        }
    }
}

/// JSON form: `{"alphabet": [...], "degree": n, "images": {"a": [...]}, "basepoint": 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSpec {
    pub alphabet: Vec<String>,
    pub degree: usize,
    pub images: IndexMap<String, Vec<usize>>,
    #[serde(default)]
    pub basepoint: usize,
}

impl TryFrom<RepSpec> for PermRep {
    type Error = Error;

    fn try_from(spec: RepSpec) -> Result<Self> {
        let alphabet = Alphabet::new(spec.alphabet)?;
        if let Some(extra) = spec.images.keys().find(|k| alphabet.position(k).is_none()) {
            return Err(Error::Malformed(format!("image given for unknown generator {extra:?}")));
        }
        let mut images = Vec::with_capacity(alphabet.len());
        for name in alphabet.names() {
            let arr = spec
                .images
                .get(name)
                .ok_or_else(|| Error::Malformed(format!("missing image for generator {name:?}")))?;
            if arr.len() != spec.degree {
                return Err(Error::Malformed(format!(
                    "image of {name:?} has length {}, expected degree {}",
                    arr.len(),
                    spec.degree
                )));
            }
            images.push(Permutation::new(arr.clone())?);
        }
        PermRep::new(alphabet, images, spec.basepoint)
    }
}

impl From<&PermRep> for RepSpec {
    fn from(rep: &PermRep) -> Self {
        rep.to_spec()
    }
}
