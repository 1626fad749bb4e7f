//! Schreier transversals of a finite-index subgroup, its Nielsen-Schreier basis,
//! and rewriting of subgroup elements in that basis.

use std::collections::{HashSet, VecDeque};

use crate::action::PermRep;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

/// The pair `(t, x)` that produces a basis element `t·x·μ(tx)⁻¹`; `t` is given by its
/// coset point.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchreierPair {
    pub point: usize,
    pub generator: usize,
}

/// Free basis of the subgroup: the nontrivial words `t·x·μ(tx)⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    elements: Vec<Word>,
    labels: Vec<SchreierPair>,
    // point * |X| + generator -> basis index
    slots: Vec<Option<usize>>,
    generators: usize,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Word {
        &self.elements[index]
    }

    pub fn labels(&self) -> &[SchreierPair] {
        &self.labels
    }

    /// Basis index of `t·x·μ(tx)⁻¹` for the transversal word at `point`, or `None`
    /// when that word is trivial.
    pub fn slot(&self, point: usize, generator: usize) -> Option<usize> {
        self.slots[point * self.generators + generator]
    }

    /// Multiplies out a word in the basis (letters are signed basis indices).
    pub fn evaluate(&self, bword: &Word) -> Result<Word> {
        let mut out = Word::identity();
        for l in bword.letters() {
            let b = self
                .elements
                .get(l.generator)
                .ok_or(Error::IndexOutOfRange { index: l.generator, len: self.len() })?;
            out = if l.inverse { out.mul(&b.inverse()) } else { out.mul(b) };
        }
        Ok(out)
    }

    /// Names `b0, b1, ...` for printing basis words.
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::indexed("b", self.len()).expect("indexed names are valid")
    }
}

/// `+i` or `-i` for a signed basis index.
pub fn signed_index(letter: Letter) -> String {
    format!("{}{}", if letter.inverse { '-' } else { '+' }, letter.generator)
}

/// Prefix-closed set of coset representatives, one word per point, plus the basis
/// it determines.
#[derive(Clone, Debug)]
pub struct Transversal {
    rep: PermRep,
    words: Vec<Word>,
    bfs_order: Vec<usize>,
    basis: Basis,
}

impl Transversal {
    /// Breadth-first search from the basepoint, trying letters in the order
    /// `x0, x0⁻¹, x1, x1⁻¹, ...`; the first word to reach a point becomes its representative.
    pub fn new(rep: &PermRep) -> Result<Self> {
        if !rep.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let n = rep.degree();
        let k = rep.alphabet().len();
        let mut words: Vec<Option<Word>> = vec![None; n];
        words[rep.basepoint()] = Some(Word::identity());
        let mut bfs_order = vec![rep.basepoint()];
        let mut queue = VecDeque::from([rep.basepoint()]);
        while let Some(p) = queue.pop_front() {
            for g in 0..k {
                for letter in [Letter::pos(g), Letter::neg(g)] {
                    let q = rep.act_letter(letter, p);
                    if words[q].is_none() {
                        let w = words[p].as_ref().expect("dequeued point has a word").mul(&Word::letter(letter));
                        words[q] = Some(w);
                        bfs_order.push(q);
                        queue.push_back(q);
                    }
                }
            }
        }
        let words: Vec<Word> = words.into_iter().map(|w| w.expect("transitive")).collect();

        let mut elements = Vec::new();
        let mut labels = Vec::new();
        let mut slots = vec![None; n * k];
        for &p in &bfs_order {
            for g in 0..k {
                let q = rep.image(g).apply(p);
                let b = words[p].mul(&Word::generator(g)).mul(&words[q].inverse());
                if !b.is_identity() {
                    slots[p * k + g] = Some(elements.len());
                    elements.push(b);
                    labels.push(SchreierPair { point: p, generator: g });
                }
            }
        }
        let basis = Basis { elements, labels, slots, generators: k };
        Ok(Transversal { rep: rep.clone(), words, bfs_order, basis })
    }

    pub fn rep(&self) -> &PermRep {
        &self.rep
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, point: usize) -> &Word {
        &self.words[point]
    }

    /// Points in the order the search reached them.
    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs_order
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// The representative of the coset of `w`.
    pub fn mu(&self, w: &Word) -> Result<&Word> {
        Ok(&self.words[self.rep.coset(w)?])
    }

    /// Expresses `h` in the basis: position `i` contributes `u_{i-1}·x_i·u_i⁻¹`
    /// (with `u_i = μ(x_1…x_i)`) whenever that word is nontrivial.
    pub fn rewrite(&self, h: &Word) -> Result<Word> {
        if !self.rep.contains(h)? {
            return Err(Error::NotInSubgroup(self.rep.alphabet().format(h)));
        }
        let mut out = Vec::new();
        let mut point = self.rep.basepoint();
        for &l in h.letters() {
            let next = self.rep.act_letter(l, point);
            // For an inverse letter, u_{i-1}·x⁻¹·u_i⁻¹ is the inverse of u_i·x·u_{i-1}⁻¹.
            let source = if l.inverse { next } else { point };
            if let Some(index) = self.basis.slot(source, l.generator) {
                out.push(Letter { generator: index, inverse: l.inverse });
            }
            point = next;
        }
        Ok(Word::reduce(out))
    }

    /// Every prefix of every entry is itself an entry.
    pub fn is_prefix_closed(&self) -> bool {
        let entries: HashSet<&Word> = self.words.iter().collect();
        self.words.iter().all(|w| (0..w.len()).all(|k| entries.contains(&w.prefix(k))))
    }

    /// Each entry maps the basepoint to its own point.
    pub fn represents_cosets(&self) -> bool {
        self.words.iter().enumerate().all(|(p, w)| self.rep.coset(w).ok() == Some(p))
    }

    /// `|B| = 1 + [F:H](|X| - 1)`.
    pub fn rank_formula_holds(&self) -> bool {
        let n = self.rep.degree() as i64;
        let k = self.rep.alphabet().len() as i64;
        self.basis.len() as i64 == 1 + n * (k - 1)
    }
}
