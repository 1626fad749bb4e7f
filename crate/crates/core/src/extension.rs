//! Extending a map from the Schreier basis of `H` into a finite group `G` to a
//! homomorphism `ψ: H -> G`.
//!
//! Each generator `x` is sent to `χ(x) = (g_x, ρ(x))` in `G ≀ ρ(F)`, where
//! `g_x(s_i) = φ(t_i·x·μ(t_i·x)⁻¹)`. The free extension `τ` of `χ` maps `H` into
//! `G ≀ ρ(H)`, and `ψ` is `τ` followed by evaluation at the trivial coset.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{Elem, FiniteGroup};
use crate::perm::Permutation;
use crate::schreier::{Basis, Transversal};
use crate::words::{Alphabet, Letter, Word};
use crate::wreath::{WreathContext, WreathElement};

/// A map from generators into a finite group; generators not listed go to the identity.
#[derive(Clone, Debug)]
pub struct FiniteSupportMap {
    alphabet: Alphabet,
    target: FiniteGroup,
    assignments: BTreeMap<usize, Elem>,
}

impl FiniteSupportMap {
    pub fn new(alphabet: Alphabet, target: FiniteGroup, assignments: BTreeMap<usize, Elem>) -> Result<Self> {
        if let Some(&g) = assignments.keys().find(|&&g| g >= alphabet.len()) {
            return Err(Error::IndexOutOfRange { index: g, len: alphabet.len() });
        }
        if assignments.values().any(|e| e.index() >= target.order()) {
            return Err(Error::Malformed("assigned value outside the target group".into()));
        }
        Ok(FiniteSupportMap { alphabet, target, assignments })
    }

    pub fn value(&self, generator: usize) -> Elem {
        self.assignments.get(&generator).copied().unwrap_or(self.target.identity())
    }

    /// The unique homomorphism from the free group agreeing with the map on generators.
    pub fn extend(&self, w: &Word) -> Result<Elem> {
        self.alphabet.check(w)?;
        Ok(w.letters().iter().fold(self.target.identity(), |acc, l| {
            let v = self.value(l.generator);
            self.target.mul(acc, if l.inverse { self.target.inv(v) } else { v })
        }))
    }
}

/// JSON form of an assignment: `{"values": {"0": [perm], ...}}`, keyed by basis index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentSpec {
    pub values: BTreeMap<String, Vec<usize>>,
}

impl AssignmentSpec {
    /// One target element per basis element; missing entries are the identity.
    pub fn resolve(&self, basis_len: usize, target: &FiniteGroup) -> Result<Vec<Elem>> {
        let mut values = vec![target.identity(); basis_len];
        for (key, images) in &self.values {
            let index: usize =
                key.parse().map_err(|_| Error::Malformed(format!("assignment key {key:?} is not an index")))?;
            if index >= basis_len {
                return Err(Error::IndexOutOfRange { index, len: basis_len });
            }
            let p = Permutation::new(images.clone())?;
            values[index] = target
                .find(&p)
                .ok_or_else(|| Error::Malformed(format!("assigned value {p:?} is not in the target group")))?;
        }
        Ok(values)
    }
}

fn check_values(values: &[Elem], basis: &Basis, target: &FiniteGroup) -> Result<()> {
    if values.len() != basis.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} values for a basis of size {}",
            values.len(),
            basis.len()
        )));
    }
    if values.iter().any(|e| e.index() >= target.order()) {
        return Err(Error::Malformed("assigned value outside the target group".into()));
    }
    Ok(())
}

/// The extension data for one transversal and one assignment `φ: B -> G`.
#[derive(Clone, Debug)]
pub struct Extension {
    transversal: Transversal,
    values: Vec<Elem>,
    context: WreathContext,
    chi: Vec<WreathElement>,
    chi_inv: Vec<WreathElement>,
}

impl Extension {
    pub fn new(transversal: Transversal, target: FiniteGroup, values: Vec<Elem>) -> Result<Self> {
        check_values(&values, transversal.basis(), &target)?;
        let rep = transversal.rep();
        let top = rep.normal_core_image()?;
        let context = WreathContext::new(target, top).with_base(rep.basepoint());
        Extension { transversal, values, context, chi: Vec::new(), chi_inv: Vec::new() }.with_chi()
    }

    /// The same transversal and target with a different assignment.
    pub fn reassign(&self, values: Vec<Elem>) -> Result<Self> {
        check_values(&values, self.basis(), self.target())?;
        Extension {
            transversal: self.transversal.clone(),
            values,
            context: self.context.clone(),
            chi: Vec::new(),
            chi_inv: Vec::new(),
        }
        .with_chi()
    }

    fn with_chi(mut self) -> Result<Self> {
        let k = self.transversal.rep().alphabet().len();
        self.chi = (0..k).map(|g| self.compute_chi(g)).collect::<Result<_>>()?;
        self.chi_inv = self.chi.iter().map(|x| self.context.inv(x)).collect();
        Ok(self)
    }

    /// Assignment sending every basis element to the identity.
    pub fn trivial(transversal: Transversal, target: FiniteGroup) -> Result<Self> {
        let values = vec![target.identity(); transversal.basis().len()];
        Self::new(transversal, target, values)
    }

    fn compute_chi(&self, generator: usize) -> Result<WreathElement> {
        let rep = self.transversal.rep();
        let basis = self.transversal.basis();
        let target = self.context.fiber_group();
        let mut fiber = Vec::with_capacity(rep.degree());
        for point in 0..rep.degree() {
            let tx = self.transversal.word(point).mul(&Word::generator(generator));
            let word = tx.mul(&self.transversal.mu(&tx)?.inverse());
            let value = if word.is_identity() {
                target.identity()
            } else {
                match basis.slot(point, generator) {
                    Some(i) if basis.element(i) == &word => self.values[i],
                    _ => {
                        return Err(Error::Inconsistent(format!(
                            "{} is neither trivial nor a basis element",
                            rep.alphabet().format(&word)
                        )))
                    }
                }
            };
            fiber.push(value);
        }
        let top = self
            .context
            .top_group()
            .find(rep.image(generator))
            .ok_or_else(|| Error::Inconsistent("generator image outside ρ(F)".into()))?;
        Ok(WreathElement { fiber, top })
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    pub fn basis(&self) -> &Basis {
        self.transversal.basis()
    }

    pub fn target(&self) -> &FiniteGroup {
        self.context.fiber_group()
    }

    pub fn context(&self) -> &WreathContext {
        &self.context
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    /// `φ` on the basis, extended by `φ(1) = 1`.
    pub fn phi(&self, basis_index: usize) -> Elem {
        self.values[basis_index]
    }

    pub fn chi(&self, generator: usize) -> &WreathElement {
        &self.chi[generator]
    }

    /// `τ` on a single letter: `χ(x)` or `χ(x)⁻¹`.
    pub fn tau_letter(&self, letter: Letter) -> &WreathElement {
        if letter.inverse {
            &self.chi_inv[letter.generator]
        } else {
            &self.chi[letter.generator]
        }
    }

    /// The homomorphism `F -> G ≀ ρ(F)` extending `χ`.
    pub fn tau(&self, w: &Word) -> Result<WreathElement> {
        self.transversal.rep().alphabet().check(w)?;
        let mut acc = self.context.identity();
        let mut scratch = acc.clone();
        for &l in w.letters() {
            self.context.mul_into(&acc, self.tau_letter(l), &mut scratch);
            std::mem::swap(&mut acc, &mut scratch);
        }
        Ok(acc)
    }

    /// `ψ = π_G ∘ τ` on the subgroup.
    pub fn psi(&self, h: &Word) -> Result<Elem> {
        let rep = self.transversal.rep();
        if !rep.contains(h)? {
            return Err(Error::NotInSubgroup(rep.alphabet().format(h)));
        }
        Ok(self.context.project(&self.tau(h)?))
    }

    /// The same value as [`Extension::psi`], computed by rewriting `h` in the basis and
    /// substituting the assigned values.
    pub fn psi_by_rewrite(&self, h: &Word) -> Result<Elem> {
        let target = self.target();
        let bword = self.transversal.rewrite(h)?;
        Ok(bword.letters().iter().fold(target.identity(), |acc, l| {
            let v = self.values[l.generator];
            target.mul(acc, if l.inverse { target.inv(v) } else { v })
        }))
    }

    /// `g_{ω1ω2}(s) = g_{ω1}(s) · g_{ω2}(s·ρ(ω1))` at every point.
    pub fn expansion_formula_holds(&self, w1: &Word, w2: &Word) -> Result<bool> {
        let (t1, t2, t12) = (self.tau(w1)?, self.tau(w2)?, self.tau(&w1.mul(w2))?);
        let g = self.target();
        Ok((0..self.context.points())
            .all(|s| t12.fiber[s] == g.mul(t1.fiber[s], t2.fiber[self.context.act(s, t1.top)])))
    }

    /// `g_{ω⁻¹}(s) = g_ω(s·ρ(ω⁻¹))⁻¹` at every point.
    pub fn inverse_formula_holds(&self, w: &Word) -> Result<bool> {
        let (t, t_inv) = (self.tau(w)?, self.tau(&w.inverse())?);
        let g = self.target();
        Ok((0..self.context.points())
            .all(|s| t_inv.fiber[s] == g.inv(t.fiber[self.context.act(s, t_inv.top)])))
    }

    /// For a letter `y` with `μ(ω)·y·μ(ωy)⁻¹ = 1`, the fiber of `τ(y)` at the coset of `ω`
    /// is trivial. Returns `None` when the hypothesis fails.
    pub fn vanishing_holds(&self, omega: &Word, y: Letter) -> Result<Option<bool>> {
        let mu = self.transversal.mu(omega)?;
        let omega_y = omega.mul(&Word::letter(y));
        let word = mu.mul(&Word::letter(y)).mul(&self.transversal.mu(&omega_y)?.inverse());
        if !word.is_identity() {
            return Ok(None);
        }
        let point = self.transversal.rep().coset(omega)?;
        Ok(Some(self.tau_letter(y).fiber[point] == self.target().identity()))
    }

    /// The top component of `τ(w)` is `ρ(w)`.
    pub fn top_is_rho(&self, w: &Word) -> Result<bool> {
        let rho = self.transversal.rep().permutation(w)?;
        Ok(self.context.top_group().perm(self.tau(w)?.top) == &rho)
    }
}
