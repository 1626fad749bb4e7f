//! Randomized and exhaustive checks of the invariants tying the modules together.
//! Each check reports the number of cases it ran and the first counterexample found.

use rand::Rng;
use serde::Serialize;

use crate::action::PermRep;
use crate::error::Result;
use crate::extension::Extension;
use crate::groups::FiniteGroup;
use crate::sample;
use crate::schreier::Transversal;
use crate::words::{Alphabet, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check { name: name.to_string(), passed: true, cases: 0, counterexample: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(describe());
        }
    }

    /// Folds another batch of the same check into this one.
    pub fn merge(&mut self, other: Check) {
        self.cases += other.cases;
        if !other.passed && self.passed {
            self.passed = false;
            self.counterexample = other.counterexample;
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Associativity, identity and inverses for the free group on `alphabet`.
pub fn word_axioms<R: Rng>(rng: &mut R, alphabet: &Alphabet, samples: usize, max_len: usize) -> Check {
    let mut check = Check::new("free_group_axioms");
    let k = alphabet.len();
    for _ in 0..samples {
        let (x, y, z) = (sample::word(rng, k, max_len), sample::word(rng, k, max_len), sample::word(rng, k, max_len));
        let ok = x.mul(&y).mul(&z) == x.mul(&y.mul(&z))
            && x.mul(&Word::identity()) == x
            && Word::identity().mul(&x) == x
            && x.mul(&x.inverse()).is_identity();
        check.record(ok, || {
            format!("x = {}, y = {}, z = {}", alphabet.format(&x), alphabet.format(&y), alphabet.format(&z))
        });
    }
    check
}

/// `act(u·v, p) = act(v, act(u, p))` at every point.
pub fn action_law<R: Rng>(rng: &mut R, rep: &PermRep, samples: usize, max_len: usize) -> Result<Check> {
    let mut check = Check::new("action_respects_group_law");
    let k = rep.alphabet().len();
    for _ in 0..samples {
        let (u, v) = (sample::word(rng, k, max_len), sample::word(rng, k, max_len));
        let uv = u.mul(&v);
        let mut ok = true;
        for p in 0..rep.degree() {
            ok &= rep.act(&uv, p)? == rep.act(&v, rep.act(&u, p)?)?;
        }
        let a = rep.alphabet();
        check.record(ok, || format!("u = {}, v = {}", a.format(&u), a.format(&v)));
    }
    Ok(check)
}

/// Structural checks on a transversal and its basis.
pub fn transversal_checks(t: &Transversal) -> Result<Vec<Check>> {
    let a = t.rep().alphabet();
    let mut prefix = Check::new("prefix_closed");
    prefix.record(t.is_prefix_closed(), || "some prefix of an entry is not an entry".into());

    let mut represents = Check::new("represents_cosets");
    for (p, w) in t.words().iter().enumerate() {
        let got = t.rep().coset(w)?;
        represents.record(got == p, || format!("entry {} reaches point {got}, not {p}", a.format(w)));
    }

    let mut rank = Check::new("rank_formula");
    rank.record(t.rank_formula_holds(), || {
        format!("|B| = {} but 1 + {}·({} - 1) = {}", t.basis().len(), t.rep().degree(), a.len(),
            1 + t.rep().degree() as i64 * (a.len() as i64 - 1))
    });

    let mut membership = Check::new("basis_in_subgroup");
    for b in t.basis().elements() {
        let ok = !b.is_identity() && t.rep().contains(b)?;
        membership.record(ok, || format!("basis element {} is not a nontrivial subgroup element", a.format(b)));
    }
    Ok(vec![prefix, represents, rank, membership])
}

/// `evaluate(rewrite(h)) = h` for random subgroup elements.
pub fn round_trip<R: Rng>(rng: &mut R, t: &Transversal, samples: usize, max_len: usize) -> Result<Check> {
    let mut check = Check::new("rewrite_round_trip");
    for _ in 0..samples {
        let h = sample::subgroup_element(rng, t, max_len);
        let back = t.basis().evaluate(&t.rewrite(&h)?)?;
        check.record(back == h, || format!("h = {}", t.rep().alphabet().format(&h)));
    }
    Ok(check)
}

/// `rewrite(h1·h2) = reduce(rewrite(h1) ++ rewrite(h2))`.
pub fn rewrite_homomorphism<R: Rng>(rng: &mut R, t: &Transversal, samples: usize, max_len: usize) -> Result<Check> {
    let mut check = Check::new("rewrite_homomorphism");
    for _ in 0..samples {
        let h1 = sample::subgroup_element(rng, t, max_len);
        let h2 = sample::subgroup_element(rng, t, max_len);
        let lhs = t.rewrite(&h1.mul(&h2))?;
        let rhs = t.rewrite(&h1)?.mul(&t.rewrite(&h2)?);
        let a = t.rep().alphabet();
        check.record(lhs == rhs, || format!("h1 = {}, h2 = {}", a.format(&h1), a.format(&h2)));
    }
    Ok(check)
}

/// Every property of the extension `ψ` built from one assignment.
pub fn extension_checks<R: Rng>(rng: &mut R, ext: &Extension, samples: usize, max_len: usize) -> Result<Vec<Check>> {
    let t = ext.transversal();
    let a = t.rep().alphabet();
    let k = a.len();
    let target = ext.target();

    let mut extends = Check::new("psi_extends_assignment");
    for (i, b) in ext.basis().elements().iter().enumerate() {
        extends.record(ext.psi(b)? == ext.phi(i), || format!("basis element {i} = {}", a.format(b)));
    }

    let mut hom = Check::new("psi_homomorphism");
    let mut oracle = Check::new("psi_matches_rewrite_oracle");
    let mut top = Check::new("tau_top_is_rho");
    let mut expansion = Check::new("expansion_formula");
    let mut inverse = Check::new("inverse_formula");
    let mut vanishing = Check::new("vanishing_property");
    for _ in 0..samples {
        let h1 = sample::subgroup_element(rng, t, max_len);
        let h2 = sample::subgroup_element(rng, t, max_len);
        let ok = ext.psi(&h1.mul(&h2))? == target.mul(ext.psi(&h1)?, ext.psi(&h2)?);
        hom.record(ok, || format!("h1 = {}, h2 = {}", a.format(&h1), a.format(&h2)));
        oracle.record(ext.psi(&h1)? == ext.psi_by_rewrite(&h1)?, || format!("h = {}", a.format(&h1)));

        let (w1, w2) = (sample::word(rng, k, max_len), sample::word(rng, k, max_len));
        top.record(ext.top_is_rho(&w1)?, || format!("w = {}", a.format(&w1)));
        expansion.record(ext.expansion_formula_holds(&w1, &w2)?, || {
            format!("w1 = {}, w2 = {}", a.format(&w1), a.format(&w2))
        });
        inverse.record(ext.inverse_formula_holds(&w1)?, || format!("w = {}", a.format(&w1)));

        // Draw (ω, y) until μ(ω)·y·μ(ωy)⁻¹ = 1.
        for _ in 0..64 {
            let omega = sample::word(rng, k, max_len);
            let y = Letter { generator: rng.gen_range(0..k), inverse: rng.gen() };
            if let Some(ok) = ext.vanishing_holds(&omega, y)? {
                vanishing.record(ok, || format!("omega = {}, y = {}", a.format(&omega), a.format(&Word::letter(y))));
                break;
            }
        }
    }
    Ok(vec![extends, hom, oracle, top, expansion, inverse, vanishing])
}

/// A random assignment of basis elements to elements of `target`.
pub fn random_extension<R: Rng>(rng: &mut R, t: &Transversal, target: &FiniteGroup) -> Result<Extension> {
    let values = (0..t.basis().len()).map(|_| sample::element(rng, target)).collect();
    Extension::new(t.clone(), target.clone(), values)
}

/// A fresh random assignment over the same transversal and target as `base`.
pub fn random_reassignment<R: Rng>(rng: &mut R, base: &Extension) -> Result<Extension> {
    let values = (0..base.basis().len()).map(|_| sample::element(rng, base.target())).collect();
    base.reassign(values)
}
