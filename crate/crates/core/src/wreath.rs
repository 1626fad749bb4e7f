//! Wreath products `A ≀ P = A^Σ ⋊ P` of finite groups, with `P` a permutation group on
//! the finite set `Σ = {0, ..., m-1}`, and the embedding `G -> H ≀ ρ(G)`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::groups::{right_cosets, CosetSpace, Elem, FiniteGroup, SubgroupSpec};
use crate::perm::Permutation;

/// A pair `(f, g)`: `fiber[s]` is the value of `f` at point `s`, `top` is an element of
/// the permutation group acting on the points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub fiber: Vec<Elem>,
    pub top: Elem,
}

#[derive(Clone, Debug)]
pub struct WreathContext {
    fiber: FiniteGroup,
    top: FiniteGroup,
    base: usize,
}

impl WreathContext {
    /// `top` acts on `top.degree()` points, which index the fiber coordinates.
    /// Point 0 is the trivial coset.
    pub fn new(fiber: FiniteGroup, top: FiniteGroup) -> Self {
        WreathContext { fiber, top, base: 0 }
    }

    /// Moves the trivial coset (read by [`WreathContext::project`]) to `base`.
    pub fn with_base(mut self, base: usize) -> Self {
        assert!(base < self.points(), "base point out of range");
        self.base = base;
        self
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn fiber_group(&self) -> &FiniteGroup {
        &self.fiber
    }

    pub fn top_group(&self) -> &FiniteGroup {
        &self.top
    }

    /// Number of points `|Σ|`.
    pub fn points(&self) -> usize {
        self.top.degree()
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement { fiber: vec![self.fiber.identity(); self.points()], top: self.top.identity() }
    }

    pub fn check(&self, x: &WreathElement) -> Result<()> {
        if x.fiber.len() != self.points() {
            return Err(Error::DimensionMismatch(format!(
                "fiber has {} coordinates, expected {}",
                x.fiber.len(),
                self.points()
            )));
        }
        if x.top.index() >= self.top.order() || x.fiber.iter().any(|e| e.index() >= self.fiber.order()) {
            return Err(Error::DimensionMismatch("element index outside its group".into()));
        }
        Ok(())
    }

    /// `s·g` for a point `s` and top element `g`.
    #[inline]
    pub fn act(&self, point: usize, g: Elem) -> usize {
        self.top.perm(g).apply(point)
    }

    /// `(f1, g1)(f2, g2) = (s -> f1[s]·f2[s·g1], g1·g2)`.
    pub fn mul(&self, x: &WreathElement, y: &WreathElement) -> Result<WreathElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        let mut out = WreathElement { fiber: Vec::with_capacity(self.points()), top: x.top };
        self.mul_into(x, y, &mut out);
        out
    }

    /// Writes `x·y` into `out`, reusing its fiber buffer.
    #[inline]
    pub(crate) fn mul_into(&self, x: &WreathElement, y: &WreathElement, out: &mut WreathElement) {
        let shift = self.top.perm(x.top).images();
        out.fiber.clear();
        out.fiber.extend(x.fiber.iter().zip(shift).map(|(&a, &t)| self.fiber.mul(a, y.fiber[t])));
        out.top = self.top.mul(x.top, y.top);
    }

    /// `(f, g)⁻¹ = (s -> f[s·g⁻¹]⁻¹, g⁻¹)`.
    pub fn inv(&self, x: &WreathElement) -> WreathElement {
        let top = self.top.inv(x.top);
        let shift = self.top.perm(top);
        let fiber = (0..self.points()).map(|s| self.fiber.inv(x.fiber[shift.apply(s)])).collect();
        WreathElement { fiber, top }
    }

    /// The constant fiber with value `a`.
    pub fn diagonal(&self, a: Elem) -> Vec<Elem> {
        vec![a; self.points()]
    }

    /// Value of the fiber at the trivial coset.
    pub fn project(&self, x: &WreathElement) -> Elem {
        x.fiber[self.base]
    }

    /// Every element of the wreath product, in a fixed order. Only sensible for tiny contexts.
    pub fn elements(&self) -> Vec<WreathElement> {
        let a = self.fiber.order();
        let m = self.points();
        let fibers = a.pow(m as u32);
        let mut out = Vec::with_capacity(fibers * self.top.order());
        for top in self.top.iter() {
            for code in 0..fibers {
                let mut c = code;
                let fiber = (0..m)
                    .map(|_| {
                        let e = Elem((c % a) as u32);
                        c /= a;
                        e
                    })
                    .collect();
                out.push(WreathElement { fiber, top });
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.fiber.order().pow(self.points() as u32) * self.top.order()
    }

    pub fn fiber_perms(&self, x: &WreathElement) -> Vec<Permutation> {
        x.fiber.iter().map(|&e| self.fiber.perm(e).clone()).collect()
    }

    pub fn top_perm(&self, x: &WreathElement) -> &Permutation {
        self.top.perm(x.top)
    }
}

/// The map `g -> (f_g, ρ(g))` with `f_g[s] = T(s)·g·T(s·g)⁻¹`, tabulated on all of `G`.
#[derive(Clone, Debug)]
pub struct Embedding {
    group: FiniteGroup,
    cosets: CosetSpace,
    context: WreathContext,
    images: Vec<WreathElement>,
}

/// Embeds `G` into `H ≀ ρ(G)`, where `ρ` is the action of `G` on the right cosets of `H`.
pub fn embed(group: &FiniteGroup, sub: &SubgroupSpec) -> Result<Embedding> {
    let cosets = right_cosets(group, sub)?;
    let h = cosets.subgroup().clone();
    let top_gens: Vec<Permutation> = group
        .generators()
        .iter()
        .map(|g| cosets.rho(group.elem(g).expect("generator lies in its group")).clone())
        .collect();
    let top = FiniteGroup::closure(cosets.len(), top_gens)?;
    let context = WreathContext::new(h, top);

    let mut images = Vec::with_capacity(group.order());
    for g in group.iter() {
        let mut fiber = Vec::with_capacity(cosets.len());
        for s in 0..cosets.len() {
            let t = cosets.representative(s);
            let t_sg = cosets.representative(cosets.act(s, g));
            let value = group.mul(group.mul(t, g), group.inv(t_sg));
            let in_h = context.fiber_group().find(group.perm(value)).ok_or_else(|| {
                Error::NotSubset(format!("fiber value {:?} is not in the subgroup", group.perm(value)))
            })?;
            fiber.push(in_h);
        }
        let top = context
            .top_group()
            .find(cosets.rho(g))
            .ok_or_else(|| Error::Inconsistent("coset permutation outside ρ(G)".into()))?;
        images.push(WreathElement { fiber, top });
    }
    Ok(Embedding { group: group.clone(), cosets, context, images })
}

impl Embedding {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.cosets
    }

    pub fn context(&self) -> &WreathContext {
        &self.context
    }

    pub fn image(&self, g: Elem) -> &WreathElement {
        &self.images[g.index()]
    }

    pub fn images(&self) -> &[WreathElement] {
        &self.images
    }

    /// `φ(g1·g2) = φ(g1)·φ(g2)` for all pairs.
    pub fn is_homomorphism(&self) -> bool {
        self.group.iter().all(|a| {
            self.group.iter().all(|b| {
                self.context.mul_unchecked(self.image(a), self.image(b)) == *self.image(self.group.mul(a, b))
            })
        })
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().collect::<HashSet<_>>().len() == self.images.len()
    }

    /// `π_H(φ(h)) = h` for every `h` in `H`.
    pub fn projection_is_identity_on_subgroup(&self) -> bool {
        let h = self.context.fiber_group();
        h.iter().all(|x| {
            let g = self.group.find(h.perm(x)).expect("subgroup lies in the group");
            self.context.project(self.image(g)) == x
        })
    }

    /// `π_H(u·v) = π_H(u)·π_H(v)` for `u, v` with top components in `ρ(H)`. Fibers are
    /// drawn from the embedding's own image fibers.
    pub fn projection_is_homomorphism_on_rho_h(&self) -> bool {
        let h = self.context.fiber_group();
        let tops: Vec<Elem> = h
            .elements()
            .iter()
            .map(|p| {
                let g = self.group.find(p).expect("subgroup lies in the group");
                self.image(g).top
            })
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        let fibers: Vec<&Vec<Elem>> = self.images.iter().map(|x| &x.fiber).collect::<HashSet<_>>().into_iter().collect();
        for &t1 in &tops {
            for &t2 in &tops {
                for &f1 in &fibers {
                    for &f2 in &fibers {
                        let u = WreathElement { fiber: f1.clone(), top: t1 };
                        let v = WreathElement { fiber: f2.clone(), top: t2 };
                        let lhs = self.context.project(&self.context.mul_unchecked(&u, &v));
                        let rhs = h.mul(self.context.project(&u), self.context.project(&v));
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    /// Z/4 = <c> over H = <c²>.
    fn e2() -> (FiniteGroup, Embedding, Permutation) {
        let c = perm(&[1, 2, 3, 0]);
        let g = FiniteGroup::closure(4, vec![c.clone()]).unwrap();
        let emb = embed(&g, &SubgroupSpec::new(vec![c.then(&c)])).unwrap();
        (g, emb, c)
    }

    fn e2_context() -> (WreathContext, Elem, Elem) {
        let (_, emb, c) = e2();
        let ctx = emb.context().clone();
        let c2 = ctx.fiber_group().find(&c.then(&c)).unwrap();
        let swap = ctx.top_group().find(&Permutation::swap(2, 0, 1)).unwrap();
        (ctx, c2, swap)
    }

    #[test]
    fn wmul_examples() {
        let (ctx, c2, swap) = e2_context();
        let e = ctx.fiber_group().identity();
        let x = WreathElement { fiber: vec![e, c2], top: swap };
        assert_eq!(ctx.mul(&ctx.identity(), &x).unwrap(), x);

        let f1 = WreathElement { fiber: vec![c2, e], top: ctx.top_group().identity() };
        let f2 = WreathElement { fiber: vec![c2, c2], top: ctx.top_group().identity() };
        assert_eq!(ctx.mul(&f1, &f2).unwrap().fiber, vec![e, c2]);

        let sq = ctx.mul(&x, &x).unwrap();
        assert_eq!(sq, WreathElement { fiber: vec![c2, c2], top: ctx.top_group().identity() });
    }

    #[test]
    fn wmul_rejects_bad_dimensions() {
        let (ctx, _, _) = e2_context();
        let bad = WreathElement { fiber: vec![Elem(0)], top: Elem(0) };
        assert!(matches!(ctx.mul(&bad, &ctx.identity()), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn winv_matches_brute_force() {
        let (ctx, c2, swap) = e2_context();
        assert_eq!(ctx.inv(&ctx.identity()), ctx.identity());
        let f = WreathElement { fiber: vec![c2, Elem(0)], top: ctx.top_group().identity() };
        assert_eq!(ctx.inv(&f).fiber, vec![ctx.fiber_group().inv(c2), Elem(0)]);

        let x = WreathElement { fiber: vec![Elem(0), c2], top: swap };
        let brute: Vec<WreathElement> =
            ctx.elements().into_iter().filter(|y| ctx.mul(y, &x).unwrap() == ctx.identity()).collect();
        assert_eq!(brute.len(), 1);
        assert_eq!(ctx.inv(&x), brute[0]);
        // ((e, c²), swap)⁻¹ = ((c², e), swap) since c² is an involution
        assert_eq!(brute[0], WreathElement { fiber: vec![c2, Elem(0)], top: swap });
    }

    #[test]
    fn diagonal_examples() {
        let (ctx, c2, _) = e2_context();
        assert_eq!(ctx.diagonal(Elem(0)), vec![Elem(0), Elem(0)]);
        assert_eq!(ctx.diagonal(c2), vec![c2, c2]);
        assert_ne!(ctx.diagonal(Elem(0)), ctx.diagonal(c2));
        let prod = WreathElement { fiber: ctx.diagonal(c2), top: Elem(0) };
        assert_eq!(ctx.mul(&prod, &prod).unwrap().fiber, ctx.diagonal(ctx.fiber_group().mul(c2, c2)));
    }

    #[test]
    fn embed_e2() {
        let (g, emb, c) = e2();
        let ctx = emb.context();
        let phi_c = emb.image(g.find(&c).unwrap());
        assert_eq!(ctx.fiber_perms(phi_c), vec![Permutation::identity(4), c.then(&c)]);
        assert_eq!(ctx.top_perm(phi_c), &Permutation::swap(2, 0, 1));

        assert_eq!(emb.image(g.identity()), &ctx.identity());

        let phi_c2 = emb.image(g.find(&c.then(&c)).unwrap());
        assert_eq!(ctx.fiber_perms(phi_c2), vec![c.then(&c), c.then(&c)]);
        assert!(ctx.top_perm(phi_c2).is_identity());
        assert_eq!(ctx.fiber_group().perm(ctx.project(phi_c2)), &c.then(&c));

        assert!(emb.is_homomorphism());
        assert!(emb.is_injective());
        assert!(emb.projection_is_identity_on_subgroup());
        assert!(emb.projection_is_homomorphism_on_rho_h());
    }

    #[test]
    fn projection_of_identity() {
        let (ctx, _, _) = e2_context();
        assert_eq!(ctx.project(&ctx.identity()), ctx.fiber_group().identity());
    }

    #[test]
    fn wreath_axioms_exhaustive_small() {
        let contexts = [
            WreathContext::new(FiniteGroup::symmetric(2).unwrap(), FiniteGroup::symmetric(2).unwrap()),
            WreathContext::new(FiniteGroup::symmetric(3).unwrap(), FiniteGroup::symmetric(2).unwrap()),
            WreathContext::new(FiniteGroup::symmetric(2).unwrap(), FiniteGroup::symmetric(3).unwrap()),
            WreathContext::new(
                FiniteGroup::closure(3, vec![Permutation::cycle(3)]).unwrap(),
                FiniteGroup::closure(3, vec![Permutation::cycle(3)]).unwrap(),
            ),
        ];
        for ctx in &contexts {
            let all = ctx.elements();
            assert_eq!(all.len(), ctx.order());
            let set: HashSet<_> = all.iter().collect();
            for x in &all {
                assert_eq!(ctx.mul(x, &ctx.identity()).unwrap(), *x);
                assert_eq!(ctx.mul(&ctx.identity(), x).unwrap(), *x);
                assert_eq!(ctx.mul(x, &ctx.inv(x)).unwrap(), ctx.identity());
                assert_eq!(ctx.mul(&ctx.inv(x), x).unwrap(), ctx.identity());
                for y in &all {
                    let xy = ctx.mul(x, y).unwrap();
                    assert!(set.contains(&xy));
                    if all.len() <= 64 {
                        for z in &all {
                            assert_eq!(ctx.mul(&xy, z).unwrap(), ctx.mul(x, &ctx.mul(y, z).unwrap()).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_of_s3_over_each_subgroup() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        for sub in [
            SubgroupSpec::trivial(),
            SubgroupSpec::new(vec![perm(&[1, 0, 2])]),
            SubgroupSpec::new(vec![perm(&[1, 2, 0])]),
            SubgroupSpec::new(s3.generators().to_vec()),
        ] {
            let emb = embed(&s3, &sub).unwrap();
            assert!(emb.is_homomorphism());
            assert!(emb.is_injective());
            assert!(emb.projection_is_identity_on_subgroup());
            assert!(emb.projection_is_homomorphism_on_rho_h());
        }
    }

    #[test]
    fn embed_rejects_foreign_subgroup() {
        let (g, _, _) = e2();
        assert!(matches!(embed(&g, &SubgroupSpec::new(vec![perm(&[1, 0, 2, 3])])), Err(Error::NotSubset(_))));
    }
}
