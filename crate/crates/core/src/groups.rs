//! Finite permutation groups with fully enumerated elements, and right coset spaces.
//!
//! All products follow the right-action convention of [`Permutation::then`]:
//! `g·h` means "apply `g`, then `h`".

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

/// Groups up to this order get a precomputed multiplication table on first use.
const TABLE_LIMIT: usize = 1024;

/// Handle to an element of a [`FiniteGroup`]: its position in the enumeration.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u32);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, Elem>,
    inverses: Vec<Elem>,
    table: OnceLock<Option<Vec<u32>>>,
}

impl FiniteGroup {
    pub fn closure(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::closure_with_cap(degree, generators, DEFAULT_ELEMENT_CAP)
    }

    /// Breadth-first closure from the identity, multiplying on the right by each
    /// generator in the given order. Element order is the BFS insertion order.
    pub fn closure_with_cap(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Malformed("group degree must be positive".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Malformed(format!(
                "generator {g:?} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut lookup = HashMap::from([(identity, Elem(0))]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let next = elements[i].then(g);
                if lookup.contains_key(&next) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                lookup.insert(next.clone(), Elem(elements.len() as u32));
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
        let inverses = elements.iter().map(|p| lookup[&p.inverse()]).collect();
        Ok(FiniteGroup { degree, generators, elements, lookup, inverses, table: OnceLock::new() })
    }

    /// The full symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n > 1 {
            gens.push(Permutation::swap(n, 0, 1));
        }
        if n > 2 {
            gens.push(Permutation::cycle(n));
        }
        Self::closure(n, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.elements.len() as u32).map(Elem)
    }

    pub fn identity(&self) -> Elem {
        Elem(0)
    }

    /// The element at position `index` of the enumeration.
    pub fn get(&self, index: usize) -> Option<Elem> {
        (index < self.elements.len()).then_some(Elem(index as u32))
    }

    #[inline]
    pub fn perm(&self, e: Elem) -> &Permutation {
        &self.elements[e.index()]
    }

    pub fn find(&self, p: &Permutation) -> Option<Elem> {
        self.lookup.get(p).copied()
    }

    pub fn elem(&self, p: &Permutation) -> Result<Elem> {
        self.find(p)
            .ok_or_else(|| Error::NotSubset(format!("{p:?} is not an element of the group")))
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.lookup.contains_key(p)
    }

    #[inline]
    fn table(&self) -> Option<&[u32]> {
        match self.table.get() {
            Some(t) => t.as_deref(),
            None => self.build_table(),
        }
    }

    #[cold]
    fn build_table(&self) -> Option<&[u32]> {
        self.table
            .get_or_init(|| {
                let n = self.elements.len();
                (n <= TABLE_LIMIT).then(|| {
                    let mut t = Vec::with_capacity(n * n);
                    for a in &self.elements {
                        for b in &self.elements {
                            t.push(self.lookup[&a.then(b)].0);
                        }
                    }
                    t
                })
            })
            .as_deref()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match self.table() {
            Some(t) => Elem(t[a.index() * self.elements.len() + b.index()]),
            None => self.lookup[&self.perm(a).then(self.perm(b))],
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a.index()]
    }

    /// Exhaustive check of closure, identity, inverses and associativity.
    pub fn verify_axioms(&self) -> bool {
        let perms = &self.elements;
        let closed = perms.iter().all(|a| perms.iter().all(|b| self.contains(&a.then(b))));
        if !closed || !perms[0].is_identity() {
            return false;
        }
        let all: Vec<Elem> = self.iter().collect();
        let inverses = all.iter().all(|&a| {
            self.mul(a, self.inv(a)) == self.identity() && self.mul(self.inv(a), a) == self.identity()
        });
        let assoc = all.iter().all(|&a| {
            all.iter().all(|&b| {
                let ab = self.mul(a, b);
                all.iter().all(|&c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        });
        inverses && assoc
    }
}

/// A subgroup of a finite group, given by generators drawn from the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub generators: Vec<Permutation>,
}

impl SubgroupSpec {
    pub fn new(generators: Vec<Permutation>) -> Self {
        SubgroupSpec { generators }
    }

    pub fn trivial() -> Self {
        SubgroupSpec { generators: Vec::new() }
    }

    /// Enumerates the subgroup, checking that it lies inside `parent`.
    pub fn closure(&self, parent: &FiniteGroup) -> Result<FiniteGroup> {
        if let Some(g) = self.generators.iter().find(|g| !parent.contains(g)) {
            return Err(Error::NotSubset(format!("subgroup generator {g:?} is not in the parent group")));
        }
        FiniteGroup::closure(parent.degree(), self.generators.clone())
    }
}

/// JSON form: `{"degree": 4, "generators": [[1,2,3,0]], "subgroup_generators": [[2,3,0,1]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup_generators: Option<Vec<Vec<usize>>>,
}

fn perms(degree: usize, arrays: &[Vec<usize>]) -> Result<Vec<Permutation>> {
    arrays
        .iter()
        .map(|a| {
            if a.len() != degree {
                return Err(Error::Malformed(format!("{a:?} does not have degree {degree}")));
            }
            Permutation::new(a.clone())
        })
        .collect()
}

impl GroupSpec {
    pub fn group(&self) -> Result<FiniteGroup> {
        FiniteGroup::closure(self.degree, perms(self.degree, &self.generators)?)
    }

    pub fn subgroup(&self) -> Result<SubgroupSpec> {
        let gens = self
            .subgroup_generators
            .as_ref()
            .ok_or_else(|| Error::Malformed("missing \"subgroup_generators\"".into()))?;
        Ok(SubgroupSpec::new(perms(self.degree, gens)?))
    }
}

/// The right cosets `Hg` of a subgroup `H` in `G`, with the action of `G` on them.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    subgroup: FiniteGroup,
    /// Coset index of each element of `G`.
    coset_of: Vec<usize>,
    /// First-seen element of each coset; coset 0 is `H` with representative the identity.
    representatives: Vec<Elem>,
    /// For each element `g` of `G`, the permutation `s -> s·g` of coset indices.
    rho: Vec<Permutation>,
}

/// Enumerates `H\G` by scanning `G`'s elements in order.
pub fn right_cosets(group: &FiniteGroup, sub: &SubgroupSpec) -> Result<CosetSpace> {
    let subgroup = sub.closure(group)?;
    let h_in_g: Vec<Elem> = subgroup.elements().iter().map(|p| group.elem(p)).collect::<Result<_>>()?;

    const UNSEEN: usize = usize::MAX;
    let mut coset_of = vec![UNSEEN; group.order()];
    let mut representatives = Vec::new();
    for g in group.iter() {
        if coset_of[g.index()] != UNSEEN {
            continue;
        }
        let c = representatives.len();
        representatives.push(g);
        for &h in &h_in_g {
            coset_of[group.mul(h, g).index()] = c;
        }
    }
    let rho = group
        .iter()
        .map(|g| {
            let images = representatives.iter().map(|&t| coset_of[group.mul(t, g).index()]).collect();
            Permutation::new(images)
        })
        .collect::<Result<_>>()
        .map_err(|e| Error::Inconsistent(format!("coset action is not a permutation: {e}")))?;
    Ok(CosetSpace { subgroup, coset_of, representatives, rho })
}

impl CosetSpace {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn subgroup(&self) -> &FiniteGroup {
        &self.subgroup
    }

    pub fn coset_of(&self, g: Elem) -> usize {
        self.coset_of[g.index()]
    }

    pub fn representatives(&self) -> &[Elem] {
        &self.representatives
    }

    pub fn representative(&self, coset: usize) -> Elem {
        self.representatives[coset]
    }

    pub fn rho(&self, g: Elem) -> &Permutation {
        &self.rho[g.index()]
    }

    /// `s·g` for a coset index `s`.
    pub fn act(&self, coset: usize, g: Elem) -> usize {
        self.rho[g.index()].apply(coset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn z4() -> FiniteGroup {
        FiniteGroup::closure(4, vec![perm(&[1, 2, 3, 0])]).unwrap()
    }

    #[test]
    fn closure_examples() {
        let c3 = FiniteGroup::closure(3, vec![perm(&[1, 2, 0])]).unwrap();
        assert_eq!(c3.order(), 3);
        assert_eq!(FiniteGroup::closure(4, vec![]).unwrap().order(), 1);
        let s3 = FiniteGroup::closure(3, vec![perm(&[1, 0, 2]), perm(&[0, 2, 1])]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
    }

    #[test]
    fn closure_order_is_bfs() {
        let g = z4();
        let c = perm(&[1, 2, 3, 0]);
        let expected = vec![Permutation::identity(4), c.clone(), c.then(&c), c.then(&c).then(&c)];
        assert_eq!(g.elements(), expected.as_slice());
    }

    #[test]
    fn closure_cap_is_enforced() {
        let err = FiniteGroup::closure_with_cap(4, FiniteGroup::symmetric(4).unwrap().generators().to_vec(), 10)
            .unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 10 }));
        assert!(err.to_string().contains("10"));
    }

    #[test]
    fn closure_rejects_wrong_degree() {
        assert!(FiniteGroup::closure(3, vec![perm(&[1, 0])]).is_err());
    }

    #[test]
    fn axioms_hold_exhaustively() {
        for g in [
            z4(),
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::closure(5, vec![perm(&[1, 2, 3, 4, 0]), perm(&[1, 0, 2, 3, 4])]).unwrap(),
        ] {
            if g.order() <= 100 {
                assert!(g.verify_axioms());
            }
        }
    }

    #[test]
    fn large_groups_multiply_without_table() {
        let s7 = FiniteGroup::symmetric(7).unwrap();
        assert_eq!(s7.order(), 5040);
        let a = Elem(17);
        let b = Elem(4000);
        let ab = s7.mul(a, b);
        assert_eq!(s7.perm(ab), &s7.perm(a).then(s7.perm(b)));
        assert_eq!(s7.mul(ab, s7.inv(b)), a);
    }

    #[test]
    fn group_spec_json() {
        let spec: GroupSpec =
            serde_json::from_str(r#"{"degree": 4, "generators": [[1,2,3,0]], "subgroup_generators": [[2,3,0,1]]}"#)
                .unwrap();
        assert_eq!(spec.group().unwrap().order(), 4);
        assert_eq!(spec.subgroup().unwrap().closure(&spec.group().unwrap()).unwrap().order(), 2);
        let bare: GroupSpec = serde_json::from_str(r#"{"degree": 4, "generators": [[1,2,3,0]]}"#).unwrap();
        assert!(bare.subgroup().is_err());
        let bad: GroupSpec = serde_json::from_str(r#"{"degree": 3, "generators": [[1,0]]}"#).unwrap();
        assert!(bad.group().is_err());
        assert!(serde_json::from_str::<GroupSpec>(r#"{"degree": 3, "generators": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn e2_cosets() {
        let g = z4();
        let c = perm(&[1, 2, 3, 0]);
        let c2 = c.then(&c);
        let cosets = right_cosets(&g, &SubgroupSpec::new(vec![c2])).unwrap();
        assert_eq!(cosets.len(), 2);
        let reps: Vec<&Permutation> = cosets.representatives().iter().map(|&e| g.perm(e)).collect();
        assert_eq!(reps, vec![&Permutation::identity(4), &c]);
        let c_elem = g.find(&c).unwrap();
        assert_eq!(cosets.rho(c_elem), &Permutation::swap(2, 0, 1));
    }

    #[test]
    fn whole_group_has_one_coset() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cosets = right_cosets(&g, &SubgroupSpec::new(g.generators().to_vec())).unwrap();
        assert_eq!(cosets.len(), 1);
        assert!(g.iter().all(|e| cosets.rho(e).is_identity()));
    }

    #[test]
    fn trivial_subgroup_gives_regular_action() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cosets = right_cosets(&g, &SubgroupSpec::trivial()).unwrap();
        assert_eq!(cosets.len(), g.order());
        for x in g.iter() {
            for s in 0..cosets.len() {
                let t = cosets.representative(s);
                assert_eq!(cosets.representative(cosets.act(s, x)), g.mul(t, x));
            }
        }
    }

    #[test]
    fn foreign_subgroup_is_rejected() {
        let g = z4();
        let err = right_cosets(&g, &SubgroupSpec::new(vec![perm(&[1, 0, 2, 3])])).unwrap_err();
        assert!(matches!(err, Error::NotSubset(_)));
    }

    #[test]
    fn rho_is_a_right_action_and_lagrange_holds() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let subs = [
            SubgroupSpec::trivial(),
            SubgroupSpec::new(vec![perm(&[1, 0, 2, 3])]),
            SubgroupSpec::new(vec![perm(&[1, 2, 0, 3])]),
            SubgroupSpec::new(vec![perm(&[1, 0, 2, 3]), perm(&[0, 1, 3, 2])]),
            SubgroupSpec::new(vec![perm(&[1, 2, 3, 0]), perm(&[1, 0, 2, 3])]),
        ];
        for sub in &subs {
            let cosets = right_cosets(&g, sub).unwrap();
            assert_eq!(g.order() % cosets.len(), 0);
            assert_eq!(cosets.len() * cosets.subgroup().order(), g.order());
            for a in g.iter() {
                for b in g.iter() {
                    assert_eq!(cosets.rho(g.mul(a, b)), &cosets.rho(a).then(cosets.rho(b)));
                }
            }
        }
    }
}
