//! Finite permutation groups: deterministic element enumeration, conjugacy
//! classes, subgroup closures, and the structural predicates built on them.
//!
//! Enumeration order is part of the contract: identity first, then by
//! generation layer, ties broken by lexicographic image array. Everything
//! downstream (class order, character table row order) inherits determinism
//! from this.

use crate::error::GroupError;
use crate::perm::{lcm, Permutation};
use std::collections::HashMap;
use std::sync::Arc;

pub const DEFAULT_ELEMENT_CAP: usize = 250_000;

/// One conjugacy class: canonical representative and member indices.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Lexicographically least member (by image array).
    pub representative: Permutation,
    /// Index of `representative` in the element list.
    pub rep_index: usize,
    /// Indices of all members, ascending.
    pub members: Vec<usize>,
    /// Multiplicative order of the representative.
    pub rep_order: u64,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A finite permutation group with fully enumerated elements.
pub struct FiniteGroup {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    /// inverse_of[i] = index of elements[i]^{-1}
    inverse_of: Vec<u32>,
    /// class_of[i] = conjugacy class index of elements[i]
    class_of: Vec<u32>,
    classes: Vec<ConjugacyClass>,
}

impl FiniteGroup {
    /// Enumerates the closure of `generators` under composition.
    ///
    /// Errors with `CapExceeded` as soon as the closure passes `cap` elements
    /// and `InvalidPermutation` on degree mismatches.
    pub fn build(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::InvalidPermutation(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let elements = enumerate_closure(degree, &generators, cap)?;
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            index.insert(e.clone(), i as u32);
        }
        let inverse_of = elements
            .iter()
            .map(|e| index[&e.inverse()])
            .collect::<Vec<_>>();
        let mut g = FiniteGroup {
            name: name.into(),
            degree,
            generators,
            elements,
            index,
            inverse_of,
            class_of: Vec::new(),
            classes: Vec::new(),
        };
        g.compute_classes();
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse_of[i] as usize
    }

    /// Index of elements[i] * elements[j] (i applied after j).
    pub fn product_index(&self, i: usize, j: usize) -> usize {
        let p = self.elements[i].compose(&self.elements[j]);
        self.index[&p] as usize
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index_of_element(&self, elt: usize) -> usize {
        self.class_of[elt] as usize
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size()).collect()
    }

    /// Centralizer orders |G|/|class| in class order.
    pub fn centralizer_orders(&self) -> Vec<usize> {
        let n = self.order();
        self.classes.iter().map(|c| n / c.size()).collect()
    }

    /// Index of the class containing inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        let rep = self.classes[c].rep_index;
        self.class_of[self.inverse_of[rep] as usize] as usize
    }

    /// Exponent: lcm of element orders.
    pub fn exponent(&self) -> u64 {
        self.classes
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.rep_order))
    }

    /// Number of solutions of x^2 = 1 (identity included).
    pub fn involution_count(&self) -> usize {
        self.elements
            .iter()
            .enumerate()
            .filter(|(i, _)| self.inverse_of[*i] as usize == *i)
            .count()
    }

    /// Order of the center.
    pub fn center_order(&self) -> usize {
        self.elements
            .iter()
            .filter(|x| self.generators.iter().all(|g| x.compose(g) == g.compose(x)))
            .count()
    }

    /// Full-orbit conjugacy partition, then canonical ordering:
    /// identity class first, the rest by (size, representative order,
    /// lexicographic representative image array).
    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut classes: Vec<ConjugacyClass> = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let cid = classes.len() as u32;
            let mut members = Vec::new();
            // The orbit of elements[start] under conjugation by all of G.
            let x = self.elements[start].clone();
            for g in &self.elements {
                let y = x.conjugate_by(g);
                let yi = self.index[&y] as usize;
                if class_of[yi] == u32::MAX {
                    class_of[yi] = cid;
                    members.push(yi);
                }
            }
            members.sort_unstable();
            let rep_index = *members
                .iter()
                .min_by(|&&a, &&b| self.elements[a].cmp(&self.elements[b]))
                .unwrap();
            let representative = self.elements[rep_index].clone();
            let rep_order = representative.order();
            classes.push(ConjugacyClass {
                representative,
                rep_index,
                members,
                rep_order,
            });
        }
        // Canonical order. The identity class has size 1 and order 1, but pin
        // it explicitly rather than relying on the sort key.
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by(|&a, &b| {
            let ca = &classes[a];
            let cb = &classes[b];
            let ida = ca.representative.is_identity();
            let idb = cb.representative.is_identity();
            idb.cmp(&ida)
                .then(ca.size().cmp(&cb.size()))
                .then(ca.rep_order.cmp(&cb.rep_order))
                .then(ca.representative.cmp(&cb.representative))
        });
        let mut renumber = vec![0u32; classes.len()];
        let mut sorted = Vec::with_capacity(classes.len());
        for (new_id, &old_id) in order.iter().enumerate() {
            renumber[old_id] = new_id as u32;
            sorted.push(classes[old_id].clone());
        }
        for c in class_of.iter_mut() {
            *c = renumber[*c as usize];
        }
        self.class_of = class_of;
        self.classes = sorted;
    }

    /// class_of(rep_c ^ e) for the representative of class `c`.
    pub fn power_class(&self, c: usize, e: u64) -> usize {
        let rep = &self.classes[c].representative;
        let mut acc = Permutation::identity(self.degree);
        for _ in 0..e {
            acc = rep.compose(&acc);
        }
        self.class_of[self.index[&acc] as usize] as usize
    }

    /// Element indices of the subgroup generated by `gens` (indices into this
    /// group), grown incrementally.
    pub fn subgroup_elements(&self, gens: &[usize]) -> Vec<usize> {
        let mut grower = SubgroupGrower::new(self);
        for &g in gens {
            grower.add(g);
        }
        grower.into_sorted_members()
    }

    /// Normal closure of the subgroup generated by `seed` element indices.
    pub fn normal_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut grower = SubgroupGrower::new(self);
        let mut pending: Vec<usize> = seed.to_vec();
        let gen_inverses: Vec<Permutation> =
            self.generators.iter().map(|g| g.inverse()).collect();
        while let Some(x) = pending.pop() {
            if !grower.add(x) {
                continue;
            }
            // Close the generator set under conjugation by group generators
            // (and their inverses); re-closing after each addition keeps the
            // invariant that `grower` holds a subgroup.
            let xp = self.elements[x].clone();
            for (g, gi) in self.generators.iter().zip(&gen_inverses) {
                for conj in [xp.conjugate_by(g), xp.conjugate_by(gi)] {
                    let ci = self.index[&conj] as usize;
                    if !grower.contains(ci) {
                        pending.push(ci);
                    }
                }
            }
        }
        grower.into_sorted_members()
    }

    /// True iff G is nonvacuously simple: |G| > 1 and every nontrivial class
    /// generates the whole group as a normal subgroup.
    pub fn is_simple(&self) -> bool {
        if self.order() == 1 {
            return false;
        }
        for c in &self.classes {
            if c.representative.is_identity() {
                continue;
            }
            if self.normal_closure(&[c.rep_index]).len() < self.order() {
                return false;
            }
        }
        true
    }

    /// Normal closures of single nontrivial class representatives, deduplicated,
    /// as sorted member-index lists. Every minimal normal subgroup appears here.
    pub fn class_normal_closures(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for c in &self.classes {
            if c.representative.is_identity() {
                continue;
            }
            let n = self.normal_closure(&[c.rep_index]);
            if !out.contains(&n) {
                out.push(n);
            }
        }
        out
    }

    /// True iff the Fitting subgroup is trivial, i.e. no minimal normal
    /// subgroup is abelian. Minimal normal subgroups are the inclusion-minimal
    /// class-representative normal closures.
    pub fn has_trivial_fitting(&self) -> bool {
        if self.order() == 1 {
            return true;
        }
        let closures = self.class_normal_closures();
        'outer: for (i, n) in closures.iter().enumerate() {
            // minimal iff no other closure is a proper subset
            for (j, m) in closures.iter().enumerate() {
                if i != j && m.len() < n.len() && is_subset(m, n) {
                    continue 'outer;
                }
            }
            if self.member_set_is_abelian(n) {
                return false;
            }
        }
        true
    }

    fn member_set_is_abelian(&self, members: &[usize]) -> bool {
        // A set closed under inversion generates an abelian group iff it
        // commutes pairwise; member lists here are whole subgroups.
        for (a, &i) in members.iter().enumerate() {
            let x = &self.elements[i];
            for &j in &members[a + 1..] {
                let y = &self.elements[j];
                if x.compose(y) != y.compose(x) {
                    return false;
                }
            }
        }
        true
    }

    /// Nilpotency class via the lower central series, or None if the series
    /// stabilizes above the identity.
    pub fn nilpotency_class(&self) -> Option<usize> {
        if self.order() == 1 {
            return Some(0);
        }
        // gamma_1 = G; generator list for the current term.
        let mut gamma_gens: Vec<usize> = self
            .generators
            .iter()
            .map(|g| self.index[g] as usize)
            .collect();
        let mut gamma_size = self.order();
        let mut class = 0usize;
        loop {
            class += 1;
            // [gamma_i, G] = normal closure of commutators of generators.
            let mut comms = Vec::new();
            for &x in &gamma_gens {
                let xp = &self.elements[x];
                let xinv = self.elements[self.inverse_of[x] as usize].clone();
                for g in &self.generators {
                    let c = xinv.compose(&g.inverse()).compose(xp).compose(g);
                    let ci = self.index[&c] as usize;
                    if !comms.contains(&ci) {
                        comms.push(ci);
                    }
                }
            }
            let next = self.normal_closure(&comms);
            if next.len() == 1 {
                return Some(class);
            }
            if next.len() == gamma_size {
                return None;
            }
            gamma_size = next.len();
            // The seed commutators together with nothing else generate the
            // closure as a normal subgroup; reuse the full member list as
            // generators only if small, else the seed.
            gamma_gens = if next.len() <= 512 {
                next
            } else {
                comms
            };
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class().is_some()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, g)| self.generators[..i].iter().all(|h| g.compose(h) == h.compose(g)))
    }

    pub fn shared(self) -> Arc<FiniteGroup> {
        Arc::new(self)
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    // both sorted
    let mut it = big.iter();
    'outer: for x in small {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// BFS closure in the documented deterministic order.
fn enumerate_closure(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>, GroupError> {
    let mut elements = vec![Permutation::identity(degree)];
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    seen.insert(elements[0].clone(), ());
    let mut layer_start = 0usize;
    while layer_start < elements.len() {
        let layer_end = elements.len();
        let mut fresh: Vec<Permutation> = Vec::new();
        for i in layer_start..layer_end {
            for g in generators {
                let p = elements[i].compose(g);
                if !seen.contains_key(&p) {
                    seen.insert(p.clone(), ());
                    fresh.push(p);
                }
            }
        }
        fresh.sort_unstable();
        if elements.len() + fresh.len() > cap {
            return Err(GroupError::CapExceeded { cap });
        }
        elements.extend(fresh);
        layer_start = layer_end;
    }
    Ok(elements)
}

/// Incrementally grown subgroup of a fixed parent. Each genuinely new
/// generator at least doubles the subgroup, so re-closing from scratch stays
/// cheap (at most log2 |G| rebuilds).
struct SubgroupGrower<'a> {
    parent: &'a FiniteGroup,
    members: Vec<bool>,
    count: usize,
    gens: Vec<usize>,
}

impl<'a> SubgroupGrower<'a> {
    fn new(parent: &'a FiniteGroup) -> Self {
        let mut members = vec![false; parent.order()];
        let id = parent
            .index_of(&Permutation::identity(parent.degree))
            .expect("identity is always enumerated");
        members[id] = true;
        SubgroupGrower {
            parent,
            members,
            count: 1,
            gens: Vec::new(),
        }
    }

    fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    /// Adds element index `i`; returns true if the subgroup grew.
    fn add(&mut self, i: usize) -> bool {
        if self.members[i] {
            return false;
        }
        self.gens.push(i);
        // Re-close from the whole current member set: old members must be
        // expanded against the new generator too, so they all seed the
        // frontier. Each growing add at least doubles the subgroup, keeping
        // total re-closure work near-linear in the final size.
        let mut frontier: Vec<usize> = (0..self.members.len())
            .filter(|&x| self.members[x])
            .collect();
        self.members[i] = true;
        self.count += 1;
        frontier.push(i);
        while let Some(x) = frontier.pop() {
            for &g in &self.gens {
                for y in [
                    self.parent.product_index(x, g),
                    self.parent.product_index(g, x),
                ] {
                    if !self.members[y] {
                        self.members[y] = true;
                        self.count += 1;
                        frontier.push(y);
                    }
                }
            }
        }
        true
    }

    fn into_sorted_members(self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| if m { Some(i) } else { None })
            .collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s_n(n: usize) -> FiniteGroup {
        let mut gens = vec![Permutation::parse_cycles("(1 2)", n).unwrap()];
        if n > 2 {
            let cycle: Vec<u32> = (1..n as u32).chain(std::iter::once(0)).collect();
            gens.push(Permutation::from_images(cycle).unwrap());
        }
        FiniteGroup::build(format!("s:{}", n), n, gens, DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn s3_enumeration_and_classes() {
        let g = s_n(3);
        assert_eq!(g.order(), 6);
        assert!(g.element(0).is_identity());
        // canonical class order: identity, 3-cycles (size 2), transpositions (size 3)
        assert_eq!(g.class_sizes(), vec![1, 2, 3]);
        assert_eq!(g.centralizer_orders(), vec![6, 3, 2]);
        let mut sizes = g.class_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn s4_class_multiset() {
        let g = s_n(4);
        assert_eq!(g.order(), 24);
        let mut sizes = g.class_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(g.involution_count(), 10);
        assert_eq!(g.exponent(), 12);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let gens = vec![
            Permutation::parse_cycles("(1 2)", 6).unwrap(),
            Permutation::parse_cycles("(1 2 3 4 5 6)", 6).unwrap(),
        ];
        match FiniteGroup::build("s:6", 6, gens, 100) {
            Err(GroupError::CapExceeded { cap }) => assert_eq!(cap, 100),
            other => panic!("expected CapExceeded, got {:?}", other.map(|g| g.order())),
        }
    }

    #[test]
    fn deterministic_element_order() {
        let a = s_n(4);
        let b = s_n(4);
        assert_eq!(a.elements(), b.elements());
        // layer 1 holds the generators sorted lexicographically
        assert!(a.element(1) <= a.element(2));
    }

    #[test]
    fn normal_closure_and_simplicity() {
        let s4 = s_n(4);
        // the double transpositions generate V4, a proper normal subgroup
        let dt = s4
            .classes()
            .iter()
            .find(|c| c.rep_order == 2 && c.size() == 3)
            .unwrap();
        assert_eq!(s4.normal_closure(&[dt.rep_index]).len(), 4);
        assert!(!s4.is_simple());

        let a5_gens = vec![
            Permutation::parse_cycles("(1 2 3)", 5).unwrap(),
            Permutation::parse_cycles("(1 2 3 4 5)", 5).unwrap(),
        ];
        let a5 = FiniteGroup::build("a:5", 5, a5_gens, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(a5.is_simple());
        assert!(a5.has_trivial_fitting());
        assert!(!s4.has_trivial_fitting());
    }

    #[test]
    fn nilpotency_classes() {
        let s3 = s_n(3);
        assert_eq!(s3.nilpotency_class(), None);
        let c6 = FiniteGroup::build(
            "c:6",
            6,
            vec![Permutation::parse_cycles("(1 2 3 4 5 6)", 6).unwrap()],
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap();
        assert_eq!(c6.nilpotency_class(), Some(1));
        // D4 of order 8: class 2
        let d4 = FiniteGroup::build(
            "d:4",
            4,
            vec![
                Permutation::parse_cycles("(1 2 3 4)", 4).unwrap(),
                Permutation::parse_cycles("(2 4)", 4).unwrap(),
            ],
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.nilpotency_class(), Some(2));
    }

    #[test]
    fn center_and_involutions() {
        let d4 = FiniteGroup::build(
            "d:4",
            4,
            vec![
                Permutation::parse_cycles("(1 2 3 4)", 4).unwrap(),
                Permutation::parse_cycles("(2 4)", 4).unwrap(),
            ],
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap();
        assert_eq!(d4.center_order(), 2);
        assert_eq!(d4.involution_count(), 6);
    }

    #[test]
    fn subgroup_growth() {
        let s4 = s_n(4);
        let t = s4.index_of(&Permutation::parse_cycles("(1 2)", 4).unwrap()).unwrap();
        let c = s4
            .index_of(&Permutation::parse_cycles("(1 2 3 4)", 4).unwrap())
            .unwrap();
        assert_eq!(s4.subgroup_elements(&[t]).len(), 2);
        assert_eq!(s4.subgroup_elements(&[c]).len(), 4);
        assert_eq!(s4.subgroup_elements(&[t, c]).len(), 24);
    }
}
