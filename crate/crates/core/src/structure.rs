//! Subgroups, series and radicals of finite groups.

use std::collections::HashSet;

use crate::elemset::ElementSet;
use crate::group::{Elem, FiniteGroup};

/// A subgroup of a [`FiniteGroup`]: membership mask, element list and generators.
#[derive(Clone, Debug)]
pub struct Subgroup<'g> {
    group: &'g FiniteGroup,
    members: ElementSet,
    elements: Vec<Elem>,
    generators: Vec<Elem>,
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.members == other.members
    }
}

impl Eq for Subgroup<'_> {}

impl<'g> Subgroup<'g> {
    pub fn trivial(group: &'g FiniteGroup) -> Self {
        Subgroup {
            group,
            members: ElementSet::from_elems(group.order(), [Elem::IDENTITY]),
            elements: vec![Elem::IDENTITY],
            generators: Vec::new(),
        }
    }

    pub fn whole(group: &'g FiniteGroup) -> Self {
        Subgroup {
            group,
            members: ElementSet::full(group.order()),
            elements: group.elements().collect(),
            generators: group.generators().iter().map(|&(_, g)| g).collect(),
        }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.members.contains(g)
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<'_>) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.group;
        self.generators
            .iter()
            .all(|&x| self.generators.iter().all(|&y| g.commute(x, y)))
    }

    /// Stable under conjugation by every element of `within`.
    pub fn is_normal_in(&self, within: &Subgroup<'_>) -> bool {
        let g = self.group;
        within
            .generators
            .iter()
            .all(|&t| self.generators.iter().all(|&s| self.contains(g.conj(s, t))))
    }

    /// Adds `gen` and re-closes under right multiplication by all generators.
    fn extend(&mut self, gen: Elem) {
        if self.contains(gen) {
            self.generators.push(gen);
            return;
        }
        let g = self.group;
        self.generators.push(gen);
        let old = self.elements.len();
        for i in 0..old {
            let y = g.mul(self.elements[i], gen);
            if self.members.insert(y) {
                self.elements.push(y);
            }
        }
        let mut qi = old;
        while qi < self.elements.len() {
            let x = self.elements[qi];
            for &s in &self.generators {
                let y = g.mul(x, s);
                if self.members.insert(y) {
                    self.elements.push(y);
                }
            }
            qi += 1;
        }
    }
}

/// Least subgroup containing `gens`.
pub fn subgroup_generate<'g>(group: &'g FiniteGroup, gens: &[Elem]) -> Subgroup<'g> {
    let mut h = Subgroup::trivial(group);
    for &g in gens {
        if g != Elem::IDENTITY && !h.contains(g) {
            h.extend(g);
        }
    }
    h
}

/// Least normal subgroup of `group` containing `gens`.
pub fn normal_closure<'g>(group: &'g FiniteGroup, gens: &[Elem]) -> Subgroup<'g> {
    normal_closure_in(&Subgroup::whole(group), gens)
}

/// Least subgroup containing `gens` that is normalized by `ambient`.
pub fn normal_closure_in<'g>(ambient: &Subgroup<'g>, gens: &[Elem]) -> Subgroup<'g> {
    let g = ambient.group;
    let mut h = subgroup_generate(g, gens);
    let mut qi = 0;
    while qi < h.generators.len() {
        let s = h.generators[qi];
        for &t in &ambient.generators {
            let c = g.conj(s, t);
            if !h.contains(c) {
                h.extend(c);
            }
        }
        qi += 1;
    }
    h
}

pub fn centralizer<'g>(group: &'g FiniteGroup, set: &[Elem]) -> Subgroup<'g> {
    let elems: Vec<Elem> = group
        .elements()
        .filter(|&x| set.iter().all(|&s| group.commute(x, s)))
        .collect();
    from_closed_set(group, elems)
}

pub fn center(group: &FiniteGroup) -> Subgroup<'_> {
    let gens: Vec<Elem> = group.generators().iter().map(|&(_, g)| g).collect();
    centralizer(group, &gens)
}

// `elems` must already be closed; generators are picked greedily.
fn from_closed_set(group: &FiniteGroup, elems: Vec<Elem>) -> Subgroup<'_> {
    let members = ElementSet::from_elems(group.order(), elems.iter().copied());
    let mut h = Subgroup::trivial(group);
    for &x in &elems {
        if !h.contains(x) {
            h.extend(x);
        }
    }
    debug_assert_eq!(h.members, members);
    h
}

/// Subgroup generated by all `[a,b]`, `a ∈ A`, `b ∈ B`.
pub fn commutator_subgroup<'g>(a: &Subgroup<'g>, b: &Subgroup<'g>) -> Subgroup<'g> {
    let g = a.group;
    let mut seen = ElementSet::empty(g.order());
    let mut comms = Vec::new();
    for &x in &a.elements {
        for &y in &b.elements {
            let c = g.comm(x, y);
            if c != Elem::IDENTITY && seen.insert(c) {
                comms.push(c);
            }
        }
    }
    subgroup_generate(g, &comms)
}

/// Descending chain of subgroups, first term the declared top.
#[derive(Clone, Debug)]
pub struct Series<'g> {
    pub terms: Vec<Subgroup<'g>>,
}

impl<'g> Series<'g> {
    pub fn last(&self) -> &Subgroup<'g> {
        self.terms.last().expect("series has a top term")
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }
}

fn descending<'g>(
    top: &Subgroup<'g>,
    max_steps: usize,
    next: impl Fn(&Subgroup<'g>) -> Subgroup<'g>,
) -> Series<'g> {
    let mut terms = vec![top.clone()];
    while terms.len() <= max_steps {
        let cur = terms.last().unwrap();
        if cur.is_trivial() {
            break;
        }
        let n = next(cur);
        if n == *cur {
            break;
        }
        terms.push(n);
    }
    Series { terms }
}

/// `γ_1 = H`, `γ_{i+1} = [γ_i, H]`, until trivial or stable.
pub fn lower_central_series<'g>(h: &Subgroup<'g>) -> Series<'g> {
    descending(h, usize::MAX, |cur| commutator_subgroup(cur, h))
}

/// Least `c` with `γ_{c+1} = 1`; `None` when not nilpotent. The trivial group has class 0.
pub fn nilpotency_class(h: &Subgroup<'_>) -> Option<usize> {
    let s = lower_central_series(h);
    s.last().is_trivial().then(|| s.terms.len() - 1)
}

/// `nilpotency_class(h) <= c`, computing at most `c + 1` series terms.
pub fn class_at_most(h: &Subgroup<'_>, c: usize) -> bool {
    let s = descending(h, c, |cur| commutator_subgroup(cur, h));
    s.last().is_trivial()
}

pub fn derived_series<'g>(h: &Subgroup<'g>) -> Series<'g> {
    descending(h, usize::MAX, |cur| commutator_subgroup(cur, cur))
}

/// Number of strict steps to the trivial group; `None` when not soluble.
pub fn derived_length(h: &Subgroup<'_>) -> Option<usize> {
    let s = derived_series(h);
    s.last().is_trivial().then(|| s.terms.len() - 1)
}

/// `H_0 = G`, `H_{i+1} = ⟨H⟩^{H_i}`; subnormal iff the chain stops exactly at `H`.
pub fn is_subnormal(group: &FiniteGroup, h: &Subgroup<'_>) -> bool {
    let mut cur = Subgroup::whole(group);
    loop {
        if cur.members == h.members {
            return true;
        }
        let next = normal_closure_in(&cur, &h.generators);
        if next.members == cur.members {
            return false;
        }
        cur = next;
    }
}

/// Subgroup generated by the elements whose cyclic subgroup is subnormal.
pub fn baer_radical(group: &FiniteGroup) -> Subgroup<'_> {
    subgroup_generate(group, &baer_elements(group))
}

/// Elements `x` with `⟨x⟩` subnormal; one subnormality test per cyclic subgroup.
pub fn baer_elements(group: &FiniteGroup) -> Vec<Elem> {
    let mut decided: HashSet<ElementSet> = HashSet::new();
    let mut good: HashSet<ElementSet> = HashSet::new();
    let mut out = Vec::new();
    for x in group.elements() {
        let cyc = subgroup_generate(group, &[x]);
        if !decided.contains(&cyc.members) {
            if is_subnormal(group, &cyc) {
                good.insert(cyc.members.clone());
            }
            decided.insert(cyc.members.clone());
        }
        if good.contains(&cyc.members) {
            out.push(x);
        }
    }
    out
}

/// Subgroup generated by the elements whose normal closure is nilpotent.
pub fn fitting_oracle(group: &FiniteGroup) -> Subgroup<'_> {
    let elems: Vec<Elem> = group
        .elements()
        .filter(|&x| nilpotency_class(&normal_closure(group, &[x])).is_some())
        .collect();
    subgroup_generate(group, &elems)
}
