//! Left and right n-Engel sets.
//!
//! The brute-force sets follow the defining quantifiers directly. The
//! `l2_characterization` and `l3_characterization` sets are computed through
//! normal closures and two-generator subgroups instead, so comparing the two
//! routes checks the characterizations rather than assuming them.

use std::collections::HashMap;

use crate::elemset::ElementSet;
use crate::group::{Elem, FiniteGroup};
use crate::structure::{class_at_most, normal_closure, subgroup_generate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// `L_n(G)` or `R_n(G)`, stored as a bitmask: these sets need not be subgroups.
#[derive(Clone, Debug)]
pub struct EngelSet<'g> {
    pub group: &'g FiniteGroup,
    pub side: Side,
    pub n: usize,
    pub members: ElementSet,
}

impl EngelSet<'_> {
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.members.iter().collect()
    }
}

/// `[g,_n x] = 1` for every `g`. For `n = 0` the quantifier would be empty
/// on any nontrivial group; `L_0(G) = 1` is used instead.
pub fn is_left_n_engel(g: &FiniteGroup, x: Elem, n: usize) -> bool {
    if n == 0 {
        return x == Elem::IDENTITY;
    }
    g.elements().all(|y| g.engel_commutator(y, x, n) == Elem::IDENTITY)
}

/// `[x,_n g] = 1` for every `g`; `R_0(G) = 1`.
pub fn is_right_n_engel(g: &FiniteGroup, x: Elem, n: usize) -> bool {
    if n == 0 {
        return x == Elem::IDENTITY;
    }
    g.elements().all(|y| g.engel_commutator(x, y, n) == Elem::IDENTITY)
}

pub fn left_engel_set(g: &FiniteGroup, n: usize) -> EngelSet<'_> {
    EngelSet {
        group: g,
        side: Side::Left,
        n,
        members: ElementSet::from_elems(g.order(), g.elements().filter(|&x| is_left_n_engel(g, x, n))),
    }
}

pub fn right_engel_set(g: &FiniteGroup, n: usize) -> EngelSet<'_> {
    EngelSet {
        group: g,
        side: Side::Right,
        n,
        members: ElementSet::from_elems(g.order(), g.elements().filter(|&x| is_right_n_engel(g, x, n))),
    }
}

/// `{x : ⟨x⟩^G abelian}`.
pub fn l2_characterization(g: &FiniteGroup) -> EngelSet<'_> {
    let members = g.elements().filter(|&x| normal_closure(g, &[x]).is_abelian());
    EngelSet {
        group: g,
        side: Side::Left,
        n: 2,
        members: ElementSet::from_elems(g.order(), members),
    }
}

/// Memo for "⟨u,v⟩ is nilpotent of class at most 2", keyed on the unordered pair.
#[derive(Default)]
pub struct N2Cache {
    known: HashMap<(Elem, Elem), bool>,
}

impl N2Cache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pair_in_n2(&mut self, g: &FiniteGroup, u: Elem, v: Elem) -> bool {
        let key = if u <= v { (u, v) } else { (v, u) };
        *self
            .known
            .entry(key)
            .or_insert_with(|| class_at_most(&subgroup_generate(g, &[u, v]), 2))
    }
}

/// `{x : ⟨x, x^y⟩ ∈ N_2 for all y}`.
pub fn l3_characterization(g: &FiniteGroup) -> EngelSet<'_> {
    let mut cache = N2Cache::new();
    l3_characterization_with(g, &mut cache)
}

pub fn l3_characterization_with<'g>(g: &'g FiniteGroup, cache: &mut N2Cache) -> EngelSet<'g> {
    let mut members = ElementSet::empty(g.order());
    for x in g.elements() {
        if g.elements().all(|y| cache.pair_in_n2(g, x, g.conj(x, y))) {
            members.insert(x);
        }
    }
    EngelSet {
        group: g,
        side: Side::Left,
        n: 3,
        members,
    }
}
