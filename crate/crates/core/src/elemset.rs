use std::fmt;

use crate::group::Elem;

/// Fixed-capacity bitmask over the element indices of one group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: Vec<u64>,
    capacity: usize,
}

impl ElementSet {
    pub fn empty(capacity: usize) -> Self {
        ElementSet {
            bits: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = ElementSet::empty(capacity);
        for i in 0..capacity {
            s.bits[i / 64] |= 1 << (i % 64);
        }
        s
    }

    pub fn from_elems(capacity: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = ElementSet::empty(capacity);
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Returns true if `e` was not already present.
    pub fn insert(&mut self, e: Elem) -> bool {
        let i = e.index();
        let mask = 1u64 << (i % 64);
        let fresh = self.bits[i / 64] & mask == 0;
        self.bits[i / 64] |= mask;
        fresh
    }

    pub fn contains(&self, e: Elem) -> bool {
        let i = e.index();
        self.bits[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect(),
            capacity: self.capacity,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let t = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(Elem::new(w * 64 + t))
            })
        })
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.index())).finish()
    }
}
