//! Symbolic check that two left 3-Engel elements generate a group of class at most 4.
//!
//! Work in the free nilpotent group of rank 2 and class 5. Let `S` be the
//! subgroup generated by the conjugates `[g,t,t,t]^h`, for `t` in `{a, b}`,
//! `g` a reduced word of length at most `L`, and `h` a reduced word of length
//! at most `C`. If `S` contains all of `γ_5` then every such group has class
//! at most 4. `S` is saturated layer by layer: each weight layer keeps an
//! echelon basis of group elements, and commutators of new basis elements are
//! fed back in. Each element in the basis is an honest element of `S`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::collect::{Collector, NormalForm};
use super::lattice::{ext_gcd, leading, IntLattice, LatticeIndex};
use super::CollectorError;
use crate::word::Word;

pub const DEFAULT_INSTANCE_CAP: usize = 250_000;

pub const RANK: usize = 2;
pub const CLASS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct SymbolicOutcome {
    pub verdict: Verdict,
    /// Index of `S ∩ γ_w` in `γ_w / γ_{w+1}` for `w = 1..=5`.
    pub layer_indices: Vec<LatticeIndex>,
    /// Relator-conjugate pairs considered.
    pub instances: usize,
    /// Distinct non-trivial normal forms among them.
    pub distinct: usize,
}

/// Reduced words of length at most `max_len` in `a`, `b`, ordered by length
/// then lexicographically with `a < a^-1 < b < b^-1`.
pub fn reduced_words(max_len: usize) -> Vec<Word> {
    const LETTERS: [(&str, i64); 4] = [("a", 1), ("a", -1), ("b", 1), ("b", -1)];
    let mut all: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in 0..4 {
                if w.last().is_some_and(|&p| p ^ 1 == l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.into_iter()
        .map(|w| Word::from_syllables(w.into_iter().map(|l| LETTERS[l])))
        .collect()
}

struct Row {
    image: Vec<BigInt>,
    elem: NormalForm,
}

/// A subgroup of a free nilpotent group, stored as an echelon basis per weight layer.
pub struct LayeredSubgroup<'c> {
    collector: &'c Collector,
    layers: Vec<Vec<Row>>,
}

impl<'c> LayeredSubgroup<'c> {
    pub fn new(collector: &'c Collector) -> Self {
        LayeredSubgroup {
            collector,
            layers: (0..collector.class()).map(|_| Vec::new()).collect(),
        }
    }

    fn layer_of(&self, x: &NormalForm) -> Option<(usize, Vec<BigInt>)> {
        for w in 1..=self.collector.class() {
            let range = self.collector.layer(w);
            let image = x.exponents()[range].to_vec();
            if image.iter().any(|e| !e.is_zero()) {
                return Some((w, image));
            }
        }
        None
    }

    pub fn insert(&mut self, x: NormalForm) {
        let mut stack = vec![x];
        while let Some(g) = stack.pop() {
            self.insert_one(g, &mut stack);
        }
    }

    fn insert_one(&mut self, mut g: NormalForm, stack: &mut Vec<NormalForm>) {
        let c = self.collector;
        loop {
            let Some((w, v)) = self.layer_of(&g) else {
                return;
            };
            let col = leading(&v).expect("layer image is nonzero");
            let rows = &mut self.layers[w - 1];
            match rows.iter().position(|r| leading(&r.image) == Some(col)) {
                None => {
                    if v[col].is_negative() {
                        g = c.inv(&g);
                    }
                    self.push_commutators(&g, w, stack);
                    let (_, image) = self.layer_of(&g).unwrap();
                    let rows = &mut self.layers[w - 1];
                    let at = rows.iter().position(|r| leading(&r.image) > Some(col)).unwrap_or(rows.len());
                    rows.insert(at, Row { image, elem: g });
                    return;
                }
                Some(i) => {
                    let a = rows[i].image[col].clone();
                    let b = v[col].clone();
                    let h = rows[i].elem.clone();
                    if b.is_multiple_of(&a) {
                        g = c.mul(&g, &c.pow(&h, &-(&b / &a)));
                        continue;
                    }
                    let (d, s, t) = ext_gcd(&a, &b);
                    let (ad, bd) = (&a / &d, &b / &d);
                    // unimodular change of basis; the remainders land in deeper layers
                    let h2 = c.mul(&c.pow(&h, &s), &c.pow(&g, &t));
                    let g2 = c.mul(&c.pow(&h, &-&bd), &c.pow(&g, &ad));
                    let rem_h = c.mul(&c.inv(&c.mul(&c.pow(&h2, &ad), &c.pow(&g2, &-&t))), &h);
                    let rem_g = c.mul(&c.inv(&c.mul(&c.pow(&h2, &bd), &c.pow(&g2, &s))), &g);
                    stack.push(rem_h);
                    stack.push(rem_g);
                    self.push_commutators(&h2, w, stack);
                    let (_, image) = self.layer_of(&h2).unwrap();
                    self.layers[w - 1][i] = Row { image, elem: h2 };
                    g = g2;
                }
            }
        }
    }

    fn push_commutators(&self, g: &NormalForm, w: usize, stack: &mut Vec<NormalForm>) {
        let c = self.collector;
        for (k, rows) in self.layers.iter().enumerate() {
            if w + k + 1 > c.class() {
                break;
            }
            for r in rows {
                stack.push(c.comm(g, &r.elem));
            }
        }
    }

    pub fn layer_index(&self, w: usize) -> LatticeIndex {
        let rows = &self.layers[w - 1];
        if rows.len() < self.collector.layer(w).len() {
            return LatticeIndex::Infinite;
        }
        let mut acc = BigInt::from(1);
        for r in rows {
            acc *= &r.image[leading(&r.image).unwrap()];
        }
        LatticeIndex::Finite(acc)
    }

    pub fn indices(&self) -> Vec<LatticeIndex> {
        (1..=self.collector.class()).map(|w| self.layer_index(w)).collect()
    }

    /// Echelon rows of one layer as a lattice.
    pub fn layer_lattice(&self, w: usize) -> IntLattice {
        let mut l = IntLattice::new(self.collector.layer(w).len());
        for r in &self.layers[w - 1] {
            l.insert(&r.image).expect("row width matches layer");
        }
        l
    }
}

pub fn saturate<'c>(collector: &'c Collector, instances: &[NormalForm]) -> LayeredSubgroup<'c> {
    let mut s = LayeredSubgroup::new(collector);
    for x in instances {
        s.insert(x.clone());
    }
    s
}

pub fn verdict(s: &LayeredSubgroup<'_>) -> Verdict {
    if s.layer_index(s.collector.class()).is_one() {
        Verdict::Verified
    } else {
        Verdict::Inconclusive
    }
}

/// The distinct non-trivial instances `[g,t,t,t]^h` in enumeration order.
pub fn theorem2_instances(
    collector: &Collector,
    instance_len: usize,
    conj_len: usize,
    cap: usize,
) -> Result<(Vec<NormalForm>, usize), CollectorError> {
    if collector.rank() != RANK || collector.class() != CLASS {
        return Err(CollectorError::Mismatch {
            expected: (RANK, CLASS),
            got: (collector.rank(), collector.class()),
        });
    }
    if instance_len == 0 || conj_len == 0 {
        return Err(CollectorError::InvalidArgument(
            "instance and conjugator lengths must be at least 1".into(),
        ));
    }
    let gs: Vec<Word> = reduced_words(instance_len).into_iter().filter(|w| !w.is_empty()).collect();
    let hs = reduced_words(conj_len);
    let needed = 2 * gs.len() * hs.len();
    if needed > cap {
        return Err(CollectorError::ResourceCap { needed, cap });
    }
    let hs: Vec<NormalForm> = hs.iter().map(|h| collector.collect(h)).collect::<Result<_, _>>()?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in ["a", "b"] {
        let t = collector.generator(t)?;
        for g in &gs {
            let mut r = collector.collect(g)?;
            for _ in 0..3 {
                r = collector.comm(&r, &t);
            }
            for h in &hs {
                let x = collector.conj(&r, h);
                if !x.is_identity() && seen.insert(x.clone()) {
                    out.push(x);
                }
            }
        }
    }
    Ok((out, needed))
}

pub fn theorem2_symbolic(instance_len: usize, conj_len: usize) -> Result<SymbolicOutcome, CollectorError> {
    theorem2_symbolic_capped(instance_len, conj_len, DEFAULT_INSTANCE_CAP)
}

pub fn theorem2_symbolic_capped(
    instance_len: usize,
    conj_len: usize,
    cap: usize,
) -> Result<SymbolicOutcome, CollectorError> {
    let collector = Collector::new(RANK, CLASS)?;
    let (instances, needed) = theorem2_instances(&collector, instance_len, conj_len, cap)?;
    let s = saturate(&collector, &instances);
    Ok(SymbolicOutcome {
        verdict: verdict(&s),
        layer_indices: s.indices(),
        instances: needed,
        distinct: instances.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_word_counts_and_order() {
        let ws = reduced_words(3);
        assert_eq!(ws.len(), 1 + 4 + 12 + 36);
        let shown: Vec<String> = ws[..7].iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, vec!["1", "a", "a^-1", "b", "b^-1", "a^2", "a b"]);
    }

    #[test]
    fn empty_instances_inconclusive() {
        let c = Collector::new(RANK, CLASS).unwrap();
        let s = saturate(&c, &[]);
        assert_eq!(verdict(&s), Verdict::Inconclusive);
        assert!(s.indices().iter().all(|i| *i == LatticeIndex::Infinite));
    }

    #[test]
    fn generators_saturate_everything() {
        let c = Collector::new(RANK, CLASS).unwrap();
        let s = saturate(&c, &[c.generator("a").unwrap(), c.generator("b").unwrap()]);
        assert!(s.indices().iter().all(LatticeIndex::is_one));
    }

    #[test]
    fn squares_give_finite_index() {
        // ⟨a^2, b^2⟩: index 4 on the abelianization, 4 on γ_2
        let c = Collector::new(RANK, CLASS).unwrap();
        let s = saturate(&c, &[c.collect_str("a^2").unwrap(), c.collect_str("b^2").unwrap()]);
        assert_eq!(s.layer_index(1), LatticeIndex::Finite(4.into()));
        assert_eq!(s.layer_index(2), LatticeIndex::Finite(4.into()));
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(theorem2_symbolic(0, 1), Err(CollectorError::InvalidArgument(_))));
        assert!(matches!(theorem2_symbolic(1, 0), Err(CollectorError::InvalidArgument(_))));
        assert!(matches!(
            theorem2_symbolic_capped(3, 3, 100),
            Err(CollectorError::ResourceCap { cap: 100, .. })
        ));
    }

    #[test]
    fn relators_lie_in_gamma4() {
        let c = Collector::new(RANK, CLASS).unwrap();
        let (xs, _) = theorem2_instances(&c, 2, 1, DEFAULT_INSTANCE_CAP).unwrap();
        assert!(!xs.is_empty());
        for x in &xs {
            assert!(x.exponents()[..c.layer(4).start].iter().all(Zero::is_zero));
        }
    }
}
