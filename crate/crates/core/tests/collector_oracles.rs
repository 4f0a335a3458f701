//! Collection checked against independent models: homomorphisms into finite
//! nilpotent groups and the Magnus representation.

use std::collections::HashSet;
use std::fmt::Debug;

use engel_core::collector::{
    generator_label, reduced_words, saturate, theorem2_instances, theorem2_symbolic, verdict, Collector, IntLattice,
    LatticeIndex, LayeredSubgroup, NormalForm, Verdict, DEFAULT_INSTANCE_CAP,
};
use engel_core::corpus::{build, GroupSpec};
use engel_core::structure::{nilpotency_class, Subgroup};
use engel_core::{Elem, FiniteGroup, Word};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

trait Target {
    type E: Clone + PartialEq + Debug;
    fn one(&self) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn pow(&self, a: &Self::E, k: &BigInt) -> Self::E;
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::E;

    fn comm(&self, a: &Self::E, b: &Self::E) -> Self::E {
        let m1 = BigInt::from(-1);
        let ai = self.pow(a, &m1);
        let bi = self.pow(b, &m1);
        self.mul(&self.mul(&ai, &bi), &self.mul(a, b))
    }
}

/// Upper unitriangular 6x6 matrices over F_p: nilpotent of class 5.
struct Unitriangular {
    p: u64,
    /// p^k >= 6, so every element has order dividing it
    exponent: u64,
}

type Mat = [[u64; 6]; 6];

impl Unitriangular {
    fn new(p: u64) -> Self {
        let mut exponent = p;
        while exponent < 6 {
            exponent *= p;
        }
        Unitriangular { p, exponent }
    }

    fn raw_pow(&self, a: &Mat, mut e: u64) -> Mat {
        let mut acc = self.one();
        let mut sq = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            e >>= 1;
        }
        acc
    }
}

impl Target for Unitriangular {
    type E = Mat;

    fn one(&self) -> Mat {
        let mut m = [[0; 6]; 6];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        m
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let mut m = [[0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                m[i][j] = (0..6).map(|k| a[i][k] * b[k][j]).sum::<u64>() % self.p;
            }
        }
        m
    }

    fn pow(&self, a: &Mat, k: &BigInt) -> Mat {
        let e = k.mod_floor(&BigInt::from(self.exponent)).to_u64().unwrap();
        self.raw_pow(a, e)
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Mat {
        let mut m = self.one();
        for i in 0..6 {
            for j in i + 1..6 {
                m[i][j] = rng.gen_range(0..self.p);
            }
        }
        m
    }
}

struct Finite(FiniteGroup);

impl Target for Finite {
    type E = Elem;

    fn one(&self) -> Elem {
        Elem::IDENTITY
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.0.mul(*a, *b)
    }

    fn pow(&self, a: &Elem, k: &BigInt) -> Elem {
        let n = BigInt::from(self.0.element_order(*a));
        self.0.pow(*a, k.mod_floor(&n).to_i64().unwrap())
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Elem {
        Elem::new(rng.gen_range(0..self.0.order()))
    }
}

fn eval_word<T: Target>(t: &T, w: &[(usize, i64)], imgs: &[T::E]) -> T::E {
    w.iter()
        .fold(t.one(), |acc, &(g, k)| t.mul(&acc, &t.pow(&imgs[g], &BigInt::from(k))))
}

/// Images of the Hall basis as brackets of generator images.
fn basis_images<T: Target>(t: &T, c: &Collector, imgs: &[T::E]) -> Vec<T::E> {
    let mut out: Vec<T::E> = Vec::new();
    for b in c.basis() {
        let img = match b.components {
            None => imgs[b.id].clone(),
            Some((u, v)) => t.comm(&out[u], &out[v]),
        };
        out.push(img);
    }
    out
}

fn eval_nf<T: Target>(t: &T, basis: &[T::E], nf: &NormalForm) -> T::E {
    nf.exponents()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .fold(t.one(), |acc, (j, e)| t.mul(&acc, &t.pow(&basis[j], e)))
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Vec<(usize, i64)> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let k = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=3);
            (rng.gen_range(0..rank), k)
        })
        .collect()
}

fn word_of(w: &[(usize, i64)]) -> Word {
    Word::from_syllables(w.iter().map(|&(g, k)| (generator_label(g), k)))
}

fn check_homomorphisms<T: Target>(t: &T, c: &Collector, rng: &mut ChaCha8Rng, maps: usize, words: usize) {
    for _ in 0..maps {
        let imgs: Vec<T::E> = (0..c.rank()).map(|_| t.random(rng)).collect();
        let basis = basis_images(t, c, &imgs);
        for _ in 0..words {
            let w = random_word(rng, c.rank(), 12);
            let nf = c.collect(&word_of(&w)).unwrap();
            assert_eq!(eval_word(t, &w, &imgs), eval_nf(t, &basis, &nf), "{w:?}");
        }
    }
}

#[test]
fn homomorphisms_into_unitriangular_groups() {
    let c = Collector::new(2, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [2, 3, 5, 7] {
        check_homomorphisms(&Unitriangular::new(p), &c, &mut rng, 3, 100);
    }
    let c3 = Collector::new(3, 5).unwrap();
    check_homomorphisms(&Unitriangular::new(5), &c3, &mut rng, 2, 60);
}

#[test]
fn homomorphisms_into_corpus_two_groups() {
    let c = Collector::new(2, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for spec in [GroupSpec::Dihedral(16), GroupSpec::Dihedral(32), GroupSpec::Dicyclic(8), GroupSpec::Heisenberg(3)] {
        let g = build(&spec).unwrap();
        let class = nilpotency_class(&Subgroup::whole(&g)).unwrap();
        assert!(class <= 5);
        check_homomorphisms(&Finite(g), &c, &mut rng, 3, 100);
    }
}

#[test]
fn basis_elements_are_their_brackets() {
    fn bracket_word(c: &Collector, j: usize) -> Word {
        match c.basis()[j].components {
            None => Word::from_syllables([(generator_label(j), 1)]),
            Some((u, v)) => {
                let (x, y) = (bracket_word(c, u), bracket_word(c, v));
                x.inverse().concat(&y.inverse()).concat(&x).concat(&y)
            }
        }
    }
    let c = Collector::new(2, 5).unwrap();
    let t = Unitriangular::new(3);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let imgs: Vec<Mat> = (0..2).map(|_| t.random(&mut rng)).collect();
    let basis = basis_images(&t, &c, &imgs);
    for j in 0..c.basis().len() {
        let w = bracket_word(&c, j);
        let nf = c.collect(&w).unwrap();
        assert_eq!(nf, c.basic(j), "{}", c.basis()[j].label);
        let syl: Vec<(usize, i64)> = w
            .syllables()
            .iter()
            .map(|(l, k)| ((l.as_bytes()[0] - b'a') as usize, *k))
            .collect();
        assert_eq!(eval_word(&t, &syl, &imgs), basis[j]);
    }
}

#[test]
fn group_laws_on_normal_forms() {
    let c = Collector::new(2, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let nf = |rng: &mut ChaCha8Rng| c.collect(&word_of(&random_word(rng, 2, 12))).unwrap();
    for _ in 0..100 {
        let (x, y, z) = (nf(&mut rng), nf(&mut rng), nf(&mut rng));
        let xy_z = c.nf_mul(&c.nf_mul(&x, &y).unwrap(), &z).unwrap();
        let x_yz = c.nf_mul(&x, &c.nf_mul(&y, &z).unwrap()).unwrap();
        assert_eq!(xy_z, x_yz);
        assert_eq!(c.nf_inv(&c.nf_inv(&x).unwrap()).unwrap(), x);
        assert!(c.nf_mul(&x, &c.nf_inv(&x).unwrap()).unwrap().is_identity());
        assert!(c.nf_comm(&x, &x).unwrap().is_identity());
        assert_eq!(c.nf_mul(&x, &c.identity()).unwrap(), x);
    }
}

#[test]
fn collect_is_multiplicative() {
    let c = Collector::new(2, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..100 {
        let u = random_word(&mut rng, 2, 12);
        let v = random_word(&mut rng, 2, 12);
        let mut uv = u.clone();
        uv.extend(&v);
        let lhs = c.collect(&word_of(&uv)).unwrap();
        let rhs = c
            .nf_mul(&c.collect(&word_of(&u)).unwrap(), &c.collect(&word_of(&v)).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn large_exponents_match_magnus() {
    let c = Collector::new(3, 5).unwrap();
    let m = c.magnus();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..20 {
        let w: Vec<(usize, i64)> = (0..6)
            .map(|_| (rng.gen_range(0..3), rng.gen_range(-5000..5000)))
            .collect();
        let direct = w.iter().fold(m.one(), |acc, &(g, k)| m.mul(&acc, &m.pow(&m.generator(g), &BigInt::from(k))));
        let nf = c.collect(&word_of(&w)).unwrap();
        assert_eq!(c.to_magnus(&nf), direct);
    }
}

// --- symbolic class-4 check -------------------------------------------------

/// Smallest (instance length, conjugator length) found to reach Verified.
const PINNED: (usize, usize) = (1, 1);

#[test]
fn pinned_threshold_verifies() {
    let o = theorem2_symbolic(PINNED.0, PINNED.1).unwrap();
    assert_eq!(o.verdict, Verdict::Verified);
    assert!(o.layer_indices[4].is_one());
    assert_eq!(o.layer_indices[..4], vec![LatticeIndex::Infinite; 4][..]);
    assert_eq!((o.instances, o.distinct), (40, 20));
}

#[test]
fn verdict_monotone_and_deterministic() {
    let mut grid = Vec::new();
    for l in 1..=3 {
        for c in 1..=2 {
            let a = theorem2_symbolic(l, c).unwrap();
            let b = theorem2_symbolic(l, c).unwrap();
            assert_eq!(a.layer_indices, b.layer_indices);
            grid.push(((l, c), a.verdict));
        }
    }
    for &((l1, c1), v1) in &grid {
        for &((l2, c2), v2) in &grid {
            if l1 <= l2 && c1 <= c2 && v1 == Verdict::Verified {
                assert_eq!(v2, Verdict::Verified);
            }
        }
    }
}

fn divides_or_finite(before: &LatticeIndex, after: &LatticeIndex) -> bool {
    match (before, after) {
        (LatticeIndex::Infinite, _) => true,
        (LatticeIndex::Finite(_), LatticeIndex::Infinite) => false,
        (LatticeIndex::Finite(a), LatticeIndex::Finite(b)) => a.is_multiple_of(b),
    }
}

#[test]
fn layer_indices_never_increase() {
    let c = Collector::new(2, 5).unwrap();
    let (xs, _) = theorem2_instances(&c, 2, 2, DEFAULT_INSTANCE_CAP).unwrap();
    let mut s = LayeredSubgroup::new(&c);
    let mut last = s.indices();
    for x in xs {
        s.insert(x);
        let now = s.indices();
        for (a, b) in last.iter().zip(&now) {
            assert!(divides_or_finite(a, b), "{a} -> {b}");
        }
        last = now;
    }
}

#[test]
fn instances_agree_with_magnus() {
    let c = Collector::new(2, 5).unwrap();
    let m = c.magnus();
    let img = |w: &Word| {
        w.syllables().iter().fold(m.one(), |acc, (l, k)| {
            let g = m.generator((l.as_bytes()[0] - b'a') as usize);
            m.mul(&acc, &m.pow(&g, &BigInt::from(*k)))
        })
    };
    let mut expected = HashSet::new();
    let hs: Vec<_> = reduced_words(1).iter().map(img).collect();
    for t in 0..2 {
        let tm = m.generator(t);
        for g in reduced_words(2).iter().filter(|w| !w.is_empty()) {
            let mut r = img(g);
            for _ in 0..3 {
                r = m.comm(&r, &tm);
            }
            for h in &hs {
                let x = m.mul(&m.mul(&m.inverse(h), &r), h);
                if !m.is_one(&x) {
                    expected.insert(c.from_magnus(&x));
                }
            }
        }
    }
    let (xs, _) = theorem2_instances(&c, 2, 1, DEFAULT_INSTANCE_CAP).unwrap();
    assert_eq!(xs.len(), expected.len());
    assert_eq!(xs.into_iter().collect::<HashSet<_>>(), expected);
}

#[test]
fn layered_result_matches_plain_lattice() {
    // relators lie in γ_4, which is abelian at class 5, so the subgroup they
    // generate is the lattice spanned by their (layer 4 | layer 5) coordinates
    let c = Collector::new(2, 5).unwrap();
    for (l, k) in [(1, 1), (2, 1), (3, 2)] {
        let (xs, _) = theorem2_instances(&c, l, k, DEFAULT_INSTANCE_CAP).unwrap();
        let start = c.layer(4).start;
        let mut lat = IntLattice::new(c.basis().len() - start);
        for x in &xs {
            lat.insert(&x.exponents()[start..]).unwrap();
        }
        let s = saturate(&c, &xs);
        assert_eq!(lat.tail_from(c.layer(4).len()).index(), s.layer_index(5));
        assert_eq!(s.layer_lattice(5).index(), s.layer_index(5));
    }
}

#[test]
fn one_sided_relators_do_not_suffice() {
    // only [g,a,a,a]^h: a left 3-Engel alone does not bound the class by 4
    let c = Collector::new(2, 5).unwrap();
    let a = c.generator("a").unwrap();
    let mut xs = Vec::new();
    for g in reduced_words(3).iter().filter(|w| !w.is_empty()) {
        let mut r = c.collect(g).unwrap();
        for _ in 0..3 {
            r = c.nf_comm(&r, &a).unwrap();
        }
        for h in reduced_words(2) {
            xs.push(c.nf_conj(&r, &c.collect(&h).unwrap()).unwrap());
        }
    }
    let s = saturate(&c, &xs);
    assert_eq!(verdict(&s), Verdict::Inconclusive);
    assert_eq!(s.layer_index(5), LatticeIndex::Infinite);
}
