//! Collection in the free nilpotent group `F_r / γ_{c+1}(F_r)`.
//!
//! Elements are written `c_1^{e_1} ... c_n^{e_n}` over the Hall basis. The
//! conjugation rules `c_i^{c_k^{±1}}` are read off the Magnus images of the
//! basis, decomposed layer by layer, and used by collection from the left.
//! Large exponents are multiplied through the Magnus representation instead
//! of letter by letter.

use std::fmt::Write as _;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::hall::{generator_label, hall_basis, BasicCommutator};
use super::magnus::{Magnus, MagnusElement};
use super::CollectorError;
use crate::word::Word;

/// Beyond this many letters a syllable is multiplied in the Magnus algebra.
const LETTER_LIMIT: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    rank: usize,
    class: usize,
    exps: Vec<BigInt>,
}

impl NormalForm {
    pub fn exponents(&self) -> &[BigInt] {
        &self.exps
    }

    pub fn exponent(&self, j: usize) -> &BigInt {
        &self.exps[j]
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }
}

type Sparse = Vec<(usize, BigInt)>;

/// `c_i^{c_k}`, `c_i^{c_k^-1}` and their inverses.
struct Rule {
    conj: [Sparse; 2],
    conj_inv: [Sparse; 2],
}

/// Solves for the exponents of one weight layer from the leading Magnus term.
struct LayerSolver {
    ids: std::ops::Range<usize>,
    pivots: Vec<usize>,
    /// Inverse of the square matrix `L[j][pivot_p]`.
    inverse: Vec<Vec<BigRational>>,
}

impl LayerSolver {
    fn new(ids: std::ops::Range<usize>, lie: Vec<Vec<BigInt>>) -> Self {
        let n = lie.len();
        let width = lie.first().map_or(0, Vec::len);
        let mut m: Vec<Vec<BigRational>> = lie
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..width {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let lead = m[row][col].clone();
            for x in m[row].iter_mut() {
                *x /= &lead;
            }
            for r in 0..n {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let (a, b) = if r < row {
                        let (h, t) = m.split_at_mut(row);
                        (&mut h[r], &t[0])
                    } else {
                        let (h, t) = m.split_at_mut(r);
                        (&mut t[0], &h[row])
                    };
                    for (x, y) in a.iter_mut().zip(b) {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        assert_eq!(pivots.len(), n, "Lie elements of the basis must be independent");
        let square: Vec<Vec<BigRational>> = lie
            .iter()
            .map(|r| pivots.iter().map(|&p| BigRational::from_integer(r[p].clone())).collect())
            .collect();
        LayerSolver {
            ids,
            pivots,
            inverse: invert(square),
        }
    }

    /// Exponents `e` with `sum_j e_j L_j = d` on the pivot columns.
    fn solve(&self, d: &[BigInt]) -> Vec<BigInt> {
        let n = self.pivots.len();
        (0..n)
            .map(|j| {
                let mut acc = BigRational::zero();
                for (p, &col) in self.pivots.iter().enumerate() {
                    if !d[col].is_zero() {
                        acc += BigRational::from_integer(d[col].clone()) * &self.inverse[p][j];
                    }
                }
                assert!(acc.is_integer(), "layer coefficients must be integral");
                acc.to_integer()
            })
            .collect()
    }
}

fn invert(mut a: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).expect("matrix is invertible");
        a.swap(col, p);
        inv.swap(col, p);
        let lead = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &lead;
            inv[col][j] /= &lead;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (a[col][j].clone(), inv[col][j].clone());
                    a[r][j] -= &f * x;
                    inv[r][j] -= &f * y;
                }
            }
        }
    }
    inv
}

pub struct Collector {
    rank: usize,
    class: usize,
    basis: Vec<BasicCommutator>,
    magnus: Magnus,
    images: Vec<MagnusElement>,
    solvers: Vec<LayerSolver>,
    rules: Vec<OnceLock<Rule>>,
}

impl Collector {
    pub fn new(rank: usize, class: usize) -> Result<Self, CollectorError> {
        let basis = hall_basis(rank, class)?;
        let magnus = Magnus::new(rank, class);
        let mut images: Vec<MagnusElement> = Vec::with_capacity(basis.len());
        for b in &basis {
            let img = match b.components {
                None => magnus.generator(b.id),
                Some((u, v)) => magnus.comm(&images[u], &images[v]),
            };
            images.push(img);
        }
        let solvers = (1..=class)
            .map(|w| {
                let start = basis.iter().position(|b| b.weight == w).unwrap_or(basis.len());
                let end = basis.iter().rposition(|b| b.weight == w).map_or(start, |e| e + 1);
                let lie = (start..end).map(|j| magnus.degree_part(&images[j], w).to_vec()).collect();
                LayerSolver::new(start..end, lie)
            })
            .collect();
        let n = basis.len();
        Ok(Collector {
            rank,
            class,
            basis,
            magnus,
            images,
            solvers,
            rules: (0..n * n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn basis(&self) -> &[BasicCommutator] {
        &self.basis
    }

    pub fn magnus(&self) -> &Magnus {
        &self.magnus
    }

    /// Basis ids of the given weight.
    pub fn layer(&self, weight: usize) -> std::ops::Range<usize> {
        self.solvers[weight - 1].ids.clone()
    }

    pub fn identity(&self) -> NormalForm {
        NormalForm {
            rank: self.rank,
            class: self.class,
            exps: vec![BigInt::zero(); self.basis.len()],
        }
    }

    /// `c_j` as a normal form.
    pub fn basic(&self, j: usize) -> NormalForm {
        let mut x = self.identity();
        x.exps[j] = BigInt::one();
        x
    }

    pub fn generator(&self, label: &str) -> Result<NormalForm, CollectorError> {
        Ok(self.basic(self.generator_index(label)?))
    }

    fn generator_index(&self, label: &str) -> Result<usize, CollectorError> {
        (0..self.rank)
            .find(|&i| generator_label(i) == label)
            .ok_or_else(|| CollectorError::UnknownLabel(label.to_string()))
    }

    pub fn from_exponents(&self, exps: Vec<BigInt>) -> Result<NormalForm, CollectorError> {
        if exps.len() != self.basis.len() {
            return Err(CollectorError::DimensionMismatch {
                expected: self.basis.len(),
                got: exps.len(),
            });
        }
        Ok(NormalForm {
            rank: self.rank,
            class: self.class,
            exps,
        })
    }

    fn check(&self, x: &NormalForm) -> Result<(), CollectorError> {
        if x.rank != self.rank || x.class != self.class {
            return Err(CollectorError::Mismatch {
                expected: (self.rank, self.class),
                got: (x.rank, x.class),
            });
        }
        Ok(())
    }

    /// Normal form of a word in the generators `a`, `b`, `c`.
    pub fn collect(&self, word: &Word) -> Result<NormalForm, CollectorError> {
        let mut e = self.identity().exps;
        for (label, k) in word.syllables() {
            let j = self.generator_index(label)?;
            self.mul_syllable(&mut e, j, &BigInt::from(*k));
        }
        Ok(self.wrap(e))
    }

    pub fn collect_str(&self, text: &str) -> Result<NormalForm, CollectorError> {
        let w: Word = text.parse().map_err(CollectorError::Word)?;
        self.collect(&w)
    }

    pub fn nf_mul(&self, x: &NormalForm, y: &NormalForm) -> Result<NormalForm, CollectorError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn nf_inv(&self, x: &NormalForm) -> Result<NormalForm, CollectorError> {
        self.check(x)?;
        Ok(self.inv(x))
    }

    pub fn nf_comm(&self, x: &NormalForm, y: &NormalForm) -> Result<NormalForm, CollectorError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.comm(x, y))
    }

    pub fn nf_conj(&self, x: &NormalForm, y: &NormalForm) -> Result<NormalForm, CollectorError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.conj(x, y))
    }

    pub fn nf_pow(&self, x: &NormalForm, k: &BigInt) -> Result<NormalForm, CollectorError> {
        self.check(x)?;
        Ok(self.pow(x, k))
    }

    pub(crate) fn mul(&self, x: &NormalForm, y: &NormalForm) -> NormalForm {
        let mut e = x.exps.clone();
        for (j, m) in y.exps.iter().enumerate() {
            self.mul_syllable(&mut e, j, m);
        }
        self.wrap(e)
    }

    pub(crate) fn inv(&self, x: &NormalForm) -> NormalForm {
        let mut e = self.identity().exps;
        for (j, m) in x.exps.iter().enumerate().rev() {
            self.mul_syllable(&mut e, j, &-m);
        }
        self.wrap(e)
    }

    /// `x^-1 y^-1 x y`
    pub(crate) fn comm(&self, x: &NormalForm, y: &NormalForm) -> NormalForm {
        self.mul(&self.mul(&self.inv(x), &self.inv(y)), &self.mul(x, y))
    }

    /// `y^-1 x y`
    pub(crate) fn conj(&self, x: &NormalForm, y: &NormalForm) -> NormalForm {
        self.mul(&self.mul(&self.inv(y), x), y)
    }

    pub(crate) fn pow(&self, x: &NormalForm, k: &BigInt) -> NormalForm {
        let base = if k.is_negative() { self.inv(x) } else { x.clone() };
        let mut n = k.abs();
        let mut acc = self.identity();
        let mut sq = base;
        let two = BigInt::from(2);
        while !n.is_zero() {
            if (&n % &two).is_one() {
                acc = self.mul(&acc, &sq);
            }
            n /= &two;
            if !n.is_zero() {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    pub fn to_magnus(&self, x: &NormalForm) -> MagnusElement {
        let mut acc = self.magnus.one();
        for (j, m) in x.exps.iter().enumerate() {
            if !m.is_zero() {
                acc = self.magnus.mul(&acc, &self.magnus.pow(&self.images[j], m));
            }
        }
        acc
    }

    /// Inverse of [`Collector::to_magnus`] on its image.
    pub fn from_magnus(&self, m: &MagnusElement) -> NormalForm {
        let mut cur = m.clone();
        let mut exps = self.identity().exps;
        for (w, solver) in self.solvers.iter().enumerate() {
            let part = self.magnus.degree_part(&cur, w + 1);
            if part.iter().all(Zero::is_zero) {
                continue;
            }
            let e = solver.solve(part);
            let mut layer = self.magnus.one();
            for (j, k) in solver.ids.clone().zip(&e) {
                if !k.is_zero() {
                    layer = self.magnus.mul(&layer, &self.magnus.pow(&self.images[j], k));
                }
            }
            cur = self.magnus.mul(&self.magnus.inverse(&layer), &cur);
            for (j, k) in solver.ids.clone().zip(e) {
                exps[j] = k;
            }
        }
        assert!(self.magnus.is_one(&cur), "element must lie in the image of the group");
        self.wrap(exps)
    }

    pub fn show(&self, x: &NormalForm) -> String {
        let mut out = String::new();
        for (j, m) in x.exps.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&self.basis[j].label);
            if !m.is_one() {
                let _ = write!(out, "^{m}");
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    fn wrap(&self, exps: Vec<BigInt>) -> NormalForm {
        NormalForm {
            rank: self.rank,
            class: self.class,
            exps,
        }
    }

    fn weight(&self, j: usize) -> usize {
        self.basis[j].weight
    }

    fn commutes_past(&self, i: usize, j: usize) -> bool {
        self.weight(i) + self.weight(j) > self.class
    }

    fn tail_commutes(&self, e: &[BigInt], j: usize) -> bool {
        (j + 1..e.len()).all(|i| e[i].is_zero() || self.commutes_past(i, j))
    }

    fn tail_large(&self, e: &[BigInt], j: usize) -> bool {
        let limit = BigInt::from(LETTER_LIMIT);
        (j + 1..e.len()).any(|i| !self.commutes_past(i, j) && e[i].abs() > limit)
    }

    fn mul_syllable(&self, e: &mut Vec<BigInt>, j: usize, m: &BigInt) {
        if m.is_zero() {
            return;
        }
        if self.tail_commutes(e, j) {
            e[j] += m;
            return;
        }
        if m.abs() > BigInt::from(LETTER_LIMIT) {
            self.magnus_mul(e, j, m);
            return;
        }
        let s: i8 = if m.is_positive() { 1 } else { -1 };
        let count: u32 = m.abs().try_into().expect("bounded by the letter limit");
        for _ in 0..count {
            self.mul_letter(e, j, s);
        }
    }

    fn magnus_mul(&self, e: &mut Vec<BigInt>, j: usize, m: &BigInt) {
        let x = self.to_magnus(&self.wrap(std::mem::take(e)));
        let y = self.magnus.mul(&x, &self.magnus.pow(&self.images[j], m));
        *e = self.from_magnus(&y).exps;
    }

    /// `e * c_j^s` for `s = ±1`.
    fn mul_letter(&self, e: &mut Vec<BigInt>, j: usize, s: i8) {
        if self.tail_large(e, j) {
            self.magnus_mul(e, j, &BigInt::from(s));
            return;
        }
        let tail: Vec<(usize, BigInt)> = e
            .iter_mut()
            .enumerate()
            .skip(j + 1)
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, std::mem::take(x)))
            .collect();
        e[j] += s;
        for (i, t) in tail {
            if self.commutes_past(i, j) {
                self.mul_syllable(e, i, &t);
                continue;
            }
            let rule = self.rule(i, j);
            let side = if s > 0 { 0 } else { 1 };
            let (w, count) = if t.is_positive() {
                (&rule.conj[side], t)
            } else {
                (&rule.conj_inv[side], -t)
            };
            let count: u32 = count.try_into().expect("bounded by the letter limit");
            for _ in 0..count {
                for (k, m) in w {
                    self.mul_syllable(e, *k, m);
                }
            }
        }
    }

    fn rule(&self, i: usize, k: usize) -> &Rule {
        self.rules[i * self.basis.len() + k].get_or_init(|| {
            let mg = &self.magnus;
            let ck = &self.images[k];
            let ck_inv = mg.inverse(ck);
            let ci = &self.images[i];
            let ci_inv = mg.inverse(ci);
            let conj = |x: &MagnusElement, by: &MagnusElement, by_inv: &MagnusElement| {
                let nf = self.from_magnus(&mg.mul(&mg.mul(by_inv, x), by));
                nf.exps.into_iter().enumerate().filter(|(_, m)| !m.is_zero()).collect::<Sparse>()
            };
            Rule {
                conj: [conj(ci, ck, &ck_inv), conj(ci, &ck_inv, ck)],
                conj_inv: [conj(&ci_inv, ck, &ck_inv), conj(&ci_inv, &ck_inv, ck)],
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn exps(c: &Collector, x: &NormalForm) -> Vec<i64> {
        let _ = c;
        x.exponents().iter().map(|e| i64::try_from(e).unwrap()).collect()
    }

    #[test]
    fn abab_inverse() {
        let c = Collector::new(2, 2).unwrap();
        let x = c.collect_str("a b a b^-1").unwrap();
        assert_eq!(exps(&c, &x), vec![2, 0, 1]);
        assert_eq!(c.show(&x), "a^2 [b,a]");
    }

    #[test]
    fn commutator_sign() {
        let c = Collector::new(2, 3).unwrap();
        let ab = c.collect_str("a^-1 b^-1 a b").unwrap();
        assert_eq!(exps(&c, &ab), vec![0, 0, -1, 0, 0]);
        let ba = c.comm(&c.generator("b").unwrap(), &c.generator("a").unwrap());
        assert_eq!(ba, c.basic(2));
    }

    #[test]
    fn basis_elements_collect_to_themselves() {
        let c = Collector::new(3, 4).unwrap();
        for b in c.basis() {
            let nf = match b.components {
                None => c.basic(b.id),
                Some((u, v)) => c.comm(&c.basic(u), &c.basic(v)),
            };
            assert_eq!(nf, c.basic(b.id), "{}", b.label);
        }
    }

    #[test]
    fn errors() {
        let c = Collector::new(2, 3).unwrap();
        assert!(matches!(c.collect_str("a c"), Err(CollectorError::UnknownLabel(_))));
        assert!(matches!(Collector::new(4, 2), Err(CollectorError::OutOfRange { .. })));
        let d = Collector::new(2, 4).unwrap();
        let x = d.generator("a").unwrap();
        assert!(matches!(c.nf_mul(&c.generator("a").unwrap(), &x), Err(CollectorError::Mismatch { .. })));
        assert!(c.nf_inv(&x).is_err());
    }

    #[test]
    fn large_exponents_are_exact() {
        let c = Collector::new(2, 5).unwrap();
        let big = BigInt::from(10).pow(30);
        let x = c.collect_str("a b^2 a^-1").unwrap();
        let p = c.pow(&x, &big);
        let q = c.pow(&p, &BigInt::from(-1));
        assert!(c.mul(&p, &q).is_identity());
        assert_eq!(c.to_magnus(&p), c.magnus().pow(&c.to_magnus(&x), &big));
    }

    #[test]
    fn identity_and_inverse() {
        let c = Collector::new(3, 5).unwrap();
        let x = c.collect_str("a b^3 c a^-2 b").unwrap();
        assert!(c.mul(&x, &c.inv(&x)).is_identity());
        assert!(c.mul(&c.inv(&x), &x).is_identity());
        assert_eq!(c.mul(&x, &c.identity()), x);
        assert!(c.collect_str("1").unwrap().is_identity());
    }

    fn word_strategy(rank: usize, max: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
        proptest::collection::vec((0..rank, -3i64..=3), 0..max)
    }

    fn word_of(w: &[(usize, i64)]) -> Word {
        Word::from_syllables(w.iter().map(|&(g, k)| (generator_label(g), k)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn magnus_agrees(w in word_strategy(2, 10)) {
            let c = Collector::new(2, 5).unwrap();
            let m = c.magnus();
            let mut direct = m.one();
            for &(g, k) in &w {
                direct = m.mul(&direct, &m.pow(&m.generator(g), &BigInt::from(k)));
            }
            let nf = c.collect(&word_of(&w)).unwrap();
            prop_assert_eq!(c.to_magnus(&nf), direct.clone());
            prop_assert_eq!(c.from_magnus(&direct), nf);
        }

        #[test]
        fn associative(x in word_strategy(3, 5), y in word_strategy(3, 5), z in word_strategy(3, 5)) {
            let c = Collector::new(3, 4).unwrap();
            let (x, y, z) = (c.collect(&word_of(&x)).unwrap(), c.collect(&word_of(&y)).unwrap(), c.collect(&word_of(&z)).unwrap());
            prop_assert_eq!(c.mul(&c.mul(&x, &y), &z), c.mul(&x, &c.mul(&y, &z)));
        }

        #[test]
        fn word_concat_is_product(x in word_strategy(2, 6), y in word_strategy(2, 6)) {
            let c = Collector::new(2, 5).unwrap();
            let mut xy = x.clone();
            xy.extend(y.iter().copied());
            let lhs = c.collect(&word_of(&xy)).unwrap();
            let rhs = c.mul(&c.collect(&word_of(&x)).unwrap(), &c.collect(&word_of(&y)).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
